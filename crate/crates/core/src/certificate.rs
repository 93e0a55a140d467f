use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{MultiHypergraph, VertexSet};
use crate::partition::{CoverageProfile, Partition};
use crate::solver::threshold;
use crate::threshold::Threshold;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
struct ThresholdJson {
    num: u64,
    den: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CertificateJson {
    r: usize,
    m: usize,
    threshold: ThresholdJson,
    classes: Vec<Vec<usize>>,
    coverage: Vec<usize>,
    min_coverage: usize,
}

/// A partition into `r` classes with the coverage of each class and the
/// exact bound every coverage was checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub r: usize,
    pub m: usize,
    pub threshold: Threshold,
    pub classes: Vec<Vec<usize>>,
    pub coverage: Vec<usize>,
}

impl Certificate {
    /// Recomputes coverage of `p` in `h` and records it against the bound
    /// for `p.class_count()` classes.
    pub fn for_partition(h: &MultiHypergraph, p: &Partition) -> Result<Self> {
        let r = p.class_count();
        let prof = CoverageProfile::of(h, p)?;
        Ok(Self {
            r,
            m: h.edge_count(),
            threshold: threshold(r, h.edge_count())?,
            classes: p
                .classes()
                .into_iter()
                .map(|c| c.as_slice().to_vec())
                .collect(),
            coverage: prof.coverage,
        })
    }

    pub fn min_coverage(&self) -> usize {
        self.coverage.iter().copied().min().unwrap_or(0)
    }

    pub fn partition(&self, vertex_count: usize) -> Result<Partition> {
        let classes: Vec<VertexSet> = self.classes.iter().cloned().map(VertexSet::from).collect();
        Partition::from_classes(vertex_count, &classes)
    }

    pub fn to_json(&self) -> String {
        let json = CertificateJson {
            r: self.r,
            m: self.m,
            threshold: ThresholdJson {
                num: self.threshold.numerator(),
                den: self.threshold.denominator(),
            },
            classes: self.classes.clone(),
            coverage: self.coverage.clone(),
            min_coverage: self.min_coverage(),
        };
        serde_json::to_string_pretty(&json).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: CertificateJson = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("bad certificate JSON: {e}")))?;
        Ok(Self {
            r: json.r,
            m: json.m,
            threshold: Threshold::new(json.threshold.num, json.threshold.den)?,
            classes: json.classes,
            coverage: json.coverage,
        })
    }

    /// Aligned human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("r             {}\n", self.r));
        out.push_str(&format!("m             {}\n", self.m));
        out.push_str(&format!("threshold     {}\n", self.threshold));
        out.push_str(&format!("min_coverage  {}\n", self.min_coverage()));
        let width = self
            .coverage
            .iter()
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1);
        for (i, (class, cov)) in self.classes.iter().zip(&self.coverage).enumerate() {
            let members: Vec<String> = class.iter().map(usize::to_string).collect();
            out.push_str(&format!(
                "class {i:<3} coverage {cov:>width$}  vertices {}\n",
                members.join(" ")
            ));
        }
        out
    }
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    ClassCount {
        expected: usize,
        found: usize,
    },
    UnsupportedClassCount(usize),
    EdgeCount {
        expected: usize,
        found: usize,
    },
    WrongThreshold {
        expected: Threshold,
        found: Threshold,
    },
    VertexOutOfRange(usize),
    VertexRepeated(usize),
    VertexMissing(usize),
    CoverageMismatch {
        class: usize,
        claimed: usize,
        actual: usize,
    },
    BelowThreshold {
        class: usize,
        coverage: usize,
    },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::ClassCount { expected, found } => {
                write!(f, "expected {expected} classes, found {found}")
            }
            VerifyFailure::UnsupportedClassCount(r) => write!(f, "no bound is defined for r = {r}"),
            VerifyFailure::EdgeCount { expected, found } => {
                write!(
                    f,
                    "hypergraph has {expected} edges, certificate claims {found}"
                )
            }
            VerifyFailure::WrongThreshold { expected, found } => {
                write!(f, "bound should be {expected}, certificate uses {found}")
            }
            VerifyFailure::VertexOutOfRange(v) => write!(f, "vertex {v} is not in the hypergraph"),
            VerifyFailure::VertexRepeated(v) => write!(f, "vertex {v} appears in two classes"),
            VerifyFailure::VertexMissing(v) => write!(f, "vertex {v} is not in any class"),
            VerifyFailure::CoverageMismatch {
                class,
                claimed,
                actual,
            } => write!(
                f,
                "class {class} claims coverage {claimed}, actual {actual}"
            ),
            VerifyFailure::BelowThreshold { class, coverage } => {
                write!(f, "class {class} meets only {coverage} edges")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid(VerifyFailure),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

/// Recomputes everything in `cert` from `h`: the classes must be disjoint,
/// cover every vertex and number `r`; the bound must be `c_r·m`; every
/// listed coverage must match and meet the bound.
pub fn verify_certificate(h: &MultiHypergraph, cert: &Certificate) -> Verification {
    match check(h, cert) {
        Ok(()) => Verification::Valid,
        Err(why) => Verification::Invalid(why),
    }
}

fn check(h: &MultiHypergraph, cert: &Certificate) -> std::result::Result<(), VerifyFailure> {
    if cert.classes.len() != cert.r {
        return Err(VerifyFailure::ClassCount {
            expected: cert.r,
            found: cert.classes.len(),
        });
    }
    if cert.m != h.edge_count() {
        return Err(VerifyFailure::EdgeCount {
            expected: h.edge_count(),
            found: cert.m,
        });
    }
    let expected = threshold(cert.r, h.edge_count())
        .map_err(|_| VerifyFailure::UnsupportedClassCount(cert.r))?;
    if expected != cert.threshold {
        return Err(VerifyFailure::WrongThreshold {
            expected,
            found: cert.threshold,
        });
    }

    let n = h.vertex_count();
    let mut owner = vec![usize::MAX; n];
    for (c, class) in cert.classes.iter().enumerate() {
        for &v in class {
            let slot = owner.get_mut(v).ok_or(VerifyFailure::VertexOutOfRange(v))?;
            if *slot != usize::MAX {
                return Err(VerifyFailure::VertexRepeated(v));
            }
            *slot = c;
        }
    }
    if let Some(v) = owner.iter().position(|&c| c == usize::MAX) {
        return Err(VerifyFailure::VertexMissing(v));
    }

    let p = Partition::new(cert.r, owner).expect("owners are valid class indices");
    let actual = CoverageProfile::of(h, &p).expect("sizes match").coverage;
    if cert.coverage.len() != cert.r {
        return Err(VerifyFailure::ClassCount {
            expected: cert.r,
            found: cert.coverage.len(),
        });
    }
    for (class, (&claimed, &real)) in cert.coverage.iter().zip(&actual).enumerate() {
        if claimed != real {
            return Err(VerifyFailure::CoverageMismatch {
                class,
                claimed,
                actual: real,
            });
        }
    }
    for (class, &coverage) in actual.iter().enumerate() {
        if !cert.threshold.is_met_by(coverage as u64) {
            return Err(VerifyFailure::BelowThreshold { class, coverage });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_3() -> MultiHypergraph {
        MultiHypergraph::from_edges(vec![
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ])
        .unwrap()
    }

    #[test]
    fn good_certificate_verifies() {
        let h = k4_3();
        let p = Partition::new(3, vec![0, 0, 1, 2, 2]).unwrap();
        let cert = Certificate::for_partition(&h, &p).unwrap();
        assert_eq!(cert.coverage, vec![3, 3, 4]);
        assert_eq!(cert.threshold, Threshold::new(20, 9).unwrap());
        assert!(verify_certificate(&h, &cert).is_valid());
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn empty_class_is_rejected() {
        let h = k4_3();
        let cert = Certificate::for_partition(&h, &Partition::new(3, vec![0, 0, 0, 0, 1]).unwrap())
            .unwrap();
        assert_eq!(
            verify_certificate(&h, &cert),
            Verification::Invalid(VerifyFailure::BelowThreshold {
                class: 2,
                coverage: 0
            })
        );
    }

    #[test]
    fn tampering_is_detected() {
        let h = k4_3();
        let p = Partition::new(3, vec![0, 0, 1, 2, 2]).unwrap();
        let good = Certificate::for_partition(&h, &p).unwrap();

        let mut cert = good.clone();
        cert.coverage[0] = 4;
        assert!(matches!(
            verify_certificate(&h, &cert),
            Verification::Invalid(VerifyFailure::CoverageMismatch { class: 0, .. })
        ));

        let mut cert = good.clone();
        cert.classes[1].push(1);
        assert_eq!(
            verify_certificate(&h, &cert),
            Verification::Invalid(VerifyFailure::VertexRepeated(1))
        );

        let mut cert = good.clone();
        cert.classes[2].retain(|&v| v != 4);
        assert_eq!(
            verify_certificate(&h, &cert),
            Verification::Invalid(VerifyFailure::VertexMissing(4))
        );

        let mut cert = good.clone();
        cert.threshold = Threshold::from_count(1);
        assert!(matches!(
            verify_certificate(&h, &cert),
            Verification::Invalid(VerifyFailure::WrongThreshold { .. })
        ));

        let mut cert = good;
        cert.classes.pop();
        assert!(matches!(
            verify_certificate(&h, &cert),
            Verification::Invalid(VerifyFailure::ClassCount { .. })
        ));
    }

    #[test]
    fn json_schema_fields() {
        let h = k4_3();
        let cert = Certificate::for_partition(&h, &Partition::new(3, vec![0, 0, 1, 2, 2]).unwrap())
            .unwrap();
        let v: serde_json::Value = serde_json::from_str(&cert.to_json()).unwrap();
        assert_eq!(v["r"], 3);
        assert_eq!(v["m"], 4);
        assert_eq!(v["threshold"]["num"], 20);
        assert_eq!(v["threshold"]["den"], 9);
        assert_eq!(v["classes"][2], serde_json::json!([3, 4]));
        assert_eq!(v["min_coverage"], 3);
    }
}
