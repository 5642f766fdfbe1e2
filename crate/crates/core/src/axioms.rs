//! Pass/fail reports shared by the cone and quasi-cone metric axiom checks.

use std::fmt;

use serde::Serialize;

use crate::qcm::PointId;
use crate::rational::Rational;
use crate::vector::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Axiom {
    /// Closed and nontrivial.
    C1,
    /// Closed under nonnegative combinations.
    C2,
    /// Pointed.
    C3,
    /// `d(r,s) ⪰ 0`.
    Qcm1,
    /// `d(r,s) = 0 ⇔ r = s`.
    Qcm2,
    /// `d(r,t) ⪯ d(r,s) + d(s,t)`.
    Qcm3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::Qcm1 => "QCM1",
            Axiom::Qcm2 => "QCM2",
            Axiom::Qcm3 => "QCM3",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Counterexample {
    /// Vectors (and scalars, for C2) that violate a cone axiom.
    Vectors { vectors: Vec<Vector>, scalars: Vec<Rational>, note: String },
    /// Ground-set points and the distance values that violate a metric axiom.
    Points { points: Vec<PointId>, values: Vec<Vector>, note: String },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Vectors { vectors, scalars, note } => {
                write!(f, "{note}; vectors")?;
                for v in vectors {
                    write!(f, " {v}")?;
                }
                if !scalars.is_empty() {
                    write!(f, "; scalars")?;
                    for s in scalars {
                        write!(f, " {s}")?;
                    }
                }
                Ok(())
            }
            Counterexample::Points { points, values, note } => {
                write!(f, "{note}; points")?;
                for p in points {
                    write!(f, " {p}")?;
                }
                write!(f, "; values")?;
                for v in values {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "counterexample")]
pub enum AxiomStatus {
    Pass,
    Fail(Counterexample),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    #[serde(flatten)]
    pub status: AxiomStatus,
    /// Number of individual instances of the axiom that were evaluated.
    pub checks: u64,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        matches!(self.status, AxiomStatus::Pass)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.status {
            AxiomStatus::Pass => None,
            AxiomStatus::Fail(c) => Some(c),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn total_checks(&self) -> u64 {
        self.checks.iter().map(|c| c.checks).sum()
    }
}
