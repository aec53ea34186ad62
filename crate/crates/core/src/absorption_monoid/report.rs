use std::fmt;

use serde::{Deserialize, Serialize};

/// The algebraic laws checked throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// Table dimensions or indices are inconsistent.
    Malformed,
    Associativity,
    RightUnit,
    LeftUnit,
    RightAbsorption,
    LeftAbsorption,
    Multiplicative,
    PreservesOne,
    PreservesZero,
    /// A map or action produced something outside its codomain.
    ForeignImage,
    ActionComposition,
    ActionUnit,
    ZeroScalar,
    BasepointFixed,
    ActionDistributes,
    BimoduleCompatibility,
    Equivariance,
    RepresentativeIndependence,
}

impl Law {
    pub fn formula(self) -> &'static str {
        match self {
            Law::Malformed => "well-formed table",
            Law::Associativity => "m*(m'*m'') = (m*m')*m''",
            Law::RightUnit => "m*1 = m",
            Law::LeftUnit => "1*m = m",
            Law::RightAbsorption => "m*0 = 0",
            Law::LeftAbsorption => "0*m = 0",
            Law::Multiplicative => "f(m*m') = f(m)*f(m')",
            Law::PreservesOne => "f(1) = 1",
            Law::PreservesZero => "f(0) = 0",
            Law::ForeignImage => "image lies in the codomain",
            Law::ActionComposition => "(t*t').m = t.(t'.m)",
            Law::ActionUnit => "1.m = m",
            Law::ZeroScalar => "0.m = *",
            Law::BasepointFixed => "t.* = *",
            Law::ActionDistributes => "t.(m*m') = (t.m)*(t.m')",
            Law::BimoduleCompatibility => "(t.m).t' = t.(m.t')",
            Law::Equivariance => "f(t.m) = h(t).f(m)",
            Law::RepresentativeIndependence => "[t.g'] = [t.g] for g' ~ g",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Law::Malformed => "malformed",
            Law::Associativity => "associativity",
            Law::RightUnit => "right-unit",
            Law::LeftUnit => "left-unit",
            Law::RightAbsorption => "right-absorption",
            Law::LeftAbsorption => "left-absorption",
            Law::Multiplicative => "multiplicative",
            Law::PreservesOne => "preserves-one",
            Law::PreservesZero => "preserves-zero",
            Law::ForeignImage => "foreign-image",
            Law::ActionComposition => "action-composition",
            Law::ActionUnit => "action-unit",
            Law::ZeroScalar => "zero-scalar",
            Law::BasepointFixed => "basepoint-fixed",
            Law::ActionDistributes => "action-distributes",
            Law::BimoduleCompatibility => "bimodule-compatibility",
            Law::Equivariance => "equivariance",
            Law::RepresentativeIndependence => "representative-independence",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name(), self.formula())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub law: Law,
    /// Labels of the elements forming the counterexample, in law order.
    pub witnesses: Vec<String>,
    pub detail: String,
}

/// Outcome of an axiom or law check.
///
/// `bound` is `None` when the check was exhaustive, and `Some(L)` when it ran
/// over all instances of total size at most `L`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub subject: String,
    pub bound: Option<usize>,
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn new(subject: impl Into<String>, bound: Option<usize>) -> Self {
        AxiomReport {
            subject: subject.into(),
            bound,
            checked: 0,
            violations: Vec::new(),
        }
    }

    pub fn violation(&mut self, law: Law, witnesses: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            law,
            witnesses,
            detail: detail.into(),
        });
    }

    /// Sort and deduplicate violations so reports are deterministic.
    pub fn finish(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }

    pub fn absorb(&mut self, other: AxiomReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.bound = match (self.bound, other.bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, law: Law) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn scope(&self) -> String {
        match self.bound {
            None => "exhaustive".to_string(),
            Some(l) => format!("verified up to {l}"),
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(
                f,
                "{}: ok ({} instances, {})",
                self.subject,
                self.checked,
                self.scope()
            );
        }
        writeln!(
            f,
            "{}: {} violation(s) ({} instances, {})",
            self.subject,
            self.violations.len(),
            self.checked,
            self.scope()
        )?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  {} at ({})", v.law, v.witnesses.join(", "))?;
            if !v.detail.is_empty() {
                write!(f, ": {}", v.detail)?;
            }
        }
        Ok(())
    }
}
