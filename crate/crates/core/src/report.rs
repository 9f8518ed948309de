//! Named axiom checks with basis-level witnesses.

use std::fmt;

use crate::linalg::Scalar;
use crate::tensor::{dims, unravel, LinMap};

/// First basis tuple where two maps disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub input: Vec<usize>,
    pub output: Vec<usize>,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "input basis {:?}, output basis {:?}: lhs = {}, rhs = {}",
            self.input, self.output, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
    /// The structure needed for the axiom is absent.
    Missing(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: String,
    pub verdict: Verdict,
}

impl AxiomCheck {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn missing(name: impl Into<String>, why: impl Into<String>) -> Self {
        AxiomCheck { name: name.into(), verdict: Verdict::Missing(why.into()) }
    }

    /// Compares two maps entry by entry.
    pub fn compare(name: impl Into<String>, lhs: &LinMap, rhs: &LinMap) -> Self {
        let name = name.into();
        let (a, b) = (lhs.matrix(), rhs.matrix());
        if (a.n_rows(), a.n_cols()) != (b.n_rows(), b.n_cols()) {
            return AxiomCheck::missing(name, format!("shape mismatch: {} vs {}", lhs.describe(), rhs.describe()));
        }
        let verdict = match a.first_difference(b) {
            None => Verdict::Holds,
            Some((r, c)) => Verdict::Fails(Witness {
                input: unravel(&dims(lhs.domain()), c),
                output: unravel(&dims(lhs.codomain()), r),
                lhs: a.get(r, c),
                rhs: b.get(r, c),
            }),
        };
        AxiomCheck { name, verdict }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn push(&mut self, check: AxiomCheck) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::holds)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Whether the named check exists and holds.
    pub fn holds(&self, name: &str) -> bool {
        self.get(name).is_some_and(AxiomCheck::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.verdict {
                Verdict::Holds => writeln!(f, "  ok    {}", c.name)?,
                Verdict::Fails(w) => writeln!(f, "  FAIL  {}: {w}", c.name)?,
                Verdict::Missing(why) => writeln!(f, "  MISS  {}: {why}", c.name)?,
            }
        }
        Ok(())
    }
}
