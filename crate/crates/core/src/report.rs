//! Axiom-by-axiom verification reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactla::complex::{ChainMap, Degree};

/// A basis vector of the source on which a law fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub degree: Degree,
    pub index: usize,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "basis vector {} in degree {}", self.index, self.degree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub clauses: Vec<Clause>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            clauses: Vec::new(),
        }
    }

    /// Records a clause; `witness` is `None` when it holds.
    pub fn clause(&mut self, name: impl Into<String>, witness: Option<Witness>) {
        self.clauses.push(Clause {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        });
    }

    pub fn flag(&mut self, name: impl Into<String>, passed: bool) {
        self.clauses.push(Clause {
            name: name.into(),
            passed,
            witness: None,
        });
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        for c in other.clauses {
            self.clauses.push(Clause {
                name: format!("{prefix}{}", c.name),
                ..c
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> + '_ {
        self.clauses.iter().filter(|c| !c.passed)
    }

    pub fn clause_passed(&self, name: &str) -> Option<bool> {
        self.clauses
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.subject,
            if self.passed() { "pass" } else { "FAIL" }
        )?;
        for c in &self.clauses {
            write!(f, "  [{}] {}", if c.passed { "ok" } else { "fail" }, c.name)?;
            if let Some(w) = c.witness {
                write!(f, " (first offending {w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// First source basis vector on which two graded maps with equal ends
/// disagree.
pub fn difference_witness(lhs: &ChainMap, rhs: &ChainMap) -> Option<Witness> {
    lhs.first_difference(rhs)
        .map(|(degree, index)| Witness { degree, index })
}

/// First basis vector on which `d f = f d` fails.
pub fn chain_witness(f: &ChainMap) -> Option<Witness> {
    let (s, t) = (f.source(), f.target());
    for n in s.degrees() {
        let lhs = t.differential(n).mul(&f.component(n));
        let rhs = f.component(n - 1).mul(&s.differential(n));
        if let Some(index) = lhs.sub(&rhs).triplets().map(|(_, c, _)| c).min() {
            return Some(Witness { degree: n, index });
        }
    }
    None
}
