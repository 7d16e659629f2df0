//! Verification reports shared by the suites.

use serde::Serialize;

use crate::simplicial::CheckMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

/// A concrete counterexample.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which identity or property failed.
    pub relation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<isize>,
    pub element: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl Witness {
    pub fn new(relation: impl Into<String>, element: impl Into<String>) -> Self {
        Witness {
            relation: relation.into(),
            element: element.into(),
            ..Default::default()
        }
    }

    pub fn ij(mut self, i: usize, j: usize) -> Self {
        self.i = Some(i);
        self.j = Some(j);
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn level(mut self, n: isize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.lhs = Some(lhs.into());
        self.rhs = Some(rhs.into());
        self
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.relation)?;
        for (name, v) in [("i", self.i), ("j", self.j), ("k", self.k)] {
            if let Some(v) = v {
                write!(f, " {name}={v}")?;
            }
        }
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        write!(f, " at {}", self.element)?;
        if let (Some(l), Some(r)) = (&self.lhs, &self.rhs) {
            write!(f, " ({l} != {r})")?;
        }
        Ok(())
    }
}

/// Outcome of an exhaustive or sampled identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub status: Status,
    pub checked_count: usize,
    pub mode: CheckMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn new(suite: impl Into<String>, mode: CheckMode) -> Self {
        VerifyReport {
            suite: suite.into(),
            status: Status::Pass,
            checked_count: 0,
            mode,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    /// Records a failure unless an earlier one is already recorded.
    pub fn fail(&mut self, w: Witness) {
        if self.witness.is_none() {
            self.status = Status::Fail;
            self.witness = Some(w);
        }
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
