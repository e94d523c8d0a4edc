use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Failed,
    NotApplicable,
}

/// One checked statement with an optional counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Clause {
    pub fn new(name: impl Into<String>, witness: Option<String>) -> Self {
        Clause {
            name: name.into(),
            holds: witness.is_none(),
            witness,
        }
    }

    pub fn from_bool(
        name: impl Into<String>,
        holds: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        Clause::new(name, (!holds).then(witness))
    }
}

/// Outcome of checking a structural statement clause by clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    /// The statement being certified, in words.
    pub claim: String,
    pub status: Status,
    pub clauses: Vec<Clause>,
    /// Hypotheses that failed, when the status is not-applicable.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub unmet: Vec<String>,
}

impl Certificate {
    pub fn from_clauses(name: &str, claim: &str, clauses: Vec<Clause>) -> Self {
        let status = if clauses.iter().all(|c| c.holds) {
            Status::Verified
        } else {
            Status::Failed
        };
        Certificate {
            name: name.into(),
            claim: claim.into(),
            status,
            clauses,
            unmet: Vec::new(),
        }
    }

    pub fn not_applicable(name: &str, claim: &str, unmet: Vec<String>) -> Self {
        Certificate {
            name: name.into(),
            claim: claim.into(),
            status: Status::NotApplicable,
            clauses: Vec::new(),
            unmet,
        }
    }

    pub fn verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Failed
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}
