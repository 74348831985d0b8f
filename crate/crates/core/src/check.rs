use serde::Serialize;

/// Outcome of one named verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of individual identities examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, checked: usize) -> Self {
        Self {
            name: name.into(),
            passed: true,
            checked,
            counterexample: None,
        }
    }

    pub fn fail(name: impl Into<String>, checked: usize, why: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            checked,
            counterexample: Some(why.into()),
        }
    }

    /// Pass if `first_failure` is `None`.
    pub fn from_failure(name: impl Into<String>, checked: usize, first_failure: Option<String>) -> Self {
        match first_failure {
            None => Self::pass(name, checked),
            Some(why) => Self::fail(name, checked, why),
        }
    }
}
