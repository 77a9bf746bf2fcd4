use serde::Serialize;

/// One named check with an optional witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str, holds: bool, witness: impl FnOnce() -> String) -> Self {
        Check {
            name: name.to_string(),
            holds,
            witness: if holds { None } else { Some(witness()) },
        }
    }
}

/// True iff every check holds.
pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}
