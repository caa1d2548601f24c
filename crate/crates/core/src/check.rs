//! Named residual checks, the common currency of every certification.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Largest absolute deviation observed; 0 for purely logical checks that pass.
    pub residual: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CheckList {
    pub checks: Vec<Check>,
}

impl CheckList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a residual; passes when it does not exceed `limit`.
    pub fn residual(&mut self, name: impl Into<String>, residual: f64, limit: f64) -> bool {
        let pass = residual <= limit && residual.is_finite();
        self.checks.push(Check { name: name.into(), residual, pass, note: None });
        pass
    }

    pub fn flag(&mut self, name: impl Into<String>, pass: bool) -> bool {
        self.checks.push(Check { name: name.into(), residual: if pass { 0.0 } else { 1.0 }, pass, note: None });
        pass
    }

    pub fn flag_with_note(&mut self, name: impl Into<String>, pass: bool, note: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            residual: if pass { 0.0 } else { 1.0 },
            pass,
            note: Some(note.into()),
        });
        pass
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckList) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.pass)
    }

    pub fn worst_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

/// Three-valued answer; `Unknown` arises from inconclusive randomized searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    /// Conjunction in Kleene's three-valued logic.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Unknown,
        }
    }

    /// Whether two verdicts can describe the same truth value.
    pub fn compatible(self, other: Verdict) -> bool {
        self == other || self == Verdict::Unknown || other == Verdict::Unknown
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}
