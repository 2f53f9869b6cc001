use std::collections::BTreeMap;
use std::fmt;

/// One named check of a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Ordered list of named checks backing a verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    checks: Vec<Check>,
}

impl Certificate {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, witness: Option<String>) {
        self.checks.push(Check { name: name.into(), pass, witness });
    }

    /// Records `pass`, attaching the witness only on failure.
    pub fn record(&mut self, name: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) {
        let w = if pass { None } else { Some(witness()) };
        self.push(name, pass, w);
    }

    pub fn extend(&mut self, prefix: &str, other: &Certificate) {
        for c in &other.checks {
            self.checks.push(Check {
                name: format!("{prefix}{}", c.name),
                pass: c.pass,
                witness: c.witness.clone(),
            });
        }
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// name → (pass, witness), sorted by name.
    pub fn to_map(&self) -> BTreeMap<String, (bool, Option<String>)> {
        self.checks.iter().map(|c| (c.name.clone(), (c.pass, c.witness.clone()))).collect()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.pass { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
