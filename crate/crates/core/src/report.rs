use serde::Serialize;

/// One verified law: a name, a verdict, and a witness when the law fails.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LawCheck {
    pub law: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A structured check report: a titled list of law verdicts.
///
/// Used by every `check_*` entry point so the CLI can print one JSON shape
/// for all suites.
#[derive(Debug, Clone, Serialize, PartialEq, Eq, Default)]
pub struct Report {
    pub title: String,
    pub checks: Vec<LawCheck>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), checks: Vec::new() }
    }

    pub fn pass(&mut self, law: impl Into<String>) {
        self.checks.push(LawCheck { law: law.into(), pass: true, witness: None });
    }

    pub fn fail(&mut self, law: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(LawCheck { law: law.into(), pass: false, witness: Some(witness.into()) });
    }

    /// Record `pass` when `ok`, otherwise `fail` with the given witness.
    pub fn check(&mut self, law: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(law);
        } else {
            self.fail(law, witness());
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            match (&c.pass, &c.witness) {
                (true, _) => writeln!(f, "  ok   {}", c.law)?,
                (false, Some(w)) => writeln!(f, "  FAIL {} ({})", c.law, w)?,
                (false, None) => writeln!(f, "  FAIL {}", c.law)?,
            }
        }
        Ok(())
    }
}
