//! A record of the identities a verifier has confirmed.

use serde::Serialize;

/// Names of verified identities, in the order they were checked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckLog {
    passed: Vec<String>,
}

impl CheckLog {
    pub fn new() -> Self {
        CheckLog::default()
    }

    /// Records `name` if `ok`, otherwise returns the error built from it.
    pub fn ensure<E>(&mut self, ok: bool, name: impl Into<String>, fail: impl FnOnce(String) -> E) -> Result<(), E> {
        let name = name.into();
        if ok {
            self.passed.push(name);
            Ok(())
        } else {
            Err(fail(name))
        }
    }

    pub fn record(&mut self, name: impl Into<String>) {
        self.passed.push(name.into());
    }

    pub fn passed(&self) -> &[String] {
        &self.passed
    }

    pub fn len(&self) -> usize {
        self.passed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.passed.is_empty()
    }

    pub fn extend(&mut self, prefix: &str, other: &CheckLog) {
        self.passed.extend(other.passed.iter().map(|n| format!("{prefix}: {n}")));
    }
}
