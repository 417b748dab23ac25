//! Verification reports shared by all `check_*` functions.

use std::collections::BTreeMap;

use serde::Serialize;

/// Counterexamples kept verbatim in a report; further failures are counted.
const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub identity: String,
    pub bounds: BTreeMap<String, usize>,
    pub status: Status,
    pub checked: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
}

impl Report {
    pub fn new(identity: impl Into<String>, bounds: &[(&str, usize)]) -> Self {
        Report {
            identity: identity.into(),
            bounds: bounds.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            status: Status::Pass,
            checked: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records one checked instance; `describe` is only called on failure.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    pub fn fail(&mut self, message: String) {
        self.status = Status::Fail;
        self.failures += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(message);
        }
    }

    /// Folds per-cell outcomes (`None` = pass) into the report, in order.
    pub fn absorb(&mut self, outcomes: impl IntoIterator<Item = Option<String>>) {
        for outcome in outcomes {
            self.checked += 1;
            if let Some(msg) = outcome {
                self.fail(msg);
            }
        }
    }

    /// Combines several reports into one under a new identity.
    pub fn merge(identity: impl Into<String>, parts: impl IntoIterator<Item = Report>) -> Report {
        let mut out = Report::new(identity, &[]);
        for part in parts {
            for (k, v) in part.bounds {
                out.bounds.entry(k).or_insert(v);
            }
            out.checked += part.checked;
            out.failures += part.failures;
            if part.status == Status::Fail {
                out.status = Status::Fail;
            }
            for msg in part.counterexamples {
                if out.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    out.counterexamples.push(format!("{}: {msg}", part.identity));
                }
            }
        }
        out
    }
}

/// Order-preserving parallel map over independent cells.
pub(crate) fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
