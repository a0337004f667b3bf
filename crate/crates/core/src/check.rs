//! Outcome records shared by every verification routine.

use std::fmt;

/// Number of counterexamples kept per check; the total is always counted.
pub const MAX_KEPT: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub tuple: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}): {} != {}",
            self.tuple.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

/// Result of checking one law over a family of instances.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            instances: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_KEPT {
                self.counterexamples.push(witness());
            }
        }
    }

    /// Adds an outcome computed elsewhere (e.g. in a parallel map).
    pub fn absorb(&mut self, outcome: Option<Counterexample>) {
        self.record(outcome.is_none(), || outcome.expect("failure witness"));
    }

    pub fn from_outcomes(
        name: impl Into<String>,
        outcomes: impl IntoIterator<Item = Option<Counterexample>>,
    ) -> Self {
        let mut r = CheckResult::new(name);
        for o in outcomes {
            r.absorb(o);
        }
        r
    }

    pub fn first(&self) -> Option<&Counterexample> {
        self.counterexamples.first()
    }
}

/// A named collection of checks.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

pub fn witness(tuple: Vec<String>, lhs: String, rhs: String) -> Counterexample {
    Counterexample { tuple, lhs, rhs }
}

static PARALLEL: std::sync::atomic::AtomicBool = std::sync::atomic::AtomicBool::new(true);

/// Enables or disables data-parallel evaluation of independent instances.
pub fn set_parallel(on: bool) {
    PARALLEL.store(on, std::sync::atomic::Ordering::Relaxed);
}

pub fn parallel_enabled() -> bool {
    PARALLEL.load(std::sync::atomic::Ordering::Relaxed)
}

/// Maps `f` over `0..n`, in parallel when enabled; output order is stable.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if parallel_enabled() {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}
