use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one identity check. Both sides are always recorded so a failure
/// can be diagnosed from the report alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub n: usize,
    pub mode: String,
    pub pass: bool,
    /// Largest observed deviation; 0 for exact checks that pass.
    pub residual: f64,
    pub lhs: String,
    pub rhs: String,
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: &str, n: usize, mode: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            n,
            mode: mode.to_string(),
            pass: true,
            residual: 0.0,
            lhs: String::new(),
            rhs: String::new(),
            seed: None,
            witnesses: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.lhs = lhs.into();
        self.rhs = rhs.into();
        self
    }

    /// Records a failed case; the report fails from here on.
    pub fn fail(&mut self, witness: impl Into<String>) {
        self.pass = false;
        if self.witnesses.len() < 8 {
            self.witnesses.push(witness.into());
        }
    }

    /// Folds a residual into the report, failing it when above `tol`.
    pub fn observe(&mut self, residual: f64, tol: f64, case: impl FnOnce() -> String) {
        if residual.is_nan() || residual > tol {
            self.fail(format!("{} (residual {residual:e})", case()));
        }
        if residual.is_nan() || residual > self.residual {
            self.residual = residual;
        }
    }

    /// Merges another report for the same check into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.pass &= other.pass;
        if other.residual > self.residual || other.residual.is_nan() {
            self.residual = other.residual;
        }
        for w in other.witnesses {
            if self.witnesses.len() < 8 {
                self.witnesses.push(w);
            }
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} n={} mode={} residual={:e}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.n,
            self.mode,
            self.residual
        )?;
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        if !self.lhs.is_empty() || !self.rhs.is_empty() {
            write!(f, "\n    lhs: {}\n    rhs: {}", self.lhs, self.rhs)?;
        }
        for w in &self.witnesses {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}
