//! Outcome records shared by all checks.

use alloc::format;
use alloc::string::{String, ToString};

use crate::scalar::{CertifyError, GridCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// One verified (or refuted) identity.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    /// Short label of the identity being checked.
    pub anchor: &'static str,
    pub status: Status,
    /// Offending point or entry on failure, certificate summary on success.
    pub witness: Option<String>,
    pub detail: String,
    /// Negative controls are expected to fail.
    pub control: bool,
    /// Set on checks of a formula taken verbatim where the computation
    /// disagrees; the text says what holds instead.
    pub discrepancy: Option<&'static str>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, anchor: &'static str, status: Status, detail: impl Into<String>) -> Self {
        CheckOutcome { name: name.into(), anchor, status, witness: None, detail: detail.into(), control: false, discrepancy: None }
    }

    pub fn pass(name: impl Into<String>, anchor: &'static str, detail: impl Into<String>) -> Self {
        Self::new(name, anchor, Status::Pass, detail)
    }

    pub fn fail(name: impl Into<String>, anchor: &'static str, witness: impl Into<String>) -> Self {
        let mut o = Self::new(name, anchor, Status::Fail, "");
        o.witness = Some(witness.into());
        o
    }

    pub fn from_bool(name: impl Into<String>, anchor: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        if ok {
            Self::pass(name, anchor, detail)
        } else {
            Self::fail(name, anchor, detail)
        }
    }

    pub fn from_certificate(name: impl Into<String>, anchor: &'static str, cert: &Result<GridCertificate, CertifyError>) -> Self {
        match cert {
            Ok(c) if c.holds => Self::pass(name, anchor, format!("{} grid points, degree bounds {:?}, {} shifts", c.points_checked, c.bounds, c.shifts)),
            Ok(c) => {
                let w = c.witness.as_ref().map(|w| format!("at {:?}: {}", w.point, w.detail)).unwrap_or_default();
                Self::fail(name, anchor, w)
            }
            Err(e) => Self::new(name, anchor, Status::Inconclusive, e.to_string()),
        }
    }

    pub fn as_control(mut self) -> Self {
        self.control = true;
        self
    }

    pub fn as_discrepancy(mut self, note: &'static str) -> Self {
        self.discrepancy = Some(note);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Whether the result matches expectation: controls and recorded
    /// discrepancies must fail, everything else must pass.
    pub fn as_expected(&self) -> bool {
        if self.control || self.discrepancy.is_some() {
            self.status == Status::Fail
        } else {
            self.status == Status::Pass
        }
    }
}
