//! Link and chain report structures shared by every verifier in the crate.
//!
//! A chain is an ordered list of claimed inequalities `lhs <= rhs`. Each
//! becomes a [`Link`] carrying both sides, the signed margin
//! `rhs - lhs`, and a status judged against the scale-aware tolerance
//! `tol_abs = 1e-9 * (1 + max(|lhs|, |rhs|))`: `pass` iff
//! `margin >= -tol_abs`. An infinite right-hand side (the `rho = +infinity`
//! sentinel) is always satisfied; a NaN on either side is `indeterminate`,
//! never silently a pass or fail.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Relative scale factor of the pass tolerance.
pub const TOL_REL: f64 = 1e-9;

/// Scale-aware tolerance for a link with the given sides.
pub fn pass_tolerance(lhs: f64, rhs: f64) -> f64 {
    let scale = if lhs.is_finite() && rhs.is_finite() {
        lhs.abs().max(rhs.abs())
    } else {
        0.0
    };
    TOL_REL * (1.0 + scale)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkStatus {
    Pass,
    Fail,
    Indeterminate,
}

impl std::fmt::Display for LinkStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LinkStatus::Pass => "pass",
            LinkStatus::Fail => "fail",
            LinkStatus::Indeterminate => "indeterminate",
        })
    }
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative means the claimed inequality is violated by
    /// that amount.
    pub margin: f64,
    pub status: LinkStatus,
}

impl Link {
    /// Judge `lhs <= rhs` under the crate tolerance. NaN on either side is
    /// indeterminate; `rhs = +infinity` (or `lhs = -infinity`) always
    /// passes.
    pub fn judge(label: impl Into<String>, lhs: f64, rhs: f64) -> Link {
        let label = label.into();
        if lhs.is_nan() || rhs.is_nan() {
            return Link {
                label,
                lhs,
                rhs,
                margin: f64::NAN,
                status: LinkStatus::Indeterminate,
            };
        }
        let margin = rhs - lhs;
        let status = if margin >= -pass_tolerance(lhs, rhs) {
            LinkStatus::Pass
        } else {
            LinkStatus::Fail
        };
        Link {
            label,
            lhs,
            rhs,
            margin,
            status,
        }
    }

    /// A link that could not be evaluated at all.
    pub fn indeterminate(label: impl Into<String>) -> Link {
        Link {
            label: label.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            status: LinkStatus::Indeterminate,
        }
    }
}

/// The full evaluation record of one inequality chain for one scenario.
///
/// `params` is a sorted scenario echo so two runs of the same scenario
/// serialise to identical bytes. `notes` carries hypothesis-check outcomes
/// and any statement-vs-derivation discrepancies the evaluator knows about.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub chain_id: String,
    pub backend: String,
    pub params: BTreeMap<String, String>,
    pub links: Vec<Link>,
    pub notes: Vec<String>,
}

impl ChainReport {
    pub fn new(chain_id: impl Into<String>, backend: impl Into<String>) -> Self {
        ChainReport {
            chain_id: chain_id.into(),
            backend: backend.into(),
            params: BTreeMap::new(),
            links: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn push(&mut self, link: Link) {
        self.links.push(link);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Mark every link indeterminate (used when a hypothesis check fails:
    /// the chain is reported, not judged).
    pub fn demote_to_indeterminate(&mut self) {
        for link in &mut self.links {
            link.status = LinkStatus::Indeterminate;
        }
    }

    pub fn all_pass(&self) -> bool {
        self.links.iter().all(|l| l.status == LinkStatus::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.links.iter().any(|l| l.status == LinkStatus::Fail)
    }

    /// The failing link with the most negative margin, if any.
    pub fn worst_fail(&self) -> Option<&Link> {
        self.links
            .iter()
            .filter(|l| l.status == LinkStatus::Fail)
            .min_by(|a, b| a.margin.partial_cmp(&b.margin).unwrap_or(std::cmp::Ordering::Equal))
    }
}
