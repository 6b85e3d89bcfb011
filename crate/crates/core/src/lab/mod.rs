//! Verification campaigns and DOT rendering.
//!
//! A campaign runs a fixed list of named checks and collects them in a
//! [`CampaignReport`]. Checks are sorted by name before rendering, so
//! reports are byte-identical across runs with the same configuration.

mod campaigns;
mod dot;

use std::fmt::Write;
use std::time::Duration;

use serde::Serialize;

pub use campaigns::{
    campaign_claims_micro, campaign_conditions, campaign_observation, campaign_reduction_forward,
    default_forward_graphs, ForwardConfig, ObservationConfig, CAMPAIGN_NAMES,
};
pub use dot::{emit_dot, emit_instance_dot};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail {
        detail: String,
        /// Edge list of the offending graph, in the crate's text format.
        counterexample: String,
    },
    Skipped {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub seed: Option<u64>,
    /// Free-form lines describing the instances used.
    pub inventory: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CampaignReport {
    pub fn new(campaign: &str, seed: Option<u64>) -> Self {
        CampaignReport {
            campaign: campaign.to_string(),
            seed,
            inventory: Vec::new(),
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, CheckStatus::Pass);
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>, counterexample: String) {
        self.push(
            name,
            CheckStatus::Fail {
                detail: detail.into(),
                counterexample,
            },
        );
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.push(
            name,
            CheckStatus::Skipped {
                reason: reason.into(),
            },
        );
    }

    pub fn push(&mut self, name: impl Into<String>, status: CheckStatus) {
        self.checks.push(Check {
            name: name.into(),
            status,
        });
    }

    /// Sorts checks by name. Called by the campaigns before returning.
    pub fn finish(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn count(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for ch in &self.checks {
            match ch.status {
                CheckStatus::Pass => c.0 += 1,
                CheckStatus::Fail { .. } => c.1 += 1,
                CheckStatus::Skipped { .. } => c.2 += 1,
            }
        }
        c
    }

    pub fn passed(&self) -> bool {
        self.count().1 == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Fail { .. }))
    }

    pub fn render_text(&self, with_time: bool) -> String {
        let mut s = String::new();
        writeln!(s, "campaign: {}", self.campaign).unwrap();
        if let Some(seed) = self.seed {
            writeln!(s, "seed: {seed}").unwrap();
        }
        for line in &self.inventory {
            writeln!(s, "instance: {line}").unwrap();
        }
        for c in &self.checks {
            match &c.status {
                CheckStatus::Pass => writeln!(s, "pass {}", c.name),
                CheckStatus::Fail { detail, .. } => writeln!(s, "FAIL {}: {detail}", c.name),
                CheckStatus::Skipped { reason } => writeln!(s, "skip {}: {reason}", c.name),
            }
            .unwrap();
        }
        let (p, f, k) = self.count();
        writeln!(s, "summary: {p} passed, {f} failed, {k} skipped").unwrap();
        if with_time {
            writeln!(s, "elapsed_ms: {}", self.elapsed.as_millis()).unwrap();
        }
        s
    }
}
