//! JSON line types written by the binary.

use std::time::Duration;

use nsf_core::verifier::VerificationReport;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: &'static str,
    pub parameters: serde_json::Value,
    pub tool_version: &'static str,
    pub started: String,
    pub finished: String,
}

/// One verified segment; also the checkpoint record format.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentLine {
    pub lo: u64,
    pub hi: u64,
    pub covered: u64,
    pub targeted: u64,
    pub fallback: u64,
    pub exceptions: Vec<u64>,
    pub ms: u64,
}

impl From<&VerificationReport> for SegmentLine {
    fn from(r: &VerificationReport) -> Self {
        SegmentLine {
            lo: r.lo,
            hi: r.hi,
            covered: r.covered_count,
            targeted: r.targeted_count,
            fallback: r.fallback_count,
            exceptions: r.exceptions.clone(),
            ms: r.elapsed.as_millis() as u64,
        }
    }
}

impl From<&SegmentLine> for VerificationReport {
    fn from(s: &SegmentLine) -> Self {
        VerificationReport {
            lo: s.lo,
            hi: s.hi,
            covered_count: s.covered,
            targeted_count: s.targeted,
            fallback_count: s.fallback,
            exceptions: s.exceptions.clone(),
            elapsed: Duration::from_millis(s.ms),
        }
    }
}

/// Summary closing a `verify` run.
#[derive(Debug, Serialize)]
pub struct TotalLine {
    #[serde(flatten)]
    pub totals: SegmentLine,
    pub segments: usize,
    pub resumed: usize,
}
