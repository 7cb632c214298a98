use serde::{Deserialize, Serialize};

use super::{basic_from_equivariant, BasicReport, DegreeSeries, Verdict};
use crate::error::Result;
use crate::gkm::{equivariant_dims_with, GkmGraph, Parallelism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    InconclusiveAtCutoff,
    /// The check does not apply to this input.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl TheoremCheck {
    fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        TheoremCheck {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub cutoff: usize,
    pub equivariant: DegreeSeries,
    pub basic: DegreeSeries,
    pub report: BasicReport,
    pub checks: Vec<TheoremCheck>,
    /// Basic cohomology is `Q[z]/(z^{n+1})` with `deg z = 2`.
    pub minimal: bool,
}

impl CheckReport {
    pub fn check(&self, name: &str) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn any_inconclusive(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.status == CheckStatus::InconclusiveAtCutoff)
    }
}

pub const ODD_VANISHING: &str = "odd_basic_vanishing";
pub const ORBIT_COUNT: &str = "orbit_count";
pub const LOWER_BOUND: &str = "closed_orbit_lower_bound";
pub const MINIMAL_RING: &str = "minimal_ring";

/// Computes the equivariant and basic series up to `cutoff` and evaluates
/// the series-level theorem checks on them.
pub fn run_checks(g: &GkmGraph, cutoff: usize) -> Result<CheckReport> {
    run_checks_with(g, cutoff, Parallelism::default())
}

pub fn run_checks_with(g: &GkmGraph, cutoff: usize, parallelism: Parallelism) -> Result<CheckReport> {
    use CheckStatus::*;

    let equivariant = equivariant_dims_with(g, cutoff, parallelism)?;
    let (basic, report) = basic_from_equivariant(&equivariant, g.rank(), cutoff)?;
    let settled = report.verdict == Verdict::PolynomialUpToCutoff;
    let unsettled = |name: &str| {
        TheoremCheck::new(
            name,
            InconclusiveAtCutoff,
            format!("basic series has not terminated by degree {cutoff}"),
        )
    };
    let mut checks = Vec::new();

    let odd: Vec<usize> = (1..=cutoff).step_by(2).filter(|&k| basic.get(k) != 0).collect();
    checks.push(if !g.fibers_even_supported() {
        TheoremCheck::new(ODD_VANISHING, Skipped, "some fiber has odd-degree cohomology")
    } else if !odd.is_empty() {
        TheoremCheck::new(ODD_VANISHING, Fail, format!("nonzero odd degrees {odd:?}"))
    } else if !settled {
        unsettled(ODD_VANISHING)
    } else {
        TheoremCheck::new(ODD_VANISHING, Pass, "all odd coefficients vanish")
    });

    let expected = g.total_fiber_dim() as i64;
    checks.push(if !settled {
        unsettled(ORBIT_COUNT)
    } else {
        let status = if report.sum == expected { Pass } else { Fail };
        TheoremCheck::new(
            ORBIT_COUNT,
            status,
            format!("basic total {} vs closed-orbit fiber total {expected}", report.sum),
        )
    });

    let n = match g.manifold_dim() {
        Some(dim) if dim % 2 == 1 => Some((dim - 1) / 2),
        _ => None,
    };
    checks.push(match (n, g.manifold_dim()) {
        (None, None) => TheoremCheck::new(LOWER_BOUND, Skipped, "no manifold dimension given"),
        (None, Some(dim)) => TheoremCheck::new(LOWER_BOUND, Skipped, format!("manifold dimension {dim} is even")),
        (Some(_), _) if !settled => unsettled(LOWER_BOUND),
        (Some(n), _) => {
            let status = if report.sum > n as i64 { Pass } else { Fail };
            TheoremCheck::new(LOWER_BOUND, status, format!("{} >= {}", report.sum, n + 1))
        }
    });

    let mut minimal = false;
    checks.push(match n {
        None => TheoremCheck::new(MINIMAL_RING, Skipped, "no odd manifold dimension given"),
        Some(_) if !settled => unsettled(MINIMAL_RING),
        Some(n) if report.sum != n as i64 + 1 => TheoremCheck::new(
            MINIMAL_RING,
            Skipped,
            format!("basic total {} differs from n + 1 = {}", report.sum, n + 1),
        ),
        Some(n) => {
            let target = DegreeSeries::new((0..=2 * n).map(|k| i64::from(k % 2 == 0)).collect(), cutoff);
            minimal = basic == target;
            let status = if minimal { Pass } else { Fail };
            TheoremCheck::new(MINIMAL_RING, status, format!("basic series equals 1 + t^2 + ... + t^{}", 2 * n))
        }
    });

    Ok(CheckReport {
        cutoff,
        equivariant,
        basic,
        report,
        checks,
        minimal,
    })
}
