//! End-to-end E₃ charts for the fibers of `Sqⁿ`, of its integral lift, and of
//! the sum of all even squares, with one checkpoint per supporting lemma.

mod checks;
mod closed;

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::SteenrodAlgebra;
use crate::error::{Error, Result};
use crate::les::{d_map, DualPath};
use crate::module::{sq_map, sqz_map, u_map, ModuleHom};
use crate::resolution::Chart;

pub use checks::Checkpoint;
pub use closed::{expected_chart, ClosedFormChart, Summand};

/// The three map families whose fibers are charted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    /// `Sqⁿ: H → ΣⁿH`, cohomology map `ΣⁿA → A`.
    Fn { n: usize },
    /// `Sqⁿ` after reduction from `HZ`, cohomology map `ΣⁿA → A/ASq¹`.
    FnZ { n: usize },
    /// All even squares `Sq^{2i}`, `0 < i ≤ i_max`, out of `HZ`.
    F { i_max: usize, conjugate: bool },
}

impl Family {
    /// Rejects parameters with no meaningful fiber chart.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::Fn { n: 0 } => Err(Error::InvalidMap("Fn needs n ≥ 1".into())),
            Family::FnZ { n } if n < 2 => Err(Error::InvalidMap(
                "FnZ needs n ≥ 2: Sq1 vanishes on A/ASq1, so n = 1 is the fiber of the zero map".into(),
            )),
            Family::F { i_max: 0, .. } => Err(Error::InvalidMap("F needs i_max ≥ 1".into())),
            _ => Ok(()),
        }
    }

    /// The cohomology map through internal degree `t_max`.
    pub fn map(&self, algebra: &Arc<SteenrodAlgebra>, t_max: usize) -> Result<ModuleHom> {
        self.validate()?;
        match *self {
            Family::Fn { n } => sq_map(algebra, n, t_max),
            Family::FnZ { n } => sqz_map(algebra, n, t_max),
            Family::F { i_max, conjugate } => u_map(algebra, i_max, conjugate, t_max),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Fn { n } => write!(f, "Fn n={n}"),
            Family::FnZ { n } => write!(f, "FnZ n={n}"),
            Family::F { i_max, conjugate: false } => write!(f, "F i_max={i_max}"),
            Family::F { i_max, conjugate: true } => write!(f, "F i_max={i_max} conjugate"),
        }
    }
}

/// `(r, source, target)`: a possible `d_r` between two nonzero chart positions.
pub type ResidualPair = (usize, (usize, usize), (usize, usize));

/// Wall-clock time of one phase of a run.
#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub phase: String,
    pub millis: f64,
}

/// Everything a fiber run checked, plus the computed and expected charts.
#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub family: Family,
    pub s_max: usize,
    pub t_max: usize,
    pub checkpoints: Vec<Checkpoint>,
    /// `ker D` in `Σ⁻¹K` coordinates.
    pub kernel: Chart,
    /// `coker D` in `C` coordinates.
    pub cokernel: Chart,
    pub computed: Chart,
    pub expected: Chart,
    /// `(s, t, computed, expected)` wherever they differ.
    pub diff: Vec<(usize, usize, usize, usize)>,
    /// Potential higher differentials `(r, source, target)` with `r ≥ 3`.
    pub residual_pairs: Vec<ResidualPair>,
    pub timings: Vec<Timing>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.diff.is_empty() && self.checkpoints.iter().all(|c| c.passed)
    }

    /// The first failing checkpoint, or `"chart"` when only the diff fails.
    pub fn first_failure(&self) -> Option<(&str, Option<(usize, usize)>)> {
        if let Some(c) = self.checkpoints.iter().find(|c| !c.passed) {
            return Some((&c.name, c.first_failure));
        }
        self.diff.first().map(|&(s, t, _, _)| ("chart", Some((s, t))))
    }
}

/// Runs `family` on the window `s ≤ s_max`, `t ≤ t_max` with a fresh algebra.
pub fn run_fiber(family: Family, s_max: usize, t_max: usize) -> Result<FiberReport> {
    let algebra = Arc::new(SteenrodAlgebra::new(t_max + 1));
    run_fiber_with(&algebra, family, s_max, t_max)
}

/// Builds the map, factors it, computes `D` both ways, evaluates every
/// checkpoint and diffs the E₃ chart against the closed form.
///
/// The resolutions run one internal degree and two homological degrees past
/// the window, so every chart entry inside it is exact and the diff covers
/// the whole window.
pub fn run_fiber_with(algebra: &Arc<SteenrodAlgebra>, family: Family, s_max: usize, t_max: usize) -> Result<FiberReport> {
    family.validate()?;
    if let Family::F { i_max, .. } = family {
        // Every power of two through t_max + 1 must come from a summand.
        if 2 * i_max < t_max {
            return Err(Error::Bounds(format!("F needs 2·i_max ≥ t_max, got i_max={i_max}, t_max={t_max}")));
        }
    }
    if algebra.max_degree() < t_max + 1 {
        return Err(Error::DegreeOverflow {
            degree: t_max + 1,
            bound: algebra.max_degree(),
        });
    }
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |phase: &str, timings: &mut Vec<Timing>| {
        timings.push(Timing {
            phase: phase.to_string(),
            millis: clock.elapsed().as_secs_f64() * 1e3,
        });
        clock = Instant::now();
    };

    let map = family.map(algebra, t_max + 1)?;
    let fac = map.factor_les()?;
    lap("factor", &mut timings);
    let dp: DualPath = crate::les::dual_path(&fac, s_max, t_max)?;
    lap("resolve and D", &mut timings);
    let checkpoints = checks::run(family, &dp)?;
    lap("checkpoints", &mut timings);

    let (kernel, cokernel) = dp.composite.kernel_cokernel();
    let computed = dp.composite.e3_chart();
    let expected = expected_chart(family)?.evaluate(s_max, t_max);
    let diff = computed.diff(&expected);
    let residual_pairs = sparsity_collapse_check(&computed, 3);
    Ok(FiberReport {
        family,
        s_max,
        t_max,
        checkpoints,
        kernel,
        cokernel,
        computed,
        expected,
        diff,
        residual_pairs,
        timings,
    })
}

/// Pairs `(r, (s, t), (s + r, t + r − 1))` with `r ≥ r_min` where both
/// positions of `chart` are nonzero: the only places a higher Adams
/// differential could act. An empty list means collapse by sparsity alone.
pub fn sparsity_collapse_check(chart: &Chart, r_min: usize) -> Vec<ResidualPair> {
    let mut out = Vec::new();
    for ((s, t), _) in chart.iter() {
        for r in r_min.max(2)..=chart.s_max.saturating_sub(s) {
            let target = (s + r, t + r - 1);
            if target.1 <= chart.t_max && chart.get(target.0, target.1) > 0 {
                out.push((r, (s, t), target));
            }
        }
    }
    out
}

/// How the projection onto one factor changes the chart position of the
/// class in stem `2i − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationShift {
    Preserves,
    RaisesByOne,
}

impl fmt::Display for FiltrationShift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiltrationShift::Preserves => "preserves",
            FiltrationShift::RaisesByOne => "raises_by_one",
        })
    }
}

/// Chart positions of the stem `2i − 1` class in E₃ of `F` and of `F_{2iZ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub i: usize,
    pub in_f: (usize, usize),
    pub in_fnz: (usize, usize),
    pub shift: FiltrationShift,
}

/// Compares the position of the stem `2i − 1` class in E₃(F) with its
/// position in E₃(F_{2iZ}). Only chart positions are compared.
pub fn projection_filtration_report(i: usize, s_max: usize, t_max: usize) -> Result<ProjectionReport> {
    if i == 0 || 2 * i > t_max || s_max < 2 {
        return Err(Error::Bounds(format!("need i ≥ 1, 2i ≤ t_max and s_max ≥ 2, got i={i}, ({s_max},{t_max})")));
    }
    let algebra = Arc::new(SteenrodAlgebra::new(t_max + 1));
    let stem_class = |family: Family| -> Result<(usize, usize)> {
        let fac = family.map(&algebra, t_max + 1)?.factor_les()?;
        let chart = d_map(&fac, s_max, t_max)?.e3_chart();
        let hits: Vec<_> = chart.iter().filter(|&((s, t), _)| t == s + 2 * i - 1).collect();
        match hits.as_slice() {
            [((s, t), 1)] => Ok((*s, *t)),
            _ => Err(Error::NotExact(format!("expected one class in stem {} of {family}, got {hits:?}", 2 * i - 1))),
        }
    };
    let in_f = stem_class(Family::F {
        i_max: t_max / 2,
        conjugate: false,
    })?;
    let in_fnz = stem_class(Family::FnZ { n: 2 * i })?;
    let shift = match in_fnz.0.checked_sub(in_f.0) {
        Some(0) => FiltrationShift::Preserves,
        Some(1) => FiltrationShift::RaisesByOne,
        _ => return Err(Error::NotExact(format!("unexpected positions {in_f:?} and {in_fnz:?}"))),
    };
    Ok(ProjectionReport { i, in_f, in_fnz, shift })
}

#[cfg(test)]
mod tests;
