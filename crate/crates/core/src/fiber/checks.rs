use serde::Serialize;

use crate::error::Result;
use crate::les::{long_exact_check, ConnectingMap, DualPath};
use crate::module::min_generator_degrees;
use crate::resolution::{minimal_resolution, Chart};

use super::Family;

/// One named claim and where it first failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Checkpoint {
    pub name: String,
    pub claim: String,
    pub passed: bool,
    pub first_failure: Option<(usize, usize)>,
}

impl Checkpoint {
    fn new(name: &str, claim: String, first_failure: Option<(usize, usize)>) -> Self {
        Self {
            name: name.to_string(),
            claim,
            passed: first_failure.is_none(),
            first_failure,
        }
    }

    fn charts(name: &str, claim: String, got: &Chart, want: &Chart) -> Self {
        Self::new(name, claim, got.diff(want).first().map(|&(s, t, _, _)| (s, t)))
    }

    /// Fails at the first degree where two degree lists disagree.
    fn degrees(name: &str, claim: String, got: &[usize], want: &[usize]) -> Self {
        let bad = (0..=got.len().max(want.len()))
            .find(|&k| got.get(k) != want.get(k))
            .map(|k| match (got.get(k), want.get(k)) {
                (Some(&a), Some(&b)) => a.min(b),
                (a, b) => *a.or(b).unwrap_or(&0),
            });
        Self::new(name, claim, bad.map(|t| (0, t)))
    }
}

fn first_where(s_range: std::ops::RangeInclusive<usize>, t_max: usize, bad: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    s_range.flat_map(|s| (0..=t_max).map(move |t| (s, t))).find(|&(s, t)| bad(s, t))
}

/// `(s, s)` for `s ≤ s_max`, `s ≤ t_max`.
fn tower(s_max: usize, t_max: usize) -> Chart {
    let mut c = Chart::new(s_max, t_max);
    for s in 0..=s_max.min(t_max) {
        c.set(s, s, 1);
    }
    c
}

fn single(s_max: usize, t_max: usize, entries: &[(usize, usize)]) -> Chart {
    let mut c = Chart::new(s_max, t_max);
    for &(s, t) in entries {
        if s <= s_max && t <= t_max {
            c.add(s, t, 1);
        }
    }
    c
}

/// `Ext(target)` modulo the image of `∂`, with `Ext^0(target)` kept whole.
fn boundary_cokernel(d: &ConnectingMap, target: &Chart) -> Chart {
    let mut out = target.restrict(d.s_max + 1, d.t_max);
    for (&(s, t), m) in &d.matrices {
        out.set(s + 1, t, out.get(s + 1, t) - m.rank());
    }
    out
}

fn boundary_kernel(d: &ConnectingMap) -> Chart {
    let mut out = Chart::new(d.s_max, d.t_max);
    for (&(s, t), m) in &d.matrices {
        out.set(s, t, m.rows() - m.rank());
    }
    out
}

fn filtration_zero(c: &Chart) -> Chart {
    c.restrict(0, c.t_max)
}

/// Evaluates the checkpoints of `family` on computed data.
pub(super) fn run(family: Family, dp: &DualPath) -> Result<Vec<Checkpoint>> {
    let res = &dp.resolutions;
    let (s_max, t_max) = (res.s_max, res.t_max);
    let inner = t_max + 1;
    let ik = &dp.boundary_ik;
    let ci = &dp.boundary_ci;
    let i_chart = res.i.generator_chart();
    let c_chart = res.c.generator_chart();
    let (kernel, cokernel) = dp.composite.kernel_cokernel();
    let ci_coker = boundary_cokernel(ci, &c_chart);
    let ci_injective = first_where(0..=ci.s_max, ci.t_max, |s, t| !ci.injective_at(s, t));
    let ik_iso_from = |s0: usize| first_where(s0..=ik.s_max, ik.t_max, |s, t| !ik.iso_at(s, t));
    let mut out = Vec::new();

    match family {
        Family::Fn { n } | Family::FnZ { n } => {
            out.push(Checkpoint::new(
                "first-boundary",
                "∂_IK: Ext^{s,t}(K) → Ext^{s+1,t}(I) is an isomorphism for every s ≥ 0".into(),
                ik_iso_from(0),
            ));
            out.push(Checkpoint::degrees(
                "cyclic-image",
                format!("I is cyclic on one generator in degree {n}"),
                &min_generator_degrees(&res.fac.i),
                &[n],
            ));
        }
        Family::F { .. } => {}
    }

    match family {
        Family::Fn { n } => {
            let iso = first_where(1..=ci.s_max, ci.t_max, |s, t| !ci.iso_at(s, t));
            let hom = filtration_zero(&i_chart).diff(&single(0, inner, &[(0, n)])).first().map(|&(s, t, _, _)| (s, t));
            out.push(Checkpoint::new(
                "second-boundary",
                format!("∂_CI is an isomorphism for s ≥ 1 and carries Hom(I) = Σ^{{0,{n}}}F injectively"),
                iso.or(ci_injective).or(hom),
            ));
            out.push(Checkpoint::charts(
                "second-boundary-cokernel",
                "the unit is the only class of Ext(C) outside the image of ∂_CI".into(),
                &ci_coker,
                &single(ci.s_max + 1, ci.t_max, &[(0, 0)]),
            ));
            out.push(Checkpoint::charts(
                "D-kernel",
                "D is injective".into(),
                &kernel,
                &Chart::new(s_max, t_max),
            ));
            out.push(Checkpoint::charts(
                "D-cokernel",
                format!("coker D = F ⊕ Σ^{{1,{n}}}F"),
                &cokernel,
                &single(s_max, t_max, &[(0, 0), (1, n)]),
            ));
        }
        Family::FnZ { n } => {
            let low = i_chart.iter().find(|&((s, t), _)| t < s + n).map(|(k, _)| k);
            out.push(Checkpoint::new(
                "stem-estimate",
                format!("Ext^{{s,t}}(I) = 0 whenever t − s < {n}"),
                low,
            ));
            let hom = filtration_zero(&i_chart).diff(&single(0, inner, &[(0, n)])).first().map(|&(s, t, _, _)| (s, t));
            out.push(Checkpoint::new(
                "second-boundary",
                format!("∂_CI is injective and Hom(I) = Σ^{{0,{n}}}F"),
                ci_injective.or(hom),
            ));
            out.push(Checkpoint::charts(
                "second-boundary-cokernel",
                "coker ∂_CI is the h0-tower".into(),
                &ci_coker,
                &tower(ci.s_max + 1, ci.t_max),
            ));
            out.push(Checkpoint::charts(
                "D-kernel",
                "D is injective".into(),
                &kernel,
                &Chart::new(s_max, t_max),
            ));
            let mut want = tower(s_max, t_max);
            if n <= t_max {
                want.add(1, n, 1);
            }
            out.push(Checkpoint::charts(
                "D-cokernel",
                format!("coker D = F[h0] ⊕ Σ^{{1,{n}}}F"),
                &cokernel,
                &want,
            ));
        }
        Family::F { i_max, .. } => {
            let c = &res.fac.c;
            let m = res.fac.map.target();
            let aug = (0..=inner)
                .find(|&d| c.dims()[d] != usize::from(d == 0) || (d > 0 && res.fac.i.dims()[d] != m.dims()[d]))
                .map(|d| (0, d));
            out.push(Checkpoint::new(
                "augmentation-ideal",
                "I is the augmentation ideal of A/ASq1, so C = F".into(),
                aug,
            ));
            let top = (2 * i_max).min(inner);
            let powers: Vec<usize> = (1..).map(|j| 1usize << j).take_while(|&d| d <= top).collect();
            out.push(Checkpoint::degrees(
                "indecomposable-generators",
                "I is minimally generated by the classes of Sq^{2^j}, j ≥ 1".into(),
                &min_generator_degrees(&res.fac.i),
                &powers,
            ));
            out.push(Checkpoint::new(
                "CI-boundary",
                "∂_CI: Ext(I) → Ext(F) is injective".into(),
                ci_injective,
            ));
            out.push(Checkpoint::charts(
                "CI-boundary-cokernel",
                "coker ∂_CI is the h0-tower".into(),
                &ci_coker,
                &tower(ci.s_max + 1, ci.t_max),
            ));
            let hom: Vec<(usize, usize)> = powers.iter().map(|&d| (0, d)).collect();
            out.push(Checkpoint::charts(
                "IK-hom",
                "Hom(I) is spanned by the duals of the summands Σ^{2i}A with i a power of two".into(),
                &filtration_zero(&i_chart),
                &single(0, inner, &hom),
            ));
            let surjective = first_where(0..=ik.s_max, ik.t_max, |s, t| ik.matrix(s, t).rank() != i_chart.get(s + 1, t));
            out.push(Checkpoint::new(
                "IK-boundary",
                "∂_IK is an isomorphism for s > 0 and onto Ext^{1,*}(I) at s = 0".into(),
                ik_iso_from(1).or(surjective),
            ));
            let nonpower: Vec<(usize, usize)> =
                (1..=i_max).filter(|i| !i.is_power_of_two()).map(|i| (0, 2 * i)).collect();
            out.push(Checkpoint::charts(
                "IK-kernel",
                "ker ∂_IK is Σ^{0,2i}F for each i not a power of two".into(),
                &boundary_kernel(ik),
                &single(0, ik.t_max, &nonpower),
            ));
            let shifted: Vec<(usize, usize)> = nonpower.iter().map(|&(s, t)| (s, t - 1)).collect();
            out.push(Checkpoint::charts(
                "D-kernel",
                "ker D is Σ^{0,2i−1}F for each i not a power of two".into(),
                &kernel,
                &single(s_max, t_max, &shifted),
            ));
            let mut want = tower(s_max, t_max);
            for &(_, d) in &hom {
                if d <= t_max {
                    want.add(1, d, 1);
                }
            }
            out.push(Checkpoint::charts(
                "D-cokernel",
                "coker D = F[h0] ⊕ Σ^{1,2^j}F for j ≥ 1".into(),
                &cokernel,
                &want,
            ));
        }
    }

    let fac = &res.fac;
    let n_res = minimal_resolution(fac.map.source().clone(), s_max, inner)?;
    let m_res = minimal_resolution(fac.map.target().clone(), s_max + 1, inner)?;
    let first = long_exact_check(&fac.first(), &res.k, &n_res, &res.i, ik)?.check();
    out.push(Checkpoint::new(
        "exactness-first",
        "the Ext sequence of 0 → K → N → I → 0 is exact".into(),
        first.first_failure.map(|(s, t, _)| (s, t)),
    ));
    let second = long_exact_check(&fac.second(), &res.i, &m_res, &res.c, ci)?.check();
    out.push(Checkpoint::new(
        "exactness-second",
        "the Ext sequence of 0 → I → M → C → 0 is exact".into(),
        second.first_failure.map(|(s, t, _)| (s, t)),
    ));
    out.push(Checkpoint::new(
        "dual-path",
        "∂_CI ∂_IK equals Yoneda composition with K → N → M → C".into(),
        dp.composite.diff(&dp.yoneda).first().copied(),
    ));
    Ok(out)
}
