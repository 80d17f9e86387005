use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::f2::BitMatrix;
use crate::module::ShortExact;
use crate::resolution::{lift_hom, Chart, Resolution};

use super::ConnectingMap;

/// Which group of the long exact sequence a check sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LesSlot {
    Quotient,
    Middle,
    Sub,
}

impl fmt::Display for LesSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LesSlot::Quotient => "Ext(quotient)",
            LesSlot::Middle => "Ext(middle)",
            LesSlot::Sub => "Ext(sub)",
        })
    }
}

/// Outcome of an exactness check, with the first failing slot in `(s, t, slot)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesReport {
    pub checked: usize,
    pub first_failure: Option<(usize, usize, LesSlot)>,
}

impl LesReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `⋯ → Ext^s(X'') → Ext^s(X) → Ext^s(X') → Ext^{s+1}(X'') → ⋯` on minimal
/// generators, for `s ≤ s_max` and `t ≤ t_max`.
#[derive(Clone, Debug)]
pub struct ExtLes {
    pub s_max: usize,
    pub t_max: usize,
    pub sub: Chart,
    pub middle: Chart,
    pub quotient: Chart,
    /// `Ext^{s,t}(X'') → Ext^{s,t}(X)`.
    pub p_star: BTreeMap<(usize, usize), BitMatrix>,
    /// `Ext^{s,t}(X) → Ext^{s,t}(X')`.
    pub i_star: BTreeMap<(usize, usize), BitMatrix>,
    /// `Ext^{s,t}(X') → Ext^{s+1,t}(X'')`.
    pub delta: BTreeMap<(usize, usize), BitMatrix>,
}

/// Assembles the long exact sequence of `ses` from resolutions of its three
/// terms and a connecting map. The maps induced by the inclusion and the
/// projection come from lifting them to the resolutions.
pub fn long_exact_check(
    ses: &ShortExact,
    sub: &Resolution,
    middle: &Resolution,
    quotient: &Resolution,
    delta: &ConnectingMap,
) -> Result<ExtLes> {
    if quotient.s_max() == 0 {
        return Err(Error::Bounds("the quotient resolution needs at least two stages".into()));
    }
    let s_max = sub.s_max().min(middle.s_max()).min(quotient.s_max() - 1).min(delta.s_max);
    let t_max = sub.t_max().min(middle.t_max()).min(quotient.t_max()).min(delta.t_max);
    let p = lift_hom(&ses.projection, middle, quotient, s_max + 1)?;
    let i = lift_hom(&ses.inclusion, sub, middle, s_max + 1)?;
    let mut les = ExtLes {
        s_max,
        t_max,
        sub: sub.generator_chart().restrict(s_max, t_max),
        middle: middle.generator_chart().restrict(s_max, t_max),
        quotient: quotient.generator_chart().restrict(s_max + 1, t_max),
        p_star: BTreeMap::new(),
        i_star: BTreeMap::new(),
        delta: BTreeMap::new(),
    };
    for s in 0..=s_max {
        for t in 0..=t_max {
            les.p_star.insert((s, t), p.ext_matrix(middle, quotient, s, t));
            les.i_star.insert((s, t), i.ext_matrix(sub, middle, s, t));
            les.delta.insert((s, t), delta.matrix(s, t).clone());
        }
    }
    Ok(les)
}

/// `im(a) = ker(b)` at a group of dimension `dim`.
fn exact_at(a: &BitMatrix, b: &BitMatrix, dim: usize) -> bool {
    a.cols() == dim && b.rows() == dim && a.mul(b).is_zero() && a.rank() + b.rank() == dim
}

impl ExtLes {
    /// Checks exactness at every group in the window, including injectivity
    /// of `Ext^0(X'') → Ext^0(X)`.
    pub fn check(&self) -> LesReport {
        let mut checked = 0;
        for s in 0..=self.s_max {
            for t in 0..=self.t_max {
                let p = &self.p_star[&(s, t)];
                let i = &self.i_star[&(s, t)];
                let d = &self.delta[&(s, t)];
                let into_quotient = if s == 0 {
                    BitMatrix::zeros(0, self.quotient.get(0, t))
                } else {
                    self.delta[&(s - 1, t)].clone()
                };
                let slots = [
                    (LesSlot::Quotient, exact_at(&into_quotient, p, self.quotient.get(s, t))),
                    (LesSlot::Middle, exact_at(p, i, self.middle.get(s, t))),
                    (LesSlot::Sub, exact_at(i, d, self.sub.get(s, t))),
                ];
                for (slot, ok) in slots {
                    checked += 1;
                    if !ok {
                        return LesReport {
                            checked,
                            first_failure: Some((s, t, slot)),
                        };
                    }
                }
            }
        }
        LesReport {
            checked,
            first_failure: None,
        }
    }
}
