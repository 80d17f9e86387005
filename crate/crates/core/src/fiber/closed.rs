use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::resolution::Chart;

use super::Family;

/// One summand of a closed-form chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Summand {
    /// The unit at `(0, 0)`.
    Unit,
    /// `(s, s)` for every `s`.
    H0Tower,
    Class { s: usize, t: usize },
    /// `(1, 2i)` for each power of two `i ≤ i_max`: the classes `h_j`, `j ≥ 1`.
    PowerClasses { i_max: usize },
    /// `(0, 2i − 1)` for each `i ≤ i_max` that is not a power of two.
    NonPowerClasses { i_max: usize },
}

/// A symbolic chart, evaluable within any bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormChart {
    pub summands: Vec<Summand>,
}

impl ClosedFormChart {
    pub fn evaluate(&self, s_max: usize, t_max: usize) -> Chart {
        let mut chart = Chart::new(s_max, t_max);
        let mut put = |s: usize, t: usize| {
            if s <= s_max && t <= t_max {
                chart.add(s, t, 1);
            }
        };
        for summand in &self.summands {
            match *summand {
                Summand::Unit => put(0, 0),
                Summand::H0Tower => (0..=s_max).for_each(|s| put(s, s)),
                Summand::Class { s, t } => put(s, t),
                Summand::PowerClasses { i_max } => (1..=i_max).filter(|i| i.is_power_of_two()).for_each(|i| put(1, 2 * i)),
                Summand::NonPowerClasses { i_max } => (1..=i_max).filter(|i| !i.is_power_of_two()).for_each(|i| put(0, 2 * i - 1)),
            }
        }
        chart
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Summand::Unit => write!(f, "F"),
            Summand::H0Tower => write!(f, "F[h0]"),
            Summand::Class { s, t } => write!(f, "Σ^{{{s},{t}}}F"),
            Summand::PowerClasses { i_max } => write!(f, "⊕_{{2^j ≤ {}}} Σ^{{1,2^j}}F", 2 * i_max),
            Summand::NonPowerClasses { i_max } => write!(f, "⊕_{{i ≤ {i_max}, i not 2^k}} Σ^{{0,2i-1}}F"),
        }
    }
}

impl fmt::Display for ClosedFormChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// The E₃ chart each family should have.
pub fn expected_chart(family: Family) -> Result<ClosedFormChart> {
    family.validate()?;
    let summands = match family {
        Family::Fn { n } => vec![Summand::Unit, Summand::Class { s: 1, t: n }],
        Family::FnZ { n } => vec![Summand::H0Tower, Summand::Class { s: 1, t: n }],
        Family::F { i_max, .. } => vec![
            Summand::H0Tower,
            Summand::PowerClasses { i_max },
            Summand::NonPowerClasses { i_max },
        ],
    };
    Ok(ClosedFormChart { summands })
}
