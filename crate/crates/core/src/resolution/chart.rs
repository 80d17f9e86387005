use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Nonzero dimensions of a bigraded vector space within bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub s_max: usize,
    pub t_max: usize,
    #[serde(with = "triples")]
    entries: BTreeMap<(usize, usize), usize>,
}

/// Entries as `[s, t, dim]` lists, so charts survive formats with string-only keys.
mod triples {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, usize), usize>, ser: S) -> Result<S::Ok, S::Error> {
        let v: Vec<[usize; 3]> = m.iter().map(|(&(s, t), &d)| [s, t, d]).collect();
        v.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BTreeMap<(usize, usize), usize>, D::Error> {
        let v = Vec::<[usize; 3]>::deserialize(de)?;
        Ok(v.into_iter().filter(|e| e[2] > 0).map(|[s, t, d]| ((s, t), d)).collect())
    }
}

impl Chart {
    pub fn new(s_max: usize, t_max: usize) -> Self {
        Self {
            s_max,
            t_max,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, s: usize, t: usize) -> usize {
        self.entries.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, s: usize, t: usize, dim: usize) {
        if dim == 0 {
            self.entries.remove(&(s, t));
        } else {
            self.entries.insert((s, t), dim);
        }
    }

    pub fn add(&mut self, s: usize, t: usize, dim: usize) {
        let d = self.get(s, t) + dim;
        self.set(s, t, d);
    }

    /// `((s, t), dim)` for every nonzero entry, sorted by `(s, t)`.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// Entries with `s ≤ s_max` and `t ≤ t_max`.
    pub fn restrict(&self, s_max: usize, t_max: usize) -> Chart {
        let mut out = Chart::new(s_max, t_max);
        for ((s, t), d) in self.iter() {
            if s <= s_max && t <= t_max {
                out.set(s, t, d);
            }
        }
        out
    }

    /// `(s, t, this, other)` wherever the two charts differ.
    pub fn diff(&self, other: &Chart) -> Vec<(usize, usize, usize, usize)> {
        let mut keys: Vec<_> = self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(s, t)| {
                let (a, b) = (self.get(s, t), other.get(s, t));
                (a != b).then_some((s, t, a, b))
            })
            .collect()
    }

    /// Line-oriented `s<TAB>t<TAB>dim`, sorted by `(s, t)`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for ((s, t), d) in self.iter() {
            out.push_str(&format!("{s}\t{t}\t{d}\n"));
        }
        out
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|((s, t), d)| if d == 1 { format!("({s},{t})") } else { format!("({s},{t})x{d}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
