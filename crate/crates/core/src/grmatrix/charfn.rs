use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A finitely supported function `Z -> N`, e.g. the degree profile of a
/// graded free module `sum R(-k)^{f(k)}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharFunction(BTreeMap<i64, u64>);

impl CharFunction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_degrees(degrees: &[i64]) -> Self {
        let mut f = Self::new();
        for &d in degrees {
            f.add(d, 1);
        }
        f
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut f = Self::new();
        for (d, m) in pairs {
            f.add(d, m);
        }
        f
    }

    pub fn add(&mut self, degree: i64, mult: u64) {
        if mult > 0 {
            *self.0.entry(degree).or_insert(0) += mult;
        }
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn rank(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `f#(n) = sum_{k <= n} f(k)`.
    pub fn cumulative(&self, n: i64) -> u64 {
        self.0.range(..=n).map(|(_, m)| m).sum()
    }

    /// Smallest degree in the support.
    pub fn inf(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    /// Largest degree in the support.
    pub fn sup(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &m)| (d, m))
    }

    /// The degree list, ascending, each degree repeated by its multiplicity.
    pub fn degrees(&self) -> Vec<i64> {
        self.iter()
            .flat_map(|(d, m)| std::iter::repeat_n(d, m as usize))
            .collect()
    }

    /// `sum_k k * f(k)`.
    pub fn weighted_sum(&self) -> i64 {
        self.iter().map(|(d, m)| d * m as i64).sum()
    }

    /// Rebuilds a function from its cumulative values on `[lo, hi]`, with
    /// `f#(lo - 1) = 0`. Panics if the sequence decreases.
    pub fn from_cumulative(lo: i64, values: &[u64]) -> Self {
        let mut f = Self::new();
        let mut prev = 0;
        for (i, &v) in values.iter().enumerate() {
            assert!(v >= prev, "cumulative function must be nondecreasing");
            f.add(lo + i as i64, v - prev);
            prev = v;
        }
        f
    }
}

impl std::fmt::Display for CharFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, (d, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {m}")?;
        }
        write!(f, "}}")
    }
}
