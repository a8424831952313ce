use std::fmt;

use serde::{Deserialize, Serialize};

/// An indecomposable graded module.
///
/// The derived ordering (free before torsion, then generator weight, then length) is
/// the canonical summand order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Summand {
    /// `F(d)`: free of rank one on a generator of weight `d`; occupies `d, d-1, ...`.
    Free(i64),
    /// `T(g,n) = A/(x^n)` with generator in weight `g`; occupies `g, ..., g-n+1`.
    Torsion { g: i64, n: i64 },
}

impl Summand {
    pub fn v(n: i64) -> Self {
        Summand::Torsion { g: n, n: 1 }
    }

    pub fn top(&self) -> i64 {
        match *self {
            Summand::Free(d) => d,
            Summand::Torsion { g, .. } => g,
        }
    }

    /// Weight of the socle, `None` for free summands.
    pub fn socle(&self) -> Option<i64> {
        match *self {
            Summand::Free(_) => None,
            Summand::Torsion { g, n } => Some(g - n + 1),
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Summand::Free(_))
    }

    pub fn length(&self) -> Option<i64> {
        match *self {
            Summand::Free(_) => None,
            Summand::Torsion { n, .. } => Some(n),
        }
    }

    pub fn occupies(&self, w: i64) -> bool {
        match *self {
            Summand::Free(d) => w <= d,
            Summand::Torsion { g, n } => w <= g && w > g - n,
        }
    }

    /// Twist by `F(s)`: all weights move up by `s`.
    pub fn twist(&self, s: i64) -> Self {
        match *self {
            Summand::Free(d) => Summand::Free(d + s),
            Summand::Torsion { g, n } => Summand::Torsion { g: g + s, n },
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Summand::Free(d) => write!(f, "F({d})"),
            Summand::Torsion { g, n } => write!(f, "T({g},{n})"),
        }
    }
}

/// A finitely generated graded module in canonical form: a sorted list of summands.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedModule {
    summands: Vec<Summand>,
}

impl GradedModule {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(d: i64) -> Self {
        Self { summands: vec![Summand::Free(d)] }
    }

    pub fn torsion(g: i64, n: i64) -> Self {
        Self::new(vec![Summand::Torsion { g, n }])
    }

    pub fn v(n: i64) -> Self {
        Self::torsion(n, 1)
    }

    /// Sorts into canonical order. Panics on a torsion length below one.
    pub fn new(mut summands: Vec<Summand>) -> Self {
        assert!(
            summands.iter().all(|s| s.length().is_none_or(|n| n >= 1)),
            "torsion length must be at least 1"
        );
        summands.sort();
        Self { summands }
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let mut s = self.summands.clone();
        s.extend_from_slice(&other.summands);
        Self::new(s)
    }

    pub fn sum<'a>(parts: impl IntoIterator<Item = &'a GradedModule>) -> GradedModule {
        Self::new(parts.into_iter().flat_map(|m| m.summands.iter().copied()).collect())
    }

    pub fn free_rank(&self) -> usize {
        self.summands.iter().filter(|s| s.is_free()).count()
    }

    pub fn free_part(&self) -> GradedModule {
        Self::new(self.summands.iter().copied().filter(Summand::is_free).collect())
    }

    pub fn torsion_part(&self) -> GradedModule {
        Self::new(self.summands.iter().copied().filter(|s| !s.is_free()).collect())
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn generator_weights(&self) -> impl Iterator<Item = i64> + '_ {
        self.summands.iter().map(Summand::top)
    }

    pub fn socle_weights(&self) -> impl Iterator<Item = i64> + '_ {
        self.summands.iter().filter_map(Summand::socle)
    }

    pub fn max_torsion_length(&self) -> i64 {
        self.summands.iter().filter_map(Summand::length).max().unwrap_or(0)
    }

    /// Dimension of the weight-`w` component.
    pub fn dim_at(&self, w: i64) -> usize {
        self.summands.iter().filter(|s| s.occupies(w)).count()
    }

    /// Smallest and largest weights that matter: generator and socle weights.
    pub fn weight_span(&self) -> Option<(i64, i64)> {
        let lo = self
            .summands
            .iter()
            .map(|s| s.socle().unwrap_or(s.top()))
            .min()?;
        let hi = self.generator_weights().max()?;
        Some((lo, hi))
    }

    pub fn twist(&self, s: i64) -> GradedModule {
        Self::new(self.summands.iter().map(|x| x.twist(s)).collect())
    }

    pub fn map_summands(&self, f: impl Fn(&Summand) -> Option<Summand>) -> GradedModule {
        Self::new(self.summands.iter().filter_map(f).collect())
    }
}

impl FromIterator<Summand> for GradedModule {
    fn from_iter<I: IntoIterator<Item = Summand>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for GradedModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GradedModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        super::parse::module(&s).map_err(serde::de::Error::custom)
    }
}
