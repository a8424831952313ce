use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::grmod::{parse, GradedModule, Summand};
use crate::{Error, Result};

/// A bounded object in normal form: `⊕ M^k[-k]`, one module per cohomological degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalObject {
    comps: BTreeMap<i64, GradedModule>,
}

impl FormalObject {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_parts(parts: impl IntoIterator<Item = (i64, GradedModule)>) -> Self {
        let mut comps: BTreeMap<i64, GradedModule> = BTreeMap::new();
        for (k, m) in parts {
            let e = comps.entry(k).or_default();
            *e = e.direct_sum(&m);
        }
        comps.retain(|_, m| !m.is_zero());
        Self { comps }
    }

    pub fn from_summands(parts: impl IntoIterator<Item = (i64, Summand)>) -> Self {
        Self::from_parts(parts.into_iter().map(|(k, s)| (k, GradedModule::new(vec![s]))))
    }

    /// `M` placed in degree `k`, that is `M[-k]`.
    pub fn at(k: i64, m: GradedModule) -> Self {
        Self::from_parts([(k, m)])
    }

    pub fn module(m: GradedModule) -> Self {
        Self::at(0, m)
    }

    /// The cohomology in degree `k`.
    pub fn h(&self, k: i64) -> GradedModule {
        self.comps.get(&k).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> &BTreeMap<i64, GradedModule> {
        &self.comps
    }

    /// All summands with their degrees.
    pub fn pieces(&self) -> impl Iterator<Item = (i64, Summand)> + '_ {
        self.comps.iter().flat_map(|(&k, m)| m.summands().iter().map(move |&s| (k, s)))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// `F[s]`: the component in degree `k` moves to degree `k - s`.
    pub fn shift(&self, s: i64) -> Self {
        Self { comps: self.comps.iter().map(|(&k, m)| (k - s, m.clone())).collect() }
    }

    pub fn direct_sum(&self, other: &FormalObject) -> Self {
        Self::from_parts(self.comps.iter().chain(other.comps.iter()).map(|(&k, m)| (k, m.clone())))
    }

    pub fn sum<'a>(parts: impl IntoIterator<Item = &'a FormalObject>) -> Self {
        parts.into_iter().fold(Self::zero(), |acc, f| acc.direct_sum(f))
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.comps.keys().next()?, *self.comps.keys().next_back()?))
    }

    pub fn map_components(&self, f: impl Fn(i64, &GradedModule) -> GradedModule) -> Self {
        Self::from_parts(self.comps.iter().map(|(&k, m)| (k, f(k, m))))
    }

    pub fn parse(src: &str) -> Result<Self> {
        Ok(Self::from_summands(parse::shifted(src)?.into_iter().map(|(s, k)| (k, s))))
    }

    /// Degree-keyed grammar strings.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.comps.iter().map(|(k, m)| (k.to_string(), m.to_string())).collect()
    }

    pub fn from_json_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut parts = Vec::new();
        for (k, v) in map {
            let k: i64 = k.trim().parse().map_err(|_| Error::Input(format!("bad degree key {k:?}")))?;
            parts.push((k, parse::module(v)?));
        }
        Ok(Self::from_parts(parts))
    }
}

impl fmt::Display for FormalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .pieces()
            .map(|(k, s)| if k == 0 { s.to_string() } else { format!("{s}[{}]", -k) })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl From<GradedModule> for FormalObject {
    fn from(m: GradedModule) -> Self {
        Self::module(m)
    }
}

impl Serialize for FormalObject {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_map().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalObject {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(d)?;
        Self::from_json_map(&map).map_err(serde::de::Error::custom)
    }
}
