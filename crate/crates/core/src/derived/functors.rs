use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FormalObject;
use crate::grmod::{summand_ext1, summand_hom, Summand};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truncation {
    Le(i64),
    Ge(i64),
}

/// Standard truncation: keep the components in degrees `≤ n` or `≥ n`.
pub fn std_truncate(f: &FormalObject, which: Truncation) -> FormalObject {
    let keep = |k: i64| match which {
        Truncation::Le(n) => k <= n,
        Truncation::Ge(n) => k >= n,
    };
    FormalObject::from_parts(f.components().iter().filter(|(&k, _)| keep(k)).map(|(&k, m)| (k, m.clone())))
}

/// `k ↦ dim Hom(F, G[k])`, zero entries omitted.
pub fn derived_hom(f: &FormalObject, g: &FormalObject) -> BTreeMap<i64, usize> {
    let mut out: BTreeMap<i64, usize> = BTreeMap::new();
    for (a, s) in f.pieces() {
        for (b, t) in g.pieces() {
            let h = summand_hom(&s, &t);
            if h > 0 {
                *out.entry(b - a).or_default() += h;
            }
            let e = summand_ext1(&s, &t);
            if e > 0 {
                *out.entry(b - a + 1).or_default() += e;
            }
        }
    }
    out
}

/// Duality against `ω = F(0)`: `F(d)` in degree `k` goes to `F(-d)` in degree `-k`, and
/// `T(g,n)` in degree `k` goes to `T(n-g,n)` in degree `1-k`.
pub fn dualize(f: &FormalObject) -> FormalObject {
    FormalObject::from_summands(f.pieces().map(|(k, s)| match s {
        Summand::Free(d) => (-k, Summand::Free(-d)),
        Summand::Torsion { g, n } => (1 - k, Summand::Torsion { g: n - g, n }),
    }))
}

fn check_n(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::Input(format!("thickening must be at least 1, got {n}")));
    }
    Ok(())
}

/// Derived restriction to `Z_n`, from `0 → F(-n) → F(0) → A/x^n → 0`.
///
/// `H⁰` is `M/x^n M`; `H⁻¹` is the `x^n`-torsion of `M` twisted by `-n`.
pub fn li_star(f: &FormalObject, n: i64) -> Result<FormalObject> {
    check_n(n)?;
    let mut parts = Vec::new();
    for (k, s) in f.pieces() {
        match s {
            Summand::Free(d) => parts.push((k, Summand::Torsion { g: d, n })),
            Summand::Torsion { g, n: m } => {
                let l = m.min(n);
                parts.push((k, Summand::Torsion { g, n: l }));
                parts.push((k - 1, Summand::Torsion { g: g - (m - n).max(0) - n, n: l }));
            }
        }
    }
    Ok(FormalObject::from_summands(parts))
}

/// Derived `x^n`-torsion sections: `H⁰` is the `x^n`-torsion submodule, `H¹` is
/// `M/x^n M` twisted by `+n`.
pub fn ri_flat(f: &FormalObject, n: i64) -> Result<FormalObject> {
    check_n(n)?;
    let mut parts = Vec::new();
    for (k, s) in f.pieces() {
        match s {
            Summand::Free(d) => parts.push((k + 1, Summand::Torsion { g: d + n, n })),
            Summand::Torsion { g, n: m } => {
                let l = m.min(n);
                parts.push((k, Summand::Torsion { g: g - (m - n).max(0), n: l }));
                parts.push((k + 1, Summand::Torsion { g: g + n, n: l }));
            }
        }
    }
    Ok(FormalObject::from_summands(parts))
}

/// Push-forward from `Z_n`: the identity on `x^n`-torsion modules.
pub fn push_z(n: i64, f: &FormalObject) -> Result<FormalObject> {
    check_n(n)?;
    for (k, m) in f.components() {
        if m.free_rank() > 0 || m.max_torsion_length() > n {
            return Err(Error::SiteMismatch {
                site: format!("Z{n}"),
                msg: format!("degree {k} component {m} is not killed by x^{n}"),
            });
        }
    }
    Ok(f.clone())
}

/// Restriction to the open orbit: the free rank in each occupied degree.
pub fn restrict_u(f: &FormalObject) -> BTreeMap<i64, usize> {
    f.components().iter().map(|(&k, m)| (k, m.free_rank())).collect()
}

/// The injective hull `x^{-∞}A/A` twisted so its lowest weight is `offset`; it occupies
/// every weight `≥ offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoFree {
    pub offset: i64,
}

impl CoFree {
    pub fn dim_at(&self, w: i64) -> usize {
        usize::from(w >= self.offset)
    }
}

impl fmt::Display for CoFree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({})", self.offset)
    }
}

/// Local cohomology at the origin: a coherent torsion part plus co-free markers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCohomology {
    pub torsion: FormalObject,
    /// `(degree, marker)` pairs, sorted.
    pub cofree: Vec<(i64, CoFree)>,
}

impl LocalCohomology {
    pub fn dim_at(&self, k: i64, w: i64) -> usize {
        self.torsion.h(k).dim_at(w)
            + self.cofree.iter().filter(|(d, _)| *d == k).map(|(_, c)| c.dim_at(w)).sum::<usize>()
    }
}

impl fmt::Display for LocalCohomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        if !self.torsion.is_zero() {
            terms.push(self.torsion.to_string());
        }
        for (k, c) in &self.cofree {
            terms.push(if *k == 0 { c.to_string() } else { format!("{c}[{}]", -k) });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// `RΓ_Z`, the colimit of `i_{n*} Ri♭_n` over thickenings. Torsion is already supported
/// at the origin; `F(d)` in degree `k` contributes a co-free marker in degree `k + 1`
/// starting at weight `d + 1`.
pub fn r_gamma_z(f: &FormalObject) -> LocalCohomology {
    let mut torsion = Vec::new();
    let mut cofree = Vec::new();
    for (k, s) in f.pieces() {
        match s {
            Summand::Free(d) => cofree.push((k + 1, CoFree { offset: d + 1 })),
            t => torsion.push((k, t)),
        }
    }
    cofree.sort();
    LocalCohomology { torsion: FormalObject::from_summands(torsion), cofree }
}
