use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use serde::{Deserialize, Serialize};

use super::FormalObject;
use crate::grmod::linalg::in_span;
use crate::grmod::{
    kernel_basis, parse_q, subquotient, EntryJson, GradedModule, HMatrix, Presentation,
    PresentationJson, Q,
};
use crate::{Error, Result};

/// Whether the homogeneous vector `v` of weight `w` lies in the column span of `rels`.
///
/// In weight `w` the submodule is spanned by `x^(c - w)` times each column of weight
/// `c ≥ w`, whose coefficients are those of the column itself.
pub(crate) fn in_submodule(rels: &HMatrix, w: i64, v: &[Q]) -> bool {
    let basis: Vec<Vec<Q>> =
        (0..rels.ncols()).filter(|&j| rels.cols[j] >= w).map(|j| rels.column(j)).collect();
    in_span(&basis, v)
}

fn columns_in_submodule(m: &HMatrix, rels: &HMatrix) -> bool {
    (0..m.ncols()).all(|j| in_submodule(rels, m.cols[j], &m.column(j)))
}

fn sub(a: &HMatrix, b: &HMatrix) -> HMatrix {
    let mut m = a.clone();
    for (r, s) in m.c.iter_mut().zip(&b.c) {
        for (x, y) in r.iter_mut().zip(s) {
            *x -= y;
        }
    }
    m
}

/// `[[tl, tr], [bl, br]]`.
fn block2(tl: &HMatrix, tr: &HMatrix, bl: &HMatrix, br: &HMatrix) -> HMatrix {
    let top = tl.hcat(tr);
    let bot = bl.hcat(br);
    let mut rows = top.rows.clone();
    rows.extend_from_slice(&bot.rows);
    let mut c = top.c;
    c.extend(bot.c);
    HMatrix { rows, cols: top.cols, c }
}

/// A bounded complex of presented modules; `diffs[k]` maps term `k` to term `k + 1` on
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    terms: BTreeMap<i64, Presentation>,
    diffs: BTreeMap<i64, HMatrix>,
}

impl ChainComplex {
    pub fn new(terms: BTreeMap<i64, Presentation>, diffs: BTreeMap<i64, HMatrix>) -> Result<Self> {
        let c = Self { terms, diffs };
        for (&k, d) in &c.diffs {
            let (src, tgt) = (c.term(k), c.term(k + 1));
            if d.cols != src.gens || d.rows != tgt.gens {
                return Err(Error::Input(format!("differential {k} has the wrong shape")));
            }
            d.validate()?;
            if !columns_in_submodule(&d.mul(&src.rels), &tgt.rels) {
                return Err(Error::Input(format!("differential {k} does not respect relations")));
            }
            let dd = c.diff(k + 1).mul(d);
            if !columns_in_submodule(&dd, &c.term(k + 2).rels) {
                return Err(Error::Input(format!("d{} ∘ d{k} is not zero", k + 1)));
            }
        }
        Ok(c)
    }

    pub fn term(&self, k: i64) -> Presentation {
        self.terms.get(&k).cloned().unwrap_or_else(|| Presentation::free(vec![]))
    }

    pub fn diff(&self, k: i64) -> HMatrix {
        self.diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| HMatrix::zeros(self.term(k + 1).gens, self.term(k).gens))
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.iter().filter(|(_, p)| !p.gens.is_empty()).map(|(&k, _)| k).collect()
    }

    /// Each component as a diagonal presentation, zero differentials.
    pub fn from_formal(f: &FormalObject) -> Self {
        let terms = f.components().iter().map(|(&k, m)| (k, Presentation::of_module(m))).collect();
        Self { terms, diffs: BTreeMap::new() }
    }

    /// Free terms: `M` in degree `k` becomes `⊕F(g - n) → ⊕F(generators)` in degrees
    /// `k - 1, k`.
    pub fn resolution(f: &FormalObject) -> Self {
        let mut gens: BTreeMap<i64, (Vec<i64>, Vec<i64>)> = BTreeMap::new();
        for (&k, m) in f.components() {
            let p = Presentation::of_module(m);
            gens.entry(k).or_default().0 = p.gens.clone();
            gens.entry(k - 1).or_default().1 = p.rels.cols.clone();
        }
        let mut terms = BTreeMap::new();
        for (&k, (top, rel)) in &gens {
            let mut g = rel.clone();
            g.extend_from_slice(top);
            terms.insert(k, Presentation::free(g));
        }
        let mut diffs = BTreeMap::new();
        for (&k, (_, rel)) in &gens {
            if rel.is_empty() {
                continue;
            }
            let src: &Presentation = &terms[&k];
            let tgt: &Presentation = &terms[&(k + 1)];
            let p = Presentation::of_module(&f.h(k + 1));
            let off_t = gens[&(k + 1)].1.len();
            let mut d = HMatrix::zeros(tgt.gens.clone(), src.gens.clone());
            for j in 0..rel.len() {
                for i in 0..p.gens.len() {
                    d.c[off_t + i][j] = p.rels.c[i][j].clone();
                }
            }
            diffs.insert(k, d);
        }
        Self { terms, diffs }
    }

    /// Termwise direct sum, generators of `self` first.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let degrees: BTreeSet<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        let terms = degrees.iter().map(|&k| (k, self.term(k).direct_sum(&other.term(k)))).collect();
        let diffs = degrees
            .iter()
            .filter(|&&k| self.diffs.contains_key(&k) || other.diffs.contains_key(&k))
            .map(|&k| (k, self.diff(k).block_diag(&other.diff(k))))
            .collect();
        ChainComplex { terms, diffs }
    }

    /// Generators of the cycle module in degree `k`, as vectors on the term's generators.
    pub fn cycles(&self, k: i64) -> Vec<(i64, Vec<Q>)> {
        let n = self.term(k).gens.len();
        kernel_basis(&self.diff(k).hcat(&self.term(k + 1).rels))
            .into_iter()
            .map(|(w, v)| (w, v[..n].to_vec()))
            .collect()
    }

    pub fn cohomology(&self, k: i64) -> GradedModule {
        let t = self.term(k);
        let boundaries = t.rels.hcat(&self.diff(k - 1));
        subquotient(&t.gens, &self.cycles(k), &boundaries).expect("homogeneous complex")
    }

    pub fn normal_form(&self) -> FormalObject {
        self.normal_form_audited().0
    }

    /// The normal form together with, per degree, the cycles that generate the
    /// cohomology and the module they present.
    pub fn normal_form_audited(&self) -> (FormalObject, NormalFormAudit) {
        let mut audit = NormalFormAudit::default();
        let mut parts = Vec::new();
        for k in self.degrees() {
            let h = self.cohomology(k);
            audit.degrees.insert(k, DegreeAudit { cycles: self.cycles(k), cohomology: h.clone() });
            parts.push((k, h));
        }
        (FormalObject::from_parts(parts), audit)
    }

    /// Shift `[s]`: term `k` moves to degree `k - s` and differentials change sign when
    /// `s` is odd.
    pub fn shift(&self, s: i64) -> Self {
        let sign = if s % 2 == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
        Self {
            terms: self.terms.iter().map(|(&k, p)| (k - s, p.clone())).collect(),
            diffs: self.diffs.iter().map(|(&k, d)| (k - s, d.scale(&sign))).collect(),
        }
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            terms: self.terms.iter().map(|(k, p)| (k.to_string(), p.to_json())).collect(),
            diffs: self.diffs.iter().map(|(k, d)| (k.to_string(), matrix_to_json(d))).collect(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        let key = |k: &String| -> Result<i64> {
            k.trim().parse().map_err(|_| Error::Input(format!("bad degree key {k:?}")))
        };
        let mut terms = BTreeMap::new();
        for (k, p) in &j.terms {
            terms.insert(key(k)?, Presentation::from_json(p)?);
        }
        let mut diffs = BTreeMap::new();
        for (k, m) in &j.diffs {
            let k = key(k)?;
            let src = terms.get(&k).map(|p: &Presentation| p.gens.clone()).unwrap_or_default();
            let tgt = terms.get(&(k + 1)).map(|p: &Presentation| p.gens.clone()).unwrap_or_default();
            diffs.insert(k, matrix_from_json(m, tgt, src)?);
        }
        Self::new(terms, diffs)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeAudit {
    pub cycles: Vec<(i64, Vec<Q>)>,
    pub cohomology: GradedModule,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalFormAudit {
    pub degrees: BTreeMap<i64, DegreeAudit>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(default)]
    pub terms: BTreeMap<String, PresentationJson>,
    #[serde(default)]
    pub diffs: BTreeMap<String, Vec<Vec<Option<EntryJson>>>>,
}

pub fn matrix_to_json(m: &HMatrix) -> Vec<Vec<Option<EntryJson>>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| (!m.c[i][j].is_zero()).then(|| EntryJson { c: m.c[i][j].to_string(), k: m.exponent(i, j) }))
                .collect()
        })
        .collect()
}

pub fn matrix_from_json(j: &[Vec<Option<EntryJson>>], rows: Vec<i64>, cols: Vec<i64>) -> Result<HMatrix> {
    let mut m = HMatrix::zeros(rows, cols);
    if j.len() != m.nrows() || j.iter().any(|r| r.len() != m.ncols()) {
        return Err(Error::Input(format!("matrix must be {} x {}", m.nrows(), m.ncols())));
    }
    for (i, r) in j.iter().enumerate() {
        for (col, e) in r.iter().enumerate() {
            let Some(e) = e else { continue };
            let c = parse_q(&e.c).ok_or_else(|| Error::NonHomogeneous {
                row: i,
                col,
                msg: format!("bad coefficient {:?}", e.c),
            })?;
            if !c.is_zero() && e.k != m.exponent(i, col) {
                return Err(Error::NonHomogeneous {
                    row: i,
                    col,
                    msg: format!("x^{} does not match weights (expected x^{})", e.k, m.exponent(i, col)),
                });
            }
            m.c[i][col] = c;
        }
    }
    m.validate()?;
    Ok(m)
}

/// A degree-0 chain map given on generators, `maps[k]` from source term `k` to target
/// term `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: BTreeMap<i64, HMatrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, maps: BTreeMap<i64, HMatrix>) -> Result<Self> {
        let f = Self { source, target, maps };
        let degrees: BTreeSet<i64> = f.source.degrees().union(&f.target.degrees()).copied().collect();
        for &k in &degrees {
            let m = f.map(k);
            let (s, t) = (f.source.term(k), f.target.term(k));
            if m.cols != s.gens || m.rows != t.gens {
                return Err(Error::Input(format!("chain map component {k} has the wrong shape")));
            }
            m.validate()?;
            if !columns_in_submodule(&m.mul(&s.rels), &t.rels) {
                return Err(Error::Input(format!("chain map component {k} does not respect relations")));
            }
            let lhs = f.target.diff(k).mul(&m);
            let rhs = f.map(k + 1).mul(&f.source.diff(k));
            if !columns_in_submodule(&sub(&lhs, &rhs), &f.target.term(k + 1).rels) {
                return Err(Error::Input(format!("chain map does not commute in degree {k}")));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let maps = c
            .terms
            .iter()
            .map(|(&k, p)| {
                let mut m = HMatrix::zeros(p.gens.clone(), p.gens.clone());
                for i in 0..p.gens.len() {
                    m.c[i][i] = Q::from_integer(1.into());
                }
                (k, m)
            })
            .collect();
        Self { source: c.clone(), target: c.clone(), maps }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn map(&self, k: i64) -> HMatrix {
        self.maps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| HMatrix::zeros(self.target.term(k).gens, self.source.term(k).gens))
    }

    /// The zero map from the zero complex.
    pub fn from_zero(target: &ChainComplex) -> Self {
        Self { source: ChainComplex::from_formal(&FormalObject::zero()), target: target.clone(), maps: BTreeMap::new() }
    }

    /// Block diagonal sum of two chain maps.
    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let degrees: BTreeSet<i64> = source.terms.keys().chain(target.terms.keys()).copied().collect();
        let maps = degrees.into_iter().map(|k| (k, self.map(k).block_diag(&other.map(k)))).collect();
        ChainMap { source, target, maps }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ChainMap) -> Result<ChainMap> {
        if g.source != self.target {
            return Err(Error::Input("chain maps do not compose".into()));
        }
        let degrees: BTreeSet<i64> = self.source.degrees().union(&g.target.degrees()).copied().collect();
        let maps = degrees.into_iter().map(|k| (k, g.map(k).mul(&self.map(k)))).collect();
        ChainMap::new(self.source.clone(), g.target.clone(), maps)
    }

    /// The mapping cone: `C^k = A^{k+1} ⊕ B^k` with `d = [[-dA, 0], [f, dB]]`.
    pub fn cone(&self) -> ChainComplex {
        let (a, b) = (&self.source, &self.target);
        let degrees: BTreeSet<i64> =
            a.degrees().iter().map(|k| k - 1).chain(b.degrees().iter().copied()).collect();
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        let minus = Q::from_integer((-1).into());
        for &k in &degrees {
            terms.insert(k, a.term(k + 1).direct_sum(&b.term(k)));
        }
        for &k in &degrees {
            if !degrees.contains(&(k + 1)) {
                continue;
            }
            let tl = a.diff(k + 1).scale(&minus);
            let tr = HMatrix::zeros(a.term(k + 2).gens, b.term(k).gens);
            let d = block2(&tl, &tr, &self.map(k + 1), &b.diff(k));
            diffs.insert(k, d);
        }
        ChainComplex { terms, diffs }
    }
}
