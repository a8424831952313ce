use num::Zero;
use serde::{Deserialize, Serialize};

use super::linalg::{in_span, kernel, Q};
use super::matrix::HMatrix;
use super::module::{GradedModule, Summand};
use super::parse_q;
use crate::{Error, Result};

/// Generators with weights and a homogeneous relation matrix; the module presented is
/// the cokernel of `rels: ⊕F(cols) → ⊕F(gens)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub gens: Vec<i64>,
    pub rels: HMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryJson {
    pub c: String,
    pub k: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<i64>,
    #[serde(default)]
    pub relations: Vec<Vec<Option<EntryJson>>>,
}

impl Presentation {
    pub fn new(gens: Vec<i64>, rels: HMatrix) -> Result<Self> {
        if rels.rows != gens {
            return Err(Error::Input("relation rows must match generator weights".into()));
        }
        rels.validate()?;
        Ok(Self { gens, rels })
    }

    pub fn free(gens: Vec<i64>) -> Self {
        let rels = HMatrix::zeros(gens.clone(), vec![]);
        Self { gens, rels }
    }

    /// The diagonal presentation of a canonical module, generators in summand order.
    pub fn of_module(m: &GradedModule) -> Self {
        let gens: Vec<i64> = m.generator_weights().collect();
        let cols: Vec<(i64, Vec<Q>)> = m
            .summands()
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match *s {
                Summand::Free(_) => None,
                Summand::Torsion { g, n } => {
                    let mut v = vec![Q::zero(); gens.len()];
                    v[i] = super::q(1);
                    Some((g - n, v))
                }
            })
            .collect();
        let rels = HMatrix::from_columns(gens.clone(), &cols);
        Self { gens, rels }
    }

    pub fn direct_sum(&self, other: &Presentation) -> Presentation {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Presentation { gens, rels: self.rels.block_diag(&other.rels) }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let gens = j.generators.clone();
        if j.relations.is_empty() {
            return Ok(Self::free(gens));
        }
        if j.relations.len() != gens.len() {
            return Err(Error::Input(format!(
                "relations has {} rows but there are {} generators",
                j.relations.len(),
                gens.len()
            )));
        }
        let ncols = j.relations[0].len();
        if j.relations.iter().any(|r| r.len() != ncols) {
            return Err(Error::Input("relation rows have different lengths".into()));
        }
        let mut cols = Vec::new();
        for col in 0..ncols {
            let mut weight: Option<i64> = None;
            let mut v = vec![Q::zero(); gens.len()];
            for (row, r) in j.relations.iter().enumerate() {
                let Some(e) = &r[col] else { continue };
                let c = parse_q(&e.c).ok_or_else(|| Error::NonHomogeneous {
                    row,
                    col,
                    msg: format!("bad coefficient {:?}", e.c),
                })?;
                if c.is_zero() {
                    continue;
                }
                if e.k < 0 {
                    return Err(Error::NonHomogeneous { row, col, msg: "negative power of x".into() });
                }
                let r_w = gens[row] - e.k;
                match weight {
                    Some(w) if w != r_w => {
                        return Err(Error::NonHomogeneous {
                            row,
                            col,
                            msg: format!("entry has weight {r_w}, column has weight {w}"),
                        })
                    }
                    _ => weight = Some(r_w),
                }
                v[row] = c;
            }
            if let Some(w) = weight {
                cols.push((w, v));
            }
        }
        Ok(Self { rels: HMatrix::from_columns(gens.clone(), &cols), gens })
    }

    pub fn to_json(&self) -> PresentationJson {
        let relations = if self.rels.ncols() == 0 {
            vec![]
        } else {
            (0..self.gens.len())
                .map(|i| {
                    (0..self.rels.ncols())
                        .map(|j| {
                            let c = &self.rels.c[i][j];
                            (!c.is_zero())
                                .then(|| EntryJson { c: c.to_string(), k: self.rels.exponent(i, j) })
                        })
                        .collect()
                })
                .collect()
        };
        PresentationJson { generators: self.gens.clone(), relations }
    }
}

/// Graded Smith normal form of the relation matrix.
///
/// Every homogeneous entry is a monomial, so choosing a pivot of minimal x-exponent
/// makes every other entry in its row and column a multiple of it; elimination is then
/// plain Gaussian elimination on the coefficients.
pub fn canonical_decompose(p: &Presentation) -> Result<GradedModule> {
    p.rels.validate()?;
    let a = &p.rels;
    let mut c = a.c.clone();
    let mut row_alive = vec![true; a.nrows()];
    let mut col_alive = vec![true; a.ncols()];
    let mut out = Vec::new();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in (0..a.nrows()).filter(|&i| row_alive[i]) {
            for j in (0..a.ncols()).filter(|&j| col_alive[j]) {
                if !c[i][j].is_zero() {
                    let e = a.exponent(i, j);
                    if best.is_none_or(|b| e < b.0) {
                        best = Some((e, i, j));
                    }
                }
            }
        }
        let Some((e, i0, j0)) = best else { break };
        for i in (0..a.nrows()).filter(|&i| row_alive[i] && i != i0) {
            if c[i][j0].is_zero() {
                continue;
            }
            let f = &c[i][j0] / &c[i0][j0];
            for j in (0..a.ncols()).filter(|&j| col_alive[j]) {
                if !c[i0][j].is_zero() {
                    let t = &f * &c[i0][j];
                    c[i][j] -= t;
                }
            }
        }
        row_alive[i0] = false;
        col_alive[j0] = false;
        if e > 0 {
            out.push(Summand::Torsion { g: a.rows[i0], n: e });
        }
    }
    out.extend((0..a.nrows()).filter(|&i| row_alive[i]).map(|i| Summand::Free(a.rows[i])));
    Ok(GradedModule::new(out))
}

/// Homogeneous generators of the kernel of `a` viewed as a map of free modules.
///
/// In weight `u` the kernel is the coefficient kernel of the columns of weight `≥ u`;
/// sweeping `u` downward and keeping only new directions gives a free basis.
pub fn kernel_basis(a: &HMatrix) -> Vec<(i64, Vec<Q>)> {
    let mut ws = a.cols.clone();
    ws.sort_unstable_by(|x, y| y.cmp(x));
    ws.dedup();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut out = Vec::new();
    for u in ws {
        let idx: Vec<usize> = (0..a.ncols()).filter(|&j| a.cols[j] >= u).collect();
        let sub: Vec<Vec<Q>> =
            a.c.iter().map(|r| idx.iter().map(|&j| r[j].clone()).collect()).collect();
        for k in kernel(&sub, idx.len()) {
            let mut v = vec![Q::zero(); a.ncols()];
            for (t, &j) in idx.iter().enumerate() {
                v[j] = k[t].clone();
            }
            if !in_span(&basis, &v) {
                basis.push(v.clone());
                out.push((u, v));
            }
        }
    }
    out
}

/// The module `⟨v⟩ / ⟨w⟩` inside the free module on `ambient`, assuming `⟨w⟩ ⊆ ⟨v⟩`.
///
/// Generators are the vectors of `v`; relations are the `v`-parts of the syzygies of
/// `[v | w]`.
pub fn subquotient(ambient: &[i64], v: &[(i64, Vec<Q>)], w: &HMatrix) -> Result<GradedModule> {
    let vm = HMatrix::from_columns(ambient.to_vec(), v);
    let syz = kernel_basis(&vm.hcat(w));
    let gens: Vec<i64> = v.iter().map(|x| x.0).collect();
    let cols: Vec<(i64, Vec<Q>)> =
        syz.into_iter().map(|(r, k)| (r, k[..v.len()].to_vec())).collect();
    let rels = HMatrix::from_columns(gens.clone(), &cols);
    canonical_decompose(&Presentation { gens, rels })
}
