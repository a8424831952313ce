use num::{One, Zero};

use super::linalg::Q;
use super::matrix::HMatrix;
use super::module::{GradedModule, Summand};
use crate::{Error, Result};

/// A degree-0 map between canonical modules.
///
/// `coeffs[i][j]` is the coefficient of the monomial sending the generator of source
/// summand `j` to `x^(b_i - a_j)` times the generator of target summand `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedModule,
    target: GradedModule,
    coeffs: Vec<Vec<Q>>,
}

impl GradedMap {
    pub fn new(source: GradedModule, target: GradedModule, mut coeffs: Vec<Vec<Q>>) -> Result<Self> {
        let (ns, nt) = (source.len(), target.len());
        if coeffs.len() != nt || coeffs.iter().any(|r| r.len() != ns) {
            return Err(Error::Input(format!("map matrix must be {nt} x {ns}")));
        }
        for (i, t) in target.summands().iter().enumerate() {
            for (j, s) in source.summands().iter().enumerate() {
                if coeffs[i][j].is_zero() {
                    continue;
                }
                let e = t.top() - s.top();
                if e < 0 {
                    return Err(Error::NonHomogeneous {
                        row: i,
                        col: j,
                        msg: format!("{s} cannot map to {t}: weight would rise"),
                    });
                }
                if let Summand::Torsion { n: m, .. } = *t {
                    if e >= m {
                        coeffs[i][j] = Q::zero();
                        continue;
                    }
                }
                if let Summand::Torsion { n, .. } = *s {
                    let ok = matches!(*t, Summand::Torsion { n: m, .. } if e + n >= m);
                    if !ok {
                        return Err(Error::Input(format!("{s} -> {t} by x^{e} is not well defined")));
                    }
                }
            }
        }
        Ok(Self { source, target, coeffs })
    }

    pub fn zero(source: GradedModule, target: GradedModule) -> Self {
        let coeffs = vec![vec![Q::zero(); source.len()]; target.len()];
        Self { source, target, coeffs }
    }

    pub fn identity(m: &GradedModule) -> Self {
        let n = m.len();
        let coeffs = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        Self { source: m.clone(), target: m.clone(), coeffs }
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn coeffs(&self) -> &[Vec<Q>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GradedMap) -> Result<GradedMap> {
        if first.target != self.source {
            return Err(Error::Input("compose: target/source mismatch".into()));
        }
        let (nt, ns, nm) = (self.target.len(), first.source.len(), self.source.len());
        let mut c = vec![vec![Q::zero(); ns]; nt];
        for (i, row) in c.iter_mut().enumerate() {
            for t in 0..nm {
                if self.coeffs[i][t].is_zero() {
                    continue;
                }
                for (j, v) in row.iter_mut().enumerate() {
                    if !first.coeffs[t][j].is_zero() {
                        *v += &self.coeffs[i][t] * &first.coeffs[t][j];
                    }
                }
            }
        }
        GradedMap::new(first.source.clone(), self.target.clone(), c)
    }

    /// The map on generators as a homogeneous matrix, rows indexed by target generators.
    pub fn matrix(&self) -> HMatrix {
        HMatrix {
            rows: self.target.generator_weights().collect(),
            cols: self.source.generator_weights().collect(),
            c: self.coeffs.clone(),
        }
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Input("add: maps have different endpoints".into()));
        }
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        GradedMap::new(self.source.clone(), self.target.clone(), c)
    }
}
