use std::collections::BTreeMap;

use num::One;
use serde::Serialize;

use super::{aisle_member_shifted, validate_perversity, Aisle, Perversity};
use crate::derived::{ChainComplex, ChainMap, FormalObject};
use crate::grmod::{HMatrix, Q, Summand};
use crate::sstruct::SConfig;
use crate::{Error, Result};

/// The truncation triangle of one indecomposable piece, with a chain map
/// `Res(below) → Res(piece)` whose cone is quasi-isomorphic to `above`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceTriangle {
    pub degree: i64,
    pub piece: Summand,
    pub below: FormalObject,
    pub above: FormalObject,
    pub map: ChainMap,
}

/// `below → object → above →` with `below ∈ ᵖD≤n` and `above ∈ ᵖD≥n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleDecomp {
    pub n: i64,
    pub below: FormalObject,
    pub object: FormalObject,
    pub above: FormalObject,
    #[serde(skip)]
    pub pieces: Vec<PieceTriangle>,
}

impl TriangleDecomp {
    /// Recheck every piece at chain level: the map's endpoints resolve `below` and the
    /// piece, and its cone has normal form `above`. The pieces must add up.
    pub fn audit(&self) -> std::result::Result<(), String> {
        for t in &self.pieces {
            let piece = FormalObject::from_summands([(t.degree, t.piece)]);
            if t.map.source().normal_form() != t.below {
                return Err(format!("{piece}: map source is not {}", t.below));
            }
            if t.map.target().normal_form() != piece {
                return Err(format!("{piece}: map target is not the piece"));
            }
            let cone = t.map.cone().normal_form();
            if cone != t.above {
                return Err(format!("{piece}: cone is {cone}, expected {}", t.above));
            }
        }
        let below = FormalObject::sum(self.pieces.iter().map(|t| &t.below));
        let above = FormalObject::sum(self.pieces.iter().map(|t| &t.above));
        let object = FormalObject::from_summands(self.pieces.iter().map(|t| (t.degree, t.piece)));
        if below != self.below || above != self.above || object != self.object {
            return Err("pieces do not add up to the triangle".into());
        }
        Ok(())
    }
}

fn resolution(parts: &[(i64, Summand)]) -> ChainComplex {
    ChainComplex::resolution(&FormalObject::from_summands(parts.iter().copied()))
}

/// A chain map between one-generator-per-degree resolutions that is `1` in `degrees`.
fn unit_map(source: ChainComplex, target: ChainComplex, degrees: &[i64]) -> ChainMap {
    let maps: BTreeMap<i64, HMatrix> = degrees
        .iter()
        .map(|&k| {
            let mut m = HMatrix::zeros(target.term(k).gens, source.term(k).gens);
            m.c[0][0] = Q::one();
            (k, m)
        })
        .collect();
    ChainMap::new(source, target, maps).expect("unit chain map")
}

struct Candidate {
    below: Vec<(i64, Summand)>,
    above: Vec<(i64, Summand)>,
    map: MapKind,
}

enum MapKind {
    Identity,
    Zero,
    /// `1` in the listed degrees.
    Unit(Vec<i64>),
}

fn candidates(k: i64, s: Summand, radius: i64) -> Vec<Candidate> {
    let whole = |below: bool| Candidate {
        below: if below { vec![(k, s)] } else { vec![] },
        above: if below { vec![] } else { vec![(k, s)] },
        map: if below { MapKind::Identity } else { MapKind::Zero },
    };
    let mut out = vec![whole(true), whole(false)];
    match s {
        Summand::Torsion { g, n } => {
            let socle = g - n + 1;
            for c in socle..g {
                out.push(Candidate {
                    below: vec![(k, Summand::Torsion { g: c, n: c - socle + 1 })],
                    above: vec![(k, Summand::Torsion { g, n: g - c })],
                    map: MapKind::Unit(vec![k - 1, k]),
                });
            }
        }
        Summand::Free(d) => {
            for c in (d - radius..d).rev() {
                out.push(Candidate {
                    below: vec![(k, Summand::Free(c))],
                    above: vec![(k, Summand::Torsion { g: d, n: d - c })],
                    map: MapKind::Unit(vec![k]),
                });
            }
            for e in d + 1..=d + radius {
                out.push(Candidate {
                    below: vec![(k + 1, Summand::Torsion { g: e, n: e - d })],
                    above: vec![(k, Summand::Free(e))],
                    map: MapKind::Unit(vec![k]),
                });
            }
        }
    }
    out
}

/// Staggered truncation `τ≤n F → F → τ≥n+1 F →`.
///
/// Truncation is additive, so each indecomposable piece is treated on its own. A piece
/// either lies in one aisle, is cut in weight (a torsion piece along its `x`-filtration,
/// a free piece `F(d)` along `F(c) ⊂ F(d)`), or for a free piece is rotated through
/// `F(d) ⊂ F(e)`, leaving `T(e, e-d)` one degree up below the cut.
pub fn stag_truncate(p: Perversity, cfg: SConfig, n: i64, f: &FormalObject) -> Result<TriangleDecomp> {
    let rep = validate_perversity(p, cfg);
    if !rep.ok {
        return Err(Error::Input(format!("perversity {p} is not admissible: {}", rep.violations.join("; "))));
    }
    let radius = 8 + 2 * (n.abs() + p.pu.abs() + p.pz.abs());
    let mut pieces = Vec::new();
    for (k, s) in f.pieces() {
        let radius = radius + 2 * k.abs();
        let found = candidates(k, s, radius).into_iter().find_map(|c| {
            let below = FormalObject::from_summands(c.below.iter().copied());
            let above = FormalObject::from_summands(c.above.iter().copied());
            let ok = aisle_member_shifted(p, cfg, &below, Aisle::Le0, n)
                && aisle_member_shifted(p, cfg, &above, Aisle::Ge0, n + 1);
            ok.then_some((c, below, above))
        });
        let Some((c, below, above)) = found else {
            return Err(Error::Unsupported(format!("no truncation triangle found for {s} in degree {k}")));
        };
        let res = resolution(&[(k, s)]);
        let map = match &c.map {
            MapKind::Identity => ChainMap::identity(&res),
            MapKind::Zero => ChainMap::from_zero(&res),
            MapKind::Unit(degrees) => unit_map(resolution(&c.below), res, degrees),
        };
        pieces.push(PieceTriangle { degree: k, piece: s, below, above, map });
    }
    Ok(TriangleDecomp {
        n,
        below: FormalObject::sum(pieces.iter().map(|t| &t.below)),
        object: f.clone(),
        above: FormalObject::sum(pieces.iter().map(|t| &t.above)),
        pieces,
    })
}
