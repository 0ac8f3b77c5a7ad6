//! Normal fans of axis-aligned boxes.

use std::collections::BTreeSet;

use super::hull::{self, any_combination};
use super::polytope::LatticePolytope;
use crate::error::{Error, Result};

/// Rational polyhedral cone spanned by primitive integer generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    generators: Vec<Vec<i64>>,
    /// Sign pattern in `{-1, 0, 1}^n` naming the dual face: `+1` on axis `i`
    /// means the face lies on the upper facet `x_i = hi_i`.
    face: Vec<i8>,
}

impl Cone {
    pub fn new(generators: Vec<Vec<i64>>, face: Vec<i8>) -> Result<Self> {
        for g in &generators {
            let d = g.iter().fold(0i128, |d, &c| hull::gcd(d, c as i128));
            if d != 1 {
                return Err(Error::InvalidInput(format!("generator {g:?} is not primitive")));
            }
        }
        let distinct: BTreeSet<&Vec<i64>> = generators.iter().collect();
        if distinct.len() != generators.len() {
            return Err(Error::InvalidInput("repeated cone generator".into()));
        }
        Ok(Cone { generators, face })
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn face(&self) -> &[i8] {
        &self.face
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Whether the generators extend to a basis of the lattice, i.e. the
    /// gcd of their maximal minors is 1. The zero cone is unimodular.
    pub fn is_unimodular(&self) -> bool {
        let k = self.generators.len();
        if k == 0 {
            return true;
        }
        let n = self.generators[0].len();
        if k > n {
            return false;
        }
        let mut g = 0i128;
        any_combination(n, k, &mut |cols| {
            let minor: Vec<Vec<i64>> = self
                .generators
                .iter()
                .map(|v| cols.iter().map(|&c| v[c]).collect())
                .collect();
            g = hull::gcd(g, hull::det_i64(&minor));
            g == 1
        });
        g == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &Cone> {
        self.cones.iter().filter(move |c| c.dim() == self.dim)
    }

    pub fn contains_zero_cone(&self) -> bool {
        self.cones.iter().any(|c| c.dim() == 0)
    }

    /// Every face of every cone is in the fan. For the simplicial cones
    /// produced here the faces are spanned by subsets of the generators.
    pub fn is_closed_under_faces(&self) -> bool {
        let present: BTreeSet<BTreeSet<&Vec<i64>>> = self
            .cones
            .iter()
            .map(|c| c.generators.iter().collect())
            .collect();
        self.cones.iter().all(|c| {
            let k = c.dim();
            (0..(1usize << k)).all(|mask| {
                let sub: BTreeSet<&Vec<i64>> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| &c.generators[i])
                    .collect();
                present.contains(&sub)
            })
        })
    }
}

/// Normal fan of a box: one cone per face, spanned by the outward normals of
/// the facets containing the face. `3^n` cones including the zero cone.
pub fn normal_fan_box(p: &LatticePolytope) -> Result<Fan> {
    let intervals = p
        .box_intervals()
        .ok_or_else(|| Error::UnsupportedPolytope("normal fans are built for boxes only".into()))?;
    if let Some(axis) = intervals.iter().position(|(lo, hi)| lo == hi) {
        return Err(Error::DegenerateInterval { axis });
    }
    let n = p.dim();
    let total = 3usize.pow(n as u32);
    let mut cones = Vec::with_capacity(total);
    for code in 0..total {
        let mut face = vec![0i8; n];
        let mut c = code;
        for i in (0..n).rev() {
            face[i] = (c % 3) as i8 - 1;
            c /= 3;
        }
        let generators = face
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, &s)| {
                let mut e = vec![0i64; n];
                e[i] = s as i64;
                e
            })
            .collect();
        cones.push(Cone::new(generators, face)?);
    }
    Ok(Fan { dim: n, cones })
}
