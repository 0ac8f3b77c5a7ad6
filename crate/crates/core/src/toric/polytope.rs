//! Lattice polytopes, integral points and the Delzant condition.

use std::collections::BTreeSet;

use serde::Serialize;

use super::hull::{self, in_convex_hull};
use crate::error::{Error, Result};

/// Convex hull of finitely many integer points in `Z^dim`, stored by its
/// (irredundant) vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeVariant {
    /// Vertices `(±1, ..., ±1)`.
    Centered,
    /// Vertices `{0, 1}^m`.
    Unit,
}

impl LatticePolytope {
    /// Validates a vertex list. Every point must be a vertex of the hull.
    ///
    /// Box-shaped vertex sets are accepted in any dimension; other vertex
    /// sets only up to dimension 3.
    pub fn new(dim: usize, vertices: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPolytope("dimension must be positive".into()));
        }
        if vertices.is_empty() {
            return Err(Error::InvalidPolytope("vertex list is empty".into()));
        }
        if let Some(v) = vertices.iter().find(|v| v.len() != dim) {
            return Err(Error::InvalidPolytope(format!(
                "vertex {v:?} has {} coordinates, expected {dim}",
                v.len()
            )));
        }
        let distinct: BTreeSet<&Vec<i64>> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidPolytope("repeated vertex".into()));
        }
        let p = LatticePolytope { dim, vertices };
        if p.box_intervals().is_some() {
            return Ok(p);
        }
        if dim > 3 {
            return Err(Error::UnsupportedPolytope(format!(
                "non-box vertex sets are supported up to dimension 3, got {dim}"
            )));
        }
        for (i, v) in p.vertices.iter().enumerate() {
            let others: Vec<&[i64]> = p
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, w)| w.as_slice())
                .collect();
            if in_convex_hull(v, &others) {
                return Err(Error::InvalidPolytope(format!(
                    "{v:?} lies in the convex hull of the other points"
                )));
            }
        }
        Ok(p)
    }

    /// The `m`-cube.
    pub fn cube(m: usize, variant: CubeVariant) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPolytope("cube dimension must be positive".into()));
        }
        let (lo, hi) = match variant {
            CubeVariant::Centered => (-1, 1),
            CubeVariant::Unit => (0, 1),
        };
        let vertices = (0..1usize << m)
            .map(|x| {
                (0..m)
                    .rev()
                    .map(|k| if (x >> k) & 1 == 1 { hi } else { lo })
                    .collect()
            })
            .collect();
        Ok(LatticePolytope { dim: m, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Per-axis `(lo, hi)` if the vertex set is exactly a product of
    /// intervals. Degenerate axes have `lo == hi`.
    pub fn box_intervals(&self) -> Option<Vec<(i64, i64)>> {
        let intervals: Vec<(i64, i64)> = (0..self.dim)
            .map(|i| {
                let vals = self.vertices.iter().map(|v| v[i]);
                (vals.clone().min().unwrap(), vals.max().unwrap())
            })
            .collect();
        let nondegenerate = intervals.iter().filter(|(lo, hi)| lo < hi).count();
        if self.vertices.len() != 1usize << nondegenerate {
            return None;
        }
        let all_corners = self
            .vertices
            .iter()
            .all(|v| v.iter().zip(&intervals).all(|(&c, &(lo, hi))| c == lo || c == hi));
        // distinct corners, right count: the vertex set is the full product
        all_corners.then_some(intervals)
    }

    pub fn is_box(&self) -> bool {
        self.box_intervals().is_some()
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        let v0 = &self.vertices[0];
        let diffs: Vec<Vec<i64>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        hull::rank(&diffs)
    }

    /// Pairs of vertex indices `(i, j)`, `i < j`, joined by an edge.
    ///
    /// Exact: `[u, v]` is an edge iff, after projecting along `v - u`, the
    /// image of `u` is not in the hull of the images of the other vertices.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>> {
        if let Some(iv) = self.box_intervals() {
            let mut out = Vec::new();
            for i in 0..self.vertices.len() {
                for j in i + 1..self.vertices.len() {
                    let differing: Vec<usize> = (0..self.dim)
                        .filter(|&k| self.vertices[i][k] != self.vertices[j][k])
                        .collect();
                    if differing.len() == 1 && iv[differing[0]].0 < iv[differing[0]].1 {
                        out.push((i, j));
                    }
                }
            }
            return Ok(out);
        }
        if self.dim > 3 {
            return Err(Error::UnsupportedPolytope(format!(
                "edge enumeration for non-box polytopes needs dimension <= 3, got {}",
                self.dim
            )));
        }
        let mut out = Vec::new();
        let k = self.vertices.len();
        for i in 0..k {
            for j in i + 1..k {
                let u = &self.vertices[i];
                let d: Vec<i64> = self.vertices[j].iter().zip(u).map(|(a, b)| a - b).collect();
                let projected: Vec<Vec<i64>> = (0..k)
                    .filter(|&w| w != i && w != j)
                    .map(|w| {
                        let rel: Vec<i64> =
                            self.vertices[w].iter().zip(u).map(|(a, b)| a - b).collect();
                        project_along(&d, &rel)
                    })
                    .collect();
                let origin = vec![0i64; project_along(&d, &d).len()];
                let refs: Vec<&[i64]> = projected.iter().map(|p| p.as_slice()).collect();
                if !in_convex_hull(&origin, &refs) {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }
}

/// Integer linear map with kernel `span(d)` (dimension <= 3).
fn project_along(d: &[i64], w: &[i64]) -> Vec<i64> {
    match d.len() {
        1 => vec![],
        2 => vec![d[0] * w[1] - d[1] * w[0]],
        3 => vec![
            d[1] * w[2] - d[2] * w[1],
            d[2] * w[0] - d[0] * w[2],
            d[0] * w[1] - d[1] * w[0],
        ],
        _ => unreachable!("projection is only used up to dimension 3"),
    }
}

/// Ordered list of distinct integer points `κ^(1), ..., κ^(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    points: Vec<Vec<i64>>,
}

impl ExponentSet {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("exponent set is empty".into()));
        }
        let n = points[0].len();
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidInput("exponent vectors differ in length".into()));
        }
        let distinct: BTreeSet<&Vec<i64>> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidInput("repeated exponent vector".into()));
        }
        Ok(ExponentSet { points })
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// All integer points of a box polytope, in lexicographic order.
pub fn lattice_points(p: &LatticePolytope) -> Result<ExponentSet> {
    let intervals = p
        .box_intervals()
        .ok_or_else(|| Error::UnsupportedPolytope("lattice points are enumerated for boxes only".into()))?;
    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for &(lo, hi) in &intervals {
        points = points
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |c| {
                    let mut q = prefix.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    ExponentSet::new(points)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DelzantFailureReason {
    /// The number of edges at the vertex differs from the dimension.
    EdgeCount { found: usize, expected: usize },
    /// Primitive edge directions do not form a Z-basis.
    NotUnimodular { directions: Vec<Vec<i64>>, determinant: i128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DelzantFailure {
    pub vertex: Vec<i64>,
    pub reason: DelzantFailureReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DelzantVerdict {
    pub delzant: bool,
    pub failures: Vec<DelzantFailure>,
}

fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i128, |g, &c| hull::gcd(g, c as i128)) as i64;
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|c| c / g).collect()
    }
}

/// Checks the Delzant conditions at every vertex: exactly `n` edges meet, and
/// their primitive integer directions form a basis of `Z^n`.
///
/// Boxes use their closed-form edge structure in any dimension; other
/// polytopes are handled by exact edge enumeration up to dimension 3.
pub fn delzant_check(p: &LatticePolytope) -> Result<DelzantVerdict> {
    let n = p.dim();
    if p.affine_dim() != n {
        return Err(Error::UnsupportedPolytope(format!(
            "polytope is not full-dimensional (affine dimension {} in Z^{n})",
            p.affine_dim()
        )));
    }
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); p.vertices().len()];
    if let Some(intervals) = p.box_intervals() {
        for (i, v) in p.vertices().iter().enumerate() {
            for axis in 0..n {
                let (lo, hi) = intervals[axis];
                let mut w = v.clone();
                w[axis] = if v[axis] == lo { hi } else { lo };
                let j = p.vertices().iter().position(|u| *u == w).expect("box corner");
                neighbors[i].push(j);
            }
        }
    } else {
        for (i, j) in p.edges()? {
            neighbors[i].push(j);
            neighbors[j].push(i);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
    }

    let mut failures = Vec::new();
    for (i, v) in p.vertices().iter().enumerate() {
        if neighbors[i].len() != n {
            failures.push(DelzantFailure {
                vertex: v.clone(),
                reason: DelzantFailureReason::EdgeCount {
                    found: neighbors[i].len(),
                    expected: n,
                },
            });
            continue;
        }
        let directions: Vec<Vec<i64>> = neighbors[i]
            .iter()
            .map(|&j| primitive(p.vertices()[j].iter().zip(v).map(|(a, b)| a - b).collect()))
            .collect();
        let determinant = hull::det_i64(&directions);
        if determinant.abs() != 1 {
            failures.push(DelzantFailure {
                vertex: v.clone(),
                reason: DelzantFailureReason::NotUnimodular {
                    directions,
                    determinant,
                },
            });
        }
    }
    Ok(DelzantVerdict {
        delzant: failures.is_empty(),
        failures,
    })
}
