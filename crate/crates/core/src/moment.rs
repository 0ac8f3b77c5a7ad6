//! Torus moment maps on projective space and on products of projective
//! lines, in the Fubini–Study normalisation where every coordinate lies in
//! `[-1/2, 0]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::state::{ProjectivePoint, QubitFactor};

/// Image of a point under a torus moment map.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentImage(Vec<f64>);

impl MomentImage {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("moment coordinates must be finite".into()));
        }
        // normalise -0.0 so printing and equality on signs stay clean
        Ok(MomentImage(coords.into_iter().map(|c| c + 0.0).collect()))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinates in the height-function convention on S^2, where a line
    /// factor has polytope `[-1, 1]`: `t -> 4t + 1`.
    pub fn to_height_convention(&self) -> Vec<f64> {
        self.0.iter().map(|t| 4.0 * t + 1.0).collect()
    }
}

impl fmt::Display for MomentImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Axis-aligned box `prod [lo_i, hi_i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxPolytope {
    intervals: Vec<(f64, f64)>,
}

impl BoxPolytope {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for (axis, &(lo, hi)) in intervals.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite()) || lo > hi {
                return Err(Error::InvalidInput(format!(
                    "interval {axis} is [{lo}, {hi}]; need finite lo <= hi"
                )));
            }
        }
        Ok(BoxPolytope { intervals })
    }

    /// The moment polytope `[-1/2, 0]^dim` of `(P^1)^dim`.
    pub fn fubini_study(dim: usize) -> Self {
        BoxPolytope {
            intervals: vec![(-0.5, 0.0); dim],
        }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }
}

/// `mu[a_0 : ... : a_{n-1}] = -1/2 (|a_1|^2, ..., |a_{n-1}|^2) / sum |a_k|^2`.
pub fn moment_projective(p: &ProjectivePoint) -> MomentImage {
    let coords = p.coords();
    let total: f64 = coords.iter().map(|a| a.norm_sqr()).sum();
    let image = coords[1..]
        .iter()
        .map(|a| -0.5 * (a.norm_sqr() / total))
        .collect();
    MomentImage::new(image).expect("ratios of finite nonzero norms are finite")
}

/// Product moment map on `(P^1)^m`; component `j` comes from `factors[j]`.
pub fn moment_product(factors: &[QubitFactor]) -> Result<MomentImage> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let image = factors
        .iter()
        .map(|f| -0.5 * (f.a1().norm_sqr() / f.norm_sqr()))
        .collect();
    MomentImage::new(image)
}

/// The `n` torus-fixed points of P^{n-1} and their images: `e_0 -> 0` and
/// `e_k -> -1/2` times the `k`-th unit vector.
pub fn fixed_point_images(n: usize) -> Result<Vec<(ProjectivePoint, MomentImage)>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("P^(n-1) needs n >= 2, got {n}")));
    }
    (0..n)
        .map(|k| {
            let p = ProjectivePoint::basis(n, k)?;
            let im = moment_projective(&p);
            Ok((p, im))
        })
        .collect()
}

/// Moment map of the diagonal circle action on C^n: `-|v|^2 / 2 + 1/2`.
pub fn s1_moment_disk(v: &[num_complex::Complex64]) -> f64 {
    let n2: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    -n2 / 2.0 + 0.5
}

/// Whether every coordinate of `im` lies in `[lo - tol, hi + tol]`.
pub fn in_polytope(im: &MomentImage, bx: &BoxPolytope, tol: f64) -> Result<bool> {
    if im.dim() != bx.dim() {
        return Err(Error::DimensionMismatch {
            left: im.dim(),
            right: bx.dim(),
        });
    }
    Ok(im
        .coords()
        .iter()
        .zip(bx.intervals())
        .all(|(&c, &(lo, hi))| c >= lo - tol && c <= hi + tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn point(re: &[f64]) -> ProjectivePoint {
        ProjectivePoint::new(re.iter().map(|&r| c(r, 0.0)).collect()).unwrap()
    }

    #[test]
    fn projective_examples() {
        assert_eq!(moment_projective(&point(&[1.0, 0.0, 0.0, 0.0])).coords(), &[0.0; 3]);
        assert_eq!(
            moment_projective(&point(&[0.0, 1.0, 0.0, 0.0])).coords(),
            &[-0.5, 0.0, 0.0]
        );
        assert_eq!(moment_projective(&point(&[1.0, 1.0])).coords(), &[-0.25]);
    }

    #[test]
    fn projective_invariance_exact_scalings() {
        let p = ProjectivePoint::new(vec![c(1.0, 2.0), c(0.5, -1.0), c(3.0, 0.0)]).unwrap();
        let base = moment_projective(&p);
        for lambda in [c(2.0, 0.0), c(0.0, 1.0), c(-3.0, 4.0)] {
            let scaled = moment_projective(&p.scaled(lambda).unwrap());
            for (a, b) in scaled.coords().iter().zip(base.coords()) {
                assert!((a - b).abs() <= 1e-15, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn product_examples() {
        let f = |a0: Complex64, a1: Complex64| QubitFactor::new(a0, a1).unwrap();
        let zero = f(c(1.0, 0.0), c(0.0, 0.0));
        let one = f(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(moment_product(&[zero, zero]).unwrap().coords(), &[0.0, 0.0]);
        assert_eq!(moment_product(&[one, one]).unwrap().coords(), &[-0.5, -0.5]);
        let im = moment_product(&[f(c(1.0, 0.0), c(1.0, 0.0)), f(c(1.0, 0.0), c(0.0, 1.0))]).unwrap();
        assert_eq!(im.coords(), &[-0.25, -0.25]);
        assert_eq!(moment_product(&[]), Err(Error::EmptyFactorList));
    }

    #[test]
    fn fixed_points() {
        let two = fixed_point_images(2).unwrap();
        assert_eq!(two[0].1.coords(), &[0.0]);
        assert_eq!(two[1].1.coords(), &[-0.5]);
        let three = fixed_point_images(3).unwrap();
        let images: Vec<_> = three.iter().map(|(_, im)| im.coords().to_vec()).collect();
        assert_eq!(images, vec![vec![0.0, 0.0], vec![-0.5, 0.0], vec![0.0, -0.5]]);
        assert!(fixed_point_images(1).is_err());
    }

    #[test]
    fn disk_map() {
        assert_eq!(s1_moment_disk(&[c(0.6, 0.0), c(0.0, 0.8)]), 0.0);
        assert_eq!(s1_moment_disk(&[c(0.0, 0.0); 3]), 0.5);
        assert!((s1_moment_disk(&[c(1.0, 0.0), c(0.0, 1.0)]) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn containment() {
        let bx = BoxPolytope::fubini_study(2);
        let origin = MomentImage::new(vec![0.0, 0.0]).unwrap();
        assert!(in_polytope(&origin, &bx, 0.0).unwrap());
        let out = MomentImage::new(vec![-0.6, 0.0]).unwrap();
        assert!(!in_polytope(&out, &bx, 1e-9).unwrap());
        let short = MomentImage::new(vec![0.0]).unwrap();
        assert_eq!(
            in_polytope(&short, &bx, 0.0),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
        assert!(BoxPolytope::new(vec![(1.0, 0.0)]).is_err());
    }

    #[test]
    fn height_convention() {
        let im = MomentImage::new(vec![0.0, -0.5, -0.25]).unwrap();
        assert_eq!(im.to_height_convention(), vec![1.0, -1.0, 0.0]);
    }
}
