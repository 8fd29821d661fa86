//! Complex integration paths.
//!
//! * the shifted line r = s − ic of the oscillator problem,
//! * the down-bent curve C(c): x(v) = v − i·ln(c / cos v), v ∈ (−π/2, π/2),
//!   which [`map_to_r`] sends onto that line,
//! * the generalized curves C(−k, l, c): two logarithmic branches over
//!   v ∈ (−kπ/2, −(k−1)π/2) and ((l−1)π/2, lπ/2), joined by the horizontal
//!   segment x = v − i·ln c across the gap.
//!
//! Paths are parameterized by `s` (line) or `v` (curves), never by arclength.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default distance kept from the singular endpoints |v| = π/2 when sampling.
pub const DEFAULT_ENDPOINT_CLIP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourKind {
    ShiftedLine,
    BentC,
    /// Left branch k, right branch l; both odd.
    GeneralizedC {
        k: u32,
        l: u32,
    },
}

impl ContourKind {
    pub fn name(&self) -> &'static str {
        match self {
            ContourKind::ShiftedLine => "shifted_line",
            ContourKind::BentC => "bent_C",
            ContourKind::GeneralizedC { .. } => "generalized_C",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour<T> {
    kind: ContourKind,
    depth: T,
    /// Half-width of the sampled s-range for the shifted line.
    extent: T,
}

/// A point on a path: position and derivative with respect to the parameter.
///
/// For the shifted line the position is r itself; for the curves it is x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPoint<T> {
    pub parameter: T,
    pub x: Complex<T>,
    pub dx: Complex<T>,
}

fn check_depth<T: Real>(c: T) -> Result<()> {
    if c > T::zero() && c.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "contour depth must be positive, got {c}"
        )))
    }
}

/// The line r = s − ic, sampled over |s| ≤ `extent`.
pub fn build_shifted_line<T: Real>(c: T, extent: T) -> Result<Contour<T>> {
    check_depth(c)?;
    if !(extent > T::zero()) {
        return Err(Error::Domain(format!(
            "line extent must be positive, got {extent}"
        )));
    }
    Ok(Contour {
        kind: ContourKind::ShiftedLine,
        depth: c,
        extent,
    })
}

/// The down-bent curve C(c).
pub fn build_c<T: Real>(c: T) -> Result<Contour<T>> {
    check_depth(c)?;
    Ok(Contour {
        kind: ContourKind::BentC,
        depth: c,
        extent: T::zero(),
    })
}

/// The generalized curve C(−k, l) at depth c.
pub fn build_generalized<T: Real>(k: u32, l: u32, c: T) -> Result<Contour<T>> {
    check_depth(c)?;
    if k == 0 || l == 0 || k.is_multiple_of(2) || l.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "generalized contour needs odd positive k, l; got k = {k}, l = {l}"
        )));
    }
    Ok(Contour {
        kind: ContourKind::GeneralizedC { k, l },
        depth: c,
        extent: T::zero(),
    })
}

/// r = −i·e^{ix}.
pub fn map_to_r<T: Real>(x: Complex<T>) -> Complex<T> {
    let i = Complex::new(T::zero(), T::one());
    -i * (i * x).exp()
}

/// A preimage of r under [`map_to_r`]: x = −i·ln(i·r), principal logarithm.
/// Points of the line Im r = −c land on C(c).
pub fn preimage_of_r<T: Real>(r: Complex<T>) -> Complex<T> {
    let i = Complex::new(T::zero(), T::one());
    -i * (i * r).ln()
}

impl<T: Real> Contour<T> {
    pub fn kind(&self) -> ContourKind {
        self.kind
    }

    pub fn depth(&self) -> T {
        self.depth
    }

    pub fn extent(&self) -> T {
        self.extent
    }

    /// Open parameter interval. Infinite for the shifted line.
    pub fn domain(&self) -> (T, T) {
        let half_pi = T::FRAC_PI_2();
        match self.kind {
            ContourKind::ShiftedLine => (T::neg_infinity(), T::infinity()),
            ContourKind::BentC => (-half_pi, half_pi),
            ContourKind::GeneralizedC { k, l } => (
                -half_pi * T::from_u32(k).unwrap(),
                half_pi * T::from_u32(l).unwrap(),
            ),
        }
    }

    /// Parameter interval of the straight joiner (empty for k = l = 1).
    fn joiner(&self) -> (T, T) {
        match self.kind {
            ContourKind::GeneralizedC { k, l } => {
                let half_pi = T::FRAC_PI_2();
                (
                    -half_pi * T::from_u32(k - 1).unwrap(),
                    half_pi * T::from_u32(l - 1).unwrap(),
                )
            }
            _ => (T::zero(), T::zero()),
        }
    }

    /// Position at parameter `p`.
    pub fn position(&self, p: T) -> Complex<T> {
        let c = self.depth;
        match self.kind {
            ContourKind::ShiftedLine => Complex::new(p, -c),
            ContourKind::BentC => Complex::new(p, -(c / p.cos()).ln()),
            ContourKind::GeneralizedC { .. } => {
                let (lo, hi) = self.joiner();
                if p > lo && p < hi {
                    Complex::new(p, -c.ln())
                } else {
                    Complex::new(p, -(c / p.cos().abs()).ln())
                }
            }
        }
    }

    /// Derivative of the position with respect to the parameter.
    pub fn derivative(&self, p: T) -> Complex<T> {
        match self.kind {
            ContourKind::ShiftedLine => Complex::new(T::one(), T::zero()),
            ContourKind::BentC => Complex::new(T::one(), -p.tan()),
            ContourKind::GeneralizedC { .. } => {
                let (lo, hi) = self.joiner();
                if p > lo && p < hi {
                    Complex::new(T::one(), T::zero())
                } else {
                    Complex::new(T::one(), -p.tan())
                }
            }
        }
    }

    pub fn point(&self, p: T) -> PathPoint<T> {
        PathPoint {
            parameter: p,
            x: self.position(p),
            dx: self.derivative(p),
        }
    }

    /// Image of the path point in the oscillator coordinate r.
    pub fn r_at(&self, p: T) -> Complex<T> {
        match self.kind {
            ContourKind::ShiftedLine => self.position(p),
            _ => map_to_r(self.position(p)),
        }
    }

    /// Parameters at which the path reaches |Re r| = `s_end` on each side:
    /// the truncated ends used by the shooting integrator.
    pub fn truncation_parameters(&self, s_end: T) -> (T, T) {
        match self.kind {
            ContourKind::ShiftedLine => (-s_end, s_end),
            _ => {
                let theta = (s_end / self.depth).atan();
                let (lo, hi) = self.joiner();
                (lo - theta, hi + theta)
            }
        }
    }

    /// Parameter of the lowest point of the path (the match point).
    pub fn midpoint_parameter(&self) -> T {
        T::zero()
    }

    /// `n` points spread evenly over the parameter domain, kept `delta`
    /// away from singular ends (the line uses its own extent instead).
    pub fn sample_clipped(&self, n: usize, delta: T) -> Vec<PathPoint<T>> {
        let n = n.max(2);
        let (lo, hi) = match self.kind {
            ContourKind::ShiftedLine => (-self.extent, self.extent),
            _ => {
                let (lo, hi) = self.domain();
                (lo + delta, hi - delta)
            }
        };
        let last = T::from_index(n - 1);
        (0..n)
            .map(|i| {
                let f = T::from_index(i) / last;
                // symmetric rounding about the centre
                let p = if 2 * i + 1 == n {
                    (lo + hi) * T::lit(0.5)
                } else {
                    lo + (hi - lo) * f
                };
                self.point(p)
            })
            .collect()
    }

    pub fn sample(&self, n: usize) -> Vec<PathPoint<T>> {
        self.sample_clipped(n, T::lit(DEFAULT_ENDPOINT_CLIP))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    type C = Complex<f64>;

    #[test]
    fn bent_curve_examples() {
        let c1 = build_c(1.0).unwrap();
        assert_eq!(c1.position(0.0), C::new(0.0, 0.0));
        let x = c1.position(FRAC_PI_4);
        assert!((x - C::new(FRAC_PI_4, -(2f64.sqrt()).ln())).norm() < 1e-15);
        let c2 = build_c(2.0).unwrap();
        assert!((c2.position(0.0) - C::new(0.0, -(2f64).ln())).norm() < 1e-15);
        assert!(matches!(build_c(0.0), Err(Error::Domain(_))));
        assert!(build_c(-1.0).is_err());
    }

    #[test]
    fn map_examples() {
        assert!((map_to_r(C::new(0.0, 0.0)) - C::new(0.0, -1.0)).norm() < 1e-15);
        let c = 1.7f64;
        assert!((map_to_r(C::new(0.0, -c.ln())) - C::new(0.0, -c)).norm() < 1e-15);
        assert!((map_to_r(C::new(FRAC_PI_2, 0.0)) - C::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn preimage_inverts_map() {
        for &s in &[-3.0, -0.2, 0.0, 1.0, 40.0] {
            let r = C::new(s, -0.8);
            let x = preimage_of_r(r);
            assert!((map_to_r(x) - r).norm() < 1e-12);
            assert!(x.re.abs() < FRAC_PI_2);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let c = build_c(1.3).unwrap();
        let h = 1e-6;
        for &v in &[-1.2, -0.3, 0.0, 0.9] {
            let fd = (c.position(v + h) - c.position(v - h)) / (2.0 * h);
            assert!((fd - c.derivative(v)).norm() < 1e-8);
        }
    }

    #[test]
    fn generalized_rejects_even_or_zero_branches() {
        assert!(build_generalized(2, 1, 1.0).is_err());
        assert!(build_generalized(1, 0, 1.0).is_err());
        assert!(build_generalized(3, 1, 0.0).is_err());
    }

    #[test]
    fn generalized_domains() {
        let g = build_generalized(3, 1, 1.0).unwrap();
        let (lo, hi) = g.domain();
        assert!((lo + 1.5 * PI).abs() < 1e-15 && (hi - FRAC_PI_2).abs() < 1e-15);
        // left branch over (−3π/2, −π), joiner over (−π, 0)
        assert_eq!(g.joiner(), (-PI, 0.0));
        let g = build_generalized(1, 3, 1.0).unwrap();
        assert_eq!(g.joiner(), (0.0, PI));
    }

    #[test]
    fn generalized_is_continuous_at_junctions() {
        let g = build_generalized(3, 5, 0.7).unwrap();
        let (lo, hi) = g.joiner();
        for p in [lo, hi] {
            let a = g.position(p - 1e-9);
            let b = g.position(p + 1e-9);
            assert!((a - b).norm() < 1e-8, "jump at {p}");
        }
    }

    #[test]
    fn generalized_reduces_to_bent_curve() {
        let g = build_generalized(1, 1, 1.4).unwrap();
        let c = build_c(1.4).unwrap();
        for pt in c.sample(101) {
            assert!((g.position(pt.parameter) - pt.x).norm() < 1e-14);
            assert!((g.derivative(pt.parameter) - pt.dx).norm() < 1e-14);
        }
    }

    #[test]
    fn sample_examples() {
        let pts = build_c(1.0).unwrap().sample(3);
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[0].parameter, -pts[2].parameter);
        assert_eq!(pts[1].parameter, 0.0);
        let c = 2.5f64;
        let pts = build_c(c).unwrap().sample(11);
        assert!((pts[5].x - C::new(0.0, -c.ln())).norm() < 1e-15);
        assert!(pts
            .iter()
            .all(|p| p.dx.re.is_finite() && p.dx.im.is_finite()));
    }

    #[test]
    fn truncation_hits_requested_distance() {
        let c = build_c(0.5f64).unwrap();
        let (lo, hi) = c.truncation_parameters(12.0);
        assert!((c.r_at(hi).re - 12.0).abs() < 1e-10);
        assert!((c.r_at(lo).re + 12.0).abs() < 1e-10);
        let line = build_shifted_line(0.5, 6.0).unwrap();
        assert_eq!(line.truncation_parameters(12.0), (-12.0, 12.0));
        assert_eq!(line.r_at(1.0), C::new(1.0, -0.5));
    }
}
