//! Complex special functions: Kummer's confluent hypergeometric function,
//! generalized Laguerre polynomials and complex powers with the cut along
//! the positive imaginary axis.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, near_nonpositive_integer, Real};

/// Distance within which a parameter is snapped to a non-positive integer.
pub const INTEGER_TOL: f64 = 1e-12;
/// Relative size below which a series term counts as negligible.
pub const SERIES_REL_TOL: f64 = 1e-17;
/// Number of consecutive negligible terms that ends a series.
pub const SERIES_QUIET_TERMS: usize = 3;
pub const SERIES_MAX_TERMS: usize = 10_000;
/// Largest |z| accepted by [`kummer_1f1`]; no asymptotic expansion is provided.
pub const KUMMER_MAX_ABS_Z: f64 = 200.0;

/// Complex number carried as an unevaluated sum `hi + lo` of two working
/// precision values. Series terms are updated in this form so the rounding
/// that depends on `z` stays at the square of the unit roundoff.
#[derive(Debug, Clone, Copy)]
struct DoubleComplex<T> {
    re: (T, T),
    im: (T, T),
}

fn two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum<T: Real>(a: T, b: T) -> (T, T) {
    let s = a + b;
    (s, b - (s - a))
}

fn dd_add<T: Real>(x: (T, T), y: (T, T)) -> (T, T) {
    let (s, e) = two_sum(x.0, y.0);
    quick_two_sum(s, e + x.1 + y.1)
}

fn dd_neg<T: Real>(x: (T, T)) -> (T, T) {
    (-x.0, -x.1)
}

fn dd_scale<T: Real>(x: (T, T), d: T) -> (T, T) {
    let p = x.0 * d;
    let e = x.0.mul_add(d, -p);
    quick_two_sum(p, e + x.1 * d)
}

fn dd_mul<T: Real>(x: (T, T), y: (T, T)) -> (T, T) {
    let p = x.0 * y.0;
    let e = x.0.mul_add(y.0, -p);
    quick_two_sum(p, e + x.0 * y.1 + x.1 * y.0)
}

fn dd_div<T: Real>(x: (T, T), y: (T, T)) -> (T, T) {
    let q1 = x.0 / y.0;
    let r = dd_add(x, dd_neg(dd_scale(y, q1)));
    let q2 = r.0 / y.0;
    let r = dd_add(r, dd_neg(dd_scale(y, q2)));
    let q3 = r.0 / y.0;
    dd_add(quick_two_sum(q1, q2), (q3, T::zero()))
}

impl<T: Real> DoubleComplex<T> {
    fn new(v: Complex<T>) -> Self {
        Self {
            re: (v.re, T::zero()),
            im: (v.im, T::zero()),
        }
    }

    /// `u − v` without rounding.
    fn difference(u: Complex<T>, v: Complex<T>) -> Self {
        Self {
            re: two_sum(u.re, -v.re),
            im: two_sum(u.im, -v.im),
        }
    }

    /// `self + k` for a real `k`.
    fn shift(self, k: T) -> Self {
        Self {
            re: dd_add(self.re, (k, T::zero())),
            im: self.im,
        }
    }

    fn mul(self, w: Complex<T>) -> Self {
        Self {
            re: dd_add(dd_scale(self.re, w.re), dd_neg(dd_scale(self.im, w.im))),
            im: dd_add(dd_scale(self.re, w.im), dd_scale(self.im, w.re)),
        }
    }

    fn mul_dd(self, w: Self) -> Self {
        Self {
            re: dd_add(dd_mul(self.re, w.re), dd_neg(dd_mul(self.im, w.im))),
            im: dd_add(dd_mul(self.re, w.im), dd_mul(self.im, w.re)),
        }
    }

    fn div_dd(self, w: Self) -> Self {
        let norm = dd_add(dd_mul(w.re, w.re), dd_mul(w.im, w.im));
        let conj = Self {
            re: w.re,
            im: dd_neg(w.im),
        };
        let p = self.mul_dd(conj);
        Self {
            re: dd_div(p.re, norm),
            im: dd_div(p.im, norm),
        }
    }

    fn scale(self, d: T) -> Self {
        Self {
            re: dd_scale(self.re, d),
            im: dd_scale(self.im, d),
        }
    }

    fn add(self, w: Self) -> Self {
        Self {
            re: dd_add(self.re, w.re),
            im: dd_add(self.im, w.im),
        }
    }

    fn value(self) -> Complex<T> {
        Complex::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// Confluent hypergeometric function ₁F₁(a; b; z) by its power series,
/// taken through Kummer's transformation when Re z < 0.
///
/// When `a` is a non-positive integer `-n` the series is a degree-`n`
/// polynomial and is summed exactly; this is also the only way a
/// non-positive integer `b` is tolerated (the polynomial must end before the
/// vanishing Pochhammer factor is reached).
pub fn kummer_1f1<T: Real>(a: Complex<T>, b: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    if !(is_finite(a) && is_finite(b) && is_finite(z)) {
        return Err(Error::Domain("non-finite argument to 1F1".into()));
    }
    if z.norm() > T::lit(KUMMER_MAX_ABS_Z) {
        return Err(Error::NonConvergence(format!(
            "|z| = {} exceeds the series range {}",
            z.norm(),
            KUMMER_MAX_ABS_Z
        )));
    }
    let tol = T::lit(INTEGER_TOL);
    let degree = near_nonpositive_integer(a, tol);
    if let Some(b_pole) = near_nonpositive_integer(b, tol) {
        // (b)_k first vanishes at k = |b| + 1.
        match degree {
            Some(n) if n <= b_pole => {}
            _ => {
                return Err(Error::Pole(format!(
                    "b = {b} is a non-positive integer and the series does not terminate first"
                )))
            }
        }
    }

    match degree {
        Some(n) => {
            let a = Complex::new(-T::from_u64(n).unwrap(), T::zero());
            Ok(kummer_polynomial(DoubleComplex::new(a), b, z, n))
        }
        // e^z·₁F₁(b−a; b; −z) avoids the cancellation of the direct series.
        None if z.re < T::zero() => {
            if near_nonpositive_integer(b - a, tol).is_some() {
                return Ok(z.exp() * kummer_1f1(b - a, b, -z)?);
            }
            Ok(z.exp() * kummer_series(DoubleComplex::difference(b, a), b, -z)?)
        }
        None => kummer_series(DoubleComplex::new(a), b, z),
    }
}

/// Next series term, t·z·(a + k)/((b + k)(k + 1)), all in double-double.
fn kummer_term<T: Real>(
    term: DoubleComplex<T>,
    a: DoubleComplex<T>,
    b: Complex<T>,
    z: Complex<T>,
    k: T,
) -> DoubleComplex<T> {
    let denominator = DoubleComplex::new(b).shift(k).scale(k + T::one());
    term.mul(z).mul_dd(a.shift(k)).div_dd(denominator)
}

fn kummer_polynomial<T: Real>(
    a: DoubleComplex<T>,
    b: Complex<T>,
    z: Complex<T>,
    degree: u64,
) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let mut term = DoubleComplex::new(one);
    let mut acc = term;
    for k in 0..degree {
        let kf = T::from_u64(k).unwrap();
        term = kummer_term(term, a, b, z, kf);
        acc = acc.add(term);
    }
    acc.value()
}

fn kummer_series<T: Real>(a: DoubleComplex<T>, b: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let rel = T::lit(SERIES_REL_TOL);
    let mut term = DoubleComplex::new(one);
    let mut acc = term;
    let mut quiet = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = T::from_index(k);
        term = kummer_term(term, a, b, z, kf);
        acc = acc.add(term);
        if !is_finite(acc.value()) {
            return Err(Error::NonConvergence("1F1 partial sum overflowed".into()));
        }
        if term.value().norm() < rel * acc.value().norm() {
            quiet += 1;
            if quiet >= SERIES_QUIET_TERMS {
                return Ok(acc.value());
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "1F1({}; {b}; {z}) not converged after {SERIES_MAX_TERMS} terms",
        a.value()
    )))
}

/// Generalized Laguerre polynomial L_n^{(a)}(z) by the three-term recurrence in `n`.
pub fn laguerre<T: Real>(n: usize, a: T, z: Complex<T>) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    if n == 0 {
        return one;
    }
    let mut prev = one;
    let mut cur = one * (T::one() + a) - z;
    for k in 1..n {
        let kf = T::from_index(k);
        let two_k_1 = kf + kf + T::one();
        let next = ((one * (two_k_1 + a) - z) * cur - prev * (kf + a)) / (kf + T::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// Argument of `r` in (−3π/2, π/2]: the cut runs up the positive imaginary axis.
pub fn branch_arg<T: Real>(r: Complex<T>) -> T {
    let theta = r.im.atan2(r.re);
    if theta > T::FRAC_PI_2() {
        theta - T::TAU()
    } else {
        theta
    }
}

/// r^p = exp(p·(ln|r| + i·arg r)) on the branch of [`branch_arg`].
pub fn complex_power<T: Real>(r: Complex<T>, p: Complex<T>) -> Result<Complex<T>> {
    if r.re == T::zero() && r.im == T::zero() {
        if p.re > T::zero() {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        return Err(Error::Domain(format!("0^{p} is undefined")));
    }
    let log = Complex::new(r.norm().ln(), branch_arg(r));
    Ok((p * log).exp())
}

/// Real-exponent convenience wrapper for [`complex_power`].
pub fn complex_power_real<T: Real>(r: Complex<T>, p: T) -> Result<Complex<T>> {
    complex_power(r, Complex::new(p, T::zero()))
}
