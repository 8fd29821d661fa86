//! Exact wavefunctions: the two-parameter hypergeometric solution of the
//! singular oscillator, its terminating Laguerre form, and the Morse
//! function φ(x) = ψ(r)/√r with r = −i·e^{ix}.

use num_complex::Complex;

use crate::contour::map_to_r;
use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{complex_power_real, kummer_1f1, laguerre};
use crate::spectra::{ho_energy, QuasiParity};

/// Anything that can be evaluated as an oscillator wavefunction ψ(r).
pub trait RadialSolution<T: Real> {
    fn psi(&self, r: Complex<T>) -> Result<Complex<T>>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralSolutionParams<T> {
    pub energy: T,
    pub alpha: T,
    pub omega: T,
    pub c1: Complex<T>,
    pub c2: Complex<T>,
}

impl<T: Real> GeneralSolutionParams<T> {
    pub fn new(energy: T, alpha: T, omega: T, c1: Complex<T>, c2: Complex<T>) -> Result<Self> {
        if !(omega > T::zero()) || !(alpha > T::zero()) {
            return Err(Error::Domain(format!(
                "general solution needs omega > 0 and alpha > 0, got {omega}, {alpha}"
            )));
        }
        Ok(Self {
            energy,
            alpha,
            omega,
            c1,
            c2,
        })
    }

    /// First ₁F₁ parameters (2 ∓ 2α − E/ω)/4 of the two branches.
    pub fn kummer_a(&self) -> (T, T) {
        let two = T::lit(2.0);
        let eo = self.energy / self.omega;
        let quarter = T::lit(0.25);
        (
            (two - two * self.alpha - eo) * quarter,
            (two + two * self.alpha - eo) * quarter,
        )
    }
}

/// e^{−ωr²/2}·[C₁ r^{−α+1/2} ₁F₁(a₋; 1−α; ωr²) + C₂ r^{α+1/2} ₁F₁(a₊; 1+α; ωr²)]
pub fn general_solution<T: Real>(
    p: &GeneralSolutionParams<T>,
    r: Complex<T>,
) -> Result<Complex<T>> {
    if r.norm() == T::zero() {
        return Err(Error::Domain("general solution evaluated at r = 0".into()));
    }
    let z = r * r * p.omega;
    let (a_minus, a_plus) = p.kummer_a();
    let half = T::lit(0.5);
    let real = |x: T| Complex::new(x, T::zero());
    let mut sum = Complex::new(T::zero(), T::zero());
    if p.c1 != sum {
        let f = kummer_1f1(real(a_minus), real(T::one() - p.alpha), z)?;
        sum += p.c1 * complex_power_real(r, half - p.alpha)? * f;
    }
    if p.c2 != Complex::new(T::zero(), T::zero()) {
        let f = kummer_1f1(real(a_plus), real(T::one() + p.alpha), z)?;
        sum += p.c2 * complex_power_real(r, half + p.alpha)? * f;
    }
    Ok((-z * half).exp() * sum)
}

impl<T: Real> RadialSolution<T> for GeneralSolutionParams<T> {
    fn psi(&self, r: Complex<T>) -> Result<Complex<T>> {
        general_solution(self, r)
    }
}

/// A terminating (bound) oscillator state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState<T> {
    pub n: usize,
    pub q: QuasiParity,
    pub alpha: T,
    pub omega: T,
    pub normalization: Complex<T>,
}

impl<T: Real> BoundState<T> {
    pub fn new(n: usize, q: QuasiParity, alpha: T, omega: T) -> Result<Self> {
        ho_energy(n, q, alpha, omega)?;
        Ok(Self {
            n,
            q,
            alpha,
            omega,
            normalization: Complex::new(T::one(), T::zero()),
        })
    }

    /// Same state scaled so that ψ(−ic) = 1.
    pub fn unit_at_depth(mut self, c: T) -> Result<Self> {
        self.normalization = Complex::new(T::one(), T::zero());
        let v = bound_wavefunction(&self, Complex::new(T::zero(), -c))?;
        if v.norm() == T::zero() {
            return Err(Error::Domain(format!("psi vanishes at r = -i{c}")));
        }
        self.normalization = v.inv();
        Ok(self)
    }

    pub fn energy(&self) -> T {
        ho_energy(self.n, self.q, self.alpha, self.omega).expect("validated on construction")
    }

    /// Laguerre upper index −qα.
    pub fn laguerre_order(&self) -> T {
        -self.q.value::<T>() * self.alpha
    }

    /// (2 − 2qα − E/ω)/4, which equals −n for a bound state.
    pub fn termination_parameter(&self) -> T {
        let two = T::lit(2.0);
        (two - two * self.q.value::<T>() * self.alpha - self.energy() / self.omega) * T::lit(0.25)
    }

    /// The general-solution parameters describing this state up to a constant.
    pub fn as_general(&self) -> GeneralSolutionParams<T> {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        let (c1, c2) = match self.q {
            QuasiParity::Even => (one, zero),
            QuasiParity::Odd => (zero, one),
        };
        GeneralSolutionParams {
            energy: self.energy(),
            alpha: self.alpha,
            omega: self.omega,
            c1,
            c2,
        }
    }
}

/// normalization · r^{−qα+1/2} · e^{−ωr²/2} · L_n^{(−qα)}(ωr²)
pub fn bound_wavefunction<T: Real>(b: &BoundState<T>, r: Complex<T>) -> Result<Complex<T>> {
    if r.norm() == T::zero() {
        return Err(Error::Domain("bound state evaluated at r = 0".into()));
    }
    let half = T::lit(0.5);
    let z = r * r * b.omega;
    let order = b.laguerre_order();
    let power = complex_power_real(r, order + half)?;
    Ok(b.normalization * power * (-z * half).exp() * laguerre(b.n, order, z))
}

impl<T: Real> RadialSolution<T> for BoundState<T> {
    fn psi(&self, r: Complex<T>) -> Result<Complex<T>> {
        bound_wavefunction(self, r)
    }
}

/// φ(x) = ψ(r)/√r at r = −i·e^{ix}.
pub fn morse_wavefunction<T: Real, S: RadialSolution<T> + ?Sized>(
    source: &S,
    x: Complex<T>,
) -> Result<Complex<T>> {
    let r = map_to_r(x);
    Ok(source.psi(r)? / complex_power_real(r, T::lit(0.5))?)
}

/// Residual step h = 2e−3·min(1 + |z|, |Q(z)|^{−1/2}), the local length
/// scale of the equation.
pub fn default_residual_step<T: Real>(
    equation: &Equation<T>,
    trial: Complex<T>,
    z: Complex<T>,
) -> T {
    let local = equation.q(z, trial).norm().sqrt().recip();
    T::lit(2e-3) * (T::one() + z.norm()).min(local)
}

/// Relative residual of y'' = Q·y at `point`, with y'' from the five-point
/// central difference of step `h` along the unit `direction` of the path.
pub fn ode_residual<T, F>(
    equation: &Equation<T>,
    trial: Complex<T>,
    y: F,
    point: Complex<T>,
    direction: Complex<T>,
    h: T,
) -> Result<T>
where
    T: Real,
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    if !(h > T::zero()) {
        return Err(Error::Domain(format!(
            "residual step must be positive, got {h}"
        )));
    }
    let d = direction / direction.norm();
    if equation.singular_near(point, h * T::lit(3.0)) {
        return Err(Error::Domain("residual stencil touches r = 0".into()));
    }
    let step = d * h;
    let y0 = y(point)?;
    let near = y(point + step)? + y(point - step)?;
    let far = y(point + step * T::lit(2.0))? + y(point - step * T::lit(2.0))?;
    let second = (near * T::lit(16.0) - far - y0 * T::lit(30.0)) / (step * step * T::lit(12.0));
    let rhs = equation.q(point, trial) * y0;
    let scale = second.norm().max(rhs.norm()).max(T::min_positive_value());
    Ok((second - rhs).norm() / scale)
}
