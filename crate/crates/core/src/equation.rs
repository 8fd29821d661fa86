//! The two second-order equations, written uniformly as y'' = Q(z)·y.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which Schrödinger equation is being solved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Equation<T> {
    /// −ψ'' + (ω²r² + ℓ(ℓ+1)/r²)ψ = Eψ with ℓ = α − 1/2, in the variable r.
    /// The spectral parameter is E.
    HoLine { omega: T, alpha: T },
    /// −φ'' − (ω²e^{4ix} + D·e^{2ix})φ = εφ, in the variable x.
    /// The spectral parameter is ε.
    MorseContour { omega: T, coupling: T },
}

impl<T: Real> Equation<T> {
    pub fn ho_line(omega: T, alpha: T) -> Result<Self> {
        if !(omega > T::zero()) || !(alpha > T::zero()) {
            return Err(Error::Domain(format!(
                "oscillator needs omega > 0 and alpha > 0, got omega = {omega}, alpha = {alpha}"
            )));
        }
        Ok(Equation::HoLine { omega, alpha })
    }

    pub fn morse_contour(omega: T, coupling: T) -> Result<Self> {
        if !(omega > T::zero()) || !coupling.is_finite() {
            return Err(Error::Domain(format!(
                "Morse problem needs omega > 0 and finite D, got omega = {omega}, D = {coupling}"
            )));
        }
        Ok(Equation::MorseContour { omega, coupling })
    }

    pub fn omega(&self) -> T {
        match *self {
            Equation::HoLine { omega, .. } | Equation::MorseContour { omega, .. } => omega,
        }
    }

    /// Q(z) for the trial eigenvalue, so that the equation reads y'' = Q·y.
    pub fn q(&self, z: Complex<T>, trial: Complex<T>) -> Complex<T> {
        match *self {
            Equation::HoLine { omega, alpha } => {
                let centrifugal = alpha * alpha - T::lit(0.25);
                let z2 = z * z;
                z2 * (omega * omega) + z2.inv() * centrifugal - trial
            }
            Equation::MorseContour { omega, coupling } => {
                let i = Complex::new(T::zero(), T::one());
                let e2 = (i * z * T::lit(2.0)).exp();
                -(trial + e2 * e2 * (omega * omega) + e2 * coupling)
            }
        }
    }

    /// Oscillator coordinate r at the equation's own coordinate z.
    pub fn r_of(&self, z: Complex<T>) -> Complex<T> {
        match self {
            Equation::HoLine { .. } => z,
            Equation::MorseContour { .. } => crate::contour::map_to_r(z),
        }
    }

    /// Leading logarithmic derivative y'/y of the solution that decays
    /// where the path leaves through `z`.
    pub fn recessive_log_derivative(&self, z: Complex<T>) -> Complex<T> {
        let omega = self.omega();
        let r = self.r_of(z);
        // ψ ~ exp(∓ωr²/2); pick the sign that decays outward.
        let sign = if (r * r).re >= T::zero() {
            T::one()
        } else {
            -T::one()
        };
        match self {
            Equation::HoLine { .. } => -r * (omega * sign),
            Equation::MorseContour { .. } => {
                // φ = ψ/√r and dr/dx = i·r
                let i = Complex::new(T::zero(), T::one());
                -i * r * r * (omega * sign) - i * T::lit(0.5)
            }
        }
    }

    /// True when the stencil around `z` would reach the origin of r.
    pub(crate) fn singular_near(&self, z: Complex<T>, radius: T) -> bool {
        match self {
            Equation::HoLine { .. } => z.norm() <= radius,
            Equation::MorseContour { .. } => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn oscillator_ground_state_solves_equation() {
        // ψ = e^{-r²/2} at α = 1/2, E = 1: ψ'' = (r² − 1)ψ.
        let eq = Equation::ho_line(1.0, 0.5).unwrap();
        let r = C::new(0.7, -1.0);
        let q = eq.q(r, C::new(1.0, 0.0));
        assert!((q - (r * r - 1.0)).norm() < 1e-14);
    }

    #[test]
    fn morse_potential_terms() {
        let eq = Equation::morse_contour(2.0, 3.0).unwrap();
        let x = C::new(0.3, -0.2);
        let i = C::new(0.0, 1.0);
        let expect = -(C::new(5.0, 0.0) + (4.0 * i * x).exp() * 4.0 + (2.0 * i * x).exp() * 3.0);
        assert!((eq.q(x, C::new(5.0, 0.0)) - expect).norm() < 1e-13);
    }

    #[test]
    fn constructors_validate() {
        assert!(Equation::ho_line(0.0, 1.0).is_err());
        assert!(Equation::ho_line(1.0, 0.0).is_err());
        assert!(Equation::morse_contour(-1.0, 1.0).is_err());
        assert!(Equation::morse_contour(1.0, f64::NAN).is_err());
    }
}
