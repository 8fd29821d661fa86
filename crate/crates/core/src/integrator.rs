//! Dormand–Prince 5(4) for a complex two-component state carried along a
//! real path parameter.
//!
//! Accepted steps are recorded in a [`Mesh`] so the same discretization can
//! be replayed at other parameter values; on a fixed mesh the end state is
//! an analytic function of the equation's coefficients.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

pub type State<T> = [Complex<T>; 2];

/// Magnitude beyond which the state is rescaled.
pub const RENORMALIZE_ABOVE: f64 = 1e100;
const MAX_RESCALES: usize = 64;
const MAX_STEPS: usize = 2_000_000;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Difference between the 5th- and embedded 4th-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Accepted steps and rescaling events of one adaptive run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Mesh<T> {
    /// (start parameter, signed step)
    steps: Vec<(T, T)>,
    /// (index of the step after which the state was divided, divisor)
    rescales: Vec<(usize, T)>,
}

impl<T> Mesh<T> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub end: State<T>,
    /// Natural log of the total factor divided out by rescaling.
    pub log_scale: T,
    pub mesh: Mesh<T>,
}

fn axpy<T: Real>(y: &State<T>, ks: &[State<T>], coeffs: &[f64], h: T) -> State<T> {
    let mut out = *y;
    for (k, &a) in ks.iter().zip(coeffs) {
        if a != 0.0 {
            let w = h * T::lit(a);
            out[0] += k[0] * w;
            out[1] += k[1] * w;
        }
    }
    out
}

fn state_norm<T: Real>(y: &State<T>) -> T {
    y[0].norm().max(y[1].norm())
}

fn rk_stages<T: Real, F>(f: &F, p: T, y: &State<T>, h: T, k1: State<T>) -> [State<T>; 7]
where
    F: Fn(T, &State<T>) -> State<T>,
{
    let zero = [Complex::new(T::zero(), T::zero()); 2];
    let mut ks = [zero; 7];
    ks[0] = k1;
    for s in 1..7 {
        let ys = axpy(y, &ks[..s], &A[s][..s], h);
        ks[s] = f(p + h * T::lit(C[s]), &ys);
    }
    ks
}

/// Integrate y' = f(p, y) from `p0` to `p1` with local error held below
/// `tol` relative to the state magnitude per unit of path length, where
/// `speed(p)` is |dz/dp|.
pub fn integrate_adaptive<T: Real, F, S>(
    f: F,
    speed: S,
    p0: T,
    p1: T,
    y0: State<T>,
    tol: T,
) -> Result<Trajectory<T>>
where
    F: Fn(T, &State<T>) -> State<T>,
    S: Fn(T) -> T,
{
    let span = p1 - p0;
    let dir = span.signum();
    let min_step = span.abs() * T::lit(1e-14);
    let mut h = span / T::lit(200.0);
    let mut p = p0;
    let mut y = y0;
    let mut log_scale = T::zero();
    let mut mesh = Mesh::default();
    let mut k1 = f(p, &y);

    let fifth = T::lit(0.2);
    while (p1 - p) * dir > T::zero() {
        if mesh.steps.len() >= MAX_STEPS {
            return Err(Error::StepFailure(format!("more than {MAX_STEPS} steps")));
        }
        if (p + h - p1) * dir > T::zero() {
            h = p1 - p;
        }
        let ks = rk_stages(&f, p, &y, h, k1);
        let y_new = axpy(&y, &ks[..6], &A[6], h);
        let err_vec = axpy(&[Complex::new(T::zero(), T::zero()); 2], &ks, &E, h);
        let scale = state_norm(&y).max(state_norm(&y_new));
        let length = (speed(p + h * T::lit(0.5)) * h.abs()).max(T::min_positive_value());
        let err = state_norm(&err_vec) / (tol * scale * length);
        if !err.is_finite() || !is_finite(y_new[0]) || !is_finite(y_new[1]) {
            h *= fifth;
            if h.abs() < min_step {
                return Err(Error::Overflow(
                    "non-finite state during integration".into(),
                ));
            }
            continue;
        }
        if err <= T::one() {
            mesh.steps.push((p, h));
            p += h;
            y = y_new;
            k1 = ks[6];
            let size = state_norm(&y);
            if size > T::lit(RENORMALIZE_ABOVE) {
                if mesh.rescales.len() >= MAX_RESCALES {
                    return Err(Error::Overflow(format!(
                        "more than {MAX_RESCALES} rescalings"
                    )));
                }
                mesh.rescales.push((mesh.steps.len() - 1, size));
                y[0] /= size;
                y[1] /= size;
                k1[0] /= size;
                k1[1] /= size;
                log_scale += size.ln();
            }
        }
        let factor = if err == T::zero() {
            T::lit(5.0)
        } else {
            (T::lit(0.9) * err.powf(-fifth)).max(fifth).min(T::lit(5.0))
        };
        h *= factor;
        if h.abs() < min_step && (p1 - p) * dir > min_step {
            return Err(Error::StepFailure(format!(
                "step underflow at parameter {p} (tolerance {tol})"
            )));
        }
    }
    Ok(Trajectory {
        end: y,
        log_scale,
        mesh,
    })
}

/// Replay a recorded mesh from a new initial state, with the same
/// rescaling divisors at the same steps.
pub fn integrate_on_mesh<T: Real, F>(f: F, mesh: &Mesh<T>, y0: State<T>) -> Result<(State<T>, T)>
where
    F: Fn(T, &State<T>) -> State<T>,
{
    let mut y = y0;
    let mut log_scale = T::zero();
    let mut rescales = mesh.rescales.iter().peekable();
    for (i, &(p, h)) in mesh.steps.iter().enumerate() {
        let k1 = f(p, &y);
        let ks = rk_stages(&f, p, &y, h, k1);
        y = axpy(&y, &ks[..6], &A[6], h);
        if let Some(&&(at, div)) = rescales.peek() {
            if at == i {
                y[0] /= div;
                y[1] /= div;
                log_scale += div.ln();
                rescales.next();
            }
        }
    }
    if !is_finite(y[0]) || !is_finite(y[1]) {
        return Err(Error::Overflow("non-finite state on replayed mesh".into()));
    }
    Ok((y, log_scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Cx = Complex<f64>;

    fn oscillator(_p: f64, y: &State<f64>) -> State<f64> {
        // y'' = -y
        [y[1], -y[0]]
    }

    #[test]
    fn harmonic_motion_is_accurate() {
        let y0 = [Cx::new(1.0, 0.0), Cx::new(0.0, 0.0)];
        let tr = integrate_adaptive(oscillator, |_| 1.0, 0.0, 10.0, y0, 1e-10).unwrap();
        assert!((tr.end[0].re - 10f64.cos()).abs() < 1e-8);
        assert!((tr.end[1].re + 10f64.sin()).abs() < 1e-8);
        // and backwards
        let tr = integrate_adaptive(oscillator, |_| 1.0, 10.0, 0.0, tr.end, 1e-10).unwrap();
        assert!((tr.end[0] - y0[0]).norm() < 1e-8);
    }

    #[test]
    fn complex_exponential_growth_with_rescaling() {
        // y' = λ y with |y| growing past the rescale threshold.
        let lambda = Cx::new(30.0, 5.0);
        let f = |_p: f64, y: &State<f64>| [y[0] * lambda, y[1] * lambda];
        let y0 = [Cx::new(1.0, 0.0), Cx::new(1.0, 0.0)];
        let tr = integrate_adaptive(f, |_| 1.0, 0.0, 10.0, y0, 1e-10).unwrap();
        assert!(!tr.mesh.rescales.is_empty());
        let log_mag = tr.end[0].norm().ln() + tr.log_scale;
        assert!((log_mag - 300.0).abs() < 1e-6);
        let phase = tr.end[0].arg();
        let expect = (50.0f64).rem_euclid(std::f64::consts::TAU);
        let expect = if expect > std::f64::consts::PI {
            expect - std::f64::consts::TAU
        } else {
            expect
        };
        assert!((phase - expect).abs() < 1e-6);
    }

    #[test]
    fn replay_reproduces_adaptive_run() {
        let y0 = [Cx::new(1.0, 0.5), Cx::new(-0.3, 0.0)];
        let tr = integrate_adaptive(oscillator, |_| 1.0, 0.0, 7.0, y0, 1e-9).unwrap();
        let (end, _) = integrate_on_mesh(oscillator, &tr.mesh, y0).unwrap();
        assert!((end[0] - tr.end[0]).norm() < 1e-14);
        assert!((end[1] - tr.end[1]).norm() < 1e-14);
    }
}
