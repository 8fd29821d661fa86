//! Bidirectional shooting along complex paths.
//!
//! Each half of the path is integrated inward from a truncated end, where
//! the recessive asymptotic sets the initial data, to the match point. The
//! scaled Wronskian of the two halves vanishes exactly at eigenvalues. A
//! scan of |W| over a real grid picks candidates, which are then refined by
//! complex secant iteration; reality of the result is checked, not assumed.

use std::cmp::Ordering;

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::contour::{build_shifted_line, Contour, ContourKind};
use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::integrator::{integrate_adaptive, integrate_on_mesh, Mesh, State};
use crate::scalar::Real;
use crate::spectra::{morse_energy, QuasiParity, Sign};

pub const DEFAULT_DECAY_CAP: f64 = 70.0;
/// A grid minimum becomes a candidate only below this fraction of the median |W|.
pub const PROMOTION_FRACTION: f64 = 0.1;
/// Relative distance under which two refined eigenvalues are the same.
pub const DEDUP_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSpec<T> {
    pub equation: Equation<T>,
    pub contour: Contour<T>,
    /// ω(s² − c²)/2 at the truncated ends.
    pub decay_exponent_cap: T,
}

impl<T: Real> ProblemSpec<T> {
    pub fn new(equation: Equation<T>, contour: Contour<T>) -> Result<Self> {
        let compatible = matches!(
            (&equation, contour.kind()),
            (Equation::HoLine { .. }, ContourKind::ShiftedLine)
                | (Equation::MorseContour { .. }, ContourKind::BentC)
                | (
                    Equation::MorseContour { .. },
                    ContourKind::GeneralizedC { .. }
                )
        );
        if !compatible {
            return Err(Error::Domain(format!(
                "contour {} does not fit the chosen equation",
                contour.kind().name()
            )));
        }
        Ok(Self {
            equation,
            contour,
            decay_exponent_cap: T::lit(DEFAULT_DECAY_CAP),
        })
    }

    /// Oscillator on the line r = s − ic.
    pub fn ho_line(omega: T, alpha: T, depth: T) -> Result<Self> {
        let equation = Equation::ho_line(omega, alpha)?;
        let cap = T::lit(DEFAULT_DECAY_CAP);
        let extent = (T::lit(2.0) * cap / omega + depth * depth).sqrt();
        Self::new(equation, build_shifted_line(depth, extent)?)
    }

    pub fn morse(omega: T, coupling: T, contour: Contour<T>) -> Result<Self> {
        Self::new(Equation::morse_contour(omega, coupling)?, contour)
    }

    pub fn with_decay_cap(mut self, cap: T) -> Result<Self> {
        if !(cap > T::zero()) {
            return Err(Error::Domain(format!(
                "decay cap must be positive, got {cap}"
            )));
        }
        self.decay_exponent_cap = cap;
        Ok(self)
    }

    /// |Re r| at the truncated ends.
    pub fn truncation_distance(&self) -> T {
        let c = self.contour.depth();
        (T::lit(2.0) * self.decay_exponent_cap / self.equation.omega() + c * c).sqrt()
    }

    fn end_parameter(&self, side: Side) -> T {
        let (lo, hi) = self
            .contour
            .truncation_parameters(self.truncation_distance());
        match side {
            Side::Left => lo,
            Side::Right => hi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid<T> {
    pub lo: T,
    pub hi: T,
    pub count: usize,
}

impl<T: Real> Grid<T> {
    pub fn points(&self) -> Vec<T> {
        let last = T::from_index(self.count - 1);
        (0..self.count)
            .map(|i| self.lo + (self.hi - self.lo) * T::from_index(i) / last)
            .collect()
    }

    pub fn spacing(&self) -> T {
        (self.hi - self.lo) / T::from_index(self.count - 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingConfig<T> {
    pub match_parameter: T,
    pub step_tolerance: T,
    /// Integrator tolerance for the grid scan, which only ranks minima.
    pub scan_tolerance: T,
    pub grid: Grid<T>,
    pub refine_tolerance: T,
    pub max_refinements: usize,
    pub imag_tolerance: T,
}

impl<T: Real> ShootingConfig<T> {
    /// Defaults over the trial window [lo, hi], ten grid points per unit.
    pub fn new(lo: T, hi: T) -> Result<Self> {
        let count = ((hi - lo) * T::lit(10.0)).ceil().to_usize().unwrap_or(0) + 1;
        Self::with_grid(lo, hi, count.max(2))
    }

    pub fn with_grid(lo: T, hi: T, count: usize) -> Result<Self> {
        if !(lo < hi) || count < 2 {
            return Err(Error::Domain(format!(
                "grid needs lo < hi and count >= 2, got [{lo}, {hi}] x {count}"
            )));
        }
        Ok(Self {
            match_parameter: T::zero(),
            step_tolerance: T::lit(1e-10),
            scan_tolerance: T::lit(1e-8),
            grid: Grid { lo, hi, count },
            refine_tolerance: T::lit(1e-10),
            max_refinements: 60,
            imag_tolerance: T::lit(1e-6),
        })
    }

    /// Largest splitting of a numerically doubled root that is still
    /// attributed to integration error rather than two distinct levels.
    fn cluster_split(&self) -> T {
        T::lit(100.0) * self.step_tolerance.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One half-path solution at the match point.
#[derive(Debug, Clone)]
pub struct HalfSolution<T> {
    pub value: Complex<T>,
    /// dψ/dz in the equation's own coordinate.
    pub derivative: Complex<T>,
    /// dψ/dp along the path parameter.
    pub path_derivative: Complex<T>,
    pub log_scale: T,
    pub mesh: Mesh<T>,
}

fn rhs<T: Real>(
    problem: &ProblemSpec<T>,
    trial: Complex<T>,
) -> impl Fn(T, &State<T>) -> State<T> + '_ {
    move |p: T, y: &State<T>| {
        let z = problem.contour.position(p);
        let dz = problem.contour.derivative(p);
        [dz * y[1], dz * problem.equation.q(z, trial) * y[0]]
    }
}

fn initial_state<T: Real>(problem: &ProblemSpec<T>, side: Side) -> State<T> {
    let p_end = problem.end_parameter(side);
    let z = problem.contour.position(p_end);
    [
        Complex::new(T::one(), T::zero()),
        problem.equation.recessive_log_derivative(z),
    ]
}

/// Integrate one half of the path inward to the match point.
pub fn integrate_half<T: Real>(
    problem: &ProblemSpec<T>,
    trial: Complex<T>,
    side: Side,
    cfg: &ShootingConfig<T>,
) -> Result<HalfSolution<T>> {
    if !(trial.re.is_finite() && trial.im.is_finite()) {
        return Err(Error::Domain(format!(
            "trial eigenvalue {trial} is not finite"
        )));
    }
    let start = problem.end_parameter(side);
    let stop = cfg.match_parameter;
    let contour = problem.contour;
    let tr = integrate_adaptive(
        rhs(problem, trial),
        move |p| contour.derivative(p).norm(),
        start,
        stop,
        initial_state(problem, side),
        cfg.step_tolerance,
    )?;
    Ok(HalfSolution {
        value: tr.end[0],
        derivative: tr.end[1],
        path_derivative: tr.end[1] * contour.derivative(stop),
        log_scale: tr.log_scale,
        mesh: tr.mesh,
    })
}

fn wronskian<T: Real>(left: &State<T>, right: &State<T>) -> (Complex<T>, T) {
    let w = left[0] * right[1] - left[1] * right[0];
    let scale = left[0].norm() * right[0].norm() + left[1].norm() * right[1].norm();
    (w, scale)
}

/// Wronskian ψ_L·ψ′_R − ψ′_L·ψ_R at the match point, divided by
/// |ψ_L||ψ_R| + |ψ′_L||ψ′_R|.
pub fn mismatch<T: Real>(
    problem: &ProblemSpec<T>,
    trial: Complex<T>,
    cfg: &ShootingConfig<T>,
) -> Result<Complex<T>> {
    let left = integrate_half(problem, trial, Side::Left, cfg)?;
    let right = integrate_half(problem, trial, Side::Right, cfg)?;
    let (w, scale) = wronskian(
        &[left.value, left.derivative],
        &[right.value, right.derivative],
    );
    if !(scale > T::zero()) || !scale.is_finite() {
        return Err(Error::Overflow("degenerate Wronskian scale".into()));
    }
    Ok(w / scale)
}

/// Wronskian on meshes frozen at one trial value: an analytic function of
/// the trial eigenvalue, used during refinement.
struct FrozenMismatch<'a, T> {
    problem: &'a ProblemSpec<T>,
    left: Mesh<T>,
    right: Mesh<T>,
    scale: T,
}

impl<'a, T: Real> FrozenMismatch<'a, T> {
    fn new(
        problem: &'a ProblemSpec<T>,
        trial: Complex<T>,
        cfg: &ShootingConfig<T>,
    ) -> Result<Self> {
        let left = integrate_half(problem, trial, Side::Left, cfg)?;
        let right = integrate_half(problem, trial, Side::Right, cfg)?;
        let (_, scale) = wronskian(
            &[left.value, left.derivative],
            &[right.value, right.derivative],
        );
        if !(scale > T::zero()) || !scale.is_finite() {
            return Err(Error::Overflow("degenerate Wronskian scale".into()));
        }
        Ok(Self {
            problem,
            left: left.mesh,
            right: right.mesh,
            scale,
        })
    }

    fn eval(&self, trial: Complex<T>) -> Result<Complex<T>> {
        let f = rhs(self.problem, trial);
        let (l, _) = integrate_on_mesh(&f, &self.left, initial_state(self.problem, Side::Left))?;
        let (r, _) = integrate_on_mesh(&f, &self.right, initial_state(self.problem, Side::Right))?;
        Ok(wronskian(&l, &r).0 / self.scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingResult<T> {
    pub eigenvalue: Complex<T>,
    pub mismatch_magnitude: T,
    pub iterations: usize,
    pub converged: bool,
    pub imag_flagged: bool,
    /// 2 when the level was resolved as a coalesced pair of roots.
    pub multiplicity: usize,
}

struct SecantOutcome<T> {
    root: Complex<T>,
    iterations: usize,
    converged: bool,
}

/// Complex secant iteration. Stops once the update falls below
/// `tol·(1 + |x|)`, or gives up when an iterate leaves `radius` of `x0`.
fn secant<T: Real, F>(
    f: F,
    x0: Complex<T>,
    x1: Complex<T>,
    tol: T,
    max_iter: usize,
    radius: T,
) -> SecantOutcome<T>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let fail = |x: Complex<T>, n: usize| SecantOutcome {
        root: x,
        iterations: n,
        converged: false,
    };
    let (mut xa, mut xb) = (x0, x1);
    let mut fa = match f(xa) {
        Ok(v) => v,
        Err(_) => return fail(xa, 0),
    };
    let mut fb = match f(xb) {
        Ok(v) => v,
        Err(_) => return fail(xb, 0),
    };
    for it in 1..=max_iter {
        if fb.norm() == T::zero() {
            return SecantOutcome {
                root: xb,
                iterations: it,
                converged: true,
            };
        }
        let denom = fb - fa;
        if denom.norm() == T::zero() {
            return fail(xb, it);
        }
        let step = fb * (xb - xa) / denom;
        let xn = xb - step;
        if !(xn.re.is_finite() && xn.im.is_finite()) || (xn - x0).norm() > radius {
            return fail(xn, it);
        }
        if step.norm() <= tol * (T::one() + xn.norm()) {
            return SecantOutcome {
                root: xn,
                iterations: it,
                converged: true,
            };
        }
        xa = xb;
        fa = fb;
        xb = xn;
        fb = match f(xb) {
            Ok(v) => v,
            Err(_) => return fail(xb, it),
        };
    }
    fail(xb, max_iter)
}

fn finish<T: Real>(
    problem: &ProblemSpec<T>,
    cfg: &ShootingConfig<T>,
    eigenvalue: Complex<T>,
    iterations: usize,
    converged: bool,
    multiplicity: usize,
) -> ShootingResult<T> {
    let w = mismatch(problem, eigenvalue, cfg)
        .map(|w| w.norm())
        .unwrap_or(T::nan());
    ShootingResult {
        eigenvalue,
        mismatch_magnitude: w,
        iterations,
        converged,
        imag_flagged: eigenvalue.im.abs() > cfg.imag_tolerance * (T::one() + eigenvalue.re.abs()),
        multiplicity,
    }
}

/// Number of nodes on the circle for [`disk_moments`].
const DISK_NODES: usize = 32;

/// Power sums Σ (x_i − center)^p, p = 0, 1, 2, over the roots x_i of `f`
/// inside |x − center| < radius, by the argument principle. f′ on the circle
/// comes from the discrete Taylor coefficients of the samples.
fn disk_moments<T: Real, F>(f: F, center: Complex<T>, radius: T) -> Result<[Complex<T>; 3]>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let n = DISK_NODES;
    let nt = T::from_index(n);
    let unit: Vec<Complex<T>> = (0..n)
        .map(|j| Complex::from_polar(T::one(), T::PI() * T::lit(2.0) * T::from_index(j) / nt))
        .collect();
    let w = unit
        .iter()
        .map(|&e| f(center + e * radius))
        .collect::<Result<Vec<_>>>()?;
    if w.iter().any(|v| !(v.norm() > T::zero())) {
        return Err(Error::NonConvergence(
            "root on the integration circle".into(),
        ));
    }
    // b_k = a_k radius^k for the Taylor coefficients a_k about the center
    let b: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let sum = (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                acc + w[j] * unit[(n - (j * k) % n) % n]
            });
            sum / nt
        })
        .collect();
    let mut moments = [Complex::new(T::zero(), T::zero()); 3];
    for j in 0..n {
        // (x − center)·f′(x) at the node, which is the integrand's dx/dθ factor
        let dw = (1..n).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
            acc + b[k] * unit[(j * k) % n] * T::from_index(k)
        });
        let ratio = dw / w[j];
        let u = unit[j] * radius;
        moments[0] += ratio;
        moments[1] += ratio * u;
        moments[2] += ratio * u * u;
    }
    for m in moments.iter_mut() {
        *m /= nt;
    }
    Ok(moments)
}

enum Cluster<T> {
    Single(Complex<T>),
    Pair(Complex<T>, Complex<T>),
    Other,
}

fn disk_roots<T: Real, F>(f: F, center: Complex<T>, radius: T) -> Result<Cluster<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let [s0, s1, s2] = disk_moments(f, center, radius)?;
    let count = s0.re.round();
    if (s0 - Complex::new(count, T::zero())).norm() > T::lit(0.05) || count < T::zero() {
        return Err(Error::NonConvergence(format!(
            "non-integral root count {s0}"
        )));
    }
    Ok(match count.to_usize().unwrap_or(0) {
        1 => Cluster::Single(center + s1),
        2 => {
            let mean = s1 * T::lit(0.5);
            let half = (s2 * T::lit(0.5) - mean * mean).sqrt();
            Cluster::Pair(center + mean - half, center + mean + half)
        }
        _ => Cluster::Other,
    })
}

/// Refine a grid candidate. Secant iteration on the frozen mismatch finds
/// a first root; if W looks even about it, or the iteration stalls, the
/// roots nearby are resolved by contour moments, which give the mean of
/// a coalesced pair to full accuracy even though the two roots themselves
/// are ill-conditioned; such a pair is reported once, at its mean.
fn refine_candidate<T: Real>(
    problem: &ProblemSpec<T>,
    cfg: &ShootingConfig<T>,
    start: T,
) -> Vec<ShootingResult<T>> {
    let x0 = Complex::new(start, T::zero());
    let frozen = match FrozenMismatch::new(problem, x0, cfg) {
        Ok(f) => f,
        Err(_) => return Vec::new(),
    };
    let w = |x| frozen.eval(x);
    let h = cfg.grid.spacing();
    let window = cfg.grid.hi - cfg.grid.lo;
    let split = |x: Complex<T>| cfg.cluster_split() * (T::one() + x.norm());
    let polish = |x: Complex<T>, n: usize| {
        let out = secant(
            w,
            x,
            x + split(x) * T::lit(0.1),
            cfg.refine_tolerance,
            cfg.max_refinements,
            h,
        );
        finish(problem, cfg, out.root, n + out.iterations, out.converged, 1)
    };
    let resolve = |center: Complex<T>, radius: T, n: usize| -> Option<Vec<ShootingResult<T>>> {
        let n = n + DISK_NODES;
        match disk_roots(w, center, radius).ok()? {
            Cluster::Single(x) => Some(vec![polish(x, n)]),
            Cluster::Pair(a, b) if (a - b).norm() <= split(a + b) => Some(vec![finish(
                problem,
                cfg,
                (a + b) * T::lit(0.5),
                n,
                true,
                2,
            )]),
            Cluster::Pair(a, b) => Some(vec![polish(a, n), polish(b, n)]),
            Cluster::Other => None,
        }
    };

    let first = secant(
        w,
        x0,
        x0 + h * T::lit(0.25),
        cfg.refine_tolerance,
        cfg.max_refinements,
        window + h,
    );
    if !first.converged {
        let center = if (first.root - x0).norm() <= h {
            first.root
        } else {
            x0
        };
        return resolve(center, h * T::lit(0.5), first.iterations)
            .unwrap_or_else(|| vec![finish(problem, cfg, first.root, first.iterations, false, 1)]);
    }
    // W is odd about an isolated root; evenness at half a grid step means
    // a second root within about one step, possibly coalesced with the first.
    let root = first.root;
    let eta = h * T::lit(0.5);
    let iterations = first.iterations + 2;
    let isolated = match (w(root + eta), w(root - eta)) {
        (Ok(a), Ok(b)) => (a + b).norm() * T::lit(2.0) <= (a - b).norm(),
        _ => true,
    };
    if isolated {
        return vec![finish(problem, cfg, root, iterations, true, 1)];
    }
    resolve(root, h * T::lit(1.25), iterations)
        .unwrap_or_else(|| vec![finish(problem, cfg, root, iterations, true, 1)])
}

fn median<T: Real>(values: &[T]) -> Option<T> {
    let mut v: Vec<T> = values.iter().copied().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    Some(v[v.len() / 2])
}

/// Smallest |W| on the straight segment between two grid values of W.
fn segment_floor<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let d = b - a;
    let dd = d.norm_sqr();
    if !(dd > T::zero()) {
        return a.norm();
    }
    let t = (-(a.conj() * d).re / dd).max(T::zero()).min(T::one());
    (a + d * t).norm()
}

/// Indices of grid minima of |W| that pass the promotion threshold.
///
/// A minimum's depth is the least |W| on the linear interpolants of W over
/// the two adjacent cells, so a root halfway between grid points still
/// reads as deep. It is promoted when that depth is below
/// [`PROMOTION_FRACTION`] of the median grid |W|, or of the lower of the two
/// peaks flanking the minimum; the second test keeps roots in regions where
/// |W| is small overall. Non-finite entries mark failed evaluations.
pub fn candidate_indices<T: Real>(values: &[Complex<T>]) -> Vec<usize> {
    let magnitudes: Vec<T> = values.iter().map(|w| w.norm()).collect();
    let Some(med) = median(&magnitudes) else {
        return Vec::new();
    };
    let fraction = T::lit(PROMOTION_FRACTION);
    let n = magnitudes.len();
    let finite = |i: usize| magnitudes[i].is_finite();
    let peak = |i: usize, step: isize| -> Option<T> {
        let mut best: Option<T> = None;
        let mut j = i as isize + step;
        let mut prev = magnitudes[i];
        while j >= 0 && (j as usize) < n && finite(j as usize) {
            let w = magnitudes[j as usize];
            if w < prev {
                break;
            }
            best = Some(w);
            prev = w;
            j += step;
        }
        best
    };
    (0..n)
        .filter(|&i| {
            let w = magnitudes[i];
            if !w.is_finite() {
                return false;
            }
            let left_ok = i == 0 || !finite(i - 1) || w < magnitudes[i - 1];
            let right_ok = i + 1 == n || !finite(i + 1) || w <= magnitudes[i + 1];
            if !(left_ok && right_ok) {
                return false;
            }
            let mut depth = w;
            if i > 0 && finite(i - 1) {
                depth = depth.min(segment_floor(values[i - 1], values[i]));
            }
            if i + 1 < n && finite(i + 1) {
                depth = depth.min(segment_floor(values[i], values[i + 1]));
            }
            if depth < med * fraction {
                return true;
            }
            let flank = match (peak(i, -1), peak(i, 1)) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => return false,
            };
            depth < flank * fraction
        })
        .collect()
}

/// Scan the grid, refine the promoted minima and return the distinct
/// eigenvalues inside the window, ascending by real part.
///
/// Fails only when no grid point can be integrated at all.
pub fn find_eigenvalues<T: Real>(
    problem: &ProblemSpec<T>,
    cfg: &ShootingConfig<T>,
) -> Result<Vec<ShootingResult<T>>> {
    let points = cfg.grid.points();
    let scan = ShootingConfig {
        step_tolerance: cfg.scan_tolerance.max(cfg.step_tolerance),
        ..*cfg
    };
    let evaluated: Vec<Result<Complex<T>>> = points
        .par_iter()
        .map(|&e| mismatch(problem, Complex::new(e, T::zero()), &scan))
        .collect();
    if let Some(Err(err)) = evaluated.iter().find(|r| r.is_err()) {
        if evaluated.iter().all(|r| r.is_err()) {
            return Err(err.clone());
        }
    }
    let values: Vec<Complex<T>> = evaluated
        .into_iter()
        .map(|r| r.unwrap_or(Complex::new(T::nan(), T::nan())))
        .collect();
    let candidates = candidate_indices(&values);
    let refined: Vec<ShootingResult<T>> = candidates
        .par_iter()
        .map(|&i| refine_candidate(problem, cfg, points[i]))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let lo = cfg.grid.lo - T::lit(1e-6) * (T::one() + cfg.grid.lo.abs());
    let hi = cfg.grid.hi + T::lit(1e-6) * (T::one() + cfg.grid.hi.abs());
    let mut inside: Vec<ShootingResult<T>> = refined
        .into_iter()
        .filter(|r| r.eigenvalue.re >= lo && r.eigenvalue.re <= hi)
        .collect();
    inside.sort_by(|a, b| {
        a.eigenvalue
            .re
            .partial_cmp(&b.eigenvalue.re)
            .unwrap_or(Ordering::Equal)
    });
    let mut out: Vec<ShootingResult<T>> = Vec::with_capacity(inside.len());
    for r in inside {
        match out.last_mut() {
            Some(prev)
                if (prev.eigenvalue - r.eigenvalue).norm()
                    <= T::lit(DEDUP_TOL) * (T::one() + r.eigenvalue.norm()) =>
            {
                let better = (r.converged && !prev.converged)
                    || (r.converged == prev.converged && r.multiplicity > prev.multiplicity);
                if better {
                    *prev = r;
                }
            }
            _ => out.push(r),
        }
    }
    Ok(out)
}

/// A closed-form eigenvalue to be compared with the solver's output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticValue {
    pub value: f64,
    pub label: String,
    /// Whether a pass requires this value to be found.
    pub required: bool,
}

impl AnalyticValue {
    pub fn required(value: f64, label: impl Into<String>) -> Self {
        Self {
            value,
            label: label.into(),
            required: true,
        }
    }
}

/// Closed-form eigenvalues inside `[lo, hi]`: both quasi-parities for the
/// oscillator (all required); plus levels (required) and minus levels
/// (informational) for the Morse problem.
pub fn analytic_values<T: Real>(equation: &Equation<T>, lo: f64, hi: f64) -> Vec<AnalyticValue> {
    let slack = 1e-9 * (1.0 + lo.abs().max(hi.abs()));
    let inside = |v: f64| v >= lo - slack && v <= hi + slack;
    let mut out = Vec::new();
    match *equation {
        Equation::HoLine { omega, alpha } => {
            let (omega, alpha) = (omega.to_f64().unwrap(), alpha.to_f64().unwrap());
            let n_max = (hi / (4.0 * omega)).max(0.0) as usize + 2;
            for n in 0..=n_max {
                for q in [QuasiParity::Even, QuasiParity::Odd] {
                    let e = omega * (4.0 * n as f64 + 2.0 - 2.0 * q.value::<f64>() * alpha);
                    if inside(e) {
                        out.push(AnalyticValue::required(e, format!("n={n},q={q}")));
                    }
                }
            }
        }
        Equation::MorseContour { omega, coupling } => {
            let (omega, coupling) = (omega.to_f64().unwrap(), coupling.to_f64().unwrap());
            let t = coupling / (2.0 * omega);
            let m_max = ((hi.max(0.0).sqrt() + t.abs()) / 2.0) as usize + 2;
            for m in 0..=m_max {
                for sign in [Sign::Plus, Sign::Minus] {
                    let e = morse_energy(m, sign, coupling, omega).expect("omega validated");
                    if inside(e) {
                        let sym = if sign == Sign::Plus { '+' } else { '-' };
                        out.push(AnalyticValue {
                            value: e,
                            label: format!("{sym}{m}"),
                            required: sign == Sign::Plus,
                        });
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap_or(Ordering::Equal));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Matched,
    Spurious,
    Missing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoundEntry {
    pub re: f64,
    pub im: f64,
    pub mismatch: f64,
    pub status: Status,
    pub converged: bool,
    pub imag_flagged: bool,
    pub multiplicity: usize,
    pub iterations: usize,
    /// Closest analytic value, if any.
    pub nearest: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticEntry {
    pub value: f64,
    pub label: String,
    pub required: bool,
    pub status: Status,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub matched: usize,
    pub spurious: usize,
    pub missing: usize,
    pub required_missing: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub found: Vec<FoundEntry>,
    pub analytic: Vec<AnalyticEntry>,
    pub summary: Summary,
}

fn within(found: Complex<f64>, value: f64, tol: f64) -> bool {
    (found - Complex::new(value, 0.0)).norm() <= tol * (1.0 + value.abs())
}

/// Pair solver output with closed-form values at relative tolerance `tol`.
pub fn verify_spectrum<T: Real>(
    analytic: &[AnalyticValue],
    found: &[ShootingResult<T>],
    tol: f64,
) -> Comparison {
    let as_c64 = |r: &ShootingResult<T>| {
        Complex::new(
            r.eigenvalue.re.to_f64().unwrap_or(f64::NAN),
            r.eigenvalue.im.to_f64().unwrap_or(f64::NAN),
        )
    };
    let found_entries: Vec<FoundEntry> = found
        .iter()
        .map(|r| {
            let z = as_c64(r);
            let nearest = analytic.iter().map(|a| a.value).min_by(|a, b| {
                let da = (z - Complex::new(*a, 0.0)).norm();
                let db = (z - Complex::new(*b, 0.0)).norm();
                da.partial_cmp(&db).unwrap_or(Ordering::Equal)
            });
            let status = match nearest {
                Some(v) if within(z, v, tol) => Status::Matched,
                _ => Status::Spurious,
            };
            FoundEntry {
                re: z.re,
                im: z.im,
                mismatch: r.mismatch_magnitude.to_f64().unwrap_or(f64::NAN),
                status,
                converged: r.converged,
                imag_flagged: r.imag_flagged,
                multiplicity: r.multiplicity,
                iterations: r.iterations,
                nearest,
            }
        })
        .collect();
    let analytic_entries: Vec<AnalyticEntry> = analytic
        .iter()
        .map(|a| {
            let hit = found.iter().any(|r| within(as_c64(r), a.value, tol));
            AnalyticEntry {
                value: a.value,
                label: a.label.clone(),
                required: a.required,
                status: if hit {
                    Status::Matched
                } else {
                    Status::Missing
                },
            }
        })
        .collect();
    let spurious = found_entries
        .iter()
        .filter(|f| f.status == Status::Spurious)
        .count();
    let matched = found_entries.len() - spurious;
    let missing = analytic_entries
        .iter()
        .filter(|a| a.status == Status::Missing)
        .count();
    let required_missing = analytic_entries
        .iter()
        .filter(|a| a.required && a.status == Status::Missing)
        .count();
    Comparison {
        found: found_entries,
        analytic: analytic_entries,
        summary: Summary {
            matched,
            spurious,
            missing,
            required_missing,
            pass: spurious == 0 && required_missing == 0,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourSummary {
    pub kind: &'static str,
    pub depth: f64,
    pub k: Option<u32>,
    pub l: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemSummary {
    pub equation: &'static str,
    pub omega: f64,
    pub alpha: Option<f64>,
    pub coupling: Option<f64>,
    pub contour: ContourSummary,
    pub decay_exponent_cap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigSummary {
    pub match_parameter: f64,
    pub step_tolerance: f64,
    pub scan_tolerance: f64,
    pub grid: Grid<f64>,
    pub refine_tolerance: f64,
    pub max_refinements: usize,
    pub imag_tolerance: f64,
    pub match_tolerance: f64,
}

/// Serializable verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub problem: ProblemSummary,
    pub config: ConfigSummary,
    #[serde(flatten)]
    pub comparison: Comparison,
}

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl<T: Real> ProblemSpec<T> {
    pub fn summary(&self) -> ProblemSummary {
        let (equation, alpha, coupling) = match self.equation {
            Equation::HoLine { alpha, .. } => ("ho_line", Some(f64_of(alpha)), None),
            Equation::MorseContour { coupling, .. } => {
                ("morse_contour", None, Some(f64_of(coupling)))
            }
        };
        let (k, l) = match self.contour.kind() {
            ContourKind::GeneralizedC { k, l } => (Some(k), Some(l)),
            _ => (None, None),
        };
        ProblemSummary {
            equation,
            omega: f64_of(self.equation.omega()),
            alpha,
            coupling,
            contour: ContourSummary {
                kind: self.contour.kind().name(),
                depth: f64_of(self.contour.depth()),
                k,
                l,
            },
            decay_exponent_cap: f64_of(self.decay_exponent_cap),
        }
    }
}

impl<T: Real> ShootingConfig<T> {
    pub fn summary(&self, match_tolerance: f64) -> ConfigSummary {
        ConfigSummary {
            match_parameter: f64_of(self.match_parameter),
            step_tolerance: f64_of(self.step_tolerance),
            scan_tolerance: f64_of(self.scan_tolerance),
            grid: Grid {
                lo: f64_of(self.grid.lo),
                hi: f64_of(self.grid.hi),
                count: self.grid.count,
            },
            refine_tolerance: f64_of(self.refine_tolerance),
            max_refinements: self.max_refinements,
            imag_tolerance: f64_of(self.imag_tolerance),
            match_tolerance,
        }
    }
}

/// Solve, compare with the closed form inside the grid window, and report.
pub fn run_verification<T: Real>(
    problem: &ProblemSpec<T>,
    cfg: &ShootingConfig<T>,
    tol: f64,
) -> Result<(Vec<ShootingResult<T>>, Report)> {
    let found = find_eigenvalues(problem, cfg)?;
    let analytic = analytic_values(&problem.equation, f64_of(cfg.grid.lo), f64_of(cfg.grid.hi));
    let comparison = verify_spectrum(&analytic, &found, tol);
    let report = Report {
        problem: problem.summary(),
        config: cfg.summary(tol),
        comparison,
    };
    Ok((found, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::build_c;

    type C = Complex<f64>;

    fn result(re: f64) -> ShootingResult<f64> {
        ShootingResult {
            eigenvalue: C::new(re, 0.0),
            mismatch_magnitude: 0.0,
            iterations: 1,
            converged: true,
            imag_flagged: false,
            multiplicity: 1,
        }
    }

    #[test]
    fn problem_rejects_mismatched_contour() {
        let eq = Equation::ho_line(1.0, 0.5).unwrap();
        assert!(ProblemSpec::new(eq, build_c(1.0).unwrap()).is_err());
        let eq = Equation::morse_contour(1.0, 2.0).unwrap();
        let line = build_shifted_line(1.0, 5.0).unwrap();
        assert!(ProblemSpec::new(eq, line).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(ShootingConfig::with_grid(1.0, 1.0, 10).is_err());
        assert!(ShootingConfig::with_grid(0.0, 1.0, 1).is_err());
        let cfg = ShootingConfig::new(0.0f64, 14.0).unwrap();
        assert_eq!(cfg.grid.count, 141);
        assert!((cfg.grid.spacing() - 0.1).abs() < 1e-15);
    }

    #[test]
    fn truncation_point_has_requested_decay() {
        let p = ProblemSpec::ho_line(1.0f64, 0.5, 1.0).unwrap();
        let s = p.truncation_distance();
        assert!((0.5 * (s * s - 1.0) - 70.0).abs() < 1e-10);
    }

    #[test]
    fn candidates_require_a_deep_minimum() {
        let re = |v: &[f64]| v.iter().map(|&x| Complex::new(x, 0.0)).collect::<Vec<_>>();
        let w = re(&[1.0, 0.9, 0.01, 0.8, 1.0, 0.95, 1.0]);
        assert_eq!(candidate_indices(&w), vec![2]);
        let w = re(&[0.001, 1.0, 1.0, 1.0, 0.002]);
        assert_eq!(candidate_indices(&w), vec![0, 4]);
        let w = re(&[f64::NAN, 1.0, 0.001, 1.0]);
        assert_eq!(candidate_indices(&w), vec![2]);
        // shallow in |W| but W changes sign across the minimum
        let w = re(&[1.0, 0.8, 0.4, -0.45, -0.9, -1.2, -1.0]);
        assert_eq!(candidate_indices(&w), vec![2]);
        // small overall, deep locally
        let w = re(&[5.0, 6.0, 7.0, 8.0, 9.0, 0.02, 0.01, 0.0005, 0.012, 0.02]);
        assert_eq!(candidate_indices(&w), vec![7]);
    }

    #[test]
    fn secant_converges_on_simple_root() {
        let out = secant(
            |x: C| Ok(x * x - 2.0),
            C::new(1.0, 0.0),
            C::new(1.5, 0.0),
            1e-14,
            60,
            10.0,
        );
        assert!(out.converged);
        assert!((out.root.re - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn verify_examples() {
        let analytic: Vec<AnalyticValue> = [1.0, 3.0, 5.0]
            .iter()
            .map(|&v| AnalyticValue::required(v, "x"))
            .collect();
        let found = [result(1.0000001), result(3.0000002), result(4.9999999)];
        let c = verify_spectrum(&analytic, &found, 1e-5);
        assert!(c.summary.pass);
        assert_eq!(c.summary.matched, 3);

        let found = [result(1.0), result(2.0)];
        let c = verify_spectrum(&analytic[..2], &found, 1e-5);
        assert!(!c.summary.pass);
        assert_eq!(c.summary.spurious, 1);
        assert_eq!(c.found[1].status, Status::Spurious);
        assert_eq!(c.analytic[1].status, Status::Missing);
    }

    #[test]
    fn informational_values_do_not_fail_a_pass() {
        let analytic = vec![
            AnalyticValue::required(1.0, "+0"),
            AnalyticValue {
                value: 9.0,
                label: "-0".into(),
                required: false,
            },
        ];
        let c = verify_spectrum(&analytic, &[result(1.0)], 1e-6);
        assert!(c.summary.pass);
        assert_eq!(c.summary.missing, 1);
        assert_eq!(c.summary.required_missing, 0);
    }

    #[test]
    fn analytic_values_for_both_problems() {
        let eq = Equation::ho_line(1.0, 0.7).unwrap();
        let v: Vec<f64> = analytic_values(&eq, 0.0, 10.0)
            .iter()
            .map(|a| a.value)
            .collect();
        let expect = [0.6, 3.4, 4.6, 7.4, 8.6];
        assert_eq!(v.len(), expect.len());
        for (a, b) in v.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        let eq = Equation::morse_contour(1.0, 5.0).unwrap();
        let a = analytic_values(&eq, 0.0, 21.0);
        let plus: Vec<f64> = a.iter().filter(|a| a.required).map(|a| a.value).collect();
        assert_eq!(plus, [0.25, 2.25, 6.25, 20.25]);
        let minus: Vec<f64> = a.iter().filter(|a| !a.required).map(|a| a.value).collect();
        assert_eq!(minus, [12.25]);
    }
}
