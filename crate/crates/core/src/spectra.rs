//! Closed-form spectra of the singular PT harmonic oscillator and of its
//! Morse partner, the three-family split of the Morse levels, exact
//! degeneracies and level-ordering tables.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{near_integer, Real};

/// Tolerance used for integer detection of D/2ω and for the σ boundary.
pub const RATIO_TOL: f64 = 1e-12;

/// Quasi-parity of a harmonic-oscillator state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum QuasiParity {
    /// q = +1, wavefunction factor r^{-α+1/2}.
    Even,
    /// q = −1, wavefunction factor r^{α+1/2}.
    Odd,
}

impl QuasiParity {
    pub fn value<T: Real>(self) -> T {
        match self {
            QuasiParity::Even => T::one(),
            QuasiParity::Odd => -T::one(),
        }
    }

    pub fn from_sign(q: i32) -> Option<Self> {
        match q {
            1 => Some(QuasiParity::Even),
            -1 => Some(QuasiParity::Odd),
            _ => None,
        }
    }
}

impl fmt::Display for QuasiParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuasiParity::Even => "+1",
            QuasiParity::Odd => "-1",
        })
    }
}

/// Sign label [±] of a Morse level. Plus sorts before minus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// Spectral sub-family of a Morse level for D > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Plus levels with m < M; finitely many, ε falls as m grows.
    FinitePlus,
    /// Plus levels with m ≥ M.
    InfinitePlus,
    Minus,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::FinitePlus => "finite_plus",
            Family::InfinitePlus => "infinite_plus",
            Family::Minus => "minus",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A (m, sign) label of a Morse level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LevelLabel {
    pub sign: Sign,
    pub m: usize,
}

impl LevelLabel {
    pub fn new(m: usize, sign: Sign) -> Self {
        Self { sign, m }
    }
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{}{}", s, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoLevel<T> {
    pub n: usize,
    pub q: QuasiParity,
    pub alpha: T,
    pub omega: T,
    pub energy: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLevel<T> {
    pub m: usize,
    pub sign: Sign,
    pub epsilon: T,
    pub family: Option<Family>,
    pub family_index: Option<usize>,
}

impl<T> SpectralLevel<T> {
    pub fn label(&self) -> LevelLabel {
        LevelLabel::new(self.m, self.sign)
    }
}

/// Split D/4ω = M + σ − 1/2 of the coupling ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyDecomposition<T> {
    pub big_m: usize,
    pub sigma: T,
    /// t = D/2ω.
    pub ratio: T,
    /// σ = 0: D/4ω + 1/2 is an integer and the family labels are withheld.
    pub degenerate: bool,
}

fn check_omega<T: Real>(omega: T) -> Result<()> {
    if omega > T::zero() && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "omega must be positive, got {omega}"
        )))
    }
}

/// E = ω(4n + 2 − 2qα).
pub fn ho_energy<T: Real>(n: usize, q: QuasiParity, alpha: T, omega: T) -> Result<T> {
    check_omega(omega)?;
    if !(alpha > T::zero()) {
        return Err(Error::Domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let two = T::lit(2.0);
    Ok(omega * (T::lit(4.0) * T::from_index(n) + two - two * q.value::<T>() * alpha))
}

pub fn ho_level<T: Real>(n: usize, q: QuasiParity, alpha: T, omega: T) -> Result<HoLevel<T>> {
    Ok(HoLevel {
        n,
        q,
        alpha,
        omega,
        energy: ho_energy(n, q, alpha, omega)?,
    })
}

/// The `count` lowest oscillator levels of both quasi-parities, ascending.
pub fn ho_spectrum<T: Real>(alpha: T, omega: T, count: usize) -> Result<Vec<HoLevel<T>>> {
    let mut levels = Vec::with_capacity(2 * count);
    for n in 0..count {
        levels.push(ho_level(n, QuasiParity::Even, alpha, omega)?);
        levels.push(ho_level(n, QuasiParity::Odd, alpha, omega)?);
    }
    levels.sort_by(|a, b| {
        a.energy
            .partial_cmp(&b.energy)
            .unwrap_or(Ordering::Equal)
            .then(a.q.cmp(&b.q))
            .then(a.n.cmp(&b.n))
    });
    levels.truncate(count);
    Ok(levels)
}

/// ε = (2m + 1 ∓ D/2ω)².
pub fn morse_energy<T: Real>(m: usize, sign: Sign, coupling: T, omega: T) -> Result<T> {
    check_omega(omega)?;
    let t = coupling / (T::lit(2.0) * omega);
    let base = T::lit(2.0) * T::from_index(m) + T::one();
    let root = match sign {
        Sign::Plus => base - t,
        Sign::Minus => base + t,
    };
    Ok(root * root)
}

pub fn decompose_coupling<T: Real>(coupling: T, omega: T) -> Result<FamilyDecomposition<T>> {
    check_omega(omega)?;
    if !(coupling > T::zero()) {
        return Err(Error::Domain(format!(
            "family split needs D > 0, got {coupling}"
        )));
    }
    let half = T::lit(0.5);
    let shifted = coupling / (T::lit(4.0) * omega) + half;
    let tol = T::lit(RATIO_TOL);
    let ratio = coupling / (T::lit(2.0) * omega);
    if let Some(k) = near_integer(shifted, tol) {
        return Ok(FamilyDecomposition {
            big_m: k as usize,
            sigma: T::zero(),
            ratio,
            degenerate: true,
        });
    }
    let big_m = shifted.floor();
    Ok(FamilyDecomposition {
        big_m: big_m.to_usize().unwrap_or(0),
        sigma: shifted - big_m,
        ratio,
        degenerate: false,
    })
}

/// Morse index m and sign of the k-th member of a family.
pub fn family_member(family: Family, k: usize, big_m: usize) -> Result<(usize, Sign)> {
    match family {
        Family::FinitePlus => {
            if k >= big_m {
                Err(Error::Index(format!(
                    "finite_plus has {big_m} members, k = {k} requested"
                )))
            } else {
                Ok((big_m - k - 1, Sign::Plus))
            }
        }
        Family::InfinitePlus => Ok((big_m + k, Sign::Plus)),
        Family::Minus => Ok((k, Sign::Minus)),
    }
}

/// Family of the level (m, sign) and its index k within that family.
pub fn classify(m: usize, sign: Sign, big_m: usize) -> (Family, usize) {
    match sign {
        Sign::Minus => (Family::Minus, m),
        Sign::Plus if m < big_m => (Family::FinitePlus, big_m - 1 - m),
        Sign::Plus => (Family::InfinitePlus, m - big_m),
    }
}

/// Energy of the k-th level of a family from its own closed form, paired
/// with the Morse index that level carries.
pub fn family_energy<T: Real>(
    family: Family,
    k: usize,
    dec: &FamilyDecomposition<T>,
) -> Result<(T, usize)> {
    if dec.degenerate {
        return Err(Error::State(
            "family energies are undefined for a degenerate split (sigma = 0)".into(),
        ));
    }
    let (m, _) = family_member(family, k, dec.big_m)?;
    let kf = T::from_index(k);
    let four = T::lit(4.0);
    let root = match family {
        Family::FinitePlus => kf + dec.sigma,
        Family::InfinitePlus => kf + T::one() - dec.sigma,
        Family::Minus => kf + T::from_index(dec.big_m) + dec.sigma,
    };
    Ok((four * root * root, m))
}

fn same_level<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::lit(RATIO_TOL) * (T::one() + a.abs().max(b.abs()))
}

/// Sort ascending by ε; levels equal within tolerance are ordered plus
/// before minus, then by m.
fn sort_levels<T: Real>(levels: &mut [SpectralLevel<T>]) {
    levels.sort_by(|a, b| a.epsilon.partial_cmp(&b.epsilon).unwrap_or(Ordering::Equal));
    let mut start = 0;
    while start < levels.len() {
        let mut end = start + 1;
        while end < levels.len() && same_level(levels[start].epsilon, levels[end].epsilon) {
            end += 1;
        }
        levels[start..end].sort_by_key(|l| l.label());
        start = end;
    }
}

/// The `count` lowest Morse levels from both sign families.
pub fn spectrum<T: Real>(coupling: T, omega: T, count: usize) -> Result<Vec<SpectralLevel<T>>> {
    check_omega(omega)?;
    let dec = if coupling > T::zero() {
        decompose_coupling(coupling, omega)
            .ok()
            .filter(|d| !d.degenerate)
    } else {
        None
    };
    let t = coupling / (T::lit(2.0) * omega);
    // Every plus level with m > |t|/2 + count, and every minus level with
    // m > count, lies above `count` smaller levels of its own family.
    let m_max = t.abs().to_usize().unwrap_or(0) / 2 + count + 1;
    let mut levels = Vec::with_capacity(2 * m_max + 2);
    for m in 0..=m_max {
        for sign in [Sign::Plus, Sign::Minus] {
            let epsilon = morse_energy(m, sign, coupling, omega)?;
            let (family, family_index) = match &dec {
                Some(d) => {
                    let (f, k) = classify(m, sign, d.big_m);
                    (Some(f), Some(k))
                }
                None => (None, None),
            };
            levels.push(SpectralLevel {
                m,
                sign,
                epsilon,
                family,
                family_index,
            });
        }
    }
    sort_levels(&mut levels);
    levels.truncate(count);
    Ok(levels)
}

/// Square roots of the `count` lowest Morse levels.
pub fn sqrt_ladder<T: Real>(coupling: T, omega: T, count: usize) -> Result<Vec<T>> {
    Ok(spectrum(coupling, omega, count)?
        .into_iter()
        .map(|l| l.epsilon.sqrt())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degeneracy<T> {
    pub first: LevelLabel,
    pub second: LevelLabel,
    pub epsilon: T,
}

/// All pairs of distinct labels with m ≤ `max_m` sharing the same ε.
///
/// Coincidences occur only when D/2ω is an integer; otherwise the result
/// is empty without any pairwise comparison.
pub fn find_degeneracies<T: Real>(
    coupling: T,
    omega: T,
    max_m: usize,
) -> Result<Vec<Degeneracy<T>>> {
    check_omega(omega)?;
    let t = coupling / (T::lit(2.0) * omega);
    if near_integer(t, T::lit(RATIO_TOL)).is_none() {
        return Ok(Vec::new());
    }
    let mut levels = Vec::with_capacity(2 * (max_m + 1));
    for m in 0..=max_m {
        for sign in [Sign::Plus, Sign::Minus] {
            levels.push((
                LevelLabel::new(m, sign),
                morse_energy(m, sign, coupling, omega)?,
            ));
        }
    }
    let mut pairs = Vec::new();
    for (i, &(a, ea)) in levels.iter().enumerate() {
        for &(b, eb) in &levels[i + 1..] {
            if same_level(ea, eb) {
                let (first, second) = if a <= b { (a, b) } else { (b, a) };
                pairs.push(Degeneracy {
                    first,
                    second,
                    epsilon: ea.min(eb),
                });
            }
        }
    }
    pairs.sort_by(|x, y| {
        x.epsilon
            .partial_cmp(&y.epsilon)
            .unwrap_or(Ordering::Equal)
            .then(x.first.cmp(&y.first))
            .then(x.second.cmp(&y.second))
    });
    Ok(pairs)
}

/// HO data re-read as a Morse problem: coupling D = E and energy ε = α².
pub fn ho_to_morse<T: Real>(n: usize, q: QuasiParity, alpha: T, omega: T) -> Result<(T, T)> {
    let coupling = ho_energy(n, q, alpha, omega)?;
    Ok((coupling, alpha * alpha))
}

/// One column of a level-ordering table: labels of the lowest levels at a
/// given coupling, grouped where their energies coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingColumn<T> {
    /// D/4ω
    pub ratio: T,
    pub coupling: T,
    pub groups: Vec<LevelGroup<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelGroup<T> {
    pub epsilon: T,
    pub labels: Vec<LevelLabel>,
}

pub fn ordering_column<T: Real>(ratio: T, omega: T, count: usize) -> Result<OrderingColumn<T>> {
    let coupling = T::lit(4.0) * omega * ratio;
    let levels = spectrum(coupling, omega, count)?;
    let mut groups: Vec<LevelGroup<T>> = Vec::new();
    for level in levels {
        match groups.last_mut() {
            Some(g) if same_level(g.epsilon, level.epsilon) => g.labels.push(level.label()),
            _ => groups.push(LevelGroup {
                epsilon: level.epsilon,
                labels: vec![level.label()],
            }),
        }
    }
    Ok(OrderingColumn {
        ratio,
        coupling,
        groups,
    })
}

/// Ordering columns for D/4ω = from, from + step, … ≤ to.
pub fn ordering_table<T: Real>(
    from: T,
    to: T,
    step: T,
    omega: T,
    count: usize,
) -> Result<Vec<OrderingColumn<T>>> {
    if !(step > T::zero()) || to < from {
        return Err(Error::Domain(
            "table range needs step > 0 and to >= from".into(),
        ));
    }
    let slack = step * T::lit(1e-9);
    let mut columns = Vec::new();
    let mut i = 0usize;
    loop {
        let ratio = from + step * T::from_index(i);
        if ratio > to + slack {
            break;
        }
        columns.push(ordering_column(ratio, omega, count)?);
        i += 1;
    }
    Ok(columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps(levels: &[SpectralLevel<f64>]) -> Vec<f64> {
        levels.iter().map(|l| l.epsilon).collect()
    }

    #[test]
    fn ho_energy_examples() {
        assert_eq!(ho_energy(0, QuasiParity::Even, 0.5, 1.0).unwrap(), 1.0);
        assert_eq!(ho_energy(1, QuasiParity::Odd, 2.0, 1.0).unwrap(), 10.0);
        let tiny = 1e-15;
        for n in 0..5 {
            let e = ho_energy(n, QuasiParity::Even, tiny, 1.3).unwrap();
            let o = ho_energy(n, QuasiParity::Odd, tiny, 1.3).unwrap();
            let limit = 1.3 * (4 * n + 2) as f64;
            assert!((e - limit).abs() < 1e-12 && (o - limit).abs() < 1e-12);
        }
    }

    #[test]
    fn ho_energy_rejects_bad_parameters() {
        assert!(matches!(
            ho_energy(0, QuasiParity::Even, 0.5, 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ho_energy(0, QuasiParity::Even, 0.0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ho_spectrum_interleaves_quasi_parities() {
        let e: Vec<f64> = ho_spectrum(0.7, 1.0, 5)
            .unwrap()
            .iter()
            .map(|l| l.energy)
            .collect();
        let expect = [0.6, 3.4, 4.6, 7.4, 8.6];
        for (a, b) in e.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn morse_energy_examples() {
        for m in 0..6 {
            let odd = (2 * m + 1) as f64;
            assert_eq!(morse_energy(m, Sign::Plus, 0.0, 1.0).unwrap(), odd * odd);
            assert_eq!(morse_energy(m, Sign::Minus, 0.0, 1.0).unwrap(), odd * odd);
        }
        assert_eq!(morse_energy(0, Sign::Plus, 4.0, 1.0).unwrap(), 1.0);
        assert_eq!(morse_energy(0, Sign::Minus, 4.0, 1.0).unwrap(), 9.0);
        assert!(morse_energy(0, Sign::Minus, 4.0, -1.0).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_coupling(4.0, 1.0).unwrap();
        assert_eq!((d.big_m, d.sigma, d.degenerate), (1, 0.5, false));
        let d = decompose_coupling(5.0, 1.0).unwrap();
        assert_eq!((d.big_m, d.sigma, d.degenerate), (1, 0.75, false));
        let d = decompose_coupling(10.0, 1.0).unwrap();
        assert!(d.degenerate);
        assert_eq!(d.big_m, 3);
        assert!(matches!(
            decompose_coupling(0.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            decompose_coupling(-1.0, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn family_energy_examples() {
        let d4 = decompose_coupling(4.0, 1.0).unwrap();
        assert_eq!(family_energy(Family::FinitePlus, 0, &d4).unwrap(), (1.0, 0));
        assert_eq!(
            family_energy(Family::InfinitePlus, 1, &d4).unwrap(),
            (9.0, 2)
        );
        let d5 = decompose_coupling(5.0f64, 1.0).unwrap();
        let (e, m) = family_energy(Family::Minus, 0, &d5).unwrap();
        assert_eq!(m, 0);
        assert!((e - 12.25).abs() < 1e-12);
        assert!((e - 3.5f64.powi(2)).abs() < 1e-12);
    }

    #[test]
    fn family_energy_errors() {
        let d4 = decompose_coupling(4.0, 1.0).unwrap();
        assert!(matches!(
            family_energy(Family::FinitePlus, 1, &d4),
            Err(Error::Index(_))
        ));
        let d10 = decompose_coupling(10.0, 1.0).unwrap();
        assert!(matches!(
            family_energy(Family::Minus, 0, &d10),
            Err(Error::State(_))
        ));
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(5.0, 1.0, 6).unwrap();
        let expect = [0.25, 2.25, 6.25, 12.25, 20.25, 30.25];
        for (a, b) in eps(&s).iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        let labels: Vec<String> = s.iter().map(|l| l.label().to_string()).collect();
        assert_eq!(labels, ["+1", "+0", "+2", "-0", "+3", "-1"]);
        // +1 opens the infinite family; +0 is the single finite member at M = 1
        assert_eq!(s[0].family, Some(Family::InfinitePlus));
        assert_eq!(s[1].family, Some(Family::FinitePlus));
        assert_eq!(s[3].family, Some(Family::Minus));

        assert_eq!(eps(&spectrum(0.0, 1.0, 4).unwrap()), [1.0, 1.0, 9.0, 9.0]);
        assert!(spectrum(0.0, 1.0, 4)
            .unwrap()
            .iter()
            .all(|l| l.family.is_none()));

        let s4 = spectrum(4.0, 1.0, 6).unwrap();
        assert_eq!(eps(&s4), [1.0, 1.0, 9.0, 9.0, 25.0, 25.0]);
        let labels: Vec<String> = s4.iter().map(|l| l.label().to_string()).collect();
        assert_eq!(labels, ["+0", "+1", "+2", "-0", "+3", "-1"]);
    }

    #[test]
    fn spectrum_degenerate_split_has_no_tags() {
        let s = spectrum(10.0, 1.0, 8).unwrap();
        assert!(s
            .iter()
            .all(|l| l.family.is_none() && l.family_index.is_none()));
    }

    #[test]
    fn spectrum_handles_negative_coupling() {
        // D -> -D swaps the sign families.
        let a = eps(&spectrum(-5.0, 1.0, 6).unwrap());
        let b = eps(&spectrum(5.0, 1.0, 6).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn degeneracy_examples() {
        let d6 = find_degeneracies(6.0, 1.0, 5).unwrap();
        let has = |v: &[Degeneracy<f64>], a: LevelLabel, b: LevelLabel, e: f64| {
            v.iter()
                .any(|d| d.first == a && d.second == b && (d.epsilon - e).abs() < 1e-12)
        };
        use Sign::*;
        assert!(has(
            &d6,
            LevelLabel::new(0, Plus),
            LevelLabel::new(2, Plus),
            4.0
        ));
        assert!(has(
            &d6,
            LevelLabel::new(3, Plus),
            LevelLabel::new(0, Minus),
            16.0
        ));
        assert!(find_degeneracies(5.0, 1.0, 20).unwrap().is_empty());
        let d4 = find_degeneracies(4.0, 1.0, 3).unwrap();
        assert!(has(
            &d4,
            LevelLabel::new(0, Plus),
            LevelLabel::new(1, Plus),
            1.0
        ));
        assert!(has(
            &d4,
            LevelLabel::new(2, Plus),
            LevelLabel::new(0, Minus),
            9.0
        ));
    }

    #[test]
    fn ho_to_morse_examples() {
        let (d, e) = ho_to_morse(0, QuasiParity::Even, 0.5, 1.0).unwrap();
        assert_eq!((d, e), (1.0, 0.25));
        assert_eq!(morse_energy(0, Sign::Plus, d, 1.0).unwrap(), 0.25);
        let (d, e) = ho_to_morse(1, QuasiParity::Odd, 2.0, 1.0).unwrap();
        assert_eq!((d, e), (10.0, 4.0));
        assert_eq!(morse_energy(1, Sign::Plus, d, 1.0).unwrap(), 4.0);
        let (d, e) = ho_to_morse(0, QuasiParity::Even, 1e-9f64, 1.0).unwrap();
        assert!((d - 2.0).abs() < 1e-8 && e < 1e-17);
    }

    #[test]
    fn sqrt_ladder_examples() {
        assert_eq!(
            sqrt_ladder(4.0, 1.0, 6).unwrap(),
            [1.0, 1.0, 3.0, 3.0, 5.0, 5.0]
        );
        assert_eq!(sqrt_ladder(0.0, 1.0, 4).unwrap(), [1.0, 1.0, 3.0, 3.0]);
        assert_eq!(sqrt_ladder(5.0, 1.0, 4).unwrap(), [0.5, 1.5, 2.5, 3.5]);
    }

    #[test]
    fn ordering_column_groups_ties() {
        let col = ordering_column(1.0, 1.0, 6).unwrap();
        assert_eq!(col.coupling, 4.0);
        let sizes: Vec<usize> = col.groups.iter().map(|g| g.labels.len()).collect();
        assert_eq!(sizes, [2, 2, 2]);
        let table = ordering_table(0.5, 2.0, 0.5, 1.0, 4).unwrap();
        assert_eq!(table.len(), 4);
        assert!(ordering_table(1.0, 0.0, 0.5, 1.0, 4).is_err());
    }
}
