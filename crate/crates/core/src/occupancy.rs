//! Occupation numbers from implicit digamma equations.
//!
//! For a level with value `x`, multiplicity `G` and price `β` the occupation
//! `P` solves
//!
//! * Bose: `β x = Ψ(G + P) − Ψ(P + 1)`
//! * Fermi: `β x = Ψ(G − P + 1) − Ψ(P + 1)`
//! * Gibbs (no multiplicity, normalized to `Σ P_i = M`):
//!   `s β x_i + ν = Ψ(P_i + 1) + C`
//!
//! For `P, G ≫ 1` these reduce to `G/(e^{βx} ∓ 1)` and to the Gibbs law.

use crate::entropy::{boltzmann_multiplicity, bose_multiplicity};
use crate::roots::newton_bisect;
use crate::specfun::{digamma_unchecked, gap_unchecked, inv_digamma, trigamma, EULER_GAMMA};
use crate::{Error, Result};

/// Particle statistics of a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelKind {
    Bose,
    Fermi,
}

/// Which extremum the Gibbs occupancy describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Income maximization: higher levels attract more occupation.
    #[default]
    Market,
    /// Free-energy minimization: lower levels attract more occupation.
    Thermo,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Market => 1.0,
            Orientation::Thermo => -1.0,
        }
    }
}

/// Price `β` together with the temperature `Θ = 1/β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState {
    pub beta: f64,
    pub theta: f64,
    pub orientation: Orientation,
}

impl ThermoState {
    pub fn from_beta(beta: f64, orientation: Orientation) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::domain(format!("beta must be positive, got {beta}")));
        }
        Ok(ThermoState {
            beta,
            theta: 1.0 / beta,
            orientation,
        })
    }

    pub fn from_theta(theta: f64, orientation: Orientation) -> Result<Self> {
        if !(theta.is_finite() && theta > 0.0) {
            return Err(Error::domain(format!("theta must be positive, got {theta}")));
        }
        Ok(ThermoState {
            beta: 1.0 / theta,
            theta,
            orientation,
        })
    }
}

/// Level values `x_i` (strictly increasing) with multiplicities `G_i ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSpec {
    x: Vec<f64>,
    g: Vec<f64>,
}

impl LevelSpec {
    pub fn new(x: Vec<f64>, g: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::domain("at least one level is required"));
        }
        if x.len() != g.len() {
            return Err(Error::domain(format!(
                "{} level values but {} multiplicities",
                x.len(),
                g.len()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("level values must be finite"));
        }
        if x.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("level values must be strictly increasing"));
        }
        if let Some(bad) = g.iter().find(|v| !(v.is_finite() && **v >= 1.0)) {
            return Err(Error::domain(format!("multiplicities must be >= 1, got {bad}")));
        }
        Ok(LevelSpec { x, g })
    }

    /// Levels of multiplicity one.
    pub fn simple(x: Vec<f64>) -> Result<Self> {
        let g = vec![1.0; x.len()];
        LevelSpec::new(x, g)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.g.iter().copied())
    }
}

/// Occupation numbers `P_i` and their total.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyVector {
    p: Vec<f64>,
    total: f64,
}

impl OccupancyVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if let Some(bad) = p.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::domain(format!("occupations must be nonnegative, got {bad}")));
        }
        let total = p.iter().sum();
        Ok(OccupancyVector { p, total })
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    fn check_len(&self, levels: &LevelSpec) -> Result<()> {
        if self.p.len() == levels.len() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{} occupations for {} levels",
                self.p.len(),
                levels.len()
            )))
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("beta must be positive, got {beta}")))
    }
}

/// Occupation of a single level from its implicit equation.
///
/// Bose levels return `0` once `βx ≥ Ψ(G) − Ψ(1)`; Fermi levels are clamped to
/// `[0, G]` by the same reasoning at both ends.
pub fn level_occupancy(kind: LevelKind, x: f64, g: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if !x.is_finite() {
        return Err(Error::domain(format!("level value must be finite, got {x}")));
    }
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::domain(format!("multiplicity must be positive, got {g}")));
    }
    let bx = beta * x;
    match kind {
        LevelKind::Bose => bose_level(bx, g),
        LevelKind::Fermi => fermi_level(bx, g),
    }
}

fn bose_level(bx: f64, g: f64) -> Result<f64> {
    if g <= 1.0 {
        return Err(Error::DegenerateLevel(g));
    }
    if bx <= 0.0 {
        return Err(Error::UnboundedOccupation(bx));
    }
    if bx >= gap_unchecked(g, 0.0) {
        return Ok(0.0);
    }
    let guess = g / bx.exp_m1();
    let mut hi = 10.0 * guess + 10.0;
    while gap_unchecked(g, hi) > bx {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Numerical(format!(
                "no upper bracket for Bose level G = {g}, beta*x = {bx}"
            )));
        }
    }
    newton_bisect(
        |p| (gap_unchecked(g, p) - bx, trigamma(g + p) - trigamma(p + 1.0)),
        0.0,
        hi,
        guess,
    )
}

fn fermi_level(bx: f64, g: f64) -> Result<f64> {
    let edge = digamma_unchecked(g + 1.0) - digamma_unchecked(1.0);
    if bx >= edge {
        return Ok(0.0);
    }
    if bx <= -edge {
        return Ok(g);
    }
    let residual = |p: f64| digamma_unchecked(g - p + 1.0) - digamma_unchecked(p + 1.0) - bx;
    let guess = g / (bx.exp() + 1.0);
    newton_bisect(
        |p| (residual(p), -trigamma(g - p + 1.0) - trigamma(p + 1.0)),
        0.0,
        g,
        guess,
    )
}

/// The large-occupation forms `G/(e^{βx} − 1)` (Bose) and `G/(e^{βx} + 1)`
/// (Fermi).
pub fn occupancy_asymptotic(kind: LevelKind, x: f64, g: f64, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let bx = beta * x;
    match kind {
        LevelKind::Bose => {
            if bx == 0.0 {
                return Err(Error::domain("Bose asymptotic occupancy divides by zero at beta*x = 0"));
            }
            if bx < 0.0 {
                return Err(Error::UnboundedOccupation(bx));
            }
            Ok(g / bx.exp_m1())
        }
        LevelKind::Fermi => Ok(g / (bx.exp() + 1.0)),
    }
}

/// Occupations of every level at price `beta`.
pub fn level_occupancies(kind: LevelKind, levels: &LevelSpec, beta: f64) -> Result<OccupancyVector> {
    let p = levels
        .iter()
        .map(|(x, g)| level_occupancy(kind, x, g, beta))
        .collect::<Result<Vec<_>>>()?;
    OccupancyVector::new(p)
}

/// Gibbs occupations with `Σ P_i = M`.
///
/// Each level solves `s β x_i + ν = Ψ(P_i + 1) + C`, where `s` is the
/// orientation sign and `ν` is a common multiplier chosen for the
/// normalization. Levels whose left-hand side falls below zero are empty.
/// Multiplicities are ignored.
pub fn gibbs_occupancy(levels: &LevelSpec, beta: f64, m: f64, orientation: Orientation) -> Result<OccupancyVector> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(Error::domain(format!("beta must be nonnegative, got {beta}")));
    }
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::domain(format!("total occupation M must be positive, got {m}")));
    }
    let s = orientation.sign();
    let drive: Vec<f64> = levels.x().iter().map(|&x| s * beta * x).collect();
    let max_drive = drive.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_drive = drive.iter().copied().fold(f64::INFINITY, f64::min);

    let occupation = |nu: f64, d: f64| -> Result<f64> {
        let y = d + nu;
        if y <= 0.0 {
            return Ok(0.0);
        }
        Ok((inv_digamma(y - EULER_GAMMA)? - 1.0).max(0.0))
    };
    let evaluate = |nu: f64| -> Result<(f64, f64)> {
        let mut sum = 0.0;
        let mut slope = 0.0;
        for &d in &drive {
            let p = occupation(nu, d)?;
            sum += p;
            if p > 0.0 {
                slope += 1.0 / trigamma(p + 1.0);
            }
        }
        Ok((sum - m, slope))
    };

    let lo = -max_drive;
    let mut hi = (m + 1.0).ln() + EULER_GAMMA - min_drive;
    while evaluate(hi)?.0 < 0.0 {
        hi += 1.0;
    }
    // the closure cannot propagate errors, so failures surface as NaN
    let nu = newton_bisect(
        |nu| evaluate(nu).unwrap_or((f64::NAN, f64::NAN)),
        lo,
        hi,
        0.5 * (lo + hi),
    )?;
    let p = drive.iter().map(|&d| occupation(nu, d)).collect::<Result<Vec<_>>>()?;
    OccupancyVector::new(p)
}

/// Bose or Fermi entropy `Σ ln W_i` of an occupation vector, with
/// `W = Γ(G+P)/(Γ(G)Γ(P+1))` or `W = Γ(G+1)/(Γ(G−P+1)Γ(P+1))`.
pub fn statistics_entropy(kind: LevelKind, levels: &LevelSpec, occ: &OccupancyVector) -> Result<f64> {
    occ.check_len(levels)?;
    levels
        .iter()
        .zip(occ.p())
        .enumerate()
        .map(|(i, ((_, g), &p))| match kind {
            LevelKind::Bose => bose_multiplicity(p, g),
            LevelKind::Fermi => {
                if p > g {
                    return Err(Error::OverOccupation(format!("level {i}: P = {p} exceeds G = {g}")));
                }
                boltzmann_multiplicity(p, g, 1.0)
            }
        })
        .sum()
}

/// Free energy `F = Σ x_i P_i − Θ S`.
pub fn free_energy(levels: &LevelSpec, occ: &OccupancyVector, theta: f64, kind: LevelKind) -> Result<f64> {
    if !(theta.is_finite() && theta > 0.0) {
        return Err(Error::domain(format!("theta must be positive, got {theta}")));
    }
    let s = statistics_entropy(kind, levels, occ)?;
    let linear: f64 = levels.x().iter().zip(occ.p()).map(|(x, p)| x * p).sum();
    Ok(linear - theta * s)
}

/// Everything on the top level: the allocation maximizing `Σ P_i x_i` subject
/// to `Σ P_i = N`, and that maximum `N x_n`.
pub fn naive_max(levels: &LevelSpec, n: u64) -> Result<(OccupancyVector, f64)> {
    if n == 0 {
        return Err(Error::domain("naive_max requires N >= 1"));
    }
    let top = levels.len() - 1;
    let mut p = vec![0.0; levels.len()];
    p[top] = n as f64;
    Ok((OccupancyVector::new(p)?, n as f64 * levels.x()[top]))
}
