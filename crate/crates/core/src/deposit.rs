//! Two-bank deposit model.
//!
//! A depositor splits `N` units between one high-rate pyramid (rate `λ₁`) and
//! `G` identical strong banks (rate `λ₂ < λ₁`). With `k` units in the strong
//! banks the income is
//!
//! ```text
//! F(k, β) = βλ₁N − β(λ₁ − λ₂)k + ln 𝒢(k)
//! ```
//!
//! where `ln 𝒢` is the Bose multiplicity `ln C(G+k−1, k)` or the Boltzmann one
//! `ln C(N, k) + k ln G`. `F` is strictly concave in `k`, so the continuous
//! maximizer on `[0, N]` is unique. Two critical prices split the `β` axis:
//! at or below `β_c` everything goes to the strong banks, at or above `β₀`
//! everything stays in the pyramid.

use std::fmt;
use std::str::FromStr;

use crate::entropy::{boltzmann_multiplicity, bose_multiplicity};
use crate::roots::bisect;
use crate::specfun::{digamma_unchecked, gap_unchecked, inv_digamma, EULER_GAMMA};
use crate::{Error, Result};

/// How the information amount counts allocations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    /// Indistinguishable units.
    Bose,
    /// Labelled units.
    Boltzmann,
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistics::Bose => "bose",
            Statistics::Boltzmann => "boltzmann",
        })
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bose" => Ok(Statistics::Bose),
            "boltzmann" => Ok(Statistics::Boltzmann),
            other => Err(Error::domain(format!(
                "unknown statistics {other:?}, expected bose or boltzmann"
            ))),
        }
    }
}

/// Allocation regime at a given price.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// `β ≥ β₀`: the whole deposit sits in the single pyramid state.
    Condensed,
    /// Interior optimum.
    Mixed,
    /// `β ≤ β_c`: the strong banks absorb everything.
    Saturated,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Condensed => "condensed",
            Phase::Mixed => "mixed",
            Phase::Saturated => "saturated",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepositScenario {
    n: u64,
    g: u64,
    lambda1: f64,
    lambda2: f64,
    statistics: Statistics,
}

impl DepositScenario {
    pub fn new(n: u64, g: u64, lambda1: f64, lambda2: f64, statistics: Statistics) -> Result<Self> {
        if n == 0 || g == 0 {
            return Err(Error::domain(format!(
                "scenario requires N >= 1 and G >= 1, got N = {n}, G = {g}"
            )));
        }
        if !(lambda1.is_finite() && lambda2.is_finite() && lambda1 > lambda2) {
            return Err(Error::domain(format!(
                "scenario requires finite rates with lambda1 > lambda2, got {lambda1} and {lambda2}"
            )));
        }
        Ok(DepositScenario {
            n,
            g,
            lambda1,
            lambda2,
            statistics,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    /// The same market counted with other statistics.
    pub fn with_statistics(self, statistics: Statistics) -> Self {
        DepositScenario { statistics, ..self }
    }

    /// `λ₁ − λ₂ > 0`.
    pub fn delta_lambda(&self) -> f64 {
        self.lambda1 - self.lambda2
    }

    fn nf(&self) -> f64 {
        self.n as f64
    }

    fn gf(&self) -> f64 {
        self.g as f64
    }

    fn check_k(&self, k: f64) -> Result<()> {
        if k.is_finite() && (0.0..=self.nf()).contains(&k) {
            Ok(())
        } else {
            Err(Error::domain(format!("deposit k = {k} outside [0, {}]", self.n)))
        }
    }

    /// `E(k, β) = βλ₁N − β(λ₁ − λ₂)k`.
    pub fn linear_income(&self, k: f64, beta: f64) -> Result<f64> {
        self.check_k(k)?;
        Ok(beta * self.lambda1 * self.nf() - beta * self.delta_lambda() * k)
    }

    /// Log multiplicity of putting `k` units into the strong banks.
    pub fn information(&self, k: f64) -> Result<f64> {
        self.check_k(k)?;
        match self.statistics {
            Statistics::Bose => bose_multiplicity(k, self.gf()),
            Statistics::Boltzmann => boltzmann_multiplicity(k, self.nf(), self.gf()),
        }
    }

    /// `F(k, β) = E(k, β) + ln 𝒢(k)`.
    pub fn total_income(&self, k: f64, beta: f64) -> Result<f64> {
        Ok(self.linear_income(k, beta)? + self.information(k)?)
    }

    /// `∂F/∂k` without the price term: the marginal information of one more
    /// unit in the strong banks. Strictly decreasing in `k`.
    fn marginal_information(&self, k: f64) -> f64 {
        let n = self.nf();
        match self.statistics {
            Statistics::Bose => gap_unchecked(self.gf(), k),
            Statistics::Boltzmann => self.gf().ln() + digamma_unchecked(n - k + 1.0) - digamma_unchecked(k + 1.0),
        }
    }

    /// The stationarity price for pyramid deposit `m`, before any sign check:
    /// `[Ψ(G+N−m) − Ψ(N−m+1)]/Δλ` or `[ln G + Ψ(m+1) − Ψ(N−m+1)]/Δλ`.
    pub fn stationary_beta(&self, m: f64) -> Result<f64> {
        self.check_k(m)?;
        Ok(self.marginal_information(self.nf() - m) / self.delta_lambda())
    }

    /// The price at which pyramid deposit `m` is optimal.
    ///
    /// Fails with [`Error::NoPositiveBeta`] where the stationarity value is not
    /// positive; for Boltzmann counting this is exactly `m < m₀`.
    pub fn beta_of_m(&self, m: f64) -> Result<f64> {
        let value = self.stationary_beta(m)?;
        if value > 0.0 {
            Ok(value)
        } else {
            Err(Error::NoPositiveBeta { m, value })
        }
    }

    pub fn critical_betas(&self) -> Result<CriticalBetas> {
        let dl = self.delta_lambda();
        let n = self.nf();
        match self.statistics {
            Statistics::Bose => {
                let beta_0 = gap_unchecked(self.gf(), 0.0) / dl;
                let beta_c = gap_unchecked(self.gf(), n) / dl;
                Ok(CriticalBetas {
                    beta_c: (beta_c > 0.0).then_some(beta_c),
                    beta_0,
                    m_floor: None,
                })
            }
            Statistics::Boltzmann => {
                let beta_0 = self.marginal_information(0.0) / dl;
                let at_full = self.marginal_information(n);
                if at_full > 0.0 {
                    Ok(CriticalBetas {
                        beta_c: Some(at_full / dl),
                        beta_0,
                        m_floor: None,
                    })
                } else {
                    let m_floor = if at_full == 0.0 {
                        0.0
                    } else {
                        bisect(|m| self.marginal_information(n - m), 0.0, n)?
                    };
                    Ok(CriticalBetas {
                        beta_c: None,
                        beta_0,
                        m_floor: Some(m_floor),
                    })
                }
            }
        }
    }

    pub fn classify_phase(&self, beta: f64) -> Result<Phase> {
        Ok(self.critical_betas()?.classify(beta))
    }

    /// Continuous maximizer of [`Self::total_income`] over `k ∈ [0, N]`.
    pub fn optimal_k(&self, beta: f64) -> Result<PhasePoint> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::domain(format!("beta must be positive, got {beta}")));
        }
        let crit = self.critical_betas()?;
        let phase = crit.classify(beta);
        let n = self.nf();
        let k_star = match phase {
            Phase::Condensed => 0.0,
            Phase::Saturated => n,
            Phase::Mixed => {
                let price = beta * self.delta_lambda();
                bisect(|k| self.marginal_information(k) - price, 0.0, n)?
            }
        };
        Ok(PhasePoint {
            beta,
            k_star,
            m_star: n - k_star,
            income: self.total_income(k_star, beta)?,
            phase,
        })
    }
}

/// Critical prices of a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalBetas {
    /// Largest price at which all units go to the strong banks; absent when no
    /// positive price achieves that.
    pub beta_c: Option<f64>,
    /// Smallest price at which all units stay in the pyramid.
    pub beta_0: f64,
    /// Pyramid deposit approached as `β → 0⁺` when `beta_c` is absent
    /// (Boltzmann counting only).
    pub m_floor: Option<f64>,
}

impl CriticalBetas {
    /// Boundary prices take the adjacent extreme label.
    pub fn classify(&self, beta: f64) -> Phase {
        if beta >= self.beta_0 {
            Phase::Condensed
        } else if self.beta_c.is_some_and(|c| beta <= c) {
            Phase::Saturated
        } else {
            Phase::Mixed
        }
    }
}

/// One point of a price sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub beta: f64,
    /// Optimal strong-bank deposit.
    pub k_star: f64,
    /// Pyramid deposit `N − k_star`.
    pub m_star: f64,
    /// `F(k_star, β)`.
    pub income: f64,
    pub phase: Phase,
}

/// `N → ∞` limits with `G/N → g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticLimits {
    pub statistics: Statistics,
    pub g: f64,
    pub delta_lambda: f64,
    /// Boltzmann only: whether `g ≥ e^C`, i.e. a limiting `β_c` exists.
    pub condition_21: Option<bool>,
    pub beta_c_limit: Option<f64>,
    /// Limiting `β(m)` for the requested `m` (Bose: independent of `m`).
    pub beta_of_m_limit: Option<f64>,
    /// Boltzmann only, when `g ≤ e^C`: root of `ln g + Ψ(m̃₀+1) = 0`.
    pub m_tilde_0: Option<f64>,
}

impl AsymptoticLimits {
    /// The limiting critical price, or [`Error::NoCriticalValue`].
    pub fn beta_c(&self) -> Result<f64> {
        self.beta_c_limit.ok_or_else(|| {
            Error::NoCriticalValue(format!(
                "no limiting beta_c for {} counting with g = {} (requires g >= e^C)",
                self.statistics, self.g
            ))
        })
    }

    /// Bose only: limiting strong-bank fraction `k/N = g/(e^{βΔλ} − 1)` for
    /// `β` above the limiting `β_c`.
    pub fn k_fraction(&self, beta: f64) -> Option<f64> {
        match self.statistics {
            Statistics::Bose => Some(self.g / (beta * self.delta_lambda).exp_m1()),
            Statistics::Boltzmann => None,
        }
    }
}

/// Limits of the critical prices and of `β(m)` for `G = gN`, `N → ∞`.
///
/// Exactly at `g = e^C` (within rounding) the Boltzmann limit reports both
/// `β_c = 0` and `m̃₀ = 0`.
pub fn asymptotic_limits(
    statistics: Statistics,
    g: f64,
    delta_lambda: f64,
    m: Option<f64>,
) -> Result<AsymptoticLimits> {
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::domain(format!("g must be positive, got {g}")));
    }
    if !(delta_lambda.is_finite() && delta_lambda > 0.0) {
        return Err(Error::domain(format!(
            "delta_lambda must be positive, got {delta_lambda}"
        )));
    }
    if let Some(m) = m {
        if !(m.is_finite() && m >= 0.0) {
            return Err(Error::domain(format!("m must be nonnegative, got {m}")));
        }
    }
    match statistics {
        Statistics::Bose => {
            let limit = g.ln_1p() / delta_lambda;
            Ok(AsymptoticLimits {
                statistics,
                g,
                delta_lambda,
                condition_21: None,
                beta_c_limit: Some(limit),
                beta_of_m_limit: Some(limit),
                m_tilde_0: None,
            })
        }
        Statistics::Boltzmann => {
            let mut margin = g.ln() - EULER_GAMMA;
            if margin.abs() <= 1e-14 {
                margin = 0.0;
            }
            let m_tilde_0 = if margin > 0.0 {
                None
            } else if margin == 0.0 {
                Some(0.0)
            } else {
                Some((inv_digamma(-g.ln())? - 1.0).max(0.0))
            };
            Ok(AsymptoticLimits {
                statistics,
                g,
                delta_lambda,
                condition_21: Some(margin >= 0.0),
                beta_c_limit: (margin >= 0.0).then_some(margin / delta_lambda),
                beta_of_m_limit: m.map(|m| (g.ln() + digamma_unchecked(m + 1.0)) / delta_lambda),
                m_tilde_0,
            })
        }
    }
}
