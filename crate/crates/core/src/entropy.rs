//! Multiplicity counts and gamma-function entropy symbols.
//!
//! All counts are natural logarithms; `Γ` overflows long before the sizes
//! the deposit model works with.

use crate::specfun::log_gamma;
use crate::{Error, Result};

const PROBABILITY_TOLERANCE: f64 = 1e-12;

/// `ln[Γ(k+G) / (Γ(k+1) Γ(G))]`: ways to place `k` indistinguishable units
/// into `G` cells. For integer arguments this is `ln C(G+k−1, k)`; real `k`
/// is accepted for the continuous deposit model.
pub fn bose_multiplicity(k: f64, g: f64) -> Result<f64> {
    if !(k.is_finite() && k >= 0.0) {
        return Err(Error::domain(format!("bose_multiplicity requires k >= 0, got {k}")));
    }
    if !(g.is_finite() && g >= 1.0) {
        return Err(Error::domain(format!("bose_multiplicity requires G >= 1, got {g}")));
    }
    if g == 1.0 || k == 0.0 {
        return Ok(0.0);
    }
    Ok(log_gamma(k + g)? - log_gamma(k + 1.0)? - log_gamma(g)?)
}

/// `ln[Γ(N+1) G^k / (Γ(k+1) Γ(N−k+1))] = ln C(N, k) + k ln G`: ways to send `k`
/// of `N` labelled units into `G` labelled cells.
pub fn boltzmann_multiplicity(k: f64, n: f64, g: f64) -> Result<f64> {
    if !(k.is_finite() && k >= 0.0 && k <= n) {
        return Err(Error::domain(format!(
            "boltzmann_multiplicity requires 0 <= k <= N, got k = {k}, N = {n}"
        )));
    }
    if !(g.is_finite() && g >= 1.0) {
        return Err(Error::domain(format!(
            "boltzmann_multiplicity requires G >= 1, got {g}"
        )));
    }
    let binom = if k == 0.0 || k == n {
        0.0
    } else {
        log_gamma(n + 1.0)? - log_gamma(k + 1.0)? - log_gamma(n - k + 1.0)?
    };
    Ok(binom + k * g.ln())
}

/// How the split of `K` bonds between one pyramid and `G2` banks is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VersionMode {
    /// `Σ_{k2=0}^{K} C(G2+k2−1, k2) = C(G2+K, K)`.
    Sum,
    /// `Π_{k2=1}^{K} C(G2+k2−1, k2)`, the product form as literally written.
    ProductAsPrinted,
}

/// Log of the number of deposit versions for `K` bonds, one pyramid and `G2`
/// strong banks.
pub fn version_count(k_total: u64, g2: u64, mode: VersionMode) -> Result<f64> {
    if k_total == 0 || g2 == 0 {
        return Err(Error::domain(format!(
            "version_count requires K >= 1 and G2 >= 1, got K = {k_total}, G2 = {g2}"
        )));
    }
    let g = g2 as f64;
    match mode {
        VersionMode::Sum => {
            let terms = (0..=k_total)
                .map(|k2| bose_multiplicity(k2 as f64, g))
                .collect::<Result<Vec<_>>>()?;
            Ok(log_sum_exp(&terms))
        }
        VersionMode::ProductAsPrinted => (1..=k_total).map(|k2| bose_multiplicity(k2 as f64, g)).sum(),
    }
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// Per-outcome test counts `P_i = M p_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountVector {
    counts: Vec<f64>,
    total: f64,
}

impl CountVector {
    pub fn new(counts: Vec<f64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::domain("count vector must not be empty"));
        }
        if let Some(bad) = counts.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
            return Err(Error::domain(format!("counts must be positive, got {bad}")));
        }
        let total = counts.iter().sum();
        Ok(CountVector { counts, total })
    }

    /// Counts `M p_i` for a probability vector `p`.
    pub fn from_probabilities(p: &[f64], m: f64) -> Result<Self> {
        check_probabilities(p)?;
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::domain(format!("M must be positive, got {m}")));
        }
        let mut counts: Vec<f64> = p.iter().map(|pi| m * pi).collect();
        // absorb rounding so that Σ P_i = M holds to the last bit we can manage
        let drift = m - counts.iter().sum::<f64>();
        if let Some(last) = counts.last_mut() {
            *last += drift;
        }
        let cv = CountVector::new(counts)?;
        Ok(CountVector { total: m, ..cv })
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    /// `M = Σ P_i`.
    pub fn total(&self) -> f64 {
        self.total
    }
}

fn check_probabilities(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::domain("probability vector must not be empty"));
    }
    if let Some(bad) = p.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::domain(format!(
            "probabilities must be strictly positive, got {bad}"
        )));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
        return Err(Error::domain(format!("probabilities must sum to 1, got {sum}")));
    }
    Ok(())
}

/// Whether an entropy symbol is returned as defined or shifted so that it
/// converges to its Shannon / Kullback–Leibler form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Raw,
    /// Adds `1 − ln M`, the Stirling correction `ln Γ(x) ≈ x ln x − x` leaves behind.
    Normalized,
}

/// `S_M = (1/M) Σ ln Γ(P_i)`.
///
/// In [`Normalization::Normalized`] mode returns `S_M − ln M + 1`, which tends
/// to `Σ p_i ln p_i` as `M → ∞` with `p` fixed.
pub fn entropy_symbol(counts: &CountVector, mode: Normalization) -> Result<f64> {
    let m = counts.total();
    let raw = counts.counts().iter().map(|&c| log_gamma(c)).sum::<Result<f64>>()? / m;
    Ok(match mode {
        Normalization::Raw => raw,
        Normalization::Normalized => raw - m.ln() + 1.0,
    })
}

/// `Σ p_i ln p_i`, with `0 ln 0 = 0`.
pub fn shannon_limit(p: &[f64]) -> f64 {
    p.iter().filter(|&&v| v > 0.0).map(|&v| v * v.ln()).sum()
}

/// Finite atomic measures `P` (total 1), `Q` (total `M`) and `μ` (total `K`)
/// on a common sample space. `Q ≪ P` and `μ ≪ P` hold because every atom of
/// `P` carries positive mass.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasureTriple {
    p: Vec<f64>,
    q: Vec<f64>,
    mu: Vec<f64>,
    m: f64,
    k: f64,
}

impl DiscreteMeasureTriple {
    /// `M` and `K` are taken as the totals of `q` and `mu`.
    pub fn new(p: Vec<f64>, q: Vec<f64>, mu: Vec<f64>) -> Result<Self> {
        check_probabilities(&p)?;
        if q.len() != p.len() || mu.len() != p.len() {
            return Err(Error::domain(format!(
                "measures must share one sample space: |P| = {}, |Q| = {}, |mu| = {}",
                p.len(),
                q.len(),
                mu.len()
            )));
        }
        for (name, v) in [("Q", &q), ("mu", &mu)] {
            if let Some(bad) = v.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
                return Err(Error::domain(format!("{name} must be nonnegative, got {bad}")));
            }
        }
        let m: f64 = q.iter().sum();
        let k: f64 = mu.iter().sum();
        if m <= 0.0 || k <= 0.0 {
            return Err(Error::domain(format!("totals must be positive, got M = {m}, K = {k}")));
        }
        Ok(DiscreteMeasureTriple { p, q, mu, m, k })
    }

    pub fn atom_count(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    /// Total mass of `Q`.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Total mass of `μ`.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Atoms as `(p_i, dQ/dP, dμ/dP)`.
    fn densities(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.p
            .iter()
            .zip(&self.q)
            .zip(&self.mu)
            .map(|((&p, &q), &mu)| (p, q / p, mu / p))
    }
}

/// `S_M(Q, P) = (1/M) Σ_i p_i ln Γ(q_i / p_i)`.
///
/// Normalized mode adds `1 − ln M`; the result then tends to
/// `(1/M) Σ q_i ln(q_i / (M p_i))` as every ratio `q_i/p_i` grows.
pub fn relative_entropy_symbol(t: &DiscreteMeasureTriple, mode: Normalization) -> Result<f64> {
    let mut acc = 0.0;
    for (p, ratio, _) in t.densities() {
        if ratio <= 0.0 {
            return Err(Error::domain("relative entropy symbol needs dQ/dP > 0 at every atom"));
        }
        acc += p * log_gamma(ratio)?;
    }
    let raw = acc / t.m();
    Ok(match mode {
        Normalization::Raw => raw,
        Normalization::Normalized => raw - t.m().ln() + 1.0,
    })
}

/// `(1/M) Σ q_i ln(q_i / (M p_i))`, the Kullback–Leibler form of the normalized
/// relative entropy symbol, with `0 ln 0 = 0`.
pub fn kl_limit(t: &DiscreteMeasureTriple) -> f64 {
    let m = t.m();
    t.p.iter()
        .zip(&t.q)
        .filter(|(_, &q)| q > 0.0)
        .map(|(&p, &q)| q * (q / (m * p)).ln())
        .sum::<f64>()
        / m
}

/// Bose relative entropy
/// `Σ_i p_i [ ln Γ(a_i + b_i)/(M+K) − ln Γ(a_i + 1)/M − ln Γ(b_i)/K ]`
/// with `a = dQ/dP`, `b = dμ/dP`.
pub fn bose_relative_entropy(t: &DiscreteMeasureTriple) -> Result<f64> {
    let (m, k) = (t.m(), t.k());
    let mut acc = 0.0;
    for (p, a, b) in t.densities() {
        if b <= 0.0 {
            return Err(Error::domain("Bose relative entropy needs dmu/dP > 0 at every atom"));
        }
        acc += p * (log_gamma(a + b)? / (m + k) - log_gamma(a + 1.0)? / m - log_gamma(b)? / k);
    }
    Ok(acc)
}

/// Fermi relative entropy
/// `Σ_i p_i [ ln Γ(b_i + 1)/K − ln Γ(a_i + 1)/M − ln Γ(b_i − a_i + 1)/(K+M) ]`.
///
/// Requires `b_i − a_i + 1 > 0` at every atom.
pub fn fermi_relative_entropy(t: &DiscreteMeasureTriple) -> Result<f64> {
    let (m, k) = (t.m(), t.k());
    let mut acc = 0.0;
    for (i, (p, a, b)) in t.densities().enumerate() {
        let vacancy = b - a + 1.0;
        if vacancy <= 0.0 {
            return Err(Error::OverOccupation(format!(
                "atom {i}: dQ/dP = {a} exceeds dmu/dP + 1 = {}",
                b + 1.0
            )));
        }
        acc += p * (log_gamma(b + 1.0)? / k - log_gamma(a + 1.0)? / m - log_gamma(vacancy)? / (k + m));
    }
    Ok(acc)
}
