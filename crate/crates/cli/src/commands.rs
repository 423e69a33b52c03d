use std::fmt::Write as _;

use quasimarket::deposit::{asymptotic_limits, DepositScenario, PhasePoint, Statistics};
use quasimarket::occupancy::{
    gibbs_occupancy, level_occupancies, occupancy_asymptotic, LevelKind, LevelSpec, Orientation,
};
use quasimarket::oracle::brute_force_optimum;
use rayon::prelude::*;

use crate::format::number;
use crate::scenario::ScenarioFile;
use crate::{CliError, Output};

/// One row per grid price, computed in parallel and emitted in grid order.
pub fn sweep(file: &ScenarioFile) -> Result<Output, CliError> {
    let s = file.deposit_scenario()?;
    let oracle = file.options.emit_oracle;
    let rows = file
        .betas()
        .par_iter()
        .map(|&beta| {
            let point = s.optimal_k(beta)?;
            let oracle_k = if oracle {
                Some(brute_force_optimum(beta, &s)?.k)
            } else {
                None
            };
            Ok::<_, quasimarket::Error>((point, oracle_k))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut csv = String::from("beta,k_star,m_star,income,phase");
    csv.push_str(if oracle { ",oracle_k\n" } else { "\n" });
    for (p, oracle_k) in &rows {
        csv.push_str(&sweep_row(p));
        if let Some(k) = oracle_k {
            let _ = write!(csv, ",{k}");
        }
        csv.push('\n');
    }

    let mut notes = String::new();
    if file.options.asymptotics {
        notes.push_str(&asymptotic_summary(&s)?);
    }
    Ok(Output { csv, notes })
}

/// `beta,k_star,m_star,income,phase` without the line ending.
pub fn sweep_row(p: &PhasePoint) -> String {
    format!(
        "{},{},{},{},{}",
        number(p.beta),
        number(p.k_star),
        number(p.m_star),
        number(p.income),
        p.phase
    )
}

fn asymptotic_summary(s: &DepositScenario) -> Result<String, CliError> {
    let crit = s.critical_betas()?;
    let g = s.g() as f64 / s.n() as f64;
    let limits = asymptotic_limits(s.statistics(), g, s.delta_lambda(), None)?;
    let opt = |v: Option<f64>| v.map_or_else(|| "NA".to_string(), number);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "finite N = {}: beta_c = {}, beta_0 = {}, m_floor = {}",
        s.n(),
        opt(crit.beta_c),
        number(crit.beta_0),
        opt(crit.m_floor)
    );
    let _ = writeln!(
        out,
        "limit g = G/N = {}: beta_c = {}, m_tilde_0 = {}",
        number(g),
        opt(limits.beta_c_limit),
        opt(limits.m_tilde_0)
    );
    Ok(out)
}

/// Finite-N critical values against their `N → ∞` limits with `G = round(gN)`.
///
/// Reports `β_c` whenever a limiting value exists, otherwise the Boltzmann
/// pyramid floor `m₀` against `m̃₀`.
pub fn limits(statistics: Statistics, g: f64, delta_lambda: f64, ns: &[u64]) -> Result<Output, CliError> {
    if ns.is_empty() {
        return Err(CliError::Input("--N needs at least one value".into()));
    }
    if let Some(&n) = ns.iter().find(|&&n| n < 10) {
        return Err(CliError::Input(format!("every N must be at least 10, got {n}")));
    }
    let limits = asymptotic_limits(statistics, g, delta_lambda, None)?;
    let (quantity, limit) = match (limits.beta_c_limit, limits.m_tilde_0) {
        (Some(b), _) => ("beta_c", b),
        (None, Some(m)) => ("m_0", m),
        (None, None) => unreachable!("either a critical price or a pyramid floor exists"),
    };

    let mut csv = String::from("N,finite_value,limit_value,abs_error\n");
    for &n in ns {
        let big_g = ((g * n as f64).round() as u64).max(1);
        let s = DepositScenario::new(n, big_g, 1.0 + delta_lambda, 1.0, statistics)?;
        let crit = s.critical_betas()?;
        let finite = if quantity == "beta_c" {
            crit.beta_c
        } else {
            crit.m_floor
        };
        match finite {
            Some(v) => {
                let _ = writeln!(csv, "{n},{},{},{}", number(v), number(limit), number((v - limit).abs()));
            }
            None => {
                let _ = writeln!(csv, "{n},NA,{},NA", number(limit));
            }
        }
    }
    let notes = format!(
        "quantity: {quantity} ({statistics}, g = {}, delta_lambda = {})\n",
        number(g),
        number(delta_lambda)
    );
    Ok(Output { csv, notes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OccupancyKind {
    Gibbs,
    Bose,
    Fermi,
}

/// Exact level occupations beside their large-occupation forms.
pub fn occupancy(
    kind: OccupancyKind,
    x: &[f64],
    g: Option<&[f64]>,
    beta: f64,
    m: Option<f64>,
    orientation: Orientation,
) -> Result<Output, CliError> {
    let g = match g {
        Some(g) => g.to_vec(),
        None if kind == OccupancyKind::Gibbs => vec![1.0; x.len()],
        None => return Err(CliError::Input("--G is required for bose and fermi levels".into())),
    };
    let levels = LevelSpec::new(x.to_vec(), g.clone())?;
    let (exact, asymptotic) = match kind {
        OccupancyKind::Gibbs => {
            let m = m.ok_or_else(|| CliError::Input("--M is required for gibbs occupancy".into()))?;
            let exact = gibbs_occupancy(&levels, beta, m, orientation)?;
            (exact.p().to_vec(), gibbs_asymptotic(x, beta, m, orientation))
        }
        OccupancyKind::Bose | OccupancyKind::Fermi => {
            let level_kind = if kind == OccupancyKind::Bose {
                LevelKind::Bose
            } else {
                LevelKind::Fermi
            };
            let exact = level_occupancies(level_kind, &levels, beta)?;
            let asymptotic = x
                .iter()
                .zip(&g)
                .map(|(&xi, &gi)| occupancy_asymptotic(level_kind, xi, gi, beta))
                .collect::<Result<Vec<_>, _>>()?;
            (exact.p().to_vec(), asymptotic)
        }
    };

    let mut csv = String::from("x,G,P,asymptotic_P\n");
    for i in 0..x.len() {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            number(x[i]),
            number(g[i]),
            number(exact[i]),
            number(asymptotic[i])
        );
    }
    Ok(Output {
        csv,
        notes: String::new(),
    })
}

/// `M e^{sβx_i} / Σ_j e^{sβx_j}`.
fn gibbs_asymptotic(x: &[f64], beta: f64, m: f64, orientation: Orientation) -> Vec<f64> {
    let drive: Vec<f64> = x.iter().map(|&xi| orientation.sign() * beta * xi).collect();
    let top = drive.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = drive.iter().map(|d| (d - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| m * w / total).collect()
}
