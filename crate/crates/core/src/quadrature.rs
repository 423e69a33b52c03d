//! Composite Gauss–Legendre quadrature for the digamma-gap integral.

use std::sync::OnceLock;

use crate::{Error, Result};

const ORDER: usize = 64;
const CHECK_ORDER: usize = 40;

/// Nodes and weights on `[-1, 1]`.
struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Rule { nodes, weights }
    }

    fn integrate(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule(n: usize) -> &'static Rule {
    static MAIN: OnceLock<Rule> = OnceLock::new();
    static CHECK: OnceLock<Rule> = OnceLock::new();
    match n {
        ORDER => MAIN.get_or_init(|| Rule::new(ORDER)),
        CHECK_ORDER => CHECK.get_or_init(|| Rule::new(CHECK_ORDER)),
        _ => unreachable!("unsupported quadrature order {n}"),
    }
}

/// `∫₀¹ (t^k − t^{G+k−1})/(1−t) dt`.
///
/// Near `t = 1` the integrand is written in `s = 1 − t` as
/// `(1−s)^k (1 − (1−s)^{G−1}) / s`, which has the finite limit `G − 1` at
/// `s = 0`; its features live at the scales `1/G` and `1/(k+1)`. Near `t = 0`
/// non-integer `k` or `G` leave an algebraic branch point. Each half of `[0, 1]`
/// is therefore cut into panels that shrink geometrically toward its endpoint,
/// and every panel gets the same fixed 64-point rule. A 40-point pass over the
/// same panels must agree or the result is rejected.
pub(crate) fn digamma_gap_integral(g: f64, k: f64) -> Result<f64> {
    if g == 1.0 {
        return Ok(0.0);
    }
    let near_one = |s: f64| -> f64 {
        if s == 0.0 {
            return g - 1.0;
        }
        let log1m = (-s).ln_1p();
        let decay = if k == 0.0 { 1.0 } else { (k * log1m).exp() };
        -decay * ((g - 1.0) * log1m).exp_m1() / s
    };
    let near_zero = |t: f64| -> f64 {
        if t == 0.0 {
            return if k == 0.0 && g > 1.0 { 1.0 } else { 0.0 };
        }
        let ln_t = t.ln();
        -(k * ln_t).exp() * ((g - 1.0) * ln_t).exp_m1() / (1.0 - t)
    };

    let s_panels = graded_panels(1e-3 / (g + k + 1.0), 0.5);
    let t_panels = graded_panels(1e-15, 0.5);
    let total = |r: &Rule| {
        s_panels.iter().map(|&(a, b)| r.integrate(near_one, a, b)).sum::<f64>()
            + t_panels.iter().map(|&(a, b)| r.integrate(near_zero, a, b)).sum::<f64>()
    };
    let value = total(rule(ORDER));
    let check = total(rule(CHECK_ORDER));
    if !value.is_finite() || (value - check).abs() > 1e-10 * (1.0 + value.abs()) {
        return Err(Error::Numerical(format!(
            "digamma gap quadrature did not converge for G = {g}, k = {k}: {value} vs {check}"
        )));
    }
    Ok(value)
}

/// `[0, first]` followed by doubling panels up to `end`.
fn graded_panels(first: f64, end: f64) -> Vec<(f64, f64)> {
    let mut panels = vec![(0.0, first)];
    let mut a = first;
    while a < end {
        let b = (2.0 * a).min(end);
        panels.push((a, b));
        a = b;
    }
    panels
}
