use std::sync::OnceLock;

pub const POINTS: usize = 15;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub struct Rule {
    pub nodes: [f64; POINTS],
    pub weights: [f64; POINTS],
}

pub fn rule() -> &'static Rule {
    static RULE: OnceLock<Rule> = OnceLock::new();
    RULE.get_or_init(legendre_rule::<POINTS>)
}

/// Newton iteration on `P_N` from the Chebyshev-like initial guesses.
fn legendre_rule<const N: usize>() -> Rule {
    let mut nodes = [0.0; POINTS];
    let mut weights = [0.0; POINTS];
    let n = N as f64;
    for i in 0..N {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(N, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(N, x);
        if d != 0.0 {
            dp = d;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    Rule { nodes, weights }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// One Gauss–Legendre panel on `[a, b]`.
pub fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    panel_with_abs(f, a, b).0
}

/// The panel value together with the same rule applied to `|f|`.
pub fn panel_with_abs<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let r = rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    for (x, w) in r.nodes.iter().zip(r.weights.iter()) {
        let y = f(mid + half * x);
        sum += w * y;
        abs_sum += w * y.abs();
    }
    (sum * half, abs_sum * half.abs())
}
