//! Derivative-free maximization over the scaled simplex
//! `{x : x_i >= lo, sum x_i = total}`.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max(mut a: f64, mut b: f64, tol: f64, mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Pairwise coordinate ascent: repeatedly re-splits the mass of each pair
/// `(x_i, x_j)` by golden section. Adequate for concave or quasi-concave
/// objectives in a handful of dimensions.
pub fn maximize_on_simplex(
    start: &[f64],
    lo: f64,
    sweeps: usize,
    f: impl Fn(&[f64]) -> f64,
) -> (Vec<f64>, f64) {
    let mut x = start.to_vec();
    let mut best = f(&x);
    let k = x.len();
    for _ in 0..sweeps {
        let before = best;
        for i in 0..k {
            for j in i + 1..k {
                let pair = x[i] + x[j];
                if pair <= 2.0 * lo {
                    continue;
                }
                let tol = 1e-12 * pair.max(1.0);
                let mut trial = x.clone();
                let (s, v) = golden_max(lo, pair - lo, tol, |s| {
                    trial[i] = s;
                    trial[j] = pair - s;
                    f(&trial)
                });
                if v > best {
                    x[i] = s;
                    x[j] = pair - s;
                    best = v;
                }
            }
        }
        if best - before <= 1e-15 * best.abs() {
            break;
        }
    }
    (x, best)
}
