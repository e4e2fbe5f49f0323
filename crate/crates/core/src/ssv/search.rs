//! Minimizers used by the D-scaling upper bound: a golden-section line
//! search with outward bracketing, cyclic coordinate descent built on it,
//! and a BFGS iteration for the nonsmooth stage.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Result of one line search: offset along the direction and value there.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LineMin {
    pub t: f64,
    pub value: f64,
}

/// Minimizes `f(t)` near `t = 0`, where `f(0) = f0` is already known.
///
/// The search first brackets a minimum by stepping `step` in both directions
/// and doubling outwards while the value keeps falling, then shrinks the
/// bracket by golden sections until it is narrower than `t_tol`. The best
/// point ever evaluated is returned, so the result is never worse than `f0`.
pub(crate) fn golden_section<F: FnMut(f64) -> f64>(
    mut f: F,
    f0: f64,
    step: f64,
    t_tol: f64,
    max_evals: usize,
) -> LineMin {
    let mut best = LineMin { t: 0.0, value: f0 };
    let mut evals = 0usize;
    let mut eval = |t: f64, best: &mut LineMin, evals: &mut usize| {
        *evals += 1;
        let v = f(t);
        if v < best.value {
            *best = LineMin { t, value: v };
        }
        v
    };

    // bracket [lo, hi] around an interior point with a lower value than both ends
    let f_plus = eval(step, &mut best, &mut evals);
    let (mut lo, mut hi);
    if f_plus < f0 {
        let (mut prev, mut cur, mut f_cur) = (0.0, step, f_plus);
        let mut h = step;
        loop {
            h *= 2.0;
            let next = cur + h;
            let f_next = eval(next, &mut best, &mut evals);
            if f_next >= f_cur || evals >= max_evals || !f_next.is_finite() {
                lo = prev;
                hi = next;
                break;
            }
            prev = cur;
            cur = next;
            f_cur = f_next;
        }
    } else {
        let f_minus = eval(-step, &mut best, &mut evals);
        if f_minus < f0 {
            let (mut prev, mut cur, mut f_cur) = (0.0, -step, f_minus);
            let mut h = step;
            loop {
                h *= 2.0;
                let next = cur - h;
                let f_next = eval(next, &mut best, &mut evals);
                if f_next >= f_cur || evals >= max_evals || !f_next.is_finite() {
                    lo = next;
                    hi = prev;
                    break;
                }
                prev = cur;
                cur = next;
                f_cur = f_next;
            }
        } else {
            lo = -step;
            hi = step;
        }
    }

    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = eval(x1, &mut best, &mut evals);
    let mut f2 = eval(x2, &mut best, &mut evals);
    while hi - lo > t_tol && evals < max_evals {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = eval(x1, &mut best, &mut evals);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = eval(x2, &mut best, &mut evals);
        }
    }
    best
}

/// Settings for [`coordinate_descent`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct DescentSettings {
    /// Stop once a full sweep improves the value by less than this fraction.
    pub rel_tol: f64,
    pub max_sweeps: usize,
    /// Bracket-width tolerance for each line search.
    pub t_tol: f64,
    pub max_line_evals: usize,
}

/// Cyclic coordinate descent over `x[1..]` (`x[0]` stays fixed).
///
/// Each sweep ends with a pattern move: a line search along the sweep's net
/// displacement, which cuts down zig-zagging in narrow valleys.
///
/// `steps` holds the initial bracketing step per coordinate and is adapted
/// in place. `done` is consulted after every sweep and may stop the descent
/// early (for instance once a certified lower bound has been reached).
pub(crate) fn coordinate_descent<F, S>(
    mut f: F,
    x: &mut [f64],
    steps: &mut [f64],
    settings: &DescentSettings,
    mut done: S,
) -> f64
where
    F: FnMut(&[f64]) -> f64,
    S: FnMut(f64) -> bool,
{
    let mut value = f(x);
    if x.len() < 2 {
        return value;
    }
    let mut trial = x.to_vec();
    let mut anchor = x.to_vec();
    let mut direction = vec![0.0; x.len()];
    for _ in 0..settings.max_sweeps {
        let start = value;
        for k in 1..x.len() {
            let base = x[k];
            let line = golden_section(
                |t| {
                    trial[k] = base + t;
                    f(&trial)
                },
                value,
                steps[k],
                settings.t_tol,
                settings.max_line_evals,
            );
            if line.value < value {
                x[k] = base + line.t;
                value = line.value;
                steps[k] = (2.0 * line.t.abs()).clamp(16.0 * settings.t_tol, 4.0);
            } else {
                steps[k] = (0.5 * steps[k]).max(16.0 * settings.t_tol);
            }
            trial[k] = x[k];
        }
        // pattern move along the net displacement of the sweep
        let mut moved = false;
        for k in 1..x.len() {
            direction[k] = x[k] - anchor[k];
            moved |= direction[k] != 0.0;
        }
        if moved && !done(value) {
            let line = golden_section(
                |t| {
                    for k in 1..x.len() {
                        trial[k] = x[k] + t * direction[k];
                    }
                    f(&trial)
                },
                value,
                1.0,
                settings.t_tol,
                settings.max_line_evals,
            );
            if line.value < value {
                for k in 1..x.len() {
                    x[k] += line.t * direction[k];
                }
                value = line.value;
            }
            trial.copy_from_slice(x);
        }
        anchor.copy_from_slice(x);
        if done(value) || start - value <= settings.rel_tol * start {
            break;
        }
    }
    value
}

/// Settings for [`bfgs`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct BfgsSettings {
    pub max_iterations: usize,
    /// Stop once an iteration improves the value by less than this fraction.
    pub rel_tol: f64,
    pub max_line_evals: usize,
}

const WOLFE_C1: f64 = 1e-4;
const WOLFE_C2: f64 = 0.9;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// BFGS with a weak Wolfe bracketing line search, over `x[1..]`.
///
/// `fg` returns the value and gradient (the gradient entry for `x[0]` is
/// ignored). BFGS copes well with functions that are nonsmooth only on a
/// thin set, such as a largest singular value: the inverse-Hessian estimate
/// becomes ill-conditioned along the nonsmooth directions instead of the
/// iteration stalling there. Returns the final value.
pub(crate) fn bfgs<F>(mut fg: F, x: &mut [f64], settings: &BfgsSettings) -> f64
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let n = x.len();
    let (mut value, grad) = fg(x);
    if n < 2 {
        return value;
    }
    let m = n - 1;
    let mut g: Vec<f64> = grad[1..].to_vec();
    // inverse Hessian approximation, row-major m×m
    let mut h = vec![0.0; m * m];
    let reset = |h: &mut [f64]| {
        h.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..m {
            h[i * m + i] = 1.0;
        }
    };
    reset(&mut h);
    let mut trial = x.to_vec();
    let mut d = vec![0.0; m];

    for _ in 0..settings.max_iterations {
        for i in 0..m {
            d[i] = -(0..m).map(|j| h[i * m + j] * g[j]).sum::<f64>();
        }
        let mut slope = dot(&g, &d);
        if slope >= 0.0 || slope.is_nan() {
            reset(&mut h);
            for i in 0..m {
                d[i] = -g[i];
            }
            slope = dot(&g, &d);
            if slope >= 0.0 || slope.is_nan() {
                break;
            }
        }

        // weak Wolfe bracketing
        let (mut lo, mut hi, mut t) = (0.0f64, f64::INFINITY, 1.0f64);
        let mut accepted = None;
        for _ in 0..settings.max_line_evals {
            for i in 0..m {
                trial[i + 1] = x[i + 1] + t * d[i];
            }
            let (ft, gt_full) = fg(&trial);
            let gt = &gt_full[1..];
            if ft > value + WOLFE_C1 * t * slope || ft.is_nan() {
                hi = t;
            } else if dot(gt, &d) < WOLFE_C2 * slope {
                lo = t;
            } else {
                accepted = Some((t, ft, gt.to_vec()));
                break;
            }
            t = if hi.is_finite() {
                0.5 * (lo + hi)
            } else {
                2.0 * lo
            };
            if hi - lo < 1e-16 * (1.0 + lo) {
                break;
            }
        }
        let Some((t, ft, gt)) = accepted else {
            break;
        };

        let s: Vec<f64> = d.iter().map(|di| t * di).collect();
        let y: Vec<f64> = gt.iter().zip(&g).map(|(a, b)| a - b).collect();
        for i in 0..m {
            x[i + 1] += s[i];
        }
        let improvement = value - ft;
        value = ft;
        g = gt;

        let sy = dot(&s, &y);
        if sy > 0.0 {
            // H ← (I − ρ s yᵀ) H (I − ρ y sᵀ) + ρ s sᵀ
            let rho = 1.0 / sy;
            let hy: Vec<f64> = (0..m)
                .map(|i| (0..m).map(|j| h[i * m + j] * y[j]).sum())
                .collect();
            let yhy = dot(&y, &hy);
            for i in 0..m {
                for j in 0..m {
                    h[i * m + j] += -rho * (s[i] * hy[j] + hy[i] * s[j])
                        + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }
        if improvement <= settings.rel_tol * value.abs() {
            break;
        }
    }
    value
}
