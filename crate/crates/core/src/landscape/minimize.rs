//! Derivative-free minimizers: golden-section line search and a 2-D
//! Nelder-Mead simplex.

/// Golden-section search for the minimum of `f` on `[a, b]`.
///
/// Assumes `f` is unimodal on the bracket. Returns `(x_min, f_min)` once
/// the bracket shrinks below `tol_x` or `max_iters` shrink steps have run.
pub fn golden_section_min(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol_x: f64,
    max_iters: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iters {
        if (b - a).abs() <= tol_x {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead2dResult {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Nelder-Mead simplex descent in two dimensions.
///
/// Standard reflection/expansion/contraction/shrink coefficients
/// (1, 2, 1/2, 1/2). Converged when the simplex diameter falls below
/// `tol_x` and the relative value spread below `tol_f_rel`.
pub fn nelder_mead_2d(
    f: impl Fn(f64, f64) -> f64,
    seed: (f64, f64),
    scale: f64,
    tol_x: f64,
    tol_f_rel: f64,
    max_iters: usize,
) -> NelderMead2dResult {
    let mut pts = [
        (seed.0, seed.1),
        (seed.0 + scale, seed.1),
        (seed.0, seed.1 + scale),
    ];
    let mut vals = pts.map(|(x, y)| f(x, y));

    let order = |pts: &mut [(f64, f64); 3], vals: &mut [f64; 3]| {
        // insertion sort by value, best first
        for i in 1..3 {
            let mut j = i;
            while j > 0 && vals[j] < vals[j - 1] {
                vals.swap(j, j - 1);
                pts.swap(j, j - 1);
                j -= 1;
            }
        }
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        iterations += 1;
        order(&mut pts, &mut vals);

        let diam = {
            let d01 = (pts[0].0 - pts[1].0).hypot(pts[0].1 - pts[1].1);
            let d02 = (pts[0].0 - pts[2].0).hypot(pts[0].1 - pts[2].1);
            let d12 = (pts[1].0 - pts[2].0).hypot(pts[1].1 - pts[2].1);
            d01.max(d02).max(d12)
        };
        let spread = (vals[2] - vals[0]).abs();
        let scale_f = vals[0].abs().max(vals[2].abs()).max(f64::MIN_POSITIVE);
        if diam < tol_x && spread < tol_f_rel * scale_f {
            converged = true;
            break;
        }

        let centroid = ((pts[0].0 + pts[1].0) / 2.0, (pts[0].1 + pts[1].1) / 2.0);
        let reflect = (
            centroid.0 + (centroid.0 - pts[2].0),
            centroid.1 + (centroid.1 - pts[2].1),
        );
        let fr = f(reflect.0, reflect.1);

        if fr < vals[0] {
            let expand = (
                centroid.0 + 2.0 * (centroid.0 - pts[2].0),
                centroid.1 + 2.0 * (centroid.1 - pts[2].1),
            );
            let fe = f(expand.0, expand.1);
            if fe < fr {
                pts[2] = expand;
                vals[2] = fe;
            } else {
                pts[2] = reflect;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = reflect;
            vals[2] = fr;
        } else {
            let contract = if fr < vals[2] {
                (
                    centroid.0 + 0.5 * (reflect.0 - centroid.0),
                    centroid.1 + 0.5 * (reflect.1 - centroid.1),
                )
            } else {
                (
                    centroid.0 + 0.5 * (pts[2].0 - centroid.0),
                    centroid.1 + 0.5 * (pts[2].1 - centroid.1),
                )
            };
            let fc = f(contract.0, contract.1);
            if fc < vals[2].min(fr) {
                pts[2] = contract;
                vals[2] = fc;
            } else {
                // shrink towards the best vertex
                for k in 1..3 {
                    pts[k] = (
                        pts[0].0 + 0.5 * (pts[k].0 - pts[0].0),
                        pts[0].1 + 0.5 * (pts[k].1 - pts[0].1),
                    );
                    vals[k] = f(pts[k].0, pts[k].1);
                }
            }
        }
    }
    order(&mut pts, &mut vals);
    NelderMead2dResult { x: pts[0].0, y: pts[0].1, value: vals[0], iterations, converged }
}
