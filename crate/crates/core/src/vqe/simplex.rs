use serde::{Deserialize, Serialize};

/// Nelder–Mead settings. Coefficients follow the dimension-adapted choice
/// `α = 1, β = 1 + 2/d, γ = 3/4 − 1/(2d), δ = 1 − 1/d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexSettings {
    pub max_evals: usize,
    /// Stop when the spread of simplex values falls below this.
    pub ftol: f64,
    /// and the simplex diameter falls below this.
    pub xtol: f64,
    pub initial_step: f64,
    /// Rebuild the simplex around the best point after convergence, up to
    /// this many times, while it keeps improving.
    pub rebuilds: usize,
}

impl Default for SimplexSettings {
    fn default() -> Self {
        Self {
            max_evals: 20_000,
            ftol: 1e-12,
            xtol: 1e-9,
            initial_step: 0.5,
            rebuilds: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub evals: usize,
    pub converged: bool,
}

struct Counted<'a, F> {
    f: &'a mut F,
    evals: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counted<'_, F> {
    fn call(&mut self, x: &[f64]) -> f64 {
        self.evals += 1;
        let v = (self.f)(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

fn run_once<F: FnMut(&[f64]) -> f64>(
    obj: &mut Counted<'_, F>,
    x0: &[f64],
    f0: Option<f64>,
    s: &SimplexSettings,
) -> (Vec<f64>, f64, bool) {
    let d = x0.len();
    let dn = d as f64;
    let (alpha, beta, gamma, delta) = (1.0, 1.0 + 2.0 / dn, 0.75 - 0.5 / dn, 1.0 - 1.0 / dn);
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(d + 1);
    let mut vals: Vec<f64> = Vec::with_capacity(d + 1);
    pts.push(x0.to_vec());
    vals.push(f0.unwrap_or_else(|| obj.call(x0)));
    for i in 0..d {
        let mut p = x0.to_vec();
        p[i] += s.initial_step;
        vals.push(obj.call(&p));
        pts.push(p);
    }
    loop {
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = vals[d] - vals[0];
        let diameter = pts[1..]
            .iter()
            .map(|p| {
                p.iter()
                    .zip(&pts[0])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread <= s.ftol && diameter <= s.xtol {
            return (pts[0].clone(), vals[0], true);
        }
        if obj.evals >= s.max_evals {
            return (pts[0].clone(), vals[0], false);
        }

        let centroid: Vec<f64> = (0..d)
            .map(|j| pts[..d].iter().map(|p| p[j]).sum::<f64>() / dn)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            (0..d)
                .map(|j| centroid[j] + t * (pts[d][j] - centroid[j]))
                .collect()
        };

        let xr = along(-alpha);
        let fr = obj.call(&xr);
        if fr < vals[0] {
            let xe = along(-alpha * beta);
            let fe = obj.call(&xe);
            if fe < fr {
                pts[d] = xe;
                vals[d] = fe;
            } else {
                pts[d] = xr;
                vals[d] = fr;
            }
            continue;
        }
        if fr < vals[d - 1] {
            pts[d] = xr;
            vals[d] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[d] {
            let xc = along(-alpha * gamma);
            let fc = obj.call(&xc);
            (xc, fc)
        } else {
            let xc = along(gamma);
            let fc = obj.call(&xc);
            (xc, fc)
        };
        if fc < vals[d].min(fr) {
            pts[d] = xc;
            vals[d] = fc;
            continue;
        }
        for i in 1..=d {
            let p: Vec<f64> = (0..d)
                .map(|j| pts[0][j] + delta * (pts[i][j] - pts[0][j]))
                .collect();
            vals[i] = obj.call(&p);
            pts[i] = p;
        }
    }
}

/// Minimizes `f` from `x0`. Deterministic for a deterministic `f`.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    x0: &[f64],
    settings: &SimplexSettings,
) -> SimplexResult {
    let mut obj = Counted {
        f: &mut f,
        evals: 0,
    };
    if x0.is_empty() {
        let v = obj.call(x0);
        return SimplexResult {
            x: Vec::new(),
            f: v,
            evals: obj.evals,
            converged: true,
        };
    }
    let (mut x, mut fx, mut converged) = run_once(&mut obj, x0, None, settings);
    for _ in 0..settings.rebuilds {
        if obj.evals >= settings.max_evals {
            break;
        }
        let (x2, f2, c2) = run_once(&mut obj, &x, Some(fx), settings);
        let improved = f2 < fx - settings.ftol;
        if f2 < fx {
            x = x2;
            fx = f2;
        }
        converged = c2;
        if !improved {
            break;
        }
    }
    SimplexResult {
        x,
        f: fx,
        evals: obj.evals,
        converged,
    }
}
