//! BFGS with Armijo backtracking.

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BfgsOptions {
    /// Converged when the gradient infinity norm is at or below this.
    pub gtol: f64,
    pub max_iter: usize,
    pub c1: f64,
    pub shrink: f64,
    pub max_backtracks: usize,
    /// Cap on the infinity norm of a trial step.
    pub max_step: f64,
}

impl Default for BfgsOptions {
    fn default() -> Self {
        BfgsOptions {
            gtol: 1e-4,
            max_iter: 200,
            c1: 1e-4,
            shrink: 0.5,
            max_backtracks: 40,
            max_step: 0.5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TracePoint {
    pub iteration: usize,
    pub value: f64,
    pub gradient_inf_norm: f64,
}

#[derive(Clone, Debug)]
pub struct BfgsResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub gradient: Vec<f64>,
    pub gradient_inf_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<TracePoint>,
}

pub trait Objective {
    fn value(&self, x: &[f64]) -> Result<f64>;
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>>;
}

pub(crate) fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn minimize<O: Objective + ?Sized>(obj: &O, x0: &[f64], opts: &BfgsOptions) -> Result<BfgsResult> {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut f = obj.value(&x)?;
    let mut g = if n == 0 { Vec::new() } else { obj.gradient(&x)? };
    let mut gn = inf_norm(&g);
    let mut trace = vec![TracePoint {
        iteration: 0,
        value: f,
        gradient_inf_norm: gn,
    }];
    log::info!("bfgs iter 0 value {:.12} |g| {:.3e}", f, gn);
    let identity = |n: usize| {
        let mut h = vec![0.0; n * n];
        for i in 0..n {
            h[i * n + i] = 1.0;
        }
        h
    };
    let mut hinv = identity(n);
    let mut it = 0;
    while gn > opts.gtol && it < opts.max_iter {
        let mut p: Vec<f64> = (0..n).map(|i| -dot(&hinv[i * n..(i + 1) * n], &g)).collect();
        if dot(&p, &g) >= 0.0 {
            hinv = identity(n);
            p = g.iter().map(|v| -v).collect();
        }
        let pn = inf_norm(&p);
        if pn > opts.max_step {
            p.iter_mut().for_each(|v| *v *= opts.max_step / pn);
        }
        let slope = dot(&p, &g);
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..opts.max_backtracks {
            let xt: Vec<f64> = x.iter().zip(&p).map(|(a, b)| a + alpha * b).collect();
            let ft = obj.value(&xt)?;
            if ft <= f + opts.c1 * alpha * slope {
                accepted = Some((xt, ft));
                break;
            }
            alpha *= opts.shrink;
        }
        let Some((xn, fnew)) = accepted else {
            // no decrease along a descent direction: resolution floor of the objective
            log::warn!("bfgs line search failed at iteration {} (|g| {:.3e})", it, gn);
            break;
        };
        let gnew = obj.gradient(&xn)?;
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gnew.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-14 {
            if it == 0 {
                // scale the initial inverse Hessian
                let yy = dot(&y, &y);
                hinv.iter_mut().for_each(|v| *v *= sy / yy);
            }
            let hy: Vec<f64> = (0..n).map(|i| dot(&hinv[i * n..(i + 1) * n], &y)).collect();
            let yhy = dot(&y, &hy);
            let r = 1.0 / sy;
            for i in 0..n {
                for j in 0..n {
                    hinv[i * n + j] += (1.0 + yhy * r) * r * s[i] * s[j] - r * (hy[i] * s[j] + s[i] * hy[j]);
                }
            }
        }
        x = xn;
        f = fnew;
        g = gnew;
        gn = inf_norm(&g);
        it += 1;
        trace.push(TracePoint {
            iteration: it,
            value: f,
            gradient_inf_norm: gn,
        });
        log::info!("bfgs iter {} value {:.12} |g| {:.3e}", it, f, gn);
    }
    Ok(BfgsResult {
        converged: gn <= opts.gtol,
        x,
        value: f,
        gradient: g,
        gradient_inf_norm: gn,
        iterations: it,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Rosenbrock;
    impl Objective for Rosenbrock {
        fn value(&self, x: &[f64]) -> Result<f64> {
            Ok((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2))
        }
        fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
            Ok(vec![
                -2.0 * (1.0 - x[0]) - 400.0 * x[0] * (x[1] - x[0] * x[0]),
                200.0 * (x[1] - x[0] * x[0]),
            ])
        }
    }

    struct Quadratic(Vec<f64>);
    impl Objective for Quadratic {
        fn value(&self, x: &[f64]) -> Result<f64> {
            Ok(x.iter().zip(&self.0).map(|(a, d)| 0.5 * d * a * a).sum())
        }
        fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
            Ok(x.iter().zip(&self.0).map(|(a, d)| d * a).collect())
        }
    }

    #[test]
    fn rosenbrock() {
        let opts = BfgsOptions {
            gtol: 1e-8,
            max_iter: 500,
            max_step: 10.0,
            ..Default::default()
        };
        let r = minimize(&Rosenbrock, &[-1.2, 1.0], &opts).unwrap();
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-6 && (r.x[1] - 1.0).abs() < 1e-6);
        assert!(r.trace.windows(2).all(|w| w[1].value <= w[0].value));
    }

    #[test]
    fn quadratic_and_empty() {
        let r = minimize(&Quadratic(vec![1.0, 10.0, 0.1]), &[1.0, -1.0, 2.0], &BfgsOptions::default()).unwrap();
        assert!(r.converged && r.gradient_inf_norm <= 1e-4);
        let r = minimize(&Quadratic(vec![]), &[], &BfgsOptions::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 0);
    }
}
