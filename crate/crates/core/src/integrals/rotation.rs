use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Real orbital rotation `U = exp(kappa)` with `kappa` antisymmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitalRotation {
    kappa: DMatrix<f64>,
    free: Vec<(usize, usize)>,
}

impl OrbitalRotation {
    /// Zero rotation over the given free pairs `(p, q)`, `p > q`.
    pub fn zero(n: usize, free: Vec<(usize, usize)>) -> Self {
        OrbitalRotation {
            kappa: DMatrix::zeros(n, n),
            free,
        }
    }

    /// `kappa[p][q] = x`, `kappa[q][p] = -x` for each free pair.
    pub fn from_parameters(n: usize, free: Vec<(usize, usize)>, params: &[f64]) -> Result<Self> {
        if params.len() != free.len() {
            return Err(Error::DimensionMismatch {
                expected: free.len(),
                got: params.len(),
            });
        }
        let mut kappa = DMatrix::zeros(n, n);
        for (&(p, q), &x) in free.iter().zip(params) {
            if p >= n || q >= n || p == q {
                return Err(Error::IndexOutOfRange {
                    index: p.max(q),
                    n_modes: n,
                });
            }
            kappa[(p, q)] = x;
            kappa[(q, p)] = -x;
        }
        Ok(OrbitalRotation { kappa, free })
    }

    pub fn kappa(&self) -> &DMatrix<f64> {
        &self.kappa
    }

    pub fn free_pairs(&self) -> &[(usize, usize)] {
        &self.free
    }

    pub fn parameters(&self) -> Vec<f64> {
        self.free.iter().map(|&(p, q)| self.kappa[(p, q)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.kappa.iter().all(|&v| v == 0.0)
    }

    pub fn unitary(&self) -> DMatrix<f64> {
        expm(&self.kappa)
    }
}

/// Matrix exponential by scaling and squaring of a Taylor series.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.iter().map(|v| v.abs()).fold(0.0, f64::max) * n as f64;
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let x = a * scale;
    let mut sum = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..=30 {
        term = &term * &x / k as f64;
        sum += &term;
        if term.amax() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_by_two_rotation() {
        let t = 0.7f64;
        let k = DMatrix::from_row_slice(2, 2, &[0.0, -t, t, 0.0]);
        let u = expm(&k);
        let e = DMatrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
        assert!((u - e).amax() < 1e-14);
    }

    #[test]
    fn zero_is_identity() {
        assert_eq!(expm(&DMatrix::zeros(4, 4)), DMatrix::identity(4, 4));
    }

    #[test]
    fn parameter_layout() {
        let r = OrbitalRotation::from_parameters(3, vec![(2, 0), (1, 0)], &[0.1, -0.2]).unwrap();
        assert_eq!(r.kappa()[(2, 0)], 0.1);
        assert_eq!(r.kappa()[(0, 2)], -0.1);
        assert_eq!(r.kappa()[(1, 2)], 0.0);
        assert_eq!(r.parameters(), vec![0.1, -0.2]);
        assert!(OrbitalRotation::from_parameters(3, vec![(2, 0)], &[]).is_err());
    }

    fn antisym(n: usize, v: &[f64]) -> DMatrix<f64> {
        let mut k = DMatrix::zeros(n, n);
        let mut it = v.iter();
        for p in 0..n {
            for q in 0..p {
                let x = *it.next().unwrap();
                k[(p, q)] = x;
                k[(q, p)] = -x;
            }
        }
        k
    }

    proptest! {
        #[test]
        fn exponential_is_orthogonal(v in prop::collection::vec(-1.5f64..1.5, 10)) {
            let u = expm(&antisym(5, &v));
            let err = (&u * u.transpose() - DMatrix::<f64>::identity(5, 5)).amax();
            prop_assert!(err < 1e-13);
        }

        #[test]
        fn commuting_generators_add(v in prop::collection::vec(-1.0f64..1.0, 6), a in -2.0f64..2.0, b in -2.0f64..2.0) {
            let k = antisym(4, &v);
            let lhs = expm(&(&k * a)) * expm(&(&k * b));
            let rhs = expm(&(&k * (a + b)));
            prop_assert!((lhs - rhs).amax() < 1e-12);
        }
    }
}
