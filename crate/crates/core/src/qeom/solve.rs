use faer::Mat;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::matrices::EomMatrices;
use crate::error::{Error, Result};

/// Metric eigenvalues below this are treated as linear dependencies.
pub const LINEAR_DEP_TOL: f64 = 1e-8;
/// Smallest excitation energy kept, in Hartree.
pub const MIN_EXCITATION: f64 = 1e-8;
/// Largest imaginary part accepted in an eigenvalue.
pub const IMAG_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct EomState {
    /// Excitation energy in Hartree.
    pub energy: f64,
    /// Excitation amplitudes `Z` and de-excitation amplitudes `Y`, normalized so
    /// `Z^dag Sigma Z - Y^dag Sigma^* Y + ... = 1`.
    pub z: Vec<Complex64>,
    pub y: Vec<Complex64>,
    /// `v^dag S v` before normalization.
    pub metric_norm: f64,
}

#[derive(Clone, Debug)]
pub struct EomSolution {
    pub states: Vec<EomState>,
    /// Metric modes dropped as linearly dependent.
    pub n_discarded: usize,
    /// Worst distance from a kept `w` to the nearest `-w` of the reduced problem.
    pub pairing_error: f64,
    /// All eigenvalues of the reduced problem, ascending by real part.
    pub eigenvalues: Vec<Complex64>,
}

fn block2(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, c: &DMatrix<Complex64>, d: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = a.nrows();
    let m = a.ncols();
    let mut out = DMatrix::from_element(2 * n, 2 * m, Complex64::new(0.0, 0.0));
    out.view_mut((0, 0), (n, m)).copy_from(a);
    out.view_mut((0, m), (n, m)).copy_from(b);
    out.view_mut((n, 0), (n, m)).copy_from(c);
    out.view_mut((n, m), (n, m)).copy_from(d);
    out
}

/// Solve `E v = w S v` with `E = [[A, B], [B*, A*]]`, `S = [[Sigma, Delta], [-Delta*, -Sigma*]]`.
pub fn solve(m: &EomMatrices, linear_dep_tol: f64) -> Result<EomSolution> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::NoExcitations);
    }
    let conj = |x: &DMatrix<Complex64>| x.map(|v| v.conj());
    let e2 = block2(&m.a, &m.b, &conj(&m.b), &conj(&m.a));
    let s2 = block2(&m.sigma, &m.delta, &(-conj(&m.delta)), &(-conj(&m.sigma)));

    // canonical orthogonalization on Sigma
    let herm = (&m.sigma + m.sigma.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let mut keep: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > linear_dep_tol).collect();
    keep.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let nk = keep.len();
    if nk == 0 {
        return Err(Error::NoExcitations);
    }
    let mut x = DMatrix::from_element(n, nk, Complex64::new(0.0, 0.0));
    for (c, &k) in keep.iter().enumerate() {
        let s = eig.eigenvalues[k].sqrt();
        x.set_column(c, &(eig.eigenvectors.column(k) / Complex64::new(s, 0.0)));
    }
    let zero = DMatrix::from_element(n, nk, Complex64::new(0.0, 0.0));
    let t = block2(&x, &zero, &zero, &conj(&x));
    let e2r = t.adjoint() * &e2 * &t;
    let s2r = t.adjoint() * &s2 * &t;
    let red = s2r
        .lu()
        .solve(&e2r)
        .ok_or_else(|| Error::Eigensolver("reduced metric is singular".into()))?;

    let fm = Mat::<Complex64>::from_fn(2 * nk, 2 * nk, |i, j| red[(i, j)]);
    let evd = fm.eigen().map_err(|e| Error::Eigensolver(format!("{:?}", e)))?;
    let vals: Vec<Complex64> = (0..2 * nk).map(|k| evd.S().column_vector()[k]).collect();
    let u = evd.U();

    if let Some(w) = vals.iter().find(|w| w.im.abs() > IMAG_TOL) {
        return Err(Error::Instability { re: w.re, im: w.im.abs() });
    }
    let mut states = Vec::new();
    for (k, w) in vals.iter().enumerate() {
        if w.re <= MIN_EXCITATION {
            continue;
        }
        let wv = nalgebra::DVector::from_fn(2 * nk, |i, _| u[(i, k)]);
        let mut v = &t * wv;
        let norm = (v.adjoint() * &s2 * &v)[(0, 0)].re;
        if norm <= 0.0 {
            continue;
        }
        v /= Complex64::new(norm.sqrt(), 0.0);
        // fix the phase: largest component real and positive
        let big = v.iter().copied().fold(Complex64::new(0.0, 0.0), |a, c| if c.norm() > a.norm() + 1e-12 { c } else { a });
        if big.norm() > 0.0 {
            v *= big.conj() / big.norm();
        }
        states.push(EomState {
            energy: w.re,
            z: v.rows(0, n).iter().copied().collect(),
            y: v.rows(n, n).iter().copied().collect(),
            metric_norm: norm,
        });
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let pairing_error = states
        .iter()
        .map(|s| vals.iter().map(|w| (w + s.energy).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let mut eigenvalues = vals;
    eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(EomSolution {
        states,
        n_discarded: n - nk,
        pairing_error,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn mats(a: DMatrix<Complex64>, b: DMatrix<Complex64>, s: DMatrix<Complex64>) -> EomMatrices {
        let n = a.nrows();
        EomMatrices {
            a,
            b,
            sigma: s,
            delta: DMatrix::from_element(n, n, c(0.0)),
            b_raw_asymmetry: 0.0,
            n_q: 0,
        }
    }

    #[test]
    fn two_level_rpa() {
        // A = [[a]], B = [[b]] gives w = sqrt(a^2 - b^2)
        let m = mats(DMatrix::from_element(1, 1, c(0.5)), DMatrix::from_element(1, 1, c(0.1)), DMatrix::from_element(1, 1, c(1.0)));
        let s = solve(&m, LINEAR_DEP_TOL).unwrap();
        assert_eq!(s.states.len(), 1);
        assert!((s.states[0].energy - (0.25f64 - 0.01).sqrt()).abs() < 1e-12);
        assert!(s.pairing_error < 1e-12);
        let st = &s.states[0];
        let nrm = st.z[0].norm_sqr() - st.y[0].norm_sqr();
        assert!((nrm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn duplicated_operator_is_removed() {
        let a = DMatrix::from_row_slice(2, 2, &[c(0.3), c(0.05), c(0.05), c(0.7)]);
        let s1 = solve(&mats(a.clone(), DMatrix::from_element(2, 2, c(0.0)), DMatrix::identity(2, 2)), LINEAR_DEP_TOL).unwrap();
        // third operator equal to the first
        let p = DMatrix::from_row_slice(3, 2, &[c(1.0), c(0.0), c(0.0), c(1.0), c(1.0), c(0.0)]);
        let a3 = &p * &a * p.transpose();
        let s3 = &p * p.transpose();
        let r = solve(&mats(a3, DMatrix::from_element(3, 3, c(0.0)), s3), LINEAR_DEP_TOL).unwrap();
        assert_eq!(r.n_discarded, 1);
        assert_eq!(r.states.len(), 2);
        for (x, y) in r.states.iter().zip(&s1.states) {
            assert!((x.energy - y.energy).abs() < 1e-12);
        }
    }

    #[test]
    fn null_metric_and_instability() {
        let z = DMatrix::from_element(1, 1, c(0.0));
        assert!(matches!(solve(&mats(z.clone(), z.clone(), z.clone()), LINEAR_DEP_TOL), Err(Error::NoExcitations)));
        // |B| > |A| makes the pair imaginary
        let m = mats(DMatrix::from_element(1, 1, c(0.1)), DMatrix::from_element(1, 1, c(0.5)), DMatrix::from_element(1, 1, c(1.0)));
        assert!(matches!(solve(&m, LINEAR_DEP_TOL), Err(Error::Instability { .. })));
    }
}
