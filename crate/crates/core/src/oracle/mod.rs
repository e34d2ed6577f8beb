//! Brute-force reference: dense operators, determinant-space CI, and dense
//! evaluation of the equation-of-motion working equations.
//!
//! Nothing here goes through the statevector simulator, the frozen-core
//! projection, or the grouped product evaluator.

mod ci;
mod eom;

pub use ci::{casci, determinant_hamiltonian, spin_squared_expectation, CiResult};
pub use eom::{apply_fermion, dense_eom_matrices, embed_state};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{i_pow, PauliString, PauliSum};

/// Largest register the dense oracle accepts.
pub const MAX_QUBITS: usize = 14;

/// Dense matrix in the computational basis, qubit 0 most significant.
#[derive(Clone, Debug)]
pub struct DenseOperator {
    pub n_qubits: usize,
    pub matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).iter().fold(0.0, |a, v| a.max(v.norm()))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::OracleTooLarge { max: MAX_QUBITS, got: n });
    }
    Ok(())
}

fn single(p: &PauliString, q: usize) -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match ((p.x_mask() >> q) & 1, (p.z_mask() >> q) & 1) {
        (0, 0) => [[l, o], [o, l]],
        (1, 0) => [[o, l], [l, o]],
        (1, 1) => [[o, -i], [i, o]],
        _ => [[l, o], [o, -l]],
    }
}

/// Kronecker-product expansion of a Pauli sum.
pub fn to_dense(op: &PauliSum) -> Result<DenseOperator> {
    let n = op.n_qubits();
    check_size(n)?;
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for (p, c) in op.iter() {
        // each row has exactly one nonzero entry
        for r in 0..dim {
            let mut col = 0usize;
            let mut v = *c;
            for q in 0..n {
                let rb = (r >> (n - 1 - q)) & 1;
                let s = single(p, q);
                let cb = if s[rb][0].norm() > 0.0 { 0 } else { 1 };
                v *= s[rb][cb];
                col |= cb << (n - 1 - q);
            }
            m[(r, col)] += v;
        }
    }
    Ok(DenseOperator { n_qubits: n, matrix: m })
}

/// `op |v>` without forming the matrix.
pub fn apply(op: &PauliSum, v: &[Complex64]) -> Vec<Complex64> {
    let n = op.n_qubits();
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (p, c) in op.iter() {
        let mut xm = 0usize;
        let mut zm = 0usize;
        for q in 0..n {
            xm |= (((p.x_mask() >> q) & 1) as usize) << (n - 1 - q);
            zm |= (((p.z_mask() >> q) & 1) as usize) << (n - 1 - q);
        }
        let ph = c * i_pow((p.x_mask() & p.z_mask()).count_ones());
        for (b, a) in v.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let s = if (b & zm).count_ones() % 2 == 1 { -ph } else { ph };
            out[b ^ xm] += s * a;
        }
    }
    out
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Basis indices with `n_particles` set bits split evenly between even (alpha)
/// and odd (beta) qubits.
pub fn sector_indices(n_qubits: usize, n_particles: usize) -> Vec<usize> {
    (0..1usize << n_qubits)
        .filter(|&b| {
            let mut na = 0;
            let mut nb = 0;
            for q in 0..n_qubits {
                if (b >> (n_qubits - 1 - q)) & 1 == 1 {
                    if q % 2 == 0 {
                        na += 1;
                    } else {
                        nb += 1;
                    }
                }
            }
            na + nb == n_particles && na == nb
        })
        .collect()
}

/// Ascending eigenpairs, optionally restricted to an `S_z = 0` particle sector.
/// Eigenvectors are returned in the full `2^n` basis.
pub fn eigensolve(op: &DenseOperator, n_particles: Option<usize>) -> (Vec<f64>, Vec<DVector<Complex64>>) {
    let dim = op.dim();
    let idx: Vec<usize> = match n_particles {
        Some(k) => sector_indices(op.n_qubits, k),
        None => (0..dim).collect(),
    };
    let sub = DMatrix::from_fn(idx.len(), idx.len(), |i, j| op.matrix[(idx[i], idx[j])]);
    let herm = (&sub + sub.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..idx.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = order
        .iter()
        .map(|&k| {
            let mut v = DVector::from_element(dim, Complex64::new(0.0, 0.0));
            for (i, &b) in idx.iter().enumerate() {
                v[b] = eig.eigenvectors[(i, k)];
            }
            v
        })
        .collect();
    (vals, vecs)
}

/// `<ground| op |excited>` by dense algebra.
pub fn exact_transition_moment(ground: &[Complex64], excited: &[Complex64], op: &PauliSum) -> Complex64 {
    inner(ground, &apply(op, excited))
}
