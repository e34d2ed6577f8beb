//! `A`, `B`, `Sigma`, `Delta` from their working equations.
//!
//! Each block element is a short linear combination of operator-product
//! expectations. The tables below are shared by the Pauli path and the dense
//! oracle so both evaluate literally the same expressions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::{EomBasis, OperatorKind};
use super::evaluator::{Grouped, ProductEvaluator};
use crate::pauli::PauliSum;
use crate::statevector::Statevector;

/// Factor of an operator product: the Hamiltonian or a basis operator (row `I`, column `J`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    H,
    I,
    Id,
    J,
    Jd,
}

pub type Terms = &'static [(f64, &'static [Slot])];

use Slot::{Id, Jd, H, I, J};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Matrix {
    A,
    B,
    Sigma,
    Delta,
}

/// Working-equation terms for block `(kind_I, kind_J)`, or `None` for blocks
/// filled from the transposed block.
pub fn terms(m: Matrix, ki: OperatorKind, kj: OperatorKind) -> Option<Terms> {
    use OperatorKind::{G, Q};
    Some(match (m, ki, kj) {
        (Matrix::A, Q, Q) => &[(1.0, &[Jd, H, I]), (-0.5, &[Jd, I, H]), (-0.5, &[H, Jd, I])],
        (Matrix::A, Q, G) => &[(1.0, &[Jd, H, I]), (-0.5, &[H, I, Jd]), (-0.5, &[H, Jd, I])],
        (Matrix::A, G, Q) => return None,
        (Matrix::A, G, G) => &[
            (1.0, &[I, H, Jd]),
            (1.0, &[Jd, H, I]),
            (-0.5, &[H, I, Jd]),
            (-0.5, &[Jd, I, H]),
            (-0.5, &[I, Jd, H]),
            (-0.5, &[H, Jd, I]),
        ],
        (Matrix::B, Q, Q) => &[(0.5, &[H, I, J]), (0.5, &[H, J, I])],
        (Matrix::B, Q, G) => &[(0.5, &[H, J, I]), (-1.0, &[J, H, I]), (0.5, &[H, I, J])],
        (Matrix::B, G, Q) => return None,
        (Matrix::B, G, G) => &[(-1.0, &[I, H, J]), (1.0, &[I, J, H]), (1.0, &[H, J, I]), (-1.0, &[J, H, I])],
        (Matrix::Sigma, Q, Q) => &[(1.0, &[Id, J])],
        (Matrix::Sigma, _, _) => &[(1.0, &[Id, J]), (-1.0, &[J, Id])],
        (Matrix::Delta, _, _) => &[(-1.0, &[I, J]), (1.0, &[J, I])],
    })
}

#[derive(Clone, Debug)]
pub struct EomMatrices {
    pub a: DMatrix<Complex64>,
    pub b: DMatrix<Complex64>,
    pub sigma: DMatrix<Complex64>,
    pub delta: DMatrix<Complex64>,
    /// `max |B_GG - B_GG^T|` before symmetrization.
    pub b_raw_asymmetry: f64,
    pub n_q: usize,
}

fn cmax(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |a, v| a.max(v.norm()))
}

impl EomMatrices {
    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn a_hermiticity(&self) -> f64 {
        cmax(&(&self.a - self.a.adjoint()))
    }

    pub fn b_symmetry(&self) -> f64 {
        cmax(&(&self.b - self.b.transpose()))
    }

    pub fn sigma_hermiticity(&self) -> f64 {
        cmax(&(&self.sigma - self.sigma.adjoint()))
    }

    pub fn delta_max(&self) -> f64 {
        cmax(&self.delta)
    }

    /// Largest `Sigma` entry coupling a `q` operator with a `G` operator.
    pub fn sigma_qg_max(&self) -> f64 {
        let n = self.dim();
        let mut m = 0.0f64;
        for i in 0..self.n_q {
            for j in self.n_q..n {
                m = m.max(self.sigma[(i, j)].norm()).max(self.sigma[(j, i)].norm());
            }
        }
        m
    }
}

/// Build all four matrices with `eval(terms, I, J)` supplying each element.
pub fn assemble<F>(kinds: &[OperatorKind], eval: F) -> EomMatrices
where
    F: Fn(Terms, usize, usize) -> Complex64 + Sync,
{
    let n = kinds.len();
    let n_q = kinds.iter().filter(|k| **k == OperatorKind::Q).count();
    let build = |m: Matrix| -> DMatrix<Complex64> {
        let jobs: Vec<(usize, usize, Terms)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| terms(m, kinds[i], kinds[j]).map(|t| (i, j, t)))
            .collect();
        let vals: Vec<Complex64> = jobs.par_iter().map(|&(i, j, t)| eval(t, i, j)).collect();
        let mut out = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for (&(i, j, _), v) in jobs.iter().zip(vals) {
            out[(i, j)] = v;
        }
        out
    };
    let mut a = build(Matrix::A);
    let mut b = build(Matrix::B);
    let sigma = build(Matrix::Sigma);
    let delta = build(Matrix::Delta);
    // G-q blocks by Hermiticity of A and symmetry of B
    for i in n_q..n {
        for j in 0..n_q {
            a[(i, j)] = a[(j, i)].conj();
            b[(i, j)] = b[(j, i)];
        }
    }
    let mut asym = 0.0f64;
    for i in n_q..n {
        for j in i + 1..n {
            asym = asym.max((b[(i, j)] - b[(j, i)]).norm());
            let avg = 0.5 * (b[(i, j)] + b[(j, i)]);
            b[(i, j)] = avg;
            b[(j, i)] = avg;
        }
    }
    EomMatrices {
        a,
        b,
        sigma,
        delta,
        b_raw_asymmetry: asym,
        n_q,
    }
}

/// Pauli-path evaluation context: grouped Hamiltonian and basis operators.
pub struct PauliContext<'a> {
    pub eval: ProductEvaluator,
    pub h: Grouped,
    pub ops: Vec<Grouped>,
    pub ops_dag: Vec<Grouped>,
    pub basis: &'a EomBasis,
}

impl<'a> PauliContext<'a> {
    /// `hamiltonian` is the full-register qubit Hamiltonian; `state` the active register.
    pub fn new(basis: &'a EomBasis, hamiltonian: &PauliSum, state: Statevector) -> Self {
        let eval = ProductEvaluator::new(&basis.spec, state);
        let h = eval.group(hamiltonian);
        let ops = basis.ops.iter().map(|o| eval.group(&o.pauli)).collect();
        let ops_dag = basis.ops.iter().map(|o| eval.group(&o.pauli.adjoint())).collect();
        PauliContext {
            eval,
            h,
            ops,
            ops_dag,
            basis,
        }
    }

    pub fn element(&self, t: Terms, i: usize, j: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, slots) in t {
            let f: Vec<&Grouped> = slots
                .iter()
                .map(|s| match s {
                    H => &self.h,
                    I => &self.ops[i],
                    Id => &self.ops_dag[i],
                    J => &self.ops[j],
                    Jd => &self.ops_dag[j],
                })
                .collect();
            acc += *c * self.eval.expectation(&f);
        }
        acc
    }

    pub fn matrices(&self) -> EomMatrices {
        let kinds: Vec<OperatorKind> = self.basis.ops.iter().map(|o| o.kind).collect();
        assemble(&kinds, |t, i, j| self.element(t, i, j))
    }

    /// `E_I = <[H, O_I]>` for every basis operator.
    pub fn gradient_diagnostic(&self) -> Vec<f64> {
        (0..self.ops.len())
            .into_par_iter()
            .map(|i| (self.eval.expectation(&[&self.h, &self.ops[i]]) - self.eval.expectation(&[&self.ops[i], &self.h])).norm())
            .collect()
    }

    /// `<[X, O_I]>` and `<[X, O_I^dag]>` for a one-body operator `X`.
    pub fn commutators_with(&self, x: &PauliSum) -> (Vec<Complex64>, Vec<Complex64>) {
        let gx = self.eval.group(x);
        let c = |o: &Grouped| self.eval.expectation(&[&gx, o]) - self.eval.expectation(&[o, &gx]);
        let a: Vec<Complex64> = self.ops.par_iter().map(c).collect();
        let b: Vec<Complex64> = self.ops_dag.par_iter().map(c).collect();
        (a, b)
    }
}
