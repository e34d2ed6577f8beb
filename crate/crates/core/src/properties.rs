//! Transition moments, oscillator and rotational strengths.
//!
//! For an excitation `O_k^dag = sum_I (Z_I O_I - Y_I O_I^dag)` a one-body
//! operator `X = sum_pq x_pq E_pq` has `<0|X|k> = <[X, O_k^dag]>`, so every
//! moment is a contraction of `<[X, O_I]>` and `<[X, O_I^dag]>` with the
//! amplitudes.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermion::{jordan_wigner, FermionOperator};
use crate::integrals::{PropertyIntegrals, PropertyKind};
use crate::qeom::{EomMatrices, EomState, PauliContext};

/// Smallest accepted `sqrt(<[O_k, O_k^dag]>)`.
pub const MIN_NORM: f64 = 1e-8;

/// `sum_pq m_pq E_pq` over spatial orbitals.
pub fn one_body_operator(m: &DMatrix<f64>) -> FermionOperator {
    let mut f = FermionOperator::zero();
    for p in 0..m.nrows() {
        for q in 0..m.ncols() {
            if m[(p, q)] != 0.0 {
                for s in 0..2 {
                    f.push(Complex64::new(m[(p, q)], 0.0), vec![(2 * p + s, true), (2 * q + s, false)]);
                }
            }
        }
    }
    f
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMoments {
    /// `<0|mu|k>` with `mu = -r`.
    pub electric: [f64; 3],
    /// `sum_pq M_pq <0|E_pq|k>` with `M = -1/2 <p|r x nabla|q>`; real for real states.
    pub magnetic: [f64; 3],
    /// `sqrt(<[O_k, O_k^dag]>)` of the normalized amplitudes.
    pub norm_denominator: f64,
    /// Largest imaginary part dropped from any component.
    pub max_imaginary: f64,
}

/// Commutator vectors for the six property components, computed once per run.
pub struct MomentVectors {
    /// Per component: `<[X, O_I]>`, `<[X, O_I^dag]>`.
    electric: [(Vec<Complex64>, Vec<Complex64>); 3],
    magnetic: [(Vec<Complex64>, Vec<Complex64>); 3],
}

fn check_kind(p: &PropertyIntegrals, kind: PropertyKind, n: usize) -> Result<()> {
    if p.kind != kind {
        return Err(Error::InvalidIntegrals(format!("expected {} integrals, got {}", kind.label(), p.kind.label())));
    }
    if let Some(issue) = p.issues().into_iter().next() {
        return Err(Error::InvalidIntegrals(issue));
    }
    if p.n_spatial() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.n_spatial(),
        });
    }
    Ok(())
}

impl MomentVectors {
    /// Integrals must already be in the optimized orbital basis.
    pub fn new(ctx: &PauliContext, dipole: &PropertyIntegrals, magnetic: &PropertyIntegrals) -> Result<Self> {
        let spec = &ctx.basis.spec;
        check_kind(dipole, PropertyKind::ElectricDipole, spec.n_spatial())?;
        check_kind(magnetic, PropertyKind::MagneticDipole, spec.n_spatial())?;
        let vecs = |p: &PropertyIntegrals| -> Result<[(Vec<Complex64>, Vec<Complex64>); 3]> {
            let mut out: [(Vec<Complex64>, Vec<Complex64>); 3] = Default::default();
            for (k, m) in p.components.iter().enumerate() {
                let x = jordan_wigner(&one_body_operator(m), spec.n_qubits())?;
                out[k] = if x.is_empty() {
                    (vec![Complex64::new(0.0, 0.0); ctx.ops.len()], vec![Complex64::new(0.0, 0.0); ctx.ops.len()])
                } else {
                    ctx.commutators_with(&x)
                };
            }
            Ok(out)
        };
        Ok(MomentVectors {
            electric: vecs(dipole)?,
            magnetic: vecs(magnetic)?,
        })
    }

    /// Moments of one normalized excited state.
    pub fn moments(&self, matrices: &EomMatrices, state: &EomState) -> Result<TransitionMoments> {
        let norm = excitation_norm(matrices, state);
        if norm <= MIN_NORM * MIN_NORM {
            return Err(Error::DegenerateState(norm.max(0.0).sqrt()));
        }
        let norm = norm.sqrt();
        let mut max_im = 0.0f64;
        let mut contract = |(a, b): &(Vec<Complex64>, Vec<Complex64>)| -> f64 {
            let mut v = Complex64::new(0.0, 0.0);
            for i in 0..a.len() {
                v += state.z[i] * a[i] - state.y[i] * b[i];
            }
            v /= norm;
            max_im = max_im.max(v.im.abs());
            v.re
        };
        let electric = std::array::from_fn(|k| -contract(&self.electric[k]));
        let magnetic = std::array::from_fn(|k| contract(&self.magnetic[k]));
        Ok(TransitionMoments {
            electric,
            magnetic,
            norm_denominator: norm,
            max_imaginary: max_im,
        })
    }
}

/// `<[O_k, O_k^dag]> = v^dag S v`.
pub fn excitation_norm(m: &EomMatrices, s: &EomState) -> f64 {
    let z = nalgebra::DVector::from_column_slice(&s.z);
    let y = nalgebra::DVector::from_column_slice(&s.y);
    let conj = |x: &DMatrix<Complex64>| x.map(|c| c.conj());
    let v = z.dotc(&(&m.sigma * &z)) + z.dotc(&(&m.delta * &y)) - y.dotc(&(conj(&m.delta) * &z)) - y.dotc(&(conj(&m.sigma) * &y));
    v.re
}

/// `f = 2/3 E |mu|^2`, atomic units.
pub fn oscillator_strength(energy: f64, mu: &[f64; 3]) -> f64 {
    2.0 / 3.0 * energy * mu.iter().map(|x| x * x).sum::<f64>()
}

/// `R = mu . m` in the length gauge.
pub fn rotational_strength(mu: &[f64; 3], m: &[f64; 3]) -> f64 {
    mu.iter().zip(m).map(|(a, b)| a * b).sum()
}
