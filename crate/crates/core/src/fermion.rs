//! Second-quantized operators and the Jordan–Wigner map.
//!
//! Spatial orbital `p` carries spin orbitals `2p` (alpha) and `2p + 1` (beta).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};

/// One ladder operator: `(spin_orbital, is_creation)`.
pub type Ladder = (usize, bool);

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FermionOperator {
    terms: Vec<(Complex64, Vec<Ladder>)>,
}

impl FermionOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity(c: f64) -> Self {
        let mut f = Self::zero();
        f.push(Complex64::new(c, 0.0), Vec::new());
        f
    }

    pub fn term(coeff: Complex64, ops: Vec<Ladder>) -> Self {
        let mut f = Self::zero();
        f.push(coeff, ops);
        f
    }

    pub fn push(&mut self, coeff: Complex64, ops: Vec<Ladder>) {
        self.terms.push((coeff, ops));
    }

    pub fn terms(&self) -> &[(Complex64, Vec<Ladder>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_mode(&self) -> Option<usize> {
        self.terms.iter().flat_map(|(_, o)| o.iter().map(|l| l.0)).max()
    }

    /// Merge identical ladder sequences and drop zero coefficients.
    /// Sequences are compared literally, no reordering is attempted.
    pub fn simplify(&mut self) {
        let mut merged: Vec<(Complex64, Vec<Ladder>)> = Vec::with_capacity(self.terms.len());
        let mut idx = std::collections::BTreeMap::new();
        for (c, ops) in self.terms.drain(..) {
            match idx.get(&ops) {
                Some(&i) => {
                    let e: &mut (Complex64, Vec<Ladder>) = &mut merged[i];
                    e.0 += c;
                }
                None => {
                    idx.insert(ops.clone(), merged.len());
                    merged.push((c, ops));
                }
            }
        }
        merged.retain(|(c, _)| c.norm() >= crate::pauli::PRUNE_TOL);
        self.terms = merged;
    }

    pub fn add(&self, other: &FermionOperator) -> FermionOperator {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.simplify();
        out
    }

    pub fn scale(&self, s: Complex64) -> FermionOperator {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.0 *= s;
        }
        out.simplify();
        out
    }

    pub fn mul(&self, other: &FermionOperator) -> FermionOperator {
        let mut out = Self::zero();
        for (ca, oa) in &self.terms {
            for (cb, ob) in &other.terms {
                let mut ops = oa.clone();
                ops.extend_from_slice(ob);
                out.push(ca * cb, ops);
            }
        }
        out.simplify();
        out
    }

    /// Hermitian conjugate: reverse each product and flip daggers.
    pub fn adjoint(&self) -> FermionOperator {
        let mut out = Self::zero();
        for (c, ops) in &self.terms {
            out.push(c.conj(), ops.iter().rev().map(|&(p, d)| (p, !d)).collect());
        }
        out
    }

    pub fn creation(p: usize) -> Self {
        Self::term(Complex64::new(1.0, 0.0), vec![(p, true)])
    }

    pub fn annihilation(p: usize) -> Self {
        Self::term(Complex64::new(1.0, 0.0), vec![(p, false)])
    }

    /// Singlet one-electron excitation `E_pq = sum_sigma a+_{p sigma} a_{q sigma}` on spatial indices.
    pub fn singlet_excitation(p: usize, q: usize) -> Self {
        let mut f = Self::zero();
        for s in 0..2 {
            f.push(Complex64::new(1.0, 0.0), vec![(2 * p + s, true), (2 * q + s, false)]);
        }
        f
    }

    /// Total particle number over `n_spin_orbitals` modes.
    pub fn number(n_spin_orbitals: usize) -> Self {
        let mut f = Self::zero();
        for p in 0..n_spin_orbitals {
            f.push(Complex64::new(1.0, 0.0), vec![(p, true), (p, false)]);
        }
        f
    }

    /// `S^2` over `n_spatial` spatial orbitals.
    pub fn spin_squared(n_spatial: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let mut sz = Self::zero();
        let mut sp = Self::zero();
        for p in 0..n_spatial {
            sz.push(one * 0.5, vec![(2 * p, true), (2 * p, false)]);
            sz.push(-one * 0.5, vec![(2 * p + 1, true), (2 * p + 1, false)]);
            sp.push(one, vec![(2 * p, true), (2 * p + 1, false)]);
        }
        let sm = sp.adjoint();
        // S^2 = S- S+ + Sz (Sz + 1)
        let sz1 = sz.add(&Self::identity(1.0));
        sm.mul(&sp).add(&sz.mul(&sz1))
    }
}

fn ladder_strings(p: usize, n: usize) -> (PauliString, PauliString) {
    let lower = (1u64 << p) - 1;
    let bit = 1u64 << p;
    (
        PauliString::from_masks_unchecked(n, bit, lower),
        PauliString::from_masks_unchecked(n, bit, lower | bit),
    )
}

/// Jordan–Wigner image with `a+_p = (X_p - i Y_p)/2 Z_{q<p}`.
pub fn jordan_wigner(op: &FermionOperator, n_spin_orbitals: usize) -> Result<PauliSum> {
    if n_spin_orbitals > 64 {
        return Err(Error::TooManyQubits(n_spin_orbitals));
    }
    if let Some(m) = op.max_mode() {
        if m >= n_spin_orbitals {
            return Err(Error::IndexOutOfRange {
                index: m,
                n_modes: n_spin_orbitals,
            });
        }
    }
    let n = n_spin_orbitals;
    let half = Complex64::new(0.5, 0.0);
    let mut out = PauliSum::zero(n);
    let mut cur: Vec<(Complex64, PauliString)> = Vec::new();
    let mut next: Vec<(Complex64, PauliString)> = Vec::new();
    for (coeff, ops) in op.terms() {
        cur.clear();
        cur.push((*coeff, PauliString::identity(n)));
        for &(p, dagger) in ops {
            let (xs, ys) = ladder_strings(p, n);
            let yc = if dagger {
                Complex64::new(0.0, -0.5)
            } else {
                Complex64::new(0.0, 0.5)
            };
            next.clear();
            for (c, s) in &cur {
                let (k1, p1) = s.mul_exp(&xs);
                next.push((c * half * crate::pauli::i_pow(k1), p1));
                let (k2, p2) = s.mul_exp(&ys);
                next.push((c * yc * crate::pauli::i_pow(k2), p2));
            }
            std::mem::swap(&mut cur, &mut next);
        }
        for (c, s) in cur.drain(..) {
            out.add_term(s, c);
        }
    }
    out.simplify();
    Ok(out)
}
