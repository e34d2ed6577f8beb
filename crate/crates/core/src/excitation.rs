//! Spin-adapted excitation operators shared by the ansatz and the qEOM basis.

use std::fmt;

use num_complex::Complex64;

use crate::fermion::FermionOperator;

/// Spatial-orbital excitation labels. `a`, `b` are target orbitals, `i`, `j` source orbitals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Excitation {
    /// `E_ai / sqrt(2)`.
    Single { a: usize, i: usize },
    /// `(E_ai E_bj + E_aj E_bi) / (2 sqrt((1 + d_ab)(1 + d_ij)))`, `a >= b`, `i >= j`.
    Paired { a: usize, b: usize, i: usize, j: usize },
    /// `(E_ai E_bj - E_aj E_bi) / (2 sqrt(3))`, `a > b`, `i > j`.
    Triplet { a: usize, b: usize, i: usize, j: usize },
}

impl Excitation {
    pub fn operator(&self) -> FermionOperator {
        let e = FermionOperator::singlet_excitation;
        match *self {
            Excitation::Single { a, i } => e(a, i).scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)),
            Excitation::Paired { a, b, i, j } => {
                let d = |x: usize, y: usize| if x == y { 2.0f64 } else { 1.0 };
                let f = 0.5 / (d(a, b) * d(i, j)).sqrt();
                e(a, i).mul(&e(b, j)).add(&e(a, j).mul(&e(b, i))).scale(Complex64::new(f, 0.0))
            }
            Excitation::Triplet { a, b, i, j } => {
                let f = 1.0 / (2.0 * 3f64.sqrt());
                e(a, i)
                    .mul(&e(b, j))
                    .add(&e(a, j).mul(&e(b, i)).scale(Complex64::new(-1.0, 0.0)))
                    .scale(Complex64::new(f, 0.0))
            }
        }
    }

    pub fn is_double(&self) -> bool {
        !matches!(self, Excitation::Single { .. })
    }
}

impl fmt::Display for Excitation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Excitation::Single { a, i } => write!(f, "S({}<-{})", a, i),
            Excitation::Paired { a, b, i, j } => write!(f, "Dp({},{}<-{},{})", a, b, i, j),
            Excitation::Triplet { a, b, i, j } => write!(f, "Dt({},{}<-{},{})", a, b, i, j),
        }
    }
}

/// Singles, then paired doubles, then triplet-paired doubles from occupied
/// orbitals `occ` into unoccupied orbitals `unocc`, each family ordered
/// lexicographically in `(i, j, a, b)`.
pub fn singles_and_doubles(occ: &[usize], unocc: &[usize]) -> Vec<Excitation> {
    let mut singles = Vec::new();
    let mut paired = Vec::new();
    let mut triplet = Vec::new();
    for &i in occ {
        for &a in unocc {
            singles.push(Excitation::Single { a, i });
        }
    }
    for &i in occ {
        for &j in occ.iter().filter(|&&j| j <= i) {
            for &a in unocc {
                for &b in unocc.iter().filter(|&&b| b <= a) {
                    paired.push(Excitation::Paired { a, b, i, j });
                    if a != b && i != j {
                        triplet.push(Excitation::Triplet { a, b, i, j });
                    }
                }
            }
        }
    }
    singles.extend(paired);
    singles.extend(triplet);
    singles
}

/// Closed-form size of [`singles_and_doubles`].
pub fn singles_and_doubles_count(n_occ: usize, n_unocc: usize) -> usize {
    let c2 = |n: usize| n * n.saturating_sub(1) / 2;
    n_occ * n_unocc + c2(n_occ + 1) * c2(n_unocc + 1) + c2(n_occ) * c2(n_unocc)
}
