//! Pauli strings and sums over at most 64 qubits.
//!
//! A string is stored as two bitmasks with bit `q` describing qubit `q`;
//! the operator is `i^{|x & z|} X^x Z^z`, so `x = z = 1` on a qubit is a plain `Y`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{BuildHasherDefault, DefaultHasher};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients with magnitude below this are dropped by [`PauliSum::simplify`].
pub const PRUNE_TOL: f64 = 1e-12;

pub(crate) type FixedState = BuildHasherDefault<DefaultHasher>;
pub(crate) type DetHashMap<K, V> = HashMap<K, V, FixedState>;

const PHASES: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

/// `i^k` for `k` taken mod 4.
#[inline]
pub fn i_pow(k: u32) -> Complex64 {
    PHASES[(k & 3) as usize]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

#[inline]
fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits <= 64, "at most 64 qubits");
        PauliString { n_qubits, x: 0, z: 0 }
    }

    /// Build from raw masks. Bits beyond `n_qubits` must be clear.
    pub fn from_masks(n_qubits: usize, x: u64, z: u64) -> Result<Self> {
        if n_qubits > 64 {
            return Err(Error::TooManyQubits(n_qubits));
        }
        let m = mask(n_qubits);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::IndexOutOfRange {
                index: 63 - (x | z).leading_zeros() as usize,
                n_modes: n_qubits,
            });
        }
        Ok(PauliString { n_qubits, x, z })
    }

    pub(crate) fn from_masks_unchecked(n_qubits: usize, x: u64, z: u64) -> Self {
        debug_assert!(x & !mask(n_qubits) == 0 && z & !mask(n_qubits) == 0);
        PauliString { n_qubits, x, z }
    }

    pub fn from_ops(ops: &[Pauli]) -> Result<Self> {
        let mut s = Self::from_masks(ops.len(), 0, 0)?;
        for (q, op) in ops.iter().enumerate() {
            s.set(q, *op);
        }
        Ok(s)
    }

    /// Single-qubit operator `op` on qubit `q`.
    pub fn single(n_qubits: usize, q: usize, op: Pauli) -> Result<Self> {
        if q >= n_qubits {
            return Err(Error::IndexOutOfRange {
                index: q,
                n_modes: n_qubits,
            });
        }
        let mut s = Self::from_masks(n_qubits, 0, 0)?;
        s.set(q, op);
        Ok(s)
    }

    fn set(&mut self, q: usize, op: Pauli) {
        let b = 1u64 << q;
        self.x &= !b;
        self.z &= !b;
        match op {
            Pauli::I => {}
            Pauli::X => self.x |= b,
            Pauli::Z => self.z |= b,
            Pauli::Y => {
                self.x |= b;
                self.z |= b;
            }
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }
    pub fn x_mask(&self) -> u64 {
        self.x
    }
    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn op(&self, q: usize) -> Pauli {
        let b = 1u64 << q;
        match (self.x & b != 0, self.z & b != 0) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn ops(&self) -> Vec<Pauli> {
        (0..self.n_qubits).map(|q| self.op(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn n_y(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Product `self * other` as `(phase, string)`.
    pub fn mul(&self, other: &PauliString) -> Result<(Complex64, PauliString)> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::SizeMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        let (k, p) = self.mul_exp(other);
        Ok((i_pow(k), p))
    }

    /// Product with the phase returned as an exponent of `i`.
    #[inline]
    pub(crate) fn mul_exp(&self, other: &PauliString) -> (u32, PauliString) {
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let k = (self.x & self.z).count_ones() + (other.x & other.z).count_ones()
            + 2 * (self.z & other.x).count_ones()
            + 4
            - (x & z).count_ones() % 4;
        (
            k & 3,
            PauliString {
                n_qubits: self.n_qubits,
                x,
                z,
            },
        )
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            let c = match self.op(q) {
                Pauli::I => 'I',
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ops = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::Parse {
                    line: 1,
                    message: format!("bad Pauli label {:?} at position {}", c, i),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        PauliString::from_ops(&ops)
    }
}

/// Complex linear combination of Pauli strings on a fixed register.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize, coeff: Complex64) -> Self {
        let mut s = Self::zero(n_qubits);
        s.add_term(PauliString::identity(n_qubits), coeff);
        s.simplify();
        s
    }

    pub fn from_term(p: PauliString, coeff: Complex64) -> Self {
        let mut s = Self::zero(p.n_qubits());
        s.add_term(p, coeff);
        s.simplify();
        s
    }

    pub fn from_terms<I>(n_qubits: usize, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, Complex64)>,
    {
        let mut s = Self::zero(n_qubits);
        for (p, c) in it {
            if p.n_qubits() != n_qubits {
                return Err(Error::SizeMismatch {
                    left: n_qubits,
                    right: p.n_qubits(),
                });
            }
            s.add_term(p, c);
        }
        s.simplify();
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &PauliString) -> Complex64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    /// Accumulate without pruning. Call [`simplify`](Self::simplify) afterwards.
    pub fn add_term(&mut self, p: PauliString, coeff: Complex64) {
        debug_assert_eq!(p.n_qubits(), self.n_qubits);
        *self.terms.entry(p).or_default() += coeff;
    }

    /// Drop terms with magnitude below [`PRUNE_TOL`].
    pub fn simplify(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    fn check(&self, other: &PauliSum) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::SizeMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, *c);
        }
        out.simplify();
        Ok(out)
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> PauliSum {
        let mut out = PauliSum::zero(self.n_qubits);
        for (p, c) in &self.terms {
            out.terms.insert(*p, c * s);
        }
        out.simplify();
        out
    }

    /// Distributive product `self * other`.
    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        let mut acc: DetHashMap<PauliString, Complex64> = DetHashMap::default();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let (k, p) = pa.mul_exp(pb);
                *acc.entry(p).or_default() += ca * cb * i_pow(k);
            }
        }
        let mut out = PauliSum::zero(self.n_qubits);
        out.terms = acc.into_iter().collect();
        out.simplify();
        Ok(out)
    }

    /// `self * other - other * self`. Only anticommuting pairs contribute.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        let mut acc: DetHashMap<PauliString, Complex64> = DetHashMap::default();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                if pa.commutes_with(pb) {
                    continue;
                }
                let (k, p) = pa.mul_exp(pb);
                *acc.entry(p).or_default() += 2.0 * ca * cb * i_pow(k);
            }
        }
        let mut out = PauliSum::zero(self.n_qubits);
        out.terms = acc.into_iter().collect();
        out.simplify();
        Ok(out)
    }

    /// Hermitian conjugate. Pauli strings are Hermitian, so only coefficients change.
    pub fn adjoint(&self) -> PauliSum {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// Largest coefficient magnitude, 0 for the empty sum.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Agreement with `other` term by term.
    pub fn approx_eq(&self, other: &PauliSum, tol: f64) -> bool {
        match self.sub(other) {
            Ok(d) => d.max_abs() <= tol,
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn dense1(p: Pauli) -> [[Complex64; 2]; 2] {
        let o = c(0.0, 0.0);
        let l = c(1.0, 0.0);
        match p {
            Pauli::I => [[l, o], [o, l]],
            Pauli::X => [[o, l], [l, o]],
            Pauli::Y => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
            Pauli::Z => [[l, o], [o, -l]],
        }
    }

    // Kronecker product with qubit 0 as the most significant factor.
    fn dense(p: &PauliString) -> Vec<Vec<Complex64>> {
        let mut m = vec![vec![c(1.0, 0.0)]];
        for q in 0..p.n_qubits() {
            let d = dense1(p.op(q));
            let n = m.len();
            let mut out = vec![vec![c(0.0, 0.0); 2 * n]; 2 * n];
            for i in 0..n {
                for j in 0..n {
                    for a in 0..2 {
                        for b in 0..2 {
                            out[2 * i + a][2 * j + b] = m[i][j] * d[a][b];
                        }
                    }
                }
            }
            m = out;
        }
        m
    }

    fn matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let n = a.len();
        let mut out = vec![vec![c(0.0, 0.0); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k] == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    #[test]
    fn x_times_y_is_i_z() {
        let (ph, p) = ps("X").mul(&ps("Y")).unwrap();
        assert_eq!(ph, c(0.0, 1.0));
        assert_eq!(p, ps("Z"));
    }

    #[test]
    fn square_is_identity() {
        for s in ["XYZI", "YYYY", "ZIZX"] {
            let (ph, p) = ps(s).mul(&ps(s)).unwrap();
            assert_eq!(ph, c(1.0, 0.0));
            assert!(p.is_identity());
        }
    }

    #[test]
    fn size_mismatch_rejected() {
        assert!(ps("XX").mul(&ps("X")).is_err());
        let a = PauliSum::from_term(ps("X"), c(1.0, 0.0));
        let b = PauliSum::from_term(ps("XX"), c(1.0, 0.0));
        assert!(a.mul(&b).is_err());
        assert!(a.commutator(&b).is_err());
    }

    #[test]
    fn sum_identities() {
        let a = PauliSum::from_terms(
            2,
            [(ps("XY"), c(0.3, 0.1)), (ps("ZI"), c(-1.0, 0.0))],
        )
        .unwrap();
        let id = PauliSum::identity(2, c(1.0, 0.0));
        assert_eq!(a.mul(&id).unwrap(), a);
        assert!(a.mul(&PauliSum::zero(2)).unwrap().is_empty());
        assert!(a.commutator(&a).unwrap().is_empty());
    }

    #[test]
    fn x_plus_y_times_x_minus_y() {
        let a = PauliSum::from_terms(1, [(ps("X"), c(1.0, 0.0)), (ps("Y"), c(1.0, 0.0))]).unwrap();
        let b = PauliSum::from_terms(1, [(ps("X"), c(1.0, 0.0)), (ps("Y"), c(-1.0, 0.0))]).unwrap();
        let p = a.mul(&b).unwrap();
        // dense: (X+Y)(X-Y) = XX - XY + YX - YY = -2iZ
        let expect = PauliSum::from_term(ps("Z"), c(0.0, -2.0));
        assert!(p.approx_eq(&expect, 1e-14));
        let dx = dense(&ps("X"));
        let dy = dense(&ps("Y"));
        let sum: Vec<Vec<_>> = (0..2).map(|i| (0..2).map(|j| dx[i][j] + dy[i][j]).collect()).collect();
        let dif: Vec<Vec<_>> = (0..2).map(|i| (0..2).map(|j| dx[i][j] - dy[i][j]).collect()).collect();
        let m = matmul(&sum, &dif);
        let dz = dense(&ps("Z"));
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[i][j] - c(0.0, -2.0) * dz[i][j]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn commutator_x_y() {
        let x = PauliSum::from_term(ps("X"), c(1.0, 0.0));
        let y = PauliSum::from_term(ps("Y"), c(1.0, 0.0));
        let k = x.commutator(&y).unwrap();
        assert!(k.approx_eq(&PauliSum::from_term(ps("Z"), c(0.0, 2.0)), 1e-15));
    }

    #[test]
    fn y_mask_round_trip() {
        let p = ps("IXYZ");
        assert_eq!(p.to_string(), "IXYZ");
        assert_eq!(p.x_mask(), 0b0110);
        assert_eq!(p.z_mask(), 0b1100);
        assert_eq!(p.n_y(), 1);
    }

    fn arb_string(n: usize) -> impl Strategy<Value = PauliString> {
        (0..(1u64 << n), 0..(1u64 << n)).prop_map(move |(x, z)| PauliString::from_masks(n, x, z).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn product_matches_dense(a in arb_string(8), b in arb_string(8)) {
            let (ph, p) = a.mul(&b).unwrap();
            let m = matmul(&dense(&a), &dense(&b));
            let d = dense(&p);
            for i in 0..256 {
                for j in 0..256 {
                    prop_assert!((m[i][j] - ph * d[i][j]).norm() < 1e-12);
                }
            }
        }

        #[test]
        fn commutation_flag_consistent(a in arb_string(6), b in arb_string(6)) {
            let (pa, x) = a.mul(&b).unwrap();
            let (pb, y) = b.mul(&a).unwrap();
            prop_assert_eq!(x, y);
            prop_assert_eq!(a.commutes_with(&b), pa == pb);
        }

        #[test]
        fn simplify_idempotent(
            terms in prop::collection::vec((arb_string(4), -1.0f64..1.0, -1.0f64..1.0), 0..12)
        ) {
            let mut s = PauliSum::zero(4);
            for (p, re, im) in &terms {
                s.add_term(*p, c(*re, *im));
                s.add_term(*p, c(-*re, -*im) * 0.999_999_999_999_9);
            }
            let before = s.len();
            s.simplify();
            let once = s.clone();
            s.simplify();
            prop_assert_eq!(&once, &s);
            prop_assert!(once.len() <= before);
        }
    }
}
