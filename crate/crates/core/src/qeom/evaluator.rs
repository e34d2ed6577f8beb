//! Expectation values of operator products on `|outside> (x) |A>`.
//!
//! The full-register state is a fixed determinant on the inactive and virtual
//! qubits times the active statevector. Every string splits exactly into an
//! outside and an active factor, so `<P1 P2 ... Pk>` is an outside phase times an
//! active expectation `<A|P_A|A>`. Only products whose outside X parts cancel
//! survive; the largest factor is grouped by its outside X mask so each
//! combination of the smaller factors touches just one group.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::active_space::{low_bits, ActiveSpaceSpec};
use crate::pauli::{i_pow, DetHashMap, PauliString, PauliSum};
use crate::statevector::Statevector;

/// Active registers up to this size get a fully tabulated `<A|P|A>`.
const DENSE_TABLE_MAX_QUBITS: usize = 8;

#[derive(Clone, Copy, Debug)]
struct Layout {
    out_mask: u64,
    offset: usize,
    n_active: usize,
    amask: u64,
}

impl Layout {
    fn new(spec: &ActiveSpaceSpec) -> Self {
        Layout {
            out_mask: spec.outside_mask(),
            offset: spec.active_offset(),
            n_active: spec.n_active_qubits(),
            amask: low_bits(spec.n_active_qubits()),
        }
    }

    #[inline]
    fn active(&self, p: &PauliString) -> PauliString {
        PauliString::from_masks_unchecked(
            self.n_active,
            (p.x_mask() >> self.offset) & self.amask,
            (p.z_mask() >> self.offset) & self.amask,
        )
    }

    /// Phase of the outside factor of `p` on determinant `ob`, as a power of `i`.
    #[inline]
    fn out_phase(&self, p: &PauliString, ob: u64) -> u32 {
        let xo = p.x_mask() & self.out_mask;
        let zo = p.z_mask() & self.out_mask;
        (xo & zo).count_ones() + 2 * (ob & zo).count_ones()
    }

    #[inline]
    fn out_x(&self, p: &PauliString) -> u64 {
        p.x_mask() & self.out_mask
    }
}

/// `<A|P|A>` over active strings.
enum Table {
    Dense(Vec<Complex64>),
    Lazy(RwLock<DetHashMap<(u64, u64), Complex64>>),
}

struct ActiveExpectations {
    state: Statevector,
    table: Table,
    n: usize,
}

impl ActiveExpectations {
    fn new(state: Statevector) -> Self {
        let n = state.n_qubits();
        let table = if n <= DENSE_TABLE_MAX_QUBITS {
            let dim = 1usize << (2 * n);
            let vals: Vec<Complex64> = (0..dim)
                .into_par_iter()
                .map(|k| {
                    let x = (k >> n) as u64;
                    let z = (k as u64) & low_bits(n);
                    state.pauli_expectation(&PauliString::from_masks_unchecked(n, x, z))
                })
                .collect();
            Table::Dense(vals)
        } else {
            Table::Lazy(RwLock::new(HashMap::default()))
        };
        ActiveExpectations { state, table, n }
    }

    #[inline]
    fn get(&self, p: &PauliString) -> Complex64 {
        match &self.table {
            Table::Dense(v) => v[((p.x_mask() as usize) << self.n) | p.z_mask() as usize],
            Table::Lazy(m) => {
                let key = (p.x_mask(), p.z_mask());
                if let Some(v) = m.read().unwrap().get(&key) {
                    return *v;
                }
                let v = self.state.pauli_expectation(p);
                m.write().unwrap().insert(key, v);
                v
            }
        }
    }
}

type ActiveTerms = Arc<Vec<(PauliString, Complex64)>>;

/// Operator split by outside X mask, with a cache of outside-contracted groups.
pub struct Grouped {
    terms: Vec<(PauliString, Complex64)>,
    groups: DetHashMap<u64, Vec<(PauliString, Complex64)>>,
    cache: RwLock<DetHashMap<(u64, u64), ActiveTerms>>,
}

impl Grouped {
    fn new(op: &PauliSum, layout: &Layout) -> Self {
        let terms: Vec<(PauliString, Complex64)> = op.iter().map(|(p, c)| (*p, *c)).collect();
        let mut groups: DetHashMap<u64, Vec<(PauliString, Complex64)>> = HashMap::default();
        for (p, c) in &terms {
            groups.entry(layout.out_x(p)).or_default().push((*p, *c));
        }
        Grouped {
            terms,
            groups,
            cache: RwLock::new(HashMap::default()),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum_{m: out_x(m) = key} c_m phase_m(ob) m_A`, merged by active string.
    fn contracted(&self, key: u64, ob: u64, layout: &Layout) -> ActiveTerms {
        if let Some(v) = self.cache.read().unwrap().get(&(key, ob)) {
            return v.clone();
        }
        let mut acc: DetHashMap<PauliString, Complex64> = HashMap::default();
        if let Some(g) = self.groups.get(&key) {
            for (p, c) in g {
                *acc.entry(layout.active(p)).or_default() += c * i_pow(layout.out_phase(p, ob));
            }
        }
        let mut v: Vec<(PauliString, Complex64)> = acc.into_iter().filter(|(_, c)| *c != Complex64::new(0.0, 0.0)).collect();
        v.sort_by_key(|a| a.0);
        let v = Arc::new(v);
        self.cache.write().unwrap().insert((key, ob), v.clone());
        v
    }
}

/// Evaluates `<Psi| F1 F2 ... Fk |Psi>` for grouped operators.
pub struct ProductEvaluator {
    layout: Layout,
    outside: u64,
    active: ActiveExpectations,
}

impl ProductEvaluator {
    pub fn new(spec: &ActiveSpaceSpec, active_state: Statevector) -> Self {
        assert_eq!(active_state.n_qubits(), spec.n_active_qubits());
        ProductEvaluator {
            layout: Layout::new(spec),
            outside: spec.inactive_mask(),
            active: ActiveExpectations::new(active_state),
        }
    }

    pub fn group(&self, op: &PauliSum) -> Grouped {
        Grouped::new(op, &self.layout)
    }

    /// `<F1 F2 ... Fk>`, rightmost factor acting first.
    pub fn expectation(&self, factors: &[&Grouped]) -> Complex64 {
        let k = factors.len();
        if k == 0 {
            return Complex64::new(1.0, 0.0);
        }
        if factors.iter().any(|f| f.is_empty()) {
            return Complex64::new(0.0, 0.0);
        }
        let big = (0..k).max_by_key(|&i| (factors[i].len(), std::cmp::Reverse(i))).unwrap();
        let lay = &self.layout;
        let na = lay.n_active;
        let small: Vec<usize> = (0..k).filter(|&i| i != big).collect();
        let mut idx = vec![0usize; small.len()];
        let mut total = Complex64::new(0.0, 0.0);
        loop {
            // outside X of the small factors must be cancelled by the big one
            let mut key = 0u64;
            let mut coeff = Complex64::new(1.0, 0.0);
            for (s, &f) in small.iter().enumerate() {
                let (p, c) = &factors[f].terms[idx[s]];
                key ^= lay.out_x(p);
                coeff *= c;
            }
            // walk right to left up to the big factor
            let mut ob = self.outside;
            let mut ph = 0u32;
            let mut right = PauliString::identity(na);
            for f in (big + 1..k).rev() {
                let s = small.iter().position(|&x| x == f).unwrap();
                let p = &factors[f].terms[idx[s]].0;
                ph += lay.out_phase(p, ob);
                ob ^= lay.out_x(p);
                let (e, r) = lay.active(p).mul_exp(&right);
                ph += e;
                right = r;
            }
            let ob_big = ob;
            ob ^= key;
            let mut lprod = PauliString::identity(na);
            for f in (0..big).rev() {
                let s = small.iter().position(|&x| x == f).unwrap();
                let p = &factors[f].terms[idx[s]].0;
                ph += lay.out_phase(p, ob);
                ob ^= lay.out_x(p);
                let (e, l) = lay.active(p).mul_exp(&lprod);
                ph += e;
                lprod = l;
            }
            debug_assert_eq!(ob, self.outside);
            let mid = factors[big].contracted(key, ob_big, lay);
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, c) in mid.iter() {
                let (e1, lm) = lprod.mul_exp(m);
                let (e2, p) = lm.mul_exp(&right);
                acc += c * i_pow(e1 + e2) * self.active.get(&p);
            }
            total += coeff * i_pow(ph) * acc;

            // next combination
            let mut d = 0;
            loop {
                if d == small.len() {
                    return total;
                }
                idx[d] += 1;
                if idx[d] < factors[small[d]].len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
        }
    }
}
