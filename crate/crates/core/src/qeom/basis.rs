use crate::active_space::ActiveSpaceSpec;
use crate::error::Result;
use crate::excitation::singles_and_doubles;
use crate::fermion::{jordan_wigner, FermionOperator};
use crate::pauli::PauliSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// Singles touching inactive or virtual orbitals.
    Q,
    /// Singles and doubles inside the active space.
    G,
}

#[derive(Clone, Debug)]
pub struct BasisOperator {
    pub kind: OperatorKind,
    pub label: String,
    pub fermion: FermionOperator,
    /// Jordan–Wigner image on the full register.
    pub pauli: PauliSum,
}

/// Excitation operators `O_I`; de-excitations are their adjoints.
#[derive(Clone, Debug)]
pub struct EomBasis {
    pub spec: ActiveSpaceSpec,
    pub ops: Vec<BasisOperator>,
}

impl EomBasis {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn n_q(&self) -> usize {
        self.ops.iter().filter(|o| o.kind == OperatorKind::Q).count()
    }

    pub fn labels(&self) -> Vec<String> {
        self.ops.iter().map(|o| o.label.clone()).collect()
    }

    /// Multiply every operator by `s`.
    pub fn scaled(&self, s: f64) -> EomBasis {
        let c = num_complex::Complex64::new(s, 0.0);
        EomBasis {
            spec: self.spec,
            ops: self
                .ops
                .iter()
                .map(|o| BasisOperator {
                    kind: o.kind,
                    label: o.label.clone(),
                    fermion: o.fermion.scale(c),
                    pauli: o.pauli.scale(c),
                })
                .collect(),
        }
    }
}

fn q_operator(p: usize, q: usize, n_qubits: usize) -> Result<BasisOperator> {
    let f = FermionOperator::singlet_excitation(p, q).scale(std::f64::consts::FRAC_1_SQRT_2.into());
    Ok(BasisOperator {
        kind: OperatorKind::Q,
        label: format!("q({}<-{})", p, q),
        pauli: jordan_wigner(&f, n_qubits)?,
        fermion: f,
    })
}

/// `q` singles (active<-inactive, virtual<-inactive, virtual<-active), then the
/// active-space singles, paired doubles and triplet-paired doubles.
pub fn build_basis(spec: &ActiveSpaceSpec) -> Result<EomBasis> {
    let n = spec.n_qubits();
    let ni = spec.n_inactive;
    let na = spec.n_active;
    let nt = spec.n_spatial();
    let mut ops = Vec::new();
    for i in 0..ni {
        for v in ni..ni + na {
            ops.push(q_operator(v, i, n)?);
        }
    }
    for i in 0..ni {
        for a in ni + na..nt {
            ops.push(q_operator(a, i, n)?);
        }
    }
    for v in ni..ni + na {
        for a in ni + na..nt {
            ops.push(q_operator(a, v, n)?);
        }
    }
    let no = spec.n_active_occupied();
    let occ: Vec<usize> = (ni..ni + no).collect();
    let unocc: Vec<usize> = (ni + no..ni + na).collect();
    for ex in singles_and_doubles(&occ, &unocc) {
        let f = ex.operator();
        let pauli = jordan_wigner(&f, n)?;
        debug_assert!(!pauli.is_empty(), "{ex} is zero");
        ops.push(BasisOperator {
            kind: OperatorKind::G,
            label: ex.to_string(),
            fermion: f,
            pauli,
        });
    }
    Ok(EomBasis { spec: *spec, ops })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_full_space() {
        let b = build_basis(&ActiveSpaceSpec::new(0, 2, 0, 2).unwrap()).unwrap();
        assert_eq!(b.n_q(), 0);
        assert_eq!(b.labels(), vec!["S(1<-0)", "Dp(1,1<-0,0)"]);
    }

    #[test]
    fn q_counts() {
        let s = ActiveSpaceSpec::new(1, 4, 1, 4).unwrap();
        let b = build_basis(&s).unwrap();
        assert_eq!(b.n_q(), 4 + 1 + 4);
        assert_eq!(b.len(), 9 + 4 + 9 + 1);
        assert_eq!(b.ops[0].label, "q(1<-0)");
        assert_eq!(b.ops[4].label, "q(5<-0)");
        assert_eq!(b.ops[5].label, "q(5<-1)");
        assert!(b.ops.iter().all(|o| !o.pauli.is_empty()));
        // G operators act only on active qubits
        let am = s.active_mask();
        for o in b.ops.iter().filter(|o| o.kind == OperatorKind::G) {
            assert!(o.pauli.iter().all(|(p, _)| (p.x_mask() | p.z_mask()) & !am == 0));
        }
    }
}
