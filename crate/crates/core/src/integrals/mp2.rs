use nalgebra::{DMatrix, SymmetricEigen};

use super::MolecularIntegrals;
use crate::error::{Error, Result};

/// Smallest orbital-energy gap accepted in an MP2 denominator.
const GAP_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct NaturalOrbitals {
    /// Integrals in the natural-orbital basis.
    pub integrals: MolecularIntegrals,
    /// Rows are natural orbitals expressed in the input orbital basis.
    pub transform: DMatrix<f64>,
    /// Descending occupation numbers.
    pub occupations: Vec<f64>,
    pub mp2_energy: f64,
}

pub(crate) fn fock(mi: &MolecularIntegrals) -> DMatrix<f64> {
    let n = mi.n_spatial();
    let nocc = mi.n_electrons / 2;
    DMatrix::from_fn(n, n, |p, q| {
        let mut f = mi.h[(p, q)];
        for i in 0..nocc {
            f += 2.0 * mi.g.get(p, q, i, i) - mi.g.get(p, i, i, q);
        }
        f
    })
}

/// Symmetric eigendecomposition with ascending eigenvalues and a fixed column sign
/// (largest-magnitude entry positive).
pub(crate) fn sorted_eigh(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut vecs = DMatrix::zeros(n, n);
    let mut vals = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(j).into_owned();
        let big = col.iter().copied().fold(0.0f64, |a, v| if v.abs() > a.abs() { v } else { a });
        if big < 0.0 {
            col = -col;
        }
        vecs.set_column(k, &col);
        vals.push(eig.eigenvalues[j]);
    }
    (vals, vecs)
}

/// Unrelaxed MP2 natural orbitals from a closed-shell HF orbital basis.
pub fn mp2_natural_orbitals(mi: &MolecularIntegrals) -> Result<NaturalOrbitals> {
    if !mi.n_electrons.is_multiple_of(2) {
        return Err(Error::OpenShell(mi.n_electrons));
    }
    let n = mi.n_spatial();
    let no = mi.n_electrons / 2;
    if no > n {
        return Err(Error::InvalidIntegrals(format!(
            "{} electrons do not fit in {} orbitals",
            mi.n_electrons, n
        )));
    }
    let nv = n - no;
    if no == 0 || nv == 0 {
        let mut occupations = vec![2.0; no];
        occupations.extend(vec![0.0; nv]);
        return Ok(NaturalOrbitals {
            integrals: mi.clone(),
            transform: DMatrix::identity(n, n),
            occupations,
            mp2_energy: 0.0,
        });
    }

    // semicanonical orbitals: diagonalize occupied and virtual Fock blocks separately
    let f = fock(mi);
    let (eo, co) = sorted_eigh(&f.view((0, 0), (no, no)).into_owned());
    let (ev, cv) = sorted_eigh(&f.view((no, no), (nv, nv)).into_owned());
    let mut u0 = DMatrix::zeros(n, n);
    u0.view_mut((0, 0), (no, no)).copy_from(&co.transpose());
    u0.view_mut((no, no), (nv, nv)).copy_from(&cv.transpose());
    let eps: Vec<f64> = eo.iter().chain(ev.iter()).copied().collect();
    let gap = ev[0] - eo[no - 1];
    if gap < GAP_TOL {
        return Err(Error::DegenerateReference(gap));
    }
    let sc = mi.transform(&u0)?;

    // t[i][j][a][b] = (ia|jb) / (e_i + e_j - e_a - e_b)
    let ti = |i: usize, j: usize, a: usize, b: usize| ((i * no + j) * nv + a) * nv + b;
    let mut t = vec![0.0; no * no * nv * nv];
    let mut e2 = 0.0;
    for i in 0..no {
        for j in 0..no {
            for a in 0..nv {
                for b in 0..nv {
                    let iajb = sc.g.get(i, no + a, j, no + b);
                    let ibja = sc.g.get(i, no + b, j, no + a);
                    let d = eps[i] + eps[j] - eps[no + a] - eps[no + b];
                    t[ti(i, j, a, b)] = iajb / d;
                    e2 += iajb * (2.0 * iajb - ibja) / d;
                }
            }
        }
    }

    let mut dm = DMatrix::zeros(n, n);
    for j in 0..no {
        for k in 0..no {
            let mut x = 0.0;
            for i in 0..no {
                for a in 0..nv {
                    for b in 0..nv {
                        x += t[ti(i, j, a, b)] * (2.0 * t[ti(i, k, a, b)] - t[ti(i, k, b, a)]);
                    }
                }
            }
            dm[(j, k)] -= x;
            dm[(k, j)] -= x;
        }
        dm[(j, j)] += 2.0;
    }
    for a in 0..nv {
        for b in 0..nv {
            let mut y = 0.0;
            for i in 0..no {
                for j in 0..no {
                    for c in 0..nv {
                        y += t[ti(i, j, c, a)] * (2.0 * t[ti(i, j, c, b)] - t[ti(i, j, b, c)]);
                    }
                }
            }
            dm[(no + a, no + b)] += y;
            dm[(no + b, no + a)] += y;
        }
    }

    let (occ, v) = sorted_eigh(&dm);
    // descending occupation
    let order: Vec<usize> = (0..n).rev().collect();
    let occupations: Vec<f64> = order.iter().map(|&k| occ[k]).collect();
    let mut vt = DMatrix::zeros(n, n);
    for (row, &k) in order.iter().enumerate() {
        vt.set_row(row, &v.column(k).transpose());
    }
    let transform = &vt * &u0;
    let integrals = mi.transform(&transform)?;
    Ok(NaturalOrbitals {
        integrals,
        transform,
        occupations,
        mp2_energy: e2,
    })
}
