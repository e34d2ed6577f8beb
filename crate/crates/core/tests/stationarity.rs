//! Energy error is second order in the parameter error around the optimum;
//! a generic observable is first order.

mod common;

use ooqeom::active_space::ActiveSpaceSpec;
use ooqeom::ansatz::build_uccsd_ansatz;
use ooqeom::fermion::jordan_wigner;
use ooqeom::integrals::read_property;
use ooqeom::optimizer::BfgsOptions;
use ooqeom::properties::one_body_operator;
use ooqeom::vqe::{optimize, StartOrbitals, VqeOptions, VqeProblem};

/// Smallest exponent `log10(dF(1e-3) / dF(1e-4))` over coordinate directions.
fn exponents(f: impl Fn(&[f64]) -> f64, x0: &[f64]) -> Vec<f64> {
    let f0 = f(x0);
    (0..x0.len())
        .map(|i| {
            let at = |d: f64| {
                let mut x = x0.to_vec();
                x[i] += d;
                (f(&x) - f0).abs()
            };
            (at(1e-3) / at(1e-4)).log10()
        })
        .collect()
}

fn tight() -> VqeOptions {
    VqeOptions {
        bfgs: BfgsOptions {
            gtol: 1e-9,
            ..BfgsOptions::default()
        },
        ..VqeOptions::default()
    }
}

#[test]
fn energy_is_quadratic_around_optimum() {
    for (name, n) in [("h2_sto3g", 2), ("h4_twisted_sto3g", 4)] {
        let mi = common::integrals(name);
        let spec = ActiveSpaceSpec::from_counts(n, n, n, n).unwrap();
        let ansatz = build_uccsd_ansatz(&spec).unwrap();
        let r = optimize(&mi, &spec, &ansatz, StartOrbitals::AsGiven, &tight()).unwrap();
        let problem = VqeProblem::new(&mi, spec, &ansatz).unwrap();
        let k0 = problem.zero_rotation();
        let ex = exponents(|t| problem.energy(t, &k0).unwrap(), &r.theta_opt);
        let worst = ex.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(worst >= 1.9, "{name}: exponents {ex:?}");
    }
}

#[test]
fn dipole_expectation_is_linear_around_optimum() {
    let mi = common::integrals("h2_sto3g");
    let spec = ActiveSpaceSpec::from_counts(2, 2, 2, 2).unwrap();
    let ansatz = build_uccsd_ansatz(&spec).unwrap();
    let r = optimize(&mi, &spec, &ansatz, StartOrbitals::AsGiven, &tight()).unwrap();
    let problem = VqeProblem::new(&mi, spec, &ansatz).unwrap();
    let dip = read_property(&common::data("h2_sto3g.dipole")).unwrap();
    let z = jordan_wigner(&one_body_operator(&dip.components[2]), 4).unwrap();
    // only the single-excitation direction breaks the inversion symmetry that
    // keeps <z> fixed; the other direction is noise
    let ex = exponents(|t| problem.state(t).unwrap().expectation_real(&z).unwrap(), &r.theta_opt);
    assert!(ex.iter().any(|e| (e - 1.0).abs() < 0.05), "exponents {ex:?}");
}
