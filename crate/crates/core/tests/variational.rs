mod common;

use ooqeom::active_space::ActiveSpaceSpec;
use ooqeom::ansatz::build_uccsd_ansatz;
use ooqeom::integrals::OrbitalRotation;
use ooqeom::vqe::energy;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // any (theta, kappa) is a normalized N-electron state, so FCI bounds it from below
    #[test]
    fn lih_energy_never_below_fci(
        theta in proptest::collection::vec(-1.5f64..1.5, 3),
        kappa in proptest::collection::vec(-0.5f64..0.5, 11),
    ) {
        let mi = common::integrals("lih_sto3g");
        let spec = ActiveSpaceSpec::from_counts(mi.n_spatial(), mi.n_electrons, 2, 2).unwrap();
        let ansatz = build_uccsd_ansatz(&spec).unwrap();
        let pairs = spec.kappa_pairs();
        let rot = OrbitalRotation::from_parameters(spec.n_spatial(), pairs.clone(), &kappa[..pairs.len()]).unwrap();
        let e = energy(&mi, &spec, &ansatz, &theta[..ansatz.n_parameters], &rot).unwrap();
        prop_assert!(e >= common::reference("lih_sto3g", "fci_energy") - 1e-10, "{}", e);
    }

    #[test]
    fn h4_energy_never_below_fci(theta in proptest::collection::vec(-1.0f64..1.0, 32)) {
        let mi = common::integrals("h4_twisted_sto3g");
        let spec = ActiveSpaceSpec::from_counts(4, 4, 4, 4).unwrap();
        let ansatz = build_uccsd_ansatz(&spec).unwrap();
        let e = energy(&mi, &spec, &ansatz, &theta[..ansatz.n_parameters], &OrbitalRotation::zero(4, Vec::new())).unwrap();
        prop_assert!(e >= common::reference("h4_twisted_sto3g", "fci_energy") - 1e-10, "{}", e);
    }
}
