#![allow(dead_code)]

use std::path::PathBuf;

use ooqeom::driver::{load_inputs, RunConfig};
use ooqeom::integrals::{read_fcidump, MolecularIntegrals};
use ooqeom::pipeline::{run_pipeline, PipelineOutput};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn config_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(format!("{name}.toml"))
}

pub fn integrals(name: &str) -> MolecularIntegrals {
    read_fcidump(&data(&format!("{name}.fcidump"))).unwrap()
}

pub fn references() -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(data("references.json")).unwrap()).unwrap()
}

pub fn reference(system: &str, key: &str) -> f64 {
    references()[system][key].as_f64().unwrap_or_else(|| panic!("{system}.{key} missing"))
}

/// Pipeline on one of the shipped configs, without writing anything.
pub fn pipeline(name: &str) -> PipelineOutput {
    let cfg = RunConfig::load(&config_path(name)).unwrap();
    let inputs = load_inputs(&cfg).unwrap();
    run_pipeline(&inputs.integrals, inputs.dipole.as_ref(), inputs.magnetic.as_ref(), &cfg.pipeline_options().unwrap()).unwrap()
}
