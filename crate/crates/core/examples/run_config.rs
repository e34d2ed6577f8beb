//! Drive a TOML config end to end from code, the same path as `ooqeom run`.

use ooqeom::driver::{run, RunConfig};

fn main() {
    let cfg_path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/h2_sto3g.toml").into());
    let mut cfg = match RunConfig::load(cfg_path.as_ref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(ooqeom::driver::exit_code(&e));
        }
    };
    let out = std::env::temp_dir().join("ooqeom-run-config-example");
    cfg.output_dir = out.clone();
    match run(&cfg) {
        Ok(s) => {
            println!("E0 = {:.10}", s.output.vqe.energy);
            for f in &s.files {
                println!("wrote {}", f.display());
            }
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(ooqeom::driver::exit_code(&e));
        }
    }
}
