pub mod active_space;
pub mod ansatz;
pub mod driver;
pub mod error;
pub mod excitation;
pub mod fermion;
pub mod integrals;
pub mod optimizer;
pub mod oracle;
pub mod pauli;
pub mod pipeline;
pub mod properties;
pub mod qeom;
pub mod rdm;
pub mod spectrum;
pub mod statevector;
pub mod vqe;

pub use error::{Error, Result};
