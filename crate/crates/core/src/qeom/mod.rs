//! Equation-of-motion excited states on top of the (oo-)VQE ground state.

mod basis;
mod evaluator;
mod matrices;
mod solve;

pub use basis::{build_basis, BasisOperator, EomBasis, OperatorKind};
pub use evaluator::{Grouped, ProductEvaluator};
pub use matrices::{assemble, terms, EomMatrices, Matrix, PauliContext, Slot, Terms};
pub use solve::{solve, EomSolution, EomState, IMAG_TOL, LINEAR_DEP_TOL, MIN_EXCITATION};
