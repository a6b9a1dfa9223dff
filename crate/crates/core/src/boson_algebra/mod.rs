//! Second-quantized s-d boson operators.

pub mod cg;
pub mod classical;
pub mod expr;
pub mod fock;
pub mod ibm;
pub mod parse;
pub mod tensor;

pub use cg::{clebsch_gordan, clebsch_gordan_exact, ExactCg};
pub use classical::{classical_map, Embedding, PhaseFunction};
pub use expr::{normal_order, BosonExpr, Ladder, Mode, Monomial, OperatorWord, N_MODES};
pub use fock::{FockBasis, FockState, Occupation};
pub use parse::parse_expr;
pub use tensor::{couple, dot, TensorOp};
