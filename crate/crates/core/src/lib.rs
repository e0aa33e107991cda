pub mod bridge;
pub mod error;
pub mod io;
pub mod krawtchouk;
pub mod leonard;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod residual;
pub mod rfl;
pub mod scalar;
pub mod split;
pub mod suite;
pub mod system;

pub use error::{Error, Rejection, Result};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use report::{verify_input, VerificationReport};
pub use residual::CheckId;
pub use suite::{run_suite, SuiteOptions, SystemReport};
pub use system::TridiagonalSystem;
