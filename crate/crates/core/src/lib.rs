//! Minimum trace norm of square (0,1)-matrices with a prescribed number of
//! ones: closed forms, certified bounds, a brute-force oracle and the prime
//! searches that decide when the bounds are tight.

pub mod binmat;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod primes;
pub mod psi;
pub mod report;
pub mod spectral;
pub mod step_forms;
pub mod verify;

pub use binmat::{canonicalize, is_step_matrix, strip_zeros, BinaryMatrix, CanonicalForm, StepInfo};
pub use error::{Error, Result};
pub use oracle::{brute_force_psi, OracleResult};
pub use primes::{claim_a_solver, factor_fit, is_prime, search_triples, Sign, TripleWitness};
pub use psi::{gb_bound, pro4_bound, psi, Classification, PsiResult, PsiStatus, Witness};
pub use spectral::{singular_spectrum, Spectrum};
pub use step_forms::{enumerate_shapes, two_step_spectrum, RadicalKey, TwoStepShape};
