//! Generalized inverses of dual matrices `A + εB` with `ε² = 0`.
//!
//! The crate computes the dual Drazin inverse together with the dual
//! Moore-Penrose, group and core inverses, decides their existence, solves
//! dual linear systems and checks order laws and the D-group and D-core
//! partial orders. Real-matrix kernels (rank, index, classical generalized
//! inverses) live in [`realgi`].
//!
//! ```
//! use dualinv_core::{ddgi, DualMatrix, RealMatrix, Tolerances};
//!
//! let a = DualMatrix::new(
//!     RealMatrix::from_rows(&[[1.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])?,
//!     RealMatrix::from_rows(&[[1.0, 2.0, 0.0], [2.0, 1.0, 0.0], [0.0, 0.0, 1.0]])?,
//! )?;
//! let res = ddgi(&a, &Tolerances::default())?;
//! assert!(res.exists);
//! assert_eq!(res.k, 2);
//! # Ok::<(), dualinv_core::Error>(())
//! ```

pub mod dsolve;
pub mod dualgi;
pub mod dualmat;
pub mod error;
pub mod fixtures;
pub mod laws;
pub mod matrix;
pub mod realgi;
mod svd;
pub mod tolerance;

pub use dsolve::{
    general_solution, in_null_power, in_range_power, is_consistent, solve_unique, DualSystem,
};
pub use dualgi::{
    dcgi, ddgi, ddgi_absorbed, ddgi_exists_aux, ddgi_exists_rank, ddmpgi, dggi, dmpgi, mpdgi,
    verify_inverse, InverseKind, InverseResult, Missing, RankCheck, ResidualReport,
};
pub use dualmat::{dual_distance, DualMatrix, DualVector};
pub use error::{Error, Result};
pub use laws::{FormChoice, LawKind, LawReport};
pub use matrix::{rel_distance, RealMatrix};
pub use tolerance::Tolerances;
