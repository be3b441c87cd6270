//! Weighted least-squares solutions of the matrix equation `AXB = C`.
//!
//! Given complex matrices `A`, `B`, `C` and a positive semidefinite weight `W`,
//! the crate studies two approximation problems:
//!
//! * minimising `H(X) = (AXB - C)* W (AXB - C)` in the Loewner order, and
//! * minimising the weighted Schatten seminorm `‖W^{1/2}(AXB - C)‖_p`.
//!
//! The building blocks are exposed as separate modules: dense linear algebra
//! with an explicit tolerance policy ([`linalg`]), shorted operators
//! ([`shorted`]), W-least-squares solutions and the existence conditions
//! ([`wls`]), Schatten norms, polar decomposition and directional derivatives
//! ([`schatten`]), and the solvers themselves ([`solver`]).
//!
//! ```
//! use weighted_axb::{generate, solver, TolerancePolicy};
//!
//! let inst = generate::example1();
//! let tol = TolerancePolicy::default();
//! let order = solver::operator_order_min(&inst, &tol).unwrap();
//! assert_eq!(order.status, solver::OrderStatus::InfimumUnknown);
//! ```

pub mod cli;
pub mod error;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod sampling;
pub mod schatten;
pub mod shorted;
pub mod solver;
pub mod wls;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, SubspaceBasis, TolerancePolicy};
pub use schatten::PolarParts;
pub use shorted::{PsdWeight, ShortedPair};
pub use solver::{ProblemInstance, SolutionManifold};
pub use wls::ConditionReport;
