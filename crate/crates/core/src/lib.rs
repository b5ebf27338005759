//! Exact time evolution of a moving Λ-type three-level atom coupled to a
//! single cavity mode through an intensity-dependent (f-deformed) interaction,
//! together with the nonclassicality diagnostics evaluated on that state:
//!
//! * [`entanglement`]: reduced atomic density matrix, closed-form cubic
//!   eigenvalues and the von Neumann entropy of the field.
//! * [`squeezing`]: position/momentum distributions of the field, their
//!   Shannon entropies and the normalized entropy-squeezing measures.
//! * [`statistics`]: photon-number moments, Mandel `Q`, `⟨aʳ⟩` and the
//!   quadrature squeezing parameters.
//! * [`oracle`]: a brute-force RK4 Schrödinger integrator on the truncated
//!   joint Hilbert space, used to validate the analytic amplitudes.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use jcm_core::{evolve, ModelParams, Motion, Nonlinearity};
//! use jcm_core::entanglement::{reduced_density, von_neumann_entropy};
//!
//! let params = ModelParams::builder()
//!     .alpha_sq(10.0)
//!     .p(1)
//!     .motion(Motion::Moving)
//!     .nonlinearity(Nonlinearity::Identity)
//!     .build()
//!     .unwrap();
//! let field = params.coherent_field().unwrap();
//! let state = evolve(&params, &field, 1.0);
//! let rho = reduced_density(&state);
//! let s = von_neumann_entropy(rho.eigenvalues());
//! assert!(s > 0.0 && s <= 3f64.ln());
//! ```
#![no_std]
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod entanglement;
mod error;
pub mod evolution;
pub mod model;
pub mod oracle;
pub mod special;
pub mod squeezing;
pub mod statistics;

pub use error::Error;
pub use evolution::{atomic_populations, evolve, rabi_argument, JointState};
pub use model::{
    coherent_amplitudes, default_n_max, eval_g, theta, FieldAmplitudes, ModelParams,
    ModelParamsBuilder, Motion, Nonlinearity,
};

pub use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;
