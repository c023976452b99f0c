//! Classification of almost contact metric structures through the intrinsic endomorphisms
//! `S = φ∘∇ξ`, `h = ½ 𝓛_ξ φ` and the auxiliary `P`.
//!
//! Everything is pointwise: a [`Structure`] fixes `(φ, ξ, η, g)` on a `(2n+1)`-dimensional space
//! and a [`Tensor3`] plays the role of `∇Φ`.

pub mod classify;
pub mod connections;
pub mod error;
pub mod forms;
pub mod geometry;
pub mod intrinsic;
pub mod io;
pub mod linalg;
pub mod sampling;
pub mod space;
pub mod structure;
pub mod tensor;

pub use error::{AcmsError, Result};
pub use intrinsic::{EndoProfile, Flag, IntrinsicData};
pub use structure::{canonical_structure, random_structure, Frame, Structure};
pub use tensor::Tensor3;

/// Default relative tolerance for identities and zero tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default relative threshold for reporting a class component as present.
pub const DEFAULT_CLASS_TOL: f64 = 1e-7;
