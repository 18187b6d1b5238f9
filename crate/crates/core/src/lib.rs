//! Kähler–Einstein metrics on admissible homogeneous vector bundles over
//! flag manifolds of the classical groups.
//!
//! The crate works on painted Dynkin diagrams of `A_ℓ`, `B_ℓ`, `C_ℓ`, `D_ℓ`
//! with exact rational arithmetic: Koszul numbers, the fibre-circle form
//! `ξ_0` and `κ`, and the existence verdicts for each sign of the Einstein
//! constant. The [`profile`] module then builds the profile function `f(t)`
//! of the metric numerically.
//!
//! ```
//! use kebundle::bundle::{AdmissibleData, End};
//! use kebundle::einstein::{classify, LambdaSign};
//! use kebundle::painted::PaintedDiagram;
//! use kebundle::profile::MetricProfile;
//! use kebundle::rational::int;
//!
//! let s0 = PaintedDiagram::parse("A3:*oo")?;
//! let data = AdmissibleData::new(s0, 2, End::Left, vec![2])?;
//! assert!(classify(&data)?.admits(LambdaSign::Negative));
//!
//! let profile = MetricProfile::new(&data, &int(-1))?;
//! assert!(profile.ode_residual(1.5)?.abs() < 1e-10);
//! assert!(profile.verdiani_check().pass);
//! # Ok::<(), kebundle::Error>(())
//! ```

pub mod bundle;
pub mod cli;
pub mod census;
pub mod einstein;
pub mod error;
pub mod painted;
pub mod poly;
pub mod profile;
pub mod quadrature;
pub mod rational;
pub mod rootspace;

pub use error::{Error, Result};
