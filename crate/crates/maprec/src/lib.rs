//! Exact enumeration of ordinary and bipartite maps via topological
//! recursion on spectral curves.
//!
//! The crate computes, in exact rational arithmetic, the correlation forms
//! `ω_{g,n}` of the Eynard–Orantin recursion for a family of genus-zero
//! spectral curves parametrised by even face weights `t_2, t_4, …`, and
//! extracts from them integer generating functions counting maps:
//!
//! * **ordinary maps** with faces of even degree (`T^{(g)}_{2l_1,…,2l_n}`),
//! * **bipartite maps** (`T̃^{(g)}_{2l_1,…,2l_n}`), whose spectral curve is
//!   irregular in the Do–Norbury sense,
//! * **dessins d'enfant**, the specialisation of the bipartite model with
//!   all weights switched off.
//!
//! All coefficient arithmetic happens in the truncated power-series ring
//! `ℚ[[t_2, t_4, …]]` (see [`weights`]); no floating point is used anywhere.
//!
//! The high-level entry points are [`curve::SpectralCurve`] for building a
//! spectral curve, [`recursion::Engine`] for computing stable forms, and the
//! extraction functions in [`counts`]. The [`verify`] module bundles the
//! consistency and golden-data checks that back the `maprec verify` CLI
//! subcommand.

pub mod counts;
pub mod curve;
pub mod error;
pub mod golden;
pub mod local;
pub mod rat;
pub mod recursion;
pub mod verify;
pub mod weights;
pub mod zrat;

pub use counts::CountTable;
pub use curve::{Model, SpectralCurve};
pub use error::{Error, Result};
pub use rat::Rat;
pub use recursion::{Engine, OmegaForm, Pole};
pub use weights::{WeightConfig, WeightSeries};
pub use zrat::{ExpansionPoint, ZRational};
