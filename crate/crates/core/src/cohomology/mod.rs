//! Free resolutions, Ext algebras, Yoneda products and Hopf actions on Ext.

pub mod action;
pub mod ext;
pub mod resolution;

pub use action::{compare_sv, k_action_on_ext, KActionOnExt, SvComparison};
pub use ext::{ext_dims, ChainLift, ExtClass, ExtTable, GeneratorReport, ProductEntry};
pub use resolution::{minimal_resolution, FreeResolution};
