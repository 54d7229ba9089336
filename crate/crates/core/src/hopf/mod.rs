//! Hopf algebras, braidings, Yetter-Drinfeld data, actions and smash products.

pub mod action;
pub mod braided;
pub mod builders;
pub mod data;
pub mod presented;
pub mod smash;
pub mod yd;

pub use action::{is_module_algebra, ActionSpec, HopfAction};
pub use braided::{BraidedVectorSpace, BraidingKind};
pub use data::{AxiomCheck, HopfAlgebraData, HopfAxiomReport};
pub use presented::{HopfPresentation, Tensor, TensorTerms};
pub use smash::{smash_product, SmashProductAlgebra};
pub use yd::{braiding_from_yd_pairs, validate_yd_pair, validate_yd_triple, YdPair, YdTriple, YdVerdict};
