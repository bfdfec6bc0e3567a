//! Balanced pairs of subcategories over finite-dimensional quiver algebras.
//!
//! The crate computes with finitely generated modules over `kQ/I` for a prime
//! field `k = GF(p)`. Everything reduces to exact linear algebra: Hom spaces
//! are null spaces, factorizations and homotopies are linear solves.
//!
//! Layers, bottom up:
//!
//! * [`exactlin`]: matrices over GF(p), rref, solve, null spaces.
//! * [`quiveralg`]: algebras, modules, Hom, projectives, injectives, Ext.
//! * [`complexes`]: bounded complexes, chain maps, cones, null-homotopies.
//! * [`approx`]: subcategories by generators, approximations, resolutions.
//! * [`balanced`]: acyclicity, balanced-pair checks, the Horseshoe lemma.
//! * [`totalization`]: quasi-bicomplex resolutions of complexes.
//! * [`equivfunctor`]: the functor between homotopy categories of the two
//!   sides of a balanced pair.
//! * [`gorenstein`]: Gorenstein projective and injective subcategories.
//! * [`compare`]: tensoring with a dualizing complex and the map `η`.

pub mod approx;
pub mod balanced;
pub mod compare;
pub mod complexes;
pub mod corpus;
pub mod equivfunctor;
pub mod error;
pub mod exactlin;
pub mod gorenstein;
pub mod io;
pub mod mapsolve;
pub mod quiveralg;
pub mod totalization;

pub use approx::SubcatSpec;
pub use complexes::{ChainMap, Complex};
pub use error::{Error, Result};
pub use exactlin::{FieldSpec, Matrix};
pub use quiveralg::{Algebra, AlgebraPresentation, Module, ModuleMap, Quiver, Relation};
