//! Finite-dimensional algebras given by quivers with relations, their
//! finitely generated modules, Hom spaces, projectives, injectives and Ext.

mod algebra;
mod classic;
mod hom;
mod module;

pub use algebra::{Algebra, AlgebraPresentation, Arrow, IndexedRelation, Path, Quiver, Relation, RelationTerm};
pub use classic::{
    cosyzygy, default_ext_bound, ext_dim, ext_dim_via_injectives, from_projective, indecomposable_injectives,
    indecomposable_projectives, injective, injective_coresolution, injective_dimension, injective_envelope,
    is_injective, is_projective, projective, projective_cover, projective_dimension, projective_resolution, regular,
    simples, syzygy,
};
pub use hom::{hom_space, induced_rank, HomSpace};
#[allow(unused_imports)]
pub(crate) use hom::rank_of_vectors;
pub use module::{DirectSum, Module, ModuleMap};
