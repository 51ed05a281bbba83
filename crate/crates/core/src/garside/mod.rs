//! Germ-presented Garside structures: finite product tables for the simple
//! elements, axiom checking, left-greedy normal forms, divisibility lattices,
//! and the weak Cayley graphs they generate.

mod builtins;
mod divisibility;
mod germ;
mod lattice;
mod normal;
pub mod words;

pub use builtins::{braid_germ, builtin_germ, free_abelian_germ};
pub use divisibility::{
    enumerate_positives, head_simple, left_divisors, left_gcd, left_gcd_head_recursive, left_lcm,
    simple_divides,
};
pub use germ::{GarsideError, Germ, GermFile, GermReport, PhiDef, SimpleDef};
pub use lattice::{delta_quotient_ball, weak_cayley_ball, GarsideLattice};
pub use normal::{inverse, is_left_weighted, multiply, normal_form, Letter, Morphism};
