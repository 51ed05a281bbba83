//! Desk-scale machinery for graded lattices with increasing ℤ-actions and the
//! graphs they generate.
//!
//! The crate builds two families of graphs from a lattice carrying an
//! order-increasing ℤ-action: the quotient graph on ℤ-orbits and the graph on
//! the lattice itself, both with closed-form distance formulas and explicit
//! witness constructors for the triangle/quadrangle conditions. Garside
//! structures presented by finite germs, the Bruhat–Tits building of
//! `PGL(n, F_q((t)))`, and plain `ℤ^n` all plug into the same interface, and a
//! weak-modularity auditor adjudicates finite balls of any of them with sound
//! three-valued verdicts.
//!
//! Modules:
//! - [`order`]: finite graded relations, weak orders, exhaustive meet/join.
//! - [`wmcheck`]: finite graphs and triangle/quadrangle condition audits.
//! - [`zaction`]: the ℤ-acted lattice interface, distances, witnesses, balls.
//! - [`garside`]: germs, greedy normal forms, divisibility lattices, Cayley balls.
//! - [`building`]: `O`-lattices over `F_q[[t]]` and affine building balls.
//! - [`dict`]: conversions between lattices, flag complexes, and weak orders.

pub mod building;
pub mod dict;
pub mod garside;
pub mod iso;
pub mod order;
pub mod wmcheck;
pub mod zaction;
