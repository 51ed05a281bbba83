//! The affine building of `PGL(n, F_q((t)))` at desk scale: O-lattices in
//! canonical form, the norm lattice as a ℤ-acted lattice, building balls by
//! direct subspace expansion, and the subspace germ.

mod ball;
mod germ;
mod olattice;
pub mod poly;

pub use ball::{building_ball, class_neighbors, norm_quotient_ball, NormLattice};
pub use germ::subspace_germ;
pub use olattice::{BuildingError, OLattice};

use crate::order::GradedRelation;
use poly::Fq;

/// The lattice of subspaces of F_qⁿ under inclusion, graded by dimension gap.
pub fn subspace_poset(n: usize, q: u8) -> Result<GradedRelation, BuildingError> {
    let field = Fq::new(q).ok_or(BuildingError::BadField(q))?;
    let total = (q as usize).pow(n as u32);
    let add = |a: usize, b: usize| -> usize {
        let digits = |mut c: usize| -> Vec<u8> {
            (0..n)
                .map(|_| {
                    let d = (c % q as usize) as u8;
                    c /= q as usize;
                    d
                })
                .collect()
        };
        let (va, vb) = (digits(a), digits(b));
        let mut code = 0usize;
        let mut mult = 1usize;
        for i in 0..n {
            code += field.add(va[i], vb[i]) as usize * mult;
            mult *= q as usize;
        }
        code
    };
    let span_closure = |gens: &[usize]| -> Vec<usize> {
        let mut set = std::collections::BTreeSet::new();
        set.insert(0usize);
        let mut frontier = vec![0usize];
        while let Some(v) = frontier.pop() {
            for &g in gens {
                let mut w = v;
                for _ in 0..q - 1 {
                    w = add(w, g);
                    if set.insert(w) {
                        frontier.push(w);
                    }
                }
            }
        }
        set.into_iter().collect()
    };
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(vec![0usize]);
    let mut queue = vec![vec![0usize]];
    let mut at = 0;
    while at < queue.len() {
        let space = queue[at].clone();
        at += 1;
        for v in 1..total {
            if space.binary_search(&v).is_ok() {
                continue;
            }
            let mut gens = space.clone();
            gens.push(v);
            let bigger = span_closure(&gens);
            if seen.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    let spaces: Vec<Vec<usize>> = seen.into_iter().collect();
    let dim = |s: &Vec<usize>| -> u64 {
        let mut d = 0u64;
        let mut size = 1usize;
        while size < s.len() {
            size *= q as usize;
            d += 1;
        }
        d
    };
    GradedRelation::from_leq(
        &spaces,
        |s| {
            let body: Vec<String> = s.iter().filter(|&&c| c != 0).map(|c| c.to_string()).collect();
            if body.is_empty() {
                "z".to_string()
            } else {
                body.join("_")
            }
        },
        |a, b| a.iter().all(|v| b.binary_search(v).is_ok()),
        |a, b| dim(b) - dim(a),
    )
    .map_err(|e| BuildingError::Parse(e.to_string()))
}
