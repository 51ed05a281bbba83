//! The extended building as a ℤ-acted lattice of O-lattices, and direct
//! enumeration of building balls by subspace expansion.
//!
//! Points are O-lattices ordered by reverse inclusion (x ≤ y ⇔ L_y ⊆ L_x), so
//! the homothety L ↦ tL is the increasing shift. Its ℤ-orbits are homothety
//! classes, and the quotient graph is the 1-skeleton of the building: two
//! classes are adjacent when they admit representatives tL ⊊ M ⊊ L.

use crate::wmcheck::{BallMeta, FiniteGraph};
use crate::zaction::{BallGraph, ZLattice, ZactionError};

use super::olattice::{BuildingError, OLattice};
use super::poly::{Fq, Laurent};

/// The norm lattice of `PGL(n, F_q((t)))`: all O-lattices under reverse
/// inclusion with the homothety action.
#[derive(Debug, Clone, Copy)]
pub struct NormLattice {
    pub n: usize,
    pub q: u8,
}

impl NormLattice {
    pub fn new(n: usize, q: u8) -> Result<NormLattice, BuildingError> {
        Fq::new(q).ok_or(BuildingError::BadField(q))?;
        if n < 1 {
            return Err(BuildingError::Dimension("n must be positive".into()));
        }
        Ok(NormLattice { n, q })
    }

    pub fn base(&self) -> OLattice {
        OLattice::standard(self.n, self.q).expect("validated parameters")
    }

    pub fn field(&self) -> Fq {
        Fq::new(self.q).expect("validated parameters")
    }

    /// All F_q-linear combinations of the columns of `w` reduced against `m`:
    /// coset representatives of (W ∩ …)/M used for cover enumeration.
    fn cover_candidates(&self, m: &OLattice, top: &OLattice) -> Vec<OLattice> {
        let field = self.field();
        // vectors v with t·v ∈ M and v ∈ top span the covers of M below top
        let w = top.intersect(&m.scale(-1));
        let mut combos = vec![vec![Laurent::zero(); self.n]];
        for j in 0..self.n {
            let mut next = Vec::new();
            for partial in &combos {
                for c in 0..self.q {
                    let mut v = partial.clone();
                    if c != 0 {
                        for i in 0..self.n {
                            let scaled = w.column(j)[i].mul(&Laurent::monomial(0, c), field);
                            v[i] = v[i].add(&scaled, field);
                        }
                    }
                    next.push(v);
                }
            }
            combos = next;
        }
        let mut out = Vec::new();
        for v in combos {
            if m.contains_vector(&v) {
                continue;
            }
            let mut cols: Vec<Vec<Laurent>> = (0..self.n).map(|j| m.column(j).to_vec()).collect();
            cols.push(v);
            let bigger = OLattice::from_columns(self.n, self.q, cols)
                .expect("cover construction is nonsingular");
            out.push(bigger);
        }
        out.sort();
        out.dedup();
        out
    }
}

impl ZLattice for NormLattice {
    type Point = OLattice;

    fn leq(&self, x: &OLattice, y: &OLattice) -> bool {
        x.contains(y)
    }

    fn meet(&self, x: &OLattice, y: &OLattice) -> OLattice {
        x.sum(y)
    }

    fn join(&self, x: &OLattice, y: &OLattice) -> OLattice {
        x.intersect(y)
    }

    fn shift(&self, x: &OLattice, k: i64) -> OLattice {
        x.scale(k as i32)
    }

    fn grade_gap(&self, x: &OLattice, y: &OLattice) -> Option<u64> {
        x.contains(y).then(|| (y.det_valuation() - x.det_valuation()) as u64)
    }

    fn cofinality_bound(&self, x: &OLattice, y: &OLattice) -> i64 {
        let mut k = 0i64;
        loop {
            if x.scale(-(k as i32)).contains(y) && y.contains(&x.scale(k as i32)) {
                return k;
            }
            k += 1;
            assert!(k < 10_000, "cofinality search diverged");
        }
    }

    fn interval(&self, lo: &OLattice, hi: &OLattice) -> Vec<OLattice> {
        if !lo.contains(hi) {
            return Vec::new();
        }
        // climb from hi to lo through index-q covers
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = vec![hi.clone()];
        seen.insert(hi.clone());
        let mut at = 0;
        while at < queue.len() {
            let m = queue[at].clone();
            at += 1;
            for cover in self.cover_candidates(&m, lo) {
                if seen.insert(cover.clone()) {
                    queue.push(cover);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn orbit_rep(&self, x: &OLattice) -> (OLattice, i64) {
        // unique representative with determinant valuation in [0, n)
        let d = x.det_valuation();
        let k = d.div_euclid(self.n as i32);
        (x.scale(-k), i64::from(k))
    }

    fn label(&self, x: &OLattice) -> String {
        x.label()
    }
}

/// Neighbor classes of a homothety class: lattices strictly between tL and L.
pub fn class_neighbors(norm: &NormLattice, rep: &OLattice) -> Vec<OLattice> {
    let mut out: Vec<OLattice> = norm
        .interval(rep, &rep.scale(1))
        .into_iter()
        .map(|m| m.class_representative().0)
        .filter(|m| m != &rep.class_representative().0)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Direct BFS enumeration of the building ball around the class of O^n.
pub fn building_ball(
    n: usize,
    q: u8,
    radius: u32,
    cap: usize,
) -> Result<BallGraph<OLattice>, BuildingError> {
    let norm = NormLattice::new(n, q)?;
    let center = norm.base().class_representative().0;
    let mut points = vec![center.clone()];
    let mut index = std::collections::BTreeMap::new();
    index.insert(center, 0usize);
    let mut frontier = vec![0usize];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let p = points[v].clone();
            for nb in class_neighbors(&norm, &p) {
                if !index.contains_key(&nb) {
                    if points.len() >= cap {
                        return Err(BuildingError::CapExceeded(format!(
                            "building ball exceeded {cap} vertices"
                        )));
                    }
                    index.insert(nb.clone(), points.len());
                    next.push(points.len());
                    points.push(nb);
                }
            }
        }
        frontier = next;
    }
    let mut edges = Vec::new();
    for v in 0..points.len() {
        for nb in class_neighbors(&norm, &points[v]) {
            if let Some(&w) = index.get(&nb) {
                if v < w {
                    edges.push((v, w));
                }
            }
        }
    }
    let names = points.iter().map(|p| p.label()).collect();
    let graph = FiniteGraph::from_edges(names, &edges, Some(BallMeta { center: 0, radius }))
        .map_err(|e| BuildingError::Parse(e.to_string()))?;
    Ok(BallGraph::from_parts(graph, points))
}

/// The same ball produced through the generic ℤ-action quotient machinery.
pub fn norm_quotient_ball(
    n: usize,
    q: u8,
    radius: u32,
    cap: usize,
) -> Result<BallGraph<OLattice>, ZactionError> {
    let norm = NormLattice::new(n, q).map_err(|e| ZactionError::Construction(e.to_string()))?;
    crate::zaction::build_quotient_ball(&norm, &norm.base(), radius, cap)
}
