//! Lattices with an order-increasing ℤ-action, the two graphs they generate,
//! and explicit witnesses for the triangle/quadrangle conditions.
//!
//! Two graphs are derived from a lattice `L` with a cofinal increasing
//! ℤ-action (written `x + k`):
//! - the *quotient graph* on `L/ℤ`, with an edge between orbits that admit
//!   lifts `x₀ ≤ y₀ ≤ x₀ + 1`;
//! - the *lattice graph* on `L` itself, with an edge when `x ≤ y ≤ x + 1` or
//!   `y ≤ x ≤ y + 1`.
//!
//! Both come with closed-form distance formulas whose witnesses this module
//! constructs explicitly, so that graph-level audits can be cross-checked
//! against the order-theoretic picture.

use std::collections::BTreeMap;
use std::fmt;

use crate::wmcheck::{BallMeta, FiniteGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZactionError {
    Precondition(String),
    CapExceeded { cap: usize, reached: usize },
    Construction(String),
}

impl fmt::Display for ZactionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZactionError::Precondition(m) => write!(f, "precondition violated: {m}"),
            ZactionError::CapExceeded { cap, reached } => {
                write!(f, "enumeration cap {cap} exceeded ({reached} points)")
            }
            ZactionError::Construction(m) => write!(f, "construction failed: {m}"),
        }
    }
}

impl std::error::Error for ZactionError {}

/// A lattice with an order-increasing, cofinal ℤ-action, exposed through the
/// finite queries every construction in this crate needs.
///
/// Implementations must guarantee:
/// - `shift` is an order automorphism with `x < shift(x, 1)`;
/// - `meet`/`join` satisfy the lattice universal properties;
/// - `cofinality_bound(x, y)` returns `k ≥ 0` with `x − k ≤ y ≤ x + k`;
/// - `grade_gap(x, y)` is an additive length, zero exactly on equal points;
/// - `interval(lo, hi)` enumerates `{z : lo ≤ z ≤ hi}` exactly;
/// - `orbit_rep` picks one representative per ℤ-orbit, with
///   `orbit_rep(shift(x, k)) = (orbit_rep(x).0, orbit_rep(x).1 + k)`.
pub trait ZLattice {
    type Point: Clone + Eq + Ord + std::fmt::Debug;

    fn leq(&self, x: &Self::Point, y: &Self::Point) -> bool;
    fn meet(&self, x: &Self::Point, y: &Self::Point) -> Self::Point;
    fn join(&self, x: &Self::Point, y: &Self::Point) -> Self::Point;
    fn shift(&self, x: &Self::Point, k: i64) -> Self::Point;
    fn grade_gap(&self, x: &Self::Point, y: &Self::Point) -> Option<u64>;
    fn cofinality_bound(&self, x: &Self::Point, y: &Self::Point) -> i64;
    fn interval(&self, lo: &Self::Point, hi: &Self::Point) -> Vec<Self::Point>;
    fn orbit_rep(&self, x: &Self::Point) -> (Self::Point, i64);
    fn label(&self, x: &Self::Point) -> String;
}

/// `ℤ^n` with the product order and the diagonal ℤ-action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZnLattice {
    pub dim: usize,
}

impl ZnLattice {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1);
        ZnLattice { dim }
    }

    pub fn point(&self, coords: &[i64]) -> Vec<i64> {
        assert_eq!(coords.len(), self.dim);
        coords.to_vec()
    }
}

impl ZLattice for ZnLattice {
    type Point = Vec<i64>;

    fn leq(&self, x: &Vec<i64>, y: &Vec<i64>) -> bool {
        x.iter().zip(y).all(|(a, b)| a <= b)
    }

    fn meet(&self, x: &Vec<i64>, y: &Vec<i64>) -> Vec<i64> {
        x.iter().zip(y).map(|(a, b)| *a.min(b)).collect()
    }

    fn join(&self, x: &Vec<i64>, y: &Vec<i64>) -> Vec<i64> {
        x.iter().zip(y).map(|(a, b)| *a.max(b)).collect()
    }

    fn shift(&self, x: &Vec<i64>, k: i64) -> Vec<i64> {
        x.iter().map(|a| a + k).collect()
    }

    fn grade_gap(&self, x: &Vec<i64>, y: &Vec<i64>) -> Option<u64> {
        if self.leq(x, y) {
            Some(x.iter().zip(y).map(|(a, b)| (b - a) as u64).sum())
        } else {
            None
        }
    }

    fn cofinality_bound(&self, x: &Vec<i64>, y: &Vec<i64>) -> i64 {
        x.iter().zip(y).map(|(a, b)| (a - b).abs()).max().unwrap_or(0)
    }

    fn interval(&self, lo: &Vec<i64>, hi: &Vec<i64>) -> Vec<Vec<i64>> {
        if !self.leq(lo, hi) {
            return Vec::new();
        }
        let mut out = vec![Vec::new()];
        for i in 0..self.dim {
            let mut next = Vec::new();
            for partial in &out {
                for v in lo[i]..=hi[i] {
                    let mut p = partial.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    fn orbit_rep(&self, x: &Vec<i64>) -> (Vec<i64>, i64) {
        let k = *x.iter().min().unwrap();
        (x.iter().map(|a| a - k).collect(), k)
    }

    fn label(&self, x: &Vec<i64>) -> String {
        let coords: Vec<String> = x.iter().map(|a| a.to_string()).collect();
        format!("({})", coords.join(","))
    }
}

/// Minimal `n ≥ 0` with `x ≤ y + n`; exists because the action is cofinal.
pub fn min_shift_above<L: ZLattice>(l: &L, x: &L::Point, y: &L::Point) -> u32 {
    let k = l.cofinality_bound(x, y).max(0);
    for n in 0..=k {
        if l.leq(x, &l.shift(y, n)) {
            return n as u32;
        }
    }
    unreachable!("cofinality bound {k} did not dominate the pair")
}

/// The graph distance in the quotient graph, by the closed formula
/// `min {n ≥ 0 | ∃h, x₀ ≤ y₀ + h ≤ x₀ + n}`.
pub fn quotient_distance<L: ZLattice>(l: &L, x0: &L::Point, y0: &L::Point) -> u32 {
    let k = l.cofinality_bound(x0, y0).max(0);
    let mut best: Option<i64> = None;
    for h in -k..=(3 * k + 1) {
        let yh = l.shift(y0, h);
        if !l.leq(x0, &yh) {
            continue;
        }
        let limit = best.map_or(2 * k + 1, |b| b - 1);
        for n in 0..=limit {
            if l.leq(&yh, &l.shift(x0, n)) {
                best = Some(n);
                break;
            }
        }
        if best == Some(0) {
            break;
        }
    }
    best.expect("cofinality guarantees some window fits") as u32
}

/// The graph distance in the lattice graph: `min {n + m | x ≤ y+n, y ≤ x+m}`,
/// together with a geodesic running through `x ∧ y`.
pub fn lattice_distance<L: ZLattice>(l: &L, x: &L::Point, y: &L::Point) -> (u32, Vec<L::Point>) {
    let n = min_shift_above(l, x, y);
    let m = min_shift_above(l, y, x);
    let w = l.meet(x, y);
    // path x … w reversed, then w … y; each leg is z_k = (w + k) ∧ target
    let mut path: Vec<L::Point> = Vec::new();
    for k in (0..=n).rev() {
        path.push(l.meet(&l.shift(&w, k as i64), x));
    }
    for k in 1..=m {
        path.push(l.meet(&l.shift(&w, k as i64), y));
    }
    path.dedup();
    (n + m, path)
}

/// Distance-2 pair signature: minimal (p, m) with `a ≤ b+p`, `b ≤ a+m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// (1,1): neither comparable, one shift apart both ways.
    Mixed,
    /// (0,2): a ≤ b ≤ a+2.
    Up,
    /// (2,0): b ≤ a ≤ b+2.
    Down,
}

fn classify_pair<L: ZLattice>(l: &L, a: &L::Point, b: &L::Point) -> Result<PairKind, ZactionError> {
    let p = min_shift_above(l, a, b);
    let m = min_shift_above(l, b, a);
    match (p, m) {
        (1, 1) => Ok(PairKind::Mixed),
        (0, 2) => Ok(PairKind::Up),
        (2, 0) => Ok(PairKind::Down),
        other => Err(ZactionError::Precondition(format!(
            "pair is not at lattice distance 2 (minimal shifts {other:?})"
        ))),
    }
}

/// Finds the unique lift `y + h` inside `[x₀, x₀ + n]`.
fn lift_into_window<L: ZLattice>(
    l: &L,
    x0: &L::Point,
    y: &L::Point,
    n: u32,
) -> Result<L::Point, ZactionError> {
    let k = l.cofinality_bound(x0, y).max(0) + n as i64 + 1;
    let top = l.shift(x0, n as i64);
    for h in -k..=k {
        let yh = l.shift(y, h);
        if l.leq(x0, &yh) && l.leq(&yh, &top) {
            return Ok(yh);
        }
    }
    Err(ZactionError::Precondition(format!(
        "no lift of the point lies in a window of height {n}"
    )))
}

/// Finds the lift `z + h` with `y₀ ≤ z + h ≤ y₀ + 1` (quotient adjacency).
fn lift_adjacent_above<L: ZLattice>(
    l: &L,
    y0: &L::Point,
    z: &L::Point,
) -> Result<L::Point, ZactionError> {
    lift_into_window(l, y0, z, 1)
}

/// Triangle-condition witness in the quotient graph: given orbits at
/// `d(x,y) = d(x,z) = n ≥ 2`, `d(y,z) = 1`, returns `u₀` with
/// `d(x,u) = n−1` and `u` adjacent to both `y` and `z`.
pub fn quotient_triangle_witness<L: ZLattice>(
    l: &L,
    x0: &L::Point,
    y0: &L::Point,
    z0: &L::Point,
) -> Result<L::Point, ZactionError> {
    let n = quotient_distance(l, x0, y0);
    if n < 2 {
        return Err(ZactionError::Precondition(format!("d(x,y) = {n} but n ≥ 2 required")));
    }
    if quotient_distance(l, x0, z0) != n {
        return Err(ZactionError::Precondition("d(x,z) ≠ d(x,y)".into()));
    }
    if quotient_distance(l, y0, z0) != 1 {
        return Err(ZactionError::Precondition("d(y,z) ≠ 1".into()));
    }

    let y = lift_into_window(l, x0, y0, n)?;
    let z = lift_adjacent_above(l, &y, z0)?;
    // either z ∈ [x₀, x₀+n] already, or swap to (z−1, y)
    let top = l.shift(x0, n as i64);
    let (y, z) = if l.leq(x0, &z) && l.leq(&z, &top) {
        (y, z)
    } else {
        (l.shift(&z, -1), y)
    };
    let u = l.meet(&l.shift(x0, n as i64 - 1), &y);

    for (label, point, want) in
        [("x", x0, n - 1), ("y", &y, 1), ("z", &z, 1)]
    {
        let got = quotient_distance(l, &u, point);
        if got != want {
            return Err(ZactionError::Construction(format!(
                "witness has d(u,{label}) = {got}, expected {want}"
            )));
        }
    }
    Ok(u)
}

/// Quadrangle-condition witness in the quotient graph (square through `t`).
pub fn quotient_quadrangle_witness<L: ZLattice>(
    l: &L,
    x0: &L::Point,
    y0: &L::Point,
    z0: &L::Point,
    t0: &L::Point,
) -> Result<L::Point, ZactionError> {
    let n = quotient_distance(l, x0, y0);
    if n < 2 {
        return Err(ZactionError::Precondition(format!("d(x,y) = {n} but n ≥ 2 required")));
    }
    if quotient_distance(l, x0, z0) != n {
        return Err(ZactionError::Precondition("d(x,z) ≠ d(x,y)".into()));
    }
    if quotient_distance(l, y0, t0) != 1 || quotient_distance(l, z0, t0) != 1 {
        return Err(ZactionError::Precondition("t must be adjacent to y and z".into()));
    }
    if quotient_distance(l, x0, t0) != n + 1 {
        return Err(ZactionError::Precondition("d(x,t) ≠ n+1".into()));
    }

    let y = lift_into_window(l, x0, y0, n)?;
    let z = lift_into_window(l, x0, z0, n)?;
    let t = lift_adjacent_above(l, &y, t0)?;
    // forced by the proof: the same lift of t sits above z as well
    if !(l.leq(&z, &t) && l.leq(&t, &l.shift(&z, 1))) {
        return Err(ZactionError::Construction(
            "lift of t is not adjacent above z; preconditions are inconsistent".into(),
        ));
    }
    let s = l.meet(&y, &z);
    let u = l.meet(&l.shift(x0, n as i64 - 1), &s);

    for (label, point, want) in
        [("x", x0, n - 1), ("y", &y, 1), ("z", &z, 1)]
    {
        let got = quotient_distance(l, &u, point);
        if got != want {
            return Err(ZactionError::Construction(format!(
                "witness has d(u,{label}) = {got}, expected {want}"
            )));
        }
    }
    Ok(u)
}

/// Strengthened triangle condition: a common neighbor at distance n−1 for a
/// whole clique `Y` in the sphere of radius n of the quotient graph.
pub fn strong_triangle_witness<L: ZLattice>(
    l: &L,
    x0: &L::Point,
    clique: &[L::Point],
) -> Result<L::Point, ZactionError> {
    if clique.is_empty() {
        return Err(ZactionError::Precondition("empty clique".into()));
    }
    let n = quotient_distance(l, x0, &clique[0]);
    if n < 2 {
        return Err(ZactionError::Precondition(format!("d(x,Y) = {n} but n ≥ 2 required")));
    }
    for (i, y) in clique.iter().enumerate() {
        if quotient_distance(l, x0, y) != n {
            return Err(ZactionError::Precondition("unequal distances to the basepoint".into()));
        }
        for z in &clique[i + 1..] {
            if quotient_distance(l, y, z) != 1 {
                return Err(ZactionError::Precondition("Y is not a clique".into()));
            }
        }
    }

    // lift every vertex of the clique into [x₀, x₀+n]; the remark shows these
    // lifts are pairwise comparable within one shift
    let mut lifts = Vec::with_capacity(clique.len());
    for y in clique {
        lifts.push(lift_into_window(l, x0, y, n)?);
    }
    let mut v = lifts[0].clone();
    for z in &lifts[1..] {
        v = l.meet(&v, z);
    }
    let u = l.meet(&l.shift(x0, n as i64 - 1), &v);

    let got = quotient_distance(l, &u, x0);
    if got != n - 1 {
        return Err(ZactionError::Construction(format!(
            "witness has d(u,x) = {got}, expected {}",
            n - 1
        )));
    }
    for z in clique {
        if quotient_distance(l, &u, z) != 1 {
            return Err(ZactionError::Construction(
                "witness is not adjacent to the whole clique".into(),
            ));
        }
    }
    Ok(u)
}

/// Which branch of the triangle-condition proof produced the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleCase {
    SameWindowPositive,
    SameWindowZero,
    ShiftedWindow,
}

/// Triangle-condition witness in the lattice graph: for `y ≤ z ≤ y+1` (or the
/// swap) with `d(x,y) = d(x,z) = n ≥ 2`, returns `u` adjacent to `y` and `z`
/// at distance n−1 from `x`.
pub fn lattice_triangle_witness<L: ZLattice>(
    l: &L,
    x: &L::Point,
    y: &L::Point,
    z: &L::Point,
) -> Result<(L::Point, TriangleCase), ZactionError> {
    // normalize to y ≤ z ≤ y + 1
    let (y, z) = if l.leq(y, z) && l.leq(z, &l.shift(y, 1)) {
        (y.clone(), z.clone())
    } else if l.leq(z, y) && l.leq(y, &l.shift(z, 1)) {
        (z.clone(), y.clone())
    } else {
        return Err(ZactionError::Precondition("y and z are not adjacent".into()));
    };

    let p = min_shift_above(l, x, &y);
    let m = min_shift_above(l, &y, x);
    let n = p + m;
    if n < 2 {
        return Err(ZactionError::Precondition(format!("d(x,y) = {n} but n ≥ 2 required")));
    }
    let (pz, mz) = (min_shift_above(l, x, &z), min_shift_above(l, &z, x));
    if pz + mz != n {
        return Err(ZactionError::Precondition("d(x,z) ≠ d(x,y)".into()));
    }

    let (u, case) = if (pz, mz) == (p, m) {
        if m >= 1 {
            (l.meet(&y, &l.shift(x, m as i64 - 1)), TriangleCase::SameWindowPositive)
        } else {
            (l.meet(&l.shift(&y, 1), x), TriangleCase::SameWindowZero)
        }
    } else if pz + 1 == p && mz == m + 1 {
        (l.meet(&z, &l.shift(x, m as i64)), TriangleCase::ShiftedWindow)
    } else {
        return Err(ZactionError::Precondition(format!(
            "incoherent minimal shifts: ({p},{m}) vs ({pz},{mz})"
        )));
    };

    for (label, point, want) in [("x", x, n - 1), ("y", &y, 1), ("z", &z, 1)] {
        let (got, _) = lattice_distance(l, &u, point);
        if got != want {
            return Err(ZactionError::Construction(format!(
                "witness has d(u,{label}) = {got}, expected {want} (case {case:?})"
            )));
        }
    }
    Ok((u, case))
}

/// Outcome of the local quadrangle dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalQcOutcome<P> {
    /// A vertex adjacent to x, y, and z.
    Witness { point: P, case: &'static str },
    /// The proof shows this pair-type configuration admits no valid `t`; it
    /// can only be reached on data that is not a genuine quadrangle instance.
    Impossible { case: &'static str },
}

/// Local quadrangle condition in the lattice graph: `d(x,y) = d(x,z) =
/// d(y,z) = 2`, `d(x,t) = 3`, `d(y,t) = d(z,t) = 1`. Constructive cases
/// return `u` adjacent to all of x, y, z; the remaining pair-type
/// configurations are contradictory and tagged.
pub fn local_quadrangle_check<L: ZLattice>(
    l: &L,
    x: &L::Point,
    y: &L::Point,
    z: &L::Point,
    t: &L::Point,
) -> Result<LocalQcOutcome<L::Point>, ZactionError> {
    for (label, a, b, want) in [
        ("d(x,y)", x, y, 2),
        ("d(x,z)", x, z, 2),
        ("d(y,z)", y, z, 2),
        ("d(x,t)", x, t, 3),
        ("d(y,t)", y, t, 1),
        ("d(z,t)", z, t, 1),
    ] {
        let (got, _) = lattice_distance(l, a, b);
        if got != want {
            return Err(ZactionError::Precondition(format!("{label} = {got}, expected {want}")));
        }
    }

    use PairKind::*;
    let xy = classify_pair(l, x, y)?;
    let xz = classify_pair(l, x, z)?;
    let yz = classify_pair(l, y, z)?;

    let meet3 = |a: &L::Point, b: &L::Point, c: &L::Point| l.meet(&l.meet(a, b), c);
    let join3 = |a: &L::Point, b: &L::Point, c: &L::Point| l.join(&l.join(a, b), c);
    let up = |a: &L::Point| l.shift(a, 1);
    let down = |a: &L::Point| l.shift(a, -1);

    let outcome = match (xy, xz, yz) {
        (Mixed, Mixed, Mixed) => LocalQcOutcome::Witness {
            point: meet3(x, y, z),
            case: "all-mixed",
        },
        (Up, Up, Mixed) => LocalQcOutcome::Witness {
            point: meet3(&up(x), y, z),
            case: "xy-xz-up",
        },
        (Down, Down, Mixed) => LocalQcOutcome::Witness {
            point: join3(&down(x), y, z),
            case: "xy-xz-down",
        },
        (Mixed, Up, Up) => LocalQcOutcome::Witness {
            point: meet3(&up(x), &up(y), z),
            case: "xz-yz-up",
        },
        (Mixed, Down, Down) => LocalQcOutcome::Witness {
            point: join3(&down(x), &down(y), z),
            case: "xz-yz-down",
        },
        (Up, Mixed, Down) => LocalQcOutcome::Witness {
            point: meet3(&up(x), &up(z), y),
            case: "xy-zy-up",
        },
        (Down, Mixed, Up) => LocalQcOutcome::Witness {
            point: join3(&down(x), &down(z), y),
            case: "xy-zy-down",
        },
        (Mixed, Mixed, _) => LocalQcOutcome::Impossible { case: "yz-covered" },
        (Up, Mixed, Mixed) | (Mixed, Up, Mixed) => LocalQcOutcome::Impossible { case: "one-up" },
        (Down, Mixed, Mixed) | (Mixed, Down, Mixed) => {
            LocalQcOutcome::Impossible { case: "one-down" }
        }
        (Up, Down, _) | (Down, Up, _) => LocalQcOutcome::Impossible { case: "opposed" },
        (Up, Up, _) | (Down, Down, _) | (Up, Mixed, Up) | (Down, Mixed, Down)
        | (Mixed, Up, Down) | (Mixed, Down, Up) => {
            LocalQcOutcome::Impossible { case: "all-covered" }
        }
    };

    if let LocalQcOutcome::Witness { point, case } = &outcome {
        for (label, other) in [("x", x), ("y", y), ("z", z)] {
            let (got, _) = lattice_distance(l, point, other);
            if got != 1 {
                return Err(ZactionError::Construction(format!(
                    "witness has d(u,{label}) = {got}, expected 1 (case {case})"
                )));
            }
        }
    }
    Ok(outcome)
}

/// A finite ball of the quotient or lattice graph, remembering the lattice
/// point behind every vertex.
#[derive(Debug, Clone)]
pub struct BallGraph<P> {
    pub graph: FiniteGraph,
    pub points: Vec<P>,
    index: BTreeMap<P, usize>,
}

impl<P: Clone + Ord> BallGraph<P> {
    pub fn from_parts(graph: FiniteGraph, points: Vec<P>) -> Self {
        let index = points.iter().cloned().zip(0..).collect();
        BallGraph { graph, points, index }
    }

    pub fn vertex_of(&self, p: &P) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn center(&self) -> usize {
        self.graph.ball_meta().expect("balls always carry metadata").center
    }
}

fn build_ball<P, NF, LF>(
    center: P,
    radius: u32,
    cap: usize,
    mut neighbors: NF,
    label: LF,
) -> Result<BallGraph<P>, ZactionError>
where
    P: Clone + Ord + std::fmt::Debug,
    NF: FnMut(&P) -> Vec<P>,
    LF: Fn(&P) -> String,
{
    let mut points = vec![center.clone()];
    let mut index = BTreeMap::new();
    index.insert(center, 0usize);
    let mut frontier = vec![0usize];
    for _step in 0..radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let p = points[v].clone();
            for q in neighbors(&p) {
                if !index.contains_key(&q) {
                    if points.len() >= cap {
                        return Err(ZactionError::CapExceeded {
                            cap,
                            reached: points.len() + 1,
                        });
                    }
                    index.insert(q.clone(), points.len());
                    next.push(points.len());
                    points.push(q);
                }
            }
        }
        frontier = next;
    }
    // all edges with both endpoints inside the ball
    let mut edges = Vec::new();
    for v in 0..points.len() {
        let p = points[v].clone();
        for q in neighbors(&p) {
            if let Some(&w) = index.get(&q) {
                if v < w {
                    edges.push((v, w));
                }
            }
        }
    }
    let names = points.iter().map(&label).collect();
    let graph = FiniteGraph::from_edges(names, &edges, Some(BallMeta { center: 0, radius }))
        .map_err(|e| ZactionError::Construction(e.to_string()))?;
    Ok(BallGraph { graph, points, index })
}

/// Up- and down-neighbors of a point in the lattice graph.
pub fn lattice_neighbors<L: ZLattice>(l: &L, p: &L::Point) -> Vec<L::Point> {
    let mut out: Vec<L::Point> = l
        .interval(p, &l.shift(p, 1))
        .into_iter()
        .chain(l.interval(&l.shift(p, -1), p))
        .filter(|q| q != p)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Neighboring orbits of an orbit representative in the quotient graph.
pub fn quotient_neighbors<L: ZLattice>(l: &L, rep: &L::Point) -> Vec<L::Point> {
    let mut out: Vec<L::Point> = l
        .interval(rep, &l.shift(rep, 1))
        .into_iter()
        .map(|q| l.orbit_rep(&q).0)
        .filter(|q| q != rep)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// BFS ball of the lattice graph (§3 edge rule) around `center`.
pub fn build_lattice_ball<L: ZLattice>(
    l: &L,
    center: &L::Point,
    radius: u32,
    cap: usize,
) -> Result<BallGraph<L::Point>, ZactionError> {
    build_ball(center.clone(), radius, cap, |p| lattice_neighbors(l, p), |p| l.label(p))
}

/// BFS ball of the quotient graph (§2 edge rule) around the orbit of `center`.
pub fn build_quotient_ball<L: ZLattice>(
    l: &L,
    center: &L::Point,
    radius: u32,
    cap: usize,
) -> Result<BallGraph<L::Point>, ZactionError> {
    let (rep, _) = l.orbit_rep(center);
    build_ball(rep, radius, cap, |p| quotient_neighbors(l, p), |p| l.label(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wmcheck;

    const CAP: usize = 200_000;

    fn z3() -> ZnLattice {
        ZnLattice::new(3)
    }

    fn pt(coords: &[i64]) -> Vec<i64> {
        coords.to_vec()
    }

    #[test]
    fn quotient_distance_examples() {
        let l = z3();
        assert_eq!(quotient_distance(&l, &pt(&[0, 0, 0]), &pt(&[1, 0, 0])), 1);
        assert_eq!(quotient_distance(&l, &pt(&[0, 0, 0]), &pt(&[2, 1, 0])), 2);
        assert_eq!(quotient_distance(&l, &pt(&[4, -1, 7]), &pt(&[9, 4, 12])), 0);
    }

    #[test]
    fn lattice_distance_examples() {
        let l = z3();
        let (d, _) = lattice_distance(&l, &pt(&[0, 0, 0]), &pt(&[1, 0, 0]));
        assert_eq!(d, 1);
        let (d, path) = lattice_distance(&l, &pt(&[0, 0, 0]), &pt(&[1, 1, -1]));
        assert_eq!(d, 2);
        assert_eq!(path.len() as u32, d + 1);
        let (d, _) = lattice_distance(&l, &pt(&[0, 0, 0]), &pt(&[2, 2, 2]));
        assert_eq!(d, 2);
    }

    #[test]
    fn geodesic_passes_through_meet_and_is_a_path() {
        let l = z3();
        let x = pt(&[0, 2, -1]);
        let y = pt(&[3, -1, 1]);
        let (d, path) = lattice_distance(&l, &x, &y);
        assert_eq!(path.first(), Some(&x));
        assert_eq!(path.last(), Some(&y));
        assert_eq!(path.len() as u32, d + 1);
        assert!(path.contains(&l.meet(&x, &y)));
        for pair in path.windows(2) {
            let (step, _) = lattice_distance(&l, &pair[0], &pair[1]);
            assert_eq!(step, 1, "consecutive geodesic points must be adjacent");
        }
    }

    #[test]
    fn lemma_3_2_path_is_monotone() {
        let l = z3();
        let x = pt(&[0, 0, 0]);
        let y = pt(&[2, 3, 1]);
        let bound = l.cofinality_bound(&x, &y);
        let mut prev = l.meet(&x, &y);
        for k in 1..=bound {
            let cur = l.meet(&l.shift(&x, k), &y);
            assert!(l.leq(&prev, &cur));
            assert!(l.leq(&cur, &l.shift(&prev, 1)));
            prev = cur;
        }
        assert_eq!(prev, y);
    }

    #[test]
    fn quotient_triangle_witness_examples() {
        let l = z3();
        let u = quotient_triangle_witness(&l, &pt(&[0, 0, 0]), &pt(&[2, 1, 0]), &pt(&[2, 2, 0]))
            .unwrap();
        assert_eq!(l.orbit_rep(&u).0, pt(&[1, 1, 0]).to_vec());

        // degenerate z = y rejected
        let err = quotient_triangle_witness(&l, &pt(&[0, 0, 0]), &pt(&[2, 1, 0]), &pt(&[2, 1, 0]));
        assert!(matches!(err, Err(ZactionError::Precondition(_))));

        // every triangle instance of a quotient ball yields a valid witness
        let ball = build_quotient_ball(&l, &pt(&[0, 0, 0]), 3, CAP).unwrap();
        let g = &ball.graph;
        let mut count = 0;
        for v in 0..g.order() {
            let n = g.dist(0, v);
            if n < 2 || !g.certified(0, v) {
                continue;
            }
            for &w in g.neighbors(v) {
                if w <= v || g.dist(0, w) != n || !g.certified(0, w) {
                    continue;
                }
                let u = quotient_triangle_witness(&l, &ball.points[0], &ball.points[v], &ball.points[w])
                    .unwrap();
                assert_eq!(quotient_distance(&l, &u, &ball.points[0]), n - 1);
                count += 1;
            }
        }
        assert!(count > 10, "expected triangle instances, found {count}");
    }

    #[test]
    fn quotient_quadrangle_witness_examples() {
        let l = z3();
        // genuine instance: t = (3,1,0) at distance 3, its neighbors (2,1,0)
        // and (2,0,0) at distance 2
        let u = quotient_quadrangle_witness(
            &l,
            &pt(&[0, 0, 0]),
            &pt(&[2, 1, 0]),
            &pt(&[2, 0, 0]),
            &pt(&[3, 1, 0]),
        )
        .unwrap();
        assert_eq!(l.orbit_rep(&u).0, pt(&[1, 0, 0]));

        // d(x,t) = n instead of n+1 rejected
        let err = quotient_quadrangle_witness(
            &l,
            &pt(&[0, 0, 0]),
            &pt(&[2, 1, 0]),
            &pt(&[1, 2, 0]),
            &pt(&[2, 2, 0]),
        );
        assert!(matches!(err, Err(ZactionError::Precondition(_))));

        let l4 = ZnLattice::new(4);
        let u = quotient_quadrangle_witness(
            &l4,
            &pt(&[0, 0, 0, 0]),
            &pt(&[2, 1, 0, 0]),
            &pt(&[2, 0, 0, 0]),
            &pt(&[3, 1, 0, 0]),
        )
        .unwrap();
        assert_eq!(l4.orbit_rep(&u).0, pt(&[1, 0, 0, 0]));
    }

    #[test]
    fn quotient_quadrangle_witness_scan() {
        let l = z3();
        let ball = build_quotient_ball(&l, &pt(&[0, 0, 0]), 4, CAP).unwrap();
        let g = &ball.graph;
        let mut count = 0;
        for t in 0..g.order() {
            let nt = g.dist(0, t);
            if nt < 3 || !g.certified(0, t) {
                continue;
            }
            let nbrs: Vec<usize> = g
                .neighbors(t)
                .iter()
                .copied()
                .filter(|&y| g.dist(0, y) == nt - 1 && g.certified(0, y))
                .collect();
            for (i, &y) in nbrs.iter().enumerate() {
                for &z in &nbrs[i + 1..] {
                    let u = quotient_quadrangle_witness(
                        &l,
                        &ball.points[0],
                        &ball.points[y],
                        &ball.points[z],
                        &ball.points[t],
                    )
                    .unwrap();
                    assert_eq!(quotient_distance(&l, &u, &ball.points[0]), nt - 2);
                    assert_eq!(quotient_distance(&l, &u, &ball.points[y]), 1);
                    assert_eq!(quotient_distance(&l, &u, &ball.points[z]), 1);
                    count += 1;
                }
            }
        }
        assert!(count > 10, "expected quadrangle instances, found {count}");
    }

    #[test]
    fn strong_triangle_witness_examples() {
        let l = z3();
        // singleton clique reduces to the plain triangle witness
        let u1 = strong_triangle_witness(&l, &pt(&[0, 0, 0]), &[pt(&[2, 1, 0])]).unwrap();
        assert_eq!(quotient_distance(&l, &u1, &pt(&[0, 0, 0])), 1);

        let clique = vec![pt(&[2, 1, 0]), pt(&[2, 2, 0])];
        let u = strong_triangle_witness(&l, &pt(&[0, 0, 0]), &clique).unwrap();
        for y in &clique {
            assert_eq!(quotient_distance(&l, &u, y), 1);
        }
        assert_eq!(quotient_distance(&l, &u, &pt(&[0, 0, 0])), 1);
        assert_eq!(l.orbit_rep(&u).0, pt(&[1, 1, 0]));

        // two clique vertices at distance 2 rejected
        let bad = vec![pt(&[2, 1, 0]), pt(&[1, 2, 0])];
        assert!(strong_triangle_witness(&l, &pt(&[0, 0, 0]), &bad).is_err());
    }

    #[test]
    fn strong_triangle_witness_scan() {
        // every clique of size ≤ 3 in every certified sphere admits a witness
        let l = z3();
        let ball = build_quotient_ball(&l, &pt(&[0, 0, 0]), 3, CAP).unwrap();
        let g = &ball.graph;
        let mut count = 0;
        for n in 2..=2u32 {
            let sphere: Vec<usize> = (0..g.order())
                .filter(|&v| g.dist(0, v) == n && g.certified(0, v))
                .collect();
            for (i, &a) in sphere.iter().enumerate() {
                count += 1;
                strong_triangle_witness(&l, &ball.points[0], &[ball.points[a].clone()]).unwrap();
                for (j, &b) in sphere.iter().enumerate().skip(i + 1) {
                    if !g.adjacent(a, b) {
                        continue;
                    }
                    count += 1;
                    strong_triangle_witness(
                        &l,
                        &ball.points[0],
                        &[ball.points[a].clone(), ball.points[b].clone()],
                    )
                    .unwrap();
                    for &c in &sphere[j + 1..] {
                        if g.adjacent(a, c) && g.adjacent(b, c) {
                            count += 1;
                            strong_triangle_witness(
                                &l,
                                &ball.points[0],
                                &[
                                    ball.points[a].clone(),
                                    ball.points[b].clone(),
                                    ball.points[c].clone(),
                                ],
                            )
                            .unwrap();
                        }
                    }
                }
            }
        }
        assert!(count > 10, "expected cliques in the sphere, found {count}");
    }

    #[test]
    fn lattice_triangle_witness_dispatch() {
        let l = z3();
        let x = pt(&[0, 0, 0]);
        // excluded: d(x,y) = 1 < 2
        assert!(lattice_triangle_witness(&l, &x, &pt(&[1, 1, 1]), &pt(&[2, 2, 2])).is_err());

        // the (2,1)/(2,2) pair sits at distance 2 with (p,m) = (0,2)
        let l2 = ZnLattice::new(2);
        let (u, case) =
            lattice_triangle_witness(&l2, &pt(&[0, 0]), &pt(&[2, 1]), &pt(&[2, 2])).unwrap();
        assert_eq!(u, pt(&[1, 1]));
        assert_eq!(case, TriangleCase::SameWindowPositive);
        let (d, _) = lattice_distance(&l2, &u, &pt(&[0, 0]));
        assert_eq!(d, 1);
    }

    #[test]
    fn lattice_triangle_witness_scan() {
        // hunt real triangle instances in a ball and validate every one
        let l = z3();
        let ball = build_lattice_ball(&l, &pt(&[0, 0, 0]), 3, CAP).unwrap();
        let g = &ball.graph;
        let x = 0;
        let mut count = 0;
        for v in 0..g.order() {
            if g.dist(x, v) < 2 || !g.certified(x, v) {
                continue;
            }
            let n = g.dist(x, v);
            for &w in g.neighbors(v) {
                if w <= v || g.dist(x, w) != n || !g.certified(x, w) {
                    continue;
                }
                let (u, _case) =
                    lattice_triangle_witness(&l, &ball.points[x], &ball.points[v], &ball.points[w])
                        .unwrap();
                let (du, _) = lattice_distance(&l, &u, &ball.points[x]);
                assert_eq!(du, n - 1);
                count += 1;
            }
        }
        assert!(count > 50, "expected many instances, found {count}");
    }

    #[test]
    fn local_quadrangle_two_up_example() {
        let l = z3();
        // (x,y) and (x,z) of type (2,0) upward, t = (3,1,1) at distance 3
        let out = local_quadrangle_check(
            &l,
            &pt(&[0, 0, 0]),
            &pt(&[2, 1, 0]),
            &pt(&[2, 0, 1]),
            &pt(&[3, 1, 1]),
        )
        .unwrap();
        match out {
            LocalQcOutcome::Witness { point, case } => {
                assert_eq!(point, pt(&[1, 0, 0]));
                assert_eq!(case, "xy-xz-up");
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn local_quadrangle_mixed_case_realizable() {
        let l = z3();
        // (x,y) mixed, (x,z) up, (y,z) up: not covered by the two headline
        // formulas but still constructive
        let out = local_quadrangle_check(
            &l,
            &pt(&[0, 0, 0]),
            &pt(&[1, -1, 0]),
            &pt(&[2, 0, 2]),
            &pt(&[2, -1, 1]),
        )
        .unwrap();
        match out {
            LocalQcOutcome::Witness { point, case } => {
                assert_eq!(case, "xz-yz-up");
                assert_eq!(point, pt(&[1, 0, 1]).to_vec());
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn local_quadrangle_never_impossible_in_balls() {
        // every genuine quadrangle instance in a ℤ³ ball resolves to a witness
        let l = z3();
        let ball = build_lattice_ball(&l, &pt(&[0, 0, 0]), 4, CAP).unwrap();
        let g = &ball.graph;
        let x = 0;
        let mut instances = 0;
        for y in 0..g.order() {
            if g.dist(x, y) != 2 {
                continue;
            }
            for z in y + 1..g.order() {
                if g.dist(x, z) != 2 || g.dist(y, z) != 2 {
                    continue;
                }
                for &t in g.neighbors(y) {
                    if g.dist(x, t) != 3 || !g.adjacent(t, z) {
                        continue;
                    }
                    if !(g.certified(x, t) && g.certified(x, y) && g.certified(x, z)) {
                        continue;
                    }
                    let out = local_quadrangle_check(
                        &l,
                        &ball.points[x],
                        &ball.points[y],
                        &ball.points[z],
                        &ball.points[t],
                    )
                    .unwrap();
                    assert!(
                        matches!(out, LocalQcOutcome::Witness { .. }),
                        "impossible tag on a realized configuration: {out:?}"
                    );
                    instances += 1;
                }
            }
        }
        assert!(instances > 20, "expected many instances, found {instances}");
    }

    #[test]
    fn quotient_ball_degree_six() {
        let l = z3();
        let ball = build_quotient_ball(&l, &pt(&[0, 0, 0]), 1, CAP).unwrap();
        assert_eq!(ball.graph.neighbors(ball.center()).len(), 6);

        let tiny = build_quotient_ball(&l, &pt(&[0, 0, 0]), 0, CAP).unwrap();
        assert_eq!(tiny.graph.order(), 1);
    }

    #[test]
    fn lattice_ball_degree_six_in_z2() {
        let l = ZnLattice::new(2);
        let ball = build_lattice_ball(&l, &pt(&[0, 0]), 1, CAP).unwrap();
        let nbrs: Vec<&str> =
            ball.graph.neighbors(0).iter().map(|&v| ball.graph.name(v)).collect();
        assert_eq!(ball.graph.neighbors(0).len(), 6);
        for expect in ["(1,0)", "(0,1)", "(1,1)", "(-1,0)", "(0,-1)", "(-1,-1)"] {
            assert!(nbrs.contains(&expect), "{expect} missing from {nbrs:?}");
        }
    }

    #[test]
    fn formula_matches_bfs_on_certified_pairs() {
        let l = z3();
        let lat = build_lattice_ball(&l, &pt(&[0, 0, 0]), 3, CAP).unwrap();
        for u in 0..lat.graph.order() {
            for v in 0..lat.graph.order() {
                if !lat.graph.certified(u, v) {
                    continue;
                }
                let (d, _) = lattice_distance(&l, &lat.points[u], &lat.points[v]);
                assert_eq!(d, lat.graph.dist(u, v));
            }
        }
        let quo = build_quotient_ball(&l, &pt(&[0, 0, 0]), 3, CAP).unwrap();
        for u in 0..quo.graph.order() {
            for v in 0..quo.graph.order() {
                if !quo.graph.certified(u, v) {
                    continue;
                }
                let d = quotient_distance(&l, &quo.points[u], &quo.points[v]);
                assert_eq!(d, quo.graph.dist(u, v));
            }
        }
    }

    #[test]
    fn shift_equivariance() {
        let l = z3();
        for k in [-3i64, 2, 11] {
            let (x, y) = (pt(&[0, 1, -2]), pt(&[2, 0, 1]));
            let (d1, _) = lattice_distance(&l, &x, &y);
            let (d2, _) = lattice_distance(&l, &l.shift(&x, k), &l.shift(&y, k));
            assert_eq!(d1, d2);
            assert_eq!(
                quotient_distance(&l, &x, &y),
                quotient_distance(&l, &l.shift(&x, k), &l.shift(&y, k))
            );
        }
    }

    #[test]
    fn quotient_ball_audit_passes() {
        let l = z3();
        let ball = build_quotient_ball(&l, &pt(&[0, 0, 0]), 3, CAP).unwrap();
        let reports = wmcheck::audit_graph(&ball.graph, &[ball.center()]);
        for r in reports {
            assert_ne!(r.verdict, wmcheck::Verdict::Fail, "{r:?}");
        }
    }
}
