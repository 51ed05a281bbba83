//! Conversions between the three presentations of a Garside structure —
//! graded lattices with an increasing automorphism, flag complexes with
//! ordered labeled simplices, and germ-generated categories — on explicit
//! finite windows with certified interiors. A conversion never claims global
//! properties; every report carries the window it was computed on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::garside::{GarsideError, GarsideLattice, Germ, Morphism};
use crate::order::{CheckStatus, GradedRelation, OrderError};
use crate::wmcheck::FiniteGraph;
use crate::zaction::ZLattice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DictError {
    WindowTooSmall(String),
    AxiomFailure(String),
    BadTyping(String),
    Order(String),
    Parse(String),
}

impl std::fmt::Display for DictError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DictError::WindowTooSmall(m) => write!(f, "window too small: {m}"),
            DictError::AxiomFailure(m) => write!(f, "axiom failure: {m}"),
            DictError::BadTyping(m) => write!(f, "bad type function: {m}"),
            DictError::Order(m) => write!(f, "order error: {m}"),
            DictError::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for DictError {}

impl From<OrderError> for DictError {
    fn from(e: OrderError) -> Self {
        DictError::Order(e.to_string())
    }
}

/// A finite window of a graded lattice with an increasing automorphism φ:
/// the interval [c − r, c + r] with interior [c − (r−1), c + (r−1)].
#[derive(Debug, Clone)]
pub struct LatticeWindow {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub grade: Vec<Vec<Option<u64>>>,
    pub phi: Vec<Option<usize>>,
    pub phi_inv: Vec<Option<usize>>,
    pub interior: Vec<bool>,
    pub center: usize,
    pub radius: u32,
}

impl LatticeWindow {
    pub fn from_zlattice<L: ZLattice>(l: &L, center: &L::Point, radius: u32) -> LatticeWindow {
        assert!(radius >= 1, "a window needs at least radius 1");
        let lo = l.shift(center, -i64::from(radius));
        let hi = l.shift(center, i64::from(radius));
        let mut points = l.interval(&lo, &hi);
        points.sort();
        points.dedup();
        let index: BTreeMap<&L::Point, usize> =
            points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let leq: Vec<Vec<bool>> =
            points.iter().map(|a| points.iter().map(|b| l.leq(a, b)).collect()).collect();
        let grade: Vec<Vec<Option<u64>>> =
            points.iter().map(|a| points.iter().map(|b| l.grade_gap(a, b)).collect()).collect();
        let phi: Vec<Option<usize>> =
            points.iter().map(|p| index.get(&l.shift(p, 1)).copied()).collect();
        let phi_inv: Vec<Option<usize>> =
            points.iter().map(|p| index.get(&l.shift(p, -1)).copied()).collect();
        let ilo = l.shift(center, -(i64::from(radius) - 1));
        let ihi = l.shift(center, i64::from(radius) - 1);
        let interior: Vec<bool> =
            points.iter().map(|p| l.leq(&ilo, p) && l.leq(p, &ihi)).collect();
        let center_idx = index[center];
        LatticeWindow {
            labels: points.iter().map(|p| l.label(p)).collect(),
            leq,
            grade,
            phi,
            phi_inv,
            interior,
            center: center_idx,
            radius,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The order restricted to the window, as a graded relation.
    pub fn to_relation(&self) -> GradedRelation {
        let mut pairs = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.leq[a][b] {
                    pairs.push((
                        self.labels[a].clone(),
                        self.labels[b].clone(),
                        self.grade[a][b].expect("comparable pairs are graded"),
                    ));
                }
            }
        }
        GradedRelation::new(self.labels.clone(), pairs).expect("window relation")
    }
}

/// On-disk flag complex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlagFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u64)>,
    pub phi: BTreeMap<String, String>,
    #[serde(default)]
    pub interior: Option<Vec<String>>,
}

/// A finite piece of a Garside flag complex: ordered labeled edges, the
/// automorphism φ where defined, and an interior marking.
#[derive(Debug, Clone)]
pub struct FlagComplexBall {
    pub labels: Vec<String>,
    /// (a, b) with a < b in the simplex order; value is ℓ(ab) > 0.
    pub edges: BTreeMap<(usize, usize), u64>,
    pub phi: Vec<Option<usize>>,
    pub interior: Vec<bool>,
}

impl FlagComplexBall {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<u64> {
        self.edges.get(&(a, b)).copied()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.edges.contains_key(&(a, b))
    }

    pub fn from_file(file: &FlagFile) -> Result<FlagComplexBall, DictError> {
        let labels = file.vertices.clone();
        let index: BTreeMap<&str, usize> =
            labels.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut edges = BTreeMap::new();
        for (a, b, len) in &file.edges {
            let ia = *index.get(a.as_str()).ok_or_else(|| DictError::Parse(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| DictError::Parse(b.clone()))?;
            if *len == 0 {
                return Err(DictError::Parse(format!("edge {a}→{b} has zero length")));
            }
            edges.insert((ia, ib), *len);
        }
        let mut phi = vec![None; labels.len()];
        for (from, to) in &file.phi {
            let ia = *index.get(from.as_str()).ok_or_else(|| DictError::Parse(from.clone()))?;
            let ib = *index.get(to.as_str()).ok_or_else(|| DictError::Parse(to.clone()))?;
            phi[ia] = Some(ib);
        }
        let interior = match &file.interior {
            None => vec![true; labels.len()],
            Some(names) => {
                let mut flags = vec![false; labels.len()];
                for name in names {
                    let i =
                        *index.get(name.as_str()).ok_or_else(|| DictError::Parse(name.clone()))?;
                    flags[i] = true;
                }
                flags
            }
        };
        Ok(FlagComplexBall { labels, edges, phi, interior })
    }

    pub fn to_file(&self) -> FlagFile {
        FlagFile {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|(&(a, b), &l)| (self.labels[a].clone(), self.labels[b].clone(), l))
                .collect(),
            phi: self
                .phi
                .iter()
                .enumerate()
                .filter_map(|(i, &img)| img.map(|j| (self.labels[i].clone(), self.labels[j].clone())))
                .collect(),
            interior: Some(
                (0..self.len())
                    .filter(|&v| self.interior[v])
                    .map(|v| self.labels[v].clone())
                    .collect(),
            ),
        }
    }

    /// The undirected 1-skeleton.
    pub fn skeleton(&self) -> FiniteGraph {
        let edges: Vec<(usize, usize)> = self.edges.keys().copied().collect();
        FiniteGraph::from_edges(self.labels.clone(), &edges, None).expect("flag skeleton")
    }

    /// The interval [x, φ(x)] as a graded relation, when φ(x) is present.
    pub fn interval_relation(&self, x: usize) -> Option<GradedRelation> {
        let fx = self.phi[x]?;
        let members: Vec<usize> =
            (0..self.len()).filter(|&z| self.leq(x, z) && self.leq(z, fx)).collect();
        Some(
            GradedRelation::from_leq(
                &members,
                |&z| self.labels[z].clone(),
                |&u, &v| self.leq(u, v),
                |&u, &v| if u == v { 0 } else { self.edge(u, v).unwrap_or(0) },
            )
            .expect("interval relation"),
        )
    }
}

/// Axiom report for a flag complex window; checks are restricted to the
/// certified interior.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlagAxiomReport {
    pub triangle_additivity: CheckStatus,
    pub duality: CheckStatus,
    pub interval_lattices: CheckStatus,
    pub flagness: CheckStatus,
    /// The strictness reading of the duality axiom this checker implements.
    pub duality_convention: String,
}

impl FlagAxiomReport {
    pub fn all_pass(&self) -> bool {
        self.triangle_additivity.passed()
            && self.duality.passed()
            && self.interval_lattices.passed()
            && self.flagness.passed()
    }
}

/// Checks the flag-complex axioms (edge-label additivity on 2-simplices, the
/// duality a < b ⇔ b ≤ φ(a), lattice intervals, flagness) on the interior.
pub fn check_flag_axioms(ball: &FlagComplexBall) -> FlagAxiomReport {
    let n = ball.len();

    let mut triangle_additivity = CheckStatus::Pass;
    'tri: for (&(a, b), &lab) in &ball.edges {
        for c in 0..n {
            if let (Some(lbc), Some(lac)) = (ball.edge(b, c), ball.edge(a, c)) {
                if lab + lbc != lac {
                    triangle_additivity = CheckStatus::Fail {
                        witness: vec![
                            ball.labels[a].clone(),
                            ball.labels[b].clone(),
                            ball.labels[c].clone(),
                        ],
                        detail: format!("ℓ(ab)+ℓ(bc) = {} but ℓ(ac) = {lac}", lab + lbc),
                    };
                    break 'tri;
                }
            }
        }
    }

    // duality on interior vertices; a = b and b = φ(a) are admitted boundary
    // cases of the strictness convention
    let mut duality = CheckStatus::Pass;
    'dual: for a in 0..n {
        if !ball.interior[a] {
            continue;
        }
        let fa = match ball.phi[a] {
            Some(v) => v,
            None => {
                duality = CheckStatus::Fail {
                    witness: vec![ball.labels[a].clone()],
                    detail: "interior vertex without φ image".to_string(),
                };
                break 'dual;
            }
        };
        if fa == a || ball.edge(a, fa).is_none() {
            duality = CheckStatus::Fail {
                witness: vec![ball.labels[a].clone()],
                detail: "φ(a) is not strictly above a".to_string(),
            };
            break 'dual;
        }
        for b in 0..n {
            // edges out of b are only complete when φ(b) is inside the ball
            if b == a || ball.phi[b].is_none() {
                continue;
            }
            let lhs = ball.edge(a, b).is_some();
            let rhs = b == fa || ball.edge(b, fa).is_some();
            if lhs != rhs {
                duality = CheckStatus::Fail {
                    witness: vec![ball.labels[a].clone(), ball.labels[b].clone()],
                    detail: format!("a<b is {lhs} but b ≤ φ(a) is {rhs}"),
                };
                break 'dual;
            }
        }
    }

    let mut interval_lattices = CheckStatus::Pass;
    'intv: for x in 0..n {
        if !ball.interior[x] {
            continue;
        }
        if let Some(relation) = ball.interval_relation(x) {
            let report = relation.is_lattice();
            if !report.is_lattice {
                let (a, b) = report.failing_pair.unwrap();
                interval_lattices = CheckStatus::Fail {
                    witness: vec![ball.labels[x].clone(), a, b],
                    detail: format!("interval misses a {}", report.missing.unwrap()),
                };
                break 'intv;
            }
        }
    }

    // flagness: no double orientations, and every pairwise-adjacent triple
    // with an interior vertex linearizes (outdegrees 0, 1, 2)
    let mut flagness = CheckStatus::Pass;
    'flag: for (&(a, b), _) in &ball.edges {
        if ball.edges.contains_key(&(b, a)) {
            flagness = CheckStatus::Fail {
                witness: vec![ball.labels[a].clone(), ball.labels[b].clone()],
                detail: "both a<b and b<a are present".to_string(),
            };
            break 'flag;
        }
        for c in 0..n {
            if c == a || c == b {
                continue;
            }
            let adj = |u: usize, v: usize| ball.edge(u, v).is_some() || ball.edge(v, u).is_some();
            if !(adj(a, c) && adj(b, c)) {
                continue;
            }
            if !(ball.interior[a] || ball.interior[b] || ball.interior[c]) {
                continue;
            }
            let out = |u: usize, v: usize, w: usize| {
                ball.edge(u, v).is_some() as usize + ball.edge(u, w).is_some() as usize
            };
            let mut degs = [out(a, b, c), out(b, a, c), out(c, a, b)];
            degs.sort_unstable();
            if degs != [0, 1, 2] {
                flagness = CheckStatus::Fail {
                    witness: vec![
                        ball.labels[a].clone(),
                        ball.labels[b].clone(),
                        ball.labels[c].clone(),
                    ],
                    detail: "adjacent triple does not linearize".to_string(),
                };
                break 'flag;
            }
        }
    }

    FlagAxiomReport {
        triangle_additivity,
        duality,
        interval_lattices,
        flagness,
        duality_convention: "strict: (a ≤ b, a ≠ b) ⇔ b ≤ φ(a); a = b and b = φ(a) admitted"
            .to_string(),
    }
}

/// Builds the flag complex of a lattice window: an ordered edge a < b exactly
/// when a < b ≤ φ(a), labeled by the grade gap.
pub fn lattice_to_flag(window: &LatticeWindow) -> Result<FlagComplexBall, DictError> {
    if window.len() <= 1 {
        return Err(DictError::WindowTooSmall("no comparable pairs in window".into()));
    }
    let n = window.len();
    let mut edges = BTreeMap::new();
    for a in 0..n {
        let fa = match window.phi[a] {
            Some(v) => v,
            None => continue,
        };
        for b in 0..n {
            if a != b && window.leq[a][b] && window.leq[b][fa] {
                edges.insert((a, b), window.grade[a][b].expect("graded pair"));
            }
        }
    }
    let ball = FlagComplexBall {
        labels: window.labels.clone(),
        edges,
        phi: window.phi.clone(),
        interior: window.interior.clone(),
    };
    if !ball.interior.iter().any(|&b| b) {
        return Err(DictError::WindowTooSmall("no certified interior vertex".into()));
    }
    Ok(ball)
}

/// Hypothesis report for the weak order extracted from a flag complex.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeakOrderExtraction {
    pub condition_star: CheckStatus,
    pub homogeneity: CheckStatus,
    pub phi_increasing: CheckStatus,
    pub interval_lattices: CheckStatus,
    /// Simple connectivity of X_φ is a global hypothesis; it is recorded as
    /// assumed, never checked.
    pub simple_connectivity: String,
}

impl WeakOrderExtraction {
    pub fn all_pass(&self) -> bool {
        self.condition_star.passed()
            && self.homogeneity.passed()
            && self.phi_increasing.passed()
            && self.interval_lattices.passed()
    }
}

/// Extracts the vertex weak order of a flag complex and checks the local
/// hypotheses of the local-to-global theorem on the interior.
pub fn flag_to_weak_order(
    ball: &FlagComplexBall,
) -> Result<(GradedRelation, WeakOrderExtraction), DictError> {
    let axioms = check_flag_axioms(ball);
    if !axioms.all_pass() {
        return Err(DictError::AxiomFailure(format!("{axioms:?}")));
    }
    let mut pairs = Vec::new();
    for (&(a, b), &len) in &ball.edges {
        pairs.push((ball.labels[a].clone(), ball.labels[b].clone(), len));
    }
    let relation = GradedRelation::new(ball.labels.clone(), pairs)?;
    let report = relation.check_weak_order();

    let phi_increasing = (0..ball.len())
        .filter(|&x| ball.interior[x])
        .find_map(|x| match ball.phi[x] {
            Some(fx) if ball.edge(x, fx).is_some() => None,
            _ => Some(CheckStatus::Fail {
                witness: vec![ball.labels[x].clone()],
                detail: "φ(x) > x fails on the interior".to_string(),
            }),
        })
        .unwrap_or(CheckStatus::Pass);

    let extraction = WeakOrderExtraction {
        condition_star: report.condition_star,
        homogeneity: report.homogeneity,
        phi_increasing,
        interval_lattices: axioms.interval_lattices,
        simple_connectivity: "assumed (global hypothesis, not checkable on a window)".to_string(),
    };
    Ok((relation, extraction))
}

/// Round trip lattice → flag → weak order → generated order; returns how many
/// interior pairs were compared. The generated order must reproduce the
/// window order (with grades) on interior × interior.
pub fn roundtrip_window(window: &LatticeWindow) -> Result<usize, DictError> {
    let flag = lattice_to_flag(window)?;
    let (weak, extraction) = flag_to_weak_order(&flag)?;
    if !extraction.all_pass() {
        return Err(DictError::AxiomFailure(format!("{extraction:?}")));
    }
    let generated = weak.generate_order_t(None)?;
    let mut compared = 0;
    for a in 0..window.len() {
        if !window.interior[a] {
            continue;
        }
        for b in 0..window.len() {
            if !window.interior[b] {
                continue;
            }
            let expect = window.leq[a][b];
            let got = generated.leq(&window.labels[a], &window.labels[b])?;
            if expect != got {
                return Err(DictError::AxiomFailure(format!(
                    "generated order disagrees at ({}, {}): lattice {expect}, closure {got}",
                    window.labels[a], window.labels[b]
                )));
            }
            if expect {
                let ia = generated.element_id(&window.labels[a]).unwrap();
                let ib = generated.element_id(&window.labels[b]).unwrap();
                if generated.length_ids(ia, ib) != window.grade[a][b] {
                    return Err(DictError::AxiomFailure(format!(
                        "grades disagree at ({}, {})",
                        window.labels[a], window.labels[b]
                    )));
                }
            }
            compared += 1;
        }
    }
    Ok(compared)
}

/// Window of the Garside lattice L_x of a germ; the special-category facet
/// (antisymmetry, transitivity, additive grading of the unique quotients) is
/// verified on the window.
pub fn germ_to_special(
    germ: &Germ,
    base: usize,
    radius: u32,
) -> Result<LatticeWindow, GarsideError> {
    let lx = GarsideLattice::new(germ, base)?;
    let window = LatticeWindow::from_zlattice(&lx, &Morphism::identity(base), radius);
    let n = window.len();
    for a in 0..n {
        for b in 0..n {
            if a != b && window.leq[a][b] && window.leq[b][a] {
                return Err(GarsideError::MalformedTable(format!(
                    "window order is not antisymmetric at ({}, {})",
                    window.labels[a], window.labels[b]
                )));
            }
            for c in 0..n {
                if window.leq[a][b] && window.leq[b][c] {
                    if !window.leq[a][c] {
                        return Err(GarsideError::MalformedTable(
                            "window order is not transitive".into(),
                        ));
                    }
                    let (gab, gbc, gac) = (
                        window.grade[a][b].unwrap(),
                        window.grade[b][c].unwrap(),
                        window.grade[a][c].unwrap(),
                    );
                    if gab + gbc != gac {
                        return Err(GarsideError::MalformedTable(
                            "window grading is not additive".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(window)
}

/// A typed triangle-complex ball: a graph with a type function to ℤ/3ℤ such
/// that adjacent vertices have different types.
#[derive(Debug, Clone)]
pub struct TypedComplex {
    pub graph: FiniteGraph,
    pub types: Vec<u8>,
}

impl TypedComplex {
    pub fn new(graph: FiniteGraph, types: Vec<u8>) -> Result<TypedComplex, DictError> {
        if types.len() != graph.order() {
            return Err(DictError::BadTyping("one type per vertex required".into()));
        }
        if types.iter().any(|&t| t > 2) {
            return Err(DictError::BadTyping("types live in ℤ/3ℤ".into()));
        }
        for v in 0..graph.order() {
            for &w in graph.neighbors(v) {
                if types[v] == types[w] {
                    return Err(DictError::BadTyping(format!(
                        "adjacent vertices {} and {} share type {}",
                        graph.name(v),
                        graph.name(w),
                        types[v]
                    )));
                }
            }
        }
        Ok(TypedComplex { graph, types })
    }
}

/// The extended complex of a typed triangle complex: vertices (x, n) with
/// τ(x) ≡ n mod 3, edges between adjacent x, y when n < m < n + 3 plus
/// vertical edges (x, n) → (x, n + 3), and φ the level shift by 3.
pub fn typed_a2_to_flag(
    complex: &TypedComplex,
    levels: (i64, i64),
) -> Result<FlagComplexBall, DictError> {
    let (lo, hi) = levels;
    if hi - lo < 6 {
        return Err(DictError::WindowTooSmall(
            "need at least seven levels for a certified interior".into(),
        ));
    }
    let g = &complex.graph;
    let mut labels = Vec::new();
    let mut verts = Vec::new();
    let mut index = BTreeMap::new();
    for v in 0..g.order() {
        for n in lo..=hi {
            if n.rem_euclid(3) as u8 == complex.types[v] {
                index.insert((v, n), labels.len());
                labels.push(format!("{}@{}", g.name(v), n));
                verts.push((v, n));
            }
        }
    }
    let mut edges = BTreeMap::new();
    for (i, &(v, n)) in verts.iter().enumerate() {
        for m in n + 1..=n + 3 {
            if m > hi {
                continue;
            }
            if m == n + 3 {
                if let Some(&j) = index.get(&(v, m)) {
                    edges.insert((i, j), 3u64);
                }
            } else {
                for &w in g.neighbors(v) {
                    if m.rem_euclid(3) as u8 == complex.types[w] {
                        if let Some(&j) = index.get(&(w, m)) {
                            edges.insert((i, j), (m - n) as u64);
                        }
                    }
                }
            }
        }
    }
    let phi: Vec<Option<usize>> =
        verts.iter().map(|&(v, n)| index.get(&(v, n + 3)).copied()).collect();
    let interior: Vec<bool> = verts
        .iter()
        .map(|&(v, n)| complex.graph.interior(v) && n - 3 >= lo && n + 3 <= hi)
        .collect();
    Ok(FlagComplexBall { labels, edges, phi, interior })
}

/// The flat typed triangle complex: ℤ² with neighbors ±(1,0), ±(0,1), ±(1,1)
/// and types (a + b) mod 3, as a ball around the origin.
pub fn coxeter_a2_ball(radius: u32) -> TypedComplex {
    let r = radius as i64;
    // hex distance for this coordinate presentation of the triangular lattice
    let dist = |(a, b): (i64, i64)| -> i64 {
        if a * b >= 0 {
            a.abs().max(b.abs())
        } else {
            a.abs() + b.abs()
        }
    };
    let mut keep = Vec::new();
    for a in -2 * r..=2 * r {
        for b in -2 * r..=2 * r {
            if dist((a, b)) <= r {
                keep.push((a, b));
            }
        }
    }
    let index: BTreeMap<(i64, i64), usize> =
        keep.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in keep.iter().enumerate() {
        for (da, db) in [(1i64, 0i64), (0, 1), (1, 1)] {
            if let Some(&j) = index.get(&(a + da, b + db)) {
                edges.push((i, j));
            }
        }
    }
    let names = keep.iter().map(|&(a, b)| format!("({a},{b})")).collect();
    let center = index[&(0, 0)];
    let graph =
        FiniteGraph::from_edges(names, &edges, Some(crate::wmcheck::BallMeta { center, radius }))
            .expect("coxeter ball");
    let types = keep.iter().map(|&(a, b)| (a + b).rem_euclid(3) as u8).collect();
    TypedComplex::new(graph, types).expect("typed coxeter complex")
}
