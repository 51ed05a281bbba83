//! Finite graded relations, weak orders, and exhaustive lattice machinery.
//!
//! Everything here is deliberately brute-force: meets and joins are found by
//! scanning all common bounds, and the generated order is a full transitive
//! closure with length bookkeeping. This module is the correctness oracle that
//! the optimized routines elsewhere are tested against.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Elements above this size switch condition (*) from exhaustive to sampled
/// quadruples.
pub const STAR_EXHAUSTIVE_LIMIT: usize = 64;

const STAR_SAMPLES_PER_PAIR: usize = 16;
const STAR_SAMPLE_SEED: u64 = 0x5EED_02D3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderError {
    UnknownElement(String),
    NotAWeakOrder(Box<WeakOrderReport>),
    /// A nontrivial weak chain returning to its start.
    WeakCycle(Vec<String>),
    /// Two weak chains with equal endpoints but different summed lengths.
    InconsistentLengths {
        from: String,
        to: String,
        lengths: (u64, u64),
    },
    BadAutomorphism(String),
    Parse(String),
}

impl fmt::Display for OrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderError::UnknownElement(e) => write!(f, "unknown element {e:?}"),
            OrderError::NotAWeakOrder(r) => write!(f, "relation fails weak-order checks: {r}"),
            OrderError::WeakCycle(c) => write!(f, "weak chain returns to its start: {}", c.join(" < ")),
            OrderError::InconsistentLengths { from, to, lengths } => write!(
                f,
                "chains from {from} to {to} have different lengths {} and {}",
                lengths.0, lengths.1
            ),
            OrderError::BadAutomorphism(m) => write!(f, "map is not an automorphism: {m}"),
            OrderError::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for OrderError {}

/// Outcome of a single structural check, carrying a witness tuple on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail { witness: Vec<String>, detail: String },
}

impl CheckStatus {
    pub fn passed(&self) -> bool {
        matches!(self, CheckStatus::Pass)
    }

    fn fail<S: Into<String>>(witness: Vec<String>, detail: S) -> Self {
        CheckStatus::Fail { witness, detail: detail.into() }
    }
}

/// Report produced by [`GradedRelation::check_weak_order`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakOrderReport {
    pub reflexivity: CheckStatus,
    pub antisymmetry: CheckStatus,
    pub condition_star: CheckStatus,
    pub homogeneity: CheckStatus,
    /// False when condition (*) was sampled rather than checked on every
    /// quadruple (relations above [`STAR_EXHAUSTIVE_LIMIT`] elements).
    pub star_exhaustive: bool,
}

impl WeakOrderReport {
    pub fn all_pass(&self) -> bool {
        self.reflexivity.passed()
            && self.antisymmetry.passed()
            && self.condition_star.passed()
            && self.homogeneity.passed()
    }
}

impl fmt::Display for WeakOrderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &CheckStatus| match s {
            CheckStatus::Pass => "pass".to_string(),
            CheckStatus::Fail { witness, detail } => {
                format!("FAIL at ({}) — {}", witness.join(", "), detail)
            }
        };
        write!(
            f,
            "reflexivity: {}; antisymmetry: {}; condition (*): {}; homogeneity: {}",
            show(&self.reflexivity),
            show(&self.antisymmetry),
            show(&self.condition_star),
            show(&self.homogeneity)
        )
    }
}

/// Result of the pairwise meet/join scan over a finite poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub is_lattice: bool,
    /// First pair (in canonical element order) missing a meet or join.
    pub failing_pair: Option<(String, String)>,
    /// Which bound is missing for the failing pair: "meet" or "join".
    pub missing: Option<String>,
    /// The maximal common bounds found for the failing pair, demonstrating
    /// that no unique extremum exists.
    pub witness: Option<Vec<String>>,
}

impl LatticeReport {
    fn lattice() -> Self {
        LatticeReport { is_lattice: true, failing_pair: None, missing: None, witness: None }
    }
}

/// On-disk form: `{"elements":[...], "pairs":[[a,b,length],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationFile {
    pub elements: Vec<String>,
    pub pairs: Vec<(String, String, u64)>,
}

/// A finite set of opaque ids with a reflexive, antisymmetric, graded relation.
///
/// Transitivity is *not* assumed; see [`GradedRelation::check_weak_order`] and
/// [`GradedRelation::generate_order_t`]. Element ids carry a canonical total
/// order (their sorted position) used for deterministic tie-breaking in
/// reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRelation {
    elements: Vec<String>,
    index: BTreeMap<String, usize>,
    pairs: BTreeMap<(usize, usize), u64>,
    /// up[a] = sorted list of b with a ≤ b.
    up: Vec<Vec<usize>>,
    /// down[b] = sorted list of a with a ≤ b.
    down: Vec<Vec<usize>>,
}

impl GradedRelation {
    /// Builds a relation from element names and (a, b, ℓ(a≤b)) triples.
    /// Reflexive pairs are added automatically with length 0. Duplicate pairs
    /// must agree on length.
    pub fn new<E, P>(elements: E, pairs: P) -> Result<Self, OrderError>
    where
        E: IntoIterator<Item = String>,
        P: IntoIterator<Item = (String, String, u64)>,
    {
        let mut names: Vec<String> = elements.into_iter().collect();
        names.sort();
        names.dedup();
        let index: BTreeMap<String, usize> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut map = BTreeMap::new();
        for (a, b, len) in pairs {
            let ia = *index.get(&a).ok_or(OrderError::UnknownElement(a))?;
            let ib = *index.get(&b).ok_or(OrderError::UnknownElement(b))?;
            if let Some(&prev) = map.get(&(ia, ib)) {
                if prev != len {
                    return Err(OrderError::InconsistentLengths {
                        from: names[ia].clone(),
                        to: names[ib].clone(),
                        lengths: (prev, len),
                    });
                }
            }
            map.insert((ia, ib), len);
        }
        for i in 0..names.len() {
            map.entry((i, i)).or_insert(0);
        }
        let mut up = vec![Vec::new(); names.len()];
        let mut down = vec![Vec::new(); names.len()];
        for &(a, b) in map.keys() {
            up[a].push(b);
            down[b].push(a);
        }
        Ok(GradedRelation { elements: names, index, pairs: map, up, down })
    }

    /// Builds the relation from a predicate and a length function over an
    /// explicit element list.
    pub fn from_leq<T, N, L, F>(items: &[T], name: N, leq: F, length: L) -> Result<Self, OrderError>
    where
        N: Fn(&T) -> String,
        F: Fn(&T, &T) -> bool,
        L: Fn(&T, &T) -> u64,
    {
        let names: Vec<String> = items.iter().map(&name).collect();
        let mut pairs = Vec::new();
        for (i, x) in items.iter().enumerate() {
            for (j, y) in items.iter().enumerate() {
                if leq(x, y) {
                    pairs.push((names[i].clone(), names[j].clone(), length(x, y)));
                }
            }
        }
        GradedRelation::new(names, pairs)
    }

    pub fn from_file_str(s: &str) -> Result<Self, OrderError> {
        let file: RelationFile =
            serde_json::from_str(s).map_err(|e| OrderError::Parse(e.to_string()))?;
        GradedRelation::new(file.elements, file.pairs)
    }

    pub fn to_file(&self) -> RelationFile {
        RelationFile {
            elements: self.elements.clone(),
            pairs: self
                .pairs
                .iter()
                .filter(|((a, b), _)| a != b)
                .map(|(&(a, b), &l)| (self.elements[a].clone(), self.elements[b].clone(), l))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.elements[id]
    }

    pub fn leq_ids(&self, a: usize, b: usize) -> bool {
        self.pairs.contains_key(&(a, b))
    }

    pub fn leq(&self, a: &str, b: &str) -> Result<bool, OrderError> {
        let ia = self.id(a)?;
        let ib = self.id(b)?;
        Ok(self.leq_ids(ia, ib))
    }

    pub fn length_ids(&self, a: usize, b: usize) -> Option<u64> {
        self.pairs.get(&(a, b)).copied()
    }

    fn id(&self, name: &str) -> Result<usize, OrderError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| OrderError::UnknownElement(name.to_string()))
    }

    fn names(&self, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&i| self.elements[i].clone()).collect()
    }

    /// Validates reflexivity, antisymmetry, condition (*) of a weak order, and
    /// homogeneity of the grading. All defects are report entries, never
    /// errors.
    pub fn check_weak_order(&self) -> WeakOrderReport {
        let n = self.len();

        let reflexivity = (0..n)
            .find(|&a| !self.pairs.contains_key(&(a, a)))
            .map(|a| CheckStatus::fail(self.names(&[a]), "missing reflexive pair"))
            .unwrap_or(CheckStatus::Pass);

        let mut antisymmetry = CheckStatus::Pass;
        'anti: for (&(a, b), _) in &self.pairs {
            if a != b && self.pairs.contains_key(&(b, a)) {
                antisymmetry = CheckStatus::fail(
                    self.names(&[a, b]),
                    "both a ≤ b and b ≤ a hold for distinct elements",
                );
                break 'anti;
            }
        }

        let exhaustive = n <= STAR_EXHAUSTIVE_LIMIT;
        let condition_star = if exhaustive {
            self.star_exhaustive_scan()
        } else {
            self.star_sampled_scan()
        };

        let homogeneity = self.homogeneity_scan();

        WeakOrderReport {
            reflexivity,
            antisymmetry,
            condition_star,
            homogeneity,
            star_exhaustive: exhaustive,
        }
    }

    /// Condition (*) on a quadruple a ≤ b, b ≤ c, c ≤ d reduces to
    /// (b ≤ d ∧ a ≤ d) ⇔ (a ≤ c ∧ a ≤ d).
    fn star_holds(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let ad = self.leq_ids(a, d);
        let lhs = self.leq_ids(b, d) && ad;
        let rhs = self.leq_ids(a, c) && ad;
        lhs == rhs
    }

    fn star_exhaustive_scan(&self) -> CheckStatus {
        for (&(a, b), _) in &self.pairs {
            for &c in &self.up[b] {
                for &d in &self.up[c] {
                    if !self.star_holds(a, b, c, d) {
                        return CheckStatus::fail(
                            self.names(&[a, b, c, d]),
                            "condition (*) fails on this quadruple",
                        );
                    }
                }
            }
        }
        CheckStatus::Pass
    }

    fn star_sampled_scan(&self) -> CheckStatus {
        let mut rng = ChaCha8Rng::seed_from_u64(STAR_SAMPLE_SEED);
        for (&(a, b), _) in &self.pairs {
            if self.up[b].is_empty() {
                continue;
            }
            for _ in 0..STAR_SAMPLES_PER_PAIR {
                let c = self.up[b][rng.gen_range(0..self.up[b].len())];
                if self.up[c].is_empty() {
                    continue;
                }
                let d = self.up[c][rng.gen_range(0..self.up[c].len())];
                if !self.star_holds(a, b, c, d) {
                    return CheckStatus::fail(
                        self.names(&[a, b, c, d]),
                        "condition (*) fails on this quadruple (sampled)",
                    );
                }
            }
        }
        CheckStatus::Pass
    }

    fn homogeneity_scan(&self) -> CheckStatus {
        for (&(a, b), &lab) in &self.pairs {
            if (a == b) != (lab == 0) {
                return CheckStatus::fail(
                    self.names(&[a, b]),
                    format!("ℓ = {lab} but ℓ must be zero exactly on equal pairs"),
                );
            }
        }
        for (&(a, b), &lab) in &self.pairs {
            for &c in &self.up[b] {
                if let (Some(lbc), Some(lac)) = (self.length_ids(b, c), self.length_ids(a, c)) {
                    if lab + lbc != lac {
                        return CheckStatus::fail(
                            self.names(&[a, b, c]),
                            format!("ℓ(a≤c) = {lac} but ℓ(a≤b) + ℓ(b≤c) = {}", lab + lbc),
                        );
                    }
                }
            }
        }
        CheckStatus::Pass
    }

    /// True when the relation is additionally transitive (a genuine poset).
    pub fn is_transitive(&self) -> bool {
        self.pairs.keys().all(|&(a, b)| self.up[b].iter().all(|&c| self.leq_ids(a, c)))
    }

    /// Greatest lower bound by exhaustive scan of common lower bounds.
    pub fn meet_ids(&self, a: usize, b: usize) -> Option<usize> {
        let bounds: Vec<usize> =
            self.down[a].iter().copied().filter(|&c| self.leq_ids(c, b)).collect();
        self.extremum(&bounds, true)
    }

    /// Least upper bound by exhaustive scan of common upper bounds.
    pub fn join_ids(&self, a: usize, b: usize) -> Option<usize> {
        let bounds: Vec<usize> =
            self.up[a].iter().copied().filter(|&c| self.leq_ids(b, c)).collect();
        self.extremum(&bounds, false)
    }

    pub fn meet(&self, a: &str, b: &str) -> Result<Option<String>, OrderError> {
        let (ia, ib) = (self.id(a)?, self.id(b)?);
        Ok(self.meet_ids(ia, ib).map(|m| self.elements[m].clone()))
    }

    pub fn join(&self, a: &str, b: &str) -> Result<Option<String>, OrderError> {
        let (ia, ib) = (self.id(a)?, self.id(b)?);
        Ok(self.join_ids(ia, ib).map(|m| self.elements[m].clone()))
    }

    /// The element of `bounds` that dominates (for meets) or is dominated by
    /// (for joins) every other bound, if one exists.
    fn extremum(&self, bounds: &[usize], greatest: bool) -> Option<usize> {
        bounds
            .iter()
            .copied()
            .find(|&m| {
                bounds.iter().all(|&c| if greatest { self.leq_ids(c, m) } else { self.leq_ids(m, c) })
            })
    }

    /// Bounds that no other bound strictly exceeds; reported as failure
    /// witnesses.
    fn maximal_among(&self, bounds: &[usize], upward: bool) -> Vec<usize> {
        bounds
            .iter()
            .copied()
            .filter(|&m| {
                !bounds.iter().any(|&c| {
                    c != m && if upward { self.leq_ids(m, c) } else { self.leq_ids(c, m) }
                })
            })
            .collect()
    }

    /// Scans every pair for meets and joins. The first failing pair in
    /// canonical element order is reported.
    pub fn is_lattice(&self) -> LatticeReport {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                if self.meet_ids(a, b).is_none() {
                    let bounds: Vec<usize> =
                        self.down[a].iter().copied().filter(|&c| self.leq_ids(c, b)).collect();
                    return LatticeReport {
                        is_lattice: false,
                        failing_pair: Some((self.elements[a].clone(), self.elements[b].clone())),
                        missing: Some("meet".to_string()),
                        witness: Some(self.names(&self.maximal_among(&bounds, true))),
                    };
                }
                if self.join_ids(a, b).is_none() {
                    let bounds: Vec<usize> =
                        self.up[a].iter().copied().filter(|&c| self.leq_ids(b, c)).collect();
                    return LatticeReport {
                        is_lattice: false,
                        failing_pair: Some((self.elements[a].clone(), self.elements[b].clone())),
                        missing: Some("join".to_string()),
                        witness: Some(self.names(&self.maximal_among(&bounds, false))),
                    };
                }
            }
        }
        LatticeReport::lattice()
    }

    /// Computes the partial order ≤_t generated by weak chains, with lengths
    /// summed along chains.
    ///
    /// `phi`, when given, must be an automorphism of the weak order; it is
    /// validated and otherwise unused (the closure of a finite restriction
    /// does not depend on it). Fails if the relation is not a weak order, if
    /// some nontrivial weak chain returns to its start, or if two chains with
    /// equal endpoints disagree in total length.
    pub fn generate_order_t(
        &self,
        phi: Option<&BTreeMap<String, String>>,
    ) -> Result<GradedRelation, OrderError> {
        let report = self.check_weak_order();
        if !report.all_pass() {
            return Err(OrderError::NotAWeakOrder(Box::new(report)));
        }
        if let Some(map) = phi {
            self.validate_automorphism(map)?;
        }

        let n = self.len();
        if let Some(cycle) = self.find_strict_cycle() {
            return Err(OrderError::WeakCycle(self.names(&cycle)));
        }

        // DAG: longest and shortest chain sums must coincide for every
        // reachable pair, otherwise homogeneity fails globally.
        const UNSET: u64 = u64::MAX;
        let mut lo = vec![vec![UNSET; n]; n];
        let mut hi = vec![vec![UNSET; n]; n];
        let order = self.topo_order();
        for &v in order.iter().rev() {
            lo[v][v] = 0;
            hi[v][v] = 0;
            for &w in &self.up[v] {
                if w == v {
                    continue;
                }
                let step = self.pairs[&(v, w)];
                for t in 0..n {
                    if lo[w][t] != UNSET {
                        let cand = step + lo[w][t];
                        if lo[v][t] == UNSET || cand < lo[v][t] {
                            lo[v][t] = cand;
                        }
                        let cand_hi = step + hi[w][t];
                        if hi[v][t] == UNSET || cand_hi > hi[v][t] {
                            hi[v][t] = cand_hi;
                        }
                    }
                }
            }
        }

        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lo[a][b] != UNSET {
                    if lo[a][b] != hi[a][b] {
                        return Err(OrderError::InconsistentLengths {
                            from: self.elements[a].clone(),
                            to: self.elements[b].clone(),
                            lengths: (lo[a][b], hi[a][b]),
                        });
                    }
                    pairs.push((self.elements[a].clone(), self.elements[b].clone(), lo[a][b]));
                }
            }
        }
        GradedRelation::new(self.elements.clone(), pairs)
    }

    fn validate_automorphism(&self, map: &BTreeMap<String, String>) -> Result<(), OrderError> {
        let mut image = vec![usize::MAX; self.len()];
        let mut seen = vec![false; self.len()];
        for (k, v) in map {
            let ik = self.id(k)?;
            let iv = self.id(v)?;
            image[ik] = iv;
            if seen[iv] {
                return Err(OrderError::BadAutomorphism(format!("{v:?} hit twice")));
            }
            seen[iv] = true;
        }
        if image.iter().any(|&i| i == usize::MAX) {
            return Err(OrderError::BadAutomorphism("map is not total".to_string()));
        }
        for (&(a, b), &len) in &self.pairs {
            match self.pairs.get(&(image[a], image[b])) {
                Some(&l2) if l2 == len => {}
                _ => {
                    return Err(OrderError::BadAutomorphism(format!(
                        "pair ({}, {}) is not preserved",
                        self.elements[a], self.elements[b]
                    )))
                }
            }
        }
        Ok(())
    }

    /// Finds a directed cycle in the strict relation, if any.
    fn find_strict_cycle(&self) -> Option<Vec<usize>> {
        let n = self.len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            state[start] = 1;
            while let Some(top) = stack.last_mut() {
                let (v, i) = *top;
                if i < self.up[v].len() {
                    top.1 += 1;
                    let w = self.up[v][i];
                    if w == v {
                        continue;
                    }
                    if state[w] == 1 {
                        // reconstruct the cycle w < ... < v (< w)
                        let mut nodes = vec![v];
                        let mut cur = v;
                        while cur != w {
                            cur = parent[cur];
                            nodes.push(cur);
                        }
                        nodes.reverse();
                        return Some(nodes);
                    }
                    if state[w] == 0 {
                        state[w] = 1;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    fn topo_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for (&(a, b), _) in &self.pairs {
            if a != b {
                indeg[b] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            order.push(v);
            for &w in &self.up[v] {
                if w == v {
                    continue;
                }
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        order
    }

    /// The interval [a, b] = {z : a ≤ z and z ≤ b}.
    pub fn interval_ids(&self, a: usize, b: usize) -> Vec<usize> {
        self.up[a].iter().copied().filter(|&z| self.leq_ids(z, b)).collect()
    }

    /// Restricts the relation to a subset of elements.
    pub fn restrict(&self, keep: &[usize]) -> GradedRelation {
        let names: Vec<String> = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let keep_set: std::collections::BTreeSet<usize> = keep.iter().copied().collect();
        let pairs: Vec<(String, String, u64)> = self
            .pairs
            .iter()
            .filter(|((a, b), _)| keep_set.contains(a) && keep_set.contains(b))
            .map(|(&(a, b), &l)| (self.elements[a].clone(), self.elements[b].clone(), l))
            .collect();
        GradedRelation::new(names, pairs).expect("restriction of a valid relation")
    }
}
