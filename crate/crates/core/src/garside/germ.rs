//! Germ tables and their axiom checker.
//!
//! A germ is a finite presentation of the simple elements of a categorical
//! Garside structure: objects, simples with lengths, a partial product defined
//! exactly when lengths add and the result is again simple, and a Garside map
//! Δ per object. All downstream reasoning (normal forms, gcd/lcm, balls) is
//! table lookups against this structure.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::order::{CheckStatus, GradedRelation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GarsideError {
    UnknownObject(String),
    UnknownSimple(String),
    MalformedTable(String),
    NotComposable { at: String },
    MissingComplement(String),
    MissingProduct(String, String),
    NotALattice(String),
    NotPositive(String),
    DeltaNotIncreasing(String),
    CapExceeded(String),
    Parse(String),
}

impl fmt::Display for GarsideError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GarsideError::*;
        match self {
            UnknownObject(o) => write!(f, "unknown object {o:?}"),
            UnknownSimple(s) => write!(f, "unknown simple {s:?}"),
            MalformedTable(m) => write!(f, "malformed product table: {m}"),
            NotComposable { at } => write!(f, "word is not composable at {at}"),
            MissingComplement(s) => write!(f, "simple {s:?} has no complement"),
            MissingProduct(a, b) => write!(f, "product {a:?}·{b:?} missing from the table"),
            NotALattice(m) => write!(f, "divisor poset is not a lattice: {m}"),
            NotPositive(m) => write!(f, "morphism is not positive: {m}"),
            DeltaNotIncreasing(o) => {
                write!(f, "Δ at object {o:?} has length 0; the Garside map must be increasing")
            }
            CapExceeded(m) => write!(f, "cap exceeded: {m}"),
            Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for GarsideError {}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimpleDef {
    pub name: String,
    pub source: String,
    pub target: String,
    pub length: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PhiDef {
    #[serde(default)]
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub simples: BTreeMap<String, String>,
}

/// On-disk germ: objects, simples, product triples, Δ per object, optional φ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GermFile {
    pub objects: Vec<String>,
    pub simples: Vec<SimpleDef>,
    pub product: Vec<(String, String, String)>,
    pub delta: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiDef>,
}

#[derive(Debug, Clone)]
pub(crate) struct Simple {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub length: u64,
}

/// A compiled germ: every structural map resolved to index lookups.
#[derive(Debug, Clone)]
pub struct Germ {
    pub(crate) objects: Vec<String>,
    pub(crate) simples: Vec<Simple>,
    simple_index: BTreeMap<String, usize>,
    object_index: BTreeMap<String, usize>,
    pub(crate) product: HashMap<(usize, usize), usize>,
    /// (u, v) ↦ h with u·h = v, for every table entry (u,h) ↦ v.
    left_quot: HashMap<(usize, usize), usize>,
    /// (h, v) ↦ u with u·h = v.
    right_quot: HashMap<(usize, usize), usize>,
    pub(crate) identity: Vec<usize>,
    pub(crate) delta: Vec<usize>,
    pub(crate) phi_obj: Vec<usize>,
    pub(crate) phi_obj_inv: Vec<usize>,
    /// Complement s ↦ s* with s·s* = Δ_source(s), when it exists.
    pub(crate) complement: Vec<Option<usize>>,
    /// φ on simples, derived as s ↦ (s*)* when complements exist.
    pub(crate) phi_simple: Vec<Option<usize>>,
    pub(crate) phi_simple_inv: Vec<Option<usize>>,
    /// div[v] = bitset of u with u·h = v for some table entry.
    div: Vec<Vec<u64>>,
    /// file-declared φ kept for the naturality check
    declared_phi: Option<PhiDef>,
}

impl Germ {
    pub fn from_file(file: GermFile) -> Result<Germ, GarsideError> {
        let object_index: BTreeMap<String, usize> =
            file.objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        if object_index.len() != file.objects.len() {
            return Err(GarsideError::MalformedTable("duplicate object names".into()));
        }
        let mut simples = Vec::with_capacity(file.simples.len());
        let mut simple_index = BTreeMap::new();
        for def in &file.simples {
            let source = *object_index
                .get(&def.source)
                .ok_or_else(|| GarsideError::UnknownObject(def.source.clone()))?;
            let target = *object_index
                .get(&def.target)
                .ok_or_else(|| GarsideError::UnknownObject(def.target.clone()))?;
            if simple_index.insert(def.name.clone(), simples.len()).is_some() {
                return Err(GarsideError::MalformedTable(format!(
                    "duplicate simple name {:?}",
                    def.name
                )));
            }
            simples.push(Simple { name: def.name.clone(), source, target, length: def.length });
        }

        // identities: one zero-length endomorphism per object
        let mut identity = vec![usize::MAX; file.objects.len()];
        for (i, s) in simples.iter().enumerate() {
            if s.length == 0 {
                if s.source != s.target {
                    return Err(GarsideError::MalformedTable(format!(
                        "zero-length simple {:?} is not an endomorphism",
                        s.name
                    )));
                }
                if identity[s.source] != usize::MAX {
                    return Err(GarsideError::MalformedTable(format!(
                        "object {:?} has two zero-length simples",
                        file.objects[s.source]
                    )));
                }
                identity[s.source] = i;
            }
        }
        for (x, &e) in identity.iter().enumerate() {
            if e == usize::MAX {
                return Err(GarsideError::MalformedTable(format!(
                    "object {:?} has no identity simple",
                    file.objects[x]
                )));
            }
        }

        let lookup = |name: &str, idx: &BTreeMap<String, usize>| {
            idx.get(name).copied().ok_or_else(|| GarsideError::UnknownSimple(name.to_string()))
        };

        let mut product: HashMap<(usize, usize), usize> = HashMap::new();
        for (a, b, c) in &file.product {
            let ia = lookup(a, &simple_index)?;
            let ib = lookup(b, &simple_index)?;
            let ic = lookup(c, &simple_index)?;
            let (sa, sb, sc) = (&simples[ia], &simples[ib], &simples[ic]);
            if sa.target != sb.source {
                return Err(GarsideError::MalformedTable(format!(
                    "{a}·{b}: target/source mismatch"
                )));
            }
            if sc.source != sa.source || sc.target != sb.target {
                return Err(GarsideError::MalformedTable(format!(
                    "{a}·{b} = {c}: endpoint mismatch"
                )));
            }
            if sa.length + sb.length != sc.length {
                return Err(GarsideError::MalformedTable(format!(
                    "{a}·{b} = {c}: lengths do not add"
                )));
            }
            if let Some(&prev) = product.get(&(ia, ib)) {
                if prev != ic {
                    return Err(GarsideError::MalformedTable(format!(
                        "{a}·{b} defined twice with different values"
                    )));
                }
            }
            product.insert((ia, ib), ic);
        }
        // identities act trivially; fill in or validate
        for (i, s) in simples.iter().enumerate() {
            for (key, val) in
                [((identity[s.source], i), i), ((i, identity[s.target]), i)]
            {
                match product.get(&key) {
                    None => {
                        product.insert(key, val);
                    }
                    Some(&v) if v == val => {}
                    Some(_) => {
                        return Err(GarsideError::MalformedTable(format!(
                            "identity does not act trivially on {:?}",
                            s.name
                        )))
                    }
                }
            }
        }

        let mut delta = vec![usize::MAX; file.objects.len()];
        for (obj, simple) in &file.delta {
            let io = *object_index
                .get(obj)
                .ok_or_else(|| GarsideError::UnknownObject(obj.clone()))?;
            let is = lookup(simple, &simple_index)?;
            if simples[is].source != io {
                return Err(GarsideError::MalformedTable(format!(
                    "Δ at {obj:?} does not start at {obj:?}"
                )));
            }
            delta[io] = is;
        }
        for (x, &d) in delta.iter().enumerate() {
            if d == usize::MAX {
                return Err(GarsideError::MalformedTable(format!(
                    "object {:?} has no Δ",
                    file.objects[x]
                )));
            }
        }
        let phi_obj: Vec<usize> = delta.iter().map(|&d| simples[d].target).collect();
        let mut phi_obj_inv = vec![usize::MAX; phi_obj.len()];
        for (x, &y) in phi_obj.iter().enumerate() {
            if phi_obj_inv[y] != usize::MAX {
                return Err(GarsideError::MalformedTable(
                    "φ on objects is not a bijection".into(),
                ));
            }
            phi_obj_inv[y] = x;
        }

        let mut left_quot = HashMap::new();
        let mut right_quot = HashMap::new();
        let words = simples.len().div_ceil(64);
        let mut div = vec![vec![0u64; words]; simples.len()];
        for (&(a, b), &c) in &product {
            left_quot.insert((a, c), b);
            right_quot.insert((b, c), a);
            div[c][a / 64] |= 1 << (a % 64);
        }
        for (i, row) in div.iter_mut().enumerate() {
            row[i / 64] |= 1 << (i % 64);
        }

        let complement: Vec<Option<usize>> = simples
            .iter()
            .enumerate()
            .map(|(i, s)| left_quot.get(&(i, delta[s.source])).copied())
            .collect();
        let phi_simple: Vec<Option<usize>> =
            (0..simples.len()).map(|i| complement[i].and_then(|c| complement[c])).collect();
        let mut phi_simple_inv = vec![None; simples.len()];
        for (i, &img) in phi_simple.iter().enumerate() {
            if let Some(j) = img {
                phi_simple_inv[j] = Some(i);
            }
        }

        Ok(Germ {
            objects: file.objects,
            simples,
            simple_index,
            object_index,
            product,
            left_quot,
            right_quot,
            identity,
            delta,
            phi_obj,
            phi_obj_inv,
            complement,
            phi_simple,
            phi_simple_inv,
            div,
            declared_phi: file.phi,
        })
    }

    pub fn from_json(s: &str) -> Result<Germ, GarsideError> {
        let file: GermFile =
            serde_json::from_str(s).map_err(|e| GarsideError::Parse(e.to_string()))?;
        Germ::from_file(file)
    }

    pub fn to_file(&self) -> GermFile {
        GermFile {
            objects: self.objects.clone(),
            simples: self
                .simples
                .iter()
                .map(|s| SimpleDef {
                    name: s.name.clone(),
                    source: self.objects[s.source].clone(),
                    target: self.objects[s.target].clone(),
                    length: s.length,
                })
                .collect(),
            product: {
                let mut triples: Vec<(String, String, String)> = self
                    .product
                    .iter()
                    .filter(|&(&(a, b), _)| {
                        self.simples[a].length > 0 && self.simples[b].length > 0
                    })
                    .map(|(&(a, b), &c)| {
                        (
                            self.simples[a].name.clone(),
                            self.simples[b].name.clone(),
                            self.simples[c].name.clone(),
                        )
                    })
                    .collect();
                triples.sort();
                triples
            },
            delta: self
                .delta
                .iter()
                .enumerate()
                .map(|(x, &d)| (self.objects[x].clone(), self.simples[d].name.clone()))
                .collect(),
            phi: None,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn simple_count(&self) -> usize {
        self.simples.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_id(&self, name: &str) -> Result<usize, GarsideError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| GarsideError::UnknownObject(name.to_string()))
    }

    pub fn simple_name(&self, s: usize) -> &str {
        &self.simples[s].name
    }

    pub fn simple_id(&self, name: &str) -> Result<usize, GarsideError> {
        self.simple_index
            .get(name)
            .copied()
            .ok_or_else(|| GarsideError::UnknownSimple(name.to_string()))
    }

    pub fn source(&self, s: usize) -> usize {
        self.simples[s].source
    }

    pub fn target(&self, s: usize) -> usize {
        self.simples[s].target
    }

    pub fn length(&self, s: usize) -> u64 {
        self.simples[s].length
    }

    pub fn is_identity(&self, s: usize) -> bool {
        self.simples[s].length == 0
    }

    pub fn identity_at(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn delta_at(&self, x: usize) -> usize {
        self.delta[x]
    }

    pub fn phi_object(&self, x: usize) -> usize {
        self.phi_obj[x]
    }

    pub fn phi_object_inv(&self, x: usize) -> usize {
        self.phi_obj_inv[x]
    }

    pub fn phi_object_pow(&self, x: usize, k: i64) -> usize {
        let mut obj = x;
        if k >= 0 {
            for _ in 0..k {
                obj = self.phi_obj[obj];
            }
        } else {
            for _ in 0..(-k) {
                obj = self.phi_obj_inv[obj];
            }
        }
        obj
    }

    pub fn product_of(&self, a: usize, b: usize) -> Option<usize> {
        self.product.get(&(a, b)).copied()
    }

    pub fn complement_of(&self, s: usize) -> Result<usize, GarsideError> {
        self.complement[s].ok_or_else(|| GarsideError::MissingComplement(self.simple_name(s).into()))
    }

    pub fn phi_simple_of(&self, s: usize) -> Result<usize, GarsideError> {
        self.phi_simple[s]
            .ok_or_else(|| GarsideError::MissingComplement(self.simple_name(s).into()))
    }

    pub fn phi_simple_inv_of(&self, s: usize) -> Result<usize, GarsideError> {
        self.phi_simple_inv[s]
            .ok_or_else(|| GarsideError::MissingComplement(self.simple_name(s).into()))
    }

    pub fn phi_simple_pow(&self, s: usize, k: i64) -> Result<usize, GarsideError> {
        let mut out = s;
        if k >= 0 {
            for _ in 0..k {
                out = self.phi_simple_of(out)?;
            }
        } else {
            for _ in 0..(-k) {
                out = self.phi_simple_inv_of(out)?;
            }
        }
        Ok(out)
    }

    /// u left-divides v at table level.
    pub fn divides(&self, u: usize, v: usize) -> bool {
        self.div[v][u / 64] & (1 << (u % 64)) != 0
    }

    pub fn left_quot_of(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(self.identity[self.simples[u].target]);
        }
        self.left_quot.get(&(u, v)).copied()
    }

    pub fn right_quot_of(&self, h: usize, v: usize) -> Option<usize> {
        if h == v {
            return Some(self.identity[self.simples[h].source]);
        }
        self.right_quot.get(&(h, v)).copied()
    }

    /// All left divisors of a simple, sorted.
    pub fn divisors_of(&self, v: usize) -> Vec<usize> {
        (0..self.simples.len()).filter(|&u| self.divides(u, v)).collect()
    }

    /// Meet of two same-source simples in the left-divisibility order of the
    /// simples (the germ-level ∧ of the greedy normal form).
    pub fn meet_simples(&self, p: usize, q: usize) -> Result<usize, GarsideError> {
        debug_assert_eq!(self.simples[p].source, self.simples[q].source);
        let words = self.div[p].len();
        let mut common = vec![0u64; words];
        for w in 0..words {
            common[w] = self.div[p][w] & self.div[q][w];
        }
        let mut best: Option<usize> = None;
        for w in 0..words {
            let mut bits = common[w];
            while bits != 0 {
                let u = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if best.map_or(true, |b| self.simples[u].length > self.simples[b].length) {
                    best = Some(u);
                }
            }
        }
        let m = best.ok_or_else(|| {
            GarsideError::NotALattice(format!(
                "{} and {} have no common divisor",
                self.simple_name(p),
                self.simple_name(q)
            ))
        })?;
        // the maximum must dominate every common divisor
        for w in 0..words {
            if common[w] & !self.div[m][w] != 0 {
                return Err(GarsideError::NotALattice(format!(
                    "common divisors of {} and {} have no maximum",
                    self.simple_name(p),
                    self.simple_name(q)
                )));
            }
        }
        Ok(m)
    }

    /// Non-identity simples with the given source, sorted by (length, name).
    pub fn simples_from(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.simples.len())
            .filter(|&s| self.simples[s].source == x && self.simples[s].length > 0)
            .collect();
        out.sort_by(|&a, &b| {
            (self.simples[a].length, &self.simples[a].name)
                .cmp(&(self.simples[b].length, &self.simples[b].name))
        });
        out
    }

    /// Runs every germ-level axiom check; all defects are report entries.
    pub fn check(&self, word_bound: u64) -> GermReport {
        GermReport {
            homogeneity: self.check_homogeneity(),
            associativity: self.check_associativity(),
            cancellativity: self.check_cancellativity(),
            word_cancellativity: crate::garside::words::check_word_cancellativity(
                self, word_bound,
            ),
            cancellativity_bound: word_bound,
            atoms_are_simple: self.check_atoms(),
            complement_bijection: self.check_complements(),
            naturality: self.check_naturality(),
            divisor_lattices: self.check_divisor_lattices(),
            delta_positive: self.check_delta_positive(),
        }
    }

    fn check_homogeneity(&self) -> CheckStatus {
        // additivity is enforced at load time; zero-length ⇔ identity remains
        for (i, s) in self.simples.iter().enumerate() {
            if (s.length == 0) != (self.identity[s.source] == i && s.source == s.target) {
                return CheckStatus::Fail {
                    witness: vec![s.name.clone()],
                    detail: "length is zero exactly on identities".into(),
                };
            }
        }
        CheckStatus::Pass
    }

    fn check_associativity(&self) -> CheckStatus {
        // (st)u = s(tu) whenever both paths make sense, and divisibility is
        // closed: u ⪯ h ⪯ v forces the quotient product into the table
        for (&(s, t), &st) in &self.product {
            for u in 0..self.simples.len() {
                let tu = match self.product_of(t, u) {
                    Some(v) => v,
                    None => {
                        if let Some(stu) = self.product_of(st, u) {
                            return CheckStatus::Fail {
                                witness: vec![
                                    self.simple_name(s).into(),
                                    self.simple_name(t).into(),
                                    self.simple_name(u).into(),
                                ],
                                detail: format!(
                                    "(st)u = {} defined but t·u missing",
                                    self.simple_name(stu)
                                ),
                            };
                        }
                        continue;
                    }
                };
                match (self.product_of(st, u), self.product_of(s, tu)) {
                    (Some(a), Some(b)) if a == b => {}
                    (None, None) => {}
                    _ => {
                        return CheckStatus::Fail {
                            witness: vec![
                                self.simple_name(s).into(),
                                self.simple_name(t).into(),
                                self.simple_name(u).into(),
                            ],
                            detail: "associativity fails on this triple".into(),
                        }
                    }
                }
            }
        }
        CheckStatus::Pass
    }

    fn check_cancellativity(&self) -> CheckStatus {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (&(a, b), &c) in &self.product {
            if let Some(b2) = seen.insert((a, c), b) {
                if b2 != b {
                    return CheckStatus::Fail {
                        witness: vec![
                            self.simple_name(a).into(),
                            self.simple_name(b).into(),
                            self.simple_name(b2).into(),
                        ],
                        detail: "left cancellativity fails in the table".into(),
                    };
                }
            }
        }
        let mut seen_r: HashMap<(usize, usize), usize> = HashMap::new();
        for (&(a, b), &c) in &self.product {
            if let Some(a2) = seen_r.insert((b, c), a) {
                if a2 != a {
                    return CheckStatus::Fail {
                        witness: vec![
                            self.simple_name(b).into(),
                            self.simple_name(a).into(),
                            self.simple_name(a2).into(),
                        ],
                        detail: "right cancellativity fails in the table".into(),
                    };
                }
            }
        }
        CheckStatus::Pass
    }

    fn check_atoms(&self) -> CheckStatus {
        // every non-identity simple must decompose into atoms, and every atom
        // must divide Δ (have a complement)
        for (i, s) in self.simples.iter().enumerate() {
            if s.length == 0 {
                continue;
            }
            let is_atom = !self.product.iter().any(|(&(a, b), &c)| {
                c == i && self.simples[a].length > 0 && self.simples[b].length > 0
            });
            if is_atom && self.complement[i].is_none() {
                return CheckStatus::Fail {
                    witness: vec![s.name.clone()],
                    detail: "atom has no complement path to Δ".into(),
                };
            }
        }
        CheckStatus::Pass
    }

    fn check_complements(&self) -> CheckStatus {
        for (i, s) in self.simples.iter().enumerate() {
            if self.complement[i].is_none() {
                return CheckStatus::Fail {
                    witness: vec![s.name.clone()],
                    detail: "no complement: simple does not left-divide Δ".into(),
                };
            }
        }
        // complement must biject simples from x onto simples into φ(x)
        for x in 0..self.objects.len() {
            let from: Vec<usize> =
                (0..self.simples.len()).filter(|&s| self.simples[s].source == x).collect();
            let mut image: Vec<usize> = from.iter().map(|&s| self.complement[s].unwrap()).collect();
            image.sort_unstable();
            let before = image.len();
            image.dedup();
            if image.len() != before {
                return CheckStatus::Fail {
                    witness: vec![self.objects[x].clone()],
                    detail: "complement map is not injective".into(),
                };
            }
            let mut into: Vec<usize> = (0..self.simples.len())
                .filter(|&s| self.simples[s].target == self.phi_obj[x])
                .collect();
            into.sort_unstable();
            if image != into {
                return CheckStatus::Fail {
                    witness: vec![self.objects[x].clone()],
                    detail: "complement map is not onto the simples into φ(x)".into(),
                };
            }
        }
        CheckStatus::Pass
    }

    fn check_naturality(&self) -> CheckStatus {
        // φ(s) = (s*)* must be total, bijective, product- and Δ-preserving
        for (i, s) in self.simples.iter().enumerate() {
            let img = match self.phi_simple[i] {
                Some(v) => v,
                None => {
                    return CheckStatus::Fail {
                        witness: vec![s.name.clone()],
                        detail: "φ is not defined (missing complement)".into(),
                    }
                }
            };
            let t = &self.simples[img];
            if t.source != self.phi_obj[s.source]
                || t.target != self.phi_obj[s.target]
                || t.length != s.length
            {
                return CheckStatus::Fail {
                    witness: vec![s.name.clone()],
                    detail: "φ(s) has wrong endpoints or length".into(),
                };
            }
        }
        for x in 0..self.objects.len() {
            if self.phi_simple[self.delta[x]] != Some(self.delta[self.phi_obj[x]]) {
                return CheckStatus::Fail {
                    witness: vec![self.objects[x].clone()],
                    detail: "φ(Δ_x) ≠ Δ_{φ(x)}".into(),
                };
            }
        }
        for (&(a, b), &c) in &self.product {
            let (fa, fb, fc) = (self.phi_simple[a], self.phi_simple[b], self.phi_simple[c]);
            match (fa, fb, fc) {
                (Some(fa), Some(fb), Some(fc)) => {
                    if self.product_of(fa, fb) != Some(fc) {
                        return CheckStatus::Fail {
                            witness: vec![
                                self.simple_name(a).into(),
                                self.simple_name(b).into(),
                            ],
                            detail: "φ does not preserve the product".into(),
                        };
                    }
                }
                _ => {
                    return CheckStatus::Fail {
                        witness: vec![self.simple_name(a).into()],
                        detail: "φ is partial on a product entry".into(),
                    }
                }
            }
        }
        // declared φ, when present, must agree with the derived one
        if let Some(decl) = &self.declared_phi {
            for (from, to) in &decl.objects {
                match (self.object_index.get(from), self.object_index.get(to)) {
                    (Some(&f), Some(&t)) if self.phi_obj[f] == t => {}
                    _ => {
                        return CheckStatus::Fail {
                            witness: vec![from.clone(), to.clone()],
                            detail: "declared φ on objects disagrees with Δ targets".into(),
                        }
                    }
                }
            }
            for (from, to) in &decl.simples {
                match (self.simple_index.get(from), self.simple_index.get(to)) {
                    (Some(&f), Some(&t)) if self.phi_simple[f] == Some(t) => {}
                    _ => {
                        return CheckStatus::Fail {
                            witness: vec![from.clone(), to.clone()],
                            detail: "declared φ on simples disagrees with s ↦ s**".into(),
                        }
                    }
                }
            }
        }
        CheckStatus::Pass
    }

    /// Left-divisor poset of Δ_x (simples from x) and right-divisor poset
    /// (simples into φ(x)), both run through the exhaustive lattice scan.
    fn check_divisor_lattices(&self) -> CheckStatus {
        for x in 0..self.objects.len() {
            let left = self.divisor_poset_left(x);
            let report = left.is_lattice();
            if !report.is_lattice {
                let (a, b) = report.failing_pair.unwrap();
                return CheckStatus::Fail {
                    witness: vec![self.objects[x].clone(), a, b],
                    detail: format!("left-divisor poset of Δ misses a {}", report.missing.unwrap()),
                };
            }
            let right = self.divisor_poset_right(x);
            let report = right.is_lattice();
            if !report.is_lattice {
                let (a, b) = report.failing_pair.unwrap();
                return CheckStatus::Fail {
                    witness: vec![self.objects[x].clone(), a, b],
                    detail: format!(
                        "right-divisor poset of Δ misses a {}",
                        report.missing.unwrap()
                    ),
                };
            }
        }
        CheckStatus::Pass
    }

    fn check_delta_positive(&self) -> CheckStatus {
        for (x, &d) in self.delta.iter().enumerate() {
            if self.simples[d].length == 0 {
                return CheckStatus::Fail {
                    witness: vec![self.objects[x].clone()],
                    detail: "Δ has length 0, φ cannot be increasing".into(),
                };
            }
        }
        CheckStatus::Pass
    }

    /// Simples with source x under left divisibility, as a graded relation.
    pub fn divisor_poset_left(&self, x: usize) -> GradedRelation {
        let elems: Vec<usize> =
            (0..self.simples.len()).filter(|&s| self.simples[s].source == x).collect();
        GradedRelation::from_leq(
            &elems,
            |&s| self.simples[s].name.clone(),
            |&u, &v| self.divides(u, v),
            |&u, &v| self.simples[v].length - self.simples[u].length,
        )
        .expect("divisor poset construction")
    }

    /// Simples with target φ(x) under right divisibility.
    pub fn divisor_poset_right(&self, x: usize) -> GradedRelation {
        let elems: Vec<usize> = (0..self.simples.len())
            .filter(|&s| self.simples[s].target == self.phi_obj[x])
            .collect();
        GradedRelation::from_leq(
            &elems,
            |&s| self.simples[s].name.clone(),
            |&u, &v| u == v || self.right_quot.contains_key(&(u, v)),
            |&u, &v| self.simples[v].length - self.simples[u].length,
        )
        .expect("divisor poset construction")
    }
}

/// Per-axiom outcome of [`Germ::check`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GermReport {
    pub homogeneity: CheckStatus,
    pub associativity: CheckStatus,
    pub cancellativity: CheckStatus,
    /// Word-level cancellativity checked by exhaustive closure up to the
    /// recorded bound; beyond it cancellativity is an assumption.
    pub word_cancellativity: CheckStatus,
    pub cancellativity_bound: u64,
    pub atoms_are_simple: CheckStatus,
    pub complement_bijection: CheckStatus,
    pub naturality: CheckStatus,
    pub divisor_lattices: CheckStatus,
    pub delta_positive: CheckStatus,
}

impl GermReport {
    pub fn all_pass(&self) -> bool {
        self.entries().iter().all(|(_, s)| s.passed())
    }

    pub fn entries(&self) -> Vec<(&'static str, &CheckStatus)> {
        vec![
            ("homogeneity", &self.homogeneity),
            ("associativity", &self.associativity),
            ("cancellativity", &self.cancellativity),
            ("word_cancellativity", &self.word_cancellativity),
            ("atoms_are_simple", &self.atoms_are_simple),
            ("complement_bijection", &self.complement_bijection),
            ("naturality", &self.naturality),
            ("divisor_lattices", &self.divisor_lattices),
            ("delta_positive", &self.delta_positive),
        ]
    }

    pub fn first_failure(&self) -> Option<(&'static str, &CheckStatus)> {
        self.entries().into_iter().find(|(_, s)| !s.passed())
    }
}
