//! Left-greedy normal forms in the groupoid generated by a germ.
//!
//! Every morphism is written uniquely as `s₁·s₂·…·s_ℓ·Δᵏ` with each `sᵢ` a
//! non-identity, non-Δ simple and the left-weighted condition
//! `sᵢ = (sᵢ·sᵢ₊₁) ∧ Δ` at every junction. Inverses are eliminated through
//! complements (`s⁻¹ = s*·Δ⁻¹`, validated against the permutation oracle in
//! the braid tests) and Δ-powers are pushed to the right with the φ-twist.

use super::germ::{GarsideError, Germ};

/// A signed letter of an input word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    Pos(usize),
    Neg(usize),
}

/// A groupoid element in left-greedy normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub source: usize,
    pub factors: Vec<usize>,
    pub delta_power: i64,
}

impl Morphism {
    pub fn identity(source: usize) -> Morphism {
        Morphism { source, factors: Vec::new(), delta_power: 0 }
    }

    /// Normal form of a single simple letter.
    pub fn from_simple(germ: &Germ, s: usize) -> Morphism {
        let source = germ.source(s);
        if germ.is_identity(s) {
            Morphism::identity(source)
        } else if s == germ.delta_at(source) {
            Morphism { source, factors: Vec::new(), delta_power: 1 }
        } else {
            Morphism { source, factors: vec![s], delta_power: 0 }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty() && self.delta_power == 0
    }

    pub fn is_positive(&self) -> bool {
        self.delta_power >= 0
    }

    /// Object reached after the factors, before the Δ-power.
    fn inner_target(&self, germ: &Germ) -> usize {
        self.factors.last().map_or(self.source, |&s| germ.target(s))
    }

    pub fn target(&self, germ: &Germ) -> usize {
        germ.phi_object_pow(self.inner_target(germ), self.delta_power)
    }

    /// Canonical length: factor lengths plus the Δ-power contribution.
    pub fn grade(&self, germ: &Germ) -> i64 {
        let mut total: i64 = self.factors.iter().map(|&s| germ.length(s) as i64).sum();
        let mut obj = self.inner_target(germ);
        if self.delta_power >= 0 {
            for _ in 0..self.delta_power {
                total += germ.length(germ.delta_at(obj)) as i64;
                obj = germ.phi_object(obj);
            }
        } else {
            for _ in 0..(-self.delta_power) {
                obj = germ.phi_object_inv(obj);
                total -= germ.length(germ.delta_at(obj)) as i64;
            }
        }
        total
    }

    pub fn label(&self, germ: &Germ) -> String {
        let mut parts: Vec<String> =
            self.factors.iter().map(|&s| germ.simple_name(s).to_string()).collect();
        if self.delta_power != 0 {
            parts.push(format!("D^{}", self.delta_power));
        }
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join("·")
        }
    }
}

/// Left-weights a positive factor sequence in place, then absorbs leading Δ
/// factors into the power. Identity factors are dropped.
fn normalize(
    germ: &Germ,
    source: usize,
    mut factors: Vec<usize>,
    mut power: i64,
) -> Result<Morphism, GarsideError> {
    factors.retain(|&s| !germ.is_identity(s));

    let mut i = 0;
    while factors.len() >= 2 && i + 1 < factors.len() {
        let (s, t) = (factors[i], factors[i + 1]);
        let s_star = germ.complement_of(s)?;
        let u = germ.meet_simples(s_star, t)?;
        if germ.is_identity(u) {
            i += 1;
            continue;
        }
        let ns = germ
            .product_of(s, u)
            .ok_or_else(|| GarsideError::MissingProduct(
                germ.simple_name(s).into(),
                germ.simple_name(u).into(),
            ))?;
        let nt = germ.left_quot_of(u, t).ok_or_else(|| GarsideError::MissingProduct(
            germ.simple_name(u).into(),
            germ.simple_name(t).into(),
        ))?;
        factors[i] = ns;
        if germ.is_identity(nt) {
            factors.remove(i + 1);
        } else {
            factors[i + 1] = nt;
        }
        // the junction to the left may have become reducible
        i = i.saturating_sub(1);
    }

    // leading Δ factors migrate into the power, twisting the rest by φ⁻¹
    loop {
        match factors.first() {
            Some(&first) if first == germ.delta_at(germ.source(first)) => {
                factors.remove(0);
                for f in factors.iter_mut() {
                    *f = germ.phi_simple_inv_of(*f)?;
                }
                power += 1;
            }
            _ => break,
        }
    }

    debug_assert!(factors.iter().all(|&s| {
        s != germ.delta_at(germ.source(s)) && !germ.is_identity(s)
    }));
    Ok(Morphism { source, factors, delta_power: power })
}

/// Normal form of a signed word of simples starting at `source`.
pub fn normal_form(germ: &Germ, source: usize, word: &[Letter]) -> Result<Morphism, GarsideError> {
    let mut factors: Vec<usize> = Vec::new();
    let mut power: i64 = 0;
    // target of the accumulated morphism
    let mut target = source;

    for (pos, &letter) in word.iter().enumerate() {
        match letter {
            Letter::Pos(s) => {
                if germ.source(s) != target {
                    return Err(GarsideError::NotComposable {
                        at: format!("letter {} ({})", pos, germ.simple_name(s)),
                    });
                }
                target = germ.target(s);
                if germ.is_identity(s) {
                    continue;
                }
                if s == germ.delta_at(germ.source(s)) {
                    power += 1;
                    continue;
                }
                factors.push(germ.phi_simple_pow(s, -power)?);
            }
            Letter::Neg(s) => {
                if germ.target(s) != target {
                    return Err(GarsideError::NotComposable {
                        at: format!("letter {} ({}⁻¹)", pos, germ.simple_name(s)),
                    });
                }
                target = germ.source(s);
                if germ.is_identity(s) {
                    continue;
                }
                // s⁻¹ = s*·Δ⁻¹ at the source object of s
                let star = germ.complement_of(s)?;
                if !germ.is_identity(star) {
                    factors.push(germ.phi_simple_pow(star, -power)?);
                }
                power -= 1;
            }
        }
    }
    normalize(germ, source, factors, power)
}

/// Composition `f·g` in normal form; `target(f)` must equal `source(g)`.
pub fn multiply(germ: &Germ, f: &Morphism, g: &Morphism) -> Result<Morphism, GarsideError> {
    if f.target(germ) != g.source {
        return Err(GarsideError::NotComposable {
            at: format!(
                "target {} ≠ source {}",
                germ.object_name(f.target(germ)),
                germ.object_name(g.source)
            ),
        });
    }
    let mut factors = f.factors.clone();
    for &s in &g.factors {
        factors.push(germ.phi_simple_pow(s, -f.delta_power)?);
    }
    normalize(germ, f.source, factors, f.delta_power + g.delta_power)
}

/// Groupoid inverse.
pub fn inverse(germ: &Germ, f: &Morphism) -> Result<Morphism, GarsideError> {
    let mut word = Vec::with_capacity(f.factors.len() + f.delta_power.unsigned_abs() as usize);
    let mut target = f.target(germ);
    // peel Δ^k first, then the factors in reverse
    if f.delta_power >= 0 {
        for _ in 0..f.delta_power {
            let x = germ.phi_object_inv(target);
            word.push(Letter::Neg(germ.delta_at(x)));
            target = x;
        }
    } else {
        for _ in 0..(-f.delta_power) {
            word.push(Letter::Pos(germ.delta_at(target)));
            target = germ.phi_object(target);
        }
    }
    for &s in f.factors.iter().rev() {
        word.push(Letter::Neg(s));
    }
    normal_form(germ, f.target(germ), &word)
}

/// Positive generator step: `f · s` for a simple with matching source.
pub fn right_multiply_simple(
    germ: &Germ,
    f: &Morphism,
    s: usize,
) -> Result<Morphism, GarsideError> {
    let mut factors = f.factors.clone();
    if !germ.is_identity(s) {
        let twisted = germ.phi_simple_pow(s, -f.delta_power)?;
        if twisted == germ.delta_at(germ.source(twisted)) {
            return normalize(germ, f.source, factors, f.delta_power + 1);
        }
        factors.push(twisted);
    }
    normalize(germ, f.source, factors, f.delta_power)
}

/// Checks the left-weighted condition at every junction of a normal form.
pub fn is_left_weighted(germ: &Germ, f: &Morphism) -> Result<bool, GarsideError> {
    if let Some(&first) = f.factors.first() {
        if first == germ.delta_at(germ.source(first)) {
            return Ok(false);
        }
    }
    for w in f.factors.windows(2) {
        let star = germ.complement_of(w[0])?;
        if !germ.is_identity(germ.meet_simples(star, w[1])?) {
            return Ok(false);
        }
    }
    Ok(true)
}
