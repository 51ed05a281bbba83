//! Divisibility in the positive category: breadth-first saturation of the
//! common-left-divisor set is the primary (correct-by-construction) algorithm;
//! the head-recursion shortcut is opt-in and shadowed by tests.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::cmp::Reverse;

use super::germ::{GarsideError, Germ};
use super::normal::{inverse, multiply, right_multiply_simple, Morphism};

const DEFAULT_NODE_CAP: usize = 2_000_000;

fn require_positive(germ: &Germ, f: &Morphism, who: &str) -> Result<(), GarsideError> {
    if !f.is_positive() {
        return Err(GarsideError::NotPositive(format!("{who} = {}", f.label(germ))));
    }
    Ok(())
}

/// The largest simple prefix of a positive morphism (its Δ-head), as a simple
/// at the source object. With a positive Δ-power the head is Δ itself, since
/// f = Δ·φ(s₁…s_ℓ)·Δ^{k−1}.
pub fn head_simple(germ: &Germ, f: &Morphism) -> usize {
    if f.delta_power > 0 {
        germ.delta_at(f.source)
    } else if let Some(&first) = f.factors.first() {
        first
    } else {
        germ.identity_at(f.source)
    }
}

/// Does a simple left-divide a positive morphism?
pub fn simple_divides(germ: &Germ, s: usize, f: &Morphism) -> bool {
    germ.source(s) == f.source && germ.divides(s, head_simple(germ, f))
}

/// All left divisors of a positive morphism, enumerated by saturation.
pub fn left_divisors(germ: &Germ, f: &Morphism) -> Result<Vec<Morphism>, GarsideError> {
    require_positive(germ, f, "f")?;
    let start = Morphism::identity(f.source);
    let mut seen: BTreeSet<Morphism> = BTreeSet::new();
    let mut queue: Vec<(Morphism, Morphism)> = vec![(start.clone(), f.clone())];
    seen.insert(start);
    let mut at = 0;
    while at < queue.len() {
        let (d, rest) = queue[at].clone();
        at += 1;
        if queue.len() > DEFAULT_NODE_CAP {
            return Err(GarsideError::CapExceeded("divisor enumeration".into()));
        }
        let head = head_simple(germ, &rest);
        for s in germ.simples_from(rest.source) {
            if !germ.divides(s, head) {
                continue;
            }
            let nd = right_multiply_simple(germ, &d, s)?;
            if seen.contains(&nd) {
                continue;
            }
            // rest of the quotient: s⁻¹ · rest
            let s_inv = inverse(germ, &Morphism::from_simple(germ, s))?;
            let nrest = multiply(germ, &s_inv, &rest)?;
            seen.insert(nd.clone());
            queue.push((nd, nrest));
        }
    }
    Ok(seen.into_iter().collect())
}

/// Greatest common left divisor of two positives with a common source,
/// computed by saturating the common-divisor set and taking its maximum.
pub fn left_gcd(germ: &Germ, f: &Morphism, g: &Morphism) -> Result<Morphism, GarsideError> {
    require_positive(germ, f, "f")?;
    require_positive(germ, g, "g")?;
    if f.source != g.source {
        return Err(GarsideError::NotComposable { at: "gcd arguments share no source".into() });
    }
    let start = Morphism::identity(f.source);
    let mut seen: BTreeSet<Morphism> = BTreeSet::new();
    let mut queue: Vec<(Morphism, Morphism, Morphism)> =
        vec![(start.clone(), f.clone(), g.clone())];
    seen.insert(start.clone());
    let mut best = start;
    let mut best_grade = 0i64;
    let mut at = 0;
    while at < queue.len() {
        let (d, rf, rg) = queue[at].clone();
        at += 1;
        let head_f = head_simple(germ, &rf);
        let head_g = head_simple(germ, &rg);
        for s in germ.simples_from(rf.source) {
            if !germ.divides(s, head_f) || !germ.divides(s, head_g) {
                continue;
            }
            let nd = right_multiply_simple(germ, &d, s)?;
            if seen.contains(&nd) {
                continue;
            }
            let s_inv = inverse(germ, &Morphism::from_simple(germ, s))?;
            let nrf = multiply(germ, &s_inv, &rf)?;
            let nrg = multiply(germ, &s_inv, &rg)?;
            seen.insert(nd.clone());
            let grade = nd.grade(germ);
            if grade > best_grade {
                best = nd.clone();
                best_grade = grade;
            }
            queue.push((nd, nrf, nrg));
        }
    }
    // the maximum must dominate every common divisor
    for d in &seen {
        let q = multiply(germ, &inverse(germ, d)?, &best)?;
        if !q.is_positive() {
            return Err(GarsideError::NotALattice(format!(
                "common divisors of {} and {} have no maximum",
                f.label(germ),
                g.label(germ)
            )));
        }
    }
    Ok(best)
}

/// Head-recursion gcd: gcd(f, g) = u · gcd(u⁻¹f, u⁻¹g) with u the meet of the
/// Δ-heads. Must agree with [`left_gcd`]; used only when explicitly called.
pub fn left_gcd_head_recursive(
    germ: &Germ,
    f: &Morphism,
    g: &Morphism,
) -> Result<Morphism, GarsideError> {
    require_positive(germ, f, "f")?;
    require_positive(germ, g, "g")?;
    let mut acc = Morphism::identity(f.source);
    let mut rf = f.clone();
    let mut rg = g.clone();
    loop {
        let u = germ.meet_simples(head_simple(germ, &rf), head_simple(germ, &rg))?;
        if germ.is_identity(u) {
            return Ok(acc);
        }
        acc = right_multiply_simple(germ, &acc, u)?;
        let u_inv = inverse(germ, &Morphism::from_simple(germ, u))?;
        rf = multiply(germ, &u_inv, &rf)?;
        rg = multiply(germ, &u_inv, &rg)?;
    }
}

/// Least common right-multiple of two positives with a common source: the
/// grade-least positive above both, found by expanding upwards in grade order.
pub fn left_lcm(germ: &Germ, f: &Morphism, g: &Morphism) -> Result<Morphism, GarsideError> {
    require_positive(germ, f, "f")?;
    require_positive(germ, g, "g")?;
    if f.source != g.source {
        return Err(GarsideError::NotComposable { at: "lcm arguments share no source".into() });
    }
    let leq = |a: &Morphism, b: &Morphism| -> Result<bool, GarsideError> {
        Ok(multiply(germ, &inverse(germ, a)?, b)?.is_positive())
    };
    if leq(g, f)? {
        return Ok(f.clone());
    }
    let mut heap: BinaryHeap<Reverse<(i64, Morphism)>> = BinaryHeap::new();
    let mut seen: BTreeSet<Morphism> = BTreeSet::new();
    heap.push(Reverse((f.grade(germ), f.clone())));
    seen.insert(f.clone());
    while let Some(Reverse((grade, m))) = heap.pop() {
        if seen.len() > DEFAULT_NODE_CAP {
            return Err(GarsideError::CapExceeded("lcm search".into()));
        }
        if leq(g, &m)? {
            return Ok(m);
        }
        for s in germ.simples_from(m.target(germ)) {
            let nm = right_multiply_simple(germ, &m, s)?;
            if seen.insert(nm.clone()) {
                heap.push(Reverse((grade + germ.length(s) as i64, nm)));
            }
        }
    }
    Err(GarsideError::NotALattice(format!(
        "{} and {} have no common right multiple",
        f.label(germ),
        g.label(germ)
    )))
}

/// All positive morphisms from `source` with grade ≤ `max_grade`.
pub fn enumerate_positives(
    germ: &Germ,
    source: usize,
    max_grade: u64,
    cap: usize,
) -> Result<Vec<Morphism>, GarsideError> {
    let mut seen: BTreeMap<Morphism, u64> = BTreeMap::new();
    let start = Morphism::identity(source);
    let mut queue = vec![start.clone()];
    seen.insert(start, 0);
    let mut at = 0;
    while at < queue.len() {
        let m = queue[at].clone();
        at += 1;
        let grade = seen[&m];
        for s in germ.simples_from(m.target(germ)) {
            let g2 = grade + germ.length(s);
            if g2 > max_grade {
                continue;
            }
            let nm = right_multiply_simple(germ, &m, s)?;
            if !seen.contains_key(&nm) {
                if seen.len() >= cap {
                    return Err(GarsideError::CapExceeded("positive enumeration".into()));
                }
                seen.insert(nm.clone(), g2);
                queue.push(nm);
            }
        }
    }
    Ok(seen.into_keys().collect())
}
