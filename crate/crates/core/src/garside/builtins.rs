//! Built-in germs: the braid germ on permutation simples and the free abelian
//! germ on subset simples.

use std::collections::BTreeMap;

use super::germ::{GarsideError, Germ, GermFile, SimpleDef};

/// Permutations in one-line notation; `w[i]` is the image of position `i`.
fn inversions(w: &[usize]) -> u64 {
    let mut inv = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// "Apply u, then v" on positions.
fn compose_then(u: &[usize], v: &[usize]) -> Vec<usize> {
    u.iter().map(|&i| v[i]).collect()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for slot in 0..=k {
                let mut q = p.clone();
                q.insert(slot, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Lexicographically smallest reduced word for each permutation, over atom
/// letters a, b, c, … (a is the transposition of strands 1 and 2).
fn reduced_names(perms: &[Vec<usize>], n: usize) -> BTreeMap<Vec<usize>, String> {
    let letters: Vec<char> = (0..n - 1).map(|i| (b'a' + i as u8) as char).collect();
    let gens: Vec<Vec<usize>> = (0..n - 1)
        .map(|i| {
            let mut g: Vec<usize> = (0..n).collect();
            g.swap(i, i + 1);
            g
        })
        .collect();
    let mut names: BTreeMap<Vec<usize>, String> = BTreeMap::new();
    let mut order: Vec<&Vec<usize>> = perms.iter().collect();
    order.sort_by_key(|w| inversions(w));
    for w in order {
        if inversions(w) == 0 {
            names.insert(w.clone(), "e".to_string());
            continue;
        }
        // greedy first letter: smallest g with ℓ(g⁻¹·w-as-first-letter) < ℓ(w)
        for (gi, g) in gens.iter().enumerate() {
            // w = "g then v" means v = compose_then(g, w) since g is an involution
            let v = compose_then(g, w);
            if inversions(&v) < inversions(w) {
                let rest = &names[&v];
                let name = if rest == "e" {
                    letters[gi].to_string()
                } else {
                    format!("{}{}", letters[gi], rest)
                };
                names.insert(w.clone(), name);
                break;
            }
        }
    }
    names
}

/// The braid germ on n strands: simples are the n! permutations, the product
/// is defined exactly when Coxeter lengths add, and Δ is the longest element.
pub fn braid_germ(n: usize) -> Result<Germ, GarsideError> {
    if !(2..=6).contains(&n) {
        return Err(GarsideError::MalformedTable(format!(
            "braid germ supported for 2 ≤ n ≤ 6, got {n}"
        )));
    }
    let perms = all_permutations(n);
    let names = reduced_names(&perms, n);
    let simples: Vec<SimpleDef> = perms
        .iter()
        .map(|w| SimpleDef {
            name: names[w].clone(),
            source: "0".to_string(),
            target: "0".to_string(),
            length: inversions(w),
        })
        .collect();
    let mut product = Vec::new();
    for u in &perms {
        for v in &perms {
            let uv = compose_then(u, v);
            if inversions(u) + inversions(v) == inversions(&uv) {
                product.push((names[u].clone(), names[v].clone(), names[&uv].clone()));
            }
        }
    }
    let longest: Vec<usize> = (0..n).rev().collect();
    let file = GermFile {
        objects: vec!["0".to_string()],
        simples,
        product,
        delta: [("0".to_string(), names[&longest].clone())].into(),
        phi: None,
    };
    Germ::from_file(file)
}

/// The free abelian germ of rank n: simples are subsets of the n atoms, the
/// product is the union of disjoint subsets, and Δ is the full set.
pub fn free_abelian_germ(n: usize) -> Result<Germ, GarsideError> {
    if n == 0 || n > 16 {
        return Err(GarsideError::MalformedTable(format!(
            "free abelian germ supported for 1 ≤ n ≤ 16, got {n}"
        )));
    }
    let name = |mask: u32| -> String {
        if mask == 0 {
            return "e".to_string();
        }
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| format!("x{}", i + 1))
            .collect::<Vec<_>>()
            .join("*")
    };
    let simples: Vec<SimpleDef> = (0..(1u32 << n))
        .map(|mask| SimpleDef {
            name: name(mask),
            source: "0".to_string(),
            target: "0".to_string(),
            length: u64::from(mask.count_ones()),
        })
        .collect();
    let mut product = Vec::new();
    for a in 0..(1u32 << n) {
        for b in 0..(1u32 << n) {
            if a & b == 0 {
                product.push((name(a), name(b), name(a | b)));
            }
        }
    }
    let full = (1u32 << n) - 1;
    let file = GermFile {
        objects: vec!["0".to_string()],
        simples,
        product,
        delta: [("0".to_string(), name(full))].into(),
        phi: None,
    };
    Germ::from_file(file)
}

/// Resolves instance strings like `braid:4` and `free-abelian:3`.
pub fn builtin_germ(spec: &str) -> Result<Germ, GarsideError> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| GarsideError::Parse(format!("expected kind:n, got {spec:?}")))?;
    let n: usize =
        arg.parse().map_err(|_| GarsideError::Parse(format!("bad rank in {spec:?}")))?;
    match kind {
        "braid" => braid_germ(n),
        "free-abelian" | "zn" => free_abelian_germ(n),
        other => Err(GarsideError::Parse(format!("unknown builtin germ kind {other:?}"))),
    }
}
