//! The Garside lattice L_x: morphisms from a base object ordered by
//! positivity of the quotient, with ψ(f) = f·Δ as the increasing automorphism.
//! Registering it as a [`ZLattice`] makes the weak Cayley graph the §3-style
//! lattice graph and its Δ-quotient the §2-style orbit graph.

use crate::zaction::{build_lattice_ball, build_quotient_ball, BallGraph, ZLattice, ZactionError};

use super::divisibility::{left_divisors, left_gcd, left_lcm};
use super::germ::{GarsideError, Germ};
use super::normal::{inverse, multiply, Morphism};

/// Morphisms out of a fixed base object of the groupoid of a germ.
#[derive(Clone, Copy)]
pub struct GarsideLattice<'g> {
    pub germ: &'g Germ,
    pub base: usize,
}

impl<'g> GarsideLattice<'g> {
    /// The germ must have total complements (so φ and normal forms are
    /// defined) and increasing Δ at every object.
    pub fn new(germ: &'g Germ, base: usize) -> Result<Self, GarsideError> {
        for s in 0..germ.simple_count() {
            germ.complement_of(s)?;
        }
        for x in 0..germ.object_count() {
            if germ.length(germ.delta_at(x)) == 0 {
                return Err(GarsideError::DeltaNotIncreasing(germ.object_name(x).to_string()));
            }
        }
        Ok(GarsideLattice { germ, base })
    }

    pub fn identity(&self) -> Morphism {
        Morphism::identity(self.base)
    }

    fn quotient(&self, f: &Morphism, g: &Morphism) -> Morphism {
        let fi = inverse(self.germ, f).expect("validated germ");
        multiply(self.germ, &fi, g).expect("points of L_x share the base object")
    }

    /// Minimal k ≥ 0 with ψ⁻ᵏ(f) ≤ both f and g.
    fn common_lower_shift(&self, f: &Morphism, g: &Morphism) -> i64 {
        let mut k = 0;
        loop {
            let h = self.shift(f, -k);
            if self.leq(&h, g) {
                return k;
            }
            k += 1;
            assert!(k < 10_000, "cofinality search diverged");
        }
    }
}

impl ZLattice for GarsideLattice<'_> {
    type Point = Morphism;

    fn leq(&self, f: &Morphism, g: &Morphism) -> bool {
        self.quotient(f, g).is_positive()
    }

    fn meet(&self, f: &Morphism, g: &Morphism) -> Morphism {
        let k = self.common_lower_shift(f, g);
        let h = self.shift(f, -k);
        let qf = self.quotient(&h, f);
        let qg = self.quotient(&h, g);
        let gcd = left_gcd(self.germ, &qf, &qg).expect("validated germ");
        multiply(self.germ, &h, &gcd).expect("translation composes")
    }

    fn join(&self, f: &Morphism, g: &Morphism) -> Morphism {
        let k = self.common_lower_shift(f, g);
        let h = self.shift(f, -k);
        let qf = self.quotient(&h, f);
        let qg = self.quotient(&h, g);
        let lcm = left_lcm(self.germ, &qf, &qg).expect("validated germ");
        multiply(self.germ, &h, &lcm).expect("translation composes")
    }

    fn shift(&self, f: &Morphism, k: i64) -> Morphism {
        Morphism { source: f.source, factors: f.factors.clone(), delta_power: f.delta_power + k }
    }

    fn grade_gap(&self, f: &Morphism, g: &Morphism) -> Option<u64> {
        let q = self.quotient(f, g);
        q.is_positive().then(|| q.grade(self.germ) as u64)
    }

    fn cofinality_bound(&self, f: &Morphism, g: &Morphism) -> i64 {
        let mut k = 0;
        loop {
            if self.leq(&self.shift(f, -k), g) && self.leq(g, &self.shift(f, k)) {
                return k;
            }
            k += 1;
            assert!(k < 10_000, "cofinality search diverged");
        }
    }

    fn interval(&self, lo: &Morphism, hi: &Morphism) -> Vec<Morphism> {
        let h = self.quotient(lo, hi);
        if !h.is_positive() {
            return Vec::new();
        }
        left_divisors(self.germ, &h)
            .expect("validated germ")
            .into_iter()
            .map(|d| multiply(self.germ, lo, &d).expect("divisor composes"))
            .collect()
    }

    fn orbit_rep(&self, f: &Morphism) -> (Morphism, i64) {
        (
            Morphism { source: f.source, factors: f.factors.clone(), delta_power: 0 },
            f.delta_power,
        )
    }

    fn label(&self, f: &Morphism) -> String {
        f.label(self.germ)
    }
}

/// Ball of the weak Cayley graph: morphisms from the base object, with an
/// edge when two of them differ by a nontrivial simple.
pub fn weak_cayley_ball(
    germ: &Germ,
    base: usize,
    radius: u32,
    cap: usize,
) -> Result<BallGraph<Morphism>, GarsideError> {
    let lx = GarsideLattice::new(germ, base)?;
    build_lattice_ball(&lx, &lx.identity(), radius, cap).map_err(zaction_err)
}

/// Ball of the quotient of the weak Cayley graph by the ψ-action f ↦ f·Δ.
pub fn delta_quotient_ball(
    germ: &Germ,
    base: usize,
    radius: u32,
    cap: usize,
) -> Result<BallGraph<Morphism>, GarsideError> {
    let lx = GarsideLattice::new(germ, base)?;
    build_quotient_ball(&lx, &lx.identity(), radius, cap).map_err(zaction_err)
}

fn zaction_err(e: ZactionError) -> GarsideError {
    GarsideError::CapExceeded(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::builtins::{braid_germ, free_abelian_germ};
    use crate::garside::divisibility::{enumerate_positives, left_gcd_head_recursive};
    use crate::garside::normal::{normal_form, Letter};
    use crate::iso;
    use crate::zaction::{quotient_distance, ZnLattice};

    fn letters(germ: &Germ, word: &str) -> Vec<Letter> {
        word.split_whitespace()
            .map(|tok| {
                if let Some(name) = tok.strip_suffix("^-1") {
                    Letter::Neg(germ.simple_id(name).unwrap())
                } else {
                    Letter::Pos(germ.simple_id(tok).unwrap())
                }
            })
            .collect()
    }

    fn nf(germ: &Germ, word: &str) -> Morphism {
        normal_form(germ, 0, &letters(germ, word)).unwrap()
    }

    #[test]
    fn braid3_normal_form_examples() {
        let germ = braid_germ(3).unwrap();
        // aba is the Garside element
        let m = nf(&germ, "a b a");
        assert!(m.factors.is_empty());
        assert_eq!(m.delta_power, 1);
        // a·a is already left-weighted
        let m = nf(&germ, "a a");
        assert_eq!(m.delta_power, 0);
        assert_eq!(m.factors.len(), 2);
        assert_eq!(germ.simple_name(m.factors[0]), "a");
        // empty word
        let e = normal_form(&germ, 0, &[]).unwrap();
        assert!(e.is_identity());
        // a⁻¹ = (ba)·Δ⁻¹
        let m = nf(&germ, "a^-1");
        assert_eq!(m.delta_power, -1);
        assert_eq!(m.factors.len(), 1);
        assert_eq!(germ.simple_name(m.factors[0]), "ba");
    }

    /// Projection to the symmetric group is an independent oracle for the
    /// inverse-elimination convention.
    #[test]
    fn normal_form_projects_correctly_to_permutations() {
        use rand::{Rng, SeedableRng};
        let germ = braid_germ(3).unwrap();
        let perm_of_name = |name: &str| -> Vec<usize> {
            let mut p: Vec<usize> = vec![0, 1, 2];
            for c in name.chars() {
                let g: Vec<usize> = match c {
                    'e' => vec![0, 1, 2],
                    'a' => vec![1, 0, 2],
                    'b' => vec![0, 2, 1],
                    _ => unreachable!(),
                };
                // p then g
                p = p.iter().map(|&i| g[i]).collect();
            }
            p
        };
        let eval = |m: &Morphism| -> Vec<usize> {
            let mut p = vec![0, 1, 2];
            for &s in &m.factors {
                let q = perm_of_name(germ.simple_name(s));
                p = p.iter().map(|&i| q[i]).collect();
            }
            if m.delta_power.rem_euclid(2) == 1 {
                let w0 = vec![2, 1, 0];
                p = p.iter().map(|&i| w0[i]).collect();
            }
            p
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let simples: Vec<usize> = (0..germ.simple_count()).collect();
        for _ in 0..300 {
            let mut word = Vec::new();
            let mut perm = vec![0usize, 1, 2];
            for _ in 0..rng.gen_range(0..8) {
                let s = simples[rng.gen_range(0..simples.len())];
                let q = perm_of_name(germ.simple_name(s));
                if rng.gen_bool(0.5) {
                    word.push(Letter::Pos(s));
                    perm = perm.iter().map(|&i| q[i]).collect();
                } else {
                    word.push(Letter::Neg(s));
                    // inverse of q
                    let mut qi = vec![0; 3];
                    for (i, &v) in q.iter().enumerate() {
                        qi[v] = i;
                    }
                    perm = perm.iter().map(|&i| qi[i]).collect();
                }
            }
            let m = normal_form(&germ, 0, &word).unwrap();
            assert_eq!(eval(&m), perm, "projection mismatch for {word:?}");
        }
    }

    #[test]
    fn multiply_and_inverse() {
        let germ = braid_germ(3).unwrap();
        let f = nf(&germ, "a b");
        let e = Morphism::identity(0);
        assert_eq!(multiply(&germ, &f, &e).unwrap(), f);
        // a · ba = Δ
        let g = multiply(&germ, &nf(&germ, "a"), &nf(&germ, "ba")).unwrap();
        assert_eq!(g.delta_power, 1);
        assert!(g.factors.is_empty());
        // f · f⁻¹ = identity
        let fi = inverse(&germ, &f).unwrap();
        assert!(multiply(&germ, &f, &fi).unwrap().is_identity());
        assert!(multiply(&germ, &fi, &f).unwrap().is_identity());
    }

    #[test]
    fn random_inversion_consistency_in_braid4() {
        use rand::{Rng, SeedableRng};
        let germ = braid_germ(4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let mut word = Vec::new();
            let mut grade = 0u64;
            while grade < 8 {
                let s = rng.gen_range(0..germ.simple_count());
                if germ.is_identity(s) {
                    continue;
                }
                grade += germ.length(s);
                word.push(if rng.gen_bool(0.5) { Letter::Pos(s) } else { Letter::Neg(s) });
            }
            let f = normal_form(&germ, 0, &word).unwrap();
            let fi = inverse(&germ, &f).unwrap();
            assert!(multiply(&germ, &f, &fi).unwrap().is_identity());
        }
    }

    #[test]
    fn gcd_lcm_examples() {
        let germ = braid_germ(3).unwrap();
        // gcd(s, Δ) = s for every simple
        let delta = Morphism { source: 0, factors: vec![], delta_power: 1 };
        for s in 0..germ.simple_count() {
            if germ.is_identity(s) {
                continue;
            }
            let m = Morphism::from_simple(&germ, s);
            assert_eq!(left_gcd(&germ, &m, &delta).unwrap(), m);
        }
        // gcd(ab, ba) = e, lcm(a, b) = Δ
        assert!(left_gcd(&germ, &nf(&germ, "a b"), &nf(&germ, "b a")).unwrap().is_identity());
        let lcm = left_lcm(&germ, &nf(&germ, "a"), &nf(&germ, "b")).unwrap();
        assert_eq!(lcm.delta_power, 1);
        assert!(lcm.factors.is_empty());
    }

    #[test]
    fn gcd_lcm_against_exhaustive_oracle() {
        let germ = braid_germ(3).unwrap();
        let positives = enumerate_positives(&germ, 0, 3, 100_000).unwrap();
        for f in &positives {
            for g in &positives {
                let df: std::collections::BTreeSet<_> =
                    left_divisors(&germ, f).unwrap().into_iter().collect();
                let dg: std::collections::BTreeSet<_> =
                    left_divisors(&germ, g).unwrap().into_iter().collect();
                let common: Vec<_> = df.intersection(&dg).cloned().collect();
                let max = common
                    .iter()
                    .find(|m| {
                        common.iter().all(|d| {
                            multiply(&germ, &inverse(&germ, d).unwrap(), m)
                                .unwrap()
                                .is_positive()
                        })
                    })
                    .cloned()
                    .expect("oracle: common divisors have a maximum");
                let got = left_gcd(&germ, f, g).unwrap();
                assert_eq!(got, max, "gcd mismatch for {} {}", f.label(&germ), g.label(&germ));
                assert_eq!(left_gcd_head_recursive(&germ, f, g).unwrap(), max);
            }
        }
    }

    #[test]
    fn lcm_against_exhaustive_oracle() {
        let germ = braid_germ(3).unwrap();
        let positives = enumerate_positives(&germ, 0, 2, 100_000).unwrap();
        // common multiples up to grade 6 (any pair of grade ≤ 2 joins below Δ²)
        let all = enumerate_positives(&germ, 0, 6, 1_000_000).unwrap();
        let leq = |a: &Morphism, b: &Morphism| {
            multiply(&germ, &inverse(&germ, a).unwrap(), b).unwrap().is_positive()
        };
        for f in &positives {
            for g in &positives {
                let mults: Vec<_> =
                    all.iter().filter(|m| leq(f, m) && leq(g, m)).cloned().collect();
                let min = mults
                    .iter()
                    .find(|m| mults.iter().all(|u| leq(m, u)))
                    .cloned()
                    .expect("oracle: common multiples have a minimum");
                assert_eq!(left_lcm(&germ, f, g).unwrap(), min);
            }
        }
    }

    #[test]
    fn lx_lattice_operations() {
        let germ = braid_germ(3).unwrap();
        let lx = GarsideLattice::new(&germ, 0).unwrap();
        let f = nf(&germ, "a b");
        // meet(f, ψf) = f
        let psi_f = lx.shift(&f, 1);
        assert_eq!(lx.meet(&f, &psi_f), f);
        assert!(lx.leq(&f, &psi_f));
        // meet(a, b) = e, join(a, b) = Δ
        let (a, b) = (nf(&germ, "a"), nf(&germ, "b"));
        assert!(lx.meet(&a, &b).is_identity());
        let j = lx.join(&a, &b);
        assert_eq!(j.delta_power, 1);
        assert!(j.factors.is_empty());
        // meets of negative-power elements work through translation
        let low = lx.shift(&nf(&germ, "b a"), -2);
        let m = lx.meet(&low, &a);
        assert!(lx.leq(&m, &low) && lx.leq(&m, &a));
    }

    #[test]
    fn lx_cofinality_property() {
        let germ = braid_germ(4).unwrap();
        let lx = GarsideLattice::new(&germ, 0).unwrap();
        let pts = enumerate_positives(&germ, 0, 4, 100_000).unwrap();
        for f in pts.iter().step_by(7) {
            for g in pts.iter().step_by(11) {
                let k = lx.cofinality_bound(f, g);
                assert!(lx.leq(&lx.shift(f, -k), g));
                assert!(lx.leq(g, &lx.shift(f, k)));
                if k > 0 {
                    // minimality of the search result
                    let km = k - 1;
                    assert!(
                        !(lx.leq(&lx.shift(f, -km), g) && lx.leq(g, &lx.shift(f, km))),
                        "search skipped a smaller k"
                    );
                }
                // canonical lengths bound the shift, not the grade spread
                let bound = (f.factors.len() + g.factors.len()) as i64 + 2;
                assert!(k <= bound, "k = {k} exceeds {bound}");
            }
        }
    }

    #[test]
    fn braid3_cayley_ball_degrees() {
        let germ = braid_germ(3).unwrap();
        let ball = weak_cayley_ball(&germ, 0, 1, 10_000).unwrap();
        // 5 nontrivial simples up, 5 down
        assert_eq!(ball.graph.neighbors(0).len(), 10);

        let quo = delta_quotient_ball(&germ, 0, 1, 10_000).unwrap();
        assert_eq!(quo.graph.neighbors(0).len(), 4);
    }

    #[test]
    fn free_abelian_quotient_matches_zn() {
        let germ = free_abelian_germ(3).unwrap();
        let quo = delta_quotient_ball(&germ, 0, 2, 100_000).unwrap();
        let zn = ZnLattice::new(3);
        let zball =
            crate::zaction::build_quotient_ball(&zn, &vec![0, 0, 0], 2, 100_000).unwrap();
        assert_eq!(quo.graph.order(), zball.graph.order());
        let map = iso::graphs_isomorphic(&quo.graph, &zball.graph, &[(0, 0)])
            .expect("quotients must be isomorphic");
        assert!(iso::verify_graph_iso(&quo.graph, &zball.graph, &map));
    }

    #[test]
    fn quotient_distance_formula_agrees_on_lx() {
        let germ = braid_germ(3).unwrap();
        let lx = GarsideLattice::new(&germ, 0).unwrap();
        let ball = delta_quotient_ball(&germ, 0, 2, 100_000).unwrap();
        for u in 0..ball.graph.order() {
            for v in 0..ball.graph.order() {
                if ball.graph.certified(u, v) {
                    assert_eq!(
                        quotient_distance(&lx, &ball.points[u], &ball.points[v]),
                        ball.graph.dist(u, v)
                    );
                }
            }
        }
    }
}
