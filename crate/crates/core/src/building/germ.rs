//! The subspace germ of a small building: objects ℤ/nℤ, simples at each
//! object the subspaces of F_qⁿ (as intermediate lattices tL ⊆ M ⊆ L), Δ the
//! homothety step L → tL.
//!
//! A finite one-object-per-type table needs a coherent identification of each
//! intermediate lattice with the type representative; for rank 2 the
//! orthogonal-complement pairing of lines provides one, and the resulting
//! germ is fully validated and generates the extended tree. For rank ≥ 3 such
//! a section is equivalent to a vertex-transitive type-rotating group of the
//! building (triangle-presentation data), which is out of scope here; the
//! constructor reports this rather than emitting an incoherent table.

use crate::garside::{GarsideError, Germ, GermFile, SimpleDef};

use super::olattice::BuildingError;
use super::poly::Fq;

fn encode(v: &[u8], q: u8) -> usize {
    let mut code = 0usize;
    for &c in v.iter().rev() {
        code = code * q as usize + c as usize;
    }
    code
}

/// Nonzero member codes of the line spanned by `v` in F_q².
fn line_members(v: [u8; 2], field: Fq) -> Vec<usize> {
    let mut out = Vec::new();
    let mut w = [0u8; 2];
    for _ in 0..field.q - 1 {
        w = [field.add(w[0], v[0]), field.add(w[1], v[1])];
        out.push(encode(&w, field.q));
    }
    out.sort_unstable();
    out
}

fn simple_name(obj: usize, members: &[usize]) -> String {
    if members.is_empty() {
        format!("u{obj}.z")
    } else {
        let body: Vec<String> = members.iter().map(|c| c.to_string()).collect();
        format!("u{obj}.{}", body.join("_"))
    }
}

/// Builds the subspace germ. Supported ranks: 1 and 2 (see module docs).
pub fn subspace_germ(n: usize, q: u8) -> Result<Germ, BuildingError> {
    let field = Fq::new(q).ok_or(BuildingError::BadField(q))?;
    let built = match n {
        1 => subspace_germ_rank1(q),
        2 => subspace_germ_rank2(field),
        _ => {
            return Err(BuildingError::Dimension(format!(
                "subspace germ needs a coherent transport section; rank {n} requires \
                 vertex-transitive group data and is not built in"
            )))
        }
    };
    built.map_err(|e| BuildingError::Parse(e.to_string()))
}

fn subspace_germ_rank1(q: u8) -> Result<Germ, GarsideError> {
    let _ = q;
    // subspaces of F_q¹ are 0 and the full space: the free abelian germ on one
    // generator under the subspace naming convention
    let file = GermFile {
        objects: vec!["0".to_string()],
        simples: vec![
            SimpleDef { name: "u0.full".into(), source: "0".into(), target: "0".into(), length: 0 },
            SimpleDef { name: "u0.z".into(), source: "0".into(), target: "0".into(), length: 1 },
        ],
        product: vec![],
        delta: [("0".to_string(), "u0.z".to_string())].into(),
        phi: None,
    };
    Germ::from_file(file)
}

fn subspace_germ_rank2(field: Fq) -> Result<Germ, GarsideError> {
    let q = field.q;
    // lines of F_q² and the orthogonal pairing ⟨(a,b)⟩ ↦ ⟨(-b,a)⟩
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<[u8; 2]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            if (a, b) == (0, 0) {
                continue;
            }
            let members = line_members([a, b], field);
            if !lines.contains(&members) {
                lines.push(members);
                reps.push([a, b]);
            }
        }
    }
    let perp: Vec<usize> = reps
        .iter()
        .map(|&[a, b]| {
            let target = line_members([field.neg(b), a], field);
            lines.iter().position(|m| m == &target).unwrap()
        })
        .collect();

    let full_name = |obj: usize| format!("u{obj}.full");
    let mut simples = Vec::new();
    for obj in 0..2 {
        simples.push(SimpleDef {
            name: full_name(obj),
            source: obj.to_string(),
            target: obj.to_string(),
            length: 0,
        });
        simples.push(SimpleDef {
            name: simple_name(obj, &[]),
            source: obj.to_string(),
            target: obj.to_string(),
            length: 2,
        });
        for members in &lines {
            simples.push(SimpleDef {
                name: simple_name(obj, members),
                source: obj.to_string(),
                target: (1 - obj).to_string(),
                length: 1,
            });
        }
    }
    // the only nontrivial products are line · (its perpendicular) = Δ
    let mut product = Vec::new();
    for obj in 0..2 {
        for (li, members) in lines.iter().enumerate() {
            product.push((
                simple_name(obj, members),
                simple_name(1 - obj, &lines[perp[li]]),
                simple_name(obj, &[]),
            ));
        }
    }
    let file = GermFile {
        objects: vec!["0".to_string(), "1".to_string()],
        simples,
        product,
        delta: (0..2).map(|i| (i.to_string(), simple_name(i, &[]))).collect(),
        phi: None,
    };
    Germ::from_file(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::ball::building_ball;
    use crate::garside::delta_quotient_ball;
    use crate::iso;

    #[test]
    fn rank1_matches_free_abelian() {
        let germ = subspace_germ(1, 3).unwrap();
        let report = germ.check(4);
        assert!(report.all_pass(), "{:?}", report.first_failure());
        assert_eq!(germ.simple_count(), 2);
    }

    #[test]
    fn rank2_passes_all_axioms() {
        for q in [2u8, 3] {
            let germ = subspace_germ(2, q).unwrap();
            let report = germ.check(4);
            assert!(report.all_pass(), "q = {q}: {:?}", report.first_failure());
            // q+1 lines plus identity and Δ per object
            assert_eq!(germ.simple_count() as u8, 2 * (q + 3));
        }
    }

    #[test]
    fn rank2_divisor_poset_is_the_subspace_lattice() {
        let germ = subspace_germ(2, 2).unwrap();
        let poset = germ.divisor_poset_left(0);
        let report = poset.is_lattice();
        assert!(report.is_lattice);
        // height-2 diamond with q+1 = 3 middle elements
        assert_eq!(poset.len(), 5);
    }

    #[test]
    fn rank2_quotient_is_the_tree() {
        let germ = subspace_germ(2, 2).unwrap();
        let quo = delta_quotient_ball(&germ, 0, 3, 100_000).unwrap();
        let tree = building_ball(2, 2, 3, 100_000).unwrap();
        assert_eq!(quo.graph.order(), tree.graph.order());
        let map = iso::graphs_isomorphic(&quo.graph, &tree.graph, &[(0, 0)])
            .expect("germ quotient must match the building ball");
        assert!(iso::verify_graph_iso(&quo.graph, &tree.graph, &map));
    }

    #[test]
    fn rank3_reports_missing_section() {
        assert!(subspace_germ(3, 2).is_err());
    }
}
