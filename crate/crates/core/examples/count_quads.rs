use wmlat::garside::{self, Morphism};
use wmlat::zaction::{self, ZLattice};

fn scan_all_basepoints(name: &str, germ: &garside::Germ, radius: u32) {
    let lx = garside::GarsideLattice::new(germ, 0).unwrap();
    let ball = zaction::build_lattice_ball(&lx, &Morphism::identity(0), radius, 500_000).unwrap();
    let g = &ball.graph;
    let n = g.order();
    let mut total = 0usize;
    for b in 0..n {
        let x = &ball.points[b];
        let dist: Vec<u32> = ball.points.iter().map(|p| zaction::lattice_distance(&lx, x, p).0).collect();
        for t in 0..n {
            if dist[t] != 3 { continue; }
            let nbrs: Vec<usize> = g.neighbors(t).iter().copied().filter(|&y| dist[y] == 2).collect();
            for (i, &y) in nbrs.iter().enumerate() {
                for &z in &nbrs[i+1..] {
                    if zaction::lattice_distance(&lx, &ball.points[y], &ball.points[z]).0 == 2 {
                        total += 1;
                    }
                }
            }
        }
        if b % 100 == 0 { eprint!("."); }
    }
    eprintln!();
    println!("{name}: vertices={n} quad instances over all basepoints = {total}");
}

fn main() {
    let fa3 = garside::free_abelian_germ(3).unwrap();
    let lx = garside::GarsideLattice::new(&fa3, 0).unwrap();
    let ball = zaction::build_lattice_ball(&lx, &Morphism::identity(0), 3, 500_000).unwrap();
    let g = &ball.graph;
    let x = &ball.points[0];
    let dist: Vec<u32> = ball.points.iter().map(|p| zaction::lattice_distance(&lx, x, p).0).collect();
    let mut count = 0;
    for t in 0..g.order() {
        if dist[t] != 3 { continue; }
        let nbrs: Vec<usize> = g.neighbors(t).iter().copied().filter(|&y| dist[y] == 2).collect();
        for (i, &y) in nbrs.iter().enumerate() {
            for &z in &nbrs[i+1..] {
                if zaction::lattice_distance(&lx, &ball.points[y], &ball.points[z]).0 == 2 { count += 1; }
            }
        }
    }
    println!("free-abelian:3 germ lattice r3: vertices={} quad instances from center = {count}", g.order());

    scan_all_basepoints("B4 r2 (all basepoints)", &garside::braid_germ(4).unwrap(), 2);
}
