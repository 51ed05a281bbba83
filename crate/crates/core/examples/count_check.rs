use wmlat::zaction::{self, ZnLattice};
fn main() {
    let l = ZnLattice::new(3);
    let ball = zaction::build_quotient_ball(&l, &vec![0,0,0], 4, 500_000).unwrap();
    let g = &ball.graph;
    let mut certified = 0;
    for u in 0..g.order() { for v in u..g.order() { if g.certified(u,v) { certified += 1; } } }
    println!("z3 quotient r4: vertices={} certified_pairs={}", g.order(), certified);

    let b3 = wmlat::garside::braid_germ(3).unwrap();
    let lx = wmlat::garside::GarsideLattice::new(&b3, 0).unwrap();
    let ball = zaction::build_lattice_ball(&lx, &wmlat::garside::Morphism::identity(0), 3, 500_000).unwrap();
    let g = &ball.graph;
    let mut certified = 0;
    for u in 0..g.order() { for v in u..g.order() { if g.certified(u,v) { certified += 1; } } }
    println!("b3 cayley r3: vertices={} certified_pairs={}", g.order(), certified);

    let b4 = wmlat::garside::braid_germ(4).unwrap();
    let lx4 = wmlat::garside::GarsideLattice::new(&b4, 0).unwrap();
    let ball = zaction::build_lattice_ball(&lx4, &wmlat::garside::Morphism::identity(0), 2, 500_000).unwrap();
    let g = &ball.graph;
    let mut certified = 0;
    for u in 0..g.order() { for v in u..g.order() { if g.certified(u,v) { certified += 1; } } }
    println!("b4 cayley r2: vertices={} certified_pairs={}", g.order(), certified);
}
