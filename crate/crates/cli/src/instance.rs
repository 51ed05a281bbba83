//! Instance strings and the graphs/windows they denote.

use wmlat::building::{self, NormLattice};
use wmlat::dict::LatticeWindow;
use wmlat::garside::{self, Germ};
use wmlat::zaction::{self, BallGraph, ZnLattice};

use crate::run::CliError;

pub enum Instance {
    Zn(usize),
    Germ(Germ),
    Building(usize, u8),
}

pub fn parse_instance(spec: &str) -> Result<Instance, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["zn", n] => {
            let n: usize = n.parse().map_err(|_| CliError::config(spec))?;
            if n == 0 || n > 8 {
                return Err(CliError::config("zn rank must be between 1 and 8"));
            }
            Ok(Instance::Zn(n))
        }
        ["braid", _] | ["free-abelian", _] => {
            let germ = garside::builtin_germ(spec).map_err(CliError::from)?;
            Ok(Instance::Germ(germ))
        }
        ["building", n, q] => {
            let n: usize = n.parse().map_err(|_| CliError::config(spec))?;
            let q: u8 = q.parse().map_err(|_| CliError::config(spec))?;
            Ok(Instance::Building(n, q))
        }
        _ => Err(CliError::config(format!("unknown instance {spec:?}"))),
    }
}

pub struct NamedBall {
    pub graph: wmlat::wmcheck::FiniteGraph,
    pub center: usize,
}

impl Instance {
    pub fn ball(&self, quotient: bool, radius: u32, cap: usize) -> Result<NamedBall, CliError> {
        match self {
            Instance::Zn(n) => {
                let l = ZnLattice::new(*n);
                let center = vec![0i64; *n];
                let ball = if quotient {
                    zaction::build_quotient_ball(&l, &center, radius, cap)
                } else {
                    zaction::build_lattice_ball(&l, &center, radius, cap)
                }
                .map_err(CliError::from)?;
                Ok(named(ball))
            }
            Instance::Germ(germ) => {
                let ball = if quotient {
                    garside::delta_quotient_ball(germ, 0, radius, cap)
                } else {
                    garside::weak_cayley_ball(germ, 0, radius, cap)
                }
                .map_err(CliError::from)?;
                Ok(named(ball))
            }
            Instance::Building(n, q) => {
                if quotient {
                    let ball =
                        building::norm_quotient_ball(*n, *q, radius, cap).map_err(CliError::from)?;
                    Ok(named(ball))
                } else {
                    let norm = NormLattice::new(*n, *q).map_err(CliError::from)?;
                    let ball = zaction::build_lattice_ball(&norm, &norm.base(), radius, cap)
                        .map_err(CliError::from)?;
                    Ok(named(ball))
                }
            }
        }
    }

    pub fn window(&self, radius: u32) -> Result<LatticeWindow, CliError> {
        match self {
            Instance::Zn(n) => {
                let l = ZnLattice::new(*n);
                Ok(LatticeWindow::from_zlattice(&l, &vec![0i64; *n], radius))
            }
            Instance::Germ(germ) => {
                wmlat::dict::germ_to_special(germ, 0, radius).map_err(CliError::from)
            }
            Instance::Building(n, q) => {
                let norm = NormLattice::new(*n, *q).map_err(CliError::from)?;
                Ok(LatticeWindow::from_zlattice(&norm, &norm.base(), radius))
            }
        }
    }
}

fn named<P: Clone + Ord>(ball: BallGraph<P>) -> NamedBall {
    let center = ball.center();
    NamedBall { graph: ball.graph, center }
}

pub fn load_germ(
    builtin: &Option<String>,
    file: &Option<std::path::PathBuf>,
) -> Result<Germ, CliError> {
    match (builtin, file) {
        (Some(spec), None) => garside::builtin_germ(spec).map_err(CliError::from),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
            Germ::from_json(&text).map_err(CliError::from)
        }
        _ => Err(CliError::config("exactly one of --germ and --file is required")),
    }
}
