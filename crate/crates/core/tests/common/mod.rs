#![allow(dead_code)]

use ceop_core::geometry::{Circle, Point};
use ceop_core::instance::{Instance, ProblemKind, TargetCircle, TddpParams};
use rand::Rng;

pub fn target(id: u32, x: f64, y: f64, r: f64, prize: f64) -> TargetCircle {
    TargetCircle { id, circle: Circle::new(Point::new(x, y), r).unwrap(), prize, lambda: None }
}

pub fn ceop_instance(name: &str, depot: Point, circles: Vec<TargetCircle>, budget: f64) -> Instance {
    Instance {
        name: name.to_string(),
        kind: ProblemKind::Ceop,
        depot_start: depot,
        depot_end: depot,
        circles,
        best_known: None,
        budget,
        tddp: None,
    }
}

/// `n` equal circles of radius `r` with centers uniform in `[0, extent]^2`
/// and integer prizes in 1..=10.
pub fn random_instance(rng: &mut impl Rng, n: usize, r: f64, extent: f64, budget: f64) -> Instance {
    let circles = (0..n)
        .map(|i| {
            target(i as u32 + 1, rng.gen_range(0.0..extent), rng.gen_range(0.0..extent), r, rng.gen_range(1..=10) as f64)
        })
        .collect();
    ceop_instance("random", Point::new(extent / 2.0, extent / 2.0), circles, budget)
}

pub fn tddp_instance(rng: &mut impl Rng, n: usize, r: f64, extent: f64, budget: f64) -> Instance {
    let mut inst = random_instance(rng, n, r, extent, budget);
    inst.kind = ProblemKind::Tddp;
    let params = TddpParams::default();
    for c in &mut inst.circles {
        c.lambda = Some(rng.gen_range(params.lambda_min..=params.lambda_max));
    }
    inst.tddp = Some(params);
    inst.normalize_prizes(0.1, 0.9)
}
