//! Seeded random instance generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acs::{nearest_neighbor_path, two_opt};
use crate::geometry::{Circle, Point};
use crate::instance::{Instance, InstanceError, ProblemKind, TargetCircle, TddpParams};
use crate::routing::RoutingGraph;

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateSpec {
    pub name: String,
    pub n: usize,
    /// Explicit radius; otherwise `overlap_ratio * extent`.
    pub radius: Option<f64>,
    pub overlap_ratio: Option<f64>,
    pub extent: f64,
    pub prize_range: (f64, f64),
    pub kind: ProblemKind,
    pub budget_level: f64,
    pub tddp: TddpParams,
    pub seed: u64,
}

impl Default for GenerateSpec {
    fn default() -> Self {
        GenerateSpec {
            name: "generated".to_string(),
            n: 20,
            radius: None,
            overlap_ratio: Some(0.1),
            extent: 100.0,
            prize_range: (1.0, 12.0),
            kind: ProblemKind::Ceop,
            budget_level: 0.9,
            tddp: TddpParams::default(),
            seed: 0,
        }
    }
}

/// Length of a closed nearest-neighbor + 2-opt tour from `depot` through `points`.
pub fn reference_tour_length(depot: Point, points: &[Point]) -> f64 {
    let nodes: Vec<(Point, usize, f64)> = points.iter().enumerate().map(|(i, &p)| (p, i, 0.0)).collect();
    let g = RoutingGraph::new(depot, depot, &nodes, vec![1.0; points.len()], f64::INFINITY, 1.0);
    let mut path = nearest_neighbor_path(&g);
    two_opt(&g, &mut path, 1e-9);
    g.path_cost(&path.nodes)
}

pub fn generate(spec: &GenerateSpec) -> Result<Instance, InstanceError> {
    if spec.n == 0 {
        return Err(InstanceError::NoCircles);
    }
    if !(spec.extent > 0.0 && spec.extent.is_finite()) {
        return Err(InstanceError::DegenerateExtent);
    }
    let radius = match (spec.radius, spec.overlap_ratio) {
        (Some(r), _) => r,
        (None, Some(phi)) => phi * spec.extent,
        (None, None) => return Err(InstanceError::MissingField("RADIUS")),
    };
    let (lo, hi) = spec.prize_range;
    if !(lo >= 0.0 && hi >= lo) {
        return Err(InstanceError::NegativePrize(0));
    }
    let integral = lo.fract() == 0.0 && hi.fract() == 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let depot = Point::new(spec.extent / 2.0, spec.extent / 2.0);

    let mut circles: Vec<TargetCircle> = Vec::with_capacity(spec.n);
    while circles.len() < spec.n {
        let c = Point::new(rng.gen_range(0.0..=spec.extent), rng.gen_range(0.0..=spec.extent));
        if circles.iter().any(|o| o.circle.center.dist(c) < 1e-6) {
            continue;
        }
        let prize = if integral { rng.gen_range(lo as i64..=hi as i64) as f64 } else { rng.gen_range(lo..=hi) };
        let lambda = match spec.kind {
            ProblemKind::Tddp => Some(rng.gen_range(spec.tddp.lambda_min..=spec.tddp.lambda_max)),
            ProblemKind::Ceop => None,
        };
        circles.push(TargetCircle { id: circles.len() as u32 + 1, circle: Circle::new(c, radius)?, prize, lambda });
    }

    let centers: Vec<Point> = circles.iter().map(|c| c.circle.center).collect();
    let best_known = (reference_tour_length(depot, &centers) * 1e6).round() / 1e6;
    let mut inst = Instance {
        name: spec.name.clone(),
        kind: spec.kind,
        depot_start: depot,
        depot_end: depot,
        circles,
        best_known: Some(best_known),
        budget: 0.0,
        tddp: (spec.kind == ProblemKind::Tddp).then_some(spec.tddp),
    };
    if spec.kind == ProblemKind::Tddp {
        inst = inst.normalize_prizes(0.1, 0.9);
    }
    inst.budget = inst.budget_for_level(spec.budget_level)?;
    inst.validate()?;
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let spec = GenerateSpec { n: 10, radius: Some(1.0), seed: 7, ..Default::default() };
        assert_eq!(generate(&spec).unwrap().to_text(), generate(&spec).unwrap().to_text());
    }

    #[test]
    fn overlap_ratio_sets_radius() {
        let spec = GenerateSpec { overlap_ratio: Some(0.02), ..Default::default() };
        assert_eq!(generate(&spec).unwrap().radius(), 2.0);
    }

    #[test]
    fn prizes_in_range() {
        let spec = GenerateSpec { n: 200, ..Default::default() };
        let inst = generate(&spec).unwrap();
        assert!(inst.circles.iter().all(|c| (1.0..=12.0).contains(&c.prize) && c.prize.fract() == 0.0));
    }

    #[test]
    fn tddp_instance() {
        let spec = GenerateSpec { kind: ProblemKind::Tddp, budget_level: 1.2, ..Default::default() };
        let inst = generate(&spec).unwrap();
        assert!(inst.circles.iter().all(|c| (0.1..=0.9).contains(&c.prize) && c.lambda.is_some()));
        assert!((inst.budget - inst.best_known.unwrap() / 60.0 * 1.2).abs() < 1e-12);
    }
}
