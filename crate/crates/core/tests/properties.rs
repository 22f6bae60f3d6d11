mod common;

use std::collections::HashSet;

use ceop_core::acs::{local_update, run_colony, solve_sop, transition_probabilities, two_opt, AcsParams};
use ceop_core::arc_search::{best_waypoint_in_zone, polyline_cost, refine_ceop};
use ceop_core::geometry::{
    circle_intersections, closest_point_on_circle_to_segment, project_point_to_segment, Circle, Point, EPS,
};
use ceop_core::instance::{Instance, Solution, Visit};
use ceop_core::oracle::{brute_force_sop, brute_force_sop_unpruned, OracleProblem, VertexArcRegion};
use ceop_core::pso::{update_position, update_velocity, zone_vmax, PsoParams, CONTAINMENT_TOL};
use ceop_core::routing::{path_to_solution, Path, RoutingGraph};
use ceop_core::rszd::{rszd, RszdParams, SzLayout};
use common::{random_instance, target};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn point() -> impl Strategy<Value = Point> {
    (-50.0..50.0f64, -50.0..50.0f64).prop_map(|(x, y)| Point::new(x, y))
}

fn circle() -> impl Strategy<Value = Circle> {
    (point(), 0.5..20.0f64).prop_map(|(c, r)| Circle::new(c, r).unwrap())
}

fn instance(max_n: usize) -> impl Strategy<Value = Instance> {
    (any::<u64>(), 1..=max_n, 2.0..15.0f64).prop_map(|(seed, n, r)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_instance(&mut rng, n, r, 100.0, 150.0)
    })
}

fn layout(inst: &Instance, seed: u64) -> SzLayout {
    rszd(inst, &RszdParams { n_iter: 3, ..RszdParams::default() }, seed)
}

fn quick_acs() -> AcsParams {
    AcsParams { n_ants: 10, n_iter: 30, max_no_impr: 10, ..AcsParams::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn intersections_lie_on_both_circles(a in circle(), b in circle()) {
        for p in circle_intersections(&a, &b, EPS).unwrap() {
            prop_assert!((p.dist(a.center) - a.radius).abs() < 1e-7);
            prop_assert!((p.dist(b.center) - b.radius).abs() < 1e-7);
        }
    }

    #[test]
    fn projection_is_nearest_on_segment(p in point(), a in point(), b in point()) {
        let q = project_point_to_segment(p, a, b);
        let on_segment = (a.dist(q) + q.dist(b) - a.dist(b)).abs() < 1e-8;
        prop_assert!(on_segment);
        for k in 0..=20 {
            let s = a.lerp(b, k as f64 / 20.0);
            prop_assert!(p.dist(q) <= p.dist(s) + 1e-9);
        }
    }

    #[test]
    fn closest_boundary_point_beats_sweep(c in circle(), a in point(), b in point()) {
        let seg = |x: Point| ceop_core::geometry::point_segment_distance(x, a, b);
        if let Ok(q) = closest_point_on_circle_to_segment(&c, a, b) {
            prop_assert!((q.dist(c.center) - c.radius).abs() < 1e-9);
            if seg(c.center) >= c.radius {
                for k in 0..360 {
                    let s = c.point_at(k as f64 * std::f64::consts::TAU / 360.0);
                    prop_assert!(seg(q) <= seg(s) + 1e-8);
                }
            }
        }
    }

    #[test]
    fn instance_text_round_trip(inst in instance(30)) {
        let back = Instance::parse(&inst.to_text()).unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn solution_json_round_trip(xs in prop::collection::vec((point(), 0usize..100), 0..10), prize in 0.0..1e3f64, truncated in any::<Option<bool>>()) {
        let sol = Solution {
            instance_name: "x".into(),
            algorithm: "rszd-acs".into(),
            seed: 3,
            prize,
            cost: prize / 3.0,
            budget: 1.0 / 3.0,
            runtime_s: 0.1,
            sequence: xs.iter().map(|(p, z)| Visit { zone_id: *z, circle_ids: vec![*z as u32], x: p.x, y: p.y }).collect(),
            truncated,
        };
        prop_assert_eq!(Solution::from_json(&sol.to_json()).unwrap(), sol);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rszd_partitions_and_zones_are_sound(inst in instance(40), seed in any::<u64>(), cap in 1usize..6) {
        let params = RszdParams { n_iter: 3, max_degree: cap, ..RszdParams::default() };
        let lay = rszd(&inst, &params, seed);
        let mut seen: Vec<u32> = lay.zones.iter().flat_map(|z| z.member_ids()).collect();
        seen.sort_unstable();
        let all: Vec<u32> = inst.circles.iter().map(|c| c.id).collect();
        prop_assert_eq!(seen, all);
        for z in &lay.zones {
            prop_assert!(z.degree() <= cap);
            prop_assert!(z.violation(z.center) <= 1e-7);
            for v in &z.vertices {
                prop_assert!(z.violation(*v) <= 1e-7);
            }
            let prize: f64 = z.members.iter().map(|m| m.prize).sum();
            prop_assert!((z.prize - prize).abs() < 1e-9);
        }
        prop_assert_eq!(&rszd(&inst, &params, seed), &lay);
        prop_assert_eq!(SzLayout::from_json(&lay.to_json(), &inst).unwrap(), lay);
    }

    #[test]
    fn rszd_never_worse_than_first_pass(inst in instance(40), seed in any::<u64>()) {
        let single = rszd(&inst, &RszdParams { n_iter: 1, ..RszdParams::default() }, seed);
        let many = rszd(&inst, &RszdParams { n_iter: 6, ..RszdParams::default() }, seed);
        prop_assert!(many.zones.len() <= single.zones.len());
    }

    #[test]
    fn colony_paths_are_consistent(inst in instance(25), seed in any::<u64>(), budget in 20.0..300.0f64) {
        let lay = layout(&inst, seed);
        let g = RoutingGraph::sop(&lay, inst.depot_start, inst.depot_end, budget);
        let out = run_colony(&g, &quick_acs(), seed, None);
        let best = &out.best;
        prop_assert!(best.cost <= budget + 1e-9);
        prop_assert_eq!(best.nodes[0], 0);
        prop_assert_eq!(*best.nodes.last().unwrap(), g.end());
        let zones: Vec<usize> = best.interior().iter().map(|&v| g.node_zone[v]).collect();
        let distinct: HashSet<usize> = zones.iter().copied().collect();
        prop_assert_eq!(distinct.len(), zones.len());
        prop_assert!((best.prize - g.path_prize(&best.nodes)).abs() < 1e-9);
        prop_assert!((best.cost - g.path_cost(&best.nodes)).abs() < 1e-9);
        // Global best history never gets worse.
        for w in out.history.windows(2) {
            prop_assert!(w[1].0 >= w[0].0 - 1e-9);
        }
        prop_assert!(out.tau0 > 0.0);
        let sol = path_to_solution(&g, &lay, best, "p", "rszd-acs", seed);
        let replay = polyline_cost(inst.depot_start, &sol.polyline(inst.depot_start, inst.depot_end)[1..=sol.sequence.len()], inst.depot_end);
        prop_assert!((replay - best.cost).abs() < 1e-9);
    }

    #[test]
    fn two_opt_never_lengthens(inst in instance(25), seed in any::<u64>()) {
        let lay = layout(&inst, seed);
        let g = RoutingGraph::sop(&lay, inst.depot_start, inst.depot_end, f64::INFINITY);
        let mut nodes: Vec<usize> = lay.zones.iter().enumerate().map(|(z, _)| g.zone_nodes[z][0]).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(nodes.as_mut_slice(), &mut rng);
        nodes.insert(0, 0);
        nodes.push(g.end());
        let mut path = Path::evaluate(&g, nodes);
        let (before, prize) = (path.cost, path.prize);
        two_opt(&g, &mut path, 1e-9);
        prop_assert!(path.cost <= before + 1e-9);
        prop_assert_eq!(path.prize, prize);
        prop_assert!((path.cost - g.path_cost(&path.nodes)).abs() < 1e-9);
    }

    #[test]
    fn pheromone_and_probabilities(tau in 1e-6..10.0f64, rho in 0.01..0.99f64, tau0 in 1e-6..10.0f64,
                                   scores in prop::collection::vec(1e-9..1e3f64, 1..20)) {
        let t = local_update(tau, rho, tau0);
        prop_assert!(t > 0.0);
        prop_assert!(t >= tau.min(tau0) - 1e-12 && t <= tau.max(tau0) + 1e-12);
        let p = transition_probabilities(&scores);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(p.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn oracle_pruning_is_exact(seed in any::<u64>(), n in 1usize..7, budget in 20.0..200.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng, n, 5.0, 60.0, budget);
        let lay = layout(&inst, seed);
        let g = RoutingGraph::sop_for_instance(&lay, &inst);
        let p = OracleProblem::from_graph(&g);
        let fast = brute_force_sop(&p).unwrap();
        let slow = brute_force_sop_unpruned(&p).unwrap();
        prop_assert!((fast.prize - slow.prize).abs() < 1e-9);
        prop_assert!(fast.cost <= budget + 1e-9);
        let heuristic = solve_sop(&g, &quick_acs(), seed);
        prop_assert!(heuristic.prize <= fast.prize + 1e-9);
    }

    #[test]
    fn best_waypoint_is_inside_and_near_sampled(inst in instance(12), seed in any::<u64>(), prev in point(), next in point()) {
        let lay = layout(&inst, seed);
        for z in &lay.zones {
            let w = best_waypoint_in_zone(prev, next, z, EPS);
            prop_assert!(z.violation(w) <= 10.0 * EPS);
            let (_, sampled) = ceop_core::oracle::sampled_best_waypoint(prev, next, z, 256, 16);
            prop_assert!(prev.dist(w) + w.dist(next) <= sampled + 1e-6);
            let region = VertexArcRegion::new(z);
            prop_assert!(region.contains(z.center) || z.vertices.len() < 2);
        }
    }

    #[test]
    fn refinement_keeps_prize_and_budget(inst in instance(20), seed in any::<u64>(), budget in 30.0..250.0f64) {
        let lay = layout(&inst, seed);
        let g = RoutingGraph::sop(&lay, inst.depot_start, inst.depot_end, budget);
        let path = solve_sop(&g, &quick_acs(), seed);
        let sol = path_to_solution(&g, &lay, &path, "p", "rszd-acs-arc", seed);
        let refined = refine_ceop(&sol, &lay, inst.depot_start, inst.depot_end, 5);
        prop_assert!(refined.prize >= sol.prize - 1e-9);
        prop_assert!(refined.cost <= budget + 1e-9);
        if refined.sequence.len() == sol.sequence.len() {
            prop_assert!(refined.cost <= sol.cost + 1e-9);
        }
        for v in &refined.sequence {
            let z = lay.zones.iter().find(|z| z.id == v.zone_id).unwrap();
            prop_assert!(z.violation(v.point()) <= 10.0 * EPS);
        }
        let pts: Vec<Point> = refined.sequence.iter().map(Visit::point).collect();
        prop_assert!((polyline_cost(inst.depot_start, &pts, inst.depot_end) - refined.cost).abs() < 1e-9);
    }

    #[test]
    fn swarm_moves_stay_in_zone(inst in instance(20), seed in any::<u64>(),
                                vx in -30.0..30.0f64, vy in -30.0..30.0f64, omega in 0.4..0.9f64, r1 in 0.0..1.0f64, r2 in 0.0..1.0f64) {
        let lay = layout(&inst, seed);
        let params = PsoParams::default();
        for z in &lay.zones {
            let vmax = zone_vmax(z);
            let x = z.center;
            let ib = z.representative_points()[0];
            let v = update_velocity(Point::new(vx, vy), x, ib, z.center, omega, r1, r2, &params, vmax);
            prop_assert!(v.x.abs() <= vmax + 1e-12 && v.y.abs() <= vmax + 1e-12);
            let moved = update_position(x, Point::new(vx, vy), z, EPS).unwrap();
            prop_assert!(z.violation(moved) <= CONTAINMENT_TOL);
        }
    }
}

/// Two circles above and below the depot-to-depot line and a far third one.
/// Through the centers only the upper circle fits the budget; pulling its
/// stop toward the line frees enough length to add the lower one.
#[test]
fn refinement_shortens_toy_route() {
    let inst = common::ceop_instance(
        "toy",
        Point::new(0.0, 0.0),
        vec![target(1, 5.0, 3.0, 2.0, 2.0), target(2, 5.0, -1.5, 1.0, 1.0), target(3, 40.0, 40.0, 1.0, 5.0)],
        13.0,
    );
    let mut inst = inst;
    inst.depot_end = Point::new(10.0, 0.0);
    let lay = layout(&inst, 0);
    let g = RoutingGraph::sop_for_instance(&lay, &inst);
    let path = solve_sop(&g, &AcsParams::default(), 0);
    let sol = path_to_solution(&g, &lay, &path, "toy", "rszd-acs", 0);
    assert_eq!(sol.prize, 2.0);
    let refined = refine_ceop(&sol, &lay, inst.depot_start, inst.depot_end, 5);
    assert_eq!(refined.prize, 3.0);
    assert!(refined.cost <= 13.0);
    let ids: Vec<usize> = refined.sequence.iter().map(|v| v.zone_id).collect();
    assert_eq!(ids.len(), 2);
}
