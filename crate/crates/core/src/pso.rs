//! Truck-and-drone delivery: particle swarm over waypoint positions inside
//! Steiner Zones, each particle scored by an inherited ant colony solving the
//! orienteering problem on its fixed waypoints.

use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::acs::{run_colony, AcsOutcome, AcsParams, Inheritance};
use crate::geometry::{Circle, Point, EPS};
use crate::instance::{Instance, Solution, TddpParams, Visit};
use crate::routing::RoutingGraph;
use crate::rszd::{SteinerZone, SzLayout};

const PRIZE_TIE: f64 = 1e-9;
/// Slack for the "inside the zone" and "velocity within cap" checks.
pub const CONTAINMENT_TOL: f64 = 10.0 * EPS;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PsoError {
    #[error("could not project a waypoint back onto the boundary of zone {zone}")]
    ProjectionFailure { zone: usize },
    #[error("instance has no drone parameters")]
    MissingTddpParams,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoParams {
    pub n_particles: usize,
    pub n_iter: usize,
    pub c1: f64,
    pub c2: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    pub eps_impr: f64,
    pub max_no_impr: usize,
    pub time_cap_s: f64,
    pub iacs_max_no_impr: usize,
}

impl Default for PsoParams {
    fn default() -> Self {
        PsoParams {
            n_particles: 40,
            n_iter: 100,
            c1: 1.33,
            c2: 1.33,
            omega_min: 0.4,
            omega_max: 0.9,
            eps_impr: 1e-4,
            max_no_impr: 5,
            time_cap_s: 600.0,
            iacs_max_no_impr: 13,
        }
    }
}

/// Time for the drones to serve every member of `zone` from `p`, in hours:
/// the slowest sortie (loaded leg at `lambda * v_drone`, service, empty return).
pub fn collection_cost(p: Point, zone: &SteinerZone, tddp: &TddpParams) -> f64 {
    zone.members
        .iter()
        .map(|m| {
            let d = p.dist(m.circle.center);
            let lambda = m.lambda.unwrap_or(1.0);
            d / (lambda * tddp.v_drone) + tddp.t_serv + d / tddp.v_drone
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Truck driving time between two stops, in hours.
pub fn travel_cost(p: Point, q: Point, tddp: &TddpParams) -> f64 {
    p.dist(q) / tddp.v_truck
}

/// Linearly decreasing inertia weight at step `n_it`.
pub fn ldiw(n_it: usize, params: &PsoParams) -> f64 {
    params.omega_max - (params.omega_max - params.omega_min) / params.n_iter as f64 * n_it as f64
}

/// Velocity cap of a zone: the radius of a single circle, otherwise the
/// distance from the zone center to the nearest edge of the vertex polygon.
/// A two-vertex lens has no polygon area, so its cap is the distance from
/// the center to the nearest member boundary.
pub fn zone_vmax(zone: &SteinerZone) -> f64 {
    if zone.degree() == 1 {
        return zone.members[0].circle.radius;
    }
    let v = &zone.vertices;
    match v.len() {
        0 | 1 => 0.0,
        2 => zone
            .circles()
            .map(|c| c.radius - zone.center.dist(c.center))
            .fold(f64::INFINITY, f64::min)
            .max(0.0),
        n => (0..n)
            .map(|i| crate::geometry::point_segment_distance(zone.center, v[i], v[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub positions: Vec<Point>,
    pub velocities: Vec<Point>,
    pub ib_prize: f64,
    pub ib_cost: f64,
    /// Zone indices in visiting order.
    pub ib_sequence: Vec<usize>,
    pub ib_positions: Vec<Point>,
    /// This particle's last colony result, reused to seed its next colony.
    pub last_best: Option<Inheritance>,
}

/// Uniform point in the disk of radius `r` around `c`.
fn sample_disk(c: Point, r: f64, rng: &mut impl Rng) -> Point {
    let rho = r * rng.gen::<f64>().sqrt();
    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
    Point::new(c.x + rho * theta.cos(), c.y + rho * theta.sin())
}

/// Random start inside every zone, zero velocity, no personal best yet.
pub fn init_particle(layout: &SzLayout, rng: &mut impl Rng) -> Particle {
    let positions: Vec<Point> = layout.zones.iter().map(|z| sample_disk(z.center, zone_vmax(z), rng)).collect();
    Particle {
        velocities: vec![Point::default(); positions.len()],
        ib_positions: positions.clone(),
        positions,
        ib_prize: f64::NEG_INFINITY,
        ib_cost: f64::INFINITY,
        ib_sequence: Vec::new(),
        last_best: None,
    }
}

/// Inertia plus pulls toward the personal and global bests, then clamped
/// per component to `[-vmax, vmax]`.
#[allow(clippy::too_many_arguments)]
pub fn update_velocity(v: Point, x: Point, ib: Point, gb: Point, omega: f64, r1: f64, r2: f64, params: &PsoParams, vmax: f64) -> Point {
    let raw = v * omega + (ib - x) * (params.c1 * r1) + (gb - x) * (params.c2 * r2);
    Point::new(raw.x.clamp(-vmax, vmax), raw.y.clamp(-vmax, vmax))
}

/// Fraction of `v` the ray `x + t v` can travel before leaving the disk `c`,
/// from the stable root of `|x + t v - c|^2 = r^2`. A start point marginally
/// outside the disk gives 0.
fn ray_exit(x: Point, v: Point, c: &Circle) -> f64 {
    let w = x - c.center;
    let a = v.dot(v);
    let b = w.dot(v);
    let d = w.norm();
    let cc = (d - c.radius) * (d + c.radius);
    let root = (b * b - a * cc).max(0.0).sqrt();
    let t = if b > 0.0 { -cc / (b + root) } else { (root - b) / a };
    t.max(0.0)
}

/// Moves `x` by `v`; a move leaving the zone stops where the segment first
/// exits a member disk.
pub fn update_position(x: Point, v: Point, zone: &SteinerZone, eps: f64) -> Result<Point, PsoError> {
    let cand = x + v;
    if zone.contains(cand, eps) {
        return Ok(cand);
    }
    if zone.violation(x) > CONTAINMENT_TOL {
        return Err(PsoError::ProjectionFailure { zone: zone.id });
    }
    let t_exit = zone.circles().map(|c| ray_exit(x, v, c)).fold(1.0f64, f64::min);
    let p = x.lerp(cand, t_exit);
    if zone.violation(p) <= CONTAINMENT_TOL {
        Ok(p)
    } else {
        Err(PsoError::ProjectionFailure { zone: zone.id })
    }
}

/// Orienteering graph over one waypoint per zone; legs and visits in hours.
pub fn op_graph(layout: &SzLayout, positions: &[Point], start: Point, end: Point, tddp: &TddpParams, budget: f64) -> RoutingGraph {
    let nodes: Vec<(Point, usize, f64)> = layout
        .zones
        .iter()
        .zip(positions)
        .enumerate()
        .map(|(i, (z, &p))| (p, i, collection_cost(p, z, tddp)))
        .collect();
    let prizes = layout.zones.iter().map(|z| z.prize).collect();
    RoutingGraph::new(start, end, &nodes, prizes, budget, 1.0 / tddp.v_truck)
}

/// Inherited colony on the orienteering problem at fixed waypoints.
#[allow(clippy::too_many_arguments)]
pub fn iacs_solve_op(
    layout: &SzLayout,
    positions: &[Point],
    start: Point,
    end: Point,
    tddp: &TddpParams,
    budget: f64,
    inherited: Option<&Inheritance>,
    params: &AcsParams,
    seed: u64,
) -> AcsOutcome {
    let g = op_graph(layout, positions, start, end, tddp, budget);
    run_colony(&g, params, seed, inherited)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PsoStats {
    pub omega_history: Vec<f64>,
    pub containment_violations: usize,
    pub velocity_violations: usize,
    pub iterations: usize,
    /// Global best prize after initialization and after each iteration.
    pub gb_prize_history: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TddpReport {
    pub solution: Solution,
    pub stats: PsoStats,
}

fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.next_u64()
}

struct Best {
    prize: f64,
    cost: f64,
    sequence: Vec<usize>,
    positions: Vec<Point>,
}

fn strictly_better(p: f64, c: f64, bp: f64, bc: f64) -> bool {
    p > bp + PRIZE_TIE || ((p - bp).abs() <= PRIZE_TIE && c < bc)
}

/// Full swarm loop. `layout` should be built with a degree cap equal to the
/// number of drones.
pub fn solve_tddp(
    instance: &Instance,
    layout: &SzLayout,
    pso: &PsoParams,
    acs: &AcsParams,
    seed: u64,
) -> Result<TddpReport, PsoError> {
    let clock = Instant::now();
    let tddp = instance.tddp.ok_or(PsoError::MissingTddpParams)?;
    let (start, end, budget) = (instance.depot_start, instance.depot_end, instance.budget);
    let iacs = AcsParams { max_no_impr: pso.iacs_max_no_impr, ..*acs };
    let vmax: Vec<f64> = layout.zones.iter().map(zone_vmax).collect();
    let mut stats = PsoStats::default();

    let mut rngs: Vec<ChaCha8Rng> = (0..pso.n_particles)
        .map(|k| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            r.set_stream(k as u64 + 1);
            r
        })
        .collect();
    let mut particles: Vec<Particle> = rngs.iter_mut().map(|r| init_particle(layout, r)).collect();

    let evaluate = |particles: &mut [Particle], it: usize| {
        particles.par_iter_mut().enumerate().for_each(|(k, p)| {
            let s = derive_seed(seed, ((it as u64) << 32) | k as u64);
            let out = iacs_solve_op(layout, &p.positions, start, end, &tddp, budget, p.last_best.as_ref(), &iacs, s);
            let best = &out.best;
            if strictly_better(best.prize, best.cost, p.ib_prize, p.ib_cost) {
                p.ib_prize = best.prize;
                p.ib_cost = best.cost;
                p.ib_sequence = best.interior().iter().map(|&v| v - 1).collect();
                p.ib_positions = p.positions.clone();
            }
            p.last_best = Some(Inheritance { nodes: best.nodes.clone(), prize: best.prize, cost: best.cost });
        });
    };
    let local_best = |particles: &[Particle]| -> Best {
        let mut bi = 0;
        for k in 1..particles.len() {
            let (a, b) = (&particles[k], &particles[bi]);
            if strictly_better(a.ib_prize, a.ib_cost, b.ib_prize, b.ib_cost) {
                bi = k;
            }
        }
        let p = &particles[bi];
        Best { prize: p.ib_prize, cost: p.ib_cost, sequence: p.ib_sequence.clone(), positions: p.ib_positions.clone() }
    };

    let mut truncated = false;
    let mut gb = if particles.is_empty() {
        Best { prize: 0.0, cost: instance.depot_leg_cost(), sequence: Vec::new(), positions: Vec::new() }
    } else {
        evaluate(&mut particles, 0);
        local_best(&particles)
    };
    stats.gb_prize_history.push(gb.prize);

    let mut no_impr = 0;
    'outer: for n_it in 0..pso.n_iter {
        if no_impr >= pso.max_no_impr || particles.is_empty() {
            break;
        }
        let omega = ldiw(n_it, pso);
        for (k, p) in particles.iter_mut().enumerate() {
            if clock.elapsed().as_secs_f64() > pso.time_cap_s {
                truncated = true;
                break 'outer;
            }
            let rng = &mut rngs[k];
            let (r1, r2): (f64, f64) = (rng.gen(), rng.gen());
            for (j, zone) in layout.zones.iter().enumerate() {
                let v = update_velocity(p.velocities[j], p.positions[j], p.ib_positions[j], gb.positions[j], omega, r1, r2, pso, vmax[j]);
                if v.x.abs() > vmax[j] || v.y.abs() > vmax[j] {
                    stats.velocity_violations += 1;
                }
                let x = update_position(p.positions[j], v, zone, EPS)?;
                if zone.violation(x) > CONTAINMENT_TOL {
                    stats.containment_violations += 1;
                }
                p.velocities[j] = v;
                p.positions[j] = x;
            }
        }
        stats.omega_history.push(omega);
        stats.iterations += 1;
        evaluate(&mut particles, n_it + 1);
        let lb = local_best(&particles);
        let improved = lb.prize > gb.prize + pso.eps_impr
            || ((lb.prize - gb.prize).abs() <= PRIZE_TIE && lb.cost < gb.cost - pso.eps_impr);
        if improved {
            gb = lb;
            no_impr = 0;
        } else {
            no_impr += 1;
        }
        stats.gb_prize_history.push(gb.prize);
    }

    let sequence = gb
        .sequence
        .iter()
        .map(|&z| {
            let zone = &layout.zones[z];
            let p = gb.positions[z];
            Visit { zone_id: zone.id, circle_ids: zone.member_ids(), x: p.x, y: p.y }
        })
        .collect();
    let solution = Solution {
        instance_name: instance.name.clone(),
        algorithm: "rszd-pso-iacs".to_string(),
        seed,
        prize: gb.prize,
        cost: gb.cost,
        budget,
        runtime_s: clock.elapsed().as_secs_f64(),
        sequence,
        truncated: Some(truncated),
    };
    Ok(TddpReport { solution, stats })
}

/// Cost of a TDDP solution recomputed from its waypoints: truck legs plus
/// each stop's collection time.
pub fn replay_tddp_cost(solution: &Solution, layout: &SzLayout, start: Point, end: Point, tddp: &TddpParams) -> f64 {
    let mut cost = 0.0;
    let mut prev = start;
    for v in &solution.sequence {
        let zone = layout.zones.iter().find(|z| z.id == v.zone_id).expect("zone exists");
        cost += travel_cost(prev, v.point(), tddp) + collection_cost(v.point(), zone, tddp);
        prev = v.point();
    }
    cost + travel_cost(prev, end, tddp)
}
