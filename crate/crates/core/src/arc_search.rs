//! Waypoint relocation inside Steiner Zones and the arc-search/add loop that
//! turns a discrete SOP tour into a continuous CEOP path.

use std::f64::consts::TAU;

use crate::acs::add_operator;
use crate::geometry::{closest_point_on_circle_to_segment, segment_disk_interval, Circle, Point, EPS};
use crate::instance::{Solution, Visit};
use crate::routing::{Path, RoutingGraph};
use crate::rszd::{SteinerZone, SzLayout};

/// Coarse samples per feasible arc before golden-section refinement.
const ARC_SAMPLES: usize = 64;
const GOLDEN_ITERS: usize = 80;
/// Sweeps stop once a whole sweep gains less than this.
pub const SWEEP_GAIN_TOL: f64 = 1e-4;
pub const MAX_SWEEPS: usize = 50;

/// Angular intervals of one member circle lying inside every other member.
/// Intervals are `[lo, hi]` with `0 <= lo <= hi <= 2π`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibleArc {
    pub circle_id: u32,
    pub intervals: Vec<(f64, f64)>,
}

fn detour(prev: Point, p: Point, next: Point) -> f64 {
    prev.dist(p) + p.dist(next)
}

/// Angles on `c` that fall inside `other` (padded by `eps`), as intervals in `[0, 2π]`.
fn arc_inside(c: &Circle, other: &Circle, eps: f64) -> Vec<(f64, f64)> {
    let d = c.center.dist(other.center);
    let ro = other.radius + eps;
    if d <= EPS {
        return if c.radius <= ro { vec![(0.0, TAU)] } else { Vec::new() };
    }
    let k = (c.radius * c.radius + d * d - ro * ro) / (2.0 * c.radius * d);
    if k <= -1.0 {
        return vec![(0.0, TAU)];
    }
    if k > 1.0 {
        return Vec::new();
    }
    let half = k.acos();
    let phi = (other.center.y - c.center.y).atan2(other.center.x - c.center.x);
    let lo = (phi - half).rem_euclid(TAU);
    let hi = lo + 2.0 * half;
    if hi <= TAU {
        vec![(lo, hi)]
    } else {
        vec![(0.0, hi - TAU), (lo, TAU)]
    }
}

fn intersect_intervals(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if lo <= hi {
                out.push((lo, hi));
            }
        }
    }
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

/// Feasible arcs of every member of `zone`.
pub fn feasible_arcs(zone: &SteinerZone, eps: f64) -> Vec<FeasibleArc> {
    zone.members
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut intervals = vec![(0.0, TAU)];
            for (j, o) in zone.members.iter().enumerate() {
                if i != j {
                    intervals = intersect_intervals(&intervals, &arc_inside(&m.circle, &o.circle, eps));
                }
            }
            FeasibleArc { circle_id: m.id, intervals }
        })
        .collect()
}

/// Detour minimizer over one angular interval: coarse sweep then
/// golden-section search around the best sample.
fn minimize_on_interval(c: &Circle, lo: f64, hi: f64, prev: Point, next: Point, hint: Option<f64>) -> (f64, Point) {
    let f = |t: f64| detour(prev, c.point_at(t), next);
    let step = (hi - lo) / ARC_SAMPLES as f64;
    let mut best_t = lo;
    let mut best_f = f(lo);
    for k in 1..=ARC_SAMPLES {
        let t = lo + step * k as f64;
        let v = f(t);
        if v < best_f {
            best_f = v;
            best_t = t;
        }
    }
    if let Some(h) = hint {
        if h >= lo && h <= hi && f(h) < best_f {
            best_t = h;
            best_f = f(h);
        }
    }
    if step > 0.0 {
        // A full circle has no ends: let the bracket cross the 0/2π seam.
        let full = hi - lo >= TAU - 1e-12;
        let (mut a, mut b) = if full { (best_t - step, best_t + step) } else { ((best_t - step).max(lo), (best_t + step).min(hi)) };
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = b - g * (b - a);
        let mut x2 = a + g * (b - a);
        let (mut f1, mut f2) = (f(x1), f(x2));
        for _ in 0..GOLDEN_ITERS {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = f(x2);
            }
        }
        let t = 0.5 * (a + b);
        if f(t) < best_f {
            best_t = t;
            best_f = f(t);
        }
    }
    (best_f, c.point_at(best_t))
}

/// Point of `zone` minimizing `|prev - p| + |p - next|`.
///
/// When the segment `prev`-`next` passes through the zone, the midpoint of
/// the portion inside the zone is returned (zero detour; for a single circle
/// this is the chord midpoint or the tangent point). Otherwise the optimum
/// lies on the zone boundary and is searched along each member's feasible
/// arc, seeded with the boundary point nearest the segment, and compared
/// against the zone vertices.
pub fn best_waypoint_in_zone(prev: Point, next: Point, zone: &SteinerZone, eps: f64) -> Point {
    if zone.contains(prev, eps) && prev.dist(next) <= eps {
        return prev;
    }
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut hit = true;
    for c in zone.circles() {
        match segment_disk_interval(prev, next, c, eps) {
            Some((t0, t1)) => {
                lo = lo.max(t0);
                hi = hi.min(t1);
            }
            None => {
                hit = false;
                break;
            }
        }
    }
    if hit && lo <= hi {
        let p = prev.lerp(next, 0.5 * (lo + hi));
        if zone.violation(p) <= 10.0 * eps {
            return p;
        }
    }

    let mut best: Option<(f64, Point)> = None;
    let mut consider = |p: Point| {
        let v = detour(prev, p, next);
        if best.is_none_or(|(bv, _)| v < bv) {
            best = Some((v, p));
        }
    };
    for &v in &zone.vertices {
        consider(v);
    }
    for (m, arc) in zone.members.iter().zip(feasible_arcs(zone, eps)) {
        let c = &m.circle;
        let hint = closest_point_on_circle_to_segment(c, prev, next).ok().map(|p| c.angle_of(p).rem_euclid(TAU));
        for (a, b) in arc.intervals {
            let (_, p) = minimize_on_interval(c, a, b, prev, next, hint);
            if zone.violation(p) <= 10.0 * eps {
                consider(p);
            }
        }
    }
    best.map(|(_, p)| p).unwrap_or(zone.center)
}

/// Cost of the polyline `start -> points... -> end`.
pub fn polyline_cost(start: Point, points: &[Point], end: Point) -> f64 {
    let mut cost = 0.0;
    let mut prev = start;
    for &p in points {
        cost += prev.dist(p);
        prev = p;
    }
    cost + prev.dist(end)
}

/// Gauss-Seidel relocation of every waypoint against its current
/// neighbours, repeated until a sweep gains less than [`SWEEP_GAIN_TOL`] or
/// `max_sweeps` is reached. A move is kept only if it does not lengthen the
/// local detour. Returns the number of sweeps run.
pub fn arc_search(start: Point, end: Point, zones: &[&SteinerZone], points: &mut [Point], max_sweeps: usize, eps: f64) -> usize {
    let n = points.len();
    let mut sweeps = 0;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut gain = 0.0;
        for j in 0..n {
            let prev = if j == 0 { start } else { points[j - 1] };
            let next = if j + 1 == n { end } else { points[j + 1] };
            let cand = best_waypoint_in_zone(prev, next, zones[j], eps);
            let old = detour(prev, points[j], next);
            let new = detour(prev, cand, next);
            if new <= old {
                gain += old - new;
                points[j] = cand;
            }
        }
        if gain < SWEEP_GAIN_TOL {
            break;
        }
    }
    sweeps
}

/// Zone index in `layout` for a zone id.
fn zone_index(layout: &SzLayout, id: usize) -> Option<usize> {
    if layout.zones.get(id).is_some_and(|z| z.id == id) {
        return Some(id);
    }
    layout.zones.iter().position(|z| z.id == id)
}

/// Alternates arc search with the add operator for up to `rounds` rounds,
/// stopping early once a round changes nothing. Prize never drops and the
/// budget is respected throughout.
pub fn refine_ceop(solution: &Solution, layout: &SzLayout, start: Point, end: Point, rounds: usize) -> Solution {
    let budget = solution.budget;
    let mut zone_ids: Vec<usize> =
        solution.sequence.iter().map(|v| zone_index(layout, v.zone_id).expect("solution zone exists in layout")).collect();
    let mut points: Vec<Point> = solution.sequence.iter().map(Visit::point).collect();

    for _ in 0..rounds {
        let before = polyline_cost(start, &points, end);
        let zones: Vec<&SteinerZone> = zone_ids.iter().map(|&z| &layout.zones[z]).collect();
        arc_search(start, end, &zones, &mut points, MAX_SWEEPS, EPS);
        let after = polyline_cost(start, &points, end);

        // Current waypoints become extra nodes next to the discrete zone vertices.
        let mut nodes: Vec<(Point, usize, f64)> = points.iter().zip(&zone_ids).map(|(&p, &z)| (p, z, 0.0)).collect();
        for (zi, z) in layout.zones.iter().enumerate() {
            for p in z.representative_points() {
                nodes.push((p, zi, 0.0));
            }
        }
        let prizes = layout.zones.iter().map(|z| z.prize).collect();
        let g = RoutingGraph::new(start, end, &nodes, prizes, budget, 1.0);
        let mut seq = vec![0];
        seq.extend(1..=points.len());
        seq.push(g.end());
        let mut path = Path::evaluate(&g, seq);
        let mut visited = path.visited_zones(&g);
        let n_before = path.nodes.len();
        add_operator(&g, &mut path, &mut visited);
        let inserted = path.nodes.len() > n_before;
        if inserted {
            zone_ids = path.interior().iter().map(|&v| g.node_zone[v]).collect();
            points = path.interior().iter().map(|&v| g.points[v]).collect();
        }
        if !inserted && before - after < SWEEP_GAIN_TOL {
            break;
        }
    }

    let sequence: Vec<Visit> = zone_ids
        .iter()
        .zip(&points)
        .map(|(&z, p)| Visit { zone_id: layout.zones[z].id, circle_ids: layout.zones[z].member_ids(), x: p.x, y: p.y })
        .collect();
    Solution {
        prize: zone_ids.iter().map(|&z| layout.zones[z].prize).sum(),
        cost: polyline_cost(start, &points, end),
        sequence,
        ..solution.clone()
    }
}
