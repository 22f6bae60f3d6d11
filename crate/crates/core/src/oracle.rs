//! Brute-force references for small instances: exact set orienteering by
//! enumeration, Monte-Carlo zone membership checks and dense waypoint sampling.
//!
//! Nothing here reuses the solver code paths beyond plain data types.

use rand::Rng;
use thiserror::Error;

use crate::geometry::Point;
use crate::routing::RoutingGraph;
use crate::rszd::SteinerZone;

pub const MAX_ORACLE_ZONES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{zones} zones exceed the oracle limit of {max}")]
    TooLarge { zones: usize, max: usize },
}

/// Zones as groups of candidate stops `(position, visit cost)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleProblem {
    pub start: Point,
    pub end: Point,
    pub groups: Vec<Vec<(Point, f64)>>,
    pub prizes: Vec<f64>,
    pub leg_scale: f64,
    pub budget: f64,
}

impl OracleProblem {
    /// Copies the raw node data out of a routing graph.
    pub fn from_graph(g: &RoutingGraph) -> OracleProblem {
        let groups = g
            .zone_nodes
            .iter()
            .map(|nodes| nodes.iter().map(|&v| (g.points[v], g.visit_costs[v])).collect())
            .collect();
        OracleProblem {
            start: g.points[0],
            end: g.points[g.points.len() - 1],
            groups,
            prizes: g.zone_prizes.clone(),
            leg_scale: g.leg_scale,
            budget: g.budget,
        }
    }

    fn leg(&self, a: Point, b: Point) -> f64 {
        ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt() * self.leg_scale
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub prize: f64,
    pub cost: f64,
    /// `(zone, stop index within the zone)` in visiting order.
    pub stops: Vec<(usize, usize)>,
    pub nodes_expanded: u64,
}

struct Search<'a> {
    p: &'a OracleProblem,
    prune: bool,
    best: OracleResult,
    stack: Vec<(usize, usize)>,
    /// Cheapest cost seen for each `(visited mask, zone, stop)` state.
    seen: std::collections::HashMap<(u32, usize, usize), f64>,
}

impl Search<'_> {
    fn consider(&mut self, prize: f64, cost: f64) {
        let b = &self.best;
        if prize > b.prize + 1e-9 || ((prize - b.prize).abs() <= 1e-9 && cost < b.cost) {
            self.best.prize = prize;
            self.best.cost = cost;
            self.best.stops = self.stack.clone();
        }
    }

    fn dfs(&mut self, at: Point, mask: u32, prize: f64, cost: f64, remaining: f64) {
        self.best.nodes_expanded += 1;
        let close = cost + self.p.leg(at, self.p.end);
        if close <= self.p.budget {
            self.consider(prize, close);
        }
        if self.prune && prize + remaining < self.best.prize - 1e-9 {
            return;
        }
        for z in 0..self.p.groups.len() {
            if mask & (1 << z) != 0 {
                continue;
            }
            for (k, &(q, visit)) in self.p.groups[z].iter().enumerate() {
                let c = cost + self.p.leg(at, q) + visit;
                if self.prune {
                    if c + self.p.leg(q, self.p.end) > self.p.budget {
                        continue;
                    }
                    let key = (mask | (1 << z), z, k);
                    match self.seen.get(&key) {
                        Some(&seen) if seen <= c => continue,
                        _ => {
                            self.seen.insert(key, c);
                        }
                    }
                }
                self.stack.push((z, k));
                self.dfs(q, mask | (1 << z), prize + self.p.prizes[z], c, remaining - self.p.prizes[z]);
                self.stack.pop();
            }
        }
    }
}

fn search(p: &OracleProblem, prune: bool) -> Result<OracleResult, OracleError> {
    if p.groups.len() > MAX_ORACLE_ZONES {
        return Err(OracleError::TooLarge { zones: p.groups.len(), max: MAX_ORACLE_ZONES });
    }
    let mut s = Search {
        p,
        prune,
        best: OracleResult { prize: f64::NEG_INFINITY, cost: f64::INFINITY, stops: Vec::new(), nodes_expanded: 0 },
        stack: Vec::new(),
        seen: Default::default(),
    };
    let total: f64 = p.prizes.iter().sum();
    s.dfs(p.start, 0, 0.0, 0.0, total);
    if s.best.prize == f64::NEG_INFINITY {
        // Budget below the depot leg: only the empty walk remains.
        s.best.prize = 0.0;
        s.best.cost = p.leg(p.start, p.end);
    }
    Ok(s.best)
}

/// Exact optimum over zone subsets, orders and stop choices, with budget,
/// prize-bound and state-dominance pruning.
pub fn brute_force_sop(p: &OracleProblem) -> Result<OracleResult, OracleError> {
    search(p, true)
}

/// Same enumeration without any pruning; for cross-checking tiny cases.
pub fn brute_force_sop_unpruned(p: &OracleProblem) -> Result<OracleResult, OracleError> {
    search(p, false)
}

/// Membership in the region bounded by the zone's vertex polygon and one
/// circular cap per polygon edge.
pub struct VertexArcRegion {
    vertices: Vec<Point>,
    /// Per edge, the member circle `(center, radius)` carrying its arc.
    caps: Vec<Option<(Point, f64)>>,
    single: Option<(Point, f64)>,
}

impl VertexArcRegion {
    pub fn new(zone: &SteinerZone) -> VertexArcRegion {
        if zone.degree() == 1 {
            let c = zone.members[0].circle;
            return VertexArcRegion { vertices: Vec::new(), caps: Vec::new(), single: Some((c.center, c.radius)) };
        }
        let v = zone.vertices.clone();
        let n = v.len();
        let tol = 1e-6;
        let mut caps = Vec::new();
        if n >= 2 {
            for i in 0..n {
                let (a, b) = (v[i], v[(i + 1) % n]);
                let e = b - a;
                let len = e.norm();
                // Outer side of a counterclockwise edge is to its right.
                let normal = Point::new(e.y / len, -e.x / len);
                let cap = zone.circles().find_map(|c| {
                    let on_a = (a.dist(c.center) - c.radius).abs() <= tol;
                    let on_b = (b.dist(c.center) - c.radius).abs() <= tol;
                    let bulge = c.center + normal * c.radius;
                    let outer = (bulge - a).cross(e) >= 0.0;
                    (on_a && on_b && outer && zone.violation(bulge) <= tol).then_some((c.center, c.radius))
                });
                caps.push(cap);
            }
        }
        VertexArcRegion { vertices: v, caps, single: None }
    }

    pub fn contains(&self, p: Point) -> bool {
        if let Some((c, r)) = self.single {
            return p.dist(c) <= r;
        }
        let n = self.vertices.len();
        if n >= 3 && (0..n).all(|i| (self.vertices[(i + 1) % n] - self.vertices[i]).cross(p - self.vertices[i]) >= 0.0) {
            return true;
        }
        self.caps.iter().enumerate().any(|(i, cap)| {
            let Some((c, r)) = *cap else { return false };
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            (b - a).cross(p - a) <= 0.0 && p.dist(c) <= r
        })
    }
}

/// Counts sample points where "inside every member" and membership in the
/// region rebuilt from the zone's vertices disagree. Points within `1e-7`
/// of a member boundary are skipped.
pub fn monte_carlo_zone_check(zone: &SteinerZone, samples: usize, rng: &mut impl Rng) -> usize {
    let region = VertexArcRegion::new(zone);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::INFINITY);
    for c in zone.circles() {
        x0 = x0.max(c.center.x - c.radius);
        y0 = y0.max(c.center.y - c.radius);
        x1 = x1.min(c.center.x + c.radius);
        y1 = y1.min(c.center.y + c.radius);
    }
    for v in &zone.vertices {
        x0 = x0.min(v.x);
        y0 = y0.min(v.y);
        x1 = x1.max(v.x);
        y1 = y1.max(v.y);
    }
    let pad = 0.05 * ((x1 - x0).max(y1 - y0)).max(1e-9);
    let (x0, y0, x1, y1) = (x0 - pad, y0 - pad, x1 + pad, y1 + pad);
    let mut violations = 0;
    for _ in 0..samples {
        let p = Point::new(rng.gen_range(x0..=x1), rng.gen_range(y0..=y1));
        if zone.circles().any(|c| (p.dist(c.center) - c.radius).abs() < 1e-7) {
            continue;
        }
        let truth = zone.circles().all(|c| p.dist(c.center) <= c.radius);
        if truth != region.contains(p) {
            violations += 1;
        }
    }
    violations
}

/// Dense search for the zone point minimizing `|prev - p| + |p - next|`:
/// `n_boundary` samples around each member circle plus an `n_grid` square
/// grid, each kept only if it lies in every member.
pub fn sampled_best_waypoint(prev: Point, next: Point, zone: &SteinerZone, n_boundary: usize, n_grid: usize) -> (Point, f64) {
    let inside = |p: Point| zone.circles().all(|c| p.dist(c.center) <= c.radius + 1e-9);
    let cost = |p: Point| prev.dist(p) + p.dist(next);
    let mut best = (zone.center, f64::INFINITY);
    let mut take = |p: Point| {
        if inside(p) {
            let v = cost(p);
            if v < best.1 {
                best = (p, v);
            }
        }
    };
    for &v in &zone.vertices {
        take(v);
    }
    take(zone.center);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::INFINITY);
    for c in zone.circles() {
        for k in 0..n_boundary {
            let t = std::f64::consts::TAU * k as f64 / n_boundary as f64;
            take(Point::new(c.center.x + c.radius * t.cos(), c.center.y + c.radius * t.sin()));
        }
        x0 = x0.max(c.center.x - c.radius);
        y0 = y0.max(c.center.y - c.radius);
        x1 = x1.min(c.center.x + c.radius);
        y1 = y1.min(c.center.y + c.radius);
    }
    if n_grid >= 2 {
        for i in 0..n_grid {
            for j in 0..n_grid {
                let fx = i as f64 / (n_grid - 1) as f64;
                let fy = j as f64 / (n_grid - 1) as f64;
                take(Point::new(x0 + (x1 - x0) * fx, y0 + (y1 - y0) * fy));
            }
        }
    }
    best
}
