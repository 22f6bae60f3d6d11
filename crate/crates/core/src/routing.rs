//! Node graphs for the set and plain orienteering problems solved by the ant
//! colony.
//!
//! Node 0 is the start depot and node `n + 1` the end depot; nodes `1..=n`
//! are candidate waypoints, each belonging to one zone. Visiting any node of
//! a zone collects that zone's prize once.

use crate::geometry::Point;
use crate::instance::{Instance, Solution, Visit};
use crate::rszd::SzLayout;

pub const NO_ZONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq)]
pub struct RoutingGraph {
    pub points: Vec<Point>,
    pub node_zone: Vec<usize>,
    pub zone_nodes: Vec<Vec<usize>>,
    pub zone_prizes: Vec<f64>,
    /// Cost paid on arrival at a node (zero for depots and for plain SOP).
    pub visit_costs: Vec<f64>,
    /// Multiplier turning Euclidean distance into leg cost.
    pub leg_scale: f64,
    pub budget: f64,
}

/// Set orienteering graph over zone vertices.
pub type SopGraph = RoutingGraph;

impl RoutingGraph {
    /// `nodes` holds `(position, zone, visit cost)`; zones index `zone_prizes`.
    pub fn new(
        start: Point,
        end: Point,
        nodes: &[(Point, usize, f64)],
        zone_prizes: Vec<f64>,
        budget: f64,
        leg_scale: f64,
    ) -> RoutingGraph {
        let mut points = Vec::with_capacity(nodes.len() + 2);
        let mut node_zone = Vec::with_capacity(nodes.len() + 2);
        let mut visit_costs = Vec::with_capacity(nodes.len() + 2);
        let mut zone_nodes = vec![Vec::new(); zone_prizes.len()];
        points.push(start);
        node_zone.push(NO_ZONE);
        visit_costs.push(0.0);
        for (i, &(p, z, v)) in nodes.iter().enumerate() {
            points.push(p);
            node_zone.push(z);
            visit_costs.push(v);
            zone_nodes[z].push(i + 1);
        }
        points.push(end);
        node_zone.push(NO_ZONE);
        visit_costs.push(0.0);
        RoutingGraph { points, node_zone, zone_nodes, zone_prizes, visit_costs, leg_scale, budget }
    }

    /// One node per zone vertex (zone center for single-circle zones), legs
    /// in plain distance.
    pub fn sop(layout: &SzLayout, start: Point, end: Point, budget: f64) -> SopGraph {
        let mut nodes = Vec::new();
        for (zi, z) in layout.zones.iter().enumerate() {
            for p in z.representative_points() {
                nodes.push((p, zi, 0.0));
            }
        }
        let prizes = layout.zones.iter().map(|z| z.prize).collect();
        RoutingGraph::new(start, end, &nodes, prizes, budget, 1.0)
    }

    pub fn sop_for_instance(layout: &SzLayout, instance: &Instance) -> SopGraph {
        RoutingGraph::sop(layout, instance.depot_start, instance.depot_end, instance.budget)
    }

    pub fn n_nodes(&self) -> usize {
        self.points.len() - 2
    }

    pub fn n_zones(&self) -> usize {
        self.zone_prizes.len()
    }

    pub fn end(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_depot(&self, v: usize) -> bool {
        v == 0 || v == self.end()
    }

    pub fn leg(&self, a: usize, b: usize) -> f64 {
        self.points[a].dist(self.points[b]) * self.leg_scale
    }

    pub fn node_prize(&self, v: usize) -> f64 {
        match self.node_zone[v] {
            NO_ZONE => 0.0,
            z => self.zone_prizes[z],
        }
    }

    /// Extra cost of placing `v` between `a` and `b`.
    pub fn insertion_cost(&self, a: usize, v: usize, b: usize) -> f64 {
        self.leg(a, v) + self.visit_costs[v] + self.leg(v, b) - self.leg(a, b)
    }

    /// Sum of legs plus visit costs of a node sequence.
    pub fn path_cost(&self, nodes: &[usize]) -> f64 {
        let legs: f64 = nodes.windows(2).map(|w| self.leg(w[0], w[1])).sum();
        legs + nodes.iter().map(|&v| self.visit_costs[v]).sum::<f64>()
    }

    pub fn path_prize(&self, nodes: &[usize]) -> f64 {
        nodes.iter().map(|&v| self.node_prize(v)).sum()
    }
}

/// A walk from the start depot to the end depot with cached totals.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    /// Full node sequence including both depots.
    pub nodes: Vec<usize>,
    pub prize: f64,
    pub cost: f64,
}

impl Path {
    pub fn depots_only(g: &RoutingGraph) -> Path {
        Path::evaluate(g, vec![0, g.end()])
    }

    pub fn evaluate(g: &RoutingGraph, nodes: Vec<usize>) -> Path {
        let prize = g.path_prize(&nodes);
        let cost = g.path_cost(&nodes);
        Path { nodes, prize, cost }
    }

    pub fn interior(&self) -> &[usize] {
        &self.nodes[1..self.nodes.len() - 1]
    }

    pub fn is_feasible(&self, g: &RoutingGraph) -> bool {
        self.cost <= g.budget
    }

    /// Per-zone flags marking zones already on the path.
    pub fn visited_zones(&self, g: &RoutingGraph) -> Vec<bool> {
        let mut visited = vec![false; g.n_zones()];
        for &v in self.interior() {
            visited[g.node_zone[v]] = true;
        }
        visited
    }

    /// Larger prize wins; equal prizes fall back to lower cost.
    pub fn better_than(&self, other: &Path) -> bool {
        if (self.prize - other.prize).abs() > 1e-9 {
            self.prize > other.prize
        } else {
            self.cost < other.cost
        }
    }
}

/// Converts a path over a SOP graph into a solution record.
pub fn path_to_solution(
    g: &RoutingGraph,
    layout: &SzLayout,
    path: &Path,
    instance_name: &str,
    algorithm: &str,
    seed: u64,
) -> Solution {
    let sequence = path
        .interior()
        .iter()
        .map(|&v| {
            let z = &layout.zones[g.node_zone[v]];
            let p = g.points[v];
            Visit { zone_id: z.id, circle_ids: z.member_ids(), x: p.x, y: p.y }
        })
        .collect();
    Solution {
        instance_name: instance_name.to_string(),
        algorithm: algorithm.to_string(),
        seed,
        prize: path.prize,
        cost: path.cost,
        budget: g.budget,
        runtime_s: 0.0,
        sequence,
        truncated: None,
    }
}
