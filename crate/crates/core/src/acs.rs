//! Ant Colony System over a [`RoutingGraph`], with the drop/add repair
//! operators and 2-opt.
//!
//! The same colony serves the set orienteering problem over zone vertices
//! (zero visit costs) and the plain orienteering problem induced by fixed
//! waypoints (one node per zone, visit cost = collection time).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::routing::{Path, RoutingGraph};

/// Floor for leg costs in the heuristic term.
const MIN_LEG: f64 = 1e-12;
const PRIZE_TIE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcsParams {
    pub n_ants: usize,
    pub n_iter: usize,
    pub beta: f64,
    pub alpha: f64,
    pub rho: f64,
    pub q0: f64,
    pub eps_impr: f64,
    pub max_no_impr: usize,
}

impl Default for AcsParams {
    fn default() -> Self {
        AcsParams { n_ants: 40, n_iter: 250, beta: 2.0, alpha: 0.1, rho: 0.1, q0: 0.9, eps_impr: 1e-4, max_no_impr: 25 }
    }
}

/// Dense symmetric pheromone table over all graph nodes including depots.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneMatrix {
    dim: usize,
    tau: Vec<f64>,
    pub tau0: f64,
}

impl PheromoneMatrix {
    pub fn new(dim: usize, tau0: f64) -> Self {
        PheromoneMatrix { dim, tau: vec![tau0; dim * dim], tau0 }
    }

    pub fn get(&self, r: usize, s: usize) -> f64 {
        self.tau[r * self.dim + s]
    }

    pub fn set(&mut self, r: usize, s: usize, value: f64) {
        self.tau[r * self.dim + s] = value;
        self.tau[s * self.dim + r] = value;
    }

    pub fn min_entry(&self) -> f64 {
        self.tau.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Local rule on every edge of `nodes`.
    pub fn local_update_path(&mut self, nodes: &[usize], rho: f64) {
        for w in nodes.windows(2) {
            let v = local_update(self.get(w[0], w[1]), rho, self.tau0);
            self.set(w[0], w[1], v);
        }
    }

    /// Global rule: edges of `nodes` move toward `deposit`; others are untouched.
    pub fn global_update(&mut self, nodes: &[usize], alpha: f64, deposit: f64) {
        for w in nodes.windows(2) {
            let v = (1.0 - alpha) * self.get(w[0], w[1]) + alpha * deposit;
            self.set(w[0], w[1], v);
        }
    }
}

pub fn local_update(tau: f64, rho: f64, tau0: f64) -> f64 {
    (1.0 - rho) * tau + rho * tau0
}

/// `prize / (n_wp * cost)` for a seed path with `n_wp` stops; zero prize
/// falls back to `1 / (n_wp * cost)`.
pub fn initial_pheromone(prize: f64, cost: f64, n_wp: usize) -> f64 {
    let cost = if cost > 0.0 { cost } else { 1.0 };
    let n = n_wp.max(1) as f64;
    if prize > 0.0 {
        prize / (n * cost)
    } else {
        1.0 / (n * cost)
    }
}

/// Whether `v` can follow `current` (already at `cost_so_far`) and still
/// reach the end depot within budget.
fn fits_next(g: &RoutingGraph, current: usize, v: usize, cost_so_far: f64) -> bool {
    cost_so_far + g.leg(current, v) + g.visit_costs[v] + g.leg(v, g.end()) <= g.budget
}

fn feasible_candidates(g: &RoutingGraph, current: usize, cost_so_far: f64, visited: &[bool]) -> Vec<usize> {
    (1..=g.n_nodes())
        .filter(|&v| !visited[g.node_zone[v]] && fits_next(g, current, v, cost_so_far))
        .collect()
}

/// Greedy nearest-neighbor walk used to size the initial pheromone.
pub fn nearest_neighbor_path(g: &RoutingGraph) -> Path {
    let mut visited = vec![false; g.n_zones()];
    let mut nodes = vec![0];
    let mut cost = 0.0;
    let mut current = 0;
    loop {
        let next = feasible_candidates(g, current, cost, &visited)
            .into_iter()
            .min_by(|&a, &b| g.leg(current, a).total_cmp(&g.leg(current, b)).then(a.cmp(&b)));
        let Some(v) = next else { break };
        cost += g.leg(current, v) + g.visit_costs[v];
        visited[g.node_zone[v]] = true;
        nodes.push(v);
        current = v;
    }
    nodes.push(g.end());
    Path::evaluate(g, nodes)
}

/// Heuristic desirability of moving to `s`.
fn eta(g: &RoutingGraph, r: usize, s: usize) -> f64 {
    g.node_prize(s) / (g.leg(r, s) + g.visit_costs[s]).max(MIN_LEG)
}

/// `tau * eta^beta` for each candidate, in candidate order.
pub fn transition_scores(g: &RoutingGraph, current: usize, candidates: &[usize], tau: &PheromoneMatrix, beta: f64) -> Vec<f64> {
    candidates
        .iter()
        .map(|&s| tau.get(current, s) * eta(g, current, s).powf(beta))
        .collect()
}

/// Scores normalized to probabilities. A zero total spreads uniformly.
pub fn transition_probabilities(scores: &[f64]) -> Vec<f64> {
    let total: f64 = scores.iter().sum();
    if total > 0.0 && total.is_finite() {
        scores.iter().map(|s| s / total).collect()
    } else {
        vec![1.0 / scores.len() as f64; scores.len()]
    }
}

/// Pseudo-random proportional choice. `candidates` must be non-empty.
pub fn select_next(
    g: &RoutingGraph,
    current: usize,
    candidates: &[usize],
    tau: &PheromoneMatrix,
    beta: f64,
    q0: f64,
    rng: &mut impl Rng,
) -> usize {
    if candidates.len() == 1 {
        return candidates[0];
    }
    let scores = transition_scores(g, current, candidates, tau, beta);
    let q: f64 = rng.gen();
    if q <= q0 {
        let mut best = 0;
        for i in 1..candidates.len() {
            let better = scores[i] > scores[best] || (scores[i] == scores[best] && candidates[i] < candidates[best]);
            if better {
                best = i;
            }
        }
        return candidates[best];
    }
    let probs = transition_probabilities(&scores);
    let mut x: f64 = rng.gen();
    for (i, p) in probs.iter().enumerate() {
        if x < *p {
            return candidates[i];
        }
        x -= p;
    }
    candidates[candidates.len() - 1]
}

/// First-improvement 2-opt with both depots pinned. Only legs change under
/// reversal, so prize and visit costs are untouched.
pub fn two_opt(g: &RoutingGraph, path: &mut Path, eps: f64) {
    let n = path.nodes.len();
    if n < 4 {
        return;
    }
    let mut improved = true;
    while improved {
        improved = false;
        'outer: for i in 0..n - 3 {
            for j in i + 2..n - 1 {
                let p = &path.nodes;
                let gain = g.leg(p[i], p[i + 1]) + g.leg(p[j], p[j + 1]) - g.leg(p[i], p[j]) - g.leg(p[i + 1], p[j + 1]);
                if gain > eps {
                    path.nodes[i + 1..=j].reverse();
                    path.cost -= gain;
                    improved = true;
                    break 'outer;
                }
            }
        }
    }
}

/// `prize / detour`, with a non-positive detour mapping to infinity.
pub fn ratio_value(prize: f64, detour: f64) -> f64 {
    if detour <= 0.0 {
        f64::INFINITY
    } else {
        prize / detour
    }
}

/// Removes the stop with the lowest prize-per-detour until the path fits
/// the budget. Removed zones become available again.
pub fn drop_operator(g: &RoutingGraph, path: &mut Path, visited: &mut [bool]) {
    while path.cost > g.budget && path.nodes.len() > 2 {
        let mut best: Option<(usize, f64, f64)> = None;
        for i in 1..path.nodes.len() - 1 {
            let (a, v, b) = (path.nodes[i - 1], path.nodes[i], path.nodes[i + 1]);
            let detour = g.insertion_cost(a, v, b);
            let value = ratio_value(g.node_prize(v), detour);
            let replace = match best {
                None => true,
                Some((bi, bv, _)) => value < bv || (value == bv && v < path.nodes[bi]),
            };
            if replace {
                best = Some((i, value, detour));
            }
        }
        let (i, _, detour) = best.expect("path has interior stops");
        let v = path.nodes.remove(i);
        path.cost -= detour;
        path.prize -= g.node_prize(v);
        visited[g.node_zone[v]] = false;
    }
}

/// Cheapest budget-respecting slot for `v` among the edges next to its three
/// nearest stops. Returns `(insert index, added cost)`.
fn best_slot(g: &RoutingGraph, path: &Path, v: usize) -> Option<(usize, f64)> {
    let nodes = &path.nodes;
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| g.leg(v, nodes[a]).total_cmp(&g.leg(v, nodes[b])).then(a.cmp(&b)));
    order.truncate(3);

    // Edges are named by their first position: edge k joins nodes[k], nodes[k+1].
    let mut edges: Vec<usize> = Vec::new();
    for &a in &order {
        for &b in &order {
            if b == a + 1 {
                edges.push(a);
            }
        }
    }
    if edges.is_empty() {
        for &k in &order {
            if k > 0 {
                edges.push(k - 1);
            }
            if k + 1 < nodes.len() {
                edges.push(k);
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let mut best: Option<(usize, f64)> = None;
    for k in edges {
        let delta = g.insertion_cost(nodes[k], v, nodes[k + 1]);
        if path.cost + delta > g.budget {
            continue;
        }
        if best.is_none_or(|(_, d)| delta < d) {
            best = Some((k + 1, delta));
        }
    }
    best
}

/// Repeatedly inserts the stop with the highest prize-per-detour until
/// nothing else fits.
pub fn add_operator(g: &RoutingGraph, path: &mut Path, visited: &mut [bool]) {
    loop {
        let mut best: Option<(usize, usize, f64, f64)> = None;
        for v in 1..=g.n_nodes() {
            if visited[g.node_zone[v]] {
                continue;
            }
            let Some((idx, delta)) = best_slot(g, path, v) else { continue };
            let value = ratio_value(g.node_prize(v), delta);
            if best.is_none_or(|(_, _, _, bv)| value > bv) {
                best = Some((v, idx, delta, value));
            }
        }
        let Some((v, idx, delta, _)) = best else { return };
        path.nodes.insert(idx, v);
        path.cost += delta;
        path.prize += g.node_prize(v);
        visited[g.node_zone[v]] = true;
    }
}

/// Compound improvement test: more prize by at least `eps`, or the same
/// prize for at least `eps` less cost.
pub fn improves(candidate: &Path, incumbent: Option<&Path>, eps: f64) -> bool {
    match incumbent {
        None => true,
        Some(gb) => {
            candidate.prize >= gb.prize + eps
                || ((candidate.prize - gb.prize).abs() <= PRIZE_TIE && candidate.cost <= gb.cost - eps)
        }
    }
}

/// Best path of a previous run, carried into the next run on a perturbed graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Inheritance {
    pub nodes: Vec<usize>,
    pub prize: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcsOutcome {
    pub best: Path,
    pub tau0: f64,
    pub iterations: usize,
    /// Global best `(prize, cost)` after each iteration.
    pub history: Vec<(f64, f64)>,
}

/// Initial pheromone: from the inherited best when it collected a prize,
/// otherwise from the nearest-neighbor walk.
pub fn colony_tau0(g: &RoutingGraph, inherited: Option<&Inheritance>) -> f64 {
    if let Some(h) = inherited {
        if h.prize > 0.0 && h.cost > 0.0 {
            return h.prize / h.cost;
        }
    }
    let nn = nearest_neighbor_path(g);
    initial_pheromone(nn.prize, nn.cost, nn.nodes.len())
}

fn construct_ant(g: &RoutingGraph, tau: &PheromoneMatrix, params: &AcsParams, rng: &mut ChaCha8Rng) -> (Path, Vec<bool>) {
    let mut visited = vec![false; g.n_zones()];
    let mut nodes = vec![0];
    let mut cost = 0.0;
    let first = feasible_candidates(g, 0, 0.0, &visited);
    if !first.is_empty() {
        let mut current = first[rng.gen_range(0..first.len())];
        loop {
            cost += g.leg(*nodes.last().unwrap(), current) + g.visit_costs[current];
            visited[g.node_zone[current]] = true;
            nodes.push(current);
            let cands = feasible_candidates(g, current, cost, &visited);
            if cands.is_empty() {
                break;
            }
            current = select_next(g, current, &cands, tau, params.beta, params.q0, rng);
        }
    }
    nodes.push(g.end());
    (Path::evaluate(g, nodes), visited)
}

/// Repairs a path (drop while over budget, then add) in place.
pub fn repair(g: &RoutingGraph, path: &mut Path) {
    let mut visited = path.visited_zones(g);
    drop_operator(g, path, &mut visited);
    add_operator(g, path, &mut visited);
}

/// Runs the colony. With `inherited`, the previous best is re-evaluated on
/// this graph, repaired, installed as the starting global best and deposited
/// once before the first iteration.
pub fn run_colony(g: &RoutingGraph, params: &AcsParams, seed: u64, inherited: Option<&Inheritance>) -> AcsOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau0 = colony_tau0(g, inherited);
    let mut tau = PheromoneMatrix::new(g.n_nodes() + 2, tau0);
    let mut gb: Option<Path> = None;

    if let Some(h) = inherited {
        let mut p = Path::evaluate(g, h.nodes.clone());
        repair(g, &mut p);
        if p.cost > 0.0 {
            tau.global_update(&p.nodes, params.alpha, p.prize / p.cost);
        }
        gb = Some(p);
    }

    let mut history = Vec::new();
    let mut no_impr = 0;
    let mut iterations = 0;
    for _ in 0..params.n_iter {
        if no_impr >= params.max_no_impr {
            break;
        }
        iterations += 1;
        let mut lb: Option<Path> = None;
        for _ in 0..params.n_ants {
            let (mut path, mut visited) = construct_ant(g, &tau, params, &mut rng);
            two_opt(g, &mut path, params.eps_impr);
            if !path.is_feasible(g) {
                drop_operator(g, &mut path, &mut visited);
            }
            add_operator(g, &mut path, &mut visited);
            tau.local_update_path(&path.nodes, params.rho);
            if lb.as_ref().is_none_or(|b| path.better_than(b)) {
                lb = Some(path);
            }
        }
        let lb = lb.unwrap_or_else(|| Path::depots_only(g));
        if improves(&lb, gb.as_ref(), params.eps_impr) {
            let deposit = if lb.cost > 0.0 { lb.prize / lb.cost } else { lb.prize };
            tau.global_update(&lb.nodes, params.alpha, deposit);
            gb = Some(lb);
            no_impr = 0;
        } else {
            no_impr += 1;
        }
        let b = gb.as_ref().unwrap();
        history.push((b.prize, b.cost));
    }
    let best = gb.unwrap_or_else(|| Path::depots_only(g));
    AcsOutcome { best, tau0, iterations, history }
}

/// Set orienteering over zone vertices.
pub fn solve_sop(g: &RoutingGraph, params: &AcsParams, seed: u64) -> Path {
    run_colony(g, params, seed, None).best
}
