//! Randomized Steiner Zone discretization.
//!
//! Circles are grouped greedily into Steiner Zones: convex regions where all
//! member disks overlap, so one waypoint inside the zone serves every member.
//! Each pass scans the circles in some order, seeds a zone with the first
//! unassigned circle and absorbs later circles that keep the zone valid. The
//! first pass uses the input order, later passes use seeded shuffles, and the
//! layout with the fewest zones wins.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::{circle_intersections, Circle, Point, EPS};
use crate::instance::{Instance, TargetCircle};

/// Vertices closer than this are the same vertex.
const VERTEX_MERGE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct SteinerZone {
    pub id: usize,
    /// Member circles in insertion order.
    pub members: Vec<TargetCircle>,
    /// Corners of the zone, counterclockwise around `center`.
    pub vertices: Vec<Point>,
    pub center: Point,
    pub prize: f64,
}

impl SteinerZone {
    pub fn singleton(id: usize, c: TargetCircle) -> SteinerZone {
        SteinerZone { id, members: vec![c], vertices: Vec::new(), center: c.circle.center, prize: c.prize }
    }

    pub fn degree(&self) -> usize {
        self.members.len()
    }

    pub fn member_ids(&self) -> Vec<u32> {
        self.members.iter().map(|m| m.id).collect()
    }

    pub fn circles(&self) -> impl Iterator<Item = &Circle> + '_ {
        self.members.iter().map(|m| &m.circle)
    }

    /// Inside every member disk.
    pub fn contains(&self, p: Point, eps: f64) -> bool {
        self.circles().all(|c| c.contains(p, eps))
    }

    /// Largest amount by which `p` sits outside any member (negative when inside all).
    pub fn violation(&self, p: Point) -> f64 {
        self.circles()
            .map(|c| p.dist(c.center) - c.radius)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Discrete stand-ins for the zone: its vertices, or the center for a
    /// single circle.
    pub fn representative_points(&self) -> Vec<Point> {
        if self.vertices.is_empty() {
            vec![self.center]
        } else {
            self.vertices.clone()
        }
    }
}

/// Mean of the vertices; the circle center for a single-circle zone.
pub fn zone_center(zone: &SteinerZone) -> Point {
    if zone.degree() == 1 || zone.vertices.is_empty() {
        return zone.members[0].circle.center;
    }
    let n = zone.vertices.len() as f64;
    let sum = zone.vertices.iter().fold(Point::default(), |acc, &v| acc + v);
    sum * (1.0 / n)
}

/// Attempts to grow `zone` by `candidate`.
///
/// The candidate must meet every member, and every intersecting pair of the
/// enlarged member set must keep at least one intersection point inside all
/// the other members. On success the vertex list is rebuilt from all pairwise
/// intersection points lying in every member.
pub fn try_add_circle(zone: &SteinerZone, candidate: &TargetCircle, eps: f64) -> Option<SteinerZone> {
    for m in &zone.members {
        let d = m.circle.center.dist(candidate.circle.center);
        if d > m.circle.radius + candidate.circle.radius + eps {
            return None;
        }
    }
    let mut members = zone.members.clone();
    members.push(*candidate);

    let mut vertices: Vec<Point> = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (a, b) = (&members[i].circle, &members[j].circle);
            let pts = circle_intersections(a, b, eps).ok()?;
            let mut any = false;
            for p in pts {
                let inside_rest = members
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .all(|(_, m)| m.circle.contains(p, eps));
                if inside_rest {
                    any = true;
                    if vertices.iter().all(|v| v.dist(p) > VERTEX_MERGE_TOL) {
                        vertices.push(p);
                    }
                }
            }
            if !any {
                return None;
            }
        }
    }

    let mut out = SteinerZone {
        id: zone.id,
        prize: members.iter().map(|m| m.prize).sum(),
        members,
        vertices,
        center: Point::default(),
    };
    out.center = zone_center(&out);
    let c = out.center;
    out.vertices
        .sort_by(|p, q| (p.y - c.y).atan2(p.x - c.x).total_cmp(&(q.y - c.y).atan2(q.x - c.x)));
    Some(out)
}

/// One greedy pass over `circles` in the given order.
pub fn build_layout_once(circles: &[TargetCircle], max_degree: usize, eps: f64) -> Vec<SteinerZone> {
    let mut used = vec![false; circles.len()];
    let mut zones = Vec::new();
    for i in 0..circles.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut zone = SteinerZone::singleton(zones.len(), circles[i]);
        for j in i + 1..circles.len() {
            if zone.degree() >= max_degree {
                break;
            }
            if used[j] {
                continue;
            }
            if let Some(grown) = try_add_circle(&zone, &circles[j], eps) {
                zone = grown;
                used[j] = true;
            }
        }
        zones.push(zone);
    }
    zones
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RszdParams {
    pub n_iter: usize,
    pub max_degree: usize,
    pub eps: f64,
}

impl Default for RszdParams {
    fn default() -> Self {
        RszdParams { n_iter: 10, max_degree: usize::MAX, eps: EPS }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SzLayout {
    pub zones: Vec<SteinerZone>,
    pub source_instance: String,
    pub seed: u64,
    pub iterations_used: usize,
}

/// Runs `params.n_iter` greedy passes and keeps the layout with the fewest
/// zones (earliest pass on ties). Pass 1 uses the instance order; pass `t`
/// shuffles with stream `t` of the seeded generator.
pub fn rszd(instance: &Instance, params: &RszdParams, seed: u64) -> SzLayout {
    let n_iter = params.n_iter.max(1);
    let max_degree = params.max_degree.max(1);
    let (_, zones) = (0..n_iter)
        .into_par_iter()
        .map(|t| {
            let mut order = instance.circles.clone();
            if t > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t as u64);
                order.shuffle(&mut rng);
            }
            (t, build_layout_once(&order, max_degree, params.eps))
        })
        .min_by(|(ta, za), (tb, zb)| za.len().cmp(&zb.len()).then(ta.cmp(tb)))
        .expect("at least one pass");
    SzLayout { zones, source_instance: instance.name.clone(), seed, iterations_used: n_iter }
}

#[derive(Serialize, Deserialize)]
struct ZoneRecord {
    id: usize,
    circle_ids: Vec<u32>,
    vertices: Vec<[f64; 2]>,
    center: [f64; 2],
    prize: f64,
}

#[derive(Serialize, Deserialize)]
struct LayoutRecord {
    source_instance: String,
    zones: Vec<ZoneRecord>,
    seed: u64,
    iterations: usize,
}

impl SzLayout {
    pub fn total_prize(&self) -> f64 {
        self.zones.iter().map(|z| z.prize).sum()
    }

    pub fn to_json(&self) -> String {
        let rec = LayoutRecord {
            source_instance: self.source_instance.clone(),
            zones: self
                .zones
                .iter()
                .map(|z| ZoneRecord {
                    id: z.id,
                    circle_ids: z.member_ids(),
                    vertices: z.vertices.iter().map(|v| [v.x, v.y]).collect(),
                    center: [z.center.x, z.center.y],
                    prize: z.prize,
                })
                .collect(),
            seed: self.seed,
            iterations: self.iterations_used,
        };
        serde_json::to_string_pretty(&rec).expect("layout is always serializable")
    }

    /// Reads a layout written by [`SzLayout::to_json`], resolving circle ids
    /// against `instance`.
    pub fn from_json(text: &str, instance: &Instance) -> Result<SzLayout, String> {
        let rec: LayoutRecord = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let mut zones = Vec::with_capacity(rec.zones.len());
        for z in rec.zones {
            let members = z
                .circle_ids
                .iter()
                .map(|id| instance.circle_by_id(*id).copied().ok_or_else(|| format!("unknown circle id {id}")))
                .collect::<Result<Vec<_>, _>>()?;
            zones.push(SteinerZone {
                id: z.id,
                members,
                vertices: z.vertices.iter().map(|v| Point::new(v[0], v[1])).collect(),
                center: Point::new(z.center[0], z.center[1]),
                prize: z.prize,
            });
        }
        Ok(SzLayout { zones, source_instance: rec.source_instance, seed: rec.seed, iterations_used: rec.iterations })
    }
}
