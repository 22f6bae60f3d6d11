//! Instance and solution data model, the `CEOPINST` text format, and the
//! solution JSON schema.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Circle, GeometryError, Point, EPS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("missing required field {0}")]
    MissingField(&'static str),
    #[error("instance has no target circles")]
    NoCircles,
    #[error("duplicate circle id {0}")]
    DuplicateId(u32),
    #[error("non-uniform radii: circle {id} has radius {radius}, expected {expected}")]
    NonUniformRadii { id: u32, radius: f64, expected: f64 },
    #[error("circle {outer} contains circle {inner}")]
    ContainedCircle { outer: u32, inner: u32 },
    #[error("circle {0} has a negative prize")]
    NegativePrize(u32),
    #[error("TDDP instance lacks the TDDP parameter line")]
    MissingTddpParams,
    #[error("invalid TDDP parameters: {0}")]
    InvalidTddpParams(String),
    #[error("circle {0} has no flight efficiency (lambda)")]
    MissingLambda(u32),
    #[error("circle {id} has flight efficiency {lambda} outside (0, 1]")]
    LambdaOutOfRange { id: u32, lambda: f64 },
    #[error("budget must be positive, got {0}")]
    NonPositiveBudget(f64),
    #[error("budget {budget} is below the direct depot leg {required}")]
    BudgetBelowDepotLeg { budget: f64, required: f64 },
    #[error("budget level needs BESTKNOWN")]
    BudgetLevelWithoutBestKnown,
    #[error("all nodes coincide; overlap ratio undefined")]
    DegenerateExtent,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProblemKind {
    #[serde(rename = "CEOP")]
    Ceop,
    #[serde(rename = "TDDP")]
    Tddp,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Ceop => "CEOP",
            ProblemKind::Tddp => "TDDP",
        }
    }
}

impl FromStr for ProblemKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "CEOP" => Ok(ProblemKind::Ceop),
            "TDDP" => Ok(ProblemKind::Tddp),
            other => Err(format!("unknown problem kind {other:?}")),
        }
    }
}

/// A customer or target: its neighborhood, prize and optional drone flight efficiency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetCircle {
    pub id: u32,
    pub circle: Circle,
    pub prize: f64,
    pub lambda: Option<f64>,
}

/// Truck-and-drone constants. Speeds in km/h, service time in hours.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TddpParams {
    pub v_drone: f64,
    pub v_truck: f64,
    pub t_serv: f64,
    pub n_drones: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

impl Default for TddpParams {
    fn default() -> Self {
        TddpParams {
            v_drone: 90.0,
            v_truck: 60.0,
            t_serv: 5.0 / 60.0,
            n_drones: 5,
            lambda_min: 0.8,
            lambda_max: 1.0,
        }
    }
}

impl TddpParams {
    pub fn validate(&self) -> Result<(), InstanceError> {
        let bad = |m: &str| Err(InstanceError::InvalidTddpParams(m.to_string()));
        if !(self.v_drone > 0.0 && self.v_drone.is_finite()) {
            return bad("v_drone must be positive");
        }
        if !(self.v_truck > 0.0 && self.v_truck.is_finite()) {
            return bad("v_truck must be positive");
        }
        if !(self.t_serv >= 0.0 && self.t_serv.is_finite()) {
            return bad("t_serv must be non-negative");
        }
        if self.n_drones == 0 {
            return bad("n_drones must be at least 1");
        }
        if !(self.lambda_min > 0.0 && self.lambda_min <= self.lambda_max && self.lambda_max <= 1.0) {
            return bad("need 0 < lambda_min <= lambda_max <= 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    pub kind: ProblemKind,
    pub depot_start: Point,
    pub depot_end: Point,
    pub circles: Vec<TargetCircle>,
    pub best_known: Option<f64>,
    /// Distance units for CEOP, hours for TDDP.
    pub budget: f64,
    pub tddp: Option<TddpParams>,
}

/// `best_known * level`.
pub fn compute_budget(best_known: f64, level: f64) -> f64 {
    best_known * level
}

impl Instance {
    /// Uniform radius shared by all circles.
    pub fn radius(&self) -> f64 {
        self.circles.first().map(|c| c.circle.radius).unwrap_or(0.0)
    }

    pub fn circle_by_id(&self, id: u32) -> Option<&TargetCircle> {
        self.circles.iter().find(|c| c.id == id)
    }

    /// Cost of going straight from the start to the end depot, in budget units.
    pub fn depot_leg_cost(&self) -> f64 {
        let d = self.depot_start.dist(self.depot_end);
        match (self.kind, &self.tddp) {
            (ProblemKind::Tddp, Some(p)) => d / p.v_truck,
            _ => d,
        }
    }

    /// Budget derived from the best-known CETSP cost at the given level.
    /// TDDP budgets are converted to hours with the truck speed.
    pub fn budget_for_level(&self, level: f64) -> Result<f64, InstanceError> {
        let best = self.best_known.ok_or(InstanceError::BudgetLevelWithoutBestKnown)?;
        let budget = compute_budget(best, level);
        Ok(match (self.kind, &self.tddp) {
            (ProblemKind::Tddp, Some(p)) => budget / p.v_truck,
            _ => budget,
        })
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.circles.is_empty() {
            return Err(InstanceError::NoCircles);
        }
        if !(self.depot_start.is_finite() && self.depot_end.is_finite()) {
            return Err(GeometryError::NonFinite.into());
        }
        let mut ids: Vec<u32> = self.circles.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(InstanceError::DuplicateId(w[0]));
        }
        let r0 = self.radius();
        for c in &self.circles {
            Circle::new(c.circle.center, c.circle.radius)?;
            if (c.circle.radius - r0).abs() > 1e-9 * r0.max(1.0) {
                return Err(InstanceError::NonUniformRadii { id: c.id, radius: c.circle.radius, expected: r0 });
            }
            if !(c.prize >= 0.0 && c.prize.is_finite()) {
                return Err(InstanceError::NegativePrize(c.id));
            }
            if let Some(l) = c.lambda {
                if !(l > 0.0 && l <= 1.0) {
                    return Err(InstanceError::LambdaOutOfRange { id: c.id, lambda: l });
                }
            }
        }
        for (i, a) in self.circles.iter().enumerate() {
            for b in &self.circles[i + 1..] {
                let d = a.circle.center.dist(b.circle.center);
                if d + b.circle.radius <= a.circle.radius + EPS {
                    return Err(InstanceError::ContainedCircle { outer: a.id, inner: b.id });
                }
                if d + a.circle.radius <= b.circle.radius + EPS {
                    return Err(InstanceError::ContainedCircle { outer: b.id, inner: a.id });
                }
            }
        }
        if self.kind == ProblemKind::Tddp {
            let params = self.tddp.as_ref().ok_or(InstanceError::MissingTddpParams)?;
            params.validate()?;
            if let Some(c) = self.circles.iter().find(|c| c.lambda.is_none()) {
                return Err(InstanceError::MissingLambda(c.id));
            }
        }
        if !(self.budget > 0.0 && self.budget.is_finite()) {
            return Err(InstanceError::NonPositiveBudget(self.budget));
        }
        let required = self.depot_leg_cost();
        if self.budget < required {
            return Err(InstanceError::BudgetBelowDepotLeg { budget: self.budget, required });
        }
        Ok(())
    }

    /// Parses and validates an instance in the `CEOPINST 1` text format.
    pub fn parse(text: &str) -> Result<Instance, InstanceError> {
        Parser::default().run(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "CEOPINST 1");
        let _ = writeln!(out, "NAME {}", self.name);
        let _ = writeln!(out, "KIND {}", self.kind.as_str());
        if let Some(b) = self.best_known {
            let _ = writeln!(out, "BESTKNOWN {b}");
        }
        let _ = writeln!(out, "BUDGET {}", self.budget);
        let _ = writeln!(out, "DEPOT_START {} {}", self.depot_start.x, self.depot_start.y);
        let _ = writeln!(out, "DEPOT_END {} {}", self.depot_end.x, self.depot_end.y);
        if let Some(p) = &self.tddp {
            let _ = writeln!(
                out,
                "TDDP {} {} {} {} {} {}",
                p.v_drone, p.v_truck, p.t_serv, p.n_drones, p.lambda_min, p.lambda_max
            );
        }
        let _ = writeln!(out, "NODES {}", self.circles.len());
        for c in &self.circles {
            let _ = write!(
                out,
                "{} {} {} {} {}",
                c.id, c.circle.center.x, c.circle.center.y, c.circle.radius, c.prize
            );
            if let Some(l) = c.lambda {
                let _ = write!(out, " {l}");
            }
            out.push('\n');
        }
        out
    }

    /// Uniform radius over the larger side of the bounding box of all
    /// circle centers and both depots.
    pub fn overlap_ratio(&self) -> Result<f64, InstanceError> {
        let pts = self
            .circles
            .iter()
            .map(|c| c.circle.center)
            .chain([self.depot_start, self.depot_end]);
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in pts {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        let extent = (x1 - x0).max(y1 - y0);
        if !(extent > 0.0) {
            return Err(InstanceError::DegenerateExtent);
        }
        Ok(self.radius() / extent)
    }

    /// Min-max maps prizes onto `[lo, hi]`; a constant prize set maps to the midpoint.
    pub fn normalize_prizes(&self, lo: f64, hi: f64) -> Instance {
        let mut out = self.clone();
        let (pmin, pmax) = self
            .circles
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), c| (a.min(c.prize), b.max(c.prize)));
        for c in &mut out.circles {
            c.prize = if pmax > pmin {
                lo + (hi - lo) * (c.prize - pmin) / (pmax - pmin)
            } else {
                0.5 * (lo + hi)
            };
        }
        out
    }
}

impl FromStr for Instance {
    type Err = InstanceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Instance::parse(s)
    }
}

#[derive(Default)]
struct Parser {
    name: Option<String>,
    kind: Option<ProblemKind>,
    best_known: Option<f64>,
    budget: Option<f64>,
    budget_level: Option<f64>,
    depot_start: Option<Point>,
    depot_end: Option<Point>,
    tddp: Option<TddpParams>,
    circles: Vec<TargetCircle>,
}

fn perr(line: usize, reason: impl Into<String>) -> InstanceError {
    InstanceError::Parse { line, reason: reason.into() }
}

fn num<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, InstanceError> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse::<T>().map_err(|_| perr(line, format!("invalid {what}: {tok:?}")))
}

fn finite(v: f64, line: usize, what: &str) -> Result<f64, InstanceError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(perr(line, format!("{what} must be finite")))
    }
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Instance, InstanceError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        match lines.next() {
            Some((_, l)) if l.split_whitespace().eq(["CEOPINST", "1"]) => {}
            Some((n, l)) => return Err(perr(n, format!("expected header `CEOPINST 1`, found {l:?}"))),
            None => return Err(perr(1, "empty input")),
        }

        let mut expected_nodes: Option<(usize, usize)> = None;
        while let Some((n, line)) = lines.next() {
            let mut toks = line.split_whitespace();
            let key = toks.next().unwrap_or_default();
            match key {
                "NAME" => {
                    let rest = line["NAME".len()..].trim();
                    if rest.is_empty() {
                        return Err(perr(n, "empty NAME"));
                    }
                    self.name = Some(rest.to_string());
                    continue;
                }
                "KIND" => {
                    let v = toks.next().ok_or_else(|| perr(n, "missing kind"))?;
                    self.kind = Some(v.parse().map_err(|e: String| perr(n, e))?);
                }
                "BESTKNOWN" => self.best_known = Some(finite(num(toks.next(), n, "best-known cost")?, n, "BESTKNOWN")?),
                "BUDGET" => self.budget = Some(finite(num(toks.next(), n, "budget")?, n, "BUDGET")?),
                "BUDGET_LEVEL" => {
                    self.budget_level = Some(finite(num(toks.next(), n, "budget level")?, n, "BUDGET_LEVEL")?)
                }
                "DEPOT_START" | "DEPOT_END" => {
                    let x = finite(num(toks.next(), n, "x")?, n, "x")?;
                    let y = finite(num(toks.next(), n, "y")?, n, "y")?;
                    let p = Some(Point::new(x, y));
                    if key == "DEPOT_START" {
                        self.depot_start = p;
                    } else {
                        self.depot_end = p;
                    }
                }
                "TDDP" => {
                    self.tddp = Some(TddpParams {
                        v_drone: num(toks.next(), n, "v_drone")?,
                        v_truck: num(toks.next(), n, "v_truck")?,
                        t_serv: num(toks.next(), n, "t_serv")?,
                        n_drones: num(toks.next(), n, "n_drones")?,
                        lambda_min: num(toks.next(), n, "lambda_min")?,
                        lambda_max: num(toks.next(), n, "lambda_max")?,
                    });
                }
                "NODES" => {
                    let count: usize = num(toks.next(), n, "node count")?;
                    expected_nodes = Some((count, n));
                    if toks.next().is_some() {
                        return Err(perr(n, "trailing tokens"));
                    }
                    for _ in 0..count {
                        let (ln, node) = lines
                            .next()
                            .ok_or_else(|| perr(n, format!("expected {count} node lines")))?;
                        self.circles.push(parse_node(ln, node)?);
                    }
                    continue;
                }
                other => return Err(perr(n, format!("unknown keyword {other:?}"))),
            }
            if toks.next().is_some() {
                return Err(perr(n, "trailing tokens"));
            }
        }
        if expected_nodes.is_none() {
            return Err(InstanceError::MissingField("NODES"));
        }

        let kind = self.kind.ok_or(InstanceError::MissingField("KIND"))?;
        let mut inst = Instance {
            name: self.name.ok_or(InstanceError::MissingField("NAME"))?,
            kind,
            depot_start: self.depot_start.ok_or(InstanceError::MissingField("DEPOT_START"))?,
            depot_end: self.depot_end.ok_or(InstanceError::MissingField("DEPOT_END"))?,
            circles: self.circles,
            best_known: self.best_known,
            budget: 0.0,
            tddp: self.tddp,
        };
        inst.budget = match (self.budget, self.budget_level) {
            (Some(b), None) => b,
            (None, Some(level)) => inst.budget_for_level(level)?,
            (Some(_), Some(_)) => return Err(perr(0, "give only one of BUDGET and BUDGET_LEVEL")),
            (None, None) => return Err(InstanceError::MissingField("BUDGET or BUDGET_LEVEL")),
        };
        inst.validate()?;
        Ok(inst)
    }
}

fn parse_node(n: usize, line: &str) -> Result<TargetCircle, InstanceError> {
    let mut toks = line.split_whitespace();
    let id: u32 = num(toks.next(), n, "node id")?;
    if id == 0 {
        return Err(perr(n, "node ids start at 1"));
    }
    let x = finite(num(toks.next(), n, "x")?, n, "x")?;
    let y = finite(num(toks.next(), n, "y")?, n, "y")?;
    let r: f64 = num(toks.next(), n, "radius")?;
    let prize = finite(num(toks.next(), n, "prize")?, n, "prize")?;
    let lambda = match toks.next() {
        Some(t) => Some(finite(num(Some(t), n, "lambda")?, n, "lambda")?),
        None => None,
    };
    if toks.next().is_some() {
        return Err(perr(n, "trailing tokens"));
    }
    let circle = Circle::new(Point::new(x, y), r).map_err(|e| perr(n, e.to_string()))?;
    Ok(TargetCircle { id, circle, prize, lambda })
}

/// One stop of a solution path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Visit {
    pub zone_id: usize,
    pub circle_ids: Vec<u32>,
    pub x: f64,
    pub y: f64,
}

impl Visit {
    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// A solver result. The depots are implicit at both ends of `sequence`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub instance_name: String,
    pub algorithm: String,
    pub seed: u64,
    pub prize: f64,
    pub cost: f64,
    pub budget: f64,
    pub runtime_s: f64,
    pub sequence: Vec<Visit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncated: Option<bool>,
}

impl Solution {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Solution, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Waypoints including both depots.
    pub fn polyline(&self, start: Point, end: Point) -> Vec<Point> {
        std::iter::once(start)
            .chain(self.sequence.iter().map(Visit::point))
            .chain(std::iter::once(end))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "CEOPINST 1
# two unit circles
NAME tiny
KIND CEOP
BUDGET 10
DEPOT_START 0 0
DEPOT_END 0 0
NODES 2
1 0 0 1 3
2 5 0 1 4
";

    #[test]
    fn minimal_file() {
        let inst = Instance::parse(MINIMAL).unwrap();
        assert_eq!(inst.circles.len(), 2);
        assert_eq!(inst.budget, 10.0);
        assert_eq!(inst.kind, ProblemKind::Ceop);
        assert_eq!(inst.circles[1].circle.center, Point::new(5.0, 0.0));
    }

    #[test]
    fn budget_from_level() {
        let text = MINIMAL.replace("BUDGET 10", "BESTKNOWN 349.13\nBUDGET_LEVEL 0.9");
        let inst = Instance::parse(&text).unwrap();
        assert!((inst.budget - 314.217).abs() < 1e-9);
        assert_eq!(format!("{:.2}", inst.budget), "314.22");
        assert!((compute_budget(349.13, 0.6) - 209.478).abs() < 1e-9);
        assert_eq!(format!("{:.2}", compute_budget(349.13, 0.3)), "104.74");
        assert_eq!(compute_budget(100.0, 1.0), 100.0);
    }

    #[test]
    fn tddp_budget_in_hours() {
        let text = "CEOPINST 1\nNAME t\nKIND TDDP\nBESTKNOWN 349.13\nBUDGET_LEVEL 1.2\n\
                    DEPOT_START 0 0\nDEPOT_END 0 0\nTDDP 90 60 0.08333333333333333 5 0.8 1\n\
                    NODES 1\n1 3 4 10 0.5 0.9\n";
        let inst = Instance::parse(text).unwrap();
        assert!((inst.budget - 6.9826).abs() < 1e-4);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = MINIMAL.replace("2 5 0 1 4", "2 5 zero 1 4");
        match Instance::parse(&bad) {
            Err(InstanceError::Parse { line, .. }) => assert_eq!(line, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(Instance::parse("hello"), Err(InstanceError::Parse { line: 1, .. })));
        let missing = MINIMAL.replace("NODES 2", "NODES 3");
        assert!(matches!(Instance::parse(&missing), Err(InstanceError::Parse { .. })));
    }

    #[test]
    fn validation_rules() {
        let nonuniform = MINIMAL.replace("2 5 0 1 4", "2 5 0 2 4");
        assert!(matches!(Instance::parse(&nonuniform), Err(InstanceError::NonUniformRadii { .. })));
        let contained = MINIMAL.replace("2 5 0 1 4", "2 0 0 1 4");
        assert!(matches!(Instance::parse(&contained), Err(InstanceError::ContainedCircle { .. })));
        let nonpositive = MINIMAL.replace("BUDGET 10", "BUDGET 0");
        assert!(matches!(Instance::parse(&nonpositive), Err(InstanceError::NonPositiveBudget(_))));
        let tddp = MINIMAL.replace("KIND CEOP", "KIND TDDP\nTDDP 90 60 0.1 5 0.8 1");
        assert!(matches!(Instance::parse(&tddp), Err(InstanceError::MissingLambda(1))));
        let no_params = MINIMAL.replace("KIND CEOP", "KIND TDDP");
        assert!(matches!(Instance::parse(&no_params), Err(InstanceError::MissingTddpParams)));
        let short = MINIMAL.replace("DEPOT_END 0 0", "DEPOT_END 20 0");
        assert!(matches!(Instance::parse(&short), Err(InstanceError::BudgetBelowDepotLeg { .. })));
    }

    #[test]
    fn overlap_ratio_cases() {
        let mut inst = Instance::parse(MINIMAL).unwrap();
        inst.circles[1].circle.center = Point::new(10.0, 4.0);
        assert!((inst.overlap_ratio().unwrap() - 0.1).abs() < 1e-12);
        for c in &mut inst.circles {
            c.circle.radius = 2.0;
        }
        inst.circles[1].circle.center = Point::new(100.0, 100.0);
        assert!((inst.overlap_ratio().unwrap() - 0.02).abs() < 1e-12);
        for c in &mut inst.circles {
            c.circle.radius = 5.0;
        }
        inst.circles[1].circle.center = Point::new(5.0, 5.0);
        assert!((inst.overlap_ratio().unwrap() - 1.0).abs() < 1e-12);
        for c in &mut inst.circles {
            c.circle.center = Point::new(0.0, 0.0);
        }
        assert_eq!(inst.overlap_ratio(), Err(InstanceError::DegenerateExtent));
    }

    #[test]
    fn prize_normalization() {
        let mut inst = Instance::parse(MINIMAL).unwrap();
        let mut third = inst.circles[1];
        third.id = 3;
        third.circle.center = Point::new(10.0, 0.0);
        inst.circles.push(third);
        for (c, p) in inst.circles.iter_mut().zip([1.0, 12.0, 6.5]) {
            c.prize = p;
        }
        let norm = inst.normalize_prizes(0.1, 0.9);
        let got: Vec<f64> = norm.circles.iter().map(|c| c.prize).collect();
        for (g, e) in got.iter().zip([0.1, 0.9, 0.5]) {
            assert!((g - e).abs() < 1e-12, "{got:?}");
        }
        for c in &mut inst.circles {
            c.prize = 7.0;
        }
        assert!(inst.normalize_prizes(0.1, 0.9).circles.iter().all(|c| c.prize == 0.5));
    }

    #[test]
    fn empty_solution_json() {
        let sol = Solution {
            instance_name: "x".into(),
            algorithm: "sop".into(),
            seed: 1,
            prize: 0.0,
            cost: 0.0,
            budget: 5.0,
            runtime_s: 0.0,
            sequence: vec![],
            truncated: None,
        };
        let v: serde_json::Value = serde_json::from_str(&sol.to_json()).unwrap();
        assert_eq!(v["prize"], 0.0);
        assert_eq!(v["sequence"], serde_json::json!([]));
        assert!(v.get("truncated").is_none());
        assert_eq!(Solution::from_json(&sol.to_json()).unwrap(), sol);
    }
}
