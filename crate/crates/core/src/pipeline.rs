//! End-to-end solver pipelines shared by the CLI and the benchmark harness.

use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::acs::{solve_sop, AcsParams};
use crate::arc_search::refine_ceop;
use crate::instance::{Instance, InstanceError, ProblemKind, Solution};
use crate::pso::{solve_tddp, PsoError, PsoParams, PsoStats};
use crate::routing::{path_to_solution, RoutingGraph};
use crate::rszd::{rszd, RszdParams, SzLayout};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Discrete tour over zone vertices.
    Sop,
    /// Discrete tour refined by arc search and insertion.
    Ceop,
    /// Truck-and-drone delivery.
    Tddp,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Sop => "sop",
            Mode::Ceop => "ceop",
            Mode::Tddp => "tddp",
        }
    }

    pub fn algorithm_name(&self) -> &'static str {
        match self {
            Mode::Sop => "rszd-acs",
            Mode::Ceop => "rszd-acs-arc",
            Mode::Tddp => "rszd-pso-iacs",
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sop" => Ok(Mode::Sop),
            "ceop" => Ok(Mode::Ceop),
            "tddp" => Ok(Mode::Tddp),
            other => Err(format!("unknown mode {other:?} (expected sop, ceop or tddp)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub rszd: RszdParams,
    pub acs: AcsParams,
    pub pso: PsoParams,
    pub refine_rounds: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { rszd: RszdParams::default(), acs: AcsParams::default(), pso: PsoParams::default(), refine_rounds: 5 }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("invalid instance: {0}")]
    Invalid(#[from] InstanceError),
    #[error("mode tddp needs a TDDP instance")]
    NotTddp,
    #[error(transparent)]
    Pso(#[from] PsoError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutput {
    pub solution: Solution,
    pub layout: SzLayout,
    pub pso_stats: Option<PsoStats>,
}

/// Discretization parameters for a mode: TDDP caps the zone degree at the
/// number of drones.
pub fn layout_params(instance: &Instance, mode: Mode, cfg: &SolverConfig) -> RszdParams {
    let mut p = cfg.rszd;
    if mode == Mode::Tddp {
        if let Some(t) = &instance.tddp {
            p.max_degree = p.max_degree.min(t.n_drones);
        }
    }
    p
}

pub fn solve(instance: &Instance, mode: Mode, cfg: &SolverConfig, seed: u64) -> Result<SolveOutput, SolveError> {
    let clock = Instant::now();
    instance.validate()?;
    if mode == Mode::Tddp && (instance.kind != ProblemKind::Tddp || instance.tddp.is_none()) {
        return Err(SolveError::NotTddp);
    }
    let layout = rszd(instance, &layout_params(instance, mode, cfg), seed);
    let (mut solution, pso_stats) = match mode {
        Mode::Sop | Mode::Ceop => {
            let g = RoutingGraph::sop_for_instance(&layout, instance);
            let path = solve_sop(&g, &cfg.acs, seed);
            let mut sol = path_to_solution(&g, &layout, &path, &instance.name, mode.algorithm_name(), seed);
            if mode == Mode::Ceop {
                sol = refine_ceop(&sol, &layout, instance.depot_start, instance.depot_end, cfg.refine_rounds);
            }
            (sol, None)
        }
        Mode::Tddp => {
            let report = solve_tddp(instance, &layout, &cfg.pso, &cfg.acs, seed)?;
            (report.solution, Some(report.stats))
        }
    };
    solution.runtime_s = clock.elapsed().as_secs_f64();
    Ok(SolveOutput { solution, layout, pso_stats })
}
