//! Multi-seed experiment batches, summary statistics and the settings score.

use rayon::prelude::*;
use serde::Serialize;

use crate::instance::Instance;
use crate::pipeline::{solve, Mode, SolverConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: String,
    pub seed: u64,
    pub budget: f64,
    pub prize: f64,
    pub cost: f64,
    pub runtime_s: f64,
    /// Set when the run failed; the numeric fields are then meaningless.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub instance: String,
    pub algorithm: String,
    pub budget: f64,
    pub prize_avg: f64,
    pub prize_sd: f64,
    pub cost_avg: f64,
    pub cost_sd: f64,
    pub time_avg_s: f64,
    pub time_sd_s: f64,
}

/// Mean and population standard deviation. Empty input gives `(NaN, NaN)`.
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// One summary row per `(instance, algorithm)`, skipping failed runs.
pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, String)> = Vec::new();
    for r in records {
        let k = (r.instance.clone(), r.algorithm.clone());
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(instance, algorithm)| {
            let ok: Vec<&RunRecord> =
                records.iter().filter(|r| r.instance == instance && r.algorithm == algorithm && r.error.is_none()).collect();
            let col = |f: fn(&RunRecord) -> f64| mean_sd(&ok.iter().map(|r| f(r)).collect::<Vec<_>>());
            let (prize_avg, prize_sd) = col(|r| r.prize);
            let (cost_avg, cost_sd) = col(|r| r.cost);
            let (time_avg_s, time_sd_s) = col(|r| r.runtime_s);
            let budget = ok.first().map_or(f64::NAN, |r| r.budget);
            SummaryRow { instance, algorithm, budget, prize_avg, prize_sd, cost_avg, cost_sd, time_avg_s, time_sd_s }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    pub records: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
}

/// Runs every `(instance, seed)` pair once on up to `jobs` threads. Failed
/// runs become records with `error` set; records are sorted by instance
/// name then seed.
pub fn run_batch(instances: &[Instance], mode: Mode, cfg: &SolverConfig, seeds: &[u64], jobs: usize) -> BatchResult {
    let pairs: Vec<(&Instance, u64)> = instances.iter().flat_map(|i| seeds.iter().map(move |&s| (i, s))).collect();
    let run = || {
        pairs
            .par_iter()
            .map(|&(inst, seed)| match solve(inst, mode, cfg, seed) {
                Ok(out) => RunRecord {
                    instance: inst.name.clone(),
                    algorithm: mode.algorithm_name().to_string(),
                    seed,
                    budget: inst.budget,
                    prize: out.solution.prize,
                    cost: out.solution.cost,
                    runtime_s: out.solution.runtime_s,
                    error: None,
                },
                Err(e) => RunRecord {
                    instance: inst.name.clone(),
                    algorithm: mode.algorithm_name().to_string(),
                    seed,
                    budget: inst.budget,
                    prize: f64::NAN,
                    cost: f64::NAN,
                    runtime_s: 0.0,
                    error: Some(e.to_string()),
                },
            })
            .collect::<Vec<_>>()
    };
    let mut records = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    records.sort_by(|a, b| a.instance.cmp(&b.instance).then(a.seed.cmp(&b.seed)));
    let summary = summarize(&records);
    BatchResult { records, summary }
}

/// Summary table as CSV (standard deviations are population SDs).
pub fn summary_csv(rows: &[SummaryRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Half-weight normalized cost plus half-weight normalized time, summed over
/// instances. `table[i][s] = (cost, time)` of setting `s` on instance `i`.
/// A term whose spread is zero contributes a full 1.0.
pub fn score_settings(table: &[Vec<(f64, f64)>]) -> Vec<f64> {
    let n_settings = table.first().map_or(0, |r| r.len());
    let mut scores = vec![0.0; n_settings];
    for row in table {
        let norm = |vals: Vec<f64>| -> Vec<f64> {
            let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
            vals.iter().map(|v| if max == min { 1.0 } else { (max - v) / (max - min) }).collect()
        };
        let c = norm(row.iter().map(|r| r.0).collect());
        let t = norm(row.iter().map(|r| r.1).collect());
        for s in 0..n_settings {
            scores[s] += 0.5 * (c[s] + t[s]);
        }
    }
    scores
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(prize: f64) -> RunRecord {
        RunRecord {
            instance: "a".into(),
            algorithm: "x".into(),
            seed: 0,
            budget: 1.0,
            prize,
            cost: 1.0,
            runtime_s: 0.5,
            error: None,
        }
    }

    #[test]
    fn stats() {
        assert_eq!(mean_sd(&[10.0, 14.0]), (12.0, 2.0));
        let rows = summarize(&[record(348.0), record(348.0)]);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].prize_sd, 0.0);
        let csv = summary_csv(&rows).unwrap();
        assert!(csv.starts_with("instance,algorithm,budget,prize_avg,prize_sd,cost_avg,cost_sd,time_avg_s,time_sd_s\n"));
    }

    #[test]
    fn scores() {
        let table = vec![vec![(1.0, 1.0), (2.0, 2.0)]; 9];
        let s = score_settings(&table);
        assert_eq!(s, vec![9.0, 0.0]);
        let tied = vec![vec![(1.0, 1.0), (1.0, 2.0)]];
        assert_eq!(score_settings(&tied), vec![1.0, 0.5]);
    }
}
