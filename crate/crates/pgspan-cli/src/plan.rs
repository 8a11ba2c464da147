//! Sweep plan files: line-oriented `key = value`, `#` comments.
//!
//! Keys: `gen` (repeatable generator spec), `t` (comma list), `algo`
//! (comma list of seq|par), `strategy` (comma list), `seeds` (comma list or
//! `a..b` inclusive range), `girth` (bool), `arboricity_budget` (int),
//! `routing_probe` (bool), `out` (default output path).

use pgspan::error::{Error, Result};
use pgspan::generate::Family;

use crate::commands::{Algo, StrategyArg};

#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub gens: Vec<Family>,
    pub ts: Vec<u32>,
    pub algos: Vec<Algo>,
    pub strategies: Vec<StrategyArg>,
    pub seeds: Vec<u64>,
    pub girth: bool,
    pub arboricity_budget: usize,
    pub routing_probe: bool,
    pub out: Option<String>,
}

impl Default for SweepPlan {
    fn default() -> Self {
        SweepPlan {
            gens: Vec::new(),
            ts: Vec::new(),
            algos: vec![Algo::Par],
            strategies: vec![StrategyArg::Greedy],
            seeds: vec![0],
            girth: true,
            arboricity_budget: 256,
            routing_probe: false,
            out: None,
        }
    }
}

impl SweepPlan {
    pub fn instance_count(&self) -> usize {
        self.gens.len() * self.ts.len() * self.algos.len() * self.strategies.len() * self.seeds.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.instance_count() == 0 {
            return Err(Error::param(
                "sweep plan has an empty cross product (need gen, t, algo, strategy, seeds)"
                    .to_string(),
            ));
        }
        Ok(())
    }
}

fn parse_seeds(value: &str) -> Result<Vec<u64>> {
    if let Some((a, b)) = value.split_once("..") {
        let a: u64 = a
            .trim()
            .parse()
            .map_err(|_| Error::param(format!("invalid seed range start '{a}'")))?;
        let b: u64 = b
            .trim()
            .parse()
            .map_err(|_| Error::param(format!("invalid seed range end '{b}'")))?;
        if b < a {
            return Err(Error::param(format!("empty seed range {a}..{b}")));
        }
        return Ok((a..=b).collect());
    }
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::param(format!("invalid seed '{s}'")))
        })
        .collect()
}

fn parse_bool(value: &str, line: usize) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(Error::Parse { line, msg: format!("invalid boolean '{other}'") }),
    }
}

pub fn parse_plan(text: &str) -> Result<SweepPlan> {
    let mut plan = SweepPlan::default();
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or(Error::Parse { line: line_no, msg: format!("expected 'key = value', got '{line}'") })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "gen" => {
                for spec in value.split(',') {
                    plan.gens.push(spec.trim().parse()?);
                }
            }
            "t" => {
                plan.ts = value
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse { line: line_no, msg: format!("invalid t '{s}'") })
                    })
                    .collect::<Result<_>>()?;
            }
            "algo" => {
                plan.algos = value
                    .split(',')
                    .map(|s| s.trim().parse())
                    .collect::<Result<_>>()?;
            }
            "strategy" => {
                plan.strategies = value
                    .split(',')
                    .map(|s| s.trim().parse())
                    .collect::<Result<_>>()?;
            }
            "seeds" => plan.seeds = parse_seeds(value)?,
            "girth" => plan.girth = parse_bool(value, line_no)?,
            "arboricity_budget" => {
                plan.arboricity_budget = value
                    .parse()
                    .map_err(|_| Error::Parse { line: line_no, msg: format!("invalid budget '{value}'") })?;
            }
            "routing_probe" => plan.routing_probe = parse_bool(value, line_no)?,
            "out" => plan.out = Some(value.to_string()),
            other => {
                return Err(Error::Parse { line: line_no, msg: format!("unknown plan key '{other}'") })
            }
        }
    }
    plan.validate()?;
    Ok(plan)
}
