//! Surface-code overheads: code distance, magic-state factory choice,
//! tile and physical-qubit counts, and wall-clock runtime.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DEFAULT_FACTORIES: &str = include_str!("default_factories.json");

/// Distilled-state error as a function of the physical error rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutputError {
    /// `coefficient · p^exponent`.
    Power { coefficient: f64, exponent: f64 },
    Fixed(f64),
}

impl OutputError {
    pub fn at(&self, p: f64) -> f64 {
        match *self {
            OutputError::Power { coefficient, exponent } => coefficient * p.powf(exponent),
            OutputError::Fixed(e) => e,
        }
    }
}

/// Code cycles a factory needs per output state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CycleCount {
    /// Multiple of the code distance, i.e. logical timesteps.
    PerDistance { per_distance: f64 },
    Fixed(f64),
}

impl CycleCount {
    pub fn at(&self, d: u32) -> f64 {
        match *self {
            CycleCount::PerDistance { per_distance } => per_distance * d as f64,
            CycleCount::Fixed(c) => c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorySpec {
    pub name: String,
    pub output_error: OutputError,
    pub footprint_tiles: u64,
    pub cycles_per_state: CycleCount,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl FactorySpec {
    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(format!("factory `{}`: {m}", self.name)));
        if self.footprint_tiles == 0 {
            return bad("footprint must be positive");
        }
        match self.cycles_per_state {
            CycleCount::PerDistance { per_distance: c } | CycleCount::Fixed(c) if !(c > 0.0 && c.is_finite()) => {
                return bad("cycles per state must be positive")
            }
            _ => {}
        }
        match self.output_error {
            OutputError::Power { coefficient, exponent } if !(coefficient > 0.0 && exponent > 0.0) => {
                bad("output error coefficient and exponent must be positive")
            }
            OutputError::Fixed(e) if !(e > 0.0 && e < 1.0) => bad("output error must lie in (0, 1)"),
            _ => Ok(()),
        }
    }
}

pub fn default_factories() -> Vec<FactorySpec> {
    serde_json::from_str(DEFAULT_FACTORIES).expect("bundled factory list parses")
}

pub fn parse_factories(json: &str) -> Result<Vec<FactorySpec>> {
    let list: Vec<FactorySpec> = serde_json::from_str(json)?;
    if list.is_empty() {
        return Err(Error::InvalidArgument("factory list is empty".into()));
    }
    list.iter().try_for_each(FactorySpec::validate)?;
    Ok(list)
}

pub fn load_factories(path: &Path) -> Result<Vec<FactorySpec>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_factories(&text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtqcConfig {
    pub p_phys: f64,
    /// Seconds per code cycle.
    pub t_cycle: f64,
    pub budget_distill: f64,
    pub budget_logical: f64,
    pub routing_fraction: f64,
    pub factories: Vec<FactorySpec>,
}

impl FtqcConfig {
    pub fn new(p_phys: f64) -> Self {
        Self {
            p_phys,
            t_cycle: 1e-6,
            budget_distill: 0.001,
            budget_logical: 0.009,
            routing_fraction: 0.2,
            factories: default_factories(),
        }
    }

    pub fn budget_total(&self) -> f64 {
        self.budget_distill + self.budget_logical
    }

    fn validate(&self) -> Result<()> {
        if self.p_phys.is_nan() || self.p_phys <= 0.0 {
            return Err(Error::InvalidArgument(format!("physical error rate must be positive, got {}", self.p_phys)));
        }
        if !(self.t_cycle > 0.0 && self.budget_distill > 0.0 && self.budget_logical > 0.0 && self.routing_fraction >= 0.0) {
            return Err(Error::InvalidArgument("cycle time, budgets must be positive and routing nonnegative".into()));
        }
        if self.factories.is_empty() {
            return Err(Error::InvalidArgument("factory list is empty".into()));
        }
        self.factories.iter().try_for_each(FactorySpec::validate)
    }
}

/// `P_L(d) = 0.1 · (100p)^((d+1)/2)`.
pub fn logical_error_rate(p: f64, d: u32) -> f64 {
    0.1 * (100.0 * p).powf((d as f64 + 1.0) / 2.0)
}

/// Smallest odd `d` with `volume · P_L(d) ≤ budget`.
pub fn code_distance_for_volume(p: f64, volume: f64, budget: f64) -> Result<u32> {
    if p.is_nan() || 100.0 * p >= 1.0 {
        return Err(Error::AboveThreshold(p));
    }
    if !(volume > 0.0 && budget > 0.0) {
        return Err(Error::InvalidArgument("failure volume and budget must be positive".into()));
    }
    // log-space: ln V + ln 0.1 + k ln(100p) ≤ ln budget, k = (d+1)/2
    let ln_rate = (100.0 * p).ln();
    let need = (budget.ln() - volume.ln() - 0.1f64.ln()) / ln_rate;
    let mut k = need.ceil().max(1.0);
    // guard against rounding on either side of the boundary
    while k > 1.0 && volume * 0.1 * (100.0 * p).powf(k - 1.0) <= budget {
        k -= 1.0;
    }
    while volume * 0.1 * (100.0 * p).powf(k) > budget {
        k += 1.0;
    }
    if k > (u32::MAX / 2) as f64 {
        return Err(Error::Overflow("code distance"));
    }
    Ok(2 * k as u32 - 1)
}

/// Code distance for `tiles` logical patches over `timesteps` logical
/// timesteps, with `P_L` taken per tile per timestep.
pub fn code_distance(p: f64, tiles: u64, timesteps: u64, budget: f64) -> Result<u32> {
    code_distance_for_volume(p, tiles as f64 * timesteps as f64, budget)
}

/// Smallest-footprint factory whose total distillation error over
/// `t_count` states stays within `budget`, and how many copies supply one
/// state per logical timestep at distance `d`.
pub fn select_factory(
    p: f64,
    t_count: u64,
    budget: f64,
    factories: &[FactorySpec],
    d: u32,
) -> Result<(&FactorySpec, u64)> {
    let mut best: Option<&FactorySpec> = None;
    for f in factories {
        let e = f.output_error.at(p);
        if e < 1.0 && t_count as f64 * e <= budget && best.is_none_or(|b| f.footprint_tiles < b.footprint_tiles) {
            best = Some(f);
        }
    }
    let f = best.ok_or(Error::NoFactory { required: budget / t_count.max(1) as f64, p_phys: p })?;
    let n = (f.cycles_per_state.at(d) / d as f64 - 1e-9).ceil().max(1.0) as u64;
    Ok((f, n))
}

/// Tiles of the fast-block layout for `n` logical qubits: `2n + ⌈√(8n)⌉ + 1`.
pub fn computational_tiles(n: u64) -> u64 {
    let r = (8.0 * n as f64).sqrt();
    let mut c = r.ceil() as u64;
    // exact integer ceiling of the square root
    while c > 0 && (c - 1) * (c - 1) >= 8 * n {
        c -= 1;
    }
    while c * c < 8 * n {
        c += 1;
    }
    2 * n + c + 1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalResources {
    pub computational_tiles: u64,
    pub factory_tiles: u64,
    pub routing_tiles: u64,
    pub total_tiles: u64,
    pub physical_qubits: u64,
}

/// Tile and qubit counts with `2d²` physical qubits per tile.
pub fn physical_resources(logical_qubits: u64, d: u32, factory: &FactorySpec, n_factories: u64, routing_fraction: f64) -> PhysicalResources {
    let computational_tiles = computational_tiles(logical_qubits);
    let factory_tiles = n_factories * factory.footprint_tiles;
    let routing_tiles = (routing_fraction * factory_tiles as f64 - 1e-9).ceil().max(0.0) as u64;
    let total_tiles = computational_tiles + factory_tiles + routing_tiles;
    PhysicalResources {
        computational_tiles,
        factory_tiles,
        routing_tiles,
        total_tiles,
        physical_qubits: total_tiles * 2 * (d as u64) * (d as u64),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtqcReport {
    pub p_phys: f64,
    pub t_cycle: f64,
    pub code_distance: u32,
    /// Distance if `P_L` were a per-cycle rate (volume times `d`).
    pub code_distance_per_cycle_model: u32,
    pub factory: FactorySpec,
    pub factory_output_error: f64,
    pub n_factories: u64,
    pub algorithm_logical_qubits: u64,
    pub resources: PhysicalResources,
    /// Computational plus factory tiles.
    pub logical_qubits_total: u64,
    pub runtime_seconds: f64,
    pub runtime_days: f64,
    pub notes: Vec<String>,
}

/// Runtime `t_count · d · t_cycle`: one state consumed per logical timestep.
pub fn runtime_seconds(t_count: u64, d: u32, t_cycle: f64) -> f64 {
    t_count as f64 * d as f64 * t_cycle
}

/// Surface-code estimate for a serial computation of `t_count` T gates on
/// `logical_qubits` algorithm qubits.
pub fn estimate_ftqc(t_count: u64, logical_qubits: u64, cfg: &FtqcConfig) -> Result<FtqcReport> {
    cfg.validate()?;
    let comp = computational_tiles(logical_qubits);
    let timesteps = t_count.max(1);
    let d = code_distance(cfg.p_phys, comp, timesteps, cfg.budget_logical)?;
    let mut d_alt = d;
    while comp as f64 * timesteps as f64 * d_alt as f64 * logical_error_rate(cfg.p_phys, d_alt) > cfg.budget_logical {
        d_alt += 2;
    }
    let (factory, n_factories) = select_factory(cfg.p_phys, timesteps, cfg.budget_distill, &cfg.factories, d)?;
    let resources = physical_resources(logical_qubits, d, factory, n_factories, cfg.routing_fraction);
    let runtime = runtime_seconds(t_count, d, cfg.t_cycle);
    let mut notes = vec![
        "logical failure counted per tile per logical timestep over computational tiles".to_string(),
        "tile = 2d^2 physical qubits; factories run at the computational code distance".to_string(),
    ];
    if d_alt != d {
        notes.push(format!("a per-cycle logical error model would need d = {d_alt}"));
    }
    if let Some(src) = &factory.source {
        notes.push(format!("factory parameters: {src}"));
    }
    Ok(FtqcReport {
        p_phys: cfg.p_phys,
        t_cycle: cfg.t_cycle,
        code_distance: d,
        code_distance_per_cycle_model: d_alt,
        factory_output_error: factory.output_error.at(cfg.p_phys),
        factory: factory.clone(),
        n_factories,
        algorithm_logical_qubits: logical_qubits,
        logical_qubits_total: resources.computational_tiles + resources.factory_tiles,
        resources,
        runtime_seconds: runtime,
        runtime_days: runtime / 86_400.0,
        notes,
    })
}
