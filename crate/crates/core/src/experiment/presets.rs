//! Named configurations reproducing the published parameter grids.

use crate::capacity::StartRecipe;
use crate::error::{Error, Result};

use super::config::{Axis, ExperimentConfig, ExperimentKind, GridSpec, Real};

/// Seed used by every preset unless overridden.
pub const PRESET_SEED: u64 = 2005;

/// Iteration cap for the doubly depolarizing additivity grid, whose b → 1
/// corner converges slowly.
pub const DD4_ADDITIVITY_MAX_ITER: usize = 10_000;

/// Name and one-line description of every preset.
pub const PRESETS: &[(&str, &str)] = &[
    ("qutrit-6.2.1", "qutrit capacity certificates, a = 0.50..0.90 by 0.02, a0 from a/2 + 0.05 by 0.05, 50 starts"),
    ("dd4-6.2.1", "doubly depolarizing d=4, m=2 capacity certificates, a, b = 0.50..0.90 by 0.05, 50 starts"),
    ("qutrit-additivity", "qutrit grid on Φ⊗Φ against 2C⋆, 30 random bipartite starts"),
    ("dd4-additivity", "doubly depolarizing d=4, m=2 on Φ⊗Φ, a, b = 0.50..0.98 by 0.02, 30 starts over three recipes"),
    ("diagonal-capacity", "clock-power diagonal channels d = 2..4, a = 0.50..0.90 by 0.10, log d − S_min certificates"),
    ("ppt-boundary", "partial-transpose test of depolarizing Choi matrices, a = 1/(d+1) ± 0.10 by 0.01"),
];

fn split(a: &str, b: &str, c: &str) -> [Real; 3] {
    [Real::Text(a.into()), Real::Text(b.into()), Real::Text(c.into())]
}

fn qutrit_grid() -> GridSpec {
    GridSpec::Qutrit {
        theta: Axis::from(0.0),
        a: Axis::range("0.5", "0.9", "0.02"),
        a0: None,
        a0_step: Real::Text("0.05".into()),
        a0_margin: Real::Text("0.01".into()),
        splits: vec![
            split("1", "1", "1"),
            split("0.5", "0.3", "0.2"),
            split("0.6", "0.3", "0.1"),
            split("0.7", "0.2", "0.1"),
        ],
    }
}

fn dd4_grid(stop: &str, step: &str) -> GridSpec {
    GridSpec::DoublyDepolarizing {
        d: Axis::from(4.0),
        m: Axis::from(2.0),
        a: Axis::range("0.5", stop, step),
        b: Axis::range("0.5", stop, step),
    }
}

pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let cfg = |kind, starts, grid| ExperimentConfig {
        starts,
        grid: Some(grid),
        ..ExperimentConfig::new(kind, PRESET_SEED)
    };
    Ok(match name {
        "qutrit-6.2.1" => cfg(ExperimentKind::CapacityVerify, 50, qutrit_grid()),
        "dd4-6.2.1" => cfg(ExperimentKind::CapacityVerify, 50, dd4_grid("0.9", "0.05")),
        "qutrit-additivity" => ExperimentConfig {
            recipes: Some(vec![StartRecipe::RandomBipartite]),
            ..cfg(ExperimentKind::Additivity, 30, qutrit_grid())
        },
        "dd4-additivity" => {
            let mut c = cfg(ExperimentKind::Additivity, 30, dd4_grid("0.98", "0.02"));
            c.recipes = Some(vec![
                StartRecipe::RandomBipartite,
                StartRecipe::MaxEntangledPhases,
                StartRecipe::ProductSum,
            ]);
            c.tolerances.ascent.max_iter = DD4_ADDITIVITY_MAX_ITER;
            c
        }
        "diagonal-capacity" => cfg(
            ExperimentKind::CapacityVerify,
            50,
            GridSpec::Diagonal {
                d: Axis::range("2", "4", "1"),
                a: Axis::range("0.5", "0.9", "0.1"),
                unitaries: None,
            },
        ),
        "ppt-boundary" => cfg(
            ExperimentKind::PptScan,
            0,
            GridSpec::Depolarizing {
                d: Axis::range("2", "4", "1"),
                a: None,
                ppt_offset: Some(Axis::range("-0.1", "0.1", "0.01")),
            },
        ),
        other => {
            let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            return Err(Error::ConfigInvalid(format!(
                "unknown preset {other:?}; available: {}",
                names.join(", ")
            )));
        }
    })
}
