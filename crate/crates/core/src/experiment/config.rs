//! Experiment configuration: a single JSON document, snake_case keys.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::capacity::{AscentOptions, StartRecipe, VERIFY_THRESHOLD};
use crate::channels::FamilySpec;
use crate::error::{Error, Result};

/// Axis values are rounded to this many decimals so that `0.5 + 20·0.02`
/// lands on 0.9 and not on 0.9000000000000001.
const GRID_DECIMALS: i32 = 12;

/// Upper bound on the number of points a single range may expand to.
const MAX_AXIS_POINTS: usize = 1_000_000;

/// A real given either as a JSON number or as a decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Real {
    Number(f64),
    Text(String),
}

impl Real {
    pub fn value(&self) -> Result<f64> {
        match self {
            Real::Number(x) => Ok(*x),
            Real::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::ConfigInvalid(format!("not a real number: {s:?}"))),
        }
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real::Number(x)
    }
}

/// One grid axis: a single value, an explicit list, or an inclusive range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Range { start: Real, stop: Real, step: Real },
    List(Vec<Real>),
    Value(Real),
}

impl Axis {
    pub fn range(start: &str, stop: &str, step: &str) -> Axis {
        Axis::Range {
            start: Real::Text(start.into()),
            stop: Real::Text(stop.into()),
            step: Real::Text(step.into()),
        }
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        match self {
            Axis::Value(x) => Ok(vec![x.value()?]),
            Axis::List(xs) => xs.iter().map(Real::value).collect(),
            Axis::Range { start, stop, step } => expand_range(start.value()?, stop.value()?, step.value()?),
        }
    }
}

impl From<f64> for Axis {
    fn from(x: f64) -> Self {
        Axis::Value(Real::Number(x))
    }
}

pub(crate) fn round_grid(x: f64) -> f64 {
    let scale = 10f64.powi(GRID_DECIMALS);
    (x * scale).round() / scale
}

/// start, start + step, … up to and including stop.
pub fn expand_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::RangeInvalid("range bounds must be finite".into()));
    }
    if step <= 0.0 || start > stop {
        return Err(Error::RangeInvalid(format!(
            "need start <= stop and step > 0, got {start}..{stop} by {step}"
        )));
    }
    if start + step == start || round_grid(step) == 0.0 {
        return Err(Error::RangeInvalid(format!("step {step:e} is below the representable increment")));
    }
    let span = (stop - start) / step;
    if span >= MAX_AXIS_POINTS as f64 {
        return Err(Error::RangeInvalid(format!("range expands to more than {MAX_AXIS_POINTS} points")));
    }
    let n = (span + 1e-9).floor() as usize;
    Ok((0..=n).map(|k| round_grid(start + k as f64 * step)).collect())
}

fn default_zero() -> Axis {
    Axis::from(0.0)
}

fn default_four() -> Axis {
    Axis::from(4.0)
}

fn default_two() -> Axis {
    Axis::from(2.0)
}

fn default_a0_step() -> Real {
    Real::Text("0.05".into())
}

fn default_a0_margin() -> Real {
    Real::Text("0.01".into())
}

fn default_splits() -> Vec<[Real; 3]> {
    vec![[Real::Number(1.0), Real::Number(1.0), Real::Number(1.0)]]
}

/// Parameter grids, one per family, expanded in field order with the last
/// field varying fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GridSpec {
    /// Exactly one of `a` or `ppt_offset` (a = 1/(d+1) + offset).
    Depolarizing {
        d: Axis,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<Axis>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ppt_offset: Option<Axis>,
    },
    /// a_0 runs over a/2 + a0_step, a/2 + 2·a0_step, … while a_0 ≤ a − a0_margin,
    /// unless given explicitly; a − a_0 is split over a_1, a_2, a_3 in the
    /// proportions of each entry of `splits`.
    Qutrit {
        #[serde(default = "default_zero")]
        theta: Axis,
        a: Axis,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a0: Option<Axis>,
        #[serde(default = "default_a0_step")]
        a0_step: Real,
        #[serde(default = "default_a0_margin")]
        a0_margin: Real,
        #[serde(default = "default_splits")]
        splits: Vec<[Real; 3]>,
    },
    DoublyDepolarizing {
        #[serde(default = "default_four")]
        d: Axis,
        #[serde(default = "default_two")]
        m: Axis,
        a: Axis,
        b: Axis,
    },
    /// Clock-power unitaries V_k = Z^k, k < `unitaries` (default d), sharing
    /// the weight a equally.
    Diagonal {
        d: Axis,
        a: Axis,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unitaries: Option<usize>,
    },
    /// One axis per parameter x_1 … x_{d−1}.
    Successive { d: usize, x: Vec<Axis> },
}

fn dims(axis: &Axis, what: &str) -> Result<Vec<usize>> {
    axis.values()?
        .into_iter()
        .map(|v| {
            if v >= 1.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                Err(Error::ConfigInvalid(format!("{what} must be a positive integer, got {v}")))
            }
        })
        .collect()
}

fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

impl GridSpec {
    pub fn expand(&self) -> Result<Vec<FamilySpec>> {
        let mut out = Vec::new();
        match self {
            GridSpec::Depolarizing { d, a, ppt_offset } => {
                let (axis, offset) = match (a, ppt_offset) {
                    (Some(a), None) => (a, false),
                    (None, Some(o)) => (o, true),
                    _ => {
                        return Err(Error::ConfigInvalid(
                            "depolarizing grid needs exactly one of `a` and `ppt_offset`".into(),
                        ))
                    }
                };
                for d in dims(d, "d")? {
                    for v in axis.values()? {
                        let a = if offset { 1.0 / (d as f64 + 1.0) + v } else { v };
                        out.push(FamilySpec::Depolarizing { d, a });
                    }
                }
            }
            GridSpec::Qutrit { theta, a, a0, a0_step, a0_margin, splits } => {
                let step = a0_step.value()?;
                let margin = a0_margin.value()?;
                if step <= 0.0 {
                    return Err(Error::RangeInvalid(format!("a0_step must be positive, got {step}")));
                }
                let splits: Vec<[f64; 3]> = splits
                    .iter()
                    .map(|s| {
                        let v = [s[0].value()?, s[1].value()?, s[2].value()?];
                        let total: f64 = v.iter().sum();
                        if v.iter().any(|x| *x < 0.0) || total <= 0.0 {
                            return Err(Error::ConfigInvalid(format!("bad qutrit split {v:?}")));
                        }
                        Ok(v.map(|x| x / total))
                    })
                    .collect::<Result<_>>()?;
                for theta in theta.values()? {
                    for a in a.values()? {
                        let a0s = match a0 {
                            Some(axis) => axis.values()?,
                            None => (1..)
                                .map(|k| round_grid(a / 2.0 + k as f64 * step))
                                .take_while(|&x| x <= round_grid(a - margin))
                                .collect(),
                        };
                        for a0 in a0s {
                            if a0 > round_grid(a - margin) {
                                continue;
                            }
                            let rest = a - a0;
                            for s in &splits {
                                out.push(FamilySpec::Qutrit {
                                    theta,
                                    weights: [a0, rest * s[0], rest * s[1], rest * s[2]],
                                });
                            }
                        }
                    }
                }
            }
            GridSpec::DoublyDepolarizing { d, m, a, b } => {
                for d in dims(d, "d")? {
                    for m in dims(m, "m")? {
                        for a in a.values()? {
                            for b in b.values()? {
                                out.push(FamilySpec::DoublyDepolarizing { d, m, a, b });
                            }
                        }
                    }
                }
            }
            GridSpec::Diagonal { d, a, unitaries } => {
                for d in dims(d, "d")? {
                    let k = unitaries.unwrap_or(d);
                    if k == 0 || k > d {
                        return Err(Error::ConfigInvalid(format!("need 1..={d} clock unitaries, got {k}")));
                    }
                    let phases: Vec<Vec<f64>> = (0..k)
                        .map(|k| (0..d).map(|j| 2.0 * PI * ((k * j) % d) as f64 / d as f64).collect())
                        .collect();
                    for a in a.values()? {
                        out.push(FamilySpec::Diagonal { d, weights: vec![a / k as f64; k], phases: phases.clone() });
                    }
                }
            }
            GridSpec::Successive { d, x } => {
                if x.len() + 1 != *d {
                    return Err(Error::ConfigInvalid(format!(
                        "successive family with d = {d} needs {} x axes, got {}",
                        d - 1,
                        x.len()
                    )));
                }
                let axes = x.iter().map(Axis::values).collect::<Result<Vec<_>>>()?;
                for x in cartesian(&axes) {
                    out.push(FamilySpec::Successive { d: *d, x });
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// Closed-form candidate C⋆ checked by multi-start ascent.
    CapacityVerify,
    /// Candidate 2C⋆ with average output Φ(ρ⋆)⊗Φ(ρ⋆) checked on Φ⊗Φ.
    Additivity,
    /// S_min by ascent against the depolarizing reference.
    Minent,
    /// ν_p by ascent against the depolarizing reference.
    Pnorm,
    /// Closed-form quantities only, no search.
    Sweep,
    /// Minimum eigenvalue of the partially transposed Choi matrix.
    PptScan,
    /// Shannon capacity of the CQ matrix against C⋆.
    ClassicalReduce,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CapacityVerify => "capacity_verify",
            ExperimentKind::Additivity => "additivity",
            ExperimentKind::Minent => "minent",
            ExperimentKind::Pnorm => "pnorm",
            ExperimentKind::Sweep => "sweep",
            ExperimentKind::PptScan => "ppt_scan",
            ExperimentKind::ClassicalReduce => "classical_reduce",
        }
    }

    /// Whether the kind runs a multi-start search.
    pub fn searches(self) -> bool {
        matches!(
            self,
            ExperimentKind::CapacityVerify | ExperimentKind::Additivity | ExperimentKind::Minent | ExperimentKind::Pnorm
        )
    }
}

/// Schatten exponent: a number ≥ 1 or `"inf"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponent {
    Number(f64),
    Text(String),
}

impl Exponent {
    pub fn value(&self) -> Result<f64> {
        match self {
            Exponent::Number(p) => Ok(*p),
            Exponent::Text(s) => match s.trim().to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
                other => other
                    .parse()
                    .map_err(|_| Error::ConfigInvalid(format!("not an exponent: {s:?}"))),
            },
        }
    }
}

fn default_verify() -> f64 {
    VERIFY_THRESHOLD
}

fn default_compare() -> f64 {
    1e-8
}

/// Tolerance overrides; anything omitted keeps its default.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Accepted worst_violation in bits.
    #[serde(default = "default_verify")]
    pub verify: f64,
    /// Accepted deviation from a closed-form reference (minent, pnorm,
    /// classical_reduce).
    #[serde(default = "default_compare")]
    pub compare: f64,
    #[serde(default, flatten)]
    pub ascent: AscentOptions,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            verify: default_verify(),
            compare: default_compare(),
            ascent: AscentOptions::default(),
        }
    }
}

fn default_starts() -> usize {
    50
}

fn default_p() -> Exponent {
    Exponent::Number(2.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub seed: u64,
    #[serde(default = "default_starts")]
    pub starts: usize,
    /// Start recipes in rotation; defaults to random pure starts on one
    /// system and to the three entangled recipes on Φ⊗Φ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipes: Option<Vec<StartRecipe>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub specs: Vec<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// JSON sidecar for full certificates (capacity_verify, additivity).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<PathBuf>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_p")]
    pub p: Exponent,
    /// minent / pnorm on Φ⊗Φ instead of Φ.
    #[serde(default)]
    pub tensor_square: bool,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, seed: u64) -> Self {
        ExperimentConfig {
            kind,
            seed,
            starts: default_starts(),
            recipes: None,
            family: None,
            grid: None,
            specs: Vec::new(),
            output: None,
            certificates: None,
            tolerances: Tolerances::default(),
            p: default_p(),
            tensor_square: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config; relative output paths are resolved against the
    /// config's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Self::from_json(&std::fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.output, &mut cfg.certificates].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind.searches() && self.starts == 0 {
            return Err(Error::ConfigInvalid("at least one start is required".into()));
        }
        let p = self.p.value()?;
        if self.kind == ExperimentKind::Pnorm && !(p >= 1.0) {
            return Err(Error::BadExponent(p));
        }
        if self.recipes.as_ref().is_some_and(Vec::is_empty) {
            return Err(Error::ConfigInvalid("`recipes` must not be empty".into()));
        }
        let t = &self.tolerances;
        if !(t.verify >= 0.0 && t.compare >= 0.0 && t.ascent.tol >= 0.0 && t.ascent.residual_tol > 0.0) {
            return Err(Error::ConfigInvalid("tolerances must be non-negative".into()));
        }
        Ok(())
    }
}

/// All family instances of a config: `family`, then `specs`, then the
/// expanded `grid`. No source at all is an empty grid.
pub fn expand_grid(config: &ExperimentConfig) -> Result<Vec<FamilySpec>> {
    let mut out: Vec<FamilySpec> = config.family.iter().cloned().collect();
    out.extend(config.specs.iter().cloned());
    if let Some(grid) = &config.grid {
        out.extend(grid.expand()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_hits_endpoints_exactly() {
        let v = expand_range(0.5, 0.9, 0.02).unwrap();
        assert_eq!(v.len(), 21);
        assert_eq!(v[20], 0.9);
        assert_eq!(v[1], 0.52);
        assert_eq!(expand_range(0.5, 0.98, 0.02).unwrap().len(), 25);
    }

    #[test]
    fn bad_ranges() {
        assert!(matches!(expand_range(0.9, 0.5, 0.1), Err(Error::RangeInvalid(_))));
        assert!(matches!(expand_range(0.5, 0.9, 0.0), Err(Error::RangeInvalid(_))));
        assert!(matches!(expand_range(0.5, 0.9, 1e-300), Err(Error::RangeInvalid(_))));
    }

    #[test]
    fn two_by_one_grid() {
        let g = GridSpec::DoublyDepolarizing {
            d: Axis::from(4.0),
            m: Axis::from(2.0),
            a: Axis::List(vec![0.5.into(), 0.6.into()]),
            b: Axis::from(0.5),
        };
        assert_eq!(g.expand().unwrap().len(), 2);
    }

    #[test]
    fn qutrit_a0_runs_up_to_margin() {
        let g = GridSpec::Qutrit {
            theta: Axis::from(0.0),
            a: Axis::from(0.5),
            a0: None,
            a0_step: default_a0_step(),
            a0_margin: default_a0_margin(),
            splits: default_splits(),
        };
        let a0: Vec<f64> = g
            .expand()
            .unwrap()
            .iter()
            .map(|s| match s {
                FamilySpec::Qutrit { weights, .. } => weights[0],
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(a0, vec![0.3, 0.35, 0.4, 0.45]);
    }

    #[test]
    fn explicit_a0_is_filtered() {
        let g = GridSpec::Qutrit {
            theta: Axis::from(0.0),
            a: Axis::from(0.6),
            a0: Some(Axis::List(vec![0.4.into(), 0.59.into(), 0.595.into()])),
            a0_step: default_a0_step(),
            a0_margin: default_a0_margin(),
            splits: default_splits(),
        };
        assert_eq!(g.expand().unwrap().len(), 2);
    }

    #[test]
    fn parses_decimal_strings_and_inf() {
        let cfg = ExperimentConfig::from_json(
            r#"{"kind": "pnorm", "seed": 3, "p": "inf",
                "grid": {"family": "depolarizing", "d": [2, 3], "a": {"start": "0.1", "stop": "0.3", "step": "0.1"}}}"#,
        )
        .unwrap();
        assert_eq!(cfg.p.value().unwrap(), f64::INFINITY);
        assert_eq!(expand_grid(&cfg).unwrap().len(), 6);
        assert_eq!(cfg.tolerances, Tolerances::default());
    }

    #[test]
    fn missing_seed_is_rejected() {
        assert!(ExperimentConfig::from_json(r#"{"kind": "sweep"}"#).is_err());
    }

    #[test]
    fn empty_config_is_an_empty_grid() {
        let cfg = ExperimentConfig::from_json(r#"{"kind": "sweep", "seed": 0}"#).unwrap();
        assert!(expand_grid(&cfg).unwrap().is_empty());
    }
}
