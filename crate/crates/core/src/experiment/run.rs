use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::capacity::{
    classical_capacity, closed_form_candidate, cq_matrix, cq_matrix_in_basis, holevo_chi, qutrit_signal_basis, verify_candidate_with_threshold,
    CapacityCertificate, SearchOptions, BA_TOL,
};
use crate::channels::{FamilySpec, KrausChannel};
use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;
use crate::measures::{
    depol_reference, max_output_p_norm_with, min_output_entropy_with, min_partial_transpose_eigenvalue,
    DepolMeasure, PurityReport, PPT_TOL,
};

use super::config::{expand_grid, ExperimentConfig, ExperimentKind};

/// Code-version tag written into every row.
pub const VERSION: &str = concat!("qchan-", env!("CARGO_PKG_VERSION"));

/// Agreement required between a stored certificate and its re-run.
pub const RECHECK_TOL: f64 = 1e-12;

/// One grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub family: String,
    pub params: Vec<(String, f64)>,
    pub quantities: Vec<(String, f64)>,
    pub verified: bool,
    /// Starts that hit the iteration cap.
    pub non_converged: usize,
    pub starts: usize,
    pub seed: u64,
    pub wall_ms: u64,
    pub version: String,
}

impl ResultRow {
    pub fn quantity(&self, name: &str) -> Option<f64> {
        self.quantities.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn failed(&self) -> bool {
        !self.verified || self.non_converged > 0
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub rows: Vec<ResultRow>,
    /// One per row for capacity_verify and additivity, otherwise empty.
    pub certificates: Vec<CapacityCertificate>,
}

impl RunOutcome {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.failed()).count()
    }

    /// True iff every verification passed and every ascent converged.
    pub fn success(&self) -> bool {
        self.failures() == 0
    }
}

fn search_options(config: &ExperimentConfig, factors: &[usize]) -> SearchOptions {
    let mut opts = SearchOptions::for_factors(config.starts, config.seed, factors);
    if let Some(r) = &config.recipes {
        opts = opts.with_recipes(r);
    }
    opts.ascent = config.tolerances.ascent;
    opts
}

/// ‖ρ − I/d‖_F.
fn distance_from_mixed(rho: &ComplexMatrix) -> f64 {
    let d = rho.rows();
    (rho - &ComplexMatrix::identity(d).scale(1.0 / d as f64)).frobenius_norm()
}

/// Families whose output purity equals that of the depolarizing channel
/// with the same a.
fn depolarizing_equivalent(spec: &FamilySpec) -> Option<(usize, f64)> {
    match spec {
        FamilySpec::Depolarizing { d, a } => Some((*d, *a)),
        FamilySpec::Qutrit { .. }
        | FamilySpec::DoublyDepolarizing { .. }
        | FamilySpec::Diagonal { .. }
        | FamilySpec::Successive { .. } => spec.mixing_weight().map(|a| (spec.dim(), a)),
        _ => None,
    }
}

struct Point {
    quantities: Vec<(String, f64)>,
    verified: bool,
    non_converged: usize,
    starts: usize,
    certificate: Option<CapacityCertificate>,
}

fn q(name: &str, v: f64) -> (String, f64) {
    (name.to_string(), v)
}

fn purity_point(
    config: &ExperimentConfig,
    report: PurityReport,
    name: &str,
    reference: Option<f64>,
) -> Point {
    let mut quantities = vec![q(name, report.value)];
    let mut verified = true;
    if let Some(r) = reference {
        let dev = report.value - r;
        quantities.push(q(&format!("{name}_reference"), r));
        quantities.push(q("deviation", dev));
        verified = dev.abs() <= config.tolerances.compare;
    }
    quantities.push(q("iterations_max", report.traces.iter().map(|t| t.iterations).max().unwrap_or(0) as f64));
    Point {
        quantities,
        verified,
        non_converged: report.non_converged(),
        starts: report.starts_used,
        certificate: None,
    }
}

fn evaluate(config: &ExperimentConfig, spec: &FamilySpec, channel: &KrausChannel) -> Result<Point> {
    let tol = &config.tolerances;
    let d = spec.dim();
    let log_d = (d as f64).log2();
    match config.kind {
        ExperimentKind::CapacityVerify => {
            let cand = closed_form_candidate(spec)?;
            let opts = search_options(config, channel.factors());
            let mut cert = verify_candidate_with_threshold(channel, &cand.avg_output, cand.capacity, &opts, tol.verify)?;
            cert.describe(spec, 1);
            Ok(Point {
                quantities: vec![
                    q("c_star_bits", cand.capacity),
                    q("s_min_bits", cand.s_min),
                    q("gap_logd", log_d - cand.s_min - cand.capacity),
                    q("worst_violation", cert.worst_violation),
                    q("avg_input_dist", distance_from_mixed(&cand.ensemble.average())),
                    q("iterations_max", cert.iterations_max as f64),
                ],
                verified: cert.verified,
                non_converged: cert.non_converged,
                starts: cert.starts,
                certificate: Some(cert),
            })
        }
        ExperimentKind::Additivity => {
            let cand = closed_form_candidate(spec)?;
            let pair = channel.tensor(channel);
            let avg = cand.avg_output.kron(&cand.avg_output);
            let opts = search_options(config, pair.factors());
            let mut cert = verify_candidate_with_threshold(&pair, &avg, 2.0 * cand.capacity, &opts, tol.verify)?;
            cert.describe(spec, 2);
            Ok(Point {
                quantities: vec![
                    q("c_star_bits", cand.capacity),
                    q("c_pair_bits", cert.sup_objective),
                    q("additivity_gap", cert.sup_objective - 2.0 * cand.capacity),
                    q("worst_violation", cert.worst_violation),
                    q("iterations_max", cert.iterations_max as f64),
                ],
                verified: cert.verified,
                non_converged: cert.non_converged,
                starts: cert.starts,
                certificate: Some(cert),
            })
        }
        ExperimentKind::Minent | ExperimentKind::Pnorm => {
            let target = if config.tensor_square { channel.tensor(channel) } else { channel.clone() };
            let opts = search_options(config, target.factors());
            let copies = if config.tensor_square { 2 } else { 1 };
            let equiv = depolarizing_equivalent(spec);
            if config.kind == ExperimentKind::Minent {
                let reference = equiv
                    .map(|(d, a)| depol_reference(d, a, DepolMeasure::Entropy).map(|s| copies as f64 * s))
                    .transpose()?;
                Ok(purity_point(config, min_output_entropy_with(&target, &opts)?, "s_min_bits", reference))
            } else {
                let p = config.p.value()?;
                let reference = equiv
                    .map(|(d, a)| depol_reference(d, a, DepolMeasure::PNorm(p)).map(|v| v.powi(copies)))
                    .transpose()?;
                let mut point = purity_point(config, max_output_p_norm_with(&target, p, &opts)?, "nu_p", reference);
                point.quantities.insert(0, q("p", p));
                Ok(point)
            }
        }
        ExperimentKind::Sweep => {
            let cand = closed_form_candidate(spec)?;
            let chi = holevo_chi(channel, &cand.ensemble)?;
            Ok(Point {
                quantities: vec![
                    q("c_star_bits", cand.capacity),
                    q("chi_bits", chi),
                    q("s_min_bits", cand.s_min),
                    q("gap_logd", log_d - cand.s_min - cand.capacity),
                    q("avg_input_dist", distance_from_mixed(&cand.ensemble.average())),
                ],
                verified: (chi - cand.capacity).abs() <= tol.compare,
                non_converged: 0,
                starts: 0,
                certificate: None,
            })
        }
        ExperimentKind::PptScan => {
            let min = min_partial_transpose_eigenvalue(&channel.choi_matrix(), d, d)?;
            let ppt = min >= -PPT_TOL;
            let mut quantities = vec![q("min_pt_eigenvalue", min), q("ppt", f64::from(u8::from(ppt)))];
            let mut verified = true;
            if let FamilySpec::Depolarizing { a, .. } = spec {
                // The Choi matrix of Γ_a is PPT iff a ≤ 1/(d+1).
                let boundary = 1.0 / (d as f64 + 1.0);
                let expected = *a <= boundary + 1e-12;
                quantities.push(q("boundary_a", boundary));
                quantities.push(q("expected_ppt", f64::from(u8::from(expected))));
                verified = ppt == expected;
            }
            Ok(Point { quantities, verified, non_converged: 0, starts: 0, certificate: None })
        }
        ExperimentKind::ClassicalReduce => {
            // Qutrit signal states are e_0 and (e_1 ± e_2)/√2, not the standard basis.
            let g = match spec {
                FamilySpec::Qutrit { .. } => cq_matrix_in_basis(channel, &qutrit_signal_basis())?,
                _ => cq_matrix(channel),
            };
            let cc = classical_capacity(&g, BA_TOL)?;
            let mut quantities = vec![
                q("c_classical_bits", cc.capacity),
                q("c_upper_bits", cc.upper_bound),
                q("ba_iterations", cc.iterations as f64),
            ];
            let mut verified = true;
            if let Ok(cand) = closed_form_candidate(spec) {
                let dev = cc.capacity - cand.capacity;
                quantities.push(q("c_star_bits", cand.capacity));
                quantities.push(q("deviation", dev));
                verified = dev.abs() <= tol.compare;
            }
            Ok(Point { quantities, verified, non_converged: 0, starts: 0, certificate: None })
        }
    }
}

/// Runs every grid point (in parallel) and returns rows in grid order.
/// Nothing is written; see [`run_and_write`].
pub fn run(config: &ExperimentConfig) -> Result<RunOutcome> {
    config.validate()?;
    let specs = expand_grid(config)?;
    // Build everything first so that a bad grid point fails before any work.
    let channels = specs
        .iter()
        .map(|s| s.build().map_err(|e| Error::ConfigInvalid(format!("{} {:?}: {e}", s.tag(), s.params()))))
        .collect::<Result<Vec<_>>>()?;
    let points = specs
        .par_iter()
        .zip(channels.par_iter())
        .map(|(spec, ch)| {
            let t = Instant::now();
            let p = evaluate(config, spec, ch)?;
            Ok((p, t.elapsed().as_millis() as u64))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(points.len());
    let mut certificates = Vec::new();
    for (spec, (p, wall_ms)) in specs.iter().zip(points) {
        rows.push(ResultRow {
            family: spec.tag().to_string(),
            params: spec.params(),
            quantities: p.quantities,
            verified: p.verified,
            non_converged: p.non_converged,
            starts: p.starts,
            seed: config.seed,
            wall_ms,
            version: VERSION.to_string(),
        });
        certificates.extend(p.certificate);
    }
    Ok(RunOutcome { rows, certificates })
}

/// [`run`], then writes the CSV to `config.output` (stdout when unset) and
/// the certificates to `config.certificates` when set.
pub fn run_and_write(config: &ExperimentConfig) -> Result<RunOutcome> {
    let outcome = run(config)?;
    match &config.output {
        Some(path) => write_csv(&outcome.rows, BufWriter::new(File::create(path)?))?,
        None => write_csv(&outcome.rows, std::io::stdout().lock())?,
    }
    if let Some(path) = &config.certificates {
        write_certificates(path, &outcome.certificates)?;
    }
    Ok(outcome)
}

fn column_union<'a>(lists: impl Iterator<Item = &'a Vec<(String, f64)>>) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for list in lists {
        for (k, _) in list {
            if !names.contains(k) {
                names.push(k.clone());
            }
        }
    }
    names
}

/// Shortest round-trip form; scientific notation for very small or large
/// magnitudes.
fn format_real(x: f64) -> String {
    let m = x.abs();
    if m != 0.0 && m.is_finite() && !(1e-4..1e15).contains(&m) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn cell(list: &[(String, f64)], name: &str) -> String {
    list.iter().find(|(k, _)| k == name).map_or_else(String::new, |(_, v)| format_real(*v))
}

/// Columns: family, the union of parameter names, the union of quantity
/// names, verified, non_converged, starts, seed, wall_ms, version. Floats
/// use the shortest representation that round-trips.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let params = column_union(rows.iter().map(|r| &r.params));
    let quantities = column_union(rows.iter().map(|r| &r.quantities));
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["family".to_string()];
    header.extend(params.iter().cloned());
    header.extend(quantities.iter().cloned());
    header.extend(["verified", "non_converged", "starts", "seed", "wall_ms", "version"].map(String::from));
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.family.clone()];
        rec.extend(params.iter().map(|p| cell(&r.params, p)));
        rec.extend(quantities.iter().map(|p| cell(&r.quantities, p)));
        rec.push(r.verified.to_string());
        rec.push(r.non_converged.to_string());
        rec.push(r.starts.to_string());
        rec.push(r.seed.to_string());
        rec.push(r.wall_ms.to_string());
        rec.push(r.version.clone());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_certificates(path: &Path, certificates: &[CapacityCertificate]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, certificates)?;
    w.flush()?;
    Ok(())
}

pub fn read_certificates(path: &Path) -> Result<Vec<CapacityCertificate>> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// Outcome of re-running one stored certificate.
#[derive(Clone, Debug)]
pub struct Recheck {
    pub family: String,
    pub params: Vec<(String, f64)>,
    pub tensor_power: u32,
    pub stored_violation: f64,
    pub worst_violation: f64,
    /// The stored candidate agrees with the closed form for the stored family.
    pub candidate_matches: bool,
    /// The re-run reproduces the stored worst_violation within [`RECHECK_TOL`].
    pub reproduced: bool,
    pub verified: bool,
}

impl Recheck {
    pub fn ok(&self) -> bool {
        self.candidate_matches && self.reproduced && self.verified
    }
}

fn kron_power(m: &ComplexMatrix, power: u32) -> ComplexMatrix {
    (1..power).fold(m.clone(), |acc, _| acc.kron(m))
}

/// Rebuilds the channel and the closed-form candidate from the stored
/// family, then re-runs the search with the stored seed, starts, recipes
/// and ascent settings.
pub fn recheck_certificate(cert: &CapacityCertificate) -> Result<Recheck> {
    let spec = cert
        .family
        .as_ref()
        .ok_or_else(|| Error::ConfigInvalid("certificate has no family record".into()))?;
    if cert.tensor_power == 0 {
        return Err(Error::ConfigInvalid("tensor_power must be at least 1".into()));
    }
    let single = spec.build()?;
    let channel = (1..cert.tensor_power).fold(single.clone(), |acc, _| acc.tensor(&single));
    let cand = closed_form_candidate(spec)?;
    let power = cert.tensor_power as f64;
    let avg = kron_power(&cand.avg_output, cert.tensor_power);
    let candidate_matches = (power * cand.capacity - cert.candidate_capacity).abs() <= RECHECK_TOL * power
        && (&avg - &cert.candidate_avg_output).max_abs() <= RECHECK_TOL;
    let opts = SearchOptions {
        starts: cert.starts,
        seed: cert.seed,
        recipes: cert.recipes.clone(),
        ascent: cert.ascent,
    };
    let fresh =
        verify_candidate_with_threshold(&channel, &cert.candidate_avg_output, cert.candidate_capacity, &opts, cert.threshold)?;
    Ok(Recheck {
        family: spec.tag().to_string(),
        params: spec.params(),
        tensor_power: cert.tensor_power,
        stored_violation: cert.worst_violation,
        worst_violation: fresh.worst_violation,
        candidate_matches,
        reproduced: (fresh.worst_violation - cert.worst_violation).abs() <= RECHECK_TOL
            && fresh.verified == cert.verified,
        verified: fresh.verified && fresh.non_converged == 0,
    })
}

/// Certificates named by a path: either a sidecar file itself or a config
/// whose `certificates` entry points at one.
pub fn certificates_for(path: &Path) -> Result<Vec<CapacityCertificate>> {
    let text = std::fs::read_to_string(path)?;
    if let Ok(certs) = serde_json::from_str::<Vec<CapacityCertificate>>(&text) {
        return Ok(certs);
    }
    let cfg = ExperimentConfig::load(path)?;
    match &cfg.certificates {
        Some(sidecar) => read_certificates(sidecar),
        None => Err(Error::ConfigInvalid(format!(
            "{} is neither a certificate file nor a config with a `certificates` path",
            path.display()
        ))),
    }
}
