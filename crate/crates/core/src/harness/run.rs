use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rug::Rational;
use serde_json::json;

use super::gain_scan::gain_scan_records;
use super::gains::{resolve_matrix, GainSpec};
use super::manifest::{checksum_file, config_digest, now_unix_ms, RunManifest};
use super::records::{write_csv, BoundRow, DminRow, GammaRow, KhintchineRow, SweepRow};
use super::{ExperimentConfig, Scenario};
use crate::alignment::{
    gic3_asymmetric_models, gic_single_stream_models, standardize_three_user, symmetric_multilayer_model,
    x_channel_models, ChannelInstance, Gain, GainMode, ReceivedModel, SchemeBundle, SchemeParams, StreamId,
};
use crate::constellations::{
    aligned_power, multilayer_levels, select_irrational, select_table_one, MultiLayerConstellation,
};
use crate::decoder::{
    dof_slope, enumerate_received_with, kg_alphas, scan_rational_multilayer, simulate, verify_dmin_bounds, BoundExtras,
    EnumerationOptions, GammaVerdict, SimulationResult, SweepPoint, SweepResult,
};
use crate::diophantine::{khintchine_kappa, CfTarget};
use crate::numerics::{default_precision, RandomSource};
use crate::{Error, Result};

/// RNG stream for random gains; simulation streams stay far below it.
pub const GAIN_STREAM: u64 = 1 << 48;

/// Largest (2·Qmax+1)^m the d_min report will brute-force for κ̂.
const KG_WORK_LIMIT: f64 = 2e9;

/// Files and provenance of a finished run.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub manifest: RunManifest,
    pub summary: serde_json::Value,
}

/// Everything a power sweep produced.
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub sweep: SweepResult,
    pub warnings: Vec<String>,
}

/// Gains of a scenario, resolved once per run.
enum Setup {
    Matrix(Vec<Vec<Gain>>),
    Symmetric {
        h: Gain,
        a: u64,
        w: u64,
        m: Option<u64>,
        irrational: Option<Box<crate::constellations::IrrationalSelection>>,
    },
}

fn default_users(scenario: Scenario) -> usize {
    match scenario {
        Scenario::XChannel => 2,
        _ => 3,
    }
}

fn resolve_gains(config: &ExperimentConfig) -> Result<Vec<Vec<Gain>>> {
    let mut rng = RandomSource::new(config.seed, GAIN_STREAM);
    let specs = match &config.gains {
        Some(g) => g.clone(),
        None => {
            let k = config.users.unwrap_or_else(|| default_users(config.scenario));
            vec![vec![GainSpec::Text("random-uniform".into()); k]; k]
        }
    };
    resolve_matrix(&specs, config.mode, config.field, config.random_range, &mut rng)
}

fn resolve_h(config: &ExperimentConfig) -> Result<Gain> {
    let spec = config.h.as_ref().ok_or_else(|| Error::Config(format!("{} needs h", config.scenario)))?;
    spec.resolve(config.mode, config.field, config.random_range, &mut RandomSource::new(config.seed, GAIN_STREAM))
}

fn setup(config: &ExperimentConfig) -> Result<Setup> {
    match config.scenario {
        Scenario::SymmetricRational => {
            let h = resolve_h(config)?;
            let q = h
                .as_exact()
                .and_then(|e| e.as_rational().cloned())
                .ok_or_else(|| Error::Config(format!("symmetric-rational needs a rational h, got {h}")))?;
            let sel = select_table_one(&q)?;
            if sel.degenerate {
                return Err(Error::Config(format!(
                    "h = {q} gives a degenerate selection (a = {}, W = {})",
                    sel.a, sel.w
                )));
            }
            Ok(Setup::Symmetric { h, a: sel.a, w: sel.w, m: Some(sel.m), irrational: None })
        }
        Scenario::SymmetricIrrational => {
            let h = resolve_h(config)?;
            let target = match &h {
                Gain::Exact(e) => CfTarget::Field(e.clone()),
                Gain::Numeric(r) => CfTarget::Real(r.clone()),
            };
            let sel = select_irrational(&target, config.epsilon, config.m_min)?;
            if sel.degenerate {
                return Err(Error::Config(format!("h = {h} gives a degenerate selection (a = {})", sel.a)));
            }
            Ok(Setup::Symmetric { h, a: sel.a, w: sel.w, m: None, irrational: Some(Box::new(sel)) })
        }
        _ => Ok(Setup::Matrix(resolve_gains(config)?)),
    }
}

fn params(config: &ExperimentConfig) -> SchemeParams {
    SchemeParams { epsilon: config.epsilon, gamma: config.gamma, gamma_prime: config.gamma_prime }
}

fn h_spec(gains: &[Vec<Gain>]) -> String {
    let mut parts = Vec::new();
    for (i, row) in gains.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            parts.push(format!("h{}{}={g}", i + 1, j + 1));
        }
    }
    parts.join(";")
}

fn bundle_at(config: &ExperimentConfig, gains: &[Vec<Gain>], power: f64) -> Result<SchemeBundle> {
    let ch = ChannelInstance::new(gains.to_vec(), power, config.sigma2)?;
    let p = params(config);
    match config.scenario {
        Scenario::XChannel => x_channel_models(&ch, &p),
        Scenario::GicK => gic_single_stream_models(&ch, &p),
        Scenario::Gic3Asymmetric => gic3_asymmetric_models(&standardize_three_user(&ch)?, &p, power),
        s => Err(Error::Config(format!("{s} does not build a gain-matrix scheme"))),
    }
}

/// Powers of a symmetric sweep: the configured list, or the aligned grid.
pub fn symmetric_powers(config: &ExperimentConfig, w: u64) -> Result<Vec<f64>> {
    if config.powers.is_empty() {
        config.levels.iter().map(|&l| aligned_power(w, config.epsilon, l)).collect()
    } else {
        Ok(config.powers.clone())
    }
}

fn enumeration(config: &ExperimentConfig) -> EnumerationOptions {
    EnumerationOptions { cap: config.cap, precision: default_precision(), ..Default::default() }
}

fn measure(
    config: &ExperimentConfig,
    model: &ReceivedModel,
    power: f64,
    stream: u64,
    warnings: &mut Vec<String>,
) -> Result<SimulationResult> {
    let rc = enumerate_received_with(model, &enumeration(config))?;
    if let GammaVerdict::Violated { first, second } = rc.gamma() {
        warnings.push(format!(
            "P={power}: receiver {} stream {}: property Γ fails ({:?} and {:?} collide)",
            model.receiver + 1,
            model.decoded.id,
            rc.symbols(*first),
            rc.symbols(*second)
        ));
    }
    let rng = RandomSource::new(config.seed, stream);
    Ok(simulate(model, &rc, config.sigma2.sqrt(), config.trials, &rng)?.at_power(power))
}

fn rows_for(config: &ExperimentConfig, h: &str, point: &SweepPoint, labels: &[String]) -> Vec<SweepRow> {
    let r = point.multiplexing();
    point
        .results
        .iter()
        .zip(labels)
        .map(|(s, label)| SweepRow {
            scenario: config.scenario.to_string(),
            mode: config.mode.to_string(),
            h_spec: h.to_owned(),
            power: point.power,
            sigma2: s.sigma2,
            epsilon: config.epsilon,
            stream_id: s.stream_id.to_string(),
            q_or_awl: label.clone(),
            dmin: s.dmin,
            union_bound: s.union_bound,
            trials: s.trials,
            errors: s.errors,
            pe: s.pe,
            rate_bound: s.rate_bound,
            r_of_p: r,
        })
        .collect()
}

/// Sweep of the symmetric three-user channel with digit bound a and base W.
///
/// Receiver 1 is simulated; users 2 and 3 are identical by symmetry and their
/// rows repeat receiver 1's measurement under their own stream ids.
pub fn symmetric_sweep(config: &ExperimentConfig, h: &Gain, a: u64, w: u64, stream_base: u64) -> Result<SweepOutcome> {
    let mut warnings = Vec::new();
    let mut points = Vec::new();
    let mut rows = Vec::new();
    for (pi, power) in symmetric_powers(config, w)?.into_iter().enumerate() {
        let levels = multilayer_levels(power, config.epsilon, w)?;
        if levels == 0 {
            warnings.push(format!("P={power}: below one level (W = {w}); point skipped"));
            continue;
        }
        let c = MultiLayerConstellation::new(w, a, levels)?;
        let (_, model) = symmetric_multilayer_model(h, &c, power)?;
        let r1 = measure(config, &model, power, stream_base + pi as u64, &mut warnings)?;
        let results: Vec<SimulationResult> = (0..3)
            .map(|k| SimulationResult { stream_id: StreamId::new(format!("u{}", k + 1)), receiver: k, ..r1.clone() })
            .collect();
        let point = SweepPoint { power, results };
        let label = format!("a={a};W={w};L={levels}");
        rows.extend(rows_for(config, &h.to_string(), &point, &[label.clone(), label.clone(), label]));
        points.push(point);
    }
    Ok(SweepOutcome { rows, sweep: SweepResult::new(points), warnings })
}

fn matrix_sweep(config: &ExperimentConfig, gains: &[Vec<Gain>]) -> Result<SweepOutcome> {
    let mut warnings = Vec::new();
    let mut points = Vec::new();
    let mut rows = Vec::new();
    let spec = h_spec(gains);
    for (pi, &power) in config.powers.iter().enumerate() {
        let bundle = bundle_at(config, gains, power)?;
        if pi == 0 {
            warnings.extend(bundle.degeneracies());
        }
        let mut results = Vec::new();
        let mut labels = Vec::new();
        for (mi, model) in bundle.models.iter().enumerate() {
            let stream = ((pi as u64) << 16) | mi as u64;
            results.push(measure(config, model, power, stream, &mut warnings)?);
            labels.push(format!("Q={}", model.decoded.set.bound()));
        }
        let point = SweepPoint { power, results };
        rows.extend(rows_for(config, &spec, &point, &labels));
        points.push(point);
    }
    Ok(SweepOutcome { rows, sweep: SweepResult::new(points), warnings })
}

/// Runs the power sweep of a sweep scenario without writing files.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepOutcome> {
    config.validate()?;
    if !config.scenario.is_sweep() {
        return Err(Error::Config(format!("{} is not a sweep scenario", config.scenario)));
    }
    match setup(config)? {
        Setup::Matrix(g) => matrix_sweep(config, &g),
        Setup::Symmetric { h, a, w, .. } => symmetric_sweep(config, &h, a, w, 0),
    }
}

fn sweep_summary(config: &ExperimentConfig, outcome: &SweepOutcome) -> (serde_json::Value, Option<Error>) {
    let slope = dof_slope(&outcome.sweep, config.pe_threshold);
    let points: Vec<_> = outcome
        .sweep
        .points
        .iter()
        .map(
            |p| json!({ "P": p.power, "sum_rate": p.sum_rate(), "r_of_P": p.multiplexing(), "worst_pe": p.worst_pe() }),
        )
        .collect();
    let summary = json!({
        "scenario": config.scenario,
        "pe_threshold": config.pe_threshold,
        "slope": slope.as_ref().ok(),
        "slope_error": slope.as_ref().err().map(|e| json!({ "error": e.kind(), "message": e.to_string() })),
        "points": points,
    });
    let failure = match slope {
        Err(Error::NoiseDominated) => Some(Error::NoiseDominated),
        _ => None,
    };
    (summary, failure)
}

fn write_json(dir: &Path, name: &str, value: &serde_json::Value) -> Result<()> {
    std::fs::write(dir.join(name), serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}

fn write_rows<T: serde::Serialize>(dir: &Path, name: &str, rows: &[T]) -> Result<()> {
    write_csv(rows, std::io::BufWriter::new(std::fs::File::create(dir.join(name))?))
}

fn gamma_rows(config: &ExperimentConfig) -> Result<(Vec<GammaRow>, Vec<String>)> {
    let n_max = config.max_denominator;
    let mut cases = Vec::new();
    let mut warnings = Vec::new();
    for m in 1..=n_max {
        for n in 1..=n_max {
            if n.max(m) < 2 || gcd(n, m) != 1 {
                continue;
            }
            let sel = select_table_one(&Rational::from((n, m)))?;
            if sel.degenerate {
                warnings.push(format!("h={n}/{m}: degenerate selection (a = {}, W = {}) skipped", sel.a, sel.w));
                continue;
            }
            for &l in &config.levels {
                cases.push((sel.clone(), l));
            }
        }
    }
    let rows = cases
        .par_iter()
        .map(|(sel, l)| {
            let scan = scan_rational_multilayer(sel.n, sel.m, sel.w, sel.a, *l)?;
            Ok(GammaRow {
                n: sel.n,
                m: sel.m,
                case: sel.case.to_string(),
                a: sel.a,
                w: sel.w,
                levels: *l,
                verdict: scan.verdict.tag().to_owned(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, warnings))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn khintchine_rows(config: &ExperimentConfig) -> Result<(Vec<KhintchineRow>, serde_json::Value)> {
    let alphas = match &config.alphas {
        Some(a) => a.clone(),
        None => {
            let mut rng = RandomSource::new(config.seed, 0);
            (0..config.samples).map(|_| (0..config.dimension).map(|_| rng.uniform()).collect()).collect()
        }
    };
    let mut qmax = config.qmax.clone();
    qmax.sort_unstable();
    qmax.dedup();
    let per_sample = alphas
        .par_iter()
        .map(|alpha| qmax.iter().map(|&q| khintchine_kappa(alpha, config.epsilon, q)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let (mut positive, mut monotone) = (0, 0);
    for (i, ests) in per_sample.iter().enumerate() {
        if ests.last().is_some_and(|e| e.kappa_hat > 0.0) {
            positive += 1;
        }
        if ests.windows(2).all(|w| w[1].kappa_hat <= w[0].kappa_hat) {
            monotone += 1;
        }
        for e in ests {
            rows.push(KhintchineRow {
                sample: i as u32,
                alpha: e.alpha.iter().map(f64::to_string).collect::<Vec<_>>().join(";"),
                epsilon: e.epsilon,
                qmax: e.qmax,
                kappa_hat: e.kappa_hat,
                witness_p: e.witness_p,
                witness_q: e.witness_q.iter().map(i64::to_string).collect::<Vec<_>>().join(";"),
            });
        }
    }
    let summary = json!({
        "samples": alphas.len(),
        "qmax": qmax,
        "positive_at_largest_qmax": positive,
        "nonincreasing_in_qmax": monotone,
    });
    Ok((rows, summary))
}

fn standardize_summary(config: &ExperimentConfig) -> Result<serde_json::Value> {
    let gains = resolve_gains(config)?;
    let power = config.powers.first().copied().unwrap_or(1.0);
    let ch = ChannelInstance::new(gains.clone(), power, config.sigma2)?;
    let s = standardize_three_user(&ch)?;
    let strings =
        |m: &[Vec<Gain>]| -> Vec<Vec<String>> { m.iter().map(|r| r.iter().map(Gain::to_string).collect()).collect() };
    Ok(json!({
        "original": strings(&gains),
        "g0": s.g0.to_string(),
        "g1": s.g1.to_string(),
        "g1_displayed": s.g1_displayed.to_string(),
        "g1_forms_agree": s.g1 == s.g1_displayed,
        "g2": s.g2.to_string(),
        "g3": s.g3.to_string(),
        "standard_gains": strings(&s.standard_gains()),
        "effective": strings(&s.effective),
        "effective_matches_standard": s.effective == s.standard_gains(),
        "tx_scale": s.tx_scale.iter().map(Gain::to_string).collect::<Vec<_>>(),
        "rx_scale": s.rx_scale.iter().map(Gain::to_string).collect::<Vec<_>>(),
        "power_factors": s.power_factors,
        "noise_factors": s.noise_factors,
    }))
}

fn finish(
    config: &ExperimentConfig,
    files: &[&str],
    warnings: Vec<String>,
    started: u128,
    summary: serde_json::Value,
) -> Result<RunReport> {
    let dir = &config.out;
    let manifest = RunManifest {
        tool: "ria".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        scenario: config.scenario.to_string(),
        config_digest: config_digest(config),
        seed: config.seed,
        precision_bits: default_precision(),
        started_unix_ms: started,
        finished_unix_ms: now_unix_ms(),
        files: files.iter().map(|f| checksum_file(dir, f)).collect::<Result<_>>()?,
        warnings,
    };
    manifest.write(dir)?;
    Ok(RunReport { out_dir: dir.clone(), manifest, summary })
}

/// Runs the configured scenario and writes its data files and manifest to
/// `config.out`.
///
/// A sweep whose every point is noise-dominated still writes its files, then
/// fails with [`Error::NoiseDominated`].
pub fn run_scenario(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let started = now_unix_ms();
    let dir = config.out.clone();
    std::fs::create_dir_all(&dir)?;
    let std_warnings = |c: &ExperimentConfig| -> Vec<String> {
        if c.mode == GainMode::Numeric && c.scenario.is_sweep() {
            vec!["numeric mode: property Γ can only be reported as numeric-uncertain".into()]
        } else {
            Vec::new()
        }
    };
    let mut warnings = std_warnings(config);
    match config.scenario {
        s if s.is_sweep() => {
            let outcome = run_sweep(config)?;
            write_rows(&dir, "sweep.csv", &outcome.rows)?;
            let (summary, failure) = sweep_summary(config, &outcome);
            write_json(&dir, "summary.json", &summary)?;
            warnings.extend(outcome.warnings);
            let report = finish(config, &["sweep.csv", "summary.json"], warnings, started, summary)?;
            match failure {
                Some(e) => Err(e),
                None => Ok(report),
            }
        }
        Scenario::Gic3Standardize => {
            let summary = standardize_summary(config)?;
            write_json(&dir, "standardize.json", &summary)?;
            finish(config, &["standardize.json"], warnings, started, summary)
        }
        Scenario::GammaCheck => {
            let (rows, w) = gamma_rows(config)?;
            write_rows(&dir, "gamma_check.csv", &rows)?;
            warnings.extend(w);
            let holds = rows.iter().filter(|r| r.verdict == "holds").count();
            let summary = json!({ "cases": rows.len(), "holds": holds, "violated": rows.len() - holds });
            finish(config, &["gamma_check.csv"], warnings, started, summary)
        }
        Scenario::Khintchine => {
            let (rows, summary) = khintchine_rows(config)?;
            write_rows(&dir, "khintchine.csv", &rows)?;
            finish(config, &["khintchine.csv"], warnings, started, summary)
        }
        Scenario::GainScan => {
            let (rows, w) = gain_scan_records(config)?;
            write_rows(&dir, "gain_scan.csv", &rows)?;
            warnings.extend(w);
            let summary = json!({ "gains": rows.len() });
            finish(config, &["gain_scan.csv"], warnings, started, summary)
        }
        s => Err(Error::Config(format!("{s} has no runner"))),
    }
}

/// Enumerates every receiver model at the first configured power and checks
/// the applicable minimum-distance bounds; writes dmin.csv and dmin_bounds.csv.
pub fn run_dmin(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    if !config.scenario.is_sweep() {
        return Err(Error::Config(format!("dmin needs a sweep scenario, got {}", config.scenario)));
    }
    let started = now_unix_ms();
    std::fs::create_dir_all(&config.out)?;
    let mut warnings = Vec::new();
    let (models, extras): (Vec<ReceivedModel>, Vec<BoundExtras>) = match setup(config)? {
        Setup::Matrix(gains) => {
            let power = *config.powers.first().ok_or_else(|| Error::Config("dmin needs a power".into()))?;
            let bundle = bundle_at(config, &gains, power)?;
            warnings.extend(bundle.degeneracies());
            let extras = bundle
                .models
                .iter()
                .map(|m| {
                    let qmax = 4 * m.decoded.set.bound();
                    let work = (2.0 * qmax as f64 + 1.0).powi(m.m() as i32);
                    if work > KG_WORK_LIMIT || qmax > u64::from(u32::MAX) {
                        warnings.push(format!(
                            "receiver {} stream {}: κ̂ search too large; KG bound skipped",
                            m.receiver + 1,
                            m.decoded.id
                        ));
                        return Ok(BoundExtras::default());
                    }
                    let kappa = khintchine_kappa(&kg_alphas(m), config.epsilon, qmax as u32)?.kappa_hat;
                    Ok(BoundExtras {
                        request_kg: true,
                        kappa: Some(kappa),
                        kg_epsilon: config.epsilon,
                        ..Default::default()
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (bundle.models, extras)
        }
        Setup::Symmetric { h, a, w, m, irrational } => {
            let power = symmetric_powers(config, w)?[0];
            let levels = multilayer_levels(power, config.epsilon, w)?.max(1);
            let (_, model) = symmetric_multilayer_model(&h, &MultiLayerConstellation::new(w, a, levels)?, power)?;
            let extras = BoundExtras { rational_m: m, irrational: irrational.map(|b| *b), ..Default::default() };
            (vec![model], vec![extras])
        }
    };
    let mut rows = Vec::new();
    let mut bounds = Vec::new();
    for (model, extra) in models.iter().zip(&extras) {
        let rc = enumerate_received_with(model, &enumeration(config))?;
        let d = rc.min_distance();
        rows.push(DminRow {
            receiver: model.receiver + 1,
            stream_id: model.decoded.id.to_string(),
            tuples: model.tuple_count() as u64,
            points: rc.len() as u64,
            dmin: d.map_or(0.0, |d| d.scaled),
            dmin_exact: d.and_then(|d| d.exact.as_ref()).map(ToString::to_string).unwrap_or_default(),
            gamma: rc.gamma().tag().to_owned(),
        });
        if d.is_none() {
            continue;
        }
        for b in verify_dmin_bounds(model, &rc, extra)? {
            bounds.push(BoundRow {
                receiver: model.receiver + 1,
                stream_id: model.decoded.id.to_string(),
                kind: serde_json::to_value(b.kind)?.as_str().unwrap_or_default().to_owned(),
                bound: b.bound,
                measured: b.measured,
                pass: b.pass,
                certified_gap: b.certified_gap,
            });
        }
    }
    write_rows(&config.out, "dmin.csv", &rows)?;
    write_rows(&config.out, "dmin_bounds.csv", &bounds)?;
    let summary = json!({
        "models": rows.len(),
        "bounds_checked": bounds.len(),
        "bounds_passed": bounds.iter().filter(|b| b.pass).count(),
    });
    finish(config, &["dmin.csv", "dmin_bounds.csv"], warnings, started, summary)
}
