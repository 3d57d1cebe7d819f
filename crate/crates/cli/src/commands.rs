use std::io::Write;
use std::path::Path;

use serde::Serialize;
use tiernet_core::analytic::{
    area_spectral_efficiency, cellular_coverage_radius, k_c, k_c_bounds, k_f_limit_bounds, lambda_from_n_f,
    max_contention_density_cellular, max_contention_density_femto, n_f_per_cellsite, no_coverage_radius,
    shot_noise_k_f_limit,
};
use tiernet_core::linkmodel::location_coeffs;
use tiernet_core::sensing::{
    blended_power_policy, detection_probability_sc, false_alarm_probability, max_sensing_range, min_sensing_radius,
    noise_floor_dbm, pilot_power_dbm, pilot_snr, power_ratio_bounds, threshold_for_false_alarm,
};
use tiernet_core::simulator::{rate_cdf, trial_rng, ChannelSampler, PowerPolicy, Receiver, Scenario};
use tiernet_core::specfun::{chi2_cdf, Accuracy};
use tiernet_core::{ChannelMode, Config, CoreError};

use crate::output::{fmt12, open_out, opt12, write_csv};
use crate::sweep::{SweepSpec, SweepVar};
use crate::Failure;

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParams(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(format!("write failed: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Check(format!("write failed: {e}"))
    }
}

fn acc() -> Accuracy {
    Accuracy::default()
}

/// Copy of `cfg` with the swept variable set to `v`.
fn apply(cfg: &Config, var: SweepVar, v: f64) -> Result<Config, Failure> {
    let mut c = cfg.clone();
    match var {
        SweepVar::D => c.scenario.d_norm = v,
        SweepVar::PcOverPfDb => {
            c.system = c.system.with_pc_over_pf_db(v);
            c.scenario.fixed_pc_over_pf_db = v;
        }
        SweepVar::AlphaFo => c.system.alpha_fo = v,
        SweepVar::TfUf => {
            if v < 1.0 {
                return Err(Failure::Usage(format!("T_f must be >= 1, got {v}")));
            }
            c.system.t_f = v as u32;
            c.system.u_f = c.system.u_f.min(c.system.t_f);
        }
        SweepVar::Mtw => {}
    }
    c.validate()
        .map_err(|e| Failure::Usage(format!("{} = {}: {e}", var.name(), v)))?;
    Ok(c)
}

/// Sweep points as (value, config); a single point without a sweep.
fn points(cfg: &Config, sweep: Option<&SweepSpec>, allow_mtw: bool) -> Result<Vec<(Option<f64>, Config)>, Failure> {
    let Some(s) = sweep else {
        return Ok(vec![(None, cfg.clone())]);
    };
    if s.variable == SweepVar::Mtw && !allow_mtw {
        return Err(Failure::Usage("Mtw can only be swept by the sensing command".into()));
    }
    s.values()
        .into_iter()
        .map(|v| Ok((Some(v), apply(cfg, s.variable, v)?)))
        .collect()
}

fn with_sweep_column(sweep: Option<&SweepSpec>, header: &[&'static str]) -> Vec<&'static str> {
    let mut h = Vec::with_capacity(header.len() + 2);
    if sweep.is_some() {
        h.push("sweep_var");
        h.push("sweep_value");
    }
    h.extend_from_slice(header);
    h
}

fn prefix(sweep: Option<&SweepSpec>, value: Option<f64>) -> Vec<String> {
    match (sweep, value) {
        (Some(s), Some(v)) => vec![s.variable.name().to_string(), fmt12(v)],
        _ => Vec::new(),
    }
}

fn emit(out: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = open_out(out)?;
    write_csv(&mut w, header, rows)?;
    w.flush()?;
    Ok(())
}

pub fn analytic(cfg: &Config, sweep: Option<&SweepSpec>, out: Option<&Path>) -> Result<(), Failure> {
    let header = with_sweep_column(
        sweep,
        &[
            "d_norm",
            "pc_over_pf_db",
            "alpha_fo",
            "t_f",
            "u_f",
            "kappa",
            "d_f_m",
            "lambda_star",
            "n_f_star",
            "regime",
            "ase_bps_hz_m2",
            "lambda_cell",
            "n_f_cell",
            "d_c_m_at_n_f_target",
            "k_f_limit",
            "k_c",
        ],
    );
    let mut rows = Vec::new();
    for (value, c) in points(cfg, sweep, false)? {
        let (p, d) = (&c.system, c.scenario.d_norm);
        let coeffs = location_coeffs(d, p)?;
        let femto = max_contention_density_femto(d, p, &acc())?;
        let lambda_cell = max_contention_density_cellular(d, p).ok();
        let d_c = cellular_coverage_radius(lambda_from_n_f(c.scenario.n_f_target, p), p).ok();
        let mut row = prefix(sweep, value);
        row.extend([
            fmt12(d),
            fmt12(p.p_c_dbm - p.p_f_dbm),
            fmt12(p.alpha_fo),
            p.t_f.to_string(),
            p.u_f.to_string(),
            fmt12(coeffs.kappa),
            fmt12(no_coverage_radius(p, &acc())?),
            fmt12(femto.lambda_star),
            fmt12(n_f_per_cellsite(femto.lambda_star, p)),
            femto.regime.as_str().to_string(),
            fmt12(area_spectral_efficiency(femto.lambda_star, p)?),
            opt12(lambda_cell),
            opt12(lambda_cell.map(|l| n_f_per_cellsite(l, p))),
            opt12(d_c),
            fmt12(shot_noise_k_f_limit(p)),
            fmt12(k_c(p)),
        ]);
        rows.push(row);
    }
    emit(out, &header, &rows)
}

pub struct SensingOpts {
    pub m_tw: u32,
    pub p_false: f64,
    pub p_detect: f64,
}

pub fn sensing(cfg: &Config, sweep: Option<&SweepSpec>, opts: &SensingOpts, out: Option<&Path>) -> Result<(), Failure> {
    if !(opts.p_false > 0.0 && opts.p_false < 1.0) || !(opts.p_detect > 0.0 && opts.p_detect < 1.0) {
        return Err(Failure::Usage("--p-false and --p-detect must lie in (0, 1)".into()));
    }
    let header = with_sweep_column(
        sweep,
        &[
            "d_norm",
            "pc_over_pf_db",
            "alpha_fo",
            "t_f",
            "m_tw",
            "d_sense_m",
            "lambda_f",
            "bounds",
            "lb_db",
            "ub_db",
            "eps_tilde",
            "blend_db",
            "threshold",
            "p_false",
            "p_detect_at_d_sense",
            "max_range_m",
            "noise_dbm",
            "pilot_dbm",
        ],
    );
    let mut rows = Vec::new();
    for (value, c) in points(cfg, sweep, true)? {
        let m_tw = match (sweep, value) {
            (Some(s), Some(v)) if s.variable == SweepVar::Mtw => {
                if v < 1.0 {
                    return Err(Failure::Usage(format!("m_tw must be >= 1, got {v}")));
                }
                v as u32
            }
            _ => opts.m_tw,
        };
        let (p, d) = (&c.system, c.scenario.d_norm);
        let lambda_f = lambda_from_n_f(c.scenario.n_f_target, p);
        let d_sense = min_sensing_radius(d, p, &acc())?;
        let bounds = power_ratio_bounds(d, lambda_f, p, &acc());
        let blend = blended_power_policy(d, lambda_f, c.scenario.blend_weight, p, &acc()).ok();
        let thr = threshold_for_false_alarm(m_tw, opts.p_false, &acc())?;
        let pd = detection_probability_sc(pilot_snr(d_sense, p)?, m_tw, thr, p.t_f, &acc())?;
        let range = max_sensing_range(m_tw, opts.p_detect, opts.p_false, p, &acc()).ok();
        let mut row = prefix(sweep, value);
        row.extend([
            fmt12(d),
            fmt12(p.p_c_dbm - p.p_f_dbm),
            fmt12(p.alpha_fo),
            p.t_f.to_string(),
            m_tw.to_string(),
            fmt12(d_sense),
            fmt12(lambda_f),
            if bounds.is_ok() { "ok" } else { "infeasible" }.to_string(),
            opt12(bounds.as_ref().ok().map(|b| b.lb_db)),
            opt12(bounds.as_ref().ok().map(|b| b.ub_db)),
            opt12(bounds.as_ref().ok().map(|b| b.eps_tilde)),
            opt12(blend),
            fmt12(thr),
            fmt12(false_alarm_probability(m_tw, thr, &acc())?),
            fmt12(pd),
            opt12(range),
            fmt12(noise_floor_dbm(p)),
            fmt12(pilot_power_dbm(p)),
        ]);
        rows.push(row);
    }
    emit(out, &header, &rows)
}

pub struct SimOpts {
    pub seed: u64,
    pub drops: usize,
    pub fades: usize,
}

fn scenario_name(s: Scenario) -> &'static str {
    match s {
        Scenario::ReferenceCellularUser => "cellular-user",
        Scenario::ReferenceHotspot => "hotspot",
    }
}

fn mode_name(m: ChannelMode) -> &'static str {
    match m {
        ChannelMode::FullZf => "full-zf",
        ChannelMode::FastChi2 => "fast",
    }
}

pub fn simulate(
    cfg: &Config,
    sweep: Option<&SweepSpec>,
    opts: &SimOpts,
    out: Option<&Path>,
    cdf_out: Option<&Path>,
) -> Result<(), Failure> {
    if opts.drops == 0 || opts.fades == 0 {
        return Err(Failure::Usage("--drops and --fades must be positive".into()));
    }
    let header = with_sweep_column(
        sweep,
        &[
            "scenario",
            "d_norm",
            "n_f",
            "lambda_f",
            "mode",
            "seed",
            "n_drops",
            "n_fades",
            "p_outage",
            "ci_halfwidth_95",
            "rate_mean",
            "rate_p05",
            "rate_p50",
            "rate_p95",
        ],
    );
    let mut rows = Vec::new();
    let mut cdf_rows = Vec::new();
    for (i, (value, c)) in points(cfg, sweep, false)?.into_iter().enumerate() {
        let (p, sc) = (&c.system, &c.scenario);
        // Distinct, reproducible seed per sweep point.
        let seed = opts.seed.wrapping_add(i as u64);
        let cdf = rate_cdf(sc, opts.drops, opts.fades, p, seed)?;
        let total = cdf.sorted_rates.len() as f64;
        let p_out = cdf.fraction_below((1.0 + p.gamma_target).log2());
        let mean = cdf.sorted_rates.iter().sum::<f64>() / total;
        let mut row = prefix(sweep, value);
        row.extend([
            scenario_name(sc.scenario).to_string(),
            fmt12(sc.d_norm),
            fmt12(sc.n_f_target),
            fmt12(lambda_from_n_f(sc.n_f_target, p)),
            mode_name(sc.mode).to_string(),
            seed.to_string(),
            opts.drops.to_string(),
            opts.fades.to_string(),
            fmt12(p_out),
            fmt12(1.96 * (p_out * (1.0 - p_out) / total).sqrt()),
            fmt12(mean),
            fmt12(cdf.quantile(0.05)),
            fmt12(cdf.quantile(0.5)),
            fmt12(cdf.quantile(0.95)),
        ]);
        rows.push(row);
        if cdf_out.is_some() {
            for k in 0..=100 {
                let q = k as f64 / 100.0;
                let mut r = prefix(sweep, value);
                r.extend([fmt12(sc.d_norm), fmt12(q), fmt12(cdf.quantile(q))]);
                cdf_rows.push(r);
            }
        }
    }
    emit(out, &header, &rows)?;
    if let Some(path) = cdf_out {
        let h = with_sweep_column(sweep, &["d_norm", "quantile", "rate_bps_hz"]);
        emit(Some(path), &h, &cdf_rows)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Check {
    name: String,
    value: f64,
    lower: f64,
    upper: f64,
    pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, lower: f64, upper: f64) -> Self {
        Self {
            name: name.into(),
            value,
            lower,
            upper,
            pass: value >= lower && value <= upper,
        }
    }
}

#[derive(Serialize)]
struct Report {
    seed: u64,
    mode: &'static str,
    all_pass: bool,
    checks: Vec<Check>,
}

/// Two-sided KS distance to Gamma(k, 1).
fn ks_gamma(mut xs: Vec<f64>, k: u32) -> Result<f64, Failure> {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = chi2_cdf(2 * k, 2.0 * x, &acc()).map_err(CoreError::from)?;
        d = d.max((f - i as f64 / n).abs()).max((i as f64 + 1.0) / n - f);
    }
    Ok(d)
}

const KS_SAMPLES: usize = 20_000;

pub fn validate(cfg: &Config, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let p = &cfg.system;
    let mut checks = Vec::new();

    let (lo, hi) = k_f_limit_bounds(p)?;
    checks.push(Check::new(
        "femto shot-noise constant within bounds",
        shot_noise_k_f_limit(p),
        lo,
        hi,
    ));
    let (lo, hi) = k_c_bounds(p)?;
    checks.push(Check::new("cellular shot-noise constant within bounds", k_c(p), lo, hi));

    for d in [0.25, 0.5, 1.0] {
        if let Ok(lam) = max_contention_density_cellular(d, p) {
            let back = cellular_coverage_radius(lam, p)? / (d * p.r_c);
            checks.push(Check::new(
                format!("cellular radius round trip at D={d}"),
                back,
                1.0 - 1e-8,
                1.0 + 1e-8,
            ));
        }
    }

    // Outage closures: drop at the analytic density, expect outage near eps.
    // Sparse cellular drops vary a lot from drop to drop, so they get more
    // drops and fewer fades.
    let closure =
        |scenario: Scenario, d: f64, lam: f64, drops: usize, fades: usize, salt: u64| -> Result<f64, Failure> {
            let mut sc = cfg.scenario.clone();
            sc.scenario = scenario;
            sc.d_norm = d;
            sc.power_policy = PowerPolicy::Fixed;
            sc.fixed_pc_over_pf_db = p.p_c_dbm - p.p_f_dbm;
            sc.n_f_target = n_f_per_cellsite(lam, p);
            sc.include_noise = false;
            let cdf = rate_cdf(&sc, drops, fades, p, seed.wrapping_add(salt))?;
            Ok(cdf.fraction_below((1.0 + p.gamma_target).log2()))
        };
    let femto = max_contention_density_femto(0.5, p, &acc())?;
    if femto.lambda_star > 0.0 {
        let v = closure(Scenario::ReferenceHotspot, 0.5, femto.lambda_star, 300, 300, 1)?;
        checks.push(Check::new(
            "femto outage at analytic density, D=0.5",
            v,
            p.eps - 0.03,
            p.eps + 0.03,
        ));
    }
    if let Ok(lam) = max_contention_density_cellular(0.5, p) {
        let v = closure(Scenario::ReferenceCellularUser, 0.5, lam, 3000, 100, 2)?;
        checks.push(Check::new(
            "cellular outage at analytic density, D=0.5",
            v,
            p.eps - 0.02,
            p.eps + 0.02,
        ));
    }

    // Channel power laws for the configured antenna setup.
    let crit = 1.628 / (KS_SAMPLES as f64).sqrt();
    for (receiver, label, desired_dof) in [
        (Receiver::FemtoUser, "femto", p.t_f - p.u_f + 1),
        (Receiver::CellularUser, "cellular", p.t_c - p.u_c + 1),
    ] {
        let sampler = ChannelSampler::new(receiver, cfg.scenario.mode, p);
        let (mut desired, mut cross, mut marks) = (Vec::new(), Vec::new(), Vec::new());
        for j in 0..KS_SAMPLES {
            let mut rng = trial_rng(seed, u64::from(receiver == Receiver::CellularUser), j as u64);
            let draw = sampler.draw(1, &mut rng)?;
            desired.push(draw.desired_power);
            cross.push(draw.cross_tier_power);
            marks.extend(draw.mark_powers);
        }
        checks.push(Check::new(
            format!("{label} desired power KS"),
            ks_gamma(desired, desired_dof)?,
            0.0,
            crit,
        ));
        checks.push(Check::new(
            format!("{label} interferer mark KS"),
            ks_gamma(marks, p.u_f)?,
            0.0,
            crit,
        ));
        if receiver == Receiver::FemtoUser {
            checks.push(Check::new(
                "femto cross-tier power KS",
                ks_gamma(cross, p.u_c)?,
                0.0,
                crit,
            ));
        }
    }

    let all_pass = checks.iter().all(|c| c.pass);
    let report = Report {
        seed,
        mode: mode_name(cfg.scenario.mode),
        all_pass,
        checks,
    };
    let mut w = open_out(out)?;
    serde_json::to_writer_pretty(&mut w, &report).map_err(|e| Failure::Check(format!("write failed: {e}")))?;
    writeln!(w)?;
    w.flush()?;
    if all_pass {
        Ok(())
    } else {
        Err(Failure::Check("validation failed; see report".into()))
    }
}
