//! Carrier-sensing design.
//!
//! A femtocell that senses an uplink pilot from a nearby cellular user backs
//! its power off to P_c/P_f chosen between two per-location bounds: the lower
//! bound keeps the cellular user covered, the upper bound keeps the hotspot
//! user covered. Energy detection with selection combining over the T_f
//! femtocell antennas decides whether a cellular user is present.

use serde::Serialize;

use crate::analytic::{k_c, k_f_limit_bounds, shot_noise_c_f};
use crate::error::{CoreError, Result};
use crate::linkmodel::{db_to_lin, lin_to_db, link_budget, location_coeffs, LinkType, SystemParams};
use crate::specfun::{binomial, inv_reg_inc_beta, ln_reg_lower_gamma, reg_upper_gamma, Accuracy};

/// Pilot power sits this far below the maximum terminal power.
pub const PILOT_BACKOFF_DB: f64 = 3.0;

const ROOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerRatioBounds {
    pub lb_db: f64,
    pub ub_db: f64,
    /// Femto user outage budget left after hotspot interference.
    pub eps_tilde: f64,
    pub k_f_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensingPlan {
    pub d_sense_m: f64,
    pub pc_over_pf_lb_db: f64,
    pub pc_over_pf_ub_db: f64,
    pub blend_weight: f64,
    pub m_tw: u32,
    pub threshold: f64,
    /// Detection probability for a pilot sensed at `d_sense_m`.
    pub p_detect: f64,
    pub p_false: f64,
    pub noise_power_dbm: f64,
}

/// Smallest radius a femtocell at D must sense so that no unsensed femtocell
/// puts a cellular user at D into outage on its own.
pub fn min_sensing_radius(d_norm: f64, p: &SystemParams, acc: &Accuracy) -> Result<f64> {
    p.validate()?;
    let c = location_coeffs(d_norm, p)?;
    let x = inv_reg_inc_beta(p.eps, f64::from(p.t_c - p.u_c + 1), f64::from(p.u_f), acc)?;
    Ok((c.q_c * p.gamma_target / f64::from(p.u_f) * (1.0 - x) / x).powf(1.0 / p.alpha_fo))
}

/// Window of P_c/P_f (dB) serving both tiers at D with femtocell density λ_f.
pub fn power_ratio_bounds(d_norm: f64, lambda_f: f64, p: &SystemParams, acc: &Accuracy) -> Result<PowerRatioBounds> {
    p.validate()?;
    if !(lambda_f > 0.0) {
        return Err(CoreError::InvalidParams(format!(
            "lambda_f = {lambda_f} must be positive"
        )));
    }
    let d = p.d_meters(d_norm)?;
    let lb = link_budget(p);
    let (a_c, a_fc, a_fi, a_cf) = (
        lb.gain(LinkType::MacroToCell),
        lb.gain(LinkType::MacroToFemto),
        lb.gain(LinkType::FemtoToHome),
        lb.gain(LinkType::FemtoToCell),
    );
    let delta = p.delta_f();
    let c_f = shot_noise_c_f(p)?;
    let (u_c, u_f) = (f64::from(p.u_c), f64::from(p.u_f));
    // Q_f does not depend on the power ratio.
    let q_f = location_coeffs(d_norm, p)?.q_f;
    let k_f_max = k_f_limit_bounds(p)?.1;

    let lower =
        p.gamma_target * (a_cf / a_c) * u_c * d.powf(p.alpha_c) * (c_f * lambda_f / (p.eps * k_c(p))).powf(1.0 / delta);

    let t = lambda_f * c_f * (q_f * p.gamma_target).powf(delta);
    let eps_tilde = (p.eps - t / k_f_max) / (1.0 - t);
    if !(eps_tilde > 0.0 && eps_tilde < 1.0) {
        return Err(CoreError::Infeasible(format!(
            "eps_tilde = {eps_tilde} outside (0, 1) at lambda_f = {lambda_f}"
        )));
    }
    let y = inv_reg_inc_beta(eps_tilde, f64::from(p.t_f - p.u_f + 1), u_c, acc)?;
    let upper =
        (1.0 / p.gamma_target) * (a_fi / a_fc) * (u_c * p.r_f.powf(-p.alpha_fi) / (u_f * d.powf(-p.alpha_c))) * y
            / (1.0 - y);

    let (lb_db, ub_db) = (lin_to_db(lower), lin_to_db(upper));
    if lb_db > ub_db {
        return Err(CoreError::Infeasible(format!(
            "power window empty at d_norm = {d_norm}: lb {lb_db:.3} dB > ub {ub_db:.3} dB"
        )));
    }
    Ok(PowerRatioBounds {
        lb_db,
        ub_db,
        eps_tilde,
        k_f_max,
    })
}

/// weight·ub + (1 − weight)·lb, in dB.
pub fn blended_power_policy(d_norm: f64, lambda_f: f64, weight: f64, p: &SystemParams, acc: &Accuracy) -> Result<f64> {
    if !(0.0..=1.0).contains(&weight) {
        return Err(CoreError::InvalidParams(format!(
            "blend weight {weight} must lie in [0, 1]"
        )));
    }
    let b = power_ratio_bounds(d_norm, lambda_f, p, acc)?;
    Ok(weight * b.ub_db + (1.0 - weight) * b.lb_db)
}

/// N₀W calibrated so a cell-edge cellular user sees `snr_edge_db`.
pub fn noise_floor_dbm(p: &SystemParams) -> f64 {
    let lb = link_budget(p);
    p.p_c_dbm - lb.a_c_db - 10.0 * p.alpha_c * p.r_c.log10() - p.snr_edge_db
}

pub fn pilot_power_dbm(p: &SystemParams) -> f64 {
    p.p_ut_dbm - PILOT_BACKOFF_DB
}

/// Mean pilot SNR at a femtocell `d` meters from the transmitting user.
pub fn pilot_snr(d: f64, p: &SystemParams) -> Result<f64> {
    if !(d > 0.0) {
        return Err(CoreError::InvalidParams(format!("distance {d} m must be positive")));
    }
    let lb = link_budget(p);
    let rx_dbm = pilot_power_dbm(p) - lb.fixed_loss_db(LinkType::MacroToFemto) - 10.0 * p.alpha_c * d.log10();
    Ok(db_to_lin(rx_dbm - noise_floor_dbm(p)))
}

fn check_detector(m_tw: u32, threshold: f64) -> Result<()> {
    if m_tw == 0 {
        return Err(CoreError::InvalidParams("time-bandwidth product must be >= 1".into()));
    }
    if !(threshold >= 0.0) {
        return Err(CoreError::InvalidParams(format!("threshold {threshold} must be >= 0")));
    }
    Ok(())
}

pub fn false_alarm_probability(m_tw: u32, threshold: f64, acc: &Accuracy) -> Result<f64> {
    check_detector(m_tw, threshold)?;
    Ok(reg_upper_gamma(2.0 * f64::from(m_tw), threshold, acc)?)
}

/// Single-branch detection probability under Rayleigh fading.
pub fn detection_probability_rayleigh(gamma_bar: f64, m_tw: u32, threshold: f64, acc: &Accuracy) -> Result<f64> {
    check_detector(m_tw, threshold)?;
    if !(gamma_bar >= 0.0) {
        return Err(CoreError::InvalidParams(format!(
            "gamma_bar = {gamma_bar} must be >= 0"
        )));
    }
    if threshold == 0.0 {
        return Ok(1.0);
    }
    if gamma_bar == 0.0 {
        return false_alarm_probability(m_tw, threshold, acc);
    }
    let m = f64::from(m_tw);
    let n = 2.0 * m - 1.0;
    let mg = m * gamma_bar;
    let head = reg_upper_gamma(n, threshold, acc)?;
    // exp(-λ/(1+mγ̄)) (1 + 1/(mγ̄))^(2m-1) P(2m-1, λ mγ̄/(1+mγ̄)), in logs
    let ln_tail =
        -threshold / (1.0 + mg) + n * (1.0 / mg).ln_1p() + ln_reg_lower_gamma(n, threshold * mg / (1.0 + mg), acc)?;
    Ok((head + ln_tail.exp()).clamp(0.0, 1.0))
}

/// Detection probability with selection combining over `t_f` branches.
pub fn detection_probability_sc(gamma_bar: f64, m_tw: u32, threshold: f64, t_f: u32, acc: &Accuracy) -> Result<f64> {
    if t_f == 0 {
        return Err(CoreError::InvalidParams("t_f must be >= 1".into()));
    }
    let mut sum = 0.0;
    for i in 0..t_f {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let branch = detection_probability_rayleigh(gamma_bar / f64::from(i + 1), m_tw, threshold, acc)?;
        sum += sign / f64::from(i + 1) * binomial(t_f - 1, i) * branch;
    }
    Ok((f64::from(t_f) * sum).clamp(0.0, 1.0))
}

/// Threshold λ with P_false(λ) equal to `p_false_target`.
pub fn threshold_for_false_alarm(m_tw: u32, p_false_target: f64, acc: &Accuracy) -> Result<f64> {
    if !(p_false_target > 0.0 && p_false_target < 1.0) {
        return Err(CoreError::InvalidParams(format!(
            "false alarm target {p_false_target} must lie in (0, 1)"
        )));
    }
    let m = 2.0 * f64::from(m_tw);
    let mut hi = m.max(1.0);
    while false_alarm_probability(m_tw, hi, acc)? > p_false_target {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    while hi - lo > ROOT_TOL * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if false_alarm_probability(m_tw, mid, acc)? > p_false_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest femto-to-user distance at which the pilot is still detected with
/// probability `p_detect_target` at false-alarm rate `p_false_target`.
pub fn max_sensing_range(
    m_tw: u32,
    p_detect_target: f64,
    p_false_target: f64,
    p: &SystemParams,
    acc: &Accuracy,
) -> Result<f64> {
    p.validate()?;
    if !(p_detect_target > 0.0 && p_detect_target < 1.0) {
        return Err(CoreError::InvalidParams(format!(
            "detect target {p_detect_target} must lie in (0, 1)"
        )));
    }
    let thr = threshold_for_false_alarm(m_tw, p_false_target, acc)?;
    let meets = |d: f64| -> Result<bool> {
        Ok(detection_probability_sc(pilot_snr(d, p)?, m_tw, thr, p.t_f, acc)? >= p_detect_target)
    };
    let (mut lo, mut hi) = (1e-3_f64, 1e7_f64);
    if !meets(lo)? {
        return Err(CoreError::Infeasible(format!(
            "detect target {p_detect_target} unreachable even at {lo} m with m = {m_tw}"
        )));
    }
    if meets(hi)? {
        return Ok(hi);
    }
    // Bisection in log-distance.
    while (hi / lo).ln() > ROOT_TOL {
        let mid = (lo * hi).sqrt();
        if meets(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[allow(clippy::too_many_arguments)]
pub fn sensing_plan(
    d_norm: f64,
    lambda_f: f64,
    blend_weight: f64,
    m_tw: u32,
    p_false_target: f64,
    p: &SystemParams,
    acc: &Accuracy,
) -> Result<SensingPlan> {
    let d_sense_m = min_sensing_radius(d_norm, p, acc)?;
    let bounds = power_ratio_bounds(d_norm, lambda_f, p, acc)?;
    if !(0.0..=1.0).contains(&blend_weight) {
        return Err(CoreError::InvalidParams(format!(
            "blend weight {blend_weight} must lie in [0, 1]"
        )));
    }
    let threshold = threshold_for_false_alarm(m_tw, p_false_target, acc)?;
    Ok(SensingPlan {
        d_sense_m,
        pc_over_pf_lb_db: bounds.lb_db,
        pc_over_pf_ub_db: bounds.ub_db,
        blend_weight,
        m_tw,
        threshold,
        p_detect: detection_probability_sc(pilot_snr(d_sense_m, p)?, m_tw, threshold, p.t_f, acc)?,
        p_false: false_alarm_probability(m_tw, threshold, acc)?,
        noise_power_dbm: noise_floor_dbm(p),
    })
}
