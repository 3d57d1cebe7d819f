//! Closed-form coverage results for both tiers.
//!
//! Femtocell side: the no-coverage radius D_f, its single/multi-user ratios
//! and the maximum contention density λ_f*(D) with its hotspot-limited limit.
//! Cellular side: K_c, the density that keeps a cellular user at D within
//! outage, the coverage radius D_c, and area spectral efficiency.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::linkmodel::{coeffs_at_meters, link_budget, location_coeffs, LinkType, SystemParams};
use crate::specfun::{beta, binomial, gamma, inv_reg_inc_beta, reg_inc_beta, Accuracy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    CellularLimited,
    HotspotLimited,
    Infeasible,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::CellularLimited => "cellular-limited",
            Regime::HotspotLimited => "hotspot-limited",
            Regime::Infeasible => "infeasible",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShotNoiseConstants {
    pub c_f: f64,
    pub k_f: f64,
    pub k_f_limit: f64,
    pub k_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FemtoDensity {
    /// Femtocells per m².
    pub lambda_star: f64,
    pub regime: Regime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageSolution {
    pub d_norm: f64,
    pub kappa: f64,
    pub d_f_m: f64,
    pub lambda_star: f64,
    pub n_f: f64,
    pub regime: Regime,
    /// Cellular coverage radius for the density it was solved at.
    pub d_c_m: f64,
}

/// Which K_f enters the femto density formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KfChoice {
    /// K_f evaluated at the location's κ.
    Exact,
    /// (T_f − U_f + 1)^δ_f · Γ(1 − δ_f), the upper bound on K̆_f.
    LimitUpperBound,
}

/// Femtocells per cellsite for a density in m⁻².
pub fn n_f_per_cellsite(lambda_f: f64, p: &SystemParams) -> f64 {
    lambda_f * PI * p.r_c * p.r_c
}

pub fn lambda_from_n_f(n_f: f64, p: &SystemParams) -> f64 {
    n_f / (PI * p.r_c * p.r_c)
}

/// D_f: inside this distance no femtocell user meets its outage target.
pub fn no_coverage_radius(p: &SystemParams, acc: &Accuracy) -> Result<f64> {
    p.validate()?;
    let lb = link_budget(p);
    let x = inv_reg_inc_beta(p.eps, f64::from(p.t_f - p.u_f + 1), f64::from(p.u_c), acc)?;
    let k = lb.gain(LinkType::FemtoToHome) / lb.gain(LinkType::MacroToFemto) * p.r_f.powf(-p.alpha_fi);
    let per_user = (1.0 / f64::from(p.u_f)) / (p.pc_over_pf() / f64::from(p.u_c));
    let inner = (k / p.gamma_target) * per_user * x / (1.0 - x);
    Ok(inner.powf(-1.0 / p.alpha_c))
}

/// (D_f,SU / D_f,MU, D_f,SU / D_f,single-antenna) for U_c = 1.
pub fn su_mu_radius_ratios(p: &SystemParams) -> Result<(f64, f64)> {
    p.validate()?;
    if p.u_c != 1 {
        return Err(CoreError::Precondition(format!("ratios need u_c = 1, got {}", p.u_c)));
    }
    let t = f64::from(p.t_f);
    let eps = p.eps;
    let root = eps.powf(1.0 / t);
    let base = ((1.0 - root) / root) * (eps / (1.0 - eps));
    Ok(((base / t).powf(1.0 / p.alpha_c), base.powf(1.0 / p.alpha_c)))
}

pub fn shot_noise_c_f(p: &SystemParams) -> Result<f64> {
    let d = p.delta_f();
    let u = p.u_f;
    let mut sum = 0.0;
    for k in 0..u {
        sum += binomial(u, k) * beta(f64::from(k) + d, f64::from(u - k) - d)?;
    }
    Ok(PI * d * f64::from(u).powf(-d) * sum)
}

/// Σ_{l=1}^{n} (1/l!) Π_{m=0}^{l-1} (m − δ).
fn falling_series(n: u32, delta: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0;
    for l in 1..=n {
        term *= (f64::from(l - 1) - delta) / f64::from(l);
        sum += term;
    }
    sum
}

pub fn shot_noise_k_f(kappa: f64, p: &SystemParams) -> f64 {
    if p.u_f == p.t_f {
        return 1.0;
    }
    let d = p.delta_f();
    let r = kappa / (kappa + 1.0);
    let mut outer = 0.0;
    for j in 0..(p.t_f - p.u_f) {
        let w = r.powi(j as i32) * binomial(p.u_c + j - 1, j);
        outer += w * falling_series(p.t_f - p.u_f - j, d);
    }
    1.0 / (1.0 + (1.0 + kappa).powf(-f64::from(p.u_c)) * outer)
}

/// K̆_f = K_f at κ = 0.
pub fn shot_noise_k_f_limit(p: &SystemParams) -> f64 {
    1.0 / (1.0 + falling_series(p.t_f - p.u_f, p.delta_f()))
}

/// (T_f − U_f + 1)^δ_f and Γ(1 − δ_f)(T_f − U_f + 1)^δ_f.
pub fn k_f_limit_bounds(p: &SystemParams) -> Result<(f64, f64)> {
    let d = p.delta_f();
    let lo = f64::from(p.t_f - p.u_f + 1).powf(d);
    Ok((lo, gamma(1.0 - d)? * lo))
}

pub fn k_c(p: &SystemParams) -> f64 {
    1.0 / (1.0 + falling_series(p.t_c - p.u_c, p.delta_f()))
}

/// (T_c − U_c + 1)^δ_f and Γ(1 − δ_f)(T_c − U_c + 1)^δ_f.
pub fn k_c_bounds(p: &SystemParams) -> Result<(f64, f64)> {
    let d = p.delta_f();
    let lo = f64::from(p.t_c - p.u_c + 1).powf(d);
    Ok((lo, gamma(1.0 - d)? * lo))
}

pub fn shot_noise_constants(kappa: f64, p: &SystemParams) -> Result<ShotNoiseConstants> {
    Ok(ShotNoiseConstants {
        c_f: shot_noise_c_f(p)?,
        k_f: shot_noise_k_f(kappa, p),
        k_f_limit: shot_noise_k_f_limit(p),
        k_c: k_c(p),
    })
}

/// λ_f*(D) for the femtocell user's outage constraint.
pub fn max_contention_density_femto(d_norm: f64, p: &SystemParams, acc: &Accuracy) -> Result<FemtoDensity> {
    max_contention_density_femto_with(d_norm, p, KfChoice::Exact, acc)
}

pub fn max_contention_density_femto_with(
    d_norm: f64,
    p: &SystemParams,
    kf: KfChoice,
    acc: &Accuracy,
) -> Result<FemtoDensity> {
    p.validate()?;
    let c = location_coeffs(d_norm, p)?;
    let k_f = match kf {
        KfChoice::Exact => shot_noise_k_f(c.kappa, p),
        KfChoice::LimitUpperBound => k_f_limit_bounds(p)?.1,
    };
    let i_term = reg_inc_beta(
        c.kappa / (c.kappa + 1.0),
        f64::from(p.t_f - p.u_f + 1),
        f64::from(p.u_c),
        acc,
    )?;
    let denom = 1.0 / k_f - i_term;
    if i_term > p.eps || denom <= 0.0 {
        return Ok(FemtoDensity {
            lambda_star: 0.0,
            regime: Regime::Infeasible,
        });
    }
    let scale = shot_noise_c_f(p)? * (c.q_f * p.gamma_target).powf(p.delta_f());
    Ok(FemtoDensity {
        lambda_star: (p.eps - i_term) / denom / scale,
        regime: if i_term >= p.eps / 2.0 {
            Regime::CellularLimited
        } else {
            Regime::HotspotLimited
        },
    })
}

/// λ̆_f, the κ → 0 limit of λ_f*(D).
pub fn hotspot_limited_density(p: &SystemParams) -> Result<f64> {
    p.validate()?;
    let q_f = coeffs_at_meters(p.r_c, p, 1.0).q_f;
    Ok(p.eps * shot_noise_k_f_limit(p) / (shot_noise_c_f(p)? * (q_f * p.gamma_target).powf(p.delta_f())))
}

/// λ_f*(D) for the cellular user's outage constraint.
pub fn max_contention_density_cellular(d_norm: f64, p: &SystemParams) -> Result<f64> {
    p.validate()?;
    let c = location_coeffs(d_norm, p)?;
    Ok(p.eps * k_c(p) / (shot_noise_c_f(p)? * (c.q_c * p.gamma_target).powf(p.delta_f())))
}

/// D_c in meters for femtocell density `lambda_f`.
pub fn cellular_coverage_radius(lambda_f: f64, p: &SystemParams) -> Result<f64> {
    cellular_coverage_radius_with(lambda_f, k_c(p), p)
}

/// D_c with an explicit K_c, e.g. its upper bound.
pub fn cellular_coverage_radius_with(lambda_f: f64, k_c: f64, p: &SystemParams) -> Result<f64> {
    p.validate()?;
    if !(lambda_f > 0.0) {
        return Err(CoreError::InvalidParams(format!(
            "lambda_f = {lambda_f} must be positive"
        )));
    }
    let lb = link_budget(p);
    let geo = (1.0 / (p.gamma_target * f64::from(p.u_c)))
        * (lb.gain(LinkType::MacroToCell) / lb.gain(LinkType::FemtoToCell))
        * p.pc_over_pf();
    let shot = p.eps * k_c / (lambda_f * shot_noise_c_f(p)?);
    Ok(geo.powf(1.0 / p.alpha_c) * shot.powf(1.0 / (p.delta_f() * p.alpha_c)))
}

/// (1 − ε) U_f λ_f log₂(1 + Γ) in b/s/Hz/m².
pub fn area_spectral_efficiency(lambda_f: f64, p: &SystemParams) -> Result<f64> {
    if !(lambda_f >= 0.0) {
        return Err(CoreError::InvalidParams(format!("lambda_f = {lambda_f} must be >= 0")));
    }
    Ok((1.0 - p.eps) * f64::from(p.u_f) * lambda_f * (1.0 + p.gamma_target).log2())
}

/// Femto-side solution at `d_norm`, with D_c evaluated at `lambda_for_dc`.
pub fn coverage_solution(
    d_norm: f64,
    lambda_for_dc: f64,
    p: &SystemParams,
    acc: &Accuracy,
) -> Result<CoverageSolution> {
    let c = location_coeffs(d_norm, p)?;
    let fd = max_contention_density_femto(d_norm, p, acc)?;
    Ok(CoverageSolution {
        d_norm,
        kappa: c.kappa,
        d_f_m: no_coverage_radius(p, acc)?,
        lambda_star: fd.lambda_star,
        n_f: n_f_per_cellsite(fd.lambda_star, p),
        regime: fd.regime,
        d_c_m: cellular_coverage_radius(lambda_for_dc, p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkmodel::db_to_lin;
    use proptest::prelude::*;

    fn acc() -> Accuracy {
        Accuracy::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn su() -> SystemParams {
        SystemParams::default()
    }

    #[test]
    fn d_f_single_user_closed_form() {
        for t_f in 1..=4 {
            let p = SystemParams { t_f, ..su() };
            let lb = link_budget(&p);
            let k = lb.gain(LinkType::FemtoToHome) / lb.gain(LinkType::MacroToFemto) * p.r_f.powf(-p.alpha_fi);
            let root = p.eps.powf(1.0 / f64::from(t_f));
            let want = ((k / p.gamma_target) / p.pc_over_pf() * root / (1.0 - root)).powf(-1.0 / p.alpha_c);
            assert!(rel(no_coverage_radius(&p, &acc()).unwrap(), want) < 1e-10);
        }
    }

    #[test]
    fn d_f_power_scaling() {
        let p = su();
        let d0 = no_coverage_radius(&p, &acc()).unwrap();
        let doubled = SystemParams {
            p_f_dbm: p.p_f_dbm + 10.0 * 2f64.log10(),
            ..p.clone()
        };
        let d1 = no_coverage_radius(&doubled, &acc()).unwrap();
        assert!(rel(d1 / d0, 2f64.powf(-1.0 / p.alpha_c)) < 1e-10);
    }

    #[test]
    fn ratios_match_direct_radii() {
        let p = su().with_pc_over_pf_db(20.0);
        let d_su = no_coverage_radius(&p, &acc()).unwrap();
        let d_mu = no_coverage_radius(&SystemParams { u_f: 2, ..p.clone() }, &acc()).unwrap();
        let d_one = no_coverage_radius(&SystemParams { t_f: 1, ..p.clone() }, &acc()).unwrap();
        let (r_mu, r_one) = su_mu_radius_ratios(&p).unwrap();
        assert!(rel(r_mu, d_su / d_mu) < 1e-9);
        assert!(rel(r_one, d_su / d_one) < 1e-9);
        assert!((r_mu - 0.5725).abs() < 1e-4);
        assert!((r_one - 0.6871).abs() < 1e-4);
    }

    #[test]
    fn ratios_small_eps_and_trivial_cases() {
        let p = SystemParams { t_f: 1, ..su() };
        let (a, b) = su_mu_radius_ratios(&p).unwrap();
        assert!((a - 1.0).abs() < 1e-14 && (b - 1.0).abs() < 1e-14);
        let tiny = SystemParams { eps: 1e-7, ..su() };
        let (r, _) = su_mu_radius_ratios(&tiny).unwrap();
        let approx = (1e-7f64.powf(0.5) / 2.0).powf(1.0 / 3.8);
        assert!(rel(r, approx) < 1e-3);
        assert!(su_mu_radius_ratios(&SystemParams { u_c: 2, ..su() }).is_err());
    }

    #[test]
    fn c_f_closed_forms() {
        let p = su();
        let d = p.delta_f();
        assert!(rel(shot_noise_c_f(&p).unwrap(), PI * d * PI / (PI * d).sin()) < 1e-12);
        let four = SystemParams { alpha_fo: 4.0, ..su() };
        assert!(rel(shot_noise_c_f(&four).unwrap(), PI * PI / 2.0) < 1e-12);
    }

    #[test]
    fn c_f_two_users_term_by_term() {
        let p = SystemParams { u_f: 2, ..su() };
        let d = p.delta_f();
        let lnb = |a: f64, b: f64| crate::specfun::ln_beta(a, b).unwrap().exp();
        let want = PI * d * 2f64.powf(-d) * (lnb(d, 2.0 - d) + 2.0 * lnb(1.0 + d, 1.0 - d));
        assert!(rel(shot_noise_c_f(&p).unwrap(), want) < 1e-13);
    }

    #[test]
    fn k_f_limits() {
        let p = SystemParams { t_f: 4, u_f: 1, ..su() };
        assert!(rel(shot_noise_k_f(0.0, &p), shot_noise_k_f_limit(&p)) < 1e-15);
        assert!((shot_noise_k_f(1e12, &p) - 1.0).abs() < 1e-9);
        let full = SystemParams { t_f: 3, u_f: 3, ..su() };
        for &k in &[0.0, 0.3, 10.0] {
            assert_eq!(shot_noise_k_f(k, &full), 1.0);
        }
        for &k in &[0.0, 0.01, 0.5, 3.0, 100.0] {
            assert!(shot_noise_k_f(k, &p) <= shot_noise_k_f_limit(&p) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn k_c_reference_value() {
        let p = su();
        assert!((k_c(&p) - 3.47).abs() < 0.01);
        let (lo, hi) = k_c_bounds(&p).unwrap();
        assert!((hi - 3.87).abs() < 0.01);
        assert!(lo <= k_c(&p) && k_c(&p) <= hi);
        assert_eq!(k_c(&SystemParams { u_c: 4, ..su() }), 1.0);
    }

    #[test]
    fn femto_density_infeasible_inside_d_f() {
        let p = su();
        let d_f = no_coverage_radius(&p, &acc()).unwrap();
        let inside = max_contention_density_femto(0.9 * d_f / p.r_c, &p, &acc()).unwrap();
        assert_eq!(inside.regime, Regime::Infeasible);
        assert_eq!(inside.lambda_star, 0.0);
        let outside = max_contention_density_femto(1.1 * d_f / p.r_c, &p, &acc()).unwrap();
        assert!(outside.lambda_star > 0.0);
    }

    #[test]
    fn femto_density_boundary_coherent() {
        let p = su();
        let d_f = no_coverage_radius(&p, &acc()).unwrap() / p.r_c;
        let below = max_contention_density_femto(d_f * (1.0 - 1e-9), &p, &acc()).unwrap();
        let above = max_contention_density_femto(d_f * (1.0 + 1e-9), &p, &acc()).unwrap();
        assert_eq!(below.lambda_star, 0.0);
        assert!(above.lambda_star >= 0.0 && above.lambda_star < 1e-9);
    }

    #[test]
    fn femto_density_approaches_limit() {
        // Lower macro power pushes κ below 1e-9 at the cell edge.
        let p = SystemParams { p_c_dbm: -60.0, ..su() };
        let kappa = location_coeffs(1.0, &p).unwrap().kappa;
        assert!(kappa < 1e-9, "{kappa}");
        let got = max_contention_density_femto(1.0, &p, &acc()).unwrap();
        let lim = hotspot_limited_density(&p).unwrap();
        assert!(rel(got.lambda_star, lim) <= 1e-6);
        assert_eq!(got.regime, Regime::HotspotLimited);
    }

    #[test]
    fn femto_density_nondecreasing_in_d() {
        for p in [su(), SystemParams { u_f: 2, ..su() }, su().with_pc_over_pf_db(30.0)] {
            let mut last = 0.0;
            for i in 1..=400 {
                let v = max_contention_density_femto(f64::from(i) / 400.0, &p, &acc())
                    .unwrap()
                    .lambda_star;
                assert!(v >= last * (1.0 - 1e-12));
                last = v;
            }
        }
    }

    #[test]
    fn cellular_density_and_radius_round_trip() {
        for p in [su(), su().with_pc_over_pf_db(20.0), SystemParams { u_c: 4, ..su() }] {
            for &dn in &[0.05, 0.2, 0.5, 1.0] {
                let lam = max_contention_density_cellular(dn, &p).unwrap();
                let d_c = cellular_coverage_radius(lam, &p).unwrap();
                assert!(rel(d_c, dn * p.r_c) < 1e-9);
            }
        }
    }

    #[test]
    fn coverage_radius_power_scaling() {
        let p = su().with_pc_over_pf_db(20.0);
        let lam = lambda_from_n_f(60.0, &p);
        let k: f64 = 1.7;
        let boosted = p.with_pc_over_pf_db(20.0 + 10.0 * p.alpha_c * k.log10());
        let r = cellular_coverage_radius(lam, &boosted).unwrap() / cellular_coverage_radius(lam, &p).unwrap();
        assert!(rel(r, k) < 1e-10);
    }

    #[test]
    fn area_spectral_efficiency_basics() {
        let p = su();
        assert_eq!(area_spectral_efficiency(0.0, &p).unwrap(), 0.0);
        assert!(((1.0 + db_to_lin(5.0)).log2() - 2.06).abs() < 0.005);
        let a = area_spectral_efficiency(1e-4, &p).unwrap();
        let b = area_spectral_efficiency(2e-4, &p).unwrap();
        assert!(rel(b, 2.0 * a) < 1e-15);
    }

    #[test]
    fn coverage_solution_consistent() {
        let p = su();
        let lam = lambda_from_n_f(60.0, &p);
        let s = coverage_solution(0.5, lam, &p, &acc()).unwrap();
        assert!(rel(s.n_f, s.lambda_star * PI * p.r_c * p.r_c) < 1e-12);
        assert!(s.d_f_m > 0.0);
        assert!(rel(s.d_c_m, cellular_coverage_radius(lam, &p).unwrap()) < 1e-15);
    }

    proptest! {
        #[test]
        fn k_f_limit_within_bounds(t_f in 1u32..=8, u_off in 0u32..8, alpha in 2.01f64..20.0) {
            let u_f = 1 + u_off % t_f;
            let p = SystemParams { t_f, u_f, alpha_fo: alpha, ..SystemParams::default() };
            let (lo, hi) = k_f_limit_bounds(&p).unwrap();
            let k = shot_noise_k_f_limit(&p);
            prop_assert!(lo <= k * (1.0 + 1e-12) && k <= hi * (1.0 + 1e-12));
        }

        #[test]
        fn d_f_log_log_slope(ratio_db in -10.0f64..40.0) {
            let p = SystemParams::default().with_pc_over_pf_db(ratio_db);
            let h = 1e-3;
            let lo = no_coverage_radius(&p.with_pc_over_pf_db(ratio_db + h), &Accuracy::default()).unwrap();
            let hi = no_coverage_radius(&p.with_pc_over_pf_db(ratio_db - h), &Accuracy::default()).unwrap();
            // x = log10(P_f/P_c) rises by 2h/10 from `lo` to `hi`.
            let slope = (hi.log10() - lo.log10()) / (2.0 * h / 10.0);
            prop_assert!((slope + 1.0 / p.alpha_c).abs() < 1e-9);
        }
    }
}
