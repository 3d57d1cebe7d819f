//! System parameters, the five path-loss laws and per-location coefficients.
//!
//! Distances are meters throughout. A normalized location `d_norm = D / R_c`
//! is accepted wherever the result is plotted against the cell radius.

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

pub fn db_to_lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn lin_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

/// Every parameter of the two-tier model. Defaults are the reference set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemParams {
    /// Target SIR Γ (linear).
    pub gamma_target: f64,
    /// Maximum outage probability ε.
    pub eps: f64,
    pub r_c: f64,
    pub r_f: f64,
    pub t_c: u32,
    pub t_f: u32,
    pub u_c: u32,
    pub u_f: u32,
    pub p_c_dbm: f64,
    pub p_f_dbm: f64,
    pub p_ut_dbm: f64,
    /// Partition (wall) loss W.
    pub wall_db: f64,
    pub f_c_mhz: f64,
    pub alpha_c: f64,
    pub alpha_fo: f64,
    pub alpha_fi: f64,
    pub snr_edge_db: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            gamma_target: db_to_lin(5.0),
            eps: 0.1,
            r_c: 1000.0,
            r_f: 30.0,
            t_c: 4,
            t_f: 2,
            u_c: 1,
            u_f: 1,
            p_c_dbm: 43.0,
            p_f_dbm: 23.0,
            p_ut_dbm: 23.0,
            wall_db: 5.0,
            f_c_mhz: 2000.0,
            alpha_c: 3.8,
            alpha_fo: 3.8,
            alpha_fi: 3.0,
            snr_edge_db: 12.0,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CoreError::InvalidParams(msg));
        if !(self.gamma_target > 0.0) || !self.gamma_target.is_finite() {
            return bad(format!("gamma_target = {} must be positive", self.gamma_target));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return bad(format!("eps = {} must lie in (0, 1)", self.eps));
        }
        if !(self.r_f > 0.0) || !(self.r_c > self.r_f) || !self.r_c.is_finite() {
            return bad(format!(
                "need 0 < r_f < r_c, got r_f = {}, r_c = {}",
                self.r_f, self.r_c
            ));
        }
        if self.u_c < 1 || self.u_c > self.t_c {
            return bad(format!(
                "need 1 <= u_c <= t_c, got u_c = {}, t_c = {}",
                self.u_c, self.t_c
            ));
        }
        if self.u_f < 1 || self.u_f > self.t_f {
            return bad(format!(
                "need 1 <= u_f <= t_f, got u_f = {}, t_f = {}",
                self.u_f, self.t_f
            ));
        }
        for (name, a) in [
            ("alpha_c", self.alpha_c),
            ("alpha_fo", self.alpha_fo),
            ("alpha_fi", self.alpha_fi),
        ] {
            if !(a > 2.0) || !a.is_finite() {
                return bad(format!("{name} = {a} must exceed 2"));
            }
        }
        for (name, v) in [
            ("p_c_dbm", self.p_c_dbm),
            ("p_f_dbm", self.p_f_dbm),
            ("p_ut_dbm", self.p_ut_dbm),
            ("wall_db", self.wall_db),
            ("snr_edge_db", self.snr_edge_db),
        ] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        if !(self.f_c_mhz > 0.0) || !self.f_c_mhz.is_finite() {
            return bad(format!("f_c_mhz = {} must be positive", self.f_c_mhz));
        }
        Ok(())
    }

    /// P_c / P_f (linear).
    pub fn pc_over_pf(&self) -> f64 {
        db_to_lin(self.p_c_dbm - self.p_f_dbm)
    }

    /// Copy with the femto power set so that P_c/P_f equals `ratio_db`.
    pub fn with_pc_over_pf_db(&self, ratio_db: f64) -> Self {
        Self {
            p_f_dbm: self.p_c_dbm - ratio_db,
            ..self.clone()
        }
    }

    /// δ_f = 2 / α_fo.
    pub fn delta_f(&self) -> f64 {
        2.0 / self.alpha_fo
    }

    /// D in meters for a normalized location, checked to lie in (0, 1].
    pub fn d_meters(&self, d_norm: f64) -> Result<f64> {
        if !(d_norm > 0.0 && d_norm <= 1.0) {
            return Err(CoreError::InvalidParams(format!(
                "d_norm = {d_norm} must lie in (0, 1]"
            )));
        }
        Ok(d_norm * self.r_c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinkType {
    /// Macrocell to its cellular user (outdoor).
    MacroToCell,
    /// Macrocell to an indoor femtocell user (one wall).
    MacroToFemto,
    /// Femtocell to its own indoor user.
    FemtoToHome,
    /// Femtocell to an outdoor cellular user (one wall).
    FemtoToCell,
    /// Femtocell to a neighbouring femtocell's user (two walls).
    FemtoToFemto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub a_c_db: f64,
    pub a_fc_db: f64,
    pub a_fi_db: f64,
    pub a_cf_db: f64,
    pub a_ff_db: f64,
    pub delta_f: f64,
}

impl LinkBudget {
    pub fn fixed_loss_db(&self, link: LinkType) -> f64 {
        match link {
            LinkType::MacroToCell => self.a_c_db,
            LinkType::MacroToFemto => self.a_fc_db,
            LinkType::FemtoToHome => self.a_fi_db,
            LinkType::FemtoToCell => self.a_cf_db,
            LinkType::FemtoToFemto => self.a_ff_db,
        }
    }

    /// Linear gain A = 10^(-A_dB/10) of a fixed loss.
    pub fn gain(&self, link: LinkType) -> f64 {
        db_to_lin(-self.fixed_loss_db(link))
    }
}

pub fn link_budget(p: &SystemParams) -> LinkBudget {
    let a_c_db = 30.0 * p.f_c_mhz.log10() - 71.0;
    LinkBudget {
        a_c_db,
        a_fc_db: a_c_db + p.wall_db,
        a_fi_db: 37.0,
        a_cf_db: p.wall_db + 37.0,
        a_ff_db: 2.0 * p.wall_db + 37.0,
        delta_f: p.delta_f(),
    }
}

pub fn path_loss_exponent(link: LinkType, p: &SystemParams) -> f64 {
    match link {
        LinkType::MacroToCell | LinkType::MacroToFemto => p.alpha_c,
        LinkType::FemtoToCell | LinkType::FemtoToFemto => p.alpha_fo,
        LinkType::FemtoToHome => p.alpha_fi,
    }
}

pub fn path_loss_db(link: LinkType, d: f64, lb: &LinkBudget, p: &SystemParams) -> Result<f64> {
    if !(d > 0.0) {
        return Err(CoreError::InvalidParams(format!("distance {d} m must be positive")));
    }
    Ok(lb.fixed_loss_db(link) + 10.0 * path_loss_exponent(link, p) * d.log10())
}

/// Linear channel gain A·d^(-α) of a link.
pub fn link_gain(link: LinkType, d: f64, lb: &LinkBudget, p: &SystemParams) -> f64 {
    lb.gain(link) * d.powf(-path_loss_exponent(link, p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocationCoefficients {
    pub kappa: f64,
    pub q_f: f64,
    pub script_p_f: f64,
    pub q_c: f64,
    pub d_norm: f64,
}

/// κ, Q_f, 𝒫_f and Q_c at D = d_norm·R_c.
pub fn location_coeffs(d_norm: f64, p: &SystemParams) -> Result<LocationCoefficients> {
    let d = p.d_meters(d_norm)?;
    Ok(coeffs_at_meters(d, p, d_norm))
}

pub(crate) fn coeffs_at_meters(d: f64, p: &SystemParams, d_norm: f64) -> LocationCoefficients {
    let lb = link_budget(p);
    let (a_c, a_fc, a_fi, a_cf, a_ff) = (
        lb.gain(LinkType::MacroToCell),
        lb.gain(LinkType::MacroToFemto),
        lb.gain(LinkType::FemtoToHome),
        lb.gain(LinkType::FemtoToCell),
        lb.gain(LinkType::FemtoToFemto),
    );
    let ratio = p.pc_over_pf();
    let (u_c, u_f) = (f64::from(p.u_c), f64::from(p.u_f));
    let q_f = (a_ff / a_fi) * p.r_f.powf(p.alpha_fi) * u_f;
    let script_p_f = ratio * (a_fc / a_ff) * d.powf(-p.alpha_c);
    LocationCoefficients {
        kappa: script_p_f * q_f * p.gamma_target / u_c,
        q_f,
        script_p_f,
        q_c: u_c * (a_cf / a_c) * d.powf(p.alpha_c) / ratio,
        d_norm,
    }
}
