//! Monte Carlo engine for the two-tier downlink.
//!
//! Each drop places femtocells by a Poisson point process; each fade trial
//! redraws every channel power. Channel powers either come straight from their
//! chi-squared laws ([`ChannelMode::FastChi2`]) or from explicit complex
//! Gaussian channels pushed through zero-forcing precoders
//! ([`ChannelMode::FullZf`]).
//!
//! Every (drop, fade) pair owns an independent ChaCha8 stream derived from the
//! run seed, so results do not depend on thread count or scheduling.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, RowDVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Gamma, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::lambda_from_n_f;
use crate::error::{CoreError, Result};
use crate::linkmodel::{db_to_lin, link_budget, LinkBudget, LinkType, SystemParams};
use crate::sensing::{blended_power_policy, noise_floor_dbm};
use crate::specfun::Accuracy;

pub type C64 = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelMode {
    FullZf,
    FastChi2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Drop {
    pub femto_positions: Vec<[f64; 2]>,
    pub seed: u64,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream for one (drop, fade) pair of a run.
pub fn trial_rng(seed: u64, drop: u64, fade: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(splitmix(seed) ^ drop) ^ fade))
}

const GEOMETRY_STREAM: u64 = u64::MAX;

/// Poisson drop on the disc of radius R_c.
pub fn draw_ppp(lambda_f: f64, p: &SystemParams, seed: u64) -> Result<Drop> {
    draw_ppp_in_disc(lambda_f, p.r_c, seed)
}

/// Poisson drop with density `lambda_f` (m⁻²) on a disc centred at the macrocell.
pub fn draw_ppp_in_disc(lambda_f: f64, radius_m: f64, seed: u64) -> Result<Drop> {
    if !(lambda_f >= 0.0) || !lambda_f.is_finite() {
        return Err(CoreError::InvalidParams(format!("lambda_f = {lambda_f} must be >= 0")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw_ppp_with(lambda_f, radius_m, seed, &mut rng)
}

fn draw_ppp_with(lambda_f: f64, radius_m: f64, seed: u64, rng: &mut ChaCha8Rng) -> Result<Drop> {
    let mean = lambda_f * PI * radius_m * radius_m;
    let count = if mean > 0.0 {
        Poisson::new(mean)
            .map_err(|e| CoreError::InvalidParams(format!("poisson mean {mean}: {e}")))?
            .sample(rng) as usize
    } else {
        0
    };
    let femto_positions = (0..count)
        .map(|_| {
            let r = radius_m * rng.random::<f64>().sqrt();
            let t = 2.0 * PI * rng.random::<f64>();
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    Ok(Drop { femto_positions, seed })
}

/// Normalized columns of H̃†(H̃H̃†)⁻¹, H̃ being `h` with unit-norm rows.
pub fn zf_precoder(h: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let (u, t) = h.shape();
    if u == 0 || u > t {
        return Err(CoreError::InvalidParams(format!("need 1 <= U <= T, got {u}x{t}")));
    }
    let mut dirs = h.clone();
    for mut row in dirs.row_iter_mut() {
        let n = row.norm();
        if n == 0.0 {
            return Err(CoreError::RankDeficient);
        }
        row /= C64::new(n, 0.0);
    }
    let adj = dirs.adjoint();
    let gram_inv = (&dirs * &adj).try_inverse().ok_or(CoreError::RankDeficient)?;
    let mut w = adj * gram_inv;
    for mut col in w.column_iter_mut() {
        let n = col.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(CoreError::RankDeficient);
        }
        col /= C64::new(n, 0.0);
    }
    Ok(w)
}

fn cn(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn cn_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| cn(rng))
}

/// |h₀ w₀|² for a ZF transmitter with `t` antennas serving `u` users.
pub fn zf_desired_power(t: u32, u: u32, rng: &mut ChaCha8Rng) -> Result<f64> {
    let h = cn_matrix(u as usize, t as usize, rng);
    let w = zf_precoder(&h)?;
    Ok((h.row(0) * w.column(0))[(0, 0)].norm_sqr())
}

/// ‖f W‖² for an unintended receiver of a ZF transmitter (`t` antennas, `u` users).
pub fn zf_leakage_power(t: u32, u: u32, rng: &mut ChaCha8Rng) -> Result<f64> {
    let h = cn_matrix(u as usize, t as usize, rng);
    let w = zf_precoder(&h)?;
    let f = RowDVector::from_fn(t as usize, |_, _| cn(rng));
    Ok((f * w).norm_squared())
}

#[derive(Debug, Clone, Copy)]
enum PowerLaw {
    Exp,
    Gamma(Gamma<f64>),
}

impl PowerLaw {
    /// |·|² of k CN(0,1) terms: Gamma(k, 1).
    fn new(k: u32) -> Self {
        if k == 1 {
            PowerLaw::Exp
        } else {
            PowerLaw::Gamma(Gamma::new(f64::from(k), 1.0).expect("positive shape"))
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            PowerLaw::Exp => rng.sample(Exp1),
            PowerLaw::Gamma(g) => g.sample(rng),
        }
    }
}

/// Which receiver a [`ChannelDraw`] is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Receiver {
    FemtoUser,
    CellularUser,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelDraw {
    pub desired_power: f64,
    /// Macrocell leakage at a femtocell user; zero for a cellular user.
    pub cross_tier_power: f64,
    pub mark_powers: Vec<f64>,
    pub mode: ChannelMode,
}

/// Reusable sampler of channel powers for one receiver type.
#[derive(Debug, Clone)]
pub struct ChannelSampler {
    receiver: Receiver,
    mode: ChannelMode,
    t_c: u32,
    u_c: u32,
    t_f: u32,
    u_f: u32,
    desired: PowerLaw,
    cross: PowerLaw,
    mark: PowerLaw,
}

impl ChannelSampler {
    pub fn new(receiver: Receiver, mode: ChannelMode, p: &SystemParams) -> Self {
        let desired_dof = match receiver {
            Receiver::FemtoUser => p.t_f - p.u_f + 1,
            Receiver::CellularUser => p.t_c - p.u_c + 1,
        };
        Self {
            receiver,
            mode,
            t_c: p.t_c,
            u_c: p.u_c,
            t_f: p.t_f,
            u_f: p.u_f,
            desired: PowerLaw::new(desired_dof),
            cross: PowerLaw::new(p.u_c),
            mark: PowerLaw::new(p.u_f),
        }
    }

    /// Fills `marks` with `n` interferer powers and returns (desired, cross-tier).
    pub fn sample_into(&self, n: usize, rng: &mut ChaCha8Rng, marks: &mut Vec<f64>) -> Result<(f64, f64)> {
        marks.clear();
        match self.mode {
            ChannelMode::FastChi2 => {
                let desired = self.desired.sample(rng);
                let cross = match self.receiver {
                    Receiver::FemtoUser => self.cross.sample(rng),
                    Receiver::CellularUser => 0.0,
                };
                marks.extend((0..n).map(|_| self.mark.sample(rng)));
                Ok((desired, cross))
            }
            ChannelMode::FullZf => {
                let (desired, cross) = match self.receiver {
                    Receiver::FemtoUser => (
                        zf_desired_power(self.t_f, self.u_f, rng)?,
                        zf_leakage_power(self.t_c, self.u_c, rng)?,
                    ),
                    Receiver::CellularUser => (zf_desired_power(self.t_c, self.u_c, rng)?, 0.0),
                };
                for _ in 0..n {
                    marks.push(zf_leakage_power(self.t_f, self.u_f, rng)?);
                }
                Ok((desired, cross))
            }
        }
    }

    pub fn draw(&self, n: usize, rng: &mut ChaCha8Rng) -> Result<ChannelDraw> {
        let mut mark_powers = Vec::with_capacity(n);
        let (desired_power, cross_tier_power) = self.sample_into(n, rng, &mut mark_powers)?;
        Ok(ChannelDraw {
            desired_power,
            cross_tier_power,
            mark_powers,
            mode: self.mode,
        })
    }
}

/// Mean received powers (mW, before fading) at one receiver in one drop.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkGeometry {
    pub desired_gain: f64,
    pub cross_tier_gain: f64,
    pub interferer_gains: Vec<f64>,
    pub noise_mw: f64,
}

impl LinkGeometry {
    pub fn sir_from(&self, desired: f64, cross: f64, marks: &[f64]) -> f64 {
        let ff: f64 = self.interferer_gains.iter().zip(marks).map(|(g, s)| g * s).sum();
        let denom = self.cross_tier_gain * cross + ff + self.noise_mw;
        if denom == 0.0 {
            f64::INFINITY
        } else {
            self.desired_gain * desired / denom
        }
    }

    pub fn sir(&self, draw: &ChannelDraw) -> f64 {
        self.sir_from(draw.desired_power, draw.cross_tier_power, &draw.mark_powers)
    }
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Geometry seen by the user of a femtocell at `ref_pos` transmitting `ref_power_mw`.
///
/// `powers_mw[j]` is the total transmit power of `drop.femto_positions[j]`;
/// the reference femtocell must not be part of the drop.
pub fn femto_link_geometry(
    ref_pos: [f64; 2],
    ref_power_mw: f64,
    drop: &Drop,
    powers_mw: &[f64],
    noise_mw: f64,
    p: &SystemParams,
) -> LinkGeometry {
    let lb = link_budget(p);
    let u_f = f64::from(p.u_f);
    let d0 = ref_pos[0].hypot(ref_pos[1]);
    LinkGeometry {
        desired_gain: ref_power_mw / u_f * lb.gain(LinkType::FemtoToHome) * p.r_f.powf(-p.alpha_fi),
        cross_tier_gain: db_to_lin(p.p_c_dbm) / f64::from(p.u_c)
            * lb.gain(LinkType::MacroToFemto)
            * d0.powf(-p.alpha_c),
        interferer_gains: interferer_gains(ref_pos, drop, powers_mw, &lb, LinkType::FemtoToFemto, p),
        noise_mw,
    }
}

/// Geometry seen by a cellular user at `user_pos`.
pub fn cellular_link_geometry(
    user_pos: [f64; 2],
    drop: &Drop,
    powers_mw: &[f64],
    noise_mw: f64,
    p: &SystemParams,
) -> LinkGeometry {
    let lb = link_budget(p);
    let d0 = user_pos[0].hypot(user_pos[1]);
    LinkGeometry {
        desired_gain: db_to_lin(p.p_c_dbm) / f64::from(p.u_c) * lb.gain(LinkType::MacroToCell) * d0.powf(-p.alpha_c),
        cross_tier_gain: 0.0,
        interferer_gains: interferer_gains(user_pos, drop, powers_mw, &lb, LinkType::FemtoToCell, p),
        noise_mw,
    }
}

fn interferer_gains(
    rx: [f64; 2],
    drop: &Drop,
    powers_mw: &[f64],
    lb: &LinkBudget,
    link: LinkType,
    p: &SystemParams,
) -> Vec<f64> {
    let a = lb.gain(link);
    let u_f = f64::from(p.u_f);
    drop.femto_positions
        .iter()
        .zip(powers_mw)
        .map(|(&x, &pw)| pw / u_f * a * dist(x, rx).powf(-p.alpha_fo))
        .collect()
}

/// SIR of the reference femtocell user, noise neglected.
pub fn femto_sir(
    ref_pos: [f64; 2],
    ref_power_mw: f64,
    drop: &Drop,
    powers_mw: &[f64],
    draw: &ChannelDraw,
    p: &SystemParams,
) -> f64 {
    femto_link_geometry(ref_pos, ref_power_mw, drop, powers_mw, 0.0, p).sir(draw)
}

/// SIR of a cellular user at `user_pos`, noise neglected.
pub fn cellular_sir(user_pos: [f64; 2], drop: &Drop, powers_mw: &[f64], draw: &ChannelDraw, p: &SystemParams) -> f64 {
    cellular_link_geometry(user_pos, drop, powers_mw, 0.0, p).sir(draw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    ReferenceCellularUser,
    ReferenceHotspot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PowerPolicy {
    /// Every femtocell transmits at P_c / `fixed_pc_over_pf_db`.
    Fixed,
    /// A femtocell sensing a cellular user backs off to the blended ratio at
    /// its own distance (never above its maximum power); others stay at the
    /// fixed ratio.
    CarrierSensedBlend,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub d_norm: f64,
    pub power_policy: PowerPolicy,
    pub fixed_pc_over_pf_db: f64,
    pub blend_weight: f64,
    /// Mean femtocells per cellsite (drops use λ = n_f_target / πR_c²).
    pub n_f_target: f64,
    /// Distance from the reference hotspot to the cellular user placed
    /// further out on the same ray.
    pub co_located_user_offset: f64,
    pub sensing_radius_m: f64,
    /// Femtocells are dropped on a disc of this many cell radii.
    pub drop_radius_factor: f64,
    pub include_noise: bool,
    pub mode: ChannelMode,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scenario: Scenario::ReferenceCellularUser,
            d_norm: 1.0,
            power_policy: PowerPolicy::CarrierSensedBlend,
            fixed_pc_over_pf_db: 20.0,
            blend_weight: 0.7,
            n_f_target: 60.0,
            co_located_user_offset: 115.0,
            sensing_radius_m: 230.0,
            drop_radius_factor: 2.0,
            include_noise: true,
            mode: ChannelMode::FastChi2,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(CoreError::InvalidParams(m));
        if !(self.d_norm > 0.0 && self.d_norm <= 1.0) {
            return bad(format!("d_norm = {} must lie in (0, 1]", self.d_norm));
        }
        if !(0.0..=1.0).contains(&self.blend_weight) {
            return bad(format!("blend_weight = {} must lie in [0, 1]", self.blend_weight));
        }
        if !(self.n_f_target >= 0.0) || !self.n_f_target.is_finite() {
            return bad(format!("n_f_target = {} must be >= 0", self.n_f_target));
        }
        if !(self.co_located_user_offset >= 0.0) || !(self.sensing_radius_m >= 0.0) {
            return bad("offsets and radii must be >= 0".into());
        }
        if !(self.drop_radius_factor > 0.0) || !self.drop_radius_factor.is_finite() {
            return bad(format!(
                "drop_radius_factor = {} must be positive",
                self.drop_radius_factor
            ));
        }
        if !self.fixed_pc_over_pf_db.is_finite() {
            return bad("fixed_pc_over_pf_db must be finite".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutageEstimate {
    pub p_outage: f64,
    pub n_drops: usize,
    pub n_fades: usize,
    pub ci_halfwidth_95: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateCdf {
    /// Ascending samples of log₂(1 + SIR) in b/s/Hz.
    pub sorted_rates: Vec<f64>,
    pub seed: u64,
}

impl RateCdf {
    /// Empirical quantile, linear between order statistics.
    pub fn quantile(&self, q: f64) -> f64 {
        let n = self.sorted_rates.len();
        if n == 0 {
            return f64::NAN;
        }
        let pos = q.clamp(0.0, 1.0) * (n - 1) as f64;
        let i = pos.floor() as usize;
        let frac = pos - i as f64;
        if i + 1 >= n {
            self.sorted_rates[n - 1]
        } else {
            self.sorted_rates[i] * (1.0 - frac) + self.sorted_rates[i + 1] * frac
        }
    }

    /// Fraction of samples at or below `rate`.
    pub fn cdf(&self, rate: f64) -> f64 {
        let k = self.sorted_rates.partition_point(|&r| r <= rate);
        k as f64 / self.sorted_rates.len().max(1) as f64
    }

    /// Fraction of samples strictly below `rate`. With `rate = log₂(1 + Γ)`
    /// this is the outage probability of the same trials.
    pub fn fraction_below(&self, rate: f64) -> f64 {
        let k = self.sorted_rates.partition_point(|&r| r < rate);
        k as f64 / self.sorted_rates.len().max(1) as f64
    }
}

/// Everything a run needs that is fixed across drops.
struct Plan {
    receiver: Receiver,
    rx_pos: [f64; 2],
    /// Cellular user the femtocells may sense.
    sensed_user: [f64; 2],
    ref_power_mw: f64,
    lambda_f: f64,
    drop_radius: f64,
    noise_mw: f64,
    blend_at_edge_db: Option<f64>,
}

impl Plan {
    fn new(sc: &ScenarioConfig, p: &SystemParams) -> Result<Self> {
        p.validate()?;
        sc.validate()?;
        let d = sc.d_norm * p.r_c;
        let blend_at_edge_db = match sc.power_policy {
            PowerPolicy::Fixed => None,
            PowerPolicy::CarrierSensedBlend => Some(blended_power_policy(
                1.0,
                lambda_from_n_f(sc.n_f_target.max(f64::MIN_POSITIVE), p),
                sc.blend_weight,
                p,
                &Accuracy::default(),
            )?),
        };
        let (receiver, rx_pos, sensed_user) = match sc.scenario {
            Scenario::ReferenceCellularUser => (Receiver::CellularUser, [d, 0.0], [d, 0.0]),
            Scenario::ReferenceHotspot => (Receiver::FemtoUser, [d, 0.0], [d + sc.co_located_user_offset, 0.0]),
        };
        let mut plan = Self {
            receiver,
            rx_pos,
            sensed_user,
            ref_power_mw: 0.0,
            lambda_f: lambda_from_n_f(sc.n_f_target, p),
            drop_radius: sc.drop_radius_factor * p.r_c,
            noise_mw: if sc.include_noise {
                db_to_lin(noise_floor_dbm(p))
            } else {
                0.0
            },
            blend_at_edge_db,
        };
        plan.ref_power_mw = plan.power_of(rx_pos, sc, p);
        Ok(plan)
    }

    fn power_of(&self, pos: [f64; 2], sc: &ScenarioConfig, p: &SystemParams) -> f64 {
        let p_c = db_to_lin(p.p_c_dbm);
        let ambient = p_c / db_to_lin(sc.fixed_pc_over_pf_db);
        match self.blend_at_edge_db {
            Some(edge_db) if dist(pos, self.sensed_user) < sc.sensing_radius_m => {
                let d = pos[0].hypot(pos[1]).max(1.0);
                let ratio_db = edge_db + 10.0 * p.alpha_c * (d / p.r_c).log10();
                (p_c / db_to_lin(ratio_db)).min(db_to_lin(p.p_f_dbm))
            }
            _ => ambient,
        }
    }

    fn geometry(&self, drop: &Drop, sc: &ScenarioConfig, p: &SystemParams) -> LinkGeometry {
        let powers: Vec<f64> = drop.femto_positions.iter().map(|&x| self.power_of(x, sc, p)).collect();
        match self.receiver {
            Receiver::FemtoUser => femto_link_geometry(self.rx_pos, self.ref_power_mw, drop, &powers, self.noise_mw, p),
            Receiver::CellularUser => cellular_link_geometry(self.rx_pos, drop, &powers, self.noise_mw, p),
        }
    }
}

fn check_counts(n_drops: usize, n_fades: usize) -> Result<()> {
    if n_drops == 0 || n_fades == 0 {
        return Err(CoreError::InvalidParams("n_drops and n_fades must be >= 1".into()));
    }
    Ok(())
}

/// Runs every (drop, fade) pair, folding each SIR into a per-drop accumulator.
fn run<T, F, G>(
    sc: &ScenarioConfig,
    n_drops: usize,
    n_fades: usize,
    p: &SystemParams,
    seed: u64,
    init: F,
    fold: G,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn() -> T + Sync,
    G: Fn(&mut T, f64) + Sync,
{
    check_counts(n_drops, n_fades)?;
    let plan = Plan::new(sc, p)?;
    let sampler = ChannelSampler::new(plan.receiver, sc.mode, p);
    (0..n_drops as u64)
        .into_par_iter()
        .map(|i| {
            let mut geo_rng = trial_rng(seed, i, GEOMETRY_STREAM);
            let drop = draw_ppp_with(plan.lambda_f, plan.drop_radius, seed, &mut geo_rng)?;
            let geo = plan.geometry(&drop, sc, p);
            let mut acc = init();
            let mut marks = Vec::with_capacity(drop.femto_positions.len());
            for j in 0..n_fades as u64 {
                let mut rng = trial_rng(seed, i, j);
                let (desired, cross) = sampler.sample_into(drop.femto_positions.len(), &mut rng, &mut marks)?;
                fold(&mut acc, geo.sir_from(desired, cross, &marks));
            }
            Ok(acc)
        })
        .collect()
}

/// Fraction of (drop, fade) trials whose SIR (SINR with noise) falls below Γ.
pub fn estimate_outage(
    sc: &ScenarioConfig,
    n_drops: usize,
    n_fades: usize,
    p: &SystemParams,
    seed: u64,
) -> Result<OutageEstimate> {
    let gamma = p.gamma_target;
    let counts = run(
        sc,
        n_drops,
        n_fades,
        p,
        seed,
        || 0u64,
        |c, sir| {
            if sir < gamma {
                *c += 1;
            }
        },
    )?;
    let total = (n_drops * n_fades) as f64;
    let p_outage = counts.iter().sum::<u64>() as f64 / total;
    Ok(OutageEstimate {
        p_outage,
        n_drops,
        n_fades,
        ci_halfwidth_95: 1.96 * (p_outage * (1.0 - p_outage) / total).sqrt(),
        seed,
    })
}

/// Empirical distribution of log₂(1 + SIR) over all trials.
pub fn rate_cdf(sc: &ScenarioConfig, n_drops: usize, n_fades: usize, p: &SystemParams, seed: u64) -> Result<RateCdf> {
    let chunks = run(
        sc,
        n_drops,
        n_fades,
        p,
        seed,
        || Vec::with_capacity(n_fades),
        |v, sir| v.push(sir.ln_1p() / std::f64::consts::LN_2),
    )?;
    let mut sorted_rates: Vec<f64> = chunks.into_iter().flatten().collect();
    sorted_rates.sort_by(f64::total_cmp);
    Ok(RateCdf { sorted_rates, seed })
}
