//! Complex-valued hidden-variable models of the CHSH experiment.
//!
//! Each observable takes the value `(−1)^{f(λ)} e^{iθ}` on hidden-variable
//! point `λ`. Correlations are finite weighted sums over the hidden space and
//! the Bell expression is `|E(a,b) − E(a,b′)| + |E(a′,b) + E(a′,b′)|`, which
//! for these models is bounded by `|e^{iθ₂}+e^{iθ₄}| + |e^{iθ₂}−e^{iθ₄}| ≤ 2√2`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{phase_pair_magnitudes, Phase};

/// Tolerance on the weight sum of a hidden space.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Grid values closer than this count as equal maxima.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AliceSetting {
    A,
    APrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BobSetting {
    B,
    BPrime,
}

impl AliceSetting {
    /// Index into the model's `(θ₁, θ₂, θ₃, θ₄)` / `(f₁ … f₄)` arrays.
    fn slot(self) -> usize {
        match self {
            AliceSetting::A => 0,
            AliceSetting::APrime => 2,
        }
    }
}

impl BobSetting {
    fn slot(self) -> usize {
        match self {
            BobSetting::B => 1,
            BobSetting::BPrime => 3,
        }
    }
}

/// A finite hidden-variable space with a probability weight per point.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenSpace {
    points: Vec<String>,
    weights: Vec<f64>,
}

impl HiddenSpace {
    pub fn new(points: Vec<String>, weights: Vec<f64>) -> Result<HiddenSpace> {
        let space = HiddenSpace { points, weights };
        space.validate()?;
        Ok(space)
    }

    /// `n` points labelled `λ0 … λ(n-1)` with equal weight.
    pub fn uniform(n: usize) -> Result<HiddenSpace> {
        let points = (0..n).map(|i| format!("λ{i}")).collect();
        HiddenSpace::new(points, vec![1.0 / n as f64; n])
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn validate(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::InvalidDistribution("empty hidden space".into()));
        }
        if self.points.len() != self.weights.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} points but {} weights",
                self.points.len(),
                self.weights.len()
            )));
        }
        if let Some(w) = self.weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return Err(Error::InvalidDistribution(format!("weight {w} is not a probability")));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidDistribution(format!("weights sum to {total}")));
        }
        Ok(())
    }
}

/// Phases `(θ₁, θ₂, θ₃, θ₄)` and bit functions `f₁ … f₄` over a hidden space.
///
/// Slots 0 and 2 belong to Alice's settings `a`, `a′`; slots 1 and 3 to Bob's
/// `b`, `b′`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelRecord", into = "ModelRecord")]
pub struct ChshModel {
    space: HiddenSpace,
    thetas: [Phase; 4],
    bits: [Vec<bool>; 4],
}

impl ChshModel {
    pub fn new(space: HiddenSpace, thetas: [Phase; 4], bits: [Vec<bool>; 4]) -> Result<ChshModel> {
        let model = ChshModel { space, thetas, bits };
        model.validate()?;
        Ok(model)
    }

    pub fn space(&self) -> &HiddenSpace {
        &self.space
    }

    pub fn thetas(&self) -> [Phase; 4] {
        self.thetas
    }

    pub fn bits(&self) -> &[Vec<bool>; 4] {
        &self.bits
    }

    fn validate(&self) -> Result<()> {
        self.space.validate()?;
        for (i, f) in self.bits.iter().enumerate() {
            if f.len() != self.space.len() {
                return Err(Error::InvalidModel(format!(
                    "f{} has {} entries for {} points",
                    i + 1,
                    f.len(),
                    self.space.len()
                )));
            }
        }
        Ok(())
    }

    /// Value `(−1)^{f(λ)} e^{iθ}` of the observable in `slot` at point `idx`.
    fn value(&self, slot: usize, idx: usize) -> Complex64 {
        let v = self.thetas[slot].cis();
        if self.bits[slot][idx] {
            -v
        } else {
            v
        }
    }

    /// Same model with its points reordered: point `k` of the result is
    /// point `order[k]` of `self`.
    pub fn relabeled(&self, order: &[usize]) -> Result<ChshModel> {
        let pick = |v: &[bool]| order.iter().map(|&k| v[k]).collect::<Vec<_>>();
        let space = HiddenSpace::new(
            order.iter().map(|&k| self.space.points[k].clone()).collect(),
            order.iter().map(|&k| self.space.weights[k]).collect(),
        )?;
        ChshModel::new(
            space,
            self.thetas,
            [pick(&self.bits[0]), pick(&self.bits[1]), pick(&self.bits[2]), pick(&self.bits[3])],
        )
    }
}

/// `E(x, y) = Σ_λ w(λ) A(x, λ) B(y, λ)`.
pub fn correlation(model: &ChshModel, alice: AliceSetting, bob: BobSetting) -> Result<Complex64> {
    model.validate()?;
    let (sa, sb) = (alice.slot(), bob.slot());
    Ok(model
        .space
        .weights
        .iter()
        .enumerate()
        .map(|(idx, &w)| w * model.value(sa, idx) * model.value(sb, idx))
        .sum())
}

pub fn bell_expression(model: &ChshModel) -> Result<f64> {
    use AliceSetting::*;
    use BobSetting::*;
    let e_ab = correlation(model, A, B)?;
    let e_abp = correlation(model, A, BPrime)?;
    let e_apb = correlation(model, APrime, B)?;
    let e_apbp = correlation(model, APrime, BPrime)?;
    Ok((e_ab - e_abp).norm() + (e_apb + e_apbp).norm())
}

/// Upper bound on the Bell expression of any model with Bob phases `t2`, `t4`.
pub fn analytic_bound(t2: Phase, t4: Phase) -> f64 {
    let (plus, minus) = phase_pair_magnitudes(t2, t4);
    plus + minus
}

/// A single-point model at `θ = (7π/4, 0, π/4, π/2)` with every bit 0, which
/// reaches 2√2.
pub fn make_achieving_model() -> ChshModel {
    single_point_model([7.0 * FRAC_PI_4, 0.0, FRAC_PI_4, FRAC_PI_2].map(Phase::new))
}

fn single_point_model(thetas: [Phase; 4]) -> ChshModel {
    let space = HiddenSpace {
        points: vec!["λ0".to_string()],
        weights: vec![1.0],
    };
    ChshModel {
        space,
        thetas,
        bits: std::array::from_fn(|_| vec![false]),
    }
}

/// Which phases the random model sampler draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseDomain {
    /// Uniform on `[0, 2π)`.
    Circle,
    /// `{0, π}` only: the ordinary real-valued ±1 observables.
    Real,
}

/// A random valid model with between 1 and `max_points` hidden points.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R, max_points: usize, domain: PhaseDomain) -> ChshModel {
    let n = rng.gen_range(1..=max_points.max(1));
    let mut weights: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    // absorb the normalization residue so the sum is 1 to the last ulp
    let residue = 1.0 - weights.iter().sum::<f64>();
    weights[0] += residue;
    let thetas = std::array::from_fn(|_| match domain {
        PhaseDomain::Circle => Phase::new(rng.gen_range(0.0..TAU)),
        PhaseDomain::Real => Phase::new(if rng.gen::<bool>() { PI } else { 0.0 }),
    });
    let bits = std::array::from_fn(|_| (0..n).map(|_| rng.gen()).collect());
    let space = HiddenSpace {
        points: (0..n).map(|i| format!("λ{i}")).collect(),
        weights,
    };
    ChshModel { space, thetas, bits }
}

/// Grid search over `(θ₂, θ₄)` on `grid_steps` equally spaced angles, then
/// `refine_iters` rounds of coordinate descent.
///
/// Only the phases are searched. The model is always one hidden point with
/// all bits 0 (so `f₂ = f₄`, `f₁ = f₂`, `f₃ = f₂` on the support), and Alice's
/// phases are placed symmetrically around `θ₂`: `θ₁ = θ₂ − Δ/2`,
/// `θ₃ = θ₂ + Δ/2` with `Δ = θ₄ − θ₂`.
pub fn maximize_bell(grid_steps: usize, refine_iters: usize, rng_seed: u64) -> Result<(ChshModel, f64)> {
    if grid_steps < 4 {
        return Err(Error::InvalidGrid(grid_steps));
    }
    let grid: Vec<Phase> = (0..grid_steps)
        .map(|k| Phase::new(TAU * k as f64 / grid_steps as f64))
        .collect();
    maximize_bell_on(&grid, refine_iters, rng_seed)
}

/// Like [`maximize_bell`] over an explicit candidate set for `θ₂` and `θ₄`.
///
/// When every candidate is a multiple of π the search is real-valued: Alice's
/// phases are set equal to `θ₂` and no refinement runs, so the returned model
/// only uses ±1 observables.
pub fn maximize_bell_on(candidates: &[Phase], refine_iters: usize, rng_seed: u64) -> Result<(ChshModel, f64)> {
    if candidates.is_empty() {
        return Err(Error::InvalidGrid(0));
    }
    let real_only = candidates.iter().all(|p| p.radians().sin().abs() < 1e-12);

    let mut best: Option<(f64, f64, f64)> = None;
    for &t2 in candidates {
        for &t4 in candidates {
            let value = bell_expression(&phase_model(t2.radians(), t4.radians(), real_only))?;
            // the lowest grid index wins ties, up to rounding
            if best.is_none_or(|(v, _, _)| value > v + TIE_TOL) {
                best = Some((value, t2.radians(), t4.radians()));
            }
        }
    }
    let (mut value, mut t2, mut t4) = best.expect("non-empty candidate set");

    if !real_only && refine_iters > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let mut step = TAU / candidates.len() as f64;
        for _ in 0..refine_iters {
            let probe = {
                let a = rng.gen_range(0.0..TAU);
                (a.cos(), a.sin())
            };
            let moves = [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step), (step * probe.0, step * probe.1)];
            let mut improved = false;
            for (d2, d4) in moves {
                let v = bell_expression(&phase_model(t2 + d2, t4 + d4, false))?;
                if v > value {
                    (value, t2, t4) = (v, t2 + d2, t4 + d4);
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
    }
    Ok((phase_model(t2, t4, real_only), value))
}

fn phase_model(t2: f64, t4: f64, real_only: bool) -> ChshModel {
    let (t1, t3) = if real_only {
        (t2, t2)
    } else {
        let half = half_turn_diff(t4 - t2) / 2.0;
        (t2 - half, t2 + half)
    };
    single_point_model([t1, t2, t3, t4].map(Phase::new))
}

/// Reduces an angle difference into `(−π, π]`.
fn half_turn_diff(d: f64) -> f64 {
    let r = d.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Flat JSON form `{points, weights, theta, f1, f2, f3, f4}` with bits as 0/1.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModelRecord {
    points: Vec<String>,
    weights: Vec<f64>,
    theta: [f64; 4],
    f1: Vec<u8>,
    f2: Vec<u8>,
    f3: Vec<u8>,
    f4: Vec<u8>,
}

impl From<ChshModel> for ModelRecord {
    fn from(m: ChshModel) -> ModelRecord {
        let [f1, f2, f3, f4] = m.bits.map(|f| f.into_iter().map(u8::from).collect());
        ModelRecord {
            points: m.space.points,
            weights: m.space.weights,
            theta: m.thetas.map(Phase::radians),
            f1,
            f2,
            f3,
            f4,
        }
    }
}

impl TryFrom<ModelRecord> for ChshModel {
    type Error = Error;

    fn try_from(r: ModelRecord) -> Result<ChshModel> {
        let decode = |name: &str, f: Vec<u8>| -> Result<Vec<bool>> {
            f.into_iter()
                .map(|b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    other => Err(Error::InvalidModel(format!("{name} contains {other}, expected 0 or 1"))),
                })
                .collect()
        };
        let bits = [decode("f1", r.f1)?, decode("f2", r.f2)?, decode("f3", r.f3)?, decode("f4", r.f4)?];
        ChshModel::new(HiddenSpace::new(r.points, r.weights)?, r.theta.map(Phase::new), bits)
    }
}
