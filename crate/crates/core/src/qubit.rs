//! Eight-point hidden-variable model of a single qubit.
//!
//! The hidden variable `λ ∈ {1..8}` fixes the values of the three Pauli spins
//! as `(ε_x i, ε_y j, ε_z k)` with the sign table
//!
//! ```text
//! λ   ε_x ε_y ε_z
//! 1    +   +   +
//! 2    +   +   −
//! 3    +   −   +
//! 4    +   −   −
//! 5    −   +   +
//! 6    −   +   −
//! 7    −   −   +
//! 8    −   −   −
//! ```
//!
//! A state with Bloch vector `r` maps to the signed weights
//! `p(λ) = (1 + ε(λ)·r) / 8`. Weights can be negative (down to `(1 − √3)/8`),
//! and antipodal points `m` and `9 − m` always carry a combined weight of 1/4.

use std::fmt;
use std::str::FromStr;

use log::warn;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{norm3, require_unit, Basis, Q8Element, Sign};

/// Tolerance for normalization and pair-sum checks on signed distributions.
pub const DIST_TOL: f64 = 1e-12;

/// Tolerance used when matching a sign function against a direction.
pub const SEARCH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn unit_vector(self) -> [f64; 3] {
        let mut v = [0.0; 3];
        v[self.index()] = 1.0;
        v
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// A hidden-variable point, `1..=8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lambda(u8);

impl Lambda {
    pub fn new(index: u8) -> Option<Lambda> {
        (1..=8).contains(&index).then_some(Lambda(index))
    }

    pub fn all() -> impl Iterator<Item = Lambda> {
        (1..=8).map(Lambda)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    fn slot(self) -> usize {
        usize::from(self.0 - 1)
    }

    /// The point with every sign flipped, `9 − m`.
    pub fn antipode(self) -> Lambda {
        Lambda(9 - self.0)
    }

    pub fn signs(self) -> [f64; 3] {
        SIGN_TABLE[self.slot()].map(f64::from)
    }

    pub fn sign(self, axis: Axis) -> f64 {
        f64::from(SIGN_TABLE[self.slot()][axis.index()])
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(ε_x, ε_y, ε_z)` for `λ = 1..8`.
pub const SIGN_TABLE: [[i8; 3]; 8] = [
    [1, 1, 1],
    [1, 1, -1],
    [1, -1, 1],
    [1, -1, -1],
    [-1, 1, 1],
    [-1, 1, -1],
    [-1, -1, 1],
    [-1, -1, -1],
];

/// Quaternion value of the spin along `axis` at `lam`: `±i`, `±j` or `±k`.
pub fn quaternion_value(axis: Axis, lam: Lambda) -> Q8Element {
    let basis = match axis {
        Axis::X => Basis::I,
        Axis::Y => Basis::J,
        Axis::Z => Basis::K,
    };
    Q8Element::new(basis, Sign::from_value(SIGN_TABLE[lam.slot()][axis.index()]))
}

/// A point of the Bloch ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub rx: f64,
    pub ry: f64,
    pub rz: f64,
}

impl BlochVector {
    pub fn new(rx: f64, ry: f64, rz: f64) -> Result<BlochVector> {
        let norm = norm3([rx, ry, rz]);
        if norm.is_nan() || norm * norm > 1.0 + 1e-12 {
            return Err(Error::OutsideBlochBall(norm));
        }
        Ok(BlochVector { rx, ry, rz })
    }

    pub fn from_array(r: [f64; 3]) -> Result<BlochVector> {
        BlochVector::new(r[0], r[1], r[2])
    }

    pub fn components(&self) -> [f64; 3] {
        [self.rx, self.ry, self.rz]
    }

    pub fn component(&self, axis: Axis) -> f64 {
        self.components()[axis.index()]
    }

    pub fn norm(&self) -> f64 {
        norm3(self.components())
    }

    /// Uniform in the ball (`surface == false`) or on the sphere.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, surface: bool) -> BlochVector {
        loop {
            let v = [(); 3].map(|_| rng.gen_range(-1.0..=1.0f64));
            let n = norm3(v);
            if !(1e-6..=1.0).contains(&n) {
                continue;
            }
            let v = if surface { v.map(|c| c / n) } else { v };
            if let Ok(b) = BlochVector::from_array(v) {
                return b;
            }
        }
    }
}

/// Eight real weights summing to 1, possibly negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SignedDistribution {
    p: [f64; 8],
}

impl SignedDistribution {
    pub fn new(p: [f64; 8]) -> Result<SignedDistribution> {
        if let Some(w) = p.iter().find(|w| w.is_nan() || w.abs() > 1.0) {
            return Err(Error::InvalidDistribution(format!("weight {w} outside [-1, 1]")));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > DIST_TOL {
            return Err(Error::InvalidDistribution(format!("weights sum to {total}")));
        }
        Ok(SignedDistribution { p })
    }

    pub fn uniform() -> SignedDistribution {
        SignedDistribution { p: [0.125; 8] }
    }

    pub fn weights(&self) -> [f64; 8] {
        self.p
    }

    pub fn get(&self, lam: Lambda) -> f64 {
        self.p[lam.slot()]
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    pub fn min_weight(&self) -> f64 {
        self.p.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.p.iter().all(|&w| w >= 0.0)
    }

    /// Draws a hidden-variable point. Only defined for ordinary probability
    /// vectors; any negative weight is an error.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Lambda> {
        if let Some(lam) = Lambda::all().find(|&l| self.get(l) < 0.0) {
            return Err(Error::NegativeWeight(lam.index()));
        }
        let u: f64 = rng.gen::<f64>() * self.total();
        let mut acc = 0.0;
        for lam in Lambda::all() {
            acc += self.get(lam);
            if u < acc {
                return Ok(lam);
            }
        }
        Ok(Lambda::all().filter(|&l| self.get(l) > 0.0).last().unwrap_or(Lambda(8)))
    }
}

impl TryFrom<Vec<f64>> for SignedDistribution {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<SignedDistribution> {
        let p: [f64; 8] = v
            .try_into()
            .map_err(|v: Vec<f64>| Error::InvalidDistribution(format!("{} weights, expected 8", v.len())))?;
        SignedDistribution::new(p)
    }
}

impl From<SignedDistribution> for Vec<f64> {
    fn from(d: SignedDistribution) -> Vec<f64> {
        d.p.to_vec()
    }
}

/// `p(λ) = (1 + ε(λ)·r) / 8`.
pub fn state_distribution(r: &BlochVector) -> SignedDistribution {
    let p = std::array::from_fn(|slot| {
        let [ex, ey, ez] = SIGN_TABLE[slot].map(f64::from);
        0.125 * (1.0 + (ex * r.rx + ey * r.ry + ez * r.rz))
    });
    SignedDistribution { p }
}

/// Distribution of the spin eigenstate `|±axis⟩`: 1/4 on the four points
/// where `ε_axis = sign`, 0 elsewhere.
pub fn axis_eigenstate(axis: Axis, sign: Sign) -> SignedDistribution {
    let p = std::array::from_fn(|slot| {
        if SIGN_TABLE[slot][axis.index()] == sign.value() {
            0.25
        } else {
            0.0
        }
    });
    SignedDistribution { p }
}

/// The state weights assembled from the eigenstate distributions,
/// `(1/2)[1/4 + Σ_a r_a (P₊ₐ − P₋ₐ)]`. Agrees with [`state_distribution`].
pub fn eigenstate_combination(r: &BlochVector) -> [f64; 8] {
    let diffs = Axis::ALL.map(|a| (axis_eigenstate(a, Sign::Plus).p, axis_eigenstate(a, Sign::Minus).p));
    std::array::from_fn(|slot| {
        let body: f64 = Axis::ALL
            .iter()
            .map(|&a| r.component(a) * (diffs[a.index()].0[slot] - diffs[a.index()].1[slot]))
            .sum();
        0.5 * (0.25 + body)
    })
}

/// `Σ_λ p(λ) ε_axis(λ)`.
pub fn axis_expectation(dist: &SignedDistribution, axis: Axis) -> f64 {
    Lambda::all().map(|l| dist.get(l) * l.sign(axis)).sum()
}

/// True iff `p(m) + p(9 − m) = 1/4` for `m = 1..4`.
pub fn retroaction_check(dist: &SignedDistribution) -> bool {
    Lambda::all()
        .take(4)
        .all(|m| (dist.get(m) + dist.get(m.antipode()) - 0.25).abs() <= DIST_TOL)
}

/// A dichotomic function `g: λ → ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignFunction(pub [i8; 8]);

impl SignFunction {
    pub fn get(&self, lam: Lambda) -> i8 {
        self.0[lam.slot()]
    }

    /// `g = sign · ε_axis`.
    pub fn axis(axis: Axis, sign: Sign) -> SignFunction {
        SignFunction(std::array::from_fn(|slot| SIGN_TABLE[slot][axis.index()] * sign.value()))
    }

    /// `Σ_λ p(λ) g(λ)`.
    pub fn expectation(&self, dist: &SignedDistribution) -> f64 {
        Lambda::all().map(|l| dist.get(l) * f64::from(self.get(l))).sum()
    }
}

/// Looks for a sign function `g` on the eight points whose expectation equals
/// `n·r` for every Bloch vector `r`.
///
/// Because the distribution is affine in `r`, this holds for all `r` iff
/// `Σ g = 0` and `Σ g ε_i / 8 = n_i` for each axis. All 2⁸ candidates are
/// tried. The achievable components are multiples of 1/4, so only the six
/// signed axis directions succeed.
pub fn sign_function_search(n: [f64; 3]) -> Result<Option<SignFunction>> {
    require_unit(n)?;
    let found = (0u16..256).find_map(|mask| {
        let g = SignFunction(std::array::from_fn(|slot| if mask >> slot & 1 == 0 { 1 } else { -1 }));
        let sum: i32 = g.0.iter().map(|&s| i32::from(s)).sum();
        if sum != 0 {
            return None;
        }
        let matches = Axis::ALL.iter().all(|&axis| {
            let proj: f64 = Lambda::all().map(|l| f64::from(g.get(l)) * l.sign(axis)).sum::<f64>() / 8.0;
            (proj - n[axis.index()]).abs() <= SEARCH_TOL
        });
        matches.then_some(g)
    });
    Ok(found)
}

/// A bijection on `{1..8}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: [u8; 8],
}

impl Permutation {
    pub fn identity() -> Permutation {
        Permutation {
            images: [1, 2, 3, 4, 5, 6, 7, 8],
        }
    }

    /// `(1 5)(2 6)(3 7)(4 8)`: flips the x sign only.
    pub fn x_flip() -> Permutation {
        Permutation {
            images: [5, 6, 7, 8, 1, 2, 3, 4],
        }
    }

    /// The antipodal involution `m ↦ 9 − m`.
    pub fn antipodal() -> Permutation {
        Permutation {
            images: [8, 7, 6, 5, 4, 3, 2, 1],
        }
    }

    /// `images[k]` is the image of point `k + 1`.
    pub fn from_images(images: [u8; 8]) -> Result<Permutation> {
        let mut seen = [false; 8];
        for &i in &images {
            if !(1..=8).contains(&i) {
                return Err(Error::InvalidPermutation(format!("element {i} out of range 1..8")));
            }
            if std::mem::replace(&mut seen[usize::from(i - 1)], true) {
                return Err(Error::InvalidPermutation(format!("element {i} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn apply(&self, lam: Lambda) -> Lambda {
        Lambda(self.images[lam.slot()])
    }

    pub fn images(&self) -> [u8; 8] {
        self.images
    }

    /// `(self ∘ other)(λ) = self(other(λ))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: std::array::from_fn(|k| self.images[usize::from(other.images[k] - 1)]),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = [0u8; 8];
        for (k, &i) in self.images.iter().enumerate() {
            images[usize::from(i - 1)] = k as u8 + 1;
        }
        Permutation { images }
    }

    /// Whether `s(9 − m) = 9 − s(m)` for all `m`.
    pub fn commutes_with_antipode(&self) -> bool {
        Lambda::all().all(|m| self.apply(m.antipode()) == self.apply(m).antipode())
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = [false; 8];
        let mut out = Vec::new();
        for start in 1..=8u8 {
            if seen[usize::from(start - 1)] {
                continue;
            }
            let mut cycle = vec![start];
            seen[usize::from(start - 1)] = true;
            let mut next = self.images[usize::from(start - 1)];
            while next != start {
                seen[usize::from(next - 1)] = true;
                cycle.push(next);
                next = self.images[usize::from(next - 1)];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            let parts: Vec<String> = cycle.iter().map(u8::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Cycle notation over `1..8`, e.g. `(1 5)(2 6)(3 7)(4 8)`. Cycles must be
    /// disjoint; the empty string is the identity.
    fn from_str(s: &str) -> Result<Permutation> {
        let bad = |msg: String| Error::InvalidPermutation(msg);
        let mut images = [1, 2, 3, 4, 5, 6, 7, 8];
        let mut used = [false; 8];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| bad(format!("expected '(' at {rest:?}")))?;
            let close = body.find(')').ok_or_else(|| bad("unclosed '('".into()))?;
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(bad("nested '('".into()));
            }
            let cycle: Vec<u8> = inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u8>().map_err(|_| bad(format!("not an element: {t:?}"))))
                .collect::<Result<_>>()?;
            for &e in &cycle {
                if !(1..=8).contains(&e) {
                    return Err(bad(format!("element {e} out of range 1..8")));
                }
                if std::mem::replace(&mut used[usize::from(e - 1)], true) {
                    return Err(bad(format!("element {e} repeated")));
                }
            }
            for (k, &e) in cycle.iter().enumerate() {
                images[usize::from(e - 1)] = cycle[(k + 1) % cycle.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }
}

/// What to do when a permutation does not commute with `m ↦ 9 − m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvolutionMode {
    /// Reject it.
    #[default]
    Strict,
    /// Apply it and log a warning.
    Permissive,
}

/// `p′(λ) = p(s(λ))`.
pub fn evolve_permutation(dist: &SignedDistribution, s: &Permutation, mode: EvolutionMode) -> Result<SignedDistribution> {
    if !s.commutes_with_antipode() {
        match mode {
            EvolutionMode::Strict => return Err(Error::BreaksAntipodalConstraint(s.to_string())),
            EvolutionMode::Permissive => warn!("permutation {s} does not commute with the antipodal involution"),
        }
    }
    Ok(SignedDistribution {
        p: std::array::from_fn(|slot| dist.p[usize::from(s.images[slot] - 1)]),
    })
}

/// A convex combination of permutations.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationMix {
    terms: Vec<(Permutation, f64)>,
}

impl PermutationMix {
    pub fn new(terms: Vec<(Permutation, f64)>) -> Result<PermutationMix> {
        if terms.is_empty() {
            return Err(Error::InvalidMixture("no terms".into()));
        }
        if let Some((_, w)) = terms.iter().find(|(_, w)| !(*w >= 0.0 && w.is_finite())) {
            return Err(Error::InvalidMixture(format!("weight {w} is negative")));
        }
        let total: f64 = terms.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > DIST_TOL {
            return Err(Error::InvalidMixture(format!("weights sum to {total}")));
        }
        Ok(PermutationMix { terms })
    }

    pub fn terms(&self) -> &[(Permutation, f64)] {
        &self.terms
    }
}

/// `p′(λ) = Σ_t w_t p(s_t(λ))`.
pub fn evolve_mixture(dist: &SignedDistribution, mix: &PermutationMix) -> Result<SignedDistribution> {
    let mut p = [0.0; 8];
    for (s, w) in &mix.terms {
        let moved = evolve_permutation(dist, s, EvolutionMode::Permissive)?;
        for (acc, q) in p.iter_mut().zip(moved.p) {
            *acc += w * q;
        }
    }
    SignedDistribution::new(p)
}
