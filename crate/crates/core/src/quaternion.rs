//! Quaternion algebra: the exact unit group Q8 = {±1, ±i, ±j, ±k}, floating
//! quaternions for spin directions, and unit-circle phases.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on |r| when a direction must be a unit vector.
pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    One,
    I,
    J,
    K,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_value(v: i8) -> Sign {
        if v >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// An exact element of the quaternion group Q8.
///
/// Ordering is (basis, sign), so sorted lists of Q8 values and of anything
/// built from them are deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q8Element {
    pub basis: Basis,
    pub sign: Sign,
}

impl Q8Element {
    pub const ONE: Q8Element = Q8Element::new(Basis::One, Sign::Plus);
    pub const MINUS_ONE: Q8Element = Q8Element::new(Basis::One, Sign::Minus);
    pub const I: Q8Element = Q8Element::new(Basis::I, Sign::Plus);
    pub const MINUS_I: Q8Element = Q8Element::new(Basis::I, Sign::Minus);
    pub const J: Q8Element = Q8Element::new(Basis::J, Sign::Plus);
    pub const MINUS_J: Q8Element = Q8Element::new(Basis::J, Sign::Minus);
    pub const K: Q8Element = Q8Element::new(Basis::K, Sign::Plus);
    pub const MINUS_K: Q8Element = Q8Element::new(Basis::K, Sign::Minus);

    pub const ALL: [Q8Element; 8] = [
        Q8Element::ONE,
        Q8Element::MINUS_ONE,
        Q8Element::I,
        Q8Element::MINUS_I,
        Q8Element::J,
        Q8Element::MINUS_J,
        Q8Element::K,
        Q8Element::MINUS_K,
    ];

    pub const fn new(basis: Basis, sign: Sign) -> Q8Element {
        Q8Element { basis, sign }
    }

    pub fn inverse(self) -> Q8Element {
        match self.basis {
            Basis::One => self,
            _ => -self,
        }
    }

    /// Embedding into floating quaternions.
    pub fn to_quaternion(self) -> Quaternion {
        let s = self.sign.as_f64();
        match self.basis {
            Basis::One => Quaternion::new(s, 0.0, 0.0, 0.0),
            Basis::I => Quaternion::new(0.0, s, 0.0, 0.0),
            Basis::J => Quaternion::new(0.0, 0.0, s, 0.0),
            Basis::K => Quaternion::new(0.0, 0.0, 0.0, s),
        }
    }
}

/// Hamilton product of two basis units, as (sign, basis).
fn basis_mul(a: Basis, b: Basis) -> (Sign, Basis) {
    use Basis::*;
    use Sign::*;
    match (a, b) {
        (One, x) | (x, One) => (Plus, x),
        (I, I) | (J, J) | (K, K) => (Minus, One),
        (I, J) => (Plus, K),
        (J, K) => (Plus, I),
        (K, I) => (Plus, J),
        (J, I) => (Minus, K),
        (K, J) => (Minus, I),
        (I, K) => (Minus, J),
    }
}

/// Exact group product `a · b`.
pub fn q8_mul(a: Q8Element, b: Q8Element) -> Q8Element {
    let (s, basis) = basis_mul(a.basis, b.basis);
    Q8Element::new(basis, a.sign * b.sign * s)
}

/// Left fold of `q8_mul` over `seq`, preserving operand order.
pub fn q8_product(seq: &[Q8Element]) -> Result<Q8Element> {
    let (first, rest) = seq.split_first().ok_or(Error::EmptyProduct)?;
    Ok(rest.iter().fold(*first, |acc, &x| q8_mul(acc, x)))
}

impl Mul for Q8Element {
    type Output = Q8Element;

    fn mul(self, rhs: Q8Element) -> Q8Element {
        q8_mul(self, rhs)
    }
}

impl Neg for Q8Element {
    type Output = Q8Element;

    fn neg(self) -> Q8Element {
        Q8Element::new(self.basis, -self.sign)
    }
}

impl fmt::Display for Q8Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        let b = match self.basis {
            Basis::One => '1',
            Basis::I => 'i',
            Basis::J => 'j',
            Basis::K => 'k',
        };
        write!(f, "{s}{b}")
    }
}

impl FromStr for Q8Element {
    type Err = String;

    /// Accepts labels like `+i`, `-k`, `j`, `-1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        let (sign, rest) = match t.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &t[1..]),
            Some(b'-') => (Sign::Minus, &t[1..]),
            _ => (Sign::Plus, t),
        };
        let basis = match rest {
            "1" => Basis::One,
            "i" => Basis::I,
            "j" => Basis::J,
            "k" => Basis::K,
            _ => return Err(format!("not a Q8 label: {s:?}")),
        };
        Ok(Q8Element::new(basis, sign))
    }
}

impl Serialize for Q8Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Q8Element {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A real quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion { w, x, y, z }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_pure_unit(&self, tol: f64) -> bool {
        self.w.abs() <= tol && (self.norm() - 1.0).abs() <= tol
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub(crate) fn require_unit(v: [f64; 3]) -> Result<()> {
    let n = norm3(v);
    if (n - 1.0).abs() > UNIT_TOL || !n.is_finite() {
        return Err(Error::NonUnitDirection(n));
    }
    Ok(())
}

/// Maps a spin direction `r` to the pure quaternion `r_x i + r_y j + r_z k`.
pub fn bloch_to_pure_quaternion(r: [f64; 3]) -> Result<Quaternion> {
    require_unit(r)?;
    Ok(Quaternion::new(0.0, r[0], r[1], r[2]))
}

/// An angle on the unit circle, stored reduced into `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(from = "f64", into = "f64")]
pub struct Phase(f64);

impl Phase {
    pub fn new(theta: f64) -> Phase {
        let t = theta.rem_euclid(TAU);
        // rem_euclid of a tiny negative value rounds up to exactly TAU
        Phase(if t >= TAU { 0.0 } else { t })
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// `e^{iθ}`
    pub fn cis(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }
}

impl From<f64> for Phase {
    fn from(theta: f64) -> Phase {
        Phase::new(theta)
    }
}

impl From<Phase> for f64 {
    fn from(p: Phase) -> f64 {
        p.0
    }
}

/// `(|e^{iθ₂} + e^{iθ₄}|, |e^{iθ₂} − e^{iθ₄}|)`.
///
/// The squares of the two magnitudes always sum to 4, so their sum is at
/// most 2√2, reached when the phases differ by a quarter turn.
pub fn phase_pair_magnitudes(t2: Phase, t4: Phase) -> (f64, f64) {
    let (a, b) = (t2.cis(), t4.cis());
    ((a + b).norm(), (a - b).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, PI, SQRT_2};

    const I: Q8Element = Q8Element::I;
    const J: Q8Element = Q8Element::J;
    const K: Q8Element = Q8Element::K;

    #[test]
    fn hamilton_table() {
        assert_eq!(I * J, K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        assert_eq!(J * I, -K);
        assert_eq!(K * J, -I);
        assert_eq!(I * K, -J);
        for u in [I, J, K] {
            assert_eq!(u * u, Q8Element::MINUS_ONE);
        }
        assert_eq!(I * J * K, Q8Element::MINUS_ONE);
    }

    #[test]
    fn cube_of_i_is_minus_i() {
        assert_eq!(q8_product(&[I, I, I]).unwrap(), Q8Element::MINUS_I);
        assert_eq!(q8_product(&[I, -I, -I]).unwrap(), Q8Element::MINUS_I);
    }

    #[test]
    fn product_edge_cases() {
        assert_eq!(q8_product(&[]), Err(Error::EmptyProduct));
        assert_eq!(q8_product(&[Q8Element::ONE]).unwrap(), Q8Element::ONE);
        assert_eq!(q8_product(&[J, -J]).unwrap(), Q8Element::ONE);
        // order matters
        assert_ne!(q8_product(&[I, J]).unwrap(), q8_product(&[J, I]).unwrap());
    }

    #[test]
    fn group_laws_exhaustive() {
        let all = Q8Element::ALL;
        let distinct: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 8);
        for a in all {
            assert_eq!(a * Q8Element::ONE, a);
            assert_eq!(Q8Element::ONE * a, a);
            assert_eq!(a * a.inverse(), Q8Element::ONE);
            assert_eq!(a.inverse() * a, Q8Element::ONE);
            for b in all {
                assert!(all.contains(&(a * b)));
                for c in all {
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
    }

    #[test]
    fn float_embedding_agrees_with_exact_product() {
        for a in Q8Element::ALL {
            for b in Q8Element::ALL {
                assert_eq!(a.to_quaternion() * b.to_quaternion(), (a * b).to_quaternion());
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        for a in Q8Element::ALL {
            assert_eq!(a.to_string().parse::<Q8Element>().unwrap(), a);
        }
        assert_eq!("k".parse::<Q8Element>().unwrap(), K);
        assert!("x".parse::<Q8Element>().is_err());
        assert!("+".parse::<Q8Element>().is_err());
    }

    #[test]
    fn pure_quaternions_from_directions() {
        assert_eq!(bloch_to_pure_quaternion([1.0, 0.0, 0.0]).unwrap(), I.to_quaternion());
        assert_eq!(bloch_to_pure_quaternion([0.0, 0.0, 1.0]).unwrap(), K.to_quaternion());
        let q = bloch_to_pure_quaternion([FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]).unwrap();
        assert_eq!(q, Quaternion::new(0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0));
        assert!(q.is_pure_unit(1e-12));
        assert!(matches!(
            bloch_to_pure_quaternion([1.0, 1.0, 0.0]),
            Err(Error::NonUnitDirection(_))
        ));
    }

    #[test]
    fn phase_reduction() {
        assert_eq!(Phase::new(TAU).radians(), 0.0);
        assert!((Phase::new(-FRAC_PI_2).radians() - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert_eq!(Phase::new(-1e-300).radians(), 0.0);
        assert!((Phase::new(7.0 * PI).radians() - PI).abs() < 1e-12);
    }

    #[test]
    fn magnitude_examples() {
        let (p, m) = phase_pair_magnitudes(Phase::new(0.0), Phase::new(FRAC_PI_2));
        assert!((p - SQRT_2).abs() < 1e-12 && (m - SQRT_2).abs() < 1e-12);
        assert!((p + m - 2.0 * SQRT_2).abs() < 1e-12);

        let (p, m) = phase_pair_magnitudes(Phase::new(0.0), Phase::new(0.0));
        assert_eq!((p, m), (2.0, 0.0));

        let (p, m) = phase_pair_magnitudes(Phase::new(0.0), Phase::new(FRAC_PI_3));
        assert!((p - 3f64.sqrt()).abs() < 1e-12);
        assert!((m - 1.0).abs() < 1e-12);
        assert!((p + m - 2.732_050_807_568_877).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn magnitudes_obey_the_circle_bound(t2 in 0.0..TAU, t4 in 0.0..TAU) {
            let (p, m) = phase_pair_magnitudes(Phase::new(t2), Phase::new(t4));
            prop_assert!((p * p + m * m - 4.0).abs() < 1e-12);
            prop_assert!(p + m <= 2.0 * SQRT_2 + 1e-12);
            // saturation iff the phases are a quarter turn apart (mod π)
            let off = ((t2 - t4).rem_euclid(PI) - FRAC_PI_2).abs();
            if off < 1e-7 {
                prop_assert!((p + m - 2.0 * SQRT_2).abs() < 1e-9);
            } else if off > 1e-3 {
                prop_assert!(p + m < 2.0 * SQRT_2 - 1e-8);
            }
        }

        #[test]
        fn phase_is_canonical(theta in -100.0f64..100.0) {
            let p = Phase::new(theta).radians();
            prop_assert!((0.0..TAU).contains(&p));
            prop_assert!(((theta - p) / TAU - ((theta - p) / TAU).round()).abs() < 1e-9);
        }
    }
}
