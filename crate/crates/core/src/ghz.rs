//! Quaternion-valued local hidden-variable treatment of the three-party GHZ
//! argument.
//!
//! Each party carries a triple `(±i, ±j, ±k)` of values for its x, y and z
//! spin. The three GHZ constraints `S¹ₓS²ᵧS³ᵧ = S¹ᵧS²ₓS³ᵧ = S¹ᵧS²ᵧS³ₓ = +1`
//! are evaluated on the signs of the selected components. The x-product
//! `S¹ₓS²ₓS³ₓ` is then evaluated as an exact quaternion product in party
//! order.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize};

use crate::quaternion::{q8_product, Basis, Q8Element, Sign};

/// One of the three spin components carried by a party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    X,
    Y,
    Z,
}

/// A party's values `(sx·i, sy·j, sz·k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartyTriple {
    signs: [Sign; 3],
}

impl PartyTriple {
    pub const fn new(sx: Sign, sy: Sign, sz: Sign) -> PartyTriple {
        PartyTriple { signs: [sx, sy, sz] }
    }

    /// All 8 triples, in sign order `(+,+,+), (+,+,−), …, (−,−,−)`.
    pub fn all() -> impl Iterator<Item = PartyTriple> {
        (0..8u8).map(|bits| {
            let s = |shift: u8| if bits >> shift & 1 == 0 { Sign::Plus } else { Sign::Minus };
            PartyTriple::new(s(2), s(1), s(0))
        })
    }

    pub fn sign(&self, c: Component) -> Sign {
        self.signs[c as usize]
    }

    pub fn value(&self, c: Component) -> Q8Element {
        let basis = match c {
            Component::X => Basis::I,
            Component::Y => Basis::J,
            Component::Z => Basis::K,
        };
        Q8Element::new(basis, self.sign(c))
    }

    pub fn sx(&self) -> Q8Element {
        self.value(Component::X)
    }

    pub fn sy(&self) -> Q8Element {
        self.value(Component::Y)
    }

    pub fn sz(&self) -> Q8Element {
        self.value(Component::Z)
    }

    pub fn labels(&self) -> [String; 3] {
        [self.sx(), self.sy(), self.sz()].map(|q| q.to_string())
    }

    /// Parses `["+i", "-j", "+k"]`-style labels.
    pub fn from_labels<S: AsRef<str>>(labels: &[S; 3]) -> Result<PartyTriple, String> {
        let mut signs = [Sign::Plus; 3];
        for (slot, (label, basis)) in labels.iter().zip([Basis::I, Basis::J, Basis::K]).enumerate() {
            let q: Q8Element = label.as_ref().parse()?;
            if q.basis != basis {
                return Err(format!("component {slot} must be ±{}, got {q}", ["i", "j", "k"][slot]));
            }
            signs[slot] = q.sign;
        }
        Ok(PartyTriple { signs })
    }
}

impl fmt::Display for PartyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.sx(), self.sy(), self.sz())
    }
}

/// Values for parties 1, 2, 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GhzAssignment {
    pub parties: [PartyTriple; 3],
}

impl GhzAssignment {
    pub const fn new(p1: PartyTriple, p2: PartyTriple, p3: PartyTriple) -> GhzAssignment {
        GhzAssignment { parties: [p1, p2, p3] }
    }

    /// Moves party k to position k+1 (party 3 wraps to 1).
    pub fn rotate(&self) -> GhzAssignment {
        let [p1, p2, p3] = self.parties;
        GhzAssignment::new(p3, p1, p2)
    }
}

impl fmt::Display for GhzAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.parties;
        write!(f, "{a}×{b}×{c}")
    }
}

impl Serialize for GhzAssignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        for p in &self.parties {
            seq.serialize_element(&p.labels())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GhzAssignment {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = <[[String; 3]; 3]>::deserialize(deserializer)?;
        let mut parties = [PartyTriple::new(Sign::Plus, Sign::Plus, Sign::Plus); 3];
        for (p, labels) in parties.iter_mut().zip(&raw) {
            *p = PartyTriple::from_labels(labels).map_err(serde::de::Error::custom)?;
        }
        Ok(GhzAssignment { parties })
    }
}

/// Which component of each party enters a GHZ constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GhzCondition {
    Xyy,
    Yxy,
    Yyx,
}

impl GhzCondition {
    pub const ALL: [GhzCondition; 3] = [GhzCondition::Xyy, GhzCondition::Yxy, GhzCondition::Yyx];

    pub fn pattern(self) -> [Component; 3] {
        use Component::*;
        match self {
            GhzCondition::Xyy => [X, Y, Y],
            GhzCondition::Yxy => [Y, X, Y],
            GhzCondition::Yyx => [Y, Y, X],
        }
    }

    /// The condition obtained by rotating the parties once.
    pub fn rotated(self) -> GhzCondition {
        match self {
            GhzCondition::Xyy => GhzCondition::Yxy,
            GhzCondition::Yxy => GhzCondition::Yyx,
            GhzCondition::Yyx => GhzCondition::Xyy,
        }
    }
}

impl fmt::Display for GhzCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GhzCondition::Xyy => "xyy",
            GhzCondition::Yxy => "yxy",
            GhzCondition::Yyx => "yyx",
        })
    }
}

pub type AssignmentSet = BTreeSet<GhzAssignment>;

/// All 8³ = 512 assignments.
pub fn enumerate_assignments() -> AssignmentSet {
    let mut out = BTreeSet::new();
    for p1 in PartyTriple::all() {
        for p2 in PartyTriple::all() {
            for p3 in PartyTriple::all() {
                out.insert(GhzAssignment::new(p1, p2, p3));
            }
        }
    }
    out
}

/// Sign-level check: the product of the selected components' signs is +1.
pub fn satisfies(assignment: &GhzAssignment, cond: GhzCondition) -> bool {
    let product = assignment
        .parties
        .iter()
        .zip(cond.pattern())
        .fold(Sign::Plus, |acc, (p, c)| acc * p.sign(c));
    product == Sign::Plus
}

pub fn condition_set(cond: GhzCondition) -> AssignmentSet {
    enumerate_assignments().into_iter().filter(|a| satisfies(a, cond)).collect()
}

/// Assignments whose selected components have exactly the given signs; the
/// other components are free. These are the four "possibilities" whose union
/// is a condition set.
pub fn condition_family(cond: GhzCondition, selected: [Sign; 3]) -> AssignmentSet {
    let pattern = cond.pattern();
    enumerate_assignments()
        .into_iter()
        .filter(|a| (0..3).all(|p| a.parties[p].sign(pattern[p]) == selected[p]))
        .collect()
}

/// The four sign choices with product +1, in the order
/// `(+,+,+), (+,−,−), (−,+,−), (−,−,+)`.
pub const EVEN_SIGN_TRIPLES: [[Sign; 3]; 4] = {
    use Sign::*;
    [[Plus, Plus, Plus], [Plus, Minus, Minus], [Minus, Plus, Minus], [Minus, Minus, Plus]]
};

pub fn ghz_intersection() -> AssignmentSet {
    enumerate_assignments()
        .into_iter()
        .filter(|a| GhzCondition::ALL.iter().all(|&c| satisfies(a, c)))
        .collect()
}

/// The four families `(s₁i, s₁j, ±k) × (s₂i, s₂j, ±k) × (s₃i, s₃j, ±k)` with
/// `(s₁, s₂, s₃)` ranging over [`EVEN_SIGN_TRIPLES`]: each party's x and y
/// signs agree.
///
/// This is a strict subset of [`ghz_intersection`]. The intersection also
/// contains the four families where each party's x and y signs disagree
/// and `s₁s₂s₃ = −1` on the y signs.
pub fn listed_intersection_families() -> AssignmentSet {
    let matches = |p: &PartyTriple, s: Sign| p.sign(Component::X) == s && p.sign(Component::Y) == s;
    enumerate_assignments()
        .into_iter()
        .filter(|a| {
            EVEN_SIGN_TRIPLES
                .iter()
                .any(|signs| a.parties.iter().zip(signs).all(|(p, &s)| matches(p, s)))
        })
        .collect()
}

/// `S¹ₓ · S²ₓ · S³ₓ` as a quaternion product in party order.
pub fn xxx_product(assignment: &GhzAssignment) -> Q8Element {
    let [p1, p2, p3] = assignment.parties;
    q8_product(&[p1.sx(), p2.sx(), p3.sx()]).expect("three factors")
}

/// Result of the exhaustive real-valued (±1) GHZ check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityProof {
    /// Always 2⁶.
    pub assignments_checked: usize,
    /// Sign assignments satisfying all three constraints.
    pub satisfying: usize,
    /// The value of `S¹ₓS²ₓS³ₓ` if it is the same on every satisfying
    /// assignment.
    pub constant_product: Option<i8>,
}

/// Enumerates every real assignment `S^{1,2,3}_{x,y} ∈ {±1}` and records the
/// x-product on those satisfying the three GHZ constraints.
pub fn classical_parity_check() -> ParityProof {
    let mut satisfying = 0;
    let mut products = BTreeSet::new();
    for bits in 0..64u8 {
        // bit 2p is party p's x sign, bit 2p+1 its y sign
        let s = |k: u8| if bits >> k & 1 == 0 { 1i8 } else { -1i8 };
        let (x, y) = ([s(0), s(2), s(4)], [s(1), s(3), s(5)]);
        let holds = x[0] * y[1] * y[2] == 1 && y[0] * x[1] * y[2] == 1 && y[0] * y[1] * x[2] == 1;
        if holds {
            satisfying += 1;
            products.insert(x[0] * x[1] * x[2]);
        }
    }
    ParityProof {
        assignments_checked: 64,
        satisfying,
        constant_product: if products.len() == 1 { products.first().copied() } else { None },
    }
}
