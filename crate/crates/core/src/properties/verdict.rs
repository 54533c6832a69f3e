use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::numeric::{qi, ser_q, Q};

/// Direction of the tested inequality `lhs ? bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
}

impl Relation {
    pub fn test(self, lhs: &Q, bound: &Q) -> bool {
        match self {
            Relation::AtMost => lhs <= bound,
            Relation::AtLeast => lhs >= bound,
        }
    }
}

/// A consequence checked on a system that satisfies a property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub name: String,
    pub holds: bool,
}

/// Exact verdict of a property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub property: String,
    pub holds: bool,
    /// The tested ratio; for conjunctions, the number of parts that hold.
    #[serde(serialize_with = "ser_q")]
    pub lhs: Q,
    pub relation: Relation,
    /// The `ε` side; for conjunctions, the number of parts.
    #[serde(serialize_with = "ser_q")]
    pub bound: Q,
    /// Set when the tested ratio is `0/0` and the property holds vacuously.
    pub vacuous: bool,
    /// Violating microstates, zones, blocks or orbits (orbits by their least
    /// element).
    pub witnesses: Vec<usize>,
    /// Number of violations before any capping of `witnesses`.
    pub witness_count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<PropertyVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub implications: Vec<Implication>,
}

/// Default number of witnesses kept in reports.
pub const WITNESS_CAP: usize = 10;

impl PropertyVerdict {
    pub fn ratio(
        property: impl Into<String>,
        lhs: Q,
        relation: Relation,
        bound: Q,
        witnesses: Vec<usize>,
    ) -> Self {
        Self {
            property: property.into(),
            holds: relation.test(&lhs, &bound),
            lhs,
            relation,
            bound,
            vacuous: false,
            witness_count: witnesses.len(),
            witnesses,
            parts: Vec::new(),
            implications: Vec::new(),
        }
    }

    /// A property over an empty family of ratios.
    pub fn vacuous(property: impl Into<String>, relation: Relation, bound: Q) -> Self {
        let lhs = match relation {
            Relation::AtLeast => Q::one(),
            Relation::AtMost => Q::zero(),
        };
        Self {
            holds: true,
            vacuous: true,
            ..Self::ratio(property, lhs, relation, bound, Vec::new())
        }
    }

    /// A yes/no condition encoded as `lhs ∈ {0, 1} ≥ 1`.
    pub fn flag(property: impl Into<String>, value: bool) -> Self {
        Self::ratio(
            property,
            qi(value as usize),
            Relation::AtLeast,
            Q::one(),
            Vec::new(),
        )
    }

    pub fn conjunction(property: impl Into<String>, parts: Vec<PropertyVerdict>) -> Self {
        let held = parts.iter().filter(|p| p.holds).count();
        let mut v = Self::ratio(
            property,
            qi(held),
            Relation::AtLeast,
            qi(parts.len()),
            Vec::new(),
        );
        v.vacuous = !parts.is_empty() && parts.iter().all(|p| p.vacuous);
        v.parts = parts;
        v
    }

    pub fn imply(&mut self, name: impl Into<String>, holds: bool) {
        self.implications.push(Implication {
            name: name.into(),
            holds,
        });
    }

    /// Whether every attached implication holds, recursively.
    pub fn implications_hold(&self) -> bool {
        self.implications.iter().all(|i| i.holds)
            && self.parts.iter().all(|p| p.implications_hold())
    }

    pub fn part(&self, name: &str) -> Option<&PropertyVerdict> {
        self.parts.iter().find(|p| p.property == name)
    }

    /// Keeps at most `cap` witnesses at every level.
    pub fn capped(mut self, cap: usize) -> Self {
        self.witnesses.truncate(cap);
        self.parts = self.parts.into_iter().map(|p| p.capped(cap)).collect();
        self
    }
}

/// The decidable properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    L1,
    L2,
    L3,
    L4,
    Gat,
    Zat,
    Bat,
    G0,
    G1,
    G2,
    G3,
    G4,
}

impl Property {
    pub const ALL: [Property; 12] = [
        Property::L1,
        Property::L2,
        Property::L3,
        Property::L4,
        Property::Gat,
        Property::Zat,
        Property::Bat,
        Property::G0,
        Property::G1,
        Property::G2,
        Property::G3,
        Property::G4,
    ];

    /// Whether a second parameter `ε2` is required.
    pub fn two_parameters(self) -> bool {
        matches!(
            self,
            Property::L2 | Property::L3 | Property::L4 | Property::G2 | Property::G3 | Property::G4
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Property::L1 => "l1",
            Property::L2 => "l2",
            Property::L3 => "l3",
            Property::L4 => "l4",
            Property::Gat => "gat",
            Property::Zat => "zat",
            Property::Bat => "bat",
            Property::G0 => "g0",
            Property::G1 => "g1",
            Property::G2 => "g2",
            Property::G3 => "g3",
            Property::G4 => "g4",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let l = s.to_ascii_lowercase();
        Property::ALL
            .into_iter()
            .find(|p| p.name() == l)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property {s:?}")))
    }
}
