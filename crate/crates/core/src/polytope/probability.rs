use num_traits::{One, Signed};
use serde::Serialize;

use super::families::{evaluate, Family};
use super::spec::WeightedSum;
use crate::error::{Error, Result};
use crate::numeric::{qi, Q};
use crate::system::ZoneProfile;

/// Properties whose probability has a polytope formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Property {
    /// `L2` for a uniform permutation.
    L2,
    /// `L3` for a uniform permutation.
    L3,
    /// `L3` for a uniform zero-jump permutation.
    L3ZeroJump,
    /// `L3` for a uniform symmetric permutation.
    L3Symmetric,
    /// `L2` of the invariant doubling of a uniform permutation.
    IrL2,
    /// Lower and upper bounds for `L2` of the doubling when the top zone
    /// holds at least `(1 - ε1)|X|` microstates.
    RL2Bounds,
    /// `L4` for a uniform permutation moving along macro edges.
    L4Graph {
        block_sizes: Vec<usize>,
        macro_edges: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PropertyProbability {
    Exact(WeightedSum),
    Bracket {
        lower: WeightedSum,
        upper: WeightedSum,
        /// `|X^eq| ≥ (1 - ε1)|X|`; the bracket is only claimed when it holds.
        hypothesis: bool,
    },
}

impl PropertyProbability {
    /// The exact probability, or the lower bound of a bracket.
    pub fn probability(&self) -> &Q {
        match self {
            Self::Exact(w) => &w.probability,
            Self::Bracket { lower, .. } => &lower.probability,
        }
    }
}

/// Exact probability of a property through its polytope.
pub fn probability_of_property(
    zp: &ZoneProfile,
    property: &Property,
    e1: &Q,
    e2: &Q,
) -> Result<PropertyProbability> {
    if e1.is_negative() || e2.is_negative() {
        return Err(Error::InvalidArgument("ε must be nonnegative".into()));
    }
    let (e1, e2) = (e1.clone(), e2.clone());
    let family = match property {
        Property::L2 => Family::Psi { e1, e2 },
        Property::L3 => Family::Theta { e1, e2 },
        Property::L3ZeroJump => Family::Omega { e1, e2 },
        Property::L3Symmetric => Family::Sigma { e1, e2 },
        Property::IrL2 => Family::Phi { e1, e2 },
        Property::RL2Bounds => {
            let hypothesis = qi(zp.n() - zp.neq_card()) >= (Q::one() - &e1) * qi(zp.n());
            let lower = evaluate(zp, &Family::ThetaPair { e2: e2.clone() })?;
            let upper = evaluate(zp, &Family::ThetaPair { e2: &e2 * qi(2) })?;
            return Ok(PropertyProbability::Bracket {
                lower,
                upper,
                hypothesis,
            });
        }
        Property::L4Graph {
            block_sizes,
            macro_edges,
        } => Family::Gamma {
            e1,
            e2,
            block_sizes: block_sizes.clone(),
            macro_edges: macro_edges.clone(),
        },
    };
    evaluate(zp, &family).map(PropertyProbability::Exact)
}
