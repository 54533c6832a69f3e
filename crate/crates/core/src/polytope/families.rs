use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive};

use super::spec::{Column, Constraint, PolytopeSpec, WeightRule, WeightedSum};
use crate::error::{Error, Result};
use crate::numeric::{multinomial, Q};
use crate::properties::macro_edges;
use crate::system::{Partition, ZoneProfile};

/// The polytope families. Zone indices are `0..o` by increasing block size;
/// `x[i][j]` counts microstates of zone `j` sent into zone `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Exactly `d` strict decreases.
    Lambda { d: usize },
    /// Exactly `d` strict decreases and `e` strict increases.
    LambdaDe { d: usize, e: usize },
    /// Zero-jump permutations with `d` strict decreases.
    Upsilon { d: usize },
    /// `L2(ε1, ε2)`.
    Psi { e1: Q, e2: Q },
    /// `L3(ε1, ε2)`.
    Theta { e1: Q, e2: Q },
    /// `L3(ε1, ε2)` among zero-jump permutations.
    Omega { e1: Q, e2: Q },
    /// `L3(ε1, ε2)` among symmetric permutations.
    Sigma { e1: Q, e2: Q },
    /// `L2(ε1, ε2)` of the invariant doubling.
    Phi { e1: Q, e2: Q },
    /// Sufficient condition for `L2(ε1, ε2)` of the doubling via transitions
    /// out of and into the top zone.
    ThetaPair { e2: Q },
    /// `L4(ε1, ε2)` among permutations moving along macro edges; indices are
    /// blocks.
    Gamma {
        e1: Q,
        e2: Q,
        block_sizes: Vec<usize>,
        macro_edges: Vec<(usize, usize)>,
    },
}

impl Family {
    /// The block-level family for a partition and a microstate graph.
    pub fn gamma(p: &Partition, edges: &[(usize, usize)], e1: Q, e2: Q) -> Result<Self> {
        Ok(Self::Gamma {
            e1,
            e2,
            block_sizes: p.block_sizes(),
            macro_edges: macro_edges(p, edges)?.into_iter().collect(),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Lambda { .. } => "lambda",
            Self::LambdaDe { .. } => "lambda_de",
            Self::Upsilon { .. } => "upsilon",
            Self::Psi { .. } => "psi",
            Self::Theta { .. } => "theta",
            Self::Omega { .. } => "omega",
            Self::Sigma { .. } => "sigma",
            Self::Phi { .. } => "phi",
            Self::ThetaPair { .. } => "theta_pair",
            Self::Gamma { .. } => "gamma",
        }
    }
}

/// `(p, q)` with `ε = p/q`, `q > 0`.
fn parts(eps: &Q) -> Result<(i64, i64)> {
    let num = eps.numer().to_i64();
    let den = eps.denom().to_i64();
    match (num, den) {
        (Some(p), Some(q))
            if q > 0 && p.checked_mul(1 << 20).is_some() && q.checked_mul(1 << 20).is_some() =>
        {
            Ok((p, q))
        }
        _ => Err(Error::InvalidArgument(format!(
            "ε = {eps} is too large for integer scaling"
        ))),
    }
}

fn count(v: usize) -> i64 {
    v as i64
}

/// `Σ terms ≤ ε·total`, scaled by the denominator of `ε`.
fn at_most_eps(vars: &[usize], eps: &Q, total: usize) -> Result<Constraint> {
    let (p, q) = parts(eps)?;
    Ok(Constraint {
        terms: vars.iter().map(|&v| (v, q)).collect(),
        rhs: p * count(total),
    })
}

/// `Σ terms ≥ (1 - ε)·total`, scaled by the denominator of `ε`.
fn at_least_one_minus(vars: &[usize], coeff: i64, eps: &Q, total: usize) -> Result<Constraint> {
    let (p, q) = parts(eps)?;
    Ok(Constraint {
        terms: vars.iter().map(|&v| (v, q * coeff)).collect(),
        rhs: (q - p) * count(total),
    })
}

struct Square {
    o: usize,
    cards: Vec<usize>,
}

impl Square {
    fn var(&self, i: usize, j: usize) -> usize {
        i * self.o + j
    }

    fn names(&self) -> Vec<String> {
        (0..self.o * self.o)
            .map(|k| format!("x[{}][{}]", k / self.o + 1, k % self.o + 1))
            .collect()
    }

    fn marginals(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        for i in 0..self.o {
            let rhs = count(self.cards[i]);
            out.push(Constraint {
                terms: (0..self.o).map(|j| (self.var(i, j), 1)).collect(),
                rhs,
            });
            out.push(Constraint {
                terms: (0..self.o).map(|j| (self.var(j, i), 1)).collect(),
                rhs,
            });
        }
        out
    }

    fn upper(&self) -> Vec<usize> {
        (0..self.o)
            .flat_map(|i| (i + 1..self.o).map(move |j| (i, j)))
            .map(|(i, j)| self.var(i, j))
            .collect()
    }

    fn lower(&self) -> Vec<usize> {
        (0..self.o)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| self.var(i, j))
            .collect()
    }

    fn columns(&self) -> WeightRule {
        WeightRule::MultinomialProduct(
            (0..self.o)
                .map(|j| Column {
                    vars: (0..self.o).map(|i| self.var(i, j)).collect(),
                    total: self.cards[j],
                    remainder: false,
                })
                .collect(),
        )
    }

    fn spec(&self, eq: Vec<Constraint>, le: Vec<Constraint>, ge: Vec<Constraint>) -> PolytopeSpec {
        let mut eq_constraints = self.marginals();
        eq_constraints.extend(eq);
        PolytopeSpec {
            num_vars: self.o * self.o,
            var_names: self.names(),
            eq_constraints,
            le_constraints: le,
            ge_constraints: ge,
            weight_rule: self.columns(),
        }
    }
}

/// Tridiagonal variables `x_i = x[i][i+1] = x[i+1][i]` for zero-jump
/// permutations, bounded by the zone cardinalities.
fn tridiagonal(cards: &[usize]) -> PolytopeSpec {
    let o = cards.len();
    let m = o.saturating_sub(1);
    let mut le = Vec::new();
    let mut cols = Vec::new();
    for i in 0..o {
        let vars: Vec<usize> = [i.checked_sub(1), (i < m).then_some(i)]
            .into_iter()
            .flatten()
            .collect();
        if !vars.is_empty() {
            le.push(Constraint {
                terms: vars.iter().map(|&v| (v, 1)).collect(),
                rhs: count(cards[i]),
            });
        }
        cols.push(Column {
            vars,
            total: cards[i],
            remainder: true,
        });
    }
    PolytopeSpec {
        num_vars: m,
        var_names: (0..m).map(|i| format!("x[{}]", i + 1)).collect(),
        eq_constraints: Vec::new(),
        le_constraints: le,
        ge_constraints: Vec::new(),
        weight_rule: WeightRule::InverseFactorialProduct(cols),
    }
}

/// Upper-triangular variables `x[i][j]`, `i ≤ j`, of a symmetric matrix with
/// row sums equal to the zone cardinalities.
fn symmetric(cards: &[usize]) -> (PolytopeSpec, Vec<Vec<usize>>) {
    let o = cards.len();
    let mut index = vec![vec![0; o]; o];
    let mut names = Vec::new();
    for i in 0..o {
        for j in i..o {
            index[i][j] = names.len();
            index[j][i] = names.len();
            names.push(format!("x[{}][{}]", i + 1, j + 1));
        }
    }
    let eq = (0..o)
        .map(|i| Constraint {
            terms: (0..o).map(|j| (index[i][j], 1)).collect(),
            rhs: count(cards[i]),
        })
        .collect();
    let cols = (0..o)
        .map(|j| Column {
            vars: (0..o).map(|i| index[i][j]).collect(),
            total: cards[j],
            remainder: false,
        })
        .collect();
    let spec = PolytopeSpec {
        num_vars: names.len(),
        var_names: names,
        eq_constraints: eq,
        le_constraints: Vec::new(),
        ge_constraints: Vec::new(),
        weight_rule: WeightRule::MultinomialProduct(cols),
    };
    (spec, index)
}

/// Block-level variables on the diagonal and along macro edges.
fn graph(sizes: &[usize], edges: &[(usize, usize)]) -> Result<(PolytopeSpec, Vec<(usize, usize)>)> {
    let m = sizes.len();
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= m || b >= m || a == b) {
        return Err(Error::InvalidArgument(format!(
            "macro edge ({a}, {b}) is not between two blocks"
        )));
    }
    let mut support: Vec<(usize, usize)> = (0..m).map(|a| (a, a)).collect();
    for &(a, b) in edges {
        support.push((a, b));
        support.push((b, a));
    }
    support.sort_unstable();
    support.dedup();
    let names = support
        .iter()
        .map(|(a, b)| format!("x[{a}][{b}]"))
        .collect();
    let mut eq = Vec::new();
    let mut cols = Vec::new();
    for a in 0..m {
        let row: Vec<usize> = (0..support.len()).filter(|&k| support[k].0 == a).collect();
        let col: Vec<usize> = (0..support.len()).filter(|&k| support[k].1 == a).collect();
        eq.push(Constraint {
            terms: row.iter().map(|&k| (k, 1)).collect(),
            rhs: count(sizes[a]),
        });
        eq.push(Constraint {
            terms: col.iter().map(|&k| (k, 1)).collect(),
            rhs: count(sizes[a]),
        });
        cols.push(Column {
            vars: col,
            total: sizes[a],
            remainder: false,
        });
    }
    let spec = PolytopeSpec {
        num_vars: support.len(),
        var_names: names,
        eq_constraints: eq,
        le_constraints: Vec::new(),
        ge_constraints: Vec::new(),
        weight_rule: WeightRule::MultinomialProduct(cols),
    };
    Ok((spec, support))
}

/// Instantiates a family on a zone profile.
pub fn build_polytope(zp: &ZoneProfile, family: &Family) -> Result<PolytopeSpec> {
    let cards = zp.zone_card.clone();
    let o = cards.len();
    let n = zp.n();
    let neq = zp.neq_card();
    let sq = Square {
        o,
        cards: cards.clone(),
    };
    let exact = |vars: Vec<usize>, rhs: usize| Constraint {
        terms: vars.into_iter().map(|v| (v, 1)).collect(),
        rhs: count(rhs),
    };
    Ok(match family {
        Family::Lambda { d } => sq.spec(vec![exact(sq.upper(), *d)], vec![], vec![]),
        Family::LambdaDe { d, e } => sq.spec(
            vec![exact(sq.upper(), *d), exact(sq.lower(), *e)],
            vec![],
            vec![],
        ),
        Family::Upsilon { d } => {
            let mut s = tridiagonal(&cards);
            s.eq_constraints
                .push(exact((0..o.saturating_sub(1)).collect(), *d));
            s
        }
        Family::Psi { e1, e2 } => sq.spec(
            vec![],
            vec![at_most_eps(&sq.upper(), e1, n)?],
            vec![at_least_one_minus(&sq.lower(), 1, e2, neq)?],
        ),
        Family::Theta { e1, e2 } => {
            let ge = (0..o.saturating_sub(1))
                .map(|j| {
                    at_least_one_minus(
                        &(j + 1..o).map(|i| sq.var(i, j)).collect::<Vec<_>>(),
                        1,
                        e2,
                        cards[j],
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            sq.spec(vec![], vec![at_most_eps(&sq.upper(), e1, n)?], ge)
        }
        Family::Omega { e1, e2 } => {
            let mut s = tridiagonal(&cards);
            let m = o.saturating_sub(1);
            s.le_constraints
                .push(at_most_eps(&(0..m).collect::<Vec<_>>(), e1, n)?);
            for i in 0..m {
                s.ge_constraints
                    .push(at_least_one_minus(&[i], 1, e2, cards[i])?);
            }
            s
        }
        Family::Sigma { e1, e2 } => {
            let (mut s, index) = symmetric(&cards);
            let upper: Vec<usize> = (0..o)
                .flat_map(|i| (i + 1..o).map(move |j| (i, j)))
                .map(|(i, j)| index[i][j])
                .collect();
            s.le_constraints.push(at_most_eps(&upper, e1, n)?);
            for i in 0..o.saturating_sub(1) {
                let vars: Vec<usize> = (i + 1..o).map(|j| index[i][j]).collect();
                s.ge_constraints
                    .push(at_least_one_minus(&vars, 1, e2, cards[i])?);
            }
            s
        }
        Family::Phi { e1, e2 } => {
            // (1 - 2ε1)|X| ≤ Σ x_ii ≤ 2(1 - ε2)|X^eq| - (1 - 2ε2)|X|
            let diag: Vec<usize> = (0..o).map(|i| sq.var(i, i)).collect();
            let (p1, q1) = parts(e1)?;
            let (p2, q2) = parts(e2)?;
            let eq_card = count(n - neq);
            let lo = Constraint {
                terms: diag.iter().map(|&v| (v, q1)).collect(),
                rhs: (q1 - 2 * p1) * count(n),
            };
            let hi = Constraint {
                terms: diag.iter().map(|&v| (v, q2)).collect(),
                rhs: 2 * (q2 - p2) * eq_card - (q2 - 2 * p2) * count(n),
            };
            sq.spec(vec![], vec![hi], vec![lo])
        }
        Family::ThetaPair { e2 } => {
            let top = o.saturating_sub(1);
            let vars: Vec<usize> = (0..top)
                .flat_map(|j| [sq.var(j, top), sq.var(top, j)])
                .collect();
            sq.spec(
                vec![],
                vec![],
                vec![at_least_one_minus(&vars, 1, e2, 2 * neq)?],
            )
        }
        Family::Gamma {
            e1,
            e2,
            block_sizes,
            macro_edges,
        } => {
            let (mut s, support) = graph(block_sizes, macro_edges)?;
            let top = block_sizes.iter().copied().max().unwrap_or(0);
            let total: usize = block_sizes.iter().sum();
            let dec: Vec<usize> = (0..support.len())
                .filter(|&k| block_sizes[support[k].0] < block_sizes[support[k].1])
                .collect();
            s.le_constraints.push(at_most_eps(&dec, e1, total)?);
            for b in (0..block_sizes.len()).filter(|&b| block_sizes[b] < top) {
                let inc: Vec<usize> = (0..support.len())
                    .filter(|&k| support[k].1 == b && block_sizes[support[k].0] > block_sizes[b])
                    .collect();
                s.ge_constraints
                    .push(at_least_one_minus(&inc, 1, e2, block_sizes[b])?);
            }
            s
        }
    })
}

/// The normalizer that turns the family's weighted sum into a probability.
///
/// Uniform permutations use `multinomial(|X|; |π̂_1|, ..., |π̂_o|)`. The
/// zero-jump, symmetric and graph families use the weighted sum of their
/// unconstrained polytope, which counts the whole permutation class.
pub fn normalizer(zp: &ZoneProfile, family: &Family) -> Result<BigUint> {
    let cards = &zp.zone_card;
    Ok(match family {
        Family::Upsilon { .. } | Family::Omega { .. } => tridiagonal(cards).enumerate()?.1,
        Family::Sigma { .. } => symmetric(cards).0.enumerate()?.1,
        Family::Gamma {
            block_sizes,
            macro_edges,
            ..
        } => graph(block_sizes, macro_edges)?.0.enumerate()?.1,
        _ => multinomial(zp.n(), cards),
    })
}

/// Enumerates a family and divides by its normalizer.
pub fn evaluate(zp: &ZoneProfile, family: &Family) -> Result<WeightedSum> {
    if let Family::Gamma { block_sizes, .. } = family {
        let mut sizes = block_sizes.clone();
        sizes.sort_unstable();
        let own = ZoneProfile::of(&Partition::from_sizes(&sizes));
        if own.sizes != zp.sizes || own.zone_card != zp.zone_card {
            return Err(Error::InvalidArgument(
                "block sizes do not match the zone profile".into(),
            ));
        }
    }
    for eps in eps_of(family) {
        if eps.is_negative() {
            return Err(Error::InvalidArgument(format!("ε = {eps} is negative")));
        }
    }
    let spec = build_polytope(zp, family)?;
    enumerate_and_sum(&spec, normalizer(zp, family)?)
}

fn eps_of(family: &Family) -> Vec<&Q> {
    match family {
        Family::Psi { e1, e2 }
        | Family::Theta { e1, e2 }
        | Family::Omega { e1, e2 }
        | Family::Sigma { e1, e2 }
        | Family::Phi { e1, e2 }
        | Family::Gamma { e1, e2, .. } => vec![e1, e2],
        Family::ThetaPair { e2 } => vec![e2],
        _ => vec![],
    }
}

pub fn enumerate_and_sum(spec: &PolytopeSpec, normalizer: BigUint) -> Result<WeightedSum> {
    let (points, sum) = spec.enumerate()?;
    WeightedSum::new(points, sum, normalizer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn zones(spec: &[(usize, usize)]) -> ZoneProfile {
        ZoneProfile::from_counts(spec)
    }

    #[test]
    fn lambda_zero_is_the_diagonal() {
        let zp = zones(&[(1, 1), (2, 1), (3, 1)]);
        let spec = build_polytope(&zp, &Family::Lambda { d: 0 }).unwrap();
        let mut pts = Vec::new();
        spec.for_each_point(|x| pts.push(x.to_vec())).unwrap();
        assert_eq!(pts, vec![vec![1, 0, 0, 0, 2, 0, 0, 0, 3]]);
        let w = evaluate(&zp, &Family::Lambda { d: 0 }).unwrap();
        assert_eq!(w.probability, q(2 * 6, 720));
    }

    #[test]
    fn lambda_one_on_one_two() {
        let zp = zones(&[(1, 1), (2, 1)]);
        let spec = build_polytope(&zp, &Family::Lambda { d: 1 }).unwrap();
        let mut pts = Vec::new();
        spec.for_each_point(|x| pts.push(x.to_vec())).unwrap();
        assert_eq!(pts, vec![vec![0, 1, 1, 1]]);
        assert_eq!(
            evaluate(&zp, &Family::Lambda { d: 1 }).unwrap().probability,
            q(2, 3)
        );
        assert_eq!(
            evaluate(&zp, &Family::Lambda { d: 0 }).unwrap().probability,
            q(1, 3)
        );
    }

    #[test]
    fn relaxed_families_are_certain() {
        let zp = zones(&[(1, 2), (2, 1), (3, 1)]);
        let one = q(1, 1);
        for f in [
            Family::Psi {
                e1: one.clone(),
                e2: one.clone(),
            },
            Family::Theta {
                e1: one.clone(),
                e2: one.clone(),
            },
            Family::Omega {
                e1: one.clone(),
                e2: one.clone(),
            },
            Family::Sigma {
                e1: one.clone(),
                e2: one.clone(),
            },
        ] {
            assert_eq!(evaluate(&zp, &f).unwrap().probability, one, "{}", f.name());
        }
    }

    #[test]
    fn refinement_sums() {
        let zp = zones(&[(1, 1), (2, 1), (3, 1)]);
        for d in 0..=3 {
            let whole = evaluate(&zp, &Family::Lambda { d }).unwrap().weighted_sum;
            let parts: BigUint = (0..=3)
                .map(|e| {
                    evaluate(&zp, &Family::LambdaDe { d, e })
                        .unwrap()
                        .weighted_sum
                })
                .sum();
            assert_eq!(whole, parts);
        }
    }
}
