use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{factorial, ser_big, ser_q, Q};

/// A linear constraint `Σ coeff · x_var (relation) rhs` over integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub terms: Vec<(usize, i64)>,
    pub rhs: i64,
}

/// A group of variables whose values split `total` items; the remainder
/// `total - Σ entries` is an implicit extra entry when `remainder` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Column {
    pub vars: Vec<usize>,
    pub total: usize,
    pub remainder: bool,
}

/// How a lattice point is weighted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WeightRule {
    /// `Π_columns multinomial(total; entries)`.
    MultinomialProduct(Vec<Column>),
    /// `Π_i |π̂_i|!² / Π_i (a_i!² (|π̂_i| - a_i - a_{i-1})!)`, written as
    /// `Π |π̂_i|!` times the multinomial product of the columns.
    InverseFactorialProduct(Vec<Column>),
    /// Every point counts once.
    PlainCount,
}

/// Integer points `x ≥ 0` subject to equality and inequality constraints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeSpec {
    pub num_vars: usize,
    pub var_names: Vec<String>,
    pub eq_constraints: Vec<Constraint>,
    pub le_constraints: Vec<Constraint>,
    pub ge_constraints: Vec<Constraint>,
    pub weight_rule: WeightRule,
}

/// Lattice point count, weighted sum and probability of one polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightedSum {
    #[serde(serialize_with = "ser_big")]
    pub lattice_points: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub weighted_sum: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub normalizer: BigUint,
    #[serde(serialize_with = "ser_q")]
    pub probability: Q,
}

impl WeightedSum {
    pub fn new(
        lattice_points: BigUint,
        weighted_sum: BigUint,
        normalizer: BigUint,
    ) -> Result<Self> {
        if normalizer.is_zero() {
            return Err(Error::InvalidArgument("zero normalizer".into()));
        }
        let probability = crate::numeric::qb(&weighted_sum, &normalizer);
        Ok(Self {
            lattice_points,
            weighted_sum,
            normalizer,
            probability,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.lattice_points.is_zero()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Eq,
    Le,
    Ge,
}

struct Prepared {
    n: usize,
    cons: Vec<(Kind, Constraint)>,
    /// Constraints with nonnegative coefficients that bound each variable:
    /// `(constraint index, coefficient)`.
    bounding: Vec<Vec<(usize, i64)>>,
    /// Per variable, the constraints it appears in with its coefficient.
    occurs: Vec<Vec<(usize, i64)>>,
}

impl PolytopeSpec {
    fn prepare(&self) -> Result<Prepared> {
        let n = self.num_vars;
        let mut cons = Vec::new();
        for (kind, list) in [
            (Kind::Eq, &self.eq_constraints),
            (Kind::Le, &self.le_constraints),
            (Kind::Ge, &self.ge_constraints),
        ] {
            for c in list {
                if let Some(&(v, _)) = c.terms.iter().find(|(v, _)| *v >= n) {
                    return Err(Error::InvalidArgument(format!(
                        "constraint uses variable {v} of {n}"
                    )));
                }
                cons.push((kind, c.clone()));
            }
        }
        let mut bounding = vec![Vec::new(); n];
        let mut occurs = vec![Vec::new(); n];
        for (k, (kind, c)) in cons.iter().enumerate() {
            let nonneg = c.terms.iter().all(|&(_, a)| a >= 0);
            for &(v, a) in &c.terms {
                if a != 0 {
                    occurs[v].push((k, a));
                }
                if a > 0 && nonneg && *kind != Kind::Ge {
                    bounding[v].push((k, a));
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| bounding[v].is_empty()) {
            return Err(Error::Unbounded(format!(
                "variable {} has no bounding constraint",
                self.var_names
                    .get(v)
                    .cloned()
                    .unwrap_or_else(|| v.to_string())
            )));
        }
        Ok(Prepared {
            n,
            cons,
            bounding,
            occurs,
        })
    }

    /// Weight of one lattice point.
    pub fn weight(&self, x: &[i64]) -> BigUint {
        let columns = |cols: &[Column]| -> BigUint {
            cols.iter()
                .map(|c| {
                    let mut parts: Vec<usize> = c.vars.iter().map(|&v| x[v] as usize).collect();
                    let used: usize = parts.iter().sum();
                    if c.remainder {
                        if used > c.total {
                            return BigUint::zero();
                        }
                        parts.push(c.total - used);
                    }
                    crate::numeric::multinomial(c.total, &parts)
                })
                .product()
        };
        match &self.weight_rule {
            WeightRule::MultinomialProduct(cols) => columns(cols),
            WeightRule::InverseFactorialProduct(cols) => {
                cols.iter().map(|c| factorial(c.total)).product::<BigUint>() * columns(cols)
            }
            WeightRule::PlainCount => BigUint::one(),
        }
    }

    /// Visits every lattice point in variable order.
    pub fn for_each_point(&self, mut f: impl FnMut(&[i64])) -> Result<()> {
        let p = self.prepare()?;
        let mut x = vec![0i64; p.n];
        let mut partial = vec![0i64; p.cons.len()];
        dfs(&p, 0, &mut x, &mut partial, &mut f);
        Ok(())
    }

    /// Lattice points and weighted sum, split across threads at the first
    /// variable.
    pub fn enumerate(&self) -> Result<(BigUint, BigUint)> {
        let p = self.prepare()?;
        if p.n == 0 {
            let ok = feasible(&p, &[], &vec![0; p.cons.len()], 0);
            return Ok(if ok {
                (BigUint::one(), self.weight(&[]))
            } else {
                (BigUint::zero(), BigUint::zero())
            });
        }
        let partial0 = vec![0i64; p.cons.len()];
        let x0 = vec![0i64; p.n];
        let ub = upper_bound(&p, 0, &partial0);
        let totals: Vec<(BigUint, BigUint)> = (0..=ub.max(-1))
            .into_par_iter()
            .map(|v| {
                let mut x = x0.clone();
                let mut partial = partial0.clone();
                assign(&p, 0, v, &mut x, &mut partial);
                let mut count = BigUint::zero();
                let mut sum = BigUint::zero();
                if feasible(&p, &x, &partial, 1) {
                    dfs(&p, 1, &mut x, &mut partial, &mut |pt| {
                        count += 1u32;
                        sum += self.weight(pt);
                    });
                }
                (count, sum)
            })
            .collect();
        Ok(totals
            .into_iter()
            .fold((BigUint::zero(), BigUint::zero()), |(a, b), (c, d)| {
                (a + c, b + d)
            }))
    }
}

fn assign(p: &Prepared, var: usize, v: i64, x: &mut [i64], partial: &mut [i64]) {
    let old = x[var];
    x[var] = v;
    for &(k, a) in &p.occurs[var] {
        partial[k] += a * (v - old);
    }
}

fn upper_bound(p: &Prepared, var: usize, partial: &[i64]) -> i64 {
    p.bounding[var]
        .iter()
        .map(|&(k, a)| (p.cons[k].1.rhs - partial[k]).div_euclid(a))
        .min()
        .unwrap_or(i64::MAX)
}

/// Whether every constraint can still be met by the variables from `next`
/// on, each ranging over `[0, upper bound]`.
fn feasible(p: &Prepared, _x: &[i64], partial: &[i64], next: usize) -> bool {
    let ubs: Vec<i64> = (next..p.n).map(|v| upper_bound(p, v, partial)).collect();
    if ubs.iter().any(|&u| u < 0) {
        return false;
    }
    p.cons.iter().enumerate().all(|(k, (kind, c))| {
        let (mut lo, mut hi) = (partial[k], partial[k]);
        for &(v, a) in &c.terms {
            if v >= next {
                let u = ubs[v - next];
                if a > 0 {
                    hi += a * u;
                } else {
                    lo += a * u;
                }
            }
        }
        match kind {
            Kind::Eq => lo <= c.rhs && c.rhs <= hi,
            Kind::Le => lo <= c.rhs,
            Kind::Ge => hi >= c.rhs,
        }
    })
}

fn dfs(
    p: &Prepared,
    var: usize,
    x: &mut Vec<i64>,
    partial: &mut Vec<i64>,
    f: &mut impl FnMut(&[i64]),
) {
    if var == p.n {
        if feasible(p, x, partial, p.n) {
            f(x);
        }
        return;
    }
    let ub = upper_bound(p, var, partial);
    for v in 0..=ub {
        assign(p, var, v, x, partial);
        if feasible(p, x, partial, var + 1) {
            dfs(p, var + 1, x, partial, f);
        }
    }
    assign(p, var, 0, x, partial);
}
