use serde::Serialize;

use super::verdict::{PropertyVerdict, Relation};
use crate::error::{Error, Result};
use crate::numeric::{qu, Q};
use crate::system::{Dynamics, System};

/// Number of `n ∈ [-back, fwd]` with `S(alpha^{n+1} i) ≤ S(alpha^n i)`, or
/// `≥` when `reversed` (negative entropy).
fn bad_steps(
    sys: &System,
    inv: &Dynamics,
    i: usize,
    back: usize,
    fwd: usize,
    reversed: bool,
) -> Vec<usize> {
    let mut x = i;
    for _ in 0..back {
        x = inv.apply(x);
    }
    let mut bad = Vec::new();
    for _ in 0..=back + fwd {
        let y = sys.alpha(x);
        let (s0, s1) = (sys.size(x), sys.size(y));
        if (!reversed && s1 <= s0) || (reversed && s1 >= s0) {
            bad.push(x);
        }
        x = y;
    }
    bad
}

fn arrow_verdict(name: &str, bad: Vec<usize>, back: usize, fwd: usize, eps: &Q) -> PropertyVerdict {
    PropertyVerdict::ratio(
        name,
        qu(bad.len(), back + fwd + 1),
        Relation::AtMost,
        eps.clone(),
        bad,
    )
}

/// `[ε, N, M]`-arrow of time around `i`: the fraction of steps
/// `n ∈ [-N, M]` where entropy does not strictly increase is at most `ε`.
/// Witnesses are the microstates `alpha^n(i)` starting such steps. For
/// entropy preserving reversible systems, the reversed `[ε, M, N]` count at
/// `r alpha(i)` is attached.
pub fn arrow_of_time_at(
    sys: &System,
    i: usize,
    back: usize,
    fwd: usize,
    eps: &Q,
) -> Result<PropertyVerdict> {
    arrow(sys, i, back, fwd, eps, false)
}

/// The same with negative entropy.
pub fn reversed_arrow_of_time_at(
    sys: &System,
    i: usize,
    back: usize,
    fwd: usize,
    eps: &Q,
) -> Result<PropertyVerdict> {
    arrow(sys, i, back, fwd, eps, true)
}

fn arrow(
    sys: &System,
    i: usize,
    back: usize,
    fwd: usize,
    eps: &Q,
    reversed: bool,
) -> Result<PropertyVerdict> {
    let inv = sys.dynamics().inverse().ok_or(Error::NotInvertible)?;
    if i >= sys.n() {
        return Err(Error::InvalidArgument(format!(
            "microstate {i} out of range"
        )));
    }
    let bad = bad_steps(sys, &inv, i, back, fwd, reversed);
    let count = bad.len();
    let name = if reversed { "reversed-arrow" } else { "arrow" };
    let mut v = arrow_verdict(name, bad, back, fwd, eps);
    if let (Some(r), true) = (sys.reversion(), sys.is_entropy_preserving()) {
        let j = r[sys.alpha(i)];
        let dual = bad_steps(sys, &inv, j, fwd, back, !reversed).len();
        v.imply("reversion-dual", dual == count);
    }
    Ok(v)
}

/// Counts over all microstates comparing arrows and reversed arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoschmidtCounts {
    /// `|{i : (ε, N, M)-arrow around i}|`.
    pub arrow: usize,
    /// `|{i : reversed (ε, M, N)-arrow around i}|`.
    pub reversed: usize,
    /// `|{i ∈ X^neq : (ε, N, M)-arrow around i, alpha^{M+1}(i) ∈ X^neq}|`.
    pub arrow_neq_exit: usize,
    /// `|{i ∈ X^neq : reversed (ε, M, N)-arrow around i}|`.
    pub reversed_neq: usize,
    /// `|D X^neq|`.
    pub decrease_neq: usize,
    /// `|{i ∈ I X^neq : alpha(i) ∈ X^neq}|`.
    pub increase_neq_to_neq: usize,
}

impl LoschmidtCounts {
    pub fn arrow_counts_equal(&self) -> bool {
        self.arrow == self.reversed
    }

    pub fn neq_counts_equal(&self) -> bool {
        self.arrow_neq_exit == self.reversed_neq
    }

    pub fn decrease_counts_equal(&self) -> bool {
        self.decrease_neq == self.increase_neq_to_neq
    }
}

/// Exhaustive arrow counts for an entropy preserving reversible system.
pub fn loschmidt_counts(sys: &System, back: usize, fwd: usize, eps: &Q) -> Result<LoschmidtCounts> {
    if sys.reversion().is_none() || !sys.is_entropy_preserving() {
        return Err(Error::InvalidReversion(
            "an entropy preserving reversion is required".into(),
        ));
    }
    let inv = sys.dynamics().inverse().ok_or(Error::NotInvertible)?;
    let len = back + fwd + 1;
    let ok = |bad: usize| qu(bad, len) <= *eps;
    let fwd_map = sys.dynamics().power(fwd + 1);
    let mut c = LoschmidtCounts {
        arrow: 0,
        reversed: 0,
        arrow_neq_exit: 0,
        reversed_neq: 0,
        decrease_neq: 0,
        increase_neq_to_neq: 0,
    };
    for i in 0..sys.n() {
        let a = ok(bad_steps(sys, &inv, i, back, fwd, false).len());
        let r = ok(bad_steps(sys, &inv, i, fwd, back, true).len());
        c.arrow += a as usize;
        c.reversed += r as usize;
        if !sys.is_eq(i) {
            c.arrow_neq_exit += (a && !sys.is_eq(fwd_map.apply(i))) as usize;
            c.reversed_neq += r as usize;
            let j = sys.alpha(i);
            if sys.size(j) < sys.size(i) {
                c.decrease_neq += 1;
            }
            if sys.size(j) > sys.size(i) && !sys.is_eq(j) {
                c.increase_neq_to_neq += 1;
            }
        }
    }
    Ok(c)
}
