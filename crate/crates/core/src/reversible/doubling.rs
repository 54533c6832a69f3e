use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{q, qi, Q};
use crate::properties::{check_gat, check_l1, check_l2, check_l3};
use crate::system::{Dynamics, Partition, System};

/// A checked numbered item of a construction contract.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractItem {
    pub item: String,
    pub holds: bool,
}

/// Results of checking the stated items of a construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Contract {
    pub items: Vec<ContractItem>,
}

impl Contract {
    fn push(&mut self, item: impl Into<String>, holds: bool) {
        self.items.push(ContractItem {
            item: item.into(),
            holds,
        });
    }

    pub fn all_hold(&self) -> bool {
        self.items.iter().all(|i| i.holds)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.items
            .iter()
            .filter(|i| !i.holds)
            .map(|i| i.item.as_str())
            .collect()
    }
}

/// `alpha-hat(i, s) = (alpha^s(i), s)` on `X × {±1}` with `(i, +1) ↦ i` and
/// `(i, -1) ↦ n + i`, and `r(i, s) = (i, -s)`.
fn doubled_dynamics(sys: &System) -> Result<(Dynamics, Vec<usize>)> {
    let inv = sys.dynamics().inverse().ok_or(Error::NotInvertible)?;
    let n = sys.n();
    let image = (0..n)
        .map(|i| sys.alpha(i))
        .chain((0..n).map(|i| n + inv.apply(i)))
        .collect();
    let r = (0..n).map(|i| n + i).chain(0..n).collect();
    Ok((Dynamics::new(image)?, r))
}

/// The invariant reversible system `IR(X, A, f, alpha)` with macro map
/// `f π_X`.
pub fn make_ir(sys: &System) -> Result<System> {
    let (d, r) = doubled_dynamics(sys)?;
    let p = sys.partition();
    let labels: Vec<usize> = (0..2 * sys.n())
        .map(|k| p.block_of(k % sys.n().max(1)))
        .collect();
    System::new(Partition::from_labels(&labels), d, Some(r))
}

/// The equivariant reversible system `ER(X, A, f, alpha)` with macro map
/// `f × 1` onto `A × {±1}`.
pub fn make_er(sys: &System) -> Result<System> {
    let (d, r) = doubled_dynamics(sys)?;
    let p = sys.partition();
    let (n, m) = (sys.n(), p.num_blocks());
    let labels: Vec<usize> = (0..2 * n)
        .map(|k| {
            if k < n {
                p.block_of(k)
            } else {
                m + p.block_of(k - n)
            }
        })
        .collect();
    System::new(Partition::from_labels(&labels), d, Some(r))
}

/// Exact `N_ab` of `alpha^{-1}`.
fn inverse_counts(sys: &System) -> Result<Vec<Vec<usize>>> {
    Ok(sys.inverse()?.transition_counts(1).counts)
}

fn ln2_shift(a: f64, b: f64, shift: f64) -> bool {
    (a - b - shift).abs() <= 1e-12 * (1.0 + a.abs())
}

/// Items shared by IR and ER: the `D`/`I`/`C` counts and the `ε` criteria
/// for `L1`, `GAT` and `L2` on the doubled system, over `grid`.
fn shared_items(sys: &System, doubled: &System, grid: &[(Q, Q)], c: &mut Contract) {
    let (d, i, cc) = sys.dic_counts();
    let (dh, ih, ch) = doubled.dic_counts();
    c.push("|D^| = |I^| = |D| + |I|", dh == ih && dh == d + i);
    c.push("|C^| = 2|C|", ch == 2 * cc);
    let n = qi(sys.n());
    let neq = qi(sys.xneq().len());
    let eq = qi(sys.xeq().len());
    let di = qi(d + i);
    let cq = qi(cc);
    let two = qi(2);
    let one = qi(1);
    let mut ok4 = true;
    let mut ok5 = true;
    let mut ok6 = true;
    for (e1, e2) in grid {
        let l1 = check_l1(doubled, e1).holds;
        let l1_a = di <= &two * e1 * &n;
        let l1_b = cq >= (&one - &two * e1) * &n;
        ok4 &= l1 == l1_a && l1 == l1_b;
        let gat = check_gat(doubled, e2).holds;
        let gat_a = di >= &two * (&one - e2) * &neq;
        let gat_b = cq <= &eq - (&one - &two * e2) * &neq;
        ok5 &= gat == gat_a && gat == gat_b;
        let l2 = check_l2(doubled, e1, e2).holds;
        ok6 &= l2 == (l1_a && gat_a) && l2 == (l1_b && gat_b);
    }
    c.push("L1 criteria", ok4);
    c.push("GAT criteria", ok5);
    c.push("L2 criteria", ok6);
}

/// Checks every numbered item for the invariant doubling on the `ε` grid.
pub fn ir_contract(sys: &System, grid: &[(Q, Q)]) -> Result<Contract> {
    let ir = make_ir(sys)?;
    let n = sys.n();
    let mut c = Contract::default();
    let fibers = (0..n).all(|i| ir.size(i) == 2 * sys.size(i) && ir.size(n + i) == 2 * sys.size(i))
        && (0..n).all(|i| ir.partition().block_of(i) == ir.partition().block_of(n + i));
    let s_ok = n == 0
        || ln2_shift(
            ir.partition().mean_entropy(),
            sys.partition().mean_entropy(),
            std::f64::consts::LN_2,
        );
    c.push("doubled fibers", fibers);
    c.push("S + ln 2", s_ok);
    shared_items(sys, &ir, grid, &mut c);
    // blocks matched through the first microstate of each original block
    let fwd = sys.transition_counts(1).counts;
    let bwd = inverse_counts(sys)?;
    let hat = ir.transition_counts(1).counts;
    let p = sys.partition();
    let phi: Vec<usize> = (0..p.num_blocks())
        .map(|b| ir.partition().block_of(p.block(b)[0]))
        .collect();
    let m = p.num_blocks();
    let item3 = (0..m).all(|a| (0..m).all(|b| hat[phi[a]][phi[b]] == fwd[a][b] + bwd[a][b]));
    c.push("2 T^ = T(alpha) + T(alpha^-1)", item3);
    Ok(c)
}

/// Checks every numbered item for the equivariant doubling, including the
/// equivalences with the invariant doubling on the `ε` grid.
pub fn er_contract(sys: &System, grid: &[(Q, Q)]) -> Result<Contract> {
    let er = make_er(sys)?;
    let ir = make_ir(sys)?;
    let n = sys.n();
    let mut c = Contract::default();
    let fibers = (0..n).all(|i| er.size(i) == sys.size(i) && er.size(n + i) == sys.size(i));
    let s_ok = n == 0
        || ln2_shift(
            er.partition().mean_entropy(),
            sys.partition().mean_entropy(),
            0.0,
        );
    c.push("fibers preserved", fibers);
    c.push("S preserved", s_ok);
    shared_items(sys, &er, grid, &mut c);
    let fwd = sys.transition_counts(1).counts;
    let bwd = inverse_counts(sys)?;
    let hat = er.transition_counts(1).counts;
    let p = sys.partition();
    let m = p.num_blocks();
    let plus: Vec<usize> = (0..m)
        .map(|b| er.partition().block_of(p.block(b)[0]))
        .collect();
    let minus: Vec<usize> = (0..m)
        .map(|b| er.partition().block_of(n + p.block(b)[0]))
        .collect();
    let mut same = true;
    let mut cross = true;
    for a in 0..m {
        for b in 0..m {
            same &= hat[plus[a]][plus[b]] == fwd[a][b] && hat[minus[a]][minus[b]] == bwd[a][b];
            cross &= hat[plus[a]][minus[b]] == 0 && hat[minus[a]][plus[b]] == 0;
        }
    }
    c.push("sheet transitions", same);
    c.push("no cross-sheet transitions", cross);
    let l2 = grid
        .iter()
        .all(|(e1, e2)| check_l2(&ir, e1, e2).holds == check_l2(&er, e1, e2).holds);
    let l3 = grid
        .iter()
        .all(|(e1, e2)| check_l3(&ir, e1, e2).holds == check_l3(&er, e1, e2).holds);
    c.push("IR in L2 iff ER in L2", l2);
    c.push("IR in L3 iff ER in L3", l3);
    Ok(c)
}

/// The `ε` pairs used by default: every pair from `{0, 1/4, 1/3, 1/2, 1}`.
pub fn default_grid() -> Vec<(Q, Q)> {
    let vals = [(0, 1), (1, 4), (1, 3), (1, 2), (1, 1)].map(|(a, b)| q(a, b));
    vals.iter()
        .flat_map(|a| vals.iter().map(move |b| (a.clone(), b.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::build_system;

    #[test]
    fn identity_doubles_to_identity() {
        let s = build_system(vec![vec![0], vec![1, 2]], vec![0, 1, 2], None).unwrap();
        let ir = make_ir(&s).unwrap();
        assert_eq!(ir.dynamics(), &Dynamics::identity(6));
        assert_eq!(ir.dic_counts().2, 6);
        let er = make_er(&s).unwrap();
        assert_eq!(er.partition().num_blocks(), 4);
    }

    #[test]
    fn staircase_counts() {
        let s = build_system(vec![vec![0], vec![1, 2]], vec![1, 2, 0], None).unwrap();
        let ir = make_ir(&s).unwrap();
        let (d, i, _) = ir.dic_counts();
        assert_eq!((d, i), (2, 2));
        assert!(ir_contract(&s, &default_grid()).unwrap().all_hold());
        assert!(er_contract(&s, &default_grid()).unwrap().all_hold());
    }

    #[test]
    fn non_invertible_rejected() {
        let s = build_system(vec![vec![0, 1]], vec![0, 0], None).unwrap();
        assert_eq!(make_ir(&s), Err(Error::NotInvertible));
    }
}
