use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::{Dynamics, Partition, System};

/// Which of the three orbit constructions to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NotKind {
    /// Cycles `L × {1} ⊔ L^op × {-1}` with no reversion-fixed point.
    N,
    /// Cycles `o ⊔ L × {1} ⊔ L^op × {-1}` with one reversion-fixed point.
    O,
    /// Cycles `o ⊔ L × {1} ⊔ t ⊔ L^op × {-1}` with two reversion-fixed points.
    T,
}

/// A macro-colored linear order `L_c` together with the colors `g(c)` of
/// `o_c` and `h(c)` of `t_c` where the kind needs them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub colors: Vec<usize>,
    #[serde(default)]
    pub g: Option<usize>,
    #[serde(default)]
    pub h: Option<usize>,
}

/// A system together with the raw macro label of every microstate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colored {
    pub system: System,
    pub labels: Vec<usize>,
}

impl Colored {
    pub fn new(image: Vec<usize>, reversion: Vec<usize>, labels: Vec<usize>) -> Result<Self> {
        let system = System::new(
            Partition::from_labels(&labels),
            Dynamics::new(image)?,
            Some(reversion),
        )?;
        Ok(Self { system, labels })
    }

    pub fn empty() -> Self {
        Self::new(Vec::new(), Vec::new(), Vec::new()).expect("empty system is valid")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Disjoint union keeping labels global, so equal labels share a block.
    pub fn concat(parts: &[&Colored]) -> Result<Self> {
        let mut image = Vec::new();
        let mut rev = Vec::new();
        let mut labels = Vec::new();
        for p in parts {
            let off = image.len();
            image.extend(p.system.dynamics().image().iter().map(|&j| j + off));
            let r = p
                .system
                .reversion()
                .expect("colored systems are reversible");
            rev.extend(r.iter().map(|&j| j + off));
            labels.extend_from_slice(&p.labels);
        }
        Self::new(image, rev, labels)
    }
}

/// Checks that `rho` is an involution and returns it, or the identity on
/// `0..bound` when absent.
pub(crate) fn label_involution(rho: Option<&[usize]>, bound: usize) -> Result<Vec<usize>> {
    match rho {
        None => Ok((0..bound).collect()),
        Some(r) => {
            if r.iter()
                .enumerate()
                .any(|(a, &b)| b >= r.len() || r[b] != a)
            {
                return Err(Error::InvalidArgument(
                    "label map is not an involution".into(),
                ));
            }
            Ok(r.to_vec())
        }
    }
}

/// Builds the `n`, `o` or `t` construction over `chains`. With `rho` the
/// mirrored sheet is colored by `rho` (the equivariant variants), and every
/// `g`/`h` color must be fixed by `rho`.
///
/// Layout per chain of length `L`: `(l, +1)` for `l < L`, then `(l, -1)`,
/// then `o_c` and `t_c` where present. The reversion swaps the sheets and
/// fixes `o_c` and `t_c`.
pub fn build_not(kind: NotKind, chains: &[ChainSpec], rho: Option<&[usize]>) -> Result<Colored> {
    let bound = chains
        .iter()
        .flat_map(|c| c.colors.iter().chain(c.g.iter()).chain(c.h.iter()))
        .map(|&x| x + 1)
        .max()
        .unwrap_or(0);
    if let Some(r) = rho {
        if bound > r.len() {
            return Err(Error::InvalidArgument(format!(
                "color {} is outside the label involution",
                bound - 1
            )));
        }
    }
    let rho = label_involution(rho, bound)?;
    let mut image = Vec::new();
    let mut rev = Vec::new();
    let mut labels = Vec::new();
    for (ci, c) in chains.iter().enumerate() {
        let len = c.colors.len();
        let base = image.len();
        let need_g = kind != NotKind::N;
        let need_h = kind == NotKind::T;
        let fixed = |x: Option<usize>, name: &str| -> Result<usize> {
            let x = x.ok_or_else(|| {
                Error::InvalidArgument(format!("chain {ci} needs the coloring {name}"))
            })?;
            if rho[x] != x {
                return Err(Error::InvalidArgument(format!(
                    "chain {ci}: color {x} of {name} is not fixed by the involution"
                )));
            }
            Ok(x)
        };
        let g = if need_g { Some(fixed(c.g, "g")?) } else { None };
        let h = if need_h { Some(fixed(c.h, "h")?) } else { None };
        if kind == NotKind::N && len == 0 {
            return Err(Error::InvalidArgument(format!(
                "chain {ci} of an n construction is empty"
            )));
        }
        let plus = |l: usize| base + l;
        let minus = |l: usize| base + len + l;
        let o = base + 2 * len;
        let t = o + 1;
        let size = 2 * len + usize::from(need_g) + usize::from(need_h);
        image.resize(base + size, 0);
        for l in 0..len {
            image[plus(l)] = if l + 1 < len {
                plus(l + 1)
            } else {
                match kind {
                    NotKind::T => t,
                    _ => minus(l),
                }
            };
            image[minus(l)] = if l > 0 {
                minus(l - 1)
            } else {
                match kind {
                    NotKind::N => plus(0),
                    _ => o,
                }
            };
        }
        if need_g {
            image[o] = match (len, kind) {
                (0, NotKind::T) => t,
                (0, _) => o,
                _ => plus(0),
            };
        }
        if need_h {
            image[t] = if len == 0 { o } else { minus(len - 1) };
        }
        rev.extend((0..len).map(minus));
        rev.extend((0..len).map(plus));
        labels.extend_from_slice(&c.colors);
        labels.extend(c.colors.iter().map(|&x| rho[x]));
        if need_g {
            rev.push(o);
            labels.extend(g);
        }
        if need_h {
            rev.push(t);
            labels.extend(h);
        }
    }
    Colored::new(image, rev, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(colors: Vec<usize>, g: Option<usize>, h: Option<usize>) -> ChainSpec {
        ChainSpec { colors, g, h }
    }

    #[test]
    fn o_of_empty_chain_is_a_fixed_point() {
        let c = build_not(NotKind::O, &[chain(vec![], Some(0), None)], None).unwrap();
        assert_eq!(c.system.dynamics().image(), &[0]);
        assert_eq!(c.system.reversion().unwrap(), &[0]);
    }

    #[test]
    fn t_of_single_link_is_a_four_cycle() {
        let c = build_not(NotKind::T, &[chain(vec![1], Some(0), Some(2))], None).unwrap();
        // (0,+) = 0, (0,-) = 1, o = 2, t = 3: o -> (0,+) -> t -> (0,-) -> o
        assert_eq!(c.system.dynamics().image(), &[3, 2, 0, 1]);
        assert_eq!(c.system.reversion().unwrap(), &[1, 0, 2, 3]);
        assert_eq!(c.system.dynamics().orbits().cycles.len(), 1);
    }

    #[test]
    fn n_of_two_links_is_a_free_four_cycle() {
        let c = build_not(NotKind::N, &[chain(vec![0, 1], None, None)], None).unwrap();
        let r = c.system.reversion().unwrap();
        assert!((0..4).all(|i| r[i] != i));
        assert_eq!(c.system.dynamics().orbits().cycles.len(), 1);
        assert_eq!(c.system.dynamics().orbits().cycles[0].len(), 4);
    }

    #[test]
    fn equivariant_coloring() {
        let rho = [1, 0, 2];
        let c = build_not(NotKind::O, &[chain(vec![0, 0], Some(2), None)], Some(&rho)).unwrap();
        assert_eq!(c.labels, vec![0, 0, 1, 1, 2]);
        assert!(c.system.is_equivariant());
        assert!(build_not(NotKind::O, &[chain(vec![0], Some(0), None)], Some(&rho)).is_err());
        assert!(build_not(NotKind::N, &[chain(vec![], None, None)], None).is_err());
        assert!(build_not(NotKind::T, &[chain(vec![0], Some(0), None)], None).is_err());
    }
}
