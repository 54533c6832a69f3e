use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A map `alpha: X -> X` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Dynamics {
    image: Vec<usize>,
    invertible: bool,
}

/// Recurrent part of a map: the points lying on cycles, grouped by cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    /// Cycles, each starting at its smallest element, sorted by that element.
    pub cycles: Vec<Vec<usize>>,
    /// `X_r`, the sorted set of recurrent microstates.
    pub recurrent: Vec<usize>,
}

impl Dynamics {
    /// Validates that every image lies in `0..image.len()`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut hit = vec![false; n];
        let mut invertible = true;
        for (i, &j) in image.iter().enumerate() {
            if j >= n {
                return Err(Error::InvalidDynamics(format!(
                    "image of {i} is {j}, out of range for {n} microstates"
                )));
            }
            if hit[j] {
                invertible = false;
            }
            hit[j] = true;
        }
        Ok(Self { image, invertible })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
            invertible: true,
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn invertible(&self) -> bool {
        self.invertible
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// The inverse map, if `alpha` is a bijection.
    pub fn inverse(&self) -> Option<Dynamics> {
        if !self.invertible {
            return None;
        }
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Some(Dynamics {
            image: inv,
            invertible: true,
        })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Dynamics) -> Dynamics {
        let image = other.image.iter().map(|&j| self.image[j]).collect();
        Dynamics {
            image,
            invertible: self.invertible && other.invertible,
        }
    }

    /// `alpha^k` for `k ≥ 0`.
    pub fn power(&self, k: usize) -> Dynamics {
        let mut result = Dynamics::identity(self.n());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = base.compose(&result);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }

    /// `alpha^k` for any integer `k`; negative powers need invertibility.
    pub fn signed_power(&self, k: i64) -> Result<Dynamics> {
        if k >= 0 {
            Ok(self.power(k as usize))
        } else {
            Ok(self
                .inverse()
                .ok_or(Error::NotInvertible)?
                .power(k.unsigned_abs() as usize))
        }
    }

    /// Cycle decomposition of the recurrent part; for a bijection this is
    /// `Cyc(alpha)` and `recurrent` is all of `X`.
    pub fn orbits(&self) -> Orbits {
        let n = self.n();
        // 0 = unvisited, 1 = on current path, 2 = finished
        let mut state = vec![0u8; n];
        let mut on_cycle = vec![false; n];
        let mut path = Vec::new();
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            path.clear();
            let mut i = start;
            while state[i] == 0 {
                state[i] = 1;
                path.push(i);
                i = self.image[i];
            }
            if state[i] == 1 {
                let pos = path.iter().position(|&p| p == i).unwrap();
                for &p in &path[pos..] {
                    on_cycle[p] = true;
                }
            }
            for &p in &path {
                state[p] = 2;
            }
        }
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if !on_cycle[start] || seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut i = self.image[start];
            while i != start {
                seen[i] = true;
                c.push(i);
                i = self.image[i];
            }
            cycles.push(c);
        }
        let recurrent = (0..n).filter(|&i| on_cycle[i]).collect();
        Orbits { cycles, recurrent }
    }
}

impl TryFrom<Vec<usize>> for Dynamics {
    type Error = Error;
    fn try_from(image: Vec<usize>) -> Result<Self> {
        Self::new(image)
    }
}

impl From<Dynamics> for Vec<usize> {
    fn from(d: Dynamics) -> Self {
        d.image
    }
}
