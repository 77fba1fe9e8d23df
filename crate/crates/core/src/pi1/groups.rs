//! Small finite groups as multiplication tables. Element 0 is the identity.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u8>,
    inverse: Vec<u8>,
    /// `Some(factors)` when the group is `ℤ/n₁ × ⋯`.
    abelian_factors: Option<Vec<u64>>,
}

impl FiniteGroup {
    /// Builds a group from a product closure on `0..order`. The table is
    /// checked for identity, inverses and associativity.
    pub fn from_fn(name: &str, order: usize, mul: impl Fn(usize, usize) -> usize) -> Option<Self> {
        if order == 0 || order > 256 {
            return None;
        }
        let mut table = vec![0u8; order * order];
        for x in 0..order {
            for y in 0..order {
                let z = mul(x, y);
                if z >= order {
                    return None;
                }
                table[x * order + y] = z as u8;
            }
        }
        let at = |x: usize, y: usize| usize::from(table[x * order + y]);
        if (0..order).any(|x| at(0, x) != x || at(x, 0) != x) {
            return None;
        }
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    if at(at(x, y), z) != at(x, at(y, z)) {
                        return None;
                    }
                }
            }
        }
        let mut inverse = vec![0u8; order];
        for x in 0..order {
            inverse[x] = (0..order).find(|&y| at(x, y) == 0)? as u8;
        }
        Some(FiniteGroup {
            name: name.to_string(),
            order,
            table,
            inverse,
            abelian_factors: None,
        })
    }

    /// `ℤ/n₁ × ⋯ × ℤ/n_k`, elements in mixed radix.
    pub fn abelian(name: &str, factors: &[u64]) -> Self {
        let order: usize = factors.iter().map(|&n| n as usize).product();
        let digits = |mut x: usize| {
            factors
                .iter()
                .map(|&n| {
                    let d = x % n as usize;
                    x /= n as usize;
                    d
                })
                .collect::<Vec<_>>()
        };
        let mut g = Self::from_fn(name, order, |x, y| {
            let (dx, dy) = (digits(x), digits(y));
            let mut z = 0;
            for (k, &n) in factors.iter().enumerate().rev() {
                z = z * n as usize + (dx[k] + dy[k]) % n as usize;
            }
            z
        })
        .expect("cyclic products are groups");
        g.abelian_factors = Some(factors.iter().copied().filter(|&n| n > 1).collect());
        g
    }

    /// Dihedral group of order `2n`: `(k, e)` is `r^k s^e`.
    pub fn dihedral(name: &str, n: usize) -> Self {
        Self::from_fn(name, 2 * n, |x, y| {
            let (k1, e1) = (x % n, x / n);
            let (k2, e2) = (y % n, y / n);
            let k = if e1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
            k + n * (e1 ^ e2)
        })
        .expect("dihedral groups are groups")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // unit index 0..4 = 1,i,j,k; element = unit + 4*negative
        const PROD: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        Self::from_fn("Q8", 8, |x, y| {
            let (u, v) = (x % 4, y % 4);
            let (w, neg) = PROD[u][v];
            let sign = (x / 4 == 1) ^ (y / 4 == 1) ^ neg;
            w + if sign { 4 } else { 0 }
        })
        .expect("quaternions form a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn abelian_factors(&self) -> Option<&[u64]> {
        self.abelian_factors.as_deref()
    }

    #[inline]
    pub fn mul(&self, x: u8, y: u8) -> u8 {
        self.table[usize::from(x) * self.order + usize::from(y)]
    }

    #[inline]
    pub fn inv(&self, x: u8) -> u8 {
        self.inverse[usize::from(x)]
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order as u8).all(|x| (0..self.order as u8).all(|y| self.mul(x, y) == self.mul(y, x)))
    }
}

/// One representative of every isomorphism type of order at most 8.
pub fn default_targets() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::abelian("C1", &[1]),
        FiniteGroup::abelian("C2", &[2]),
        FiniteGroup::abelian("C3", &[3]),
        FiniteGroup::abelian("C4", &[4]),
        FiniteGroup::abelian("C2xC2", &[2, 2]),
        FiniteGroup::abelian("C5", &[5]),
        FiniteGroup::abelian("C6", &[6]),
        FiniteGroup::dihedral("S3", 3),
        FiniteGroup::abelian("C7", &[7]),
        FiniteGroup::abelian("C8", &[8]),
        FiniteGroup::abelian("C4xC2", &[4, 2]),
        FiniteGroup::abelian("C2xC2xC2", &[2, 2, 2]),
        FiniteGroup::dihedral("D4", 4),
        FiniteGroup::quaternion(),
    ]
}

/// Looks a target up by name among [`default_targets`].
pub fn target_by_name(name: &str) -> Option<FiniteGroup> {
    default_targets().into_iter().find(|g| g.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn element_orders(g: &FiniteGroup) -> Vec<usize> {
        let mut out: Vec<usize> = (0..g.order() as u8)
            .map(|x| {
                let mut y = x;
                let mut k = 1;
                while y != 0 {
                    y = g.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn targets_are_pairwise_distinct() {
        let targets = default_targets();
        assert_eq!(targets.len(), 14);
        let mut keys: Vec<_> = targets
            .iter()
            .map(|g| (g.order(), g.is_commutative(), element_orders(g)))
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 14);
    }

    #[test]
    fn non_abelian_targets() {
        for name in ["S3", "D4", "Q8"] {
            let g = target_by_name(name).unwrap();
            assert!(!g.is_commutative());
            assert!(g.abelian_factors().is_none());
        }
        let q = FiniteGroup::quaternion();
        // exactly one element of order 2
        assert_eq!(element_orders(&q).iter().filter(|&&k| k == 2).count(), 1);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_fn("bad", 3, |x, y| x.max(y)).is_none());
    }
}
