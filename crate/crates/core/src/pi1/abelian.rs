use serde::{Deserialize, Serialize};

use super::Presentation;

/// `ℤ^rank ⊕ ℤ/d₁ ⊕ ⋯ ⊕ ℤ/d_k` with `1 < d₁ | d₂ | ⋯ | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Abelianization {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl Abelianization {
    /// Number of homomorphisms into `ℤ/n₁ × ⋯ × ℤ/n_m`.
    pub fn hom_count_into_abelian(&self, cyclic_factors: &[u64]) -> u128 {
        let order: u128 = cyclic_factors.iter().map(|&n| u128::from(n)).product();
        let mut count = order.pow(self.rank as u32);
        for &d in &self.torsion {
            for &n in cyclic_factors {
                count *= u128::from(gcd(d, n));
            }
        }
        count
    }
}

impl std::fmt::Display for Abelianization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<i64>> {
    p.relators()
        .iter()
        .map(|r| (1..=p.ngens()).map(|g| r.exponent_sum(g)).collect())
        .collect()
}

/// Diagonal of the Smith normal form of `m` (nonzero entries only, positive,
/// each dividing the next).
pub fn smith_diagonal(mut m: Vec<Vec<i64>>) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| m[r][c] != 0)
            .min_by_key(|&(r, c)| m[r][c].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                let q = m[r][t] / m[t][t];
                if q != 0 {
                    for c in t..cols {
                        m[r][c] -= q * m[t][c];
                    }
                }
                if m[r][t] != 0 {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                let q = m[t][c] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[c] -= q * row[t];
                    }
                }
                if m[t][c] != 0 {
                    clean = false;
                }
            }
            if clean {
                // the pivot must also divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| m[r][c] % m[t][t] != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        for c in t..cols {
                            m[t][c] += m[r][c];
                        }
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let best_r = (t..rows).filter(|&r| m[r][t] != 0).min_by_key(|&r| m[r][t].abs());
            let best_c = (t..cols).filter(|&c| m[t][c] != 0).min_by_key(|&c| m[t][c].abs());
            match (best_r, best_c) {
                (Some(r), Some(c)) if m[r][t].abs() <= m[t][c].abs() => m.swap(t, r),
                (_, Some(c)) => {
                    for row in m.iter_mut() {
                        row.swap(t, c);
                    }
                }
                (Some(r), None) => m.swap(t, r),
                (None, None) => unreachable!("pivot is nonzero"),
            }
        }
        diag.push(m[t][t].unsigned_abs());
        t += 1;
    }
    diag
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let diag = smith_diagonal(relation_matrix(p));
    Abelianization {
        rank: usize::from(p.ngens()) - diag.len(),
        torsion: diag.into_iter().filter(|&d| d > 1).collect(),
    }
}
