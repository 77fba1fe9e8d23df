//! Incidence lattices. Only the rank-two layer is stored: the points, each
//! as the set of lines through it. Lines and the two bounding elements are
//! implicit, and this layer determines the whole lattice.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// The multiset of intersection points of an arrangement on lines `1..=ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IncidenceLattice {
    ell: u8,
    points: Vec<Vec<u8>>,
}

impl IncidenceLattice {
    /// Checks that every pair of lines meets in exactly one point.
    pub fn new(ell: u8, points: Vec<Vec<u8>>) -> Result<Self> {
        let n = usize::from(ell);
        let mut seen = vec![false; n * n];
        let mut points: Vec<Vec<u8>> = points
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        for p in &points {
            if p.len() < 2 || p.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parameter(format!("bad point {p:?}")));
            }
            for (k, &x) in p.iter().enumerate() {
                if x == 0 || x > ell {
                    return Err(Error::Parameter(format!("line {x} outside 1..={ell}")));
                }
                for &y in &p[k + 1..] {
                    let cell = &mut seen[usize::from(x - 1) * n + usize::from(y - 1)];
                    if *cell {
                        return Err(Error::CrossTwice { lines: (x, y), point: 0 });
                    }
                    *cell = true;
                }
            }
        }
        for x in 1..ell {
            for y in x + 1..=ell {
                if !seen[usize::from(x - 1) * n + usize::from(y - 1)] {
                    return Err(Error::NeverCross { lines: (x, y) });
                }
            }
        }
        points.sort();
        Ok(IncidenceLattice { ell, points })
    }

    pub fn ell(&self) -> u8 {
        self.ell
    }

    /// Points as sorted line sets, in sorted order.
    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }

    /// Applies `line ↦ map[line - 1]`.
    pub fn relabeled(&self, map: &[u8]) -> Self {
        let mut points: Vec<Vec<u8>> = self
            .points
            .iter()
            .map(|p| {
                let mut q: Vec<u8> = p.iter().map(|&x| map[usize::from(x - 1)]).collect();
                q.sort_unstable();
                q
            })
            .collect();
        points.sort();
        IncidenceLattice { ell: self.ell, points }
    }
}

impl fmt::Display for IncidenceLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_points(f, &self.points)
    }
}

fn write_points(f: &mut fmt::Formatter<'_>, points: &[Vec<u8>]) -> fmt::Result {
    for p in points {
        f.write_str("{")?;
        for (k, x) in p.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")?;
    }
    Ok(())
}

/// The lexicographically least sorted point list over all relabelings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeCanonicalForm {
    ell: u8,
    points: Vec<Vec<u8>>,
}

impl LatticeCanonicalForm {
    pub fn ell(&self) -> u8 {
        self.ell
    }

    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }
}

impl fmt::Display for LatticeCanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_points(f, &self.points)
    }
}

/// The lattice of a valid diagram.
pub fn lattice_of(d: &Diagram) -> Result<IncidenceLattice> {
    let points = d.crossing_points()?;
    let mut points = points;
    points.sort();
    Ok(IncidenceLattice { ell: d.ell(), points })
}

pub fn lattices_isomorphic(a: &IncidenceLattice, b: &IncidenceLattice) -> bool {
    a.ell == b.ell
        && a.points.len() == b.points.len()
        && canonical_lattice(a) == canonical_lattice(b)
}

/// Minimum encoding over all relabelings.
///
/// Labels `1, 2, …` are handed out in order. With labels `1..=k` fixed,
/// any completion sends a point to its known labels followed by unknown ones
/// that are at least `k+1, k+2, …`, so that sorted list bounds every leaf
/// below. Unassigned lines that can be swapped without changing the point
/// set give identical subtrees and only one of them is explored.
pub fn canonical_lattice(lat: &IncidenceLattice) -> LatticeCanonicalForm {
    let ell = usize::from(lat.ell);
    let masks: Vec<u64> = lat
        .points
        .iter()
        .map(|p| p.iter().fold(0u64, |m, &x| m | 1 << (x - 1)))
        .collect();
    let mut search = LabelSearch {
        ell,
        masks: &masks,
        point_set: masks.iter().copied().collect(),
        label_of: vec![0; ell],
        best: None,
    };
    search.descend(0, 0);
    LatticeCanonicalForm {
        ell: lat.ell,
        points: search.best.expect("at least one labeling"),
    }
}

struct LabelSearch<'a> {
    ell: usize,
    masks: &'a [u64],
    point_set: HashSet<u64>,
    /// 0 = unassigned
    label_of: Vec<u8>,
    best: Option<Vec<Vec<u8>>>,
}

impl LabelSearch<'_> {
    fn bound(&self, k: u8) -> Vec<Vec<u8>> {
        let mut out: Vec<Vec<u8>> = self
            .masks
            .iter()
            .map(|&m| {
                let mut known = Vec::new();
                let mut unknown = 0u8;
                for line in 0..self.ell {
                    if m >> line & 1 == 1 {
                        match self.label_of[line] {
                            0 => unknown += 1,
                            l => known.push(l),
                        }
                    }
                }
                known.sort_unstable();
                known.extend((1..=unknown).map(|j| k + j));
                known
            })
            .collect();
        out.sort();
        out
    }

    fn swap_is_automorphism(&self, x: usize, y: usize) -> bool {
        let (bx, by) = (1u64 << x, 1u64 << y);
        self.masks.iter().all(|&m| {
            let (hx, hy) = (m & bx != 0, m & by != 0);
            hx == hy || self.point_set.contains(&(m ^ bx ^ by))
        })
    }

    fn descend(&mut self, assigned: u8, used: u64) {
        let bound = self.bound(assigned);
        if let Some(best) = &self.best {
            if bound.cmp(best) == Ordering::Greater {
                return;
            }
        }
        if usize::from(assigned) == self.ell {
            if self.best.as_ref().is_none_or(|b| bound < *b) {
                self.best = Some(bound);
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for line in 0..self.ell {
            if used >> line & 1 == 1 {
                continue;
            }
            if tried.iter().any(|&t| self.swap_is_automorphism(t, line)) {
                continue;
            }
            tried.push(line);
            self.label_of[line] = assigned + 1;
            self.descend(assigned + 1, used | 1 << line);
            self.label_of[line] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(s: &str) -> IncidenceLattice {
        lattice_of(&s.parse().unwrap()).unwrap()
    }

    fn brute_force(l: &IncidenceLattice) -> Vec<Vec<u8>> {
        let ell = usize::from(l.ell());
        let mut perm: Vec<u8> = (1..=l.ell()).collect();
        let mut best = l.points().to_vec();
        // Heap's algorithm
        let mut c = vec![0usize; ell];
        let mut i = 0;
        while i < ell {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                let cand = l.relabeled(&perm).points().to_vec();
                if cand < best {
                    best = cand;
                }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best
    }

    #[test]
    fn small_lattices() {
        let generic = lat("l=3: (1,2)(2,3)(1,2)");
        assert_eq!(generic.to_string(), "{1,2}{1,3}{2,3}");
        assert_eq!(canonical_lattice(&generic).to_string(), "{1,2}{1,3}{2,3}");
        let pencil = lat("l=3: (1,3)");
        assert_eq!(pencil.to_string(), "{1,2,3}");
        let five = lat("l=5: (4,5)(2,4)(1,2)(4,5)(2,3)(3,4)(4,5)(2,3)");
        assert_eq!(five.points().len(), 8);
        assert_eq!(five.points().iter().filter(|p| p.len() == 3).count(), 1);
    }

    #[test]
    fn generic_lattice_is_all_two_subsets() {
        let d: Diagram = "l=5: (1,2)(2,3)(1,2)(3,4)(2,3)(1,2)(4,5)(3,4)(2,3)(1,2)".parse().unwrap();
        let form = canonical_lattice(&lattice_of(&d).unwrap());
        let mut want = Vec::new();
        for x in 1..=5u8 {
            for y in x + 1..=5 {
                want.push(vec![x, y]);
            }
        }
        assert_eq!(form.points(), &want[..]);
    }

    #[test]
    fn agrees_with_brute_force() {
        for s in [
            "l=5: (4,5)(2,4)(1,2)(4,5)(2,3)(3,4)(4,5)(2,3)",
            "l=4: (2,4)(1,2)(2,3)(1,2)",
            "l=6: (1,3)(3,4)(4,6)(2,3)(3,4)(1,2)(4,5)(2,3)(3,4)(5,6)",
            "l=7: (3,5)(1,3)(5,6)(3,5)(5,7)(2,3)(3,5)(1,3)(5,6)",
        ] {
            let d: Diagram = s.parse().unwrap();
            if !d.is_valid() {
                continue;
            }
            let l = lattice_of(&d).unwrap();
            assert_eq!(canonical_lattice(&l).points(), &brute_force(&l)[..], "{s}");
        }
    }

    #[test]
    fn relabel_invariant() {
        let l = lat("l=7: (3,5)(1,3)(5,6)(3,5)(5,7)(2,3)(3,5)(1,3)(5,6)");
        let r = l.relabeled(&[4, 7, 1, 3, 6, 2, 5]);
        assert!(lattices_isomorphic(&l, &r));
        assert_ne!(l, r);
        assert!(!lattices_isomorphic(&l, &lat("l=3: (1,3)")));
    }

    #[test]
    fn construction_checks_incidences() {
        assert!(IncidenceLattice::new(3, vec![vec![1, 2], vec![2, 3], vec![1, 3]]).is_ok());
        assert!(IncidenceLattice::new(3, vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(IncidenceLattice::new(3, vec![vec![1, 2, 3], vec![2, 3]]).is_err());
        assert!(IncidenceLattice::new(3, vec![vec![1, 4]]).is_err());
    }
}
