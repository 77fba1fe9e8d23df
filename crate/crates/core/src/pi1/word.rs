use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator index with a sign: `g` is `Γ_g`, `-g` is `Γ_g⁻¹`.
pub type Letter = i32;

/// A freely reduced word in `Γ₁, …, Γ_ℓ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: u8) -> Self {
        Word(vec![Letter::from(g)])
    }

    /// Freely reduces `letters`. Zero letters are dropped.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for x in letters {
            if x == 0 {
                continue;
            }
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    /// `Γ_{hi} Γ_{hi-1} ⋯ Γ_{lo}`; empty if `hi < lo`.
    pub fn descending_product(hi: u8, lo: u8) -> Self {
        Word((lo..=hi).rev().map(Letter::from).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&x| -x).collect())
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut out = self.0.clone();
        for &x in &other.0 {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    /// `u · self · u⁻¹`
    pub fn conjugated_by(&self, u: &Word) -> Self {
        u.mul(self).mul(&u.inverse())
    }

    /// Largest generator index used, or 0.
    pub fn max_generator(&self) -> u8 {
        self.0.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) as u8
    }

    pub fn exponent_sum(&self, g: u8) -> i64 {
        self.0
            .iter()
            .filter(|x| x.unsigned_abs() == u32::from(g))
            .map(|&x| x.signum() as i64)
            .sum()
    }

    /// Strips matching first/last letters `x … x⁻¹`.
    pub fn cyclically_reduced(&self) -> Self {
        let (mut lo, mut hi) = (0, self.0.len());
        while hi - lo >= 2 && self.0[lo] == -self.0[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        Word(self.0[lo..hi].to_vec())
    }

    /// The least rotation of the cyclic reduction of `self` or of its
    /// inverse. Two relators with equal normal forms define the same normal
    /// closure.
    pub fn relator_normal_form(&self) -> Self {
        let r = self.cyclically_reduced();
        let a = least_rotation(&r.0);
        let b = least_rotation(&r.inverse().0);
        Word(a.min(b))
    }

    /// If `self` is a conjugate `u Γ_g^{±1} u⁻¹` written reduced, returns
    /// the signed middle letter.
    pub fn conjugate_of(&self) -> Option<Letter> {
        let n = self.0.len();
        if n.is_multiple_of(2) {
            return None;
        }
        let m = n / 2;
        (0..m).all(|k| self.0[k] == -self.0[n - 1 - k]).then(|| self.0[m])
    }
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    (0..letters.len().max(1))
        .map(|k| {
            let mut v = letters[k.min(letters.len())..].to_vec();
            v.extend_from_slice(&letters[..k.min(letters.len())]);
            v
        })
        .min()
        .unwrap_or_default()
}

impl fmt::Display for Word {
    /// Space-separated signed indices; `1` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
