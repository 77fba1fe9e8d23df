use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};
use crate::diagram::{LefschetzPair, Permutation};
use crate::error::{Error, Result};

/// Orientation of the elementary half-twist.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// `Γ_k ↦ Γ_{k+1}`, `Γ_{k+1} ↦ Γ_{k+1} Γ_k Γ_{k+1}⁻¹`; fixes the
    /// boundary word `Γ_ℓ ⋯ Γ₁`.
    #[default]
    Standard,
    /// `Γ_k ↦ Γ_k Γ_{k+1} Γ_k⁻¹`, `Γ_{k+1} ↦ Γ_k`; fixes `Γ₁ ⋯ Γ_ℓ`
    /// instead. Kept for comparison runs.
    Mirrored,
}

/// How the half-twists of the earlier points are stacked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompositionOrder {
    /// Point `i` reads its words through `H₁ ∘ H₂ ∘ ⋯ ∘ H_{i-1}`: the most
    /// recent half-twist acts first.
    #[default]
    LatestFirst,
    /// `H_{i-1} ∘ ⋯ ∘ H₁`.
    EarliestFirst,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Conventions {
    pub orientation: Orientation,
    pub order: CompositionOrder,
}

/// An automorphism of the free group, given by the images of `Γ₁..Γ_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidAuto {
    images: Vec<Word>,
}

impl BraidAuto {
    pub fn identity(ell: u8) -> Self {
        BraidAuto {
            images: (1..=ell).map(Word::generator).collect(),
        }
    }

    pub fn from_images(images: Vec<Word>) -> Result<Self> {
        let ell = images.len();
        if images.iter().any(|w| usize::from(w.max_generator()) > ell) {
            return Err(Error::Parameter("image uses a generator out of range".into()));
        }
        Ok(BraidAuto { images })
    }

    pub fn ell(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, g: u8) -> &Word {
        &self.images[usize::from(g - 1)]
    }

    /// The elementary twist exchanging `Γ_i` and `Γ_{i+1}`; `positive =
    /// false` gives its inverse.
    pub fn elementary(i: u8, positive: bool, ell: u8, orientation: Orientation) -> Result<Self> {
        if i < 1 || i >= ell {
            return Err(Error::Parameter(format!("elementary twist index {i} needs 1 <= i < {ell}")));
        }
        let (x, y) = (Letter::from(i), Letter::from(i) + 1);
        let mut auto = BraidAuto::identity(ell);
        let (img_x, img_y) = match (orientation, positive) {
            (Orientation::Standard, true) => (vec![y], vec![y, x, -y]),
            (Orientation::Standard, false) => (vec![-x, y, x], vec![x]),
            (Orientation::Mirrored, true) => (vec![x, y, -x], vec![x]),
            (Orientation::Mirrored, false) => (vec![y], vec![-y, x, y]),
        };
        auto.images[usize::from(i - 1)] = Word::from_letters(img_x);
        auto.images[usize::from(i)] = Word::from_letters(img_y);
        Ok(auto)
    }

    /// The half-twist reversing slots `a..=b`:
    /// `(s_a ⋯ s_{b-1})(s_a ⋯ s_{b-2}) ⋯ (s_a)`.
    pub fn halftwist(pair: LefschetzPair, ell: u8, orientation: Orientation) -> Result<Self> {
        Self::halftwist_signed(pair, ell, orientation, true)
    }

    pub fn halftwist_inverse(pair: LefschetzPair, ell: u8, orientation: Orientation) -> Result<Self> {
        Self::halftwist_signed(pair, ell, orientation, false)
    }

    fn halftwist_signed(pair: LefschetzPair, ell: u8, orientation: Orientation, positive: bool) -> Result<Self> {
        if pair.b() > ell {
            return Err(Error::PairOutOfRange {
                a: pair.a(),
                b: pair.b(),
                ell,
            });
        }
        let mut factors = Vec::new();
        for top in (pair.a()..pair.b()).rev() {
            for k in pair.a()..=top {
                factors.push(k);
            }
        }
        if !positive {
            factors.reverse();
        }
        let mut auto = BraidAuto::identity(ell);
        for k in factors {
            auto = auto.compose(&BraidAuto::elementary(k, positive, ell, orientation)?);
        }
        Ok(auto)
    }

    /// Substitutes the images into `w`.
    pub fn apply(&self, w: &Word) -> Word {
        Word::from_letters(w.letters().iter().flat_map(|&x| {
            let img = &self.images[(x.unsigned_abs() - 1) as usize];
            let letters: Vec<Letter> = if x > 0 {
                img.letters().to_vec()
            } else {
                img.inverse().letters().to_vec()
            };
            letters
        }))
    }

    /// `self ∘ inner`: `inner` acts first.
    pub fn compose(&self, inner: &BraidAuto) -> BraidAuto {
        BraidAuto {
            images: inner.images.iter().map(|w| self.apply(w)).collect(),
        }
    }

    /// The permutation `j ↦ g` where `Γ_j` is sent to a conjugate of `Γ_g`,
    /// if every image has that shape.
    pub fn induced_permutation(&self) -> Option<Permutation> {
        let images: Option<Vec<u8>> = self
            .images
            .iter()
            .map(|w| match w.conjugate_of() {
                Some(x) if x > 0 => Some(x as u8),
                _ => None,
            })
            .collect();
        Permutation::from_images(images?).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: u8, b: u8) -> LefschetzPair {
        LefschetzPair::new(a, b).unwrap()
    }

    #[test]
    fn elementary_inverse_pairs() {
        for orientation in [Orientation::Standard, Orientation::Mirrored] {
            for i in 1..4 {
                let pos = BraidAuto::elementary(i, true, 4, orientation).unwrap();
                let neg = BraidAuto::elementary(i, false, 4, orientation).unwrap();
                assert_eq!(pos.compose(&neg), BraidAuto::identity(4));
                assert_eq!(neg.compose(&pos), BraidAuto::identity(4));
                let perm = pos.induced_permutation().unwrap();
                assert_eq!(perm, pair(i, i + 1).permutation(4));
            }
        }
        assert!(BraidAuto::elementary(4, true, 4, Orientation::Standard).is_err());
    }

    #[test]
    fn boundary_word_is_fixed() {
        let boundary = Word::descending_product(5, 1);
        for i in 1..5 {
            let s = BraidAuto::elementary(i, true, 5, Orientation::Standard).unwrap();
            assert_eq!(s.apply(&boundary), boundary);
        }
        let ascending = Word::from_letters(1..=5);
        for i in 1..5 {
            let s = BraidAuto::elementary(i, true, 5, Orientation::Mirrored).unwrap();
            assert_eq!(s.apply(&ascending), ascending);
        }
    }

    #[test]
    fn halftwists() {
        let o = Orientation::Standard;
        assert_eq!(
            BraidAuto::halftwist(pair(2, 3), 4, o).unwrap(),
            BraidAuto::elementary(2, true, 4, o).unwrap()
        );
        for (a, b) in [(1, 3), (2, 5), (1, 5)] {
            let h = BraidAuto::halftwist(pair(a, b), 5, o).unwrap();
            assert_eq!(h.induced_permutation().unwrap(), pair(a, b).permutation(5));
            let inv = BraidAuto::halftwist_inverse(pair(a, b), 5, o).unwrap();
            assert_eq!(h.compose(&inv), BraidAuto::identity(5));
        }
    }

    #[test]
    fn garside_words_agree() {
        // s1 s2 s1 = s2 s1 s2 as automorphisms
        let o = Orientation::Standard;
        let s1 = BraidAuto::elementary(1, true, 3, o).unwrap();
        let s2 = BraidAuto::elementary(2, true, 3, o).unwrap();
        assert_eq!(s1.compose(&s2).compose(&s1), s2.compose(&s1).compose(&s2));
    }
}
