//! Presentations of the affine and projective fundamental groups.
//!
//! Each point's relation is read off from the images of its initial
//! generators under the half-twists of the points before it. The half-twists
//! act on the free group `F(Γ₁, …, Γ_ℓ)` by automorphisms, so no skeleton is
//! ever drawn.

pub mod abelian;
pub mod braid;
pub mod groups;
pub mod hom;
pub mod simplify;
pub mod word;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use abelian::{abelianization, Abelianization};
pub use braid::{BraidAuto, CompositionOrder, Conventions, Orientation};
pub use groups::{default_targets, target_by_name, FiniteGroup};
pub use hom::{fingerprint, hom_count, GroupFingerprint, DEFAULT_HOM_NODE_CAP};
pub use simplify::RelationShape;
pub use word::{Letter, Word};

use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// Affine or projective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Affine,
    Projective,
}

impl std::str::FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "affine" => Ok(Space::Affine),
            "projective" => Ok(Space::Projective),
            _ => Err(Error::Parameter(format!("unknown space `{s}`"))),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Affine => "affine",
            Space::Projective => "projective",
        })
    }
}

/// Where a relator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelatorSource {
    /// Point index (0-based).
    Point(usize),
    /// `Γ_ℓ ⋯ Γ₁`.
    Boundary,
    /// Supplied directly.
    Given,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    ngens: u8,
    relators: Vec<Word>,
    sources: Vec<RelatorSource>,
}

impl Presentation {
    /// Relators are stored in normal form; empty ones are dropped.
    pub fn new(ngens: u8, relators: Vec<Word>) -> Self {
        let mut p = Presentation {
            ngens,
            relators: Vec::new(),
            sources: Vec::new(),
        };
        for r in relators {
            p.push(r, RelatorSource::Given);
        }
        p
    }

    fn push(&mut self, r: Word, source: RelatorSource) {
        let r = r.relator_normal_form();
        if !r.is_empty() {
            self.relators.push(r);
            self.sources.push(source);
        }
    }

    pub fn ngens(&self) -> u8 {
        self.ngens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn sources(&self) -> &[RelatorSource] {
        &self.sources
    }

    /// `gens <ℓ>` followed by one relator per line.
    pub fn export(&self) -> String {
        let mut out = format!("gens {}\n", self.ngens);
        for r in &self.relators {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Presentation::export`].
    pub fn parse_export(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::syntax(0, "missing `gens` line"))?;
        let ngens = header
            .trim()
            .strip_prefix("gens ")
            .and_then(|n| n.trim().parse::<u8>().ok())
            .ok_or_else(|| Error::syntax(0, "expected `gens <n>`"))?;
        let mut relators = Vec::new();
        for line in lines {
            let letters = line
                .split_whitespace()
                .map(|tok| {
                    let x: Letter = tok.parse().map_err(|_| Error::syntax(0, format!("bad letter `{tok}`")))?;
                    if x == 0 || x.unsigned_abs() > u32::from(ngens) {
                        return Err(Error::syntax(0, format!("letter {x} out of range")));
                    }
                    Ok(x)
                })
                .collect::<Result<Vec<_>>>()?;
            relators.push(Word::from_letters(letters));
        }
        Ok(Presentation::new(ngens, relators))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.export())
    }
}

/// The composite braid each point reads its generators through, one per
/// point.
pub fn skeleton_autos(d: &Diagram, conv: Conventions) -> Result<Vec<BraidAuto>> {
    let ell = d.ell();
    let mut current = BraidAuto::identity(ell);
    let mut out = Vec::with_capacity(d.len());
    for &pair in d.pairs() {
        out.push(current.clone());
        let h = BraidAuto::halftwist(pair, ell, conv.orientation)?;
        current = match conv.order {
            CompositionOrder::LatestFirst => current.compose(&h),
            CompositionOrder::EarliestFirst => h.compose(&current),
        };
    }
    Ok(out)
}

/// Words `w₁, …, w_m` for the point at `index` (0-based): the images of
/// `Γ_a, …, Γ_b`.
pub fn point_relation_words(d: &Diagram, index: usize, conv: Conventions) -> Result<Vec<Word>> {
    d.validate()?;
    if index >= d.len() {
        return Err(Error::Parameter(format!("point {index} out of range 0..{}", d.len())));
    }
    let prefix = Diagram::from_parts_unchecked(d.ell(), d.pairs()[..index].to_vec());
    let autos = skeleton_autos(&prefix, conv)?;
    let t = match autos.last() {
        None => BraidAuto::identity(d.ell()),
        Some(last) => {
            let h = BraidAuto::halftwist(d.pairs()[index - 1], d.ell(), conv.orientation)?;
            match conv.order {
                CompositionOrder::LatestFirst => last.compose(&h),
                CompositionOrder::EarliestFirst => h.compose(last),
            }
        }
    };
    Ok(words_for(&t, d.pairs()[index].a(), d.pairs()[index].b()))
}

fn words_for(t: &BraidAuto, a: u8, b: u8) -> Vec<Word> {
    (a..=b).map(|g| t.image(g).clone()).collect()
}

/// Words of every point.
pub fn all_point_words(d: &Diagram, conv: Conventions) -> Result<Vec<Vec<Word>>> {
    d.validate()?;
    Ok(skeleton_autos(d, conv)?
        .iter()
        .zip(d.pairs())
        .map(|(t, p)| words_for(t, p.a(), p.b()))
        .collect())
}

/// `w_m ⋯ w₁ = w_{m-1} ⋯ w₁ w_m = ⋯ = w₁ w_m ⋯ w₂`, as `m - 1` relators
/// equating consecutive cyclic shifts.
pub fn relations_of_point(words: &[Word]) -> Vec<Word> {
    let m = words.len();
    let shift = |k: usize| {
        // w_{m-k} ⋯ w₁ w_m ⋯ w_{m-k+1}
        let mut out = Word::identity();
        for j in (0..m - k).rev() {
            out = out.mul(&words[j]);
        }
        for j in (m - k..m).rev() {
            out = out.mul(&words[j]);
        }
        out
    };
    (1..m)
        .map(|k| shift(k - 1).mul(&shift(k).inverse()).relator_normal_form())
        .collect()
}

pub fn affine_presentation(d: &Diagram, conv: Conventions) -> Result<Presentation> {
    let mut p = Presentation {
        ngens: d.ell(),
        relators: Vec::new(),
        sources: Vec::new(),
    };
    for (i, words) in all_point_words(d, conv)?.iter().enumerate() {
        for r in relations_of_point(words) {
            p.push(r, RelatorSource::Point(i));
        }
    }
    Ok(p)
}

pub fn projective_presentation(d: &Diagram, conv: Conventions) -> Result<Presentation> {
    let mut p = affine_presentation(d, conv)?;
    p.push(boundary_word(d.ell()), RelatorSource::Boundary);
    Ok(p)
}

pub fn presentation(d: &Diagram, space: Space, conv: Conventions) -> Result<Presentation> {
    match space {
        Space::Affine => affine_presentation(d, conv),
        Space::Projective => projective_presentation(d, conv),
    }
}

/// `Γ_ℓ ⋯ Γ₁`
pub fn boundary_word(ell: u8) -> Word {
    Word::descending_product(ell, 1)
}

/// The map `φ` from the group of `d` to that of `σ(d)`. With first pair
/// `⟨a, a+s⟩` it fixes generators outside the window and sends
/// `Γ_{a+j} ↦ (Γ′_a⁻¹ ⋯ Γ′_{a+s-j-1}⁻¹) Γ′_{a+s-j} (Γ′_{a+s-j-1} ⋯ Γ′_a)`.
pub fn sigma_isomorphism_map(d: &Diagram) -> Result<BraidAuto> {
    let first = *d.pairs().first().ok_or(Error::EmptyDiagram)?;
    let (a, s) = (first.a(), first.b() - first.a());
    let mut images: Vec<Word> = (1..=d.ell()).map(Word::generator).collect();
    for j in 0..=s {
        let conj = Word::descending_product(a + s - j - 1, a);
        images[usize::from(a + j - 1)] = Word::generator(a + s - j).conjugated_by(&conj.inverse());
    }
    BraidAuto::from_images(images)
}

/// Abelianization and hom counts of one presentation of `d`.
pub fn diagram_fingerprint(
    d: &Diagram,
    space: Space,
    conv: Conventions,
    targets: &[FiniteGroup],
    node_cap: u64,
) -> Result<GroupFingerprint> {
    fingerprint(&presentation(d, space, conv)?, targets, node_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::sigma;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    fn conv() -> Conventions {
        Conventions::default()
    }

    #[test]
    fn first_point_reads_plain_generators() {
        let diagram = d("l=5: (4,5)(2,4)(1,2)(4,5)(2,3)(3,4)(4,5)(2,3)");
        let words = point_relation_words(&diagram, 0, conv()).unwrap();
        assert_eq!(words, vec![Word::generator(4), Word::generator(5)]);
        let all = all_point_words(&diagram, conv()).unwrap();
        for i in 0..diagram.len() {
            assert_eq!(point_relation_words(&diagram, i, conv()).unwrap(), all[i]);
        }
    }

    #[test]
    fn point_relations() {
        let g = |k| Word::generator(k);
        let two = relations_of_point(&[g(1), g(2)]);
        assert_eq!(two, vec![Word::from_letters([2, 1, -2, -1]).relator_normal_form()]);
        let three = relations_of_point(&[g(1), g(2), g(3)]);
        assert_eq!(three.len(), 2);
        // Γ3Γ2Γ1 = Γ2Γ1Γ3 and Γ2Γ1Γ3 = Γ1Γ3Γ2
        assert_eq!(
            three[0],
            Word::from_letters([3, 2, 1, -3, -1, -2]).relator_normal_form()
        );
        assert_eq!(
            three[1],
            Word::from_letters([2, 1, 3, -2, -3, -1]).relator_normal_form()
        );
        for r in &three {
            for k in 1..=3 {
                assert_eq!(r.exponent_sum(k), 0);
            }
        }
    }

    #[test]
    fn nodal_three_lines_commute() {
        let words = all_point_words(&d("l=3: (2,3)(1,2)(2,3)"), conv()).unwrap();
        let shape = RelationShape::from_tuples(&words);
        assert_eq!(shape.commuting_pairs(), &[(1, 2), (1, 3), (2, 3)].into_iter().collect());
        assert!(shape.is_fully_resolved());
    }

    #[test]
    fn abelianizations() {
        for s in [
            "l=3: (1,2)(2,3)(1,2)",
            "l=3: (1,3)",
            "l=5: (4,5)(2,4)(1,2)(4,5)(2,3)(3,4)(4,5)(2,3)",
            "l=7: (3,5)(1,3)(5,6)(3,5)(5,7)(2,3)(3,5)(1,3)(5,6)",
        ] {
            let diagram = d(s);
            let ell = usize::from(diagram.ell());
            let aff = abelianization(&affine_presentation(&diagram, conv()).unwrap());
            assert_eq!(aff, Abelianization { rank: ell, torsion: vec![] });
            let proj = abelianization(&projective_presentation(&diagram, conv()).unwrap());
            assert_eq!(proj, Abelianization { rank: ell - 1, torsion: vec![] });
        }
        let free = Presentation::new(4, Vec::new());
        assert_eq!(abelianization(&free), Abelianization { rank: 4, torsion: vec![] });
    }

    #[test]
    fn full_composite_is_the_garside_twist() {
        for s in [
            "l=5: (4,5)(2,4)(1,2)(4,5)(2,3)(3,4)(4,5)(2,3)",
            "l=7: (3,5)(1,3)(5,6)(3,5)(5,7)(2,3)(3,5)(1,3)(5,6)",
        ] {
            let diagram = d(s);
            let ell = diagram.ell();
            let mut total = BraidAuto::identity(ell);
            for &p in diagram.pairs() {
                total = total.compose(&BraidAuto::halftwist(p, ell, Orientation::Standard).unwrap());
            }
            let full = crate::diagram::LefschetzPair::new(1, ell).unwrap();
            assert_eq!(total, BraidAuto::halftwist(full, ell, Orientation::Standard).unwrap());
            assert!(total.induced_permutation().unwrap().is_reversal());
            assert_eq!(total.apply(&boundary_word(ell)), boundary_word(ell));
        }
    }

    #[test]
    fn phi_shape() {
        let diagram = d("l=5: (2,4)(1,2)(4,5)(2,3)(1,2)(3,4)(2,3)(4,5)");
        let phi = sigma_isomorphism_map(&diagram).unwrap();
        assert_eq!(phi.image(4), &Word::generator(2));
        assert_eq!(phi.image(3), &Word::from_letters([-2, 3, 2]));
        assert_eq!(phi.image(2), &Word::from_letters([-2, -3, 4, 3, 2]));
        assert_eq!(phi.image(1), &Word::generator(1));
        assert_eq!(phi.apply(&boundary_word(5)), boundary_word(5));
        let h = BraidAuto::halftwist(diagram.pairs()[0], 5, Orientation::Standard).unwrap();
        assert_eq!(phi.compose(&h), BraidAuto::identity(5));
    }

    #[test]
    fn phi_of_a_double_point_start() {
        let diagram = d("l=3: (1,2)(2,3)(1,2)");
        let phi = sigma_isomorphism_map(&diagram).unwrap();
        assert_eq!(phi.image(2), &Word::generator(1));
        assert_eq!(phi.image(1), &Word::from_letters([-1, 2, 1]));
        assert!(sigma(&diagram).unwrap().is_valid());
    }

    #[test]
    fn export_round_trip() {
        let p = projective_presentation(&d("l=3: (1,3)"), conv()).unwrap();
        let text = p.export();
        assert!(text.starts_with("gens 3\n"));
        assert_eq!(Presentation::parse_export(&text).unwrap().relators(), p.relators());
        assert!(Presentation::parse_export("gens 2\n1 3\n").is_err());
        assert!(Presentation::parse_export("").is_err());
    }
}
