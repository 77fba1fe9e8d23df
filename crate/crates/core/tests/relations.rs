mod common;

use common::{complete, pattern_relations};
use wirediag::actions::DeltaPattern;
use wirediag::pi1::{all_point_words, BraidAuto, Conventions, Orientation, RelationShape};
use wirediag::LefschetzPair;

/// Every `(c, i, t)` with `t = 2..=4` on `ell = t+1..=6` lines.
fn grid() -> Vec<(u8, DeltaPattern)> {
    let mut out = Vec::new();
    for ell in 3..=6u8 {
        for t in 2..=4u8.min(ell - 1) {
            for c in 1..=ell - t {
                for i in 0..=t {
                    out.push((ell, DeltaPattern::new(c, i, t, ell).unwrap()));
                }
            }
        }
    }
    out
}

#[test]
fn pattern_prefixes_give_the_stated_relations() {
    let conv = Conventions::default();
    let mut checked = 0;
    for (ell, pat) in grid() {
        let want = RelationShape::from_tuples(&pattern_relations(pat.c, pat.i, pat.t));
        assert!(want.is_fully_resolved());
        for prefix in [pat.above(), pat.below()] {
            let d = complete(ell, &prefix);
            let words = all_point_words(&d, conv).unwrap();
            let got = RelationShape::from_tuples(&words[..prefix.len()]);
            assert_eq!(got, want, "{d}, pattern {pat:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 2 * grid().len());
}

fn composite(pairs: &[LefschetzPair], ell: u8, orientation: Orientation) -> BraidAuto {
    pairs.iter().fold(BraidAuto::identity(ell), |acc, &p| {
        acc.compose(&BraidAuto::halftwist(p, ell, orientation).unwrap())
    })
}

#[test]
fn both_sides_compose_to_the_window_halftwist() {
    for orientation in [Orientation::Standard, Orientation::Mirrored] {
        for (ell, pat) in grid() {
            let window = LefschetzPair::new(pat.c, pat.c + pat.t).unwrap();
            let h = BraidAuto::halftwist(window, ell, orientation).unwrap();
            assert_eq!(composite(&pat.above(), ell, orientation), h, "above {pat:?} on {ell}");
            assert_eq!(composite(&pat.below(), ell, orientation), h, "below {pat:?} on {ell}");
        }
    }
}
