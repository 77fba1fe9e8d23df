mod common;

use common::{all_raw_diagrams, arb_diagram, proptest_config, raw_by_signature, to_diagram};
use proptest::prelude::*;
use wirediag::actions::{mu, mu_power, sigma, sigma_inverse, sigma_power, tau, tau_class};
use wirediag::classify::enumerate_classes;
use wirediag::trace::canonical_form;
use wirediag::{CanonicalDiagram, Diagram};

fn raw_laws(d: &Diagram) {
    assert_eq!(tau(&tau(d)), *d);
    if d.is_empty() {
        return;
    }
    let p = d.len();
    let mut cur = d.clone();
    for k in 1..=2 * p {
        cur = sigma(&cur).unwrap();
        assert!(cur.is_valid(), "σ^{k} of {d}");
        assert_eq!(cur, sigma_power(d, k as i64).unwrap());
    }
    assert_eq!(cur, *d, "σ^2p of {d}");
    assert_eq!(tau(&sigma(&tau(d)).unwrap()), sigma_inverse(d).unwrap(), "τστ of {d}");
}

fn class_laws(c: &CanonicalDiagram) {
    let ell = u32::from(c.ell());
    assert_eq!(mu_power(c, 2 * ell), *c, "μ^2l of {c}");
    assert_eq!(tau_class(&mu(&tau_class(c))), mu_power(c, 2 * ell - 1), "τμτ of {c}");
    if !c.is_empty() {
        // σ^p descends to classes
        let sp = canonical_form(&sigma_power(c, c.len() as i64).unwrap());
        assert_eq!(tau_class(c), mu_power(&sp, ell), "σ^p μ^l of {c}");
        assert_eq!(tau_class(c), canonical_form(&sigma_power(&mu_power(c, ell), c.len() as i64).unwrap()));
    }
}

#[test]
fn raw_laws_on_every_small_diagram() {
    for ell in 1..=5 {
        for r in all_raw_diagrams(ell) {
            raw_laws(&to_diagram(ell, &r));
        }
    }
}

#[test]
fn class_laws_on_every_small_class() {
    for ell in 1..=5 {
        for sig in raw_by_signature(ell).into_keys() {
            for c in enumerate_classes(&sig, ell).unwrap().iter() {
                class_laws(&c);
            }
        }
    }
}

#[test]
fn sigma_p_is_well_defined_on_classes() {
    for ell in 3..=5 {
        let mut by_class = std::collections::BTreeMap::new();
        for r in all_raw_diagrams(ell) {
            let d = to_diagram(ell, &r);
            let image = canonical_form(&sigma_power(&d, d.len() as i64).unwrap());
            let prev = by_class.insert(canonical_form(&d), image.clone());
            if let Some(prev) = prev {
                assert_eq!(prev, image);
            }
        }
    }
}

proptest! {
    #![proptest_config(proptest_config(1000))]

    #[test]
    fn laws_on_sampled_diagrams(d in arb_diagram(6..=8)) {
        raw_laws(&d);
        class_laws(&canonical_form(&d));
    }
}
