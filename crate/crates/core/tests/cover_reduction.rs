//! The binary-join reduction must rebuild the apex of every covering sieve
//! and fall short for every non-covering one, across the whole catalog.

use pointless_core::catalog;
use pointless_core::sheaves::{binary_cover_reduction, covering_sieves, Sieve};

#[test]
fn every_covering_sieve_reduces_to_its_apex() {
    for (name, site) in catalog::frames() {
        let p = site.carrier();
        let bottom = p.bottom().expect("frames have a bottom");
        for v in 0..p.len() {
            for sieve in covering_sieves(&site, v) {
                let steps = binary_cover_reduction(&site, &sieve);
                assert_eq!(steps.len(), sieve.members().len(), "{name}: one step per member");
                let mut acc = bottom;
                for &(before, member, after) in &steps {
                    assert_eq!(before, acc, "{name}: steps chain");
                    assert!(sieve.members().contains(&member));
                    assert_eq!(after, site.join(before, member), "{name}: steps are joins");
                    acc = after;
                }
                assert_eq!(acc, v, "{name}: the chain of binary joins must reach the apex");
            }
        }
    }
}

#[test]
fn non_covering_sieves_fall_short_of_the_apex() {
    for (name, site) in catalog::frames() {
        let p = site.carrier();
        let bottom = p.bottom().expect("frames have a bottom");
        for v in 0..p.len() {
            for w in 0..p.len() {
                if w == v || !p.leq(w, v) {
                    continue;
                }
                // The principal downset of a strictly smaller element is a
                // sieve on v that joins to w, not v.
                let sieve = Sieve::new(&site, v, p.lower_set(w)).expect("principal downsets");
                assert!(!sieve.covers(&site));
                let final_join = binary_cover_reduction(&site, &sieve)
                    .last()
                    .map(|&(_, _, after)| after)
                    .unwrap_or(bottom);
                assert_eq!(final_join, w, "{name}: principal reductions stop at their generator");
                assert_ne!(final_join, v, "{name}: non-covering sieves must not reach the apex");
            }
        }
    }
}
