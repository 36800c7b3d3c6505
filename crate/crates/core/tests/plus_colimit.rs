//! Cross-checks the plus construction against the colimit it stands for.
//!
//! By definition, the improved sections at an element are equivalence
//! classes of pairs (covering sieve, matching family), where two pairs are
//! identified when their families agree on a common covering refinement.
//! The implementation instead reads families off the least covering sieve
//! only. This suite recomputes the classes the long way — every pair, with
//! the refinement relation checked literally against every candidate sieve
//! — and demands the two section counts agree, that the refinement
//! equivalence is exactly "equal traces on the least sieve", and that the
//! unit lands on the class of a section's own restricted family.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pointless_core::catalog;
use pointless_core::sheaves::{
    covering_sieves, matching_families, minimal_covering_sieve, plus, restricted_family, Sieve,
};
use pointless_core::suite::random_presheaf;
use pointless_core::Presheaf;

/// A matching family paired with the sieve it lives on.
#[derive(Clone)]
struct Pair {
    sieve: Sieve,
    assignment: Vec<usize>,
}

/// The family's values on a subset of its sieve's members (the subset must
/// be contained in the sieve).
fn values_on(pair: &Pair, members: &[usize]) -> Vec<usize> {
    members
        .iter()
        .map(|m| {
            let at = pair
                .sieve
                .members()
                .iter()
                .position(|x| x == m)
                .expect("the subset must lie inside the sieve");
            pair.assignment[at]
        })
        .collect()
}

/// Whether the two pairs agree on some covering sieve contained in both —
/// the literal colimit identification, checked against every candidate.
fn refinement_equivalent(site: &pointless_core::DistLattice, a: &Pair, b: &Pair, v: usize) -> bool {
    covering_sieves(site, v).iter().any(|w| {
        let inside = |s: &Sieve| w.members().iter().all(|m| s.members().contains(m));
        inside(&a.sieve)
            && inside(&b.sieve)
            && values_on(a, w.members()) == values_on(b, w.members())
    })
}

fn check_element(f: &Presheaf, improved: &Presheaf, unit_component: &[usize], v: usize) {
    let site = f.site();
    let least = minimal_covering_sieve(site, v).expect("finite frames have least covers");

    let mut pairs = Vec::new();
    for sieve in covering_sieves(site, v) {
        for fam in matching_families(f, &sieve) {
            pairs.push(Pair { sieve: fam.sieve, assignment: fam.assignment });
        }
    }

    // The classes, via the refinement relation only.
    let mut class_of = vec![usize::MAX; pairs.len()];
    let mut classes: Vec<usize> = Vec::new();
    for i in 0..pairs.len() {
        let found = classes
            .iter()
            .find(|&&rep| refinement_equivalent(site, &pairs[i], &pairs[rep], v));
        match found {
            Some(&rep) => class_of[i] = class_of[rep],
            None => {
                class_of[i] = classes.len();
                classes.push(i);
            }
        }
    }

    // The refinement relation must coincide with equality of traces on the
    // least sieve, pair by pair.
    for i in 0..pairs.len() {
        for j in (i + 1)..pairs.len() {
            let same_class = class_of[i] == class_of[j];
            let same_trace =
                values_on(&pairs[i], least.members()) == values_on(&pairs[j], least.members());
            assert_eq!(
                same_class,
                same_trace,
                "refinement equivalence must be agreement on the least covering sieve"
            );
        }
    }

    assert_eq!(
        classes.len(),
        improved.section_count(v),
        "the plus construction must have one section per colimit class at {}",
        site.carrier().name(v)
    );

    // The unit must send a section to the class of its own restriction:
    // compare through the member-by-member section names.
    for s in 0..f.section_count(v) {
        let fam = restricted_family(f, &least, s);
        let parts: Vec<&str> = fam
            .iter()
            .enumerate()
            .map(|(i, &sec)| f.section_names(least.members()[i])[sec].as_str())
            .collect();
        let expected = format!("[{}]", parts.join(","));
        let image = unit_component[s];
        assert_eq!(
            improved.section_names(v)[image],
            expected,
            "the unit must land on the class of the restricted family"
        );
    }
}

fn check_presheaf(f: &Presheaf) {
    let (improved, unit) = plus(f).expect("plus succeeds on valid presheaves");
    for v in 0..f.site().carrier().len() {
        check_element(f, &improved, unit.component(v), v);
    }
}

#[test]
fn plus_matches_the_pairwise_colimit_on_named_presheaves() {
    for (_, site) in catalog::frames() {
        check_presheaf(&Presheaf::constant(site.clone(), &["k0", "k1"]));
        for w in 0..site.carrier().len() {
            check_presheaf(&Presheaf::representable(site.clone(), w));
        }
    }
}

#[test]
fn plus_matches_the_pairwise_colimit_on_random_presheaves() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9E_5EED);
    for (_, site) in catalog::frames() {
        for _ in 0..5 {
            check_presheaf(&random_presheaf(&site, &mut rng));
        }
    }
}

#[test]
fn the_quotient_is_proper_somewhere() {
    // On the constant pair over the diamond, the top element has more
    // (sieve, family) pairs than classes — the cross-check above would be
    // vacuous if the relation never identified anything.
    let site = catalog::square();
    let f = Presheaf::constant(site.clone(), &["k0", "k1"]);
    let top = site.top();
    let mut pair_count = 0;
    for sieve in covering_sieves(&site, top) {
        pair_count += matching_families(&f, &sieve).len();
    }
    let (improved, _) = plus(&f).expect("plus succeeds");
    assert!(
        pair_count > improved.section_count(top),
        "{pair_count} pairs should collapse to {} classes",
        improved.section_count(top)
    );
}
