//! Representation invariants across every distributive lattice up to six
//! elements: the downset lattice of the join-irreducibles has the same
//! size, both comparison maps are isomorphisms, and points are in bijection
//! with join-irreducibles.

use pointless_core::enumerate::dist_lattices_up_to;
use pointless_core::lattice::{birkhoff, is_lattice_iso, points};

#[test]
fn downset_representation_preserves_size_and_inverts() {
    let all = dist_lattices_up_to(6);
    assert!(all.len() >= 10, "the census should be non-trivial, got {}", all.len());
    for l in &all {
        let r = birkhoff(l).expect("every finite distributive lattice is representable");
        assert_eq!(
            r.down.carrier().len(),
            l.carrier().len(),
            "the downset lattice of the irreducibles must have the same size"
        );
        assert_eq!(r.irreducible_indices.len(), r.irreducibles.len());
        assert!(is_lattice_iso(&r.to_down), "the comparison into downsets must be an iso");
        assert!(is_lattice_iso(&r.from_down), "the join map back must be an iso");
        // The two maps must actually invert each other.
        let n = l.carrier().len();
        for x in 0..n {
            assert_eq!(r.from_down.apply(r.to_down.apply(x)), x);
        }
    }
}

#[test]
fn points_biject_with_join_irreducibles() {
    for l in &dist_lattices_up_to(6) {
        let r = birkhoff(l).expect("representable");
        assert_eq!(
            points(l).len(),
            r.irreducible_indices.len(),
            "each point corresponds to one join-irreducible and vice versa"
        );
    }
}
