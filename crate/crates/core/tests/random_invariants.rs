//! Randomized invariants: on arbitrary presheaves over the catalog frames,
//! the exhaustive and reduced sheaf criteria agree, sheafification produces
//! a sheaf whose unit is an isomorphism exactly on sheaves, and a second
//! sheafification changes nothing.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pointless_core::catalog;
use pointless_core::sheaves::{is_sheaf_fast, is_sheaf_oracle, sheafify};
use pointless_core::suite::random_presheaf;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn criteria_agree_and_sheafification_stabilizes(
        seed in any::<u64>(),
        site_index in 0usize..8,
    ) {
        let frames = catalog::frames();
        let (_, site) = &frames[site_index];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_presheaf(site, &mut rng);

        let exhaustive = is_sheaf_oracle(&f).is_sheaf();
        let reduced = is_sheaf_fast(&f).is_ok();
        prop_assert_eq!(exhaustive, reduced, "the two criteria must agree");

        let r = sheafify(&f).expect("sheafification succeeds on valid presheaves");
        prop_assert!(is_sheaf_oracle(&r.sheaf).is_sheaf());
        prop_assert_eq!(
            r.unit.is_iso(),
            exhaustive,
            "the unit is an isomorphism exactly when the input was already a sheaf"
        );

        let again = sheafify(&r.sheaf).expect("sheafification succeeds on sheaves");
        prop_assert!(again.unit.is_iso(), "sheafifying a sheaf must change nothing");
    }
}
