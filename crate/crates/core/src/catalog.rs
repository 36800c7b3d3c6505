//! Named small structures used across tests, benchmarks, and the CLI.
//!
//! Everything here is tiny enough to draw by hand, which is the point: each
//! fixture is a structure whose classification, points, coidempotents, or
//! sheaf theory can be worked out independently and then demanded of the
//! code. Element orderings are fixed so reports stay byte-stable.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catloc::QLocale;
use crate::lattice::{DistLattice, Semilattice};
use crate::poset::FinPoset;
use crate::quantale::MonoidalPoset;

/// The one-element frame (top = bottom).
pub fn one() -> DistLattice {
    DistLattice::new(FinPoset::new(vec!["only"], &[] as &[(&str, &str)]).unwrap()).unwrap()
}

/// The two-element frame `bot < top`.
pub fn two() -> DistLattice {
    DistLattice::new(FinPoset::new(vec!["bot", "top"], &[("bot", "top")]).unwrap()).unwrap()
}

/// The three-element chain `bot < u < top`.
pub fn sierp() -> DistLattice {
    DistLattice::new(
        FinPoset::new(vec!["bot", "u", "top"], &[("bot", "u"), ("u", "top")]).unwrap(),
    )
    .unwrap()
}

/// The four-element diamond: two incomparable points `a`, `b` between
/// bottom and top.
pub fn square() -> DistLattice {
    DistLattice::new(
        FinPoset::new(
            vec!["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap(),
    )
    .unwrap()
}

/// The chain with `n` elements, named `c0 < c1 < ...`.
pub fn chain(n: usize) -> DistLattice {
    assert!(n >= 1, "a lattice needs at least a top");
    let elements: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let pairs: Vec<(String, String)> =
        (1..n).map(|i| (format!("c{}", i - 1), format!("c{i}"))).collect();
    DistLattice::new(FinPoset::new(elements, &pairs).unwrap()).unwrap()
}

/// The five-element modular, non-distributive lattice: three incomparable
/// atoms under a common top.
pub fn m3() -> FinPoset {
    FinPoset::new(
        vec!["bot", "x", "y", "z", "top"],
        &[
            ("bot", "x"),
            ("bot", "y"),
            ("bot", "z"),
            ("x", "top"),
            ("y", "top"),
            ("z", "top"),
        ],
    )
    .unwrap()
}

/// The five-element non-modular lattice: a two-step side `p < r` against a
/// single incomparable `q`.
pub fn n5() -> FinPoset {
    FinPoset::new(
        vec!["bot", "p", "q", "r", "top"],
        &[("bot", "p"), ("p", "r"), ("r", "top"), ("bot", "q"), ("q", "top")],
    )
    .unwrap()
}

/// The diamond with an extra step below: `bot < s < {a, b} < top`.
pub fn square_stem_bottom() -> DistLattice {
    DistLattice::new(
        FinPoset::new(
            vec!["bot", "s", "a", "b", "top"],
            &[("bot", "s"), ("s", "a"), ("s", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap(),
    )
    .unwrap()
}

/// The diamond with an extra step above: `bot < {a, b} < m < top`.
pub fn square_stem_top() -> DistLattice {
    DistLattice::new(
        FinPoset::new(
            vec!["bot", "a", "b", "m", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "m"), ("b", "m"), ("m", "top")],
        )
        .unwrap(),
    )
    .unwrap()
}

/// The named frame fixtures, smallest first.
pub fn frames() -> Vec<(String, DistLattice)> {
    vec![
        ("one".to_string(), one()),
        ("two".to_string(), two()),
        ("sierp".to_string(), sierp()),
        ("square".to_string(), square()),
        ("chain4".to_string(), chain(4)),
        ("stem-bottom".to_string(), square_stem_bottom()),
        ("stem-top".to_string(), square_stem_top()),
        ("chain5".to_string(), chain(5)),
    ]
}

/// Every meet-semilattice with at most four elements, up to isomorphism:
/// the chains and the diamond. (A meet-semilattice needs a top and all
/// binary meets, which on four or fewer elements forces one of these.)
pub fn semilattices() -> Vec<(String, Semilattice)> {
    vec![
        ("one".to_string(), one().as_semilattice()),
        ("two".to_string(), two().as_semilattice()),
        ("sierp".to_string(), sierp().as_semilattice()),
        ("square".to_string(), square().as_semilattice()),
        ("chain4".to_string(), chain(4).as_semilattice()),
    ]
}

fn chain_poset(names: &[&str]) -> FinPoset {
    let pairs: Vec<(&str, &str)> =
        names.windows(2).map(|w| (w[0], w[1])).collect();
    FinPoset::new(names.to_vec(), &pairs).unwrap()
}

/// The three-element truncated-addition structure `0 < a < 1`, unit `1`,
/// with `a (x) a = 0`. Its coidempotents are the two end points only.
pub fn luk3() -> MonoidalPoset {
    let carrier = chain_poset(&["0", "a", "1"]);
    let tensor = vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 2]];
    MonoidalPoset::new(carrier, tensor, 2).unwrap()
}

/// The four-element analogue `0 < a < b < 1`, unit `1`, tensor truncated
/// addition.
pub fn luk4() -> MonoidalPoset {
    let carrier = chain_poset(&["0", "a", "b", "1"]);
    let t = |x: usize, y: usize| (x + y).saturating_sub(3);
    let tensor = (0..4).map(|x| (0..4).map(|y| t(x, y)).collect()).collect();
    MonoidalPoset::new(carrier, tensor, 3).unwrap()
}

/// A chain `0 < 1 < t` whose unit `1` is *not* the top: `t` is idempotent
/// above the unit, so the idempotent and coidempotent subposets differ as
/// marked posets.
pub fn ntu3() -> MonoidalPoset {
    let carrier = chain_poset(&["0", "1", "t"]);
    let tensor = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]];
    MonoidalPoset::new(carrier, tensor, 1).unwrap()
}

/// A chain `0 < a < 1 < t` with unit `1` below the idempotent top `t`;
/// tensor is minimum except for the single entry the unit law forces,
/// `1 (x) t = t`. Both `1` and `t` are idempotent, but only `1` is a
/// coidempotent.
pub fn ntu4() -> MonoidalPoset {
    let carrier = chain_poset(&["0", "a", "1", "t"]);
    let mut tensor: Vec<Vec<usize>> =
        (0..4).map(|x| (0..4).map(|y| x.min(y)).collect()).collect();
    tensor[2][3] = 3;
    tensor[3][2] = 3;
    MonoidalPoset::new(carrier, tensor, 2).unwrap()
}

/// Every valid tensor table on the carrier with the given unit, found by
/// filling the entries not forced by the unit law and validating each
/// candidate. Order is lexicographic in the free entries, so the result is
/// stable.
pub fn enumerate_tensor_tables(carrier: &FinPoset, unit: usize) -> Vec<MonoidalPoset> {
    let n = carrier.len();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != unit && j != unit)
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut table = vec![vec![0usize; n]; n];
        for x in 0..n {
            table[unit][x] = x;
            table[x][unit] = x;
        }
        for (k, &(i, j)) in free.iter().enumerate() {
            table[i][j] = choice[k];
            table[j][i] = choice[k];
        }
        if let Ok(q) = MonoidalPoset::new(carrier.clone(), table, unit) {
            out.push(q);
        }
        // Advance the odometer.
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < n {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Every valid tensor table on the `n`-element chain with unit at the top,
/// in the same lexicographic order as [`enumerate_tensor_tables`] but pruned
/// enough to reach the five-chain: entries in the bottom row are forced to
/// the bottom (`x (x) 0 <= 1 (x) 0 = 0`), each entry is bounded above by the
/// smaller coordinate (`x (x) y <= x (x) 1 = x`), and partial tables that
/// already break monotonicity are abandoned early. Every completed candidate
/// is still validated from scratch.
pub fn chain_tnorms(n: usize) -> Vec<MonoidalPoset> {
    assert!(n >= 1, "a chain needs at least the unit");
    let carrier = chain(n).carrier().clone();
    let unit = n - 1;
    // Sub-unit entries of the upper triangle, row-major; entries with a zero
    // coordinate are forced and stay at the initialized bottom.
    let free: Vec<(usize, usize)> =
        (1..unit).flat_map(|i| (i..unit).map(move |j| (i, j))).collect();
    let mut table = vec![vec![0usize; n]; n];
    for x in 0..n {
        table[unit][x] = x;
        table[x][unit] = x;
    }
    let mut out = Vec::new();
    fill_chain_entries(&mut table, &free, 0, &carrier, unit, &mut out);
    out
}

fn fill_chain_entries(
    table: &mut Vec<Vec<usize>>,
    free: &[(usize, usize)],
    k: usize,
    carrier: &FinPoset,
    unit: usize,
    out: &mut Vec<MonoidalPoset>,
) {
    if k == free.len() {
        if let Ok(q) = MonoidalPoset::new(carrier.clone(), table.clone(), unit) {
            out.push(q);
        }
        return;
    }
    let (i, j) = free[k];
    // Monotone against the neighbors already placed, bounded by the meet.
    let lo = table[i][j - 1].max(table[i - 1][j]);
    for v in lo..=i {
        table[i][j] = v;
        table[j][i] = v;
        fill_chain_entries(table, free, k + 1, carrier, unit, out);
    }
    table[i][j] = 0;
    table[j][i] = 0;
}

/// Draws `count` structures from the exhaustive table enumeration on the
/// five-element chain with unit at the top, deterministically from the seed.
/// On a chain with the unit on top every valid table distributes over joins,
/// so the whole pool is fully flagged.
pub fn sampled_quantales(seed: u64, count: usize) -> Vec<(String, MonoidalPoset)> {
    let pool = chain_tnorms(5);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks: Vec<&MonoidalPoset> =
        pool.choose_multiple(&mut rng, count.min(pool.len())).collect();
    // choose_multiple visits in random order; sort by table for stability.
    picks.sort_by_key(|q| q.tensor_table().to_vec());
    picks
        .into_iter()
        .enumerate()
        .map(|(i, q)| (format!("sampled-chain5-{i}"), q.clone()))
        .collect()
}

/// Structured-frame fixtures: frames carrying a morphism into the
/// coidempotent lattice of a coefficient structure.
pub fn qlocales() -> Vec<(String, QLocale)> {
    let luk_sq = MonoidalPoset::product(&luk3(), &luk3()).unwrap();
    vec![
        (
            "point-luk3".to_string(),
            QLocale::new(two(), luk3(), vec![0, 2]).unwrap(),
        ),
        (
            "sierp-luk3-lower".to_string(),
            QLocale::new(sierp(), luk3(), vec![0, 0, 2]).unwrap(),
        ),
        (
            "sierp-luk3-upper".to_string(),
            QLocale::new(sierp(), luk3(), vec![0, 2, 2]).unwrap(),
        ),
        (
            "square-luk3-squared".to_string(),
            QLocale::new(square(), luk_sq, vec![0, 2, 6, 8]).unwrap(),
        ),
        (
            "point-ntu3".to_string(),
            QLocale::new(two(), ntu3(), vec![0, 1]).unwrap(),
        ),
    ]
}

/// The quantale battery: meet structures on every frame fixture, the named
/// chain structures, two products, and three seeded draws from the
/// exhaustive five-chain enumeration. At least twelve entries, all fully
/// flagged.
pub fn quantales() -> Vec<(String, MonoidalPoset)> {
    let meets = |l: &DistLattice| crate::quantale::iota(&l.as_semilattice()).unwrap();
    let mut out: Vec<(String, MonoidalPoset)> = frames()
        .iter()
        .map(|(name, f)| (format!("{name}-meet"), meets(f)))
        .collect();
    out.extend([
        ("luk3".to_string(), luk3()),
        ("luk4".to_string(), luk4()),
        ("ntu3".to_string(), ntu3()),
        ("ntu4".to_string(), ntu4()),
        (
            "luk3xluk3".to_string(),
            MonoidalPoset::product(&luk3(), &luk3()).unwrap(),
        ),
        (
            "luk3xtwo".to_string(),
            MonoidalPoset::product(&luk3(), &meets(&two())).unwrap(),
        ),
    ]);
    out.extend(sampled_quantales(0xC01DE, 3));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{classify_lattice, LatticeClass};

    #[test]
    fn frame_fixtures_are_distributive_and_distinct() {
        let fs = frames();
        assert_eq!(fs.len(), 8);
        for (name, f) in &fs {
            assert!(
                matches!(classify_lattice(f.carrier()), LatticeClass::Distributive),
                "{name} must classify as distributive"
            );
        }
        for i in 0..fs.len() {
            for j in (i + 1)..fs.len() {
                assert!(
                    fs[i].1.carrier().find_isomorphism(fs[j].1.carrier(), &[]).is_none(),
                    "{} and {} must not be isomorphic",
                    fs[i].0,
                    fs[j].0
                );
            }
        }
    }

    #[test]
    fn nondistributive_fixtures_classify_as_claimed() {
        assert!(matches!(
            classify_lattice(&m3()),
            LatticeClass::Semilattice { .. }
        ));
        assert!(matches!(
            classify_lattice(&n5()),
            LatticeClass::Semilattice { .. }
        ));
    }

    #[test]
    fn chain_table_enumeration_matches_hand_counts() {
        // On the three-chain with the unit at the top the free entry is the
        // middle square, which may be either the bottom or itself.
        let c3 = chain(3);
        let tables = enumerate_tensor_tables(c3.carrier(), 2);
        assert_eq!(tables.len(), 2);
        // On the four-chain the known count of such structures is six.
        let c4 = chain(4);
        assert_eq!(enumerate_tensor_tables(c4.carrier(), 3).len(), 6);
    }

    #[test]
    fn pruned_chain_enumeration_agrees_with_the_blind_one() {
        // The pruned search must reproduce the odometer exactly where the
        // odometer is affordable, table for table and in the same order.
        for n in 1..=4 {
            let blind: Vec<Vec<Vec<usize>>> = enumerate_tensor_tables(chain(n).carrier(), n - 1)
                .iter()
                .map(|q| q.tensor_table().to_vec())
                .collect();
            let pruned: Vec<Vec<Vec<usize>>> =
                chain_tnorms(n).iter().map(|q| q.tensor_table().to_vec()).collect();
            assert_eq!(blind, pruned, "size {n}");
        }
        // Known count on the five-chain, where only the pruned search runs.
        assert_eq!(chain_tnorms(5).len(), 22);
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let a = sampled_quantales(7, 3);
        let b = sampled_quantales(7, 3);
        assert_eq!(a.len(), 3);
        for ((na, qa), (nb, qb)) in a.iter().zip(&b) {
            assert_eq!(na, nb);
            assert_eq!(qa.tensor_table(), qb.tensor_table());
            assert!(qa.fully_flagged());
        }
    }

    #[test]
    fn quantale_battery_is_large_and_fully_flagged() {
        let qs = quantales();
        assert!(qs.len() >= 12, "battery has {} entries", qs.len());
        for (name, q) in &qs {
            assert!(q.fully_flagged(), "{name} must be fully flagged");
        }
    }
}
