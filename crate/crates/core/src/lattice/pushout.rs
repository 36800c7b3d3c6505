//! Pushouts of finite distributive lattices along a common apex.
//!
//! The construction is the free one, normalized so equality is decidable.
//! Every term over the two lattices reduces to a join of meets of one
//! generator from each side, and a join of pairs is canonicalized as a
//! saturated downset of the pair grid: downward closed, containing every
//! pair with a bottom coordinate, and closed under coordinatewise joins at a
//! fixed other coordinate. Saturated downsets ordered by inclusion form the
//! coproduct; the apex is then glued in by the lattice congruence generated
//! by identifying the two images of each apex element. The result is
//! revalidated as a distributive lattice and certified against the
//! point-level universal property, so a construction bug cannot slip through
//! as a plausible-looking lattice.

use std::collections::BTreeMap;

use crate::poset::{FinPoset, MonotoneMap};

use super::{
    hom_enumerate_frame, points, DistLattice, LatticeError, LatticeMorphism, MorphismKind,
};

/// Size guards for the pushout construction.
#[derive(Debug, Clone, Copy)]
pub struct PushoutLimits {
    /// Bound on the total number of generators (elements of both sides).
    pub max_generators: usize,
    /// Bound on the number of elements the normal-form closure may reach.
    pub max_elements: usize,
}

impl Default for PushoutLimits {
    fn default() -> Self {
        PushoutLimits { max_generators: 12, max_elements: 4096 }
    }
}

/// A computed pushout with its legs and point-level certificate.
#[derive(Debug, Clone)]
pub struct PushoutReport {
    pub lattice: DistLattice,
    /// Left-side leg into the pushout.
    pub left_leg: LatticeMorphism,
    /// Right-side leg into the pushout.
    pub right_leg: LatticeMorphism,
    /// For each point of the pushout (in enumeration order), the indices of
    /// the points of the two sides it restricts to. Witnesses that points of
    /// the pushout are exactly the compatible pairs.
    pub point_pairs: Vec<(usize, usize)>,
}

struct PairGrid {
    nf: usize,
    ng: usize,
    /// Downward closure mask of each pair index.
    down: Vec<u64>,
    /// Mask of pairs with a bottom coordinate; always present.
    cross: u64,
    f: FinPoset,
    g: FinPoset,
}

impl PairGrid {
    fn pair(&self, x: usize, y: usize) -> usize {
        x * self.ng + y
    }

    /// Closes a pair set under the normal-form rules.
    fn saturate(&self, mut m: u64) -> u64 {
        loop {
            let before = m;
            m |= self.cross;
            let mut next = m;
            for p in 0..(self.nf * self.ng) {
                if m & (1 << p) != 0 {
                    next |= self.down[p];
                }
            }
            m = next;
            for y in 0..self.ng {
                let xs: Vec<usize> =
                    (0..self.nf).filter(|&x| m & (1 << self.pair(x, y)) != 0).collect();
                for (i, &x1) in xs.iter().enumerate() {
                    for &x2 in &xs[i + 1..] {
                        let join = self.f.join_of(&[x1, x2]).expect("side lattices have joins");
                        m |= 1 << self.pair(join, y);
                    }
                }
            }
            for x in 0..self.nf {
                let ys: Vec<usize> =
                    (0..self.ng).filter(|&y| m & (1 << self.pair(x, y)) != 0).collect();
                for (i, &y1) in ys.iter().enumerate() {
                    for &y2 in &ys[i + 1..] {
                        let join = self.g.join_of(&[y1, y2]).expect("side lattices have joins");
                        m |= 1 << self.pair(x, join);
                    }
                }
            }
            if m == before {
                return m;
            }
        }
    }

    fn mask_name(&self, m: u64) -> String {
        // Named by the maximal pairs: the join-of-meets normal form with
        // redundant joinands dropped.
        let pairs: Vec<(usize, usize)> = (0..self.nf)
            .flat_map(|x| (0..self.ng).map(move |y| (x, y)))
            .filter(|&(x, y)| m & (1 << self.pair(x, y)) != 0)
            .collect();
        let maximal: Vec<String> = pairs
            .iter()
            .filter(|&&(x, y)| {
                !pairs
                    .iter()
                    .any(|&(x2, y2)| (x2, y2) != (x, y) && self.f.leq(x, x2) && self.g.leq(y, y2))
            })
            .map(|&(x, y)| format!("{}^{}", self.f.name(x), self.g.name(y)))
            .collect();
        format!("{{{}}}", maximal.join(" v "))
    }
}

fn mask_bits(m: u64, width: usize) -> Vec<usize> {
    (0..width).filter(|&p| m & (1 << p) != 0).collect()
}

/// Union-find with path halving.
struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    fn new(n: usize) -> Self {
        Partition { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller root wins so class representatives are deterministic.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Pushout of `f: H -> F` and `g: H -> G` in finite distributive lattices.
///
/// Both maps must be frame morphisms out of the same apex. Returns the
/// normalized lattice, both legs, and the point-pair certificate; fails with
/// [`LatticeError::SizeLimitExceeded`] when the generator or element bounds
/// would be passed.
pub fn frame_pushout(
    f: &LatticeMorphism,
    g: &LatticeMorphism,
    limits: &PushoutLimits,
) -> Result<PushoutReport, LatticeError> {
    if f.kind() != MorphismKind::Frame || g.kind() != MorphismKind::Frame {
        return Err(LatticeError::LawViolation {
            law: "pushout-input",
            witness: "both maps must be frame morphisms".to_string(),
        });
    }
    if f.map().source() != g.map().source() {
        return Err(LatticeError::LawViolation {
            law: "pushout-input",
            witness: "the two maps have different apexes".to_string(),
        });
    }
    let lat_f = DistLattice::new(f.map().target().clone())?;
    let lat_g = DistLattice::new(g.map().target().clone())?;
    let (nf, ng) = (lat_f.carrier().len(), lat_g.carrier().len());
    if nf + ng > limits.max_generators {
        return Err(LatticeError::SizeLimitExceeded {
            detail: format!("{} generators exceed the bound {}", nf + ng, limits.max_generators),
        });
    }
    if nf * ng > 64 {
        return Err(LatticeError::SizeLimitExceeded {
            detail: format!("pair grid {}x{} exceeds 64 cells", nf, ng),
        });
    }
    let mut down = vec![0u64; nf * ng];
    let mut cross = 0u64;
    for x in 0..nf {
        for y in 0..ng {
            let p = x * ng + y;
            for x2 in 0..nf {
                for y2 in 0..ng {
                    if lat_f.carrier().leq(x2, x) && lat_g.carrier().leq(y2, y) {
                        down[p] |= 1 << (x2 * ng + y2);
                    }
                }
            }
            if x == lat_f.bottom() || y == lat_g.bottom() {
                cross |= 1 << p;
            }
        }
    }
    let grid = PairGrid { nf, ng, down, cross, f: lat_f.carrier().clone(), g: lat_g.carrier().clone() };

    // Basic elements: one saturated downset per pair of generators.
    let mut elements: Vec<u64> = Vec::new();
    let mut index: BTreeMap<u64, usize> = BTreeMap::new();
    let add = |elements: &mut Vec<u64>, index: &mut BTreeMap<u64, usize>, m: u64| -> usize {
        *index.entry(m).or_insert_with(|| {
            elements.push(m);
            elements.len() - 1
        })
    };
    let mut basic_mask = vec![vec![0u64; ng]; nf];
    for x in 0..nf {
        for y in 0..ng {
            let m = grid.saturate(1 << grid.pair(x, y));
            basic_mask[x][y] = m;
            add(&mut elements, &mut index, m);
        }
    }
    // Close under joins and meets of normal forms.
    let mut frontier: Vec<u64> = elements.clone();
    while !frontier.is_empty() {
        let mut fresh: Vec<u64> = Vec::new();
        let snapshot = elements.clone();
        for &a in &frontier {
            for &b in &snapshot {
                for candidate in [grid.saturate(a | b), a & b] {
                    if !index.contains_key(&candidate) {
                        add(&mut elements, &mut index, candidate);
                        fresh.push(candidate);
                    }
                }
            }
            if elements.len() > limits.max_elements {
                return Err(LatticeError::SizeLimitExceeded {
                    detail: format!(
                        "normal-form closure passed {} elements",
                        limits.max_elements
                    ),
                });
            }
        }
        frontier = fresh;
    }
    // Deterministic element order: lexicographic in the pair-index vector.
    elements.sort_by(|&a, &b| mask_bits(a, nf * ng).cmp(&mask_bits(b, nf * ng)));
    let index: BTreeMap<u64, usize> =
        elements.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let n = elements.len();
    // Indices assigned during discovery are stale after the sort; address the
    // basic elements through their masks instead.
    let basic: Vec<Vec<usize>> =
        basic_mask.iter().map(|row| row.iter().map(|m| index[m]).collect()).collect();

    // Glue the apex: congruence generated by identifying the two images of
    // each apex element, closed under meet and join with everything.
    let mut part = Partition::new(n);
    let apex = f.map().source();
    let mut dirty: Vec<(usize, usize)> = Vec::new();
    for h in 0..apex.len() {
        let a = basic[f.apply(h)][lat_g.top()];
        let b = basic[lat_f.top()][g.apply(h)];
        if part.union(a, b) {
            dirty.push((a, b));
        }
    }
    while let Some((a, b)) = dirty.pop() {
        for z in 0..n {
            let meets = (elements[a] & elements[z], elements[b] & elements[z]);
            let joins = (
                grid.saturate(elements[a] | elements[z]),
                grid.saturate(elements[b] | elements[z]),
            );
            for (l, r) in [meets, joins] {
                let (li, ri) = (index[&l], index[&r]);
                if part.union(li, ri) {
                    dirty.push((li, ri));
                }
            }
        }
    }

    // Quotient poset on congruence classes.
    let mut class_of = vec![0usize; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        let root = part.find(i);
        if root == i {
            reps.push(i);
        }
    }
    for i in 0..n {
        let root = part.find(i);
        class_of[i] = reps.iter().position(|&r| r == root).expect("roots are representatives");
    }
    let q = reps.len();
    let class_leq = |part: &mut Partition, a: usize, b: usize| -> bool {
        let meet = elements[a] & elements[b];
        part.find(index[&meet]) == part.find(a)
    };
    let mut leq = vec![vec![false; q]; q];
    for (qi, &ri) in reps.iter().enumerate() {
        for (qj, &rj) in reps.iter().enumerate() {
            leq[qi][qj] = class_leq(&mut part, ri, rj);
        }
    }
    let names: Vec<String> = reps.iter().map(|&r| grid.mask_name(elements[r])).collect();
    let carrier = FinPoset::from_closure(names, leq)?;
    let lattice = DistLattice::new(carrier)?;

    let left_table: Vec<usize> = (0..nf).map(|x| class_of[basic[x][lat_g.top()]]).collect();
    let right_table: Vec<usize> = (0..ng).map(|y| class_of[basic[lat_f.top()][y]]).collect();
    let left_leg = LatticeMorphism::new(
        MonotoneMap::new(lat_f.carrier().clone(), lattice.carrier().clone(), left_table)?,
        MorphismKind::Frame,
    )?;
    let right_leg = LatticeMorphism::new(
        MonotoneMap::new(lat_g.carrier().clone(), lattice.carrier().clone(), right_table)?,
        MorphismKind::Frame,
    )?;

    // Point-level certificate: points of the pushout must correspond one to
    // one with pairs of side points agreeing on the apex.
    let pts = points(&lattice);
    let pts_f = points(&lat_f);
    let pts_g = points(&lat_g);
    let fiber: Vec<(usize, usize)> = (0..pts_f.len())
        .flat_map(|i| (0..pts_g.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            (0..apex.len()).all(|h| pts_f[i].apply(f.apply(h)) == pts_g[j].apply(g.apply(h)))
        })
        .collect();
    let mut point_pairs = Vec::new();
    let mut hit = vec![false; fiber.len()];
    for p in &pts {
        let through_left: Vec<usize> = (0..nf).map(|x| p.apply(left_leg.apply(x))).collect();
        let through_right: Vec<usize> = (0..ng).map(|y| p.apply(right_leg.apply(y))).collect();
        let i = pts_f
            .iter()
            .position(|q| q.table() == through_left.as_slice())
            .ok_or_else(|| certificate_failure("a pushout point restricts off the left side"))?;
        let j = pts_g
            .iter()
            .position(|q| q.table() == through_right.as_slice())
            .ok_or_else(|| certificate_failure("a pushout point restricts off the right side"))?;
        let at = fiber
            .iter()
            .position(|&pair| pair == (i, j))
            .ok_or_else(|| certificate_failure("restricted points disagree on the apex"))?;
        if hit[at] {
            return Err(certificate_failure("two pushout points restrict to the same pair"));
        }
        hit[at] = true;
        point_pairs.push((i, j));
    }
    if !hit.iter().all(|&h| h) {
        return Err(certificate_failure("a compatible point pair is not induced by any point"));
    }
    Ok(PushoutReport { lattice, left_leg, right_leg, point_pairs })
}

fn certificate_failure(witness: &str) -> LatticeError {
    LatticeError::LawViolation { law: "pushout-certificate", witness: witness.to_string() }
}

/// Verifies the universal property against one test frame: every cocone
/// under the span through `k` factors through the pushout exactly once.
pub fn universal_property_against(
    report: &PushoutReport,
    f: &LatticeMorphism,
    g: &LatticeMorphism,
    k: &DistLattice,
) -> Result<usize, LatticeError> {
    let lat_f = DistLattice::new(f.map().target().clone())?;
    let lat_g = DistLattice::new(g.map().target().clone())?;
    let apex = f.map().source();
    let homs_f = hom_enumerate_frame(&lat_f, k);
    let homs_g = hom_enumerate_frame(&lat_g, k);
    let homs_p = hom_enumerate_frame(&report.lattice, k);
    let mut cocones = 0usize;
    for u in &homs_f {
        for v in &homs_g {
            let agrees = (0..apex.len()).all(|h| u.apply(f.apply(h)) == v.apply(g.apply(h)));
            if !agrees {
                continue;
            }
            cocones += 1;
            let factorizations = homs_p
                .iter()
                .filter(|w| {
                    let through_left = report.left_leg.then(w).expect("endpoints match");
                    let through_right = report.right_leg.then(w).expect("endpoints match");
                    through_left.table() == u.table() && through_right.table() == v.table()
                })
                .count();
            if factorizations != 1 {
                return Err(LatticeError::LawViolation {
                    law: "pushout-universal",
                    witness: format!(
                        "a cocone through a {}-element frame has {} factorizations",
                        k.carrier().len(),
                        factorizations
                    ),
                });
            }
        }
    }
    Ok(cocones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn unique_from_two(target: &DistLattice) -> LatticeMorphism {
        let homs = hom_enumerate_frame(&catalog::two(), target);
        assert_eq!(homs.len(), 1);
        homs.into_iter().next().unwrap()
    }

    #[test]
    fn sierp_square_pushout_over_two() {
        // Opens of the product of two two-point spaces with one open point:
        // the four-point product has a six-open topology.
        let sierp = catalog::sierp();
        let f = unique_from_two(&sierp);
        let report = frame_pushout(&f, &f, &PushoutLimits::default()).unwrap();
        assert_eq!(report.lattice.carrier().len(), 6);
        assert_eq!(report.point_pairs.len(), 4);
    }

    #[test]
    fn boolean_square_pushout_over_two() {
        let square = catalog::square();
        let f = unique_from_two(&square);
        let report = frame_pushout(&f, &f, &PushoutLimits::default()).unwrap();
        assert_eq!(report.lattice.carrier().len(), 16);
        assert_eq!(report.point_pairs.len(), 4);
        // Every element joins pairwise meets of leg images: spot the atoms.
        let atoms = report
            .lattice
            .carrier()
            .covers()
            .iter()
            .filter(|&&(b, _)| b == report.lattice.bottom())
            .count();
        assert_eq!(atoms, 4);
    }

    #[test]
    fn pushout_with_two_apex_and_two_side_is_the_other_side() {
        let sierp = catalog::sierp();
        let two = catalog::two();
        let id_two = hom_enumerate_frame(&two, &two).into_iter().next().unwrap();
        let to_sierp = unique_from_two(&sierp);
        let report = frame_pushout(&id_two, &to_sierp, &PushoutLimits::default()).unwrap();
        assert_eq!(report.lattice.carrier().len(), 3);
        assert!(report
            .lattice
            .carrier()
            .find_isomorphism(sierp.carrier(), &[])
            .is_some());
    }

    #[test]
    fn pushout_along_identities_collapses_to_the_apex() {
        let sierp = catalog::sierp();
        let id = LatticeMorphism::new(
            crate::poset::MonotoneMap::identity(sierp.carrier()),
            MorphismKind::Frame,
        )
        .unwrap();
        let report = frame_pushout(&id, &id, &PushoutLimits::default()).unwrap();
        assert_eq!(report.lattice.carrier().len(), 3);
        assert!(report
            .lattice
            .carrier()
            .find_isomorphism(sierp.carrier(), &[])
            .is_some());
    }

    #[test]
    fn universal_property_holds_against_small_frames() {
        let sierp = catalog::sierp();
        let f = unique_from_two(&sierp);
        let report = frame_pushout(&f, &f, &PushoutLimits::default()).unwrap();
        for (name, k) in catalog::frames() {
            if k.carrier().len() <= 4 {
                universal_property_against(&report, &f, &f, &k)
                    .unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
    }

    #[test]
    fn generator_bound_is_enforced() {
        let sierp = catalog::sierp();
        let f = unique_from_two(&sierp);
        let tight = PushoutLimits { max_generators: 5, max_elements: 4096 };
        let err = frame_pushout(&f, &f, &tight).unwrap_err();
        assert!(matches!(err, LatticeError::SizeLimitExceeded { .. }));
    }

    #[test]
    fn mismatched_apexes_are_rejected() {
        let sierp = catalog::sierp();
        let f = unique_from_two(&sierp);
        let id = LatticeMorphism::new(
            crate::poset::MonotoneMap::identity(sierp.carrier()),
            MorphismKind::Frame,
        )
        .unwrap();
        let err = frame_pushout(&f, &id, &PushoutLimits::default()).unwrap_err();
        assert!(matches!(err, LatticeError::LawViolation { law: "pushout-input", .. }));
    }
}
