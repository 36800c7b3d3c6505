//! Finite posets with a stored order-closure table.
//!
//! A [`FinPoset`] is a list of named elements together with the full `leq`
//! relation. Construction from generating pairs takes the reflexive-transitive
//! closure and rejects cycles, so every value of the type is a genuine poset.
//! Elements are addressed by their integer index in input order; all
//! enumeration output is sorted lexicographically by index vector so results
//! are reproducible byte for byte.

use thiserror::Error;

/// Errors raised by poset construction and the order-theoretic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    /// The generating relation has a cycle through two distinct elements.
    #[error("cycle: {left} <= {right} and {right} <= {left} with {left} != {right}")]
    Cycle { left: String, right: String },
    /// An element name appears twice in the element list.
    #[error("duplicate element {name}")]
    DuplicateElement { name: String },
    /// A name that is not in the element list.
    #[error("unknown element {name}")]
    UnknownElement { name: String },
    /// An element index outside the carrier.
    #[error("element index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    /// Two elements were required to have a meet but do not.
    #[error("no meet of {left} and {right}")]
    MeetAbsent { left: String, right: String },
    /// A map table fails monotonicity.
    #[error("not monotone: {src_low} <= {src_high} but images are not ordered")]
    NotMonotone { src_low: String, src_high: String },
    /// A map table has the wrong length or an out-of-range image.
    #[error("malformed map table: {detail}")]
    MalformedTable { detail: String },
    /// A member list is not downward closed.
    #[error("not downward closed: {below} <= {inside} but {below} is missing")]
    NotDownwardClosed { below: String, inside: String },
}

/// A finite poset: named elements plus the full `leq` closure table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinPoset {
    /// Builds a poset from elements and generating `leq` pairs (by name).
    ///
    /// The stored relation is the reflexive-transitive closure of the input
    /// pairs. Fails with [`PosetError::Cycle`] when the closure is not
    /// antisymmetric and [`PosetError::DuplicateElement`] /
    /// [`PosetError::UnknownElement`] on bad names.
    pub fn new<E: Into<String>, S: AsRef<str>>(
        elements: Vec<E>,
        pairs: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        for (i, a) in elements.iter().enumerate() {
            if elements[..i].contains(a) {
                return Err(PosetError::DuplicateElement { name: a.clone() });
            }
        }
        let n = elements.len();
        let index = |name: &str| -> Result<usize, PosetError> {
            elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| PosetError::UnknownElement { name: name.to_string() })
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            let (i, j) = (index(a.as_ref())?, index(b.as_ref())?);
            leq[i][j] = true;
        }
        // Floyd-Warshall closure over booleans.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(PosetError::Cycle {
                        left: elements[i].clone(),
                        right: elements[j].clone(),
                    });
                }
            }
        }
        Ok(FinPoset { elements, leq })
    }

    /// Builds a poset from an already-closed relation table.
    ///
    /// Reflexivity, antisymmetry, and transitivity of the table are verified;
    /// used by constructions that compute the full relation directly.
    pub fn from_closure(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, PosetError> {
        for (i, a) in elements.iter().enumerate() {
            if elements[..i].contains(a) {
                return Err(PosetError::DuplicateElement { name: a.clone() });
            }
        }
        let n = elements.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(PosetError::MalformedTable {
                detail: format!("closure table must be {n}x{n}"),
            });
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(PosetError::MalformedTable {
                    detail: format!("relation not reflexive at {}", elements[i]),
                });
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(PosetError::Cycle {
                        left: elements[i].clone(),
                        right: elements[j].clone(),
                    });
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(PosetError::MalformedTable {
                            detail: format!(
                                "relation not transitive through {}",
                                elements[j]
                            ),
                        });
                    }
                }
            }
        }
        Ok(FinPoset { elements, leq })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn index_of_checked(&self, name: &str) -> Result<usize, PosetError> {
        self.index_of(name)
            .ok_or_else(|| PosetError::UnknownElement { name: name.to_string() })
    }

    /// Whether `i <= j` holds.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    fn check_subset(&self, subset: &[usize]) -> Result<(), PosetError> {
        for &i in subset {
            if i >= self.len() {
                return Err(PosetError::IndexOutOfRange { index: i, size: self.len() });
            }
        }
        Ok(())
    }

    /// Greatest lower bound of a subset, when one exists.
    ///
    /// The empty meet is the top element, so `meet_of(&[])` is `None` exactly
    /// when the poset has no greatest element. Absence is a value here, not
    /// an error.
    pub fn meet_of(&self, subset: &[usize]) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&m| subset.iter().all(|&s| self.leq(m, s)))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&l| self.leq(l, m)))
    }

    /// Least upper bound of a subset, when one exists. The empty join is the
    /// bottom element.
    pub fn join_of(&self, subset: &[usize]) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&m| subset.iter().all(|&s| self.leq(s, m)))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&m| upper.iter().all(|&u| self.leq(m, u)))
    }

    pub fn top(&self) -> Option<usize> {
        self.meet_of(&[])
    }

    pub fn bottom(&self) -> Option<usize> {
        self.join_of(&[])
    }

    /// Indices `j` with `j <= i`.
    pub fn lower_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    /// Indices `j` with `i <= j`.
    pub fn upper_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    /// Cover pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                let between = (0..self.len())
                    .any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_downward_closed(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&s| (0..self.len()).all(|j| !self.leq(j, s) || subset.contains(&j)))
    }

    /// Downward closure of a subset as a [`DownSet`].
    pub fn downward_closure(&self, subset: &[usize]) -> Result<DownSet, PosetError> {
        self.check_subset(subset)?;
        let members: Vec<usize> = (0..self.len())
            .filter(|&j| subset.iter().any(|&s| self.leq(j, s)))
            .collect();
        Ok(DownSet { parent: self.clone(), members })
    }

    /// All downward-closed subsets, sorted lexicographically by index vector.
    pub fn downsets(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        assert!(n < usize::BITS as usize, "carrier too large for subset enumeration");
        let mut out = Vec::new();
        for mask in 0usize..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if self.is_downward_closed(&subset) {
                out.push(subset);
            }
        }
        out.sort();
        out
    }

    /// All nonempty subsets in which every pair has an upper bound inside the
    /// subset. Each such subset contains its own join: the poset is finite,
    /// so iterating the pairwise bound inside the subset reaches a greatest
    /// member, which is then the least upper bound.
    pub fn directed_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        assert!(n < usize::BITS as usize, "carrier too large for subset enumeration");
        let mut out = Vec::new();
        for mask in 1usize..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let directed = subset.iter().all(|&a| {
                subset
                    .iter()
                    .all(|&b| subset.iter().any(|&u| self.leq(a, u) && self.leq(b, u)))
            });
            if directed {
                out.push(subset);
            }
        }
        out.sort();
        out
    }

    /// Whether the whole poset is covered by the lower sets of `p` and `q`.
    ///
    /// Requires `p` and `q` to have a meet; the interesting consequences of
    /// the hypothesis are stated below a meet.
    pub fn two_lower_cover(&self, p: usize, q: usize) -> Result<bool, PosetError> {
        self.check_subset(&[p, q])?;
        if self.meet_of(&[p, q]).is_none() {
            return Err(PosetError::MeetAbsent {
                left: self.elements[p].clone(),
                right: self.elements[q].clone(),
            });
        }
        Ok((0..self.len()).all(|x| self.leq(x, p) || self.leq(x, q)))
    }

    /// The induced subposet on `members` (kept in the given order).
    pub fn induced(&self, members: &[usize]) -> Result<FinPoset, PosetError> {
        self.check_subset(members)?;
        let elements = members.iter().map(|&i| self.elements[i].clone()).collect();
        let leq = members
            .iter()
            .map(|&i| members.iter().map(|&j| self.leq(i, j)).collect())
            .collect();
        FinPoset::from_closure(elements, leq)
    }

    /// Per-element profile used to prune isomorphism search.
    fn profile(&self, i: usize) -> (usize, usize) {
        (self.lower_set(i).len(), self.upper_set(i).len())
    }

    /// Searches for an order isomorphism onto `other` extending the given
    /// fixed assignments. Returns the image table of the first one found in
    /// lexicographic order, or `None`.
    pub fn find_isomorphism(
        &self,
        other: &FinPoset,
        fixed: &[(usize, usize)],
    ) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let n = self.len();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for &(a, b) in fixed {
            if a >= n || b >= n || self.profile(a) != other.profile(b) {
                return None;
            }
            if image[a] != usize::MAX || used[b] {
                return None;
            }
            image[a] = b;
            used[b] = true;
        }
        fn consistent(p: &FinPoset, q: &FinPoset, image: &[usize], a: usize) -> bool {
            let b = image[a];
            (0..p.len()).all(|a2| {
                let b2 = image[a2];
                b2 == usize::MAX
                    || (p.leq(a, a2) == q.leq(b, b2) && p.leq(a2, a) == q.leq(b2, b))
            })
        }
        for &(a, _) in fixed {
            if !consistent(self, other, &image, a) {
                return None;
            }
        }
        fn go(p: &FinPoset, q: &FinPoset, image: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let a = match image.iter().position(|&b| b == usize::MAX) {
                Some(a) => a,
                None => return true,
            };
            for b in 0..q.len() {
                if used[b] || p.profile(a) != q.profile(b) {
                    continue;
                }
                image[a] = b;
                used[b] = true;
                if consistent(p, q, image, a) && go(p, q, image, used) {
                    return true;
                }
                image[a] = usize::MAX;
                used[b] = false;
            }
            false
        }
        if go(self, other, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    /// A canonical byte key: the relation matrix minimized over all
    /// permutations of the carrier. Equal keys iff isomorphic posets.
    pub fn canonical_key(&self) -> Vec<bool> {
        let n = self.len();
        let mut best: Option<Vec<bool>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut key = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    key.push(self.leq(perm[i], perm[j]));
                }
            }
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// A downward-closed subset of a poset, carrying its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownSet {
    parent: FinPoset,
    members: Vec<usize>,
}

impl DownSet {
    /// Validates downward closure of `members` inside `parent`.
    pub fn new(parent: FinPoset, mut members: Vec<usize>) -> Result<Self, PosetError> {
        parent.check_subset(&members)?;
        members.sort_unstable();
        members.dedup();
        for &s in &members {
            for j in 0..parent.len() {
                if parent.leq(j, s) && !members.contains(&j) {
                    return Err(PosetError::NotDownwardClosed {
                        below: parent.name(j).to_string(),
                        inside: parent.name(s).to_string(),
                    });
                }
            }
        }
        Ok(DownSet { parent, members })
    }

    pub fn parent(&self) -> &FinPoset {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }
}

/// A monotone map between finite posets, stored as an image table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: FinPoset,
    target: FinPoset,
    table: Vec<usize>,
}

impl MonotoneMap {
    /// Validates the table: right length, in-range images, monotone.
    pub fn new(source: FinPoset, target: FinPoset, table: Vec<usize>) -> Result<Self, PosetError> {
        if table.len() != source.len() {
            return Err(PosetError::MalformedTable {
                detail: format!("table has {} entries for {} elements", table.len(), source.len()),
            });
        }
        for &img in &table {
            if img >= target.len() {
                return Err(PosetError::IndexOutOfRange { index: img, size: target.len() });
            }
        }
        for i in 0..source.len() {
            for j in 0..source.len() {
                if source.leq(i, j) && !target.leq(table[i], table[j]) {
                    return Err(PosetError::NotMonotone {
                        src_low: source.name(i).to_string(),
                        src_high: source.name(j).to_string(),
                    });
                }
            }
        }
        Ok(MonotoneMap { source, target, table })
    }

    pub fn identity(poset: &FinPoset) -> MonotoneMap {
        MonotoneMap {
            source: poset.clone(),
            target: poset.clone(),
            table: (0..poset.len()).collect(),
        }
    }

    pub fn source(&self) -> &FinPoset {
        &self.source
    }

    pub fn target(&self) -> &FinPoset {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `other` after `self` (so `self.source -> other.target`).
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap, PosetError> {
        if self.target != other.source {
            return Err(PosetError::MalformedTable {
                detail: "composition endpoints do not match".to_string(),
            });
        }
        let table = self.table.iter().map(|&i| other.table[i]).collect();
        MonotoneMap::new(self.source.clone(), other.target.clone(), table)
    }
}

/// Enumerates all subsets of `0..n`, sorted lexicographically by index vector.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    assert!(n < usize::BITS as usize, "carrier too large for subset enumeration");
    let mut out: Vec<Vec<usize>> = (0usize..(1 << n))
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn chain3() -> FinPoset {
        FinPoset::new(names(&["bot", "u", "top"]), &[("bot", "u"), ("u", "top")]).unwrap()
    }

    fn square() -> FinPoset {
        FinPoset::new(
            names(&["bot", "a", "b", "top"]),
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .unwrap()
    }

    /// Independent bound check: `m` is the meet of `s` iff it is a lower
    /// bound and every lower bound is below it. Scans all candidates rather
    /// than reusing the filter-then-pick route of `meet_of`.
    fn is_meet(p: &FinPoset, s: &[usize], m: usize) -> bool {
        s.iter().all(|&x| p.leq(m, x))
            && (0..p.len())
                .filter(|&l| s.iter().all(|&x| p.leq(l, x)))
                .all(|l| p.leq(l, m))
    }

    fn is_join(p: &FinPoset, s: &[usize], m: usize) -> bool {
        s.iter().all(|&x| p.leq(x, m))
            && (0..p.len())
                .filter(|&u| s.iter().all(|&x| p.leq(x, u)))
                .all(|u| p.leq(m, u))
    }

    #[test]
    fn closure_is_computed() {
        let p = FinPoset::new(names(&["a", "b", "c"]), &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq(0, 2), "transitivity");
        assert!(p.leq(1, 1), "reflexivity");
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn cycle_is_rejected() {
        let err = FinPoset::new(names(&["a", "b"]), &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle { .. }));
    }

    #[test]
    fn duplicate_name_is_rejected() {
        let err = FinPoset::new(names(&["a", "a"]), &[] as &[(&str, &str)]).unwrap_err();
        assert_eq!(err, PosetError::DuplicateElement { name: "a".to_string() });
    }

    #[test]
    fn unknown_name_in_pair_is_rejected() {
        let err = FinPoset::new(names(&["a"]), &[("a", "z")]).unwrap_err();
        assert_eq!(err, PosetError::UnknownElement { name: "z".to_string() });
    }

    #[test]
    fn square_meets_and_joins() {
        let p = square();
        let (a, b) = (1, 2);
        assert_eq!(p.meet_of(&[a, b]), Some(0));
        assert_eq!(p.join_of(&[a, b]), Some(3));
        assert_eq!(p.meet_of(&[]), Some(3), "empty meet is top");
        assert_eq!(p.join_of(&[]), Some(0), "empty join is bottom");
    }

    #[test]
    fn antichain_has_no_bounds() {
        let p = FinPoset::new(names(&["a", "b"]), &[] as &[(&str, &str)]).unwrap();
        assert_eq!(p.meet_of(&[0, 1]), None);
        assert_eq!(p.join_of(&[0, 1]), None);
        assert_eq!(p.top(), None);
    }

    #[test]
    fn downward_closure_of_square_upper() {
        let p = square();
        let d = p.downward_closure(&[1]).unwrap();
        assert_eq!(d.members(), &[0, 1]);
        let d = p.downward_closure(&[1, 2]).unwrap();
        assert_eq!(d.members(), &[0, 1, 2]);
        let err = p.downward_closure(&[9]).unwrap_err();
        assert!(matches!(err, PosetError::IndexOutOfRange { .. }));
    }

    #[test]
    fn downset_validation_catches_gaps() {
        let p = square();
        let err = DownSet::new(p.clone(), vec![1]).unwrap_err();
        assert!(matches!(err, PosetError::NotDownwardClosed { .. }));
        assert!(DownSet::new(p, vec![0, 1]).is_ok());
    }

    #[test]
    fn two_element_chain_directed_subsets() {
        let p = FinPoset::new(names(&["bot", "top"]), &[("bot", "top")]).unwrap();
        assert_eq!(p.directed_subsets(), vec![vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn sierpinski_directed_subsets_are_all_nonempty_subsets() {
        // A chain: every nonempty subset is directed.
        assert_eq!(chain3().directed_subsets().len(), 7);
    }

    #[test]
    fn directed_subsets_contain_their_join() {
        for p in [chain3(), square()] {
            for d in p.directed_subsets() {
                let j = p.join_of(&d).expect("directed subsets of these posets have joins");
                assert!(d.contains(&j));
            }
        }
    }

    #[test]
    fn two_lower_cover_examples() {
        let p = square();
        assert!(!p.two_lower_cover(1, 2).unwrap(), "the top is below neither coatom");
        assert!(p.two_lower_cover(3, 3).unwrap(), "everything is below the top");
        let wedge = p.induced(&[0, 1, 2]).unwrap();
        assert!(wedge.two_lower_cover(1, 2).unwrap(), "without the top the coatoms cover");
        let c = chain3();
        assert!(c.two_lower_cover(1, 2).unwrap());
        assert!(!c.two_lower_cover(1, 1).unwrap());
    }

    #[test]
    fn two_lower_cover_needs_a_meet() {
        let p = FinPoset::new(names(&["a", "b", "t"]), &[("a", "t"), ("b", "t")]).unwrap();
        let err = p.two_lower_cover(0, 1).unwrap_err();
        assert!(matches!(err, PosetError::MeetAbsent { .. }));
    }

    #[test]
    fn induced_subposet_keeps_order() {
        let p = square();
        let q = p.induced(&[0, 1, 2]).unwrap();
        assert_eq!(q.len(), 3);
        assert!(q.leq(0, 1) && q.leq(0, 2) && !q.leq(1, 2));
    }

    #[test]
    fn monotone_map_validation() {
        let c = chain3();
        let two = FinPoset::new(names(&["bot", "top"]), &[("bot", "top")]).unwrap();
        assert!(MonotoneMap::new(c.clone(), two.clone(), vec![0, 0, 1]).is_ok());
        let err = MonotoneMap::new(c.clone(), two.clone(), vec![1, 0, 1]).unwrap_err();
        assert!(matches!(err, PosetError::NotMonotone { .. }));
        let err = MonotoneMap::new(c, two, vec![0, 0]).unwrap_err();
        assert!(matches!(err, PosetError::MalformedTable { .. }));
    }

    #[test]
    fn composition_matches_tables() {
        let c = chain3();
        let two = FinPoset::new(names(&["bot", "top"]), &[("bot", "top")]).unwrap();
        let f = MonotoneMap::new(c.clone(), two.clone(), vec![0, 0, 1]).unwrap();
        let g = MonotoneMap::identity(&two);
        assert_eq!(f.then(&g).unwrap(), f);
    }

    #[test]
    fn isomorphism_search_finds_chain_relabeling() {
        let a = chain3();
        let b = FinPoset::new(names(&["x", "y", "z"]), &[("z", "y"), ("y", "x")]).unwrap();
        let iso = a.find_isomorphism(&b, &[]).unwrap();
        assert_eq!(iso, vec![2, 1, 0]);
        assert!(a.find_isomorphism(&square(), &[]).is_none());
    }

    #[test]
    fn marked_isomorphism_respects_fixed_points() {
        let a = chain3();
        let b = chain3();
        assert!(a.find_isomorphism(&b, &[(0, 0)]).is_some());
        assert!(a.find_isomorphism(&b, &[(0, 2)]).is_none());
    }

    #[test]
    fn canonical_key_separates_shapes() {
        let relabeled =
            FinPoset::new(names(&["p", "q", "r", "s"]), &[("q", "p"), ("q", "s"), ("p", "r"), ("s", "r")])
                .unwrap();
        assert_eq!(square().canonical_key(), relabeled.canonical_key());
        assert_ne!(chain3().canonical_key(), square().canonical_key());
    }

    proptest! {
        /// Closure construction is idempotent: feeding the closed relation
        /// back as generating pairs reproduces the same poset.
        #[test]
        fn closure_idempotent(pairs in proptest::collection::vec((0usize..5, 0usize..5), 0..12)) {
            let elements: Vec<String> = (0..5).map(|i| format!("e{i}")).collect();
            let named: Vec<(String, String)> = pairs
                .iter()
                .map(|&(i, j)| (format!("e{i}"), format!("e{j}")))
                .collect();
            if let Ok(p) = FinPoset::new(elements.clone(), &named) {
                let closed: Vec<(String, String)> = (0..5)
                    .flat_map(|i| (0..5).map(move |j| (i, j)))
                    .filter(|&(i, j)| p.leq(i, j))
                    .map(|(i, j)| (format!("e{i}"), format!("e{j}")))
                    .collect();
                let q = FinPoset::new(elements, &closed).unwrap();
                prop_assert_eq!(p, q);
            }
        }

        /// meet_of / join_of agree with the defining bound property.
        #[test]
        fn bounds_satisfy_their_definition(
            pairs in proptest::collection::vec((0usize..5, 0usize..5), 0..10),
            subset in proptest::collection::vec(0usize..5, 0..5),
        ) {
            let elements: Vec<String> = (0..5).map(|i| format!("e{i}")).collect();
            let named: Vec<(String, String)> = pairs
                .iter()
                .map(|&(i, j)| (format!("e{i}"), format!("e{j}")))
                .collect();
            if let Ok(p) = FinPoset::new(elements, &named) {
                match p.meet_of(&subset) {
                    Some(m) => prop_assert!(is_meet(&p, &subset, m)),
                    None => prop_assert!((0..5).all(|m| !is_meet(&p, &subset, m))),
                }
                match p.join_of(&subset) {
                    Some(j) => prop_assert!(is_join(&p, &subset, j)),
                    None => prop_assert!((0..5).all(|j| !is_join(&p, &subset, j))),
                }
            }
        }

        /// Downward closure is idempotent and contains its seed.
        #[test]
        fn downward_closure_idempotent(
            pairs in proptest::collection::vec((0usize..5, 0usize..5), 0..10),
            seed in proptest::collection::vec(0usize..5, 0..5),
        ) {
            let elements: Vec<String> = (0..5).map(|i| format!("e{i}")).collect();
            let named: Vec<(String, String)> = pairs
                .iter()
                .map(|&(i, j)| (format!("e{i}"), format!("e{j}")))
                .collect();
            if let Ok(p) = FinPoset::new(elements, &named) {
                let once = p.downward_closure(&seed).unwrap();
                let twice = p.downward_closure(once.members()).unwrap();
                prop_assert_eq!(once.members(), twice.members());
                for s in &seed {
                    prop_assert!(once.contains(*s));
                }
            }
        }
    }
}
