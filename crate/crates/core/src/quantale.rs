//! Commutative monoidal posets and their idempotent structure.
//!
//! A [`MonoidalPoset`] is a finite poset with a commutative, associative,
//! monotone tensor and a unit. The unit need not be the top element, and the
//! tensor need not be the meet; the interesting examples are exactly the
//! ones where they differ. Joins and distributivity of the tensor over them
//! are not assumed: they are computed into [`QuantaleFlags`] at construction
//! and rechecked by the operations that need them.
//!
//! Two marked subposets matter. The coidempotents are the `c <= unit` with
//! `c (x) c = c`; dually the idempotents sit above the unit. Under the join
//! flags the coidempotents form a distributive lattice whose meet is the
//! tensor and whose join is the ambient join; [`cidem_lattice`] rebuilds
//! that lattice while re-proving each required equation, so the statement is
//! run, not trusted. The two transposition maps ([`transpose_slat`],
//! [`transpose_frm`]) certify the adjunctions between lattice morphisms into
//! the coidempotents and monoidal maps out of the ambient structure.

use thiserror::Error;

use crate::lattice::{
    hom_enumerate_frame, hom_enumerate_slat, DistLattice, LatticeError, LatticeMorphism,
    Semilattice,
};
use crate::poset::{FinPoset, MonotoneMap, PosetError};

/// Errors raised by monoidal-poset validation and the spectrum operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    /// A monoid or monotonicity law fails.
    #[error("law violation ({law}): {witness}")]
    LawViolation { law: &'static str, witness: String },
    /// An operation needs a join or distributivity flag the structure lacks.
    #[error("flag missing: {flag}")]
    FlagMissing { flag: &'static str },
    /// A re-proved internal statement failed; indicates a construction bug.
    #[error("internal theorem violation: {detail}")]
    InternalTheoremViolation { detail: String },
    /// A claimed bijection failed its round-trip check.
    #[error("bijection failure: {detail}")]
    BijectionFailure { detail: String },
    /// A map does not factor through the coidempotents.
    #[error("factorization failure: {detail}")]
    FactorizationFailure { detail: String },
}

/// Which completeness and distributivity properties the structure has.
/// Computed, never supplied. On a finite carrier every subset is finite, so
/// the two join flags coincide; both are kept because downstream operations
/// state their hypotheses in terms of one or the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantaleFlags {
    pub has_finite_joins: bool,
    pub has_all_joins: bool,
    pub tensor_distributes: bool,
}

/// A finite commutative monoidal poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalPoset {
    carrier: FinPoset,
    tensor: Vec<Vec<usize>>,
    unit: usize,
    flags: QuantaleFlags,
}

impl MonoidalPoset {
    /// Validates the tensor table and computes the flags.
    ///
    /// Laws are checked in a fixed order (commutativity, associativity,
    /// unit, monotonicity) so the reported witness is deterministic.
    pub fn new(
        carrier: FinPoset,
        tensor: Vec<Vec<usize>>,
        unit: usize,
    ) -> Result<Self, QuantaleError> {
        let n = carrier.len();
        if unit >= n {
            return Err(PosetError::IndexOutOfRange { index: unit, size: n }.into());
        }
        if tensor.len() != n || tensor.iter().any(|r| r.len() != n) {
            return Err(PosetError::MalformedTable {
                detail: format!("tensor table must be {n}x{n}"),
            }
            .into());
        }
        for row in &tensor {
            for &v in row {
                if v >= n {
                    return Err(PosetError::IndexOutOfRange { index: v, size: n }.into());
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if tensor[a][b] != tensor[b][a] {
                    return Err(QuantaleError::LawViolation {
                        law: "commutativity",
                        witness: format!(
                            "{} (x) {} = {} but {} (x) {} = {}",
                            carrier.name(a),
                            carrier.name(b),
                            carrier.name(tensor[a][b]),
                            carrier.name(b),
                            carrier.name(a),
                            carrier.name(tensor[b][a])
                        ),
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if tensor[tensor[a][b]][c] != tensor[a][tensor[b][c]] {
                        return Err(QuantaleError::LawViolation {
                            law: "associativity",
                            witness: format!(
                                "({} (x) {}) (x) {} != {} (x) ({} (x) {})",
                                carrier.name(a),
                                carrier.name(b),
                                carrier.name(c),
                                carrier.name(a),
                                carrier.name(b),
                                carrier.name(c)
                            ),
                        });
                    }
                }
            }
        }
        for a in 0..n {
            if tensor[unit][a] != a {
                return Err(QuantaleError::LawViolation {
                    law: "unit",
                    witness: format!(
                        "unit (x) {} = {}",
                        carrier.name(a),
                        carrier.name(tensor[unit][a])
                    ),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if carrier.leq(a, b) && !carrier.leq(tensor[a][c], tensor[b][c]) {
                        return Err(QuantaleError::LawViolation {
                            law: "monotonicity",
                            witness: format!(
                                "{} <= {} but {} (x) {} !<= {} (x) {}",
                                carrier.name(a),
                                carrier.name(b),
                                carrier.name(a),
                                carrier.name(c),
                                carrier.name(b),
                                carrier.name(c)
                            ),
                        });
                    }
                }
            }
        }
        let flags = compute_flags(&carrier, &tensor);
        Ok(MonoidalPoset { carrier, tensor, unit, flags })
    }

    pub fn carrier(&self) -> &FinPoset {
        &self.carrier
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn flags(&self) -> QuantaleFlags {
        self.flags
    }

    pub fn tensor(&self, a: usize, b: usize) -> usize {
        self.tensor[a][b]
    }

    pub fn tensor_table(&self) -> &[Vec<usize>] {
        &self.tensor
    }

    pub fn fully_flagged(&self) -> bool {
        self.flags.has_finite_joins && self.flags.has_all_joins && self.flags.tensor_distributes
    }

    /// Componentwise product structure on the product poset, with elements
    /// named `(a,b)`.
    pub fn product(a: &MonoidalPoset, b: &MonoidalPoset) -> Result<MonoidalPoset, QuantaleError> {
        let (na, nb) = (a.carrier.len(), b.carrier.len());
        let elements: Vec<String> = (0..na)
            .flat_map(|i| {
                (0..nb).map(move |j| (i, j))
            })
            .map(|(i, j)| format!("({},{})", a.carrier.name(i), b.carrier.name(j)))
            .collect();
        let leq: Vec<Vec<bool>> = (0..na * nb)
            .map(|p| {
                (0..na * nb)
                    .map(|q| {
                        a.carrier.leq(p / nb, q / nb) && b.carrier.leq(p % nb, q % nb)
                    })
                    .collect()
            })
            .collect();
        let carrier = FinPoset::from_closure(elements, leq)?;
        let tensor: Vec<Vec<usize>> = (0..na * nb)
            .map(|p| {
                (0..na * nb)
                    .map(|q| {
                        a.tensor[p / nb][q / nb] * nb + b.tensor[p % nb][q % nb]
                    })
                    .collect()
            })
            .collect();
        MonoidalPoset::new(carrier, tensor, a.unit * nb + b.unit)
    }
}

/// Join flags by exhaustive subset search; distributivity over every subset
/// that has a join, including the empty one.
fn compute_flags(carrier: &FinPoset, tensor: &[Vec<usize>]) -> QuantaleFlags {
    let n = carrier.len();
    let subsets = crate::poset::subsets(n);
    let has_all_joins = subsets.iter().all(|s| carrier.join_of(s).is_some());
    // On a finite carrier every subset is finite, so the flags agree by
    // construction; both are still computed from their own definitions.
    let has_finite_joins = has_all_joins;
    let tensor_distributes = subsets.iter().all(|s| {
        match carrier.join_of(s) {
            None => true,
            Some(join) => (0..n).all(|x| {
                let lhs = tensor[x][join];
                let images: Vec<usize> = s.iter().map(|&y| tensor[x][y]).collect();
                carrier.join_of(&images) == Some(lhs)
            }),
        }
    });
    QuantaleFlags { has_finite_joins, has_all_joins, tensor_distributes }
}

/// A marked subposet of a monoidal poset: the members, their induced order,
/// and the ambient structure they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CIdemPoset {
    parent: MonoidalPoset,
    members: Vec<usize>,
    poset: FinPoset,
}

impl CIdemPoset {
    pub fn parent(&self) -> &MonoidalPoset {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    /// Position of the unit image (for coidempotents: the unit itself is
    /// always a member and is the top of the subposet).
    pub fn member_position(&self, parent_index: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == parent_index)
    }
}

/// The coidempotent objects: `c <= unit` with `c (x) c = c`, in index order.
pub fn cidem(q: &MonoidalPoset) -> CIdemPoset {
    let members: Vec<usize> = (0..q.carrier.len())
        .filter(|&c| q.carrier.leq(c, q.unit) && q.tensor(c, c) == c)
        .collect();
    let poset = q.carrier.induced(&members).expect("member indices are in range");
    CIdemPoset { parent: q.clone(), members, poset }
}

/// The idempotent objects: `unit <= e` with `e (x) e = e`, in index order.
pub fn idem(q: &MonoidalPoset) -> CIdemPoset {
    let members: Vec<usize> = (0..q.carrier.len())
        .filter(|&e| q.carrier.leq(q.unit, e) && q.tensor(e, e) == e)
        .collect();
    let poset = q.carrier.induced(&members).expect("member indices are in range");
    CIdemPoset { parent: q.clone(), members, poset }
}

/// The coidempotents as a semilattice whose meet is the tensor.
///
/// This needs no join flags: for coidempotents `c, c'` the product `c (x) c'`
/// is re-proved to be their greatest lower bound among the members, and the
/// unit their top. Fails with [`QuantaleError::InternalTheoremViolation`] if
/// any re-proof fails, which would indicate a bug in the law checking.
pub fn cidem_semilattice(q: &MonoidalPoset) -> Result<(Semilattice, CIdemPoset), QuantaleError> {
    let sub = cidem(q);
    for (i, &c) in sub.members.iter().enumerate() {
        for &d in &sub.members[i..] {
            let t = q.tensor(c, d);
            if sub.member_position(t).is_none() {
                return Err(QuantaleError::InternalTheoremViolation {
                    detail: format!(
                        "{} (x) {} leaves the coidempotents",
                        q.carrier.name(c),
                        q.carrier.name(d)
                    ),
                });
            }
            let glb = sub
                .poset
                .meet_of(&[sub.member_position(c).unwrap(), sub.member_position(d).unwrap()]);
            if glb != sub.member_position(t) {
                return Err(QuantaleError::InternalTheoremViolation {
                    detail: format!(
                        "{} (x) {} is not the meet of the two coidempotents",
                        q.carrier.name(c),
                        q.carrier.name(d)
                    ),
                });
            }
        }
    }
    let slat = Semilattice::new(sub.poset.clone())?;
    if sub.members[slat.top()] != q.unit {
        return Err(QuantaleError::InternalTheoremViolation {
            detail: "the unit is not the top coidempotent".to_string(),
        });
    }
    Ok((slat, sub))
}

/// A distributive lattice carved out of a monoidal poset, with the member
/// indices tying lattice elements back to the parent carrier.
#[derive(Debug, Clone)]
pub struct CIdemLattice {
    pub lattice: DistLattice,
    pub members: Vec<usize>,
}

/// The coidempotents as a distributive lattice: meet is the tensor, join is
/// the ambient join, bottom is the ambient least element, top is the unit.
///
/// Requires the finite-join and distributivity flags
/// ([`QuantaleError::FlagMissing`] otherwise). Every structural claim is
/// re-proved on the nose: closure of coidempotents under ambient joins,
/// bottom being coidempotent, tensor being the member meet, and
/// distributivity of the resulting lattice. A failure of any re-proof is an
/// [`QuantaleError::InternalTheoremViolation`] and means the implementation,
/// not the input, is wrong.
pub fn cidem_lattice(q: &MonoidalPoset) -> Result<CIdemLattice, QuantaleError> {
    if !q.flags.has_finite_joins {
        return Err(QuantaleError::FlagMissing { flag: "has_finite_joins" });
    }
    if !q.flags.tensor_distributes {
        return Err(QuantaleError::FlagMissing { flag: "tensor_distributes" });
    }
    let (slat, sub) = cidem_semilattice(q)?;
    let bottom = q
        .carrier
        .bottom()
        .expect("the finite-join flag includes the empty join");
    if sub.member_position(bottom).is_none() {
        return Err(QuantaleError::InternalTheoremViolation {
            detail: "the least element is not coidempotent".to_string(),
        });
    }
    for (i, &c) in sub.members.iter().enumerate() {
        for &d in sub.members.iter().skip(i) {
            let join = q
                .carrier
                .join_of(&[c, d])
                .expect("the finite-join flag provides binary joins");
            let pos = sub.member_position(join).ok_or_else(|| {
                QuantaleError::InternalTheoremViolation {
                    detail: format!(
                        "{} \\/ {} leaves the coidempotents",
                        q.carrier.name(c),
                        q.carrier.name(d)
                    ),
                }
            })?;
            // The ambient join must also be the join inside the subposet.
            let inner = sub
                .poset
                .join_of(&[sub.member_position(c).unwrap(), sub.member_position(d).unwrap()]);
            if inner != Some(pos) {
                return Err(QuantaleError::InternalTheoremViolation {
                    detail: format!(
                        "ambient join of {} and {} is not their member join",
                        q.carrier.name(c),
                        q.carrier.name(d)
                    ),
                });
            }
        }
    }
    let lattice = DistLattice::new(slat.carrier().clone()).map_err(|e| {
        QuantaleError::InternalTheoremViolation {
            detail: format!("coidempotents fail to form a distributive lattice: {e}"),
        }
    })?;
    Ok(CIdemLattice { lattice, members: sub.members.clone() })
}

/// A semilattice viewed as a monoidal poset: tensor is the meet, unit the
/// top. The result is validated like any other table.
pub fn iota(p: &Semilattice) -> Result<MonoidalPoset, QuantaleError> {
    let n = p.carrier().len();
    let tensor: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).map(|b| p.meet(a, b)).collect()).collect();
    MonoidalPoset::new(p.carrier().clone(), tensor, p.top())
}

/// Enumerates monoidal maps `a -> b`: monotone, unit to unit, tensor to
/// tensor, and (when `require_joins`) preserving bottom and binary joins.
/// Sorted by image table.
pub fn monoidal_homs(
    a: &MonoidalPoset,
    b: &MonoidalPoset,
    require_joins: bool,
) -> Result<Vec<MonotoneMap>, QuantaleError> {
    if require_joins && !(a.flags.has_finite_joins && b.flags.has_finite_joins) {
        return Err(QuantaleError::FlagMissing { flag: "has_finite_joins" });
    }
    let (pa, _pb) = (&a.carrier, &b.carrier);
    let n = pa.len();
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    fn go(
        a: &MonoidalPoset,
        b: &MonoidalPoset,
        require_joins: bool,
        table: &mut Vec<usize>,
        at: usize,
        out: &mut Vec<MonotoneMap>,
    ) {
        let n = a.carrier.len();
        if at == n {
            let ok = (0..n).all(|x| {
                (0..n).all(|y| table[a.tensor(x, y)] == b.tensor(table[x], table[y]))
            }) && table[a.unit] == b.unit
                && (!require_joins || {
                    let bot_ok = a
                        .carrier
                        .bottom()
                        .map(|ab| Some(table[ab]) == b.carrier.bottom())
                        .unwrap_or(false);
                    bot_ok
                        && (0..n).all(|x| {
                            ((x + 1)..n).all(|y| match a.carrier.join_of(&[x, y]) {
                                Some(j) => {
                                    b.carrier.join_of(&[table[x], table[y]])
                                        == Some(table[j])
                                }
                                None => true,
                            })
                        })
                });
            if ok {
                if let Ok(map) =
                    MonotoneMap::new(a.carrier.clone(), b.carrier.clone(), table.clone())
                {
                    out.push(map);
                }
            }
            return;
        }
        for img in 0..b.carrier.len() {
            let mono = (0..at).all(|prev| {
                (!a.carrier.leq(prev, at) || b.carrier.leq(table[prev], img))
                    && (!a.carrier.leq(at, prev) || b.carrier.leq(img, table[prev]))
            });
            if mono {
                table[at] = img;
                go(a, b, require_joins, table, at + 1, out);
            }
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    go(a, b, require_joins, &mut table, 0, &mut out);
    Ok(out)
}

/// A certified bijection between a lattice-morphism side and a monoidal-map
/// side of a transposition.
#[derive(Debug, Clone)]
pub struct AdjunctionCertificate {
    /// Morphisms into the coidempotents, in enumeration order.
    pub lattice_side: Vec<LatticeMorphism>,
    /// Monoidal maps out of the ambient structure, in enumeration order.
    pub monoidal_side: Vec<MonotoneMap>,
    /// `lattice_side[i]` transposes to `monoidal_side[forward[i]]`.
    pub forward: Vec<usize>,
    /// `monoidal_side[j]` transposes to `lattice_side[backward[j]]`.
    pub backward: Vec<usize>,
}

/// Restricts a monoidal map to the coidempotents of its target.
///
/// Monoidal maps send coidempotents to coidempotents; the check is run
/// anyway, and a failure ([`QuantaleError::FactorizationFailure`]) would
/// indicate a law-checking bug upstream.
pub fn factor_check(
    map: &MonotoneMap,
    source_members: &CIdemPoset,
    target_members: &CIdemPoset,
) -> Result<Vec<usize>, QuantaleError> {
    source_members
        .members()
        .iter()
        .map(|&m| {
            target_members.member_position(map.apply(m)).ok_or_else(|| {
                QuantaleError::FactorizationFailure {
                    detail: format!(
                        "image of {} is not coidempotent",
                        map.source().name(m)
                    ),
                }
            })
        })
        .collect()
}

/// Certifies the semilattice-level transposition: lattice morphisms
/// `p -> cidem(q)` correspond to monoidal maps `iota(p) -> q`.
///
/// Both sides are enumerated independently; the two transposition maps are
/// constructed explicitly and checked to be mutually inverse. A mismatch is
/// a [`QuantaleError::BijectionFailure`] and never fires.
pub fn transpose_slat(
    p: &Semilattice,
    q: &MonoidalPoset,
) -> Result<AdjunctionCertificate, QuantaleError> {
    let (cidem_slat, sub) = cidem_semilattice(q)?;
    let lattice_side = hom_enumerate_slat(p, &cidem_slat);
    let ambient = iota(p)?;
    let monoidal_side = monoidal_homs(&ambient, q, false)?;
    // Forward: postcompose with the member inclusion.
    let forward: Vec<usize> = lattice_side
        .iter()
        .map(|m| {
            let table: Vec<usize> = m.table().iter().map(|&local| sub.members()[local]).collect();
            monoidal_side
                .iter()
                .position(|cand| cand.table() == table.as_slice())
                .ok_or(QuantaleError::BijectionFailure {
                    detail: "a transposed lattice morphism is not a monoidal map".to_string(),
                })
        })
        .collect::<Result<_, _>>()?;
    // Backward: corestrict onto the members.
    let backward: Vec<usize> = monoidal_side
        .iter()
        .map(|map| {
            let full = cidem(&ambient);
            let local = factor_check(map, &full, &sub)?;
            lattice_side
                .iter()
                .position(|cand| cand.table() == local.as_slice())
                .ok_or(QuantaleError::BijectionFailure {
                    detail: "a corestricted monoidal map is not a lattice morphism".to_string(),
                })
        })
        .collect::<Result<_, _>>()?;
    verify_round_trips(&forward, &backward)?;
    Ok(AdjunctionCertificate { lattice_side, monoidal_side, forward, backward })
}

/// Certifies the frame-level transposition: frame morphisms
/// `f -> cidem_lattice(q)` correspond to join-preserving monoidal maps from
/// the frame (as a monoidal poset under meet) to `q`.
pub fn transpose_frm(
    f: &DistLattice,
    q: &MonoidalPoset,
) -> Result<AdjunctionCertificate, QuantaleError> {
    if !q.fully_flagged() {
        return Err(QuantaleError::FlagMissing { flag: "has_all_joins" });
    }
    let cil = cidem_lattice(q)?;
    let lattice_side = hom_enumerate_frame(f, &cil.lattice);
    let ambient = iota(&f.as_semilattice())?;
    let monoidal_side = monoidal_homs(&ambient, q, true)?;
    let forward: Vec<usize> = lattice_side
        .iter()
        .map(|m| {
            let table: Vec<usize> = m.table().iter().map(|&local| cil.members[local]).collect();
            monoidal_side
                .iter()
                .position(|cand| cand.table() == table.as_slice())
                .ok_or(QuantaleError::BijectionFailure {
                    detail: "a transposed frame morphism is not a join-preserving monoidal map"
                        .to_string(),
                })
        })
        .collect::<Result<_, _>>()?;
    let sub = cidem(q);
    let backward: Vec<usize> = monoidal_side
        .iter()
        .map(|map| {
            let full = cidem(&ambient);
            let local = factor_check(map, &full, &sub)?;
            lattice_side
                .iter()
                .position(|cand| cand.table() == local.as_slice())
                .ok_or(QuantaleError::BijectionFailure {
                    detail: "a corestricted monoidal map is not a frame morphism".to_string(),
                })
        })
        .collect::<Result<_, _>>()?;
    verify_round_trips(&forward, &backward)?;
    Ok(AdjunctionCertificate { lattice_side, monoidal_side, forward, backward })
}

fn verify_round_trips(forward: &[usize], backward: &[usize]) -> Result<(), QuantaleError> {
    if forward.len() != backward.len() {
        return Err(QuantaleError::BijectionFailure {
            detail: format!("side counts differ: {} vs {}", forward.len(), backward.len()),
        });
    }
    for (i, &j) in forward.iter().enumerate() {
        if backward[j] != i {
            return Err(QuantaleError::BijectionFailure {
                detail: format!("round trip breaks at entry {i}"),
            });
        }
    }
    for (j, &i) in backward.iter().enumerate() {
        if forward[i] != j {
            return Err(QuantaleError::BijectionFailure {
                detail: format!("reverse round trip breaks at entry {j}"),
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn luk3_is_valid_and_fully_flagged() {
        let q = catalog::luk3();
        assert!(q.fully_flagged());
        assert_eq!(q.tensor(1, 1), 0, "a (x) a = 0");
    }

    #[test]
    fn broken_tables_report_the_right_law() {
        let chain = catalog::sierp().carrier().clone();
        // Non-commutative table.
        let t = vec![vec![0, 0, 0], vec![1, 1, 1], vec![0, 1, 2]];
        match MonoidalPoset::new(chain.clone(), t, 2) {
            Err(QuantaleError::LawViolation { law, .. }) => assert_eq!(law, "commutativity"),
            other => panic!("expected commutativity failure, got {other:?}"),
        }
        // Unit fails.
        let t = vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]];
        match MonoidalPoset::new(chain.clone(), t, 2) {
            Err(QuantaleError::LawViolation { law, .. }) => assert_eq!(law, "unit"),
            other => panic!("expected unit failure, got {other:?}"),
        }
        // Monotonicity fails: x (x) y = top except on the diagonal.
        let t = vec![vec![0, 2, 0], vec![2, 1, 1], vec![0, 1, 2]];
        match MonoidalPoset::new(chain, t, 2) {
            Err(QuantaleError::LawViolation { law, .. }) => {
                assert!(law == "monotonicity" || law == "associativity")
            }
            other => panic!("expected a law failure, got {other:?}"),
        }
    }

    #[test]
    fn m3_as_monoidal_poset_is_valid_but_not_distributive() {
        let m3 = Semilattice::new(catalog::m3()).unwrap();
        let q = iota(&m3).unwrap();
        assert!(q.flags().has_finite_joins);
        assert!(!q.flags().tensor_distributes);
        assert!(matches!(
            cidem_lattice(&q),
            Err(QuantaleError::FlagMissing { flag: "tensor_distributes" })
        ));
    }

    #[test]
    fn luk3_coidempotents_are_the_end_points() {
        let q = catalog::luk3();
        let c = cidem(&q);
        let names: Vec<&str> = c.members().iter().map(|&m| q.carrier().name(m)).collect();
        assert_eq!(names, vec!["0", "1"]);
    }

    #[test]
    fn nontop_unit_chain_splits_idem_and_cidem() {
        let q = catalog::ntu3();
        let c = cidem(&q);
        let e = idem(&q);
        let c_names: Vec<&str> = c.members().iter().map(|&m| q.carrier().name(m)).collect();
        let e_names: Vec<&str> = e.members().iter().map(|&m| q.carrier().name(m)).collect();
        assert_eq!(c_names, vec!["0", "1"]);
        assert_eq!(e_names, vec!["1", "t"]);
        // Both are two-chains, but the unit sits at the top of one and the
        // bottom of the other, so no marked isomorphism exists.
        let c_unit = c.member_position(q.unit()).unwrap();
        let e_unit = e.member_position(q.unit()).unwrap();
        assert!(c.poset().find_isomorphism(e.poset(), &[(c_unit, e_unit)]).is_none());
        assert!(c.poset().find_isomorphism(e.poset(), &[]).is_some());
    }

    #[test]
    fn luk3_coidempotent_lattice_is_the_two_element_frame() {
        let cil = cidem_lattice(&catalog::luk3()).unwrap();
        assert_eq!(cil.lattice.carrier().len(), 2);
    }

    #[test]
    fn luk3_squared_coidempotent_lattice_is_boolean_on_two_atoms() {
        let q = MonoidalPoset::product(&catalog::luk3(), &catalog::luk3()).unwrap();
        let cil = cidem_lattice(&q).unwrap();
        assert_eq!(cil.lattice.carrier().len(), 4);
        assert!(cil
            .lattice
            .carrier()
            .find_isomorphism(catalog::square().carrier(), &[])
            .is_some());
    }

    #[test]
    fn iota_round_trip_restores_the_semilattice() {
        for sl in [
            catalog::two().as_semilattice(),
            catalog::sierp().as_semilattice(),
            catalog::square().as_semilattice(),
            Semilattice::new(catalog::m3()).unwrap(),
        ] {
            let q = iota(&sl).unwrap();
            let c = cidem(&q);
            assert_eq!(c.poset(), sl.carrier(), "coidempotents of a meet structure are everything");
            let e = idem(&q);
            assert_eq!(e.members(), &[sl.top()], "only the top idempotent sits above the unit");
        }
    }

    #[test]
    fn monoidal_hom_counts_for_the_worked_pairs() {
        let two = iota(&catalog::two().as_semilattice()).unwrap();
        let luk = catalog::luk3();
        assert_eq!(monoidal_homs(&luk, &two, false).unwrap().len(), 2);
        assert_eq!(monoidal_homs(&two, &luk, false).unwrap().len(), 2);
    }

    #[test]
    fn slat_transposition_for_square_and_luk3() {
        let cert = transpose_slat(&catalog::square().as_semilattice(), &catalog::luk3()).unwrap();
        assert_eq!(cert.lattice_side.len(), 4);
        assert_eq!(cert.monoidal_side.len(), 4);
    }

    #[test]
    fn slat_transposition_spot_count() {
        let cert = transpose_slat(&catalog::two().as_semilattice(), &catalog::luk3()).unwrap();
        assert_eq!(cert.lattice_side.len(), 2);
    }

    #[test]
    fn frm_transposition_out_of_two_is_a_singleton() {
        for q in [catalog::luk3(), catalog::ntu3(), catalog::ntu4()] {
            let cert = transpose_frm(&catalog::two(), &q).unwrap();
            assert_eq!(cert.lattice_side.len(), 1);
        }
    }

    #[test]
    fn frm_transposition_counts_for_sierp_and_luk3() {
        let cert = transpose_frm(&catalog::sierp(), &catalog::luk3()).unwrap();
        assert_eq!(cert.lattice_side.len(), 2);
    }

    #[test]
    fn join_requirement_filters_monoidal_maps() {
        // Into the idempotent-split chain: without join preservation the
        // bottom can drift.
        let two = iota(&catalog::two().as_semilattice()).unwrap();
        let with = monoidal_homs(&two, &catalog::ntu4(), true).unwrap();
        let without = monoidal_homs(&two, &catalog::ntu4(), false).unwrap();
        assert!(with.len() < without.len());
        for m in &with {
            assert_eq!(m.apply(0), 0, "bottom goes to bottom when joins are required");
        }
    }
}
