//! Semilattices and finite distributive lattices, with the operations that
//! make "finite frame" an executable notion.
//!
//! On a finite carrier a meet-semilattice with top is automatically a
//! complete lattice (joins are meets of upper-bound sets), and "frame" and
//! "distributive lattice" coincide because all joins are finite. The
//! classifier below still distinguishes the three levels of structure by
//! what it can verify: meets, then joins plus distributivity. Everything
//! downstream (points, spatial reconstruction, the irreducible-element
//! representation, pushouts) treats theorems as checks that run.

mod pushout;

pub use pushout::{frame_pushout, universal_property_against, PushoutLimits, PushoutReport};

use thiserror::Error;

use crate::poset::{FinPoset, MonotoneMap, PosetError};

/// Errors raised by lattice validation and the lattice-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    /// The carrier fails to be a semilattice / distributive lattice.
    #[error("carrier is not {required}: {witness}")]
    NotLattice { required: &'static str, witness: String },
    /// A morphism breaks one of the laws of its kind.
    #[error("law violation ({law}): {witness}")]
    LawViolation { law: &'static str, witness: String },
    /// The input lattice is not distributive where distributivity is needed.
    #[error("not distributive: {witness}")]
    NotDistributive { witness: String },
    /// A construction would exceed its configured size bound.
    #[error("size limit exceeded: {detail}")]
    SizeLimitExceeded { detail: String },
}

/// A finite meet-semilattice: every finite subset of the carrier, including
/// the empty one, has a greatest lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    carrier: FinPoset,
    top: usize,
}

/// A finite distributive lattice: all finite meets and joins, with binary
/// meets distributing over binary joins. Serves as the finite frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistLattice {
    carrier: FinPoset,
    top: usize,
    bottom: usize,
}

/// What a poset turned out to be, with a witness for the first failure of
/// the next-stronger structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeClass {
    /// Some finite meet is missing; the witness names the subset.
    NotSemilattice { witness: String },
    /// All meets exist but the carrier is not a distributive lattice.
    Semilattice { obstruction: DistributiveObstruction },
    /// All meets, all joins, and distributivity.
    Distributive,
}

/// Why a semilattice fails to be a distributive lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributiveObstruction {
    /// No least element, so the empty join is missing.
    MissingBottom,
    /// A binary join is missing.
    MissingJoin { left: usize, right: usize },
    /// Joins exist but `x /\ (a \/ b) != (x /\ a) \/ (x /\ b)`.
    Distributivity { x: usize, pair: (usize, usize), lhs: usize, rhs: usize },
}

/// Classifies a poset by the strongest lattice structure it carries.
///
/// Meets are checked for every subset of the carrier, so the result is a
/// certificate, not a heuristic. Distributivity only needs the binary case:
/// larger joins reduce to iterated binary ones on a finite carrier.
pub fn classify_lattice(p: &FinPoset) -> LatticeClass {
    let n = p.len();
    if p.top().is_none() {
        return LatticeClass::NotSemilattice { witness: "no top element (empty meet)".to_string() };
    }
    for subset in crate::poset::subsets(n) {
        if p.meet_of(&subset).is_none() {
            let names: Vec<&str> = subset.iter().map(|&i| p.name(i)).collect();
            return LatticeClass::NotSemilattice {
                witness: format!("no meet of {{{}}}", names.join(",")),
            };
        }
    }
    if p.bottom().is_none() {
        return LatticeClass::Semilattice { obstruction: DistributiveObstruction::MissingBottom };
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if p.join_of(&[a, b]).is_none() {
                return LatticeClass::Semilattice {
                    obstruction: DistributiveObstruction::MissingJoin { left: a, right: b },
                };
            }
        }
    }
    for x in 0..n {
        for a in 0..n {
            for b in (a + 1)..n {
                let join = p.join_of(&[a, b]).expect("joins checked above");
                let lhs = p.meet_of(&[x, join]).expect("meets checked above");
                let xa = p.meet_of(&[x, a]).expect("meets checked above");
                let xb = p.meet_of(&[x, b]).expect("meets checked above");
                let rhs = p.join_of(&[xa, xb]).expect("joins checked above");
                if lhs != rhs {
                    return LatticeClass::Semilattice {
                        obstruction: DistributiveObstruction::Distributivity {
                            x,
                            pair: (a, b),
                            lhs,
                            rhs,
                        },
                    };
                }
            }
        }
    }
    LatticeClass::Distributive
}

impl Semilattice {
    pub fn new(carrier: FinPoset) -> Result<Self, LatticeError> {
        match classify_lattice(&carrier) {
            LatticeClass::NotSemilattice { witness } => {
                Err(LatticeError::NotLattice { required: "a semilattice", witness })
            }
            _ => {
                let top = carrier.top().expect("semilattices have a top");
                Ok(Semilattice { carrier, top })
            }
        }
    }

    pub fn carrier(&self) -> &FinPoset {
        &self.carrier
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.carrier.meet_of(&[a, b]).expect("semilattices have binary meets")
    }
}

impl DistLattice {
    pub fn new(carrier: FinPoset) -> Result<Self, LatticeError> {
        match classify_lattice(&carrier) {
            LatticeClass::Distributive => {
                let top = carrier.top().expect("lattices have a top");
                let bottom = carrier.bottom().expect("lattices have a bottom");
                Ok(DistLattice { carrier, top, bottom })
            }
            LatticeClass::NotSemilattice { witness } => {
                Err(LatticeError::NotLattice { required: "a distributive lattice", witness })
            }
            LatticeClass::Semilattice { obstruction } => Err(LatticeError::NotDistributive {
                witness: describe_obstruction(&carrier, &obstruction),
            }),
        }
    }

    pub fn carrier(&self) -> &FinPoset {
        &self.carrier
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.carrier.meet_of(&[a, b]).expect("lattices have binary meets")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.carrier.join_of(&[a, b]).expect("lattices have binary joins")
    }

    pub fn join_of(&self, subset: &[usize]) -> usize {
        self.carrier.join_of(subset).expect("lattices have all finite joins")
    }

    pub fn meet_of(&self, subset: &[usize]) -> usize {
        self.carrier.meet_of(subset).expect("lattices have all finite meets")
    }

    pub fn as_semilattice(&self) -> Semilattice {
        Semilattice { carrier: self.carrier.clone(), top: self.top }
    }
}

pub fn describe_obstruction(p: &FinPoset, o: &DistributiveObstruction) -> String {
    match o {
        DistributiveObstruction::MissingBottom => "no bottom element".to_string(),
        DistributiveObstruction::MissingJoin { left, right } => {
            format!("no join of {} and {}", p.name(*left), p.name(*right))
        }
        DistributiveObstruction::Distributivity { x, pair, lhs, rhs } => format!(
            "x = {}, S = {{{},{}}}: x /\\ \\/S = {} but \\/(x /\\ s) = {}",
            p.name(*x),
            p.name(pair.0),
            p.name(pair.1),
            p.name(*lhs),
            p.name(*rhs),
        ),
    }
}

/// Which laws a lattice morphism is required to preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    /// Finite meets, including the empty one (the top).
    Semilattice,
    /// Finite meets and finite joins, including top and bottom.
    Frame,
}

/// A structure-preserving map between lattice carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMorphism {
    map: MonotoneMap,
    kind: MorphismKind,
}

impl LatticeMorphism {
    /// Checks the laws of `kind` for the underlying monotone map. The
    /// carriers must support the structure (meets for semilattice kind,
    /// meets and joins for frame kind); law checks use bounds computed in
    /// the carriers directly.
    pub fn new(map: MonotoneMap, kind: MorphismKind) -> Result<Self, LatticeError> {
        let src = map.source();
        let tgt = map.target();
        let src_top = src.top().ok_or(LatticeError::NotLattice {
            required: "a semilattice",
            witness: "source has no top".to_string(),
        })?;
        let tgt_top = tgt.top().ok_or(LatticeError::NotLattice {
            required: "a semilattice",
            witness: "target has no top".to_string(),
        })?;
        if map.apply(src_top) != tgt_top {
            return Err(LatticeError::LawViolation {
                law: "top",
                witness: format!(
                    "{} maps to {} instead of {}",
                    src.name(src_top),
                    tgt.name(map.apply(src_top)),
                    tgt.name(tgt_top)
                ),
            });
        }
        for a in 0..src.len() {
            for b in (a + 1)..src.len() {
                let meet = src.meet_of(&[a, b]).ok_or_else(|| LatticeError::NotLattice {
                    required: "a semilattice",
                    witness: format!("no meet of {} and {}", src.name(a), src.name(b)),
                })?;
                let want = tgt.meet_of(&[map.apply(a), map.apply(b)]).ok_or_else(|| {
                    LatticeError::NotLattice {
                        required: "a semilattice",
                        witness: "target meet missing".to_string(),
                    }
                })?;
                if map.apply(meet) != want {
                    return Err(LatticeError::LawViolation {
                        law: "meet",
                        witness: format!(
                            "{} /\\ {} maps to {} but images meet at {}",
                            src.name(a),
                            src.name(b),
                            tgt.name(map.apply(meet)),
                            tgt.name(want)
                        ),
                    });
                }
            }
        }
        if kind == MorphismKind::Frame {
            let src_bot = src.bottom().ok_or(LatticeError::NotLattice {
                required: "a lattice",
                witness: "source has no bottom".to_string(),
            })?;
            let tgt_bot = tgt.bottom().ok_or(LatticeError::NotLattice {
                required: "a lattice",
                witness: "target has no bottom".to_string(),
            })?;
            if map.apply(src_bot) != tgt_bot {
                return Err(LatticeError::LawViolation {
                    law: "bottom",
                    witness: format!(
                        "{} maps to {} instead of {}",
                        src.name(src_bot),
                        tgt.name(map.apply(src_bot)),
                        tgt.name(tgt_bot)
                    ),
                });
            }
            for a in 0..src.len() {
                for b in (a + 1)..src.len() {
                    let join = src.join_of(&[a, b]).ok_or_else(|| LatticeError::NotLattice {
                        required: "a lattice",
                        witness: format!("no join of {} and {}", src.name(a), src.name(b)),
                    })?;
                    let want = tgt.join_of(&[map.apply(a), map.apply(b)]).ok_or_else(|| {
                        LatticeError::NotLattice {
                            required: "a lattice",
                            witness: "target join missing".to_string(),
                        }
                    })?;
                    if map.apply(join) != want {
                        return Err(LatticeError::LawViolation {
                            law: "join",
                            witness: format!(
                                "{} \\/ {} maps to {} but images join at {}",
                                src.name(a),
                                src.name(b),
                                tgt.name(map.apply(join)),
                                tgt.name(want)
                            ),
                        });
                    }
                }
            }
        }
        Ok(LatticeMorphism { map, kind })
    }

    pub fn map(&self) -> &MonotoneMap {
        &self.map
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map.apply(i)
    }

    pub fn table(&self) -> &[usize] {
        self.map.table()
    }

    pub fn then(&self, other: &LatticeMorphism) -> Result<LatticeMorphism, LatticeError> {
        let kind = if self.kind == MorphismKind::Frame && other.kind == MorphismKind::Frame {
            MorphismKind::Frame
        } else {
            MorphismKind::Semilattice
        };
        LatticeMorphism::new(self.map.then(&other.map)?, kind)
    }
}

/// Enumerates all semilattice morphisms between the carriers, sorted by
/// image table.
pub fn hom_enumerate_slat(src: &Semilattice, tgt: &Semilattice) -> Vec<LatticeMorphism> {
    enumerate_homs(src.carrier(), tgt.carrier(), MorphismKind::Semilattice)
}

/// Enumerates all frame morphisms between the lattices, sorted by image
/// table.
pub fn hom_enumerate_frame(src: &DistLattice, tgt: &DistLattice) -> Vec<LatticeMorphism> {
    enumerate_homs(src.carrier(), tgt.carrier(), MorphismKind::Frame)
}

/// Backtracking over image tables with monotonicity pruning; full law check
/// at the leaves. Output order is lexicographic in the table.
fn enumerate_homs(src: &FinPoset, tgt: &FinPoset, kind: MorphismKind) -> Vec<LatticeMorphism> {
    let n = src.len();
    let mut table = vec![0usize; n];
    let mut out = Vec::new();
    fn go(
        src: &FinPoset,
        tgt: &FinPoset,
        kind: MorphismKind,
        table: &mut Vec<usize>,
        at: usize,
        out: &mut Vec<LatticeMorphism>,
    ) {
        if at == src.len() {
            if let Ok(map) = MonotoneMap::new(src.clone(), tgt.clone(), table.clone()) {
                if let Ok(m) = LatticeMorphism::new(map, kind) {
                    out.push(m);
                }
            }
            return;
        }
        for img in 0..tgt.len() {
            let ok = (0..at).all(|prev| {
                (!src.leq(prev, at) || tgt.leq(table[prev], img))
                    && (!src.leq(at, prev) || tgt.leq(img, table[prev]))
            });
            if ok {
                table[at] = img;
                go(src, tgt, kind, table, at + 1, out);
            }
        }
    }
    if n == 0 {
        return Vec::new();
    }
    go(src, tgt, kind, &mut table, 0, &mut out);
    out
}

/// Frame morphisms from the lattice to the two-element frame. These are the
/// points of the corresponding finite space.
pub fn points(f: &DistLattice) -> Vec<LatticeMorphism> {
    hom_enumerate_frame(f, &crate::catalog::two())
}

/// The outcome of rebuilding a lattice from its points.
#[derive(Debug, Clone)]
pub struct SpatialReport {
    /// The points, in enumeration order.
    pub points: Vec<LatticeMorphism>,
    /// The lattice of point sets of the form `{p : p(U) = top}`, closed
    /// under unions and intersections, ordered by inclusion.
    pub opens: DistLattice,
    /// The comparison morphism from the input into `opens`.
    pub comparison: LatticeMorphism,
    /// Whether the comparison is an isomorphism.
    pub iso: bool,
}

/// Rebuilds a lattice from its points and compares.
///
/// Every finite distributive lattice is determined by its points; running
/// this is the executable form of that statement, and `iso` reports the
/// verdict rather than assuming it.
pub fn spatial_reconstruction(f: &DistLattice) -> SpatialReport {
    let pts = points(f);
    let n = f.carrier().len();
    let extent = |u: usize| -> Vec<usize> {
        pts.iter()
            .enumerate()
            .filter(|(_, p)| p.apply(u) == 1)
            .map(|(i, _)| i)
            .collect()
    };
    // Closure of the extents under union and intersection.
    let mut opens: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        let e = extent(u);
        if !opens.contains(&e) {
            opens.push(e);
        }
    }
    loop {
        let mut added = false;
        let current = opens.clone();
        for a in &current {
            for b in &current {
                let mut union: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                union.sort_unstable();
                union.dedup();
                let inter: Vec<usize> = a.iter().filter(|x| b.contains(x)).copied().collect();
                for c in [union, inter] {
                    if !opens.contains(&c) {
                        opens.push(c);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    opens.sort();
    let names: Vec<String> = opens
        .iter()
        .map(|o| {
            let inner: Vec<String> = o.iter().map(|i| format!("p{i}")).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    let leq: Vec<Vec<bool>> = opens
        .iter()
        .map(|a| opens.iter().map(|b| a.iter().all(|x| b.contains(x))).collect())
        .collect();
    let carrier = FinPoset::from_closure(names, leq).expect("inclusion of point sets is a poset");
    let opens_lattice = DistLattice::new(carrier)
        .expect("point-set families closed under union and intersection are distributive");
    let table: Vec<usize> = (0..n)
        .map(|u| opens.iter().position(|o| *o == extent(u)).expect("extents are in the closure"))
        .collect();
    let comparison = MonotoneMap::new(f.carrier().clone(), opens_lattice.carrier().clone(), table)
        .ok()
        .and_then(|m| LatticeMorphism::new(m, MorphismKind::Frame).ok());
    match comparison {
        Some(comparison) => {
            let iso = is_lattice_iso(&comparison);
            SpatialReport { points: pts, opens: opens_lattice, comparison, iso }
        }
        None => {
            // The comparison map always exists as a function; if it fails the
            // frame laws the reconstruction is certainly not an isomorphism.
            // Rebuild it as a bare monotone map for the report.
            let table: Vec<usize> = (0..n)
                .map(|u| opens.iter().position(|o| *o == extent(u)).unwrap())
                .collect();
            let map = MonotoneMap::new(f.carrier().clone(), opens_lattice.carrier().clone(), table)
                .expect("extent assignment is monotone");
            SpatialReport {
                points: pts,
                opens: opens_lattice,
                comparison: LatticeMorphism { map, kind: MorphismKind::Frame },
                iso: false,
            }
        }
    }
}

/// Whether a frame morphism is an isomorphism: bijective on carriers with
/// the inverse again a frame morphism. The inverse is built explicitly.
pub fn is_lattice_iso(m: &LatticeMorphism) -> bool {
    let src = m.map().source();
    let tgt = m.map().target();
    if src.len() != tgt.len() {
        return false;
    }
    let mut inverse = vec![usize::MAX; tgt.len()];
    for i in 0..src.len() {
        let img = m.apply(i);
        if inverse[img] != usize::MAX {
            return false;
        }
        inverse[img] = i;
    }
    let back = match MonotoneMap::new(tgt.clone(), src.clone(), inverse) {
        Ok(b) => b,
        Err(_) => return false,
    };
    LatticeMorphism::new(back, m.kind()).is_ok()
}

/// The irreducible-element representation of a distributive lattice.
#[derive(Debug, Clone)]
pub struct BirkhoffReport {
    /// Indices of the join-irreducible elements in the input lattice.
    pub irreducible_indices: Vec<usize>,
    /// The induced poset of join-irreducibles.
    pub irreducibles: FinPoset,
    /// The downset lattice of the irreducible poset.
    pub down: DistLattice,
    /// Isomorphism input -> down, sending `x` to its set of irreducibles
    /// below `x`.
    pub to_down: LatticeMorphism,
    /// Inverse isomorphism, sending a downset to its join.
    pub from_down: LatticeMorphism,
}

/// Computes the poset of join-irreducibles and certifies the isomorphism
/// with its downset lattice by exhibiting both directions and checking the
/// round trips.
pub fn birkhoff(f: &DistLattice) -> Result<BirkhoffReport, LatticeError> {
    let p = f.carrier();
    let irreducible_indices: Vec<usize> = (0..p.len())
        .filter(|&j| {
            let strictly_below: Vec<usize> =
                (0..p.len()).filter(|&x| x != j && p.leq(x, j)).collect();
            p.join_of(&strictly_below) != Some(j)
        })
        .collect();
    let irreducibles = p.induced(&irreducible_indices)?;
    let down = crate::enumerate::downset_lattice(&irreducibles);
    let downsets = irreducibles.downsets();
    let to_table: Vec<usize> = (0..p.len())
        .map(|x| {
            let below: Vec<usize> = irreducible_indices
                .iter()
                .enumerate()
                .filter(|(_, &j)| p.leq(j, x))
                .map(|(local, _)| local)
                .collect();
            downsets
                .iter()
                .position(|d| *d == below)
                .expect("irreducibles below an element form a downset")
        })
        .collect();
    let from_table: Vec<usize> = downsets
        .iter()
        .map(|d| {
            let members: Vec<usize> = d.iter().map(|&local| irreducible_indices[local]).collect();
            p.join_of(&members).expect("lattices have all finite joins")
        })
        .collect();
    let to_down = LatticeMorphism::new(
        MonotoneMap::new(p.clone(), down.carrier().clone(), to_table)?,
        MorphismKind::Frame,
    )?;
    let from_down = LatticeMorphism::new(
        MonotoneMap::new(down.carrier().clone(), p.clone(), from_table)?,
        MorphismKind::Frame,
    )?;
    let round_a = to_down.then(&from_down)?;
    let round_b = from_down.then(&to_down)?;
    if round_a.table() != (0..p.len()).collect::<Vec<_>>()
        || round_b.table() != (0..down.carrier().len()).collect::<Vec<_>>()
    {
        return Err(LatticeError::NotDistributive {
            witness: "representation maps fail to invert each other".to_string(),
        });
    }
    Ok(BirkhoffReport { irreducible_indices, irreducibles, down, to_down, from_down })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn square_classifies_distributive() {
        assert_eq!(classify_lattice(catalog::square().carrier()), LatticeClass::Distributive);
    }

    #[test]
    fn antichain_is_not_a_semilattice() {
        let p = FinPoset::new(vec!["a", "b"], &[] as &[(&str, &str)]).unwrap();
        match classify_lattice(&p) {
            LatticeClass::NotSemilattice { witness } => {
                assert_eq!(witness, "no top element (empty meet)")
            }
            other => panic!("expected not-semilattice, got {other:?}"),
        }
        // With a top present the witness names the meetless pair.
        let v = FinPoset::new(vec!["a", "b", "t"], &[("a", "t"), ("b", "t")]).unwrap();
        match classify_lattice(&v) {
            LatticeClass::NotSemilattice { witness } => {
                assert_eq!(witness, "no meet of {a,b}")
            }
            other => panic!("expected not-semilattice, got {other:?}"),
        }
    }

    #[test]
    fn m3_is_a_semilattice_with_distributivity_witness() {
        let m3 = catalog::m3();
        match classify_lattice(&m3) {
            LatticeClass::Semilattice {
                obstruction: DistributiveObstruction::Distributivity { x, pair, lhs, rhs },
            } => {
                assert_eq!(m3.name(x), "x");
                assert_eq!((m3.name(pair.0), m3.name(pair.1)), ("y", "z"));
                assert_eq!(m3.name(lhs), "x");
                assert_eq!(m3.name(rhs), "bot");
            }
            other => panic!("expected a distributivity witness, got {other:?}"),
        }
    }

    #[test]
    fn n5_is_a_semilattice_with_distributivity_witness() {
        match classify_lattice(&catalog::n5()) {
            LatticeClass::Semilattice {
                obstruction: DistributiveObstruction::Distributivity { .. },
            } => {}
            other => panic!("expected a distributivity witness, got {other:?}"),
        }
    }

    #[test]
    fn morphism_laws_catch_join_failures() {
        // sierp -> two collapsing u to bot: frame morphism.
        let sierp = catalog::sierp();
        let two = catalog::two();
        let down = MonotoneMap::new(sierp.carrier().clone(), two.carrier().clone(), vec![0, 0, 1])
            .unwrap();
        assert!(LatticeMorphism::new(down, MorphismKind::Frame).is_ok());
        let up = MonotoneMap::new(sierp.carrier().clone(), two.carrier().clone(), vec![0, 1, 1])
            .unwrap();
        assert!(LatticeMorphism::new(up, MorphismKind::Frame).is_ok());
        // two -> sierp hitting u: preserves meets and top but not bottom.
        let bad = MonotoneMap::new(two.carrier().clone(), sierp.carrier().clone(), vec![1, 2])
            .unwrap();
        let err = LatticeMorphism::new(bad.clone(), MorphismKind::Frame).unwrap_err();
        assert!(matches!(err, LatticeError::LawViolation { law: "bottom", .. }));
        assert!(LatticeMorphism::new(bad, MorphismKind::Semilattice).is_ok());
    }

    #[test]
    fn slat_homs_two_to_two() {
        let two = catalog::two().as_semilattice();
        assert_eq!(hom_enumerate_slat(&two, &two).len(), 2);
    }

    #[test]
    fn frame_homs_out_of_two_are_unique() {
        // The two-element frame only maps one way into anything: top and
        // bottom are forced, so it is initial.
        let two = catalog::two();
        for (_, f) in catalog::frames() {
            assert_eq!(hom_enumerate_frame(&two, &f).len(), 1, "{:?}", f.carrier().element_names());
        }
    }

    #[test]
    fn point_counts_of_the_small_frames() {
        assert_eq!(points(&catalog::sierp()).len(), 2);
        assert_eq!(points(&catalog::square()).len(), 2);
        assert_eq!(points(&catalog::two()).len(), 1);
        assert_eq!(points(&catalog::one()).len(), 0);
    }

    #[test]
    fn sierp_points_reconstruct_the_sierpinski_opens() {
        let report = spatial_reconstruction(&catalog::sierp());
        assert_eq!(report.points.len(), 2);
        assert!(report.iso);
        assert_eq!(report.opens.carrier().len(), 3);
    }

    #[test]
    fn one_element_lattice_is_the_opens_of_the_empty_space() {
        let report = spatial_reconstruction(&catalog::one());
        assert!(report.points.is_empty());
        assert_eq!(report.opens.carrier().len(), 1);
        assert!(report.iso);
    }

    #[test]
    fn birkhoff_on_square_finds_the_two_atoms() {
        let report = birkhoff(&catalog::square()).unwrap();
        assert_eq!(report.irreducibles.len(), 2);
        assert!(!report.irreducibles.leq(0, 1) && !report.irreducibles.leq(1, 0));
        assert_eq!(report.down.carrier().len(), 4);
        assert!(is_lattice_iso(&report.to_down));
    }

    #[test]
    fn birkhoff_on_sierp_finds_a_chain_of_irreducibles() {
        let report = birkhoff(&catalog::sierp()).unwrap();
        assert_eq!(report.irreducibles.len(), 2);
        assert!(report.irreducibles.leq(0, 1) || report.irreducibles.leq(1, 0));
    }

    #[test]
    fn spatial_reconstruction_is_iso_on_every_catalog_frame() {
        for (name, f) in catalog::frames() {
            assert!(spatial_reconstruction(&f).iso, "{name}");
        }
    }
}
