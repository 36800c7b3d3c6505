//! Presheaves and sheaves on a finite frame.
//!
//! The site is a finite frame regarded with its canonical covers: a sieve on
//! `v` (a downset of elements below `v`) covers when its join is `v`. A
//! presheaf assigns named section sets and restriction tables along the
//! order; validation enforces the identity and composition laws, so every
//! [`Presheaf`] in circulation is actually functorial.
//!
//! Two sheaf tests live here. The oracle ([`is_sheaf_oracle`]) walks every
//! covering sieve of every element and demands an explicit bijection between
//! sections and matching families, returning a pinpointed witness on
//! failure. The fast test ([`is_sheaf_fast`]) checks only the empty cover
//! and the binary gluing squares, plus the finite-site fact that makes the
//! directed condition automatic; agreement of the two is one of the
//! workbench's standing battery checks, not an assumption.
//!
//! Sheafification is the plus construction applied twice. On a finite frame
//! the covering sieves of an element are closed under intersection, so the
//! directed system of matching-family sets has a terminal stage: the least
//! covering sieve. The colimit is computed there and the claim is re-checked
//! at run time; an integration test compares against the colimit computed
//! the long way.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lattice::DistLattice;
use crate::poset::PosetError;

/// Errors raised by presheaf validation and the sheaf operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    /// The restriction tables exist but break identity or composition.
    #[error("functoriality violation: {detail}")]
    FunctorialityViolation { detail: String },
    /// Section or restriction data has the wrong shape.
    #[error("malformed presheaf: {detail}")]
    Malformed { detail: String },
    /// Two presheaves live on different sites.
    #[error("site mismatch: {detail}")]
    SiteMismatch { detail: String },
    /// A morphism component fails to commute with a restriction.
    #[error("naturality violation at {element}: {detail}")]
    NotNatural { element: String, detail: String },
    /// A re-proved internal statement failed; indicates a construction bug.
    #[error("internal check failure: {detail}")]
    Internal { detail: String },
}

/// A downset of elements below a fixed apex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sieve {
    apex: usize,
    members: Vec<usize>,
}

impl Sieve {
    /// Validates that the members are distinct elements below the apex and
    /// downward closed in the site.
    pub fn new(site: &DistLattice, apex: usize, members: Vec<usize>) -> Result<Sieve, SheafError> {
        let p = site.carrier();
        let n = p.len();
        if apex >= n {
            return Err(PosetError::IndexOutOfRange { index: apex, size: n }.into());
        }
        let mut members = members;
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m >= n {
                return Err(PosetError::IndexOutOfRange { index: m, size: n }.into());
            }
            if !p.leq(m, apex) {
                return Err(SheafError::Malformed {
                    detail: format!("{} is not below the apex {}", p.name(m), p.name(apex)),
                });
            }
        }
        for &m in &members {
            for w in 0..n {
                if p.leq(w, m) && !members.contains(&w) {
                    return Err(SheafError::Malformed {
                        detail: format!(
                            "{} is below the member {} but missing",
                            p.name(w),
                            p.name(m)
                        ),
                    });
                }
            }
        }
        Ok(Sieve { apex, members })
    }

    pub fn apex(&self) -> usize {
        self.apex
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Whether the members join to the apex. The empty sieve covers exactly
    /// the bottom element.
    pub fn covers(&self, site: &DistLattice) -> bool {
        site.join_of(&self.members) == self.apex
    }
}

/// All covering sieves on `v`, ordered lexicographically by member list.
pub fn covering_sieves(site: &DistLattice, v: usize) -> Vec<Sieve> {
    let p = site.carrier();
    let below = p.lower_set(v);
    let sub = p.induced(&below).expect("lower sets are valid element lists");
    sub.downsets()
        .into_iter()
        .map(|local| {
            let members: Vec<usize> = local.into_iter().map(|i| below[i]).collect();
            Sieve { apex: v, members }
        })
        .filter(|s| s.covers(site))
        .collect()
}

/// The least covering sieve on `v`: the intersection of all of them.
///
/// Covering sieves are closed under intersection (distribute the two joins
/// against each other), so this is itself covering; that is re-checked and
/// a failure is an internal error.
pub fn minimal_covering_sieve(site: &DistLattice, v: usize) -> Result<Sieve, SheafError> {
    let all = covering_sieves(site, v);
    let mut members: Vec<usize> = match all.first() {
        Some(s) => s.members.clone(),
        None => {
            return Err(SheafError::Internal {
                detail: format!("no covering sieve on {}", site.carrier().name(v)),
            })
        }
    };
    for s in &all[1..] {
        members.retain(|m| s.members.contains(m));
    }
    let least = Sieve { apex: v, members };
    if !least.covers(site) {
        return Err(SheafError::Internal {
            detail: format!(
                "intersection of the covering sieves on {} does not cover",
                site.carrier().name(v)
            ),
        });
    }
    Ok(least)
}

/// A choice of section for each member of a sieve, coherent along the
/// order: whenever one member lies below another, the lower section is the
/// restriction of the upper one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingFamily {
    pub sieve: Sieve,
    /// `assignment[i]` is a section index at `sieve.members()[i]`.
    pub assignment: Vec<usize>,
}

/// A presheaf on a finite frame: named sections per element and restriction
/// tables along every comparable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    site: DistLattice,
    sections: Vec<Vec<String>>,
    /// Keyed by `(lower, upper)` with `lower <= upper`; the table maps
    /// section indices at the upper element to section indices at the lower.
    restrictions: BTreeMap<(usize, usize), Vec<usize>>,
}

impl Presheaf {
    /// Validates shapes, identities, and composition.
    pub fn new(
        site: DistLattice,
        sections: Vec<Vec<String>>,
        restrictions: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Presheaf, SheafError> {
        let p = site.carrier();
        let n = p.len();
        if sections.len() != n {
            return Err(SheafError::Malformed {
                detail: format!("expected {} section lists, found {}", n, sections.len()),
            });
        }
        for (v, names) in sections.iter().enumerate() {
            let mut seen = names.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != names.len() {
                return Err(SheafError::Malformed {
                    detail: format!("duplicate section name at {}", p.name(v)),
                });
            }
        }
        for (&(lo, hi), table) in &restrictions {
            if lo >= n || hi >= n {
                return Err(SheafError::Malformed {
                    detail: format!("restriction key ({lo},{hi}) out of range"),
                });
            }
            if !p.leq(lo, hi) {
                return Err(SheafError::Malformed {
                    detail: format!(
                        "restriction {} -> {} runs against the order",
                        p.name(hi),
                        p.name(lo)
                    ),
                });
            }
            if table.len() != sections[hi].len() {
                return Err(SheafError::Malformed {
                    detail: format!(
                        "restriction {} -> {} has {} entries for {} sections",
                        p.name(hi),
                        p.name(lo),
                        table.len(),
                        sections[hi].len()
                    ),
                });
            }
            for &s in table {
                if s >= sections[lo].len() {
                    return Err(SheafError::Malformed {
                        detail: format!(
                            "restriction {} -> {} hits section index {} of {}",
                            p.name(hi),
                            p.name(lo),
                            s,
                            sections[lo].len()
                        ),
                    });
                }
            }
        }
        for lo in 0..n {
            for hi in 0..n {
                if p.leq(lo, hi) && !restrictions.contains_key(&(lo, hi)) {
                    return Err(SheafError::Malformed {
                        detail: format!(
                            "missing restriction table {} -> {}",
                            p.name(hi),
                            p.name(lo)
                        ),
                    });
                }
            }
        }
        let ps = Presheaf { site, sections, restrictions };
        let p = ps.site.carrier();
        for v in 0..n {
            for (s, _) in ps.sections[v].iter().enumerate() {
                if ps.restrict(v, v, s) != s {
                    return Err(SheafError::FunctorialityViolation {
                        detail: format!("identity restriction at {} moves a section", p.name(v)),
                    });
                }
            }
        }
        for lo in 0..n {
            for mid in 0..n {
                for hi in 0..n {
                    if p.leq(lo, mid) && p.leq(mid, hi) {
                        for s in 0..ps.sections[hi].len() {
                            let direct = ps.restrict(lo, hi, s);
                            let stepped = ps.restrict(lo, mid, ps.restrict(mid, hi, s));
                            if direct != stepped {
                                return Err(SheafError::FunctorialityViolation {
                                    detail: format!(
                                        "restricting {} from {} via {} to {} disagrees with the direct table",
                                        ps.sections[hi][s],
                                        p.name(hi),
                                        p.name(mid),
                                        p.name(lo)
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(ps)
    }

    /// Builds the full restriction tables from tables on the covering pairs
    /// of the order (the Hasse edges), composing along a fixed path; the
    /// composition check in [`Presheaf::new`] then rejects any
    /// path-dependent data.
    pub fn from_cover_maps(
        site: DistLattice,
        sections: Vec<Vec<String>>,
        cover_maps: BTreeMap<(usize, usize), Vec<usize>>,
    ) -> Result<Presheaf, SheafError> {
        let p = site.carrier().clone();
        let n = p.len();
        for (lo, hi) in p.covers() {
            if !cover_maps.contains_key(&(lo, hi)) {
                return Err(SheafError::Malformed {
                    detail: format!("missing cover table {} -> {}", p.name(hi), p.name(lo)),
                });
            }
        }
        let mut full: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            if sections.len() == n {
                full.insert((v, v), (0..sections[v].len()).collect());
            }
        }
        // Fill comparable pairs in order of increasing interval height so a
        // one-step factor is always available.
        let mut pending: Vec<(usize, usize)> = (0..n)
            .flat_map(|lo| (0..n).map(move |hi| (lo, hi)))
            .filter(|&(lo, hi)| lo != hi && p.leq(lo, hi))
            .collect();
        pending.sort_by_key(|&(lo, hi)| {
            (p.lower_set(hi).iter().filter(|&&w| p.leq(lo, w)).count(), lo, hi)
        });
        for (lo, hi) in pending {
            if let Some(t) = cover_maps.get(&(lo, hi)) {
                full.insert((lo, hi), t.clone());
                continue;
            }
            // Pick the least mid with lo <= mid < hi and (mid, hi) a cover.
            let mid = (0..n)
                .find(|&m| m != hi && p.leq(lo, m) && p.leq(m, hi) && full.contains_key(&(lo, m)) && cover_maps.contains_key(&(m, hi)));
            let Some(mid) = mid else {
                return Err(SheafError::Malformed {
                    detail: format!(
                        "cannot factor the restriction {} -> {} through a cover",
                        p.name(hi),
                        p.name(lo)
                    ),
                });
            };
            let upper = &cover_maps[&(mid, hi)];
            let lower = &full[&(lo, mid)];
            let composite: Vec<usize> = upper
                .iter()
                .map(|&s| {
                    lower.get(s).copied().ok_or(SheafError::Malformed {
                        detail: format!(
                            "cover table {} -> {} hits a section out of range",
                            p.name(hi),
                            p.name(mid)
                        ),
                    })
                })
                .collect::<Result<_, _>>()?;
            full.insert((lo, hi), composite);
        }
        Presheaf::new(site, sections, full)
    }

    /// A presheaf with the same sections everywhere and identity
    /// restrictions. Not a sheaf unless there is exactly one section (the
    /// empty cover of the bottom forces a single section there).
    pub fn constant(site: DistLattice, names: &[&str]) -> Presheaf {
        let n = site.carrier().len();
        let sections: Vec<Vec<String>> =
            (0..n).map(|_| names.iter().map(|s| s.to_string()).collect()).collect();
        let mut restrictions = BTreeMap::new();
        for lo in 0..n {
            for hi in 0..n {
                if site.carrier().leq(lo, hi) {
                    restrictions.insert((lo, hi), (0..names.len()).collect());
                }
            }
        }
        Presheaf::new(site, sections, restrictions).expect("constant data is functorial")
    }

    /// The presheaf with one section exactly on the elements below `w`.
    /// These are the subterminal sheaves.
    pub fn representable(site: DistLattice, w: usize) -> Presheaf {
        let p = site.carrier().clone();
        let n = p.len();
        let sections: Vec<Vec<String>> = (0..n)
            .map(|v| if p.leq(v, w) { vec!["*".to_string()] } else { Vec::new() })
            .collect();
        let mut restrictions = BTreeMap::new();
        for lo in 0..n {
            for hi in 0..n {
                if p.leq(lo, hi) {
                    let table = if p.leq(hi, w) { vec![0] } else { Vec::new() };
                    restrictions.insert((lo, hi), table);
                }
            }
        }
        Presheaf::new(site, sections, restrictions).expect("principal-downset data is functorial")
    }

    pub fn site(&self) -> &DistLattice {
        &self.site
    }

    pub fn section_count(&self, v: usize) -> usize {
        self.sections[v].len()
    }

    pub fn section_names(&self, v: usize) -> &[String] {
        &self.sections[v]
    }

    /// The restriction of the `section`-th section at `upper` down to
    /// `lower`.
    pub fn restrict(&self, lower: usize, upper: usize, section: usize) -> usize {
        self.restrictions[&(lower, upper)][section]
    }

    pub fn restriction_table(&self, lower: usize, upper: usize) -> &[usize] {
        &self.restrictions[&(lower, upper)]
    }

    fn same_site(&self, other: &Presheaf) -> Result<(), SheafError> {
        if self.site.carrier() != other.site.carrier() {
            return Err(SheafError::SiteMismatch {
                detail: "the two presheaves live on different sites".to_string(),
            });
        }
        Ok(())
    }
}

/// Raw family tables over the sieve's members, in lexicographic order.
fn family_tables(f: &Presheaf, sieve: &Sieve) -> Vec<Vec<usize>> {
    let p = f.site().carrier();
    let members = sieve.members();
    let mut out = Vec::new();
    let mut table: Vec<usize> = Vec::with_capacity(members.len());
    fn go(
        f: &Presheaf,
        members: &[usize],
        table: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        leq: &dyn Fn(usize, usize) -> bool,
    ) {
        let at = table.len();
        if at == members.len() {
            out.push(table.clone());
            return;
        }
        'choice: for s in 0..f.section_count(members[at]) {
            for prev in 0..at {
                if leq(members[prev], members[at])
                    && f.restrict(members[prev], members[at], s) != table[prev]
                {
                    continue 'choice;
                }
                if leq(members[at], members[prev])
                    && f.restrict(members[at], members[prev], table[prev]) != s
                {
                    continue 'choice;
                }
            }
            table.push(s);
            go(f, members, table, out, leq);
            table.pop();
        }
    }
    go(f, members, &mut table, &mut out, &|a, b| p.leq(a, b));
    out
}

/// All matching families for the sieve, in lexicographic order of their
/// assignment tables.
pub fn matching_families(f: &Presheaf, sieve: &Sieve) -> Vec<MatchingFamily> {
    family_tables(f, sieve)
        .into_iter()
        .map(|assignment| MatchingFamily { sieve: sieve.clone(), assignment })
        .collect()
}

/// The family obtained by restricting one section at the apex to every
/// member.
pub fn restricted_family(f: &Presheaf, sieve: &Sieve, section: usize) -> Vec<usize> {
    sieve.members().iter().map(|&m| f.restrict(m, sieve.apex(), section)).collect()
}

/// The verdict of the exhaustive sheaf test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    /// Sections biject with matching families for every covering sieve.
    Sheaf { covering_sieves_checked: usize },
    /// Two distinct sections restrict to the same family.
    NotSeparated { element: usize, sieve: Sieve, left: usize, right: usize },
    /// A matching family is the restriction of no section.
    NoAmalgamation { element: usize, sieve: Sieve, family: Vec<usize> },
}

impl OracleVerdict {
    pub fn is_sheaf(&self) -> bool {
        matches!(self, OracleVerdict::Sheaf { .. })
    }
}

/// Checks the sheaf condition against every covering sieve of every
/// element, demanding an explicit bijection each time: the restriction map
/// into families must be injective (separation) and surjective
/// (amalgamation). Witnesses name the first failure in enumeration order.
pub fn is_sheaf_oracle(f: &Presheaf) -> OracleVerdict {
    let n = f.site().carrier().len();
    let mut checked = 0;
    for v in 0..n {
        for sieve in covering_sieves(f.site(), v) {
            checked += 1;
            let families = family_tables(f, &sieve);
            let mut hit: Vec<Option<usize>> = vec![None; families.len()];
            for s in 0..f.section_count(v) {
                let fam = restricted_family(f, &sieve, s);
                let idx = families
                    .binary_search(&fam)
                    .expect("a restricted section is always a matching family");
                if let Some(prev) = hit[idx] {
                    return OracleVerdict::NotSeparated { element: v, sieve, left: prev, right: s };
                }
                hit[idx] = Some(s);
            }
            if let Some(miss) = hit.iter().position(|h| h.is_none()) {
                return OracleVerdict::NoAmalgamation {
                    element: v,
                    sieve,
                    family: families[miss].clone(),
                };
            }
        }
    }
    OracleVerdict::Sheaf { covering_sieves_checked: checked }
}

/// Why the reduced sheaf test failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FastFailure {
    /// The empty cover of the bottom demands exactly one section there.
    #[error("the bottom element has {sections_at_bottom} sections instead of one")]
    EmptyCover { sections_at_bottom: usize },
    /// A binary gluing square is not a bijection.
    #[error("gluing over the pair ({left}, {right}) fails: {detail}")]
    BinaryGluing { left: usize, right: usize, detail: String },
}

/// Statistics from a successful run of the reduced test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FastReport {
    pub squares_checked: usize,
    pub directed_sets_confirmed: usize,
}

/// The reduced sheaf test: one section over the empty cover of the bottom,
/// and for every pair `a, b` a bijection between sections over `a \/ b`
/// and pairs of sections over `a` and `b` agreeing over `a /\ b`.
///
/// On an infinite site a third condition about directed covers would be
/// needed; on a finite site every directed set of opens contains its join,
/// so that condition holds for free. The count of directed sets inspected
/// to confirm this is reported rather than assumed.
pub fn is_sheaf_fast(f: &Presheaf) -> Result<FastReport, FastFailure> {
    let site = f.site();
    let p = site.carrier();
    let n = p.len();
    let bottom = p.bottom().expect("a frame has a bottom");
    if f.section_count(bottom) != 1 {
        return Err(FastFailure::EmptyCover { sections_at_bottom: f.section_count(bottom) });
    }
    let mut squares = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            squares += 1;
            let join = site.join(a, b);
            let meet = site.meet(a, b);
            // Compatible pairs, lexicographically.
            let mut pairs = Vec::new();
            for s in 0..f.section_count(a) {
                for t in 0..f.section_count(b) {
                    if f.restrict(meet, a, s) == f.restrict(meet, b, t) {
                        pairs.push((s, t));
                    }
                }
            }
            let mut hit: Vec<Option<usize>> = vec![None; pairs.len()];
            for u in 0..f.section_count(join) {
                let image = (f.restrict(a, join, u), f.restrict(b, join, u));
                let idx = pairs
                    .binary_search(&image)
                    .expect("restrictions of one section always agree on the meet");
                if let Some(prev) = hit[idx] {
                    return Err(FastFailure::BinaryGluing {
                        left: a,
                        right: b,
                        detail: format!(
                            "sections {} and {} over {} agree on both halves",
                            f.section_names(join)[prev],
                            f.section_names(join)[u],
                            p.name(join)
                        ),
                    });
                }
                hit[idx] = Some(u);
            }
            if let Some(miss) = hit.iter().position(|h| h.is_none()) {
                let (s, t) = pairs[miss];
                return Err(FastFailure::BinaryGluing {
                    left: a,
                    right: b,
                    detail: format!(
                        "no section over {} restricts to {} and {}",
                        p.name(join),
                        f.section_names(a)[s],
                        f.section_names(b)[t]
                    ),
                });
            }
        }
    }
    let directed_sets_confirmed = p
        .directed_subsets()
        .into_iter()
        .filter(|d| {
            let j = site.join_of(d);
            d.contains(&j)
        })
        .count();
    // Every directed subset must contain its join on a finite site.
    debug_assert_eq!(directed_sets_confirmed, p.directed_subsets().len());
    Ok(FastReport { squares_checked: squares, directed_sets_confirmed })
}

/// Rewrites a covering sieve as a chain of binary join steps
/// `(so_far, member, so_far \/ member)` starting from the bottom. When the
/// sieve covers, the final accumulator is the apex; this is the reduction
/// that lets the binary test stand in for arbitrary covers on a finite
/// site.
pub fn binary_cover_reduction(site: &DistLattice, sieve: &Sieve) -> Vec<(usize, usize, usize)> {
    let mut acc = site.carrier().bottom().expect("a frame has a bottom");
    let mut steps = Vec::new();
    for &m in sieve.members() {
        let next = site.join(acc, m);
        steps.push((acc, m, next));
        acc = next;
    }
    steps
}

/// A natural transformation between presheaves on one site.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafMorphism {
    source: Presheaf,
    target: Presheaf,
    components: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    /// Validates shapes and naturality against every comparable pair.
    pub fn new(
        source: Presheaf,
        target: Presheaf,
        components: Vec<Vec<usize>>,
    ) -> Result<PresheafMorphism, SheafError> {
        source.same_site(&target)?;
        let p = source.site().carrier();
        let n = p.len();
        if components.len() != n {
            return Err(SheafError::Malformed {
                detail: format!("expected {} components, found {}", n, components.len()),
            });
        }
        for v in 0..n {
            if components[v].len() != source.section_count(v) {
                return Err(SheafError::Malformed {
                    detail: format!(
                        "component at {} has {} entries for {} sections",
                        p.name(v),
                        components[v].len(),
                        source.section_count(v)
                    ),
                });
            }
            for &t in &components[v] {
                if t >= target.section_count(v) {
                    return Err(SheafError::Malformed {
                        detail: format!("component at {} hits a missing section", p.name(v)),
                    });
                }
            }
        }
        for lo in 0..n {
            for hi in 0..n {
                if !p.leq(lo, hi) {
                    continue;
                }
                for s in 0..source.section_count(hi) {
                    let down_then_map = components[lo][source.restrict(lo, hi, s)];
                    let map_then_down = target.restrict(lo, hi, components[hi][s]);
                    if down_then_map != map_then_down {
                        return Err(SheafError::NotNatural {
                            element: p.name(lo).to_string(),
                            detail: format!(
                                "section {} at {} maps differently along the two paths",
                                source.section_names(hi)[s],
                                p.name(hi)
                            ),
                        });
                    }
                }
            }
        }
        Ok(PresheafMorphism { source, target, components })
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    pub fn component(&self, v: usize) -> &[usize] {
        &self.components[v]
    }

    pub fn apply(&self, v: usize, section: usize) -> usize {
        self.components[v][section]
    }

    /// Composes with a morphism out of this one's target.
    pub fn then(&self, next: &PresheafMorphism) -> Result<PresheafMorphism, SheafError> {
        if self.target != next.source {
            return Err(SheafError::Malformed {
                detail: "composition needs the middle presheaves to match".to_string(),
            });
        }
        let components: Vec<Vec<usize>> = self
            .components
            .iter()
            .enumerate()
            .map(|(v, comp)| comp.iter().map(|&s| next.components[v][s]).collect())
            .collect();
        PresheafMorphism::new(self.source.clone(), next.target.clone(), components)
    }

    /// Whether every component is a bijection.
    pub fn is_iso(&self) -> bool {
        self.components.iter().enumerate().all(|(v, comp)| {
            let mut seen = vec![false; self.target.section_count(v)];
            comp.len() == seen.len() && comp.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
        })
    }
}

/// Every natural transformation from `a` to `b`, ordered lexicographically
/// by flattened component tables. Images are chosen one section at a time,
/// checked against all already-fixed components, so the walk prunes early.
pub fn presheaf_morphisms(a: &Presheaf, b: &Presheaf) -> Result<Vec<PresheafMorphism>, SheafError> {
    a.same_site(b)?;
    let p = a.site().carrier();
    let n = p.len();
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|v| (0..a.section_count(v)).map(move |s| (v, s))).collect();
    let mut components: Vec<Vec<usize>> = (0..n).map(|v| vec![0; a.section_count(v)]) .collect();
    let mut out = Vec::new();
    fn go(
        a: &Presheaf,
        b: &Presheaf,
        slots: &[(usize, usize)],
        at: usize,
        components: &mut Vec<Vec<usize>>,
        out: &mut Vec<PresheafMorphism>,
    ) {
        if at == slots.len() {
            if let Ok(m) = PresheafMorphism::new(a.clone(), b.clone(), components.clone()) {
                out.push(m);
            }
            return;
        }
        let (v, s) = slots[at];
        let p = a.site().carrier();
        'image: for img in 0..b.section_count(v) {
            // Check naturality against every slot already fixed.
            for &(u, su) in &slots[..at] {
                // Slot (u, su) with u above v: does (v, restriction of su)
                // equal (v, s)? Then img must match the restricted image.
                if p.leq(v, u) && a.restrict(v, u, su) == s {
                    if b.restrict(v, u, components[u][su]) != img {
                        continue 'image;
                    }
                }
                // Slot (u, su) with u below v: the restriction of (v, s)
                // may be (u, su); then su's image must be img's restriction.
                if p.leq(u, v) && a.restrict(u, v, s) == su {
                    if components[u][su] != b.restrict(u, v, img) {
                        continue 'image;
                    }
                }
            }
            components[v][s] = img;
            go(a, b, slots, at + 1, components, out);
        }
        components[v][s] = 0;
    }
    // Empty-section targets make some slots impossible; the backtracking
    // handles that by simply finding no image.
    go(a, b, &slots, 0, &mut components, &mut out);
    Ok(out)
}

/// One application of the plus construction together with its unit.
///
/// The new sections at `v` are the matching families over the least
/// covering sieve of `v`, named by their member-by-member section names.
/// Restriction along `u <= v` is literal: the least sieve of `u` is
/// contained in the least sieve of `v` (its pullback covers `u`), so a
/// family is simply read off at the smaller sieve's members; that
/// containment is re-checked rather than trusted.
pub fn plus(f: &Presheaf) -> Result<(Presheaf, PresheafMorphism), SheafError> {
    let site = f.site().clone();
    let p = site.carrier().clone();
    let n = p.len();
    let mut least = Vec::with_capacity(n);
    for v in 0..n {
        least.push(minimal_covering_sieve(&site, v)?);
    }
    let mut tables: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    let mut sections: Vec<Vec<String>> = Vec::with_capacity(n);
    for v in 0..n {
        let fams = family_tables(f, &least[v]);
        let names = fams
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t
                    .iter()
                    .enumerate()
                    .map(|(i, &s)| f.section_names(least[v].members()[i])[s].as_str())
                    .collect();
                format!("[{}]", parts.join(","))
            })
            .collect();
        tables.push(fams);
        sections.push(names);
    }
    let mut restrictions = BTreeMap::new();
    for lo in 0..n {
        for hi in 0..n {
            if !p.leq(lo, hi) {
                continue;
            }
            let positions: Vec<usize> = least[lo]
                .members()
                .iter()
                .map(|&w| {
                    least[hi].members().iter().position(|&m| m == w).ok_or(SheafError::Internal {
                        detail: format!(
                            "least sieve of {} is not contained in the least sieve of {}",
                            p.name(lo),
                            p.name(hi)
                        ),
                    })
                })
                .collect::<Result<_, _>>()?;
            let table: Vec<usize> = tables[hi]
                .iter()
                .map(|fam| {
                    let reduced: Vec<usize> = positions.iter().map(|&i| fam[i]).collect();
                    tables[lo].binary_search(&reduced).map_err(|_| SheafError::Internal {
                        detail: format!(
                            "a family over {} restricts to a non-family over {}",
                            p.name(hi),
                            p.name(lo)
                        ),
                    })
                })
                .collect::<Result<_, _>>()?;
            restrictions.insert((lo, hi), table);
        }
    }
    let result = Presheaf::new(site, sections, restrictions)?;
    let unit_components: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..f.section_count(v))
                .map(|s| {
                    let fam = restricted_family(f, &least[v], s);
                    tables[v].binary_search(&fam).expect("restricted sections are families")
                })
                .collect()
        })
        .collect();
    let unit = PresheafMorphism::new(f.clone(), result.clone(), unit_components)?;
    Ok((result, unit))
}

/// The sheafification of a presheaf: the plus construction applied twice.
#[derive(Debug, Clone)]
pub struct SheafificationReport {
    /// After one plus application (separated, not yet a sheaf in general).
    pub plus_once: Presheaf,
    /// After two applications; re-checked to be a sheaf by the oracle.
    pub sheaf: Presheaf,
    /// The composite unit into the sheaf.
    pub unit: PresheafMorphism,
}

/// Applies the plus construction twice and re-checks, with the exhaustive
/// oracle, that the result is a sheaf.
pub fn sheafify(f: &Presheaf) -> Result<SheafificationReport, SheafError> {
    let (plus_once, first) = plus(f)?;
    let (sheaf, second) = plus(&plus_once)?;
    if !is_sheaf_oracle(&sheaf).is_sheaf() {
        return Err(SheafError::Internal {
            detail: "two plus applications failed to produce a sheaf".to_string(),
        });
    }
    let unit = first.then(&second)?;
    Ok(SheafificationReport { plus_once, sheaf, unit })
}

/// The subterminal sheaves (at most one section everywhere) arranged as a
/// frame, with the isomorphism back to the site.
#[derive(Debug, Clone)]
pub struct SubterminalReport {
    /// The frame of subterminal sheaves, ordered by inclusion of supports.
    pub frame: DistLattice,
    /// The witnessing sheaf for each frame element.
    pub sheaves: Vec<Presheaf>,
    /// `site_element[i]` is the site element whose downset is the support
    /// of `sheaves[i]`; the map `i -> site_element[i]` is an order
    /// isomorphism onto the site.
    pub site_element: Vec<usize>,
}

/// Enumerates every subterminal presheaf by its support, keeps the ones the
/// oracle certifies as sheaves, and orders them by inclusion. The supports
/// that survive are exactly the principal downsets, so the result is a
/// frame isomorphic to the site; the isomorphism is found and re-checked,
/// not assumed.
pub fn subterminal_frame(site: &DistLattice) -> Result<SubterminalReport, SheafError> {
    let p = site.carrier();
    let n = p.len();
    let mut supports = Vec::new();
    let mut sheaves = Vec::new();
    for support in p.downsets() {
        let sections: Vec<Vec<String>> = (0..n)
            .map(|v| if support.contains(&v) { vec!["*".to_string()] } else { Vec::new() })
            .collect();
        let mut restrictions = BTreeMap::new();
        for lo in 0..n {
            for hi in 0..n {
                if p.leq(lo, hi) {
                    let table = if support.contains(&hi) { vec![0] } else { Vec::new() };
                    restrictions.insert((lo, hi), table);
                }
            }
        }
        let candidate = Presheaf::new(site.clone(), sections, restrictions)?;
        if is_sheaf_oracle(&candidate).is_sheaf() {
            supports.push(support);
            sheaves.push(candidate);
        }
    }
    let m = supports.len();
    let names: Vec<String> = supports
        .iter()
        .map(|s| {
            let inner: Vec<&str> = s.iter().map(|&v| p.name(v)).collect();
            format!("sub{{{}}}", inner.join(","))
        })
        .collect();
    let leq: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| supports[i].iter().all(|v| supports[j].contains(v))).collect())
        .collect();
    let poset = crate::poset::FinPoset::from_closure(names, leq)?;
    let frame = DistLattice::new(poset).map_err(|e| SheafError::Internal {
        detail: format!("subterminal supports fail to form a frame: {e}"),
    })?;
    let site_element: Vec<usize> = supports
        .iter()
        .map(|s| {
            site.carrier().join_of(s).ok_or(SheafError::Internal {
                detail: "a subterminal support has no join".to_string(),
            })
        })
        .collect::<Result<_, _>>()?;
    // Re-check that support -> join is an order isomorphism onto the site.
    let bijective = {
        let mut seen = vec![false; n];
        site_element.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
            && seen.iter().all(|&b| b)
    };
    let order_ok = (0..m).all(|i| {
        (0..m).all(|j| {
            frame.carrier().leq(i, j) == p.leq(site_element[i], site_element[j])
        })
    });
    if !bijective || !order_ok {
        return Err(SheafError::Internal {
            detail: "subterminal supports do not mirror the site".to_string(),
        });
    }
    Ok(SubterminalReport { frame, sheaves, site_element })
}

/// The sectionwise product of two presheaves on one site, with the two
/// projections. Sections are named `(s,t)`; restrictions act coordinatewise.
pub fn day_product(
    a: &Presheaf,
    b: &Presheaf,
) -> Result<(Presheaf, PresheafMorphism, PresheafMorphism), SheafError> {
    a.same_site(b)?;
    let site = a.site().clone();
    let p = site.carrier();
    let n = p.len();
    let sections: Vec<Vec<String>> = (0..n)
        .map(|v| {
            a.section_names(v)
                .iter()
                .flat_map(|s| b.section_names(v).iter().map(move |t| format!("({s},{t})")))
                .collect()
        })
        .collect();
    let mut restrictions = BTreeMap::new();
    for lo in 0..n {
        for hi in 0..n {
            if !p.leq(lo, hi) {
                continue;
            }
            let wb_lo = b.section_count(lo);
            let table: Vec<usize> = (0..a.section_count(hi))
                .flat_map(|s| {
                    (0..b.section_count(hi)).map(move |t| (s, t))
                })
                .map(|(s, t)| a.restrict(lo, hi, s) * wb_lo + b.restrict(lo, hi, t))
                .collect();
            restrictions.insert((lo, hi), table);
        }
    }
    let product = Presheaf::new(site, sections, restrictions)?;
    let left_components: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..a.section_count(v))
                .flat_map(|s| (0..b.section_count(v)).map(move |_| s))
                .collect()
        })
        .collect();
    let right_components: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..a.section_count(v))
                .flat_map(|_| 0..b.section_count(v))
                .collect()
        })
        .collect();
    let left = PresheafMorphism::new(product.clone(), a.clone(), left_components)?;
    let right = PresheafMorphism::new(product.clone(), b.clone(), right_components)?;
    Ok((product, left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn const2_square() -> Presheaf {
        Presheaf::constant(catalog::square(), &["s0", "s1"])
    }

    #[test]
    fn sieve_validation_demands_downward_closure() {
        let sq = catalog::square();
        assert!(Sieve::new(&sq, 3, vec![1]).is_err(), "a alone is not downward closed");
        let s = Sieve::new(&sq, 3, vec![0, 1]).unwrap();
        assert!(!s.covers(&sq));
        let s = Sieve::new(&sq, 3, vec![0, 1, 2]).unwrap();
        assert!(s.covers(&sq), "a and b join to the top");
    }

    #[test]
    fn covering_sieves_match_hand_enumeration() {
        let si = catalog::sierp();
        // Two sieves cover the bottom: the empty one and the singleton.
        let at_bottom = covering_sieves(&si, 0);
        let members: Vec<&[usize]> = at_bottom.iter().map(|s| s.members()).collect();
        assert_eq!(members, vec![&[] as &[usize], &[0]]);
        // Every sieve covering the top of a chain contains the top.
        assert_eq!(covering_sieves(&si, 2).len(), 1);
        // The square's top is covered with or without the top itself.
        let sq = catalog::square();
        assert_eq!(covering_sieves(&sq, 3).len(), 2);
        assert_eq!(minimal_covering_sieve(&sq, 3).unwrap().members(), &[0, 1, 2]);
    }

    #[test]
    fn functoriality_violations_are_rejected() {
        let si = catalog::sierp();
        let sections = vec![vec!["x".into(), "y".into()]; 3];
        let mut restrictions: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for lo in 0..3 {
            for hi in lo..3 {
                restrictions.insert((lo, hi), vec![0, 1]);
            }
        }
        // Twist the long edge so the two factorizations disagree.
        restrictions.insert((0, 2), vec![1, 0]);
        match Presheaf::new(si, sections, restrictions) {
            Err(SheafError::FunctorialityViolation { .. }) => {}
            other => panic!("expected a functoriality violation, got {other:?}"),
        }
    }

    #[test]
    fn cover_maps_complete_to_full_tables() {
        let si = catalog::sierp();
        let sections = vec![vec!["p".into()], vec!["q0".into(), "q1".into()], vec!["r".into()]];
        let mut cover_maps = BTreeMap::new();
        cover_maps.insert((0, 1), vec![0, 0]);
        cover_maps.insert((1, 2), vec![1]);
        let f = Presheaf::from_cover_maps(si, sections, cover_maps).unwrap();
        assert_eq!(f.restrict(0, 2, 0), 0, "the long restriction is the composite");
        assert_eq!(f.restrict(1, 2, 0), 1);
    }

    #[test]
    fn constant_two_fails_both_tests_at_the_bottom() {
        let f = const2_square();
        match is_sheaf_oracle(&f) {
            OracleVerdict::NotSeparated { element: 0, .. } => {}
            other => panic!("expected separation failure at the bottom, got {other:?}"),
        }
        assert_eq!(
            is_sheaf_fast(&f),
            Err(FastFailure::EmptyCover { sections_at_bottom: 2 })
        );
    }

    #[test]
    fn representables_are_sheaves() {
        for (_, frame) in catalog::frames() {
            for w in 0..frame.carrier().len() {
                let y = Presheaf::representable(frame.clone(), w);
                assert!(is_sheaf_oracle(&y).is_sheaf());
                assert!(is_sheaf_fast(&y).is_ok());
            }
        }
    }

    #[test]
    fn product_of_projections_glues_on_the_square() {
        // Two sections on one side, three on the other, their pairs at the
        // top: the standard worked example of a sheaf that is not constant.
        let sq = catalog::square();
        let sections = vec![
            vec!["*".to_string()],
            vec!["a0".into(), "a1".into()],
            vec!["b0".into(), "b1".into(), "b2".into()],
            (0..2).flat_map(|i| (0..3).map(move |j| format!("(a{i},b{j})"))).collect(),
        ];
        let mut cover_maps = BTreeMap::new();
        cover_maps.insert((0, 1), vec![0, 0]);
        cover_maps.insert((0, 2), vec![0, 0, 0]);
        cover_maps.insert((1, 3), (0..6).map(|k| k / 3).collect());
        cover_maps.insert((2, 3), (0..6).map(|k| k % 3).collect());
        let f = Presheaf::from_cover_maps(sq, sections, cover_maps).unwrap();
        assert!(is_sheaf_oracle(&f).is_sheaf());
        let report = is_sheaf_fast(&f).unwrap();
        assert_eq!(report.squares_checked, 6);
    }

    #[test]
    fn missing_amalgamation_is_witnessed() {
        // Like the product example but with the top cut down to a single
        // diagonal section: the pair (a0, b1) matches but nothing glues it.
        let sq = catalog::square();
        let sections = vec![
            vec!["*".to_string()],
            vec!["a0".into(), "a1".into()],
            vec!["b0".into(), "b1".into()],
            vec!["diag".to_string()],
        ];
        let mut cover_maps = BTreeMap::new();
        cover_maps.insert((0, 1), vec![0, 0]);
        cover_maps.insert((0, 2), vec![0, 0]);
        cover_maps.insert((1, 3), vec![0]);
        cover_maps.insert((2, 3), vec![0]);
        let f = Presheaf::from_cover_maps(sq, sections, cover_maps).unwrap();
        match is_sheaf_oracle(&f) {
            OracleVerdict::NoAmalgamation { element: 3, .. } => {}
            other => panic!("expected a missing amalgamation at the top, got {other:?}"),
        }
        assert!(matches!(is_sheaf_fast(&f), Err(FastFailure::BinaryGluing { .. })));
    }

    #[test]
    fn sheafifying_the_constant_pair_doubles_at_the_top() {
        let f = const2_square();
        let report = sheafify(&f).unwrap();
        let counts: Vec<usize> =
            (0..4).map(|v| report.sheaf.section_count(v)).collect();
        assert_eq!(counts, vec![1, 2, 2, 4]);
        let once: Vec<usize> = (0..4).map(|v| report.plus_once.section_count(v)).collect();
        assert_eq!(once, vec![1, 2, 2, 2], "one application only repairs the bottom");
        assert!(is_sheaf_oracle(&report.sheaf).is_sheaf());
        assert!(!report.unit.is_iso());
    }

    #[test]
    fn sheafification_fixes_sheaves_up_to_iso() {
        for (_, frame) in catalog::frames() {
            let y = Presheaf::representable(frame.clone(), frame.carrier().len() - 1);
            let report = sheafify(&y).unwrap();
            assert!(report.unit.is_iso());
        }
    }

    #[test]
    fn binary_reduction_reaches_the_apex_exactly_for_covers() {
        let sq = catalog::square();
        for v in 0..4 {
            for sieve in covering_sieves(&sq, v) {
                let steps = binary_cover_reduction(&sq, &sieve);
                let last = steps.last().map(|&(_, _, j)| j).unwrap_or(0);
                assert_eq!(last, v);
            }
        }
        let partial = Sieve::new(&sq, 3, vec![0, 1]).unwrap();
        let steps = binary_cover_reduction(&sq, &partial);
        assert_eq!(steps.last().unwrap().2, 1, "a non-cover stalls below the apex");
    }

    #[test]
    fn subterminals_mirror_every_catalog_frame() {
        for (name, frame) in catalog::frames() {
            let report = subterminal_frame(&frame).unwrap();
            assert_eq!(
                report.frame.carrier().len(),
                frame.carrier().len(),
                "{name}: one subterminal sheaf per element"
            );
            assert!(
                report.frame.carrier().find_isomorphism(frame.carrier(), &[]).is_some(),
                "{name}: the subterminal frame is the site again"
            );
        }
    }

    #[test]
    fn day_product_pairs_sections() {
        let sq = catalog::square();
        let a = Presheaf::representable(sq.clone(), 1);
        let b = Presheaf::representable(sq.clone(), 2);
        let (prod, _, _) = day_product(&a, &b).unwrap();
        // The supports intersect in the bottom only.
        let counts: Vec<usize> = (0..4).map(|v| prod.section_count(v)).collect();
        assert_eq!(counts, vec![1, 0, 0, 0]);
        assert!(is_sheaf_oracle(&prod).is_sheaf(), "meets of subterminals are subterminal");
    }

    #[test]
    fn morphism_enumeration_counts_match_hand_counts() {
        let sq = catalog::square();
        let terminal = Presheaf::representable(sq.clone(), 3);
        let f = const2_square();
        // Everything maps uniquely to the terminal sheaf.
        assert_eq!(presheaf_morphisms(&f, &terminal).unwrap().len(), 1);
        // Maps from the terminal into the constant pair pick one section
        // coherently; the identity restrictions allow two such choices.
        assert_eq!(presheaf_morphisms(&terminal, &f).unwrap().len(), 2);
        // Endomorphisms of the constant pair are componentwise but must
        // commute with the identities, giving the four maps of a pair.
        assert_eq!(presheaf_morphisms(&f, &f).unwrap().len(), 4);
    }

    #[test]
    fn naturality_violations_name_the_element() {
        let si = catalog::sierp();
        let f = Presheaf::constant(si.clone(), &["x", "y"]);
        let twisted = vec![vec![0, 1], vec![1, 0], vec![0, 1]];
        match PresheafMorphism::new(f.clone(), f, twisted) {
            Err(SheafError::NotNatural { element, .. }) => assert_eq!(element, "bot"),
            other => panic!("expected a naturality violation, got {other:?}"),
        }
    }
}
