//! Frames structured over a monoidal poset, and their arrow picture.
//!
//! A [`QLocale`] packages a frame (the space side), a fully flagged
//! monoidal poset (the coefficient side), and a frame morphism from the
//! space into the coidempotent lattice of the coefficients. Transposing the
//! structure map through the coidempotent inclusion turns the whole package
//! into a single arrow from the space to the coefficients
//! ([`QLocale::to_arrow`]); [`hom_bijection_check`] certifies on concrete
//! pairs that the passage is fully faithful: the structured morphisms and
//! the commuting arrow squares match up by an explicit bijection.

use thiserror::Error;

use crate::lattice::{
    hom_enumerate_frame, DistLattice, LatticeError, LatticeMorphism, MorphismKind,
};
use crate::poset::{MonotoneMap, PosetError};
use crate::quantale::{
    cidem_lattice, monoidal_homs, CIdemLattice, MonoidalPoset, QuantaleError,
};

/// Errors raised by structured-frame validation and the embedding checks.
#[derive(Debug, Error)]
pub enum CatLocError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
    /// A claimed structure or coefficient map breaks one of its laws.
    #[error("structure map violation: {detail}")]
    StructureMap { detail: String },
    /// A morphism square fails to commute at the named space element.
    #[error("square violation at {element}: {detail}")]
    SquareViolation { element: String, detail: String },
    /// A claimed bijection failed its round-trip check.
    #[error("bijection failure: {detail}")]
    BijectionFailure { detail: String },
}

/// A frame structured over a monoidal poset by a frame morphism into its
/// coidempotent lattice.
#[derive(Debug, Clone)]
pub struct QLocale {
    space: DistLattice,
    coefficients: MonoidalPoset,
    cidem: CIdemLattice,
    /// Frame morphism from the space to the coidempotent lattice, in the
    /// lattice's local indices.
    structure: LatticeMorphism,
}

impl QLocale {
    /// Validates the package. The structure table gives, for each space
    /// element, an element of the coefficient carrier; each image must be
    /// coidempotent and the induced map must be a frame morphism into the
    /// coidempotent lattice.
    pub fn new(
        space: DistLattice,
        coefficients: MonoidalPoset,
        structure: Vec<usize>,
    ) -> Result<QLocale, CatLocError> {
        let cidem = cidem_lattice(&coefficients)?;
        let local: Vec<usize> = structure
            .iter()
            .enumerate()
            .map(|(v, &img)| {
                cidem.members.iter().position(|&m| m == img).ok_or_else(|| {
                    CatLocError::StructureMap {
                        detail: format!(
                            "the image of {} is not coidempotent",
                            space
                                .carrier()
                                .element_names()
                                .get(v)
                                .map(|s| s.as_str())
                                .unwrap_or("<out of range>")
                        ),
                    }
                })
            })
            .collect::<Result<_, _>>()?;
        let map = MonotoneMap::new(space.carrier().clone(), cidem.lattice.carrier().clone(), local)?;
        let structure = LatticeMorphism::new(map, MorphismKind::Frame)?;
        Ok(QLocale { space, coefficients, cidem, structure })
    }

    pub fn space(&self) -> &DistLattice {
        &self.space
    }

    pub fn coefficients(&self) -> &MonoidalPoset {
        &self.coefficients
    }

    pub fn coidempotent_lattice(&self) -> &CIdemLattice {
        &self.cidem
    }

    pub fn structure_map(&self) -> &LatticeMorphism {
        &self.structure
    }

    /// The structure map in coefficient-carrier indices.
    pub fn structure_table(&self) -> Vec<usize> {
        self.structure.table().iter().map(|&local| self.cidem.members[local]).collect()
    }

    /// Transposes the structure map through the coidempotent inclusion: the
    /// resulting arrow sends meets to tensors, the top to the unit, and
    /// preserves all joins. Those laws follow from the structure map being
    /// a frame morphism; they are re-checked here and a failure is reported
    /// rather than trusted away.
    pub fn to_arrow(&self) -> Result<MonotoneMap, CatLocError> {
        let table = self.structure_table();
        check_join_monoidal_table(&self.space, &self.coefficients, &table)?;
        Ok(MonotoneMap::new(
            self.space.carrier().clone(),
            self.coefficients.carrier().clone(),
            table,
        )?)
    }

    /// Rebuilds the structured package from a bare arrow: the table must be
    /// a join-preserving map sending meets to tensors and the top to the
    /// unit; its images are then coidempotent and corestriction gives the
    /// structure map back.
    pub fn from_arrow(
        space: DistLattice,
        coefficients: MonoidalPoset,
        arrow: Vec<usize>,
    ) -> Result<QLocale, CatLocError> {
        check_join_monoidal_table(&space, &coefficients, &arrow)?;
        QLocale::new(space, coefficients, arrow)
    }
}

/// Checks that a table from a frame into a monoidal poset preserves joins
/// (including the empty one) and carries meets to tensors and the top to
/// the unit.
fn check_join_monoidal_table(
    space: &DistLattice,
    coefficients: &MonoidalPoset,
    table: &[usize],
) -> Result<(), CatLocError> {
    let p = space.carrier();
    let q = coefficients.carrier();
    let n = p.len();
    if table.len() != n {
        return Err(PosetError::MalformedTable {
            detail: format!("expected {} entries, found {}", n, table.len()),
        }
        .into());
    }
    if let Some(&img) = table.iter().find(|&&img| img >= q.len()) {
        return Err(PosetError::IndexOutOfRange { index: img, size: q.len() }.into());
    }
    let top = p.top().expect("a frame has a top");
    if table[top] != coefficients.unit() {
        return Err(CatLocError::StructureMap {
            detail: "the top does not land on the unit".to_string(),
        });
    }
    let bottom = p.bottom().expect("a frame has a bottom");
    match q.bottom() {
        Some(qb) if table[bottom] == qb => {}
        _ => {
            return Err(CatLocError::StructureMap {
                detail: "the bottom does not land on the least coefficient".to_string(),
            })
        }
    }
    for a in 0..n {
        for b in 0..n {
            let meet_img = table[space.meet(a, b)];
            let tensor = coefficients.tensor(table[a], table[b]);
            if meet_img != tensor {
                return Err(CatLocError::StructureMap {
                    detail: format!(
                        "the meet of {} and {} does not land on the tensor of their images",
                        p.name(a),
                        p.name(b)
                    ),
                });
            }
            let join_img = table[space.join(a, b)];
            match q.join_of(&[table[a], table[b]]) {
                Some(j) if j == join_img => {}
                _ => {
                    return Err(CatLocError::StructureMap {
                        detail: format!(
                            "the join of {} and {} is not preserved",
                            p.name(a),
                            p.name(b)
                        ),
                    })
                }
            }
        }
    }
    Ok(())
}

/// A morphism of structured frames, running contravariantly on both sides:
/// a frame morphism between the spaces and a join-preserving monoidal map
/// between the coefficients, commuting with the two structure maps.
#[derive(Debug, Clone)]
pub struct QLocaleMorphism {
    source: QLocale,
    target: QLocale,
    /// Frame morphism from the target's space to the source's space.
    space_map: MonotoneMap,
    /// Join-preserving monoidal map from the target's coefficients to the
    /// source's.
    cat_map: MonotoneMap,
}

impl QLocaleMorphism {
    /// Validates both legs and the commuting square: for every element of
    /// the target's space, pushing through the space map and then the
    /// source's structure agrees with structuring first and mapping the
    /// coefficient across.
    pub fn new(
        source: QLocale,
        target: QLocale,
        space_table: Vec<usize>,
        cat_table: Vec<usize>,
    ) -> Result<QLocaleMorphism, CatLocError> {
        let space_map = MonotoneMap::new(
            target.space.carrier().clone(),
            source.space.carrier().clone(),
            space_table,
        )?;
        LatticeMorphism::new(space_map.clone(), MorphismKind::Frame)?;
        check_monoidal_map(&target.coefficients, &source.coefficients, &cat_table)?;
        let cat_map = MonotoneMap::new(
            target.coefficients.carrier().clone(),
            source.coefficients.carrier().clone(),
            cat_table,
        )?;
        let src_arrow = source.structure_table();
        let tgt_arrow = target.structure_table();
        for x in 0..target.space.carrier().len() {
            let through_space = src_arrow[space_map.apply(x)];
            let through_coefficients = cat_map.apply(tgt_arrow[x]);
            if through_space != through_coefficients {
                return Err(CatLocError::SquareViolation {
                    element: target.space.carrier().name(x).to_string(),
                    detail: format!(
                        "{} via the space map vs {} via the coefficient map",
                        source.coefficients.carrier().name(through_space),
                        source.coefficients.carrier().name(through_coefficients)
                    ),
                });
            }
        }
        Ok(QLocaleMorphism { source, target, space_map, cat_map })
    }

    pub fn source(&self) -> &QLocale {
        &self.source
    }

    pub fn target(&self) -> &QLocale {
        &self.target
    }

    pub fn space_map(&self) -> &MonotoneMap {
        &self.space_map
    }

    pub fn cat_map(&self) -> &MonotoneMap {
        &self.cat_map
    }
}

/// Checks that a table between monoidal posets preserves the unit, the
/// tensor, the least element, and binary joins.
fn check_monoidal_map(
    from: &MonoidalPoset,
    to: &MonoidalPoset,
    table: &[usize],
) -> Result<(), CatLocError> {
    let p = from.carrier();
    let q = to.carrier();
    if table.len() != p.len() {
        return Err(PosetError::MalformedTable {
            detail: format!("expected {} entries, found {}", p.len(), table.len()),
        }
        .into());
    }
    if let Some(&img) = table.iter().find(|&&img| img >= q.len()) {
        return Err(PosetError::IndexOutOfRange { index: img, size: q.len() }.into());
    }
    if table[from.unit()] != to.unit() {
        return Err(CatLocError::StructureMap {
            detail: "the unit is not preserved".to_string(),
        });
    }
    for a in 0..p.len() {
        for b in 0..p.len() {
            if table[from.tensor(a, b)] != to.tensor(table[a], table[b]) {
                return Err(CatLocError::StructureMap {
                    detail: format!(
                        "the tensor of {} and {} is not preserved",
                        p.name(a),
                        p.name(b)
                    ),
                });
            }
        }
    }
    match (p.bottom(), q.bottom()) {
        (Some(pb), Some(qb)) if table[pb] == qb => {}
        _ => {
            return Err(CatLocError::StructureMap {
                detail: "the least element is not preserved".to_string(),
            })
        }
    }
    for a in 0..p.len() {
        for b in (a + 1)..p.len() {
            let j = p.join_of(&[a, b]).ok_or(CatLocError::StructureMap {
                detail: "the source is missing a binary join".to_string(),
            })?;
            match q.join_of(&[table[a], table[b]]) {
                Some(qj) if qj == table[j] => {}
                _ => {
                    return Err(CatLocError::StructureMap {
                        detail: format!(
                            "the join of {} and {} is not preserved",
                            p.name(a),
                            p.name(b)
                        ),
                    })
                }
            }
        }
    }
    Ok(())
}

/// Every morphism from `a` to `b`: frame morphisms between the spaces
/// paired with join-preserving monoidal maps between the coefficients,
/// filtered by the commuting square. Ordered lexicographically by the two
/// image tables.
pub fn qlocale_morphisms(a: &QLocale, b: &QLocale) -> Result<Vec<QLocaleMorphism>, CatLocError> {
    let space_side = hom_enumerate_frame(&b.space, &a.space);
    let cat_side = monoidal_homs(&b.coefficients, &a.coefficients, true)?;
    let mut out = Vec::new();
    for s in &space_side {
        for c in &cat_side {
            if let Ok(m) =
                QLocaleMorphism::new(a.clone(), b.clone(), s.table().to_vec(), c.table().to_vec())
            {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// The two sides of the arrow-picture comparison for one ordered pair.
#[derive(Debug)]
pub struct HomBijection {
    /// Structured morphisms, enumerated against the structure maps.
    pub morphisms: Vec<QLocaleMorphism>,
    /// Commuting squares between the two transposed arrows: a frame
    /// morphism between the spaces and a join-preserving monoidal map
    /// between the coefficients with equal composites.
    pub arrow_squares: Vec<(MonotoneMap, MonotoneMap)>,
    /// `morphisms[i]` corresponds to `arrow_squares[forward[i]]`.
    pub forward: Vec<usize>,
    /// `arrow_squares[j]` corresponds to `morphisms[backward[j]]`.
    pub backward: Vec<usize>,
}

/// Enumerates the structured morphisms `a -> b` and, independently, the
/// commuting squares between the transposed arrows, then matches the two
/// lists by their underlying tables and verifies the round trips. This is
/// the full-faithfulness of the arrow picture, run on the nose for one
/// pair.
pub fn hom_bijection_check(a: &QLocale, b: &QLocale) -> Result<HomBijection, CatLocError> {
    let morphisms = qlocale_morphisms(a, b)?;
    let arrow_a = a.to_arrow()?;
    let arrow_b = b.to_arrow()?;
    let space_side = hom_enumerate_frame(&b.space, &a.space);
    let cat_side = monoidal_homs(&b.coefficients, &a.coefficients, true)?;
    let mut arrow_squares = Vec::new();
    for s in &space_side {
        for c in &cat_side {
            let commutes = (0..b.space.carrier().len()).all(|x| {
                arrow_a.apply(s.apply(x)) == c.apply(arrow_b.apply(x))
            });
            if commutes {
                arrow_squares.push((s.map().clone(), c.clone()));
            }
        }
    }
    let forward: Vec<usize> = morphisms
        .iter()
        .map(|m| {
            arrow_squares
                .iter()
                .position(|(s, c)| {
                    s.table() == m.space_map.table() && c.table() == m.cat_map.table()
                })
                .ok_or(CatLocError::BijectionFailure {
                    detail: "a structured morphism has no arrow square".to_string(),
                })
        })
        .collect::<Result<_, _>>()?;
    let backward: Vec<usize> = arrow_squares
        .iter()
        .map(|(s, c)| {
            morphisms
                .iter()
                .position(|m| {
                    m.space_map.table() == s.table() && m.cat_map.table() == c.table()
                })
                .ok_or(CatLocError::BijectionFailure {
                    detail: "an arrow square lifts to no structured morphism".to_string(),
                })
        })
        .collect::<Result<_, _>>()?;
    for (i, &j) in forward.iter().enumerate() {
        if backward[j] != i {
            return Err(CatLocError::BijectionFailure {
                detail: format!("round trip breaks at morphism {i}"),
            });
        }
    }
    for (j, &i) in backward.iter().enumerate() {
        if forward[i] != j {
            return Err(CatLocError::BijectionFailure {
                detail: format!("round trip breaks at square {j}"),
            });
        }
    }
    Ok(HomBijection { morphisms, arrow_squares, forward, backward })
}
