//! JSON workspace documents: parsing, validation, and the round trip back
//! out of core structures.
//!
//! One format, one schema version, no auto-migration: a document is a JSON
//! object with a `schema` field and up to six sections of named
//! declarations. Everything is validated while loading — structures over
//! the size guard, dangling references, and data violating the declared
//! structure's laws are all rejected with a witness — so a resolved
//! [`Workspace`] only ever holds lawful objects.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use pointless_core::{
    DistLattice, FinPoset, LatticeMorphism, MonoidalPoset, MonotoneMap, MorphismKind, Presheaf,
    QLocale,
};

/// The only supported value of the `schema` field.
pub const SCHEMA_VERSION: u32 = 1;

/// Errors split by exit code: input problems exit 2, failed mathematical
/// checks exit 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable or unparsable input, unresolved references, schema
    /// violations, declarations over the size guard, or data that fails
    /// validation on load.
    Input(String),
    /// A mathematical check failed at run time; the message carries the
    /// witness.
    Check(String),
}

impl CliError {
    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Check(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// A poset declaration: element names plus generating order pairs (listed
/// as `[lower, upper]`; the reflexive-transitive closure is taken).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDescriptor {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub leq: Vec<(String, String)>,
}

/// A lattice declaration: a poset expected to be a distributive lattice,
/// with optional declared top and bottom to cross-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDescriptor {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub leq: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
}

/// A monoidal-poset declaration: a poset plus a tensor table (element
/// names, row-major over the element order) and the unit element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaleDescriptor {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub leq: Vec<(String, String)>,
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

/// A lattice morphism declaration between two declared lattices. `kind` is
/// `"slat"` (preserves finite meets including the top) or `"frame"`
/// (preserves finite meets and joins including top and bottom).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDescriptor {
    pub source: String,
    pub target: String,
    pub map: BTreeMap<String, String>,
    pub kind: String,
}

/// A presheaf declaration on a declared lattice. Sections are named per
/// site element; restrictions are keyed `"V>U"` (from `V` down to `U`) and
/// map section names at `V` to section names at `U`. Tables on the covering
/// edges of the order are required; any further tables are checked against
/// the composites.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafDescriptor {
    pub site: String,
    pub sections: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub restrictions: BTreeMap<String, BTreeMap<String, String>>,
}

/// A structured-frame declaration: a declared lattice, a declared
/// coefficient structure, and a structure map sending each space element to
/// a coefficient element (which must be coidempotent; the map must be a
/// frame morphism into the coidempotent lattice).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QLocaleDescriptor {
    pub space: String,
    pub coefficients: String,
    pub structure: BTreeMap<String, String>,
}

/// One parsed input document (or the `declares` section of a report).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub posets: BTreeMap<String, PosetDescriptor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lattices: BTreeMap<String, LatticeDescriptor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quantales: BTreeMap<String, QuantaleDescriptor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDescriptor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presheaves: BTreeMap<String, PresheafDescriptor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub qlocales: BTreeMap<String, QLocaleDescriptor>,
}

impl Document {
    /// An empty document at the current schema version.
    pub fn new() -> Document {
        Document {
            schema: SCHEMA_VERSION,
            posets: BTreeMap::new(),
            lattices: BTreeMap::new(),
            quantales: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            presheaves: BTreeMap::new(),
            qlocales: BTreeMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.posets.is_empty()
            && self.lattices.is_empty()
            && self.quantales.is_empty()
            && self.morphisms.is_empty()
            && self.presheaves.is_empty()
            && self.qlocales.is_empty()
    }

    /// Parses one document and checks its schema version.
    pub fn parse(text: &str) -> CliResult<Document> {
        let doc: Document =
            serde_json::from_str(text).map_err(|e| input(format!("parse error: {e}")))?;
        if doc.schema != SCHEMA_VERSION {
            return Err(input(format!(
                "unsupported schema version {} (this build reads version {})",
                doc.schema, SCHEMA_VERSION
            )));
        }
        Ok(doc)
    }

    /// Merges several documents into one; a name declared twice in the same
    /// section is an error even when the bodies agree.
    pub fn merge(docs: Vec<Document>) -> CliResult<Document> {
        fn fold<T>(
            section: &'static str,
            into: &mut BTreeMap<String, T>,
            from: BTreeMap<String, T>,
        ) -> CliResult<()> {
            for (name, value) in from {
                if into.contains_key(&name) {
                    return Err(input(format!("duplicate declaration: {section} {name}")));
                }
                into.insert(name, value);
            }
            Ok(())
        }
        let mut merged = Document::new();
        for doc in docs {
            fold("poset", &mut merged.posets, doc.posets)?;
            fold("lattice", &mut merged.lattices, doc.lattices)?;
            fold("quantale", &mut merged.quantales, doc.quantales)?;
            fold("morphism", &mut merged.morphisms, doc.morphisms)?;
            fold("presheaf", &mut merged.presheaves, doc.presheaves)?;
            fold("qlocale", &mut merged.qlocales, doc.qlocales)?;
        }
        Ok(merged)
    }
}

impl Default for Document {
    fn default() -> Self {
        Document::new()
    }
}

/// All declarations from the input documents, validated and resolved. The
/// `*_refs` maps remember which declared names each composite structure was
/// built from, so reports can reference them.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub posets: BTreeMap<String, FinPoset>,
    pub lattices: BTreeMap<String, DistLattice>,
    pub quantales: BTreeMap<String, MonoidalPoset>,
    pub morphisms: BTreeMap<String, LatticeMorphism>,
    /// Source and target lattice names of each morphism.
    pub morphism_refs: BTreeMap<String, (String, String)>,
    pub presheaves: BTreeMap<String, Presheaf>,
    /// Site lattice name of each presheaf.
    pub presheaf_sites: BTreeMap<String, String>,
    pub qlocales: BTreeMap<String, QLocale>,
    /// Space lattice and coefficient quantale names of each structured
    /// frame.
    pub qlocale_refs: BTreeMap<String, (String, String)>,
}

/// Validates every declaration in the merged document and builds the
/// workspace. `max_size` bounds the carrier of each declared structure.
pub fn resolve(doc: &Document, max_size: usize) -> CliResult<Workspace> {
    let mut ws = Workspace::default();
    for (name, d) in &doc.posets {
        ws.posets
            .insert(name.clone(), build_poset("poset", name, &d.elements, &d.leq, max_size)?);
    }
    for (name, d) in &doc.lattices {
        let p = build_poset("lattice", name, &d.elements, &d.leq, max_size)?;
        let l = DistLattice::new(p)
            .map_err(|e| input(format!("lattice {name}: {e}")))?;
        check_declared_bound(name, &l, "top", d.top.as_deref(), l.top())?;
        check_declared_bound(name, &l, "bottom", d.bottom.as_deref(), l.bottom())?;
        ws.lattices.insert(name.clone(), l);
    }
    for (name, d) in &doc.quantales {
        let p = build_poset("quantale", name, &d.elements, &d.leq, max_size)?;
        let n = p.len();
        if d.tensor.len() != n || d.tensor.iter().any(|row| row.len() != n) {
            return Err(input(format!(
                "quantale {name}: the tensor table must be {n} rows of {n} entries"
            )));
        }
        let mut tensor = vec![vec![0usize; n]; n];
        for (i, row) in d.tensor.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                tensor[i][j] = p.index_of(entry).ok_or_else(|| {
                    input(format!("quantale {name}: tensor entry {entry:?} names no element"))
                })?;
            }
        }
        let unit = p
            .index_of(&d.unit)
            .ok_or_else(|| input(format!("quantale {name}: unit {:?} names no element", d.unit)))?;
        let q = MonoidalPoset::new(p, tensor, unit)
            .map_err(|e| input(format!("quantale {name}: {e}")))?;
        ws.quantales.insert(name.clone(), q);
    }
    for (name, d) in &doc.morphisms {
        let (m, refs) = build_morphism(name, d, &ws.lattices)?;
        ws.morphisms.insert(name.clone(), m);
        ws.morphism_refs.insert(name.clone(), refs);
    }
    for (name, d) in &doc.presheaves {
        let f = build_presheaf(name, d, &ws.lattices)?;
        ws.presheaves.insert(name.clone(), f);
        ws.presheaf_sites.insert(name.clone(), d.site.clone());
    }
    for (name, d) in &doc.qlocales {
        let l = build_qlocale(name, d, &ws.lattices, &ws.quantales)?;
        ws.qlocales.insert(name.clone(), l);
        ws.qlocale_refs.insert(name.clone(), (d.space.clone(), d.coefficients.clone()));
    }
    Ok(ws)
}

fn build_poset(
    kind: &str,
    name: &str,
    elements: &[String],
    leq: &[(String, String)],
    max_size: usize,
) -> CliResult<FinPoset> {
    if elements.len() > max_size {
        return Err(input(format!(
            "{kind} {name}: size limit exceeded: {} elements over the --max-size bound {max_size}",
            elements.len()
        )));
    }
    FinPoset::new(elements.to_vec(), leq).map_err(|e| input(format!("{kind} {name}: {e}")))
}

fn check_declared_bound(
    name: &str,
    l: &DistLattice,
    which: &str,
    declared: Option<&str>,
    actual: usize,
) -> CliResult<()> {
    if let Some(declared) = declared {
        let idx = l
            .carrier()
            .index_of(declared)
            .ok_or_else(|| input(format!("lattice {name}: {which} {declared:?} names no element")))?;
        if idx != actual {
            return Err(input(format!(
                "lattice {name}: declared {which} {declared:?} but the {which} is {:?}",
                l.carrier().name(actual)
            )));
        }
    }
    Ok(())
}

fn build_morphism(
    name: &str,
    d: &MorphismDescriptor,
    lattices: &BTreeMap<String, DistLattice>,
) -> CliResult<(LatticeMorphism, (String, String))> {
    let src = lattices
        .get(&d.source)
        .ok_or_else(|| input(format!("morphism {name}: unknown lattice {:?}", d.source)))?;
    let tgt = lattices
        .get(&d.target)
        .ok_or_else(|| input(format!("morphism {name}: unknown lattice {:?}", d.target)))?;
    let kind = match d.kind.as_str() {
        "slat" => MorphismKind::Semilattice,
        "frame" => MorphismKind::Frame,
        other => {
            return Err(input(format!(
                "morphism {name}: kind {other:?} is neither \"slat\" nor \"frame\""
            )))
        }
    };
    for key in d.map.keys() {
        if src.carrier().index_of(key).is_none() {
            return Err(input(format!(
                "morphism {name}: map key {key:?} names no source element"
            )));
        }
    }
    let mut table = Vec::with_capacity(src.carrier().len());
    for v in 0..src.carrier().len() {
        let from = src.carrier().name(v);
        let to = d
            .map
            .get(from)
            .ok_or_else(|| input(format!("morphism {name}: no image for {from:?}")))?;
        let to_idx = tgt.carrier().index_of(to).ok_or_else(|| {
            input(format!("morphism {name}: image {to:?} names no target element"))
        })?;
        table.push(to_idx);
    }
    let map = MonotoneMap::new(src.carrier().clone(), tgt.carrier().clone(), table)
        .map_err(|e| input(format!("morphism {name}: {e}")))?;
    let m = LatticeMorphism::new(map, kind).map_err(|e| input(format!("morphism {name}: {e}")))?;
    Ok((m, (d.source.clone(), d.target.clone())))
}

fn build_presheaf(
    name: &str,
    d: &PresheafDescriptor,
    lattices: &BTreeMap<String, DistLattice>,
) -> CliResult<Presheaf> {
    let site = lattices
        .get(&d.site)
        .ok_or_else(|| input(format!("presheaf {name}: unknown lattice {:?}", d.site)))?;
    let p = site.carrier();
    if let Some(bad) = p.element_names().iter().find(|n| n.contains('>')) {
        return Err(input(format!(
            "presheaf {name}: site element {bad:?} contains '>', which restriction keys reserve"
        )));
    }
    for key in d.sections.keys() {
        if p.index_of(key).is_none() {
            return Err(input(format!(
                "presheaf {name}: section list for {key:?}, which names no site element"
            )));
        }
    }
    let mut sections = Vec::with_capacity(p.len());
    for v in 0..p.len() {
        let names = d.sections.get(p.name(v)).ok_or_else(|| {
            input(format!("presheaf {name}: no section list for element {:?}", p.name(v)))
        })?;
        sections.push(names.clone());
    }
    let mut given: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (key, table) in &d.restrictions {
        let (upper_name, lower_name) = key.split_once('>').ok_or_else(|| {
            input(format!("presheaf {name}: restriction key {key:?} is not of the form V>U"))
        })?;
        let hi = p.index_of(upper_name).ok_or_else(|| {
            input(format!("presheaf {name}: restriction key {key:?}: {upper_name:?} names no element"))
        })?;
        let lo = p.index_of(lower_name).ok_or_else(|| {
            input(format!("presheaf {name}: restriction key {key:?}: {lower_name:?} names no element"))
        })?;
        if lo == hi || !p.leq(lo, hi) {
            return Err(input(format!(
                "presheaf {name}: restriction key {key:?} must go from an element strictly down"
            )));
        }
        let mut t = vec![usize::MAX; sections[hi].len()];
        for (sname, tname) in table {
            let si = sections[hi].iter().position(|s| s == sname).ok_or_else(|| {
                input(format!(
                    "presheaf {name}: restriction {key}: {sname:?} is no section at {upper_name:?}"
                ))
            })?;
            let ti = sections[lo].iter().position(|s| s == tname).ok_or_else(|| {
                input(format!(
                    "presheaf {name}: restriction {key}: {tname:?} is no section at {lower_name:?}"
                ))
            })?;
            t[si] = ti;
        }
        if let Some(missing) = t.iter().position(|&x| x == usize::MAX) {
            return Err(input(format!(
                "presheaf {name}: restriction {key}: no image for section {:?}",
                sections[hi][missing]
            )));
        }
        given.insert((lo, hi), t);
    }
    let cover_maps: BTreeMap<(usize, usize), Vec<usize>> = p
        .covers()
        .into_iter()
        .filter_map(|edge| given.get(&edge).map(|t| (edge, t.clone())))
        .collect();
    let ps = Presheaf::from_cover_maps(site.clone(), sections, cover_maps)
        .map_err(|e| input(format!("presheaf {name}: {e}")))?;
    for (&(lo, hi), t) in &given {
        if ps.restriction_table(lo, hi) != t.as_slice() {
            return Err(input(format!(
                "presheaf {name}: restriction {}>{} disagrees with the composite of the covering tables",
                p.name(hi),
                p.name(lo)
            )));
        }
    }
    Ok(ps)
}

fn build_qlocale(
    name: &str,
    d: &QLocaleDescriptor,
    lattices: &BTreeMap<String, DistLattice>,
    quantales: &BTreeMap<String, MonoidalPoset>,
) -> CliResult<QLocale> {
    let space = lattices
        .get(&d.space)
        .ok_or_else(|| input(format!("qlocale {name}: unknown lattice {:?}", d.space)))?;
    let coeff = quantales.get(&d.coefficients).ok_or_else(|| {
        input(format!("qlocale {name}: unknown quantale {:?}", d.coefficients))
    })?;
    let p = space.carrier();
    for key in d.structure.keys() {
        if p.index_of(key).is_none() {
            return Err(input(format!(
                "qlocale {name}: structure key {key:?} names no space element"
            )));
        }
    }
    let mut table = Vec::with_capacity(p.len());
    for v in 0..p.len() {
        let from = p.name(v);
        let to = d
            .structure
            .get(from)
            .ok_or_else(|| input(format!("qlocale {name}: no structure image for {from:?}")))?;
        let to_idx = coeff.carrier().index_of(to).ok_or_else(|| {
            input(format!("qlocale {name}: image {to:?} names no coefficient element"))
        })?;
        table.push(to_idx);
    }
    QLocale::new(space.clone(), coeff.clone(), table)
        .map_err(|e| input(format!("qlocale {name}: {e}")))
}

/// Renders a poset back into its declaration, generating the order from the
/// covering pairs.
pub fn poset_descriptor(p: &FinPoset) -> PosetDescriptor {
    PosetDescriptor {
        elements: p.element_names().to_vec(),
        leq: p
            .covers()
            .into_iter()
            .map(|(lo, hi)| (p.name(lo).to_string(), p.name(hi).to_string()))
            .collect(),
    }
}

/// Renders a lattice back into its declaration, with top and bottom filled
/// in.
pub fn lattice_descriptor(l: &DistLattice) -> LatticeDescriptor {
    let p = l.carrier();
    let base = poset_descriptor(p);
    LatticeDescriptor {
        elements: base.elements,
        leq: base.leq,
        top: Some(p.name(l.top()).to_string()),
        bottom: Some(p.name(l.bottom()).to_string()),
    }
}

/// Renders a monoidal poset back into its declaration.
pub fn quantale_descriptor(q: &MonoidalPoset) -> QuantaleDescriptor {
    let p = q.carrier();
    let base = poset_descriptor(p);
    let n = p.len();
    QuantaleDescriptor {
        elements: base.elements,
        leq: base.leq,
        tensor: (0..n)
            .map(|i| (0..n).map(|j| p.name(q.tensor(i, j)).to_string()).collect())
            .collect(),
        unit: p.name(q.unit()).to_string(),
    }
}

/// Renders a lattice morphism back into its declaration, given the declared
/// names of its endpoints.
pub fn morphism_descriptor(
    m: &LatticeMorphism,
    source: &str,
    target: &str,
) -> MorphismDescriptor {
    let src = m.map().source();
    let tgt = m.map().target();
    MorphismDescriptor {
        source: source.to_string(),
        target: target.to_string(),
        map: (0..src.len())
            .map(|v| (src.name(v).to_string(), tgt.name(m.map().apply(v)).to_string()))
            .collect(),
        kind: match m.kind() {
            MorphismKind::Semilattice => "slat".to_string(),
            MorphismKind::Frame => "frame".to_string(),
        },
    }
}

/// Renders a presheaf back into its declaration with full restriction
/// tables, given the declared name of its site.
pub fn presheaf_descriptor(f: &Presheaf, site_name: &str) -> PresheafDescriptor {
    let p = f.site().carrier();
    let sections: BTreeMap<String, Vec<String>> = (0..p.len())
        .map(|v| (p.name(v).to_string(), f.section_names(v).to_vec()))
        .collect();
    let mut restrictions = BTreeMap::new();
    for lo in 0..p.len() {
        for hi in 0..p.len() {
            if lo == hi || !p.leq(lo, hi) {
                continue;
            }
            let table: BTreeMap<String, String> = f
                .section_names(hi)
                .iter()
                .enumerate()
                .map(|(s, sname)| {
                    (sname.clone(), f.section_names(lo)[f.restrict(lo, hi, s)].clone())
                })
                .collect();
            restrictions.insert(format!("{}>{}", p.name(hi), p.name(lo)), table);
        }
    }
    PresheafDescriptor { site: site_name.to_string(), sections, restrictions }
}

/// Renders a structured frame back into its declaration, given the declared
/// names of its space and coefficients.
pub fn qlocale_descriptor(
    l: &QLocale,
    space_name: &str,
    coefficients_name: &str,
) -> QLocaleDescriptor {
    let p = l.space().carrier();
    let qc = l.coefficients().carrier();
    QLocaleDescriptor {
        space: space_name.to_string(),
        coefficients: coefficients_name.to_string(),
        structure: l
            .structure_table()
            .iter()
            .enumerate()
            .map(|(v, &c)| (p.name(v).to_string(), qc.name(c).to_string()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_doc() -> &'static str {
        r#"{
            "schema": 1,
            "lattices": {
                "two": {"elements": ["bot", "top"], "leq": [["bot", "top"]]}
            }
        }"#
    }

    #[test]
    fn minimal_document_parses_and_resolves() {
        let doc = Document::parse(two_doc()).unwrap();
        let ws = resolve(&doc, 12).unwrap();
        assert_eq!(ws.lattices["two"].carrier().len(), 2);
    }

    #[test]
    fn wrong_schema_version_is_rejected() {
        let err = Document::parse(r#"{"schema": 2}"#).unwrap_err();
        assert!(matches!(err, CliError::Input(_)));
    }

    #[test]
    fn unknown_top_level_fields_are_rejected() {
        let err = Document::parse(r#"{"schema": 1, "gadgets": {}}"#).unwrap_err();
        assert!(matches!(err, CliError::Input(_)));
    }

    #[test]
    fn duplicate_names_across_documents_are_rejected() {
        let a = Document::parse(two_doc()).unwrap();
        let b = Document::parse(two_doc()).unwrap();
        let err = Document::merge(vec![a, b]).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn size_guard_rejects_oversized_declarations() {
        let names: Vec<String> = (0..5).map(|i| format!("e{i}")).collect();
        let doc = Document::parse(&format!(
            r#"{{"schema": 1, "posets": {{"p": {{"elements": {}}}}}}}"#,
            serde_json::to_string(&names).unwrap()
        ))
        .unwrap();
        assert!(resolve(&doc, 4).is_err());
        assert!(resolve(&doc, 5).is_ok());
    }

    #[test]
    fn declared_top_must_match() {
        let text = r#"{
            "schema": 1,
            "lattices": {
                "two": {"elements": ["bot", "top"], "leq": [["bot", "top"]], "top": "bot"}
            }
        }"#;
        let doc = Document::parse(text).unwrap();
        let err = resolve(&doc, 12).unwrap_err();
        assert!(err.to_string().contains("declared top"));
    }

    #[test]
    fn tensor_entries_must_name_elements() {
        let text = r#"{
            "schema": 1,
            "quantales": {
                "q": {
                    "elements": ["0", "1"],
                    "leq": [["0", "1"]],
                    "tensor": [["0", "0"], ["0", "oops"]],
                    "unit": "1"
                }
            }
        }"#;
        let doc = Document::parse(text).unwrap();
        let err = resolve(&doc, 12).unwrap_err();
        assert!(err.to_string().contains("oops"));
    }

    #[test]
    fn presheaf_restrictions_must_compose() {
        // A three-chain with an extra long-range table that contradicts the
        // composite of the two covering tables.
        let text = r#"{
            "schema": 1,
            "lattices": {
                "c3": {"elements": ["a", "b", "c"], "leq": [["a", "b"], ["b", "c"]]}
            },
            "presheaves": {
                "bad": {
                    "site": "c3",
                    "sections": {"a": ["x", "y"], "b": ["m"], "c": ["s"]},
                    "restrictions": {
                        "b>a": {"m": "x"},
                        "c>b": {"s": "m"},
                        "c>a": {"s": "y"}
                    }
                }
            }
        }"#;
        let doc = Document::parse(text).unwrap();
        let err = resolve(&doc, 12).unwrap_err();
        assert!(err.to_string().contains("disagrees"), "{err}");
    }

    #[test]
    fn descriptors_round_trip_through_core() {
        let lattice = pointless_core::catalog::square();
        let d = lattice_descriptor(&lattice);
        let doc = Document {
            lattices: [("sq".to_string(), d)].into_iter().collect(),
            ..Document::new()
        };
        let ws = resolve(&doc, 12).unwrap();
        assert!(ws.lattices["sq"].carrier().find_isomorphism(lattice.carrier(), &[]).is_some());

        let q = pointless_core::catalog::luk3();
        let qd = quantale_descriptor(&q);
        let doc = Document {
            quantales: [("luk3".to_string(), qd)].into_iter().collect(),
            ..Document::new()
        };
        let ws = resolve(&doc, 12).unwrap();
        assert_eq!(ws.quantales["luk3"].tensor_table(), q.tensor_table());
    }

    #[test]
    fn presheaf_descriptor_round_trips() {
        let site = pointless_core::catalog::sierp();
        let f = Presheaf::constant(site, &["k0", "k1"]);
        let d = presheaf_descriptor(&f, "sierp");
        let doc = Document {
            lattices: [(
                "sierp".to_string(),
                lattice_descriptor(&pointless_core::catalog::sierp()),
            )]
            .into_iter()
            .collect(),
            presheaves: [("c2".to_string(), d)].into_iter().collect(),
            ..Document::new()
        };
        let ws = resolve(&doc, 12).unwrap();
        assert_eq!(ws.presheaves["c2"], f);
    }
}
