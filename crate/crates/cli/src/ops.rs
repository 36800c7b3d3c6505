//! Command implementations over a resolved workspace.
//!
//! Every command produces a [`Report`]: one [`Entry`] per target it ran
//! against, plus a `declares` document holding any structures the run
//! constructed, rendered back into the input schema so they can be fed to
//! another invocation. Output is deterministic — targets are visited in
//! name order and nothing timing- or address-dependent is printed — so two
//! runs over the same inputs render byte-identical reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use pointless_core::lattice::{
    self, classify_lattice, describe_obstruction, LatticeClass, LatticeError, PushoutLimits,
};
use pointless_core::quantale;
use pointless_core::sheaves::{self, FastFailure, OracleVerdict};
use pointless_core::suite::{self, SuiteConfig};
use pointless_core::{DistLattice, LatticeMorphism, Presheaf, QLocale};

use crate::schema::{
    lattice_descriptor, morphism_descriptor, poset_descriptor, presheaf_descriptor,
    qlocale_descriptor, quantale_descriptor, CliError, CliResult, Document, Workspace,
    SCHEMA_VERSION,
};

/// The operation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Classify,
    Points,
    Spatial,
    Birkhoff,
    Pushout,
    Cidem,
    Idem,
    CidemLattice,
    Iota,
    AdjointSlat,
    AdjointFrm,
    Sheafcheck,
    Sheafify,
    Subterminals,
    Dayprod,
    CatlocCheck,
    CatlocEmbed,
    Suite,
}

impl Command {
    /// The name used in report lines and the JSON `command` field.
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Classify => "classify",
            Command::Points => "points",
            Command::Spatial => "spatial",
            Command::Birkhoff => "birkhoff",
            Command::Pushout => "pushout",
            Command::Cidem => "cidem",
            Command::Idem => "idem",
            Command::CidemLattice => "cidem-lattice",
            Command::Iota => "iota",
            Command::AdjointSlat => "adjoint-slat",
            Command::AdjointFrm => "adjoint-frm",
            Command::Sheafcheck => "sheafcheck",
            Command::Sheafify => "sheafify",
            Command::Subterminals => "subterminals",
            Command::Dayprod => "dayprod",
            Command::CatlocCheck => "catloc-check",
            Command::CatlocEmbed => "catloc-embed",
            Command::Suite => "suite",
        }
    }
}

/// Run-time settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Size guard for declared structures and derived constructions.
    pub max_size: usize,
    /// Seed for every randomized check.
    pub seed: u64,
    /// Restrict to targets whose label (or a `:`/space-separated part of
    /// it) equals this.
    pub only: Option<String>,
}

/// How to render a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    Text,
    Json,
}

/// Outcome of one target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Skip,
}

/// One line of a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Entry {
    pub target: String,
    pub status: Status,
    pub detail: String,
}

/// A full command report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub entries: Vec<Entry>,
    /// Structures this run constructed, in the input document format.
    #[serde(default, skip_serializing_if = "Document::is_empty")]
    pub declares: Document,
}

impl Report {
    pub fn has_failure(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }
}

/// Renders a report; the output is a pure function of the report.
pub fn render(report: &Report, mode: ReportMode) -> String {
    match mode {
        ReportMode::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        ReportMode::Text => {
            let mut out = String::new();
            for e in &report.entries {
                let prefix = match e.status {
                    Status::Ok => "",
                    Status::Fail => "FAIL: ",
                    Status::Skip => "SKIP: ",
                };
                let _ = writeln!(out, "{} {}: {}{}", report.command, e.target, prefix, e.detail);
            }
            let ok = report.entries.iter().filter(|e| e.status == Status::Ok).count();
            let fail = report.entries.iter().filter(|e| e.status == Status::Fail).count();
            let skip = report.entries.iter().filter(|e| e.status == Status::Skip).count();
            let _ = writeln!(
                out,
                "{}: {} targets, {} ok, {} failed, {} skipped",
                report.command,
                report.entries.len(),
                ok,
                fail,
                skip
            );
            out
        }
    }
}

/// Whether `--only` selects this target label. With no filter everything is
/// selected; otherwise the filter must equal the label or one of its
/// `:`/space-separated parts.
fn selected(only: &Option<String>, label: &str) -> bool {
    match only {
        None => true,
        Some(o) => label == o || label.split([':', ' ']).any(|part| part == o),
    }
}

/// Runs one command over the workspace.
pub fn run(cmd: Command, ws: &Workspace, cfg: &RunConfig) -> CliResult<Report> {
    let (entries, declares) = match cmd {
        Command::Validate => validate(ws, cfg)?,
        Command::Classify => classify(ws, cfg)?,
        Command::Points => points(ws, cfg)?,
        Command::Spatial => spatial(ws, cfg)?,
        Command::Birkhoff => birkhoff(ws, cfg)?,
        Command::Pushout => pushout(ws, cfg)?,
        Command::Cidem => coidempotents(ws, cfg, false)?,
        Command::Idem => coidempotents(ws, cfg, true)?,
        Command::CidemLattice => cidem_lattice(ws, cfg)?,
        Command::Iota => iota(ws, cfg)?,
        Command::AdjointSlat => adjoint(ws, cfg, false)?,
        Command::AdjointFrm => adjoint(ws, cfg, true)?,
        Command::Sheafcheck => sheafcheck(ws, cfg)?,
        Command::Sheafify => sheafify(ws, cfg)?,
        Command::Subterminals => subterminals(ws, cfg)?,
        Command::Dayprod => dayprod(ws, cfg)?,
        Command::CatlocCheck => catloc_check(ws, cfg)?,
        Command::CatlocEmbed => catloc_embed(ws, cfg)?,
        Command::Suite => run_suite(cfg)?,
    };
    Ok(Report {
        schema: SCHEMA_VERSION,
        command: cmd.name().to_string(),
        entries,
        declares,
    })
}

type OpResult = CliResult<(Vec<Entry>, Document)>;

fn ok(target: impl Into<String>, detail: impl Into<String>) -> Entry {
    Entry { target: target.into(), status: Status::Ok, detail: detail.into() }
}

fn fail(target: impl Into<String>, detail: impl Into<String>) -> Entry {
    Entry { target: target.into(), status: Status::Fail, detail: detail.into() }
}

fn skip(target: impl Into<String>, detail: impl Into<String>) -> Entry {
    Entry { target: target.into(), status: Status::Skip, detail: detail.into() }
}

/// Braced, comma-joined element names.
fn name_set(p: &pointless_core::FinPoset, indices: &[usize]) -> String {
    let names: Vec<&str> = indices.iter().map(|&v| p.name(v)).collect();
    format!("{{{}}}", names.join(","))
}

/// The extent of a point: the elements it sends to the target top.
fn extent(point: &LatticeMorphism) -> String {
    let src = point.map().source();
    let top = point.map().target().top().expect("points land in a lattice with a top");
    let hit: Vec<usize> = (0..src.len()).filter(|&v| point.map().apply(v) == top).collect();
    name_set(src, &hit)
}

/// Re-export of the full workspace as a document.
fn export_workspace(ws: &Workspace) -> Document {
    let mut doc = Document::new();
    for (name, p) in &ws.posets {
        doc.posets.insert(name.clone(), poset_descriptor(p));
    }
    for (name, l) in &ws.lattices {
        doc.lattices.insert(name.clone(), lattice_descriptor(l));
    }
    for (name, q) in &ws.quantales {
        doc.quantales.insert(name.clone(), quantale_descriptor(q));
    }
    for (name, m) in &ws.morphisms {
        let (src, tgt) = &ws.morphism_refs[name];
        doc.morphisms.insert(name.clone(), morphism_descriptor(m, src, tgt));
    }
    for (name, f) in &ws.presheaves {
        doc.presheaves.insert(name.clone(), presheaf_descriptor(f, &ws.presheaf_sites[name]));
    }
    for (name, l) in &ws.qlocales {
        let (space, coeff) = &ws.qlocale_refs[name];
        doc.qlocales.insert(name.clone(), qlocale_descriptor(l, space, coeff));
    }
    doc
}

/// Declares a lattice, overwriting nothing (identical re-inserts are fine).
fn declare_lattice(doc: &mut Document, name: &str, l: &DistLattice) {
    doc.lattices.insert(name.to_string(), lattice_descriptor(l));
}

fn validate(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    for (name, p) in &ws.posets {
        let label = format!("poset {name}");
        if selected(&cfg.only, &label) {
            entries.push(ok(label, format!("{} elements", p.len())));
        }
    }
    for (name, l) in &ws.lattices {
        let label = format!("lattice {name}");
        if selected(&cfg.only, &label) {
            let p = l.carrier();
            entries.push(ok(
                label,
                format!(
                    "{} elements, top {}, bottom {}",
                    p.len(),
                    p.name(l.top()),
                    p.name(l.bottom())
                ),
            ));
        }
    }
    for (name, q) in &ws.quantales {
        let label = format!("quantale {name}");
        if selected(&cfg.only, &label) {
            entries.push(ok(
                label,
                format!(
                    "{} elements, unit {}, fully flagged: {}",
                    q.carrier().len(),
                    q.carrier().name(q.unit()),
                    if q.fully_flagged() { "yes" } else { "no" }
                ),
            ));
        }
    }
    for (name, m) in &ws.morphisms {
        let label = format!("morphism {name}");
        if selected(&cfg.only, &label) {
            let (src, tgt) = &ws.morphism_refs[name];
            let kind = match m.kind() {
                pointless_core::MorphismKind::Semilattice => "slat",
                pointless_core::MorphismKind::Frame => "frame",
            };
            entries.push(ok(label, format!("{src} -> {tgt} ({kind})")));
        }
    }
    for (name, f) in &ws.presheaves {
        let label = format!("presheaf {name}");
        if selected(&cfg.only, &label) {
            let total: usize =
                (0..f.site().carrier().len()).map(|v| f.section_count(v)).sum();
            entries.push(ok(
                label,
                format!("site {}, {} sections total", ws.presheaf_sites[name], total),
            ));
        }
    }
    for (name, l) in &ws.qlocales {
        let label = format!("qlocale {name}");
        if selected(&cfg.only, &label) {
            let (space, coeff) = &ws.qlocale_refs[name];
            let _ = l;
            entries.push(ok(label, format!("space {space} over {coeff}")));
        }
    }
    Ok((entries, export_workspace(ws)))
}

fn classify(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    for (name, p) in &ws.posets {
        if !selected(&cfg.only, name) {
            continue;
        }
        let detail = match classify_lattice(p) {
            LatticeClass::Distributive => "distributive lattice".to_string(),
            LatticeClass::Semilattice { obstruction } => format!(
                "meet-semilattice but not a distributive lattice: {}",
                describe_obstruction(p, &obstruction)
            ),
            LatticeClass::NotSemilattice { witness } => {
                format!("not a meet-semilattice: {witness}")
            }
        };
        entries.push(ok(name.clone(), detail));
    }
    for (name, l) in &ws.lattices {
        if !selected(&cfg.only, name) {
            continue;
        }
        let p = l.carrier();
        entries.push(ok(
            name.clone(),
            format!(
                "distributive lattice; top {}, bottom {}",
                p.name(l.top()),
                p.name(l.bottom())
            ),
        ));
    }
    Ok((entries, Document::new()))
}

fn points(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    for (name, l) in &ws.lattices {
        if !selected(&cfg.only, name) {
            continue;
        }
        let pts = lattice::points(l);
        let detail = if pts.is_empty() {
            "0 points".to_string()
        } else {
            let extents: Vec<String> = pts.iter().map(extent).collect();
            format!("{} points: {}", pts.len(), extents.join("; "))
        };
        entries.push(ok(name.clone(), detail));
    }
    Ok((entries, Document::new()))
}

fn spatial(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    for (name, l) in &ws.lattices {
        if !selected(&cfg.only, name) {
            continue;
        }
        let r = lattice::spatial_reconstruction(l);
        if r.iso {
            entries.push(ok(
                name.clone(),
                format!(
                    "rebuilt from {} points; {} opens; comparison is an isomorphism",
                    r.points.len(),
                    r.opens.carrier().len()
                ),
            ));
        } else {
            entries.push(fail(
                name.clone(),
                format!(
                    "comparison is not an isomorphism: {} elements against {} opens",
                    l.carrier().len(),
                    r.opens.carrier().len()
                ),
            ));
        }
    }
    Ok((entries, Document::new()))
}

fn birkhoff(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    let mut declares = Document::new();
    for (name, l) in &ws.lattices {
        if !selected(&cfg.only, name) {
            continue;
        }
        match lattice::birkhoff(l) {
            Err(e) => entries.push(fail(name.clone(), e.to_string())),
            Ok(r) => {
                let both_iso =
                    lattice::is_lattice_iso(&r.to_down) && lattice::is_lattice_iso(&r.from_down);
                if !both_iso {
                    entries.push(fail(
                        name.clone(),
                        "the comparison with the downset lattice is not an isomorphism"
                            .to_string(),
                    ));
                    continue;
                }
                entries.push(ok(
                    name.clone(),
                    format!(
                        "join-irreducibles {}; downset lattice has {} elements; isomorphism verified",
                        name_set(l.carrier(), &r.irreducible_indices),
                        r.down.carrier().len()
                    ),
                ));
                declares
                    .posets
                    .insert(format!("{name}.birkhoff.irreducibles"), poset_descriptor(&r.irreducibles));
                declare_lattice(&mut declares, &format!("{name}.birkhoff"), &r.down);
            }
        }
    }
    Ok((entries, declares))
}

fn pushout(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    let mut declares = Document::new();
    let limits = PushoutLimits { max_generators: 2 * cfg.max_size, max_elements: 4096 };
    let frame_morphisms: Vec<&String> = ws
        .morphisms
        .iter()
        .filter(|(_, m)| m.kind() == pointless_core::MorphismKind::Frame)
        .map(|(n, _)| n)
        .collect();
    for &f_name in &frame_morphisms {
        for &g_name in &frame_morphisms {
            if ws.morphism_refs[f_name].0 != ws.morphism_refs[g_name].0 {
                continue;
            }
            let label = format!("{f_name}:{g_name}");
            if !selected(&cfg.only, &label) {
                continue;
            }
            let f = &ws.morphisms[f_name];
            let g = &ws.morphisms[g_name];
            match lattice::frame_pushout(f, g, &limits) {
                Err(LatticeError::SizeLimitExceeded { detail }) => {
                    return Err(CliError::Input(format!(
                        "pushout {label}: size limit exceeded: {detail}; raise --max-size"
                    )));
                }
                Err(e) => entries.push(fail(label, e.to_string())),
                Ok(r) => {
                    entries.push(ok(
                        &label,
                        format!(
                            "{} elements; {} points, each restricting to a compatible pair of side points",
                            r.lattice.carrier().len(),
                            r.point_pairs.len()
                        ),
                    ));
                    let left_side = &ws.morphism_refs[f_name].1;
                    let right_side = &ws.morphism_refs[g_name].1;
                    let apex_name = format!("{label}.pushout");
                    declare_lattice(&mut declares, left_side, &lattice_of(f));
                    declare_lattice(&mut declares, right_side, &lattice_of(g));
                    declare_lattice(&mut declares, &apex_name, &r.lattice);
                    declares.morphisms.insert(
                        format!("{label}.pushout.left"),
                        morphism_descriptor(&r.left_leg, left_side, &apex_name),
                    );
                    declares.morphisms.insert(
                        format!("{label}.pushout.right"),
                        morphism_descriptor(&r.right_leg, right_side, &apex_name),
                    );
                }
            }
        }
    }
    Ok((entries, declares))
}

/// The target of a frame morphism as a lattice (its carrier is one by
/// construction).
fn lattice_of(m: &LatticeMorphism) -> DistLattice {
    DistLattice::new(m.map().target().clone()).expect("frame morphism targets are lattices")
}

fn coidempotents(ws: &Workspace, cfg: &RunConfig, upper: bool) -> OpResult {
    let mut entries = Vec::new();
    let mut declares = Document::new();
    let suffix = if upper { "idem" } else { "cidem" };
    for (name, q) in &ws.quantales {
        if !selected(&cfg.only, name) {
            continue;
        }
        let sub = if upper { quantale::idem(q) } else { quantale::cidem(q) };
        entries.push(ok(
            name.clone(),
            format!(
                "members {} ({} of {})",
                name_set(q.carrier(), sub.members()),
                sub.members().len(),
                q.carrier().len()
            ),
        ));
        declares.posets.insert(format!("{name}.{suffix}"), poset_descriptor(sub.poset()));
    }
    Ok((entries, declares))
}

fn cidem_lattice(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    let mut declares = Document::new();
    for (name, q) in &ws.quantales {
        if !selected(&cfg.only, name) {
            continue;
        }
        if !q.fully_flagged() {
            let flags = q.flags();
            let mut missing = Vec::new();
            if !flags.has_finite_joins {
                missing.push("has_finite_joins");
            }
            if !flags.has_all_joins {
                missing.push("has_all_joins");
            }
            if !flags.tensor_distributes {
                missing.push("tensor_distributes");
            }
            entries.push(skip(
                name.clone(),
                format!("flags missing: {}", missing.join(", ")),
            ));
            continue;
        }
        match quantale::cidem_lattice(q) {
            Err(e) => entries.push(fail(name.clone(), e.to_string())),
            Ok(r) => {
                entries.push(ok(
                    name.clone(),
                    format!(
                        "members {}; a {}-element frame with tensor as meet",
                        name_set(q.carrier(), &r.members),
                        r.lattice.carrier().len()
                    ),
                ));
                declare_lattice(&mut declares, &format!("{name}.cidem-lattice"), &r.lattice);
            }
        }
    }
    Ok((entries, declares))
}

fn iota(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    let mut declares = Document::new();
    for (name, l) in &ws.lattices {
        if !selected(&cfg.only, name) {
            continue;
        }
        match quantale::iota(&l.as_semilattice()) {
            Err(e) => entries.push(fail(name.clone(), e.to_string())),
            Ok(q) => {
                entries.push(ok(
                    name.clone(),
                    format!(
                        "tensor is the meet, unit {}; fully flagged: {}",
                        q.carrier().name(q.unit()),
                        if q.fully_flagged() { "yes" } else { "no" }
                    ),
                ));
                declares.quantales.insert(format!("{name}.iota"), quantale_descriptor(&q));
            }
        }
    }
    Ok((entries, declares))
}

fn adjoint(ws: &Workspace, cfg: &RunConfig, frames: bool) -> OpResult {
    let mut entries = Vec::new();
    for (l_name, l) in &ws.lattices {
        for (q_name, q) in &ws.quantales {
            let label = format!("{l_name}:{q_name}");
            if !selected(&cfg.only, &label) {
                continue;
            }
            if frames && !q.fully_flagged() {
                entries.push(skip(label, "the quantale is not fully flagged".to_string()));
                continue;
            }
            let cert = if frames {
                quantale::transpose_frm(l, q)
            } else {
                quantale::transpose_slat(&l.as_semilattice(), q)
            };
            match cert {
                Err(e) => entries.push(fail(label, e.to_string())),
                Ok(c) => {
                    let n = c.lattice_side.len();
                    let mutually_inverse = c.monoidal_side.len() == n
                        && c.forward.len() == n
                        && (0..n).all(|i| c.backward[c.forward[i]] == i)
                        && (0..c.monoidal_side.len()).all(|j| c.forward[c.backward[j]] == j);
                    if mutually_inverse {
                        entries.push(ok(label, format!("bijection verified: {n} = {n}")));
                    } else {
                        entries.push(fail(
                            label,
                            format!(
                                "transposition is not a bijection: {} lattice-side against {} monoidal-side",
                                n,
                                c.monoidal_side.len()
                            ),
                        ));
                    }
                }
            }
        }
    }
    Ok((entries, Document::new()))
}

/// Renders the oracle's counterexample with element and section names.
fn oracle_witness(f: &Presheaf, verdict: &OracleVerdict) -> String {
    let p = f.site().carrier();
    match verdict {
        OracleVerdict::Sheaf { .. } => String::new(),
        OracleVerdict::NotSeparated { element, sieve, left, right } => format!(
            "sections {} and {} at {} agree on the covering sieve {}",
            f.section_names(*element)[*left],
            f.section_names(*element)[*right],
            p.name(*element),
            name_set(p, sieve.members())
        ),
        OracleVerdict::NoAmalgamation { element, sieve, family } => {
            let pairs: Vec<String> = sieve
                .members()
                .iter()
                .zip(family)
                .map(|(&m, &s)| format!("{}:{}", p.name(m), f.section_names(m)[s]))
                .collect();
            format!(
                "no section at {} restricts to the matching family {{{}}}",
                p.name(*element),
                pairs.join(",")
            )
        }
    }
}

/// Renders the reduced test's counterexample with element names.
fn fast_witness(f: &Presheaf, failure: &FastFailure) -> String {
    let p = f.site().carrier();
    match failure {
        FastFailure::EmptyCover { sections_at_bottom } => format!(
            "the bottom element {} has {} sections instead of one",
            p.name(f.site().bottom()),
            sections_at_bottom
        ),
        FastFailure::BinaryGluing { left, right, detail } => format!(
            "gluing over the pair ({}, {}) fails: {}",
            p.name(*left),
            p.name(*right),
            detail
        ),
    }
}

fn sheafcheck(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    for (name, f) in &ws.presheaves {
        if !selected(&cfg.only, name) {
            continue;
        }
        let oracle = sheaves::is_sheaf_oracle(f);
        let fast = sheaves::is_sheaf_fast(f);
        let agree = oracle.is_sheaf() == fast.is_ok();
        let word = |b: bool| if b { "sheaf" } else { "not-sheaf" };
        let mut detail = format!(
            "oracle: {}; fast: {}; agree: {}",
            word(oracle.is_sheaf()),
            word(fast.is_ok()),
            if agree { "yes" } else { "no" }
        );
        if !oracle.is_sheaf() {
            let _ = write!(detail, "; oracle witness: {}", oracle_witness(f, &oracle));
        }
        if let Err(failure) = &fast {
            let _ = write!(detail, "; fast witness: {}", fast_witness(f, failure));
        }
        if agree {
            entries.push(ok(name.clone(), detail));
        } else {
            entries.push(fail(name.clone(), detail));
        }
    }
    Ok((entries, Document::new()))
}

fn section_profile(f: &Presheaf) -> String {
    let counts: Vec<String> =
        (0..f.site().carrier().len()).map(|v| f.section_count(v).to_string()).collect();
    format!("[{}]", counts.join(","))
}

fn sheafify(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    let mut declares = Document::new();
    for (name, f) in &ws.presheaves {
        if !selected(&cfg.only, name) {
            continue;
        }
        match sheaves::sheafify(f) {
            Err(e) => entries.push(fail(name.clone(), e.to_string())),
            Ok(r) => {
                entries.push(ok(
                    name.clone(),
                    format!(
                        "sections {} -> {}; unit is an isomorphism: {}",
                        section_profile(f),
                        section_profile(&r.sheaf),
                        if r.unit.is_iso() { "yes" } else { "no" }
                    ),
                ));
                let site_name = &ws.presheaf_sites[name];
                declare_lattice(&mut declares, site_name, f.site());
                declares
                    .presheaves
                    .insert(format!("{name}.sheafified"), presheaf_descriptor(&r.sheaf, site_name));
            }
        }
    }
    Ok((entries, declares))
}

fn subterminals(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    let mut declares = Document::new();
    for (name, l) in &ws.lattices {
        if !selected(&cfg.only, name) {
            continue;
        }
        match sheaves::subterminal_frame(l) {
            Err(e) => entries.push(fail(name.clone(), e.to_string())),
            Ok(r) => {
                let p = l.carrier();
                // The support map must be an order isomorphism onto the site.
                let n = r.site_element.len();
                let iso = n == p.len()
                    && (0..n).all(|i| {
                        (0..n).all(|j| {
                            r.frame.carrier().leq(i, j)
                                == p.leq(r.site_element[i], r.site_element[j])
                        })
                    })
                    && {
                        let mut seen = vec![false; p.len()];
                        r.site_element.iter().for_each(|&v| seen[v] = true);
                        seen.into_iter().all(|s| s)
                    };
                if !iso {
                    entries.push(fail(
                        name.clone(),
                        format!(
                            "{} subterminal sheaves, but their frame is not order-isomorphic to the site",
                            r.sheaves.len()
                        ),
                    ));
                    continue;
                }
                entries.push(ok(
                    name.clone(),
                    format!(
                        "{} subterminal sheaves; supports {}; order-isomorphic to the site",
                        r.sheaves.len(),
                        name_set(p, &r.site_element)
                    ),
                ));
                declare_lattice(&mut declares, &format!("{name}.subterminals"), &r.frame);
            }
        }
    }
    Ok((entries, declares))
}

fn dayprod(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    let mut declares = Document::new();
    for (a_name, a) in &ws.presheaves {
        for (b_name, b) in &ws.presheaves {
            if ws.presheaf_sites[a_name] != ws.presheaf_sites[b_name] {
                continue;
            }
            let label = format!("{a_name}:{b_name}");
            if !selected(&cfg.only, &label) {
                continue;
            }
            match sheaves::day_product(a, b) {
                Err(e) => entries.push(fail(label, e.to_string())),
                Ok((prod, _pa, _pb)) => {
                    entries.push(ok(
                        &label,
                        format!(
                            "sections {} (x) {} = {}",
                            section_profile(a),
                            section_profile(b),
                            section_profile(&prod)
                        ),
                    ));
                    let site_name = &ws.presheaf_sites[a_name];
                    declare_lattice(&mut declares, site_name, a.site());
                    declares
                        .presheaves
                        .insert(format!("{label}.day"), presheaf_descriptor(&prod, site_name));
                }
            }
        }
    }
    Ok((entries, declares))
}

fn structure_display(l: &QLocale) -> String {
    let p = l.space().carrier();
    let qc = l.coefficients().carrier();
    let pairs: Vec<String> = l
        .structure_table()
        .iter()
        .enumerate()
        .map(|(v, &c)| format!("{}->{}", p.name(v), qc.name(c)))
        .collect();
    format!("{{{}}}", pairs.join(","))
}

fn catloc_check(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    for (name, l) in &ws.qlocales {
        if !selected(&cfg.only, name) {
            continue;
        }
        let (space, coeff) = &ws.qlocale_refs[name];
        entries.push(ok(
            name.clone(),
            format!(
                "space {space} over {coeff}; structure {} lands in the {}-element coidempotent frame",
                structure_display(l),
                l.coidempotent_lattice().lattice.carrier().len()
            ),
        ));
    }
    Ok((entries, Document::new()))
}

fn catloc_embed(ws: &Workspace, cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    for (name, l) in &ws.qlocales {
        if !selected(&cfg.only, name) {
            continue;
        }
        let arrow = match l.to_arrow() {
            Err(e) => {
                entries.push(fail(name.clone(), e.to_string()));
                continue;
            }
            Ok(a) => a,
        };
        let rebuilt = QLocale::from_arrow(
            l.space().clone(),
            l.coefficients().clone(),
            arrow.table().to_vec(),
        );
        match rebuilt {
            Err(e) => entries.push(fail(
                name.clone(),
                format!("the transposed arrow fails to rebuild the structure: {e}"),
            )),
            Ok(r) if r.structure_table() == l.structure_table() => {
                entries.push(ok(
                    name.clone(),
                    format!(
                        "arrow {}; round trip reproduces the structure map",
                        structure_display(l)
                    ),
                ));
            }
            Ok(_) => entries.push(fail(
                name.clone(),
                "round trip through the arrow changed the structure map".to_string(),
            )),
        }
    }
    Ok((entries, Document::new()))
}

fn run_suite(cfg: &RunConfig) -> OpResult {
    let mut entries = Vec::new();
    let config = SuiteConfig { seed: cfg.seed, samples_per_site: 200 };
    for (i, &name) in suite::criterion_names().iter().enumerate() {
        let index = i + 1;
        let by_index = cfg.only.as_deref() == Some(index.to_string().as_str());
        if !selected(&cfg.only, name) && !by_index {
            continue;
        }
        let r = suite::run_criterion(index, &config);
        if r.passed {
            entries.push(ok(name, r.detail));
        } else {
            entries.push(fail(name, r.detail));
        }
    }
    Ok((entries, Document::new()))
}
