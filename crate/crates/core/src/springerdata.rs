//! Bundled Springer tables for B4 and E8, E8 orbit metadata, W(E7)/W(E8)
//! character data, and the ℓ-block computations built on top of them.
//!
//! All data is treated as untrusted: every table is checked against exact
//! arithmetic identities before use. Character labels in the Springer tables
//! follow the convention in which the zero orbit carries the trivial
//! character.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{dominance_leq, Partition};
use crate::weylrep::{
    build_character_table, defect, l_blocks, load_character_table, load_fusion, BlockPartition,
    CharacterTable, WeylDescriptor, WeylError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpringerError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("correspondence is not a bijection onto Irr(W): {0}")]
    Bijectivity(String),
    #[error("degree squares sum to {found}, expected |W| = {expected}")]
    DegreeSum { expected: u128, found: u128 },
    #[error("invalid orbit metadata: {0}")]
    Closure(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("missing data file {0}")]
    MissingData(String),
    #[error("unknown report case {0:?} (expected E8-l7 or B4-l3)")]
    UnknownCase(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairLabel {
    pub orbit: String,
    pub local_system: String,
}

impl PairLabel {
    pub fn new(orbit: &str, local_system: &str) -> Self {
        PairLabel {
            orbit: orbit.to_string(),
            local_system: local_system.to_string(),
        }
    }
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.orbit, self.local_system)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpringerRow {
    pub orbit: String,
    pub local_system: String,
    pub character: String,
}

impl SpringerRow {
    pub fn pair(&self) -> PairLabel {
        PairLabel::new(&self.orbit, &self.local_system)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpringerTable {
    pub group_label: String,
    pub group_order: u128,
    pub rows: Vec<SpringerRow>,
    pub degree: BTreeMap<String, u128>,
}

impl SpringerTable {
    pub fn character_of(&self, p: &PairLabel) -> Option<&str> {
        self.rows
            .iter()
            .find(|r| r.orbit == p.orbit && r.local_system == p.local_system)
            .map(|r| r.character.as_str())
    }

    pub fn pairs(&self) -> Vec<PairLabel> {
        self.rows.iter().map(SpringerRow::pair).collect()
    }
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> SpringerError {
    SpringerError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses `#group <name>` followed by `<orbit>\t<local system>\t<character>`
/// rows and validates them against `chars`.
pub fn load_springer_table(
    src: &str,
    chars: &CharacterTable,
) -> Result<SpringerTable, SpringerError> {
    let mut group = None;
    let mut rows = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if let Some(rest) = raw.strip_prefix("#group") {
            group = Some(rest.trim().to_string());
            continue;
        }
        if raw.starts_with('#') {
            continue;
        }
        if group.is_none() {
            return Err(perr(line, 1, "row before #group"));
        }
        let cells: Vec<&str> = raw.split('\t').collect();
        if cells.len() != 3 {
            return Err(perr(
                line,
                cells.len().min(3),
                format!("expected 3 fields, found {}", cells.len()),
            ));
        }
        for (i, c) in cells.iter().enumerate() {
            if c.trim().is_empty() {
                return Err(perr(line, i + 1, "empty field"));
            }
        }
        rows.push(SpringerRow {
            orbit: cells[0].trim().to_string(),
            local_system: cells[1].trim().to_string(),
            character: cells[2].trim().to_string(),
        });
    }
    let group_label = group.ok_or_else(|| perr(0, 0, "missing #group header"))?;
    match WeylDescriptor::parse(&group_label) {
        Some(g) if g == chars.group => {}
        _ => {
            return Err(SpringerError::LabelMismatch(format!(
                "table is for {group_label}, character data is for {}",
                chars.group
            )))
        }
    }

    let mut seen_pairs = BTreeSet::new();
    let mut seen_chars = BTreeSet::new();
    for r in &rows {
        if !seen_pairs.insert(r.pair()) {
            return Err(SpringerError::Bijectivity(format!(
                "pair {} listed twice",
                r.pair()
            )));
        }
        if !seen_chars.insert(r.character.clone()) {
            return Err(SpringerError::Bijectivity(format!(
                "character {} listed twice",
                r.character
            )));
        }
        if chars.index_of(&r.character).is_none() {
            return Err(SpringerError::Bijectivity(format!(
                "unknown character {}",
                r.character
            )));
        }
    }
    if rows.len() != chars.irr_labels.len() {
        let missing: Vec<String> = chars
            .irr_labels
            .iter()
            .map(|l| l.to_string())
            .filter(|l| !seen_chars.contains(l))
            .collect();
        return Err(SpringerError::Bijectivity(format!(
            "characters without a pair: {}",
            missing.join(", ")
        )));
    }
    let degree: BTreeMap<String, u128> = rows
        .iter()
        .map(|r| {
            let i = chars.index_of(&r.character).expect("checked above");
            (r.character.clone(), chars.degree(i))
        })
        .collect();
    let found: u128 = degree.values().map(|d| d * d).sum();
    let expected = chars.order();
    if found != expected {
        return Err(SpringerError::DegreeSum { expected, found });
    }
    Ok(SpringerTable {
        group_label,
        group_order: expected,
        rows,
        degree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitMeta {
    pub orbit_label: String,
    /// Orbits strictly contained in the closure.
    pub closure_leq_list: Vec<String>,
    pub component_group_order: u64,
}

/// Parses `<orbit>\t<comma-separated lower orbits>\t<A-group order>` rows and
/// checks that "lies in the closure of" is a strict partial order.
pub fn load_orbit_meta(src: &str) -> Result<Vec<OrbitMeta>, SpringerError> {
    let mut out: Vec<OrbitMeta> = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = raw.split('\t').collect();
        if cells.len() != 3 {
            return Err(perr(
                line,
                cells.len().min(3),
                format!("expected 3 fields, found {}", cells.len()),
            ));
        }
        let lower: Vec<String> = cells[1]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        let a: u64 = cells[2]
            .trim()
            .parse()
            .map_err(|_| perr(line, 3, format!("bad A-group order {:?}", cells[2])))?;
        if a == 0 {
            return Err(perr(line, 3, "A-group order must be positive"));
        }
        out.push(OrbitMeta {
            orbit_label: cells[0].trim().to_string(),
            closure_leq_list: lower,
            component_group_order: a,
        });
    }
    let mut below: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for m in &out {
        let set = m.closure_leq_list.iter().map(String::as_str).collect();
        if below.insert(&m.orbit_label, set).is_some() {
            return Err(SpringerError::Closure(format!(
                "orbit {} listed twice",
                m.orbit_label
            )));
        }
    }
    for (o, lower) in &below {
        if lower.contains(o) {
            return Err(SpringerError::Closure(format!("{o} lies below itself")));
        }
        for x in lower {
            let xl = below.get(x).ok_or_else(|| {
                SpringerError::Closure(format!("{o} refers to unknown orbit {x}"))
            })?;
            if xl.contains(o) {
                return Err(SpringerError::Closure(format!(
                    "{o} and {x} lie below each other"
                )));
            }
            if let Some(y) = xl.iter().find(|y| !lower.contains(*y)) {
                return Err(SpringerError::Closure(format!(
                    "not transitive: {y} < {x} < {o}"
                )));
            }
        }
    }
    Ok(out)
}

/// Pairs whose Springer character has ℓ-defect 0.
pub fn defect_zero_pairs(t: &SpringerTable, l: u32) -> Result<Vec<PairLabel>, SpringerError> {
    let mut out = Vec::new();
    for r in &t.rows {
        if defect(t.degree[&r.character], t.group_order, l)? == 0 {
            out.push(r.pair());
        }
    }
    Ok(out)
}

/// Composes the correspondence with block membership; keys are indices into
/// `b.blocks`.
pub fn block_pair_partition(
    t: &SpringerTable,
    b: &BlockPartition,
) -> Result<BTreeMap<usize, Vec<PairLabel>>, SpringerError> {
    if b.labels.len() != t.rows.len() {
        return Err(SpringerError::LabelMismatch(format!(
            "{} block labels, {} table rows",
            b.labels.len(),
            t.rows.len()
        )));
    }
    let mut out: BTreeMap<usize, Vec<PairLabel>> = BTreeMap::new();
    for r in &t.rows {
        let k = b.block_of_label(&r.character).ok_or_else(|| {
            SpringerError::LabelMismatch(format!("{} is not in the block data", r.character))
        })?;
        out.entry(k).or_default().push(r.pair());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Bundled data

pub const B4_SPRINGER: &str = "b4_springer.tsv";
pub const E8_SPRINGER: &str = "e8_springer.tsv";
pub const E8_ORBITS: &str = "e8_orbits.tsv";
pub const E7_CHARS: &str = "e7_chars.tsv";
pub const E8_CHARS: &str = "e8_chars.tsv";
pub const E7_E8_FUSION: &str = "e7_e8_fusion.tsv";

const BUNDLED: &[(&str, &str)] = &[
    (B4_SPRINGER, include_str!("../data/b4_springer.tsv")),
    (E8_SPRINGER, include_str!("../data/e8_springer.tsv")),
    (E8_ORBITS, include_str!("../data/e8_orbits.tsv")),
    (E7_CHARS, include_str!("../data/e7_chars.tsv")),
    (E8_CHARS, include_str!("../data/e8_chars.tsv")),
    (E7_E8_FUSION, include_str!("../data/e7_e8_fusion.tsv")),
];

/// Where data files come from: the copies compiled into the binary, or a
/// directory holding files with the same names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DataSource {
    pub dir: Option<PathBuf>,
}

impl DataSource {
    pub fn bundled() -> Self {
        DataSource { dir: None }
    }

    pub fn from_dir(dir: impl AsRef<Path>) -> Self {
        DataSource {
            dir: Some(dir.as_ref().to_path_buf()),
        }
    }

    pub fn read(&self, name: &str) -> Result<String, SpringerError> {
        match &self.dir {
            Some(d) => {
                let p = d.join(name);
                std::fs::read_to_string(&p)
                    .map_err(|_| SpringerError::MissingData(p.display().to_string()))
            }
            None => BUNDLED
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, s)| s.to_string())
                .ok_or_else(|| SpringerError::MissingData(name.to_string())),
        }
    }

    pub fn e8_chars(&self) -> Result<CharacterTable, SpringerError> {
        Ok(load_character_table(&self.read(E8_CHARS)?)?)
    }

    pub fn e7_chars(&self) -> Result<CharacterTable, SpringerError> {
        Ok(load_character_table(&self.read(E7_CHARS)?)?)
    }

    /// W(E7), W(E8) and the class fusion of the standard parabolic W(E7).
    pub fn e7_e8(&self) -> Result<(CharacterTable, CharacterTable, Vec<usize>), SpringerError> {
        let e7 = self.e7_chars()?;
        let e8 = self.e8_chars()?;
        let fusion = load_fusion(&self.read(E7_E8_FUSION)?, &e7, &e8)?;
        Ok((e7, e8, fusion))
    }

    pub fn e8_springer(&self, chars: &CharacterTable) -> Result<SpringerTable, SpringerError> {
        load_springer_table(&self.read(E8_SPRINGER)?, chars)
    }

    pub fn e8_orbits(&self) -> Result<Vec<OrbitMeta>, SpringerError> {
        load_orbit_meta(&self.read(E8_ORBITS)?)
    }

    pub fn b4_springer(&self, chars: &CharacterTable) -> Result<SpringerTable, SpringerError> {
        load_springer_table(&self.read(B4_SPRINGER)?, chars)
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportCase {
    #[serde(rename = "E8-l7")]
    E8L7,
    #[serde(rename = "B4-l3")]
    B4L3,
}

impl ReportCase {
    pub fn parse(s: &str) -> Result<Self, SpringerError> {
        match s {
            "E8-l7" | "E8-7" | "e8-l7" => Ok(ReportCase::E8L7),
            "B4-l3" | "B4-3" | "b4-l3" => Ok(ReportCase::B4L3),
            _ => Err(SpringerError::UnknownCase(s.to_string())),
        }
    }

    pub fn prime(self) -> u32 {
        match self {
            ReportCase::E8L7 => 7,
            ReportCase::B4L3 => 3,
        }
    }
}

impl fmt::Display for ReportCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportCase::E8L7 => "E8-l7",
            ReportCase::B4L3 => "B4-l3",
        })
    }
}

/// Reference lists the report is checked against: pairs expected to have
/// defect 0, the expected grouping of the remaining pairs into blocks, and
/// rows (pair, sheaf on the Levi, idempotent index starting at 1).
struct Reference {
    cuspidal_orbit: &'static str,
    /// Orbits of the closure set that are set aside (handled by other means).
    excluded: &'static [&'static str],
    defect_zero: &'static [(&'static str, &'static str)],
    blocks: &'static [&'static [(&'static str, &'static str)]],
    rows: &'static [(&'static str, &'static str, &'static str, usize)],
}

const E8_REF: Reference = Reference {
    cuspidal_orbit: "E8(a7)",
    excluded: &[],
    defect_zero: &[
        ("E7(a5)", "triv"),
        ("E7(a5)", "21"),
        ("E7(a5)", "111"),
        ("A4+A3", "triv"),
        ("D5", "triv"),
        ("E6(a3)", "triv"),
        ("D4+A2", "triv"),
        ("D4+A2", "11"),
        ("A4+A2+A1", "triv"),
        ("A4+A2", "triv"),
        ("A4+2A1", "triv"),
        ("A4+2A1", "11"),
        ("D5(a1)", "triv"),
        ("D5(a1)", "11"),
        ("2A3", "triv"),
        ("D4(a1)+A2", "triv"),
        ("D4(a1)+A2", "11"),
        ("D4+A1", "triv"),
        ("A3+A2+A1", "triv"),
        ("A4", "triv"),
        ("D4(a1)+A1", "triv"),
        ("D4(a1)+A1", "21"),
        ("D4(a1)+A1", "111"),
        ("A3+2A1", "triv"),
        ("2A2+2A1", "triv"),
        ("D4", "triv"),
        ("D4(a1)", "triv"),
        ("D4(a1)", "21"),
        ("D4(a1)", "111"),
        ("A3+A1", "triv"),
        ("2A2+A1", "triv"),
        ("2A2", "triv"),
        ("A3", "triv"),
        ("A2+2A1", "triv"),
        ("A2+A1", "triv"),
        ("A2", "triv"),
        ("A2", "11"),
        ("3A1", "triv"),
        ("2A1", "triv"),
        ("E6(a3)+A1", "triv"),
        ("E6(a3)+A1", "11"),
        ("D6(a2)", "triv"),
        ("D6(a2)", "11"),
        ("D5(a1)+A2", "triv"),
        ("A5+A1", "triv"),
    ],
    blocks: &[
        &[
            ("0", "triv"),
            ("2A2", "11"),
            ("A4+A1", "triv"),
            ("D5(a1)+A1", "triv"),
        ],
        &[("4A1", "triv"), ("A3+A2", "11"), ("A5", "triv")],
        &[
            ("A1", "triv"),
            ("A2+A1", "11"),
            ("A4", "11"),
            ("E6(a3)", "11"),
        ],
        &[("A2+3A1", "triv"), ("A3+A2", "triv"), ("A4+A1", "11")],
    ],
    rows: &[
        ("0", "triv", "IC(0)", 1),
        ("A1", "triv", "IC(0)", 3),
        ("2A2", "11", "IC(2A1)", 1),
        ("A2+A1", "11", "IC(2A1)", 3),
        ("A3+A2", "11", "IC(3A1')", 2),
        ("A3+A2", "triv", "IC(3A1')", 4),
        ("4A1", "triv", "IC(4A1)", 2),
        ("A2+3A1", "triv", "IC(4A1)", 4),
        ("A4+A1", "triv", "IC(A2+A1)", 1),
        ("A4", "11", "IC(A2+A1)", 3),
        ("A4+A1", "11", "IC(A2+A1)", 4),
        ("A5", "triv", "IC(2A2)", 2),
        ("D5(a1)+A1", "triv", "IC(A3)", 1),
        ("E6(a3)", "11", "IC(A3)", 3),
    ],
};

const B4_REF: Reference = Reference {
    cuspidal_orbit: "531",
    excluded: &["441"],
    defect_zero: &[
        ("51111", "triv"),
        ("51111", "eps"),
        ("333", "triv"),
        ("33111", "eps"),
        ("32211", "triv"),
        ("2211111", "triv"),
    ],
    blocks: &[
        &[("111111111", "triv"), ("22221", "triv")],
        &[("3111111", "triv"), ("33111", "triv")],
        &[("32211", "eps"), ("522", "triv")],
        &[("3111111", "eps")],
    ],
    rows: &[
        ("111111111", "triv", "IC(1111111)", 1),
        ("22221", "triv", "IC(22111)", 1),
        ("3111111", "triv", "IC(1111111)", 2),
        ("33111", "triv", "IC(22111)", 2),
        ("32211", "eps", "IC(31111,eps)", 3),
        ("522", "triv", "IC(322)", 3),
        ("3111111", "eps", "IC(31111,eps)", 4),
    ],
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub pair: PairLabel,
    pub character: String,
    pub levi_sheaf: String,
    pub idempotent: usize,
    /// Computed block containing the pair, if any.
    pub block: Option<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportBlock {
    /// Position of the block in the computed block partition.
    pub block: usize,
    /// Index e_i assigned by first appearance in the reference lists.
    pub idempotent: Option<usize>,
    pub pairs: Vec<PairLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub case: ReportCase,
    pub prime: u32,
    /// Pairs on the closure set (orbits strictly below the cuspidal orbit),
    /// minus excluded orbits.
    pub closure_pairs: usize,
    pub defect_zero_characters: usize,
    pub defect_zero_pairs: Vec<PairLabel>,
    pub blocks: Vec<ReportBlock>,
    pub rows: Vec<RowCheck>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub pass: bool,
}

fn b4_partition(label: &str) -> Option<Partition> {
    let parts: Option<Vec<u32>> = label.chars().map(|c| c.to_digit(10)).collect();
    Some(Partition::new(parts?))
}

/// Orbits strictly below `top`, from the metadata (E8) or from dominance (B4).
fn orbits_below(
    case: ReportCase,
    data: &DataSource,
    t: &SpringerTable,
    top: &str,
) -> Result<BTreeSet<String>, SpringerError> {
    match case {
        ReportCase::E8L7 => {
            let meta = data.e8_orbits()?;
            let m = meta
                .iter()
                .find(|m| m.orbit_label == top)
                .ok_or_else(|| SpringerError::LabelMismatch(format!("no metadata for {top}")))?;
            for r in &t.rows {
                if !meta.iter().any(|m| m.orbit_label == r.orbit) {
                    return Err(SpringerError::LabelMismatch(format!(
                        "no metadata for orbit {}",
                        r.orbit
                    )));
                }
            }
            Ok(m.closure_leq_list.iter().cloned().collect())
        }
        ReportCase::B4L3 => {
            let tp = b4_partition(top).ok_or_else(|| SpringerError::LabelMismatch(top.into()))?;
            let mut out = BTreeSet::new();
            for r in &t.rows {
                let p = b4_partition(&r.orbit).ok_or_else(|| {
                    SpringerError::LabelMismatch(format!("bad orbit label {}", r.orbit))
                })?;
                if p != tp
                    && dominance_leq(&p, &tp)
                        .map_err(|e| SpringerError::LabelMismatch(e.to_string()))?
                {
                    out.insert(r.orbit.clone());
                }
            }
            Ok(out)
        }
    }
}

/// Recomputes the defect-0 list, the block grouping and the idempotent
/// column of the reference table for one case, checking each against the
/// reference lists.
///
/// Blocks are matched to reference blocks as sets; the idempotent e_i names
/// the computed block matched to the i-th reference block.
pub fn reproduce_report(case: ReportCase, data: &DataSource) -> Result<Report, SpringerError> {
    let (chars, table, reference) = match case {
        ReportCase::E8L7 => {
            let chars = data.e8_chars()?;
            let t = data.e8_springer(&chars)?;
            (chars, t, &E8_REF)
        }
        ReportCase::B4L3 => {
            let chars = build_character_table(&WeylDescriptor::Hyperoctahedral(4))?;
            let t = data.b4_springer(&chars)?;
            (chars, t, &B4_REF)
        }
    };
    let l = case.prime();
    let blocks = l_blocks(&chars, l)?;
    let d0_all: BTreeSet<PairLabel> = defect_zero_pairs(&table, l)?.into_iter().collect();
    let grouping = block_pair_partition(&table, &blocks)?;
    let block_of_pair: BTreeMap<PairLabel, usize> = grouping
        .iter()
        .flat_map(|(k, ps)| ps.iter().map(move |p| (p.clone(), *k)))
        .collect();

    let below = orbits_below(case, data, &table, reference.cuspidal_orbit)?;
    let on_x: BTreeSet<PairLabel> = table
        .pairs()
        .into_iter()
        .filter(|p| below.contains(&p.orbit) && !reference.excluded.contains(&p.orbit.as_str()))
        .collect();

    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let pl = |(o, e): &(&str, &str)| PairLabel::new(o, e);

    let ref_d0: BTreeSet<PairLabel> = reference.defect_zero.iter().map(pl).collect();
    let ref_blocked: BTreeSet<PairLabel> = reference
        .blocks
        .iter()
        .flat_map(|b| b.iter().map(pl))
        .collect();

    let unknown: Vec<String> = ref_d0
        .union(&ref_blocked)
        .filter(|p| table.character_of(p).is_none())
        .map(|p| p.to_string())
        .collect();
    checks.push(Check {
        name: "reference pairs exist in table".into(),
        pass: unknown.is_empty(),
        detail: if unknown.is_empty() {
            "all present".into()
        } else {
            unknown.join(" ")
        },
    });

    let not_d0: Vec<String> = ref_d0
        .iter()
        .filter(|p| !d0_all.contains(*p))
        .map(|p| p.to_string())
        .collect();
    checks.push(Check {
        name: "listed defect-0 pairs have defect 0".into(),
        pass: not_d0.is_empty(),
        detail: format!(
            "{} of {} listed pairs have defect 0",
            ref_d0.len() - not_d0.len(),
            ref_d0.len()
        ),
    });

    let d0_x: BTreeSet<PairLabel> = on_x.intersection(&d0_all).cloned().collect();
    let extra: Vec<String> = d0_x.difference(&ref_d0).map(|p| p.to_string()).collect();
    checks.push(Check {
        name: "defect-0 pairs on the closure set are listed".into(),
        pass: extra.is_empty(),
        detail: if extra.is_empty() {
            format!("{} defect-0 pairs on the closure set", d0_x.len())
        } else {
            format!("unlisted: {}", extra.join(" "))
        },
    });
    let off_x: Vec<String> = ref_d0
        .iter()
        .filter(|p| !on_x.contains(*p))
        .map(|p| p.to_string())
        .collect();
    if !off_x.is_empty() {
        notes.push(format!(
            "listed defect-0 pairs whose orbit is not below {} in the closure data: {}",
            reference.cuspidal_orbit,
            off_x.join(" ")
        ));
    }

    let non_d0_x: BTreeSet<PairLabel> = on_x.difference(&d0_all).cloned().collect();
    checks.push(Check {
        name: "positive-defect pairs on the closure set are the blocked pairs".into(),
        pass: non_d0_x == ref_blocked,
        detail: format!("{} computed, {} listed", non_d0_x.len(), ref_blocked.len()),
    });

    // Match reference blocks to computed blocks.
    let mut assigned: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, rb) in reference.blocks.iter().enumerate() {
        let ks: BTreeSet<usize> = rb
            .iter()
            .filter_map(|p| block_of_pair.get(&pl(p)).copied())
            .collect();
        let computed: BTreeSet<PairLabel> = match ks.iter().next() {
            Some(k) if ks.len() == 1 => grouping[k]
                .iter()
                .filter(|p| non_d0_x.contains(*p))
                .cloned()
                .collect(),
            _ => BTreeSet::new(),
        };
        let expected: BTreeSet<PairLabel> = rb.iter().map(pl).collect();
        let ok = ks.len() == 1
            && computed == expected
            && !assigned.contains_key(ks.iter().next().unwrap());
        if ok {
            assigned.insert(*ks.iter().next().unwrap(), i + 1);
        }
        checks.push(Check {
            name: format!("block B{}", i + 1),
            pass: ok,
            detail: expected
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        });
    }

    let mut rows = Vec::new();
    for &(o, e, sheaf, idem) in reference.rows {
        let pair = PairLabel::new(o, e);
        let block = block_of_pair.get(&pair).copied();
        let pass = block.is_some() && block.and_then(|k| assigned.get(&k)) == Some(&idem);
        rows.push(RowCheck {
            character: table.character_of(&pair).unwrap_or("?").to_string(),
            pair,
            levi_sheaf: sheaf.to_string(),
            idempotent: idem,
            block,
            pass,
        });
    }
    let covered: BTreeSet<PairLabel> = rows.iter().map(|r| r.pair.clone()).collect();
    checks.push(Check {
        name: "every blocked pair has exactly one table row".into(),
        pass: covered == ref_blocked && rows.len() == covered.len() && covered.is_disjoint(&ref_d0),
        detail: format!("{} rows", rows.len()),
    });

    let mut report_blocks: Vec<ReportBlock> = grouping
        .iter()
        .filter(|(_, ps)| ps.iter().any(|p| non_d0_x.contains(p)))
        .map(|(k, ps)| ReportBlock {
            block: *k,
            idempotent: assigned.get(k).copied(),
            pairs: ps.clone(),
        })
        .collect();
    report_blocks.sort_by_key(|b| (b.idempotent.unwrap_or(usize::MAX), b.block));

    let pass = checks.iter().all(|c| c.pass) && rows.iter().all(|r| r.pass);
    Ok(Report {
        case,
        prime: l,
        closure_pairs: on_x.len(),
        defect_zero_characters: blocks.defect_zero().len(),
        defect_zero_pairs: d0_x.into_iter().collect(),
        blocks: report_blocks,
        rows,
        checks,
        notes,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b4_table_loads() {
        let chars = build_character_table(&WeylDescriptor::Hyperoctahedral(4)).unwrap();
        let t = DataSource::bundled().b4_springer(&chars).unwrap();
        assert_eq!(t.rows.len(), 20);
        assert_eq!(
            t.character_of(&PairLabel::new("111111111", "triv")),
            Some("(4).()")
        );
    }

    #[test]
    fn truncated_row_is_a_parse_error() {
        let chars = build_character_table(&WeylDescriptor::Hyperoctahedral(4)).unwrap();
        let src = DataSource::bundled().read(B4_SPRINGER).unwrap();
        let cut = &src[..src.len() - 8];
        assert!(load_springer_table(cut, &chars).is_err());
        let broken = src.replacen("\t(4).()", "", 1);
        assert!(matches!(
            load_springer_table(&broken, &chars),
            Err(SpringerError::Parse { .. })
        ));
    }

    #[test]
    fn duplicate_character_rejected() {
        let chars = build_character_table(&WeylDescriptor::Hyperoctahedral(4)).unwrap();
        let src = DataSource::bundled().read(B4_SPRINGER).unwrap();
        let broken = src.replacen("(3,1).()", "(4).()", 1);
        assert!(matches!(
            load_springer_table(&broken, &chars),
            Err(SpringerError::Bijectivity(_))
        ));
    }

    #[test]
    fn orbit_meta_rejects_cycles() {
        assert!(load_orbit_meta("a\t\t1\nb\ta\t1\n").is_ok());
        assert!(load_orbit_meta("a\tb\t1\nb\ta\t1\n").is_err());
        assert!(load_orbit_meta("a\t\t1\nb\ta\t1\nc\tb\t1\n").is_err());
        assert!(load_orbit_meta("a\t\t0\n").is_err());
    }

    #[test]
    fn coprime_prime_gives_all_pairs() {
        let chars = build_character_table(&WeylDescriptor::Hyperoctahedral(4)).unwrap();
        let t = DataSource::bundled().b4_springer(&chars).unwrap();
        assert_eq!(defect_zero_pairs(&t, 5).unwrap().len(), 20);
        let b = l_blocks(&chars, 5).unwrap();
        assert!(block_pair_partition(&t, &b)
            .unwrap()
            .values()
            .all(|v| v.len() == 1));
    }

    #[test]
    fn b4_report_passes() {
        let r = reproduce_report(ReportCase::B4L3, &DataSource::bundled()).unwrap();
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.defect_zero_characters, 8);
    }

    #[test]
    fn e8_report_passes() {
        let r = reproduce_report(ReportCase::E8L7, &DataSource::bundled()).unwrap();
        assert!(r.pass, "{r:#?}");
        assert_eq!(r.rows.len(), 14);
        assert_eq!(r.blocks.len(), 4);
    }

    #[test]
    fn missing_dir_is_reported() {
        let d = DataSource::from_dir("/nonexistent/modspringer");
        assert!(matches!(
            reproduce_report(ReportCase::B4L3, &d),
            Err(SpringerError::MissingData(_))
        ));
    }
}
