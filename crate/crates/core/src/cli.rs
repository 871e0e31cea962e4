//! Command-line front end. `run` does all the work and returns the exit code
//! together with what should go to stdout and stderr, so it can be tested
//! without spawning a process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or data error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cuspidal::{
    enumerate_cuspidal_data, order_leq, partition_into_zero_series, series_size,
    verify_counting_identity, CuspidalDatum, CuspidalError,
};
use crate::levi::{enumerate_levi_classes, relative_weyl, LeviError};
use crate::orbits::{
    component_group, enumerate_orbits, enumerate_pairs, is_distinguished, rather_good, Family,
    GroupForm, OrbitError,
};
use crate::partitions::is_prime;
use crate::springerdata::{
    block_pair_partition, reproduce_report, DataSource, ReportCase, SpringerError, SpringerTable,
};
use crate::weylrep::{
    build_character_table, l_blocks, CharacterTable, ExceptionalType, WeylDescriptor, WeylError,
};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Levi(#[from] LeviError),
    #[error(transparent)]
    Cuspidal(#[from] CuspidalError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Data(#[from] SpringerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "modspringer",
    version,
    about = "Modular generalized Springer correspondence combinatorics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; `dot` is only available for order-poset.
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub output: OutputFormat,
    /// Directory with data files overriding the bundled ones.
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nilpotent orbits of a group.
    Orbits { group: Vec<String> },
    /// Pairs (orbit, local system).
    Pairs { group: Vec<String> },
    /// Levi classes and their relative Weyl groups.
    Levis { group: Vec<String> },
    /// Cuspidal data in characteristic ℓ (0 for characteristic zero).
    Cuspidal {
        group: Vec<String>,
        #[arg(long)]
        l: Option<u32>,
    },
    /// Covering relations of the order ≼ on ℓ-cuspidal data.
    OrderPoset {
        group: Vec<String>,
        #[arg(long)]
        l: Option<u32>,
    },
    /// Partition of the ℓ-cuspidal data into 0-series.
    ZeroSeries {
        group: Vec<String>,
        #[arg(long)]
        l: Option<u32>,
    },
    /// Counting identity for ℓ-regular bipartitions; all n ≤ 12 unless --n.
    VerifyIdentity {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
    },
    /// ℓ-blocks of a Weyl group (S<n>, B<n>, E7, E8), with Springer pairs
    /// when a table is bundled.
    Blocks {
        weyl: String,
        #[arg(long)]
        l: Option<u32>,
    },
    /// Reproduce a block computation: E8-l7 or B4-l3.
    Report { case: String },
    /// Whether ℓ is rather good for a group.
    RatherGood {
        group: Vec<String>,
        #[arg(long)]
        l: Option<u32>,
    },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `Sp 8`, `SO 9`, `Spin 7`, `GL 3`, `SL 4`, `E8` and products
/// joined by `x`.
pub fn parse_group(tokens: &[String]) -> Result<GroupForm, CliError> {
    let joined = tokens.join(" ");
    if joined.trim().is_empty() {
        return Err(CliError::Usage("missing group".into()));
    }
    let mut factors = Vec::new();
    for part in joined.split(['x', '×']) {
        factors.push(parse_factor(part.trim())?);
    }
    Ok(if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        GroupForm::product(&factors)
    })
}

fn parse_factor(s: &str) -> Result<GroupForm, CliError> {
    let bad = || CliError::Usage(format!("cannot parse group {s:?}"));
    let compact: String = s.split_whitespace().collect();
    let split = compact.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (name, num) = compact.split_at(split);
    let n: u32 = num.parse().map_err(|_| bad())?;
    let g = match name {
        "Sp" if n >= 2 && n.is_multiple_of(2) => GroupForm::sp(n),
        "SO" if n >= 3 => GroupForm::so(n),
        "Spin" if n >= 3 => GroupForm::spin(n),
        "GL" if n >= 1 => GroupForm::gl(n),
        "SL" if n >= 1 => GroupForm::sl(n),
        "E" | "F" | "G" => {
            let fam = match compact.as_str() {
                "E6" => Family::E6,
                "E7" => Family::E7,
                "E8" => Family::E8,
                "F4" => Family::F4,
                "G2" => Family::G2,
                _ => return Err(bad()),
            };
            GroupForm::exceptional(fam)?
        }
        _ => return Err(bad()),
    };
    Ok(g)
}

fn need_l(l: Option<u32>, verb: &str, allow_zero: bool) -> Result<u32, CliError> {
    let l = l.ok_or_else(|| CliError::Usage(format!("{verb} requires --l")))?;
    if (l == 0 && !allow_zero) || (l != 0 && !is_prime(l)) {
        return Err(CliError::Usage(format!(
            "--l must be a prime{}, got {l}",
            if allow_zero { " or 0" } else { "" }
        )));
    }
    Ok(l)
}

fn no_dot(fmt: OutputFormat, verb: &str) -> Result<(), CliError> {
    if fmt == OutputFormat::Dot {
        return Err(CliError::Usage(format!("{verb} has no dot output")));
    }
    Ok(())
}

fn envelope(verb: &str, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "verb": verb });
    if let (Some(m), Value::Object(b)) = (v.as_object_mut(), body) {
        m.extend(b);
    }
    v
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn tsv(rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    for r in rows {
        s.push_str(&r.join("\t"));
        s.push('\n');
    }
    s
}

fn datum_json(d: &CuspidalDatum) -> Value {
    json!({
        "label": d.to_string(),
        "levi": d.levi.to_string(),
        "nu": d.nu().parts(),
        "residual_orbit": d.levi.residual_group().map(|_| d.residual_orbit().to_string()),
        "central_character": d.central_char.to_string(),
        "l": d.char_tag,
    })
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = std::iter::once("modspringer".into())
        .chain(args.into_iter().map(Into::into))
        .collect();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok((ok, out)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Returns (verification passed, rendered output).
pub fn execute(cli: &Cli) -> Result<(bool, String), CliError> {
    let fmt = cli.output;
    let data = cli
        .data_dir
        .as_ref()
        .map(DataSource::from_dir)
        .unwrap_or_default();
    match &cli.command {
        Command::Orbits { group } => {
            no_dot(fmt, "orbits")?;
            orbits_cmd(&parse_group(group)?, &data, fmt)
        }
        Command::Pairs { group } => {
            no_dot(fmt, "pairs")?;
            let g = parse_group(group)?;
            let pairs = enumerate_pairs(&g)?;
            Ok((
                true,
                match fmt {
                    OutputFormat::Tsv => tsv(&pairs
                        .iter()
                        .map(|p| vec![p.orbit.to_string(), p.local_system.to_string()])
                        .collect::<Vec<_>>()),
                    _ => render_json(&envelope(
                        "pairs",
                        json!({
                            "group": g.to_string(),
                            "count": pairs.len(),
                            "pairs": pairs.iter().map(|p| json!({
                                "orbit": p.orbit.to_string(),
                                "local_system": p.local_system.to_string(),
                            })).collect::<Vec<_>>(),
                        }),
                    )),
                },
            ))
        }
        Command::Levis { group } => {
            no_dot(fmt, "levis")?;
            let g = parse_group(group)?;
            let mut rows = Vec::new();
            for m in enumerate_levi_classes(&g)? {
                let w = relative_weyl(&g, &m).map(|w| w.to_string()).ok();
                rows.push((m, w));
            }
            Ok((
                true,
                match fmt {
                    OutputFormat::Tsv => tsv(&rows
                        .iter()
                        .map(|(m, w)| {
                            vec![
                                m.to_string(),
                                m.gl_blocks.to_string(),
                                w.clone().unwrap_or_else(|| "-".into()),
                            ]
                        })
                        .collect::<Vec<_>>()),
                    _ => render_json(&envelope(
                        "levis",
                        json!({
                            "group": g.to_string(),
                            "levis": rows.iter().map(|(m, w)| json!({
                                "levi": m.to_string(),
                                "gl_blocks": m.gl_blocks.parts(),
                                "residual_rank": m.residual_rank,
                                "relative_weyl": w,
                            })).collect::<Vec<_>>(),
                        }),
                    )),
                },
            ))
        }
        Command::Cuspidal { group, l } => {
            no_dot(fmt, "cuspidal")?;
            let l = need_l(*l, "cuspidal", true)?;
            let g = parse_group(group)?;
            let data_l = enumerate_cuspidal_data(&g, l)?;
            let fibers = partition_into_zero_series(&g, l)?;
            let sizes: Vec<usize> = fibers.iter().map(|(_, f)| f.len()).collect();
            Ok((
                true,
                match fmt {
                    OutputFormat::Tsv => tsv(&data_l
                        .iter()
                        .map(|d| {
                            vec![
                                d.levi.to_string(),
                                d.nu().to_string(),
                                d.residual_orbit().to_string(),
                                d.central_char.to_string(),
                            ]
                        })
                        .collect::<Vec<_>>()),
                    _ => render_json(&envelope(
                        "cuspidal",
                        json!({
                            "group": g.to_string(),
                            "l": l,
                            "count": data_l.len(),
                            "data": data_l.iter().map(datum_json).collect::<Vec<_>>(),
                            "zero_series_fiber_sizes": sizes,
                        }),
                    )),
                },
            ))
        }
        Command::OrderPoset { group, l } => {
            let l = need_l(*l, "order-poset", true)?;
            order_poset_cmd(&parse_group(group)?, l, fmt)
        }
        Command::ZeroSeries { group, l } => {
            no_dot(fmt, "zero-series")?;
            let l = need_l(*l, "zero-series", true)?;
            let g = parse_group(group)?;
            let fibers = partition_into_zero_series(&g, l)?;
            let mut rows = Vec::new();
            let mut js = Vec::new();
            for (z, f) in &fibers {
                let mut members = Vec::new();
                for d in f {
                    let n = series_size(&g, d)?;
                    rows.push(vec![z.to_string(), d.to_string(), n.to_string()]);
                    members.push(json!({ "datum": datum_json(d), "series_size": n.to_string() }));
                }
                js.push(json!({ "zero_datum": datum_json(z), "members": members }));
            }
            Ok((
                true,
                match fmt {
                    OutputFormat::Tsv => tsv(&rows),
                    _ => render_json(&envelope(
                        "zero-series",
                        json!({ "group": g.to_string(), "l": l, "series": js }),
                    )),
                },
            ))
        }
        Command::VerifyIdentity { n, l } => {
            no_dot(fmt, "verify-identity")?;
            let l = need_l(*l, "verify-identity", false)?;
            let ns: Vec<u32> = match n {
                Some(n) => vec![*n],
                None => (0..=12).collect(),
            };
            let mut reports = Vec::new();
            for n in ns {
                reports.push(verify_counting_identity(n, l)?);
            }
            let ok = reports.iter().all(|r| r.equal);
            Ok((
                ok,
                match fmt {
                    OutputFormat::Tsv => tsv(&reports
                        .iter()
                        .map(|r| {
                            vec![
                                r.n.to_string(),
                                r.l.to_string(),
                                r.lhs.to_string(),
                                r.rhs.to_string(),
                                if r.equal { "pass" } else { "FAIL" }.into(),
                            ]
                        })
                        .collect::<Vec<_>>()),
                    _ => render_json(&envelope(
                        "verify-identity",
                        json!({
                            "pass": ok,
                            "results": reports.iter().map(|r| json!({
                                "n": r.n, "l": r.l, "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "equal": r.equal,
                            })).collect::<Vec<_>>(),
                        }),
                    )),
                },
            ))
        }
        Command::Blocks { weyl, l } => {
            no_dot(fmt, "blocks")?;
            let l = need_l(*l, "blocks", false)?;
            blocks_cmd(weyl, l, &data, fmt)
        }
        Command::Report { case } => {
            no_dot(fmt, "report")?;
            let case = ReportCase::parse(case)?;
            let r = reproduce_report(case, &data)?;
            Ok((
                r.pass,
                match fmt {
                    OutputFormat::Tsv => {
                        let mut rows: Vec<Vec<String>> = r
                            .rows
                            .iter()
                            .map(|x| {
                                vec![
                                    x.pair.to_string(),
                                    x.levi_sheaf.clone(),
                                    format!("e{}", x.idempotent),
                                    if x.pass { "pass" } else { "FAIL" }.into(),
                                ]
                            })
                            .collect();
                        for c in &r.checks {
                            rows.push(vec![
                                c.name.clone(),
                                c.detail.clone(),
                                String::new(),
                                if c.pass { "pass" } else { "FAIL" }.into(),
                            ]);
                        }
                        tsv(&rows)
                    }
                    _ => render_json(&envelope(
                        "report",
                        serde_json::to_value(&r).expect("report serializes"),
                    )),
                },
            ))
        }
        Command::RatherGood { group, l } => {
            no_dot(fmt, "rather-good")?;
            let l = need_l(*l, "rather-good", false)?;
            let g = parse_group(group)?;
            let ok = rather_good(&g, l);
            Ok((
                true,
                match fmt {
                    OutputFormat::Tsv => format!("{g}\t{l}\t{ok}\n"),
                    _ => render_json(&envelope(
                        "rather-good",
                        json!({ "group": g.to_string(), "l": l, "rather_good": ok }),
                    )),
                },
            ))
        }
    }
}

fn orbits_cmd(
    g: &GroupForm,
    data: &DataSource,
    fmt: OutputFormat,
) -> Result<(bool, String), CliError> {
    if g.is_single_factor() && g.factors[0].family == Family::E8 {
        let meta = data.e8_orbits()?;
        return Ok((
            true,
            match fmt {
                OutputFormat::Tsv => tsv(&meta
                    .iter()
                    .map(|m| {
                        vec![
                            m.orbit_label.clone(),
                            m.closure_leq_list.join(","),
                            m.component_group_order.to_string(),
                        ]
                    })
                    .collect::<Vec<_>>()),
                _ => render_json(&envelope(
                    "orbits",
                    json!({
                        "group": g.to_string(),
                        "count": meta.len(),
                        "orbits": meta.iter().map(|m| json!({
                            "label": m.orbit_label,
                            "below": m.closure_leq_list,
                            "component_group_order": m.component_group_order,
                        })).collect::<Vec<_>>(),
                    }),
                )),
            },
        ));
    }
    let orbits = enumerate_orbits(g)?;
    let mut rows = Vec::new();
    for o in &orbits {
        let a = component_group(g, o)
            .map(|c| c.order().to_string())
            .unwrap_or_else(|_| "?".into());
        rows.push((o, is_distinguished(g, o)?, a));
    }
    Ok((
        true,
        match fmt {
            OutputFormat::Tsv => tsv(&rows
                .iter()
                .map(|(o, d, a)| {
                    vec![
                        o.to_string(),
                        o.partition.to_string(),
                        d.to_string(),
                        a.clone(),
                    ]
                })
                .collect::<Vec<_>>()),
            _ => render_json(&envelope(
                "orbits",
                json!({
                    "group": g.to_string(),
                    "count": orbits.len(),
                    "orbits": rows.iter().map(|(o, d, a)| json!({
                        "label": o.to_string(),
                        "partition": o.partition.parts(),
                        "distinguished": d,
                        "component_group_order": a,
                    })).collect::<Vec<_>>(),
                }),
            )),
        },
    ))
}

/// Nodes and covering edges (lower, upper) of a finite poset.
pub type Hasse = (Vec<CuspidalDatum>, Vec<(usize, usize)>);

/// Nodes are the ℓ-cuspidal data; edges are the covering relations of ≼.
pub fn order_poset(g: &GroupForm, l: u32) -> Result<Hasse, CliError> {
    let nodes = enumerate_cuspidal_data(g, l)?;
    let n = nodes.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = i == j || order_leq(&nodes[i], &nodes[j])?;
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]) {
                edges.push((i, j));
            }
        }
    }
    Ok((nodes, edges))
}

fn order_poset_cmd(g: &GroupForm, l: u32, fmt: OutputFormat) -> Result<(bool, String), CliError> {
    let (nodes, edges) = order_poset(g, l)?;
    Ok((
        true,
        match fmt {
            OutputFormat::Dot => {
                let mut s = String::from("digraph order {\n  rankdir=BT;\n");
                for (i, d) in nodes.iter().enumerate() {
                    let _ = writeln!(s, "  n{i} [label=\"{}\"];", d.to_string().replace('"', "'"));
                }
                for (a, b) in &edges {
                    let _ = writeln!(s, "  n{a} -> n{b};");
                }
                s.push_str("}\n");
                s
            }
            OutputFormat::Tsv => tsv(&edges
                .iter()
                .map(|(a, b)| vec![nodes[*a].to_string(), nodes[*b].to_string()])
                .collect::<Vec<_>>()),
            OutputFormat::Json => render_json(&envelope(
                "order-poset",
                json!({
                    "group": g.to_string(),
                    "l": l,
                    "nodes": nodes.iter().map(datum_json).collect::<Vec<_>>(),
                    "covers": edges,
                }),
            )),
        },
    ))
}

fn weyl_table(
    weyl: &str,
    data: &DataSource,
) -> Result<(CharacterTable, Option<SpringerTable>), CliError> {
    let w = WeylDescriptor::parse(weyl)
        .ok_or_else(|| CliError::Usage(format!("unknown Weyl group {weyl:?}")))?;
    Ok(match &w {
        WeylDescriptor::Exceptional(ExceptionalType::E8) => {
            let t = data.e8_chars()?;
            let s = data.e8_springer(&t)?;
            (t, Some(s))
        }
        WeylDescriptor::Exceptional(ExceptionalType::E7) => (data.e7_chars()?, None),
        WeylDescriptor::Hyperoctahedral(4) => {
            let t = build_character_table(&w)?;
            let s = data.b4_springer(&t)?;
            (t, Some(s))
        }
        _ => (build_character_table(&w)?, None),
    })
}

fn blocks_cmd(
    weyl: &str,
    l: u32,
    data: &DataSource,
    fmt: OutputFormat,
) -> Result<(bool, String), CliError> {
    let (t, springer) = weyl_table(weyl, data)?;
    let b = l_blocks(&t, l)?;
    let pairs: BTreeMap<usize, Vec<String>> = match &springer {
        Some(s) => block_pair_partition(s, &b)?
            .into_iter()
            .map(|(k, v)| (k, v.iter().map(|p| p.to_string()).collect()))
            .collect(),
        None => BTreeMap::new(),
    };
    let pair_of = |label: &str| -> Option<String> {
        springer.as_ref().and_then(|s| {
            s.rows
                .iter()
                .find(|r| r.character == label)
                .map(|r| r.pair().to_string())
        })
    };
    Ok((
        true,
        match fmt {
            OutputFormat::Tsv => {
                let mut rows = Vec::new();
                for (k, blk) in b.blocks.iter().enumerate() {
                    for &i in blk {
                        rows.push(vec![
                            k.to_string(),
                            b.labels[i].clone(),
                            t.degree(i).to_string(),
                            b.defects[i].to_string(),
                            pair_of(&b.labels[i]).unwrap_or_else(|| "-".into()),
                        ]);
                    }
                }
                tsv(&rows)
            }
            _ => render_json(&envelope(
                "blocks",
                json!({
                    "group": t.group.to_string(),
                    "l": l,
                    "defect_zero_characters": b.defect_zero().len(),
                    "blocks": b.blocks.iter().enumerate().map(|(k, blk)| json!({
                        "index": k,
                        "characters": blk.iter().map(|&i| b.labels[i].clone()).collect::<Vec<_>>(),
                        "defect": b.defects[blk[0]],
                        "pairs": pairs.get(&k),
                    })).collect::<Vec<_>>(),
                }),
            )),
        },
    ))
}
