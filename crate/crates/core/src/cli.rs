//! Command-line interface.
//!
//! Exit codes: `0` success, `2` validation error (one line
//! `ERROR <code>: <detail>` on stderr), `64` usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bps::{
    self, check_invariant_triviality, dt0_factor_families, dt0_product, extract_bps,
    format_gaussian, invariant_spectrum, ks_ray_automorphism, parse_gaussian, ray_diagram,
    svg_render, trivial_rhp_solution_check, two_character_families, v_to_gamma,
    validate_central_charge, BpsError, CentralCharge, Window,
};
use crate::catalog::{catalog_get, CatalogEntry, CatalogError, CATALOG_NAMES};
use crate::dimer::{
    change_lattice, dual_quiver, enumerate_matchings, kasteleyn_polygon, matching_class,
    matching_polygon, BraneTiling, DimerError, LatticePolygon, TorusLattice,
};
use crate::iso::{quiver_isomorphic, QuiverIsomorphism};
use crate::json::{
    action_from_json, catalog_to_json, polygon_to_json, quiver_from_json, quiver_to_json,
    section_to_json, tiling_from_json, JsonError, QuiverDoc, TilingDoc,
};
use crate::quiver::{skew_euler_form, validate, Potential, Quiver, QuiverError};
use crate::symmetry::{
    default_section, kernel_pairing_check, quotient, section_labels, validate_action, GroupAction,
    Normalization, SymmetryError, ORBIT_PREFIX,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "cy3lab",
    version,
    about = "Quivers with potential, brane tilings and BPS spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Top,
}

#[derive(Subcommand, Debug)]
enum Top {
    /// Built-in geometries
    Catalog {
        #[command(subcommand)]
        command: CatalogCmd,
    },
    /// Quivers with potential
    Quiver {
        #[command(subcommand)]
        command: QuiverCmd,
    },
    /// Brane tilings
    Dimer {
        #[command(subcommand)]
        command: DimerCmd,
    },
    /// BPS spectra and wall-crossing checks
    Bps {
        #[command(subcommand)]
        command: BpsCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// List catalog entries
    List(Common),
    /// Print one entry
    Show(Common),
}

#[derive(Subcommand, Debug)]
enum QuiverCmd {
    /// Validate a quiver with potential
    Validate(Common),
    /// Quotient by a group action
    Quotient(QuotientArgs),
    /// Test two quivers with potential for isomorphism
    Isomorphic(IsoArgs),
    /// Print the antisymmetrized Euler form
    Euler(Common),
}

#[derive(Subcommand, Debug)]
enum DimerCmd {
    /// Dual quiver with potential of a tiling
    Dual(Common),
    /// Enumerate perfect matchings
    Matchings(Common),
    /// Toric polygon from matchings or the Kasteleyn determinant
    Polygon(PolygonArgs),
    /// Re-express a tiling over a coarser lattice
    Relattice(RelatticeArgs),
}

#[derive(Subcommand, Debug)]
enum BpsCmd {
    /// Closed-form invariant spectrum
    Spectrum(BpsArgs),
    /// Ray diagram of the spectrum
    Rays(BpsArgs),
    /// Expand the degree-zero product
    Expand(BpsArgs),
    /// Read invariants off the degree-zero product
    Extract(BpsArgs),
    /// Check that every ray automorphism is trivial on the invariant quotient
    CheckWallcrossing(BpsArgs),
    /// Check the trivial Riemann-Hilbert solution condition
    CheckRhp(BpsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Normalize {
    Raw,
    GroupOrder,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PolygonMethod {
    Matching,
    Kasteleyn,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ProductForm {
    /// One variable per `v_j`
    Orbifold,
    /// The two-character form (N = 2 only)
    TwoCharacter,
}

#[derive(Args, Debug)]
struct Common {
    /// Input document
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Catalog entry
    #[arg(long)]
    name: Option<String>,
    /// Family parameter for yN0
    #[arg(long = "N", value_name = "N")]
    n: Option<u32>,
    /// Write output here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Truncation order
    #[arg(long, value_name = "D")]
    order: Option<u32>,
    /// Integer window A:B
    #[arg(long, value_name = "A:B", allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, value_enum)]
    normalize: Option<Normalize>,
}

#[derive(Args, Debug)]
struct QuotientArgs {
    #[command(flatten)]
    common: Common,
    /// Named action of the catalog entry
    #[arg(long)]
    action: Option<String>,
    /// Group action document
    #[arg(long, value_name = "FILE")]
    action_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IsoArgs {
    #[command(flatten)]
    common: Common,
    /// Second quiver document
    #[arg(long, value_name = "FILE")]
    other: Option<PathBuf>,
    /// Second catalog entry
    #[arg(long)]
    other_name: Option<String>,
    #[arg(long = "other-N", value_name = "N")]
    other_n: Option<u32>,
}

#[derive(Args, Debug)]
struct PolygonArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "matching")]
    method: PolygonMethod,
}

#[derive(Args, Debug)]
struct RelatticeArgs {
    #[command(flatten)]
    common: Common,
    /// New lattice as `a,b;c,d`
    #[arg(long, allow_hyphen_values = true)]
    lattice: Option<String>,
    /// Named lattice of the catalog entry
    #[arg(long)]
    lattice_name: Option<String>,
}

#[derive(Args, Debug)]
struct BpsArgs {
    #[command(flatten)]
    common: Common,
    /// Central charge values `Z(γ_1),…` separated by commas
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, value_enum, default_value = "orbifold")]
    form: ProductForm,
}

/// A validation failure reported as `ERROR <code>: <detail>`.
#[derive(Debug)]
pub struct CliError {
    pub code: String,
    pub detail: String,
}

impl CliError {
    fn new(code: &str, detail: impl Into<String>) -> Self {
        CliError {
            code: code.to_string(),
            detail: detail.into(),
        }
    }
}

macro_rules! from_coded {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::new(e.code(), e.to_string())
            }
        }
    )*};
}
from_coded!(
    QuiverError,
    SymmetryError,
    DimerError,
    BpsError,
    CatalogError,
    JsonError
);

type CliResult = Result<String, CliError>;

/// Runs the CLI, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let (result, target) = dispatch(cli);
    match result {
        Ok(text) => {
            if let Some(path) = target {
                if let Err(e) = std::fs::write(&path, text.as_bytes()) {
                    let _ = writeln!(err, "ERROR Io: cannot write {}: {e}", path.display());
                    return EXIT_VALIDATION;
                }
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "ERROR {}: {}", e.code, e.detail.replace('\n', " "));
            EXIT_VALIDATION
        }
    }
}

fn dispatch(cli: Cli) -> (CliResult, Option<PathBuf>) {
    match cli.command {
        Top::Catalog { command } => match command {
            CatalogCmd::List(c) => (catalog_list(&c), c.out),
            CatalogCmd::Show(c) => (catalog_show(&c), c.out),
        },
        Top::Quiver { command } => match command {
            QuiverCmd::Validate(c) => (quiver_validate(&c), c.out),
            QuiverCmd::Quotient(a) => (quiver_quotient(&a), a.common.out.clone()),
            QuiverCmd::Isomorphic(a) => (quiver_iso(&a), a.common.out.clone()),
            QuiverCmd::Euler(c) => (quiver_euler(&c), c.out),
        },
        Top::Dimer { command } => match command {
            DimerCmd::Dual(c) => (dimer_dual(&c), c.out),
            DimerCmd::Matchings(c) => (dimer_matchings(&c), c.out),
            DimerCmd::Polygon(a) => (dimer_polygon(&a), a.common.out.clone()),
            DimerCmd::Relattice(a) => (dimer_relattice(&a), a.common.out.clone()),
        },
        Top::Bps { command } => match command {
            BpsCmd::Spectrum(a) => (bps_spectrum(&a), a.common.out.clone()),
            BpsCmd::Rays(a) => (bps_rays(&a), a.common.out.clone()),
            BpsCmd::Expand(a) => (bps_expand(&a), a.common.out.clone()),
            BpsCmd::Extract(a) => (bps_extract(&a), a.common.out.clone()),
            BpsCmd::CheckWallcrossing(a) => (bps_wallcrossing(&a), a.common.out.clone()),
            BpsCmd::CheckRhp(a) => (bps_rhp(&a), a.common.out.clone()),
        },
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new("Io", format!("cannot read {}: {e}", path.display())))
}

fn format_of(c: &Common, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = c.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::new(
            "UnsupportedFormat",
            format!("{f:?} output is not available for this command"),
        ))
    }
}

fn entry(c: &Common) -> Result<CatalogEntry, CliError> {
    let name = c
        .name
        .as_deref()
        .ok_or_else(|| CliError::new("MissingInput", "--name is required"))?;
    Ok(catalog_get(name, c.n)?)
}

/// Quiver with potential from `--in` or `--name`.
fn load_quiver(c: &Common) -> Result<(Quiver, Potential, Option<CatalogEntry>), CliError> {
    match (&c.input, &c.name) {
        (Some(p), None) => {
            let (q, w) = quiver_from_json(&read(p)?)?;
            Ok((q, w, None))
        }
        (None, Some(_)) => {
            let e = entry(c)?;
            Ok((e.quiver.clone(), e.potential.clone(), Some(e)))
        }
        _ => Err(CliError::new(
            "MissingInput",
            "exactly one of --in and --name is required",
        )),
    }
}

fn load_tiling(c: &Common) -> Result<(BraneTiling, Option<CatalogEntry>), CliError> {
    match (&c.input, &c.name) {
        (Some(p), None) => Ok((tiling_from_json(&read(p)?)?, None)),
        (None, Some(name)) => {
            let e = entry(c)?;
            let t = e
                .tiling
                .clone()
                .ok_or_else(|| CliError::new("NoTiling", format!("{name} has no tiling")))?;
            Ok((t, Some(e)))
        }
        _ => Err(CliError::new(
            "MissingInput",
            "exactly one of --in and --name is required",
        )),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn catalog_list(c: &Common) -> CliResult {
    match format_of(c, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(pretty(&json!(CATALOG_NAMES))),
        _ => Ok(CATALOG_NAMES.iter().map(|n| format!("{n}\n")).collect()),
    }
}

fn catalog_show(c: &Common) -> CliResult {
    let e = entry(c)?;
    match format_of(c, Format::Json, &[Format::Text, Format::Json])? {
        Format::Json => Ok(with_newline(catalog_to_json(&e))),
        _ => {
            let mut s = format!(
                "{}: {} vertices, {} arrows, {} potential terms\n",
                e.name,
                e.quiver.vertex_count(),
                e.quiver.arrow_count(),
                e.potential.len()
            );
            if let Some(t) = &e.tiling {
                s.push_str(&format!(
                    "tiling: {} nodes, {} edges\n",
                    t.nodes.len(),
                    t.edges.len()
                ));
            }
            for (n, a) in &e.actions {
                s.push_str(&format!("action {n}: orders {:?}\n", a.orders));
            }
            for (n, l) in &e.lattices {
                s.push_str(&format!("lattice {n}: {:?}\n", l.generators));
            }
            Ok(s)
        }
    }
}

fn quiver_validate(c: &Common) -> CliResult {
    let (q, w, _) = load_quiver(c)?;
    validate(&q, &w)?;
    match format_of(c, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(pretty(
            &json!({"valid": true, "vertices": q.vertex_count(), "arrows": q.arrow_count(), "terms": w.len()}),
        )),
        _ => Ok(format!(
            "ok: {} vertices, {} arrows, {} terms\n",
            q.vertex_count(),
            q.arrow_count(),
            w.len()
        )),
    }
}

/// First catalog entry isomorphic to `(q, w)`.
fn catalog_match(q: &Quiver, w: &Potential) -> Option<(String, QuiverIsomorphism)> {
    let mut candidates: Vec<CatalogEntry> = CATALOG_NAMES
        .iter()
        .filter(|&&n| n != "yN0")
        .filter_map(|n| catalog_get(n, None).ok())
        .collect();
    candidates.extend((2..=5).filter_map(|n| catalog_get("yN0", Some(n)).ok()));
    for e in candidates {
        if e.quiver.vertex_count() != q.vertex_count() || e.quiver.arrow_count() != q.arrow_count()
        {
            continue;
        }
        if let Ok(Some(iso)) = quiver_isomorphic(q, w, &e.quiver, &e.potential) {
            let label = match e.parameter {
                Some(n) => format!("{} N={n}", e.name),
                None => e.name.clone(),
            };
            return Some((label, iso));
        }
    }
    None
}

fn quiver_quotient(a: &QuotientArgs) -> CliResult {
    let c = &a.common;
    let (q, w, e) = load_quiver(c)?;
    let act: GroupAction = match (&a.action, &a.action_file) {
        (Some(name), None) => {
            let e = e
                .as_ref()
                .ok_or_else(|| CliError::new("MissingInput", "--action needs --name"))?;
            e.action(name).cloned().ok_or_else(|| {
                CliError::new(
                    "UnknownAction",
                    format!("{} has no action '{name}'", e.name),
                )
            })?
        }
        (None, Some(p)) => action_from_json(&read(p)?)?,
        _ => {
            return Err(CliError::new(
                "MissingInput",
                "exactly one of --action and --action-file is required",
            ))
        }
    };
    validate_action(&q, &w, &act)?;
    let norm = match c.normalize.unwrap_or(Normalize::GroupOrder) {
        Normalize::Raw => Normalization::Raw,
        Normalize::GroupOrder => Normalization::ByGroupOrder,
    };
    let res = quotient(&q, &w, &act, norm)?;
    let sec = section_labels(&q, &act, &res, &default_section(&res))?;
    let matched = catalog_match(&res.quiver, &res.potential);
    match format_of(c, Format::Json, &[Format::Text, Format::Json])? {
        Format::Json => {
            let doc = json!({
                "quotient": QuiverDoc::from_parts(&res.quiver, &res.potential),
                "orbits": {
                    "vertices": res.vertex_orbit.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                    "arrows": res.arrow_orbit,
                },
                "section": serde_json::from_str::<serde_json::Value>(&section_to_json(&sec.section)).expect("valid json"),
                "labels": sec.labels,
                "match": matched.as_ref().map(|(n, iso)| json!({"name": n, "scale": iso.scale.to_string()})),
            });
            Ok(pretty(&doc))
        }
        _ => {
            let mut s = format!(
                "quotient: {} vertices, {} arrows, {} terms (group order {})\n",
                res.quiver.vertex_count(),
                res.quiver.arrow_count(),
                res.potential.len(),
                res.group_order
            );
            for (word, coeff) in res.potential.terms() {
                let names: Vec<&str> = word
                    .arrows()
                    .iter()
                    .map(|x| x.strip_prefix(ORBIT_PREFIX).unwrap_or(x))
                    .collect();
                s.push_str(&format!("  {coeff} * {}\n", names.join(" ")));
            }
            match matched {
                Some((n, iso)) => {
                    s.push_str(&format!("matches catalog {n} (scale {})\n", iso.scale))
                }
                None => s.push_str("no catalog match\n"),
            }
            Ok(s)
        }
    }
}

fn quiver_iso(a: &IsoArgs) -> CliResult {
    let (q1, w1, _) = load_quiver(&a.common)?;
    let (q2, w2) = match (&a.other, &a.other_name) {
        (Some(p), None) => quiver_from_json(&read(p)?)?,
        (None, Some(n)) => {
            let e = catalog_get(n, a.other_n)?;
            (e.quiver, e.potential)
        }
        _ => {
            return Err(CliError::new(
                "MissingInput",
                "exactly one of --other and --other-name is required",
            ))
        }
    };
    let iso = quiver_isomorphic(&q1, &w1, &q2, &w2)?;
    match format_of(&a.common, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(pretty(&match &iso {
            Some(i) => json!({
                "isomorphic": true,
                "scale": i.scale.to_string(),
                "vertices": i.vertices.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
                "arrows": i.arrows,
            }),
            None => json!({"isomorphic": false}),
        })),
        _ => Ok(match iso {
            Some(i) => format!("isomorphic (scale {})\n", i.scale),
            None => "not isomorphic\n".into(),
        }),
    }
}

fn quiver_euler(c: &Common) -> CliResult {
    let (q, _, _) = load_quiver(c)?;
    let b = skew_euler_form(&q);
    match format_of(c, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(pretty(
            &json!({"vertices": b.vertices(), "matrix": b.matrix()}),
        )),
        _ => {
            let width = b
                .matrix()
                .iter()
                .flatten()
                .map(|x| x.to_string().len())
                .max()
                .unwrap_or(1);
            Ok(b.matrix()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| format!("{x:>width$}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                        + "\n"
                })
                .collect())
        }
    }
}

fn dimer_dual(c: &Common) -> CliResult {
    let (t, e) = load_tiling(c)?;
    let (q, w) = dual_quiver(&t)?;
    match format_of(c, Format::Json, &[Format::Text, Format::Json])? {
        Format::Json => Ok(with_newline(quiver_to_json(&q, &w))),
        _ => {
            let mut s = format!(
                "dual: {} vertices, {} arrows, {} terms\n",
                q.vertex_count(),
                q.arrow_count(),
                w.len()
            );
            if let Some(e) = e {
                let iso = quiver_isomorphic(&q, &w, &e.quiver, &e.potential)?;
                match iso {
                    Some(i) => {
                        s.push_str(&format!("matches catalog {} (scale {})\n", e.name, i.scale))
                    }
                    None => s.push_str(&format!("does not match catalog {}\n", e.name)),
                }
            }
            Ok(s)
        }
    }
}

fn dimer_matchings(c: &Common) -> CliResult {
    let (t, _) = load_tiling(c)?;
    let ms = enumerate_matchings(&t)?;
    match format_of(c, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(pretty(&json!(ms
            .iter()
            .map(|m| json!({"edges": m.edge_ids(&t), "class": matching_class(&t, m)}))
            .collect::<Vec<_>>()))),
        _ => {
            let mut s = format!("{} perfect matchings\n", ms.len());
            for m in &ms {
                let h = matching_class(&t, m);
                s.push_str(&format!(
                    "({},{}) {}\n",
                    h[0],
                    h[1],
                    m.edge_ids(&t).join(" ")
                ));
            }
            Ok(s)
        }
    }
}

fn polygon_text(p: &LatticePolygon) -> String {
    let mut s = String::from("hull:");
    for v in &p.vertices {
        s.push_str(&format!(" ({},{})", v[0], v[1]));
    }
    s.push('\n');
    s.push_str(&format!(
        "double area: {}\ninterior points: {}\n",
        p.double_area(),
        p.interior_points().len()
    ));
    for (pt, m) in &p.multiplicities {
        s.push_str(&format!("({},{}) x{m}\n", pt[0], pt[1]));
    }
    s
}

fn dimer_polygon(a: &PolygonArgs) -> CliResult {
    let (t, _) = load_tiling(&a.common)?;
    let p = match a.method {
        PolygonMethod::Kasteleyn => kasteleyn_polygon(&t)?,
        PolygonMethod::Matching => {
            let ms = enumerate_matchings(&t)?;
            let first = ms.first().ok_or_else(|| {
                CliError::new("NoMatchings", "the tiling has no perfect matching")
            })?;
            matching_polygon(&t, first)?
        }
    };
    match format_of(&a.common, Format::Json, &[Format::Text, Format::Json])? {
        Format::Json => Ok(with_newline(polygon_to_json(&p))),
        _ => Ok(polygon_text(&p)),
    }
}

fn parse_lattice(s: &str) -> Result<TorusLattice, CliError> {
    let bad = || {
        CliError::new(
            "InvalidLattice",
            format!("'{s}' is not of the form a,b;c,d"),
        )
    };
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(bad());
    }
    Ok(TorusLattice::new(
        [rows[0][0], rows[0][1]],
        [rows[1][0], rows[1][1]],
    )?)
}

fn dimer_relattice(a: &RelatticeArgs) -> CliResult {
    let (t, e) = load_tiling(&a.common)?;
    let lattice = match (&a.lattice, &a.lattice_name) {
        (Some(s), None) => parse_lattice(s)?,
        (None, Some(n)) => e
            .as_ref()
            .and_then(|e| e.lattice(n).cloned())
            .ok_or_else(|| CliError::new("UnknownLattice", format!("no lattice named '{n}'")))?,
        _ => {
            return Err(CliError::new(
                "MissingInput",
                "exactly one of --lattice and --lattice-name is required",
            ))
        }
    };
    let r = change_lattice(&t, &lattice)?;
    match format_of(&a.common, Format::Json, &[Format::Text, Format::Json])? {
        Format::Json => Ok(pretty(&json!({
            "tiling": TilingDoc::from_tiling(&r.tiling),
            "action": r.action,
            "index": r.index,
        }))),
        _ => Ok(format!(
            "index {}: {} nodes, {} edges; translation group orders {:?}\n",
            r.index,
            r.tiling.nodes.len(),
            r.tiling.edges.len(),
            r.action.orders
        )),
    }
}

fn group_order(a: &BpsArgs) -> Result<u32, CliError> {
    let c = &a.common;
    if let Some(name) = &c.name {
        if name != "yN0" && name != "p1xp1" && name != "conifold" {
            return Err(CliError::new(
                "BadParameter",
                format!("no invariant spectrum for '{name}'"),
            ));
        }
        if name == "p1xp1" {
            return Ok(2);
        }
        if name == "conifold" {
            return Ok(1);
        }
    }
    match c.n {
        Some(0) => Err(CliError::new("BadParameter", "N must be at least 1")),
        Some(n) if n > 8 => Err(CliError::new(
            "BadParameter",
            format!("N = {n} exceeds the supported 8"),
        )),
        Some(n) => Ok(n),
        None => Err(CliError::new("BadParameter", "--N is required")),
    }
}

/// Group order, quiver and rotation action of the invariant data.
fn invariant_setup(a: &BpsArgs) -> Result<(u32, CatalogEntry, GroupAction), CliError> {
    let n = group_order(a)?;
    let e = match a.common.name.as_deref() {
        Some("p1xp1") => catalog_get("p1xp1", None)?,
        _ => catalog_get("yN0", Some(n))?,
    };
    let act = e
        .action("rot")
        .cloned()
        .expect("invariant data carries its rotation");
    Ok((n, e, act))
}

fn window_of(c: &Common, default: Window) -> Result<Window, CliError> {
    match &c.window {
        Some(s) => Ok(s.parse::<Window>()?),
        None => Ok(default),
    }
}

fn central_charge(a: &BpsArgs, rank: usize) -> Result<CentralCharge, CliError> {
    match &a.z {
        None => Ok(CentralCharge::standard(rank)),
        Some(s) => {
            let vals = s
                .split(',')
                .map(|x| {
                    parse_gaussian(x).ok_or_else(|| {
                        CliError::new(
                            "InvalidCentralCharge",
                            format!("'{x}' is not a Gaussian rational"),
                        )
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if vals.len() != rank {
                return Err(CliError::new(
                    "InvalidCentralCharge",
                    format!("{} values for rank {rank}", vals.len()),
                ));
            }
            Ok(CentralCharge::new(vals))
        }
    }
}

fn bps_spectrum(a: &BpsArgs) -> CliResult {
    let n = group_order(a)?;
    let s = invariant_spectrum(n, window_of(&a.common, Window::symmetric(3))?)?;
    match format_of(&a.common, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(with_newline(s.to_json())),
        _ => Ok(s.to_text()),
    }
}

fn bps_rays(a: &BpsArgs) -> CliResult {
    let n = group_order(a)?;
    let w = window_of(&a.common, Window::symmetric(3))?;
    let z = central_charge(a, 2 * n as usize)?;
    validate_central_charge(&z, n, w)?;
    let s = invariant_spectrum(n, w)?;
    let rays = ray_diagram(&z, &s, w)?;
    match format_of(&a.common, Format::Text, &[Format::Text, Format::Json, Format::Svg])? {
        Format::Svg => Ok(svg_render(&rays)),
        Format::Json => Ok(pretty(&json!(rays
            .iter()
            .map(|r| json!({
                "direction": format_gaussian(&r.direction),
                "central": r.central,
                "classes": r.classes.iter().map(|(c, o)| json!({"class": c.0, "omega": o})).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>()))),
        Format::Text => {
            let mut s = String::new();
            for r in &rays {
                let mark = if r.central { " central" } else { "" };
                let cls: Vec<String> = r.classes.iter().map(|(c, o)| format!("{}:{o}", bps::class_label(c))).collect();
                s.push_str(&format!("Z ~ {}{mark}: {}\n", format_gaussian(&r.direction), cls.join(" ")));
            }
            Ok(s)
        }
    }
}

fn order_of(c: &Common, default: u32) -> Result<u32, CliError> {
    let d = c.order.unwrap_or(default);
    if d > bps::MAX_ORDER {
        return Err(BpsError::InvalidTruncation(d).into());
    }
    Ok(d)
}

fn bps_expand(a: &BpsArgs) -> CliResult {
    let n = group_order(a)?;
    let d = order_of(&a.common, 6)?;
    let s = match a.form {
        ProductForm::Orbifold => dt0_product(n, d)?,
        ProductForm::TwoCharacter => {
            if n != 2 {
                return Err(CliError::new(
                    "BadParameter",
                    "the two-character form needs N = 2",
                ));
            }
            bps::expand_families(&two_character_families(d.max(1)), 2, d)?
        }
    };
    match format_of(&a.common, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(pretty(&json!({
            "vars": s.vars(),
            "order": s.order(),
            "terms": s.terms().map(|(e, c)| json!({"exponent": e, "coeff": c.to_string()})).collect::<Vec<_>>(),
        }))),
        _ => Ok(s.to_text()),
    }
}

fn bps_extract(a: &BpsArgs) -> CliResult {
    let n = group_order(a)?;
    let d = order_of(&a.common, 6)?;
    let families = match a.form {
        ProductForm::Orbifold => dt0_factor_families(n, d.max(1)),
        ProductForm::TwoCharacter if n == 2 => two_character_families(d.max(1)),
        ProductForm::TwoCharacter => {
            return Err(CliError::new(
                "BadParameter",
                "the two-character form needs N = 2",
            ))
        }
    };
    let s = v_to_gamma(&extract_bps(
        &families,
        window_of(&a.common, Window::symmetric(3))?,
    )?);
    match format_of(&a.common, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(with_newline(s.to_json())),
        _ => Ok(s.to_text()),
    }
}

fn bps_wallcrossing(a: &BpsArgs) -> CliResult {
    let (n, e, act) = invariant_setup(a)?;
    let act = &act;
    let d = order_of(&a.common, 6)?;
    let w = Window::symmetric(d as i64 + 1);
    let z = central_charge(a, 2 * n as usize)?;
    validate_central_charge(&z, n, w)?;
    let s = invariant_spectrum(n, w)?;
    let b = skew_euler_form(&e.quiver);
    let kernel = kernel_pairing_check(&b, &e.quiver, act)?;
    let mut rows = Vec::new();
    let mut all = true;
    for r in ray_diagram(&z, &s, w)? {
        let classes: Vec<_> = r.classes.iter().map(|(c, _)| c.clone()).collect();
        let table: BTreeMap<_, _> = r.classes.iter().map(|(c, o)| (c.clone(), *o)).collect();
        let aut = ks_ray_automorphism(&classes, |c| table.get(c).copied(), &b, d)?;
        if aut.classes.is_empty() {
            continue;
        }
        let trivial = check_invariant_triviality(&aut, &e.quiver, act, d)?;
        all &= trivial;
        rows.push((
            format_gaussian(&r.direction),
            r.central,
            aut.classes.len(),
            aut.is_identity(),
            trivial,
        ));
    }
    match format_of(&a.common, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(pretty(&json!({
            "pair_sums_in_kernel": kernel.holds(),
            "orbit_sums_in_kernel": kernel.orbit_sums_hold(),
            "all_trivial": all,
            "rays": rows.iter().map(|(dir, central, k, lit, triv)| json!({
                "direction": dir, "central": central, "classes": k, "identity": lit, "trivial_on_quotient": triv,
            })).collect::<Vec<_>>(),
        }))),
        _ => {
            let mut s = format!(
                "pair sums in kernel: {}\norbit sums in kernel: {}\n",
                kernel.holds(),
                kernel.orbit_sums_hold()
            );
            for (dir, central, k, lit, triv) in &rows {
                let mark = if *central { " central" } else { "" };
                s.push_str(&format!(
                    "ray {dir}{mark}: {k} classes, identity {lit}, trivial on quotient {triv}\n"
                ));
            }
            s.push_str(&format!("wall-crossing trivial: {all}\n"));
            Ok(s)
        }
    }
}

fn bps_rhp(a: &BpsArgs) -> CliResult {
    let (n, e, act) = invariant_setup(a)?;
    let d = order_of(&a.common, 6)?;
    let w = Window::symmetric(d as i64 + 1);
    let z = central_charge(a, 2 * n as usize)?;
    validate_central_charge(&z, n, w)?;
    let s = invariant_spectrum(n, w)?;
    let ok = trivial_rhp_solution_check(&z, &s, &e.quiver, &act, d)?;
    match format_of(&a.common, Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => Ok(pretty(&json!({"trivial_solution": ok}))),
        _ => Ok(format!("trivial RHP solution: {ok}\n")),
    }
}
