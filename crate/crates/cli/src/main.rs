//! skeinfill: exact computations in the symmetric quantum torus model of
//! the torus skein algebra, annihilating polynomials of module
//! generators, and Dehn-filling slope analysis with dimension bounds.
//!
//! All documents are UTF-8 JSON with sorted keys and canonical scalar
//! strings, so repeated runs are byte-identical. Exit codes: 0 success
//! (including excluded-slope verdicts), 2 parse error, 3 precondition
//! violation, 4 internal invariant failure.

mod svg;

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use skeinfill_core::annihilator::{
    compute_annihilator, monomial_vertex_check, AnnihilatingRelation, AnnihilatorError,
    CancelFlag,
};
use skeinfill_core::coeff::{CoeffError, CoeffField, CoeffTag, QAm2, RatFunc};
use skeinfill_core::doc::{
    doc_to_presentation, doc_to_relation, peripheral_to_records, records_to_skein_element,
    records_to_symmetric_element, relation_to_doc, skein_element_to_records,
    symmetric_element_to_records, DocError, PresentationDoc, RelationDoc, SkeinTermRecord,
    TermRecord,
};
use skeinfill_core::filling::{
    analyze_filling, excluded_slopes, reduce_full, verify_certificate, FillingError,
    FillingReport, FillingSlope, ModuleVector,
};
use skeinfill_core::lattice::{slopes, BandPair, LatticeError, NewtonPolygon, Slope};
use skeinfill_core::qtorus::{ExponentPair, SymmetricClass, SymmetricElement};
use skeinfill_core::skein_t2::{peripheral_to_etilde, phi, phi_inv, PeripheralPoly};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, CliError>;

impl CliError {
    fn parse(msg: impl Display) -> Self {
        CliError { code: EXIT_PARSE, message: msg.to_string() }
    }

    fn precondition(msg: impl Display) -> Self {
        CliError { code: EXIT_PRECONDITION, message: msg.to_string() }
    }

    fn internal(msg: impl Display) -> Self {
        CliError { code: EXIT_INTERNAL, message: msg.to_string() }
    }
}

impl From<CoeffError> for CliError {
    fn from(e: CoeffError) -> Self {
        match e {
            CoeffError::Dimension(_) => CliError::precondition(e),
            _ => CliError::parse(e),
        }
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Coeff(inner) => inner.into(),
            DocError::Invalid(_) => CliError::parse(e),
            _ => CliError::precondition(e),
        }
    }
}

impl From<AnnihilatorError> for CliError {
    fn from(e: AnnihilatorError) -> Self {
        match e {
            AnnihilatorError::Coeff(inner) => inner.into(),
            AnnihilatorError::Cancelled => CliError::internal(e),
            _ => CliError::precondition(e),
        }
    }
}

impl From<FillingError> for CliError {
    fn from(e: FillingError) -> Self {
        match e {
            FillingError::BadSlope(_) => CliError::parse(e),
            FillingError::UnknownGenerator { .. } => CliError::precondition(e),
            FillingError::Lattice(_) => CliError::precondition(e),
            _ => CliError::internal(e),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::precondition(e)
    }
}

#[derive(Parser)]
#[command(name = "skeinfill", version, about = "Torus skein algebra and Dehn-filling calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two symmetric elements
    Mul {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "QA")]
        coeff: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Map a multicurve element into the symmetric basis
    Phi {
        input: PathBuf,
        #[arg(long, default_value = "QA")]
        coeff: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Map a symmetric element back to the multicurve basis
    PhiInv {
        input: PathBuf,
        #[arg(long, default_value = "QA")]
        coeff: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Annihilating polynomial and relation of one generator
    Annihilate {
        presentation: PathBuf,
        /// Generator name; defaults to the presentation's target
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Newton polygon, slope set and vertex check of a relation
    Polygon {
        relation: PathBuf,
        #[arg(long, default_value = "QA")]
        coeff: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Filling analysis of one slope against relation files
    Fill {
        #[arg(required = true)]
        relations: Vec<PathBuf>,
        /// Filling slope, as q/p or "inf"
        #[arg(long)]
        slope: String,
        #[arg(long, default_value = "QA")]
        coeff: String,
        /// Replay reduction certificates on sample vectors
        #[arg(long)]
        verify: bool,
        /// Write a band diagram to this path
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline: annihilate every generator, slopes and bounds
    Report {
        presentation: PathBuf,
        /// Replay reduction certificates on sample vectors
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Mul { a, b, coeff, out } => {
            let value = match parse_tag(&coeff)? {
                CoeffTag::QA => cmd_mul::<RatFunc>(&a, &b)?,
                CoeffTag::QAm2 => cmd_mul::<QAm2>(&a, &b)?,
            };
            emit(&value, out.as_deref())
        }
        Command::Phi { input, coeff, out } => {
            let value = match parse_tag(&coeff)? {
                CoeffTag::QA => cmd_phi::<RatFunc>(&input)?,
                CoeffTag::QAm2 => cmd_phi::<QAm2>(&input)?,
            };
            emit(&value, out.as_deref())
        }
        Command::PhiInv { input, coeff, out } => {
            let value = match parse_tag(&coeff)? {
                CoeffTag::QA => cmd_phi_inv::<RatFunc>(&input)?,
                CoeffTag::QAm2 => cmd_phi_inv::<QAm2>(&input)?,
            };
            emit(&value, out.as_deref())
        }
        Command::Annihilate { presentation, target, out } => {
            let doc: PresentationDoc = read_json(&presentation)?;
            let tag = parse_tag(&doc.coeff)?;
            let value = match tag {
                CoeffTag::QA => cmd_annihilate::<RatFunc>(&doc, target.as_deref(), tag)?,
                CoeffTag::QAm2 => cmd_annihilate::<QAm2>(&doc, target.as_deref(), tag)?,
            };
            emit(&value, out.as_deref())
        }
        Command::Polygon { relation, coeff, out } => {
            let tag = parse_tag(&coeff)?;
            let value = match tag {
                CoeffTag::QA => cmd_polygon::<RatFunc>(&relation, tag)?,
                CoeffTag::QAm2 => cmd_polygon::<QAm2>(&relation, tag)?,
            };
            emit(&value, out.as_deref())
        }
        Command::Fill { relations, slope, coeff, verify, svg, out } => {
            let tag = parse_tag(&coeff)?;
            let value = match tag {
                CoeffTag::QA => cmd_fill::<RatFunc>(&relations, &slope, verify, svg.as_deref(), tag)?,
                CoeffTag::QAm2 => cmd_fill::<QAm2>(&relations, &slope, verify, svg.as_deref(), tag)?,
            };
            emit(&value, out.as_deref())
        }
        Command::Report { presentation, verify, out } => {
            let doc: PresentationDoc = read_json(&presentation)?;
            let tag = parse_tag(&doc.coeff)?;
            let value = match tag {
                CoeffTag::QA => cmd_report::<RatFunc>(&doc, verify, tag)?,
                CoeffTag::QAm2 => cmd_report::<QAm2>(&doc, verify, tag)?,
            };
            emit(&value, out.as_deref())
        }
    }
}

fn parse_tag(text: &str) -> CliResult<CoeffTag> {
    CoeffTag::parse(text)
        .ok_or_else(|| CliError::parse(format!("unknown coefficient field '{text}' (use QA or QAm2)")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn emit(value: &Value, out: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::internal(format!("serialization failed: {e}")))?;
    text.push('\n');
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display()))),
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn cmd_mul<F: CoeffField>(a: &Path, b: &Path) -> CliResult<Value> {
    let ra: Vec<TermRecord> = read_json(a)?;
    let rb: Vec<TermRecord> = read_json(b)?;
    let x = records_to_symmetric_element::<F>(&ra)?;
    let y = records_to_symmetric_element::<F>(&rb)?;
    Ok(serde_json::to_value(symmetric_element_to_records(&x.mul(&y))).unwrap())
}

fn cmd_phi<F: CoeffField>(input: &Path) -> CliResult<Value> {
    let recs: Vec<SkeinTermRecord> = read_json(input)?;
    let x = records_to_skein_element::<F>(&recs)?;
    Ok(serde_json::to_value(symmetric_element_to_records(&phi(&x))).unwrap())
}

fn cmd_phi_inv<F: CoeffField>(input: &Path) -> CliResult<Value> {
    let recs: Vec<TermRecord> = read_json(input)?;
    let x = records_to_symmetric_element::<F>(&recs)?;
    Ok(serde_json::to_value(skein_element_to_records(&phi_inv(&x))).unwrap())
}

fn polygon_value(p: &NewtonPolygon) -> Value {
    json!({
        "kind": p.kind_name(),
        "vertices": p.vertices().iter().map(|v| vec![v.p, v.q]).collect::<Vec<_>>(),
    })
}

fn slopes_value(set: impl IntoIterator<Item = Slope>) -> Value {
    Value::Array(set.into_iter().map(|s| Value::String(s.to_string())).collect())
}

fn relation_analysis_value<F: CoeffField>(rel: &AnnihilatingRelation<F>) -> Vec<(&'static str, Value)> {
    let (monomial, witnesses) = monomial_vertex_check(rel);
    vec![
        ("relation", serde_json::to_value(relation_to_doc(rel)).unwrap()),
        ("polygon", polygon_value(rel.polygon())),
        ("slopes", slopes_value(slopes(rel.polygon()))),
        ("monomial_vertices", Value::Bool(monomial)),
        (
            "monomial_vertex_witnesses",
            Value::Array(
                witnesses
                    .iter()
                    .map(|(at, c)| json!({"coeff": c.to_string(), "p": at.p, "q": at.q}))
                    .collect(),
            ),
        ),
    ]
}

fn cmd_annihilate<F: CoeffField>(
    doc: &PresentationDoc,
    target: Option<&str>,
    tag: CoeffTag,
) -> CliResult<Value> {
    let pres = doc_to_presentation::<F>(doc)?;
    let target_name = target.unwrap_or(&doc.target);
    let idx = pres
        .generator_index(target_name)
        .ok_or_else(|| CliError::precondition(format!("unknown generator '{target_name}'")))?;
    match compute_annihilator(&pres, idx, &CancelFlag::new()) {
        Err(AnnihilatorError::ZeroGenerator { name }) => Ok(json!({
            "coeff": tag.as_str(),
            "generator": name,
            "zero_generator": true,
        })),
        Err(e) => Err(e.into()),
        Ok((q, rel)) => {
            let mut obj = serde_json::Map::new();
            obj.insert("coeff".into(), Value::String(tag.as_str().into()));
            obj.insert("generator".into(), Value::String(target_name.into()));
            obj.insert("zero_generator".into(), Value::Bool(false));
            obj.insert(
                "peripheral".into(),
                serde_json::to_value(peripheral_to_records(&q)).unwrap(),
            );
            for (k, v) in relation_analysis_value(&rel) {
                obj.insert(k.into(), v);
            }
            Ok(Value::Object(obj))
        }
    }
}

fn cmd_polygon<F: CoeffField>(path: &Path, tag: CoeffTag) -> CliResult<Value> {
    let doc: RelationDoc = read_json(path)?;
    let rel = doc_to_relation::<F>(&doc)?;
    let mut obj = serde_json::Map::new();
    obj.insert("coeff".into(), Value::String(tag.as_str().into()));
    for (k, v) in relation_analysis_value(&rel) {
        obj.insert(k.into(), v);
    }
    Ok(Value::Object(obj))
}

fn band_value(bp: &BandPair) -> Value {
    json!({
        "epsilon": [bp.eps.0, bp.eps.1],
        "lambda": [bp.lam.0, bp.lam.1],
        "m": bp.m,
    })
}

fn classes_value(classes: &[SymmetricClass]) -> Value {
    Value::Array(
        classes
            .iter()
            .map(|c| Value::Array(vec![c.rep().p.into(), c.rep().q.into()]))
            .collect(),
    )
}

/// Out-of-band start points in band coordinates, pulled back to lattice
/// points; used by `--verify` to exercise the rewriting engine.
fn sample_starts(bp: &BandPair) -> Vec<ExponentPair> {
    let d = bp.det();
    let inv = |u: i64, v: i64| {
        ExponentPair::new(
            d * (bp.eps.1 * u - bp.lam.1 * v),
            d * (-bp.eps.0 * u + bp.lam.0 * v),
        )
    };
    vec![inv(bp.m + 1, 2), inv(bp.m + 2, -1), inv(2 * bp.m + 3, 3)]
}

fn verify_samples<F: CoeffField>(
    relations: &[AnnihilatingRelation<F>],
    report: &FillingReport,
) -> CliResult<u64> {
    let mut checks = 0u64;
    for (gen, ga) in report.generators.iter().enumerate() {
        let starts = match &ga.band {
            Some(bp) => sample_starts(bp),
            None => vec![ExponentPair::new(3, 5), ExponentPair::new(-7, 2)],
        };
        for at in starts {
            let x = SymmetricElement::<F>::basis(SymmetricClass::of(at));
            let input = ModuleVector::from_component(gen, x);
            let (output, cert) = reduce_full(relations, report.slope, &input)?;
            verify_certificate(relations, report.slope, &input, &output, &cert)?;
            let allowed: std::collections::BTreeSet<&SymmetricClass> =
                ga.classes.iter().collect();
            for (_, elem) in output.iter() {
                for (class, _) in elem.iter() {
                    if !allowed.contains(class) {
                        return Err(CliError::internal(format!(
                            "normal form escaped the spanning classes at {class}"
                        )));
                    }
                }
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn fill_report_value(
    tag: CoeffTag,
    names: &[String],
    report: &FillingReport,
    verified: bool,
) -> Value {
    let generators: Vec<Value> = report
        .generators
        .iter()
        .zip(names)
        .map(|(ga, name)| {
            json!({
                "band": ga.band.as_ref().map(band_value),
                "bound": ga.bound,
                "classes": classes_value(&ga.classes),
                "name": name,
                "zero": ga.zero,
            })
        })
        .collect();
    json!({
        "bound_formula": "3*M+2 (implementation-derived)",
        "coeff": tag.as_str(),
        "excluded": report.excluded,
        "excluded_slopes": slopes_value(report.excluded_slopes.iter().copied()),
        "generators": generators,
        "slope": report.slope.to_string(),
        "total_bound": report.total_bound,
        "verified": verified,
    })
}

fn cmd_fill<F: CoeffField>(
    paths: &[PathBuf],
    slope_text: &str,
    verify: bool,
    svg_path: Option<&Path>,
    tag: CoeffTag,
) -> CliResult<Value> {
    let slope = FillingSlope::parse(slope_text)?;
    let mut relations: Vec<AnnihilatingRelation<F>> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for p in paths {
        let doc: RelationDoc = read_json(p)?;
        relations.push(doc_to_relation::<F>(&doc)?);
        names.push(file_stem(p));
    }
    let report = analyze_filling(&relations, slope)?;
    let verified = if verify && !report.excluded {
        verify_samples(&relations, &report)? > 0
    } else {
        false
    };
    if let Some(path) = svg_path {
        let items: Vec<(&NewtonPolygon, BandPair, Vec<SymmetricClass>)> = report
            .generators
            .iter()
            .enumerate()
            .filter_map(|(i, ga)| {
                ga.band
                    .as_ref()
                    .map(|bp| (relations[i].polygon(), *bp, ga.classes.clone()))
            })
            .collect();
        let markup = svg::band_diagrams(&items);
        fs::write(path, markup)
            .map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(fill_report_value(tag, &names, &report, verified))
}

/// Minimum of the per-slope total bound over non-excluded primitive
/// directions. The per-slope bound is `Σ (3·M_i + 2)` over nonzero
/// generators with `M_i` the maximum of `|q·a − p·b|` over the vertices
/// of polygon `i`; it grows linearly in the direction beyond the polygon
/// scale, so the search widens its box until the boundary shell is
/// strictly worse than the best interior value.
fn min_bound_search(
    polygons: &[&NewtonPolygon],
    excluded: &std::collections::BTreeSet<Slope>,
) -> (u64, Slope) {
    let maxcoord = polygons
        .iter()
        .flat_map(|p| p.vertices())
        .map(|v| v.p.abs().max(v.q.abs()))
        .max()
        .unwrap_or(1)
        .max(1);
    let total_at = |p: i64, q: i64| -> u64 {
        polygons
            .iter()
            .map(|poly| {
                let m = poly
                    .vertices()
                    .iter()
                    .map(|v| (q * v.p - p * v.q).abs())
                    .max()
                    .unwrap_or(0);
                3 * m as u64 + 2
            })
            .sum()
    };
    let mut limit = (2 * maxcoord + 2).max(8);
    loop {
        let mut best: Option<(u64, Slope)> = None;
        let mut shell_min: Option<u64> = None;
        for p in 0..=limit {
            let qs: Vec<i64> = if p == 0 {
                vec![1]
            } else {
                (-limit..=limit).collect()
            };
            for q in qs {
                if gcd(p, q) != 1 {
                    continue;
                }
                let slope = Slope::new(q, p);
                if excluded.contains(&slope) {
                    continue;
                }
                let total = total_at(p, q);
                if p.max(q.abs()) == limit {
                    shell_min = Some(shell_min.map_or(total, |s| s.min(total)));
                }
                if best.as_ref().map_or(true, |(b, _)| total < *b) {
                    best = Some((total, slope));
                }
            }
        }
        let (best_total, best_slope) = best.expect("some non-excluded direction exists");
        let shell_ok = shell_min.map_or(true, |s| s > best_total || s == best_total);
        if (shell_ok && shell_min.map_or(true, |s| s >= best_total)) || limit >= 512 {
            return (best_total, best_slope);
        }
        limit *= 2;
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn cmd_report<F: CoeffField>(
    doc: &PresentationDoc,
    verify: bool,
    tag: CoeffTag,
) -> CliResult<Value> {
    let pres = doc_to_presentation::<F>(doc)?;
    let cancel = CancelFlag::new();
    let mut entries: Vec<Value> = Vec::new();
    let mut computed: Vec<Option<(PeripheralPoly<F>, AnnihilatingRelation<F>)>> = Vec::new();
    for (idx, name) in pres.generators().iter().enumerate() {
        match compute_annihilator(&pres, idx, &cancel) {
            Err(AnnihilatorError::ZeroGenerator { name }) => {
                entries.push(json!({"name": name, "zero": true}));
                computed.push(None);
            }
            Err(e) => return Err(e.into()),
            Ok((q, rel)) => {
                let mut obj = serde_json::Map::new();
                obj.insert("name".into(), Value::String(name.clone()));
                obj.insert("zero".into(), Value::Bool(false));
                obj.insert(
                    "peripheral".into(),
                    serde_json::to_value(peripheral_to_records(&q)).unwrap(),
                );
                for (k, v) in relation_analysis_value(&rel) {
                    obj.insert(k.into(), v);
                }
                entries.push(Value::Object(obj));
                computed.push(Some((q, rel)));
            }
        }
    }
    let relations: Vec<&AnnihilatingRelation<F>> =
        computed.iter().flatten().map(|(_, r)| r).collect();
    let owned: Vec<AnnihilatingRelation<F>> = relations.iter().map(|r| (*r).clone()).collect();
    let excluded = excluded_slopes(&owned);
    let polygons: Vec<&NewtonPolygon> = owned.iter().map(|r| r.polygon()).collect();
    let (constant_bound, at_slope) = min_bound_search(&polygons, &excluded);

    let verified = if verify && !owned.is_empty() {
        let slope = FillingSlope::from_slope(at_slope);
        let report = analyze_filling(&owned, slope)?;
        verify_samples(&owned, &report)? > 0
    } else {
        false
    };

    // sanity: the reported constant is reproducible through the
    // per-slope analysis at its witness slope
    if !owned.is_empty() {
        let check = analyze_filling(&owned, FillingSlope::from_slope(at_slope))?;
        if check.total_bound != Some(constant_bound) {
            return Err(CliError::internal(format!(
                "bound search disagrees with the filling analysis at slope {at_slope}"
            )));
        }
    }

    Ok(json!({
        "bound": {
            "at_slope": at_slope.to_string(),
            "constant": constant_bound,
            "note": "minimum over non-excluded slopes; at slope q/p the bound is the \
                     sum over generators of 3*M+2 (implementation-derived) with M the \
                     maximum of |q*a - p*b| over the vertices (a, b) of that \
                     generator's polygon; zero generators contribute 0",
        },
        "coeff": tag.as_str(),
        "excluded_slopes": slopes_value(excluded.iter().copied()),
        "generators": entries,
        "localized": tag == CoeffTag::QAm2,
        "verified": verified,
    }))
}
