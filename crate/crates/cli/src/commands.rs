use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use pretzel_core::alexander::{alexander_from_conway, alexander_from_diagram, Poly};
use pretzel_core::conway::{conway_link, conway_polynomial, five_strand_a2, printed_five_strand_w3, SymmetricValues};
use pretzel_core::genus::{delta_gradings, genus};
use pretzel_core::jones::{
    bracket_jones, jones_closed, jones_derived, jones_twist_regions, JonesError,
};
use pretzel_core::laurent::{bigint_to_json, rational_to_json};
use pretzel_core::pcsc::{
    check_pcsc_with, niwu_slopes, pipeline_row, residual_search, sweep_with, CheckOptions,
    PcscError, SweepRow,
};
use pretzel_core::pretzel::{ParamError, ParityClass, PretzelParams};
use pretzel_core::LaurentPoly;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cache::{CacheIndex, CacheWriter};
use crate::report::ReportDocument;

pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const DOMAIN: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const UNSUPPORTED: u8 = 3;
    pub const RESIDUAL: u8 = 4;
    pub const IO: u8 = 5;
}

pub const MAX_SWEEP_ABS: i64 = 25;
pub const MAX_SWEEP_N: usize = 9;

pub const CSV_COLUMNS: [&str; 9] = [
    "params", "n", "class", "genus", "thickness", "a2", "w3", "verdict", "citation",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParamError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => exit::PARSE,
            CliError::Unsupported(_) => exit::UNSUPPORTED,
            CliError::Io(_) | CliError::Csv(_) => exit::IO,
            CliError::Domain(_) => exit::DOMAIN,
        }
    }
}

impl From<PcscError> for CliError {
    fn from(e: PcscError) -> Self {
        match e {
            PcscError::Unsupported(_) | PcscError::NotAKnot(_) => CliError::Unsupported(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

/// A finished command: the document and whether any residual verdict
/// turned up.
pub struct Outcome {
    pub doc: ReportDocument,
    pub residual: bool,
}

impl Outcome {
    fn ok(doc: ReportDocument) -> Self {
        Self {
            doc,
            residual: false,
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.residual {
            exit::RESIDUAL
        } else {
            exit::SUCCESS
        }
    }
}

struct Timer {
    enabled: bool,
    phases: Vec<(String, f64)>,
    start: Instant,
}

impl Timer {
    fn new(enabled: bool) -> Self {
        Self {
            enabled,
            phases: Vec::new(),
            start: Instant::now(),
        }
    }

    fn lap(&mut self, phase: &str) {
        let now = Instant::now();
        self.phases
            .push((phase.to_string(), (now - self.start).as_secs_f64()));
        self.start = now;
    }

    fn finish(self, doc: &mut ReportDocument) {
        if self.enabled {
            doc.timings.extend(self.phases);
        }
    }
}

fn parse_params(text: &str) -> Result<PretzelParams, CliError> {
    // Accept "-2,3,7" as well as "(-2,3,7)".
    let trimmed = text.trim();
    let p: PretzelParams = if trimmed.starts_with('(') {
        trimmed.parse()?
    } else {
        format!("({trimmed})").parse()?
    };
    if p.classify() == ParityClass::Unsupported {
        return Err(CliError::Unsupported(format!(
            "{p} has two or more even parameters; not supported"
        )));
    }
    Ok(p)
}

/// Coefficients lowest degree first.
fn alexander_json(a: &Poly) -> Value {
    Value::Array(a.coeffs().iter().map(bigint_to_json).collect())
}

fn jones_json(v: &LaurentPoly) -> Value {
    json!({ "s_terms": v, "t": v.display_t() })
}

pub fn cmd_invariants(text: &str, opts: &CheckOptions, timings: bool) -> Result<Outcome, CliError> {
    let mut timer = Timer::new(timings);
    let p = parse_params(text)?;
    let class = p.classify();
    let trace = p.normalize();
    let mut r = Map::new();
    r.insert("params".into(), json!(p));
    r.insert("class".into(), json!(class));
    r.insert("case_tag".into(), json!(class.case_tag()));
    r.insert("components".into(), json!(class.components()));
    r.insert("crossing_bound".into(), json!(p.crossing_bound()));
    r.insert("normalized".into(), json!(trace));
    let mut provenance = Vec::new();

    if !class.is_knot() {
        let c = conway_link(&p).map_err(domain)?;
        r.insert("a1".into(), bigint_to_json(&c.coeff(1)));
        r.insert("conway".into(), json!(c));
        timer.lap("conway");
        let mut doc = ReportDocument::new("invariants", json!({ "params": text }), Value::Object(r));
        timer.finish(&mut doc);
        return Ok(Outcome::ok(doc));
    }

    // Jones polynomial by every applicable route.
    let mut methods = Map::new();
    let closed = match jones_closed(&p) {
        Ok(v) => Some(v),
        Err(JonesError::NotAllOdd) => None,
        Err(e) => return Err(domain(e)),
    };
    let state_sum = match bracket_jones(&p, opts.bracket_cap) {
        Ok(v) => Some(v),
        Err(JonesError::CapExceeded { .. }) => None,
        Err(e) => return Err(domain(e)),
    };
    let twist = jones_twist_regions(&p).map_err(domain)?;
    timer.lap("jones");
    for (name, v) in [("closed_form", &closed), ("state_sum", &state_sum)] {
        methods.insert(name.into(), v.as_ref().map(jones_json).unwrap_or(Value::Null));
    }
    methods.insert("twist_regions".into(), jones_json(&twist));
    let agree = [&closed, &state_sum]
        .iter()
        .all(|v| v.as_ref().is_none_or(|v| *v == twist));
    let d = jones_derived(&twist).map_err(domain)?;
    r.insert(
        "jones".into(),
        json!({
            "methods": methods,
            "methods_agree": agree,
            "state_sum_cap": opts.bracket_cap,
            "vpp1": bigint_to_json(&d.vpp1),
            "vppp1": bigint_to_json(&d.vppp1),
        }),
    );

    let conway = conway_polynomial(&p).map_err(domain)?;
    timer.lap("conway");
    let sym = (p.len() == 5 && class == ParityClass::AllOddOddN)
        .then(|| SymmetricValues::from_params(&p))
        .transpose()
        .map_err(domain)?;
    let mut a2 = Map::new();
    a2.insert("jones".into(), bigint_to_json(&d.a2));
    a2.insert("conway".into(), bigint_to_json(&conway.coeff(2)));
    if let Some(k) = &sym {
        a2.insert("five_strand_closed_form".into(), json!(five_strand_a2(k)));
    }
    r.insert("a2".into(), Value::Object(a2));
    let from_diagram = alexander_from_diagram(&p).map_err(domain)?;
    let from_conway = alexander_from_conway(&conway);
    r.insert(
        "alexander".into(),
        json!({
            "fox_calculus": alexander_json(&from_diagram),
            "from_conway": alexander_json(&from_conway),
            "methods_agree": from_diagram == from_conway,
        }),
    );
    r.insert("conway".into(), json!(conway));
    let mut w3 = Map::new();
    w3.insert("jones".into(), rational_to_json(&d.w3));
    if let Some(k) = &sym {
        let printed = printed_five_strand_w3(k);
        w3.insert("printed_formula".into(), rational_to_json(&printed));
        w3.insert("printed_formula_agrees".into(), json!(printed == d.w3));
    }
    r.insert("w3".into(), Value::Object(w3));

    match trace.pretzel() {
        Some(q) => {
            let g = genus(q).map_err(domain)?;
            provenance.push(
                serde_json::to_value(g.source)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
            );
            // Certified lower bound where the formula branch is not trusted.
            if g.uncorroborated(q.len()) {
                let c = conway_polynomial(q).map_err(domain)?;
                r.insert("genus_lower_bound".into(), json!(c.degree().unwrap_or(0) / 2));
            }
            r.insert("genus".into(), json!(g));
            r.insert("delta_gradings".into(), json!(delta_gradings(q).map_err(domain)?));
        }
        None => {
            r.insert("genus".into(), Value::Null);
            r.insert("delta_gradings".into(), Value::Null);
        }
    }
    timer.lap("genus");
    let mut doc = ReportDocument::new("invariants", json!({ "params": text }), Value::Object(r));
    doc.provenance = provenance;
    timer.finish(&mut doc);
    Ok(Outcome::ok(doc))
}

pub fn cmd_check(text: &str, opts: &CheckOptions, timings: bool) -> Result<Outcome, CliError> {
    let mut timer = Timer::new(timings);
    let p = parse_params(text)?;
    let report = check_pcsc_with(&p, opts)?;
    timer.lap("check");
    let residual = report.verdict.is_residual();
    let mut doc = ReportDocument::new(
        "check",
        json!({ "params": text, "bracket_cap": opts.bracket_cap, "census": opts.use_census }),
        json!(report),
    );
    doc.provenance = report.citations.iter().map(|c| c.tag().to_string()).collect();
    timer.finish(&mut doc);
    Ok(Outcome { doc, residual })
}

pub struct SweepArgs {
    pub max_abs: i64,
    pub max_n: usize,
    pub csv: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub only_residual_locus: bool,
    pub timings: bool,
}

pub fn cmd_sweep(args: &SweepArgs, opts: &CheckOptions) -> Result<Outcome, CliError> {
    if !(1..=MAX_SWEEP_ABS).contains(&args.max_abs) {
        return Err(CliError::Usage(format!(
            "--max-abs must be between 1 and {MAX_SWEEP_ABS}"
        )));
    }
    if !(1..=MAX_SWEEP_N).contains(&args.max_n) {
        return Err(CliError::Usage(format!(
            "--max-n must be between 1 and {MAX_SWEEP_N}"
        )));
    }
    let mut timer = Timer::new(args.timings);
    let inputs = json!({
        "max_abs": args.max_abs,
        "max_n": args.max_n,
        "only_residual_locus": args.only_residual_locus,
        "bracket_cap": opts.bracket_cap,
        "census": opts.use_census,
    });

    if args.only_residual_locus {
        if args.max_abs < 5 {
            return Err(CliError::Usage(
                "--only-residual-locus needs --max-abs of at least 5".into(),
            ));
        }
        let report = residual_search(args.max_abs, opts.bracket_cap)?;
        timer.lap("residual_search");
        let residual = !report.solutions.is_empty();
        let mut doc = ReportDocument::new("sweep", inputs, json!(report));
        doc.provenance = ["boyer_lines", "ichihara_wu"].map(String::from).to_vec();
        timer.finish(&mut doc);
        return Ok(Outcome { doc, residual });
    }

    let index = match &args.cache {
        Some(path) => Some(CacheIndex::load(path, opts)?),
        None => None,
    };
    let mut writer = match &args.cache {
        Some(path) => Some(CacheWriter::open(path, opts)?),
        None => None,
    };
    let mut csv = match &args.csv {
        Some(path) => {
            // Header written by hand so an empty sweep still has one.
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(File::create(path)?);
            w.write_record(CSV_COLUMNS)?;
            Some(w)
        }
        None => None,
    };
    let mut cached_hits = 0u64;
    let mut io_error: Option<CliError> = None;
    let eval = |p: &PretzelParams| -> Result<SweepRow, String> {
        if let Some(row) = index.as_ref().and_then(|i| i.get(&p.to_string())) {
            return Ok(row.clone());
        }
        pipeline_row(p, opts)
    };
    let summary = sweep_with(args.max_abs, args.max_n, &eval, &mut |row| {
        if io_error.is_some() {
            return;
        }
        let res = (|| -> Result<(), CliError> {
            match (&index, writer.as_mut()) {
                (Some(i), _) if i.contains(&row.params) => cached_hits += 1,
                (_, Some(w)) => w.append(row)?,
                _ => {}
            }
            if let Some(w) = csv.as_mut() {
                w.serialize(row)?;
            }
            Ok(())
        })();
        if let Err(e) = res {
            io_error = Some(e);
        }
    });
    if let Some(e) = io_error {
        return Err(e);
    }
    if let Some(w) = writer.as_mut() {
        w.flush()?;
    }
    if let Some(mut w) = csv {
        w.flush()?;
    }
    timer.lap("sweep");

    let mut results = json!(summary);
    if args.cache.is_some() {
        results["cache"] = json!({
            "hits": cached_hits,
            "appended": writer.as_ref().map_or(0, |w| w.appended()),
        });
    }
    let residual = summary.residual_count > 0;
    let mut doc = ReportDocument::new("sweep", inputs, results);
    let mut tags: Vec<String> = summary
        .counts
        .iter()
        .filter_map(|c| c.verdict.split_once(':').map(|(_, t)| t.to_string()))
        .collect();
    tags.sort();
    tags.dedup();
    doc.provenance = tags;
    timer.finish(&mut doc);
    Ok(Outcome { doc, residual })
}

pub fn cmd_slopes(p: u64, cap: u64) -> Result<Outcome, CliError> {
    if p == 0 {
        return Err(CliError::Usage("p must be at least 1".into()));
    }
    let s = niwu_slopes(p, cap);
    let mut doc = ReportDocument::new("slopes", json!({ "p": p, "cap": cap }), json!(s));
    doc.provenance.push("ni_wu".into());
    Ok(Outcome::ok(doc))
}

/// Writes `doc` to `path`, or to stdout when `path` is `None`.
pub fn emit(doc: &ReportDocument, path: Option<&PathBuf>) -> Result<(), CliError> {
    let text = doc.to_json();
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
