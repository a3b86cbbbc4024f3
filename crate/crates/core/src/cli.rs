//! Command-line front end. Exit codes: 0 success, 1 computational limit
//! or uncertified result, 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::delta::LiftSpec;
use crate::error::{Error, Result};
use crate::groebner::DEFAULT_DEGREE_CEILING;
use crate::multiheight::{
    certify_preperiodic, element_heights, ideal_heights, multiheight_colon, naive_multiheight_for, qfs_height,
    EngineConfig, HeightReport, HeightSeq, IdealChain, NaiveMode, QfsHeight, TranscriptEntry,
};
use crate::rdp::{
    alpha_e_sequence, d_equation, d_zero_values, dseries_closed_form, sigma_scan, table_rows, DFamily, GTag,
    ScanRequest, Variant,
};
use crate::threshold::{height_seq_to_ppt, PptRational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_LIMIT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Column order of `scan --format tsv`.
pub const SCAN_COLUMNS: [&str; 11] =
    ["p", "family", "n", "r", "G", "preperiod", "period", "ppt", "certified", "pipeline", "runtime_ms"];

/// Column order of the single-lift TSV output.
pub const LIFT_COLUMNS: [&str; 8] = ["p", "f", "G", "preperiod", "period", "ppt", "certified", "pipeline"];

#[derive(Debug, Parser)]
#[command(name = "qfsplit", version, about = "Quasi-F-split multi-heights and perfectoid pure thresholds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Largest first height searched.
    #[arg(long = "h-cap", global = true, default_value_t = 12)]
    pub h_cap: u32,
    /// Largest number of recursion steps.
    #[arg(long = "r-max", global = true, default_value_t = 64)]
    pub r_max: usize,
    /// Total-degree ceiling for Gröbner computations.
    #[arg(long = "deg-ceiling", global = true, default_value_t = DEFAULT_DEGREE_CEILING)]
    pub deg_ceiling: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for grid commands (0 = automatic).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Args, Clone)]
pub struct Lift {
    #[arg(long)]
    pub p: u64,
    /// Equation `f` with integer coefficients.
    #[arg(long)]
    pub f: String,
    /// Perturbation `G` in `f + pG`.
    #[arg(long = "G", default_value = "0")]
    pub g: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PipelineArg {
    Colon,
    Ideal,
    Element,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    NoXz,
    Xz,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quasi-F-split height (the first entry of the multi-height).
    Height(Lift),
    /// Multi-height with its certificate.
    Multiheight {
        #[command(flatten)]
        lift: Lift,
        #[arg(long, value_enum, default_value_t = PipelineArg::Colon)]
        pipeline: PipelineArg,
        /// Prefix length for the element and ideal pipelines.
        #[arg(long, default_value_t = 8)]
        steps: usize,
    },
    /// Perfectoid pure threshold as an exact rational.
    Ppt(Lift),
    /// Naive multi-height of the special fiber.
    Naive {
        #[command(flatten)]
        lift: Lift,
        #[arg(long, default_value_t = 5)]
        length: usize,
        /// Degree bound for kernel elements; exact syzygies when omitted.
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Checks a candidate multi-height with the repetition criterion.
    Certify {
        #[command(flatten)]
        lift: Lift,
        /// Candidate such as `4,(1)`.
        #[arg(long)]
        candidate: String,
        /// Number of period repetitions.
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
    /// Recomputes the known thresholds of the non-taut catalog.
    Table {
        #[arg(long)]
        p: u64,
        /// At p = 2, also the rows D_{2n}^0, D_{2n+1}^0 for 2 ≤ n ≤ this.
        #[arg(long = "d-max")]
        d_max: Option<u32>,
    },
    /// Type-D lifts over a range of r, with closed forms where available.
    Dseries {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "D2n")]
        family: String,
        /// A single value or a range `a-b`; comma lists work too.
        #[arg(long)]
        r: String,
        #[arg(long = "G", default_value = "0")]
        g: String,
    },
    /// The (α_i, e_i) recursion.
    Alpharec {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::NoXz)]
        variant: VariantArg,
    },
    /// Threshold values over a grid of type-D lifts (p = 2).
    Scan {
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long = "n-min", default_value_t = 2)]
        n_min: u32,
        /// Comma list of D2n, D2n+1.
        #[arg(long, default_value = "D2n,D2n+1")]
        families: String,
        /// Semicolon list of perturbations.
        #[arg(long = "G", default_value = "0;x*z")]
        g: String,
        #[arg(long)]
        r: Option<String>,
    },
}

/// A failure tagged with the stage that produced it.
struct Failure {
    stage: &'static str,
    err: Error,
}

trait Stage<T> {
    fn at(self, stage: &'static str) -> std::result::Result<T, Failure>;
}

impl<T> Stage<T> for Result<T> {
    fn at(self, stage: &'static str) -> std::result::Result<T, Failure> {
        self.map_err(|err| Failure { stage, err })
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure { stage, err: e }) => {
            let _ = writeln!(err, "error [{stage}]: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_LIMIT
            }
        }
    }
}

fn config(c: &Common) -> EngineConfig {
    EngineConfig { h_cap: c.h_cap, r_max: c.r_max, degree_ceiling: c.deg_ceiling, ..EngineConfig::default() }
}

fn io(e: std::io::Error) -> Failure {
    Failure { stage: "output", err: Error::Internal(e.to_string()) }
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    writeln!(out, "{text}").map_err(io)
}

fn parse_lift(l: &Lift) -> std::result::Result<LiftSpec, Failure> {
    LiftSpec::parse(l.p, &l.f, &l.g).at("parse")
}

fn join(v: &[u32]) -> String {
    v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(",")
}

fn input_json(l: &Lift) -> Value {
    json!({"p": l.p, "f": l.f, "G": l.g})
}

fn lift_json(l: &Lift, rep: &HeightReport, ppt: &PptRational) -> Value {
    json!({
        "input": input_json(l),
        "multiheight": rep.to_json(),
        "ppt": ppt.to_string(),
        "certified": rep.seq.certified(),
    })
}

fn tsv_row(fields: &[String]) -> String {
    fields.join("\t")
}

fn certified_code(certified: bool) -> i32 {
    if certified {
        EXIT_OK
    } else {
        EXIT_LIMIT
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let cfg = config(&cli.common);
    let fmt = cli.common.format;
    match &cli.command {
        Command::Height(l) => cmd_height(l, &cfg, fmt, out),
        Command::Multiheight { lift, pipeline, steps } => cmd_multiheight(lift, *pipeline, *steps, &cfg, fmt, out),
        Command::Ppt(l) => cmd_ppt(l, &cfg, fmt, out),
        Command::Naive { lift, length, bound } => cmd_naive(lift, *length, *bound, &cfg, fmt, out),
        Command::Certify { lift, candidate, t } => cmd_certify(lift, candidate, *t, &cfg, fmt, out),
        Command::Table { p, d_max } => cmd_table(*p, *d_max, &cli.common, fmt, out),
        Command::Dseries { n, family, r, g } => cmd_dseries(*n, family, r, g, &cli.common, fmt, out),
        Command::Alpharec { n, r, variant } => cmd_alpharec(*n, *r, *variant, fmt, out),
        Command::Scan { n_max, n_min, families, g, r } => {
            cmd_scan(*n_max, *n_min, families, g, r.as_deref(), &cli.common, fmt, out)
        }
    }
}

fn cmd_height(l: &Lift, cfg: &EngineConfig, fmt: Format, out: &mut dyn Write) -> Outcome {
    let spec = parse_lift(l)?;
    let h = qfs_height(&spec, cfg.h_cap).at("height")?;
    let shown = match h {
        QfsHeight::Height(h) => h.to_string(),
        QfsHeight::NotQuasiFSplitUpTo(c) => format!("not quasi-F-split up to {c}"),
    };
    match fmt {
        Format::Text => emit(out, &shown)?,
        Format::Json => emit(out, &json!({"input": input_json(l), "height": h.height()}).to_string())?,
        Format::Tsv => {
            emit(out, "p\tf\tG\theight")?;
            emit(out, &tsv_row(&[l.p.to_string(), l.f.clone(), l.g.clone(), shown]))?;
        }
    }
    Ok(certified_code(h.height().is_some()))
}

fn single_lift(l: &Lift, cfg: &EngineConfig) -> std::result::Result<(HeightReport, PptRational), Failure> {
    let spec = parse_lift(l)?;
    let rep = multiheight_colon(&spec, cfg).at("multiheight")?;
    let ppt = height_seq_to_ppt(&rep.seq, l.p);
    Ok((rep, ppt))
}

fn emit_lift(l: &Lift, rep: &HeightReport, ppt: &PptRational, text: String, fmt: Format, out: &mut dyn Write) -> Outcome {
    match fmt {
        Format::Text => emit(out, &text)?,
        Format::Json => emit(out, &lift_json(l, rep, ppt).to_string())?,
        Format::Tsv => {
            emit(out, &LIFT_COLUMNS.join("\t"))?;
            emit(
                out,
                &tsv_row(&[
                    l.p.to_string(),
                    l.f.clone(),
                    l.g.clone(),
                    join(rep.seq.preperiod()),
                    join(rep.seq.period()),
                    ppt.to_string(),
                    rep.seq.certified().to_string(),
                    rep.pipeline.name().to_string(),
                ]),
            )?;
        }
    }
    Ok(certified_code(rep.seq.certified()))
}

fn cmd_multiheight(l: &Lift, pipeline: PipelineArg, steps: usize, cfg: &EngineConfig, fmt: Format, out: &mut dyn Write) -> Outcome {
    if pipeline != PipelineArg::Colon {
        let spec = parse_lift(l)?;
        let (name, prefix) = match pipeline {
            PipelineArg::Element => ("element", element_heights(&spec, steps, cfg).at("element")?),
            _ => ("ideal", ideal_heights(&spec, steps, cfg).at("ideal")?),
        };
        match fmt {
            Format::Text => emit(out, &join(&prefix))?,
            Format::Json => emit(out, &json!({"input": input_json(l), "pipeline": name, "prefix": prefix}).to_string())?,
            Format::Tsv => {
                emit(out, "p\tf\tG\tpipeline\tprefix")?;
                emit(out, &tsv_row(&[l.p.to_string(), l.f.clone(), l.g.clone(), name.into(), join(&prefix)]))?;
            }
        }
        return Ok(EXIT_OK);
    }
    let (rep, ppt) = single_lift(l, cfg)?;
    let status = if rep.seq.certified() { rep.certificate.name() } else { "uncertified" };
    let text = format!("{} [{}]", rep.seq, status);
    emit_lift(l, &rep, &ppt, text, fmt, out)
}

fn cmd_ppt(l: &Lift, cfg: &EngineConfig, fmt: Format, out: &mut dyn Write) -> Outcome {
    let (rep, ppt) = single_lift(l, cfg)?;
    let text = if rep.seq.certified() { ppt.to_string() } else { format!("{ppt} (uncertified)") };
    emit_lift(l, &rep, &ppt, text, fmt, out)
}

fn cmd_naive(l: &Lift, length: usize, bound: Option<u32>, cfg: &EngineConfig, fmt: Format, out: &mut dyn Write) -> Outcome {
    let spec = parse_lift(l)?;
    let mode = bound.map_or(NaiveMode::Exact, NaiveMode::Bounded);
    let rep = naive_multiheight_for(&spec, length, cfg.h_cap, mode, cfg.degree_ceiling).at("naive")?;
    let mode_name = match mode {
        NaiveMode::Exact => "exact".to_string(),
        NaiveMode::Bounded(d) => format!("bounded({d})"),
    };
    match fmt {
        Format::Text => emit(out, &join(&rep.prefix))?,
        Format::Json => emit(
            out,
            &json!({"input": input_json(l), "naive": rep.prefix, "mode": mode_name}).to_string(),
        )?,
        Format::Tsv => {
            emit(out, "p\tf\tmode\tnaive")?;
            emit(out, &tsv_row(&[l.p.to_string(), l.f.clone(), mode_name, join(&rep.prefix)]))?;
        }
    }
    Ok(EXIT_OK)
}

fn transcript_json(e: &TranscriptEntry) -> Value {
    match e {
        TranscriptEntry::Minimal { seq, holds } => json!({"check": "minimal", "seq": seq, "holds": holds}),
        TranscriptEntry::Equal { left, right, holds } => {
            json!({"check": "equal", "left": left, "right": right, "holds": holds})
        }
    }
}

fn cmd_certify(l: &Lift, candidate: &str, t: usize, cfg: &EngineConfig, fmt: Format, out: &mut dyn Write) -> Outcome {
    let spec = parse_lift(l)?;
    let cand: HeightSeq = candidate.parse().at("parse")?;
    let mut chain = IdealChain::new(&spec, cfg.degree_ceiling);
    let cert = certify_preperiodic(&mut chain, &cand, t).at("certify")?;
    match fmt {
        Format::Text => {
            for e in &cert.transcript {
                let line = match e {
                    TranscriptEntry::Minimal { seq, holds } => format!("minimal ({}) {}", join(seq), holds),
                    TranscriptEntry::Equal { left, right, holds } => {
                        format!("equal ({}) = ({}) {}", join(left), join(right), holds)
                    }
                };
                emit(out, &line)?;
            }
            emit(out, if cert.holds { "certified" } else { "not certified" })?;
        }
        Format::Json => {
            let tr: Vec<Value> = cert.transcript.iter().map(transcript_json).collect();
            let v = json!({"input": input_json(l), "candidate": cand.to_string(), "t": t, "holds": cert.holds, "transcript": tr});
            emit(out, &v.to_string())?;
        }
        Format::Tsv => {
            emit(out, "check\tleft\tright\tholds")?;
            for e in &cert.transcript {
                let row = match e {
                    TranscriptEntry::Minimal { seq, holds } => ["minimal".into(), join(seq), String::new(), holds.to_string()],
                    TranscriptEntry::Equal { left, right, holds } => {
                        ["equal".into(), join(left), join(right), holds.to_string()]
                    }
                };
                emit(out, &tsv_row(&row))?;
            }
        }
    }
    Ok(certified_code(cert.holds))
}

fn pool(jobs: usize) -> std::result::Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure { stage: "threads", err: Error::Internal(e.to_string()) })
}

struct TableCell {
    label: String,
    lift: Lift,
    expected: PptRational,
}

fn cmd_table(p: u64, d_max: Option<u32>, common: &Common, fmt: Format, out: &mut dyn Write) -> Outcome {
    let mut cells = Vec::new();
    for row in table_rows(p) {
        for (value, g) in row.expected() {
            let lift = Lift { p, f: row.equation.to_string(), g: g.to_string() };
            cells.push(TableCell { label: row.kind.to_string(), lift, expected: value });
        }
    }
    if let (2, Some(d_max)) = (p, d_max) {
        for family in [DFamily::Even, DFamily::Odd] {
            for n in 2..=d_max {
                for (value, g) in d_zero_values(n) {
                    let lift = Lift { p, f: d_equation(family, n, 0), g };
                    cells.push(TableCell { label: format!("D_{}^0", family.index(n)), lift, expected: value });
                }
            }
        }
    }
    if cells.is_empty() {
        return Err(Failure { stage: "table", err: Error::UnknownType(format!("no catalog rows at p={p}")) });
    }
    let cfg = config(common);
    let results: Vec<_> =
        pool(common.jobs)?.install(|| cells.par_iter().map(|c| single_lift(&c.lift, &cfg)).collect());
    let mut all_ok = true;
    let mut json_rows = Vec::new();
    if fmt == Format::Tsv {
        emit(out, "p\ttype\tf\tG\texpected\tppt\tcertified\tmatch")?;
    }
    for (cell, res) in cells.iter().zip(results) {
        let (rep, ppt) = res?;
        let ok = rep.seq.certified() && ppt == cell.expected;
        all_ok &= ok;
        let l = &cell.lift;
        match fmt {
            Format::Text => emit(
                out,
                &format!(
                    "{:<8} {:<26} G={:<6} {:<12} {:<8} expected {:<8} {}",
                    cell.label,
                    l.f,
                    l.g,
                    rep.seq.to_string(),
                    ppt.to_string(),
                    cell.expected.to_string(),
                    if ok { "ok" } else { "MISMATCH" }
                ),
            )?,
            Format::Json => json_rows.push(json!({
                "type": cell.label,
                "input": input_json(l),
                "multiheight": rep.to_json(),
                "ppt": ppt.to_string(),
                "expected": cell.expected.to_string(),
                "certified": rep.seq.certified(),
                "match": ok,
            })),
            Format::Tsv => emit(
                out,
                &tsv_row(&[
                    p.to_string(),
                    cell.label.clone(),
                    l.f.clone(),
                    l.g.clone(),
                    cell.expected.to_string(),
                    ppt.to_string(),
                    rep.seq.certified().to_string(),
                    ok.to_string(),
                ]),
            )?,
        }
    }
    if fmt == Format::Json {
        emit(out, &json!({"p": p, "rows": json_rows, "all_match": all_ok}).to_string())?;
    }
    Ok(certified_code(all_ok))
}

/// `"3"`, `"1-15"`, `"1,4,7"` or a mix such as `"1-3,8"`.
pub fn parse_range(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::InvalidInput(format!("bad range '{s}'"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: u32 = a.trim().parse().map_err(|_| bad())?;
                let b: u32 = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn g_tag(g: &str) -> Option<GTag> {
    match g.replace(' ', "").as_str() {
        "0" => Some(GTag::Zero),
        "x*z" | "xz" | "z*x" => Some(GTag::Xz),
        _ => None,
    }
}

fn cmd_dseries(n: u32, family: &str, r: &str, g: &str, common: &Common, fmt: Format, out: &mut dyn Write) -> Outcome {
    let family: DFamily = family.parse().at("parse")?;
    let rs = parse_range(r).at("parse")?;
    if let Some(&bad) = rs.iter().find(|&&r| r >= n) {
        return Err(Failure { stage: "parse", err: Error::InvalidInput(format!("r={bad} must be below n={n}")) });
    }
    let cfg = config(common);
    let lifts: Vec<Lift> = rs.iter().map(|&r| Lift { p: 2, f: d_equation(family, n, r), g: g.to_string() }).collect();
    let results: Vec<_> =
        pool(common.jobs)?.install(|| lifts.par_iter().map(|l| single_lift(l, &cfg)).collect());
    let tag = g_tag(g);
    let mut values = Vec::new();
    let mut rows = Vec::new();
    let mut all_ok = true;
    if fmt == Format::Tsv {
        emit(out, "n\tr\tfamily\tG\tpreperiod\tperiod\tppt\tcertified\tclosed_form")?;
    }
    for ((&r, l), res) in rs.iter().zip(&lifts).zip(results) {
        let (rep, ppt) = res?;
        let closed = match (tag, r) {
            (Some(t), 1..) => dseries_closed_form(n, r, t).at("closed-form")?,
            _ => None,
        };
        let closed_text = closed.as_ref().map_or("-".to_string(), |c| c.ppt.to_string());
        all_ok &= rep.seq.certified() && closed.as_ref().is_none_or(|c| c.ppt == ppt);
        values.push(ppt.to_string());
        match fmt {
            Format::Text => emit(
                out,
                &format!(
                    "r={r:<3} {:<10} {:<16} {:<10} closed form {}",
                    format!("D_{}^{r}", family.index(n)),
                    rep.seq.to_string(),
                    ppt.to_string(),
                    closed_text
                ),
            )?,
            Format::Json => rows.push(json!({
                "r": r,
                "input": input_json(l),
                "multiheight": rep.to_json(),
                "ppt": ppt.to_string(),
                "certified": rep.seq.certified(),
                "closed_form": closed.as_ref().map(|c| c.ppt.to_string()),
            })),
            Format::Tsv => emit(
                out,
                &tsv_row(&[
                    n.to_string(),
                    r.to_string(),
                    family.name().into(),
                    g.into(),
                    join(rep.seq.preperiod()),
                    join(rep.seq.period()),
                    ppt.to_string(),
                    rep.seq.certified().to_string(),
                    closed_text,
                ]),
            )?,
        }
    }
    match fmt {
        Format::Text => emit(out, &format!("values: {}", values.join(", ")))?,
        Format::Json => emit(out, &json!({"n": n, "family": family.name(), "G": g, "rows": rows, "values": values}).to_string())?,
        Format::Tsv => {}
    }
    Ok(certified_code(all_ok))
}

fn cmd_alpharec(n: u32, r: u32, variant: VariantArg, fmt: Format, out: &mut dyn Write) -> Outcome {
    let (v, tag) = match variant {
        VariantArg::NoXz => (Variant::NoXz, GTag::Zero),
        VariantArg::Xz => (Variant::Xz, GTag::Xz),
    };
    let seq = alpha_e_sequence(n, r, v, 0).at("alpharec")?;
    let closed = if r >= 1 { dseries_closed_form(n, r, tag).at("closed-form")? } else { None };
    let alphas: Vec<u64> = seq.alphas[..seq.cycle.1].to_vec();
    match fmt {
        Format::Text => {
            emit(out, &format!("alpha: {}", alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")))?;
            emit(out, &format!("e: {}", join(&seq.es)))?;
            emit(out, &format!("cycle: ({},{})", seq.cycle.0, seq.cycle.1))?;
            match &closed {
                Some(c) => emit(out, &format!("closed form (G={}): {} ppt {}", tag.poly(), c.seq, c.ppt))?,
                None => emit(out, &format!("closed form (G={}): none", tag.poly()))?,
            }
        }
        Format::Json => emit(
            out,
            &json!({
                "n": n, "r": r, "variant": v.name(),
                "alpha": alphas, "e": seq.es, "cycle": [seq.cycle.0, seq.cycle.1],
                "closed_form": closed.as_ref().map(|c| json!({"multiheight": c.seq.to_string(), "ppt": c.ppt.to_string()})),
            })
            .to_string(),
        )?,
        Format::Tsv => {
            emit(out, "i\talpha\te")?;
            for (i, e) in seq.es.iter().enumerate() {
                emit(out, &format!("{i}\t{}\t{e}", alphas[i]))?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    n_max: u32,
    n_min: u32,
    families: &str,
    g: &str,
    r: Option<&str>,
    common: &Common,
    fmt: Format,
    out: &mut dyn Write,
) -> Outcome {
    let families: Vec<DFamily> =
        families.split(',').map(|f| f.trim().parse()).collect::<Result<_>>().at("parse")?;
    let g_set: Vec<String> = g.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    for g in &g_set {
        crate::ring::parse_poly(g, 2, 2).at("parse")?;
    }
    let mut req = ScanRequest::new(families, n_max, g_set);
    req.n_min = n_min;
    req.r_values = r.map(parse_range).transpose().at("parse")?;
    req.cfg = config(common);
    req.jobs = common.jobs;
    let started = Instant::now();
    let rep = sigma_scan(&req).at("scan")?;
    let cell_fields = |c: &crate::rdp::ScanCell| -> Vec<String> {
        let (pre, per, ppt) = match &c.outcome {
            Ok((s, q)) => (join(s.preperiod()), join(s.period()), q.to_string()),
            Err(e) => (String::new(), String::new(), format!("error: {e}")),
        };
        vec![
            "2".into(),
            c.family.name().into(),
            c.n.to_string(),
            c.r.to_string(),
            c.g.clone(),
            pre,
            per,
            ppt,
            c.certified().to_string(),
            c.pipeline.into(),
            c.runtime_ms.to_string(),
        ]
    };
    match fmt {
        Format::Tsv => {
            emit(out, &SCAN_COLUMNS.join("\t"))?;
            for c in &rep.cells {
                emit(out, &tsv_row(&cell_fields(c)))?;
            }
        }
        Format::Json => {
            let cells: Vec<Value> = rep
                .cells
                .iter()
                .map(|c| {
                    let f = cell_fields(c);
                    let mut obj = serde_json::Map::new();
                    for (k, v) in SCAN_COLUMNS.iter().zip(f) {
                        obj.insert((*k).to_string(), Value::String(v));
                    }
                    Value::Object(obj)
                })
                .collect();
            let values: Vec<Value> = rep
                .gaps_above()
                .iter()
                .zip(&rep.values)
                .map(|((q, gap), v)| {
                    json!({"ppt": q.to_string(), "witness": v.witness, "count": v.count,
                           "gap_above": gap.as_ref().map(|g| g.to_string())})
                })
                .collect();
            let below: Vec<Value> = (2..=8).map(|m| json!({"m": m, "count": rep.count_below(m)})).collect();
            emit(out, &json!({"cells": cells, "values": values, "count_below_1_over_m": below}).to_string())?;
        }
        Format::Text => {
            for ((q, gap), v) in rep.gaps_above().iter().zip(&rep.values) {
                let gap = gap.as_ref().map_or("-".to_string(), |g| g.to_string());
                emit(out, &format!("{:<12} gap above {:<12} x{:<4} e.g. {}", q.to_string(), gap, v.count, v.witness))?;
            }
            emit(
                out,
                &format!(
                    "{} cells, {} distinct values, {} not certified, {} ms",
                    rep.cells.len(),
                    rep.values.len(),
                    rep.failures().len(),
                    started.elapsed().as_millis()
                ),
            )?;
        }
    }
    Ok(certified_code(rep.failures().is_empty()))
}
