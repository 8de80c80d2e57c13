use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use modkit::datum::{
    emit_zmodular, reduce_slightly_degenerate, verify_raw, Classification, DatumError, FusionTensor,
    RawDatum, RawKind, SlightlyDegenerateData, VerifyMode, VerifyOptions, ZModularOutput,
};
use modkit::families::{taft_epsilon_action, taft_fusion, FamilySpec, TaftLabel};
use modkit::json::{report_from_json, report_to_json, DatumDocument};

/// Construct, verify and classify N- and Z-modular data.
#[derive(Parser)]
#[command(name = "modkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the raw datum of a family, e.g. `taft:d=5`, `pointed:n=7,a=1,k0=2`, `counterexample:sl2q16`.
    Generate {
        spec: String,
        /// Output file; stdout when omitted.
        out: Option<PathBuf>,
    },
    /// Run every applicable check on a datum file and print the report.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Also write the normalized (Z-)modular datum to this file.
        #[arg(long, value_name = "PATH")]
        emit_zmodular: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Human-readable report instead of JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Decompose `x (x) y` from the Verlinde formula or the Taft fusion rule.
    Fusion {
        /// Family spec or datum file.
        source: String,
        x: String,
        y: String,
        #[arg(long, value_enum, default_value_t = Oracle::Verlinde)]
        oracle: Oracle,
        /// Run both paths and fail on a mismatch.
        #[arg(long)]
        compare: bool,
    },
    /// Restrict a slightly degenerate datum to its representatives.
    Reduce {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the normalized datum instead of the bold raw one.
        #[arg(long)]
        normalized: bool,
    },
    /// Render a saved JSON report.
    Report {
        input: PathBuf,
        /// Print the JSON back instead of the table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Nondeg,
    Sldeg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Verlinde,
    Taft,
}

/// Exit code 2: the input could not be used at all.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { spec, out } => generate(&spec, out.as_deref()),
        Command::Verify { input, mode, emit_zmodular, out, pretty } => {
            verify(&input, mode, emit_zmodular.as_deref(), out.as_deref(), pretty)
        }
        Command::Fusion { source, x, y, oracle, compare } => fusion(&source, &x, &y, oracle, compare),
        Command::Reduce { input, out, normalized } => reduce(&input, out.as_deref(), normalized),
        Command::Report { input, json } => report(&input, json),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read_document(path: &Path) -> anyhow::Result<DatumDocument> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    DatumDocument::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_raw(path: &Path) -> anyhow::Result<RawDatum> {
    match read_document(path)? {
        DatumDocument::Raw(r) => Ok(r),
        DatumDocument::Normalized(_) => Err(usage(format!("{} holds a normalized datum, not a raw one", path.display()))),
    }
}

fn precision_bits() -> anyhow::Result<u32> {
    match std::env::var("MODKIT_PRECISION_BITS") {
        Err(_) => Ok(256),
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(b) if (16..=1 << 16).contains(&b) => Ok(b),
            _ => Err(usage(format!("MODKIT_PRECISION_BITS must be an integer between 16 and 65536, got {v:?}"))),
        },
    }
}

fn parse_spec(spec: &str) -> anyhow::Result<FamilySpec> {
    spec.parse().map_err(|e| usage(format!("{e}")))
}

fn generate(spec: &str, out: Option<&Path>) -> anyhow::Result<bool> {
    let raw = parse_spec(spec)?.generate().map_err(|e| usage(e.to_string()))?;
    write_output(out, &DatumDocument::from(raw).to_json())?;
    Ok(true)
}

fn verify(
    input: &Path,
    mode: Mode,
    emit: Option<&Path>,
    out: Option<&Path>,
    pretty: bool,
) -> anyhow::Result<bool> {
    let precision_bits = precision_bits()?;
    let doc = read_document(input)?;
    let mode = match mode {
        Mode::Auto => VerifyMode::Auto,
        Mode::Nondeg => VerifyMode::Nondeg,
        Mode::Sldeg => VerifyMode::Sldeg,
    };
    let (report, classification, normalized) = match doc {
        DatumDocument::Normalized(m) => {
            let r = modkit::datum::check_axioms(&m);
            let class = r
                .get("verlinde_classification")
                .and_then(|c| c.witness.get("class"))
                .and_then(|c| c.as_str())
                .unwrap_or("unclassified")
                .to_string();
            (r, class, Some(m))
        }
        DatumDocument::Raw(raw) => {
            let opts = VerifyOptions { mode, precision_bits, ..VerifyOptions::default() };
            let o = verify_raw(&raw, &opts);
            (o.report, o.classification.as_str().to_string(), o.normalized)
        }
    };
    let text = if pretty { report.render_pretty() } else { report_to_json(&report) };
    write_output(out, text.trim_end())?;
    let failed = report.failures().count();
    eprintln!("classification: {classification}; {} checks, {failed} failed", report.checks.len());
    if let Some(path) = emit {
        match normalized {
            Some(m) => fs::write(path, DatumDocument::from(m).to_json() + "\n")
                .with_context(|| format!("writing {}", path.display()))?,
            None => eprintln!("no normalized datum to write: no square root of the normalization scale was found"),
        }
    }
    Ok(failed == 0)
}

fn source_datum(source: &str) -> anyhow::Result<(RawDatum, Option<u32>)> {
    if let Ok(spec) = source.parse::<FamilySpec>() {
        let d = match spec {
            FamilySpec::Taft { d } => Some(d),
            _ => None,
        };
        return Ok((spec.generate().map_err(|e| usage(e.to_string()))?, d));
    }
    if source.contains(':') && !Path::new(source).exists() {
        return Err(usage(format!("{source:?} is neither a family spec nor a file")));
    }
    Ok((read_raw(Path::new(source))?, None))
}

fn format_terms(terms: &[(String, i64)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .map(|(l, c)| match *c {
            1 => l.clone(),
            -1 => format!("-{l}"),
            c => format!("{c}*{l}"),
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// Verlinde decomposition on the working labels: all labels for a
/// nondegenerate datum, the representatives for a slightly degenerate one.
fn verlinde_terms(raw: &RawDatum, x: &str, y: &str) -> anyhow::Result<Vec<(String, i64)>> {
    let opts = VerifyOptions { normalize: false, ..VerifyOptions::default() };
    let outcome = verify_raw(raw, &opts);
    let tensor: FusionTensor = match (&outcome.fusion, outcome.classification) {
        (Some(t), _) => t.clone(),
        (None, Classification::Degenerate | Classification::EvenFermion) => {
            return Err(anyhow!("the datum is {}; no Verlinde formula applies", outcome.classification.as_str()))
        }
        (None, c) => return Err(anyhow!("no integral fusion tensor (classification {})", c.as_str())),
    };
    let index = |l: &str| {
        tensor.label_index(l).ok_or_else(|| {
            if raw.label_index(l).is_some() {
                usage(format!("{l:?} is not among the representatives {:?}", tensor.labels))
            } else {
                usage(format!("unknown label {l:?}"))
            }
        })
    };
    let (i, j) = (index(x)?, index(y)?);
    Ok(tensor.product(i, j).into_iter().map(|(k, c)| (tensor.labels[k].clone(), c)).collect())
}

fn taft_terms(d: u32, x: &str, y: &str) -> anyhow::Result<Vec<TaftLabel>> {
    let parse = |s: &str| -> anyhow::Result<TaftLabel> {
        let l: TaftLabel = s.parse().map_err(|e: String| usage(e))?;
        if l.is_valid(d) {
            Ok(l)
        } else {
            Err(usage(format!("unknown label {s:?} for d = {d}")))
        }
    };
    Ok(taft_fusion(d, parse(x)?, parse(y)?))
}

/// Taft decomposition pushed to the representatives: `eps (x) Z` counts as
/// `-Z`.
fn taft_quotient(d: u32, sd: &SlightlyDegenerateData, terms: &[TaftLabel]) -> Vec<(String, i64)> {
    let labels = sd.labels();
    let mut out: Vec<(String, i64)> = Vec::new();
    for z in terms {
        let (name, sign) = if labels.contains(&z.to_string()) {
            (z.to_string(), 1)
        } else {
            (taft_epsilon_action(d, *z).to_string(), -1)
        };
        match out.iter_mut().find(|(n, _)| *n == name) {
            Some(e) => e.1 += sign,
            None => out.push((name, sign)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    let pos = |n: &str| labels.iter().position(|l| l == n).unwrap();
    out.sort_by_key(|(n, _)| pos(n));
    out
}

fn fusion(source: &str, x: &str, y: &str, oracle: Oracle, compare: bool) -> anyhow::Result<bool> {
    let (raw, taft_d) = source_datum(source)?;
    if raw.label_index(x).is_none() || raw.label_index(y).is_none() {
        let bad = if raw.label_index(x).is_none() { x } else { y };
        return Err(usage(format!("unknown label {bad:?}")));
    }
    let need_taft = oracle == Oracle::Taft || compare;
    if need_taft && taft_d.is_none() {
        return Err(usage("the taft oracle needs a taft:d=.. family spec"));
    }
    if !compare {
        match oracle {
            Oracle::Verlinde => println!("{}", format_terms(&verlinde_terms(&raw, x, y)?)),
            Oracle::Taft => {
                let terms = taft_terms(taft_d.unwrap(), x, y)?;
                let names: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
                println!("{{{}}}", names.join(", "));
            }
        }
        return Ok(true);
    }
    let d = taft_d.unwrap();
    let sd = reduce_slightly_degenerate(&raw).map_err(|e: DatumError| anyhow!(e))?;
    let verlinde = verlinde_terms(&raw, x, y)?;
    let taft = taft_quotient(d, &sd, &taft_terms(d, x, y)?);
    println!("verlinde: {}", format_terms(&verlinde));
    println!("taft:     {}", format_terms(&taft));
    if verlinde == taft {
        println!("agree");
        Ok(true)
    } else {
        println!("MISMATCH");
        Ok(false)
    }
}

fn reduce(input: &Path, out: Option<&Path>, normalized: bool) -> anyhow::Result<bool> {
    let raw = read_raw(input)?;
    if raw.kind != RawKind::Full {
        return Err(usage("reduce needs a full raw datum"));
    }
    let sd = reduce_slightly_degenerate(&raw).map_err(|e| anyhow!(e))?;
    if !normalized {
        write_output(out, &DatumDocument::from(sd.bold.clone()).to_json())?;
        return Ok(true);
    }
    match emit_zmodular(&sd, raw.normalizer.as_ref()).map_err(|e| anyhow!(e))? {
        ZModularOutput::Normalized { datum, normalizer } => {
            eprintln!("normalizer: {normalizer}");
            write_output(out, &DatumDocument::from(datum).to_json())?;
            Ok(true)
        }
        ZModularOutput::UpToScalar(report) => {
            eprintln!("no square root of sdim dim^R(1bar) found; identities up to scalar:");
            eprint!("{}", report.render_pretty());
            Ok(false)
        }
    }
}

fn report(input: &Path, json: bool) -> anyhow::Result<bool> {
    let text = fs::read_to_string(input).map_err(|e| usage(format!("cannot read {}: {e}", input.display())))?;
    let report = report_from_json(&text).map_err(|e| usage(format!("{}: {e}", input.display())))?;
    if json {
        println!("{}", report_to_json(&report));
    } else {
        print!("{}", report.render_pretty());
    }
    Ok(report.all_passed())
}
