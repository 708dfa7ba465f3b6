//! Command-line front end: `pgcode <subcommand> [flags]`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pgcode::exactla::text::parse_matrix;
use pgcode::ffield::FieldSpec;
use pgcode::gcode::{
    abc_census, build_symplectic_code, min_distance_exhaustive, min_weight_form, orthogonal_code, spectrum,
    subcode_check, weight_direct, weight_recursive, GrassCode, MethodAgreement, ScanOptions, DEFAULT_BUDGET,
};
use pgcode::quadgeo::{radical_profile, AlternatingForm, QuadraticSpace, RadicalProfile, SectionClass};
use pgcode::verify::{run_suite, SuiteOptions};
use pgcode::Error;

mod output;

#[derive(Parser, Debug)]
#[command(name = "pgcode", version, about = "Polar Grassmann codes over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the code and report its length and dimension.
    Build(Common),
    /// Print the projective system or a generator matrix.
    Dump {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = DumpTarget::System)]
        what: DumpTarget,
    },
    /// Weight of the codeword of an alternating form.
    Weight {
        #[command(flatten)]
        common: Common,
        /// A matrix file, `beta`, or `elementary:i,j` (1-based).
        #[arg(long)]
        form: String,
    },
    /// Minimum distance of the line code.
    Mindist {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Method::Exhaustive)]
        method: Method,
    },
    /// Full weight distribution.
    Spectrum(Common),
    /// Compare with the symplectic line code.
    Symplectic(Common),
    /// Run an acceptance suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "core")]
        suite: String,
    },
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Maximum number of codeword evaluations.
    #[arg(long, default_value_t = DEFAULT_BUDGET as u64)]
    budget: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Exhaustive,
    Structural,
    Recursive,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DumpTarget {
    System,
    Generator,
    Full,
}

/// How a run ended, mapped onto the process exit status.
#[derive(Debug)]
enum Failure {
    Usage { flag: &'static str, message: String },
    Check(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BadGrade { .. } => Failure::Usage { flag: "--k", message: e.to_string() },
            Error::BudgetExceeded { .. } => Failure::Usage { flag: "--budget", message: e.to_string() },
            e => Failure::Runtime(e),
        }
    }
}

fn usage(flag: &'static str, message: impl Into<String>) -> Failure {
    Failure::Usage { flag, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns 0 on success, 1 on a failed check or computation, 2 on a usage error.
pub fn cli_main(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(Failure::Usage { flag, message }) => {
            eprintln!("error: {flag}: {message}");
            2
        }
        Err(Failure::Check(message)) => {
            eprintln!("check failed: {message}");
            1
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Build(c) => cmd_build(&c),
        Command::Dump { common, what } => cmd_dump(&common, what),
        Command::Weight { common, form } => cmd_weight(&common, &form),
        Command::Mindist { common, method } => cmd_mindist(&common, method),
        Command::Spectrum(c) => cmd_spectrum(&c),
        Command::Symplectic(c) => cmd_symplectic(&c),
        Command::Verify { common, suite } => cmd_verify(&common, &suite),
    }
}

impl Common {
    fn space(&self) -> CliResult<QuadraticSpace> {
        let field = FieldSpec::with_order(self.q).map_err(|e| usage("--q", e.to_string()))?;
        QuadraticSpace::new(&field, self.n).map_err(|e| usage("--n", e.to_string()))
    }

    fn code(&self) -> CliResult<GrassCode> {
        let space = self.space()?;
        Ok(orthogonal_code(&space, self.k)?)
    }

    fn require_lines(&self, command: &str) -> CliResult<()> {
        if self.k != 2 {
            return Err(usage("--k", format!("{command} is defined for k = 2 only")));
        }
        Ok(())
    }

    fn scan_options(&self, keep_witnesses: bool) -> ScanOptions {
        ScanOptions { budget: self.budget as u128, workers: self.workers, keep_witnesses }
    }

    fn format(&self, default: Format) -> CliResult<Format> {
        let f = self.format.unwrap_or(default);
        if f == Format::Text && default != Format::Text {
            return Err(usage("--format", "text output is only available for dump"));
        }
        Ok(f)
    }

    fn emit_value(&self, value: &Value, csv_rows: Option<Vec<Value>>) -> CliResult<()> {
        let text = match self.format(Format::Json)? {
            Format::Csv => output::csv(&csv_rows.unwrap_or_else(|| vec![value.clone()])).map_err(Failure::Runtime)?,
            _ => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        };
        self.write(&text)
    }

    fn write(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| usage("--out", format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn cmd_build(c: &Common) -> CliResult<()> {
    let start = Instant::now();
    let code = c.code()?;
    let value = json!({
        "q": c.q,
        "n": c.n,
        "k": c.k,
        "N": code.n_len(),
        "K": code.dim(),
        "ambient_rows": code.gen_full().rows(),
        "annihilator_dim": code.dependencies().dim(),
        "elapsed": start.elapsed().as_secs_f64(),
    });
    c.emit_value(&value, None)
}

fn cmd_dump(c: &Common, what: DumpTarget) -> CliResult<()> {
    let code = c.code()?;
    match c.format(Format::Text)? {
        Format::Text => {
            let text = match what {
                DumpTarget::System => code.system().dump_text(),
                DumpTarget::Generator => code.gen_matrix_text(true),
                DumpTarget::Full => code.gen_matrix_text(false),
            };
            c.write(&text)
        }
        _ => {
            let rows = match what {
                DumpTarget::System => code
                    .system()
                    .columns()
                    .iter()
                    .map(|col| {
                        let label: Vec<Vec<u32>> =
                            col.label.basis().row_iter().map(|r| r.iter().map(|x| x.rep()).collect()).collect();
                        let coords: Vec<u32> = col.plucker.coords().iter().map(|x| x.rep()).collect();
                        json!({ "label": label, "plucker": coords })
                    })
                    .collect::<Vec<_>>(),
                DumpTarget::Generator | DumpTarget::Full => {
                    let g = if what == DumpTarget::Generator { code.gen_reduced() } else { code.gen_full() };
                    g.row_iter()
                        .enumerate()
                        .map(|(i, r)| json!({ "row": i, "entries": r.iter().map(|x| x.rep()).collect::<Vec<_>>() }))
                        .collect()
                }
            };
            let value = json!({ "q": c.q, "n": c.n, "k": c.k, "what": format!("{what:?}").to_lowercase(), "rows": rows });
            c.emit_value(&value, Some(rows))
        }
    }
}

fn parse_form(space: &QuadraticSpace, spec: &str) -> CliResult<AlternatingForm> {
    if spec == "beta" {
        return AlternatingForm::beta(space).map_err(|e| usage("--form", e.to_string()));
    }
    if let Some(rest) = spec.strip_prefix("elementary:") {
        let idx: Vec<usize> = rest
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| usage("--form", format!("cannot parse index pair {rest:?}")))?;
        let [i, j] = idx[..] else {
            return Err(usage("--form", "elementary needs exactly two indices"));
        };
        if i == 0 || j == 0 {
            return Err(usage("--form", "elementary indices are 1-based"));
        }
        return AlternatingForm::elementary(space, i - 1, j - 1).map_err(|e| usage("--form", e.to_string()));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| usage("--form", format!("{spec}: {e}")))?;
    let m = parse_matrix(&text, Some(space.field())).map_err(|e| usage("--form", e.to_string()))?;
    AlternatingForm::new(space, m).map_err(|e| usage("--form", e.to_string()))
}

#[derive(Serialize)]
struct PlainWeightReport {
    q: u32,
    n: usize,
    weight: u64,
    in_annihilator: bool,
    profile: Option<RadicalProfile>,
    method_agreement: MethodAgreement,
}

fn cmd_weight(c: &Common, form: &str) -> CliResult<()> {
    c.require_lines("weight")?;
    let code = c.code()?;
    let f = parse_form(code.space(), form)?;
    let value = if code.space().field().is_char2() && !f.in_beta_span() {
        let report = abc_census(&code, &f)?;
        if !report.method_agreement.agree {
            c.emit_value(&to_value(&report), None)?;
            return Err(Failure::Check("weight methods disagree".into()));
        }
        to_value(&report)
    } else {
        let direct = weight_direct(&code, &f)?;
        let recursive = weight_recursive(&code, &f)?;
        let report = PlainWeightReport {
            q: c.q,
            n: c.n,
            weight: direct,
            in_annihilator: code.space().field().is_char2() && f.in_beta_span(),
            profile: radical_profile(&f).ok(),
            method_agreement: MethodAgreement { direct, recursive, census_formula: None, agree: direct == recursive },
        };
        let value = to_value(&report);
        if direct != recursive {
            c.emit_value(&value, None)?;
            return Err(Failure::Check("weight methods disagree".into()));
        }
        value
    };
    c.emit_value(&value, None)
}

fn cmd_mindist(c: &Common, method: Method) -> CliResult<()> {
    c.require_lines("mindist")?;
    let start = Instant::now();
    let code = c.code()?;
    let mut value = json!({
        "q": c.q,
        "n": c.n,
        "k": c.k,
        "N": code.n_len(),
        "K": code.dim(),
        "method": format!("{method:?}").to_lowercase(),
    });
    match method {
        Method::Exhaustive => {
            let r = min_distance_exhaustive(&code, &c.scan_options(false))?;
            value["d_min"] = json!(r.d_min);
            value["min_weight_count"] = json!(r.min_weight_count);
            value["evaluations"] = json!(r.evaluations as u64);
            value["certified"] = json!(true);
        }
        Method::Structural | Method::Recursive => {
            let mut classes = BTreeMap::new();
            for class in SectionClass::ALL {
                if class == SectionClass::Other {
                    continue;
                }
                let f = match min_weight_form(code.space(), class) {
                    Ok(f) => f,
                    Err(Error::ClassNotFound(_)) => continue,
                    Err(e) => return Err(e.into()),
                };
                let direct = weight_direct(&code, &f)?;
                if method == Method::Recursive {
                    let recursive = weight_recursive(&code, &f)?;
                    if recursive != direct {
                        return Err(Failure::Check(format!("{class}: recursive {recursive} != direct {direct}")));
                    }
                }
                classes.insert(class.name().to_string(), direct);
            }
            let d_min = classes.values().min().copied();
            value["d_min"] = json!(d_min);
            value["min_weight_count"] = Value::Null;
            value["class_weights"] = json!(classes);
            value["certified"] = json!(false);
        }
    }
    value["elapsed"] = json!(start.elapsed().as_secs_f64());
    c.emit_value(&value, None)
}

fn cmd_spectrum(c: &Common) -> CliResult<()> {
    let start = Instant::now();
    let code = c.code()?;
    let spec = spectrum(&code, &c.scan_options(false))?;
    let total: u64 = spec.values().sum();
    let rows: Vec<Value> = spec.iter().map(|(w, n)| json!({ "weight": w, "count": n })).collect();
    let value = json!({
        "q": c.q,
        "n": c.n,
        "k": c.k,
        "N": code.n_len(),
        "K": code.dim(),
        "spectrum": spec.iter().map(|(w, n)| (w.to_string(), *n)).collect::<BTreeMap<_, _>>(),
        "total": total,
        "elapsed": start.elapsed().as_secs_f64(),
    });
    c.emit_value(&value, Some(rows))
}

fn cmd_symplectic(c: &Common) -> CliResult<()> {
    c.require_lines("symplectic")?;
    let space = c.space()?;
    if !space.field().is_char2() {
        return Err(usage("--q", "the symplectic comparison needs even q"));
    }
    let start = Instant::now();
    let orth = orthogonal_code(&space, 2)?;
    let symp = build_symplectic_code(&space)?;
    let (subcode, codim) = subcode_check(&orth, &symp)?;
    let mut value = json!({
        "q": c.q,
        "n": c.n,
        "N": symp.n_len(),
        "K_orthogonal": orth.dim(),
        "K_symplectic": symp.dim(),
        "subcode": subcode,
        "codimension": codim,
    });
    match min_distance_exhaustive(&symp, &c.scan_options(false)) {
        Ok(r) => {
            value["d_min"] = json!(r.d_min);
            value["min_weight_count"] = json!(r.min_weight_count);
        }
        Err(Error::BudgetExceeded { needed, .. }) => {
            value["d_min"] = Value::Null;
            value["skipped"] = json!(format!("exhaustive scan needs {needed} evaluations"));
        }
        Err(e) => return Err(e.into()),
    }
    value["elapsed"] = json!(start.elapsed().as_secs_f64());
    c.emit_value(&value, None)?;
    if !subcode {
        return Err(Failure::Check("symplectic code is not a subcode".into()));
    }
    Ok(())
}

fn cmd_verify(c: &Common, suite: &str) -> CliResult<()> {
    if suite != "core" && suite != "extended" {
        return Err(usage("--suite", format!("unknown suite {suite:?} (expected core or extended)")));
    }
    let opts = SuiteOptions { budget: c.budget as u128, workers: c.workers, ..Default::default() };
    let report = run_suite(suite, &opts)?;
    let rows = report.checks.iter().map(to_value).collect();
    c.emit_value(&to_value(&report), Some(rows))?;
    if !report.all_pass() {
        return Err(Failure::Check(format!("{} of {} checks failed", report.totals.fail, report.totals.checks)));
    }
    Ok(())
}
