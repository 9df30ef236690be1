//! Command-line front end: construction, analysis, verification sweeps and
//! bit-exact table reproduction.
//!
//! Exit codes: 0 success, 1 mismatch or verification failure, 2 usage error.

#![allow(clippy::manual_is_multiple_of)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use invswitch::construct::{
    build_g, build_named, compute_vm, compute_w, empty_v, parse_v_file, random_v,
    split_v0_v1, validate_v, NamedFunction, SubsetSpec,
};
use invswitch::error::Error;
use invswitch::field::FieldSpec;
use invswitch::spectra::{
    invariant_signature, partition_signatures,
    AnalysisReport,
};
use invswitch::tables;
use invswitch::verify::{
    check_lemma34, check_prop35, check_prop41, check_theorem36_cases, lemma25_roots,
    quadratic_roots_brute, quadratic_solvable, QuadraticInstance,
};
use invswitch::vfunc::VFunc;

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser)]
#[command(
    name = "invswitch",
    version,
    about = "Differentially 4-uniform permutations from switched inverse functions over GF(2^n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for the spectrum sweeps (default: available parallelism;
    /// use 1 to force serial execution).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Profile a function: nonlinearity, differential spectrum and uniformity,
    /// algebraic degree.
    Analyze {
        /// Field degree (needed with --named or --v-file).
        #[arg(long)]
        n: Option<u32>,
        /// Field config file overriding the built-in field (`n=..., poly=<hex>, xi=<hex>`).
        #[arg(long)]
        field_config: Option<PathBuf>,
        /// A named function: G1, G2, G3, GM, F1, F2, F3 or `inverse`.
        #[arg(long)]
        named: Option<String>,
        /// Build G from a V-file (header `field n=<n>`, then `pair <e1> <e2>` lines).
        #[arg(long)]
        v_file: Option<PathBuf>,
        /// Analyze an explicit lookup table file (as written by this tool).
        #[arg(long)]
        table_file: Option<PathBuf>,
        /// Include the full extended Walsh spectrum in the report.
        #[arg(long)]
        ews: bool,
    },
    /// Recompute a published table (1-4) and diff it against the expected values.
    ReproduceTable {
        /// Table number: 1 (family sizes), 2 (n=6 members), 3 (spectra), 4 (NL).
        which: u8,
    },
    /// Run a verification sweep for the finite, checkable statements.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        field_config: Option<PathBuf>,
        /// Which check: lemma23, lemma34, prop35, thm36, prop41, or all.
        which: String,
        /// Seed for the sampled sweeps on large fields.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample random V-sets, profile each resulting permutation, and group
    /// the results by CCZ-invariant signature.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        field_config: Option<PathBuf>,
        /// Number of pairs per sampled V.
        #[arg(long)]
        pair_count: usize,
        /// Number of V-sets to sample.
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the pairs {x, x/(x+1)} of V_M as xi-exponents (V-file format).
    EnumeratePairs {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        field_config: Option<PathBuf>,
    },
    /// Show the parameters of a field.
    FieldInfo {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        field_config: Option<PathBuf>,
    },
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    };
    std::process::ExitCode::from(code)
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(String),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::PermutationCheckFailed) | CliError::Core(Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let body = || -> Result<(String, u8), CliError> {
        match cli.command {
            Command::Analyze {
                n,
                field_config,
                named,
                v_file,
                table_file,
                ews,
            } => cmd_analyze(cli.format, n, field_config, named, v_file, table_file, ews),
            Command::ReproduceTable { which } => cmd_reproduce_table(cli.format, which),
            Command::Verify {
                n,
                field_config,
                which,
                seed,
            } => cmd_verify(cli.format, n, field_config, &which, seed),
            Command::Sample {
                n,
                field_config,
                pair_count,
                count,
                seed,
            } => cmd_sample(cli.format, n, field_config, pair_count, count, seed),
            Command::EnumeratePairs { n, field_config } => {
                cmd_enumerate_pairs(cli.format, n, field_config)
            }
            Command::FieldInfo { n, field_config } => cmd_field_info(cli.format, n, field_config),
        }
    };

    let (output, code) = match cli.workers {
        Some(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot build worker pool: {e}")))?;
            pool.install(body)?
        }
        None => body()?,
    };

    match &cli.out {
        Some(path) => {
            std::fs::write(path, output)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(output.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write output: {e}")))?;
        }
    }
    Ok(code)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

/// Resolves the working field from --n and/or --field-config.
fn load_field(n: Option<u32>, config: Option<&PathBuf>) -> Result<Arc<FieldSpec>, CliError> {
    let field = match config {
        Some(path) => {
            let spec = FieldSpec::from_config_str(read_file(path)?.trim())?;
            if let Some(n) = n {
                if n != spec.degree() {
                    return Err(CliError::Usage(format!(
                        "--n {n} conflicts with field config degree {}",
                        spec.degree()
                    )));
                }
            }
            spec
        }
        None => {
            let n = n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
            FieldSpec::builtin(n)?
        }
    };
    Ok(Arc::new(field))
}

fn require_construction_n(field: &FieldSpec) -> Result<(), CliError> {
    let n = field.degree();
    if n % 2 != 0 || !(6..=20).contains(&n) {
        return Err(CliError::Core(Error::ConstructionDegree(n)));
    }
    Ok(())
}

fn cmd_analyze(
    format: Format,
    n: Option<u32>,
    field_config: Option<PathBuf>,
    named: Option<String>,
    v_file: Option<PathBuf>,
    table_file: Option<PathBuf>,
    ews: bool,
) -> Result<(String, u8), CliError> {
    let sources =
        usize::from(named.is_some()) + usize::from(v_file.is_some()) + usize::from(table_file.is_some());
    if sources != 1 {
        return Err(CliError::Usage(
            "exactly one of --named, --v-file, --table-file is required".into(),
        ));
    }

    let (name, func) = if let Some(name) = named {
        let field = load_field(n, field_config.as_ref())?;
        if name.eq_ignore_ascii_case("inverse") {
            (name, VFunc::inverse_function(field))
        } else {
            require_construction_n(&field)?;
            let named: NamedFunction = name.parse()?;
            (name, build_named(&field, named)?)
        }
    } else if let Some(path) = v_file {
        let field = load_field(n, field_config.as_ref())?;
        require_construction_n(&field)?;
        let spec = parse_v_file(&field, &read_file(&path)?)?;
        (format!("G[{}]", path.display()), build_g(&spec)?)
    } else {
        let path = table_file.expect("source checked above");
        let func = VFunc::from_table_str(&read_file(&path)?)?;
        if let Some(n) = n {
            if n != func.degree_n() {
                return Err(CliError::Usage(format!(
                    "--n {n} conflicts with table file degree {}",
                    func.degree_n()
                )));
            }
        }
        (format!("{}", path.display()), func)
    };

    let report = AnalysisReport::build(&name, &func, ews);
    let output = match format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Csv => format!("{}\n{}\n", AnalysisReport::csv_header(), report.to_csv_row()),
        Format::Text => report.to_text(),
    };
    Ok((output, 0))
}

fn cmd_reproduce_table(format: Format, which: u8) -> Result<(String, u8), CliError> {
    if !(1..=4).contains(&which) {
        return Err(CliError::Usage(format!(
            "no table {which}; expected 1, 2, 3 or 4"
        )));
    }
    let report = tables::reproduce_table(which)?;
    let output = match format {
        Format::Json => format!("{}\n", serde_json::to_string(&report).expect("serialize")),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    Ok((output, u8::from(!report.all_match)))
}

/// One verification sweep, with where-it-ran bookkeeping.
#[derive(Serialize)]
struct SweepReport {
    check: String,
    n: u32,
    mode: String,
    instances: u64,
    failures: u64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<serde_json::Value>,
}

impl SweepReport {
    fn to_text(&self) -> String {
        format!(
            "{} (n={}, {}, {} instances): {}{}\n",
            self.check,
            self.n,
            self.mode,
            self.instances,
            if self.passed { "pass" } else { "FAIL" },
            match &self.detail {
                Some(d) if !self.passed => format!("\n  detail: {d}"),
                _ => String::new(),
            }
        )
    }

    fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.check, self.n, self.mode, self.instances, self.failures, self.passed
        )
    }
}

fn sweep_lemma23(field: &Arc<FieldSpec>, seed: u64) -> Result<SweepReport, CliError> {
    let size = field.size() as u32;
    let mut failures = 0u64;
    let mut instances = 0u64;
    let mut first_failure = None;
    let mut check_one = |a: u32, b: u32, c: u32| -> Result<(), CliError> {
        let q = QuadraticInstance::new(
            field.element(a)?,
            field.element(b)?,
            field.element(c)?,
        )?;
        let predicted = quadratic_solvable(field, q)?;
        let roots = quadratic_roots_brute(field, q).len();
        instances += 1;
        if (roots == 2) != predicted || (roots != 0 && roots != 2) {
            failures += 1;
            if first_failure.is_none() {
                first_failure = Some(format!("a=0x{a:x}, b=0x{b:x}, c=0x{c:x}, roots={roots}"));
            }
        }
        Ok(())
    };
    let mode;
    if field.degree() <= 6 {
        mode = "exhaustive".to_string();
        for a in 1..size {
            for b in 1..size {
                for c in 0..size {
                    check_one(a, b, c)?;
                }
            }
        }
    } else {
        // Each instance costs an O(2^n) brute-force root scan; keep the whole
        // sweep near 2^26 operations.
        let samples = ((1u64 << 26) / size as u64).clamp(64, 5000) as u32;
        mode = format!("sampled({samples}, seed={seed})");
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let a = 1 + rng.next_u32() % (size - 1);
            let b = 1 + rng.next_u32() % (size - 1);
            let c = rng.next_u32() % size;
            check_one(a, b, c)?;
        }
    }
    Ok(SweepReport {
        check: "lemma23".into(),
        n: field.degree(),
        mode,
        instances,
        failures,
        passed: failures == 0,
        detail: first_failure.map(serde_json::Value::String),
    })
}

fn sweep_lemma34(field: &Arc<FieldSpec>) -> Result<SweepReport, CliError> {
    let report = check_lemma34(field)?;
    Ok(SweepReport {
        check: "lemma34".into(),
        n: field.degree(),
        mode: "exhaustive".into(),
        instances: field.size() as u64,
        failures: u64::from(!report.passed),
        passed: report.passed,
        detail: Some(serde_json::to_value(&report).expect("serialize")),
    })
}

fn sweep_prop35(field: &Arc<FieldSpec>, seed: u64) -> Result<SweepReport, CliError> {
    // Also covers lemma 2.5 (the roots are recomputed and their defining
    // quadratic is checked exactly).
    let size = field.size() as u32;
    let mut failures = 0u64;
    let mut instances = 0u64;
    let mut first_failure = None;
    let mut check_b = |b: u32| -> Result<(), CliError> {
        if b <= 1 || field.trace_raw(field.inv_raw(b ^ 1)) != 0 {
            return Ok(());
        }
        instances += 1;
        let be = field.element(b)?;
        let (x1, x2) = lemma25_roots(field, be)?;
        let inv_b = field.inv_raw(b);
        let inv_bb1 = field.inv_raw(field.mul_raw(b, b ^ 1));
        let on_curve = |x: u32| field.mul_raw(x, x) ^ field.mul_raw(inv_b, x) ^ inv_bb1 == 0;
        let report = check_prop35(field, be)?;
        if !(on_curve(x1.bits()) && on_curve(x2.bits()) && x1 != x2 && report.passed) {
            failures += 1;
            if first_failure.is_none() {
                first_failure = Some(serde_json::to_value(&report).expect("serialize"));
            }
        }
        Ok(())
    };
    let mode;
    if field.degree() <= 14 {
        mode = "exhaustive".to_string();
        for b in 2..size {
            check_b(b)?;
        }
    } else {
        // solve_alpha costs an O(2^n) scan per instance.
        let samples = ((1u64 << 26) / size as u64).clamp(64, 2000) as u32;
        mode = format!("sampled({samples}, seed={seed})");
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x35);
        for _ in 0..samples {
            check_b(2 + rng.next_u32() % (size - 2))?;
        }
    }
    Ok(SweepReport {
        check: "prop35".into(),
        n: field.degree(),
        mode,
        instances,
        failures,
        passed: failures == 0,
        detail: first_failure,
    })
}

fn thm36_subject_specs(field: &Arc<FieldSpec>, seed: u64) -> Result<Vec<SubsetSpec>, CliError> {
    let vm = compute_vm(field)?;
    let (v0, v1) = split_v0_v1(field)?;
    Ok(vec![
        empty_v(field)?,
        validate_v(field, &v0)?,
        validate_v(field, &v1)?,
        validate_v(field, &vm.elements())?,
        random_v(field, vm.len() / 2, seed)?,
    ])
}

fn sweep_thm36(field: &Arc<FieldSpec>, seed: u64) -> Result<SweepReport, CliError> {
    let size = field.size() as u32;
    let n = field.degree();
    let specs = thm36_subject_specs(field, seed)?;
    let mut failures = 0u64;
    let mut instances = 0u64;
    let mut first_failure = None;
    let mut check = |spec: &SubsetSpec, a: u32, b: u32| -> Result<(), CliError> {
        let report = check_theorem36_cases(spec, field.element(a)?, field.element(b)?)?;
        instances += 1;
        if !report.passed {
            failures += 1;
            if first_failure.is_none() {
                first_failure = Some(serde_json::to_value(&report).expect("serialize"));
            }
        }
        Ok(())
    };
    let mode;
    if n == 6 {
        mode = "exhaustive".to_string();
        for spec in &specs {
            for a in 1..size {
                for b in 0..size {
                    check(spec, a, b)?;
                }
            }
        }
    } else {
        // Each report costs an O(2^n) brute-force solve.
        let samples = ((1u64 << 26) / size as u64).clamp(64, 2000) as u32;
        mode = format!("sampled({samples}, seed={seed}) + switch-point lines");
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x36);
        for spec in &specs {
            for _ in 0..samples {
                let a = 1 + rng.next_u32() % (size - 1);
                let b = rng.next_u32() % size;
                check(spec, a, b)?;
            }
            // The proof's special branches live on ab = 1 and a(b+1) = 1.
            if n <= 12 {
                for a in 1..size {
                    let inv_a = field.inv_raw(a);
                    check(spec, a, inv_a)?;
                    check(spec, a, inv_a ^ 1)?;
                }
            } else {
                for _ in 0..samples {
                    let a = 1 + rng.next_u32() % (size - 1);
                    let inv_a = field.inv_raw(a);
                    check(spec, a, inv_a)?;
                    check(spec, a, inv_a ^ 1)?;
                }
            }
        }
    }
    Ok(SweepReport {
        check: "thm36".into(),
        n,
        mode,
        instances,
        failures,
        passed: failures == 0,
        detail: first_failure,
    })
}

fn sweep_prop41(field: &Arc<FieldSpec>) -> Result<SweepReport, CliError> {
    let report = check_prop41(field)?;
    let mut passed = report.passed;
    let mut detail = serde_json::to_value(&report).expect("serialize");
    // Cross-check the family exponent against the published counts.
    if let Some((_, expected)) = tables::table1_expected()
        .into_iter()
        .find(|&(n, _)| n == field.degree())
    {
        let matches = expected == report.family_exponent;
        passed &= matches;
        detail["expected_family_exponent"] = serde_json::json!(expected);
    }
    Ok(SweepReport {
        check: "prop41".into(),
        n: field.degree(),
        mode: "exhaustive".into(),
        instances: field.size() as u64,
        failures: u64::from(!passed),
        passed,
        detail: Some(detail),
    })
}

fn cmd_verify(
    format: Format,
    n: u32,
    field_config: Option<PathBuf>,
    which: &str,
    seed: u64,
) -> Result<(String, u8), CliError> {
    let field = load_field(Some(n), field_config.as_ref())?;
    if field.degree() % 2 != 0 {
        return Err(CliError::Core(Error::OddDegree(field.degree())));
    }
    let construction_ready = field.degree() >= 6;
    let mut reports = Vec::new();
    let known = ["lemma23", "lemma34", "prop35", "thm36", "prop41", "all"];
    if !known.contains(&which) {
        return Err(CliError::Usage(format!(
            "unknown check `{which}`; expected one of {}",
            known.join(", ")
        )));
    }
    let want = |name: &str| which == name || which == "all";
    if want("lemma23") {
        reports.push(sweep_lemma23(&field, seed)?);
    }
    if want("lemma34") {
        reports.push(sweep_lemma34(&field)?);
    }
    if want("prop35") {
        reports.push(sweep_prop35(&field, seed)?);
    }
    if want("thm36") {
        if construction_ready {
            reports.push(sweep_thm36(&field, seed)?);
        } else if which == "thm36" {
            return Err(CliError::Core(Error::ConstructionDegree(field.degree())));
        }
    }
    if want("prop41") {
        reports.push(sweep_prop41(&field)?);
    }
    let all_pass = reports.iter().all(|r| r.passed);
    let output = match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string(&reports).expect("serialize")
        ),
        Format::Csv => {
            let mut out = String::from("check,n,mode,instances,failures,passed\n");
            for r in &reports {
                out.push_str(&r.to_csv_row());
                out.push('\n');
            }
            out
        }
        Format::Text => reports.iter().map(SweepReport::to_text).collect(),
    };
    Ok((output, u8::from(!all_pass)))
}

#[derive(Serialize)]
struct SampleEntry {
    index: usize,
    seed: u64,
    v_exponents: Vec<(u32, u32)>,
    #[serde(flatten)]
    report: AnalysisReport,
}

#[derive(Serialize)]
struct SampleBatch {
    n: u32,
    pair_count: usize,
    count: usize,
    seed: u64,
    entries: Vec<SampleEntry>,
    /// Signature classes as index groups; distinct classes are CCZ-inequivalent.
    signature_classes: Vec<Vec<usize>>,
}

fn cmd_sample(
    format: Format,
    n: u32,
    field_config: Option<PathBuf>,
    pair_count: usize,
    count: usize,
    seed: u64,
) -> Result<(String, u8), CliError> {
    let field = load_field(Some(n), field_config.as_ref())?;
    require_construction_n(&field)?;
    let mut entries = Vec::with_capacity(count);
    let mut signatures = Vec::with_capacity(count);
    for index in 0..count {
        let sub_seed = seed.wrapping_add(index as u64);
        let spec = random_v(&field, pair_count, sub_seed)?;
        let g = build_g(&spec)?;
        let report = AnalysisReport::build(&format!("G[sample {index}]"), &g, true);
        signatures.push(invariant_signature(&g));
        entries.push(SampleEntry {
            index,
            seed: sub_seed,
            v_exponents: spec.v_pair_list().exponent_pairs(),
            report,
        });
    }
    let signature_classes = partition_signatures(&signatures);
    let batch = SampleBatch {
        n: field.degree(),
        pair_count,
        count,
        seed,
        entries,
        signature_classes,
    };
    let output = match format {
        Format::Json => format!("{}\n", serde_json::to_string(&batch).expect("serialize")),
        Format::Csv => {
            let mut out = String::from("index,seed,v,nl,uniformity,degree,diff_spectrum\n");
            for e in &batch.entries {
                let v = e
                    .v_exponents
                    .iter()
                    .map(|(a, b)| format!("{a} {b}"))
                    .collect::<Vec<_>>()
                    .join(";");
                let spec = e
                    .report
                    .diff_spectrum
                    .iter()
                    .map(|(d, c)| format!("{d}:{c}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                out.push_str(&format!(
                    "{},{},\"{}\",{},{},{},\"{}\"\n",
                    e.index, e.seed, v, e.report.nl, e.report.uniformity, e.report.degree, spec
                ));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "sampled {count} V-sets ({pair_count} pairs each) at n={n}, seed {seed}\n"
            );
            for e in &batch.entries {
                let v = e
                    .v_exponents
                    .iter()
                    .map(|(a, b)| format!("({a},{b})"))
                    .collect::<Vec<_>>()
                    .join(" ");
                out.push_str(&format!(
                    "  [{}] V={} NL={} uniformity={} degree={} spectrum={}\n",
                    e.index,
                    if v.is_empty() { "empty" } else { &v },
                    e.report.nl,
                    e.report.uniformity,
                    e.report.degree,
                    e.report
                        .diff_spectrum
                        .iter()
                        .map(|(d, c)| format!("{d}:{c}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
            out.push_str(&format!(
                "signature classes ({}): {:?}\n",
                batch.signature_classes.len(),
                batch.signature_classes
            ));
            out
        }
    };
    Ok((output, 0))
}

fn cmd_enumerate_pairs(
    format: Format,
    n: u32,
    field_config: Option<PathBuf>,
) -> Result<(String, u8), CliError> {
    let field = load_field(Some(n), field_config.as_ref())?;
    require_construction_n(&field)?;
    let vm = compute_vm(&field)?;
    let w = compute_w(&field)?;
    let pairs = vm.exponent_pairs();
    let output = match format {
        Format::Json => {
            let value = serde_json::json!({
                "n": field.degree(),
                "w_size": w.len(),
                "vm_size": vm.len() * 2,
                "pair_count": vm.len(),
                "family_log2": vm.len(),
                "pairs": pairs,
            });
            format!("{value}\n")
        }
        Format::Csv => {
            let mut out = String::from("exp1,exp2\n");
            for (a, b) in &pairs {
                out.push_str(&format!("{a},{b}\n"));
            }
            out
        }
        Format::Text => {
            // The body doubles as a V-file for V = V_M.
            let mut out = format!(
                "# |W| = {}, |V_M| = {}, valid V-sets: 2^{}\nfield n={}\n",
                w.len(),
                vm.len() * 2,
                vm.len(),
                field.degree()
            );
            for (a, b) in &pairs {
                out.push_str(&format!("pair {a} {b}\n"));
            }
            out
        }
    };
    Ok((output, 0))
}

fn cmd_field_info(
    format: Format,
    n: u32,
    field_config: Option<PathBuf>,
) -> Result<(String, u8), CliError> {
    let field = load_field(Some(n), field_config.as_ref())?;
    let omega = (field.degree() % 2 == 0).then(|| {
        field
            .element_of_order_3()
            .expect("even degree has an order-3 element")
            .bits()
    });
    let output = match format {
        Format::Json => {
            let value = serde_json::json!({
                "n": field.degree(),
                "poly": format!("0x{:x}", field.reduction_poly()),
                "xi": format!("0x{:x}", field.primitive_element().bits()),
                "order": field.order(),
                "omega": omega.map(|w| format!("0x{w:x}")),
                "config": field.to_config_string(),
            });
            format!("{value}\n")
        }
        Format::Csv => format!(
            "n,poly,xi,order,omega\n{},0x{:x},0x{:x},{},{}\n",
            field.degree(),
            field.reduction_poly(),
            field.primitive_element().bits(),
            field.order(),
            omega.map_or(String::from(""), |w| format!("0x{w:x}")),
        ),
        Format::Text => format!(
            "GF(2^{}): reduction poly 0x{:x}, xi = 0x{:x}, multiplicative order {}{}\nconfig: {}\n",
            field.degree(),
            field.reduction_poly(),
            field.primitive_element().bits(),
            field.order(),
            omega.map_or(String::new(), |w| format!(", omega = 0x{w:x}")),
            field.to_config_string(),
        ),
    };
    Ok((output, 0))
}
