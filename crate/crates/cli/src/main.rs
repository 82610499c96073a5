use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use csspair::format::{self, load_css, load_matrix, parse_sweep, write_css, Sweep};
use csspair::repeater::{run_local_swapping, ProtocolConfig, ProtocolReport};
use csspair::transversality::{
    audit_mirrored_display, check_cnot_transversal, check_cz_sufficient, check_cz_transversal,
    find_cnot_encoding, make_mirrored_pair, oracle_cnot, oracle_cz, CnotMode, TransversalityReport,
};
use csspair::{CssCode, Error};

const EXIT_FALSE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser)]
#[command(name = "csspair", version, about = "Transversal CNOT/CZ checks for pairs of CSS codes")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the report to this file instead of stdout. For `mirror`, the
    /// directory receiving the two code files.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Worker threads for oracles and simulations.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GateArg {
    Cnot,
    Cz,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Coset,
}

impl From<ModeArg> for CnotMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => CnotMode::Strict,
            ModeArg::Coset => CnotMode::Coset,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a pair of code files for a transversal gate.
    Check {
        code_a: PathBuf,
        code_b: PathBuf,
        #[arg(long, value_enum, default_value = "cnot")]
        gate: GateArg,
        #[arg(long, value_enum, default_value = "coset")]
        mode: ModeArg,
        /// Also compare against the state-vector oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Same as `check --gate cnot`.
    CheckCnot {
        code_a: PathBuf,
        code_b: PathBuf,
        #[arg(long, value_enum, default_value = "coset")]
        mode: ModeArg,
        #[arg(long)]
        oracle: bool,
    },
    /// Same as `check --gate cz`.
    CheckCz {
        code_a: PathBuf,
        code_b: PathBuf,
        #[arg(long)]
        oracle: bool,
    },
    /// Run every checker and oracle on a pair; exit 0 iff they all agree.
    Verify { code_a: PathBuf, code_b: PathBuf },
    /// Build a mirrored pair with CZ-compatible encodings.
    Mirror {
        g1_perp: PathBuf,
        g2_perp: PathBuf,
        /// Hand-written representatives of the first code to audit.
        #[arg(long, requires_all = ["display_b", "display_g4_perp"])]
        display_a: Option<PathBuf>,
        #[arg(long)]
        display_b: Option<PathBuf>,
        #[arg(long)]
        display_g4_perp: Option<PathBuf>,
    },
    /// Simulate Bell-pair swapping from a config file.
    Simulate {
        config: PathBuf,
        /// Sweep a noise parameter, e.g. f1=0:0.02:0.005. Repeatable.
        #[arg(long, value_name = "SPEC")]
        sweep: Vec<String>,
        /// Emit CSV (default when sweeping).
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        /// Emit JSON even when sweeping.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        allow_non_transversal: bool,
    },
    /// Classical and CSS distances of a code file.
    Distance { code: PathBuf },
    /// Search for representatives shared by both codes that make CNOT transversal.
    FindEncoding { code_a: PathBuf, code_b: PathBuf },
}

struct Output {
    text: String,
    status: u8,
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn report_text(r: &TransversalityReport, pretty: bool) -> String {
    if pretty {
        r.render_pretty()
    } else {
        let mut s = r.to_json();
        s.push('\n');
        s
    }
}

fn run_check(a: &Path, b: &Path, gate: GateArg, mode: ModeArg, oracle: bool, pretty: bool) -> csspair::Result<Output> {
    let (qa, qb) = (load_css(a)?, load_css(b)?);
    let mut report = match gate {
        GateArg::Cnot => check_cnot_transversal(&qa, &qb, mode.into())?,
        GateArg::Cz => check_cz_transversal(&qa, &qb)?,
    };
    if oracle {
        if qa.k() == qb.k() {
            let o = match gate {
                GateArg::Cnot => oracle_cnot(&qa, &qb)?,
                GateArg::Cz => oracle_cz(&qa, &qb)?,
            };
            report.attach_oracle(o);
        } else {
            report.notes.push("oracle skipped: logical dimensions differ".into());
        }
    }
    let agrees = report.oracle_agrees().unwrap_or(true);
    if !agrees {
        report.notes.push("checker and oracle disagree".into());
    }
    Ok(Output {
        text: report_text(&report, pretty),
        status: if report.verdict && agrees { 0 } else { EXIT_FALSE },
    })
}

fn report_value(r: &TransversalityReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn run_verify(a: &Path, b: &Path, pretty: bool) -> csspair::Result<Output> {
    let (qa, qb) = (load_css(a)?, load_css(b)?);
    let oracles = qa.k() == qb.k();
    let mut reports = Vec::new();
    for mode in [CnotMode::Strict, CnotMode::Coset] {
        let mut r = check_cnot_transversal(&qa, &qb, mode)?;
        if oracles {
            r.attach_oracle(oracle_cnot(&qa, &qb)?);
        }
        reports.push(r);
    }
    let mut cz = check_cz_transversal(&qa, &qb)?;
    if oracles {
        cz.attach_oracle(oracle_cz(&qa, &qb)?);
    }
    let sufficient = check_cz_sufficient(&qa, &qb)?;
    let coset_agrees = reports[1].oracle_agrees().unwrap_or(true);
    let cz_agrees = cz.oracle_agrees().unwrap_or(true);
    let strict_sound = !reports[0].verdict || reports[1].verdict;
    let sufficient_sound = !sufficient.verdict || cz.verdict;
    let consistent = coset_agrees && cz_agrees && strict_sound && sufficient_sound;
    let text = if pretty {
        let mut s = String::new();
        for r in reports.iter().chain([&cz, &sufficient]) {
            s.push_str(&r.render_pretty());
        }
        s.push_str(&format!(
            "checkers consistent with oracles: {}\n",
            if consistent { "yes" } else { "NO" }
        ));
        s
    } else {
        json_text(&json!({
            "format": format::FORMAT_VERSION,
            "oracles_run": oracles,
            "cnot_strict": report_value(&reports[0]),
            "cnot_coset": report_value(&reports[1]),
            "cz": report_value(&cz),
            "cz_sufficient": report_value(&sufficient),
            "consistent": consistent,
        }))
    };
    Ok(Output {
        text,
        status: if consistent { 0 } else { EXIT_FALSE },
    })
}

fn run_mirror(
    g1: &Path,
    g2: &Path,
    out_dir: Option<&Path>,
    display: Option<(PathBuf, PathBuf, PathBuf)>,
    pretty: bool,
) -> csspair::Result<Output> {
    let (g1p, g2p) = (load_matrix(g1)?, load_matrix(g2)?);
    let (q1, q2) = make_mirrored_pair(&g1p, &g2p)?;
    let product = q1.encoding().mul_transpose(q2.encoding())?;
    let cz = check_cz_transversal(&q1, &q2)?;
    let mut files = Vec::new();
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|source| Error::Io {
            path: dir.display().to_string(),
            source,
        })?;
        for (name, q) in [("code_1.css", &q1), ("code_2.css", &q2)] {
            let path = dir.join(name);
            write_file(&path, &write_css(q))?;
            files.push(path.display().to_string());
        }
    }
    let audit = match display {
        Some((a, b, g4)) => {
            let audit = audit_mirrored_display(&g1p, &g2p, &load_matrix(a)?, &load_matrix(g4)?, &load_matrix(b)?)?;
            Some(serde_json::to_value(audit).expect("audit serializes"))
        }
        None => None,
    };
    let text = if pretty {
        let mut s = format!(
            "mirrored [[{}, {}]] pair\nA' =\n{}B =\n{}A' B^T =\n{}CZ-transversal: {}\n",
            q1.n(),
            q1.k(),
            q1.encoding().to_text(),
            q2.encoding().to_text(),
            product.to_text(),
            if cz.verdict { "yes" } else { "no" }
        );
        for f in &files {
            s.push_str(&format!("wrote {f}\n"));
        }
        if let Some(a) = &audit {
            s.push_str(&format!("display audit: {}\n", a));
        }
        s
    } else {
        json_text(&json!({
            "format": format::FORMAT_VERSION,
            "n": q1.n(),
            "k": q1.k(),
            "A_prime": q1.encoding().to_text(),
            "B": q2.encoding().to_text(),
            "ABt": product.to_text(),
            "ABt_is_identity": product.is_identity(),
            "cz_transversal": cz.verdict,
            "code_1": write_css(&q1),
            "code_2": write_css(&q2),
            "files": files,
            "display_audit": audit,
        }))
    };
    Ok(Output { text, status: 0 })
}

fn sweep_points(specs: &[String]) -> csspair::Result<Vec<Sweep>> {
    let sweeps: Vec<Sweep> = specs.iter().map(|s| parse_sweep(s)).collect::<csspair::Result<_>>()?;
    for (i, s) in sweeps.iter().enumerate() {
        if sweeps[..i].iter().any(|t| t.param == s.param) {
            return Err(Error::Config(format!("{} is swept twice", s.param.name())));
        }
    }
    Ok(sweeps)
}

fn run_simulate(
    config: &Path,
    sweeps: &[String],
    csv: bool,
    json_out: bool,
    allow: bool,
    jobs: Option<usize>,
    pretty: bool,
) -> csspair::Result<Output> {
    let mut cfg = ProtocolConfig::load(config)?;
    cfg.allow_non_transversal |= allow;
    if let Some(j) = jobs {
        cfg.jobs = j.max(1);
    }
    let sweeps = sweep_points(sweeps)?;
    // Cartesian product of all sweep axes, first axis varying slowest.
    let mut models = vec![cfg.model];
    for s in &sweeps {
        let mut next = Vec::with_capacity(models.len() * s.points.len());
        for m in &models {
            for &p in &s.points {
                next.push(m.with(s.param, p)?);
            }
        }
        models = next;
    }
    let mut reports = Vec::with_capacity(models.len());
    for model in models {
        let mut point = cfg.clone();
        point.model = model;
        let r = run_local_swapping(&point)?;
        // Later points reuse the seed drawn for the first one.
        cfg.seed = cfg.seed.or(r.seed);
        reports.push(r);
    }
    let as_csv = csv || (!sweeps.is_empty() && !json_out);
    let text = if as_csv {
        let mut s = String::from(ProtocolReport::csv_header());
        s.push('\n');
        for r in &reports {
            s.push_str(&r.csv_row());
            s.push('\n');
        }
        s
    } else if pretty {
        reports
            .iter()
            .map(|r| {
                format!(
                    "f1={} f2={} f3={} {}: fidelity {}{} (n={}, k={}, seed {})\n",
                    r.f1,
                    r.f2,
                    r.f3,
                    r.mode.as_str(),
                    r.logical_fidelity,
                    r.standard_error.map(|s| format!(" +- {s}")).unwrap_or_default(),
                    r.n,
                    r.k,
                    r.seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into())
                )
            })
            .collect()
    } else if sweeps.is_empty() {
        let mut s = reports[0].to_json();
        s.push('\n');
        s
    } else {
        json_text(&serde_json::to_value(&reports).expect("reports serialize"))
    };
    Ok(Output { text, status: 0 })
}

fn run_distance(path: &Path, pretty: bool) -> csspair::Result<Output> {
    let q: CssCode = load_css(path)?;
    let (d1, d2) = (q.c1().min_distance()?, q.c2().min_distance()?);
    let text = if pretty {
        format!(
            "[[{}, {}]] code: d(C1) = {d1}, d(C2) = {d2}, distance = {}\n",
            q.n(),
            q.k(),
            d1.min(d2)
        )
    } else {
        json_text(&json!({
            "format": format::FORMAT_VERSION,
            "n": q.n(),
            "k": q.k(),
            "d_C1": d1,
            "d_C2": d2,
            "distance": d1.min(d2),
        }))
    };
    Ok(Output { text, status: 0 })
}

fn run_find_encoding(a: &Path, b: &Path, pretty: bool) -> csspair::Result<Output> {
    let (qa, qb) = (load_css(a)?, load_css(b)?);
    let found = find_cnot_encoding(&qa, &qb);
    let text = match (&found, pretty) {
        (Some(m), true) => format!("shared representatives:\n{}", m.to_text()),
        (None, true) => "no shared representatives make CNOT transversal\n".to_string(),
        (m, false) => json_text(&json!({
            "format": format::FORMAT_VERSION,
            "found": m.is_some(),
            "encoding": m.as_ref().map(|m| m.to_text()),
        })),
    };
    Ok(Output {
        text,
        status: if found.is_some() { 0 } else { EXIT_FALSE },
    })
}

fn write_file(path: &Path, text: &str) -> csspair::Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn dispatch(cli: Cli) -> csspair::Result<Output> {
    let pretty = cli.pretty;
    let jobs = cli.jobs;
    if let Some(j) = jobs {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    match cli.command {
        Command::Check { code_a, code_b, gate, mode, oracle } => run_check(&code_a, &code_b, gate, mode, oracle, pretty),
        Command::CheckCnot { code_a, code_b, mode, oracle } => {
            run_check(&code_a, &code_b, GateArg::Cnot, mode, oracle, pretty)
        }
        Command::CheckCz { code_a, code_b, oracle } => {
            run_check(&code_a, &code_b, GateArg::Cz, ModeArg::Coset, oracle, pretty)
        }
        Command::Verify { code_a, code_b } => run_verify(&code_a, &code_b, pretty),
        Command::Mirror { g1_perp, g2_perp, display_a, display_b, display_g4_perp } => {
            let display = match (display_a, display_b, display_g4_perp) {
                (Some(a), Some(b), Some(g)) => Some((a, b, g)),
                _ => None,
            };
            run_mirror(&g1_perp, &g2_perp, cli.out.as_deref(), display, pretty)
        }
        Command::Simulate { config, sweep, csv, json, allow_non_transversal } => {
            run_simulate(&config, &sweep, csv, json, allow_non_transversal, jobs, pretty)
        }
        Command::Distance { code } => run_distance(&code, pretty),
        Command::FindEncoding { code_a, code_b } => run_find_encoding(&code_a, &code_b, pretty),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Mirror { .. } => None,
        _ => cli.out.clone(),
    };
    match dispatch(cli) {
        Ok(o) => {
            match out {
                Some(path) => {
                    if let Err(e) = write_file(&path, &o.text) {
                        eprintln!("error: {e}");
                        return ExitCode::from(EXIT_INPUT);
                    }
                }
                None => print!("{}", o.text),
            }
            ExitCode::from(o.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capacity() { EXIT_CAPACITY } else { EXIT_INPUT })
        }
    }
}
