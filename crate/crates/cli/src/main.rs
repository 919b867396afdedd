use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use spin9kit::clifford::{CliffordSystem, OctonionTable};
use spin9kit::forms::KForm;
use spin9kit::gstructure::{
    admissible_types_report, dimension_inequality_scan, kernel_image_check, minimal_pair, GStructure,
};
use spin9kit::homogeneous::{
    build_sphere_example, canonical_torsion, check_gamma_identity, check_naturally_reductive, gamma_from_brackets,
    ReductiveSpace,
};
use spin9kit::io::{self, SchemaError};
use spin9kit::rep::{decompose, rep_action, Space};
use spin9kit::torsion::{admissible_torsion_tol, classify_gamma, Admissibility};
use spin9kit::verify::{run_suite, Suite, SuiteOptions};
use spin9kit::Rational;

const OK: u8 = 0;
const VERIFY_FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "spin9kit", version, about = "Exact checks for Spin(9)-structures and skew-torsion G-structures")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Suppress stdout; the exit code carries the result.
    #[arg(long, global = true)]
    quiet: bool,
    /// Worker threads; 0 lets the runtime choose.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Octonion multiplication table `{"products": [[7 × 7]]}` replacing the standard one.
    #[arg(long, global = true, value_name = "FILE")]
    octonion_table: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its manifest.
    Verify {
        #[arg(long, default_value = "all", value_parser = ["clifford", "lemma1", "theorem1", "decompositions", "homogeneous", "gstructure", "all"])]
        suite: String,
        /// Include per-check wall-clock times (breaks byte-identical output).
        #[arg(long)]
        timings: bool,
    },
    /// Decompose a representation of spin(9) into irreducibles.
    Decompose {
        #[arg(long, value_parser = ["v16", "m", "spin9", "adjoint", "lambda3", "sym2", "d126", "v16-tensor-m", "v16-tensor-spin9", "v16-tensor-sym2", "v16-tensor-d126"])]
        rep: String,
    },
    /// Split Γ ∈ R^16 ⊗ m into its R16, P1, P2, P3 components.
    Classify {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Decide whether Γ admits skew torsion and recover T.
    Admissible {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        /// Write the torsion 3-form as KForm JSON.
        #[arg(long, value_name = "FILE")]
        emit_torsion: Option<PathBuf>,
        /// Treat component norms² up to this fraction as zero.
        #[arg(long, default_value = "0")]
        tolerance: String,
    },
    /// Natural reductivity, canonical torsion and Γ of a reductive space.
    Homogeneous(HomogeneousArgs),
    /// Θ maps, kernel/image comparison and admissible types for G ⊂ SO(n).
    Gstructure(GStructureArgs),
    /// Integer intervals allowed by the dimension inequality.
    ScanDimensions {
        #[arg(long, default_value_t = 32)]
        max_n: u64,
    },
    /// The nine Clifford matrices and the octonion table as JSON.
    ExportClifford,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct HomogeneousSource {
    #[arg(long, value_parser = ["sphere15"])]
    space: Option<String>,
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct HomogeneousArgs {
    #[command(flatten)]
    source: HomogeneousSource,
    /// |ξ| for the built-in sphere.
    #[arg(long, default_value_t = 1)]
    xi_scale: i64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSource {
    #[arg(long, value_parser = ["spin9", "g2", "spin7"])]
    group: Option<String>,
    #[arg(long, value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct GStructureArgs {
    #[command(flatten)]
    source: GroupSource,
    #[arg(long)]
    kernel_image: bool,
    #[arg(long)]
    types: bool,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<SchemaError> for Failure {
    fn from(e: SchemaError) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Out {
    json: bool,
    quiet: bool,
}

impl Out {
    fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) {
        if self.quiet {
            return;
        }
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
        } else {
            print!("{}", human());
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn table(cli: &Cli) -> Result<OctonionTable, Failure> {
    match &cli.octonion_table {
        None => Ok(OctonionTable::standard()),
        Some(p) => Ok(io::read_octonion_table(&read(p)?)?),
    }
}

/// Checked system, or exit 1 naming the first failing relation.
fn system(cli: &Cli) -> Result<Result<CliffordSystem, String>, Failure> {
    Ok(CliffordSystem::from_table(table(cli)?).map_err(|e| e.to_string()))
}

fn form_lines(t: &KForm) -> String {
    let j = t.to_json();
    if j.terms.is_empty() {
        return "  0\n".into();
    }
    j.terms
        .iter()
        .map(|term| {
            let idx: Vec<String> = term.idx.iter().map(|i| format!("e{i}")).collect();
            format!("  {}  {}\n", idx.join("∧"), term.c)
        })
        .collect()
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let out = Out { json: cli.json, quiet: cli.quiet };
    let sys = match &cli.command {
        Command::Verify { .. } | Command::ScanDimensions { .. } => None,
        _ => match system(cli)? {
            Ok(s) => Some(s),
            Err(e) => {
                eprintln!("{e}");
                return Ok(VERIFY_FAILED);
            }
        },
    };
    let sys = || sys.as_ref().expect("built for this command");
    match &cli.command {
        Command::Verify { suite, timings } => {
            let suite: Suite = suite.parse().map_err(Failure::Input)?;
            let opts = SuiteOptions { table: table(cli)?, seed: spin9kit::seed(), timings: *timings };
            let m = run_suite(suite, &opts);
            out.emit(&m, || m.table());
            if let Some(f) = m.first_failure() {
                eprintln!("first failure: {}", f.name);
            }
            Ok(if m.passed() { OK } else { VERIFY_FAILED })
        }
        Command::Decompose { rep } => {
            let space: Space = rep.parse().map_err(|e: spin9kit::rep::RepError| Failure::Input(e.to_string()))?;
            let rep = rep_action(sys(), space).map_err(|e| Failure::Internal(e.to_string()))?;
            let r = decompose(&rep).map_err(|e| Failure::Internal(e.to_string()))?;
            out.emit(&r, || {
                let mut s = format!("{}: total {}\n", space.name(), r.total);
                for c in &r.components {
                    let w: Vec<String> = c.weight.iter().map(ToString::to_string).collect();
                    s.push_str(&format!("  {} × dim {}  weight ({})\n", c.mult, c.dim, w.join(", ")));
                }
                s
            });
            Ok(OK)
        }
        Command::Classify { input } => {
            let gamma = io::read_gamma(&read(input)?)?;
            let r = classify_gamma(sys(), &gamma);
            out.emit(&r, || {
                format!(
                    "|Γ|² {}\n  R16 {}\n  P1  {}\n  P2  {}\n  P3  {}\nadmissible: {}\n",
                    r.norm_sqr, r.r16, r.p1, r.p2, r.p3, r.admissible
                )
            });
            Ok(OK)
        }
        Command::Admissible { input, emit_torsion, tolerance } => {
            let tol: Rational = tolerance.parse().map_err(|e| Failure::Input(format!("--tolerance: {e}")))?;
            if tol.signum() < 0 {
                return Err(Failure::Input("--tolerance must be nonnegative".into()));
            }
            let gamma = io::read_gamma(&read(input)?)?;
            match admissible_torsion_tol(sys(), &gamma, &tol) {
                Admissibility::Torsion(t) => {
                    if let Some(p) = emit_torsion {
                        let text = serde_json::to_string_pretty(&t.to_json()).expect("serializable");
                        fs::write(p, text + "\n").map_err(|e| Failure::Internal(format!("{}: {e}", p.display())))?;
                    }
                    out.emit(&json!({ "admissible": true, "torsion": t.to_json() }), || {
                        format!("admissible; torsion T = −2·Γ:\n{}", form_lines(&t))
                    });
                    Ok(OK)
                }
                Admissibility::Refused { r16, p3 } => {
                    out.emit(&json!({ "admissible": false, "r16": r16, "p3": p3 }), || {
                        format!("not admissible: R16 part norm² {r16}, P3 part norm² {p3}\n")
                    });
                    Ok(VERIFY_FAILED)
                }
            }
        }
        Command::Homogeneous(args) => homogeneous(sys(), args, &out),
        Command::Gstructure(args) => gstructure(sys(), args, &out),
        Command::ScanDimensions { max_n } => {
            if *max_n < 2 {
                return Err(Failure::Input("--max-n must be at least 2".into()));
            }
            let rows = dimension_inequality_scan(*max_n);
            let minimal = minimal_pair(&rows);
            out.emit(&json!({ "rows": rows, "minimal_pair": minimal }), || {
                let mut s = String::new();
                for r in &rows {
                    let range = if r.nonempty { format!("[{}, {}]", r.lower, r.upper) } else { "empty".into() };
                    s.push_str(&format!("n = {:>3}  {}\n", r.n, range));
                }
                match minimal {
                    Some((n, g)) => s.push_str(&format!("minimal pair: n = {n}, dim g = {g}\n")),
                    None => s.push_str("no nonempty interval\n"),
                }
                s
            });
            Ok(OK)
        }
        Command::ExportClifford => {
            let b = sys().bundle();
            if !cli.quiet {
                println!("{}", serde_json::to_string_pretty(&b).expect("serializable"));
            }
            Ok(OK)
        }
    }
}

fn homogeneous(sys: &CliffordSystem, args: &HomogeneousArgs, out: &Out) -> Result<u8, Failure> {
    let sp: ReductiveSpace = match (&args.source.space, &args.source.file) {
        (Some(_), _) => {
            if !(1..=64).contains(&args.xi_scale) {
                return Err(Failure::Input("--xi-scale must lie in 1..=64".into()));
            }
            build_sphere_example(sys, args.xi_scale).map_err(|e| Failure::Internal(e.to_string()))?
        }
        (None, Some(p)) => io::read_space(&read(p)?)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let (jacobi_bad, jacobi_count) = sp.check_jacobi();
    let nr = check_naturally_reductive(&sp);
    let mut report = json!({
        "dim_h": sp.dim_h,
        "dim_n": sp.dim_n,
        "jacobi": { "ok": jacobi_bad.is_none(), "triples": jacobi_count, "violation": jacobi_bad },
        "naturally_reductive": nr,
    });
    let mut text = format!(
        "dim h {}, dim n {}\nJacobi: {} ({} triples)\nnaturally reductive: {}\n",
        sp.dim_h,
        sp.dim_n,
        if jacobi_bad.is_none() { "ok" } else { "violated" },
        jacobi_count,
        nr.naturally_reductive
    );
    let mut ok = jacobi_bad.is_none() && nr.naturally_reductive;
    if let Some(v) = nr.violation {
        text.push_str(&format!("  violated at basis triple {v:?}\n"));
    }
    if nr.naturally_reductive {
        let t = canonical_torsion(&sp).map_err(|e| Failure::Internal(e.to_string()))?;
        text.push_str(&format!("canonical torsion T^can:\n{}", form_lines(&t)));
        report["torsion"] = serde_json::to_value(t.to_json()).expect("serializable");
        if sp.identification.is_some() {
            match gamma_from_brackets(sys, &sp).and_then(|g| Ok((g, check_gamma_identity(sys, &sp)?))) {
                Ok((gamma, id)) => {
                    let c = classify_gamma(sys, &gamma);
                    text.push_str(&format!(
                        "Γ: R16 {}, P1 {}, P2 {}, P3 {} (admissible: {})\nΓ = −½T^can as 3-forms: {}; entrywise: {}\n",
                        c.r16, c.p1, c.p2, c.p3, c.admissible, id.as_three_form, id.entrywise
                    ));
                    ok &= c.admissible && id.as_three_form;
                    report["gamma"] = serde_json::to_value(&c).expect("serializable");
                    report["gamma_identity"] = serde_json::to_value(&id).expect("serializable");
                }
                Err(e) => {
                    text.push_str(&format!("Γ: {e}\n"));
                    report["gamma_error"] = json!(e.to_string());
                    ok = false;
                }
            }
        }
    }
    report["ok"] = json!(ok);
    out.emit(&report, || text);
    Ok(if ok { OK } else { VERIFY_FAILED })
}

fn gstructure(sys: &CliffordSystem, args: &GStructureArgs, out: &Out) -> Result<u8, Failure> {
    let gs = match (&args.source.group, &args.source.file) {
        (Some(g), _) => GStructure::builtin(g, sys).map_err(|e| Failure::Internal(e.to_string()))?,
        (None, Some(p)) => io::read_group(&read(p)?, "custom")?,
        (None, None) => unreachable!("clap requires a source"),
    };
    let checks = gs.check();
    let mut ok = checks.ok(gs.n);
    let mut report = json!({ "group": gs.label, "n": gs.n, "structure": checks });
    let mut text = format!(
        "{}: n {}, dim g {}, dim m {}\n  closed {}, g ⊥ m {}, [g,m] ⊆ m {}\n",
        gs.label, gs.n, checks.dim_g, checks.dim_m, checks.closed, checks.orthogonal, checks.g_preserves_m
    );
    if args.kernel_image {
        let k = kernel_image_check(&gs, spin9kit::seed());
        text.push_str(&format!(
            "kernel/image: dim Λ³ {}, rank Θ {}, dim ker(Ψ⊕Φ) {}, composition zero {}, equal {}\n",
            k.lambda3_dim, k.rank_theta, k.kernel_dim, k.composition_zero, k.equal
        ));
        ok &= k.equal;
        report["kernel_image"] = serde_json::to_value(&k).expect("serializable");
    }
    if args.types {
        let r = admissible_types_report(&gs, sys, spin9kit::seed());
        text.push_str(&format!(
            "im Θ1: {} of {} (excluded {}); conformal type inside: {}\n",
            r.image_dim, r.total_dim, r.excluded_dim, r.conformal_in_image
        ));
        for c in &r.components {
            text.push_str(&format!("  {:<12} dim {:>4}  in image {:>4}\n", c.name, c.dim, c.in_image));
        }
        report["types"] = serde_json::to_value(&r).expect("serializable");
    }
    out.emit(&report, || text);
    Ok(if ok { OK } else { VERIFY_FAILED })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("internal error: {e}");
            return ExitCode::from(INTERNAL);
        }
    }
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("malformed input: {msg}");
            ExitCode::from(BAD_INPUT)
        }
        Ok(Err(Failure::Internal(msg))) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(INTERNAL)
        }
        Err(_) => ExitCode::from(INTERNAL),
    }
}
