use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gwa_core::gwa::Fault;
use gwa_core::polyring::set_degree_cap;
use gwa_core::rea::{rea_instance, reduce};
use gwa_core::repr::{chain_length, decompose, vn_module, Decomposition, WeightModule};
use gwa_core::spectrum::{
    ideal_includes, product_correspondence_report, stratum_ideal, t1_ring, t2_ring, t_ring, xn_ideal, HomIdealFamily,
    StratumDescriptor,
};
use gwa_core::uqsl2::{psi_alpha, pullback_matches, uqsl2_module};
use gwa_core::verify::{run_suite, Suite, VerifyOptions};
use gwa_core::wire::{decode_family, decode_module, decode_stratum, encode_elem, encode_family, encode_module};
use gwa_core::{CoefPoly, Error, QRat, Report};

#[derive(Parser)]
#[command(name = "gwa", version, about = "Exact computations in generalized Weyl algebras")]
struct Cli {
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Total degree cap for Groebner computations.
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text.
    #[arg(long, global = true)]
    text: bool,
    #[arg(long, global = true, hide = true)]
    inject_fault: Option<FaultArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    Zz,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression in u11, u12, u21, u22, u, t, d, x, y and q.
    Reduce { expr: String },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Build or analyse finite-dimensional modules.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Homogeneous ideals and the prime spectrum.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Gwa,
    Rea,
    Modules,
    Uqsl2,
    Spectrum,
    Controls,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Gwa => Suite::Gwa,
            SuiteArg::Rea => Suite::Rea,
            SuiteArg::Modules => Suite::Modules,
            SuiteArg::Uqsl2 => Suite::Uqsl2,
            SuiteArg::Spectrum => Suite::Spectrum,
            SuiteArg::Controls => Suite::Controls,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// The simple module V_n(u0).
    Simple {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        u0: String,
    },
    /// Pull back the n-dimensional simple U_q(sl_2) module along psi_alpha.
    Pullback {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
    },
    /// Decompose a module read from a JSON file.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum SpectrumCmd {
    /// The ideal generated by x^n in the reduced algebra.
    XnIdeal {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        pad: u32,
    },
    /// The homogeneous family of a stratum point.
    Stratum(StratumArgs),
    /// Whether the family in one file is contained in the family in another.
    Includes {
        #[arg(long = "P")]
        p: PathBuf,
        #[arg(long = "Q")]
        q: PathBuf,
    },
    /// Products of ideals of k[t^±] against products of the corresponding families.
    ProductCheck {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Args)]
struct StratumArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: Option<u32>,
    /// Generators; for T3 a single t - c, or nothing for the zero ideal.
    #[arg(long)]
    p: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "T1")]
    T1,
    #[value(name = "T2")]
    T2,
    #[value(name = "T3")]
    T3,
}

enum Failure {
    Input(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Wire(_)
            | Error::InvalidDescriptor(_)
            | Error::Shape(_)
            | Error::RingMismatch(_)
            | Error::WindowEmpty
            | Error::DivisionByZero
            | Error::ZeroU0
            | Error::InvalidCut(_)
            | Error::InfiniteDimension(_)
            | Error::NotChainType(_)
            | Error::NotInM(_)
            | Error::UNotInvertible => Failure::Input(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// What a command produced: a JSON value, its text rendering, and whether it counts as success.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let s = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn report_output(rep: &Report) -> Output {
    let failed = rep.checks.len() - rep.passed_count();
    let json = json!({ "passed": rep.passed_count(), "failed": failed, "details": rep.checks });
    let text = format!("{rep}{} passed, {failed} failed\n", rep.passed_count());
    Output { json, text, ok: rep.all_passed() }
}

fn module_text(m: &WeightModule) -> String {
    let mut out = format!("dim {}\n", m.dim());
    let vars = m.instance().ring().vars().to_vec();
    let names = vars.iter().map(String::as_str).chain(["x", "y"]);
    let mats = m.ring_actions().iter().chain([m.x(), m.y()]);
    for (name, mat) in names.zip(mats) {
        out.push_str(&format!("{name}:\n"));
        for row in mat.to_rows() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("  [{}]\n", cells.join(", ")));
        }
    }
    out
}

fn family_text(f: &HomIdealFamily) -> String {
    let (lo, hi) = f.window();
    let mut out = format!("{} on [{lo}, {hi}]\n", f.algebra());
    for (m, gens) in f.generators() {
        let g: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        out.push_str(&format!("  I_{m} = <{}>\n", g.join(", ")));
    }
    out
}

fn family_output(f: &HomIdealFamily) -> Output {
    Output::ok(encode_family(f), family_text(f))
}

fn scalar(s: &str) -> Result<QRat, Failure> {
    Ok(QRat::parse(s)?)
}

fn run_module(cmd: ModuleCmd) -> Result<Output, Failure> {
    match cmd {
        ModuleCmd::Simple { n, u0 } => {
            let m = vn_module(n, scalar(&u0)?)?;
            Ok(Output::ok(encode_module(&m), module_text(&m)))
        }
        ModuleCmd::Pullback { n, alpha } => {
            let a = scalar(&alpha)?;
            let m = psi_alpha(&a, &uqsl2_module(n)?)?;
            let (ok, c) = pullback_matches(&a, n)?;
            let json = json!({ "module": encode_module(&m), "match": ok, "dim": c.dim, "u0": c.u0().to_wire() });
            let text = format!("{}match {ok}: dim {}, u0 = {}\n", module_text(&m), c.dim, c.u0());
            Ok(Output::ok(json, text))
        }
        ModuleCmd::Decompose { input } => {
            let inst = rea_instance();
            let m = decode_module(&read_json(&input)?, &inst)?;
            match decompose(&m)? {
                Decomposition::Semisimple(parts) => {
                    let mut text = String::from("semisimple\n");
                    let mut summands = Vec::new();
                    for (w, k) in &parts {
                        let dim = chain_length(&inst, w)?;
                        text.push_str(&format!("  {k} x V at lowest weight {w}, dim {}\n", dim.unwrap_or(0)));
                        let coords: Vec<String> = w.coords().iter().map(QRat::to_wire).collect();
                        summands.push(json!({ "weight": coords, "dim": dim, "multiplicity": k }));
                    }
                    Ok(Output::ok(json!({ "semisimple": true, "summands": summands }), text))
                }
                Decomposition::NotSemisimple { witness } => {
                    let w: Vec<Vec<String>> = witness.iter().map(|v| v.iter().map(QRat::to_wire).collect()).collect();
                    let text = format!("not semisimple; witness submodule of dimension {}\n", witness.len());
                    Ok(Output::ok(json!({ "semisimple": false, "witness": w }), text))
                }
            }
        }
    }
}

fn parse_polys(ring: &std::sync::Arc<gwa_core::RingSpec>, src: &[String]) -> Result<Vec<CoefPoly>, Failure> {
    Ok(src.iter().map(|s| CoefPoly::parse(ring, s)).collect::<gwa_core::Result<_>>()?)
}

/// `t - c` with `c != 0`, or the zero ideal.
fn t3_point(p: &[String]) -> Result<Option<QRat>, Failure> {
    let tr = t_ring();
    let gens: Vec<CoefPoly> = parse_polys(&tr, p)?.into_iter().filter(|g| !g.is_zero()).collect();
    match gens.as_slice() {
        [] => Ok(None),
        [g] => {
            let t = CoefPoly::var(&tr, "t");
            let c = t.sub(g).as_constant();
            match c {
                Some(c) if !c.is_zero() => Ok(Some(c)),
                _ => Err(Failure::Input(format!("T3 needs t - c with c != 0, got {g}"))),
            }
        }
        _ => Err(Failure::Input("T3 takes at most one generator".into())),
    }
}

fn family_from_file(path: &PathBuf) -> Result<HomIdealFamily, Failure> {
    let v = read_json(path)?;
    if v.get("kind").is_some() {
        Ok(stratum_ideal(&decode_stratum(&v)?)?)
    } else {
        Ok(decode_family(&v)?)
    }
}

fn run_spectrum(cmd: SpectrumCmd) -> Result<Output, Failure> {
    match cmd {
        SpectrumCmd::XnIdeal { n, pad } => Ok(family_output(&xn_ideal(n, pad)?)),
        SpectrumCmd::Stratum(a) => {
            let s = match a.kind {
                Kind::T1 => StratumDescriptor::T1 { p: parse_polys(&t1_ring(), &a.p)? },
                Kind::T2 => StratumDescriptor::T2 { p: parse_polys(&t2_ring(), &a.p)? },
                Kind::T3 => {
                    let n = a.n.ok_or_else(|| Failure::Input("T3 needs --n".into()))?;
                    StratumDescriptor::T3 { n, c: t3_point(&a.p)? }
                }
            };
            Ok(family_output(&stratum_ideal(&s)?))
        }
        SpectrumCmd::Includes { p, q } => {
            let (fp, fq) = (family_from_file(&p)?, family_from_file(&q)?);
            let inc = ideal_includes(&fp, &fq)?;
            Ok(Output::ok(json!({ "includes": inc }), format!("{inc}\n")))
        }
        SpectrumCmd::ProductCheck { n, a, b } => {
            let tr = t_ring();
            let (a, b) = (CoefPoly::parse(&tr, &a)?, CoefPoly::parse(&tr, &b)?);
            Ok(report_output(&product_correspondence_report(n, &a, &b)?))
        }
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    if let Some(cap) = cli.degree_cap {
        set_degree_cap(cap);
    }
    match cli.command {
        Command::Reduce { expr } => {
            let a = reduce(&expr)?;
            let text = format!("{a}\n");
            Ok(Output::ok(json!({ "normal_form": encode_elem(&a), "text": a.to_string() }), text))
        }
        Command::Verify { suite } => {
            let fault = cli.inject_fault.map(|FaultArg::Zz| Fault::ZzShift);
            let opts = VerifyOptions { seed: cli.seed, fault };
            Ok(report_output(&run_suite(suite.into(), &opts)?))
        }
        Command::Module(m) => run_module(m),
        Command::Spectrum(s) => run_spectrum(s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = cli.text;
    match run(cli) {
        Ok(out) => {
            let body = if text {
                out.text
            } else {
                format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable"))
            };
            // a closed pipe on stdout is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
