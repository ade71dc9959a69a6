//! Command dispatch for the `flatsolv` binary.
//!
//! [`run`] never panics on user input and never exits the process; it
//! returns an [`Execution`] carrying the result envelope, the rendered
//! stdout text and the exit code.

use clap::{ArgGroup, Args, CommandFactory, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use flatsolv_core::arith::{cyclotomic_poly, euler_phi, hiller_phi};
use flatsolv_core::enumeration::{dimension_report, platycosm_table, DimensionReport, Platycosm};
use flatsolv_core::holonomy::{
    abelian_witness, holonomy_of_block, min_dim_solv, minimal_cyclic_witness, FiniteAbelianGroup,
};
use flatsolv_core::lattice::{build_lattice, DEFAULT_TOLERANCE};
use flatsolv_core::lie_model::{Block, SolvmanifoldSpec};
use flatsolv_core::spectrum::{admissible_pairs_dim5, Obstruction, RotationSpectrum};
use flatsolv_core::Error;

mod golden;

#[derive(Parser, Debug)]
#[command(
    name = "flatsolv",
    version,
    about = "Holonomy groups and lattices of flat solvmanifolds",
    after_help = "Spectra are written s=<center dim>;f=<p>/<q>,... e.g. \"s=1;f=1/4\".\n\
                  Exit codes: 0 ok, 2 obstruction, 1 error."
)]
struct Cli {
    /// Emit the result envelope as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Run the built-in golden self-test.
    #[arg(long)]
    seed_check: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler's totient φ(n).
    Phi { n: u64 },
    /// Hiller's additive totient Φ(n).
    HillerPhi { n: u64 },
    /// The n-th cyclotomic polynomial.
    Cyclotomic { n: u64 },
    /// Decide whether a spectrum admits a lattice.
    Check { spectrum: String },
    /// Holonomy group of the quotient by the canonical lattice.
    Holonomy { spectrum: String },
    /// Integer model E, conjugator P and residual.
    Lattice {
        spectrum: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Minimal dimension of a flat solvmanifold with holonomy Z_n.
    MinDim { n: u64 },
    /// Build a flat solvmanifold with a prescribed holonomy group.
    Construct(ConstructArgs),
    /// All holonomy groups in one dimension, with witnesses.
    Enumerate {
        #[arg(long)]
        dim: usize,
    },
    /// Admissible pairs of rotation angles in dimension 5.
    Pairs,
    /// The ten compact flat 3-manifolds.
    Platycosms,
}

#[derive(Args, Debug)]
#[group(skip)]
#[command(group(ArgGroup::new("target").required(true).args(["cyclic", "abelian"])))]
struct ConstructArgs {
    /// Cyclic holonomy Z_n, in minimal dimension.
    #[arg(long, value_name = "N")]
    cyclic: Option<u64>,
    /// Direct sum of cyclic groups, e.g. 2,4,6.
    #[arg(long, value_name = "D1,D2,...", value_delimiter = ',')]
    abelian: Option<Vec<u64>>,
    /// Pad to even dimension so the manifold is Kähler.
    #[arg(long)]
    kahler: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Obstruction,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Obstruction => 2,
            Status::Error => 1,
        }
    }
}

/// Envelope for every command.
#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

/// A finished invocation.
#[derive(Clone, Debug)]
pub struct Execution {
    pub result: CommandResult,
    /// What goes to stdout: JSON envelope or plain text.
    pub stdout: String,
    /// Diagnostics, one per line, for stderr.
    pub stderr: String,
}

impl Execution {
    pub fn exit_code(&self) -> i32 {
        self.result.status.exit_code()
    }
}

struct Output {
    status: Status,
    payload: Value,
    text: String,
    diagnostics: Vec<String>,
}

impl Output {
    fn ok(payload: Value, text: String) -> Self {
        Output {
            status: Status::Ok,
            payload,
            text,
            diagnostics: Vec::new(),
        }
    }

    fn error(message: String, usage: Option<String>) -> Self {
        let mut diagnostics = vec![message.clone()];
        diagnostics.extend(usage);
        Output {
            status: Status::Error,
            payload: json!({ "message": message }),
            text: String::new(),
            diagnostics,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_spectrum(text: &str) -> Result<RotationSpectrum, String> {
    text.parse::<RotationSpectrum>()
        .map_err(|e| format!("invalid spectrum {text:?}: {e}"))
}

fn obstruction(spectrum: &RotationSpectrum, ob: Obstruction) -> Output {
    Output {
        status: Status::Obstruction,
        payload: json!({ "spectrum": spectrum, "obstruction": ob }),
        text: format!("{spectrum}: no lattice\n{ob}\n"),
        diagnostics: vec![ob.to_string()],
    }
}

fn from_core(e: Error) -> Output {
    match e {
        Error::Obstruction(ob) => Output {
            status: Status::Obstruction,
            text: format!("{ob}\n"),
            diagnostics: vec![ob.to_string()],
            payload: json!({ "obstruction": ob }),
        },
        other => Output::error(other.to_string(), None),
    }
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let (output, json) = match Cli::try_parse_from(&argv) {
        Ok(cli) => (dispatch(&cli), cli.json),
        Err(e) => {
            // parsing failed, so look for the flag by hand
            let json = argv.iter().skip(1).any(|a| a == "--json");
            (parse_failure(&e), json)
        }
    };
    finish(output, json)
}

fn parse_failure(e: &clap::Error) -> Output {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let text = e.render().to_string();
            Output::ok(json!({ "help": text }), text)
        }
        _ => {
            let rendered = e.render().to_string();
            let message = rendered
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect::<Vec<_>>()
                .join(" ");
            Output::error(message, Some(Cli::command_usage()))
        }
    }
}

impl Cli {
    fn command_usage() -> String {
        Cli::command().render_usage().to_string()
    }
}

fn finish(output: Output, json: bool) -> Execution {
    let result = CommandResult {
        status: output.status,
        payload: output.payload,
        diagnostics: output.diagnostics,
    };
    let stdout = if json {
        let mut s = serde_json::to_string_pretty(&result).expect("serializable");
        s.push('\n');
        s
    } else {
        output.text
    };
    let stderr = result.diagnostics.iter().map(|d| format!("{d}\n")).collect();
    Execution {
        result,
        stdout,
        stderr,
    }
}

fn dispatch(cli: &Cli) -> Output {
    if cli.seed_check {
        if cli.command.is_some() {
            return Output::error("--seed-check takes no subcommand".into(), None);
        }
        return seed_check();
    }
    let Some(command) = &cli.command else {
        return Output::error("no subcommand given".into(), Some(Cli::command_usage()));
    };
    let result = match command {
        Command::Phi { n } => phi(*n),
        Command::HillerPhi { n } => hiller(*n),
        Command::Cyclotomic { n } => cyclotomic(*n),
        Command::Check { spectrum } => parse_spectrum(spectrum).map(|sp| check(&sp)),
        Command::Holonomy { spectrum } => parse_spectrum(spectrum).map(|sp| holonomy(&sp)),
        Command::Lattice { spectrum, tol } => parse_spectrum(spectrum).map(|sp| lattice(&sp, *tol)),
        Command::MinDim { n } => Ok(min_dim(*n)),
        Command::Construct(args) => Ok(construct(args)),
        Command::Enumerate { dim } => Ok(enumerate(*dim)),
        Command::Pairs => Ok(pairs()),
        Command::Platycosms => Ok(platycosms()),
    };
    result.unwrap_or_else(|message| Output::error(message, Some(Cli::command_usage())))
}

fn phi(n: u64) -> Result<Output, String> {
    if n == 0 {
        return Err("n must be positive".into());
    }
    let v = euler_phi(n);
    Ok(Output::ok(json!({ "n": n, "phi": v }), format!("φ({n}) = {v}\n")))
}

fn hiller(n: u64) -> Result<Output, String> {
    if n == 0 {
        return Err("n must be positive".into());
    }
    let v = hiller_phi(n);
    Ok(Output::ok(
        json!({ "n": n, "hiller_phi": v }),
        format!("Φ({n}) = {v}\n"),
    ))
}

fn cyclotomic(n: u64) -> Result<Output, String> {
    if n == 0 {
        return Err("n must be positive".into());
    }
    if n > 100_000 {
        return Err("n too large (limit 100000)".into());
    }
    let p = cyclotomic_poly(n);
    Ok(Output::ok(
        json!({ "n": n, "degree": p.degree(), "coefficients": p, "text": p.to_string() }),
        format!("Φ_{n}(x) = {p}\n"),
    ))
}

fn check(sp: &RotationSpectrum) -> Output {
    match sp.orbit_check() {
        Ok(cert) => {
            let orbits: Vec<String> = cert
                .orbits
                .iter()
                .map(|o| format!("Φ_{}^{}", o.q, o.multiplicity))
                .collect();
            let text = format!(
                "{sp}: lattice exists\ncharacteristic polynomial: {}\ncenter: {}, orbits: {}\n",
                cert.char_poly,
                cert.center_dim,
                if orbits.is_empty() { "none".to_string() } else { orbits.join(" ") }
            );
            Output::ok(json!({ "spectrum": sp, "certificate": cert }), text)
        }
        Err(ob) => obstruction(sp, ob),
    }
}

fn holonomy(sp: &RotationSpectrum) -> Output {
    match sp.orbit_check() {
        Ok(_) => match holonomy_of_block(sp) {
            Ok(g) => Output::ok(
                json!({ "spectrum": sp, "group": g, "dimension": sp.group_dim() }),
                format!("{sp}: holonomy {g} (dimension {})\n", sp.group_dim()),
            ),
            Err(e) => from_core(e),
        },
        Err(ob) => obstruction(sp, ob),
    }
}

fn lattice(sp: &RotationSpectrum, tol: f64) -> Output {
    if let Err(ob) = sp.orbit_check() {
        return obstruction(sp, ob);
    }
    match build_lattice(sp, tol) {
        Ok(lat) => {
            let text = format!(
                "{sp}: order {}\nE =\n{}\nP =\n{:.6}residual {:.3e} (tolerance {:.1e})\n{}\n",
                lat.order,
                lat.integer_model,
                lat.conjugator,
                lat.residual,
                lat.tolerance,
                lat.generators()
            );
            Output::ok(to_value(&lat), text)
        }
        Err(e) => from_core(e),
    }
}

fn min_dim(n: u64) -> Output {
    let (d, witness) = match (min_dim_solv(n), minimal_cyclic_witness(n)) {
        (Ok(d), Ok(w)) => (d, w),
        (Err(e), _) | (_, Err(e)) => return from_core(e),
    };
    let text = format!("minimal dimension for Z{n}: {d}\nwitness: {witness}\n");
    Output::ok(json!({ "n": n, "min_dim": d, "witness": witness }), text)
}

fn construct(args: &ConstructArgs) -> Output {
    let (group, spec) = if let Some(n) = args.cyclic {
        if n == 0 {
            return Output::error("cyclic order must be positive".into(), None);
        }
        let group = FiniteAbelianGroup::cyclic(n);
        let spec = if n == 1 {
            abelian_witness(&group, false)
        } else {
            match minimal_cyclic_witness(n) {
                Ok(w) => SolvmanifoldSpec::new(vec![Block::almost_abelian(w)]).expect("certified"),
                Err(e) => return from_core(e),
            }
        };
        (group, spec)
    } else {
        let orders = args.abelian.clone().unwrap_or_default();
        if orders.contains(&0) {
            return Output::error("cyclic orders must be positive".into(), None);
        }
        let group = FiniteAbelianGroup::from_cyclic_orders(orders);
        let spec = abelian_witness(&group, false);
        (group, spec)
    };
    let mut spec = spec;
    if args.kahler && spec.dim() % 2 == 1 {
        spec.push(Block::torus(1)).expect("torus block");
    }
    let text = format!("holonomy {group}\nwitness: {spec}\ndimension: {}\n", spec.dim());
    Output::ok(
        json!({
            "group": group,
            "witness": spec,
            "witness_text": spec.to_string(),
            "dimension": spec.dim(),
            "kahler": args.kahler,
        }),
        text,
    )
}

fn report_text(r: &DimensionReport) -> String {
    let mut s = format!("dimension {}\n", r.dim);
    for (label, map) in [("almost abelian", &r.almost_abelian), ("e(2) products", &r.products)] {
        if map.is_empty() {
            continue;
        }
        s.push_str(&format!("{label}:\n"));
        for (g, w) in map {
            s.push_str(&format!("  {:<8} {w}\n", g.to_string()));
        }
    }
    let all: Vec<String> = r.all_groups().iter().map(|g| g.to_string()).collect();
    s.push_str(&format!("all {}: {}\n", all.len(), all.join(", ")));
    s
}

fn enumerate(dim: usize) -> Output {
    match dimension_report(dim) {
        Ok(r) => {
            let text = report_text(&r);
            let mut payload = to_value(&r);
            payload["groups"] = to_value(&r.all_groups());
            Output::ok(payload, text)
        }
        Err(e) => from_core(e),
    }
}

fn pairs() -> Output {
    let pairs = admissible_pairs_dim5();
    let mut text = format!("{:<6} {:<6} {:>3} {:>3}  {:<14} {:<14} case\n", "f1", "f2", "m", "n", "cos 2πf1", "cos 2πf2");
    for p in &pairs {
        text.push_str(&format!(
            "{:<6} {:<6} {:>3} {:>3}  {:<14} {:<14} {}\n",
            p.first.to_string(),
            p.second.to_string(),
            p.m,
            p.n,
            p.cos_first.to_string(),
            p.cos_second.to_string(),
            p.case.number()
        ));
    }
    let rows: Vec<Value> = pairs
        .iter()
        .map(|p| {
            json!({
                "first": p.first,
                "second": p.second,
                "m": p.m,
                "n": p.n,
                "cos_first": p.cos_first.to_string(),
                "cos_second": p.cos_second.to_string(),
                "case": p.case.number(),
                "spectrum": p.spectrum(),
            })
        })
        .collect();
    Output::ok(json!({ "count": pairs.len(), "pairs": rows }), text)
}

fn platycosm_text(table: &[Platycosm]) -> String {
    let mut s = format!(
        "{:<4} {:<8} {:<9} {:<6} {:<5} {:<20} {:<11} witness\n",
        "name", "holonomy", "H1", "orient", "sym", "cosm", "solvmfd"
    );
    for p in table {
        s.push_str(&format!(
            "{:<4} {:<8} {:<9} {:<6} {:<5} {:<20} {:<11} {}\n",
            p.wolf_name,
            p.holonomy.to_string(),
            p.h1,
            if p.orientable { "yes" } else { "no" },
            p.symbol,
            p.cosm_name,
            if p.realizable { "yes" } else { "no" },
            p.witness.as_ref().map_or_else(|| p.note.to_string(), |w| w.to_string()),
        ));
    }
    s
}

fn platycosms() -> Output {
    let table = platycosm_table();
    Output::ok(json!({ "platycosms": table }), platycosm_text(&table))
}

fn seed_check() -> Output {
    let results = golden::run_all();
    let failed: Vec<&golden::CheckResult> = results.iter().filter(|r| !r.passed).collect();
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!(
            "{} {}{}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            if r.passed { String::new() } else { format!(": {}", r.detail) }
        ));
    }
    let payload = json!({ "checks": results, "passed": failed.is_empty() });
    if failed.is_empty() {
        Output::ok(payload, text)
    } else {
        Output {
            status: Status::Error,
            payload,
            text,
            diagnostics: failed.iter().map(|r| format!("{}: {}", r.name, r.detail)).collect(),
        }
    }
}
