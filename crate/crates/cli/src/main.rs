//! `ht-groth`: command-line front end for the htgroth calculator.

use clap::{Parser, Subcommand, ValueEnum};
use htgroth::cohomology::{
    coh_intermediate, coh_shriek, rl_hi_balance, strong_congruence_filter, torsion_detect,
    torsion_detect_with_profile, BalanceSetup, NONDEG_AUX,
};
use htgroth::diagrams::{m_support, n_support, superpose, DiagramSupport, Kind, LocalComponent, Superposition};
use htgroth::io;
use htgroth::jl_red::{red_leibniz, red_tau, Tau};
use htgroth::label::Factor;
use htgroth::modl::{rl_division_rep, rl_speh, rl_steinberg, tower_rank, ModlCollapse, TowerLevel};
use htgroth::render::{self, Format};
use htgroth::segments::ladder_cuts;
use htgroth::verify::run_suites;
use htgroth::{CuspidalLabel, Cusps, GrothElement, IrreducibleLabel, Multisegment};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ht-groth", version, about = "Harris-Taylor local system combinatorics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramKind {
    M,
    N,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Extension {
    Shriek,
    Intermediate,
}

#[derive(Subcommand)]
enum Cmd {
    /// Support of m_{s,t} or n_{s,t}, or a superposition with --blocks.
    Diagram {
        #[arg(long, value_enum)]
        kind: DiagramKind,
        #[arg(long)]
        s: u32,
        /// Ignored when --blocks is given.
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Comma-separated t values of blocks on one line.
        #[arg(long, value_delimiter = ',')]
        blocks: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Mod-l reduction of a Speh or Steinberg label, of a D^x-representation,
    /// or collapse of a Grothendieck element onto mod-l classes.
    Reduce {
        #[arg(long, conflicts_with_all = ["division", "input"])]
        label: Option<String>,
        /// Cuspidal id of the reduction (with --label).
        #[arg(long, default_value = "rho")]
        target: String,
        /// m_tau of a D^x-representation.
        #[arg(long, conflicts_with = "input")]
        division: Option<u32>,
        #[arg(long, default_value = "iota")]
        iota: String,
        /// Grothendieck element JSON (path or inline).
        #[arg(long)]
        input: Option<String>,
        /// Lift relation id=class, repeatable.
        #[arg(long)]
        lift: Vec<String>,
        #[arg(long, default_value_t = 0)]
        epsilon: u64,
    },
    /// Jacquet cuts of a ladder.
    Jacquet {
        #[arg(long, conflicts_with = "multisegment")]
        label: Option<String>,
        /// `[[id, start_numerator, length], ...]`
        #[arg(long)]
        multisegment: Option<String>,
        #[arg(long)]
        left_rank: u64,
    },
    /// red_tau of a Grothendieck element.
    Red {
        #[arg(long, conflicts_with = "input")]
        label: Option<String>,
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value = "pi")]
        cusp: String,
        #[arg(long)]
        r: u32,
        /// Compute through the Leibniz rule instead of the joint cuts.
        #[arg(long)]
        leibniz: bool,
    },
    /// Cohomology table of a profile at stratum r.
    Cohomology {
        #[arg(long)]
        profile: String,
        #[arg(long)]
        cusp: String,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "shriek")]
        extension: Extension,
    },
    /// Mod-l balance constraints between levels u and u'.
    Balance {
        #[arg(long)]
        sc: String,
        #[arg(long, allow_hyphen_values = true)]
        u: i32,
        #[arg(long)]
        u2: i32,
        #[arg(long)]
        pi_u: String,
        #[arg(long)]
        pi_u2: String,
        #[arg(long)]
        profile_u: String,
        #[arg(long)]
        profile_u2: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        r2: u32,
        #[arg(long, default_value = NONDEG_AUX)]
        marker: String,
    },
    /// Torsion certificate for a stratum r' at level u'.
    Torsion {
        #[arg(long)]
        sc: String,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        u2: i32,
        #[arg(long)]
        r2: u64,
        #[arg(long)]
        profile: Option<String>,
    },
    /// Run invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the six reference figures as SVG.
    Figures {
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Core(htgroth::Error),
    Io(String),
    Suites(String),
}

impl From<htgroth::Error> for Failure {
    fn from(e: htgroth::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(htgroth::Error::Parse(_)) => 2,
            Failure::Core(htgroth::Error::Precondition(_)) => 3,
            Failure::Io(_) | Failure::Suites(_) => 1,
        }
    }

    fn record(&self) -> Value {
        let (kind, message) = match self {
            Failure::Core(e) => (e.kind(), e.to_string()),
            Failure::Io(m) => ("io", m.clone()),
            Failure::Suites(m) => ("verify", m.clone()),
        };
        json!({ "error": kind, "message": message })
    }
}

type Out = Result<String, Failure>;

/// Inline JSON when the argument starts with `{` or `[`, else a file path.
fn load(arg: &str) -> Result<String, Failure> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::Io(format!("{arg}: {e}")))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

fn superposition_json(sup: &Superposition) -> Value {
    Value::Array(
        sup.iter()
            .map(|(&(r, i), cs)| json!({ "r": r, "i": i, "contributions": cs }))
            .collect(),
    )
}

fn diagram(kind: DiagramKind, s: u32, t: u32, blocks: Option<Vec<u32>>, format: OutFormat) -> Out {
    let kind = match kind {
        DiagramKind::M => Kind::M,
        DiagramKind::N => Kind::N,
    };
    if s == 0 || t == 0 {
        return Err(htgroth::Error::pre("s and t must be positive").into());
    }
    if let Some(ts) = blocks {
        if ts.contains(&0) {
            return Err(htgroth::Error::pre("block t values must be positive").into());
        }
        let pi = CuspidalLabel::unit("pi");
        let sup = superpose(&LocalComponent::on_line(&pi, s, &ts), &pi, kind);
        let title = format!("superposition s = {s}, t = {ts:?}");
        return Ok(match format {
            OutFormat::Json => pretty(&superposition_json(&sup)),
            OutFormat::Ascii => render::render_superposition(&sup, &title, Format::Ascii),
            OutFormat::Svg => render::render_superposition(&sup, &title, Format::Svg),
        });
    }
    let d: DiagramSupport = match kind {
        Kind::M => m_support(s, t),
        Kind::N => n_support(s, t),
    };
    Ok(match format {
        OutFormat::Json => serde_json::to_string_pretty(&d).expect("plain data"),
        OutFormat::Ascii => render::render_support(&d, Format::Ascii),
        OutFormat::Svg => render::render_support(&d, Format::Svg),
    })
}

fn parse_lifts(lifts: &[String]) -> Result<Vec<(String, String)>, Failure> {
    lifts
        .iter()
        .map(|l| {
            l.split_once('=')
                .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                .ok_or_else(|| htgroth::Error::parse(format!("bad lift {l:?}, expected id=class")).into())
        })
        .collect()
}

fn reduce(
    label: Option<String>,
    target: &str,
    division: Option<u32>,
    iota: &str,
    input: Option<String>,
    lift: &[String],
    epsilon: u64,
) -> Out {
    let x = if let Some(text) = label {
        let lab = IrreducibleLabel::parse(&text, &Cusps::new())?;
        let target = CuspidalLabel::new(target, 1, 1)?;
        let is_segment = matches!(lab.factors(), [Factor::Seg(m)] if m.segments().len() == 1);
        if is_segment {
            rl_steinberg(&lab, &target)?
        } else {
            rl_speh(&lab, &target)?
        }
    } else if let Some(m) = division {
        rl_division_rep(m, iota)?
    } else if let Some(inp) = input {
        let x = io::parse_groth(&load(&inp)?)?;
        let mut c = ModlCollapse::new(epsilon);
        for (id, class) in parse_lifts(lift)? {
            c = c.lift(&id, CuspidalLabel::new(&class, 1, 1)?);
        }
        c.collapse(&x)
    } else {
        return Err(htgroth::Error::parse("one of --label, --division, --input is required").into());
    };
    Ok(io::groth_to_json(&x))
}

fn jacquet(label: Option<String>, multisegment: Option<String>, left_rank: u64) -> Out {
    let cusps = Cusps::new();
    let m: Multisegment = match (label, multisegment) {
        (Some(text), _) => match IrreducibleLabel::parse(&text, &cusps)?.factors() {
            [Factor::Seg(m)] => m.clone(),
            _ => return Err(htgroth::Error::pre("--label must be a single multisegment").into()),
        },
        (None, Some(js)) => io::parse_multisegment(&load(&js)?, &cusps)?,
        (None, None) => return Err(htgroth::Error::parse("--label or --multisegment is required").into()),
    };
    let cuts = ladder_cuts(&m, left_rank)?;
    let out: Vec<Value> = cuts
        .iter()
        .map(|c| {
            json!({
                "k": c.k,
                "a1": serde_json::from_str::<Value>(&io::multisegment_to_json(&c.a1)).expect("valid"),
                "a2": serde_json::from_str::<Value>(&io::multisegment_to_json(&c.a2)).expect("valid"),
            })
        })
        .collect();
    Ok(pretty(&Value::Array(out)))
}

fn red(label: Option<String>, input: Option<String>, cusp: &str, r: u32, leibniz: bool) -> Out {
    let x: GrothElement = match (label, input) {
        (Some(text), _) => GrothElement::of_label(IrreducibleLabel::parse(&text, &Cusps::new())?),
        (None, Some(inp)) => io::parse_groth(&load(&inp)?)?,
        (None, None) => return Err(htgroth::Error::parse("--label or --input is required").into()),
    };
    let cusp = x
        .keys()
        .flat_map(|t| t.label.factors().iter().filter_map(|f| f.line().cloned()))
        .find(|c| c.id() == cusp)
        .map_or_else(|| CuspidalLabel::new(cusp, 1, 1), Ok)?;
    let tau = Tau { cusp, r };
    let out = if leibniz { red_leibniz(&tau, &x) } else { red_tau(&tau, &x) };
    Ok(io::red_to_json(&out))
}

fn cohomology(profile: &str, cusp: &str, r: u32, ext: Extension) -> Out {
    let (p, cusps) = io::parse_profile(&load(profile)?)?;
    let pi = cusps.resolve(cusp)?;
    let t = match ext {
        Extension::Shriek => coh_shriek(&p, &pi, r),
        Extension::Intermediate => coh_intermediate(&p, &pi, r),
    };
    Ok(io::table_to_json(&t))
}

#[allow(clippy::too_many_arguments)]
fn balance(
    sc: &str,
    u: i32,
    u2: i32,
    pi_u: &str,
    pi_u2: &str,
    profile_u: &str,
    profile_u2: &str,
    r: u32,
    r2: u32,
    marker: &str,
) -> Out {
    let sc = io::parse_supercuspidal(&load(sc)?)?;
    let (pu, cu) = io::parse_profile(&load(profile_u)?)?;
    let (pu2, cu2) = io::parse_profile(&load(profile_u2)?)?;
    let resolve = |cusps: &Cusps, id: &str, level: i32| -> Result<CuspidalLabel, Failure> {
        let c = cusps.resolve(id)?;
        if c.g() == 1 {
            Ok(CuspidalLabel::new(id, tower_rank(&TowerLevel::new(sc.clone(), level)?) as u32, c.e_pi())?)
        } else {
            Ok(c)
        }
    };
    let a = resolve(&cu, pi_u, u)?;
    let b = resolve(&cu2, pi_u2, u2)?;
    let setup = BalanceSetup::new(sc.clone(), u, u2, a, b)?;
    let cs = rl_hi_balance(&pu, &pu2, &setup, r, r2)?;
    let certs = strong_congruence_filter(&cs, (&pu, &pu2), marker);
    Ok(pretty(&json!({
        "supercuspidal": serde_json::from_str::<Value>(&io::supercuspidal_to_json(&sc)).expect("valid"),
        "u": u,
        "u_prime": u2,
        "r": r,
        "r_prime": r2,
        "all_satisfied": cs.iter().all(|c| c.is_satisfied()),
        "constraints": cs.iter().map(io::constraint_value).collect::<Vec<_>>(),
        "certificates": certs.iter().map(io::certificate_value).collect::<Vec<_>>(),
    })))
}

fn torsion(sc: &str, d: u64, u2: i32, r2: u64, profile: Option<String>) -> Out {
    let sc = io::parse_supercuspidal(&load(sc)?)?;
    let cert = match profile {
        Some(p) => {
            let (p, _) = io::parse_profile(&load(&p)?)?;
            torsion_detect_with_profile(d, &sc, u2, r2, &p)?
        }
        None => torsion_detect(d, &sc, u2, r2)?,
    };
    Ok(serde_json::to_string_pretty(&cert).expect("plain data"))
}

fn verify(suite: &str, max: u32, seed: u64) -> Out {
    let reports = run_suites(suite, max, seed)?;
    let ok = reports.iter().all(|r| r.passed());
    let text = serde_json::to_string_pretty(&reports).expect("plain data");
    if ok {
        Ok(text)
    } else {
        emit(&text);
        let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.as_str()).collect();
        Err(Failure::Suites(format!("failed suites: {}", failed.join(", "))))
    }
}

fn figures(out: &PathBuf) -> Out {
    std::fs::create_dir_all(out).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
    let mut written = Vec::new();
    for (name, svg) in render::figures() {
        let path = out.join(&name);
        std::fs::write(&path, svg).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        written.push(path.display().to_string());
    }
    Ok(pretty(&json!({ "written": written })))
}

fn configure_threads() {
    if let Some(n) = std::env::var("HT_GROTH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Diagram { kind, s, t, blocks, format } => diagram(kind, s, t, blocks, format),
        Cmd::Reduce { label, target, division, iota, input, lift, epsilon } => {
            reduce(label, &target, division, &iota, input, &lift, epsilon)
        }
        Cmd::Jacquet { label, multisegment, left_rank } => jacquet(label, multisegment, left_rank),
        Cmd::Red { label, input, cusp, r, leibniz } => red(label, input, &cusp, r, leibniz),
        Cmd::Cohomology { profile, cusp, r, extension } => cohomology(&profile, &cusp, r, extension),
        Cmd::Balance { sc, u, u2, pi_u, pi_u2, profile_u, profile_u2, r, r2, marker } => {
            balance(&sc, u, u2, &pi_u, &pi_u2, &profile_u, &profile_u2, r, r2, &marker)
        }
        Cmd::Torsion { sc, d, u2, r2, profile } => torsion(&sc, d, u2, r2, profile),
        Cmd::Verify { suite, max, seed } => verify(&suite, max, seed),
        Cmd::Figures { out } => figures(&out),
    }
}

/// Print to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{}", text.trim_end());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.record());
            ExitCode::from(f.code())
        }
    }
}
