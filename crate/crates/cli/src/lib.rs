//! Batch front end: each verb returns a [`RunResult`] whose rendering is stable and
//! deterministic.
//!
//! Output grammar:
//! ```text
//! <status>  <headline>
//!   <payload line>
//!   ...
//! ```
//! `status` is `ok`, `fail` or `error`. Scalars use the exact-scalar grammar; lines starting
//! with `approx` carry a floating-point diagnostic only.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use qinv_core::heisenberg::{beads_evaluate, fock_character, pentagon_check, pivotal_check, HeisenbergDouble};
use qinv_core::hopf::{
    check_axioms, load_structure_constants, make_exterior, make_group_algebra, make_uq_borel, parse_group_table,
    AxiomReport, HopfMonoid,
};
use qinv_core::integrals::{solve_integrals, verify_integral_lemmas};
use qinv_core::invariant::evaluate;
use qinv_core::ograph::{builtin, parse_ograph, random_walk, replay, OGraph, WalkStep};
use qinv_core::scalar::Scalar;

#[derive(Debug, Parser)]
#[command(name = "qinv", about = "Exact invariants of integral normal o-graphs")]
pub struct Cli {
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the Hopf monoid axiom suite.
    Check { algebra: String },
    /// Solve for integrals, cointegrals and group-likes, and verify their lemmas.
    Integrals { algebra: String },
    /// Evaluate Z on a diagram (a path or a builtin name: s3, l21, lens(p)).
    Invariant {
        diagram: String,
        algebra: String,
        /// "tensor" (default) or "heisenberg".
        #[arg(long, default_value = "tensor")]
        via: String,
    },
    /// Pentagon, pivotal and Fock character checks in the Heisenberg double.
    Pentagon { algebra: String },
    /// Random walk through moves, checking that Z never changes.
    Fuzz {
        diagram: String,
        algebra: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub command: String,
    pub status: Status,
    pub headline: String,
    pub payload: Vec<String>,
    /// Not part of the rendering, which must be byte-identical across runs.
    pub wall: Duration,
}

impl RunResult {
    pub fn render(&self) -> String {
        let mut s = format!("{}  {}\n", self.status, self.headline);
        for l in &self.payload {
            s.push_str("  ");
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}

#[derive(Debug)]
struct Outcome {
    status: Status,
    headline: String,
    payload: Vec<String>,
}

type CmdResult = Result<Outcome, String>;

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

/// Resolves "group:<table file>", "uq:<n>", "ext:<d>" or "file:<path>".
pub fn load_algebra(spec: &str) -> Result<HopfMonoid, String> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| format!("unknown algebra spec {spec:?}"))?;
    let num = |a: &str| a.parse::<usize>().map_err(|_| format!("bad number in algebra spec {spec:?}"));
    match kind {
        "group" => {
            let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
            make_group_algebra(&parse_group_table(&text).map_err(err)?).map_err(err)
        }
        "uq" => make_uq_borel(num(arg)?).map_err(err),
        "ext" => make_exterior(num(arg)?).map_err(err),
        "file" => {
            let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
            load_structure_constants(&text).map_err(err)
        }
        _ => Err(format!("unknown algebra spec {spec:?}")),
    }
}

/// A builtin name, or else a path to a diagram file.
pub fn load_diagram(name: &str) -> Result<OGraph, String> {
    if let Ok(g) = builtin(name) {
        return Ok(g);
    }
    let path = PathBuf::from(name);
    if !path.exists() {
        return Err(format!("{name}: neither a builtin diagram nor a file"));
    }
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{name}: {e}"))?;
    parse_ograph(&text).map_err(err)
}

fn approx(z: &Scalar) -> String {
    let c = z.embed_complex();
    let clean = |x: f64| if x.abs() < 5e-11 { 0.0 } else { x };
    format!("approx {:.10} {:+.10}i", clean(c.re), clean(c.im))
}

fn report_lines(r: &AxiomReport) -> Vec<String> {
    r.checks
        .iter()
        .map(|c| match (&c.holds, &c.witness) {
            (true, _) => format!("pass {}", c.name),
            (false, Some(w)) => format!("FAIL {} witness={w:?}", c.name),
            (false, None) => format!("FAIL {}", c.name),
        })
        .collect()
}

/// Renders a coordinate vector with every entry in the algebra's field.
fn vector(h: &HopfMonoid, v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| h.field().coerce(x).unwrap_or_else(|_| x.clone()).to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn cmd_check(algebra: &str) -> CmdResult {
    let h = load_algebra(algebra)?;
    let r = check_axioms(&h);
    let held = r.checks.iter().filter(|c| c.holds).count();
    Ok(Outcome {
        status: if r.all_hold() { Status::Ok } else { Status::Fail },
        headline: format!("{} of {} identities hold for {}", held, r.checks.len(), h.name()),
        payload: report_lines(&r),
    })
}

fn cmd_integrals(algebra: &str) -> CmdResult {
    let h = load_algebra(algebra)?;
    let data = solve_integrals(&h).map_err(err)?;
    let r = verify_integral_lemmas(&h, &data);
    let mut payload = vec![
        format!("mu_R = {}", vector(&h, &data.mu_r)),
        format!("e_R = {}", vector(&h, &data.e_r)),
        format!("mu_L = {}", vector(&h, &data.mu_l)),
        format!("e_L = {}", vector(&h, &data.e_l)),
        format!("a = {}", vector(&h, &data.a)),
        format!("alpha = {}", vector(&h, &data.alpha)),
        format!("q = {}", data.q),
    ];
    payload.extend(report_lines(&r));
    Ok(Outcome {
        status: if r.all_hold() { Status::Ok } else { Status::Fail },
        headline: format!("q = {}", data.q),
        payload,
    })
}

fn cmd_invariant(diagram: &str, algebra: &str, via: &str) -> CmdResult {
    let g = load_diagram(diagram)?;
    let h = load_algebra(algebra)?;
    let z = match via {
        "tensor" => evaluate(&g, &h).map_err(err)?,
        "heisenberg" => beads_evaluate(&g, &h).map_err(err)?,
        _ => return Err(format!("unknown evaluation path {via:?}; use tensor or heisenberg")),
    };
    Ok(Outcome {
        status: Status::Ok,
        headline: format!("Z = {z}"),
        payload: vec![approx(&z), format!("via {via}"), format!("crossings {}", g.crossing_count())],
    })
}

fn cmd_pentagon(algebra: &str) -> CmdResult {
    let h = load_algebra(algebra)?;
    let hd = HeisenbergDouble::new(&h);
    let pent = pentagon_check(&h);
    let piv = pivotal_check(&hd);
    let (_, cert) = fock_character(&hd);
    let line = |ok: bool, name: &str| format!("{} {name}", if ok { "pass" } else { "FAIL" });
    let payload = vec![
        line(pent, "pentagon T12 T13 T23 = T23 T12"),
        line(piv.twisted_central, "pivotal G x = Theta^2(x) G"),
        line(piv.fock_is_s2_dual, "pivotal rho(G) = (S^2)*"),
        line(cert.kills_commutators, "character kills commutators"),
        format!("{} commutator codimension {}", if cert.codimension == 1 { "pass" } else { "FAIL" }, cert.codimension),
    ];
    let all = pent && piv.holds() && cert.is_isomorphism();
    Ok(Outcome {
        status: if all { Status::Ok } else { Status::Fail },
        headline: format!("Heisenberg double of {} (dim {})", h.name(), hd.dim()),
        payload,
    })
}

/// Drops steps from a failing trace while it still replays and still changes Z.
fn minimize(g: &OGraph, h: &HopfMonoid, z0: &Scalar, mut trace: Vec<WalkStep>) -> Vec<WalkStep> {
    let fails = |t: &[WalkStep]| match replay(g, t) {
        Ok(end) => evaluate(&end, h).map_or(true, |z| &z != z0),
        Err(_) => false,
    };
    let mut i = 0;
    while i < trace.len() {
        let mut shorter = trace.clone();
        shorter.remove(i);
        if fails(&shorter) {
            trace = shorter;
        } else {
            i += 1;
        }
    }
    trace
}

fn cmd_fuzz(diagram: &str, algebra: &str, steps: usize, seed: u64) -> CmdResult {
    let g = load_diagram(diagram)?;
    let h = load_algebra(algebra)?;
    let z0 = evaluate(&g, &h).map_err(err)?;
    let (_, trace) = random_walk(&g, steps, seed);
    let mut payload = Vec::with_capacity(steps + 1);
    payload.push(approx(&z0));
    let mut cur = g.clone();
    for (k, step) in trace.iter().enumerate() {
        if let Some(site) = &step.site {
            cur = replay(&cur, std::slice::from_ref(step)).map_err(err)?;
            let z = evaluate(&cur, &h).map_err(err)?;
            if z != z0 {
                let minimal = minimize(&g, &h, &z0, trace[..=k].to_vec());
                payload.push(format!("step {} {site} -> {} crossings, Z = {z}", k + 1, step.crossings));
                payload.push(format!("minimal failing trace ({} moves):", minimal.iter().filter(|s| s.site.is_some()).count()));
                payload.extend(minimal.iter().filter_map(|s| s.site.as_ref()).map(|s| format!("  {s}")));
                return Ok(Outcome { status: Status::Fail, headline: format!("Z changed at step {} (start Z = {z0})", k + 1), payload });
            }
            payload.push(format!("step {} {site} -> {} crossings, Z = {z}", k + 1, step.crossings));
        } else {
            payload.push(format!("step {} no move available", k + 1));
        }
    }
    Ok(Outcome { status: Status::Ok, headline: format!("Z = {z0} at all {} steps", trace.len()), payload })
}

fn echo(c: &Command) -> String {
    match c {
        Command::Check { algebra } => format!("check {algebra}"),
        Command::Integrals { algebra } => format!("integrals {algebra}"),
        Command::Invariant { diagram, algebra, via } => format!("invariant {diagram} {algebra} --via {via}"),
        Command::Pentagon { algebra } => format!("pentagon {algebra}"),
        Command::Fuzz { diagram, algebra, steps, seed } => format!("fuzz {diagram} {algebra} --steps {steps} --seed {seed}"),
    }
}

pub fn run(cli: &Cli) -> RunResult {
    if cli.sequential {
        qinv_core::exec::set_mode(qinv_core::exec::Mode::Sequential);
    }
    let start = Instant::now();
    let out = match &cli.command {
        Command::Check { algebra } => cmd_check(algebra),
        Command::Integrals { algebra } => cmd_integrals(algebra),
        Command::Invariant { diagram, algebra, via } => cmd_invariant(diagram, algebra, via),
        Command::Pentagon { algebra } => cmd_pentagon(algebra),
        Command::Fuzz { diagram, algebra, steps, seed } => cmd_fuzz(diagram, algebra, *steps, *seed),
    };
    let out = out.unwrap_or_else(|e| Outcome { status: Status::Error, headline: e, payload: vec![] });
    RunResult { command: echo(&cli.command), status: out.status, headline: out.headline, payload: out.payload, wall: start.elapsed() }
}

/// The directory of bundled data files.
pub fn data_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data"))
}
