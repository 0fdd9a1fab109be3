//! The `jlab` command line.
//!
//! Exit codes: 0 analysis completed, 1 usage or parse error, 2 finding of
//! note (NZC hit in a sweep, non-convergence in `verify`, degenerate
//! fiber), 3 elimination resource cap.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::asymptotic::{asymptotic_curve, AsymptoticCurve};
use crate::coeff::{ComplexF, GaussRat};
use crate::dominance::{dominancy_check, fiber_solve, DominanceOptions};
use crate::elimination::ResourceGuard;
use crate::error::Error;
use crate::mapio::{parse_map_file, parse_scalar, render_poly, report, MapFile};
use crate::numeric::{limit_check, SeqSpec, DEFAULT_SCHEDULE};
use crate::pertinent::{c2_refute, recognize, ClassLabel, ClassReport, Orientation, RecognizeBounds};
use crate::search::{nzc_sweep_resumable, SearchBounds, ShapeSet, SweepMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FINDING: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "jlab", version, about = "Classify and probe bivariate polynomial maps")]
struct Cli {
    /// Worker threads (output does not depend on this)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RecognizeArgs {
    /// Map file with `f = ...` and `g = ...`
    map: PathBuf,
    #[arg(long)]
    r_max: Option<u32>,
    #[arg(long)]
    s_max: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Good-map test and C1/C2 classification
    Classify(RecognizeArgs),
    /// Pertinent-variable rewrites, with divisibility certificates for r = 1
    Rewrite(RecognizeArgs),
    /// Asymptotic curves of every recognition
    Asymptotic(RecognizeArgs),
    /// Numeric limit checks along diverging sequences
    Verify {
        #[command(flatten)]
        rec: RecognizeArgs,
        /// Curve parameters, e.g. `1`, `i`, `2 - i` (repeatable)
        #[arg(long = "z", allow_hyphen_values = true)]
        z: Vec<String>,
        /// Comma-separated k schedule
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<u64>>,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        /// Write a CSV trace of the last check to this path
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Solve F(x, y) = (alpha, beta)
    Fiber {
        map: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Seeded fiber sampling
    Dominance {
        map: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long = "box", default_value_t = 5.0)]
        box_size: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sweep the pertinent-variable model against the Non-Zero Condition
    Sweep {
        /// `1` runs the C2 sweep; larger values sweep r = 2..=R
        #[arg(long = "r")]
        r: u32,
        /// Largest s
        #[arg(long = "s")]
        s: u32,
        /// Largest top index N
        #[arg(long = "N")]
        n: u32,
        /// Comma-separated coefficient set, e.g. `1,-1,2` or `1,i`
        #[arg(long, allow_hyphen_values = true, default_value = "1,-1")]
        coeffs: String,
        /// Largest tag-degree of the extra monomial (0 = linear shapes)
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = OrientationArg::X)]
        orientation: OrientationArg,
        /// Admit (r, s) with gcd(r - 1, s) != 1
        #[arg(long)]
        lift_gcd: bool,
        /// JSON checkpoint, written after every chunk and resumed from if present
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrientationArg {
    X,
    Y,
    Both,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceCap { .. } => EXIT_RESOURCE,
            Error::Degenerate(_) | Error::NoConvergence { .. } | Error::Overflow(_) => EXIT_FINDING,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: msg.into(),
    }
}

fn load_map(path: &PathBuf) -> Result<MapFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_map_file(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_complex(src: &str) -> Result<ComplexF, Failure> {
    parse_scalar(src)
        .map(|c| c.to_complex())
        .map_err(|e| usage(format!("bad complex value `{src}`: {e}")))
}

fn bounds_of(args: &RecognizeArgs) -> RecognizeBounds {
    RecognizeBounds {
        r_max: args.r_max,
        s_max: args.s_max,
        guard: ResourceGuard::from_env(),
    }
}

fn label_code(rep: &ClassReport) -> i32 {
    if rep.label == ClassLabel::Undecided {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    }
}

fn fmt_c(z: ComplexF) -> String {
    let clean = |v: f64| if v == 0.0 { 0.0 } else { v };
    format!("({:.12}, {:.12})", clean(z.re), clean(z.im))
}

fn text_class(out: &mut String, mf: &MapFile, rep: &ClassReport) {
    use std::fmt::Write as _;
    let g = &rep.good;
    let _ = writeln!(out, "map: {}", mf.name.as_deref().unwrap_or("-"));
    let _ = writeln!(out, "f = {}", render_poly(&mf.map.f));
    let _ = writeln!(out, "g = {}", render_poly(&mf.map.g));
    let _ = writeln!(
        out,
        "good: {} (alpha={}, beta={}, alpha'={}, beta'={}, linear det={})",
        if g.is_good { "yes" } else { "no" },
        g.alpha,
        g.beta,
        g.alpha_prime,
        g.beta_prime,
        g.linear_det
    );
    for v in &g.violations {
        let _ = writeln!(out, "  violation: {v:?}");
    }
    let _ = writeln!(out, "class: {}", rep.label);
    for r in &rep.recognitions {
        let _ = writeln!(out, "recognition {}", r.family);
        let _ = writeln!(out, "  E_f = {}", r.e_f);
        let _ = writeln!(out, "  E_g = {}", r.e_g);
    }
    for f in rep.undecided() {
        let _ = writeln!(out, "undecided (resource cap) {f}");
    }
}

fn text_curve(out: &mut String, c: &AsymptoticCurve) {
    use std::fmt::Write as _;
    let z = |p: &crate::BiPoly| render_poly(p).replace('x', "z").replace('y', "zeta");
    let _ = writeln!(
        out,
        "curve {} D={}{}: P(z) = {}, Q(z) = {}",
        c.family,
        c.branch_index,
        if c.extension { " [extension]" } else { "" },
        z(&c.p),
        z(&c.q)
    );
}

fn all_curves(rep: &ClassReport) -> Result<Vec<AsymptoticCurve>, Failure> {
    let mut out = Vec::new();
    for r in &rep.recognitions {
        out.extend(asymptotic_curve(r)?);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(String, i32), Failure> {
    let mut out = String::new();
    use std::fmt::Write as _;
    let code = match &cli.command {
        Command::Classify(args) => {
            let mf = load_map(&args.map)?;
            let rep = recognize(&mf.map, &bounds_of(args));
            if cli.json {
                let v = report::full(&mf.map, mf.name.as_deref(), &rep.good, Some(&rep), None, None);
                out = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                text_class(&mut out, &mf, &rep);
            }
            label_code(&rep)
        }
        Command::Rewrite(args) => {
            let mf = load_map(&args.map)?;
            let rep = recognize(&mf.map, &bounds_of(args));
            let mut certs = Vec::new();
            for r in rep.recognitions.iter().filter(|r| r.family.is_c2()) {
                certs.push(c2_refute(&mf.map, &r.family)?);
            }
            if cli.json {
                let mut v = report::full(&mf.map, mf.name.as_deref(), &rep.good, Some(&rep), None, None);
                v["certificates"] = certs.iter().map(report::certificate).collect();
                out = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                text_class(&mut out, &mf, &rep);
                for c in &certs {
                    let _ = writeln!(
                        out,
                        "certificate {}: d/d{} f = ({}) * ({}), d/d{} g = ({}) * ({})",
                        c.family,
                        c.family.orientation.dominant().name(),
                        render_poly(&c.divisor),
                        render_poly(&c.q_f),
                        c.family.orientation.dominant().name(),
                        render_poly(&c.divisor),
                        render_poly(&c.q_g)
                    );
                }
            }
            label_code(&rep)
        }
        Command::Asymptotic(args) => {
            let mf = load_map(&args.map)?;
            let rep = recognize(&mf.map, &bounds_of(args));
            let curves = all_curves(&rep)?;
            if cli.json {
                let v = report::full(&mf.map, mf.name.as_deref(), &rep.good, Some(&rep), Some(&curves), None);
                out = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                let _ = writeln!(out, "class: {}", rep.label);
                for c in &curves {
                    text_curve(&mut out, c);
                }
                if curves.is_empty() {
                    let _ = writeln!(out, "no recognition, no curve");
                }
            }
            label_code(&rep)
        }
        Command::Verify {
            rec,
            z,
            schedule,
            tol,
            csv,
        } => {
            let mf = load_map(&rec.map)?;
            let rep = recognize(&mf.map, &bounds_of(rec));
            let recog = rep
                .recognitions
                .first()
                .ok_or_else(|| usage("map is not recognized in any pertinent family"))?;
            let curves = asymptotic_curve(recog)?;
            let zs: Vec<ComplexF> = if z.is_empty() {
                vec![ComplexF::new(1.0, 0.0)]
            } else {
                z.iter().map(|s| parse_complex(s)).collect::<Result<_, _>>()?
            };
            let schedule = schedule.clone().unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
            let mut all_ok = true;
            let mut reports = Vec::new();
            for curve in &curves {
                for &zv in &zs {
                    let spec = SeqSpec::for_curve(curve, zv, schedule.clone())?;
                    let lr = limit_check(recog, curve, &spec, *tol)?;
                    all_ok &= lr.converged;
                    if let Some(path) = csv {
                        let file = std::fs::File::create(path)
                            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                        lr.write_csv(file).map_err(|e| usage(e.to_string()))?;
                    }
                    reports.push((curve, zv, lr));
                }
            }
            if cli.json {
                let v: Vec<_> = reports
                    .iter()
                    .map(|(c, zv, lr)| json!({"curve": report::curve(c), "z": report::complex(*zv), "limit": report::limit(lr)}))
                    .collect();
                out = format!("{}\n", serde_json::to_string_pretty(&json!({"checks": v})).expect("json"));
            } else {
                for (c, zv, lr) in &reports {
                    text_curve(&mut out, c);
                    let _ = writeln!(
                        out,
                        "  z = {}: {} final error {:.3e}, u error {:.3e}, slope {}",
                        fmt_c(*zv),
                        if lr.converged { "converged" } else { "NOT CONVERGED" },
                        lr.final_error,
                        lr.final_u_error,
                        lr.slope.map(|s| format!("{s:.3}")).unwrap_or_else(|| "n/a".into())
                    );
                }
            }
            if all_ok {
                EXIT_OK
            } else {
                EXIT_FINDING
            }
        }
        Command::Fiber {
            map,
            alpha,
            beta,
            tol,
        } => {
            let mf = load_map(map)?;
            let a = (parse_complex(alpha)?, parse_complex(beta)?);
            let fib = fiber_solve(&mf.map, a, *tol)?;
            if cli.json {
                out = format!("{}\n", serde_json::to_string_pretty(&report::fiber(&fib)).expect("json"));
            } else {
                let _ = writeln!(out, "fiber over ({}, {}): {} point(s)", fmt_c(a.0), fmt_c(a.1), fib.points.len());
                for (p, r) in fib.points.iter().zip(&fib.residuals) {
                    let _ = writeln!(out, "  x = {}, y = {}  residual {:.2e}", fmt_c(p.0), fmt_c(p.1), r);
                }
            }
            EXIT_OK
        }
        Command::Dominance {
            map,
            samples,
            seed,
            box_size,
            tol,
        } => {
            let mf = load_map(map)?;
            let rep = recognize(&mf.map, &RecognizeBounds::default());
            let curves = all_curves(&rep)?;
            let opts = DominanceOptions {
                samples: *samples,
                seed: *seed,
                box_size: *box_size,
                tol: *tol,
                ..DominanceOptions::default()
            };
            let d = dominancy_check(&mf.map, &curves, &opts);
            if cli.json {
                let v = report::full(&mf.map, mf.name.as_deref(), &rep.good, Some(&rep), Some(&curves), Some(&d));
                out = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                let _ = writeln!(
                    out,
                    "samples {}: nonempty {}, empty {}, skipped near S_F {}, solver failures {} (seed {})",
                    d.samples, d.nonempty_fibers, d.empty_fibers, d.skipped_near_sf, d.solver_failures, d.seed
                );
                let _ = writeln!(
                    out,
                    "verdict: {}",
                    if d.dominant_consistent { "dominant-consistent" } else { "not dominant-consistent" }
                );
            }
            EXIT_OK
        }
        Command::Sweep {
            r,
            s,
            n,
            coeffs,
            max_degree,
            orientation,
            lift_gcd,
            checkpoint,
        } => {
            let coeffs: Vec<GaussRat> = coeffs
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| parse_scalar(t.trim()).map_err(|e| usage(format!("bad coefficient `{t}`: {e}"))))
                .collect::<Result<_, _>>()?;
            if *r == 0 || *s == 0 || *n == 0 {
                return Err(usage("--r, --s and --N must be positive"));
            }
            let mut bounds = if *r == 1 {
                SearchBounds::c2(*s, *n, coeffs)
            } else {
                SearchBounds::model(*r, *s, *n, coeffs)
            };
            bounds.shapes = if *max_degree == 0 {
                ShapeSet::Linear
            } else {
                ShapeSet::UpToDegree(*max_degree)
            };
            bounds.orientations = match orientation {
                OrientationArg::X => vec![Orientation::XDominant],
                OrientationArg::Y => vec![Orientation::YDominant],
                OrientationArg::Both => vec![Orientation::XDominant, Orientation::YDominant],
            };
            bounds.lift_gcd = *lift_gcd;
            let rep = nzc_sweep_resumable(&bounds, checkpoint.as_deref())?;
            if cli.json {
                let v = json!({"bounds": serde_json::to_value(&bounds).expect("json"), "sweep": report::sweep(&rep)});
                out = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                let _ = writeln!(
                    out,
                    "tested {} candidates: {} good, {} not good",
                    rep.tested, rep.passed_good, rep.failed_good
                );
                for (k, v) in &rep.failure_statistics {
                    let _ = writeln!(out, "  {k}: {v}");
                }
                if bounds.mode == SweepMode::C2 {
                    let _ = writeln!(
                        out,
                        "divisibility certificates: {} verified, {} failed",
                        rep.certificates_verified,
                        rep.certificate_failures.len()
                    );
                }
                let _ = writeln!(out, "{} NZC hits", rep.nzc_holds.len());
                for h in &rep.nzc_holds {
                    let _ = writeln!(
                        out,
                        "  HIT #{} {}: E_f = {}, E_g = {}, f = {}, g = {}, det = {}",
                        h.index, h.family, h.e_f, h.e_g, h.f, h.g, h.det
                    );
                }
            }
            if rep.nzc_holds.is_empty() && rep.certificate_failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_FINDING
            }
        }
    };
    Ok((out, code))
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report to `stdout`, diagnostics to `stderr`. Returns the exit code.
pub fn run_command<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{e}")
            } else {
                write!(stdout, "{e}")
            };
            return code;
        }
    };
    let jobs = cli.jobs;
    let work = move || run(cli);
    let result = match jobs {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(usage(format!("cannot start {n} workers: {e}"))),
        },
        Some(_) => Err(usage("--jobs must be positive")),
        None => work(),
    };
    match result {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
