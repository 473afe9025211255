//! Command-line front end: query kernels, fundamental solutions and boundary
//! values, apply operators, convolve, run the identity catalog, run oracle
//! cross-checks, and evaluate half-space potentials.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit codes: 0 on success,
//! 2 on a domain error (the violated condition is printed), 3 when a
//! verification sweep fails.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperpotential::dist::DistExpr;
use hyperpotential::json::{expr_from_str, expr_to_json};
use hyperpotential::kernels::identities::{
    canonical_name, identity_check, Mode, Outcome, SweepRanges, VerifyReport, IDENTITY_NAMES,
};
use hyperpotential::kernels::{
    boundary_value, fundamental_solution, kernel, BoundarySide, BoundaryValueId, OperatorFamily,
    OperatorId, Param,
};
use hyperpotential::halfspace::{
    evaluate, monogenicity_residual, HalfSpacePoint, PotentialFamily, PotentialId,
};
use hyperpotential::oracle::{pair_gaussian, pair_quadrature, PairingResult, TestFunction};
use num_complex::Complex64;
use serde_json::json;
use std::process::ExitCode;

const DEFAULT_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "hyperpotential",
    about = "Exact calculus and numerical verification for normalized Clifford \
             distributions and the Dirac/Laplace convolution operator families",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Dirac,
    HilbertDirac,
    Laplace,
    LaplaceHilbert,
}

impl FamilyArg {
    fn to_family(self) -> OperatorFamily {
        match self {
            FamilyArg::Dirac => OperatorFamily::DiracPow,
            FamilyArg::HilbertDirac => OperatorFamily::HilbertDirac,
            FamilyArg::Laplace => OperatorFamily::LaplacePow,
            FamilyArg::LaplaceHilbert => OperatorFamily::LaplaceHilbert,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Json,
    Text,
}

#[derive(Args)]
struct CommonArgs {
    /// Dimension of the base space (m >= 2).
    #[arg(long, default_value_t = 3)]
    dim: u32,
    /// Exact integer/half-integer grid or complex floating parameters.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Numeric comparison tolerance (also via HYPERPOTENTIAL_TOL).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputArg::Json)]
    output: OutputArg,
}

impl CommonArgs {
    fn tolerance(&self) -> f64 {
        self.tol
            .or_else(|| {
                std::env::var("HYPERPOTENTIAL_TOL")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or(DEFAULT_TOL)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Convolution kernel of an operator family member.
    Kernel {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Exponent for the Dirac families (integer on the exact grid).
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Exponent for the Laplace families (half-integers allowed).
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Family-agnostic spelling of the exponent.
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Fundamental solution of an operator family member.
    Fundamental {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Distributional boundary value a_k or b_k.
    Boundary {
        #[command(flatten)]
        common: CommonArgs,
        /// Side: "a" (scalar) or "b" (vector).
        #[arg(long)]
        side: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Apply an operator to an expression (JSON inline or @file).
    Apply {
        #[command(flatten)]
        common: CommonArgs,
        /// One of: dirac, laplace, hilbert, xmul, r2mul.
        #[arg(long)]
        op: String,
        #[arg(long)]
        expr: String,
    },
    /// Convolve two expressions.
    Convolve {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Run identity sweeps from the catalog; exit 3 on any failure.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Identity name or "all".
        #[arg(long)]
        name: String,
        /// First-factor exponent range for the Dirac families, "lo..hi".
        #[arg(long, allow_hyphen_values = true)]
        mu_range: Option<String>,
        /// Second-factor exponent range, "lo..hi" (defaults to the first).
        #[arg(long, allow_hyphen_values = true)]
        nu_range: Option<String>,
        /// Exponent range for the Laplace families, "lo..hi".
        #[arg(long, allow_hyphen_values = true)]
        beta_range: Option<String>,
        /// Boundary-value index range, "lo..hi".
        #[arg(long, allow_hyphen_values = true)]
        k_range: Option<String>,
        /// Sweep these dimensions (comma separated); default 2,3,4,5.
        #[arg(long)]
        dims: Option<String>,
    },
    /// Pair an expression with a test function.
    Pair {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        expr: String,
        /// gaussian | moment:<j> | polygauss:<p>
        #[arg(long, default_value = "gaussian")]
        testfn: String,
        /// closed | quadrature
        #[arg(long, default_value = "closed")]
        method: String,
        #[arg(long, default_value_t = 4)]
        subtraction_order: i64,
    },
    /// Evaluate a half-space potential at a point.
    Potential {
        #[command(flatten)]
        common: CommonArgs,
        /// Family: a, b, or c.
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
        /// Comma-separated coordinates "x0,x1,..,xm" with x0 > 0.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Also report the monogenicity residual at this step (family c).
        #[arg(long)]
        residual_step: Option<f64>,
    },
}

fn parse_param(s: &str, mode: ModeArg) -> Result<Param, String> {
    let t = s.trim();
    if matches!(mode, ModeArg::Numeric) {
        return parse_complex(t).map(Param::Numeric);
    }
    if let Ok(n) = t.parse::<i64>() {
        return Ok(Param::int(n));
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad rational parameter {:?}", s))?;
        let den: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad rational parameter {:?}", s))?;
        if den == 2 {
            return Ok(Param::halves(num));
        }
        if den == 1 {
            return Ok(Param::int(num));
        }
        return Err(format!(
            "exact parameters live on the half-integer grid, got {:?}",
            s
        ));
    }
    if let Ok(x) = t.parse::<f64>() {
        let doubled = 2.0 * x;
        if (doubled - doubled.round()).abs() < 1e-12 {
            return Ok(Param::halves(doubled.round() as i64));
        }
        return Err(format!(
            "exact parameters live on the half-integer grid, got {:?} (use --mode numeric)",
            s
        ));
    }
    parse_complex(t).map(Param::Numeric)
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim().trim_end_matches('i');
    if let Ok(x) = s.trim().parse::<f64>() {
        return Ok(Complex64::new(x, 0.0));
    }
    // forms like "1.5+0.25i" / "1.5-0.25i"
    if let Some(pos) = s.rfind(['+', '-']).filter(|&p| p > 0) {
        let (re_s, im_s) = s.split_at(pos);
        let re: f64 = re_s
            .trim()
            .parse()
            .map_err(|_| format!("bad complex parameter {:?}", s))?;
        let im: f64 = im_s
            .trim_end_matches('i')
            .parse()
            .map_err(|_| format!("bad complex parameter {:?}", s))?;
        return Ok(Complex64::new(re, im));
    }
    let im: f64 = t
        .parse()
        .map_err(|_| format!("bad complex parameter {:?}", s))?;
    Ok(Complex64::new(0.0, im))
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("range must be written lo..hi, got {:?}", s))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range bound in {:?}", s))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range bound in {:?}", s))?;
    if lo > hi {
        return Err(format!("empty range {:?}", s));
    }
    Ok((lo, hi))
}

fn parse_testfn(s: &str) -> Result<TestFunction, String> {
    if s == "gaussian" {
        return Ok(TestFunction::Gaussian);
    }
    if let Some(j) = s.strip_prefix("moment:") {
        let j: usize = j.parse().map_err(|_| format!("bad component in {:?}", s))?;
        return Ok(TestFunction::GaussianMoment { j });
    }
    if let Some(p) = s.strip_prefix("polygauss:") {
        let p: u32 = p.parse().map_err(|_| format!("bad power in {:?}", s))?;
        return Ok(TestFunction::PolyGaussian { p });
    }
    Err(format!(
        "unknown test function {:?} (gaussian | moment:<j> | polygauss:<p>)",
        s
    ))
}

fn load_expr(arg: &str) -> Result<DistExpr, String> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path, e))?
    } else if arg == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("cannot read stdin: {}", e))?;
        buf
    } else {
        arg.to_string()
    };
    expr_from_str(&text).map_err(|e| e.to_string())
}

fn emit_expr(e: &DistExpr, common: &CommonArgs) {
    match common.output {
        OutputArg::Json => println!("{}", expr_to_json(e)),
        OutputArg::Text => println!("{}", e),
    }
}

fn pairing_json(p: &PairingResult) -> serde_json::Value {
    json!({
        "scalar": { "re": p.scalar.re, "im": p.scalar.im },
        "vector": p.vector.iter().map(|c| json!({"re": c.re, "im": c.im})).collect::<Vec<_>>(),
    })
}

/// Errors that name a violated domain condition exit with code 2.
fn domain_err(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("domain error: {}", msg);
    ExitCode::from(2)
}

fn run_kernel_like(
    common: &CommonArgs,
    family: FamilyArg,
    mu: Option<String>,
    beta: Option<String>,
    param: Option<String>,
    fundamental: bool,
) -> ExitCode {
    let raw = match param.or(mu).or(beta) {
        Some(p) => p,
        None => return domain_err("missing exponent: pass --mu, --beta, or --param"),
    };
    let p = match parse_param(&raw, common.mode) {
        Ok(p) => p,
        Err(e) => return domain_err(e),
    };
    let op = OperatorId::new(family.to_family(), p);
    let result = if fundamental {
        fundamental_solution(&op, common.dim)
    } else {
        kernel(&op, common.dim)
    };
    match result {
        Ok(e) => {
            emit_expr(&e, common);
            ExitCode::SUCCESS
        }
        Err(e) => domain_err(e),
    }
}

fn run_verify(
    common: &CommonArgs,
    name: &str,
    mu_range: Option<String>,
    nu_range: Option<String>,
    beta_range: Option<String>,
    k_range: Option<String>,
    dims: Option<String>,
) -> ExitCode {
    let mut ranges = SweepRanges::default();
    macro_rules! set_range {
        ($src:expr, $setter:expr) => {
            if let Some(s) = $src {
                match parse_range(&s) {
                    Ok(r) => $setter(r),
                    Err(e) => return domain_err(e),
                }
            }
        };
    }
    set_range!(mu_range, |r| ranges.mu = r);
    set_range!(nu_range, |r| ranges.nu = Some(r));
    set_range!(beta_range, |r| ranges.beta = r);
    set_range!(k_range, |r| ranges.k = r);

    let dims: Vec<u32> = match dims {
        None => vec![2, 3, 4, 5],
        Some(s) => {
            let mut v = Vec::new();
            for part in s.split(',') {
                match part.trim().parse::<u32>() {
                    Ok(d) if d >= 2 => v.push(d),
                    _ => return domain_err(format!("bad dimension list {:?}", s)),
                }
            }
            v
        }
    };
    let mode = match common.mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Numeric => Mode::Numeric {
            tol: common.tolerance(),
        },
    };
    let names: Vec<&str> = if name == "all" {
        IDENTITY_NAMES.to_vec()
    } else {
        match canonical_name(name) {
            Some(n) => vec![n],
            None => {
                return domain_err(format!(
                    "unknown identity {:?}; known: all, {}",
                    name,
                    IDENTITY_NAMES.join(", ")
                ))
            }
        }
    };
    let mut reports: Vec<VerifyReport> = Vec::new();
    for &m in &dims {
        for n in &names {
            let rep = identity_check(n, m, ranges, mode).expect("known name");
            let (held, failed, skipped) = rep.counts();
            eprintln!(
                "{:<28} m={} held={:<4} failed={:<3} skipped={}",
                rep.name, m, held, failed, skipped
            );
            for note in &rep.notes {
                eprintln!("    note: {}", note);
            }
            if !rep.holds() {
                for i in &rep.instances {
                    if let Outcome::Failed { lhs, rhs } = &i.outcome {
                        eprintln!("    FAILED {} :: {} != {}", i.params, lhs, rhs);
                    }
                }
            }
            reports.push(rep);
        }
    }
    let all_hold = reports.iter().all(|r| r.holds());
    let summary: Vec<_> = reports
        .iter()
        .map(|r| {
            let (held, failed, skipped) = r.counts();
            json!({
                "name": r.name,
                "dim": r.dim,
                "held": held,
                "failed": failed,
                "skipped": skipped,
                "notes": r.notes,
            })
        })
        .collect();
    println!(
        "{}",
        json!({ "ok": all_hold, "reports": summary })
    );
    if all_hold {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Kernel {
            common,
            family,
            mu,
            beta,
            param,
        } => run_kernel_like(&common, family, mu, beta, param, false),
        Command::Fundamental {
            common,
            family,
            mu,
            beta,
            param,
        } => run_kernel_like(&common, family, mu, beta, param, true),
        Command::Boundary { common, side, k } => {
            let side = match side.as_str() {
                "a" => BoundarySide::A,
                "b" => BoundarySide::B,
                other => return domain_err(format!("side must be a or b, got {:?}", other)),
            };
            match boundary_value(BoundaryValueId { side, k }, common.dim) {
                Ok(e) => {
                    emit_expr(&e, &common);
                    ExitCode::SUCCESS
                }
                Err(e) => domain_err(e),
            }
        }
        Command::Apply { common, op, expr } => {
            let e = match load_expr(&expr) {
                Ok(e) => e,
                Err(msg) => return domain_err(msg),
            };
            let result = match op.as_str() {
                "dirac" => e.dirac_apply(),
                "laplace" => e.laplace_apply(),
                "hilbert" => e.hilbert(),
                "xmul" => e.vector_multiply(),
                "r2mul" => e.r2_multiply(),
                other => {
                    return domain_err(format!(
                        "unknown operator {:?} (dirac, laplace, hilbert, xmul, r2mul)",
                        other
                    ))
                }
            };
            match result {
                Ok(out) => {
                    emit_expr(&out, &common);
                    ExitCode::SUCCESS
                }
                Err(e) => domain_err(e),
            }
        }
        Command::Convolve { common, lhs, rhs } => {
            let a = match load_expr(&lhs) {
                Ok(e) => e,
                Err(msg) => return domain_err(msg),
            };
            let b = match load_expr(&rhs) {
                Ok(e) => e,
                Err(msg) => return domain_err(msg),
            };
            match a.convolve(&b) {
                Ok(out) => {
                    emit_expr(&out, &common);
                    ExitCode::SUCCESS
                }
                Err(e) => domain_err(e),
            }
        }
        Command::Verify {
            common,
            name,
            mu_range,
            nu_range,
            beta_range,
            k_range,
            dims,
        } => run_verify(&common, &name, mu_range, nu_range, beta_range, k_range, dims),
        Command::Pair {
            common,
            expr,
            testfn,
            method,
            subtraction_order,
        } => {
            let e = match load_expr(&expr) {
                Ok(e) => e,
                Err(msg) => return domain_err(msg),
            };
            let tf = match parse_testfn(&testfn) {
                Ok(tf) => tf,
                Err(msg) => return domain_err(msg),
            };
            let emit = |p: &PairingResult, pole: Option<bool>| match common.output {
                OutputArg::Json => {
                    let mut v = pairing_json(p);
                    if let Some(flag) = pole {
                        v["pole_on_grid"] = json!(flag);
                    }
                    println!("{}", v);
                }
                OutputArg::Text => {
                    println!("scalar: {:+.12e}", p.scalar.re);
                    for (i, c) in p.vector.iter().enumerate() {
                        println!("e_{}:   {:+.12e}", i + 1, c.re);
                    }
                    if let Some(true) = pole {
                        println!("(a finite-part moment sat on a pole and was dropped)");
                    }
                }
            };
            match method.as_str() {
                "closed" => {
                    emit(&pair_gaussian(&e), None);
                    ExitCode::SUCCESS
                }
                "quadrature" => match pair_quadrature(&e, &tf, subtraction_order) {
                    Ok(q) => {
                        emit(&q.result, Some(q.pole_on_grid));
                        ExitCode::SUCCESS
                    }
                    Err(err) => domain_err(err),
                },
                other => domain_err(format!(
                    "unknown method {:?} (closed | quadrature)",
                    other
                )),
            }
        }
        Command::Potential {
            common,
            family,
            k,
            point,
            residual_step,
        } => {
            let family = match family.to_ascii_lowercase().as_str() {
                "a" => PotentialFamily::A,
                "b" => PotentialFamily::B,
                "c" => PotentialFamily::C,
                other => return domain_err(format!("family must be a, b, or c, got {:?}", other)),
            };
            let coords: Result<Vec<f64>, _> =
                point.split(',').map(|s| s.trim().parse::<f64>()).collect();
            let coords = match coords {
                Ok(c) if c.len() == common.dim as usize + 1 => c,
                Ok(c) => {
                    return domain_err(format!(
                        "point needs {} coordinates (x0 plus {} tangential), got {}",
                        common.dim + 1,
                        common.dim,
                        c.len()
                    ))
                }
                Err(e) => return domain_err(format!("bad point: {}", e)),
            };
            let p = match HalfSpacePoint::new(coords[0], coords[1..].to_vec()) {
                Ok(p) => p,
                Err(e) => return domain_err(e),
            };
            let id = PotentialId { family, k };
            match evaluate(id, &p, common.dim) {
                Ok(mv) => {
                    let blades: Vec<_> = mv
                        .terms()
                        .map(|(b, c)| json!({ "blade": b, "coeff": c }))
                        .collect();
                    let mut out = json!({ "dim": common.dim, "value": blades });
                    if let Some(h) = residual_step {
                        match monogenicity_residual(id, &p, common.dim, h) {
                            Ok(r) => out["monogenicity_residual"] = json!(r),
                            Err(e) => return domain_err(e),
                        }
                    }
                    println!("{}", out);
                    ExitCode::SUCCESS
                }
                Err(e) => domain_err(e),
            }
        }
    }
}
