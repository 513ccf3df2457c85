//! `weyl` — CLI for exact computation in the twisted Weyl algebras A_n^k.
//!
//! Exit codes: 0 success, 1 failed check (nonzero defect, rejected
//! candidate, no isomorphism), 2 expression syntax error, 3 dimension or
//! index error.

mod expr;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use weyl_core::deform::{deform_bracket, deform_star, deform_twist, ParamMap, ParamPoly};
use weyl_core::homstar::{associator_star, commutator_star, hom_assoc_defect, star, weak_unit_defect};
use weyl_core::morphisms::{
    build_iso, check_hom_constraints, check_relations_and_intertwine, GeneratorImages,
    MorphismReport,
};
use weyl_core::structure::{
    derivation_defect_on_generators, is_hom_derivation, reduce_to_scalar, ReduceStep,
};
use weyl_core::twist::{apply_twist, twist_via_exp};
use weyl_core::{Coefficient, NormalMonomial, TwistVector, WeylError, WeylPoly};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DIMENSION: u8 = 3;

#[derive(Parser)]
#[command(name = "weyl", version, about = "Exact arithmetic in the hom-associative Weyl algebras A_n^k")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Number of generator pairs (defaults to the length of --k, else 1)
    #[arg(long)]
    n: Option<usize>,
    /// Twist vector k as comma-separated rationals, e.g. "2,0,1/3"
    #[arg(long)]
    k: Option<String>,
    /// Second twist vector (iso / morphism-check)
    #[arg(long)]
    k2: Option<String>,
    /// Emit a machine-readable JSON record on stdout
    #[arg(long)]
    json: bool,
    /// Seed for randomized suites
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Degree bound for randomized suites
    #[arg(long, default_value_t = 3)]
    degree_cap: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Associative product of two expressions
    Mul {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Star product a ⊛ b = α_k(ab)
    Star {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Apply the twist α_k to an expression
    Twist {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Star commutator [a, b]_*
    Commutator {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Star associator (a⊛b)⊛c − a⊛(b⊛c)
    Associator {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Verify hom-associativity on three expressions, or on random triples
    #[command(name = "homassoc-check")]
    HomassocCheck {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Reduce a nonzero element to a scalar by star commutators (simplicity trace)
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Decide whether ad_p is a derivation of A_n^k
    #[command(name = "derivation-check")]
    DerivationCheck {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Construct the classifying isomorphism A_n^k → A_n^k2
    Iso {
        #[command(flatten)]
        common: Common,
    },
    /// Check candidate generator images (x images then y images) with both checkers
    #[command(name = "morphism-check")]
    MorphismCheck {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Formal deformation series: one expr = twist, two exprs = star (--bracket for the bracket)
    Deform {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bracket: bool,
        #[arg(allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Run the seeded internal property suites
    Selftest {
        #[command(flatten)]
        common: Common,
    },
}

/// Errors mapped to exit codes.
enum CliError {
    Parse(String),
    Dimension(String),
    Check(String),
}

impl From<expr::ParseError> for CliError {
    fn from(e: expr::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::NotIsomorphic { .. } | WeylError::ZeroInput => {
                CliError::Check(e.to_string())
            }
            _ => CliError::Dimension(e.to_string()),
        }
    }
}

fn parse_rational(text: &str) -> Result<Coefficient, CliError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (text, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| CliError::Parse(format!("bad rational '{text}'")))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| CliError::Parse(format!("bad rational '{text}'")))?,
        None => BigInt::from(1),
    };
    if den == BigInt::from(0) {
        return Err(CliError::Parse(format!("zero denominator in '{text}'")));
    }
    Ok(Coefficient::new(num, den))
}

fn parse_twist(text: &str) -> Result<TwistVector, CliError> {
    let entries = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TwistVector::new(entries))
}

struct Context {
    n: usize,
    k: TwistVector,
    k2: Option<TwistVector>,
    json: bool,
    seed: u64,
    degree_cap: u32,
}

impl Context {
    fn build(common: &Common) -> Result<Context, CliError> {
        let k = common.k.as_deref().map(parse_twist).transpose()?;
        let n = match (common.n, &k) {
            (Some(n), _) => n,
            (None, Some(k)) => k.n(),
            (None, None) => 1,
        };
        if n == 0 {
            return Err(CliError::Dimension("--n must be at least 1".into()));
        }
        let k = match k {
            Some(k) => {
                if k.n() != n {
                    return Err(CliError::Dimension(format!(
                        "--k has {} entries but --n is {n}",
                        k.n()
                    )));
                }
                k
            }
            None => TwistVector::zeros(n),
        };
        let k2 = match common.k2.as_deref().map(parse_twist).transpose()? {
            Some(k2) => {
                if k2.n() != n {
                    return Err(CliError::Dimension(format!(
                        "--k2 has {} entries but --n is {n}",
                        k2.n()
                    )));
                }
                Some(k2)
            }
            None => None,
        };
        Ok(Context {
            n,
            k,
            k2,
            json: common.json,
            seed: common.seed,
            degree_cap: common.degree_cap,
        })
    }

    fn eval(&self, text: &str) -> Result<WeylPoly, CliError> {
        let e = expr::parse(text, self.n)?;
        Ok(expr::eval(&e, &self.k)?)
    }

    fn inputs_json(&self, exprs: &[String]) -> Value {
        json!({
            "n": self.n,
            "k": self.k.entries().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "k2": self.k2.as_ref().map(|k| {
                k.entries().iter().map(|c| c.to_string()).collect::<Vec<_>>()
            }),
            "exprs": exprs,
            "seed": self.seed,
            "degree_cap": self.degree_cap,
        })
    }
}

fn expect_exprs<'a>(exprs: &'a [String], count: usize, what: &str) -> Result<&'a [String], CliError> {
    if exprs.len() != count {
        return Err(CliError::Parse(format!(
            "{what} expects {count} expression argument(s), got {}",
            exprs.len()
        )));
    }
    Ok(exprs)
}

fn emit(
    ctx: &Context,
    command: &str,
    exprs: &[String],
    started: Instant,
    result: Value,
    text: String,
) {
    if ctx.json {
        let record = json!({
            "command": command,
            "inputs": ctx.inputs_json(exprs),
            "result": result,
            "elapsed": started.elapsed().as_secs_f64(),
        });
        println!("{record}");
    } else {
        println!("{text}");
    }
}

fn emit_defects(
    ctx: &Context,
    command: &str,
    exprs: &[String],
    started: Instant,
    defects: Vec<(String, String)>,
    ok_text: &str,
) -> Result<(), CliError> {
    let ok = defects.is_empty();
    if ctx.json {
        let record = json!({
            "command": command,
            "inputs": ctx.inputs_json(exprs),
            "defects": defects
                .iter()
                .map(|(eq, d)| json!({"equation": eq, "defect": d}))
                .collect::<Vec<_>>(),
            "elapsed": started.elapsed().as_secs_f64(),
        });
        println!("{record}");
    } else if ok {
        println!("{ok_text}");
    } else {
        for (eq, d) in &defects {
            println!("FAIL {eq}: {d}");
        }
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Check(format!("{} nonzero defect(s)", defects.len())))
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32) -> WeylPoly {
    let mut p = WeylPoly::zero(n);
    for _ in 0..rng.gen_range(1..=3usize) {
        let mut yexp = vec![0u32; n];
        let mut xexp = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=max_deg) {
            let slot = rng.gen_range(0..2 * n);
            if slot < n {
                yexp[slot] += 1;
            } else {
                xexp[slot - n] += 1;
            }
        }
        let c = Coefficient::new(BigInt::from(rng.gen_range(-5i64..=5)), BigInt::from(rng.gen_range(1i64..=3)));
        p = p
            .add(&WeylPoly::monomial(NormalMonomial::new(yexp, xexp), c))
            .unwrap();
    }
    p
}

fn step_label(step: &ReduceStep) -> (String, Value) {
    match step {
        ReduceStep::CommuteWithX(l) => (
            format!("[x{l}, .]*"),
            json!({"commute_with": "x", "index": l}),
        ),
        ReduceStep::CommuteWithY(l) => (
            format!("[., y{l}]*"),
            json!({"commute_with": "y", "index": l}),
        ),
    }
}

fn param_poly_json(p: &ParamPoly) -> Value {
    json!({
        "text": p.to_string(),
        "terms": p
            .terms()
            .map(|(idx, poly)| json!({"order": idx, "poly": poly.to_string()}))
            .collect::<Vec<_>>(),
    })
}

fn report_defects(tag: &str, report: &MorphismReport) -> Vec<(String, String)> {
    let mut out = Vec::new();
    if let Some(reason) = &report.structural_rejection {
        out.push((format!("{tag}: structural"), reason.clone()));
    }
    for d in &report.defects {
        out.push((format!("{tag}: {}", d.equation), d.defect.to_string()));
    }
    out
}

fn run(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    match cli.command {
        Command::Mul { common, exprs } => {
            let ctx = Context::build(&common)?;
            let e = expect_exprs(&exprs, 2, "mul")?;
            let r = ctx.eval(&e[0])?.mul_assoc(&ctx.eval(&e[1])?)?;
            emit(&ctx, "mul", &exprs, started, json!(r.to_string()), r.to_string());
            Ok(())
        }
        Command::Star { common, exprs } => {
            let ctx = Context::build(&common)?;
            let e = expect_exprs(&exprs, 2, "star")?;
            let r = star(&ctx.k, &ctx.eval(&e[0])?, &ctx.eval(&e[1])?)?;
            emit(&ctx, "star", &exprs, started, json!(r.to_string()), r.to_string());
            Ok(())
        }
        Command::Twist { common, exprs } => {
            let ctx = Context::build(&common)?;
            let e = expect_exprs(&exprs, 1, "twist")?;
            let r = apply_twist(&ctx.k, &ctx.eval(&e[0])?)?;
            emit(&ctx, "twist", &exprs, started, json!(r.to_string()), r.to_string());
            Ok(())
        }
        Command::Commutator { common, exprs } => {
            let ctx = Context::build(&common)?;
            let e = expect_exprs(&exprs, 2, "commutator")?;
            let r = commutator_star(&ctx.k, &ctx.eval(&e[0])?, &ctx.eval(&e[1])?)?;
            emit(&ctx, "commutator", &exprs, started, json!(r.to_string()), r.to_string());
            Ok(())
        }
        Command::Associator { common, exprs } => {
            let ctx = Context::build(&common)?;
            let e = expect_exprs(&exprs, 3, "associator")?;
            let r = associator_star(&ctx.k, &ctx.eval(&e[0])?, &ctx.eval(&e[1])?, &ctx.eval(&e[2])?)?;
            emit(&ctx, "associator", &exprs, started, json!(r.to_string()), r.to_string());
            Ok(())
        }
        Command::HomassocCheck { common, exprs } => {
            let ctx = Context::build(&common)?;
            let mut defects = Vec::new();
            if exprs.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
                for i in 0..50 {
                    let a = random_poly(&mut rng, ctx.n, ctx.degree_cap);
                    let b = random_poly(&mut rng, ctx.n, ctx.degree_cap);
                    let c = random_poly(&mut rng, ctx.n, ctx.degree_cap);
                    let d = hom_assoc_defect(&ctx.k, &a, &b, &c)?;
                    if !d.is_zero() {
                        defects.push((format!("random triple {i}"), d.to_string()));
                    }
                }
            } else {
                let e = expect_exprs(&exprs, 3, "homassoc-check")?;
                let d = hom_assoc_defect(&ctx.k, &ctx.eval(&e[0])?, &ctx.eval(&e[1])?, &ctx.eval(&e[2])?)?;
                if !d.is_zero() {
                    defects.push(("hom-associativity".into(), d.to_string()));
                }
            }
            emit_defects(&ctx, "homassoc-check", &exprs, started, defects, "OK: hom-associativity holds")
        }
        Command::Reduce { common, exprs } => {
            let ctx = Context::build(&common)?;
            let e = expect_exprs(&exprs, 1, "reduce")?;
            let p = ctx.eval(&e[0])?;
            let (trace, scalar) = reduce_to_scalar(&ctx.k, &p)?;
            let labels: Vec<(String, Value)> = trace.iter().map(step_label).collect();
            let text = format!(
                "trace: {}\nscalar: {scalar}",
                if labels.is_empty() {
                    "(empty)".to_string()
                } else {
                    labels.iter().map(|(t, _)| t.clone()).collect::<Vec<_>>().join(", ")
                }
            );
            let result = json!({
                "trace": labels.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(),
                "scalar": scalar.to_string(),
            });
            emit(&ctx, "reduce", &exprs, started, result, text);
            Ok(())
        }
        Command::DerivationCheck { common, exprs } => {
            let ctx = Context::build(&common)?;
            let e = expect_exprs(&exprs, 1, "derivation-check")?;
            let p = ctx.eval(&e[0])?;
            let structural = is_hom_derivation(&ctx.k, &p)?;
            let gen_defects = derivation_defect_on_generators(&ctx.k, &p)?;
            let mut defects = Vec::new();
            if !structural {
                defects.push(("structural criterion".to_string(), "violated".to_string()));
            }
            for (i, d) in gen_defects.iter().enumerate() {
                if !d.is_zero() {
                    defects.push((format!("generator defect {i}"), d.to_string()));
                }
            }
            emit_defects(&ctx, "derivation-check", &exprs, started, defects, "OK: ad_p is a derivation")
        }
        Command::Iso { common } => {
            let ctx = Context::build(&common)?;
            let k2 = ctx
                .k2
                .clone()
                .ok_or_else(|| CliError::Dimension("iso requires --k2".into()))?;
            let images = build_iso(&ctx.k, &k2)?;
            let mut lines = Vec::new();
            let mut pairs = Vec::new();
            for l in 1..=ctx.n {
                lines.push(format!("phi(x{l}) = {}", images.x_img(l)));
                lines.push(format!("phi(y{l}) = {}", images.y_img(l)));
                pairs.push(json!({
                    "x": images.x_img(l).to_string(),
                    "y": images.y_img(l).to_string(),
                }));
            }
            emit(&ctx, "iso", &[], started, json!(pairs), lines.join("\n"));
            Ok(())
        }
        Command::MorphismCheck { common, exprs } => {
            let ctx = Context::build(&common)?;
            let k2 = ctx
                .k2
                .clone()
                .ok_or_else(|| CliError::Dimension("morphism-check requires --k2".into()))?;
            let e = expect_exprs(&exprs, 2 * ctx.n, "morphism-check (x images then y images)")?;
            let x_img = e[..ctx.n]
                .iter()
                .map(|t| ctx.eval(t))
                .collect::<Result<Vec<_>, _>>()?;
            let y_img = e[ctx.n..]
                .iter()
                .map(|t| ctx.eval(t))
                .collect::<Result<Vec<_>, _>>()?;
            let images = GeneratorImages::new(x_img, y_img)?;
            let rep1 = check_relations_and_intertwine(&ctx.k, &k2, &images)?;
            let rep2 = check_hom_constraints(&ctx.k, &k2, &images)?;
            let mut defects = report_defects("relations", &rep1);
            defects.extend(report_defects("equations", &rep2));
            emit_defects(&ctx, "morphism-check", &exprs, started, defects, "OK: valid hom-morphism")
        }
        Command::Deform { common, bracket, exprs } => {
            let ctx = Context::build(&common)?;
            let pm = ParamMap::new(ctx.n, (1..=ctx.n).collect())?;
            let series = match exprs.len() {
                1 if !bracket => deform_twist(&ctx.eval(&exprs[0])?, &pm)?,
                2 => {
                    let a = ctx.eval(&exprs[0])?;
                    let b = ctx.eval(&exprs[1])?;
                    if bracket {
                        deform_bracket(&a, &b, &pm)?
                    } else {
                        deform_star(&a, &b, &pm)?
                    }
                }
                _ => {
                    return Err(CliError::Parse(
                        "deform expects one expression (twist) or two (star/bracket)".into(),
                    ))
                }
            };
            emit(&ctx, "deform", &exprs, started, param_poly_json(&series), series.to_string());
            Ok(())
        }
        Command::Selftest { common } => {
            let ctx = Context::build(&common)?;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let mut defects = Vec::new();
            for i in 0..40 {
                let a = random_poly(&mut rng, ctx.n, ctx.degree_cap);
                let b = random_poly(&mut rng, ctx.n, ctx.degree_cap);
                let c = random_poly(&mut rng, ctx.n, ctx.degree_cap);
                let d = hom_assoc_defect(&ctx.k, &a, &b, &c)?;
                if !d.is_zero() {
                    defects.push((format!("hom-associativity {i}"), d.to_string()));
                }
                let (l, r) = weak_unit_defect(&ctx.k, &a)?;
                if !l.is_zero() || !r.is_zero() {
                    defects.push((format!("weak unit {i}"), format!("{l}; {r}")));
                }
                let shift = apply_twist(&ctx.k, &a)?;
                if shift != twist_via_exp(&ctx.k, &a)? {
                    defects.push((format!("twist forms {i}"), shift.to_string()));
                }
                let d = commutator_star(&ctx.k, &a, &a)?;
                if !d.is_zero() {
                    defects.push((format!("alternativity {i}"), d.to_string()));
                }
            }
            emit_defects(&ctx, "selftest", &[], started, defects, "OK: all selftest suites passed")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(CliError::Dimension(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_DIMENSION)
        }
    }
}
