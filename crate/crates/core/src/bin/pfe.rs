//! `pfe`: exact probabilistic Stirling tables, Frobenius–Euler families and
//! basis expansions from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or
//! parameter error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pfe::closedforms::{closed_falling, closed_monomial};
use pfe::exact::{rat_parse, Rational};
use pfe::export::{
    closed_form_doc, expansion_doc, family_doc, table_doc, table_to_csv, to_pretty,
};
use pfe::parse::parse_poly;
use pfe::represent::Theorem;
use pfe::stirling::build_table;
use pfe::verify::{all_passed, run_suite, Suite};
use pfe::{build_family, FamilySpec, Formula, MomentModel, Representer, StirlingFamily};

#[derive(Parser)]
#[command(name = "pfe", version, about = "Exact probabilistic Stirling numbers and Frobenius-Euler polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a Stirling-number table.
    Stirling(StirlingArgs),
    /// Emit the monomial coefficients of a polynomial family.
    Family(FamilyArgs),
    /// Expand a polynomial in a family basis.
    Expand(ExpandArgs),
    /// Expand (x)_n or x^n in the r = 1 basis through the closed forms.
    Closed(ClosedArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

fn rational(s: &str) -> Result<Rational, String> {
    rat_parse(s).map_err(|e| e.to_string())
}

fn param(s: &str) -> Result<(String, Rational), String> {
    let (name, value) = s.split_once('=').ok_or("expected name=value")?;
    Ok((name.trim().to_string(), rational(value.trim())?))
}

#[derive(Args)]
struct ModelArgs {
    /// Random-variable model: unit, bernoulli, poisson, geometric, exponential or custom.
    #[arg(long)]
    rv: Option<String>,
    /// Model parameter, e.g. `--param alpha=2`.
    #[arg(long = "param", value_parser = param, allow_hyphen_values = true)]
    params: Vec<(String, Rational)>,
    /// Moments document for `--rv custom`: {"moments": ["1", "1/2", ...]}.
    #[arg(long)]
    moments_file: Option<PathBuf>,
}

impl ModelArgs {
    fn given(&self) -> bool {
        self.rv.is_some()
    }

    fn model(&self) -> Result<MomentModel, String> {
        let kind = self.rv.as_deref().unwrap_or("unit");
        match (kind, &self.moments_file) {
            ("custom", Some(path)) => {
                if !self.params.is_empty() {
                    return Err("custom models take no --param".into());
                }
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                MomentModel::custom_from_json(&text).map_err(|e| e.to_string())
            }
            ("custom", None) => Err("--rv custom needs --moments-file".into()),
            (_, Some(_)) => Err("--moments-file only applies to --rv custom".into()),
            (kind, None) => MomentModel::from_params(kind, &self.params).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Args)]
struct SpecArgs {
    /// Frobenius-Euler parameter u (u != 1).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    u: Rational,
    /// Degeneracy parameter; 0 gives the non-degenerate family.
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
    lambda: Rational,
    /// Order r of the family.
    #[arg(long, default_value_t = 1)]
    order: usize,
    #[command(flatten)]
    model: ModelArgs,
}

impl SpecArgs {
    fn spec(&self) -> Result<FamilySpec, String> {
        FamilySpec::new(self.model.model()?, self.u.clone(), self.lambda.clone(), self.order)
            .map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct StirlingArgs {
    /// s1, s2, s1l, s2l, s1y, s2y, s1yl or s2yl.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 16)]
    nmax: usize,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
    lambda: Rational,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct FamilyArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, default_value_t = 16)]
    nmax: usize,
}

#[derive(Args)]
struct ExpandArgs {
    /// Polynomial in x, e.g. "x^4 - 3*x + 1/2".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[command(flatten)]
    spec: SpecArgs,
    /// 31, 33 or 4; defaults to the most specific theorem that fits the basis.
    #[arg(long)]
    theorem: Option<String>,
    /// 1-based formula index within the theorem.
    #[arg(long, default_value_t = 1)]
    formula: usize,
    /// Also require every formula of the theorem to agree; exit 1 otherwise.
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Falling,
    Monomial,
}

#[derive(Args)]
struct ClosedArgs {
    #[arg(long, value_enum)]
    target: TargetArg,
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    u: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
    lambda: Rational,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// orthogonality, roundtrip, closedforms, identities or all.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 8)]
    nmax: usize,
}

enum Failure {
    Usage(String),
    Check,
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

impl From<pfe::Error> for Failure {
    fn from(e: pfe::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn cmd_stirling(a: &StirlingArgs) -> Outcome {
    let family = StirlingFamily::from_code(&a.family)
        .ok_or_else(|| format!("unknown family {:?}", a.family))?;
    let model = if family.is_probabilistic() {
        if !a.model.given() {
            return Err(format!("family {family} needs --rv").into());
        }
        Some(a.model.model()?)
    } else {
        if a.model.given() {
            return Err(format!("family {family} takes no --rv").into());
        }
        None
    };
    let table = build_table(family, a.nmax, &a.lambda, model.as_ref())?;
    match a.format {
        Format::Json => println!("{}", to_pretty(&table_doc(&table))),
        Format::Csv => print!("{}", table_to_csv(&table)),
    }
    Ok(())
}

fn cmd_family(a: &FamilyArgs) -> Outcome {
    let family = build_family(&a.spec.spec()?, a.nmax)?;
    println!("{}", to_pretty(&family_doc(&family)));
    Ok(())
}

fn cmd_expand(a: &ExpandArgs) -> Outcome {
    let p = parse_poly(&a.poly).map_err(|e| format!("--poly: {e}"))?;
    let spec = a.spec.spec()?;
    let theorem = match &a.theorem {
        Some(code) => Theorem::from_code(code).ok_or_else(|| format!("unknown theorem {code:?}"))?,
        None if spec.order_r() != 1 => Theorem::HigherOrder,
        None if spec.is_degenerate() => Theorem::Degenerate,
        None => Theorem::Standard,
    };
    let formula = Formula::new(theorem, a.formula)?;
    let rep = Representer::new(&spec, p.degree().unwrap_or(0))?;
    let e = rep.expand(&p, formula)?;
    let reconstruction_ok = rep.reconstruct(&e)? == p;
    let mut doc = expansion_doc(&e, Some(reconstruction_ok));
    let mut ok = reconstruction_ok;
    if a.verify {
        let mut agree = true;
        for other in theorem.formulas() {
            agree &= rep.expand(&p, other)?.coefficients == e.coefficients;
        }
        doc.formulas_agree = Some(agree);
        ok &= agree;
    }
    println!("{}", to_pretty(&doc));
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_closed(a: &ClosedArgs) -> Outcome {
    let model = a.model.model()?;
    let spec = FamilySpec::new(model.clone(), a.u.clone(), a.lambda.clone(), 1)?;
    let (result, target) = match a.target {
        TargetArg::Falling => (closed_falling(&model, &a.u, &a.lambda, a.n)?, pfe::XPolynomial::falling(a.n)),
        TargetArg::Monomial => (closed_monomial(&model, &a.u, &a.lambda, a.n)?, pfe::XPolynomial::monomial(a.n)),
    };
    let family = build_family(&spec, a.n)?;
    let ok = family.combine(&result.coefficients) == target;
    println!("{}", to_pretty(&closed_form_doc(&result, &spec, Some(ok))));
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    let suite: Suite = a.suite.parse()?;
    let checks = run_suite(suite, a.nmax);
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} checks, {} failed", checks.len(), failed);
    if all_passed(&checks) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Stirling(a) => cmd_stirling(a),
        Command::Family(a) => cmd_family(a),
        Command::Expand(a) => cmd_expand(a),
        Command::Closed(a) => cmd_closed(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
