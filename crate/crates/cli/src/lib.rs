//! The `zpspec` command line: every subcommand prints one newline-terminated JSON
//! document, except `draw`, which emits SVG or TikZ.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Number;

use zpspec::diagram::{
    plan_global_diagram, plan_zp_diagram, render, DiagramError, Format, RenderOptions,
    DEFAULT_BUDGET,
};
use zpspec::hensel::{
    lift_int_poly, roots_in_zp, working_precision, HenselError, DEFAULT_PRECISION,
};
use zpspec::padic::{abs_p, vp_int, vp_rat, PadicError, PadicInt, Prime, Valuation};
use zpspec::poly::{
    fp_factor, parse_poly, FpFactorization, FpPoly, IntPoly, ParseError, PolyError, ZpPoly,
};
use zpspec::spectrum::{
    qp_irreducible, z_family_report, zp_family_report, Anchor, FiberReport, GenericVerdict,
    SpectrumError,
};

#[derive(Debug, Parser)]
#[command(
    name = "zpspec",
    version,
    about = "p-adic arithmetic and pictures of Spec Z_p[T]"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-adic valuation and absolute value of a rational `a` or `a/b`
    Vp {
        #[arg(allow_hyphen_values = true)]
        rational: String,
        #[arg(long)]
        p: Prime,
    },
    /// Truncation sequence of an integer in Z_p: residues mod p, p^2, ..., p^depth
    Embed {
        #[arg(allow_hyphen_values = true)]
        int: BigInt,
        #[arg(long)]
        p: Prime,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
    },
    /// Hensel-lift a root of `poly` from an integer seed
    Lift {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: Prime,
        #[arg(long, allow_hyphen_values = true)]
        seed: BigInt,
        #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(u32).range(1..))]
        prec: u32,
    },
    /// All roots of `poly` in Z_p
    Roots {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: Prime,
        /// Residue search depth; defaults to v_p(disc) + 1
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        depth: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(u32).range(1..))]
        prec: u32,
    },
    /// Irreducibility of `poly` over F_p, Z_p or Q_p
    Irred {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: Prime,
        #[arg(long, value_enum, default_value_t = Over::Qp)]
        over: Over,
        /// Treat an undecided verdict as an error
        #[arg(long)]
        decide: bool,
    },
    /// Fiber-by-fiber report for `poly` over Spec Z_p or Spec Z
    Classify {
        #[arg(long)]
        poly: String,
        /// Required with `--space zp`
        #[arg(long)]
        p: Option<Prime>,
        /// `zp` or `z:` followed by a comma-separated prime list
        #[arg(long, default_value = "zp")]
        space: SpaceArg,
    },
    /// Draw the anchors' curves on Spec Z_p[T] (`--p`) or Spec Z[T] (`--primes`)
    #[command(group(ArgGroup::new("base").required(true).args(["p", "primes"])))]
    Draw {
        /// Comma-separated anchors; `p` in an anchor stands for the fiber's prime
        #[arg(long, value_delimiter = ',')]
        anchors: Vec<String>,
        /// Draw Spec Z_p[T] for this prime
        #[arg(long)]
        p: Option<Prime>,
        /// Draw Spec Z[T] with these fibers, comma-separated
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<Prime>>,
        #[arg(long, value_enum, default_value_t = FormatArg::Svg)]
        format: FormatArg,
        /// Output path; `-` is standard output
        #[arg(long, default_value = "-")]
        out: String,
        /// Closed points marked per fiber in the global picture
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Over {
    Fp,
    Zp,
    Qp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Svg,
    Tikz,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceArg {
    Zp,
    Z(Vec<Prime>),
}

impl FromStr for SpaceArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "zp" {
            return Ok(SpaceArg::Zp);
        }
        let list = s
            .strip_prefix("z:")
            .ok_or_else(|| format!("expected `zp` or `z:<primes>`, got {s:?}"))?;
        let primes = list
            .split(',')
            .map(|q| q.parse::<Prime>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SpaceArg::Z(primes))
    }
}

/// A domain failure, printed as `{"error":{"kind":..,"message":..}}` with status 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn new(kind: &'static str, message: impl fmt::Display) -> Self {
        CliError {
            kind,
            message: message.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Inner<'a> {
            kind: &'a str,
            message: &'a str,
        }
        #[derive(Serialize)]
        struct Outer<'a> {
            error: Inner<'a>,
        }
        let doc = Outer {
            error: Inner {
                kind: self.kind,
                message: &self.message,
            },
        };
        serde_json::to_string(&doc).expect("plain strings serialize") + "\n"
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::new("parse", e)
    }
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        CliError::new("padic", e)
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::new("poly", e)
    }
}

impl From<HenselError> for CliError {
    fn from(e: HenselError) -> Self {
        CliError::new("hensel", e)
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        CliError::new("spectrum", e)
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::new("diagram", e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new("io", e)
    }
}

fn big(x: &BigInt) -> Number {
    Number::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("outputs serialize") + "\n"
}

#[derive(Serialize)]
struct VpOut {
    input: String,
    p: Prime,
    valuation: Valuation,
    abs: String,
}

#[derive(Serialize)]
struct LiftChecks {
    /// `f(alpha) ≡ 0 mod p^prec`, evaluated over `Z`.
    root: bool,
    /// `alpha ≡ seed mod p^(v(f'(seed)) + 1)`, capped at `prec`.
    congruent_to_seed: bool,
}

#[derive(Serialize)]
struct LiftOut {
    poly: String,
    p: Prime,
    seed: Number,
    precision: u32,
    alpha: PadicInt,
    digits: String,
    distance_valuation: Valuation,
    fprime_valuation: Valuation,
    trace: Vec<u32>,
    checks: LiftChecks,
}

#[derive(Serialize)]
struct RootOut {
    alpha: PadicInt,
    digits: String,
    fprime_valuation: Valuation,
}

#[derive(Serialize)]
struct RootsOut {
    poly: String,
    p: Prime,
    depth: u32,
    precision: u32,
    roots: Vec<RootOut>,
    multiple: Vec<PadicInt>,
}

#[derive(Serialize)]
struct FpOut {
    verdict: &'static str,
    factorization: FpFactorization,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ZpOut {
    Content {
        verdict: &'static str,
        reason: String,
    },
    Generic(GenericVerdict),
}

#[derive(Serialize)]
struct Written<'a> {
    written: &'a str,
    format: &'a str,
    bytes: usize,
}

fn poly_arg(src: &str) -> Result<IntPoly, CliError> {
    Ok(parse_poly(src)?)
}

fn parse_rational(src: &str) -> Result<(BigInt, BigInt), CliError> {
    let bad = || CliError::new("parse", format!("expected an integer or a/b, got {src:?}"));
    let (num, den) = match src.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (src.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    Ok((num, den))
}

fn vp(rational: &str, p: Prime) -> Result<String, CliError> {
    let (num, den) = parse_rational(rational)?;
    let valuation = vp_rat(&num, &den, p)?;
    let input = if den == BigInt::from(1) {
        num.to_string()
    } else {
        format!("{num}/{den}")
    };
    Ok(json_line(&VpOut {
        input,
        p,
        valuation,
        abs: abs_p(valuation, p).to_string(),
    }))
}

fn embed(int: &BigInt, p: Prime, depth: u32) -> Result<String, CliError> {
    let x = PadicInt::from_int(int, p, depth)?;
    let seq: Vec<Number> = x.truncation_sequence().iter().map(big).collect();
    Ok(json_line(&seq))
}

fn lift(poly: &str, p: Prime, seed: &BigInt, prec: u32) -> Result<String, CliError> {
    let f = poly_arg(poly)?;
    let root = lift_int_poly(&f, p, seed, prec)?;
    let alpha = root.alpha.residue();
    let at_least = |x: &BigInt, n: u32| vp_int(x, p) >= Valuation::from(n);
    let e = root.fprime_valuation.finite().unwrap_or(0) as u32;
    let checks = LiftChecks {
        root: at_least(&f.eval(alpha), prec),
        congruent_to_seed: at_least(&(alpha - seed), (e + 1).min(prec)),
    };
    Ok(json_line(&LiftOut {
        poly: f.to_string(),
        p,
        seed: big(seed),
        precision: prec,
        digits: root.alpha.digit_string(),
        alpha: root.alpha,
        distance_valuation: root.distance_valuation,
        fprime_valuation: root.fprime_valuation,
        trace: root.trace,
        checks,
    }))
}

fn roots(poly: &str, p: Prime, depth: Option<u32>, prec: u32) -> Result<String, CliError> {
    let f = poly_arg(poly)?;
    let zf = ZpPoly::from_int_poly(&f, p, working_precision(&f, p, prec))?;
    let search = roots_in_zp(&zf, depth, prec)?;
    Ok(json_line(&RootsOut {
        poly: f.to_string(),
        p,
        depth: search.depth,
        precision: prec,
        roots: search
            .simple
            .into_iter()
            .map(|r| RootOut {
                digits: r.alpha.digit_string(),
                alpha: r.alpha,
                fprime_valuation: r.fprime_valuation,
            })
            .collect(),
        multiple: search.multiple,
    }))
}

fn decided(verdict: &GenericVerdict, decide: bool) -> Result<(), CliError> {
    match verdict {
        GenericVerdict::Undecided { reason } if decide => Err(CliError::new("undecided", reason)),
        _ => Ok(()),
    }
}

fn irred(poly: &str, p: Prime, over: Over, decide: bool) -> Result<String, CliError> {
    let f = poly_arg(poly)?;
    match over {
        Over::Fp => {
            let factorization = fp_factor(&FpPoly::from_int_poly(&f, p))?;
            if factorization.factors.is_empty() {
                return Err(PolyError::ConstantPolynomial.into());
            }
            let irreducible = matches!(factorization.factors.as_slice(), [(_, 1)]);
            Ok(json_line(&FpOut {
                verdict: if irreducible {
                    "irreducible"
                } else {
                    "reducible"
                },
                factorization,
            }))
        }
        Over::Zp => {
            if f.degree().unwrap_or(0) >= 1 && vp_int(&f.content(), p) >= Valuation::from(1u32) {
                return Ok(json_line(&ZpOut::Content {
                    verdict: "reducible",
                    reason: format!("{p} divides every coefficient"),
                }));
            }
            let verdict = qp_irreducible(&f.primitive_part(), p)?;
            decided(&verdict, decide)?;
            Ok(json_line(&ZpOut::Generic(verdict)))
        }
        Over::Qp => {
            let verdict = qp_irreducible(&f.primitive_part(), p)?;
            decided(&verdict, decide)?;
            Ok(json_line(&verdict))
        }
    }
}

fn classify(poly: &str, p: Option<Prime>, space: &SpaceArg) -> Result<String, CliError> {
    let anchor = Anchor::parse(poly)?;
    let report = match space {
        SpaceArg::Zp => {
            let p = p.ok_or_else(|| CliError::new("usage", "--space zp needs --p"))?;
            zp_family_report(&anchor, p)?
        }
        SpaceArg::Z(primes) => z_family_report(&anchor, primes)?,
    };
    Ok(json_line(&report))
}

fn parse_anchors(anchors: &[String]) -> Result<Vec<Anchor>, CliError> {
    anchors
        .iter()
        .filter(|a| !a.trim().is_empty())
        .map(|a| Ok(Anchor::parse(a)?))
        .collect()
}

/// The rendered document for a `draw` command.
pub fn draw_document(
    anchors: &[String],
    p: Option<Prime>,
    primes: Option<&[Prime]>,
    format: FormatArg,
    budget: usize,
) -> Result<String, CliError> {
    let anchors = parse_anchors(anchors)?;
    let spec = match (p, primes) {
        (Some(p), _) => {
            let reports = anchors
                .iter()
                .map(|a| zp_family_report(a, p))
                .collect::<Result<Vec<FiberReport>, _>>()?;
            plan_zp_diagram(p, &reports)?
        }
        (None, Some(primes)) => {
            let reports = anchors
                .iter()
                .map(|a| z_family_report(a, primes))
                .collect::<Result<Vec<FiberReport>, _>>()?;
            plan_global_diagram(primes, &reports, budget)?
        }
        (None, None) => return Err(CliError::new("usage", "draw needs --p or --primes")),
    };
    let format = match format {
        FormatArg::Svg => Format::Svg,
        FormatArg::Tikz => Format::Tikz,
    };
    Ok(render(&spec, &RenderOptions::with_format(format))?)
}

/// Runs a parsed command, returning what goes to standard output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Vp { rational, p } => vp(rational, *p),
        Command::Embed { int, p, depth } => embed(int, *p, *depth),
        Command::Lift {
            poly,
            p,
            seed,
            prec,
        } => lift(poly, *p, seed, *prec),
        Command::Roots {
            poly,
            p,
            depth,
            prec,
        } => roots(poly, *p, *depth, *prec),
        Command::Irred {
            poly,
            p,
            over,
            decide,
        } => irred(poly, *p, *over, *decide),
        Command::Classify { poly, p, space } => classify(poly, *p, space),
        Command::Draw {
            anchors,
            p,
            primes,
            format,
            out,
            budget,
        } => {
            let doc = draw_document(anchors, *p, primes.as_deref(), *format, *budget)?;
            if out == "-" {
                return Ok(doc);
            }
            std::fs::write(out, &doc)?;
            let format = match format {
                FormatArg::Svg => "svg",
                FormatArg::Tikz => "tikz",
            };
            Ok(json_line(&Written {
                written: out,
                format,
                bytes: doc.len(),
            }))
        }
    }
}

/// Parses `args` (program name first), runs the command and writes its output.
/// Returns the exit status: 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let (text, code) = match execute(&cli) {
        Ok(text) => (text, 0),
        Err(e) if e.kind == "usage" => {
            let _ = writeln!(err, "error: {}", e.message);
            return 2;
        }
        Err(e) => (e.to_json(), 1),
    };
    if out
        .write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return 1;
    }
    code
}
