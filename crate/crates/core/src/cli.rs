//! The `alpha-cf` command line.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    boxcount_dimension, coverage, entropy_curve, estimate_entropy, family_name, write_coverage_csv,
    write_dimension_csv, write_entropy_csv, EntropyEstimate,
};
use crate::bifurcation::{
    gamma_beta_eta, gen_rational_members, hat_c_embed, in_e, MembershipVerdict, Method,
};
use crate::cfdyn::{orbit, FamilyKind};
use crate::error::{Error, Result};
use crate::exactnum::{rcf_eval, rcf_expand, QuadraticNumber, Rational, RcfExpansion};
use crate::matching::{
    detect_matching, interval_containing, scan_intervals, MatchOutcome, MatchVerdict,
    MatchingInterval,
};

pub const SCHEMA: &str = "alpha-cf/1";

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "alpha-cf", version, about = "Exact Tanaka-Ito continued fraction dynamics")]
struct Cli {
    /// Seed for stochastic estimates.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Orbit step budget.
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: usize,
    #[arg(long, global = true, conflicts_with_all = ["csv", "human"])]
    json: bool,
    #[arg(long, global = true, conflicts_with = "human")]
    csv: bool,
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Regular continued fraction expansion of an exact number.
    Expand { value: String },
    /// Value of an expansion such as "[0;1,(2)]".
    Eval { expansion: String },
    /// Exact orbit of a point (default: alpha - 1).
    Orbit {
        alpha: String,
        #[arg(long)]
        x: Option<String>,
        #[arg(long, value_enum, default_value_t = Family::Ti)]
        family: Family,
        #[arg(long, default_value_t = 50)]
        steps: usize,
    },
    /// Matching exponents of a parameter.
    Match { alpha: String },
    /// The matching interval containing a parameter.
    Interval { alpha: String },
    /// All matching intervals through rationals of bounded denominator.
    Scan(RangeArgs),
    /// Membership in the bifurcation set.
    Member {
        alpha: String,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Generate members of the bifurcation set.
    GenMembers {
        #[arg(long, value_enum)]
        family: GenFamily,
        /// For nminus1: largest n. For hatC: the run parameter.
        #[arg(long)]
        n: Option<u64>,
        /// For hatC: the expansion to embed.
        #[arg(long)]
        expansion: Option<String>,
        /// For gamma: largest a.
        #[arg(long)]
        a_max: Option<u32>,
    },
    /// Entropy estimate at one parameter.
    Entropy {
        alpha: String,
        #[arg(long, value_enum, default_value_t = Family::Ti)]
        family: Family,
        #[arg(long, default_value_t = 10_000)]
        n_iter: usize,
        #[arg(long, default_value_t = 1_000)]
        n_samples: usize,
    },
    /// Entropy on a grid, for one or more families.
    Curve {
        #[arg(long)]
        lo: f64,
        #[arg(long)]
        hi: f64,
        #[arg(long)]
        step: f64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "ti,n")]
        families: Vec<Family>,
        #[arg(long, default_value_t = 2_000)]
        n_iter: usize,
        #[arg(long, default_value_t = 200)]
        n_samples: usize,
    },
    /// Measure covered by matching intervals, for one or more denominator bounds.
    Coverage {
        #[arg(long, default_value = "g")]
        lo: String,
        #[arg(long, default_value = "1")]
        hi: String,
        #[arg(long, value_delimiter = ',', required = true)]
        max_den: Vec<u64>,
    },
    /// Box-counting slope of the uncovered set.
    Dim {
        #[command(flatten)]
        range: RangeArgs,
        /// Dyadic levels; the box width is (hi - lo) / 2^level.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<u32>>,
    },
}

#[derive(Args, Debug)]
struct RangeArgs {
    #[arg(long, default_value = "g")]
    lo: String,
    #[arg(long, default_value = "1")]
    hi: String,
    #[arg(long)]
    max_den: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Ti,
    N,
    Gauss,
}

impl From<Family> for FamilyKind {
    fn from(f: Family) -> Self {
        match f {
            Family::Ti => FamilyKind::TanakaIto,
            Family::N => FamilyKind::Nakada,
            Family::Gauss => FamilyKind::Gauss,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Talpha,
    Tg,
    Gauss,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenFamily {
    Nminus1,
    #[value(name = "hatC")]
    HatC,
    Gamma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Human,
}

/// Exit status and the two output streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A parsed parameter: exact, or a decimal bracketed by its two neighbouring doubles.
struct Alpha {
    value: QuadraticNumber,
    bracket: Option<(QuadraticNumber, QuadraticNumber)>,
}

fn parse_number(s: &str) -> Result<QuadraticNumber> {
    let t = s.trim();
    if t == "g" {
        return Ok(QuadraticNumber::golden());
    }
    if t.starts_with('[') {
        return Ok(rcf_eval(&t.parse()?));
    }
    t.parse()
}

fn is_decimal(s: &str) -> bool {
    let t = s.trim();
    (t.contains('.') || t.contains('e') || t.contains('E'))
        && !t.contains('/')
        && !t.contains('[')
        && !t.contains("sqrt")
        && t.parse::<f64>().is_ok()
}

fn parse_alpha(s: &str) -> Result<Alpha> {
    if is_decimal(s) {
        let x: f64 = s.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        if !x.is_finite() {
            return Err(Error::Parse(s.to_string()));
        }
        let q = |v: f64| Rational::from_f64_exact(v).map(|r| r.to_quadratic());
        return Ok(Alpha {
            value: q(x)?,
            bracket: Some((q(x.next_down())?, q(x.next_up())?)),
        });
    }
    Ok(Alpha {
        value: parse_number(s)?,
        bracket: None,
    })
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA));
    }
    v
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Internal(e.to_string()))
}

fn exact_json(x: &QuadraticNumber) -> Value {
    json!({ "exact": x.to_string(), "float64": x.to_f64() })
}

fn error_body(e: &Error) -> String {
    let body = json!({
        "schema": SCHEMA,
        "error": { "kind": e.kind(), "message": e.to_string() }
    });
    format!("{body}\n")
}

/// Parses `argv` (including the program name) and runs the command.
pub fn parse_and_dispatch<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Output { status, stdout: text, stderr: String::new() }
            } else {
                Output { status, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Human
    };
    let run = || dispatch(&cli, format);
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(Error::Internal(e.to_string())),
        },
        None => run(),
    };
    match result {
        Ok(Ok(stdout)) => Output { status: 0, stdout, stderr: String::new() },
        Ok(Err(usage)) => Output { status: EXIT_USAGE, stdout: String::new(), stderr: usage },
        Err(e) => Output {
            status: if e.is_internal() { EXIT_INTERNAL } else { EXIT_DOMAIN },
            stdout: String::new(),
            stderr: error_body(&e),
        },
    }
}

/// `Ok(Err(message))` is a usage problem detected after parsing.
type Dispatch = Result<std::result::Result<String, String>>;

fn no_csv(verb: &str) -> Dispatch {
    Ok(Err(format!("error: `{verb}` has no CSV output\n")))
}

fn render(format: Format, value: Value, human: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => format!("{}\n", with_schema(value)),
        _ => human(),
    }
}

fn csv_string(f: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<String> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Internal(e.to_string()))
}

fn dispatch(cli: &Cli, format: Format) -> Dispatch {
    let budget = cli.budget;
    match &cli.verb {
        Verb::Expand { value } => {
            if format == Format::Csv {
                return no_csv("expand");
            }
            let x = parse_number(value)?;
            let e = rcf_expand(&x)?;
            let v = json!({ "value": exact_json(&x), "expansion": e.to_string() });
            Ok(Ok(render(format, v, || format!("{e}\n"))))
        }
        Verb::Eval { expansion } => {
            if format == Format::Csv {
                return no_csv("eval");
            }
            let e: RcfExpansion = expansion.parse()?;
            let x = rcf_eval(&e);
            let v = json!({ "expansion": e.to_string(), "value": exact_json(&x) });
            Ok(Ok(render(format, v, || format!("{x}  ≈ {}\n", x.to_f64()))))
        }
        Verb::Orbit { alpha, x, family, steps } => {
            let a = parse_alpha(alpha)?;
            let kind = FamilyKind::from(*family);
            let x0 = match x {
                Some(s) => parse_alpha(s)?.value,
                None if kind == FamilyKind::Gauss => a.value.clone(),
                None => a.value.add_int(&num_bigint::BigInt::from(-1)),
            };
            let o = orbit(kind, &a.value, &x0, (*steps).min(budget))?;
            Ok(Ok(match format {
                Format::Csv => csv_string(|b| o.write_csv(b))?,
                Format::Json => {
                    let mut v = to_value(&o)?;
                    v["inexact"] = json!(a.bracket.is_some());
                    format!("{}\n", with_schema(v))
                }
                Format::Human => {
                    let mut s = String::new();
                    for p in &o.points {
                        let d = p.digit.as_ref().map(|d| d.to_string()).unwrap_or_default();
                        let _ = writeln!(s, "{:>4}  {:>6}  {:<24}  ≈ {}", p.index, d, p.value.to_string(), p.value.to_f64());
                    }
                    let _ = writeln!(s, "end: {:?}", o.end);
                    s
                }
            }))
        }
        Verb::Match { alpha } => {
            if format == Format::Csv {
                return no_csv("match");
            }
            let a = parse_alpha(alpha)?;
            let v = match &a.bracket {
                None => match_json(&detect_matching(&a.value, budget)?)?,
                Some((lo, hi)) => inexact_match(lo, hi, budget)?,
            };
            let human = human_match(&v);
            Ok(Ok(render(format, v, || human)))
        }
        Verb::Interval { alpha } => {
            if format == Format::Csv {
                return no_csv("interval");
            }
            let a = parse_alpha(alpha)?;
            let v = match &a.bracket {
                None => to_value(&interval_containing(&a.value, budget)?)?,
                Some((lo, hi)) => match shared_interval(lo, hi, budget)? {
                    Some(iv) => {
                        let mut v = to_value(&iv)?;
                        v["inexact"] = json!(true);
                        v
                    }
                    None => json!({ "outcome": "undecided", "inexact": true }),
                },
            };
            let human = human_interval(&v);
            Ok(Ok(render(format, v, || human)))
        }
        Verb::Scan(r) => {
            let (lo, hi) = (parse_number(&r.lo)?, parse_number(&r.hi)?);
            let scan = scan_intervals(&lo, &hi, r.max_den)?;
            Ok(Ok(match format {
                Format::Json => {
                    let v = json!({
                        "lo": exact_json(&lo),
                        "hi": exact_json(&hi),
                        "maxDen": r.max_den,
                        "intervals": to_value(&scan.intervals)?,
                        "members": to_value(&scan.members)?,
                    });
                    format!("{}\n", with_schema(v))
                }
                Format::Csv => csv_string(|b| write_intervals_csv(&scan.intervals, b))?,
                Format::Human => {
                    let mut s = String::new();
                    for iv in &scan.intervals {
                        let _ = writeln!(
                            s,
                            "({:.12}, {:.12})  M={} N={}  index {:>2}  pseudocenter {}",
                            iv.left_float, iv.right_float, iv.exp_m, iv.exp_n, iv.index, iv.pseudocenter
                        );
                    }
                    let _ = writeln!(
                        s,
                        "{} intervals, {} rationals in the bifurcation set",
                        scan.intervals.len(),
                        scan.members.len()
                    );
                    s
                }
            }))
        }
        Verb::Member { alpha, method } => {
            let a = parse_alpha(alpha)?;
            let methods: Vec<Method> = match method {
                MethodArg::Talpha => vec![Method::ViaTalpha],
                MethodArg::Tg => vec![Method::ViaTg],
                MethodArg::Gauss => vec![Method::ViaGauss],
                MethodArg::All => vec![Method::ViaTalpha, Method::ViaTg, Method::ViaGauss],
            };
            let verdicts: Vec<Value> = match &a.bracket {
                None => methods
                    .iter()
                    .map(|m| in_e(&a.value, *m, budget).and_then(|v| to_value(&v)))
                    .collect::<Result<_>>()?,
                Some((lo, hi)) => {
                    let member = if shared_interval(lo, hi, budget)?.is_some() { "No" } else { "Undecided" };
                    methods
                        .iter()
                        .map(|m| json!({ "alpha": a.value.to_string(), "member": member, "method": m, "inexact": true }))
                        .collect()
                }
            };
            Ok(Ok(match format {
                Format::Json => format!("{}\n", with_schema(json!({ "verdicts": verdicts }))),
                Format::Csv => {
                    let mut s = String::from("method,member,termination,witness_n\n");
                    for v in &verdicts {
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            plain(&v["method"]),
                            plain(&v["member"]),
                            plain(&v["terminationReason"]),
                            plain(&v["witness"]["n"])
                        );
                    }
                    s
                }
                Format::Human => {
                    let mut s = format!("{}  ≈ {}\n", a.value, a.value.to_f64());
                    for v in &verdicts {
                        let _ = writeln!(s, "{:<10} {}", plain(&v["method"]), plain(&v["member"]));
                    }
                    s
                }
            }))
        }
        Verb::GenMembers { family, n, expansion, a_max } => {
            let values: Vec<Value> = match family {
                GenFamily::Nminus1 => {
                    let n = n.ok_or_else(|| Error::Domain("--n is required for nminus1".into()))?;
                    if n < 3 {
                        return Err(Error::Domain(format!("--n {n} must be at least 3")));
                    }
                    gen_rational_members(n)?
                        .iter()
                        .map(|r| exact_json(&r.to_quadratic()))
                        .collect()
                }
                GenFamily::HatC => {
                    let n = n.ok_or_else(|| Error::Domain("--n is required for hatC".into()))?;
                    let e: RcfExpansion = expansion.as_deref().unwrap_or("[0;(2)]").parse()?;
                    let x = hat_c_embed(n as usize, &e)?;
                    let mut v = exact_json(&x);
                    v["expansion"] = json!(rcf_expand(&x)?.to_string());
                    vec![v]
                }
                GenFamily::Gamma => {
                    let a_max = a_max.ok_or_else(|| Error::Domain("--a-max is required for gamma".into()))?;
                    (2..=a_max)
                        .map(|a| {
                            let s = gamma_beta_eta(a)?;
                            Ok(json!({
                                "a": a,
                                "beta": exact_json(&s.beta),
                                "gamma": exact_json(&s.gamma),
                                "eta": exact_json(&s.eta),
                                "lowerPseudocenter": s.lower.pseudocenter.to_string(),
                                "upperPseudocenter": s.upper.pseudocenter.to_string(),
                            }))
                        })
                        .collect::<Result<_>>()?
                }
            };
            Ok(Ok(match format {
                Format::Json => format!("{}\n", with_schema(json!({ "members": values }))),
                _ => {
                    let mut s = if format == Format::Csv { String::from("exact,float64\n") } else { String::new() };
                    for v in &values {
                        let (e, f) = match v.get("gamma") {
                            Some(g) => (&g["exact"], &g["float64"]),
                            None => (&v["exact"], &v["float64"]),
                        };
                        let sep = if format == Format::Csv { "," } else { "  ≈ " };
                        let _ = writeln!(s, "{}{sep}{}", plain(e), plain(f));
                    }
                    s
                }
            }))
        }
        Verb::Entropy { alpha, family, n_iter, n_samples } => {
            let a = parse_alpha(alpha)?;
            let mut e = estimate_entropy((*family).into(), a.value.to_f64(), *n_iter, *n_samples, cli.seed)?;
            if a.bracket.is_none() {
                e.exact = Some(a.value.to_string());
            }
            Ok(Ok(entropy_output(format, &[e])?))
        }
        Verb::Curve { lo, hi, step, families, n_iter, n_samples } => {
            let fams: Vec<FamilyKind> = families.iter().map(|f| (*f).into()).collect();
            let rows = entropy_curve(&fams, *lo, *hi, *step, *n_iter, *n_samples, cli.seed)?;
            Ok(Ok(entropy_output(format, &rows)?))
        }
        Verb::Coverage { lo, hi, max_den } => {
            let (lo, hi) = (parse_number(lo)?, parse_number(hi)?);
            let reports = max_den
                .iter()
                .map(|&d| coverage(d, &lo, &hi))
                .collect::<Result<Vec<_>>>()?;
            Ok(Ok(match format {
                Format::Json => format!("{}\n", with_schema(json!({ "reports": to_value(&reports)? }))),
                Format::Csv => csv_string(|b| write_coverage_csv(&reports, b))?,
                Format::Human => {
                    let mut s = String::new();
                    for r in &reports {
                        let _ = writeln!(
                            s,
                            "max denominator {:>6}: {} intervals cover {:.9} ({:.6} of the range)",
                            r.max_den, r.interval_count, r.covered, r.fraction
                        );
                    }
                    s
                }
            }))
        }
        Verb::Dim { range, levels } => {
            let (lo, hi) = (parse_number(&range.lo)?, parse_number(&range.hi)?);
            let d = boxcount_dimension(&lo, &hi, range.max_den, levels.as_deref())?;
            Ok(Ok(match format {
                Format::Json => format!("{}\n", with_schema(to_value(&d)?)),
                Format::Csv => csv_string(|b| write_dimension_csv(&d, b))?,
                Format::Human => {
                    let mut s = String::new();
                    for (w, c) in d.scales.iter().zip(&d.counts) {
                        let _ = writeln!(s, "width {w:.3e}: {c} boxes");
                    }
                    let _ = writeln!(s, "slope {:.4} (r2 {:.4}), an upper estimate", d.slope, d.r2);
                    s
                }
            }))
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn match_json(v: &MatchVerdict) -> Result<Value> {
    let mut out = to_value(v)?;
    if let Some(obj) = out.as_object_mut() {
        if let Some(Value::Object(outcome)) = obj.remove("outcome") {
            for (k, val) in outcome {
                obj.insert(k, val);
            }
        }
        obj.insert("index".into(), json!(v.index()));
        obj.insert("alpha".into(), exact_json(&v.alpha));
    }
    Ok(out)
}

fn shared_interval(lo: &QuadraticNumber, hi: &QuadraticNumber, budget: usize) -> Result<Option<MatchingInterval>> {
    let get = |x: &QuadraticNumber| match interval_containing(x, budget) {
        Ok(iv) => Ok(Some(iv)),
        Err(Error::NotInMatchingInterval(_) | Error::Undecided(_)) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(match (get(lo)?, get(hi)?) {
        (Some(a), Some(b)) if a.pseudocenter == b.pseudocenter => Some(a),
        _ => None,
    })
}

fn inexact_match(lo: &QuadraticNumber, hi: &QuadraticNumber, budget: usize) -> Result<Value> {
    let (a, b) = (detect_matching(lo, budget)?, detect_matching(hi, budget)?);
    let same = shared_interval(lo, hi, budget)?.is_some() && a.exponents() == b.exponents();
    Ok(match (&a.outcome, same) {
        (MatchOutcome::Matched { exp_m, exp_n, .. }, true) => json!({
            "outcome": "matched",
            "M": exp_m,
            "N": exp_n,
            "index": a.index(),
            "inexact": true,
        }),
        _ => json!({ "outcome": "undecided", "inexact": true }),
    })
}

fn human_match(v: &Value) -> String {
    match v["outcome"].as_str() {
        Some("matched") => format!("matched: M = {}, N = {}, index {}\n", v["M"], v["N"], v["index"]),
        Some("inBifurcationSet") => format!("in the bifurcation set ({})\n", v["witness"]),
        _ => "undecided\n".to_string(),
    }
}

fn human_interval(v: &Value) -> String {
    if v.get("left").is_none() {
        return "undecided\n".to_string();
    }
    format!(
        "({}, {})\n  ≈ ({}, {})\n  M = {}, N = {}, index {}, pseudocenter {}\n",
        plain(&v["left"]),
        plain(&v["right"]),
        v["leftFloat"],
        v["rightFloat"],
        v["M"],
        v["N"],
        v["index"],
        plain(&v["pseudocenter"])
    )
}

fn write_intervals_csv<W: std::io::Write>(intervals: &[MatchingInterval], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record([
        "left", "right", "left_float", "right_float", "M", "N", "index", "pseudocenter", "case", "n",
    ])
    .map_err(err)?;
    for iv in intervals {
        w.write_record([
            iv.left.to_string(),
            iv.right.to_string(),
            iv.left_float.to_string(),
            iv.right_float.to_string(),
            iv.exp_m.to_string(),
            iv.exp_n.to_string(),
            iv.index.to_string(),
            iv.pseudocenter.to_string(),
            format!("{:?}", iv.case_tag),
            iv.gauss_index.map(|n| n.to_string()).unwrap_or_default(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::Internal(e.to_string()))
}

fn entropy_output(format: Format, rows: &[EntropyEstimate]) -> Result<String> {
    Ok(match format {
        Format::Json => format!("{}\n", with_schema(json!({ "estimates": to_value(&rows)? }))),
        Format::Csv => csv_string(|b| write_entropy_csv(rows, b))?,
        Format::Human => {
            let mut s = String::new();
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:<5} alpha {:.6}: {:.5} ± {:.5} nats (n = {}, samples = {}, seed {})",
                    family_name(r.family),
                    r.alpha,
                    r.mean,
                    r.std_error,
                    r.n_iter,
                    r.n_samples,
                    r.seed
                );
            }
            s
        }
    })
}

/// Membership verdict as it is printed, for callers that want the same shape.
pub fn membership_json(v: &MembershipVerdict) -> Result<Value> {
    Ok(with_schema(to_value(v)?))
}
