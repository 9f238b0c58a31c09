//! The `grd` command line.
//!
//! [`run`] takes the full argument vector and returns the exit code and the
//! text destined for stdout and stderr, so the whole front end can be
//! exercised without spawning processes.
//!
//! Exit codes: `0` success (a `false` verdict is still a success), `1`
//! failed internal self-check, `2` malformed input, `3` domain error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use grd_core::algebra::{divides_brute, exact_divide, laurent_embed, parity_project, parse_laurent, to_algebra};
use grd_core::classify::{canonical_form, equivalent, implies};
use grd_core::exact::parse_rational;
use grd_core::report::versioned;
use grd_core::schemes::{
    catalog, parity_split, parity_structure, parse_scheme_ref, CatalogEntry, DiffScheme, Parity,
};
use grd_core::witness::{
    probe, verify_witness, witness_same_order, Branch, FunctionSpec, ProbeSequence, WitnessParams,
    DEFAULT_SCALE_COUNT,
};
use grd_core::Error;

#[derive(Parser, Debug)]
#[command(name = "grd", version, about = "Exact analysis of generalized Riemann differences")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moments, order, excess and parity structure of a scheme.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        scheme: String,
    },
    /// Even and odd components and their Laurent images.
    Split {
        #[arg(allow_hyphen_values = true)]
        scheme: String,
    },
    /// Whether differentiability for --from implies it for --to.
    Implies {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Equivalence of two schemes with the relating constants.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Canonical representative of the equivalence class.
    Canon {
        #[arg(allow_hyphen_values = true)]
        scheme: String,
    },
    /// Exact division of Laurent polynomials over the primes.
    Divides {
        #[arg(long, allow_hyphen_values = true)]
        num: String,
        #[arg(long, allow_hyphen_values = true)]
        den: String,
        /// Use the brute-force linear solve with this box margin.
        #[arg(long)]
        brute: Option<u32>,
    },
    /// Build and verify a function separating two same-order schemes.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        /// Number of scales M.
        #[arg(long, default_value_t = DEFAULT_SCALE_COUNT)]
        scales: u32,
        /// Window radius L (default 2l+1).
        #[arg(long)]
        window: Option<u32>,
    },
    /// Exact difference quotients of a function at 0.
    Probe {
        #[arg(allow_hyphen_values = true)]
        scheme: String,
        /// power_on_rationals(m), indicator_of_rationals,
        /// zero_on_rationals_identity_off, abs or polynomial(c0, c1, ...).
        #[arg(long)]
        function: String,
        /// rational, sqrt2 or signed_alternating.
        #[arg(long, default_value = "rational")]
        branch: String,
        #[arg(long, default_value = "1/2")]
        ratio: String,
        #[arg(long, default_value_t = 8)]
        count: u32,
    },
    /// List catalog entries, or show one.
    Catalog { entry: Option<String> },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

const CATALOG_NAMES: [&str; 5] = [
    "riemann(n)",
    "symmetric(n)",
    "symmetric_centered_1",
    "theorem1(A, r)",
    "example3iii",
];

/// Runs the command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(record) => Outcome {
            code: 0,
            stdout: match cli.format {
                Format::Machine => format!("{record}\n"),
                Format::Text => render_text(&record),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_input_error() => 2,
        Error::Inconsistent(_) => 1,
        _ => 3,
    }
}

fn scheme_arg(text: &str) -> grd_core::Result<DiffScheme> {
    parse_scheme_ref(text)
}

fn execute(command: &Command) -> grd_core::Result<Value> {
    match command {
        Command::Analyze { scheme } => {
            let s = scheme_arg(scheme)?;
            let profile = s.profile();
            let structure = match profile.grd_order() {
                Some(_) => serde_json::to_value(parity_structure(&s)?).expect("serializable"),
                None => Value::Null,
            };
            Ok(versioned(
                "analyze",
                &json!({
                    "scheme": s.to_string(),
                    "profile": profile,
                    "parity_structure": structure,
                }),
            ))
        }
        Command::Split { scheme } => {
            let s = scheme_arg(scheme)?;
            let split = parity_split(&s);
            let alpha = to_algebra(&s)?;
            let image = |p: Parity| -> grd_core::Result<(String, String)> {
                let part = parity_project(&alpha, p);
                Ok((part.to_string(), laurent_embed(&part)?.0.to_string()))
            };
            let (even_part, even_image) = image(Parity::Even)?;
            let (odd_part, odd_image) = image(Parity::Odd)?;
            Ok(versioned(
                "split",
                &json!({
                    "scheme": s.to_string(),
                    "even": split.even.to_string(),
                    "odd": split.odd.to_string(),
                    "epsilon": split.epsilon,
                    "algebra_element": alpha.to_string(),
                    "even_part": even_part,
                    "odd_part": odd_part,
                    "even_image": even_image,
                    "odd_image": odd_image,
                }),
            ))
        }
        Command::Implies { from, to } => {
            let (s, t) = (scheme_arg(from)?, scheme_arg(to)?);
            let mut record = versioned("implies", &implies(&s, &t)?);
            insert(&mut record, "antecedent", s.to_string());
            insert(&mut record, "consequent", t.to_string());
            Ok(record)
        }
        Command::Equiv { a, b } => {
            let (x, y) = (scheme_arg(a)?, scheme_arg(b)?);
            let mut record = versioned("equiv", &equivalent(&x, &y)?);
            insert(&mut record, "a", x.to_string());
            insert(&mut record, "b", y.to_string());
            Ok(record)
        }
        Command::Canon { scheme } => {
            let s = scheme_arg(scheme)?;
            let mut record = versioned("canon", &canonical_form(&s)?);
            insert(&mut record, "scheme", s.to_string());
            Ok(record)
        }
        Command::Divides { num, den, brute } => {
            let n = parse_laurent(num)?;
            let d = parse_laurent(den)?;
            let (quotient, method) = match brute {
                Some(bound) => (divides_brute(&n, &d, *bound)?, format!("brute({bound})")),
                None => (exact_divide(&n, &d)?, "grlex".to_string()),
            };
            Ok(versioned(
                "divides",
                &json!({
                    "numerator": n.to_string(),
                    "denominator": d.to_string(),
                    "divides": quotient.is_some(),
                    "quotient": quotient.map(|q| q.to_string()),
                    "method": method,
                }),
            ))
        }
        Command::Witness { from, to, scales, window } => {
            let (s, t) = (scheme_arg(from)?, scheme_arg(to)?);
            let params = WitnessParams {
                scale_count: *scales,
                window_radius: *window,
            };
            let w = witness_same_order(&s, &t, &params)?;
            let verification = verify_witness(&w, &s, &t)?;
            Ok(versioned(
                "witness",
                &json!({
                    "antecedent": s.to_string(),
                    "consequent": t.to_string(),
                    "witness": w.record(),
                    "verification": verification,
                }),
            ))
        }
        Command::Probe { scheme, function, branch, ratio, count } => {
            let s = scheme_arg(scheme)?;
            let f: FunctionSpec = function.parse()?;
            let branch: Branch = branch.parse()?;
            let sequence = ProbeSequence::new(branch, parse_rational(ratio)?, *count);
            let report = probe(&s, &f, &sequence)?;
            let mut record = versioned("probe", &report);
            insert(&mut record, "scheme", s.to_string());
            insert(&mut record, "function", f.to_string());
            insert(&mut record, "branch", branch.to_string());
            insert(&mut record, "ratio", sequence.ratio.to_string());
            insert(&mut record, "count", Value::from(*count));
            Ok(record)
        }
        Command::Catalog { entry: None } => {
            Ok(versioned("catalog", &json!({ "entries": CATALOG_NAMES })))
        }
        Command::Catalog { entry: Some(name) } => {
            let entry: CatalogEntry = name.parse()?;
            let s = catalog(&entry)?;
            Ok(versioned(
                "catalog",
                &json!({
                    "entry": entry.to_string(),
                    "scheme": s.to_string(),
                    "profile": s.profile(),
                }),
            ))
        }
    }
}

fn insert(record: &mut Value, key: &str, value: impl Into<Value>) {
    record
        .as_object_mut()
        .expect("records are objects")
        .insert(key.to_string(), value.into());
}

/// One `path: value` line per leaf of the record, in key order.
pub fn render_text(record: &Value) -> String {
    let mut out = String::new();
    flatten("", record, &mut out);
    out
}

fn flatten(path: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => flatten_object(path, map, out),
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar_text).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), item, out);
            }
        }
        scalar => out.push_str(&format!("{path}: {}\n", scalar_text(scalar))),
    }
}

fn flatten_object(path: &str, map: &Map<String, Value>, out: &mut String) {
    for (key, value) in map {
        let child = if path.is_empty() {
            key.clone()
        } else {
            format!("{path}.{key}")
        };
        flatten(&child, value, out);
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}
