//! `ntl`: command-line front end for the nil Temperley-Lieb engine.
//!
//! Exit status: 0 success, 1 domain error, 2 usage error, 3 failed
//! verification.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ntl_core::algebra::{coxeter_factorization, factor_c_form, JsonTerm};
use ntl_core::enumerate::default_max_len;
use ntl_core::laurent::{format_rational, parse_rational};
use ntl_core::region::region_class;
use ntl_core::verify::{verify_with, Status, VerifyOptions, DEFAULT_SEED};
use ntl_core::{
    cf_normal_form, construct_c, coxeter_word, enumerate_minuscule, is_minuscule, matrix_of,
    q_element, rank_and_embed, weights_of, BigRational, Diagram, ERegion, Level, TElement, Weight,
    WeightMatrix, Word,
};

#[derive(Parser, Debug)]
#[command(name = "ntl", version, about = "Exact computations in the nil Temperley-Lieb algebra of type affine C")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Rank parameter (generators 0..n).
    #[arg(long)]
    n: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Read the input document from a file, `-` for stdin, or inline JSON.
    #[arg(long, value_name = "SOURCE")]
    from_json: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Dot,
    Tikz,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical word of a commutation class.
    Normalize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: Option<String>,
    },
    /// Whether a word is a reduced expression for a minuscule element.
    Minuscule {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: Option<String>,
    },
    /// Product of basis words `a * b [* c]`.
    Mul {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
    },
    /// The central element Q.
    QElement {
        #[command(flatten)]
        common: Common,
    },
    /// Upper weight, lower weight and number of zeros of a full-support word.
    Cform {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: Option<String>,
    },
    /// Largest j with the element in Q^j T(n).
    Valuation {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: Option<String>,
    },
    /// The Coxeter element of a weight.
    Coxeter {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// The word of C^r_{lambda, mu}.
    ConstructC {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long)]
        r: Option<i64>,
    },
    /// Lower and upper weights of a full-support minuscule word.
    Weights {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: Option<String>,
    },
    /// The heap of a minuscule word as a region of E(n) (json, dot or tikz).
    Heap {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: Option<String>,
    },
    /// Matrix of an element in the weight basis (json or csv).
    Matrix {
        #[command(flatten)]
        common: Common,
        /// `Q`, `1`, or a comma-separated word.
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        word: Option<String>,
    },
    /// The finite-dimensional module M_{c,m}.
    Module {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Minuscule element counts by length.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_len: Option<usize>,
        /// Include the canonical words.
        #[arg(long)]
        words: bool,
    },
    /// Run the verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        level: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Reverse the diagram's arrows for the subword oracle.
        #[arg(long)]
        inject_fault: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
    Verification(String),
}

impl From<ntl_core::Error> for Failure {
    fn from(e: ntl_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Out = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn load_json(source: &str) -> Result<Value, Failure> {
    let text = if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("--from-json: cannot read stdin: {e}")))?;
        s
    } else if source.trim_start().starts_with(['{', '[']) {
        source.to_string()
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| usage(format!("--from-json: cannot read {source:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("--from-json: invalid JSON: {e}")))
}

/// Input document (if any) and the diagram, taking `n` from the document
/// when present.
fn setup(common: &Common) -> Result<(Option<Value>, Diagram), Failure> {
    let doc = common.from_json.as_deref().map(load_json).transpose()?;
    let n = doc
        .as_ref()
        .and_then(|d| d.get("n"))
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .or(common.n)
        .ok_or_else(|| usage("missing --n"))?;
    Ok((doc, Diagram::new(n)?))
}

fn field<T: serde::de::DeserializeOwned>(doc: &Value, key: &str) -> Result<T, Failure> {
    let v = doc
        .get(key)
        .ok_or_else(|| usage(format!("--from-json: missing field {key:?}")))?;
    serde_json::from_value(v.clone()).map_err(|e| usage(format!("--from-json: field {key:?}: {e}")))
}

fn parse_word(flag: &str, s: &str) -> Result<Word, Failure> {
    s.parse::<Word>().map_err(|e| usage(format!("{flag}: {e}")))
}

fn parse_weight(flag: &str, d: Diagram, s: &str) -> Result<Weight, Failure> {
    Weight::parse_for(d.n(), s).map_err(|e| usage(format!("{flag}: {e}")))
}

/// The `word` input: `--word` or the `word` field of the document.
fn word_input(doc: &Option<Value>, flag: &Option<String>) -> Result<Word, Failure> {
    match (doc, flag) {
        (Some(doc), _) => field(doc, "word"),
        (None, Some(s)) => parse_word("--word", s),
        (None, None) => Err(usage("missing --word")),
    }
}

fn emit(v: Value) -> Out {
    Ok(v.to_string())
}

fn element_json(a: &TElement) -> Result<Value, Failure> {
    Ok(serde_json::to_value(a.to_json_terms()?).expect("terms serialise"))
}

/// An element document: a bare term list or an object with `element`.
fn element_from_doc(d: Diagram, doc: &Value) -> Result<TElement, Failure> {
    let terms = if doc.is_array() {
        doc.clone()
    } else {
        doc.get("element")
            .cloned()
            .ok_or_else(|| usage("--from-json: expected a term list or an \"element\" field"))?
    };
    let terms: Vec<JsonTerm> =
        serde_json::from_value(terms).map_err(|e| usage(format!("--from-json: {e}")))?;
    Ok(TElement::from_json_terms(d, &terms)?)
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::Normalize { common, word } => {
            let (doc, d) = setup(&common)?;
            let w = word_input(&doc, &word)?;
            emit(json!({ "word": cf_normal_form(d, &w)? }))
        }
        Command::Minuscule { common, word } => {
            let (doc, d) = setup(&common)?;
            let w = word_input(&doc, &word)?;
            d.check_word(&w)?;
            emit(json!({ "word": w, "minuscule": is_minuscule(d, &w) }))
        }
        Command::Mul { common, a, b, c } => {
            let (doc, d) = setup(&common)?;
            let product = match doc {
                Some(doc) => {
                    let factors: Vec<Value> = match doc.get("factors") {
                        Some(f) => serde_json::from_value(f.clone())
                            .map_err(|e| usage(format!("--from-json: factors: {e}")))?,
                        None if doc.get("zero") == Some(&Value::Bool(true)) => {
                            return emit(json!({ "zero": true }))
                        }
                        None => vec![doc],
                    };
                    let mut acc = TElement::one(d);
                    for f in &factors {
                        acc = acc.mul(&element_from_doc(d, f)?)?;
                    }
                    acc
                }
                None => {
                    let words: Vec<(&str, &String)> = [("--a", &a), ("--b", &b), ("--c", &c)]
                        .into_iter()
                        .filter_map(|(f, w)| w.as_ref().map(|w| (f, w)))
                        .collect();
                    if a.is_none() || b.is_none() {
                        return Err(usage("mul needs --a and --b"));
                    }
                    let mut acc = TElement::one(d);
                    for (flag, s) in words {
                        acc = acc.mul(&TElement::word(d, &parse_word(flag, s)?)?)?;
                    }
                    acc
                }
            };
            if product.is_zero() {
                emit(json!({ "zero": true }))
            } else {
                emit(json!({ "zero": false, "element": element_json(&product)? }))
            }
        }
        Command::QElement { common } => {
            let (doc, d) = setup(&common)?;
            let q = match doc {
                Some(doc) => element_from_doc(d, &doc)?,
                None => q_element(d),
            };
            emit(element_json(&q)?)
        }
        Command::Cform { common, word } => {
            let (doc, d) = setup(&common)?;
            let w = word_input(&doc, &word)?;
            match factor_c_form(d, &w)? {
                Some(cf) => emit(json!({
                    "word": cf_normal_form(d, &w)?,
                    "full_support": true,
                    "lambda": cf.lambda,
                    "mu": cf.mu,
                    "r": cf.r,
                })),
                None => emit(json!({ "word": cf_normal_form(d, &w)?, "full_support": false })),
            }
        }
        Command::Valuation { common, word } => {
            let (doc, d) = setup(&common)?;
            let a = match (&doc, &word) {
                (Some(doc), _) => element_from_doc(d, doc)?,
                (None, Some(s)) => TElement::basis(d, &parse_word("--word", s)?)?,
                (None, None) => return Err(usage("missing --word or --from-json")),
            };
            let v = a.q_valuation()?;
            let mut out = json!({ "element": element_json(&a)?, "valuation": v });
            if a.len() == 1 {
                let (w, _) = a.terms().next().unwrap();
                let f = coxeter_factorization(d, w)?;
                out["coxeter_factorization"] = json!(f);
            }
            emit(out)
        }
        Command::Coxeter { common, weight } => {
            let (doc, d) = setup(&common)?;
            let lambda: Weight = match (&doc, &weight) {
                (Some(doc), _) => field(doc, "weight")?,
                (None, Some(s)) => parse_weight("--weight", d, s)?,
                (None, None) => return Err(usage("missing --weight")),
            };
            let w = coxeter_word(d, &lambda)?;
            emit(json!({ "weight": lambda, "word": w }))
        }
        Command::ConstructC { common, lambda, mu, r } => {
            let (doc, d) = setup(&common)?;
            let (lambda, mu, r): (Weight, Weight, i64) = match doc {
                Some(doc) => (field(&doc, "lambda")?, field(&doc, "mu")?, field(&doc, "r")?),
                None => (
                    parse_weight("--lambda", d, lambda.as_deref().ok_or_else(|| usage("missing --lambda"))?)?,
                    parse_weight("--mu", d, mu.as_deref().ok_or_else(|| usage("missing --mu"))?)?,
                    r.ok_or_else(|| usage("missing --r"))?,
                ),
            };
            if r < 1 {
                return Err(usage("--r must be at least 1"));
            }
            let w = construct_c(d, &lambda, &mu, r)?;
            emit(json!({ "lambda": lambda, "mu": mu, "r": r, "word": w }))
        }
        Command::Weights { common, word } => {
            let (doc, d) = setup(&common)?;
            let w = word_input(&doc, &word)?;
            let (lower, upper) = weights_of(d, &w)?;
            emit(json!({ "word": w, "lower": lower, "upper": upper }))
        }
        Command::Heap { common, word } => {
            let (doc, d) = setup(&common)?;
            let w = word_input(&doc, &word)?;
            let region = rank_and_embed(d, &w)?;
            match common.format {
                Format::Json => emit(json!({
                    "n": d.n(),
                    "word": w,
                    "class": region_class(d, &region),
                    "region": region,
                    "covers": region.covering_pairs(),
                })),
                Format::Dot => Ok(heap_dot(&region)),
                Format::Tikz => Ok(heap_tikz(&region)),
                Format::Csv => Err(usage("heap supports --format json, dot or tikz")),
            }
        }
        Command::Matrix { common, element, word } => {
            let (doc, d) = setup(&common)?;
            let m = match (&doc, &element, &word) {
                (Some(doc), _, _) if doc.get("entries").is_some() => WeightMatrix::from_json(&doc.to_string())?,
                (Some(doc), _, _) => matrix_of(&element_from_doc(d, doc)?),
                (None, Some(e), _) => matrix_of(&parse_element(d, e)?),
                (None, None, Some(s)) => matrix_of(&TElement::word(d, &parse_word("--word", s)?)?),
                (None, None, None) => return Err(usage("missing --element or --word")),
            };
            match common.format {
                Format::Json => Ok(m.to_json()),
                Format::Csv => Ok(m.to_csv()?),
                _ => Err(usage("matrix supports --format json or csv")),
            }
        }
        Command::Module { common, c, m, seed } => {
            let (doc, d) = setup(&common)?;
            let (c, m): (BigRational, usize) = match doc {
                Some(doc) => {
                    let c: String = field(&doc, "c")?;
                    (parse_rational(&c)?, field(&doc, "m")?)
                }
                None => (
                    parse_rational(c.as_deref().ok_or_else(|| usage("missing --c"))?)
                        .map_err(|e| usage(format!("--c: {e}")))?,
                    m.ok_or_else(|| usage("missing --m"))?,
                ),
            };
            let module = ntl_core::build_module(d, c, m)?;
            let mut out: Value = serde_json::from_str(&module.to_json()).expect("module JSON");
            out["c"] = json!(format_rational(module.c()));
            out["irreducible"] = json!(module.is_irreducible(seed));
            out["endomorphism_dim"] = json!(module.endomorphism_dim());
            out["relations_hold"] = json!(module.relations_hold());
            emit(out)
        }
        Command::Enumerate { common, max_len, words } => {
            let (doc, d) = setup(&common)?;
            let (max_len, words) = match doc {
                Some(doc) => (field(&doc, "max_len")?, doc.get("words").is_some()),
                None => (max_len.unwrap_or_else(|| default_max_len(d.n())), words),
            };
            let report = enumerate_minuscule(d, max_len, words)?;
            let mut out = serde_json::to_value(&report).expect("report serialises");
            out["window_sums"] = json!(report.window_sums());
            emit(out)
        }
        Command::Verify { common, level, seed, inject_fault } => {
            let (doc, d) = setup(&common)?;
            let (level, seed, inject_fault) = match doc {
                Some(doc) => (
                    field::<Level>(&doc, "level")?,
                    field::<u64>(&doc, "seed")?,
                    field::<bool>(&doc, "fault_injected")?,
                ),
                None => (
                    level
                        .as_deref()
                        .unwrap_or("standard")
                        .parse::<Level>()
                        .map_err(|e| usage(format!("--level: {e}")))?,
                    seed.unwrap_or(DEFAULT_SEED),
                    inject_fault,
                ),
            };
            let report = verify_with(VerifyOptions {
                n: d.n(),
                level,
                seed,
                inject_fault,
            })?;
            let text = serde_json::to_string(&report).expect("report serialises");
            for c in &report.checks {
                let mark = if c.status == Status::Pass { "PASS" } else { "FAIL" };
                eprintln!("{mark} {}", c.check_name);
            }
            if report.all_passed() {
                Ok(text)
            } else {
                Err(Failure::Verification(text))
            }
        }
    }
}

fn parse_element(d: Diagram, s: &str) -> Result<TElement, Failure> {
    match s.trim() {
        "Q" | "q" => Ok(q_element(d)),
        "1" => Ok(TElement::one(d)),
        t if t.starts_with('[') && t.contains('{') => element_from_doc(d, &load_json(t)?),
        t => Ok(TElement::word(d, &parse_word("--element", t)?)?),
    }
}

fn cell_id(c: ntl_core::Cell) -> String {
    format!("\"{},{}\"", c.0, c.1)
}

fn heap_dot(region: &ERegion) -> String {
    let mut out = String::from("digraph heap {\n  rankdir=BT;\n");
    for c in region.cells() {
        out.push_str(&format!("  {} [label=\"{}\"];\n", cell_id(c), c.0));
    }
    for (lo, hi) in region.covering_pairs() {
        out.push_str(&format!("  {} -> {};\n", cell_id(lo), cell_id(hi)));
    }
    out.push_str("}\n");
    out
}

fn heap_tikz(region: &ERegion) -> String {
    let mut out = String::from("\\begin{tikzpicture}[scale=0.6]\n");
    for c in region.cells() {
        out.push_str(&format!(
            "  \\node[draw,circle,inner sep=1pt] (c{}x{}) at ({},{}) {{{}}};\n",
            c.0,
            c.1.rem_euclid(1000),
            c.0,
            c.1,
            c.0
        ));
    }
    for (lo, hi) in region.covering_pairs() {
        out.push_str(&format!(
            "  \\draw (c{}x{}) -- (c{}x{});\n",
            lo.0,
            lo.1.rem_euclid(1000),
            hi.0,
            hi.1.rem_euclid(1000)
        ));
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout(), "{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(text)) => {
            let _ = writeln!(std::io::stdout(), "{text}");
            eprintln!("verification failed");
            ExitCode::from(3)
        }
    }
}
