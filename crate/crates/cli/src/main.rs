mod report;

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use bacfi::algebra::IntPolynomial;
use bacfi::antitwist::monodromy;
use bacfi::builtin;
use bacfi::divide::{divide_to_surface, Divide, DivideDocument};
use bacfi::homology::{h1_matrix, torus_word, HomologyError};
use bacfi::surface::{BacfiSurface, SurfaceError};
use bacfi::traintrack::{cone_certificate, cone_certificate_with, ConeCertificate};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use report::*;

#[derive(Parser)]
#[command(
    name = "bacfi",
    version,
    about = "Antitwist monodromies of Ba'cfi-tiled surfaces"
)]
struct Cli {
    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check surface or divide documents.
    Validate { inputs: Vec<PathBuf> },
    /// Cylinders, vertex classes and genus.
    Info { inputs: Vec<PathBuf> },
    /// Full report: homology action, polynomial, roots, torus word, orbifold, certificate.
    Monodromy { inputs: Vec<PathBuf> },
    /// The base orbifold of the divide.
    Orbifold { inputs: Vec<PathBuf> },
    /// Emit the divide of a surface as a fat graph document.
    Divide {
        input: Option<PathBuf>,
        /// Print the face table instead of the document.
        #[arg(long)]
        table: bool,
    },
    /// Read a divide document and emit the surface document.
    FromDivide { input: Option<PathBuf> },
    /// Positive XY word of a genus one monodromy.
    TorusWord { inputs: Vec<PathBuf> },
    /// Train-track certificate for a stretch factor of at least 5/2.
    Certificate {
        inputs: Vec<PathBuf>,
        /// Replacement type matrix, rows separated by `;`, e.g. "2,0,1;3,0,2;0,1,0".
        #[arg(long)]
        type_matrix: Option<String>,
    },
    /// Classify the roots of an integer polynomial.
    Classify {
        /// Coefficients, lowest degree first, e.g. "1,-1,-1,-1,1".
        #[arg(long, conflicts_with = "file")]
        coeffs: Option<String>,
        /// JSON array of coefficients, lowest degree first.
        file: Option<PathBuf>,
    },
    /// Emit a built-in surface document.
    Example {
        #[command(subcommand)]
        which: Example,
    },
}

#[derive(Subcommand)]
enum Example {
    /// The 2x2 torus with row exponents p, r and column exponents q, s.
    Example1 {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
    },
    /// Twelve squares, two rows of six.
    Example2,
    /// One square.
    Example3 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
    },
    /// Three squares with a U-turn.
    Example4 {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
    },
    /// The ping-pong family.
    Pingpong {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
    },
    /// Two rows of `width` squares, the top row shifted by two.
    Tworow {
        #[arg(long)]
        width: usize,
        #[arg(long, default_value_t = 1)]
        exponent: u32,
    },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Inapplicable(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Inapplicable(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Inapplicable(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<SurfaceError> for Failure {
    fn from(e: SurfaceError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<HomologyError> for Failure {
    fn from(e: HomologyError) -> Self {
        use bacfi::algebra::AlgebraError;
        match e {
            HomologyError::NotGenusOne { .. }
            | HomologyError::Algebra(AlgebraError::TraceTooSmall { .. })
            | HomologyError::Algebra(AlgebraError::NotSL2) => Failure::Inapplicable(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

/// One analysed input: text and JSON renderings plus its exit code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn new<T: Serialize>(text: String, report: &T) -> Result<Self, Failure> {
        let json = serde_json::to_value(report).map_err(|e| Failure::Internal(e.to_string()))?;
        Ok(Output {
            text,
            json,
            code: 0,
        })
    }
}

/// An input name with its analysis.
type Outcome = (String, Result<Output, Failure>);

fn read_source(path: Option<&PathBuf>) -> Result<(String, String), Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))?;
            Ok((p.display().to_string(), text))
        }
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Invalid(format!("stdin: {e}")))?;
            Ok(("<stdin>".to_string(), text))
        }
    }
}

/// Surface documents and divide documents are both accepted.
fn load_surface(text: &str) -> Result<BacfiSurface, Failure> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Failure::Invalid(format!("not JSON: {e}")))?;
    if value.get("vertices").is_some() {
        let doc: DivideDocument =
            serde_json::from_value(value).map_err(|e| Failure::Invalid(e.to_string()))?;
        return divide_to_surface(&doc).map_err(|e| Failure::Invalid(e.to_string()));
    }
    Ok(BacfiSurface::from_json(text)?)
}

/// Writes to stdout, ignoring a closed pipe.
fn say(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

fn surface_document(s: &BacfiSurface) -> Output {
    let doc = s.to_document();
    let json = serde_json::to_value(&doc).expect("documents serialize");
    Output {
        text: pretty(&doc),
        json,
        code: 0,
    }
}

/// The serialized name of a unit enum variant.
fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

fn format_matrix(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(|x| x.len()).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("{x:>width$}")).collect();
            format!("  {}\n", cells.join(" "))
        })
        .collect()
}

fn summary_text(out: &mut String, s: &SurfaceSummary) {
    let _ = writeln!(
        out,
        "squares {}, genus {}, vertex classes {}, U-turns {}",
        s.squares, s.genus, s.vertex_classes, s.u_turns
    );
    for (name, list) in [
        ("horizontal", &s.horizontal_cylinders),
        ("vertical", &s.vertical_cylinders),
    ] {
        let parts: Vec<String> = list
            .iter()
            .map(|c| format!("{:?} width {} exponent {}", c.squares, c.width, c.exponent))
            .collect();
        let _ = writeln!(out, "{name} cylinders: {}", parts.join("; "));
    }
}

fn spectral_text(out: &mut String, v: &SpectralView) {
    if let Some(r) = &v.largest_real_root {
        let _ = writeln!(
            out,
            "largest real root in [{}, {}] ~ {:.7}",
            r.lo,
            r.hi,
            (r.lo_approx + r.hi_approx) / 2.0
        );
    }
    if let Some(c) = &v.classification {
        let _ = writeln!(
            out,
            "roots of {}: {} real, {} on the unit circle, {} elsewhere",
            v.analysed, c.real, c.unit_circle, c.other
        );
    }
    if let Some(e) = &v.exclusion {
        let certainty = match &e.prime {
            Some(prime) => format!("irreducible mod {prime}"),
            None => "assuming irreducibility".to_string(),
        };
        let _ = writeln!(
            out,
            "no power from Thurston's construction: {}; from Penner's: {} ({certainty})",
            e.no_power_thurston, e.no_power_penner
        );
    }
    for n in &v.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn torus_text(out: &mut String, t: &TorusWordView) {
    let _ = writeln!(
        out,
        "torus word {} (trace {}, mirror {}, {} basis)",
        t.word,
        t.trace,
        t.mirror_word,
        label(&t.branch)
    );
}

fn orbifold_text(out: &mut String, o: &OrbifoldView) {
    let _ = writeln!(
        out,
        "orbifold: genus {}, cone points ({}), euler characteristic {}, orbifold euler characteristic {}{}",
        o.genus,
        o.cone_points.join(", "),
        o.euler_char,
        o.euler_orb,
        if o.hyperbolic { ", hyperbolic" } else { "" }
    );
    for w in &o.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
}

fn certificate_text(out: &mut String, c: &CertificateView) {
    let _ = writeln!(
        out,
        "certificate ratios (red, green, blue) = ({}), minimum {} at {}, PF estimate {:.4}",
        c.ratios.join(", "),
        c.min_ratio,
        label(&c.min_type),
        c.pf_estimate
    );
    match &c.verdict {
        Some(v) => {
            let _ = writeln!(out, "verdict: {v}");
        }
        None => {
            let _ = writeln!(out, "not applicable: {}", c.reasons.join("; "));
        }
    }
}

fn run_validate(s: &BacfiSurface) -> Result<Output, Failure> {
    let r = ValidateReport {
        valid: true,
        squares: s.len().to_string(),
        genus: s.genus_from_euler().to_string(),
    };
    let text = format!("valid: {} squares, genus {}\n", r.squares, r.genus);
    Output::new(text, &Report::new("validate", r))
}

fn run_info(s: &BacfiSurface) -> Result<Output, Failure> {
    let r = SurfaceSummary::new(s);
    let mut text = String::new();
    summary_text(&mut text, &r);
    Output::new(text, &Report::new("info", r))
}

fn run_monodromy(s: &BacfiSurface) -> Result<Output, Failure> {
    let f = monodromy(s);
    f.verify().map_err(|e| Failure::Internal(e.to_string()))?;
    let h = h1_matrix(s, &f)?;
    let p = h.char_poly();
    let torus = if s.genus_from_euler() == 1 {
        torus_word(s).ok().map(|t| TorusWordView::from(&t))
    } else {
        None
    };
    let r = MonodromyReport {
        surface: SurfaceSummary::new(s),
        h1: H1View::new(&h),
        char_poly: PolynomialView::new(&p),
        spectral: SpectralView::new(&p),
        torus_word: torus,
        orbifold: OrbifoldView::new(s),
        certificate: CertificateView::from(&cone_certificate(s)),
    };
    let mut text = String::new();
    summary_text(&mut text, &r.surface);
    let _ = writeln!(
        text,
        "homology action ({}x{}):",
        r.h1.dimension, r.h1.dimension
    );
    text.push_str(&format_matrix(&r.h1.matrix));
    let _ = writeln!(
        text,
        "trace {}, determinant {}",
        r.h1.trace,
        r.h1.determinant.as_deref().unwrap_or("overflow")
    );
    let _ = writeln!(
        text,
        "characteristic polynomial {}{}",
        r.char_poly.text,
        if r.char_poly.reciprocal {
            " (reciprocal)"
        } else {
            ""
        }
    );
    spectral_text(&mut text, &r.spectral);
    if let Some(t) = &r.torus_word {
        torus_text(&mut text, t);
    }
    orbifold_text(&mut text, &r.orbifold);
    certificate_text(&mut text, &r.certificate);
    Output::new(text, &Report::new("monodromy", r))
}

fn run_orbifold(s: &BacfiSurface) -> Result<Output, Failure> {
    let r = OrbifoldView::new(s);
    let mut text = String::new();
    orbifold_text(&mut text, &r);
    Output::new(text, &Report::new("orbifold", r))
}

fn run_torus_word(s: &BacfiSurface) -> Result<Output, Failure> {
    let r = TorusWordView::from(&torus_word(s)?);
    let mut text = String::new();
    torus_text(&mut text, &r);
    Output::new(text, &Report::new("torus_word", r))
}

fn run_certificate(s: &BacfiSurface, table: Option<&[[i64; 3]; 3]>) -> Result<Output, Failure> {
    let c: ConeCertificate = match table {
        Some(t) => cone_certificate_with(s, t).map_err(|e| Failure::Invalid(e.to_string()))?,
        None => cone_certificate(s),
    };
    let h = h1_matrix(s, &monodromy(s))?;
    let r = CertificateReport {
        certificate: CertificateView::from(&c),
        h1_largest_real_root: SpectralView::new(&h.char_poly()).largest_real_root,
    };
    let mut text = String::new();
    certificate_text(&mut text, &r.certificate);
    let mut out = Output::new(text, &Report::new("certificate", r))?;
    if !c.applicable {
        out.code = 2;
    }
    Ok(out)
}

fn parse_type_matrix(text: &str) -> Result<[[i64; 3]; 3], Failure> {
    let bad = || {
        Failure::Invalid(format!(
            "type matrix must be 3 rows of 3 integers: {text:?}"
        ))
    };
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let mut out = [[0; 3]; 3];
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(bad());
    }
    for (i, r) in rows.iter().enumerate() {
        out[i].copy_from_slice(r);
    }
    Ok(out)
}

fn parse_polynomial(
    coeffs: Option<&str>,
    file: Option<&PathBuf>,
) -> Result<IntPolynomial, Failure> {
    let p = match coeffs {
        Some(c) => IntPolynomial::from_str(c).map_err(|e| Failure::Invalid(e.to_string()))?,
        None => {
            let (_, text) = read_source(file)?;
            let values: Vec<Value> = serde_json::from_str(&text)
                .map_err(|e| Failure::Invalid(format!("expected a JSON array: {e}")))?;
            let coeffs = values
                .iter()
                .map(|v| match v {
                    Value::Number(n) => n.as_i64().map(BigInt::from),
                    Value::String(s) => s.trim().parse::<BigInt>().ok(),
                    _ => None,
                })
                .collect::<Option<Vec<BigInt>>>()
                .ok_or_else(|| Failure::Invalid("coefficients must be integers".into()))?;
            IntPolynomial::new(coeffs)
        }
    };
    if p.is_zero() {
        return Err(Failure::Invalid("the zero polynomial has no roots".into()));
    }
    Ok(p)
}

fn run_classify(p: &IntPolynomial) -> Result<Output, Failure> {
    let r = ClassifyReport {
        polynomial: PolynomialView::new(p),
        spectral: SpectralView::new(p),
    };
    let mut text = format!("polynomial {}\n", r.polynomial.text);
    spectral_text(&mut text, &r.spectral);
    Output::new(text, &Report::new("classify", r))
}

fn example(which: &Example) -> Result<BacfiSurface, Failure> {
    Ok(match *which {
        Example::Example1 { p, q, r, s } => builtin::example1(p, q, r, s)?,
        Example::Example2 => builtin::example2(),
        Example::Example3 { q, r } => builtin::example3(q, r)?,
        Example::Example4 { q, r } => builtin::example4(q, r)?,
        Example::Pingpong { n, q, r } => builtin::pingpong(n, q, r)?,
        Example::Tworow { width, exponent } => builtin::two_row(width, exponent)?,
    })
}

/// Runs `analyse` on every input, in parallel, keeping input order.
fn batch<F>(inputs: &[PathBuf], analyse: F) -> Result<Vec<Outcome>, Failure>
where
    F: Fn(&BacfiSurface) -> Result<Output, Failure> + Sync,
{
    let sources: Vec<(String, String)> = if inputs.is_empty() {
        vec![read_source(None)?]
    } else {
        inputs
            .iter()
            .map(|p| read_source(Some(p)))
            .collect::<Result<_, _>>()?
    };
    Ok(sources
        .into_par_iter()
        .map(|(name, text)| {
            let result = load_surface(&text).and_then(|s| analyse(&s));
            (name, result)
        })
        .collect())
}

fn emit(results: Vec<Outcome>, json: bool) -> u8 {
    let mut code = 0;
    let single = results.len() == 1;
    let mut values = Vec::new();
    for (name, result) in results {
        match result {
            Ok(out) => {
                code = code.max(out.code);
                if json {
                    values.push(out.json);
                } else {
                    if !single {
                        say(&format!("== {name}\n"));
                    }
                    say(&out.text);
                }
            }
            Err(f) => {
                code = code.max(f.code());
                eprintln!("error: {name}: {}", f.message());
                if json && !single {
                    values.push(Value::Null);
                }
            }
        }
    }
    if json {
        if single {
            if let Some(v) = values.pop() {
                say(&format!("{}\n", pretty(&v)));
            }
        } else {
            say(&format!("{}\n", pretty(&values)));
        }
    }
    code
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let json = cli.json;
    let results = match &cli.command {
        Command::Validate { inputs } => batch(inputs, run_validate)?,
        Command::Info { inputs } => batch(inputs, run_info)?,
        Command::Monodromy { inputs } => batch(inputs, run_monodromy)?,
        Command::Orbifold { inputs } => batch(inputs, run_orbifold)?,
        Command::TorusWord { inputs } => batch(inputs, run_torus_word)?,
        Command::Certificate {
            inputs,
            type_matrix,
        } => {
            let table = type_matrix.as_deref().map(parse_type_matrix).transpose()?;
            batch(inputs, |s| run_certificate(s, table.as_ref()))?
        }
        Command::Divide { input, table } => {
            let (_, text) = read_source(input.as_ref())?;
            let dv = Divide::from_surface(&load_surface(&text)?);
            if *table {
                say(&dv.face_table());
            } else {
                say(&format!("{}\n", dv.to_json()));
            }
            return Ok(0);
        }
        Command::FromDivide { input } => {
            let (_, text) = read_source(input.as_ref())?;
            let s = Divide::from_json(&text)
                .and_then(|d| Ok(d.to_surface()?))
                .map_err(|e| Failure::Invalid(e.to_string()))?;
            say(&format!("{}\n", surface_document(&s).text));
            return Ok(0);
        }
        Command::Classify { coeffs, file } => {
            let p = parse_polynomial(coeffs.as_deref(), file.as_ref())?;
            vec![("<polynomial>".to_string(), run_classify(&p))]
        }
        Command::Example { which } => {
            say(&format!("{}\n", surface_document(&example(which)?).text));
            return Ok(0);
        }
    };
    Ok(emit(results, json))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
