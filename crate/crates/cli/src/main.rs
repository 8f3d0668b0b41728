use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use coinsite::catalog::enumerate_coincidence;
use coinsite::engine::{divisibility_report, intersect_csm};
use coinsite::gram::GramModule;
use coinsite::io::{self, ParsedMap};
use coinsite::rings::multiplier_ring;
use coinsite::verify::{self, Suite};

#[derive(Parser, Debug)]
#[command(name = "coinsite", version, about = "Exact coincidence site lattices and modules")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coincidence site module and index of a map
    Csl {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate coincidence maps of a standard lattice
    Catalog {
        #[arg(long)]
        name: String,
        #[arg(long)]
        max_sigma: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Multiplier ring of a module
    Ring {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the property suites
    Verify {
        /// den-sig, scal-group, sigma-inv, rings or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Extra divisibility reports (JSON object or array) to check
        #[arg(long)]
        inject_report: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<coinsite::Error> for Failure {
    fn from(e: coinsite::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = std::result::Result<String, Failure>;

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_module(path: &Path) -> std::result::Result<Arc<GramModule>, Failure> {
    Ok(Arc::new(io::parse_module(&read_json(path)?)?))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(out, x, indent + 1);
                    }
                    Value::Array(xs) if xs.iter().any(Value::is_object) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for (i, item) in xs.iter().enumerate() {
                            let _ = writeln!(out, "{pad}  [{i}]");
                            render(out, item, indent + 2);
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn emit(v: &Value, format: Format) -> CliResult {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(v).expect("json values serialize") + "\n"),
        Format::Text => {
            let mut s = String::new();
            render(&mut s, v, 0);
            Ok(s)
        }
        Format::Csv => Err(Failure::Input("csv output is only available for catalogs".into())),
    }
}

fn csl(module: &Path, map: &Path, format: Format) -> CliResult {
    let m = load_module(module)?;
    let parsed = io::parse_map(&read_json(map)?, &m)?;
    let f = parsed.as_similarity();
    let ring = multiplier_ring(&m);
    let coset = ring.coset_of(&f)?;
    let t = match &parsed {
        ParsedMap::Coincidence(t) => Some(t.clone()),
        ParsedMap::Similarity(f) => f.is_coincidence(),
    };
    let mut out = Map::new();
    out.insert("is_coincidence".into(), json!(t.is_some()));
    out.insert("is_symmetry".into(), json!(f.is_symmetry()));
    out.insert("scale".into(), io::scale_json(&f.alpha()));
    out.insert(
        "coset".into(),
        json!({"representative": io::scale_json(&coset.representative), "trivial": ring.is_unit(&coset)}),
    );
    if let Some(t) = t {
        let csm = intersect_csm(&t);
        out.insert("sigma".into(), json!(csm.index.to_string()));
        out.insert("csl".into(), io::submodule_json(&csm));
        if m.is_lattice() {
            let rep = divisibility_report(&t.as_similarity())?;
            out.insert("den".into(), json!(rep.den.to_string()));
            out.insert("den_inv".into(), json!(rep.den_inv.to_string()));
            out.insert("report".into(), io::divisibility_json(&rep));
        }
    }
    emit(&Value::Object(out), format)
}

fn catalog(name: &str, max_sigma: u64, format: Format) -> CliResult {
    let entries = enumerate_coincidence(name, max_sigma)?;
    match format {
        Format::Csv => Ok(io::catalog_csv(&entries)?),
        Format::Json => emit(&io::catalog_json(&entries)?, Format::Json),
        Format::Text => {
            let mut s = format!("{:<24} {:<14} {:>6} {:>6} {:>8}\n", "label", "params", "sigma", "den", "den_inv");
            for e in &entries {
                let _ = writeln!(
                    s,
                    "{:<24} {:<14} {:>6} {:>6} {:>8}",
                    e.label,
                    e.params_string(),
                    e.sigma,
                    e.den,
                    e.den_inv
                );
            }
            let _ = writeln!(s, "{} entries", entries.len());
            Ok(s)
        }
    }
}

fn ring(module: &Path, format: Format) -> CliResult {
    let m = load_module(module)?;
    let r = multiplier_ring(&m);
    let v = io::ring_json(&r);
    if format != Format::Text {
        return emit(&v, format);
    }
    let mut s = format!("rank {} (k = {}, d = {})\n", r.rank(), m.rank(), m.ambient_dimension());
    for (_, x) in r.basis() {
        let _ = writeln!(s, "  {}  min poly {}", x, x.minimal_polynomial());
    }
    render(&mut s, &json!({"checks": v["checks"]}), 0);
    Ok(s)
}

fn verify_cmd(suite: &str, seed: u64, inject: &[PathBuf], format: Format) -> CliResult {
    let suite: Suite = suite.parse()?;
    let mut injected = Vec::new();
    for p in inject {
        match read_json(p)? {
            Value::Array(xs) => {
                for x in &xs {
                    injected.push(io::parse_divisibility(x)?);
                }
            }
            v => injected.push(io::parse_divisibility(&v)?),
        }
    }
    let report = verify::run(suite, seed, &injected).map_err(|e| Failure::Verification(e.to_string()))?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("json values serialize") + "\n",
        Format::Text => format!("{report}\n"),
        Format::Csv => return Err(Failure::Input("csv output is only available for catalogs".into())),
    };
    if report.passed() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Verification("one or more claims failed".into()))
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = match &args.command {
        Command::Csl { module, map, format } => csl(module, map, *format),
        Command::Catalog { name, max_sigma, format } => catalog(name, *max_sigma, *format),
        Command::Ring { module, format } => ring(module, *format),
        Command::Verify { suite, seed, inject_report, format } => verify_cmd(suite, *seed, inject_report, *format),
    };
    match result {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
