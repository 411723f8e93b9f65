use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use catalan_hankel::hankel::{self, Engine};
use catalan_hankel::verify::{self, Claim, GridRange, Report};
use catalan_hankel::{Error, HankelSpec, SeqFamily, Sequence};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

/// Exact Hankel determinants of shifted Catalan-type sequences.
#[derive(Parser)]
#[command(name = "catalan-hankel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print sequence terms a_n for from <= n <= to (zero for n < 0)
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate det(a_{shift+i+j}) for 0 <= i, j < size
    Det {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = EngineChoice::Auto)]
        engine: EngineChoice,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Grid of determinants, one row per shift, sizes 0..=n-max
    Table {
        #[command(flatten)]
        family: FamilyArgs,
        /// Smallest shift
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
        /// Largest shift (defaults to --shift)
        #[arg(long, allow_hyphen_values = true)]
        shift_max: Option<i64>,
        /// Largest size; a negative value gives an empty grid
        #[arg(long, allow_hyphen_values = true)]
        n_max: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a theorem or conjecture over a parameter grid
    Verify {
        /// t1, t6, t7, t8, t9, c10, c11, c12 or patterns
        claim: String,
        #[arg(long, allow_hyphen_values = true)]
        m_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        m_max: Option<i64>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Comma-separated convolution exponents
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<u32>>,
        /// Comma-separated M_b parameters
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        b: Option<Vec<BigInt>>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Catalan,
    CentralBinomial,
    MNumbers,
    NarayanaC,
    NarayanaB,
    Conv,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Parameter of m-numbers
    #[arg(long, allow_hyphen_values = true)]
    b: Option<BigInt>,
    /// Exponent of conv
    #[arg(long)]
    k: Option<u32>,
}

impl FamilyArgs {
    fn resolve(&self) -> Result<SeqFamily, Failure> {
        let family = match self.family {
            FamilyName::Catalan => SeqFamily::Catalan,
            FamilyName::CentralBinomial => SeqFamily::CentralBinomial,
            FamilyName::NarayanaC => SeqFamily::NarayanaC,
            FamilyName::NarayanaB => SeqFamily::NarayanaB,
            FamilyName::MNumbers => {
                let b = self.b.clone().ok_or_else(|| Failure::Usage("m-numbers needs --b".into()))?;
                return Ok(SeqFamily::m_numbers(b));
            }
            FamilyName::Conv => {
                let k = self.k.ok_or_else(|| Failure::Usage("conv needs --k".into()))?;
                if k == 0 {
                    return Err(Failure::Usage("--k must be positive".into()));
                }
                return Ok(SeqFamily::conv(k));
            }
        };
        if self.b.is_some() || self.k.is_some() {
            return Err(Failure::Usage(format!("{family} takes neither --b nor --k")));
        }
        Ok(family)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineChoice {
    Auto,
    Cofactor,
    Bareiss,
    Condensation,
}

enum Failure {
    Usage(String),
    Engine(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::UnsupportedFamily(_) | Error::ParsePoly { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Engine(e.to_string()),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Engine(e.to_string())
    }
}

type Rows = Vec<Vec<String>>;

fn csv_text(rows: Rows) -> Result<String, Failure> {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Engine(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Engine(e.to_string()))
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn gen(family: &SeqFamily, from: i64, to: i64, format: Format) -> Result<String, Failure> {
    if from > to {
        return Err(Failure::Usage(format!("--from {from} is larger than --to {to}")));
    }
    let terms = Sequence::shared(family).terms(from, to)?;
    let strings: Vec<String> = terms.iter().map(|p| p.to_string()).collect();
    Ok(match format {
        Format::Text => strings.join(" ") + "\n",
        Format::Json => json_text(&json!({
            "family": family,
            "from": from,
            "to": to,
            "terms": strings,
        })),
        Format::Csv => {
            let mut rows = vec![vec!["n".to_string(), "value".to_string()]];
            rows.extend((from..=to).zip(strings).map(|(n, v)| vec![n.to_string(), v]));
            csv_text(rows)?
        }
    })
}

fn det(spec: &HankelSpec, engine: EngineChoice, format: Format) -> Result<String, Failure> {
    let result = match engine {
        EngineChoice::Auto => hankel::det(spec)?,
        EngineChoice::Cofactor => hankel::det_with(spec, Engine::Cofactor)?,
        EngineChoice::Bareiss => hankel::det_with(spec, Engine::Bareiss)?,
        EngineChoice::Condensation => hankel::det_with(spec, Engine::Condensation)?,
    };
    Ok(match format {
        Format::Text => format!("{}\nengine: {}\nspec: {}\n", result.value, result.engine, result.spec),
        Format::Json => json_text(&serde_json::to_value(&result).expect("det result serializes")),
        Format::Csv => csv_text(vec![
            ["family", "shift", "size", "engine", "value"].map(String::from).to_vec(),
            vec![
                spec.family.to_string(),
                spec.shift.to_string(),
                spec.size.to_string(),
                result.engine.to_string(),
                result.value.to_string(),
            ],
        ])?,
    })
}

fn table(family: &SeqFamily, lo: i64, hi: i64, n_max: i64, format: Format) -> Result<String, Failure> {
    if lo > hi {
        return Err(Failure::Usage(format!("empty shift range [{lo}, {hi}]")));
    }
    let sizes: Vec<usize> = (0..=n_max).map(|n| n as usize).collect();
    let mut rows: Vec<(i64, Vec<String>)> = Vec::new();
    if !sizes.is_empty() {
        for m in lo..=hi {
            let values = sizes
                .iter()
                .map(|&n| Ok(hankel::det(&HankelSpec::new(family.clone(), m, n))?.value.to_string()))
                .collect::<Result<Vec<_>, Failure>>()?;
            rows.push((m, values));
        }
    }
    Ok(match format {
        Format::Text => {
            let mut s = String::new();
            for (m, values) in &rows {
                writeln!(s, "m={m}: {}", values.join(" ")).unwrap();
            }
            s
        }
        Format::Json => json_text(&json!({
            "family": family,
            "shift_min": lo,
            "shift_max": hi,
            "n_max": n_max,
            "rows": rows.iter().map(|(m, v)| json!({"m": m, "values": v})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut header = vec!["m\\n".to_string()];
            header.extend(sizes.iter().map(usize::to_string));
            let mut out = vec![header];
            for (m, values) in rows {
                let mut row = vec![m.to_string()];
                row.extend(values);
                out.push(row);
            }
            csv_text(out)?
        }
    })
}

fn report_text(report: &Report) -> String {
    let mut s = format!("{}\n", report.summary);
    for c in &report.counterexamples {
        let show = |p: &Option<catalan_hankel::Poly>| p.as_ref().map_or("?".to_string(), |p| p.to_string());
        write!(s, "counterexample {:?}: expected {}, actual {}", c.params, show(&c.expected), show(&c.actual)).unwrap();
        if let Some(note) = &c.note {
            write!(s, " ({note})").unwrap();
        }
        s.push('\n');
    }
    s
}

fn report_csv(report: &Report) -> Result<String, Failure> {
    let opt = |p: &Option<catalan_hankel::Poly>| p.as_ref().map(|p| p.to_string()).unwrap_or_default();
    let header = ["k", "b", "m", "n", "clause", "expected", "actual", "alt_expected", "pass", "note"];
    let mut rows = vec![header.map(String::from).to_vec()];
    for c in &report.cells {
        let p = &c.params;
        rows.push(vec![
            p.k.map(|k| k.to_string()).unwrap_or_default(),
            p.b.as_ref().map(|b| b.to_string()).unwrap_or_default(),
            p.m.to_string(),
            p.n.to_string(),
            p.clause.clone().unwrap_or_default(),
            opt(&c.expected),
            opt(&c.actual),
            opt(&c.alt_expected),
            c.pass.to_string(),
            c.note.clone().unwrap_or_default(),
        ]);
    }
    csv_text(rows)
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>, u8), Failure> {
    let (text, output, code) = match cli.command {
        Command::Gen { family, from, to, output } => (gen(&family.resolve()?, from, to, output.format)?, output, 0),
        Command::Det {
            family,
            shift,
            size,
            engine,
            output,
        } => {
            let spec = HankelSpec::new(family.resolve()?, shift, size);
            (det(&spec, engine, output.format)?, output, 0)
        }
        Command::Table {
            family,
            shift,
            shift_max,
            n_max,
            output,
        } => {
            let hi = shift_max.unwrap_or(shift);
            (table(&family.resolve()?, shift, hi, n_max, output.format)?, output, 0)
        }
        Command::Verify {
            claim,
            m_min,
            m_max,
            n_max,
            k,
            b,
            output,
        } => {
            let claim: Claim = claim.parse()?;
            let defaults = claim.default_range();
            let range = GridRange {
                m_min: m_min.unwrap_or(defaults.m_min),
                m_max: m_max.unwrap_or(defaults.m_max),
                n_max: n_max.unwrap_or(defaults.n_max),
                k_list: k.unwrap_or(defaults.k_list),
                b_list: b.unwrap_or(defaults.b_list),
            };
            let report = verify::verify(claim, &range)?;
            let text = match output.format {
                Format::Text => report_text(&report),
                Format::Json => report.to_json() + "\n",
                Format::Csv => report_csv(&report)?,
            };
            (text, output, report.exit_code() as u8)
        }
    };
    Ok((text, output.out, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, out, code)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
