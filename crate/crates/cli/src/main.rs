//! `bec`: analyze, draw, generate and enumerate benzenoids by their
//! boundary-edges codes.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bec_core::code::Code;
use bec_core::enumeration::{
    max_cd_unbranched_benzenoids, max_cd_unbranched_fusenes, EnumerationReport, Enumerator,
    SearchConfig,
};
use bec_core::families::{self, Family, FamilySpec, NamedCompound};
use bec_core::lattice::{embed, Benzenoid};
use bec_core::render::{to_svg, to_tikz, RenderOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "bec", version, about = "Boundary-edges codes of benzenoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// A boundary-edges code such as 5351.
    code: Option<String>,
    /// Read one code per line from standard input instead.
    #[arg(long, conflicts_with = "code")]
    stdin: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full metric record for a code.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Lexicographically largest equivalent code.
    Canonical {
        #[command(flatten)]
        input: Input,
    },
    /// Check whether a code describes a benzenoid.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Place a code on the hexagonal lattice and list its cells.
    Embed {
        code: String,
        /// Write the cell list (`q r` per line) to this file.
        #[arg(long)]
        cells_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Draw a benzenoid.
    Render {
        code: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[arg(long, default_value_t = 30.0)]
        edge_length: f64,
        /// Print axial coordinates inside every hexagon.
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value = "black")]
        stroke: String,
        #[arg(long, default_value = "none")]
        fill: String,
    },
    /// Generate a member of a named family, e.g. `family M3 2 3 4` or
    /// `family spiral --h 6`.
    Family {
        name: String,
        params: Vec<u32>,
        /// Number of hexagons, for one-parameter families.
        #[arg(long = "h")]
        hexagons: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Find a named small benzenoid by name or code.
    Lookup {
        query: String,
        #[arg(long)]
        json: bool,
    },
    /// Generate every benzenoid up to a number of hexagons and report deficits.
    Enumerate {
        #[arg(long)]
        hexagons: u32,
        /// Worker threads (0 uses every core).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Continue from level files already in `--out`.
        #[arg(long, requires = "out")]
        resume: bool,
        #[arg(long)]
        json: bool,
    },
    /// Largest deficit among unbranched catacondensed benzenoids.
    UnbranchedMax {
        #[arg(long)]
        hexagons: u32,
        /// Include codes that overlap themselves on the lattice.
        #[arg(long)]
        fusenes: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Tikz,
}

/// Failure carrying its exit status.
struct Failure {
    status: u8,
    message: String,
}

const INVALID_CODE: u8 = 1;
const NOT_EMBEDDABLE: u8 = 2;
const BAD_ARGUMENTS: u8 = 3;

fn fail(status: u8, message: impl ToString) -> Failure {
    Failure {
        status,
        message: message.to_string(),
    }
}

type Outcome = Result<(), Failure>;

fn parse_code(text: &str) -> Result<Code, Failure> {
    text.parse()
        .map_err(|e| fail(INVALID_CODE, format!("invalid code {text:?}: {e}")))
}

fn embed_code(code: &Code) -> Result<Benzenoid, Failure> {
    embed(code).map_err(|e| fail(NOT_EMBEDDABLE, format!("{code} is not a benzenoid: {e}")))
}

#[derive(Serialize)]
#[serde(untagged)]
enum DeficitField {
    Defined(u32),
    Undefined(&'static str),
}

#[derive(Serialize)]
struct AnalysisRecord {
    schema_version: u32,
    input: String,
    canonical: String,
    length: usize,
    sum: i64,
    winding: i64,
    deficit: DeficitField,
    class: &'static str,
    /// Least `k` for which the code is `k`-convex.
    k_convex_threshold: Option<u32>,
    benzenoid: bool,
    hexagons: Option<usize>,
    condensation: Option<&'static str>,
    named_match: Option<String>,
    embed_error: Option<String>,
}

impl AnalysisRecord {
    fn new(input: &str, code: &Code) -> AnalysisRecord {
        let class = code.classify();
        let embedded = embed(code);
        let threshold = class.deficit.value();
        AnalysisRecord {
            schema_version: SCHEMA_VERSION,
            input: input.trim().to_string(),
            canonical: code.canonical().to_string(),
            length: code.len(),
            sum: code.sum(),
            winding: code.winding(),
            deficit: threshold.map_or(DeficitField::Undefined("undefined"), DeficitField::Defined),
            class: class.kind.as_str(),
            k_convex_threshold: threshold,
            benzenoid: embedded.is_ok(),
            hexagons: embedded.as_ref().ok().map(|b| b.hexagons()),
            condensation: embedded.as_ref().ok().map(|b| b.condensation.as_str()),
            named_match: families::lookup_code(code).map(|c| c.name.clone()),
            embed_error: embedded.err().map(|e| e.to_string()),
        }
    }

    fn table(&self) -> String {
        let or_dash = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let rows = [
            ("input", self.input.clone()),
            ("canonical", self.canonical.clone()),
            ("length", self.length.to_string()),
            ("sum", self.sum.to_string()),
            ("winding", self.winding.to_string()),
            (
                "deficit",
                self.k_convex_threshold
                    .map_or_else(|| "undefined".into(), |k| k.to_string()),
            ),
            ("class", self.class.to_string()),
            ("k-convex from", or_dash(self.k_convex_threshold.map(|k| k.to_string()))),
            ("benzenoid", self.benzenoid.to_string()),
            ("hexagons", or_dash(self.hexagons.map(|h| h.to_string()))),
            ("condensation", or_dash(self.condensation.map(str::to_string))),
            ("named", or_dash(self.named_match.clone())),
            ("embed error", or_dash(self.embed_error.clone())),
        ];
        rows.iter().map(|(k, v)| format!("{k:<14}{v}\n")).collect()
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable record")
}

fn codes_from(input: &Input) -> Result<Vec<String>, Failure> {
    if input.stdin {
        let lines: Vec<String> = io::stdin()
            .lock()
            .lines()
            .collect::<io::Result<_>>()
            .map_err(|e| fail(BAD_ARGUMENTS, e))?;
        Ok(lines.into_iter().filter(|l| !l.trim().is_empty()).collect())
    } else {
        match &input.code {
            Some(code) => Ok(vec![code.clone()]),
            None => Err(fail(BAD_ARGUMENTS, "give a code or --stdin")),
        }
    }
}

/// Runs `each` on every input, reporting failures on stderr and returning
/// the first failure status.
fn for_each_code(input: &Input, mut each: impl FnMut(&str) -> Outcome) -> Outcome {
    let mut first: Option<u8> = None;
    for text in codes_from(input)? {
        if let Err(f) = each(&text) {
            eprintln!("bec: {}", f.message);
            first.get_or_insert(f.status);
        }
    }
    match first {
        Some(status) => Err(fail(status, "")),
        None => Ok(()),
    }
}

fn analyze(input: &Input, as_json: bool) -> Outcome {
    for_each_code(input, |text| {
        let code = parse_code(text)?;
        let record = AnalysisRecord::new(text, &code);
        if as_json {
            let line = if input.stdin {
                serde_json::to_string(&record).expect("serializable record")
            } else {
                json(&record)
            };
            println!("{line}");
        } else {
            print!("{}", record.table());
            if input.stdin {
                println!();
            }
        }
        Ok(())
    })
}

fn canonical(input: &Input) -> Outcome {
    for_each_code(input, |text| {
        println!("{}", parse_code(text)?.canonical());
        Ok(())
    })
}

#[derive(Serialize)]
struct Validation {
    schema_version: u32,
    code: String,
    benzenoid: bool,
    hexagons: Option<usize>,
    error: Option<String>,
}

fn validate(input: &Input, as_json: bool) -> Outcome {
    for_each_code(input, |text| {
        let code = parse_code(text)?;
        let embedded = embed(&code);
        let report = Validation {
            schema_version: SCHEMA_VERSION,
            code: code.to_string(),
            benzenoid: embedded.is_ok(),
            hexagons: embedded.as_ref().ok().map(|b| b.hexagons()),
            error: embedded.as_ref().err().map(|e| e.to_string()),
        };
        if as_json {
            println!("{}", serde_json::to_string(&report).expect("serializable record"));
        } else {
            match &embedded {
                Ok(b) => println!("{code}\tvalid\t{} hexagons", b.hexagons()),
                Err(e) => println!("{code}\tinvalid\t{e}"),
            }
        }
        embedded.map(|_| ()).map_err(|e| fail(NOT_EMBEDDABLE, format!("{code}: {e}")))
    })
}

#[derive(Serialize)]
struct Embedding {
    schema_version: u32,
    code: String,
    hexagons: usize,
    condensation: &'static str,
    cells: Vec<[i32; 2]>,
}

fn embed_cmd(text: &str, cells_out: Option<&PathBuf>, as_json: bool) -> Outcome {
    let code = parse_code(text)?;
    let b = embed_code(&code)?;
    if let Some(path) = cells_out {
        fs::write(path, b.cells.to_text()).map_err(|e| fail(BAD_ARGUMENTS, format!("{}: {e}", path.display())))?;
    }
    if as_json {
        let record = Embedding {
            schema_version: SCHEMA_VERSION,
            code: b.code.to_string(),
            hexagons: b.hexagons(),
            condensation: b.condensation.as_str(),
            cells: b.cells.iter().map(|c| [c.q, c.r]).collect(),
        };
        println!("{}", json(&record));
    } else if cells_out.is_none() {
        print!("{}", b.cells.to_text());
    } else {
        println!("{} hexagons, {}", b.hexagons(), b.condensation.as_str());
    }
    Ok(())
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Outcome {
    match path {
        Some(path) => fs::write(path, text).map_err(|e| fail(BAD_ARGUMENTS, format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| fail(BAD_ARGUMENTS, e)),
    }
}

#[derive(Serialize)]
struct FamilyMember {
    schema_version: u32,
    family: String,
    params: Vec<u32>,
    code: String,
    expected_hexagons: u32,
    expected_deficit: u32,
}

fn family(name: &str, params: &[u32], hexagons: Option<u32>, as_json: bool) -> Outcome {
    let family: Family = name.parse().map_err(|e| fail(BAD_ARGUMENTS, e))?;
    let params = match (hexagons, params.is_empty()) {
        (Some(h), true) => vec![h],
        (Some(_), false) => return Err(fail(BAD_ARGUMENTS, "give either --h or parameters, not both")),
        (None, _) => params.to_vec(),
    };
    let spec = FamilySpec::new(family, params).map_err(|e| fail(BAD_ARGUMENTS, e))?;
    let member = FamilyMember {
        schema_version: SCHEMA_VERSION,
        family: family.id().to_string(),
        params: spec.params().to_vec(),
        code: spec.generate().to_string(),
        expected_hexagons: spec.expected_h(),
        expected_deficit: spec.expected_cd(),
    };
    if as_json {
        println!("{}", json(&member));
    } else {
        println!("{}", member.code);
        println!("{spec}: h = {}, cd = {}", member.expected_hexagons, member.expected_deficit);
    }
    Ok(())
}

#[derive(Serialize)]
struct LookupRecord<'a> {
    schema_version: u32,
    #[serde(flatten)]
    compound: &'a NamedCompound,
}

fn lookup(query: &str, as_json: bool) -> Outcome {
    let hit = families::lookup(query).map_err(|e| fail(BAD_ARGUMENTS, e))?;
    if as_json {
        println!(
            "{}",
            json(&LookupRecord {
                schema_version: SCHEMA_VERSION,
                compound: hit,
            })
        );
    } else {
        println!("{}", hit.bec);
        println!(
            "{}: h = {}, {} (cd {}), {}{}",
            hit.name,
            hit.hexagons,
            hit.class.as_str(),
            hit.deficit,
            hit.formula,
            hit.cas.as_ref().map(|c| format!(", CAS {c}")).unwrap_or_default()
        );
    }
    Ok(())
}

fn summary(r: &EnumerationReport) -> String {
    let breakdown: Vec<String> = r
        .extremal_breakdown
        .iter()
        .map(|(class, n)| format!("{} {n}", class.as_str()))
        .collect();
    format!(
        "h={} count={} mcd={} ex={} F={:?} extremal: {}",
        r.h,
        r.count,
        r.mcd,
        r.ex,
        r.frequencies(),
        breakdown.join(", ")
    )
}

fn enumerate(h: u32, threads: usize, out: Option<PathBuf>, resume: bool, as_json: bool) -> Outcome {
    let config = SearchConfig {
        h_max: h,
        workers: threads,
        out_dir: out,
        resume,
    };
    let reports = Enumerator::new(config)
        .and_then(|e| e.run())
        .map_err(|e| fail(BAD_ARGUMENTS, e))?;
    if as_json {
        let last = reports.last().expect("at least one level");
        println!("{}", json(last));
    } else {
        for r in &reports {
            println!("{}", summary(r));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct UnbranchedMax {
    schema_version: u32,
    hexagons: u32,
    fusenes: bool,
    max_deficit: u32,
    witnesses: Vec<Code>,
}

fn unbranched_max(h: u32, fusenes: bool, as_json: bool) -> Outcome {
    let search = if fusenes {
        max_cd_unbranched_fusenes
    } else {
        max_cd_unbranched_benzenoids
    };
    let (max_deficit, witnesses) = search(h).map_err(|e| fail(BAD_ARGUMENTS, e))?;
    if as_json {
        println!(
            "{}",
            json(&UnbranchedMax {
                schema_version: SCHEMA_VERSION,
                hexagons: h,
                fusenes,
                max_deficit,
                witnesses,
            })
        );
    } else {
        println!("max cd = {max_deficit} ({} witnesses)", witnesses.len());
        for w in &witnesses {
            println!("{w}");
        }
    }
    Ok(())
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Analyze { input, json } => analyze(&input, json),
        Command::Canonical { input } => canonical(&input),
        Command::Validate { input, json } => validate(&input, json),
        Command::Embed {
            code,
            cells_out,
            json,
        } => embed_cmd(&code, cells_out.as_ref(), json),
        Command::Render {
            code,
            output,
            format,
            edge_length,
            labels,
            stroke,
            fill,
        } => {
            let mut opts = RenderOptions::default()
                .with_edge_length(edge_length)
                .map_err(|e| fail(BAD_ARGUMENTS, e))?;
            opts.label_cells = labels;
            opts.stroke = stroke;
            opts.fill = fill;
            let b = embed_code(&parse_code(&code)?)?;
            let doc = match format {
                Format::Svg => to_svg(&b, &opts),
                Format::Tikz => to_tikz(&b, &opts),
            };
            write_output(output.as_ref(), &doc)
        }
        Command::Family {
            name,
            params,
            hexagons,
            json,
        } => family(&name, &params, hexagons, json),
        Command::Lookup { query, json } => lookup(&query, json),
        Command::Enumerate {
            hexagons,
            threads,
            out,
            resume,
            json,
        } => enumerate(hexagons, threads, out, resume, json),
        Command::UnbranchedMax {
            hexagons,
            fusenes,
            json,
        } => unbranched_max(hexagons, fusenes, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(BAD_ARGUMENTS)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("bec: {}", f.message);
            }
            ExitCode::from(f.status)
        }
    }
}
