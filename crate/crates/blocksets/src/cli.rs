//! Command-line front end.
//!
//! Arguments are parsed by clap, then checked as a whole into a [`RunConfig`]
//! (every problem reported in one message) before anything runs, so a usage
//! error never leaves a partial report behind.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use blocksets_core::colouring::{InducedColouring, TableColouring};
use blocksets_core::search::{
    homogeneous_subset_search, theorem3_extract, witness_search, WitnessOutcome,
};
use blocksets_core::template::{blockset_points, enumerate_placements};
use blocksets_core::{
    ColourId, Colouring, LatticeBox, Pattern, Placement, SizeMode, Template, Word,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::format::{self, blocks_string, generators_json, point_json, PlacementJson};
use crate::parallel::{self, Workers};
use crate::report::{tuple_string, Found, OutputFormat, SearchReport};
use crate::spec::ColouringSpec;
use crate::theorem2::Theorem2;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "blocksets",
    version,
    about = "Block sets over [m]^n: colourings, searches and verifications"
)]
struct Cli {
    #[command(subcommand)]
    command: Group,

    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// json, csv or text
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for random colourings
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Zero the timing fields so reports are byte-identical across runs
    #[arg(long, global = true)]
    stable: bool,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Evaluate colourings
    #[command(subcommand)]
    Colour(ColourCmd),
    /// Block set points and placement enumeration
    #[command(subcommand)]
    Blockset(BlocksetCmd),
    /// Monochromatic and witness searches
    #[command(subcommand)]
    Search(SearchCmd),
    /// Exhaustive verification of the contribution colouring
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// The ABCCBA extraction
    #[command(subcommand)]
    Extract(ExtractCmd),
    /// Lattice searches
    #[command(subcommand)]
    Lattice(LatticeCmd),
}

#[derive(Subcommand, Debug)]
enum ColourCmd {
    /// Colour of one word
    Eval {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        word: String,
        /// Alphabet size of the word (default 3, or the largest symbol)
        #[arg(long)]
        alphabet: Option<u8>,
    },
}

#[derive(Args, Debug)]
struct TemplateArgs {
    /// Template word (e.g. 11223) or counts (e.g. 2,2,1)
    #[arg(long)]
    template: String,
    /// Alphabet size when it differs from the largest template symbol
    #[arg(long)]
    alphabet: Option<u8>,
}

#[derive(Subcommand, Debug)]
enum BlocksetCmd {
    /// Points of one block set
    Points {
        #[command(flatten)]
        template: TemplateArgs,
        /// Blocks, e.g. "1,6;2,5;3,4"
        #[arg(long)]
        blocks: String,
        #[arg(long)]
        n: usize,
        /// Reference: "7=1,8=2" or symbols for the free coordinates in order
        #[arg(long)]
        reference: Option<String>,
    },
    /// List placements in canonical order
    Enum {
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long)]
        n: usize,
        /// equal:D or mixed:D
        #[arg(long, default_value = "equal:1")]
        size: String,
        #[arg(long)]
        pattern: Option<String>,
        /// Allowed reference symbols, e.g. 12
        #[arg(long)]
        reference_domain: Option<String>,
        /// Print at most this many placements (the count is always complete)
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// First monochromatic placement, or all of them with --all
    Mono {
        #[arg(long)]
        colouring: String,
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "equal:1")]
        size: String,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Backtracking search for a colouring with no monochromatic placement
    Witness {
        #[command(flatten)]
        template: TemplateArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "equal:1")]
        size: String,
        /// Number of colours
        #[arg(long)]
        k: usize,
        /// Node budget
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Save a witness as a table file
        #[arg(long)]
        table_out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// No monochromatic 1 2^p 3^q copy with blocks of size <= d, for every n up to --n
    Thm2 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Override the template exponents: p,q
        #[arg(long)]
        pq: Option<String>,
        /// mixed (blocks of size <= d) or equal (size exactly d)
        #[arg(long, default_value = "mixed")]
        size: String,
        /// Start at this n instead of the smallest possible
        #[arg(long)]
        from: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum ExtractCmd {
    /// Find a homogeneous set and extract a monochromatic ABCCBA copy of 123
    Thm3 {
        #[arg(long)]
        colouring: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Use this homogeneous set instead of searching, e.g. 1,2,3,4,5,6
        #[arg(long)]
        subset: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// x - v, x, x + v of one colour with |v|_1 = d
    Ap {
        #[arg(long)]
        colouring: String,
        /// lo..hi^dim
        #[arg(long = "box")]
        bounds: String,
        #[arg(long)]
        d: u64,
    },
    /// Monochromatic translate of a generated l1 ball
    Ball {
        #[arg(long)]
        colouring: String,
        #[arg(long = "box")]
        bounds: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: u64,
    },
}

/// A fully validated command.
#[derive(Debug, Clone)]
pub enum Command {
    ColourEval {
        colouring: ColouringSpec,
        word: Word,
    },
    BlocksetPoints {
        template: Template,
        placement: Placement,
    },
    BlocksetEnum {
        template: Template,
        n: usize,
        mode: SizeMode,
        pattern: Option<Pattern>,
        reference_domain: Option<Vec<u8>>,
        limit: Option<usize>,
    },
    SearchMono {
        colouring: ColouringSpec,
        template: Template,
        n: usize,
        mode: SizeMode,
        pattern: Option<Pattern>,
        all: bool,
    },
    SearchWitness {
        template: Template,
        n: usize,
        mode: SizeMode,
        k: usize,
        budget: u64,
        table_out: Option<PathBuf>,
    },
    VerifyThm2 {
        setup: Theorem2,
        mode: SizeMode,
        from: usize,
        to: usize,
    },
    ExtractThm3 {
        colouring: ColouringSpec,
        k: usize,
        n: usize,
        subset: Option<Vec<usize>>,
    },
    LatticeAp {
        colouring: ColouringSpec,
        bounds: LatticeBox,
        d: u64,
    },
    LatticeBall {
        colouring: ColouringSpec,
        bounds: LatticeBox,
        r: u64,
        t: usize,
        d: u64,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub workers: usize,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub stable: bool,
}

/// Collects validation problems so they can be reported together.
#[derive(Default)]
struct Problems(Vec<String>);

impl Problems {
    fn check<T, E: std::fmt::Display>(
        &mut self,
        what: &str,
        r: std::result::Result<T, E>,
    ) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.0.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn require(&mut self, ok: bool, msg: impl Into<String>) {
        if !ok {
            self.0.push(msg.into());
        }
    }

    fn finish<T>(self, value: Option<T>) -> Result<T> {
        match (self.0.is_empty(), value) {
            (true, Some(v)) => Ok(v),
            _ => Err(Error::Usage(format!(
                "invalid arguments: {}",
                self.0.join("; ")
            ))),
        }
    }
}

/// `None` for an absent flag, `Some(None)` for an invalid one.
fn optional<T>(flag: Option<Option<T>>) -> Option<Option<T>> {
    match flag {
        None => Some(None),
        Some(None) => None,
        Some(Some(v)) => Some(Some(v)),
    }
}

fn parse_template(args: &TemplateArgs) -> Result<Template> {
    if args.template.contains(',') {
        let counts = args
            .template
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::usage(format!("bad count {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = args.alphabet.unwrap_or(counts.len() as u8);
        if counts.len() != m as usize {
            return Err(Error::usage(format!(
                "{} counts given for alphabet size {m}",
                counts.len()
            )));
        }
        Ok(Template::from_counts(m, &counts)?)
    } else {
        Ok(Template::parse(&args.template, args.alphabet)?)
    }
}

fn parse_symbols(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| Error::usage(format!("bad symbol {c:?}")))
        })
        .collect()
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::usage(format!("bad number {x:?}")))
        })
        .collect()
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<RunConfig> {
        let mut p = Problems::default();
        let format = p.check("format", cli.format.parse::<OutputFormat>());
        let workers = cli.workers.unwrap_or_else(Workers::available);
        p.require(workers >= 1, "workers: must be at least 1");

        let command = match cli.command {
            Group::Colour(ColourCmd::Eval {
                colouring,
                word,
                alphabet,
            }) => {
                let colouring = p.check("colouring", colouring.parse::<ColouringSpec>());
                let largest = word
                    .chars()
                    .filter_map(|c| c.to_digit(10))
                    .max()
                    .unwrap_or(0) as u8;
                let m = alphabet.unwrap_or(largest.max(3));
                let word = p.check("word", Word::parse(&word, m));
                colouring
                    .zip(word)
                    .map(|(colouring, word)| Command::ColourEval { colouring, word })
            }
            Group::Blockset(BlocksetCmd::Points {
                template,
                blocks,
                n,
                reference,
            }) => {
                let template = p.check("template", parse_template(&template));
                let blocks = p.check("blocks", format::parse_blocks(&blocks));
                let placement = blocks.and_then(|blocks| {
                    let reference = match &reference {
                        Some(r) => p.check("reference", format::parse_reference(r, n, &blocks))?,
                        None => Vec::new(),
                    };
                    p.check("placement", Placement::new(n, blocks, &reference))
                });
                if let (Some(t), Some(pl)) = (&template, &placement) {
                    p.require(
                        t.len() == pl.blocks().len(),
                        format!(
                            "placement: template {t} needs {} blocks, got {}",
                            t.len(),
                            pl.blocks().len()
                        ),
                    );
                }
                template
                    .zip(placement)
                    .map(|(template, placement)| Command::BlocksetPoints {
                        template,
                        placement,
                    })
            }
            Group::Blockset(BlocksetCmd::Enum {
                template,
                n,
                size,
                pattern,
                reference_domain,
                limit,
            }) => {
                let template = p.check("template", parse_template(&template));
                let mode = p.check("size", SizeMode::parse(&size));
                let pattern = optional(pattern.map(|s| p.check("pattern", Pattern::parse(&s))));
                let reference_domain = optional(
                    reference_domain.map(|s| p.check("reference-domain", parse_symbols(&s))),
                );
                match (template, mode, pattern, reference_domain) {
                    (Some(template), Some(mode), Some(pattern), Some(reference_domain)) => {
                        Some(Command::BlocksetEnum {
                            template,
                            n,
                            mode,
                            pattern,
                            reference_domain,
                            limit,
                        })
                    }
                    _ => None,
                }
            }
            Group::Search(SearchCmd::Mono {
                colouring,
                template,
                n,
                size,
                pattern,
                all,
            }) => {
                let colouring = p.check("colouring", colouring.parse::<ColouringSpec>());
                let template = p.check("template", parse_template(&template));
                let mode = p.check("size", SizeMode::parse(&size));
                p.require(
                    !(all && pattern.is_some()),
                    "pattern: cannot be combined with --all",
                );
                let pattern = pattern.map(|s| p.check("pattern", Pattern::parse(&s)));
                if let (Some(t), Some(m)) = (&template, mode) {
                    p.require(
                        n >= t.len() * m.bounds().0,
                        format!("n: {n} is too small for {} blocks under {m}", t.len()),
                    );
                }
                match (colouring, template, mode, optional(pattern)) {
                    (Some(colouring), Some(template), Some(mode), Some(pattern)) => {
                        Some(Command::SearchMono {
                            colouring,
                            template,
                            n,
                            mode,
                            pattern,
                            all,
                        })
                    }
                    _ => None,
                }
            }
            Group::Search(SearchCmd::Witness {
                template,
                n,
                size,
                k,
                budget,
                table_out,
            }) => {
                let template = p.check("template", parse_template(&template));
                let mode = p.check("size", SizeMode::parse(&size));
                p.require((1..=64).contains(&k), "k: must be in 1..=64");
                template
                    .zip(mode)
                    .map(|(template, mode)| Command::SearchWitness {
                        template,
                        n,
                        mode,
                        k,
                        budget,
                        table_out,
                    })
            }
            Group::Verify(VerifyCmd::Thm2 {
                d,
                n,
                pq,
                size,
                from,
            }) => {
                let setup = match pq {
                    None => p.check("d", Theorem2::new(d)),
                    Some(s) => {
                        let pair = p.check("pq", parse_list(&s)).and_then(|v| match v[..] {
                            [a, b] => Some((a, b)),
                            _ => {
                                p.require(false, "pq: expected two numbers p,q");
                                None
                            }
                        });
                        pair.and_then(|(a, b)| p.check("d", Theorem2::with_pq(d, a, b)))
                    }
                };
                let mode = match size.as_str() {
                    "mixed" => Some(SizeMode::Mixed(d.max(1))),
                    "equal" => Some(SizeMode::Equal(d.max(1))),
                    other => {
                        p.require(
                            false,
                            format!("size: expected mixed or equal, got {other:?}"),
                        );
                        None
                    }
                };
                setup.zip(mode).map(|(setup, mode)| {
                    let start = from.unwrap_or(setup.min_n(mode)).max(setup.min_n(mode));
                    p.require(
                        n >= setup.min_n(mode),
                        format!(
                            "n: must be at least {} for this template",
                            setup.min_n(mode)
                        ),
                    );
                    Command::VerifyThm2 {
                        setup,
                        mode,
                        from: start,
                        to: n,
                    }
                })
            }
            Group::Extract(ExtractCmd::Thm3 {
                colouring,
                k,
                n,
                subset,
            }) => {
                let colouring = p.check("colouring", colouring.parse::<ColouringSpec>());
                p.require(k >= 1, "k: must be at least 1");
                let subset = subset.map(|s| p.check("subset", parse_list(&s)));
                match (colouring, optional(subset)) {
                    (Some(colouring), Some(subset)) => Some(Command::ExtractThm3 {
                        colouring,
                        k,
                        n,
                        subset,
                    }),
                    _ => None,
                }
            }
            Group::Lattice(LatticeCmd::Ap {
                colouring,
                bounds,
                d,
            }) => {
                let colouring = p.check("colouring", colouring.parse::<ColouringSpec>());
                let bounds = p.check("box", LatticeBox::parse(&bounds));
                p.require(d >= 1, "d: must be at least 1");
                colouring
                    .zip(bounds)
                    .map(|(colouring, bounds)| Command::LatticeAp {
                        colouring,
                        bounds,
                        d,
                    })
            }
            Group::Lattice(LatticeCmd::Ball {
                colouring,
                bounds,
                r,
                t,
                d,
            }) => {
                let colouring = p.check("colouring", colouring.parse::<ColouringSpec>());
                let bounds = p.check("box", LatticeBox::parse(&bounds));
                p.require(
                    r >= 1 && t >= 1 && d >= 1,
                    "r, t, d: must each be at least 1",
                );
                colouring
                    .zip(bounds)
                    .map(|(colouring, bounds)| Command::LatticeBall {
                        colouring,
                        bounds,
                        r,
                        t,
                        d,
                    })
            }
        };

        let config = command.zip(format).map(|(command, format)| RunConfig {
            command,
            workers,
            format,
            output: cli.output,
            seed: cli.seed,
            stable: cli.stable,
        });
        p.finish(config)
    }

    /// Parses `argv` (including the program name) into a validated configuration.
    pub fn parse<I, T>(args: I) -> std::result::Result<RunConfig, ParseOutcome>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ParseOutcome::Info(e.to_string()),
            _ => ParseOutcome::Usage(e.render().to_string()),
        })?;
        RunConfig::from_cli(cli).map_err(|e| ParseOutcome::Usage(e.to_string()))
    }
}

/// Why parsing did not produce a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseOutcome {
    /// Help or version text; not an error.
    Info(String),
    Usage(String),
}

/// Rendered output of one command.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub csv: String,
    pub exit: i32,
}

impl Outcome {
    fn from_report(report: &SearchReport, exit: i32) -> Result<Outcome> {
        Ok(Outcome {
            text: report.to_text(),
            json: serde_json::to_value(report)?,
            csv: report.to_csv()?,
            exit,
        })
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Text => self.text.clone(),
            OutputFormat::Csv => self.csv.clone(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
        })
    }
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Output(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn placement_found(spec: Option<&ColouringSpec>, placement: &Placement, colour: ColourId) -> Found {
    Found::Placement {
        placement: PlacementJson::from(placement),
        colour: colour.0,
        colour_vector: spec.and_then(|s| s.vector_of(colour)),
    }
}

/// Runs a validated command.
pub fn execute(config: &RunConfig) -> Result<Outcome> {
    let start = Instant::now();
    let elapsed = |report: &mut SearchReport| {
        report.elapsed_ms = if config.stable {
            0
        } else {
            start.elapsed().as_millis() as u64
        };
    };
    match &config.command {
        Command::ColourEval { colouring, word } => {
            let (colour, vector) = match colouring {
                ColouringSpec::Induced { base, k } => {
                    let base = base.build(word.len(), word.alphabet(), config.seed)?;
                    let induced = InducedColouring::new(base, *k);
                    let tuple: Vec<u64> = induced.colour_tuple(word)?.iter().map(|c| c.0).collect();
                    // the packed id can overflow; the tuple is always shown
                    (induced.colour(word).ok().map(|c| c.0), Some(tuple))
                }
                _ => {
                    let id = colouring
                        .build(word.len(), word.alphabet(), config.seed)?
                        .colour(word)?;
                    (Some(id.0), colouring.vector_of(id))
                }
            };
            let shown = match (&vector, colour) {
                (Some(v), _) => tuple_string(v),
                (None, Some(id)) => id.to_string(),
                (None, None) => "?".to_string(),
            };
            let text = match (&vector, colour) {
                (Some(_), Some(id)) => format!("{shown}\nid {id}\n"),
                _ => format!("{shown}\n"),
            };
            Ok(Outcome {
                text,
                json: json!({"word": word.to_string(), "colouring": colouring.to_string(), "colour": colour, "vector": vector}),
                csv: csv_rows(
                    &["word", "colour", "vector"],
                    [vec![
                        word.to_string(),
                        colour.map(|c| c.to_string()).unwrap_or_default(),
                        vector.as_deref().map(tuple_string).unwrap_or_default(),
                    ]],
                )?,
                exit: EXIT_OK,
            })
        }
        Command::BlocksetPoints {
            template,
            placement,
        } => {
            let points: Vec<String> = blockset_points(placement, template)?
                .iter()
                .map(Word::to_string)
                .collect();
            let mut text: String = points.iter().map(|w| format!("{w}\n")).collect();
            text.push_str(&format!("{} points\n", points.len()));
            Ok(Outcome {
                json: json!({
                    "template": template.to_string(),
                    "placement": PlacementJson::from(placement),
                    "count": points.len(),
                    "points": points,
                }),
                csv: csv_rows(&["word"], points.iter().map(|w| vec![w.clone()]))?,
                text,
                exit: EXIT_OK,
            })
        }
        Command::BlocksetEnum {
            template,
            n,
            mode,
            pattern,
            reference_domain,
            limit,
        } => {
            let mut shown = Vec::new();
            let mut count = 0u64;
            for p in enumerate_placements(
                *n,
                template,
                *mode,
                pattern.as_ref(),
                reference_domain.as_deref(),
            )? {
                if limit.is_none_or(|l| shown.len() < l) {
                    shown.push(p);
                }
                count += 1;
            }
            let mut text = String::new();
            for p in &shown {
                text.push_str(&format!("{p}\n"));
            }
            text.push_str(&format!("{count} placements\n"));
            Ok(Outcome {
                json: json!({
                    "template": template.to_string(),
                    "n": n,
                    "size": mode.to_string(),
                    "count": count,
                    "placements": shown.iter().map(PlacementJson::from).collect::<Vec<_>>(),
                }),
                csv: csv_rows(
                    &["n", "blocks", "reference", "pattern"],
                    shown.iter().map(|p| {
                        vec![
                            n.to_string(),
                            blocks_string(p.blocks()),
                            p.reference_symbols().iter().map(u8::to_string).collect(),
                            p.pattern().to_string(),
                        ]
                    }),
                )?,
                text,
                exit: EXIT_OK,
            })
        }
        Command::SearchMono {
            colouring,
            template,
            n,
            mode,
            pattern,
            all,
        } => {
            let workers = Workers::new(config.workers)?;
            let c = colouring.build(*n, template.alphabet(), config.seed)?;
            let mut report = SearchReport::new(workers.count())
                .param("colouring", colouring.to_string())
                .param("template", template.to_string())
                .param("n", *n)
                .param("size", mode.to_string())
                .param("pattern", pattern.as_ref().map(|p| p.to_string()))
                .param("mode", if *all { "all" } else { "first" });
            if *all {
                let out = parallel::verify_absence(&workers, &c, *n, template, *mode)?;
                report.examined = out.examined;
                report.found = out
                    .found
                    .iter()
                    .map(|(p, col)| placement_found(Some(colouring), p, *col))
                    .collect();
            } else {
                let out = parallel::find_monochromatic(
                    &workers,
                    &c,
                    *n,
                    template,
                    *mode,
                    pattern.as_ref(),
                )?;
                report.examined = out.examined;
                report.found = out
                    .hit
                    .iter()
                    .map(|(p, col)| placement_found(Some(colouring), p, *col))
                    .collect();
            }
            elapsed(&mut report);
            Outcome::from_report(&report, EXIT_OK)
        }
        Command::SearchWitness {
            template,
            n,
            mode,
            k,
            budget,
            table_out,
        } => {
            let outcome = witness_search(*n, template, *mode, *k, *budget)?;
            let mut report = SearchReport::new(1)
                .param("template", template.to_string())
                .param("n", *n)
                .param("size", mode.to_string())
                .param("k", *k)
                .param("budget", *budget);
            let (nodes, status, table): (u64, &str, Option<&TableColouring>) = match &outcome {
                WitnessOutcome::Found { colouring, nodes } => (*nodes, "witness", Some(colouring)),
                WitnessOutcome::Exhausted { nodes } => (*nodes, "exhausted", None),
                WitnessOutcome::BudgetExceeded { nodes } => (*nodes, "budget_exceeded", None),
            };
            report.examined = nodes;
            report.budget_exhausted = matches!(outcome, WitnessOutcome::BudgetExceeded { .. });
            report.details = Some(json!({
                "outcome": status,
                "witness": table.map(format::table_to_json),
            }));
            if let (Some(path), Some(t)) = (table_out, table) {
                format::write_file(
                    path,
                    &serde_json::to_string_pretty(&format::table_to_json(t))?,
                )?;
            }
            elapsed(&mut report);
            let exit = if report.budget_exhausted {
                EXIT_BUDGET
            } else {
                EXIT_OK
            };
            Outcome::from_report(&report, exit)
        }
        Command::VerifyThm2 {
            setup,
            mode,
            from,
            to,
        } => {
            let workers = Workers::new(config.workers)?;
            let template = setup.template()?;
            let colouring = setup.colouring()?;
            let mut report = SearchReport::new(workers.count())
                .param("d", setup.d)
                .param("p", setup.p)
                .param("q", setup.q)
                .param("template", template.to_string())
                .param(
                    "colouring",
                    format!(
                        "contribution:m={},l={}",
                        colouring.modulus(),
                        colouring.length()
                    ),
                )
                .param("size", mode.to_string())
                .param("n_from", *from)
                .param("n_to", *to)
                .param("claim_applies", setup.claim_applies());
            let spec = ColouringSpec::Contribution {
                modulus: colouring.modulus(),
                length: colouring.length(),
            };
            let mut per_n = Vec::new();
            let (mut below, mut at) = ((0u64, 0usize), (0u64, 0usize));
            for (n, run) in setup.verify(&workers, *from..=*to, *mode)? {
                report.examined += run.examined;
                report.found.extend(
                    run.found
                        .iter()
                        .map(|(p, c)| placement_found(Some(&spec), p, *c)),
                );
                let lower = run.up_to(setup.d - 1);
                let upper = run.up_to(setup.d);
                below = (below.0 + lower.0, below.1 + lower.1);
                at = (at.0 + upper.0, at.1 + upper.1);
                per_n.push(json!({"n": n, "examined": run.examined, "found": run.found.len()}));
            }
            report.details = Some(json!({
                "per_n": per_n,
                "thresholds": {
                    "size_at_most_d_minus_1": {"examined": below.0, "found": below.1},
                    "size_at_most_d": {"examined": at.0, "found": at.1},
                },
            }));
            elapsed(&mut report);
            Outcome::from_report(&report, EXIT_OK)
        }
        Command::ExtractThm3 {
            colouring,
            k,
            n,
            subset,
        } => {
            let theta = colouring.build(*n, 3, config.seed)?;
            let mut report = SearchReport::new(1)
                .param("colouring", colouring.to_string())
                .param("k", *k)
                .param("n", *n);
            let subset = match subset {
                Some(s) => Some(s.clone()),
                None => {
                    let induced = InducedColouring::new(&theta, *k);
                    let mut evaluated = 0u64;
                    let found = homogeneous_subset_search(*n, 2 * k + 2, 2 * k + 4, |s| {
                        evaluated += 1;
                        induced.subset_tuple(*n, s)
                    })?;
                    report.examined = evaluated;
                    found.map(|h| h.subset)
                }
            };
            match subset {
                None => report.details = Some(json!({"homogeneous_set": null})),
                Some(s) => {
                    let e = theorem3_extract(&theta, *n, *k, &s)?;
                    report
                        .found
                        .push(placement_found(Some(colouring), &e.placement, e.colour));
                    report.details = Some(json!({
                        "homogeneous_set": e.subset,
                        "i": e.i,
                        "j": e.j,
                        "points": e.points.iter().map(Word::to_string).collect::<Vec<_>>(),
                    }));
                }
            }
            elapsed(&mut report);
            Outcome::from_report(&report, EXIT_OK)
        }
        Command::LatticeAp {
            colouring,
            bounds,
            d,
        } => {
            let workers = Workers::new(config.workers)?;
            let c = colouring.build_lattice(bounds, config.seed)?;
            let out = parallel::search_l1_ap(&workers, &c, bounds, *d)?;
            let mut report = SearchReport::new(workers.count())
                .param("colouring", colouring.to_string())
                .param("box", bounds.to_string())
                .param("d", *d);
            report.examined = out.examined;
            if let Some((x, v)) = &out.hit {
                report.found.push(Found::Progression {
                    x: point_json(x),
                    v: point_json(v),
                    colour: c.colour(x.coords())?.0,
                });
            }
            elapsed(&mut report);
            Outcome::from_report(&report, EXIT_OK)
        }
        Command::LatticeBall {
            colouring,
            bounds,
            r,
            t,
            d,
        } => {
            let workers = Workers::new(config.workers)?;
            let c = colouring.build_lattice(bounds, config.seed)?;
            let out = parallel::search_generated_ball(&workers, &c, bounds, *r, *t, *d)?;
            let mut report = SearchReport::new(workers.count())
                .param("colouring", colouring.to_string())
                .param("box", bounds.to_string())
                .param("r", *r)
                .param("t", *t)
                .param("d", *d);
            report.examined = out.examined;
            if let Some((x, g)) = &out.hit {
                report.found.push(Found::Ball {
                    centre: point_json(x),
                    generators: generators_json(g),
                    colour: c.colour(x.coords())?.0,
                });
            }
            elapsed(&mut report);
            Outcome::from_report(&report, EXIT_OK)
        }
    }
}

/// Parses, runs and writes the report. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::parse(args) {
        Ok(c) => c,
        Err(ParseOutcome::Info(text)) => {
            let _ = write!(stdout, "{text}");
            return EXIT_OK;
        }
        Err(ParseOutcome::Usage(msg)) => {
            let _ = writeln!(stderr, "{}", msg.trim_end());
            return EXIT_USAGE;
        }
    };
    let result = execute(&config).and_then(|outcome| {
        let body = outcome.render(config.format)?;
        match &config.output {
            Some(path) => format::write_file(path, &body)?,
            None => stdout.write_all(body.as_bytes())?,
        }
        Ok(outcome.exit)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn usage(args: &[&str]) -> String {
        match RunConfig::parse(std::iter::once("blocksets").chain(args.iter().copied())) {
            Err(ParseOutcome::Usage(m)) => m,
            other => panic!("expected a usage error, got {other:?}"),
        }
    }

    #[test]
    fn problems_are_aggregated() {
        let msg = usage(&[
            "search",
            "mono",
            "--colouring",
            "paint:x=1",
            "--template",
            "1x3",
            "--n",
            "3",
            "--size",
            "huge:2",
        ]);
        assert!(msg.starts_with("invalid arguments: "));
        for part in ["colouring:", "template:", "size:"] {
            assert!(msg.contains(part), "{msg}");
        }
    }

    #[test]
    fn clap_errors_are_usage() {
        assert!(usage(&["search", "frobnicate"]).contains("frobnicate"));
        assert!(usage(&[
            "lattice",
            "ap",
            "--colouring",
            "coordsum:d=1",
            "--box",
            "0..3^2"
        ])
        .contains("--d"));
    }

    #[test]
    fn help_is_not_an_error() {
        let r = RunConfig::parse(["blocksets", "--help"]);
        assert!(matches!(r, Err(ParseOutcome::Info(_))));
    }

    #[test]
    fn templates_from_words_or_counts() {
        let t = |s: &str, a: Option<u8>| {
            parse_template(&TemplateArgs {
                template: s.into(),
                alphabet: a,
            })
        };
        assert_eq!(t("11223", None).unwrap().counts(), &[2, 2, 1]);
        assert_eq!(t("2,2,1", None).unwrap().to_string(), "11223");
        assert_eq!(t("12", Some(3)).unwrap().alphabet(), 3);
        assert!(t("1,1", Some(3)).is_err());
    }

    #[test]
    fn thm2_range_and_size() {
        let cfg =
            RunConfig::parse(["blocksets", "verify", "thm2", "--d", "1", "--n", "8"]).unwrap();
        match cfg.command {
            Command::VerifyThm2 { mode, from, to, .. } => {
                assert_eq!(mode, SizeMode::Mixed(1));
                assert_eq!((from, to), (3, 8));
            }
            other => panic!("{other:?}"),
        }
        assert!(usage(&["verify", "thm2", "--d", "1", "--n", "2"]).contains("at least 3"));
        assert!(usage(&["verify", "thm2", "--d", "2", "--n", "9", "--pq", "1"]).contains("pq"));
    }
}
