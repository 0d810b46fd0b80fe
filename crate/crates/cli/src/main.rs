use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rlindex::bwt_builder::{build_bwt, BuildConfig};
use rlindex::corpus::{self, RepeatSpec};
use rlindex::lz77::{self, NsvPsvSupport, Phrase};
use rlindex::plcp::{build_irreducible, IrreducibleList, PlcpSucc};
use rlindex::rlcsa::{Rlcsa, ShortcutEngine};
use rlindex::text_core::{format_int_sequence, parse_int_sequence};
use rlindex::{default_tau, lyndon, oracle, textbook, IndexConfig, PackedText, TextIndex};

/// Largest payload checked against the brute-force oracles under `--verify`.
const VERIFY_LIMIT: usize = 2000;

#[derive(Parser)]
#[command(name = "rlindex", version, about = "Run-length compressed text indexes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// SA/ISA sampling rate, also the block size of NSV/PSV and k-times queries.
    #[arg(long, global = true)]
    tau: Option<usize>,
    /// Named substring length for LCE, also the LF-shortcut sampling rate.
    #[arg(long, global = true)]
    tau2: Option<usize>,
    /// Compute every block explicitly instead of through LF-shortcuts.
    #[arg(long, global = true)]
    dense_fallback: bool,
    /// Cross-check results against brute-force oracles (payloads up to 2000 symbols).
    #[arg(long, global = true)]
    verify: bool,
    /// How to read input files.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    input_format: InputFormat,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// Integer sequence if the file parses as one, raw bytes otherwise.
    Auto,
    Bytes,
    Ints,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Lz77Format {
    Text,
    Binary,
}

#[derive(Subcommand)]
enum Command {
    /// Build the RLBWT and write it in RLBW1 format.
    Bwt { input: PathBuf, output: PathBuf },
    /// Build the PLCP bitvector and write it in PLCP1 format.
    Plcp { input: PathBuf, output: PathBuf },
    /// Build or query a run-length compressed suffix array.
    Rlcsa {
        #[command(subcommand)]
        action: RlcsaAction,
    },
    /// LZ77 parsing of the input.
    Lz77 {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = Lz77Format::Text)]
        format: Lz77Format,
    },
    /// Lyndon factorization, one `<start> <len> <exp>` line per run.
    Lyndon { input: PathBuf, output: PathBuf },
    /// Number of distinct non-empty substrings.
    Distinct { input: PathBuf },
    /// Length of the longest substring occurring at least K times.
    LongestK {
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Print n, σ, r, z, m and the irreducible LCP sum.
    Stats { input: PathBuf },
    /// Generate a test corpus.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Write raw bytes instead of the integer-sequence format.
        #[arg(long, global = true)]
        bytes: bool,
        /// Output file (stdout by default).
        #[arg(short, long, global = true, default_value = "-")]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum RlcsaAction {
    /// Build from a text and write in RCSA1 format.
    Build {
        input: PathBuf,
        output: PathBuf,
        /// Fan-out τ between consecutive levels.
        #[arg(long, default_value_t = 4)]
        fanout: usize,
    },
    /// Print SA[p] for each position.
    QuerySa {
        index: PathBuf,
        #[arg(required = true)]
        positions: Vec<usize>,
        /// Also print the number of levels followed.
        #[arg(long)]
        depth: bool,
    },
    /// Print SA[p..p+len-1].
    QuerySegment { index: PathBuf, p: usize, len: usize },
}

#[derive(Subcommand)]
enum GenKind {
    /// Fibonacci word F_K over {a, b}.
    Fib {
        #[arg(long)]
        order: usize,
    },
    /// A seeded random block followed by mutated copies.
    Repeat {
        #[arg(long)]
        block: usize,
        #[arg(long)]
        copies: usize,
        #[arg(long, default_value_t = 0.001)]
        mut_rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Symbols to draw from.
        #[arg(long, default_value = "ACGT")]
        alphabet: String,
    },
}

fn read_source(path: &Path) -> Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_sink(path: &Path, data: &[u8]) -> Result<()> {
    if path.as_os_str() == "-" {
        io::stdout().write_all(data).context("writing stdout")
    } else {
        fs::write(path, data).with_context(|| format!("writing {}", path.display()))
    }
}

fn load_text(path: &Path, g: &Global) -> Result<PackedText> {
    let raw = read_source(path)?;
    let ints = |raw: &[u8]| -> Result<Vec<u64>> {
        let s = std::str::from_utf8(raw).context("integer sequence is not UTF-8")?;
        Ok(parse_int_sequence(s)?)
    };
    let text = match g.input_format {
        InputFormat::Bytes => PackedText::from_bytes(&raw, 1)?,
        InputFormat::Ints => PackedText::from_symbols(&ints(&raw)?, 1)?,
        InputFormat::Auto => match ints(&raw) {
            Ok(codes) => PackedText::from_symbols(&codes, 1)?,
            Err(_) => PackedText::from_bytes(&raw, 1)?,
        },
    };
    Ok(text)
}

struct Pipeline {
    text: PackedText,
    idx: TextIndex,
    g: Global,
}

impl Pipeline {
    fn new(path: &Path, g: &Global) -> Result<Self> {
        let text = load_text(path, g)?;
        let cfg = IndexConfig {
            tau1: g.tau,
            tau2: g.tau2,
            build: BuildConfig::default(),
        };
        let idx = TextIndex::build(&text, &cfg)?.0;
        Ok(Pipeline { text, idx, g: g.clone() })
    }

    fn n(&self) -> usize {
        self.idx.len()
    }

    fn block_tau(&self) -> usize {
        self.g.tau.unwrap_or_else(|| default_tau(self.n()))
    }

    fn engine(&self) -> Result<ShortcutEngine> {
        let tau = self.g.tau2.unwrap_or_else(|| default_tau(self.n()));
        Ok(ShortcutEngine::build(&self.idx, tau.clamp(1, self.n()))?)
    }

    /// Whether oracle checks apply; warns when the input is too long.
    fn verifying(&self) -> bool {
        if !self.g.verify {
            return false;
        }
        if self.n() - 1 > VERIFY_LIMIT {
            eprintln!("verify: skipped, payload longer than {VERIFY_LIMIT}");
            return false;
        }
        true
    }

    fn codes(&self) -> Vec<u64> {
        self.text.codes()
    }

    fn irreducible(&self) -> IrreducibleList {
        build_irreducible(&self.idx)
    }

    fn lz77(&self, engine: &ShortcutEngine) -> Result<lz77::Lz77Parsing> {
        let cs = Rlcsa::build(&self.idx, engine, 4)?;
        let support = NsvPsvSupport::build(&self.idx, &cs, engine, self.block_tau(), self.g.dense_fallback)?;
        Ok(lz77::parse(&self.idx, &support)?)
    }

    fn lyndon(&self) -> Result<lyndon::LyndonFactorization> {
        Ok(lyndon::factorize(&self.idx)?)
    }
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        eprintln!("verify: {what} ok");
        Ok(())
    } else {
        bail!("verify: {what} diverges from the oracle")
    }
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match cli.command {
        Command::Bwt { input, output } => {
            let text = load_text(&input, g)?;
            let (bwt, report) = build_bwt(&text, &BuildConfig::default())?;
            if g.verify && text.payload_len() <= VERIFY_LIMIT {
                check(bwt.decompress() == oracle::rotation_bwt(&text.codes()), "bwt")?;
            }
            let mut buf = Vec::new();
            bwt.write_to(&mut buf)?;
            write_sink(&output, &buf)?;
            eprintln!(
                "n={} r={} base level {} ({} rounds)",
                bwt.len(),
                bwt.runs(),
                report.base_level,
                report.rounds.len()
            );
        }
        Command::Plcp { input, output } => {
            let p = Pipeline::new(&input, g)?;
            let list = p.irreducible();
            let succ = PlcpSucc::from_irreducible(&list)?;
            if p.verifying() {
                check(succ.decode() == oracle::build_tables(&p.codes()).plcp, "plcp")?;
            }
            let mut buf = Vec::new();
            succ.write_to(&mut buf)?;
            write_sink(&output, &buf)?;
        }
        Command::Rlcsa { action } => match action {
            RlcsaAction::Build { input, output, fanout } => {
                let p = Pipeline::new(&input, g)?;
                let cs = Rlcsa::build(&p.idx, &p.engine()?, fanout)?;
                if p.verifying() {
                    let sa = oracle::build_tables(&p.codes()).sa;
                    check(cs.sa_segment(1, p.n())? == sa, "rlcsa")?;
                }
                let mut buf = Vec::with_capacity(cs.serialized_size());
                cs.write_to(&mut buf)?;
                write_sink(&output, &buf)?;
                eprintln!(
                    "n={} r={} levels={} bytes={}",
                    cs.len(),
                    cs.runs(),
                    cs.level_count(),
                    cs.serialized_size()
                );
            }
            RlcsaAction::QuerySa { index, positions, depth } => {
                let cs = Rlcsa::read_from(&mut read_source(&index)?.as_slice())?;
                let mut out = String::new();
                for p in positions {
                    let (v, d) = cs.sa_at_with_depth(p)?;
                    if depth {
                        out.push_str(&format!("{v} {d}\n"));
                    } else {
                        out.push_str(&format!("{v}\n"));
                    }
                }
                print!("{out}");
            }
            RlcsaAction::QuerySegment { index, p, len } => {
                let cs = Rlcsa::read_from(&mut read_source(&index)?.as_slice())?;
                let seg: Vec<String> = cs.sa_segment(p, len)?.iter().map(usize::to_string).collect();
                println!("{}", seg.join(" "));
            }
        },
        Command::Lz77 { input, output, format } => {
            let p = Pipeline::new(&input, g)?;
            let parsing = p.lz77(&p.engine()?)?;
            if p.verifying() {
                let payload = p.text.decode_payload();
                let reference = oracle::lz77_reference(&payload);
                let lens = |v: &[Phrase]| v.iter().map(Phrase::len).collect::<Vec<_>>();
                check(
                    lens(&parsing.phrases) == lens(&reference) && parsing.decode()? == payload,
                    "lz77",
                )?;
            }
            let buf = match format {
                Lz77Format::Text => parsing.to_text().into_bytes(),
                Lz77Format::Binary => {
                    let mut b = Vec::new();
                    parsing.write_binary(&mut b)?;
                    b
                }
            };
            write_sink(&output, &buf)?;
            eprintln!("z={}", parsing.z());
        }
        Command::Lyndon { input, output } => {
            let p = Pipeline::new(&input, g)?;
            let f = p.lyndon()?;
            if p.verifying() {
                let codes = p.codes();
                check(f.to_tuples() == oracle::lyndon_duval(&codes[..codes.len() - 1]), "lyndon")?;
            }
            write_sink(&output, f.to_text().as_bytes())?;
        }
        Command::Distinct { input } => {
            let p = Pipeline::new(&input, g)?;
            let d = textbook::distinct_substrings(&p.irreducible());
            if p.verifying() {
                let codes = p.codes();
                check(d == oracle::distinct_substrings_reference(&codes[..codes.len() - 1]), "distinct")?;
            }
            println!("{d}");
        }
        Command::LongestK { input, k } => {
            let p = Pipeline::new(&input, g)?;
            let engine = p.engine()?;
            let plcp = PlcpSucc::from_irreducible(&p.irreducible())?;
            let cs = Rlcsa::build(&p.idx, &engine, 4)?;
            let len = textbook::longest_k_occurring(&p.idx, &cs, &engine, &plcp, k, p.block_tau(), g.dense_fallback)?;
            if p.verifying() {
                let codes = p.codes();
                check(len == oracle::longest_k_reference(&codes[..codes.len() - 1], k), "longest-k")?;
            }
            println!("{len}");
        }
        Command::Stats { input } => {
            let p = Pipeline::new(&input, g)?;
            let list = p.irreducible();
            let z = p.lz77(&p.engine()?)?.z();
            let m = p.lyndon()?.m();
            println!("n {}", p.n());
            println!("sigma {}", p.text.payload_sigma());
            println!("r {}", p.idx.runs());
            println!("z {z}");
            println!("m {m}");
            println!("irreducible_lcp_sum {}", list.sum());
            if p.verifying() {
                let codes = p.codes();
                check(p.idx.runs() == oracle::count_runs(&oracle::rotation_bwt(&codes)), "r")?;
                check(z == oracle::lz77_reference(&codes[..codes.len() - 1]).len(), "z")?;
                check(m == oracle::lyndon_duval(&codes[..codes.len() - 1]).len(), "m")?;
                let o = oracle::build_tables(&codes);
                let sum: u128 = oracle::run_starts(&o.bwt)
                    .iter()
                    .map(|&b| o.plcp[o.sa[b - 1] - 1] as u128)
                    .sum();
                check(list.sum() == sum, "irreducible lcp sum")?;
            }
        }
        Command::Gen { kind, bytes, output } => {
            let (body, comment) = match kind {
                GenKind::Fib { order } => (corpus::fibonacci(order), format!("fib order {order}")),
                GenKind::Repeat {
                    block,
                    copies,
                    mut_rate,
                    seed,
                    alphabet,
                } => {
                    if alphabet.is_empty() {
                        bail!("alphabet must not be empty");
                    }
                    let spec = RepeatSpec {
                        block,
                        copies,
                        mut_rate,
                        seed,
                        alphabet: alphabet.as_bytes(),
                    };
                    (
                        corpus::repeat(&spec),
                        format!("repeat block {block} copies {copies} mut-rate {mut_rate} alphabet {alphabet} seed {seed}"),
                    )
                }
            };
            if body.is_empty() {
                bail!("generated text is empty");
            }
            if bytes {
                write_sink(&output, &body)?;
            } else {
                let codes: Vec<u64> = body.iter().map(|&b| b as u64).collect();
                write_sink(&output, format_int_sequence(&codes, 256, &[comment]).as_bytes())?;
            }
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
