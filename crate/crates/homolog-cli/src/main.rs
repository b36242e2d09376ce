use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use homolog::checks::{run_corpus, CheckConfig, Selection};
use homolog::corpus::{builtin, load_corpus, Corpus};
use homolog::report::{Format, Report};
use homolog::resolution::Budget;
use homolog::summary::{compute, parse_sequence, sequence_json, ComputeRequest};
use homolog::Error;

/// Exit code for usage and input errors; 1 and 2 are taken by check reports.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "homolog", version, about = "Betti, Bass, Ext and Tor over Artinian local algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants, Betti and Bass sequences of one module
    Compute {
        /// Corpus file, or builtin:NAME
        #[arg(long)]
        corpus: String,
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "k")]
        module: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        betti: bool,
        #[arg(long)]
        bass: bool,
        /// Ext and Tor shapes for a pair, as M,N
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Run the check catalog over a corpus
    Check {
        #[arg(long)]
        corpus: String,
        #[arg(long, default_value = "all")]
        catalog: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Prefix length used for complexity and curvature (default max(depth, 10))
        #[arg(long)]
        asym_depth: Option<usize>,
        /// Output file; stdout when absent
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
        /// Record wall time per result (makes reports nondeterministic)
        #[arg(long)]
        timings: bool,
    },
    /// Complexity and curvature of a sequence, one integer per line ("-" for stdin)
    AnalyzeSeq { file: PathBuf },
    /// Print a built-in corpus
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    Builtin { name: String },
}

fn open_corpus(spec: &str) -> homolog::Result<Corpus> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin(name).ok_or_else(|| Error::Corpus(format!("no built-in corpus {name}"))),
        None => load_corpus(Path::new(spec)),
    }
}

fn read_input(path: &Path) -> homolog::Result<String> {
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Io(e.to_string()))
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> homolog::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn run(cmd: Cmd) -> homolog::Result<u8> {
    match cmd {
        Cmd::Compute { corpus, ring, module, depth, betti, bass, pairs } => {
            let corpus = open_corpus(&corpus)?;
            let inst = corpus.instances.iter().find(|i| i.id() == ring).ok_or_else(|| Error::Corpus(format!("no ring {ring} in corpus {}", corpus.name)))?;
            let pair = match pairs {
                Some(p) => match p.split_once(',') {
                    Some((a, b)) => Some((a.trim().to_string(), b.trim().to_string())),
                    None => return Err(Error::Corpus(format!("--pairs expects M,N, got {p}"))),
                },
                None => None,
            };
            let req = ComputeRequest { module, depth, betti: betti || !bass, bass, pair };
            let v = compute(&inst.build()?, &req, &Budget::from_env())?;
            emit(&pretty(&v))?;
            Ok(0)
        }
        Cmd::Check { corpus, catalog, depth, asym_depth, report, format, timings } => {
            let format: Format = format.parse()?;
            let corpus = open_corpus(&corpus)?;
            let sel = Selection::parse(&catalog)?;
            let mut cfg = CheckConfig::new(depth);
            if let Some(a) = asym_depth {
                cfg.asym_depth = a.max(depth);
            }
            cfg.timings = timings;
            let rep = Report::new(&corpus.name, depth, run_corpus(&corpus.instances, &sel, &cfg));
            let text = rep.render(format);
            match report {
                Some(path) => std::fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
                None => emit(&text)?,
            }
            let c = rep.counts;
            eprintln!("{} pass, {} fail, {} inconclusive", c.pass, c.fail, c.inconclusive);
            Ok(rep.exit_code() as u8)
        }
        Cmd::AnalyzeSeq { file } => {
            let values = parse_sequence(&read_input(&file)?)?;
            if values.len() < 4 {
                return Err(Error::TooShort(values.len()));
            }
            emit(&pretty(&sequence_json(&values)))?;
            Ok(0)
        }
        Cmd::Corpus { cmd: CorpusCmd::Builtin { name } } => {
            let c = builtin(&name).ok_or_else(|| Error::Corpus(format!("no built-in corpus {name}")))?;
            emit(&c.to_text())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
