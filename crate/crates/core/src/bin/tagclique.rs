use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tagclique::encoding::{graph_gadget, parse_toks, write_toks, Graph};
use tagclique::format::{parse_grammar, print_grammar};
use tagclique::gadgets::{build_reduction_grammar, grammar_stats};
use tagclique::recognizer::{recognize, RecognizeError};
use tagclique::reduction::{find_clique, run_campaign, CampaignConfig, DecompositionRecognizer};
use tagclique::tag::Terminal;

#[derive(Parser)]
#[command(name = "tagclique", about = "TAG toolkit and the 6k-clique reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Cyk,
    Decomp,
}

#[derive(Subcommand)]
enum Command {
    /// Write the graph gadget of a graph as a token file.
    Encode {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the reduction grammar.
    Grammar {
        #[arg(long)]
        out: PathBuf,
    },
    /// Exit 0 if the grammar generates the string, 1 if not, 2 on bad input.
    Recognize {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        string: PathBuf,
        #[arg(long, value_enum, default_value = "cyk")]
        algo: Algo,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exit 0 if the graph has an m-clique, 1 if not.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Check the reduction on seeded random graphs.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print size figures of a grammar.
    Stats {
        #[arg(long)]
        grammar: PathBuf,
    },
}

type Result<T> = std::result::Result<T, String>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    let err = |e: std::io::Error| format!("{}: {e}", path.display());
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(err)?;
    }
    fs::write(path, text).map_err(err)
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn verdict(yes: bool) -> ExitCode {
    println!("{}", if yes { "yes" } else { "no" });
    ExitCode::from(if yes { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Encode { graph, k, out } => {
            if k == 0 {
                return Err("--k must be at least 1".into());
            }
            let g = read_graph(&graph)?;
            write(&out, &write_toks(&graph_gadget(&g, k)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Grammar { out } => {
            let rg = build_reduction_grammar();
            write(&out, &print_grammar(&rg.grammar, &rg.handles))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Recognize {
            grammar,
            string,
            algo,
            k,
        } => {
            let (g, _) = parse_grammar(&read(&grammar)?).map_err(|e| e.to_string())?;
            let text = read(&string)?;
            match algo {
                Algo::Cyk => {
                    let s: Vec<Terminal> = text.split_whitespace().map(Terminal::new).collect();
                    match recognize(&g, &s) {
                        Ok(yes) => Ok(verdict(yes)),
                        Err(e @ RecognizeError::UnknownTerminal(_)) => Err(e.to_string()),
                    }
                }
                Algo::Decomp => {
                    let k = k.ok_or("--algo decomp requires --k")?;
                    if g != build_reduction_grammar().grammar {
                        return Err("--algo decomp only supports the reduction grammar".into());
                    }
                    let s = parse_toks(&text).map_err(|e| e.to_string())?;
                    let yes = DecompositionRecognizer::new()
                        .recognize(&s, k)
                        .map_err(|e| e.to_string())?;
                    Ok(verdict(yes))
                }
            }
        }
        Command::Oracle { graph, m } => {
            if m == 0 {
                return Err("--m must be at least 1".into());
            }
            let g = read_graph(&graph)?;
            match find_clique(&g, m) {
                Some(c) => {
                    let vs: Vec<String> = c.iter().map(usize::to_string).collect();
                    println!("clique {}", vs.join(" "));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("none");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Verify {
            n,
            k,
            trials,
            seed,
            report,
        } => {
            if k == 0 {
                return Err("--k must be at least 1".into());
            }
            let summary =
                run_campaign(&CampaignConfig::new(seed, n..=n, k, trials)).map_err(|e| e.to_string())?;
            let text = summary.report();
            match &report {
                Some(path) => write(path, &text)?,
                None => print!("{text}"),
            }
            if let Some(bundle) = &summary.failure {
                let dir = report
                    .as_deref()
                    .and_then(Path::parent)
                    .unwrap_or(Path::new("."))
                    .join("repro");
                bundle.write_to(&dir).map_err(|e| e.to_string())?;
                eprintln!("disagreement in trial {}; repro written to {}", bundle.trial, dir.display());
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { grammar } => {
            let (g, _) = parse_grammar(&read(&grammar)?).map_err(|e| e.to_string())?;
            print!("{}", grammar_stats(&g));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
