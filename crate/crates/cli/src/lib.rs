//! Command-line front end for `linkacq`.
//!
//! Exit status: 0 on success, 1 when a sentence cannot be parsed or
//! acquired, 2 on usage or workspace errors.

pub mod workspace;

use std::collections::BTreeSet;
use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use linkacq::format::corpus_lines;
use linkacq::linker::{self, enumerate_bruteforce, render_diagram, LinkError};
use linkacq::semantic_acq::{self, classify_unknown, generalize, SemanticError};
use linkacq::syntax_acq::{acquire_syntax, AcquireOptions};
use linkacq::tokenize;

use workspace::{write_atomic, Workspace};

#[derive(Debug, Parser)]
#[command(
    name = "linkacq",
    version,
    about = "Link grammar parsing and lexical acquisition"
)]
struct Cli {
    /// Workspace configuration file.
    #[arg(long, short = 'w', global = true, default_value = workspace::DEFAULT_CONFIG)]
    workspace: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the sample workspace into a directory.
    Init { dir: PathBuf },
    /// Parse sentences and print their linkages.
    Parse {
        #[command(flatten)]
        input: Input,
        /// Print every linkage instead of the first.
        #[arg(long)]
        all_linkages: bool,
        /// Draw linkages as arc diagrams (the default).
        #[arg(long, conflicts_with = "records")]
        diagram: bool,
        /// Print linkages as line records.
        #[arg(long)]
        records: bool,
        /// Cross-check against the brute-force enumerator.
        #[arg(long)]
        verify: bool,
    },
    /// Infer disjuncts for unknown words.
    Acquire {
        #[command(flatten)]
        input: Input,
        /// Keep hypotheses no known word uses.
        #[arg(long)]
        no_filter: bool,
        #[arg(long, value_name = "N")]
        max_unknowns: Option<usize>,
        /// Print the elimination trace.
        #[arg(long)]
        trace: bool,
        /// Add the acquired entries to the lexicon file.
        #[arg(long)]
        write: bool,
    },
    /// Tag and generalize usages from a corpus of fully known sentences.
    Train { corpus: PathBuf },
    /// Classify an unknown word in the concept hierarchies.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Position of the word to classify when there are several unknowns.
        #[arg(long, value_name = "N")]
        position: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct Input {
    /// Sentence words; reads one sentence per line from stdin if omitted.
    sentence: Vec<String>,
}

impl Input {
    fn lines(&self, stdin: &mut dyn BufRead) -> anyhow::Result<Vec<(usize, Vec<String>)>> {
        if !self.sentence.is_empty() {
            let words = tokenize(&self.sentence.join(" "));
            if words.is_empty() {
                return Err(anyhow!("empty sentence"));
            }
            return Ok(vec![(1, words)]);
        }
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .context("cannot read stdin")?;
        Ok(corpus_lines(&text).collect())
    }
}

/// A failed command and the exit status it maps to.
struct Failure {
    code: i32,
    error: anyhow::Error,
}

fn usage(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 2,
        error: error.into(),
    }
}

fn invalid(error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: 1,
        error: error.into(),
    }
}

/// Per-sentence problems go to `err` prefixed with the input line; the
/// command carries on and the worst status wins.
struct Session<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    code: i32,
}

impl Session<'_> {
    fn report(&mut self, line: usize, code: i32, message: impl std::fmt::Display) {
        let _ = writeln!(self.err, "line {line}: {message}");
        self.code = self.code.max(code);
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let mut session = Session { out, err, code: 0 };
    match dispatch(cli, stdin, &mut session) {
        Ok(()) => session.code,
        Err(f) => {
            let _ = writeln!(session.err, "error: {:#}", f.error);
            f.code.max(session.code)
        }
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn BufRead, s: &mut Session<'_>) -> Result<(), Failure> {
    if let Command::Init { dir } = &cli.command {
        let config = workspace::init(dir).map_err(usage)?;
        let _ = writeln!(s.out, "wrote {}", config.display());
        return Ok(());
    }
    let ws = Workspace::load(&cli.workspace).map_err(usage)?;
    match cli.command {
        Command::Init { .. } => unreachable!("handled above"),
        Command::Parse {
            input,
            all_linkages,
            diagram: _,
            records,
            verify,
        } => cmd_parse(&ws, &input, stdin, s, all_linkages, records, verify),
        Command::Acquire {
            input,
            no_filter,
            max_unknowns,
            trace,
            write,
        } => {
            let mut opts = AcquireOptions {
                max_unknowns: ws.options.max_unknowns,
                filter: ws.options.filter && !no_filter,
            };
            if let Some(n) = max_unknowns {
                if n > workspace::MAX_UNKNOWNS_LIMIT {
                    return Err(usage(anyhow!(
                        "--max-unknowns must be at most {}",
                        workspace::MAX_UNKNOWNS_LIMIT
                    )));
                }
                opts.max_unknowns = n;
            }
            cmd_acquire(&ws, &input, stdin, s, opts, trace, write)
        }
        Command::Train { corpus } => cmd_train(&ws, &corpus, s),
        Command::Classify { input, position } => cmd_classify(&ws, &input, stdin, s, position),
    }
}

fn cmd_parse(
    ws: &Workspace,
    input: &Input,
    stdin: &mut dyn BufRead,
    s: &mut Session<'_>,
    all: bool,
    records: bool,
    verify: bool,
) -> Result<(), Failure> {
    let lex = ws.lexicon().map_err(usage)?;
    let mut first_output = true;
    for (line, words) in input.lines(stdin).map_err(usage)? {
        let linkages = match linker::parse(&words, &lex) {
            Ok(ls) => ls,
            Err(e) => {
                s.report(line, 1, e);
                continue;
            }
        };
        if linkages.is_empty() {
            s.report(line, 1, "no valid linkage");
            continue;
        }
        if verify {
            match enumerate_bruteforce(&words, &lex, ws.options.oracle_cap) {
                Ok(oracle) if oracle == linkages => {}
                Ok(_) => s.report(line, 1, "brute-force enumeration disagrees"),
                Err(LinkError::CapExceeded { len, cap }) => s.report(
                    line,
                    0,
                    format!("not verified, {len} words exceed the oracle cap of {cap}"),
                ),
                Err(e) => s.report(line, 1, e),
            }
        }
        let shown = if all { &linkages[..] } else { &linkages[..1] };
        for l in shown {
            if !first_output {
                let _ = writeln!(s.out);
            }
            first_output = false;
            let text = if records {
                l.to_records()
            } else {
                render_diagram(l).map_err(invalid)?
            };
            let _ = write!(s.out, "{text}");
        }
    }
    Ok(())
}

fn cmd_acquire(
    ws: &Workspace,
    input: &Input,
    stdin: &mut dyn BufRead,
    s: &mut Session<'_>,
    opts: AcquireOptions,
    trace: bool,
    write: bool,
) -> Result<(), Failure> {
    let mut lex = ws.lexicon().map_err(usage)?;
    let mut learned = false;
    for (line, words) in input.lines(stdin).map_err(usage)? {
        let r = match acquire_syntax(&words, &lex, opts) {
            Ok(r) => r,
            Err(e) => {
                s.report(line, 1, e);
                continue;
            }
        };
        if r.hypotheses.is_empty() {
            s.report(line, 0, "no unknown words");
        }
        for &p in &r.novel {
            s.report(
                line,
                0,
                format!(
                    "`{}` has no disjunct used by a known word; keeping all hypotheses",
                    r.words[p]
                ),
            );
        }
        for (word, ds) in r.by_word() {
            let shown: Vec<String> = ds.iter().map(ToString::to_string).collect();
            let _ = writeln!(s.out, "{word}: {}", shown.join(" | "));
            if write {
                lex.add_entry(word, &ds).map_err(usage)?;
                learned = true;
            }
        }
        if trace {
            let _ = write!(s.out, "{}", r.trace_lines());
        }
    }
    if learned {
        write_atomic(&ws.lexicon_path, &lex.serialize()).map_err(usage)?;
    }
    Ok(())
}

fn cmd_train(ws: &Workspace, corpus: &PathBuf, s: &mut Session<'_>) -> Result<(), Failure> {
    let lex = ws.lexicon().map_err(usage)?;
    let hiers = ws.hierarchies().map_err(usage)?;
    let mut semlex = ws.semlex(&hiers).map_err(usage)?;
    let text = fs::read_to_string(corpus)
        .with_context(|| format!("cannot read {}", corpus.display()))
        .map_err(usage)?;
    for (line, words) in corpus_lines(&text) {
        let at = |e: &dyn std::fmt::Display| anyhow!("{}: line {line}: {e}", corpus.display());
        if let Some(w) = words.iter().find(|w| !lex.contains(w)) {
            return Err(invalid(at(&format!("unknown word `{w}`"))));
        }
        semlex = semantic_acq::train_sentence(&words, &lex, &hiers, &semlex)
            .map_err(|e| invalid(at(&e)))?;
    }
    let semlex = generalize(&semlex, &hiers).map_err(usage)?;
    let text = semlex.serialize();
    write_atomic(&ws.semlex_path, &text).map_err(usage)?;
    let _ = write!(s.out, "{text}");
    Ok(())
}

fn cmd_classify(
    ws: &Workspace,
    input: &Input,
    stdin: &mut dyn BufRead,
    s: &mut Session<'_>,
    position: Option<usize>,
) -> Result<(), Failure> {
    let lex = ws.lexicon().map_err(usage)?;
    let hiers = ws.hierarchies().map_err(usage)?;
    let semlex = ws.semlex(&hiers).map_err(usage)?;
    let opts = AcquireOptions {
        max_unknowns: ws.options.max_unknowns,
        filter: ws.options.filter,
    };
    for (line, words) in input.lines(stdin).map_err(usage)? {
        let unknown: BTreeSet<usize> = (0..words.len())
            .filter(|&p| !lex.contains(&words[p]))
            .collect();
        let pos = match (position, unknown.len()) {
            (Some(p), _) => p,
            (None, 1) => *unknown.first().expect("one element"),
            (None, 0) => {
                s.report(line, 1, "no unknown words");
                continue;
            }
            (None, _) => {
                return Err(usage(anyhow!(
                    "line {line}: several unknown words, choose one with --position"
                )))
            }
        };
        match classify_unknown(&words, pos, &lex, &semlex, &hiers, opts) {
            Ok(found) => {
                if found.is_empty() {
                    s.report(line, 1, format!("no usage applies to `{}`", words[pos]));
                }
                for c in found {
                    let _ = writeln!(s.out, "{} -> {}", words[pos], c.concept);
                    for e in &c.evidence {
                        let _ = writeln!(s.out, "  via {e}");
                    }
                }
            }
            Err(e @ (SemanticError::BadPosition { .. } | SemanticError::NotUnknown { .. })) => {
                return Err(usage(anyhow!("line {line}: {e}")))
            }
            Err(e) => s.report(line, 1, e),
        }
    }
    Ok(())
}
