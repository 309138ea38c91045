use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rdg_core::bench::{gen_hc_complete, gen_random};
use rdg_core::oracle::enumerate_answer_sets;
use rdg_core::semantics::{fitting_by_coloring, well_founded_model};
use rdg_core::{solve, trace, Mode, Program, Rdg, SolveError, SolveOptions, Strategy};

const USAGE: u8 = 1;
const MISMATCH: u8 = 2;
const LIMIT: u8 = 3;

/// Answer sets of ground normal programs via rule dependency graph colorings.
#[derive(Parser)]
#[command(name = "rdg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute answer sets.
    Solve(SolveArgs),
    /// Print the well-founded model.
    Wfs {
        /// Program file, or `-` for stdin.
        file: String,
    },
    /// Print the least fixpoint of Fitting's operator.
    Fitting {
        /// Program file, or `-` for stdin.
        file: String,
    },
    /// Generate benchmark programs.
    #[command(subcommand)]
    Gen(Gen),
    /// Print the rule dependency graph.
    Rdg {
        /// Program file, or `-` for stdin.
        file: String,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Program file, or `-` for stdin.
    file: String,
    /// One of I, II, II+, II-, III+, III-, IV, IV+, V, V+, VI, VI+, VI-.
    #[arg(long, short, default_value = "VI")]
    strategy: Strategy,
    /// Enumerate all answer sets (the default).
    #[arg(long, conflicts_with = "first")]
    all: bool,
    /// Stop after the first answer set.
    #[arg(long)]
    first: bool,
    /// Print search counters after the answer sets.
    #[arg(long)]
    stats: bool,
    /// Print a coloring sequence for every answer set.
    #[arg(long)]
    trace: bool,
    /// Compare against brute-force enumeration.
    #[arg(long)]
    check_oracle: bool,
    /// Check the sequence invariants at every search step.
    #[arg(long)]
    check_invariants: bool,
    /// Give up after this many choices.
    #[arg(long)]
    max_choices: Option<u64>,
    /// Worker threads.
    #[arg(long, short, default_value_t = 1)]
    jobs: usize,
    /// One JSON object per answer set, with its coloring.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Gen {
    /// Hamiltonian cycles of the complete directed graph on `n` nodes.
    Hc { n: usize },
    /// A random program over atoms a1..a<atoms>.
    Random {
        seed: u64,
        atoms: usize,
        rules: usize,
        #[arg(long, default_value_t = 2)]
        max_pbody: usize,
        #[arg(long, default_value_t = 2)]
        max_nbody: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn load(file: &str) -> Result<Program, Failure> {
    let text = if file == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| fail(USAGE, format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(file).map_err(|e| fail(USAGE, format!("{file}: {e}")))?
    };
    Program::parse(&text).map_err(|e| fail(USAGE, format!("{file}:{e}")))
}

fn run_solve(args: &SolveArgs, out: &mut impl Write) -> Result<(), Failure> {
    let p = load(&args.file)?;
    let opts = SolveOptions {
        mode: if args.first { Mode::First } else { Mode::All },
        max_choices: args.max_choices,
        jobs: args.jobs.max(1),
        check_invariants: args.check_invariants,
        ..SolveOptions::default()
    };
    let sol = solve(&p, args.strategy, &opts).map_err(|e| match e {
        SolveError::TooLarge { .. } => fail(LIMIT, e.to_string()),
        SolveError::Invariant(_) => fail(MISMATCH, e.to_string()),
    })?;

    let mut text = String::new();
    if sol.answers.is_empty() {
        text.push_str("UNSATISFIABLE\n");
    }
    for a in &sol.answers {
        if args.json {
            let mut atoms: Vec<&str> = a.atoms.iter().filter(|&&x| !p.is_reserved(x)).map(|&x| p.atom_name(x)).collect();
            atoms.sort_unstable();
            let value = serde_json::json!({
                "atoms": atoms,
                "coloring": a.coloring.to_json(),
            });
            text.push_str(&value.to_string());
        } else {
            text.push_str(&p.show_atoms(&a.atoms));
        }
        text.push('\n');
        if args.trace {
            if let Some(seq) = trace(&p, args.strategy, &a.coloring) {
                text.push_str(&seq.to_string());
            }
        }
    }
    if args.stats {
        text.push_str(&format!("{}\n", sol.stats));
    }
    out.write_all(text.as_bytes()).map_err(|e| fail(USAGE, e.to_string()))?;

    if !sol.complete {
        return Err(fail(LIMIT, format!("search stopped after {} choices", sol.stats.choices)));
    }
    if args.check_oracle {
        let mut want = enumerate_answer_sets(&p).map_err(|e| fail(LIMIT, e.to_string()))?;
        p.sort_atom_sets(&mut want);
        let got: Vec<_> = sol.answers.iter().map(|a| a.atoms.clone()).collect();
        let complete_match = got == want;
        let first_ok = args.first && (got.is_empty() == want.is_empty()) && got.iter().all(|x| want.contains(x));
        if !(complete_match || first_ok) {
            let show = |v: &[rdg_core::AtomSet]| v.iter().map(|x| p.show_atoms(x)).collect::<Vec<_>>().join(" ");
            return Err(fail(
                MISMATCH,
                format!("oracle mismatch: solver [{}], oracle [{}]", show(&got), show(&want)),
            ));
        }
    }
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let text = match cli.command {
        Command::Solve(args) => return run_solve(&args, out),
        Command::Wfs { file } => {
            let p = load(&file)?;
            format!("{}\n", well_founded_model(&p).show(&p))
        }
        Command::Fitting { file } => {
            let p = load(&file)?;
            format!("{}\n", fitting_by_coloring(&p).show(&p))
        }
        Command::Gen(Gen::Hc { n }) => gen_hc_complete(n).map_err(|e| fail(USAGE, e.to_string()))?.to_string(),
        Command::Gen(Gen::Random {
            seed,
            atoms,
            rules,
            max_pbody,
            max_nbody,
        }) => {
            if atoms == 0 {
                return Err(fail(USAGE, "need at least one atom"));
            }
            gen_random(seed, atoms, rules, max_pbody, max_nbody).to_string()
        }
        Command::Rdg { file, dot } => {
            let p = load(&file)?;
            let g = Rdg::build(&p);
            if dot {
                g.to_dot(&p)
            } else {
                let mut s = String::new();
                for (a, b) in g.e0() {
                    s.push_str(&format!("{a} -0-> {b}\n"));
                }
                for (a, b) in g.e1() {
                    s.push_str(&format!("{a} -1-> {b}\n"));
                }
                s
            }
        }
    };
    out.write_all(text.as_bytes()).map_err(|e| fail(USAGE, e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("rdg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
