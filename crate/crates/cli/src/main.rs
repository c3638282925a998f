mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use weakid_core::bcs::{chain_entries, max_centralizer_chain, DEFAULT_CHAIN_CAP};
use weakid_core::disc::{abelian_weak_equals_identity, is_discriminating_finite, FreeAbelianGroup};
use weakid_core::repro::{run_repro, SCENARIOS};
use weakid_core::subgroups::SubgroupReport;
use weakid_core::weakid::{default_cutoff, sample_t_subgroup, ChainFile, SamplingBudget, Status};
use weakid_core::{
    check_weak, check_weak_modulo, make_group, min_height, quotient, verbal_image,
    verify_weak_star_chain, Error, FiniteGroup, GroupConfig, SearchConfig, TSubgroupGens, Word,
};

#[derive(Parser)]
#[command(name = "weakid", version, about = "Weak identities of finite groups")]
struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "WEAKID_THREADS", default_value_t = 0)]
    threads: usize,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Search node budget.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    node_cap: u64,

    /// Search time budget in seconds.
    #[arg(long, global = true, default_value_t = 60.0)]
    time_cap: f64,

    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = 360)]
    order_cap: usize,

    /// Largest group order for endomorphism enumeration.
    #[arg(long, global = true, default_value_t = 24)]
    endo_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupWords {
    /// Group spec, e.g. sym:3, q8, gl:2:3, prod(cyclic:2,sym:3), file:t.json
    #[arg(short, long)]
    group: String,

    /// Word of the set S (repeatable).
    #[arg(short, long = "word", required = true)]
    words: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether the words form a set of weak identities of a height.
    Check {
        #[command(flatten)]
        gw: GroupWords,
        #[arg(short = 'n', long)]
        height: usize,
    },
    /// Least height at which the words are weak identities.
    Height {
        #[command(flatten)]
        gw: GroupWords,
        /// Largest height tried (default ceil(log2 |G|) + 2).
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Check weak identities in G modulo the verbal image of other words.
    CheckMod {
        #[command(flatten)]
        gw: GroupWords,
        /// Word of the modulus H (repeatable; "1" for the trivial subgroup).
        #[arg(short, long = "modulo", required = true)]
        modulo: Vec<String>,
        #[arg(short = 'n', long)]
        height: usize,
    },
    /// Verify a weak* chain read from a JSON file.
    Chain {
        #[arg(short, long)]
        group: String,
        /// {"chain": [["<word>", ...], ...], "heights": [..]}
        #[arg(short, long)]
        file: PathBuf,
    },
    /// Subgroup generated by all values of the words.
    Verbal {
        #[command(flatten)]
        gw: GroupWords,
    },
    /// Quotient by the verbal image of the words.
    Quotient {
        #[command(flatten)]
        gw: GroupWords,
    },
    /// Longest strictly descending chain of centralizers.
    CentralizerChain {
        #[arg(short, long)]
        group: String,
        #[arg(long, default_value_t = DEFAULT_CHAIN_CAP)]
        cap: usize,
    },
    /// Decide whether a finite group is discriminating.
    Disc {
        #[arg(short, long)]
        group: String,
    },
    /// Compare weak identities and identities of a free abelian group.
    Abelian {
        #[arg(short, long)]
        word: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Sample elements of the verbal subgroup of the free group generated
    /// by the words.
    SampleTsub {
        #[arg(short, long = "word", required = true)]
        words: Vec<String>,
        #[arg(long, default_value_t = 2)]
        factors: usize,
        #[arg(long, default_value_t = 3)]
        word_len: usize,
        #[arg(long, default_value_t = 3)]
        vars: u32,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Run a scripted scenario, or `all`.
    Repro { name: String },
    /// Conventions and defaults.
    About,
}

/// Exit status of a finished run.
enum Outcome {
    Ok,
    Unknown,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Unknown) => ExitCode::from(3),
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Budget(_) => 3,
                Error::Io(_) => 1,
                _ => 2,
            })
        }
    }
}

fn emit(cli: &Cli, value: Value, text: String) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("reports serialize")
        );
    } else {
        print!("{text}");
    }
}

fn status_outcome(s: Status) -> Outcome {
    match s {
        Status::Unknown => Outcome::Unknown,
        _ => Outcome::Ok,
    }
}

fn run(cli: &Cli) -> weakid_core::Result<Outcome> {
    let gcfg = GroupConfig {
        order_cap: cli.order_cap,
        ..GroupConfig::default()
    };
    if cli.time_cap.is_nan() || cli.time_cap <= 0.0 || cli.node_cap == 0 {
        return Err(Error::InvalidArgument("budgets must be positive".into()));
    }
    let scfg = SearchConfig {
        node_cap: cli.node_cap,
        time_cap: Duration::from_secs_f64(cli.time_cap),
        endo_cap: cli.endo_cap,
        ..SearchConfig::default()
    };
    let group =
        |spec: &str| -> weakid_core::Result<FiniteGroup> { make_group(&spec.parse()?, &gcfg) };

    match &cli.command {
        Command::Check { gw, height } => {
            let g = group(&gw.group)?;
            let v = check_weak(&g, &TSubgroupGens::parse(&gw.words)?, *height, &scfg)?;
            emit(cli, json!(v), render::verdict(&v));
            Ok(status_outcome(v.status))
        }
        Command::Height { gw, cutoff } => {
            let g = group(&gw.group)?;
            let cutoff = cutoff.unwrap_or_else(|| default_cutoff(&g));
            let r = min_height(&g, &TSubgroupGens::parse(&gw.words)?, cutoff, &scfg)?;
            emit(cli, json!(r), render::height(&r));
            Ok(status_outcome(r.status))
        }
        Command::CheckMod { gw, modulo, height } => {
            let g = group(&gw.group)?;
            let s = TSubgroupGens::parse(&gw.words)?;
            let h = TSubgroupGens::parse(modulo)?;
            let v = check_weak_modulo(&g, &s, &h, *height, &scfg)?;
            emit(cli, json!(v), render::verdict(&v));
            Ok(status_outcome(v.status))
        }
        Command::Chain { group: spec, file } => {
            let g = group(spec)?;
            let cf = ChainFile::load(file)?;
            let r = verify_weak_star_chain(&g, &cf.chain, &cf.heights, &scfg)?;
            emit(cli, json!(r), render::chain(&r));
            Ok(status_outcome(r.status))
        }
        Command::Verbal { gw } => {
            let g = group(&gw.group)?;
            let h = verbal_image(&g, &TSubgroupGens::parse(&gw.words)?)?;
            let r = SubgroupReport::new(&g, &h);
            let text = format!("order {}\n{}\n", r.order, r.names.join(" "));
            emit(cli, json!(r), text);
            Ok(Outcome::Ok)
        }
        Command::Quotient { gw } => {
            let g = group(&gw.group)?;
            let h = verbal_image(&g, &TSubgroupGens::parse(&gw.words)?)?;
            let q = quotient(&g, &h)?;
            let value = json!({
                "verbal_order": h.order(),
                "quotient_order": q.group.order(),
                "elements": q.group.names(),
                "table": q.group.table().chunks(q.group.order().max(1)).collect::<Vec<_>>(),
            });
            let text = format!(
                "verbal image order {}\nquotient order {}\n{}\n",
                h.order(),
                q.group.order(),
                q.group.names().join(" ")
            );
            emit(cli, value, text);
            Ok(Outcome::Ok)
        }
        Command::CentralizerChain { group: spec, cap } => {
            let g = group(spec)?;
            let c = max_centralizer_chain(&g, *cap)?;
            let entries = chain_entries(&g, &c);
            let value = json!({ "length": c.length(), "complete": c.complete, "chain": entries });
            emit(cli, value, render::centralizer_chain(&entries, c.complete));
            Ok(if c.complete {
                Outcome::Ok
            } else {
                Outcome::Unknown
            })
        }
        Command::Disc { group: spec } => {
            let g = group(spec)?;
            let v = is_discriminating_finite(&g, scfg.endo_cap);
            emit(cli, json!(v), render::disc(&v));
            Ok(match v.status {
                weakid_core::disc::DiscStatus::Unknown => Outcome::Unknown,
                _ => Outcome::Ok,
            })
        }
        Command::Abelian { word, rank } => {
            let w: Word = word.parse()?;
            let v = abelian_weak_equals_identity(&w, &FreeAbelianGroup::new(*rank)?);
            let text = format!("{}\n{}\n", v.is_identity, v.explanation);
            emit(cli, json!(v), text);
            Ok(Outcome::Ok)
        }
        Command::SampleTsub {
            words,
            factors,
            word_len,
            vars,
            count,
        } => {
            let budget = SamplingBudget {
                factors: *factors,
                word_len: *word_len,
                vars: *vars,
                count: *count,
            };
            let samples = sample_t_subgroup(&TSubgroupGens::parse(words)?, &budget, cli.seed);
            let texts: Vec<String> = samples.iter().map(Word::to_string).collect();
            let text = texts.iter().map(|t| format!("{t}\n")).collect();
            emit(cli, json!({ "seed": cli.seed, "samples": texts }), text);
            Ok(Outcome::Ok)
        }
        Command::Repro { name } => {
            let names: Vec<&str> = if name == "all" {
                SCENARIOS.to_vec()
            } else {
                vec![name.as_str()]
            };
            let reports = names
                .iter()
                .map(|n| run_repro(n, &scfg))
                .collect::<weakid_core::Result<Vec<_>>>()?;
            let pass = reports.iter().all(|r| r.pass);
            let text = reports.iter().map(render::repro).collect();
            let value = if reports.len() == 1 {
                json!(reports[0])
            } else {
                json!(reports)
            };
            emit(cli, value, text);
            Ok(if pass { Outcome::Ok } else { Outcome::Mismatch })
        }
        Command::About => {
            let about: BTreeMap<&str, Value> = BTreeMap::from([
                ("version", json!(env!("CARGO_PKG_VERSION"))),
                (
                    "word_syntax",
                    json!("g1*g2^-1*[g1,g2]; 1 is the empty word"),
                ),
                (
                    "group_specs",
                    json!([
                        "trivial",
                        "cyclic:N",
                        "dihedral:N",
                        "sym:N",
                        "alt:N",
                        "q8",
                        "elemab:P:K",
                        "gl:2:P",
                        "sl:2:P",
                        "prod(A,B)",
                        "file:PATH"
                    ]),
                ),
                (
                    "permutation_product",
                    json!("left to right: (s*t)(p) = t(s(p))"),
                ),
                ("commutator", json!("[a,b] = a b a^-1 b^-1")),
                ("scenarios", json!(SCENARIOS)),
                (
                    "exit_codes",
                    json!({"0": "verdict computed", "1": "scenario mismatch or io error", "2": "usage error", "3": "budget exhausted or UNKNOWN"}),
                ),
            ]);
            let text = about.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
            emit(cli, json!(about), text);
            Ok(Outcome::Ok)
        }
    }
}
