use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use intersection_games_core::regime::{boundary_curves, classify, table_row, verify_chain, TABLE_HEADER};
use intersection_games_core::transcript::Parameters;
use intersection_games_core::tree::{build_tree_with, level_table, verify_tree, Brancher, TreeOptions};
use intersection_games_core::{
    play, GameVariant, Interval, Player, Rational, StrategyId, TargetDescriptor, VariantTag,
};
use intersection_games_service::{
    router, CreateSession, FileStore, HumanSide, MemoryStore, SessionManager, Status,
    TranscriptStore,
};

#[derive(Parser)]
#[command(name = "igames", version, about = "Exact interval games: play, simulate, trees and regimes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct VariantArgs {
    /// banach-mazur, schmidt or mcmullen
    #[arg(long)]
    variant: VariantTag,
    #[arg(long)]
    alpha: Option<Rational>,
    #[arg(long)]
    beta: Option<Rational>,
    /// Banach-Mazur shrink cap for Bob (default 1/2)
    #[arg(long)]
    shrink: Option<Rational>,
}

impl VariantArgs {
    fn parameters(&self) -> Parameters {
        Parameters {
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            shrink: self.shrink.clone(),
        }
    }

    fn build(&self) -> Result<GameVariant, String> {
        self.parameters().to_variant(self.variant).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Play one side interactively; moves are read as `lo hi` lines
    Play {
        #[command(flatten)]
        variant: VariantArgs,
        /// `alice`, `bob` or `both` (hot seat)
        #[arg(long, default_value = "alice")]
        human: HumanSide,
        /// Strategy for the engine seat; omitted when both sides are human
        #[arg(long)]
        engine: Option<String>,
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        /// Bob's opening as `lo,hi`
        #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
        b0: Option<Interval>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory of the transcript store
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Strategy against strategy; prints the transcript as JSON
    Simulate {
        #[command(flatten)]
        variant: VariantArgs,
        #[arg(long)]
        bob: String,
        #[arg(long)]
        alice: String,
        #[arg(long, default_value = "undecidable")]
        target: String,
        #[arg(long, default_value_t = 10)]
        horizon: usize,
        #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
        b0: Option<Interval>,
        /// Seed for `random-legal` strategies given without one
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        pretty: bool,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Build and verify a strategy tree
    Tree {
        #[command(flatten)]
        variant: VariantArgs,
        /// Strategy id of the pinned player
        #[arg(long)]
        pinned: String,
        #[arg(long)]
        pinned_player: Player,
        /// split, endpoint-pair or obstacles (default depends on the variant)
        #[arg(long)]
        brancher: Option<Brancher>,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = intersection_games_core::tree::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
        b0: Option<Interval>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the word -> {lo, hi, rounds} export here
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Classify one (alpha, beta) pair, or a grid with denominator `--grid`
    Classify {
        #[arg(long)]
        alpha: Option<Rational>,
        #[arg(long)]
        beta: Option<Rational>,
        #[arg(long)]
        grid: Option<i64>,
        /// Print sampled boundary curves instead
        #[arg(long)]
        boundary: Option<u32>,
    },
    /// Evaluate the escape-bound chain for one pair
    Chain {
        #[arg(long)]
        alpha: Rational,
        #[arg(long)]
        beta: Rational,
    },
    /// Start the HTTP session service
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: String,
        #[arg(long, default_value = "transcripts")]
        store: PathBuf,
    },
}

fn parse_interval(s: &str) -> Result<Interval, String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got `{s}`"))?;
    let lo: Rational = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: Rational = hi.trim().parse().map_err(|e| format!("{e}"))?;
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

/// Fills in the seed for a bare `random-legal`.
fn strategy_id(id: &str, seed: u64) -> String {
    if id == "random-legal" {
        format!("random-legal:{seed}")
    } else {
        id.to_string()
    }
}

fn open_store(dir: Option<PathBuf>) -> Result<Arc<dyn TranscriptStore>, String> {
    Ok(match dir {
        Some(d) => Arc::new(FileStore::open(d).map_err(|e| e.to_string())?),
        None => Arc::new(MemoryStore::new()),
    })
}

/// `println!` that ends the process quietly when stdout is a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        if let Err(e) = writeln!(io::stdout().lock(), $($arg)*) {
            if e.kind() == io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            return Err(e.to_string());
        }
    }};
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Play {
            variant,
            human,
            engine,
            target,
            horizon,
            b0,
            seed,
            store,
        } => play_interactive(variant, human, engine.map(|e| strategy_id(&e, seed)), target, horizon, b0, store),
        Command::Simulate {
            variant,
            bob,
            alice,
            target,
            horizon,
            b0,
            seed,
            pretty,
            store,
        } => {
            let v = variant.build()?;
            let bob: StrategyId = strategy_id(&bob, seed).parse().map_err(|e| format!("{e}"))?;
            let alice: StrategyId = strategy_id(&alice, seed.wrapping_add(1))
                .parse()
                .map_err(|e| format!("{e}"))?;
            let bob = bob.build(Player::Bob).map_err(|e| e.to_string())?;
            let alice = alice.build(Player::Alice).map_err(|e| e.to_string())?;
            let target: TargetDescriptor = target.parse().map_err(|e| format!("{e}"))?;
            let t = play(&v, bob.as_ref(), alice.as_ref(), b0, horizon, &target)
                .map_err(|e| e.to_string())?;
            if let Some(dir) = store {
                let store = FileStore::open(dir).map_err(|e| e.to_string())?;
                store
                    .append(&uuid::Uuid::new_v4().to_string(), &t)
                    .map_err(|e| e.to_string())?;
            }
            out!("{}", if pretty { t.to_json_pretty() } else { t.to_json() });
            Ok(())
        }
        Command::Tree {
            variant,
            pinned,
            pinned_player,
            brancher,
            depth,
            max_depth,
            b0,
            seed,
            export,
        } => {
            let v = variant.build()?;
            let id: StrategyId = strategy_id(&pinned, seed).parse().map_err(|e| format!("{e}"))?;
            let pinned = id.build(pinned_player).map_err(|e| e.to_string())?;
            let brancher = brancher.unwrap_or_else(|| Brancher::default_for(&v));
            let options = TreeOptions { opening: b0, max_depth };
            let tree = build_tree_with(&v, pinned.as_ref(), brancher, depth, &options)
                .map_err(|e| e.to_string())?;
            let reports = verify_tree(&tree).map_err(|e| e.to_string())?;
            out!("{}", level_table(&reports).trim_end());
            if let Some(path) = export {
                std::fs::write(&path, tree.export_json()).map_err(|e| e.to_string())?;
                eprintln!("wrote {} nodes to {}", tree.nodes.len(), path.display());
            }
            Ok(())
        }
        Command::Classify {
            alpha,
            beta,
            grid,
            boundary,
        } => {
            if let Some(samples) = boundary {
                out!("alpha,beta,curve");
                for (a, b, curve) in boundary_curves(samples) {
                    out!("{a},{b},{curve}");
                }
                return Ok(());
            }
            if let Some(n) = grid {
                if n < 2 {
                    return Err("--grid needs a denominator of at least 2".into());
                }
                out!("{TABLE_HEADER}");
                for a in 1..n {
                    for b in 1..n {
                        out!("{}", table_row(&classify(&Rational::new(a, n), &Rational::new(b, n))));
                    }
                }
                return Ok(());
            }
            let (Some(a), Some(b)) = (alpha, beta) else {
                return Err("give --alpha and --beta, or --grid, or --boundary".into());
            };
            let verdict = classify(&a, &b);
            out!("{}", serde_json::to_string_pretty(&verdict).expect("verdicts serialize"));
            Ok(())
        }
        Command::Chain { alpha, beta } => {
            let report = verify_chain(&alpha, &beta).map_err(|e| e.to_string())?;
            for step in &report.steps {
                out!("{step}");
            }
            out!("margin {}", report.conclusion_margin);
            Ok(())
        }
        Command::Serve { addr, store } => {
            let store = FileStore::open(&store).map_err(|e| e.to_string())?;
            let manager = Arc::new(SessionManager::new(Arc::new(store)));
            let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
            rt.block_on(async move {
                let listener = tokio::net::TcpListener::bind(&addr)
                    .await
                    .map_err(|e| format!("cannot bind {addr}: {e}"))?;
                eprintln!("listening on http://{addr}");
                axum::serve(listener, router(manager))
                    .with_graceful_shutdown(async {
                        let _ = tokio::signal::ctrl_c().await;
                    })
                    .await
                    .map_err(|e| e.to_string())
            })
        }
    }
}

fn play_interactive(
    variant: VariantArgs,
    human: HumanSide,
    engine: Option<String>,
    target: Option<String>,
    horizon: usize,
    b0: Option<Interval>,
    store: Option<PathBuf>,
) -> Result<(), String> {
    if human == HumanSide::None {
        return Err("interactive play needs a human side; use `simulate` instead".into());
    }
    let manager = SessionManager::new(open_store(store)?);
    let view = manager
        .create_session(CreateSession {
            variant: variant.variant,
            alpha: variant.alpha.clone(),
            beta: variant.beta.clone(),
            shrink: variant.shrink.clone(),
            human,
            engine,
            alice_engine: None,
            target,
            horizon,
            b0,
        })
        .map_err(|e| e.to_string())?;
    let id = view.id.clone();
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    let mut view = view;
    loop {
        for (i, m) in view.moves.iter().enumerate() {
            println!("{i:>3} {:<5} {}", m.player.as_str(), m.interval);
        }
        if view.status == Status::Finished {
            let verdict = view.verdict.as_ref().expect("finished sessions carry a verdict");
            println!("{} with bracket {}", verdict.outcome.as_str(), verdict.bracket);
            return Ok(());
        }
        let hint = manager.hint_legal(&id).map_err(|e| e.to_string())?;
        if let Some(host) = &hint.host {
            print!("host {host}");
        }
        if let Some(len) = &hint.required_length {
            print!(", length {len}");
        }
        println!();
        print!("{} > ", hint.player);
        io::stdout().flush().ok();
        let Some(line) = lines.next() else {
            return Ok(());
        };
        let line = line.map_err(|e| e.to_string())?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [lo, hi] = parts.as_slice() else {
            eprintln!("enter a move as `lo hi`, e.g. `1/4 3/4`");
            continue;
        };
        let parsed = lo
            .parse::<Rational>()
            .map_err(|e| e.to_string())
            .and_then(|lo| hi.parse::<Rational>().map(|hi| (lo, hi)).map_err(|e| e.to_string()))
            .and_then(|(lo, hi)| Interval::new(lo, hi).map_err(|e| e.to_string()));
        let interval = match parsed {
            Ok(iv) => iv,
            Err(e) => {
                eprintln!("{e}");
                continue;
            }
        };
        match manager.submit_move(&id, None, interval) {
            Ok(v) => view = v,
            Err(e) => eprintln!("{e}"),
        }
    }
}
