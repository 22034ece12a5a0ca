use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use starcomb::bits::BitString;
use starcomb::switching::SwitchKind;
use starcomb::{
    build_tree, canon_plane, catalan_mod, enumerate_factor, plan_switches, potential_and_centroids,
    verify_ordering, GenState,
};

#[derive(Parser)]
#[command(
    name = "starcomb",
    version,
    about = "Star-transposition Gray codes for (n+1,n+1)-combinations with block-symmetric flip sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Combos,
    Flips,
    Blocks,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Stream the cyclic ordering of all (n+1,n+1)-combinations.
    Gen {
        #[arg(long)]
        n: usize,
        /// Block-to-block shift, coprime to 2n+1.
        #[arg(long, default_value_t = 1)]
        shift: usize,
        /// Start combination (length 2n+2, weight n+1).
        #[arg(long)]
        start: Option<String>,
        #[arg(long, value_enum, default_value_t = OutputMode::Combos)]
        output: OutputMode,
        /// Number of emissions (default: one full cycle).
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Check an ordering read from a file or stdin.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        shift: usize,
        /// Path to the combinations, one per line; "-" for stdin.
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Dump the cycle factor of the necklace graph.
    Factor {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
    },
    /// Dump the spanning tree on plane trees.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Show the switch plan for the Catalan shift.
    Switches {
        #[arg(long)]
        n: usize,
    },
    /// Measure generation speed and memory.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
    },
}

fn max_n_cap(default: usize) -> usize {
    std::env::var("MLC_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Gen {
            n,
            shift,
            start,
            output,
            limit,
        } => cmd_gen(n, shift, start.as_deref(), output, limit),
        Command::Verify { n, shift, input } => cmd_verify(n, shift, &input),
        Command::Factor { n, format } => cmd_factor(n, format),
        Command::Tree { n, format } => cmd_tree(n, format),
        Command::Switches { n } => cmd_switches(n),
        Command::Bench { n, steps } => cmd_bench(n, steps),
    }
}

fn cmd_gen(
    n: usize,
    shift: usize,
    start: Option<&str>,
    output: OutputMode,
    limit: Option<u64>,
) -> ExitCode {
    let start_bits = match start.map(BitString::parse).transpose() {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let mut gen = match GenState::init(n, shift, start_bits.as_ref()) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let limit = match limit.or_else(|| GenState::total_count(n)) {
        Some(l) => l,
        None => return fail("one cycle exceeds u64; pass --limit"),
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    // one block of the flip sequence has length N/(2n+1) = 2*Catalan(n)
    let block_len = match GenState::total_count(n) {
        Some(t) => t / (2 * n + 1) as u64,
        None if output == OutputMode::Blocks => {
            return fail("block output needs the cycle length to fit in u64")
        }
        None => 1,
    };
    let mut written = 0u64;
    for _ in 0..limit {
        let e = gen.next_emission();
        let r = match output {
            OutputMode::Combos => writeln!(out, "{}", e.combination),
            OutputMode::Flips => writeln!(out, "{}", e.flip_position),
            OutputMode::Blocks => {
                written += 1;
                if written.is_multiple_of(block_len) || written == limit {
                    writeln!(out, "{}", e.flip_position)
                } else {
                    write!(out, "{} ", e.flip_position)
                }
            }
        };
        if r.is_err() {
            return ExitCode::SUCCESS; // broken pipe
        }
    }
    let _ = out.flush();
    ExitCode::SUCCESS
}

fn cmd_verify(n: usize, shift: usize, input: &str) -> ExitCode {
    let reader: Box<dyn BufRead> = if input == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        match File::open(input) {
            Ok(f) => Box::new(BufReader::new(f)),
            Err(e) => return fail(format!("{input}: {e}")),
        }
    };
    let mut combos = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = match line {
            Ok(l) => l,
            Err(e) => return fail(e),
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match BitString::parse(line) {
            Ok(b) => combos.push(b),
            Err(e) => return fail(format!("line {}: {e}", i + 1)),
        }
    }
    let report = verify_ordering(combos, n, shift);
    if report.ok {
        println!("ok");
        ExitCode::SUCCESS
    } else {
        let (step, why) = report.first_violation.unwrap();
        println!("violation at step {step}: {why:?}");
        ExitCode::from(1)
    }
}

fn cmd_factor(n: usize, format: GraphFormat) -> ExitCode {
    let cap = max_n_cap(12);
    if n > cap {
        return fail(format!("n = {n} exceeds the enumeration cap {cap}"));
    }
    let cycles = match enumerate_factor(n) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match format {
        GraphFormat::Text => {
            for cycle in &cycles {
                let words: Vec<String> = cycle.iter().map(|x| x.canon().to_string()).collect();
                let _ = writeln!(out, "{}", words.join(" "));
            }
        }
        GraphFormat::Dot => {
            let _ = writeln!(out, "digraph factor {{");
            for cycle in &cycles {
                for (i, x) in cycle.iter().enumerate() {
                    let y = &cycle[(i + 1) % cycle.len()];
                    let _ = writeln!(out, "  \"{}\" -> \"{}\";", x.canon(), y.canon());
                }
            }
            let _ = writeln!(out, "}}");
        }
    }
    let _ = out.flush();
    ExitCode::SUCCESS
}

fn cmd_tree(n: usize, format: GraphFormat) -> ExitCode {
    let cap = max_n_cap(9);
    if n > cap {
        return fail(format!("n = {n} exceeds the enumeration cap {cap}"));
    }
    let arcs = match build_tree(n) {
        Ok(a) => a,
        Err(e) => return fail(e),
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match format {
        GraphFormat::Text => {
            for arc in &arcs {
                let _ = writeln!(
                    out,
                    "{} {} {:?}",
                    canon_plane(arc.pair.x()).canon(),
                    canon_plane(arc.pair.y()).canon(),
                    arc.direction
                );
            }
        }
        GraphFormat::Dot => {
            let _ = writeln!(out, "digraph spanning {{\n  rankdir=BT;");
            let mut by_potential: std::collections::BTreeMap<u64, Vec<String>> = Default::default();
            let mut note = |t: &starcomb::RootedTree| {
                let plane = canon_plane(t);
                let phi = potential_and_centroids(&plane).potential;
                by_potential
                    .entry(phi)
                    .or_default()
                    .push(plane.canon().to_string());
                plane.canon().to_string()
            };
            for arc in &arcs {
                let a = note(arc.pair.x());
                let b = note(arc.pair.y());
                let _ = writeln!(
                    out,
                    "  \"{a}\" -> \"{b}\" [label=\"({}, {})\"];",
                    arc.pair.x(),
                    arc.pair.y()
                );
            }
            for (phi, mut nodes) in by_potential {
                nodes.sort();
                nodes.dedup();
                let quoted: Vec<String> = nodes.iter().map(|s| format!("\"{s}\"")).collect();
                let _ = writeln!(
                    out,
                    "  {{ rank=same; /* potential {phi} */ {} }}",
                    quoted.join("; ")
                );
            }
            let _ = writeln!(out, "}}");
        }
    }
    let _ = out.flush();
    ExitCode::SUCCESS
}

fn cmd_switches(n: usize) -> ExitCode {
    if n < 4 {
        return fail("switch plans exist for n >= 4 (smaller sizes use hardcoded sequences)");
    }
    let s = catalan_mod(n);
    let plan = match plan_switches(n, s) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let items: Vec<String> = plan
        .switches
        .iter()
        .map(|sw| match sw.kind {
            SwitchKind::Tau1 => "tau_1".to_string(),
            SwitchKind::Tau2 => "tau_2".to_string(),
            SwitchKind::TauDz { d } => format!("tau_ndz d={d}"),
        })
        .collect();
    println!(
        "s={}, plan=[{}], s'={}",
        plan.s_before,
        items.join(", "),
        plan.s_after
    );
    ExitCode::SUCCESS
}

fn cmd_bench(n: usize, steps: u64) -> ExitCode {
    let mut gen = match GenState::init(n, 1, None) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    // warm up and time
    for _ in 0..steps.min(10_000) {
        std::hint::black_box(gen.next_emission());
    }
    let t0 = Instant::now();
    for _ in 0..steps {
        std::hint::black_box(gen.next_emission());
    }
    let dt = t0.elapsed();
    println!(
        "n={n} steps={steps} ns_per_step={:.1} state_heap_bytes={}",
        dt.as_nanos() as f64 / steps as f64,
        gen.heap_bytes()
    );
    ExitCode::SUCCESS
}
