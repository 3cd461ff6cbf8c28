use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use arcgraph::constructions::{
    build_construction, construction_index, coset_graph, ordered_pairs_action, two_subsets_action,
};
use arcgraph::io::{load_element, load_group, load_subgroup};
use arcgraph::verify::{all_pass, check_sabidussi, scan_orbital_graphs, verify_construction, CheckRecord};
use arcgraph::{CosetSpace, PermGroup};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

mod selftest;

#[derive(Parser)]
#[command(name = "arcgraph", version, about = "Build and certify arc-transitive graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Edgelist,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Action {
    Natural,
    OrderedPairs,
    #[value(name = "2-subsets")]
    TwoSubsets,
    Coset,
}

#[derive(Args, Clone, Debug)]
struct RunConfig {
    /// Largest vertex count for an explicit graph.
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    vertex_cap: u64,
    /// Largest group order or candidate count for brute-force checks.
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    bruteforce_cap: u64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Seed for the randomized self-tests; echoed in every report.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Either a full group spec (`alt:5`, a file) or a family name completed
/// by `--n` or `--p` (`--group alt --n 5`).
#[derive(Args, Clone, Debug)]
struct GroupArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
}

impl GroupArgs {
    fn spec(&self) -> String {
        if self.group.contains(':') {
            return self.group.clone();
        }
        match (self.n, self.p) {
            (Some(v), _) | (None, Some(v)) => format!("{}:{v}", self.group),
            (None, None) => self.group.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the q ≡ 3 (mod 4) construction and, within the cap, its graph.
    Construct {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Certify every claim about the construction for one q.
    VerifyConstruction {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Check the coset-graph conditions for (G, K, g).
    Sabidussi {
        #[command(flatten)]
        group: GroupArgs,
        /// Subgroup spec, or `stab:<points>` for a stabilizer in G.
        #[arg(long)]
        subgroup: String,
        /// Element: cycle or image notation, `@file`, `construction:<q>` or `pgl2:<p>`.
        #[arg(long)]
        g: String,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Survey the orbital graphs of a transitive action.
    Scan {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "natural")]
        action: Action,
        /// Subgroup for `--action coset`.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Run the randomized self-test suite.
    Selftest {
        #[command(flatten)]
        config: RunConfig,
    },
}

fn emit(config: &RunConfig, text: &str) -> Result<()> {
    match &config.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn records_text(records: &[CheckRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let verdict = serde_json::to_value(r.verdict).expect("serializable");
        let tag = verdict.as_str().unwrap_or("?").to_uppercase();
        out.push_str(&format!("{tag:<8} {}: {}\n", r.check_id, r.claim));
    }
    out
}

fn construct(q: u64, config: &RunConfig) -> Result<bool> {
    let t = build_construction(q)?;
    let index = construction_index(&t);
    let (graph, skipped) = if index > BigUint::from(config.vertex_cap) {
        (None, Some(format!("graph skipped: index {index} exceeds vertex cap {}", config.vertex_cap)))
    } else {
        let (action, _) = coset_graph(&t.ambient(), &t.k, &t.g, config.vertex_cap)?;
        (Some(action.into_parts().1), None)
    };
    let triple = serde_json::to_value(t.to_json())?;
    let format = config.format.unwrap_or(Format::Json);
    match (format, &graph) {
        (Format::Json, _) => {
            let doc = json!({
                "seed": config.seed,
                "triple": triple,
                "graph": graph.as_ref().map(|g| g.to_json()),
                "graph_skipped": skipped,
            });
            emit(config, &pretty(&doc))?;
        }
        (Format::Text, _) => {
            let mut s = format!("construction q={q}: degree {}, |K| = {}\n", t.degree(), t.k.order());
            match &graph {
                Some(g) => s.push_str(&format!(
                    "graph: {} vertices, {} edges, valency {:?}, connected {}\n",
                    g.vertex_count(),
                    g.edge_count(),
                    g.valency(),
                    g.is_connected()
                )),
                None => s.push_str(&format!("{}\n", skipped.as_deref().unwrap_or(""))),
            }
            emit(config, &s)?;
        }
        (Format::Edgelist, Some(g)) => emit(config, &g.to_edge_list())?,
        (Format::Dot, Some(g)) => emit(config, &g.to_dot(&format!("construction_q{q}")))?,
        (Format::Edgelist | Format::Dot, None) => {
            eprintln!("{}", skipped.as_deref().unwrap_or(""));
            print!("{}", pretty(&json!({ "seed": config.seed, "triple": triple })));
        }
    }
    Ok(true)
}

fn verify(q: u64, config: &RunConfig) -> Result<bool> {
    let cert = verify_construction(q, config.vertex_cap)?;
    let passed = cert.passed();
    match config.format.unwrap_or(Format::Text) {
        Format::Json => {
            let mut doc = serde_json::to_value(&cert)?;
            doc["seed"] = json!(config.seed);
            doc["passed"] = json!(passed);
            emit(config, &pretty(&doc))?;
        }
        _ => {
            let mut s = format!("construction q={q} (seed {})\n", config.seed);
            s.push_str(&records_text(&cert.checks));
            if let Some(reason) = &cert.graph_skipped {
                s.push_str(&format!("graph skipped: {reason}\n"));
            }
            s.push_str(if passed { "all checks pass\n" } else { "some checks FAIL\n" });
            emit(config, &s)?;
        }
    }
    Ok(passed)
}

fn sabidussi(group: &GroupArgs, subgroup: &str, g: &str, config: &RunConfig) -> Result<bool> {
    let spec = group.spec();
    let big = load_group(&spec)?;
    let k = load_subgroup(subgroup, &big)?;
    let x = load_element(g, big.degree())?;
    let cert = check_sabidussi(&big, &k, &x)?;
    let record = cert.to_record(json!({ "group": spec, "subgroup": subgroup, "g": x.to_string() }));
    let passed = cert.passed();
    let mut reasons = Vec::new();
    if !cert.g_outside_k {
        reasons.push("g lies in K");
    }
    if !cert.normalizes_ok {
        reasons.push("g does not normalize K ∩ K^g");
    }
    if !cert.square_in_k {
        reasons.push("g^2 lies outside K");
    }
    if !cert.generates_g {
        reasons.push("<K, g> is a proper subgroup of G");
    }
    match config.format.unwrap_or(Format::Text) {
        Format::Json => {
            let doc = json!({ "seed": config.seed, "records": [record], "passed": passed, "reasons": reasons });
            emit(config, &pretty(&doc))?;
        }
        _ => {
            let mut s = records_text(std::slice::from_ref(&record));
            s.push_str(&format!(
                "valency d = {}, |K| = {}, |K ∩ K^g| = {}, |<K,g>| = {}, |G| = {}\n",
                cert.valency, cert.k_order, cert.intersection_order, cert.join_order, cert.g_order
            ));
            for r in &reasons {
                s.push_str(&format!("reason: {r}\n"));
            }
            emit(config, &s)?;
        }
    }
    Ok(passed)
}

fn scan(group: &GroupArgs, action: Action, subgroup: Option<&str>, s: usize, config: &RunConfig) -> Result<bool> {
    let spec = group.spec();
    let base = load_group(&spec)?;
    let acting: PermGroup = match action {
        Action::Natural => base,
        Action::OrderedPairs => ordered_pairs_action(&base).group,
        Action::TwoSubsets => two_subsets_action(&base).group,
        Action::Coset => {
            let Some(sub) = subgroup else {
                bail!("--action coset needs --subgroup");
            };
            let k = load_subgroup(sub, &base)?;
            CosetSpace::new(&base, &k, config.vertex_cap)?.induced_action()
        }
    };
    let records = scan_orbital_graphs(&acting, 0, s, config.vertex_cap)?;
    let action_name = action.to_possible_value().expect("no skipped variants").get_name().to_owned();
    let hits = records.iter().filter(|r| r.is_hit()).count();
    match config.format.unwrap_or(Format::Text) {
        Format::Json => {
            let doc = json!({
                "seed": config.seed,
                "group": spec,
                "action": action_name,
                "degree": acting.degree(),
                "s": s,
                "suborbits": records,
                "hits": hits,
            });
            emit(config, &pretty(&doc))?;
        }
        _ => {
            let mut out = format!("{spec}, {action_name} action of degree {}, s = {s}\n", acting.degree());
            out.push_str("length  rep  self-paired  connected  valency  s-arc-transitive\n");
            let show = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
            for r in &records {
                out.push_str(&format!(
                    "{:>6}  {:>3}  {:>11}  {:>9}  {:>7}  {:>16}\n",
                    r.suborbit_length,
                    r.representative,
                    r.self_paired,
                    show(r.connected),
                    r.valency.map_or("-".to_string(), |v| v.to_string()),
                    show(r.s_arc_transitive),
                ));
            }
            out.push_str(&format!("{hits} connected (G,{s})-arc-transitive orbital graphs\n"));
            emit(config, &out)?;
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Construct { q, config } => construct(q, &config),
        Command::VerifyConstruction { q, config } => verify(q, &config),
        Command::Sabidussi { group, subgroup, g, config } => sabidussi(&group, &subgroup, &g, &config),
        Command::Scan { group, action, subgroup, s, config } => {
            scan(&group, action, subgroup.as_deref(), s, &config)
        }
        Command::Selftest { config } => {
            let records = selftest::run(config.seed, config.bruteforce_cap);
            let passed = all_pass(&records);
            match config.format.unwrap_or(Format::Text) {
                Format::Json => {
                    let doc = json!({ "seed": config.seed, "records": records, "passed": passed });
                    emit(&config, &pretty(&doc))?;
                }
                _ => {
                    let mut s = format!("selftest (seed {})\n", config.seed);
                    s.push_str(&records_text(&records));
                    emit(&config, &s)?;
                }
            }
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
