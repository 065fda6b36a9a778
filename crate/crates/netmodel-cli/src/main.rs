//! Command line front end for the model verifier.
//!
//! Exit status: 0 when the requested operation succeeds (for `verify`, when
//! the model is clean), 1 when `verify` finds violations, 2 on load, schema,
//! or usage errors.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use netmodel::inject;
use netmodel::model::ModelGraph;
use netmodel::render::{render_show, RenderError};
use netmodel::report::{verify, CheckConfig};

#[derive(Parser)]
#[command(
    name = "netmodel",
    version,
    about = "Verify switch network models and render device status output"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the layered checks (single-node, multi-node, OSPF) on a model
    Verify {
        /// Model file (JSON)
        model: PathBuf,
        /// Emit the report as JSON instead of text
        #[arg(long)]
        json: bool,
        /// Run the later layers even when single-node errors exist
        #[arg(long)]
        all_layers: bool,
        /// Suppress a rule id, e.g. --disable OSPF.12 (repeatable)
        #[arg(long = "disable", value_name = "RULE")]
        disabled: Vec<String>,
    },
    /// Render a device status command against the model
    Show {
        /// Model file (JSON)
        model: PathBuf,
        /// Command words, e.g. `ip ospf neighbor campus1`
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Apply catalog mutations to a model
    Inject {
        /// Model file (JSON); not needed with --list
        model: Option<PathBuf>,
        /// Print the mutation catalog and exit
        #[arg(long)]
        list: bool,
        /// Apply one mutation by id
        #[arg(long, conflicts_with_all = ["name", "all"])]
        id: Option<usize>,
        /// Apply one mutation by name
        #[arg(long, conflicts_with = "all")]
        name: Option<String>,
        /// Apply every mutation, write the corpus, and report detection
        #[arg(long)]
        all: bool,
        /// Output file (single mutation) or directory (--all)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the cabling (Link endpoints) as JSON
    Topology {
        /// Model file (JSON)
        model: PathBuf,
    },
}

fn main() -> ExitCode {
    // die quietly when piped into head and friends instead of panicking
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    ExitCode::from(run(Cli::parse()))
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Verify {
            model,
            json,
            all_layers,
            disabled,
        } => cmd_verify(&model, json, all_layers, disabled),
        Command::Show { model, words } => cmd_show(&model, &words),
        Command::Inject {
            model,
            list,
            id,
            name,
            all,
            out,
        } => cmd_inject(model.as_deref(), list, id, name.as_deref(), all, out.as_deref()),
        Command::Topology { model } => cmd_topology(&model),
    }
}

fn load(path: &Path) -> Result<ModelGraph, u8> {
    ModelGraph::load(path).map_err(|e| {
        eprintln!("error: {e}");
        2
    })
}

fn cmd_verify(model: &Path, json: bool, all_layers: bool, disabled: Vec<String>) -> u8 {
    let graph = match load(model) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let config = CheckConfig {
        disabled: disabled.into_iter().collect::<BTreeSet<_>>(),
        force_all_layers: all_layers,
    };
    let report = verify(&graph, &config);
    if json {
        let shown = model.display().to_string();
        let doc = report.document(&shown);
        println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
    } else {
        print!("{}", report.to_text(&graph));
    }
    report.exit_code() as u8
}

fn cmd_show(model: &Path, words: &[String]) -> u8 {
    let graph = match load(model) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let args: Vec<&str> = words.iter().map(String::as_str).collect();
    match render_show(&graph, &args) {
        Ok(text) => {
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            if matches!(err, RenderError::UnknownCommand(_)) {
                eprintln!("supported commands:");
                for form in [
                    "show vlan brief <config>",
                    "show vlan brief all",
                    "show vlan <vlan-id>",
                    "show running config <config>",
                    "show spanning-tree <config>",
                    "show ip protocols <config>",
                    "show ip ospf neighbor <config>",
                    "show ip ospf interface <config> <ethernet-interface>",
                    "show ip ospf interface <config> <vlan-interface>",
                ] {
                    eprintln!("  {form}");
                }
            }
            2
        }
    }
}

fn cmd_inject(
    model: Option<&Path>,
    list: bool,
    id: Option<usize>,
    name: Option<&str>,
    all: bool,
    out: Option<&Path>,
) -> u8 {
    if list {
        for m in inject::catalog() {
            println!(
                "{:>2}  {:<28} {:<10} {}",
                m.id,
                m.name,
                m.expect.join(","),
                m.description
            );
        }
        return 0;
    }
    let Some(model) = model else {
        eprintln!("error: a model file is required unless --list is given");
        return 2;
    };
    let graph = match load(model) {
        Ok(g) => g,
        Err(code) => return code,
    };

    if all {
        let Some(dir) = out else {
            eprintln!("error: --all needs --out <directory>");
            return 2;
        };
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("error: cannot create {}: {e}", dir.display());
            return 2;
        }
        for m in inject::catalog() {
            let mutated = match inject::inject(&graph, m) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("error: mutation {}: {e}", m.id);
                    return 2;
                }
            };
            let path = dir.join(format!("{:02}-{}.json", m.id, m.name));
            if let Err(e) = mutated.save(&path) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
            eprintln!("wrote {}", path.display());
        }
        return match inject::run_experiment(&graph, &CheckConfig::default()) {
            Ok(report) => {
                print!("{}", report.to_text());
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        };
    }

    let mutation = match (id, name) {
        (Some(id), _) => match inject::find(id) {
            Ok(m) => m,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
        (None, Some(name)) => match inject::find_by_name(name) {
            Some(m) => m,
            None => {
                eprintln!("error: no mutation named {name:?} (see --list)");
                return 2;
            }
        },
        (None, None) => {
            eprintln!("error: pick a mutation with --id or --name, or use --all / --list");
            return 2;
        }
    };
    let mutated = match inject::inject(&graph, mutation) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = mutated.save(path) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
            eprintln!("wrote {}", path.display());
        }
        None => println!("{}", mutated.to_json_string()),
    }
    0
}

fn cmd_topology(model: &Path) -> u8 {
    let graph = match load(model) {
        Ok(g) => g,
        Err(code) => return code,
    };
    match graph.export_topology() {
        Ok(doc) => {
            println!("{}", doc.to_json_string());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
