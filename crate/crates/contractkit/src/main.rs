use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use contractkit::doc::{
    load_contract, load_system, save_system, BasisDocument, SystemDocument,
};
use contractkit::simulation::SimulationVerdict;
use contractkit::subspace::Subspace;
use contractkit::trajectory::{
    default_disturbance, run_vehicle_experiment, VehicleParams,
};
use contractkit::{compose, implements, is_compatible_environment, refines, saturate, simulates};

/// Exact verification of driving-variable systems and assume/guarantee
/// contracts, plus a small trajectory simulator.
#[derive(Parser)]
#[command(name = "contractkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ReportOpts {
    /// Print the witness relation's basis.
    #[arg(long)]
    witness: bool,
    /// Emit a machine-readable JSON report instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the consistent subspace of a system.
    Consistent {
        system: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compose two systems by sharing their external variable.
    Compose {
        left: PathBuf,
        right: PathBuf,
        /// Output path for the composed system document (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether the first system is simulated by the second.
    Simulates {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Decide whether a system implements a contract.
    Implements {
        system: PathBuf,
        contract: PathBuf,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Decide whether the first contract refines the second.
    Refines {
        refined: PathBuf,
        base: PathBuf,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Decide whether an environment is compatible with a contract.
    Compatible {
        environment: PathBuf,
        contract: PathBuf,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Replace a contract's guarantees by their composition with the
    /// assumptions (implementations are unchanged).
    Saturate {
        contract: PathBuf,
        /// Output path for the saturated contract (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the two-vehicle spacing experiment and write CSV.
    Simulate {
        /// Headway, gain, drag as `h,k,c`.
        #[arg(long, default_value = "1,0.25,0.5")]
        params: String,
        /// Initial state `s1,v1,s2,v2`.
        #[arg(long, default_value = "1,2,0,1")]
        x0: String,
        #[arg(long, default_value_t = 0.001)]
        dt: f64,
        #[arg(long = "t-end", default_value_t = 15.0)]
        t_end: f64,
        /// Output CSV path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Consistent { system, json } => {
            let sys = load_system(&system).map_err(|e| e.to_string())?;
            let v = sys.consistent_subspace();
            if json {
                let doc = BasisDocument::from_subspace(&v);
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                println!("dim {}", v.dim());
                print_basis(&v);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compose { left, right, out } => {
            let s1 = load_system(&left).map_err(|e| e.to_string())?;
            let s2 = load_system(&right).map_err(|e| e.to_string())?;
            let composed = compose(&s1, &s2).map_err(|e| e.to_string())?;
            match out {
                Some(path) => save_system(&composed, &path).map_err(|e| e.to_string())?,
                None => {
                    let doc = SystemDocument::from_system(&composed);
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulates {
            left,
            right,
            report,
        } => {
            let s1 = load_system(&left).map_err(|e| e.to_string())?;
            let s2 = load_system(&right).map_err(|e| e.to_string())?;
            let verdict = simulates(&s1, &s2).map_err(|e| e.to_string())?;
            Ok(report_verdict(&verdict, &report))
        }
        Command::Implements {
            system,
            contract,
            report,
        } => {
            let sys = load_system(&system).map_err(|e| e.to_string())?;
            let c = load_contract(&contract).map_err(|e| e.to_string())?;
            let verdict = implements(&sys, &c).map_err(|e| e.to_string())?;
            Ok(report_verdict(&verdict, &report))
        }
        Command::Compatible {
            environment,
            contract,
            report,
        } => {
            let env = load_system(&environment).map_err(|e| e.to_string())?;
            let c = load_contract(&contract).map_err(|e| e.to_string())?;
            let verdict = is_compatible_environment(&env, &c).map_err(|e| e.to_string())?;
            Ok(report_verdict(&verdict, &report))
        }
        Command::Refines {
            refined,
            base,
            report,
        } => {
            let cprime = load_contract(&refined).map_err(|e| e.to_string())?;
            let c = load_contract(&base).map_err(|e| e.to_string())?;
            let verdict = refines(&cprime, &c).map_err(|e| e.to_string())?;
            if report.json {
                let payload = serde_json::json!({
                    "holds": verdict.holds,
                    "environments": verdict_json(&verdict.env_part, report.witness),
                    "guarantees": verdict_json(&verdict.guar_part, report.witness),
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                println!("{}", verdict_line_for(verdict.holds, overall_reason(&verdict)));
                println!(
                    "environments: {}",
                    verdict_line(&verdict.env_part)
                );
                println!("guarantees: {}", verdict_line(&verdict.guar_part));
                if report.witness {
                    if let Some(w) = &verdict.guar_part.witness {
                        println!("guarantee witness ({} columns):", w.dim());
                        print_basis(w.relation());
                    }
                }
            }
            Ok(exit_for(verdict.holds))
        }
        Command::Saturate { contract, out } => {
            let c = load_contract(&contract).map_err(|e| e.to_string())?;
            let saturated = saturate(&c);
            let doc = contractkit::doc::ContractDocument {
                assumptions: contractkit::doc::SystemRef::Inline(SystemDocument::from_system(
                    saturated.assumptions(),
                )),
                guarantees: contractkit::doc::SystemRef::Inline(SystemDocument::from_system(
                    saturated.guarantees(),
                )),
            };
            let text = serde_json::to_string_pretty(&doc).unwrap();
            match out {
                Some(path) => std::fs::write(&path, text + "\n")
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            params,
            x0,
            dt,
            t_end,
            out,
        } => {
            let p = parse_params(&params)?;
            let x0 = parse_vector(&x0)?;
            let result = run_vehicle_experiment(&p, &x0, &default_disturbance(), dt, t_end)
                .map_err(|e| e.to_string())?;
            let csv = result.to_csv();
            match out {
                Some(path) => std::fs::write(&path, csv)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{csv}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_params(text: &str) -> Result<VehicleParams, String> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("invalid --params {text:?}: {e}"))?;
    if parts.len() != 3 {
        return Err(format!(
            "--params needs three comma-separated values h,k,c, got {}",
            parts.len()
        ));
    }
    VehicleParams::new(parts[0], parts[1], parts[2]).map_err(|e| e.to_string())
}

fn parse_vector(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| format!("invalid --x0 entry {s:?}: {e}"))
        })
        .collect()
}

fn verdict_line(verdict: &SimulationVerdict) -> String {
    if verdict.holds {
        "HOLDS".to_string()
    } else {
        match &verdict.failure_reason {
            Some(reason) => format!("FAILS({reason})"),
            None => "FAILS".to_string(),
        }
    }
}

fn verdict_line_for(holds: bool, reason: Option<String>) -> String {
    if holds {
        "HOLDS".to_string()
    } else {
        match reason {
            Some(r) => format!("FAILS({r})"),
            None => "FAILS".to_string(),
        }
    }
}

fn overall_reason(verdict: &contractkit::contract::RefinementVerdict) -> Option<String> {
    if !verdict.env_part.holds {
        verdict
            .env_part
            .failure_reason
            .map(|r| format!("environments: {r}"))
    } else if !verdict.guar_part.holds {
        verdict
            .guar_part
            .failure_reason
            .map(|r| format!("guarantees: {r}"))
    } else {
        None
    }
}

fn verdict_json(verdict: &SimulationVerdict, include_witness: bool) -> serde_json::Value {
    let mut payload = serde_json::json!({
        "holds": verdict.holds,
        "reason": verdict.failure_reason.map(|r| r.to_string()),
    });
    if include_witness {
        if let Some(w) = &verdict.witness {
            payload["witness"] = serde_json::json!({
                "left_dim": w.left_dim(),
                "right_dim": w.right_dim(),
                "basis": BasisDocument::from_subspace(w.relation()),
            });
        }
    }
    payload
}

fn report_verdict(verdict: &SimulationVerdict, opts: &ReportOpts) -> ExitCode {
    if opts.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&verdict_json(verdict, opts.witness)).unwrap()
        );
    } else {
        println!("{}", verdict_line(verdict));
        if opts.witness {
            if let Some(w) = &verdict.witness {
                println!("witness ({}x{} blocks, dim {}):", w.left_dim(), w.right_dim(), w.dim());
                print_basis(w.relation());
            }
        }
    }
    exit_for(verdict.holds)
}

fn print_basis(v: &Subspace) {
    for col in v.basis().columns() {
        let rendered: Vec<String> = col.iter().map(contractkit::scalar::scalar_to_string).collect();
        println!("[{}]", rendered.join(", "));
    }
}

fn exit_for(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
