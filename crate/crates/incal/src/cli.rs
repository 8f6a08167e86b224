//! Command-line front end: check, reduce, expand, diamond, witness, and
//! search over `.ins` files or builtin systems.
//!
//! Exit codes: 0 success/positive verdict, 1 usage or parse error,
//! 2 invalid system or configuration, 3 negative verdict (irreversible,
//! witness found, diamond failure), 4 bound exhausted (inconclusive).

use std::io::Write;

use crate::analysis::reversibility_report;
use crate::config::Configuration;
use crate::expand::{expansions, indirection_expansions, interaction_expansions, Expansion};
use crate::lab::{counterexample_search, diamond_check, strong_failure_witness, DiamondMode};
use crate::parse::{parse_config, parse_system, SourceFile};
use crate::reduce::{normalize, Status, Strategy};
use crate::report;
use crate::system::{validate_config, validate_system, System};
use crate::systems;

const USAGE: &str = "\
usage: incal <command> [options]

commands:
  check   SYSTEM [--json]
          reversibility report
  reduce  SYSTEM -c CONFIG [--strategy leftmost|interaction-first|indirection-first]
          [--fuel N] [--trace] [--json]
          normalize a configuration
  expand  SYSTEM -c CONFIG [--kind all|interaction|indirection] [--json]
          one-step predecessors, up to congruence
  diamond SYSTEM -c CONFIG [--mode one|plus] [--depth K] [--json]
          upward diamond over all predecessor pairs
  witness SYSTEM [--json]
          strong-upward-confluence failure triple, or none
  search  SYSTEM [--samples M] [--size N] [--depth K] [--seed S] [--json]
          randomized counterexample search

SYSTEM is a builtin name (combinators, linlam, trivial-eps, rev-demo,
rev-commutation) or a path to a .ins file. CONFIG is the name of a config
declared in the file, or an inline configuration like '< a | a = b >'.
";

struct Options {
    system: Option<String>,
    config: Option<String>,
    json: bool,
    trace: bool,
    strategy: Strategy,
    fuel: usize,
    kind: String,
    mode: String,
    depth: Option<usize>,
    samples: usize,
    size: usize,
    seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            system: None,
            config: None,
            json: false,
            trace: false,
            strategy: Strategy::Leftmost,
            fuel: 10_000,
            kind: "all".to_string(),
            mode: "one".to_string(),
            depth: None,
            samples: 100,
            size: 6,
            seed: 0,
        }
    }
}

fn parse_options(args: &[String], err: &mut dyn Write) -> Result<Options, i32> {
    let mut opts = Options::default();
    let mut it = args.iter().peekable();
    let need_value = |it: &mut std::iter::Peekable<std::slice::Iter<String>>,
                      flag: &str,
                      err: &mut dyn Write|
     -> Result<String, i32> {
        match it.next() {
            Some(v) => Ok(v.clone()),
            None => {
                let _ = writeln!(err, "error: {flag} needs a value");
                Err(1)
            }
        }
    };
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => opts.json = true,
            "--trace" => opts.trace = true,
            "-c" | "--config" => opts.config = Some(need_value(&mut it, arg, err)?),
            "--strategy" => {
                let v = need_value(&mut it, arg, err)?;
                opts.strategy = match v.as_str() {
                    "leftmost" => Strategy::Leftmost,
                    "interaction-first" => Strategy::InteractionFirst,
                    "indirection-first" => Strategy::IndirectionFirst,
                    _ => {
                        let _ = writeln!(err, "error: unknown strategy '{v}'");
                        return Err(1);
                    }
                };
            }
            "--fuel" => {
                opts.fuel = parse_num(&need_value(&mut it, arg, err)?, arg, err)?;
            }
            "--kind" => {
                let v = need_value(&mut it, arg, err)?;
                if !matches!(v.as_str(), "all" | "interaction" | "indirection") {
                    let _ = writeln!(err, "error: unknown kind '{v}'");
                    return Err(1);
                }
                opts.kind = v;
            }
            "--mode" => {
                let v = need_value(&mut it, arg, err)?;
                if !matches!(v.as_str(), "one" | "plus") {
                    let _ = writeln!(err, "error: unknown mode '{v}'");
                    return Err(1);
                }
                opts.mode = v;
            }
            "--depth" => {
                opts.depth = Some(parse_num(&need_value(&mut it, arg, err)?, arg, err)?);
            }
            "--samples" => {
                opts.samples = parse_num(&need_value(&mut it, arg, err)?, arg, err)?;
            }
            "--size" => {
                opts.size = parse_num(&need_value(&mut it, arg, err)?, arg, err)?;
            }
            "--seed" => {
                opts.seed = parse_num(&need_value(&mut it, arg, err)?, arg, err)? as u64;
            }
            other if other.starts_with('-') && other.len() > 1 => {
                let _ = writeln!(err, "error: unknown option '{other}'");
                return Err(1);
            }
            _ => {
                if opts.system.is_some() {
                    let _ = writeln!(err, "error: more than one system argument");
                    return Err(1);
                }
                opts.system = Some(arg.clone());
            }
        }
    }
    Ok(opts)
}

fn parse_num(v: &str, flag: &str, err: &mut dyn Write) -> Result<usize, i32> {
    v.parse().map_err(|_| {
        let _ = writeln!(err, "error: {flag} needs a number, got '{v}'");
        1
    })
}

/// Loads a builtin system or parses and validates a file. Warnings go to
/// the error stream; validation errors abort with exit code 2.
fn load_system(name: &str, err: &mut dyn Write) -> Result<SourceFile, i32> {
    let file = if let Some(sys) = systems::builtin(name) {
        SourceFile {
            system: sys,
            configs: Vec::new(),
        }
    } else {
        let text = std::fs::read_to_string(name).map_err(|e| {
            let _ = writeln!(err, "error: cannot read '{name}': {e}");
            1
        })?;
        parse_system(&text).map_err(|e| {
            let _ = writeln!(err, "{name}:{e}");
            1
        })?
    };
    let report = validate_system(&file.system);
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if !report.ok() {
        for e in &report.errors {
            let _ = writeln!(err, "error: {e}");
        }
        return Err(2);
    }
    Ok(file)
}

/// Resolves `-c`: an inline `< ... >` text or the name of a declared
/// configuration.
fn load_config(
    file: &SourceFile,
    opts: &Options,
    err: &mut dyn Write,
) -> Result<Configuration, i32> {
    let Some(spec) = &opts.config else {
        let _ = writeln!(err, "error: this command needs -c CONFIG");
        return Err(1);
    };
    let config = if spec.trim_start().starts_with('<') {
        parse_config(&file.system, spec).map_err(|e| {
            let _ = writeln!(err, "inline config:{e}");
            1
        })?
    } else {
        file.config(spec)
            .cloned()
            .ok_or_else(|| {
                let _ = writeln!(err, "error: no configuration named '{spec}'");
                1
            })?
    };
    let report = validate_config(&file.system, &config);
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if !report.ok() {
        for e in &report.errors {
            let _ = writeln!(err, "error: {e}");
        }
        return Err(2);
    }
    Ok(config)
}

fn emit(out: &mut dyn Write, json: bool, value: serde_json::Value, human: String) {
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        let _ = write!(out, "{human}");
    }
}

/// Runs one invocation. Results go to `out`, diagnostics to `err`; the
/// return value is the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(command) = args.first() else {
        let _ = write!(err, "{USAGE}");
        return 1;
    };
    let opts = match parse_options(&args[1..], err) {
        Ok(o) => o,
        Err(code) => return code,
    };
    let Some(system_name) = opts.system.clone() else {
        let _ = writeln!(err, "error: missing SYSTEM argument");
        let _ = write!(err, "{USAGE}");
        return 1;
    };
    let file = match load_system(&system_name, err) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let sys: &System = &file.system;

    match command.as_str() {
        "check" => {
            let report = reversibility_report(sys);
            emit(
                out,
                opts.json,
                report::check_json(&report),
                report::check_human(&report),
            );
            report::verdict_exit_code(report.verdict)
        }
        "reduce" => {
            let config = match load_config(&file, &opts, err) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let mut gen = config.gen_above();
            let trace = normalize(sys, &config, opts.strategy, opts.fuel, &mut gen);
            emit(
                out,
                opts.json,
                report::reduce_json(sys, &trace, opts.trace),
                report::reduce_human(sys, &trace, opts.trace),
            );
            match trace.status {
                Status::FuelExhausted => 4,
                Status::Normal | Status::Stuck => 0,
            }
        }
        "expand" => {
            let config = match load_config(&file, &opts, err) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let exps: Vec<Expansion> = match opts.kind.as_str() {
                "interaction" => interaction_expansions(sys, &config),
                "indirection" => indirection_expansions(&config),
                _ => expansions(sys, &config),
            };
            emit(
                out,
                opts.json,
                report::expand_json(sys, &exps),
                report::expand_human(sys, &exps),
            );
            0
        }
        "diamond" => {
            let config = match load_config(&file, &opts, err) {
                Ok(c) => c,
                Err(code) => return code,
            };
            let mode = if opts.mode == "plus" {
                DiamondMode::PlusStep { depth: opts.depth }
            } else {
                DiamondMode::OneStep
            };
            let report = diamond_check(sys, &config, mode);
            emit(
                out,
                opts.json,
                report::diamond_json(sys, &report),
                report::diamond_human(sys, &report),
            );
            report::diamond_exit_code(report.verdict())
        }
        "witness" => {
            let witness = strong_failure_witness(sys);
            emit(
                out,
                opts.json,
                report::witness_json(sys, witness.as_ref()),
                report::witness_human(sys, witness.as_ref()),
            );
            if witness.is_some() {
                3
            } else {
                0
            }
        }
        "search" => {
            let depth = opts.depth.unwrap_or(4);
            let report = counterexample_search(sys, opts.size, opts.samples, depth, opts.seed);
            emit(
                out,
                opts.json,
                report::search_json(sys, &report),
                report::search_human(sys, &report),
            );
            report::diamond_exit_code(report.verdict())
        }
        other => {
            let _ = writeln!(err, "error: unknown command '{other}'");
            let _ = write!(err, "{USAGE}");
            1
        }
    }
}
