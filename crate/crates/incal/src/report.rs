//! Report rendering: a stable machine-readable JSON document per
//! command, plus plain-text rendering for humans. The JSON key names are
//! part of the tool's interface and documented in the README.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::analysis::{ClashWitness, ReversibilityReport, Verdict};
use crate::config::Configuration;
use crate::expand::{Expansion, ExpansionKind};
use crate::lab::{DiamondReport, DiamondVerdict, FailureWitness, SearchReport, WitnessKind};
use crate::print::print_config;
use crate::reduce::{StepKind, Trace};
use crate::system::System;

fn cfg(sys: &System, c: &Configuration) -> String {
    print_config(sys, c)
}

fn witness_value(w: &ClashWitness) -> Value {
    json!({
        "pair1": w.pair1.to_string(),
        "pair2": w.pair2.to_string(),
        "contractum": w.contractum.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    })
}

pub fn check_json(report: &ReversibilityReport) -> Value {
    let arity_table: serde_json::Map<String, Value> = report
        .arity_table
        .iter()
        .map(|(sym, ar)| (sym.to_string(), json!(ar)))
        .collect();
    let rules: Vec<Value> = report
        .rules
        .iter()
        .map(|r| {
            json!({
                "left": r.left.to_string(),
                "right": r.right.to_string(),
                "rule": r.rule,
                "arity": r.arity,
                "connected": r.connected,
                "reversible": r.connected && r.self_clash.is_none(),
                "self_clash": r.self_clash.as_ref().map(witness_value),
            })
        })
        .collect();
    let clashes: Vec<Value> = report
        .all_clashes()
        .into_iter()
        .map(|(i, j, w)| {
            let mut v = witness_value(w);
            v["rule1"] = json!(i);
            v["rule2"] = json!(j);
            v
        })
        .collect();
    json!({
        "verdict": report.verdict.to_string(),
        "arity_table": arity_table,
        "rules": rules,
        "clashes": clashes,
    })
}

pub fn check_human(report: &ReversibilityReport) -> String {
    let mut out = String::new();
    let agents: Vec<String> = report
        .arity_table
        .iter()
        .map(|(s, a)| format!("{s}/{a}"))
        .collect();
    let _ = writeln!(out, "agents: {}", agents.join(", "));
    for r in &report.rules {
        let mut flags = vec![if r.connected {
            "connected"
        } else {
            "disconnected"
        }
        .to_string()];
        if r.self_clash.is_some() {
            flags.push("self-clash".to_string());
        }
        let _ = writeln!(out, "rule {}: arity {}, {}", r.rule, r.arity, flags.join(", "));
    }
    for (i, j, w) in report.all_clashes() {
        let _ = writeln!(out, "clash (rules {i}, {j}): {} vs {}", w.pair1, w.pair2);
        let eqs: Vec<String> = w.contractum.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "  shared contractum: {{ {} }}", eqs.join(", "));
    }
    let _ = writeln!(out, "verdict: {}", report.verdict);
    out
}

pub fn reduce_json(sys: &System, trace: &Trace, include_trace: bool) -> Value {
    let mut v = json!({
        "status": trace.status.to_string(),
        "steps": trace.steps.len(),
        "final": cfg(sys, trace.final_config()),
    });
    if include_trace {
        let steps: Vec<Value> = trace
            .steps
            .iter()
            .map(|s| {
                let mut sv = json!({
                    "position": s.position,
                    "equation": s.equation.to_string(),
                    "result": s.result.to_string(),
                });
                match &s.kind {
                    StepKind::Interaction { rule } => {
                        sv["kind"] = json!("interaction");
                        sv["rule"] = json!(format!("{} >< {}", rule.0, rule.1));
                    }
                    StepKind::Indirection { name } => {
                        sv["kind"] = json!("indirection");
                        sv["name"] = json!(name.to_string());
                    }
                }
                sv
            })
            .collect();
        v["trace"] = json!(steps);
    }
    v
}

pub fn reduce_human(sys: &System, trace: &Trace, include_trace: bool) -> String {
    let mut out = String::new();
    if include_trace {
        let _ = writeln!(out, "initial: {}", trace.initial);
        for s in &trace.steps {
            let _ = writeln!(out, "  {} at {}: {}", s.kind, s.position, s.result);
        }
    }
    let _ = writeln!(out, "status: {} after {} steps", trace.status, trace.steps.len());
    let _ = writeln!(out, "final: {}", cfg(sys, trace.final_config()));
    out
}

pub fn expand_json(sys: &System, exps: &[Expansion]) -> Value {
    let list: Vec<Value> = exps
        .iter()
        .map(|e| {
            json!({
                "kind": match e.kind {
                    ExpansionKind::Indirection => "indirection",
                    ExpansionKind::Interaction => "interaction",
                },
                "config": cfg(sys, &e.config),
            })
        })
        .collect();
    json!({ "count": exps.len(), "expansions": list })
}

pub fn expand_human(sys: &System, exps: &[Expansion]) -> String {
    let mut out = String::new();
    for e in exps {
        let kind = match e.kind {
            ExpansionKind::Indirection => "indirection",
            ExpansionKind::Interaction => "interaction",
        };
        let _ = writeln!(out, "[{kind}] {}", cfg(sys, &e.config));
    }
    let _ = writeln!(out, "{} predecessor(s)", exps.len());
    out
}

fn diamond_verdict_str(v: DiamondVerdict) -> &'static str {
    match v {
        DiamondVerdict::AllJoined => "joinable",
        DiamondVerdict::FailureFound => "failure",
        DiamondVerdict::Inconclusive => "inconclusive",
    }
}

pub fn diamond_json(sys: &System, report: &DiamondReport) -> Value {
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            json!({
                "c1": cfg(sys, &f.c1),
                "c2": cfg(sys, &f.c2),
                "inconclusive": f.inconclusive,
            })
        })
        .collect();
    json!({
        "mode": match report.mode {
            crate::lab::DiamondMode::OneStep => "one",
            crate::lab::DiamondMode::PlusStep { .. } => "plus",
        },
        "predecessors": report.predecessors,
        "pairs": report.pairs,
        "joined": report.joined,
        "failures": failures,
        "verdict": diamond_verdict_str(report.verdict()),
    })
}

pub fn diamond_human(sys: &System, report: &DiamondReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "predecessors: {}, pairs: {}, joined: {}",
        report.predecessors, report.pairs, report.joined
    );
    for f in &report.failures {
        let tag = if f.inconclusive {
            "no join within bound"
        } else {
            "no join"
        };
        let _ = writeln!(out, "{tag}:\n  {}\n  {}", cfg(sys, &f.c1), cfg(sys, &f.c2));
    }
    let _ = writeln!(out, "verdict: {}", diamond_verdict_str(report.verdict()));
    out
}

pub fn witness_json(sys: &System, w: Option<&FailureWitness>) -> Value {
    match w {
        None => json!({ "found": false }),
        Some(w) => json!({
            "found": true,
            "kind": match w.kind {
                WitnessKind::Clash => "clash",
                WitnessKind::DisconnectedRule => "disconnected-rule",
            },
            "rules": w.rules,
            "c1": cfg(sys, &w.c1),
            "c2": cfg(sys, &w.c2),
            "c": cfg(sys, &w.c),
            "predecessors_disjoint": w.predecessors_disjoint,
        }),
    }
}

pub fn witness_human(sys: &System, w: Option<&FailureWitness>) -> String {
    match w {
        None => "none (system is reversible)\n".to_string(),
        Some(w) => {
            let kind = match w.kind {
                WitnessKind::Clash => "clash",
                WitnessKind::DisconnectedRule => "disconnected rule",
            };
            format!(
                "failure witness from {} (rules {:?}):\n  c1 = {}\n  c2 = {}\n  c  = {}\n\
                 one-step predecessor sets disjoint: {}\n",
                kind,
                w.rules,
                cfg(sys, &w.c1),
                cfg(sys, &w.c2),
                cfg(sys, &w.c),
                w.predecessors_disjoint
            )
        }
    }
}

pub fn search_json(sys: &System, report: &SearchReport) -> Value {
    let fails = |list: &[crate::lab::SearchFailure]| -> Vec<Value> {
        list.iter()
            .map(|f| {
                json!({
                    "config": cfg(sys, &f.config),
                    "c1": cfg(sys, &f.c1),
                    "c2": cfg(sys, &f.c2),
                })
            })
            .collect()
    };
    json!({
        "samples": report.samples,
        "size": report.size,
        "depth": report.depth,
        "seed": report.seed,
        "one_step": {
            "pairs": report.one_step_pairs,
            "failures": fails(&report.one_step_failures),
        },
        "plus_step": {
            "pairs": report.plus_step_pairs,
            "inconclusive": fails(&report.plus_inconclusive),
        },
        "verdict": diamond_verdict_str(report.verdict()),
    })
}

pub fn search_human(sys: &System, report: &SearchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "samples: {}, size: {}, depth: {}, seed: {}",
        report.samples, report.size, report.depth, report.seed
    );
    let _ = writeln!(
        out,
        "one-step pairs: {}, failures: {}",
        report.one_step_pairs,
        report.one_step_failures.len()
    );
    for f in report.one_step_failures.iter().take(5) {
        let _ = writeln!(
            out,
            "  in {}:\n    {}\n    {}",
            cfg(sys, &f.config),
            cfg(sys, &f.c1),
            cfg(sys, &f.c2)
        );
    }
    let _ = writeln!(
        out,
        "plus-step pairs: {}, inconclusive: {}",
        report.plus_step_pairs,
        report.plus_inconclusive.len()
    );
    let _ = writeln!(out, "verdict: {}", diamond_verdict_str(report.verdict()));
    out
}

pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Reversible => 0,
        Verdict::Irreversible => 3,
    }
}

pub fn diamond_exit_code(v: DiamondVerdict) -> i32 {
    match v {
        DiamondVerdict::AllJoined => 0,
        DiamondVerdict::FailureFound => 3,
        DiamondVerdict::Inconclusive => 4,
    }
}
