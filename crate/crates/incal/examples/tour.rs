//! A guided tour: parse a system, reduce a configuration, walk back up,
//! and ask the analyzer about reversibility.
//!
//! ```bash
//! cargo run --example tour
//! ```

use incal::analysis::reversibility_report;
use incal::expand::expansions;
use incal::lab::strong_failure_witness;
use incal::parse::parse_system;
use incal::print::print_config;
use incal::reduce::{normalize, Strategy};

fn main() {
    // The linear lambda calculus: application meets abstraction.
    let src = "\
        agents { app/2, lam/2 }\n\
        rule app[x, y] >< lam[x, y];\n\
        config beta = < result | app(f, result) = lam(a, a), f = lam(b, b) >;\n";
    let file = parse_system(src).expect("parses");
    let sys = &file.system;
    let beta = file.config("beta").unwrap().clone();

    println!("system:");
    for rule in &sys.rules {
        println!("  {rule}");
    }
    println!("start: {beta}");

    // Forward: normalize, watching every step.
    let mut gen = beta.gen_above();
    let trace = normalize(sys, &beta, Strategy::Leftmost, 1000, &mut gen);
    for step in &trace.steps {
        println!("  {} => {}", step.kind, step.result);
    }
    println!(
        "normal form ({} steps): {}",
        trace.steps.len(),
        print_config(sys, trace.final_config())
    );

    // Backward: every one-step predecessor of the normal form.
    let preds = expansions(sys, trace.final_config());
    println!("\none-step predecessors of the normal form: {}", preds.len());
    for e in preds.iter().take(5) {
        println!("  {}", print_config(sys, &e.config));
    }

    // Analysis: is the system reversible?
    let report = reversibility_report(sys);
    println!("\nverdict: {}", report.verdict);
    if let Some(w) = strong_failure_witness(sys) {
        println!("witness peaks:");
        println!("  c1 = {}", print_config(sys, &w.c1));
        println!("  c2 = {}", print_config(sys, &w.c2));
        println!("  c  = {}", print_config(sys, &w.c));
    }
}
