//! Upward diamond checks on single configurations and the randomized
//! counterexample search over whole systems.
//!
//! ```bash
//! cargo run --example diamond_search
//! ```

use incal::lab::{counterexample_search, diamond_check, random_config, DiamondMode};
use incal::print::print_config;
use incal::systems;

fn main() {
    // one configuration, all predecessor pairs
    let sys = systems::rev_demo();
    let c = random_config(&sys, 4, 7);
    println!("config: {}", print_config(&sys, &c));
    let report = diamond_check(&sys, &c, DiamondMode::OneStep);
    println!(
        "one-step diamond: {} predecessors, {} pairs, {} joined, {} failures\n",
        report.predecessors,
        report.pairs,
        report.joined,
        report.failures.len()
    );

    // whole-system search: reversible demos stay clean, the combinators
    // fail on clash-shaped configurations
    for name in ["rev-demo", "combinators", "linlam"] {
        let sys = systems::builtin(name).unwrap();
        let report = counterexample_search(&sys, 5, 40, 3, 0xD1CE);
        println!(
            "{name}: {} one-step pairs, {} definite failures; \
             {} plus-step pairs, {} inconclusive",
            report.one_step_pairs,
            report.one_step_failures.len(),
            report.plus_step_pairs,
            report.plus_inconclusive.len()
        );
        if let Some(f) = report.one_step_failures.first() {
            println!("  e.g. in {}", print_config(&sys, &f.config));
            println!("    {}", print_config(&sys, &f.c1));
            println!("    {}", print_config(&sys, &f.c2));
        }
    }
}
