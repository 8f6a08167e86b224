//! Forward reduction under the three strategies, with full traces.
//!
//! ```bash
//! cargo run --example reduce_with_trace
//! ```

use incal::parse::parse_config;
use incal::print::print_config;
use incal::reduce::{normalize, Strategy};
use incal::systems;

fn main() {
    let sys = systems::combinators();
    // duplicate an erasable tree, then erase everything
    let c = parse_config(
        &sys,
        "< out1, out2 | gamma(out1, out2) = delta(t, u), \
         t = gamma(eps(), eps()), u = w, w = eps() >",
    )
    .expect("parses");

    for strategy in [
        Strategy::Leftmost,
        Strategy::InteractionFirst,
        Strategy::IndirectionFirst,
    ] {
        let mut gen = c.gen_above();
        let trace = normalize(&sys, &c, strategy, 1000, &mut gen);
        println!("{strategy:?}: {} steps, status {}", trace.steps.len(), trace.status);
        for step in &trace.steps {
            println!("  {:<28} {}", step.kind.to_string(), step.result);
        }
        println!("  final: {}\n", print_config(&sys, trace.final_config()));
    }
}
