//! Backward enumeration: every configuration that reaches a given one in
//! exactly one step, up to congruence.
//!
//! ```bash
//! cargo run --example expand_predecessors
//! ```

use incal::canon::canonical_key;
use incal::expand::{expansions, ExpansionKind, ExpansionMeta};
use incal::parse::parse_config;
use incal::print::print_config;
use incal::reduce::{indirect, interact};
use incal::systems;

fn main() {
    let sys = systems::linlam();
    // the reduct of a beta step: four wire equations
    let c = parse_config(&sys, "< y, r | y = a, r = b, x = a, x = b >").expect("parses");
    println!("target: {}", print_config(&sys, &c));

    let preds = expansions(&sys, &c);
    println!("{} predecessors:", preds.len());
    let key = canonical_key(&c);
    for e in &preds {
        let kind = match e.kind {
            ExpansionKind::Indirection => "indirection",
            ExpansionKind::Interaction => "interaction",
        };
        println!("  [{kind}] {}", print_config(&sys, &e.config));

        // each one really does reduce back in a single step
        let reduct = match &e.meta {
            ExpansionMeta::Indirection(m) => {
                indirect(&e.config, m.added_eq, Some(incal::config::Side::Left)).unwrap()
            }
            ExpansionMeta::Interaction(m) => {
                let mut gen = e.config.gen_above();
                interact(&sys, &e.config, m.pair_index, &mut gen).unwrap()
            }
        };
        assert_eq!(canonical_key(&reduct), key);
    }
    println!("all predecessors verified to reduce back to the target");
}
