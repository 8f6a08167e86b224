//! Constructive failure of the one-step upward diamond: two different
//! peaks over a shared reduct with provably disjoint predecessor sets.
//!
//! ```bash
//! cargo run --example failure_witness
//! ```

use incal::canon::canonical_key;
use incal::expand::expansions;
use incal::lab::strong_failure_witness;
use incal::print::print_config;
use incal::reduce::one_step_reducts;
use incal::systems;

fn main() {
    for name in ["combinators", "linlam", "rev-demo"] {
        let sys = systems::builtin(name).unwrap();
        println!("== {name}");
        let Some(w) = strong_failure_witness(&sys) else {
            println!("   no witness: the system is reversible\n");
            continue;
        };
        println!("   from {:?} (rules {:?})", w.kind, w.rules);
        println!("   c1 = {}", print_config(&sys, &w.c1));
        println!("   c2 = {}", print_config(&sys, &w.c2));
        println!("   c  = {}", print_config(&sys, &w.c));

        // both peaks step into c's class...
        let key = canonical_key(&w.c);
        let hits = |peak| {
            one_step_reducts(&sys, peak)
                .iter()
                .any(|(s, _)| canonical_key(&s.result) == key)
        };
        println!("   c1 -> c: {}, c2 -> c: {}", hits(&w.c1), hits(&w.c2));

        // ...yet nothing steps into both peaks
        let p1: std::collections::BTreeSet<_> =
            expansions(&sys, &w.c1).into_iter().map(|e| e.key).collect();
        let p2: std::collections::BTreeSet<_> =
            expansions(&sys, &w.c2).into_iter().map(|e| e.key).collect();
        println!(
            "   predecessor sets: {} and {}, intersection {}\n",
            p1.len(),
            p2.len(),
            p1.intersection(&p2).count()
        );
    }
}
