//! Reversibility analysis of the builtin systems: connectedness per
//! rule, clash witnesses, and the arity facts.
//!
//! ```bash
//! cargo run --example check_reversibility
//! ```

use incal::analysis::{
    arity_characterization, completeness_check, reversibility_report,
};
use incal::systems;

fn main() {
    for name in systems::BUILTIN_NAMES {
        let sys = systems::builtin(name).unwrap();
        let report = reversibility_report(&sys);
        println!("== {name}: {}", report.verdict);
        for r in &report.rules {
            println!(
                "   {} (arity {}): {}{}",
                r.rule,
                r.arity,
                if r.connected { "connected" } else { "disconnected" },
                if r.self_clash.is_some() { ", self-clash" } else { "" },
            );
        }
        for (i, j, w) in report.all_clashes() {
            println!("   clash {i}/{j}: {}   vs   {}", w.pair1, w.pair2);
        }
        let completeness = completeness_check(&sys);
        println!(
            "   complete: {}, trivial: {}, distinct arities: {}",
            completeness.complete, completeness.trivial, completeness.distinct_arities
        );
        // the arity characterization always agrees with the verdict
        assert_eq!(
            arity_characterization(&sys),
            report.verdict == incal::analysis::Verdict::Reversible
        );
        println!();
    }
}
