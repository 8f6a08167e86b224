//! The linear lambda calculus is not strongly upward confluent, yet
//! every interaction peak joins after one interaction plus indirections.
//! This runs the constructive chain-overlap and full-overlap joins.
//!
//! ```bash
//! cargo run --example linlam_joins
//! ```

use incal::lab::{linlam_join, verify_trace, JoinResult};
use incal::parse::parse_config;
use incal::print::print_config;
use incal::systems;

fn main() {
    let sys = systems::linlam();

    // chain overlap: three wire chains, the middle one shared
    let c = parse_config(
        &sys,
        "< t1, t2, t3, u1, u2, u3 | t1 = x, x = u1, t2 = y, y = u2, t3 = z, z = u3 >",
    )
    .unwrap();
    let c1 = parse_config(
        &sys,
        "< t1, t2, t3, u1, u2, u3 | app(t1, t2) = lam(u1, u2), t3 = z, z = u3 >",
    )
    .unwrap();
    let c2 = parse_config(
        &sys,
        "< t1, t2, t3, u1, u2, u3 | app(t2, t3) = lam(u2, u3), t1 = z, z = u1 >",
    )
    .unwrap();
    show("chain overlap", &sys, &c, &c1, &c2);

    // full overlap: both peaks consume the same two chains
    let c = parse_config(&sys, "< t1, t2, u1, u2 | t1 = x, x = u1, t2 = y, y = u2 >").unwrap();
    let c1 = parse_config(&sys, "< t1, t2, u1, u2 | app(t1, t2) = lam(u1, u2) >").unwrap();
    let c2 = parse_config(&sys, "< t1, t2, u1, u2 | app(u1, u2) = lam(t1, t2) >").unwrap();
    show("full overlap", &sys, &c, &c1, &c2);
}

fn show(
    label: &str,
    sys: &incal::System,
    c: &incal::Configuration,
    c1: &incal::Configuration,
    c2: &incal::Configuration,
) {
    println!("== {label}");
    println!("   c  = {}", print_config(sys, c));
    println!("   c1 = {}", print_config(sys, c1));
    println!("   c2 = {}", print_config(sys, c2));
    match linlam_join(c1, c2, c) {
        Ok(JoinResult::Joined(join)) => {
            println!("   c' = {}", print_config(sys, &join.predecessor));
            println!(
                "   c' reaches c1 in {} steps and c2 in {} steps",
                join.to_first.steps.len(),
                join.to_second.steps.len()
            );
            assert!(verify_trace(sys, &join.to_first));
            assert!(verify_trace(sys, &join.to_second));
            println!("   traces re-verified by the engine\n");
        }
        other => println!("   no join: {other:?}\n"),
    }
}
