//! Defining an interaction system from text, validating it, and printing
//! it back.
//!
//! ```bash
//! cargo run --example define_a_system
//! ```

use incal::parse::parse_system;
use incal::print::print_source;
use incal::system::{validate_config, validate_system};

fn main() {
    let src = "\
        # a tiny stream protocol: producers meet consumers\n\
        agents { send/2, recv/2, done/0 }\n\
        rule send[x, y] >< recv[x, y];\n\
        rule done[] >< done[];\n\
        config handshake = < out | send(a, out) = recv(a, b), b = c >;\n\
        config cyclic = < | w = send(w, k), k = done() >;\n";
    let file = parse_system(src).expect("parses");

    let report = validate_system(&file.system);
    println!("system ok: {}", report.ok());
    for w in &report.warnings {
        println!("  warning: {w}");
    }

    for (name, config) in &file.configs {
        let r = validate_config(&file.system, config);
        println!("config {name}: ok = {}", r.ok());
        for w in &r.warnings {
            println!("  warning: {w}");
        }
    }

    // print_source emits text that reparses to the same file
    println!("\nprinted back:\n{}", print_source(&file));
}
