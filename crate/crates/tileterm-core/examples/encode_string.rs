//! Prints the PBPO⁺ encoding of the string rewrite rules `ab -> ac` and
//! `cd -> db` as a system file. The shipped `plump_string.pbpop` fixture is
//! the output of this program.
//!
//! ```sh
//! cargo run -p tileterm-core --example encode_string > corpus-extended/systems/plump_string.pbpop
//! ```

use tileterm_core::corpus::{infer_morphism, parse_graph, serialize_system};
use tileterm_core::graph::LabelSet;
use tileterm_core::pbpo::{encode_dpo_rule, DpoRule};

fn dpo(name: &str, l: &str, k: &str, r: &str) -> DpoRule {
    let (l, k, r) = (parse_graph(l).unwrap(), parse_graph(k).unwrap(), parse_graph(r).unwrap());
    DpoRule {
        name: name.into(),
        l: infer_morphism(name, "l", &k, &l).unwrap(),
        r: infer_morphism(name, "r", &k, &r).unwrap(),
    }
}

fn main() {
    let labels = LabelSet::new(["0"], ["a", "b", "c", "d"]);
    let rules = [
        dpo("rho", "x:0 -A:a-> y:0 -B:b-> z:0", "x:0 z:0", "x:0 -A:a-> y:0 -C:c-> z:0"),
        dpo("tau", "x:0 -C:c-> y:0 -D:d-> z:0", "x:0 z:0", "x:0 -D:d-> y:0 -B:b-> z:0"),
    ]
    .map(|d| encode_dpo_rule(&d, &labels).unwrap());
    println!("/* The string rewrite rules ab -> ac and cd -> db as graph rules, encoded");
    println!("   from their DPO spans. Node y may have no edges besides those in L. */");
    println!();
    print!("{}", serialize_system(&rules));
}
