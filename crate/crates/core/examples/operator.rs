//! Prints the Picard-Fuchs operator of a built-in family.
//!
//! cargo run --release --example operator -- edge-octahedron [--no-symmetry] [--j1]

use std::time::Instant;

use k3pf::gd::{picard_fuchs, PicardFuchsOptions};
use k3pf::lattice::fixtures;
use k3pf::toric::FamilySpec;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map_or("edge-octahedron", String::as_str);
    let p = match name {
        "square" => fixtures::square(),
        "cube" => fixtures::cube(),
        "octahedron" => fixtures::octahedron(),
        "fourteen-vertex" => fixtures::fourteen_vertex(),
        "edge-octahedron" => fixtures::edge_octahedron(),
        other => {
            eprintln!("unknown family {other}");
            std::process::exit(2);
        }
    };
    let opts = PicardFuchsOptions {
        use_symmetry: !args.iter().any(|a| a == "--no-symmetry"),
        use_j1: args.iter().any(|a| a == "--j1"),
        ..Default::default()
    };
    let start = Instant::now();
    match picard_fuchs(&FamilySpec::new(p), &opts) {
        Ok(r) => {
            println!("order {} ({:.2?})", r.order, start.elapsed());
            println!("{}", r.operator.render());
            let cleared: Vec<String> = r.operator.canonical().iter().map(ToString::to_string).collect();
            println!("cleared: [{}]", cleared.join(", "));
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    }
}
