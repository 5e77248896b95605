//! Certify an arrangement and every one of its deletions.
//!
//! `cargo run --example certify [file.arr]`

use divfree::arrangement::parse_arrangement;
use divfree::freeness::{replay_certificate, Engine, Step};

fn print_tree(s: &Step, depth: usize) {
    println!("{}{} => {}", "  ".repeat(depth), s.rule.id(), s.conclusion);
    for p in &s.premises {
        print_tree(p, depth + 1);
    }
}

fn main() -> anyhow::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("data/coord_braid4.arr").to_string(),
    };
    let a = parse_arrangement(&text)?;
    let engine = Engine::new();

    let cert = engine.certify(&a);
    println!("{a}\n{}", cert.verdict);
    for s in &cert.steps {
        print_tree(s, 1);
    }
    replay_certificate(&cert)?;

    println!("\ndeletions:");
    for r in engine.scan_deletions(&a) {
        let rule = r.ziegler.as_ref().or(r.triple.as_ref()).map_or("certify", |s| s.rule.id());
        println!("  minus {:<10} slack {}  {} [{rule}]", r.hyperplane.to_string(), r.slack, r.verdict);
    }
    Ok(())
}
