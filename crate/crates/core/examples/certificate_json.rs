//! Certificates as JSON: write one out, read it back, replay every step.

use divfree::arrangement::parse_arrangement;
use divfree::freeness::{replay_certificate, Certificate, Engine};

fn main() -> anyhow::Result<()> {
    let a = parse_arrangement(include_str!("data/coord_braid4.arr"))?;
    let engine = Engine::new();
    engine.certify(&a);
    let deletion = engine.certify(&a.delete(0)?);

    let text = serde_json::to_string_pretty(&deletion)?;
    println!("{text}");
    let back: Certificate = serde_json::from_str(&text)?;
    replay_certificate(&back)?;
    eprintln!("replayed {} step(s) for {}", back.steps.len(), back.subject);
    Ok(())
}
