//! Exponents of the D6 restrictions along the flag cut out by
//! `x1 = x6`, `x2 = x5`, `x3 = x4`, starting from the B3 arrangement at the
//! bottom of the flag.

use std::time::Instant;

use divfree::arrangement::{weyl, Hyperplane, WeylFamily};
use divfree::freeness::{flag_from_generators, Engine, Rule, Step};
use divfree::lattice::b2;

fn main() -> anyhow::Result<()> {
    let start = Instant::now();
    let a = weyl(WeylFamily::D, 6)?;
    let l = a.lattice();
    println!("D6: {} hyperplanes, {} flats, b2 = {}", a.len(), l.len(), b2(&a));

    let gens: Vec<usize> = [[1, 0, 0, 0, 0, -1], [0, 1, 0, 0, -1, 0], [0, 0, 1, -1, 0, 0]]
        .iter()
        .map(|n| a.index_of(&Hyperplane::new(n.to_vec()).unwrap()).unwrap())
        .collect();
    let flag = flag_from_generators(&l, &gens).expect("independent generators");
    let sizes: Vec<usize> = flag.iter().map(|&x| l.restriction_size(x)).collect();
    println!("restriction sizes along the flag: {sizes:?}");

    let engine = Engine::new();
    let bottom = a.restriction(l.flat(flag[3]))?.arrangement;
    let base = engine.certify(&bottom);
    println!("bottom: {bottom}\n  {}", base.verdict);

    for index in 0..3 {
        let rule = Rule::FlagPropagationBetti {
            flag: gens.clone(),
            exponents: vec![1, 3, 5, 5, 7, 9],
            index,
        };
        let s = Step::derive(rule, &a, vec![base.main_step().unwrap().clone()])?;
        println!("X_{index}: {} hyperplanes, {}", s.subject.len(), s.conclusion);
    }
    println!("engine on D6: {}", engine.certify(&a).verdict);
    println!("{:.2?}", start.elapsed());
    Ok(())
}
