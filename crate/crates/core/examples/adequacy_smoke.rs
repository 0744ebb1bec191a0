use tlem_core::axiom::{build_is, classify_type, AxiomBasis, IsOptions};
use tlem_core::godel::standard_oracles;
use tlem_core::tableau::{Apparatus, SearchBudget};

fn main() {
    let beta = AxiomBasis::with_oracles("beta", standard_oracles());
    let start = std::time::Instant::now();
    let basis = build_is(&beta, &Apparatus::Tab, &IsOptions::default()).unwrap();
    println!("build_is: {} axioms in {:?}", basis.len(), start.elapsed());
    let budget = SearchBudget { max_nodes: 4000, max_depth: 4 };
    let t = std::time::Instant::now();
    let (label, ev) = classify_type(&basis, &budget);
    println!("classify plain: {:?} {:?} in {:?}", label, ev, t.elapsed());
    let opts = IsOptions { mult_extended: true, ..Default::default() };
    let extended = build_is(&beta, &Apparatus::Tab, &opts).unwrap();
    let t = std::time::Instant::now();
    let (label2, ev2) = classify_type(&extended, &budget);
    println!("classify mult: {:?} {:?} in {:?}", label2, ev2, t.elapsed());
}
