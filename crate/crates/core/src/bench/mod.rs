//! Theorem-family generators and proof-size comparison runs.
//!
//! Four families: doubling and squaring chains whose goals assert the
//! existence of the next sequence value over the chain sentences as
//! axioms; implication chains driven either by plain search or by
//! iterated excluded-middle composition; and a batch of excluded-middle
//! goals. Rows record re-validated proof sizes; everything except wall
//! time is deterministic for a fixed seed.

pub mod generate;

pub use generate::{GenConfig, SentenceGen};

use crate::godel::{growth_capped, growth_sentence, nat_term, GrowthKind};
use crate::lstar::ast::{Formula, Term};
use crate::lstar::eval::OracleTable;
use crate::lstar::mult::mult_rel;
use crate::tableau::{
    check, compose_linear_sum, lem_instance, search, Apparatus, ProofTree, SearchBudget, Verdict,
};
use num_bigint::BigUint;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    DoublingChain,
    SquaringChain,
    MpChain,
    LemBatch,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::DoublingChain => "doubling",
            FamilyKind::SquaringChain => "squaring",
            FamilyKind::MpChain => "mpchain",
            FamilyKind::LemBatch => "lembatch",
        }
    }

    pub fn from_name(s: &str) -> Option<FamilyKind> {
        Some(match s {
            "doubling" => FamilyKind::DoublingChain,
            "squaring" => FamilyKind::SquaringChain,
            "mpchain" => FamilyKind::MpChain,
            "lembatch" => FamilyKind::LemBatch,
            _ => return None,
        })
    }
}

/// Squaring sizes explode as the codeword length doubles per step; cap
/// the family by default.
pub const SQUARING_DEFAULT_CAP: u32 = 8;

/// One generated problem instance.
#[derive(Debug, Clone)]
pub struct BenchCase {
    pub family: FamilyKind,
    pub n: u32,
    pub axioms: Vec<Formula>,
    pub goal: Formula,
}

pub fn doubling_case(n: u32) -> BenchCase {
    let axioms: Vec<Formula> = (0..=n)
        .map(|i| growth_sentence(GrowthKind::Doubling, i).expect("doubling is uncapped"))
        .collect();
    let prev = if n == 0 {
        Term::one()
    } else {
        nat_term(&growth_capped(GrowthKind::Doubling, n - 1, u32::MAX).unwrap().value)
    };
    let goal = Formula::exists(
        "z",
        Formula::eq(Term::add(prev.clone(), prev), Term::var("z")),
    );
    BenchCase {
        family: FamilyKind::DoublingChain,
        n,
        axioms,
        goal,
    }
}

pub fn squaring_case(n: u32) -> Option<BenchCase> {
    let axioms: Vec<Formula> = (0..=n)
        .map(|i| growth_sentence(GrowthKind::Squaring, i))
        .collect::<Result<_, _>>()
        .ok()?;
    let prev = if n == 0 {
        Term::one()
    } else {
        nat_term(&growth_capped(GrowthKind::Squaring, n - 1, 26).ok()?.value)
    };
    let goal = Formula::exists("z", mult_rel(&prev, &prev, &Term::var("z")));
    Some(BenchCase {
        family: FamilyKind::SquaringChain,
        n,
        axioms,
        goal,
    })
}

/// Distinct true atoms linked by implications: `A0`, `Ai -> Ai+1`.
pub fn mpchain_case(k: u32) -> BenchCase {
    let atom = |i: u32| {
        let t = nat_term(&BigUint::from(i));
        Formula::eq(t.clone(), t)
    };
    let mut axioms = vec![atom(0)];
    for i in 0..k {
        axioms.push(Formula::implies(atom(i), atom(i + 1)));
    }
    BenchCase {
        family: FamilyKind::MpChain,
        n: k,
        axioms,
        goal: atom(k),
    }
}

pub fn lembatch_case(i: u32, seed: u64) -> BenchCase {
    let mut gen = SentenceGen::from_seed(seed.wrapping_add(u64::from(i)));
    let kernel = gen.delta0_sentence();
    BenchCase {
        family: FamilyKind::LemBatch,
        n: i,
        axioms: Vec::new(),
        goal: lem_instance(&kernel),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub family: String,
    pub n: u32,
    pub apparatus: String,
    pub outcome: &'static str,
    pub nodes: usize,
    pub symbols: usize,
    pub ms: u128,
    pub seed: u64,
    pub budget: usize,
}

pub const CSV_HEADER: &str = "family,n,apparatus,outcome,nodes,symbols,ms,seed,budget";

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.family, r.n, r.apparatus, r.outcome, r.nodes, r.symbols, r.ms, r.seed, r.budget
        ));
    }
    out
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    /// (family, instances): each family runs for n in 1..=instances.
    pub families: Vec<(FamilyKind, u32)>,
    pub apparatuses: Vec<Apparatus>,
    pub budget: usize,
    pub seed: u64,
}

/// Run every case under every apparatus. Found proofs are re-validated
/// before their sizes are recorded; failures become rows, never aborts.
pub fn run_bench(spec: &BenchSpec) -> Vec<BenchRow> {
    let oracles = OracleTable::new();
    let mut rows = Vec::new();
    for &(family, count) in &spec.families {
        for n in 1..=effective_count(family, count) {
            let case = match family {
                FamilyKind::DoublingChain => Some(doubling_case(n)),
                FamilyKind::SquaringChain => squaring_case(n),
                FamilyKind::MpChain => Some(mpchain_case(n)),
                FamilyKind::LemBatch => Some(lembatch_case(n, spec.seed)),
            };
            let Some(case) = case else { continue };
            for app in &spec.apparatuses {
                rows.push(run_case(&case, app, spec, &oracles));
            }
        }
    }
    rows.sort_by(|a, b| {
        (&a.family, a.n, &a.apparatus).cmp(&(&b.family, b.n, &b.apparatus))
    });
    rows
}

fn effective_count(family: FamilyKind, count: u32) -> u32 {
    match family {
        FamilyKind::SquaringChain => count.min(SQUARING_DEFAULT_CAP),
        _ => count,
    }
}

fn run_case(
    case: &BenchCase,
    app: &Apparatus,
    spec: &BenchSpec,
    oracles: &OracleTable,
) -> BenchRow {
    let budget = SearchBudget {
        max_nodes: spec.budget,
        max_depth: 6,
    };
    let start = Instant::now();
    let proof = if case.family == FamilyKind::MpChain && matches!(app, Apparatus::Xtab) {
        iterated_compose(case)
    } else {
        search(&case.goal, &case.axioms, app, &budget, oracles).found()
    };
    let ms = start.elapsed().as_millis();
    let validated = proof.filter(|p| {
        matches!(
            check(p, &case.goal, &case.axioms, app),
            Verdict::Valid
        )
    });
    match validated {
        Some(p) => {
            let size = p.size();
            BenchRow {
                family: case.family.name().to_string(),
                n: case.n,
                apparatus: app.name().to_string(),
                outcome: "found",
                nodes: size.nodes,
                symbols: size.symbols,
                ms,
                seed: spec.seed,
                budget: spec.budget,
            }
        }
        None => BenchRow {
            family: case.family.name().to_string(),
            n: case.n,
            apparatus: app.name().to_string(),
            outcome: "exhausted",
            nodes: 0,
            symbols: 0,
            ms,
            seed: spec.seed,
            budget: spec.budget,
        },
    }
}

/// Prove the chain goal by composing one link at a time.
pub fn iterated_compose(case: &BenchCase) -> Option<ProofTree> {
    let oracles = OracleTable::new();
    let budget = SearchBudget::default();
    let atom = |i: u32| {
        let t = nat_term(&BigUint::from(i));
        Formula::eq(t.clone(), t)
    };
    let mut current = search(&atom(0), &case.axioms, &Apparatus::Tab, &budget, &oracles).found()?;
    for i in 0..case.n {
        let imp = Formula::implies(atom(i), atom(i + 1));
        let imp_proof = search(&imp, &case.axioms, &Apparatus::Tab, &budget, &oracles).found()?;
        current = compose_linear_sum(&current, &imp_proof, &case.axioms).ok()?;
    }
    Some(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::SearchOutcome;

    #[test]
    fn csv_rows_are_deterministic_modulo_time() {
        let spec = BenchSpec {
            families: vec![(FamilyKind::MpChain, 3), (FamilyKind::LemBatch, 3)],
            apparatuses: vec![Apparatus::Tab, Apparatus::Xtab],
            budget: 2000,
            seed: 42,
        };
        let strip = |rows: &[BenchRow]| -> Vec<String> {
            rows.iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{},{},{},{}",
                        r.family, r.n, r.apparatus, r.outcome, r.nodes, r.symbols, r.seed, r.budget
                    )
                })
                .collect()
        };
        let a = run_bench(&spec);
        let b = run_bench(&spec);
        assert_eq!(strip(&a), strip(&b));
        assert!(a.iter().all(|r| r.outcome == "found"));
    }

    #[test]
    fn doubling_goal_mentions_the_next_power() {
        let case = doubling_case(10);
        // the goal embeds the numeral of 2^10 twice under the addition
        let text = case.goal.to_string();
        assert!(text.starts_with("(exists z (= (add "));
        let val = crate::godel::growth_capped(GrowthKind::Doubling, 10, 32)
            .unwrap()
            .value;
        assert_eq!(val.bits() - 1, 11);
    }

    #[test]
    fn families_solve_under_tab() {
        let oracles = OracleTable::new();
        let budget = SearchBudget::default();
        for case in [
            doubling_case(3),
            squaring_case(3).unwrap(),
            mpchain_case(4),
            lembatch_case(1, 9),
        ] {
            let out = search(&case.goal, &case.axioms, &Apparatus::Tab, &budget, &oracles);
            assert!(
                matches!(out, SearchOutcome::Found(_)),
                "{:?}({}) should be provable",
                case.family,
                case.n
            );
        }
    }
}
