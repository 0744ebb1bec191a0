//! Resolution proof checking and given-order saturation search.

use super::{Clause, Lit, ResApparatus, ResJust, ResProof, ResStep, VarId};
use crate::tableau::Verdict;

/// Validate a resolution proof against its input clauses.
pub fn res_check(proof: &ResProof, inputs: &[Clause], app: ResApparatus) -> Verdict {
    if proof.steps.is_empty() {
        return Verdict::Invalid("empty proof".into());
    }
    for (i, step) in proof.steps.iter().enumerate() {
        match &step.just {
            ResJust::Input(k) => match inputs.get(*k) {
                Some(c) if *c == step.clause => {}
                Some(_) => {
                    return Verdict::Invalid(format!("step {i}: clause differs from input {k}"))
                }
                None => return Verdict::Invalid(format!("step {i}: input index {k} out of range")),
            },
            ResJust::LemInput => {
                if app != ResApparatus::Xres {
                    return Verdict::Invalid(format!(
                        "step {i}: excluded-middle input admitted only under xres"
                    ));
                }
                let ok = step.clause.0.len() == 2 && {
                    let mut it = step.clause.0.iter();
                    let (a, b) = (it.next().unwrap(), it.next().unwrap());
                    a.var == b.var && a.pos != b.pos
                };
                if !ok {
                    return Verdict::Invalid(format!(
                        "step {i}: excluded-middle input must be a complementary pair"
                    ));
                }
            }
            ResJust::Resolve { left, right, pivot } => {
                if *left >= i || *right >= i {
                    return Verdict::Invalid(format!("step {i}: resolvent cites later steps"));
                }
                match proof.steps[*left].clause.resolve(&proof.steps[*right].clause, *pivot) {
                    Some(r) if r == step.clause => {}
                    Some(_) => {
                        return Verdict::Invalid(format!(
                            "step {i}: clause is not the stated resolvent"
                        ))
                    }
                    None => {
                        return Verdict::Invalid(format!(
                            "step {i}: pivot {pivot} does not occur with the required polarities"
                        ))
                    }
                }
            }
        }
    }
    if !proof.steps.last().unwrap().clause.is_empty() {
        return Verdict::Invalid("final step is not the empty clause".into());
    }
    Verdict::Valid
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResOutcome {
    Found(ResProof),
    Exhausted,
}

impl ResOutcome {
    pub fn found(self) -> Option<ResProof> {
        match self {
            ResOutcome::Found(p) => Some(p),
            ResOutcome::Exhausted => None,
        }
    }
}

/// Given-order saturation with forward subsumption. Deterministic;
/// `budget` caps the number of retained clauses.
pub fn res_search(inputs: &[Clause], app: ResApparatus, budget: usize) -> ResOutcome {
    let _ = app; // tautology inputs never shorten ground saturation
    let mut steps: Vec<ResStep> = Vec::new();
    let mut clauses: Vec<Clause> = Vec::new();

    let push = |clause: Clause, just: ResJust, steps: &mut Vec<ResStep>, clauses: &mut Vec<Clause>| -> Option<usize> {
        if clause.is_tautology() {
            return None;
        }
        if clauses.iter().any(|c| c.subsumes(&clause)) {
            return None;
        }
        clauses.push(clause.clone());
        steps.push(ResStep { clause, just });
        Some(steps.len() - 1)
    };

    for (k, c) in inputs.iter().enumerate() {
        if let Some(idx) = push(c.clone(), ResJust::Input(k), &mut steps, &mut clauses) {
            if steps[idx].clause.is_empty() {
                return ResOutcome::Found(trim(&steps, idx));
            }
        }
    }

    let mut i = 0;
    while i < steps.len() {
        let mut j = 0;
        while j < steps.len() {
            if steps.len() >= budget {
                return ResOutcome::Exhausted;
            }
            let pivots: Vec<VarId> = steps[i]
                .clause
                .0
                .iter()
                .filter(|l| l.pos && steps[j].clause.contains(Lit::neg(l.var)))
                .map(|l| l.var)
                .collect();
            for pivot in pivots {
                let resolvent = steps[i]
                    .clause
                    .resolve(&steps[j].clause, pivot)
                    .expect("pivot polarity checked");
                let just = ResJust::Resolve {
                    left: i,
                    right: j,
                    pivot,
                };
                if let Some(idx) = push(resolvent, just, &mut steps, &mut clauses) {
                    if steps[idx].clause.is_empty() {
                        return ResOutcome::Found(trim(&steps, idx));
                    }
                }
            }
            j += 1;
        }
        i += 1;
    }
    ResOutcome::Exhausted
}

/// Keep only the steps the refutation actually uses, reindexed.
fn trim(steps: &[ResStep], last: usize) -> ResProof {
    let mut needed = vec![false; steps.len()];
    let mut stack = vec![last];
    while let Some(i) = stack.pop() {
        if needed[i] {
            continue;
        }
        needed[i] = true;
        if let ResJust::Resolve { left, right, .. } = &steps[i].just {
            stack.push(*left);
            stack.push(*right);
        }
    }
    let mut remap = vec![usize::MAX; steps.len()];
    let mut out = ResProof::default();
    for (i, step) in steps.iter().enumerate() {
        if !needed[i] {
            continue;
        }
        let just = match &step.just {
            ResJust::Resolve { left, right, pivot } => ResJust::Resolve {
                left: remap[*left],
                right: remap[*right],
                pivot: *pivot,
            },
            other => other.clone(),
        };
        remap[i] = out.steps.len();
        out.steps.push(ResStep {
            clause: step.clause.clone(),
            just,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(codes: &[i64]) -> Clause {
        Clause::from_lits(codes.iter().map(|&c| Lit::from_code(c).unwrap()))
    }

    #[test]
    fn two_step_refutation_checks_under_both() {
        let inputs = vec![cl(&[1]), cl(&[-1])];
        let proof = res_search(&inputs, ResApparatus::Res, 100)
            .found()
            .expect("refutable");
        assert_eq!(res_check(&proof, &inputs, ResApparatus::Res), Verdict::Valid);
        assert_eq!(res_check(&proof, &inputs, ResApparatus::Xres), Verdict::Valid);
    }

    #[test]
    fn lem_inputs_are_apparatus_gated() {
        let inputs = vec![cl(&[1]), cl(&[-1])];
        let proof = ResProof {
            steps: vec![
                ResStep {
                    clause: Clause::lem(0),
                    just: ResJust::LemInput,
                },
                ResStep {
                    clause: cl(&[1]),
                    just: ResJust::Input(0),
                },
                ResStep {
                    clause: cl(&[-1]),
                    just: ResJust::Input(1),
                },
                ResStep {
                    clause: Clause::empty(),
                    just: ResJust::Resolve {
                        left: 1,
                        right: 2,
                        pivot: 0,
                    },
                },
            ],
        };
        assert_eq!(res_check(&proof, &inputs, ResApparatus::Xres), Verdict::Valid);
        match res_check(&proof, &inputs, ResApparatus::Res) {
            Verdict::Invalid(d) => assert!(d.contains("xres"), "{d}"),
            Verdict::Valid => panic!("lem input must be rejected under res"),
        }
    }

    #[test]
    fn pigeonhole_two_into_one() {
        // two pigeons, one hole: p11, p21, and not both
        let inputs = vec![cl(&[1]), cl(&[2]), cl(&[-1, -2])];
        let proof = res_search(&inputs, ResApparatus::Res, 1000)
            .found()
            .expect("unsat");
        assert_eq!(res_check(&proof, &inputs, ResApparatus::Res), Verdict::Valid);
    }

    #[test]
    fn satisfiable_input_exhausts() {
        let inputs = vec![cl(&[1, 2]), cl(&[-1, 2])];
        assert_eq!(res_search(&inputs, ResApparatus::Res, 1000), ResOutcome::Exhausted);
    }

    #[test]
    fn empty_input_exhausts() {
        assert_eq!(res_search(&[], ResApparatus::Res, 10), ResOutcome::Exhausted);
    }
}
