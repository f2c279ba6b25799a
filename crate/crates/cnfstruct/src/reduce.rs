//! Autarky reduction: shrink F to a sub-clause-set that is ⊤, {⊥}, or obeys
//! `minvdeg <= nM(σ)`, removing only autarky-satisfiable parts.

use serde::Serialize;

use crate::bounds;
use crate::classify;
use crate::matching::{self, KernelStep};
use crate::model::{MultiClauseSet, PartialAssignment, VarSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ReductionStep {
    /// Multiplicities collapsed to the underlying clause-set.
    Collapse { removed: u64 },
    /// ⊥ ∈ F; everything else dropped.
    Bottom { removed: u64 },
    /// Matching autarkies applied until matching-lean.
    Kernel { autarkies: Vec<PartialAssignment>, removed: u64 },
    /// Every clause meeting the surplus witness `vars` removed.
    Surplus {
        vars: VarSet,
        removed: u64,
        witness: Option<PartialAssignment>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    #[serde(skip)]
    pub result: MultiClauseSet,
}

impl ReductionTrace {
    pub fn surplus_steps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, ReductionStep::Surplus { .. })).count()
    }

    pub fn removed(&self) -> u64 {
        self.steps
            .iter()
            .map(|s| match s {
                ReductionStep::Collapse { removed }
                | ReductionStep::Bottom { removed }
                | ReductionStep::Kernel { removed, .. }
                | ReductionStep::Surplus { removed, .. } => *removed,
            })
            .sum()
    }
}

/// True iff `n(F) = 0`, or `σ(F) >= 1` and `minvdeg(F) <= nM(σ(F))`.
pub fn reduced_bound_holds(f: &MultiClauseSet) -> bool {
    if f.n() == 0 {
        return true;
    }
    let s = matching::surplus(f).value;
    s >= 1
        && match (f.measures().minvdeg, bounds::nm(s as u64)) {
            (Some(d), Ok(b)) => d <= b,
            _ => false,
        }
}

/// Every clause touched by φ contains a literal φ sets to true.
pub fn verify_autarky(f: &MultiClauseSet, phi: &PartialAssignment) -> bool {
    f.entries().all(|(c, _)| !phi.touches(c) || phi.satisfies(c))
}

/// Runs the reduction loop. With `want_witnesses`, surplus steps taken while
/// `n <= witness_n_limit` carry an autarky with variable set V, found by
/// solving `F[V]`.
pub fn autarky_reduce(f: &MultiClauseSet, want_witnesses: bool, witness_n_limit: usize) -> ReductionTrace {
    let mut steps = Vec::new();
    let mut cur = f.underlying().to_multi();
    steps.push(ReductionStep::Collapse { removed: f.c() - cur.c() });

    if cur.contains_bottom() {
        let bottom = MultiClauseSet::from_clauses([crate::model::Clause::bottom()]);
        steps.push(ReductionStep::Bottom { removed: cur.c() - 1 });
        return ReductionTrace { steps, result: bottom };
    }

    loop {
        let kt = matching::matching_lean_kernel(&cur);
        if !kt.steps.is_empty() {
            let removed = kt.steps.iter().map(|s| s.removed).sum();
            let autarkies = kt.steps.into_iter().map(|KernelStep { autarky, .. }| autarky).collect();
            steps.push(ReductionStep::Kernel { autarkies, removed });
        }
        cur = kt.kernel;
        if cur.n() == 0 {
            break;
        }
        let sigma = matching::surplus(&cur).value;
        debug_assert!(sigma >= 1, "matching-lean kernel with σ = {sigma}");
        let bound = bounds::nm(sigma as u64).expect("1 <= σ <= c");
        if cur.measures().minvdeg.is_some_and(|d| d <= bound) {
            break;
        }
        let vars = matching::minimal_surplus_witness(&cur).expect("n > 0");
        let witness = (want_witnesses && cur.n() <= witness_n_limit)
            .then(|| surplus_autarky(&cur, &vars))
            .flatten();
        let mut next = MultiClauseSet::top();
        for (c, m) in cur.entries() {
            if !c.vars().any(|v| vars.contains(&v)) {
                next.add(c.clone(), m);
            }
        }
        debug_assert!(next.n() < cur.n());
        steps.push(ReductionStep::Surplus { removed: cur.c() - next.c(), vars, witness });
        cur = next;
    }
    ReductionTrace { steps, result: cur }
}

/// Replays a trace on its input: every recorded autarky must be an autarky
/// of the current clause-set, removal counts must match, and the replay must
/// end at `trace.result`.
pub fn verify_trace(input: &MultiClauseSet, trace: &ReductionTrace) -> bool {
    let mut cur = input.clone();
    for step in &trace.steps {
        let before = cur.c();
        let removed = match step {
            ReductionStep::Collapse { removed } => {
                cur = cur.underlying().to_multi();
                removed
            }
            ReductionStep::Bottom { removed } => {
                if !cur.contains_bottom() {
                    return false;
                }
                cur = MultiClauseSet::from_clauses([crate::model::Clause::bottom()]);
                removed
            }
            ReductionStep::Kernel { autarkies, removed } => {
                for a in autarkies {
                    if a.vars().is_empty() || !verify_autarky(&cur, a) {
                        return false;
                    }
                    cur = cur.apply(a);
                }
                removed
            }
            ReductionStep::Surplus { vars, removed, witness } => {
                let mut next = MultiClauseSet::top();
                for (c, m) in cur.entries() {
                    if !c.vars().any(|v| vars.contains(&v)) {
                        next.add(c.clone(), m);
                    }
                }
                if let Some(w) = witness {
                    if !verify_autarky(&cur, w) || cur.apply(w) != next {
                        return false;
                    }
                }
                cur = next;
                removed
            }
        };
        if before - cur.c() != *removed {
            return false;
        }
    }
    cur == trace.result
}

/// A model of `F[V]`, completed on V, is an autarky touching exactly the
/// clauses that meet V.
fn surplus_autarky(f: &MultiClauseSet, vars: &VarSet) -> Option<PartialAssignment> {
    let mut phi = classify::solve(&f.restrict(vars))?;
    for &v in vars {
        if phi.get(v).is_none() {
            phi.set(v, true);
        }
    }
    debug_assert!(verify_autarky(f, &phi));
    Some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ClauseSet, Lit};
    use crate::transform;

    fn ms(cl: &[&[i32]]) -> MultiClauseSet {
        MultiClauseSet::from_ints(cl).unwrap()
    }

    #[test]
    fn verify_autarky_examples() {
        let f = ms(&[&[1, 2], &[-1, 2, -3], &[-2, 3]]);
        let phi = PartialAssignment::from_lits([Lit::pos(1), Lit::pos(2)]);
        assert!(!verify_autarky(&f, &phi));
        assert!(verify_autarky(&ms(&[&[1, 3], &[2, -3], &[3], &[-3]]), &phi));
        assert!(verify_autarky(&f, &PartialAssignment::from_lits([Lit::pos(9)])));
        assert!(!verify_autarky(&ms(&[&[1], &[-1]]), &PartialAssignment::from_lits([Lit::pos(1)])));
    }

    #[test]
    fn mlcr_example() {
        let f = ms(&[&[1, 2], &[-1, 2, -3], &[-2, 3], &[1, -2, -3]]);
        let t = autarky_reduce(&f, true, 14);
        assert!(t.result.is_top());
        assert_eq!(t.surplus_steps(), 1);
        let Some(ReductionStep::Surplus { vars, witness: Some(phi), removed }) = t.steps.last() else {
            panic!("expected a surplus step, got {:?}", t.steps);
        };
        assert_eq!(vars.iter().copied().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(*removed, 4);
        assert!(verify_autarky(&f, phi));
        assert!(phi.vars().len() == 3);
        assert!(verify_trace(&f, &t));
        let mut forged = t.clone();
        if let Some(ReductionStep::Surplus { witness, .. }) = forged.steps.last_mut() {
            *witness = Some(PartialAssignment::from_lits([Lit::neg(1), Lit::neg(2), Lit::neg(3)]));
        }
        assert!(!verify_trace(&f, &forged));
    }

    #[test]
    fn mu_and_trivial_inputs() {
        for f in [transform::gen_dt(4).unwrap(), transform::gen_a(3).unwrap(), transform::gen_f3()] {
            let t = autarky_reduce(&f.to_multi(), false, 0);
            assert_eq!(t.result, f.to_multi());
            assert_eq!(t.steps.len(), 1);
        }
        let t = autarky_reduce(&ms(&[&[1]]), false, 0);
        assert!(t.result.is_top());
        assert!(matches!(t.steps[1], ReductionStep::Kernel { removed: 1, .. }));
        assert!(autarky_reduce(&MultiClauseSet::top(), true, 14).result.is_top());
        let t = autarky_reduce(&ms(&[&[], &[], &[1], &[2, 3]]), false, 0);
        assert_eq!(t.result, ms(&[&[]]));
        assert_eq!(t.removed(), 3);
    }

    #[test]
    fn collapse_is_recorded() {
        let mut f = transform::gen_a(2).unwrap().to_multi();
        f.add(crate::model::Clause::from_ints(&[1, 2]).unwrap(), 3);
        let t = autarky_reduce(&f, false, 0);
        assert_eq!(t.steps[0], ReductionStep::Collapse { removed: 3 });
        assert_eq!(t.result.underlying(), transform::gen_a(2).unwrap());
    }

    #[test]
    fn kernel_autarkies_verify() {
        let f = ms(&[&[1, 2], &[-1, 2], &[3, 4], &[-3, -4], &[-2, 5], &[-5, 6]]);
        let t = autarky_reduce(&f, true, 14);
        for s in &t.steps {
            if let ReductionStep::Kernel { autarkies, .. } = s {
                assert!(autarkies.iter().all(|a| !a.vars().is_empty()));
            }
        }
        assert!(reduced_bound_holds(&t.result));
        assert_eq!(
            classify::is_satisfiable(&t.result),
            classify::is_satisfiable(&f)
        );
        let sub: ClauseSet = t.result.underlying();
        assert!(sub.iter().all(|c| f.multiplicity(c) > 0));
    }
}
