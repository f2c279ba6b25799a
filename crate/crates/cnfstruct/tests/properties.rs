use std::collections::BTreeSet;

use proptest::prelude::*;

use cnfstruct::bounds;
use cnfstruct::classify;
use cnfstruct::dimacs;
use cnfstruct::enumerate;
use cnfstruct::matching;
use cnfstruct::model::{dp_reduce, Clause, ClauseSet, Lit, MultiClauseSet, PartialAssignment, Var, VarSet};
use cnfstruct::reduce;
use cnfstruct::transform;

fn clause_strategy(n: u32, max_len: usize) -> impl Strategy<Value = Clause> {
    prop::collection::vec((1..=n, any::<bool>()), 0..=max_len).prop_map(|lits| {
        let mut seen = BTreeSet::new();
        Clause::new(
            lits.into_iter()
                .filter(|(v, _)| seen.insert(*v))
                .map(|(v, s)| Lit::from_var(v, s)),
        )
        .unwrap()
    })
}

/// Multi-clause-sets over at most `n` variables, up to `c` occurrences.
fn multi(n: u32, c: usize) -> impl Strategy<Value = MultiClauseSet> {
    prop::collection::vec((clause_strategy(n, n as usize), 1u64..3), 0..=c).prop_map(|cl| {
        let mut f = MultiClauseSet::top();
        for (c, m) in cl {
            f.add(c, m);
        }
        f
    })
}

fn nonempty_subsets(vars: &[Var]) -> impl Iterator<Item = VarSet> + '_ {
    (1u32..1 << vars.len()).map(move |mask| {
        vars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
    })
}

fn brute_surplus(f: &MultiClauseSet) -> Option<i64> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    nonempty_subsets(&vars).map(|v| f.restrict(&v).delta()).min()
}

/// max δ over sub-multi-clause-sets (occurrences chosen individually).
fn brute_delta_star(f: &MultiClauseSet) -> i64 {
    let occ: Vec<&Clause> = f.occurrences().collect();
    (0u32..1 << occ.len())
        .map(|mask| {
            let g = MultiClauseSet::from_clauses(
                occ.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, c)| (*c).clone()),
            );
            g.delta()
        })
        .max()
        .unwrap()
}

fn brute_sat(f: &MultiClauseSet) -> bool {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    (0u32..1 << vars.len()).any(|mask| {
        let phi = PartialAssignment::from_lits(vars.iter().enumerate().map(|(i, &v)| Lit::from_var(v, mask >> i & 1 == 1)));
        f.occurrences().all(|c| phi.satisfies(c))
    })
}

/// Random MU clause-sets: A_n followed by strict subsumption resolutions
/// and singular extensions.
fn mu_strategy() -> impl Strategy<Value = ClauseSet> {
    (1u32..=3, prop::collection::vec((any::<u16>(), any::<u16>(), any::<bool>()), 0..6)).prop_map(|(n, ops)| {
        let mut f = transform::gen_a(n).unwrap();
        for (a, b, ext) in ops {
            if ext {
                let cls = f.clauses().to_vec();
                let d = cls[a as usize % cls.len()].clone();
                let keep: Vec<Lit> = d.lits().iter().copied().filter(|_| b & 1 == 1).collect();
                let c = Clause::new(keep).unwrap();
                let v = f.max_var() + 1;
                f = transform::singular_extension(&f, v, &[d.clone()], &c, &[d], b & 2 == 0).unwrap();
            } else {
                let cands: Vec<(Clause, Var)> = f
                    .iter()
                    .flat_map(|c| {
                        c.lits().iter().filter(|x| x.is_pos()).map(move |x| (c.without_var(x.var()), x.var()))
                    })
                    .filter(|(r, v)| transform::sfs_resolve(&f, r, *v).is_ok())
                    .collect();
                if !cands.is_empty() {
                    let (r, v) = &cands[a as usize % cands.len()];
                    f = transform::sfs_resolve(&f, r, *v).unwrap();
                }
            }
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_is_involution(v in 1u32..1000, s in any::<bool>()) {
        let x = Lit::from_var(v, s);
        prop_assert_eq!(!!x, x);
        prop_assert_ne!(!x, x);
        prop_assert_eq!((!x).var(), v);
    }

    #[test]
    fn measures_match_recount(f in multi(6, 10)) {
        let m = f.measures();
        let vars: BTreeSet<Var> = f.occurrences().flat_map(|c| c.vars().collect::<Vec<_>>()).collect();
        prop_assert_eq!(m.n, vars.len());
        prop_assert_eq!(m.c, f.occurrences().count() as u64);
        prop_assert_eq!(m.ell, f.occurrences().map(|c| c.len() as u64).sum::<u64>());
        prop_assert_eq!(m.delta, m.c as i64 - m.n as i64);
        let deg = |v: Var| f.occurrences().filter(|c| c.contains_var(v)).count() as u64;
        prop_assert_eq!(m.minvdeg, vars.iter().map(|&v| deg(v)).min());
        let full = f.occurrences().filter(|c| c.len() == vars.len()).count() as u64;
        prop_assert_eq!(m.nfc, full);
    }

    #[test]
    fn restriction_laws(f in multi(6, 10), a in any::<u8>(), b in any::<u8>()) {
        let pick = |mask: u8| -> VarSet { (1..=6).filter(|v| mask >> (v - 1) & 1 == 1).collect() };
        let (va, vb) = (pick(a), pick(b));
        let both: VarSet = va.intersection(&vb).copied().collect();
        prop_assert_eq!(f.restrict(&va).restrict(&vb), f.restrict(&both));
        let meeting: u64 = f.entries().filter(|(c, _)| c.vars().any(|v| va.contains(&v))).map(|(_, m)| m).sum();
        prop_assert_eq!(f.restrict(&va).c(), meeting);
    }

    #[test]
    fn dp_preserves_satisfiability(f in multi(6, 12), v in 1u32..=6) {
        let g = f.underlying();
        let h = dp_reduce(&g, v);
        prop_assert_eq!(classify::is_satisfiable_set(&h), classify::is_satisfiable_set(&g));
        prop_assert!(!h.vars().contains(&v));
    }

    #[test]
    fn solver_matches_truth_tables(f in multi(6, 14)) {
        prop_assert_eq!(classify::is_satisfiable(&f), brute_sat(&f));
        if let Some(phi) = classify::solve(&f) {
            prop_assert!(f.occurrences().all(|c| phi.satisfies(c)));
        }
    }

    #[test]
    fn surplus_matches_subset_oracle(f in multi(6, 10)) {
        let s = matching::surplus(&f);
        match brute_surplus(&f) {
            None => prop_assert_eq!(s.value, 0),
            Some(want) => {
                prop_assert_eq!(s.value, want);
                let w = s.witness.unwrap();
                prop_assert_eq!(f.restrict(&w).delta(), want);
                let min = matching::minimal_surplus_witness(&f).unwrap();
                prop_assert_eq!(f.restrict(&min).delta(), want);
                let mv: Vec<Var> = min.iter().copied().collect();
                for sub in nonempty_subsets(&mv).filter(|sub| sub.len() < mv.len()) {
                    prop_assert!(f.restrict(&sub).delta() > want, "{sub:?} also realises σ");
                }
            }
        }
    }

    #[test]
    fn delta_star_matches_subset_oracle(f in multi(5, 8)) {
        prop_assert_eq!(matching::delta_star(&f), brute_delta_star(&f));
    }

    #[test]
    fn matching_autarkies_are_certified(f in multi(6, 10)) {
        if let Some(a) = matching::find_matching_autarky_certified(&f) {
            prop_assert!(!a.assignment.vars().is_empty());
            prop_assert!(reduce::verify_autarky(&f, &a.assignment));
            let used: BTreeSet<Var> = a.certificate.iter().map(|(_, v)| *v).collect();
            prop_assert_eq!(used.len(), a.certificate.len());
            for (c, v) in &a.certificate {
                prop_assert_eq!(a.assignment.get(*v), c.sign_of(*v));
            }
        } else {
            prop_assert!(f.n() == 0 || matching::surplus(&f).value >= 1);
        }
        let k = matching::matching_lean_kernel(&f).kernel;
        prop_assert!(matching::is_matching_lean(&k));
        prop_assert_eq!(classify::is_satisfiable(&k), classify::is_satisfiable(&f));
    }

    #[test]
    fn reduction_postcondition(f in multi(8, 16)) {
        let t = reduce::autarky_reduce(&f, true, 14);
        let r = &t.result;
        prop_assert!(r.is_top() || r.contains_bottom() || reduce::reduced_bound_holds(r));
        prop_assert!(reduce::verify_trace(&f, &t));
        prop_assert_eq!(classify::is_satisfiable(r), classify::is_satisfiable(&f));
        prop_assert!(t.surplus_steps() <= f.n());
    }

    #[test]
    fn dimacs_roundtrip(f in multi(9, 12)) {
        let text = dimacs::write_dimacs(&f);
        let g = dimacs::parse_dimacs(&text, true).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(dimacs::write_dimacs(&g), text);
    }

    #[test]
    fn mu_transformations(f in mu_strategy()) {
        prop_assert!(classify::is_mu(&f));
        let (_, g) = transform::singular_dp_chain(&f).unwrap();
        prop_assert!(classify::is_mu(&g));
        prop_assert_eq!(g.delta(), f.delta());
        prop_assert!(transform::singular_vars(&g).is_empty());
        prop_assert!(g.measures().minvdeg.unwrap_or(u64::MAX) >= f.measures().minvdeg.unwrap_or(u64::MAX));
        if classify::is_hitting(&f) {
            prop_assert!(classify::is_unsat_hitting(&g));
        }
        if f.n() <= 5 {
            let t = transform::saturate(&f).unwrap();
            prop_assert!(classify::is_saturated_mu(&t.result));
            prop_assert_eq!((t.result.n(), t.result.c()), (f.n(), f.c()));
            prop_assert_eq!(t.result.ell(), f.ell() + t.steps.len() as u64);
            let sg = transform::singular_dp_reduce(&t.result).unwrap();
            prop_assert!(classify::is_saturated_mu(&sg));
        }
    }

    #[test]
    fn fsue_preserves_structure(f in mu_strategy(), neg in any::<bool>()) {
        let x = Lit::from_var(f.max_var() + 1, !neg);
        let g = transform::full_singular_unit_extension(&f, x).unwrap();
        prop_assert_eq!(g.delta(), f.delta());
        prop_assert_eq!(g.measures().minvdeg, f.measures().minvdeg);
        prop_assert_eq!(matching::surplus(&g.to_multi()).value, matching::surplus(&f.to_multi()).value);
        prop_assert!(classify::is_mu(&g));
        prop_assert_eq!(classify::is_hitting(&g), classify::is_hitting(&f));
    }

    #[test]
    fn sfs_resolve_extend_inverse(f in mu_strategy(), pick in any::<u16>()) {
        let cands: Vec<(Clause, Var)> = f
            .iter()
            .flat_map(|c| c.lits().iter().filter(|x| x.is_pos()).map(move |x| (c.without_var(x.var()), x.var())))
            .filter(|(r, v)| transform::sfs_resolve(&f, r, *v).is_ok())
            .collect();
        if !cands.is_empty() {
            let (r, v) = &cands[pick as usize % cands.len()];
            let g = transform::sfs_resolve(&f, r, *v).unwrap();
            prop_assert_eq!((g.c() + 1, g.n()), (f.c(), f.n()));
            prop_assert_eq!(transform::sfs_extend(&g, r, *v).unwrap(), f.clone());
        }
        let c = f.clauses()[pick as usize % f.c()].clone();
        let e = transform::nsfs_extend(&f, &c).unwrap();
        prop_assert_eq!((e.c(), e.n(), e.delta()), (f.c() + 1, f.n() + 1, f.delta()));
        prop_assert!(matching::surplus(&e.to_multi()).value <= 1);
    }

    #[test]
    fn canonical_form_is_invariant(f in multi(5, 8), seed in any::<u64>()) {
        let g = f.underlying();
        let vars: Vec<Var> = g.vars().into_iter().collect();
        let mut image: Vec<Var> = vars.iter().map(|v| v + 10).collect();
        image.rotate_left((seed % (vars.len().max(1) as u64)) as usize);
        let renamed: ClauseSet = g
            .iter()
            .map(|c| {
                Clause::new(c.lits().iter().map(|x| {
                    let i = vars.binary_search(&x.var()).unwrap();
                    Lit::from_var(image[i], x.is_pos() != (seed >> i & 1 == 1))
                }))
                .unwrap()
            })
            .collect();
        prop_assert_eq!(enumerate::canonical_form(&g).unwrap(), enumerate::canonical_form(&renamed).unwrap());
    }

    #[test]
    fn nm_sequence_shape(k in 1u64..1_000_000) {
        let (a, b) = (bounds::nm(k).unwrap(), bounds::nm(k + 1).unwrap());
        prop_assert!(a >= k + 1);
        prop_assert!(b - a == 1 || (b - a == 2 && bounds::is_jump(k)));
        prop_assert_eq!(b - a == 2, bounds::is_jump(k));
        prop_assert!(!(a + 1).is_power_of_two());
        if k >= 2 {
            prop_assert_eq!(bounds::n_a_closed(k).unwrap(), bounds::n_a(k).unwrap());
        }
    }
}
