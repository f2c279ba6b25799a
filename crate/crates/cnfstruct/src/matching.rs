//! Clause–variable matchings: maximal deficiency δ*, surplus σ with
//! witnesses, matching autarkies and the matching-lean kernel.
//!
//! The bipartite graph has one left vertex per clause occurrence (clauses
//! repeated by multiplicity, canonical order) and one right vertex per
//! variable (ascending). ⊥ occurrences are isolated left vertices.
//!
//! Surplus. For a variable `v`, give `v` in total `t = vdeg(v) + 1` parallel
//! copies. By the defect form of Hall's theorem the replicated graph has
//! `max_W (|W| - |Γ(W)|) = #right - ν`. A maximising `W` may be assumed to
//! take all copies of `v` or none, and taking them dominates (adding `v` to
//! any `W` costs at most `vdeg(v)` new neighbours but gains `t - 1 >= vdeg(v)`
//! copies). Hence `min_{V ∋ v} δ(F[V]) = ν - n`, and σ is the minimum over
//! `v`. The maximising set is read off the alternating-path closure of the
//! unmatched right vertices.
//!
//! Matching autarky. If `σ(F) <= 0` and `V` realises it, then `F[V]` has a
//! matching saturating all its clause occurrences: a Hall violator `S` would
//! give `V'' = V \ Γ(S)` with `δ(F[V''])` below σ, or, if `V''` is empty,
//! `δ(F[V]) > 0`. Orienting each matched variable to satisfy its clause
//! gives an autarky whose touched clauses all lie in `F[V]`.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::model::{Clause, MultiClauseSet, PartialAssignment, Var, VarSet};

const FREE: usize = usize::MAX;

/// Maximum bipartite matching, left vertices `0..adj.len()`, right `0..n_right`.
#[derive(Clone, Debug)]
pub struct Matching {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub size: usize,
}

impl Matching {
    pub fn empty(n_left: usize, n_right: usize) -> Self {
        Matching { left: vec![FREE; n_left], right: vec![FREE; n_right], size: 0 }
    }

    pub fn mate_of_left(&self, l: usize) -> Option<usize> {
        (self.left[l] != FREE).then_some(self.left[l])
    }
}

/// Hopcroft–Karp, continuing from `m` (which must be a valid matching).
/// Vertices are scanned in index order, so results are deterministic.
pub fn hopcroft_karp(adj: &[Vec<usize>], mut m: Matching) -> Matching {
    let nl = adj.len();
    let mut dist = vec![0usize; nl];
    loop {
        let mut queue = VecDeque::new();
        for l in 0..nl {
            if m.left[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let l2 = m.right[r];
                if l2 == FREE {
                    found = true;
                } else if dist[l2] == usize::MAX {
                    dist[l2] = dist[l] + 1;
                    queue.push_back(l2);
                }
            }
        }
        if !found {
            return m;
        }
        for l in 0..nl {
            if m.left[l] == FREE && augment(adj, &mut m, &mut dist, l) {
                m.size += 1;
            }
        }
    }
}

fn augment(adj: &[Vec<usize>], m: &mut Matching, dist: &mut [usize], l: usize) -> bool {
    let d = std::mem::replace(&mut dist[l], usize::MAX);
    for &r in &adj[l] {
        let l2 = m.right[r];
        if l2 == FREE || (dist[l2] == d + 1 && augment(adj, m, dist, l2)) {
            m.left[l] = r;
            m.right[r] = l;
            return true;
        }
    }
    false
}

/// The clause–variable incidence graph of a multi-clause-set.
struct Incidence<'a> {
    occ: Vec<&'a Clause>,
    vars: Vec<Var>,
    adj: Vec<Vec<usize>>,
}

impl<'a> Incidence<'a> {
    fn new(f: &'a MultiClauseSet) -> Self {
        let vars: Vec<Var> = f.vars().into_iter().collect();
        let index: BTreeMap<Var, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let occ: Vec<&Clause> = f.occurrences().collect();
        let adj = occ.iter().map(|c| c.vars().map(|v| index[&v]).collect()).collect();
        Incidence { occ, vars, adj }
    }

    fn max_matching(&self) -> Matching {
        hopcroft_karp(&self.adj, Matching::empty(self.occ.len(), self.vars.len()))
    }
}

/// δ*(F) = c(F) − ν(F).
pub fn delta_star(f: &MultiClauseSet) -> i64 {
    let g = Incidence::new(f);
    f.c() as i64 - g.max_matching().size as i64
}

pub fn is_matching_satisfiable(f: &MultiClauseSet) -> bool {
    delta_star(f) == 0
}

/// σ(F) together with a variable set realising it (absent iff n(F) = 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurplusResult {
    pub value: i64,
    pub witness: Option<VarSet>,
}

/// `min_{V ∋ vars[i]} δ(F[V])` with the smallest and the largest realising
/// sets containing `vars[i]`.
///
/// Every maximum-defect set contains all unmatched right vertices and is
/// closed under alternating paths, so the closure of the unmatched right
/// vertices is the smallest one. Right vertices reachable from unmatched
/// clause occurrences lie in no maximum-defect set; the rest is the largest.
fn surplus_at(g: &Incidence<'_>, base: &Matching, i: usize) -> (i64, VarSet, VarSet) {
    let n = g.vars.len();
    let deg = g.adj.iter().filter(|a| a.contains(&i)).count();
    let extra = deg; // copies n..n+deg, plus the original vertex i
    let mut adj = g.adj.clone();
    for a in adj.iter_mut() {
        if a.contains(&i) {
            a.extend(n..n + extra);
        }
    }
    let nr = n + extra;
    let mut m = base.clone();
    m.right.resize(nr, FREE);
    let m = hopcroft_karp(&adj, m);

    let mut radj: Vec<Vec<usize>> = vec![Vec::new(); nr];
    for (l, a) in adj.iter().enumerate() {
        for &r in a {
            radj[r].push(l);
        }
    }

    let mut seen_r = vec![false; nr];
    let mut seen_l = vec![false; adj.len()];
    let mut queue: VecDeque<usize> = (0..nr).filter(|&r| m.right[r] == FREE).collect();
    for &r in &queue {
        seen_r[r] = true;
    }
    while let Some(r) = queue.pop_front() {
        for &l in &radj[r] {
            if !seen_l[l] {
                seen_l[l] = true;
                let r2 = m.left[l];
                debug_assert!(r2 != FREE, "augmenting path left over");
                if r2 != FREE && !seen_r[r2] {
                    seen_r[r2] = true;
                    queue.push_back(r2);
                }
            }
        }
    }
    let mut smallest: VarSet = (0..n).filter(|&r| seen_r[r]).map(|r| g.vars[r]).collect();
    smallest.insert(g.vars[i]);

    let mut plus_r = vec![false; nr];
    let mut plus_l = vec![false; adj.len()];
    let mut queue: VecDeque<usize> = (0..adj.len()).filter(|&l| m.left[l] == FREE).collect();
    for &l in &queue {
        plus_l[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in &adj[l] {
            if !plus_r[r] {
                plus_r[r] = true;
                let l2 = m.right[r];
                debug_assert!(l2 != FREE, "augmenting path left over");
                if l2 != FREE && !plus_l[l2] {
                    plus_l[l2] = true;
                    queue.push_back(l2);
                }
            }
        }
    }
    let largest: VarSet = (0..n).filter(|&r| !plus_r[r]).map(|r| g.vars[r]).collect();
    debug_assert!(largest.contains(&g.vars[i]));
    (m.size as i64 - n as i64, smallest, largest)
}

/// The minimising variable index with its smallest and largest realisers.
fn surplus_full(f: &MultiClauseSet) -> Option<(i64, VarSet, VarSet)> {
    let g = Incidence::new(f);
    if g.vars.is_empty() {
        return None;
    }
    let base = g.max_matching();
    let mut best: Option<(i64, VarSet, VarSet)> = None;
    for i in 0..g.vars.len() {
        let r = surplus_at(&g, &base, i);
        if best.as_ref().map_or(true, |b| r.0 < b.0) {
            best = Some(r);
        }
    }
    best
}

/// σ(F) = min over nonempty V ⊆ var(F) of δ(F[V]); 0 when n(F) = 0.
///
/// The witness is the largest realising set (realisers are closed under
/// union, since `V ↦ |Γ(V)| - |V|` is submodular).
pub fn surplus(f: &MultiClauseSet) -> SurplusResult {
    match surplus_full(f) {
        None => SurplusResult { value: 0, witness: None },
        Some((value, _, largest)) => {
            debug_assert_eq!(f.restrict(&largest).delta(), value);
            SurplusResult { value, witness: Some(largest) }
        }
    }
}

/// An inclusion-minimal nonempty V with δ(F[V]) = σ(F).
///
/// Greedy shrink: drop `v` whenever σ(F[V \ {v}]) = σ(F). One ascending pass
/// suffices because σ(F[W]) can only grow as W shrinks. The pass starts from
/// the smallest realiser through the first minimising variable instead of
/// var(F); the result is inclusion-minimal either way.
pub fn minimal_surplus_witness(f: &MultiClauseSet) -> Result<VarSet> {
    let Some((value, mut v_set, _)) = surplus_full(f) else {
        return Err(Error::EmptyVariableSet);
    };
    let vars: Vec<Var> = v_set.iter().copied().collect();
    for v in vars {
        if v_set.len() == 1 {
            break;
        }
        let mut w = v_set.clone();
        w.remove(&v);
        if surplus(&f.restrict(&w)).value == value {
            v_set = w;
        }
    }
    debug_assert_eq!(f.restrict(&v_set).delta(), value);
    Ok(v_set)
}

/// A matching autarky with its certificate: each touched clause occurrence
/// paired with a distinct variable whose literal in it is set true.
#[derive(Clone, Debug)]
pub struct MatchingAutarky {
    pub assignment: PartialAssignment,
    pub certificate: Vec<(Clause, Var)>,
}

pub fn find_matching_autarky_certified(f: &MultiClauseSet) -> Option<MatchingAutarky> {
    let s = surplus(f);
    if s.value >= 1 {
        return None;
    }
    let v_set = s.witness?;
    let fv = f.restrict(&v_set);
    let g = Incidence::new(&fv);
    let m = g.max_matching();
    assert_eq!(m.size, g.occ.len(), "surplus witness must admit a clause-saturating matching");
    let mut assignment = PartialAssignment::new();
    let mut certificate = Vec::with_capacity(g.occ.len());
    for (l, c) in g.occ.iter().enumerate() {
        let v = g.vars[m.left[l]];
        assignment.set(v, c.sign_of(v).expect("matched variable occurs"));
        certificate.push(((*c).clone(), v));
    }
    Some(MatchingAutarky { assignment, certificate })
}

/// A nontrivial matching autarky, present iff n(F) > 0 and σ(F) <= 0.
pub fn find_matching_autarky(f: &MultiClauseSet) -> Option<PartialAssignment> {
    find_matching_autarky_certified(f).map(|a| a.assignment)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelStep {
    pub autarky: PartialAssignment,
    pub removed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTrace {
    pub steps: Vec<KernelStep>,
    pub kernel: MultiClauseSet,
}

/// Applies matching autarkies until none is left.
pub fn matching_lean_kernel(f: &MultiClauseSet) -> KernelTrace {
    let mut cur = f.clone();
    let mut steps = Vec::new();
    while let Some(phi) = find_matching_autarky(&cur) {
        let next = cur.apply(&phi);
        steps.push(KernelStep { removed: cur.c() - next.c(), autarky: phi });
        cur = next;
    }
    KernelTrace { steps, kernel: cur }
}

/// For n(F) > 0 this is σ(F) >= 1; ⊤ and {m·⊥} are matching-lean.
pub fn is_matching_lean(f: &MultiClauseSet) -> bool {
    f.n() == 0 || surplus(f).value >= 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Lit;

    fn ms(cl: &[&[i32]]) -> MultiClauseSet {
        MultiClauseSet::from_ints(cl).unwrap()
    }

    fn vs(v: &[Var]) -> VarSet {
        v.iter().copied().collect()
    }

    fn a(n: u32) -> MultiClauseSet {
        let mut cls = Vec::new();
        for mask in 0..(1u32 << n) {
            let lits = (1..=n).map(|v| Lit::from_var(v, mask & (1 << (v - 1)) != 0));
            cls.push(Clause::new(lits).unwrap());
        }
        MultiClauseSet::from_clauses(cls)
    }

    #[test]
    fn hk_small() {
        let adj = vec![vec![0, 1], vec![0], vec![1]];
        let m = hopcroft_karp(&adj, Matching::empty(3, 2));
        assert_eq!(m.size, 2);
    }

    #[test]
    fn delta_star_examples() {
        assert_eq!(delta_star(&ms(&[&[1]])), 0);
        assert_eq!(delta_star(&ms(&[&[]])), 1);
        assert_eq!(delta_star(&a(2)), 2);
        assert!(is_matching_satisfiable(&ms(&[&[1], &[2]])));
        let mut two = MultiClauseSet::top();
        two.add(Clause::from_ints(&[1]).unwrap(), 2);
        assert!(!is_matching_satisfiable(&two));
        assert!(!is_matching_satisfiable(&a(2)));
    }

    #[test]
    fn surplus_examples() {
        for n in 1..=4 {
            assert_eq!(surplus(&a(n)).value, (1 << n) - n as i64);
        }
        let dt3 = ms(&[&[1, 2, 3], &[-1, -2, -3], &[-1, 2], &[-2, 3], &[-3, 1]]);
        assert_eq!(surplus(&dt3).value, 2);
        let mut g = a(2);
        g.add(Clause::from_ints(&[9]).unwrap(), 1);
        assert!(surplus(&g).value <= 0);
        assert_eq!(surplus(&MultiClauseSet::top()), SurplusResult { value: 0, witness: None });
        assert_eq!(surplus(&ms(&[&[]])).value, 0);
    }

    #[test]
    fn minimal_witness_examples() {
        let mlcr = ms(&[&[1, 2], &[-1, 2, -3], &[-2, 3], &[1, -2, -3]]);
        assert_eq!(minimal_surplus_witness(&mlcr).unwrap(), vs(&[1, 2, 3]));
        // σ = -1 here, realised only by {2,3}
        assert_eq!(minimal_surplus_witness(&ms(&[&[1], &[2, 3]])).unwrap(), vs(&[2, 3]));
        assert_eq!(minimal_surplus_witness(&a(1)).unwrap(), vs(&[1]));
        assert!(matches!(
            minimal_surplus_witness(&ms(&[&[]])),
            Err(Error::EmptyVariableSet)
        ));
    }

    #[test]
    fn autarky_examples() {
        let f = ms(&[&[1, 3], &[2, -3], &[3], &[-3]]);
        let phi = find_matching_autarky(&f).unwrap();
        assert!(phi.vars().is_subset(&vs(&[1, 2])));
        assert!(phi.satisfies(&Clause::from_ints(&[1, 3]).unwrap()));
        assert!(phi.satisfies(&Clause::from_ints(&[2, -3]).unwrap()));
        assert!(find_matching_autarky(&a(2)).is_none());
        assert_eq!(
            find_matching_autarky(&ms(&[&[5]])).unwrap(),
            PartialAssignment::from_lits([Lit::pos(5)])
        );
    }

    #[test]
    fn kernel_examples() {
        let f = ms(&[&[1, 3], &[2, -3], &[3], &[-3]]);
        assert_eq!(matching_lean_kernel(&f).kernel, ms(&[&[3], &[-3]]));
        let t = matching_lean_kernel(&a(2));
        assert!(t.steps.is_empty());
        assert_eq!(t.kernel, a(2));
        assert!(matching_lean_kernel(&ms(&[&[7]])).kernel.is_top());
        let mut g = ms(&[&[1]]);
        g.add(Clause::bottom(), 2);
        let k = matching_lean_kernel(&g).kernel;
        assert_eq!(k.bottom_count(), 2);
        assert_eq!(k.c(), 2);
    }

    #[test]
    fn matching_lean_examples() {
        let mut two = MultiClauseSet::top();
        two.add(Clause::from_ints(&[1]).unwrap(), 2);
        assert!(is_matching_lean(&two));
        assert!(!is_matching_lean(&ms(&[&[1]])));
        let f = ms(&[&[1, 3], &[2, -3], &[3], &[-3], &[1, 2]]);
        assert!(is_matching_lean(&f));
        assert!(is_matching_lean(&MultiClauseSet::top()));
        assert!(is_matching_lean(&ms(&[&[]])));
    }
}
