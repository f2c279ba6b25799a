//! Transformations of (minimally unsatisfiable) clause-sets and generators
//! of the extremal families.
//!
//! Fresh variables are always `max_var + 1`.

use crate::bounds;
use crate::classify::{self, require_mu};
use crate::error::{out_of_range, precondition, Error, Result};
use crate::model::{dp_reduce, Clause, ClauseSet, Lit, Var};

// ---------------------------------------------------------------------------
// Saturation

/// Partial saturation steps and their result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationTrace {
    pub steps: Vec<(Clause, Lit)>,
    pub result: ClauseSet,
}

/// `(F \ {C}) ∪ {C ∪ {x}}` if that is still unsatisfiable.
pub fn saturate_step(f: &ClauseSet, c: &Clause, x: Lit) -> Result<Option<ClauseSet>> {
    if !f.contains(c) {
        return Err(precondition(format!("clause {c} is not in F")));
    }
    if c.contains_var(x.var()) {
        return Err(precondition(format!("variable {} already occurs in {c}", x.var())));
    }
    if !f.vars().contains(&x.var()) {
        return Err(precondition(format!("variable {} does not occur in F", x.var())));
    }
    let g = f.without_clause(c).with_clause(c.with_lit(x)?);
    Ok((!classify::is_satisfiable_set(&g)).then_some(g))
}

/// `F ⊨ D`: the assignment falsifying D leaves F unsatisfiable.
pub fn implies_clause(f: &ClauseSet, d: &Clause) -> bool {
    let falsify = crate::model::PartialAssignment::from_lits(d.lits().iter().map(|&x| !x));
    !classify::is_satisfiable(&f.apply(&falsify))
}

/// Saturates an MU clause-set: clauses in canonical order, candidate
/// variables ascending, positive literal first, restarting after each step.
pub fn saturate(f: &ClauseSet) -> Result<SaturationTrace> {
    require_mu(f)?;
    let vars = f.vars();
    let mut cur = f.clone();
    let mut steps = Vec::new();
    'outer: loop {
        for c in cur.clauses().to_vec() {
            for &v in vars.iter().filter(|&&v| !c.contains_var(v)) {
                for x in [Lit::pos(v), Lit::neg(v)] {
                    if let Some(g) = saturate_step(&cur, &c, x)? {
                        steps.push((c.clone(), x));
                        cur = g;
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    Ok(SaturationTrace { steps, result: cur })
}

// ---------------------------------------------------------------------------
// Singular DP-reduction and extensions

/// v occurs in both signs, in one of them exactly once.
pub fn is_singular(f: &ClauseSet, v: Var) -> bool {
    let (p, q, _) = f.degrees(v);
    p >= 1 && q >= 1 && p.min(q) == 1
}

pub fn singular_vars(f: &ClauseSet) -> Vec<Var> {
    f.vars().into_iter().filter(|&v| is_singular(f, v)).collect()
}

/// Eliminates singular variables (lowest first) until none is left, returning
/// the eliminated variables and the nonsingular result.
pub fn singular_dp_chain(f: &ClauseSet) -> Result<(Vec<Var>, ClauseSet)> {
    require_mu(f)?;
    let mut cur = f.clone();
    let mut elim = Vec::new();
    while let Some(&v) = singular_vars(&cur).first() {
        let next = dp_reduce(&cur, v);
        debug_assert_eq!(next.delta(), cur.delta());
        debug_assert!(minvdeg_or_inf(&next) >= minvdeg_or_inf(&cur));
        cur = next;
        elim.push(v);
    }
    Ok((elim, cur))
}

fn minvdeg_or_inf(f: &ClauseSet) -> u64 {
    f.measures().minvdeg.unwrap_or(u64::MAX)
}

pub fn singular_dp_reduce(f: &ClauseSet) -> Result<ClauseSet> {
    singular_dp_chain(f).map(|(_, g)| g)
}

/// Singular m-extension of `g` with fresh `v`: the clauses `ds` (m of them)
/// become `ds'[i] ∪ {x̄}`, and `c ∪ {x}` is added, where x is v or v̄.
pub fn singular_extension(
    g: &ClauseSet,
    v: Var,
    ds: &[Clause],
    c: &Clause,
    ds_prime: &[Clause],
    positive: bool,
) -> Result<ClauseSet> {
    if v == 0 || g.vars().contains(&v) {
        return Err(Error::VariableCollision(v));
    }
    let m = ds.len();
    if m == 0 || m > g.c() {
        return Err(precondition(format!("need 1 <= m <= c(G), got m = {m}")));
    }
    if ds_prime.len() != m {
        return Err(precondition("one replacement clause per chosen clause"));
    }
    for (i, d) in ds.iter().enumerate() {
        if !g.contains(d) {
            return Err(precondition(format!("(i) chosen clause {d} is not in G")));
        }
        if ds[..i].contains(d) {
            return Err(precondition(format!("(i) clause {d} chosen twice")));
        }
        if !c.is_subset_of(d) {
            return Err(precondition(format!("(ii) {c} is not contained in {d}")));
        }
    }
    for (d, dp) in ds.iter().zip(ds_prime) {
        let rest = Clause::new(d.lits().iter().copied().filter(|x| !c.contains(*x)))?;
        if !rest.is_subset_of(dp) || !dp.is_subset_of(d) {
            return Err(precondition(format!("(iii) need {rest} ⊆ {dp} ⊆ {d}")));
        }
    }
    let x = Lit::from_var(v, positive);
    let mut out: Vec<Clause> = g.iter().filter(|d| !ds.contains(d)).cloned().collect();
    out.push(c.with_lit(x)?);
    for dp in ds_prime {
        out.push(dp.with_lit(!x)?);
    }
    Ok(ClauseSet::new(out))
}

/// `{{x}} ∪ {C ∪ {x̄} : C ∈ F}` for a literal x over a fresh variable.
pub fn full_singular_unit_extension(f: &ClauseSet, x: Lit) -> Result<ClauseSet> {
    if f.vars().contains(&x.var()) {
        return Err(Error::VariableCollision(x.var()));
    }
    let mut out: Vec<Clause> = f.iter().map(|c| c.with_lit(!x)).collect::<Result<_>>()?;
    out.push(Clause::new([x])?);
    Ok(ClauseSet::new(out))
}

fn fresh(f: &ClauseSet) -> Var {
    f.max_var() + 1
}

/// Strict full subsumption resolution: `R ∪ {v}`, `R ∪ {v̄}` are replaced by R.
pub fn sfs_resolve(f: &ClauseSet, r: &Clause, v: Var) -> Result<ClauseSet> {
    if r.contains_var(v) {
        return Err(precondition(format!("variable {v} occurs in the resolvent {r}")));
    }
    let cp = r.with_lit(Lit::pos(v))?;
    let cn = r.with_lit(Lit::neg(v))?;
    for p in [&cp, &cn] {
        if !f.contains(p) {
            return Err(precondition(format!("parent clause {p} is not in F")));
        }
    }
    if f.contains(r) {
        return Err(precondition(format!("resolvent {r} is already in F")));
    }
    let rest: Vec<Clause> = f.iter().filter(|c| **c != cp && **c != cn).cloned().collect();
    if !rest.iter().any(|c| c.contains_var(v)) {
        return Err(precondition(format!("variable {v} would vanish")));
    }
    Ok(ClauseSet::new(rest.into_iter().chain([r.clone()])))
}

/// Strict full subsumption extension: R is replaced by `R ∪ {v}`, `R ∪ {v̄}`.
pub fn sfs_extend(f: &ClauseSet, r: &Clause, v: Var) -> Result<ClauseSet> {
    if !f.contains(r) {
        return Err(precondition(format!("clause {r} is not in F")));
    }
    if !f.vars().contains(&v) || r.contains_var(v) {
        return Err(precondition(format!("need variable {v} in var(F) \\ var({r})")));
    }
    let cp = r.with_lit(Lit::pos(v))?;
    let cn = r.with_lit(Lit::neg(v))?;
    for p in [&cp, &cn] {
        if f.contains(p) {
            return Err(precondition(format!("clause {p} is already in F")));
        }
    }
    Ok(f.without_clause(r).with_clause(cp).with_clause(cn))
}

/// Non-strict full subsumption extension on C with the fresh variable `max_var + 1`.
pub fn nsfs_extend(f: &ClauseSet, c: &Clause) -> Result<ClauseSet> {
    if !f.contains(c) {
        return Err(precondition(format!("clause {c} is not in F")));
    }
    let v = fresh(f);
    Ok(f.without_clause(c).with_clause(c.with_lit(Lit::pos(v))?).with_clause(c.with_lit(Lit::neg(v))?))
}

// ---------------------------------------------------------------------------
// Generators

fn clause(lits: &[i32]) -> Clause {
    Clause::from_ints(lits).expect("generator clauses are clash-free")
}

fn set(cls: &[&[i32]]) -> ClauseSet {
    ClauseSet::from_ints(cls).expect("generator clauses are clash-free")
}

/// A_n: all 2^n full clauses over 1..n (A_0 = {⊥}).
pub fn gen_a(n: u32) -> Result<ClauseSet> {
    if n > 20 {
        return Err(out_of_range(format!("A({n}) is too large")));
    }
    Ok((0u32..1 << n)
        .map(|bits| {
            Clause::new((1..=n).map(|v| Lit::from_var(v, bits >> (v - 1) & 1 == 0))).unwrap()
        })
        .collect())
}

/// DT_n (n ≥ 2): the two long clauses plus the cycle `{-i, i+1}`, `{-n, 1}`.
pub fn gen_dt(n: u32) -> Result<ClauseSet> {
    if n < 2 {
        return Err(out_of_range(format!("DT({n}) needs n >= 2")));
    }
    let n = n as i32;
    let mut cls = vec![clause(&(1..=n).collect::<Vec<_>>()), clause(&(1..=n).map(|v| -v).collect::<Vec<_>>())];
    for i in 1..=n {
        cls.push(clause(&[-i, i % n + 1]));
    }
    Ok(ClauseSet::new(cls))
}

/// M(1..n): the positive full clause and the n full clauses with one negation.
pub fn gen_m(n: u32) -> Result<ClauseSet> {
    gen_m_over(&(1..=n).collect::<Vec<_>>())
}

fn gen_m_over(vars: &[Var]) -> Result<ClauseSet> {
    if vars.len() > 1 << 16 {
        return Err(out_of_range("M(V) is too large"));
    }
    let full = |neg: Option<Var>| {
        Clause::new(vars.iter().map(|&v| Lit::from_var(v, Some(v) != neg))).unwrap()
    };
    Ok(std::iter::once(full(None)).chain(vars.iter().map(|&v| full(Some(v)))).collect())
}

/// Unsatisfiable hitting, δ = 3, minvdeg 5.
pub fn gen_f3() -> ClauseSet {
    set(&[&[1, 2], &[-1, 3], &[1, -2, 3], &[-1, 2, -3], &[1, -2, -3], &[-1, -2, -3]])
}

/// Unsatisfiable hitting, δ = 4, six full clauses.
pub fn gen_f4() -> ClauseSet {
    set(&[
        &[1, 2],
        &[-1, 2, 3],
        &[1, -2, 3],
        &[-1, -2, 3],
        &[-1, 2, -3],
        &[1, -2, -3],
        &[-1, -2, -3],
    ])
}

/// Unsatisfiable hitting, δ = 6, minvdeg 8: the eight full clauses with
/// literal 2 plus `{1,-2}` and `{-1,-2}`.
pub fn gen_def6_witness() -> ClauseSet {
    let mut cls: Vec<Clause> = gen_a(4)
        .unwrap()
        .iter()
        .filter(|c| c.contains(Lit::pos(2)))
        .cloned()
        .collect();
    cls.push(clause(&[1, -2]));
    cls.push(clause(&[-1, -2]));
    ClauseSet::new(cls)
}

/// Unsatisfiable hitting clause-set with deficiency k and n variables, n ≥ nA(k).
///
/// From A(nA(k) - 1) one non-strict extension reaches nA(k) variables; strict
/// extensions on the first non-full clause and its lowest missing variable
/// then raise δ to k, and non-strict extensions on the first clause pad to n.
pub fn gen_uclash(k: u64, n: u32) -> Result<ClauseSet> {
    let na = bounds::n_a(k)?;
    if (n as u64) < na {
        return Err(out_of_range(format!("n = {n} < nA({k}) = {na}")));
    }
    let mut f = if k == 1 {
        set(&[&[]])
    } else {
        let g = gen_a(na as u32 - 1)?;
        let mut f = nsfs_extend(&g, &g.clauses()[0])?;
        while f.delta() < k as i64 {
            let vars = f.vars();
            let r = f
                .iter()
                .find(|c| c.len() < vars.len())
                .expect("2^n - n >= k leaves a non-full clause")
                .clone();
            let v = *vars.iter().find(|&&v| !r.contains_var(v)).unwrap();
            f = sfs_extend(&f, &r, v)?;
        }
        f
    };
    while f.n() < n as usize {
        let c = f.clauses()[0].clone();
        f = nsfs_extend(&f, &c)?;
    }
    Ok(f)
}

/// Unsatisfiable SED clause-set with δ = σ = k and minvdeg = nM(k).
///
/// Starts at A_m for the largest m with 2^m - m ≤ k; each further round takes
/// the first full clause C, applies a full singular unit-extension and adds C.
pub fn gen_vmu_sharp(k: u64) -> Result<ClauseSet> {
    if k == 0 || k > 1 << 12 {
        return Err(out_of_range(format!("k = {k} (need 1 <= k <= 4096)")));
    }
    let m = (1u32..).take_while(|&m| (1u64 << m) - m as u64 <= k).last().unwrap();
    let mut f = gen_a(m)?;
    for _ in 0..k - ((1u64 << m) - m as u64) {
        let n = f.n();
        let c = f.iter().find(|c| c.len() == n).expect("a full clause").clone();
        f = full_singular_unit_extension(&f, Lit::pos(fresh(&f)))?.with_clause(c);
    }
    Ok(f)
}

/// Matching-lean, δ = k, every positive literal degree ≥ K; unsatisfiable for k ≥ 2.
///
/// k = 1 gives M(1..K). Otherwise G = gen_uclash(k-1, max(K, nA(k-1))) over
/// 1..n, and the i-th clauses of M(1..n) and M(n+1..2n) are joined and added.
pub fn gen_mlean_highdeg(k: u64, big_k: u32) -> Result<ClauseSet> {
    if k == 0 || big_k == 0 {
        return Err(out_of_range("need k >= 1 and K >= 1"));
    }
    if k == 1 {
        return gen_m(big_k);
    }
    let na = bounds::n_a(k - 1)?;
    let g = gen_uclash(k - 1, big_k.max(na as u32))?;
    let n = g.n() as Var;
    let left = gen_m_over(&(1..=n).collect::<Vec<_>>())?;
    let right = gen_m_over(&(n + 1..=2 * n).collect::<Vec<_>>())?;
    let joined = left.iter().zip(right.iter()).map(|(a, b)| a.union(b)).collect::<Result<Vec<_>>>()?;
    Ok(ClauseSet::new(g.iter().cloned().chain(joined)))
}

/// `len` full singular unit-extensions of `base` with fresh positive literals.
pub fn fsue_chain(base: &ClauseSet, len: u32) -> Result<ClauseSet> {
    let mut f = base.clone();
    for _ in 0..len {
        f = full_singular_unit_extension(&f, Lit::pos(fresh(&f)))?;
    }
    Ok(f)
}
