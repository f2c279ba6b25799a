//! Class membership tests on top of a small DPLL solver.
//!
//! Everything NP- or coNP-hard here is desk scale; [`Limits`] bounds the
//! sizes at which [`classify`] still answers and reports `skipped` above.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{Error, Result};
use crate::matching;
use crate::model::{Clause, ClauseSet, Lit, MultiClauseSet, PartialAssignment, Var, VarSet};

/// Three-valued answer for checks that may be skipped above a size limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Skipped,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn is_no(self) -> bool {
        self == Tri::No
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Tri::Yes => Some(true),
            Tri::No => Some(false),
            Tri::Skipped => None,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Skipped => "skipped",
        })
    }
}

/// Desk-scale size limits, all in numbers of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest n for SAT-based checks (sat, mu, smu, marginal, vmu).
    pub sat: usize,
    /// Largest n for the exponential lean check.
    pub lean: usize,
    /// Largest n at which reductions extract witness autarkies.
    pub witness: usize,
    /// Largest catalog size for enumeration suites.
    pub n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { sat: 64, lean: 14, witness: 14, n: 4 }
    }
}

impl Limits {
    pub const ENV: &'static str = "CNFSTRUCT_LIMITS";

    /// Defaults overridden by `CNFSTRUCT_LIMITS` when set.
    pub fn from_env() -> Result<Limits> {
        match std::env::var(Self::ENV) {
            Ok(s) if !s.trim().is_empty() => Limits::default().with_overrides(&s),
            _ => Ok(Limits::default()),
        }
    }

    /// Applies `key=value` pairs separated by commas, e.g. `lean=10,n=3`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Limits> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::ParameterOutOfRange(format!("limit `{part}` is not key=value")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::ParameterOutOfRange(format!("limit `{part}` has a bad value")))?;
            match k.trim() {
                "sat" => self.sat = v,
                "lean" => self.lean = v,
                "witness" => self.witness = v,
                "n" => self.n = v,
                other => {
                    return Err(Error::ParameterOutOfRange(format!("unknown limit `{other}`")))
                }
            }
        }
        Ok(self)
    }
}

impl FromStr for Limits {
    type Err = Error;
    fn from_str(s: &str) -> Result<Limits> {
        Limits::default().with_overrides(s)
    }
}

impl fmt::Display for Limits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sat={},lean={},witness={},n={}", self.sat, self.lean, self.witness, self.n)
    }
}

// ---------------------------------------------------------------------------
// DPLL

struct Dpll {
    clauses: Vec<Vec<(usize, bool)>>,
    names: Vec<Var>,
    value: Vec<Option<bool>>,
}

impl Dpll {
    fn new<'a, I: IntoIterator<Item = &'a Clause>>(clauses: I) -> Dpll {
        let clauses: Vec<&Clause> = clauses.into_iter().collect();
        let mut index: BTreeMap<Var, usize> = BTreeMap::new();
        for c in &clauses {
            for v in c.vars() {
                index.entry(v).or_insert(0);
            }
        }
        let names: Vec<Var> = index.keys().copied().collect();
        for (i, v) in names.iter().enumerate() {
            index.insert(*v, i);
        }
        let clauses = clauses
            .iter()
            .map(|c| c.lits().iter().map(|x| (index[&x.var()], x.is_pos())).collect())
            .collect();
        let value = vec![None; names.len()];
        Dpll { clauses, names, value }
    }

    /// Unit propagation and pure literals to a fixpoint. Returns false on conflict.
    fn simplify(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            let mut polarity = vec![(false, false); self.names.len()];
            for c in &self.clauses {
                let mut open = 0;
                let mut last = None;
                let mut sat = false;
                for &(v, s) in c {
                    match self.value[v] {
                        Some(b) if b == s => {
                            sat = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open += 1;
                            last = Some((v, s));
                        }
                    }
                }
                if sat {
                    continue;
                }
                match open {
                    0 => return false,
                    1 => {
                        let (v, s) = last.unwrap();
                        self.value[v] = Some(s);
                        trail.push(v);
                        changed = true;
                    }
                    _ => {
                        for &(v, s) in c {
                            if self.value[v].is_none() {
                                if s {
                                    polarity[v].0 = true;
                                } else {
                                    polarity[v].1 = true;
                                }
                            }
                        }
                    }
                }
            }
            if !changed {
                for (v, &(p, q)) in polarity.iter().enumerate() {
                    if self.value[v].is_none() && p != q {
                        self.value[v] = Some(p);
                        trail.push(v);
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Smallest open clause, lowest variable in it.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for c in &self.clauses {
            if c.iter().any(|&(v, s)| self.value[v] == Some(s)) {
                continue;
            }
            let open: Vec<usize> =
                c.iter().filter(|&&(v, _)| self.value[v].is_none()).map(|&(v, _)| v).collect();
            let lowest = *open.iter().min().expect("open clause after simplify");
            if best.map_or(true, |(len, v)| (open.len(), lowest) < (len, v)) {
                best = Some((open.len(), lowest));
            }
        }
        best.map(|(_, v)| v)
    }

    fn search(&mut self) -> bool {
        let mut trail = Vec::new();
        if !self.simplify(&mut trail) {
            self.undo(&trail);
            return false;
        }
        let Some(v) = self.pick() else {
            return true;
        };
        for b in [true, false] {
            self.value[v] = Some(b);
            if self.search() {
                return true;
            }
        }
        self.value[v] = None;
        self.undo(&trail);
        false
    }

    fn undo(&mut self, trail: &[usize]) {
        for &v in trail {
            self.value[v] = None;
        }
    }

    fn model(&self) -> PartialAssignment {
        let mut phi = PartialAssignment::new();
        for (i, b) in self.value.iter().enumerate() {
            if let Some(b) = b {
                phi.set(self.names[i], *b);
            }
        }
        phi
    }
}

/// A satisfying partial assignment over var(F), or `None` if F is unsatisfiable.
pub fn solve_clauses<'a, I: IntoIterator<Item = &'a Clause>>(clauses: I) -> Option<PartialAssignment> {
    let mut d = Dpll::new(clauses);
    d.search().then(|| d.model())
}

pub fn solve(f: &MultiClauseSet) -> Option<PartialAssignment> {
    solve_clauses(f.entries().map(|(c, _)| c))
}

pub fn is_satisfiable(f: &MultiClauseSet) -> bool {
    solve(f).is_some()
}

pub fn is_satisfiable_set(f: &ClauseSet) -> bool {
    solve_clauses(f.iter()).is_some()
}

// ---------------------------------------------------------------------------
// Hitting clause-sets

/// Every two distinct clauses clash.
pub fn is_hitting(f: &ClauseSet) -> bool {
    let cl = f.clauses();
    (0..cl.len()).all(|i| (i + 1..cl.len()).all(|j| cl[i].clashes_with(&cl[j])))
}

/// Σ 2^{-|C|} = 1, evaluated exactly by carrying counts from the longest clauses.
pub fn dyadic_sum_is_one(f: &ClauseSet) -> bool {
    let max_len = f.iter().map(Clause::len).max().unwrap_or(0);
    let mut count = vec![0u64; max_len + 1];
    for c in f {
        count[c.len()] += 1;
    }
    let mut carry = 0u64;
    for len in (1..=max_len).rev() {
        let total = count[len] + carry;
        if total % 2 == 1 {
            return false;
        }
        carry = total / 2;
    }
    count[0] + carry == 1
}

/// Unsatisfiability of a hitting clause-set via the dyadic sum; no SAT call.
pub fn hitting_unsat_check(f: &ClauseSet) -> Result<bool> {
    if !is_hitting(f) {
        return Err(Error::NotHitting);
    }
    Ok(dyadic_sum_is_one(f))
}

pub fn is_unsat_hitting(f: &ClauseSet) -> bool {
    is_hitting(f) && dyadic_sum_is_one(f)
}

// ---------------------------------------------------------------------------
// Minimal unsatisfiability

pub fn is_mu(f: &ClauseSet) -> bool {
    if is_satisfiable_set(f) {
        return false;
    }
    f.iter().all(|c| solve_clauses(f.iter().filter(|d| *d != c)).is_some())
}

/// Every strengthening of a clause by a literal over var(F) makes F satisfiable.
pub fn is_saturated_mu(f: &ClauseSet) -> bool {
    if !is_mu(f) {
        return false;
    }
    let vars = f.vars();
    for c in f {
        for &v in vars.iter().filter(|&&v| !c.contains_var(v)) {
            for x in [Lit::pos(v), Lit::neg(v)] {
                let bigger = c.with_lit(x).expect("fresh variable");
                let rest = f.iter().filter(|d| *d != c);
                if solve_clauses(rest.chain(std::iter::once(&bigger))).is_none() {
                    return false;
                }
            }
        }
    }
    true
}

/// Replacing `c` by `c \ {x}` keeps minimal unsatisfiability.
pub fn literal_removable(f: &ClauseSet, c: &Clause, x: Lit) -> bool {
    let smaller = c.without_var(x.var());
    if f.contains(&smaller) {
        // the multiset union then holds a duplicate
        return false;
    }
    is_mu(&f.without_clause(c).with_clause(smaller))
}

/// MU, and no single literal occurrence can be removed while staying MU.
pub fn is_marginal_mu(f: &ClauseSet) -> bool {
    is_mu(f) && f.iter().all(|c| c.lits().iter().all(|&x| !literal_removable(f, c, x)))
}

/// Removable literal occurrences of an unsatisfiable hitting clause-set:
/// `(C, x)` is removable iff no other clause strictly contains `C \ {x}`.
pub fn removable_literals_hitting(f: &ClauseSet) -> Result<Vec<(Clause, Lit)>> {
    if !is_unsat_hitting(f) {
        return Err(Error::NotUnsatHitting);
    }
    let mut out = Vec::new();
    for c in f {
        for &x in c.lits() {
            let smaller = c.without_var(x.var());
            let blocked = f
                .iter()
                .any(|d| d != c && smaller.is_subset_of(d) && smaller.len() < d.len());
            if !blocked {
                out.push((c.clone(), x));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Lean, VMU, SED, MLCR

/// Lean iff no nonempty V ⊆ var(F) has F[V] satisfiable. Skipped above `n_limit`.
pub fn is_lean(f: &ClauseSet, n_limit: usize) -> Tri {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    let n = vars.len();
    if n > n_limit {
        return Tri::Skipped;
    }
    let multi = f.to_multi();
    for size in 1..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let v: VarSet = idx.iter().map(|&i| vars[i]).collect();
            if is_satisfiable(&multi.restrict(&v)) {
                return Tri::No;
            }
            // next combination
            let mut i = size;
            while i > 0 && idx[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Tri::Yes
}

/// Unsatisfiable, and dropping all clauses of any one variable gives a satisfiable set.
pub fn is_vmu(f: &ClauseSet) -> bool {
    !is_satisfiable_set(f) && f.vars().into_iter().all(|v| is_satisfiable_set(&f.avoiding_var(v)))
}

/// Surplus equals deficiency.
pub fn is_sed(f: &MultiClauseSet) -> bool {
    matching::surplus(f).value == f.delta()
}

/// Matching-lean, no ⊥, nonempty, σ realised only by var(F), and minvdeg > nM(σ).
pub fn is_mlcr(f: &MultiClauseSet) -> bool {
    if f.is_top() || f.contains_bottom() || !matching::is_matching_lean(f) {
        return false;
    }
    let sigma = matching::surplus(f).value;
    let Ok(w) = matching::minimal_surplus_witness(f) else {
        return false;
    };
    if w != f.vars() {
        return false;
    }
    let bound = bounds::nm(sigma as u64).expect("σ ≥ 1 for matching-lean F with variables");
    f.measures().minvdeg.is_some_and(|d| d > bound)
}

/// All membership flags of one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub sat: Tri,
    pub hitting: Tri,
    pub unsat_hitting: Tri,
    pub mu: Tri,
    pub smu: Tri,
    pub marginal_mu: Tri,
    pub lean: Tri,
    pub matching_lean: Tri,
    pub vmu: Tri,
    pub sed: Tri,
    pub mlcr: Tri,
    pub limits: Limits,
}

pub fn classify(f: &MultiClauseSet, limits: &Limits) -> ClassReport {
    let set = f.underlying();
    let n = f.n();
    let plain = f.is_clause_set();
    let small = n <= limits.sat;
    let sat = if small { Tri::from_bool(is_satisfiable(f)) } else { Tri::Skipped };
    let hitting = Tri::from_bool(plain && is_hitting(&set));
    let unsat_hitting = Tri::from_bool(hitting.is_yes() && dyadic_sum_is_one(&set));
    let gated = |check: &dyn Fn() -> bool| {
        if !plain || sat.is_yes() {
            Tri::No
        } else if small {
            Tri::from_bool(check())
        } else {
            Tri::Skipped
        }
    };
    let mu = gated(&|| is_mu(&set));
    let smu = match mu {
        Tri::Yes => Tri::from_bool(is_saturated_mu(&set)),
        other => other,
    };
    let marginal_mu = match mu {
        Tri::Yes => Tri::from_bool(is_marginal_mu(&set)),
        other => other,
    };
    let vmu = if sat.is_yes() {
        Tri::No
    } else if small {
        Tri::from_bool(is_vmu(&set))
    } else {
        Tri::Skipped
    };
    ClassReport {
        sat,
        hitting,
        unsat_hitting,
        mu,
        smu,
        marginal_mu,
        lean: is_lean(&set, limits.lean),
        matching_lean: Tri::from_bool(matching::is_matching_lean(f)),
        vmu,
        sed: Tri::from_bool(is_sed(f)),
        mlcr: Tri::from_bool(is_mlcr(f)),
        limits: *limits,
    }
}

impl ClassReport {
    /// Implications between the flags that must hold whenever both sides were computed.
    pub fn inconsistencies(&self) -> Vec<&'static str> {
        let mut bad = Vec::new();
        let mut imp = |a: Tri, b: Tri, name: &'static str| {
            if a.is_yes() && b.is_no() {
                bad.push(name);
            }
        };
        imp(self.unsat_hitting, self.smu, "unsat_hitting => smu");
        imp(self.smu, self.mu, "smu => mu");
        imp(self.marginal_mu, self.mu, "marginal_mu => mu");
        imp(self.mu, self.vmu, "mu => vmu");
        imp(self.vmu, self.lean, "vmu => lean");
        imp(self.lean, self.matching_lean, "lean => matching_lean");
        if self.mu.is_yes() && self.sat.is_yes() {
            bad.push("mu => unsat");
        }
        bad
    }
}

/// Checks the preconditions shared by the MU transformations.
pub(crate) fn require_mu(f: &ClauseSet) -> Result<()> {
    if is_mu(f) {
        Ok(())
    } else {
        Err(Error::NotMu)
    }
}
