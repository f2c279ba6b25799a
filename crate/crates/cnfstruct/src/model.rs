//! Literals, clauses, clause-sets and multi-clause-sets, with the measures
//! and elementary operations (assignment application, restriction,
//! resolution, DP-reduction) every other module builds on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Var = u32;
pub type VarSet = BTreeSet<Var>;

/// Largest admissible variable index (DIMACS literals are `i32`).
pub const MAX_VAR: Var = i32::MAX as Var;

/// A literal: nonzero integer, variable = absolute value, `!x` is the complement.
///
/// Literals order by `(variable, sign)` with the negative literal first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit(i32);

impl Lit {
    pub fn new(value: i32) -> Result<Lit> {
        match value {
            0 => Err(Error::ZeroLiteral),
            i32::MIN => Err(Error::VariableOutOfRange(value as i64)),
            _ => Ok(Lit(value)),
        }
    }

    pub fn from_var(var: Var, positive: bool) -> Lit {
        assert!(var >= 1 && var <= MAX_VAR, "variable {var} out of range");
        if positive {
            Lit(var as i32)
        } else {
            Lit(-(var as i32))
        }
    }

    pub fn pos(var: Var) -> Lit {
        Lit::from_var(var, true)
    }

    pub fn neg(var: Var) -> Lit {
        Lit::from_var(var, false)
    }

    pub fn var(self) -> Var {
        self.0.unsigned_abs()
    }

    pub fn is_pos(self) -> bool {
        self.0 > 0
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn complement(self) -> Lit {
        Lit(-self.0)
    }

    fn key(self) -> u64 {
        ((self.var() as u64) << 1) | self.is_pos() as u64
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        self.complement()
    }
}

impl Ord for Lit {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A clash-free clause, literals strictly sorted. The empty clause is ⊥.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(Vec<Lit>);

impl Clause {
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Clause> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        if let Some(w) = lits.windows(2).find(|w| w[0].var() == w[1].var()) {
            return Err(Error::TautologicalClause { var: w[0].var() });
        }
        Ok(Clause(lits))
    }

    pub fn from_ints(values: &[i32]) -> Result<Clause> {
        let lits = values.iter().map(|&v| Lit::new(v)).collect::<Result<Vec<_>>>()?;
        Clause::new(lits)
    }

    /// Caller guarantees sortedness and clash-freeness.
    pub(crate) fn from_sorted_unchecked(lits: Vec<Lit>) -> Clause {
        debug_assert!(lits.windows(2).all(|w| w[0].var() < w[1].var()));
        Clause(lits)
    }

    pub fn bottom() -> Clause {
        Clause(Vec::new())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|l| l.var())
    }

    pub fn var_set(&self) -> VarSet {
        self.vars().collect()
    }

    pub fn max_var(&self) -> Option<Var> {
        self.0.last().map(|l| l.var())
    }

    fn find_var(&self, v: Var) -> Option<Lit> {
        self.0
            .binary_search_by(|l| l.var().cmp(&v))
            .ok()
            .map(|i| self.0[i])
    }

    /// Sign of `v` in the clause, if it occurs.
    pub fn sign_of(&self, v: Var) -> Option<bool> {
        self.find_var(v).map(|l| l.is_pos())
    }

    pub fn contains(&self, x: Lit) -> bool {
        self.find_var(x.var()) == Some(x)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.find_var(v).is_some()
    }

    /// Number of literals `x ∈ self` with `x̄ ∈ other`.
    pub fn clash_count(&self, other: &Clause) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].var().cmp(&b[j].var()) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i] != b[j] {
                        n += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    pub fn clashes_with(&self, other: &Clause) -> bool {
        self.clash_count(other) > 0
    }

    pub fn is_subset_of(&self, other: &Clause) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|&x| other.contains(x))
    }

    pub fn with_lit(&self, x: Lit) -> Result<Clause> {
        match self.find_var(x.var()) {
            Some(y) if y == x => Ok(self.clone()),
            Some(_) => Err(Error::TautologicalClause { var: x.var() }),
            None => {
                let mut lits = self.0.clone();
                let pos = lits.partition_point(|l| *l < x);
                lits.insert(pos, x);
                Ok(Clause(lits))
            }
        }
    }

    pub fn without_var(&self, v: Var) -> Clause {
        Clause(self.0.iter().copied().filter(|l| l.var() != v).collect())
    }

    pub fn union(&self, other: &Clause) -> Result<Clause> {
        Clause::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Literals of `self` whose variable lies in `vars`.
    pub fn restrict(&self, vars: &VarSet) -> Clause {
        Clause(self.0.iter().copied().filter(|l| vars.contains(&l.var())).collect())
    }

    pub fn to_ints(&self) -> Vec<i32> {
        self.0.iter().map(|l| l.value()).collect()
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// Finite map variable → {0,1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialAssignment {
    bindings: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// The assignment setting every given literal to true.
    pub fn from_lits<I: IntoIterator<Item = Lit>>(lits: I) -> Self {
        let mut phi = Self::new();
        for x in lits {
            phi.set(x.var(), x.is_pos());
        }
        phi
    }

    pub fn set(&mut self, v: Var, value: bool) {
        self.bindings.insert(v, value);
    }

    pub fn get(&self, v: Var) -> Option<bool> {
        self.bindings.get(&v).copied()
    }

    pub fn vars(&self) -> VarSet {
        self.bindings.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.bindings.iter().map(|(&v, &b)| (v, b))
    }

    pub fn lit_value(&self, x: Lit) -> Option<bool> {
        self.get(x.var()).map(|b| b == x.is_pos())
    }

    pub fn satisfies(&self, c: &Clause) -> bool {
        c.lits().iter().any(|&x| self.lit_value(x) == Some(true))
    }

    pub fn touches(&self, c: &Clause) -> bool {
        c.vars().any(|v| self.bindings.contains_key(&v))
    }

    /// `None` if the clause is satisfied, otherwise the clause with falsified literals removed.
    pub fn apply_clause(&self, c: &Clause) -> Option<Clause> {
        if self.satisfies(c) {
            return None;
        }
        Some(Clause(
            c.lits().iter().copied().filter(|l| self.get(l.var()).is_none()).collect(),
        ))
    }

    pub fn restrict(&self, vars: &VarSet) -> PartialAssignment {
        PartialAssignment {
            bindings: self.iter().filter(|(v, _)| vars.contains(v)).collect(),
        }
    }

    /// Union of two assignments; `other` wins on shared variables.
    pub fn extend(&mut self, other: &PartialAssignment) {
        self.bindings.extend(other.iter());
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, (v, b)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}->{}", b as u8)?;
        }
        write!(f, ">")
    }
}

/// All measures of a (multi-)clause-set. `minvdeg` is `None` for +∞ (no variables).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measures {
    pub n: usize,
    pub c: u64,
    pub delta: i64,
    pub ell: u64,
    pub minvdeg: Option<u64>,
    pub nfc: u64,
    pub varmvd: Vec<Var>,
}

/// Literal and variable degree of one variable: `(ldeg(v), ldeg(v̄), vdeg(v))`.
pub type Degrees = (u64, u64, u64);

fn measures_of<'a, I>(entries: I) -> Measures
where
    I: Iterator<Item = (&'a Clause, u64)> + Clone,
{
    let mut deg: BTreeMap<Var, u64> = BTreeMap::new();
    let (mut c, mut ell) = (0u64, 0u64);
    for (cl, m) in entries.clone() {
        c += m;
        ell += m * cl.len() as u64;
        for v in cl.vars() {
            *deg.entry(v).or_default() += m;
        }
    }
    let n = deg.len();
    let minvdeg = deg.values().copied().min();
    let varmvd = deg
        .iter()
        .filter(|(_, &d)| Some(d) == minvdeg)
        .map(|(&v, _)| v)
        .collect();
    let nfc = entries.filter(|(cl, _)| cl.len() == n).map(|(_, m)| m).sum();
    Measures { n, c, delta: c as i64 - n as i64, ell, minvdeg, nfc, varmvd }
}

fn degrees_of<'a, I>(entries: I, v: Var) -> Degrees
where
    I: Iterator<Item = (&'a Clause, u64)>,
{
    let (mut p, mut q) = (0, 0);
    for (cl, m) in entries {
        match cl.sign_of(v) {
            Some(true) => p += m,
            Some(false) => q += m,
            None => {}
        }
    }
    (p, q, p + q)
}

/// A multi-clause-set: clauses with positive multiplicities.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiClauseSet {
    entries: BTreeMap<Clause, u64>,
}

impl MultiClauseSet {
    /// The empty multi-clause-set ⊤.
    pub fn top() -> Self {
        Self::default()
    }

    pub fn from_clauses<I: IntoIterator<Item = Clause>>(clauses: I) -> Self {
        let mut f = Self::top();
        for c in clauses {
            f.add(c, 1);
        }
        f
    }

    pub fn from_ints(clauses: &[&[i32]]) -> Result<Self> {
        let cls = clauses.iter().map(|c| Clause::from_ints(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_clauses(cls))
    }

    pub fn add(&mut self, c: Clause, multiplicity: u64) {
        if multiplicity > 0 {
            *self.entries.entry(c).or_default() += multiplicity;
        }
    }

    /// Removes every occurrence of `c`, returning its former multiplicity.
    pub fn remove_all(&mut self, c: &Clause) -> u64 {
        self.entries.remove(c).unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Clause, u64)> + Clone + '_ {
        self.entries.iter().map(|(c, &m)| (c, m))
    }

    /// Clause occurrences, each clause repeated by its multiplicity.
    pub fn occurrences(&self) -> impl Iterator<Item = &Clause> + '_ {
        self.entries
            .iter()
            .flat_map(|(c, &m)| std::iter::repeat(c).take(m as usize))
    }

    pub fn multiplicity(&self, c: &Clause) -> u64 {
        self.entries.get(c).copied().unwrap_or(0)
    }

    pub fn distinct_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_top(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn bottom_count(&self) -> u64 {
        self.multiplicity(&Clause::bottom())
    }

    pub fn contains_bottom(&self) -> bool {
        self.bottom_count() > 0
    }

    /// Whether every multiplicity is 1.
    pub fn is_clause_set(&self) -> bool {
        self.entries.values().all(|&m| m == 1)
    }

    pub fn c(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn vars(&self) -> VarSet {
        self.entries.keys().flat_map(|c| c.vars()).collect()
    }

    pub fn n(&self) -> usize {
        self.vars().len()
    }

    pub fn delta(&self) -> i64 {
        self.c() as i64 - self.n() as i64
    }

    pub fn max_var(&self) -> Var {
        self.entries.keys().filter_map(|c| c.max_var()).max().unwrap_or(0)
    }

    pub fn measures(&self) -> Measures {
        measures_of(self.entries())
    }

    pub fn degrees(&self, v: Var) -> Degrees {
        degrees_of(self.entries(), v)
    }

    /// The underlying clause-set (multiplicities dropped).
    pub fn underlying(&self) -> ClauseSet {
        ClauseSet { clauses: self.entries.keys().cloned().collect() }
    }

    pub fn without_bottom(&self) -> MultiClauseSet {
        let mut f = self.clone();
        f.remove_all(&Clause::bottom());
        f
    }

    pub fn restrict(&self, vars: &VarSet) -> MultiClauseSet {
        restrict(self, vars)
    }

    pub fn apply(&self, phi: &PartialAssignment) -> MultiClauseSet {
        apply_assignment(phi, self)
    }
}

impl fmt::Debug for MultiClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (c, m)) in self.entries().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if m > 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl From<ClauseSet> for MultiClauseSet {
    fn from(f: ClauseSet) -> Self {
        MultiClauseSet { entries: f.clauses.into_iter().map(|c| (c, 1)).collect() }
    }
}

impl From<&ClauseSet> for MultiClauseSet {
    fn from(f: &ClauseSet) -> Self {
        f.clone().into()
    }
}

/// A clause-set: canonically sorted, duplicate-free list of clauses.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
}

impl ClauseSet {
    pub fn top() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = Clause>>(clauses: I) -> Self {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        clauses.sort_unstable();
        clauses.dedup();
        ClauseSet { clauses }
    }

    pub fn from_ints(clauses: &[&[i32]]) -> Result<Self> {
        let cls = clauses.iter().map(|c| Clause::from_ints(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(cls))
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    pub fn contains(&self, c: &Clause) -> bool {
        self.clauses.binary_search(c).is_ok()
    }

    pub fn c(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_top(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains_bottom(&self) -> bool {
        self.clauses.first().is_some_and(|c| c.is_empty())
    }

    pub fn vars(&self) -> VarSet {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    pub fn n(&self) -> usize {
        self.vars().len()
    }

    pub fn delta(&self) -> i64 {
        self.c() as i64 - self.n() as i64
    }

    pub fn ell(&self) -> u64 {
        self.clauses.iter().map(|c| c.len() as u64).sum()
    }

    pub fn max_var(&self) -> Var {
        self.clauses.iter().filter_map(|c| c.max_var()).max().unwrap_or(0)
    }

    pub fn measures(&self) -> Measures {
        measures_of(self.clauses.iter().map(|c| (c, 1)))
    }

    pub fn degrees(&self, v: Var) -> Degrees {
        degrees_of(self.clauses.iter().map(|c| (c, 1)), v)
    }

    pub fn to_multi(&self) -> MultiClauseSet {
        self.into()
    }

    pub fn with_clause(&self, c: Clause) -> ClauseSet {
        let mut out = self.clone();
        if let Err(pos) = out.clauses.binary_search(&c) {
            out.clauses.insert(pos, c);
        }
        out
    }

    pub fn without_clause(&self, c: &Clause) -> ClauseSet {
        let mut out = self.clone();
        if let Ok(pos) = out.clauses.binary_search(c) {
            out.clauses.remove(pos);
        }
        out
    }

    /// Clauses not containing variable `v`.
    pub fn avoiding_var(&self, v: Var) -> ClauseSet {
        ClauseSet {
            clauses: self.clauses.iter().filter(|c| !c.contains_var(v)).cloned().collect(),
        }
    }

    pub fn apply(&self, phi: &PartialAssignment) -> MultiClauseSet {
        apply_assignment(phi, &self.to_multi())
    }
}

impl fmt::Debug for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ClauseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        ClauseSet::new(iter)
    }
}

pub fn measures(f: &MultiClauseSet) -> Measures {
    f.measures()
}

pub fn degrees(f: &MultiClauseSet, v: Var) -> Degrees {
    f.degrees(v)
}

/// φ * F: satisfied clauses removed, falsified literals removed, images merged.
pub fn apply_assignment(phi: &PartialAssignment, f: &MultiClauseSet) -> MultiClauseSet {
    let mut out = MultiClauseSet::top();
    for (c, m) in f.entries() {
        if let Some(d) = phi.apply_clause(c) {
            out.add(d, m);
        }
    }
    out
}

/// F[V]: clauses disjoint from V dropped, the rest intersected with V's literals.
pub fn restrict(f: &MultiClauseSet, vars: &VarSet) -> MultiClauseSet {
    let mut out = MultiClauseSet::top();
    for (c, m) in f.entries() {
        let d = c.restrict(vars);
        if !d.is_empty() {
            out.add(d, m);
        }
    }
    out
}

/// C ◇ D, defined when the clauses clash in exactly one literal.
pub fn resolvent(c: &Clause, d: &Clause) -> Result<Clause> {
    let clashes = c.clash_count(d);
    if clashes != 1 {
        return Err(Error::NotResolvable { clashes });
    }
    let x = c.lits().iter().copied().find(|&x| d.contains(!x)).expect("one clash");
    c.without_var(x.var()).union(&d.without_var(x.var()))
}

/// DP_v(F): clauses with v replaced by all resolvents on v.
pub fn dp_reduce(f: &ClauseSet, v: Var) -> ClauseSet {
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for c in f {
        match c.sign_of(v) {
            Some(true) => pos.push(c),
            Some(false) => neg.push(c),
            None => rest.push(c.clone()),
        }
    }
    for p in &pos {
        for q in &neg {
            if let Ok(r) = resolvent(p, q) {
                rest.push(r);
            }
        }
    }
    ClauseSet::new(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(cl: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_ints(cl).unwrap()
    }

    fn ms(cl: &[&[i32]]) -> MultiClauseSet {
        MultiClauseSet::from_ints(cl).unwrap()
    }

    fn vs(v: &[Var]) -> VarSet {
        v.iter().copied().collect()
    }

    #[test]
    fn literal_basics() {
        let x = Lit::new(-3).unwrap();
        assert_eq!(x.var(), 3);
        assert_eq!(!!x, x);
        assert_ne!(!x, x);
        assert!(Lit::new(0).is_err());
        assert!(Lit::neg(2) < Lit::pos(2));
        assert!(Lit::pos(2) < Lit::neg(3));
    }

    #[test]
    fn clause_canonical() {
        let c = Clause::from_ints(&[3, -1, 2, 3]).unwrap();
        assert_eq!(c.to_ints(), vec![-1, 2, 3]);
        assert!(matches!(
            Clause::from_ints(&[1, -1]),
            Err(Error::TautologicalClause { var: 1 })
        ));
        assert!(Clause::bottom() < c);
    }

    #[test]
    fn measures_example() {
        let f = ms(&[&[], &[1], &[-1, 2]]);
        let m = f.measures();
        assert_eq!((m.n, m.c, m.delta, m.ell), (2, 3, 1, 3));
        let top = MultiClauseSet::top().measures();
        assert_eq!((top.n, top.c, top.delta, top.minvdeg, top.nfc), (0, 0, 0, None, 0));
        let a2 = ms(&[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]).measures();
        assert_eq!((a2.minvdeg, a2.nfc, a2.delta), (Some(4), 4, 2));
        assert_eq!(ms(&[&[]]).measures().nfc, 1);
        assert_eq!(ms(&[&[1], &[-1, 2]]).measures().nfc, 1);
    }

    #[test]
    fn degrees_example() {
        // a=1, b=2, c=3
        let mut f = ms(&[&[-1, 2], &[-2, 3]]);
        f.add(Clause::from_ints(&[1, 2]).unwrap(), 2);
        assert_eq!(f.degrees(1), (2, 1, 3));
        assert_eq!(f.degrees(2), (3, 1, 4));
        assert_eq!(f.degrees(9), (0, 0, 0));
    }

    #[test]
    fn apply_examples() {
        let f = ms(&[&[1], &[-1]]);
        let phi = PartialAssignment::from_lits([Lit::pos(1)]);
        assert_eq!(apply_assignment(&phi, &f), ms(&[&[]]));
        assert_eq!(apply_assignment(&PartialAssignment::new(), &f), f);
        let g = ms(&[&[1, 2], &[1, -2], &[-1, 3]]);
        let total = PartialAssignment::from_lits([Lit::neg(1), Lit::pos(2), Lit::pos(3)]);
        // falsifies {1,-2} only
        let mut expect = MultiClauseSet::top();
        expect.add(Clause::bottom(), 1);
        assert_eq!(apply_assignment(&total, &g), expect);
        let all_false = PartialAssignment::from_lits([Lit::neg(1), Lit::neg(2)]);
        let h = ms(&[&[1], &[2], &[1, 2]]);
        assert_eq!(apply_assignment(&all_false, &h).bottom_count(), 3);
    }

    #[test]
    fn restrict_examples() {
        let f = ms(&[&[1], &[1, 2], &[2], &[-1, -2]]);
        let mut expect = ms(&[&[-1]]);
        expect.add(Clause::from_ints(&[1]).unwrap(), 2);
        assert_eq!(restrict(&f, &vs(&[1])), expect);
        assert!(restrict(&f, &VarSet::new()).is_top());
        let g = ms(&[&[], &[1, 2], &[-2]]);
        assert_eq!(restrict(&g, &g.vars()), g.without_bottom());
    }

    #[test]
    fn resolvent_examples() {
        let c = |v: &[i32]| Clause::from_ints(v).unwrap();
        assert_eq!(resolvent(&c(&[1, 2]), &c(&[-1, 2])).unwrap(), c(&[2]));
        assert!(matches!(
            resolvent(&c(&[1, 2]), &c(&[-1, -2])),
            Err(Error::NotResolvable { clashes: 2 })
        ));
        assert_eq!(resolvent(&c(&[4]), &c(&[-4])).unwrap(), Clause::bottom());
        assert!(resolvent(&c(&[1]), &c(&[2])).is_err());
    }

    #[test]
    fn dp_examples() {
        assert_eq!(dp_reduce(&cs(&[&[1], &[-1]]), 1), cs(&[&[]]));
        // v=4, a=1, b=2, c=3
        let f = cs(&[&[4, 1], &[-4, 2, 3], &[-4, 1, 2, -3]]);
        assert_eq!(dp_reduce(&f, 4), cs(&[&[1, 2, 3], &[1, 2, -3]]));
        let f1 = cs(&[&[1, 2, 3], &[1, 2, -3], &[-1, 2], &[1, -2], &[-1, -2]]);
        let a2 = cs(&[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        assert_eq!(dp_reduce(&f1, 3), a2);
        assert_eq!(dp_reduce(&a2, 7), a2);
    }

    #[test]
    fn clause_set_ops() {
        let f = cs(&[&[2], &[1, 2], &[]]);
        assert!(f.contains_bottom());
        assert_eq!(f.clauses()[0], Clause::bottom());
        let g = f.with_clause(Clause::from_ints(&[-1]).unwrap());
        assert_eq!(g.c(), 4);
        assert_eq!(g.without_clause(&Clause::from_ints(&[-1]).unwrap()), f);
        assert_eq!(f.to_multi().underlying(), f);
    }
}
