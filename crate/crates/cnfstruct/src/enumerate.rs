//! Exhaustive enumeration of unsatisfiable hitting clause-sets over
//! `{1..n}` up to isomorphism (renaming and flipping variables).
//!
//! Every such clause-set is reachable from `A_n` by strict full subsumption
//! resolutions, so the catalog is the closure of `A_n` under that step. The
//! search works on packed clause-sets: clause codes in base 3 (digit 0 =
//! absent, 1 = negative, 2 = positive) and one bit per code.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds;
use crate::classify;
use crate::dimacs;
use crate::error::{out_of_range, Error, Result};
use crate::matching;
use crate::model::{Clause, ClauseSet, Lit, Var};
use crate::transform;

/// Default variable limit for the enumerator.
pub const DEFAULT_N_LIMIT: u32 = 4;
/// Hard limit of the packed representation (3^5 codes fit in 256 bits).
pub const MAX_ENUM_N: u32 = 5;
/// Limit of [`canonical_form`].
pub const MAX_CANON_N: usize = 6;

type Mask = [u64; 4];

fn bit(m: &Mask, i: usize) -> bool {
    m[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(m: &mut Mask, i: usize) {
    m[i / 64] |= 1 << (i % 64);
}

fn clear_bit(m: &mut Mask, i: usize) {
    m[i / 64] &= !(1 << (i % 64));
}

fn ones(m: &Mask) -> impl Iterator<Item = usize> + '_ {
    m.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            (x != 0).then(|| {
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                w * 64 + t
            })
        })
    })
}

/// All `n! * 2^n` signed permutations of `0..n`: `(perm, flips)`.
fn signed_perms(n: usize) -> Vec<(Vec<usize>, u32)> {
    let mut perms = vec![];
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        for flips in 0..1u32 << n {
            perms.push((p.clone(), flips));
        }
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    perms
}

struct Packed {
    n: usize,
    codes: usize,
    pow3: Vec<usize>,
    /// codes containing variable i (0-based)
    occ: Vec<Mask>,
    /// code images under each signed permutation
    images: Vec<Vec<u16>>,
}

impl Packed {
    fn new(n: usize) -> Self {
        let pow3: Vec<usize> = (0..=n).map(|i| 3usize.pow(i as u32)).collect();
        let codes = pow3[n];
        let digit = |code: usize, i: usize| code / pow3[i] % 3;
        let mut occ = vec![[0; 4]; n];
        for code in 0..codes {
            for (i, o) in occ.iter_mut().enumerate() {
                if digit(code, i) != 0 {
                    set_bit(o, code);
                }
            }
        }
        let images = signed_perms(n)
            .into_iter()
            .map(|(perm, flips)| {
                (0..codes)
                    .map(|code| {
                        (0..n)
                            .map(|i| {
                                let d = digit(code, i);
                                let d = if d != 0 && flips >> i & 1 == 1 { 3 - d } else { d };
                                d * pow3[perm[i]]
                            })
                            .sum::<usize>() as u16
                    })
                    .collect()
            })
            .collect();
        Packed { n, codes, pow3, occ, images }
    }

    fn digit(&self, code: usize, i: usize) -> usize {
        code / self.pow3[i] % 3
    }

    fn canonical(&self, m: &Mask) -> Mask {
        let set: Vec<usize> = ones(m).collect();
        let mut best = *m;
        for img in &self.images {
            let mut t = [0; 4];
            for &c in &set {
                set_bit(&mut t, img[c] as usize);
            }
            best = best.min(t);
        }
        best
    }

    fn full_set(&self) -> Mask {
        let mut m = [0; 4];
        for code in 0..self.codes {
            if (0..self.n).all(|i| self.digit(code, i) != 0) {
                set_bit(&mut m, code);
            }
        }
        m
    }

    /// All strict full subsumption resolutions of m.
    fn successors(&self, m: &Mask) -> Vec<Mask> {
        let mut out = vec![];
        for r in (0..self.codes).filter(|&r| !bit(m, r)) {
            for v in (0..self.n).filter(|&v| self.digit(r, v) == 0) {
                let (cn, cp) = (r + self.pow3[v], r + 2 * self.pow3[v]);
                if !bit(m, cn) || !bit(m, cp) {
                    continue;
                }
                let mut next = *m;
                clear_bit(&mut next, cn);
                clear_bit(&mut next, cp);
                if (0..4).any(|w| next[w] & self.occ[v][w] != 0) {
                    set_bit(&mut next, r);
                    out.push(next);
                }
            }
        }
        out
    }

    fn to_clause(&self, code: usize) -> Clause {
        Clause::new((0..self.n).filter_map(|i| match self.digit(code, i) {
            0 => None,
            d => Some(Lit::from_var(i as Var + 1, d == 2)),
        }))
        .unwrap()
    }

    fn to_set(&self, m: &Mask) -> ClauseSet {
        ones(m).map(|c| self.to_clause(c)).collect()
    }
}

/// Lexicographic minimum of all renamings of var(F) onto `1..n` with sign flips.
pub fn canonical_form(f: &ClauseSet) -> Result<ClauseSet> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    let n = vars.len();
    if n > MAX_CANON_N {
        return Err(Error::TooManyVariables { n, limit: MAX_CANON_N });
    }
    let index = |v: Var| vars.binary_search(&v).unwrap();
    let mut best: Option<ClauseSet> = None;
    for (perm, flips) in signed_perms(n) {
        let g: ClauseSet = f
            .iter()
            .map(|c| {
                Clause::new(c.lits().iter().map(|x| {
                    let i = index(x.var());
                    Lit::from_var(perm[i] as Var + 1, x.is_pos() != (flips >> i & 1 == 1))
                }))
                .unwrap()
            })
            .collect();
        if best.as_ref().is_none_or(|b| g < *b) {
            best = Some(g);
        }
    }
    Ok(best.unwrap_or_default())
}

pub fn is_isomorphic(f: &ClauseSet, g: &ClauseSet) -> Result<bool> {
    Ok(f.n() == g.n() && f.c() == g.c() && canonical_form(f)? == canonical_form(g)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryMeta {
    pub id: String,
    pub delta: i64,
    pub minvdeg: u64,
    pub nfc: u64,
    pub sigma: i64,
    pub nonsingular: bool,
    pub vmu: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub clauses: ClauseSet,
    pub meta: EntryMeta,
}

impl CatalogEntry {
    pub fn new(clauses: ClauseSet) -> Self {
        let m = clauses.measures();
        let meta = EntryMeta {
            id: entry_id(&clauses),
            delta: m.delta,
            minvdeg: m.minvdeg.unwrap_or(0),
            nfc: m.nfc,
            sigma: matching::surplus(&clauses.to_multi()).value,
            nonsingular: transform::singular_vars(&clauses).is_empty(),
            vmu: classify::is_vmu(&clauses),
        };
        CatalogEntry { clauses, meta }
    }
}

/// First 16 hex digits of the SHA-256 of the canonical DIMACS text.
pub fn entry_id(f: &ClauseSet) -> String {
    let digest = Sha256::digest(dimacs::write_dimacs(&f.to_multi()).as_bytes());
    hex::encode(&digest[..8])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub var_count: u32,
    pub entries: Vec<CatalogEntry>,
    pub method: String,
    /// The cap stopped the search early.
    pub partial: bool,
}

impl Catalog {
    pub fn with_delta(&self, k: i64) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.meta.delta == k)
    }
}

fn check_n(n: u32, n_limit: u32) -> Result<()> {
    if n == 0 || n > n_limit.min(MAX_ENUM_N) {
        return Err(out_of_range(format!(
            "n = {n} (need 1 <= n <= {})",
            n_limit.min(MAX_ENUM_N)
        )));
    }
    Ok(())
}

/// All unsatisfiable hitting clause-sets with variable set `{1..n}`, one per
/// isomorphism class, sorted. `cap` bounds the number of classes visited.
pub fn enum_uclash(n: u32, cap: Option<usize>) -> Result<Catalog> {
    enum_uclash_limited(n, cap, DEFAULT_N_LIMIT)
}

pub fn enum_uclash_limited(n: u32, cap: Option<usize>, n_limit: u32) -> Result<Catalog> {
    check_n(n, n_limit)?;
    let p = Packed::new(n as usize);
    let start = p.canonical(&p.full_set());
    let mut seen: HashSet<Mask> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    let mut partial = false;
    'bfs: while let Some(m) = queue.pop_front() {
        for s in p.successors(&m) {
            let s = p.canonical(&s);
            if seen.insert(s) {
                if cap.is_some_and(|cap| seen.len() > cap) {
                    seen.remove(&s);
                    partial = true;
                    break 'bfs;
                }
                queue.push_back(s);
            }
        }
    }
    let sets: BTreeSet<ClauseSet> = seen
        .iter()
        .map(|m| canonical_form(&p.to_set(m)).expect("n <= 5"))
        .collect();
    Ok(Catalog {
        var_count: n,
        entries: sets.into_iter().map(CatalogEntry::new).collect(),
        method: "sfs-closure".into(),
        partial,
    })
}

/// Independent enumerator for n ≤ 3: backtracking over hitting subsets of the
/// nonempty clauses, pruned by the dyadic sum. Returns canonical forms.
pub fn enum_uclash_backtrack(n: u32) -> Result<BTreeSet<ClauseSet>> {
    check_n(n, 3)?;
    let p = Packed::new(n as usize);
    let clauses: Vec<Clause> = (1..p.codes).map(|c| p.to_clause(c)).collect();
    let weight: Vec<u64> = clauses.iter().map(|c| 1 << (n as usize - c.len())).collect();
    let mut found = BTreeSet::new();
    let mut chosen = vec![];
    fn go(
        i: usize,
        sum: u64,
        target: u64,
        clauses: &[Clause],
        weight: &[u64],
        chosen: &mut Vec<usize>,
        found: &mut BTreeSet<ClauseSet>,
    ) {
        if sum == target {
            let f: ClauseSet = chosen.iter().map(|&j| clauses[j].clone()).collect();
            if f.n() == target.trailing_zeros() as usize {
                found.insert(canonical_form(&f).unwrap());
            }
            return;
        }
        for j in i..clauses.len() {
            if sum + weight[j] <= target && chosen.iter().all(|&k| clauses[k].clashes_with(&clauses[j])) {
                chosen.push(j);
                go(j + 1, sum + weight[j], target, clauses, weight, chosen, found);
                chosen.pop();
            }
        }
    }
    go(0, 0, 1 << n, &clauses, &weight, &mut chosen, &mut found);
    Ok(found)
}

fn catalogs_up_to(n_max: u32) -> Result<Vec<Catalog>> {
    check_n(n_max, DEFAULT_N_LIMIT)?;
    (1..=n_max).map(|n| enum_uclash(n, None)).collect()
}

/// Largest minvdeg among catalog entries with δ = k and n ≤ n_max (0 if none).
pub fn desk_minnmh(k: i64, n_max: u32) -> Result<u64> {
    Ok(desk_tables(n_max)?.into_iter().find(|r| r.0 == k).map_or(0, |r| r.1))
}

/// Largest nfc among catalog entries with δ = k and n ≤ n_max (0 if none).
pub fn desk_maxsmarh(k: i64, n_max: u32) -> Result<u64> {
    Ok(desk_tables(n_max)?.into_iter().find(|r| r.0 == k).map_or(0, |r| r.2))
}

/// Rows `(k, max minvdeg, max nfc)` over all δ occurring in the catalogs.
pub fn desk_tables(n_max: u32) -> Result<Vec<(i64, u64, u64)>> {
    Ok(desk_tables_from(&catalogs_up_to(n_max)?))
}

pub fn desk_tables_from(catalogs: &[Catalog]) -> Vec<(i64, u64, u64)> {
    let mut rows: Vec<(i64, u64, u64)> = vec![];
    for e in catalogs.iter().flat_map(|c| &c.entries) {
        match rows.iter_mut().find(|r| r.0 == e.meta.delta) {
            Some(r) => {
                r.1 = r.1.max(e.meta.minvdeg);
                r.2 = r.2.max(e.meta.nfc);
            }
            None => rows.push((e.meta.delta, e.meta.minvdeg, e.meta.nfc)),
        }
    }
    rows.sort();
    rows
}

// ---------------------------------------------------------------------------
// Files

pub fn catalog_paths(dir: &Path, n: u32) -> (PathBuf, PathBuf) {
    (
        dir.join(format!("catalog-n{n}.cnfs")),
        dir.join(format!("catalog-n{n}.meta.jsonl")),
    )
}

/// Writes `catalog-n<k>.cnfs` and `catalog-n<k>.meta.jsonl` into `dir`.
pub fn write_catalog(cat: &Catalog, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)?;
    let (cnfs, meta) = catalog_paths(dir, cat.var_count);
    let mut text = format!("c method {}\nc partial {}\n", cat.method, cat.partial);
    let mut lines = String::new();
    for e in &cat.entries {
        text.push_str(&format!("c id {}\n", e.meta.id));
        text.push_str(&dimacs::write_dimacs(&e.clauses.to_multi()));
        lines.push_str(&serde_json::to_string(&e.meta)?);
        lines.push('\n');
    }
    fs::write(&cnfs, text)?;
    fs::write(&meta, lines)?;
    Ok((cnfs, meta))
}

pub fn read_catalog(dir: &Path, n: u32) -> Result<Catalog> {
    let (cnfs, meta) = catalog_paths(dir, n);
    let text = fs::read_to_string(&cnfs)?;
    let metas: Vec<EntryMeta> = fs::read_to_string(&meta)?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect::<Result<_, _>>()?;
    let bad = |msg: String| Error::Catalog(format!("{}: {msg}", cnfs.display()));
    let mut method = String::new();
    let mut partial = false;
    let mut blocks: Vec<(String, String)> = vec![];
    for line in text.lines() {
        if let Some(id) = line.strip_prefix("c id ") {
            blocks.push((id.trim().to_string(), String::new()));
        } else if let Some((_, body)) = blocks.last_mut() {
            body.push_str(line);
            body.push('\n');
        } else if let Some(m) = line.strip_prefix("c method ") {
            method = m.trim().to_string();
        } else if let Some(p) = line.strip_prefix("c partial ") {
            partial = p.trim() == "true";
        }
    }
    if blocks.len() != metas.len() {
        return Err(bad(format!("{} blocks but {} metadata lines", blocks.len(), metas.len())));
    }
    let mut entries = vec![];
    for ((id, body), meta) in blocks.into_iter().zip(metas) {
        let clauses = dimacs::parse_dimacs(&body, true)?.underlying();
        if id != meta.id || entry_id(&clauses) != id {
            return Err(bad(format!("id mismatch for entry {id}")));
        }
        entries.push(CatalogEntry { clauses, meta });
    }
    Ok(Catalog { var_count: n, entries, method, partial })
}

// ---------------------------------------------------------------------------
// Invariants

/// Names of the per-entry invariants, in check order.
pub const INVARIANTS: [&str; 10] = [
    "uhit",
    "low-degree-variable",
    "surplus-bound",
    "nm1-bound",
    "full-clauses-even",
    "surplus-one-two",
    "sed-implies-vmu",
    "delta2-is-dt",
    "two-min-degree-variables",
    "canonical",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub id: String,
    pub invariant: &'static str,
}

/// Checks the ten invariants on every entry; returns the violations.
pub fn check_catalog(cat: &Catalog) -> Vec<Violation> {
    let dts: Vec<ClauseSet> = [2, 3].iter().map(|&n| canonical_form(&transform::gen_dt(n).unwrap()).unwrap()).collect();
    let mut out = vec![];
    for e in &cat.entries {
        for (name, ok) in INVARIANTS.iter().zip(check_entry(e, cat.var_count, &dts)) {
            if !ok {
                out.push(Violation { id: e.meta.id.clone(), invariant: name });
            }
        }
    }
    out
}

fn check_entry(e: &CatalogEntry, n: u32, dts: &[ClauseSet]) -> [bool; 10] {
    let f = &e.clauses;
    let m = &e.meta;
    let k = m.delta;
    let nm = |x: i64| if x >= 1 { bounds::nm(x as u64).ok() } else { None };
    let nm_k = nm(k);
    let low_var = f.vars().into_iter().any(|v| {
        let (p, q, d) = f.degrees(v);
        nm_k.is_some_and(|b| d <= b) && p as i64 <= k && q as i64 <= k
    });
    let surplus_bound = 1 <= m.sigma && m.sigma <= k && nm(m.sigma).is_some_and(|b| m.minvdeg <= b);
    let nm1_bound = k >= 1 && bounds::nm1(k as u64).is_ok_and(|b| m.minvdeg <= b);
    let even = m.nfc != m.minvdeg || m.nfc % 2 == 0;
    let s12 = ((m.sigma == 1) == (m.minvdeg == 2))
        && (m.minvdeg != 3 || m.sigma == 2)
        && (m.sigma != 2 || matches!(m.minvdeg, 3 | 4));
    let sed = m.sigma != k || m.vmu;
    let dt = !(k == 2 && m.nonsingular) || dts.contains(f);
    let two_min = k < 1 || bounds::is_jump(k as u64) || Some(m.minvdeg) != nm_k || f.measures().varmvd.len() >= 2;
    let canonical = classify::is_unsat_hitting(f)
        && f.vars() == (1..=n).collect()
        && canonical_form(f).is_ok_and(|g| g == *f)
        && entry_id(f) == m.id;
    [
        classify::is_hitting(f) && classify::dyadic_sum_is_one(f) && k >= 1,
        low_var,
        surplus_bound,
        nm1_bound,
        even,
        s12,
        sed,
        dt,
        two_min,
        canonical,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(cl: &[&[i32]]) -> ClauseSet {
        ClauseSet::from_ints(cl).unwrap()
    }

    #[test]
    fn signed_perm_count() {
        assert_eq!(signed_perms(3).len(), 48);
        assert_eq!(signed_perms(0).len(), 1);
    }

    #[test]
    fn canonical_examples() {
        let a2 = transform::gen_a(2).unwrap();
        assert_eq!(canonical_form(&transform::gen_dt(2).unwrap()).unwrap(), canonical_form(&a2).unwrap());
        let f = transform::gen_f3();
        let flipped: ClauseSet = f
            .iter()
            .map(|c| Clause::new(c.lits().iter().map(|&x| !x)).unwrap())
            .collect();
        assert_eq!(canonical_form(&f).unwrap(), canonical_form(&flipped).unwrap());
        let renamed = cs(&[&[7, 9], &[-7, 3], &[7, -9, 3], &[-7, 9, -3], &[7, -9, -3], &[-7, -9, -3]]);
        assert!(is_isomorphic(&f, &renamed).unwrap());
        assert!(!is_isomorphic(&f, &transform::gen_f4()).unwrap());
        assert!(matches!(
            canonical_form(&transform::gen_a(7).unwrap()),
            Err(Error::TooManyVariables { n: 7, limit: 6 })
        ));
        assert_eq!(canonical_form(&ClauseSet::top()).unwrap(), ClauseSet::top());
    }

    #[test]
    fn fsue_chains_are_isomorphic() {
        let bot = cs(&[&[]]);
        let a = transform::fsue_chain(&bot, 5).unwrap();
        let mut b = bot;
        for v in [40, 12, 33, 7, 21] {
            b = transform::full_singular_unit_extension(&b, Lit::neg(v)).unwrap();
        }
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
    }

    #[test]
    fn packed_canonical_agrees_with_clause_level() {
        let p = Packed::new(3);
        let f = transform::gen_f3();
        let g = cs(&[&[2, 1], &[-2, 3], &[2, -1, 3], &[-2, 1, -3], &[2, -1, -3], &[-2, -1, -3]]);
        let pack = |f: &ClauseSet| {
            let mut m = [0; 4];
            for c in f {
                let code: usize = c
                    .lits()
                    .iter()
                    .map(|x| if x.is_pos() { 2 } else { 1 } * p.pow3[x.var() as usize - 1])
                    .sum();
                set_bit(&mut m, code);
            }
            m
        };
        assert_eq!(p.to_set(&pack(&f)), f);
        assert_eq!(p.canonical(&pack(&f)), p.canonical(&pack(&g)));
    }

    #[test]
    fn small_catalogs() {
        let c1 = enum_uclash(1, None).unwrap();
        assert_eq!(c1.entries.len(), 1);
        assert_eq!(c1.entries[0].clauses, cs(&[&[1], &[-1]]));
        let c2 = enum_uclash(2, None).unwrap();
        let sets: Vec<&ClauseSet> = c2.entries.iter().map(|e| &e.clauses).collect();
        assert!(sets.contains(&&canonical_form(&transform::gen_a(2).unwrap()).unwrap()));
        assert!(sets.contains(&&canonical_form(&cs(&[&[2], &[-1, -2], &[-2, 1]])).unwrap()));
        assert_eq!(c2.entries.len(), 2);
        assert!(enum_uclash(0, None).is_err());
        assert!(enum_uclash(5, None).is_err());
    }

    #[test]
    fn dual_enumerators_agree() {
        for n in 1..=3 {
            let closure: BTreeSet<ClauseSet> = enum_uclash(n, None).unwrap().entries.into_iter().map(|e| e.clauses).collect();
            assert_eq!(closure, enum_uclash_backtrack(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn cap_marks_partial() {
        let c = enum_uclash(3, Some(2)).unwrap();
        assert!(c.partial);
        assert_eq!(c.entries.len(), 2);
        assert!(!enum_uclash(3, None).unwrap().partial);
    }

    #[test]
    fn catalog_files_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cat = enum_uclash(3, None).unwrap();
        write_catalog(&cat, dir.path()).unwrap();
        assert_eq!(read_catalog(dir.path(), 3).unwrap(), cat);
        let (cnfs, _) = catalog_paths(dir.path(), 3);
        let text = fs::read_to_string(&cnfs).unwrap();
        fs::write(&cnfs, text.replacen("c id ", "c id 0", 1)).unwrap();
        assert!(matches!(read_catalog(dir.path(), 3), Err(Error::Catalog(_))));
    }

    #[test]
    fn small_catalog_invariants() {
        for n in 1..=3 {
            assert_eq!(check_catalog(&enum_uclash(n, None).unwrap()), vec![], "n = {n}");
        }
    }
}
