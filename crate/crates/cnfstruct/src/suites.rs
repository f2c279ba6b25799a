//! Verification suites: one check per reproducible claim, shared by the
//! `verify` command and the acceptance test.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{self, BoundsFunction, DegreePair, Potprec};
use crate::classify::{self, Limits};
use crate::dimacs;
use crate::enumerate::{self, Catalog};
use crate::error::{out_of_range, Error, Result};
use crate::matching;
use crate::model::{Clause, ClauseSet, Lit, MultiClauseSet};
use crate::reduce;
use crate::transform;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u64,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{:>2}] {} ({} ms): {}", self.id, self.name, self.millis, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tables,
    Potprec,
    Sequences,
    Generators,
    Catalogs,
    Reduction,
    Dimacs,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] =
        ["tables", "potprec", "sequences", "generators", "catalogs", "reduction", "dimacs", "all"];

    pub fn checks(self) -> &'static [u32] {
        match self {
            Suite::Tables => &[1, 2, 3],
            Suite::Potprec => &[4, 5],
            Suite::Sequences => &[6, 13],
            Suite::Generators => &[7, 8, 12],
            Suite::Catalogs => &[9, 10],
            Suite::Reduction => &[11],
            Suite::Dimacs => &[14],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "tables" => Suite::Tables,
            "potprec" => Suite::Potprec,
            "sequences" => Suite::Sequences,
            "generators" => Suite::Generators,
            "catalogs" => Suite::Catalogs,
            "reduction" => Suite::Reduction,
            "dimacs" => Suite::Dimacs,
            "all" => Suite::All,
            _ => return Err(out_of_range(format!("unknown suite `{s}` (one of {})", Suite::NAMES.join(", ")))),
        })
    }
}

/// Parameters shared by the suites.
#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub limits: Limits,
    pub fuzz_count: usize,
    pub fuzz_max_n: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, limits: Limits::default(), fuzz_count: 10_000, fuzz_max_n: 40 }
    }
}

/// Runs checks, computing the catalogs at most once.
pub struct Runner {
    pub config: Config,
    catalogs: Option<Result<Vec<Catalog>, String>>,
}

impl Runner {
    pub fn new(config: Config) -> Self {
        Runner { config, catalogs: None }
    }

    pub fn run_suite(&mut self, suite: Suite) -> Vec<Check> {
        suite.checks().iter().map(|&id| self.run(id)).collect()
    }

    pub fn run(&mut self, id: u32) -> Check {
        let start = Instant::now();
        let (name, outcome) = match id {
            1 => ("nm table", nm_rows()),
            2 => ("i, i', h table", i_h_rows()),
            3 => ("nm1 table and deviations", nm1_rows()),
            4 => ("potprec fixed points", potprec_props(self.config.seed)),
            5 => ("potp spot values", potp_spots()),
            6 => ("jump set", jumps()),
            7 => ("generator certification", generators()),
            8 => ("sharpness chain", sharpness()),
            9 => ("desk-scale tables", self.desk()),
            10 => ("catalog invariants", self.catalog_invariants()),
            11 => ("reduction pipeline", reduction(&self.config)),
            12 => ("matching-lean construction", mlean()),
            13 => ("S2 sandwich", s2_sandwich()),
            14 => ("DIMACS round-trip", self.roundtrip()),
            _ => ("unknown", Err(format!("no check {id}"))),
        };
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Check { id, name, passed, detail, millis: start.elapsed().as_millis() as u64 }
    }

    fn catalogs(&mut self) -> Result<&[Catalog], String> {
        let n_max = self.config.limits.n as u32;
        let cats = self.catalogs.get_or_insert_with(|| {
            (1..=n_max)
                .map(|n| enumerate::enum_uclash_limited(n, None, n_max))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| e.to_string())
        });
        cats.as_deref().map_err(Clone::clone)
    }

    fn desk(&mut self) -> Outcome {
        let start = Instant::now();
        let n_max = self.config.limits.n;
        if n_max < 4 {
            return Err(format!("the desk tables need catalogs up to n = 4, limit is n = {n_max}"));
        }
        let cats = self.catalogs()?;
        let enum_ms = start.elapsed().as_millis();
        if let Some(c) = cats.iter().find(|c| c.partial) {
            return Err(format!("catalog n = {} is partial", c.var_count));
        }
        let rows = enumerate::desk_tables_from(cats);
        let col = |j: usize| -> Vec<u64> {
            (1..=6)
                .map(|k| rows.iter().find(|r| r.0 == k).map_or(0, |r| if j == 1 { r.1 } else { r.2 }))
                .collect()
        };
        expect_eq("desk minnM^h(1..6)", &col(1)[..], &[2, 4, 5, 6, 8, 8])?;
        expect_eq("desk maxsmar^h(1..6)", &col(2)[..], &[2, 4, 4, 6, 8, 8])?;
        let mut counts = vec![];
        for n in 1..=3u32 {
            let closure: BTreeSet<ClauseSet> =
                cats[n as usize - 1].entries.iter().map(|e| e.clauses.clone()).collect();
            let oracle = enumerate::enum_uclash_backtrack(n).map_err(|e| e.to_string())?;
            if closure != oracle {
                return Err(format!("n = {n}: closure has {} classes, backtracking {}", closure.len(), oracle.len()));
            }
            counts.push(closure.len());
        }
        let sizes: Vec<usize> = cats.iter().map(|c| c.entries.len()).collect();
        Ok(format!(
            "n <= {n_max}: classes {sizes:?}, dual enumerators agree for n <= 3 {counts:?}, enumeration {enum_ms} ms"
        ))
    }

    fn catalog_invariants(&mut self) -> Outcome {
        let cats = self.catalogs()?;
        let mut total = 0;
        let mut bad = vec![];
        for c in cats {
            total += c.entries.len();
            bad.extend(enumerate::check_catalog(c));
        }
        if bad.is_empty() {
            Ok(format!("{total} entries x {} invariants, 0 violations", enumerate::INVARIANTS.len()))
        } else {
            let shown: Vec<String> = bad.iter().take(10).map(|v| format!("{}:{}", v.id, v.invariant)).collect();
            Err(format!("{} violations: {}", bad.len(), shown.join(", ")))
        }
    }

    fn roundtrip(&mut self) -> Outcome {
        let mut sets: Vec<ClauseSet> = family_samples().map_err(|e| e.to_string())?;
        for c in self.catalogs()? {
            sets.extend(c.entries.iter().map(|e| e.clauses.clone()));
        }
        let mut multi: Vec<MultiClauseSet> = sets.iter().map(ClauseSet::to_multi).collect();
        let mut dup = transform::gen_f3().to_multi();
        dup.add(Clause::from_ints(&[1, 2]).map_err(|e| e.to_string())?, 2);
        dup.add(Clause::bottom(), 3);
        multi.extend([dup, MultiClauseSet::top()]);
        for f in &multi {
            let text = dimacs::write_dimacs(f);
            let g = dimacs::parse_dimacs(&text, true).map_err(|e| format!("{e} on\n{text}"))?;
            if g != *f || dimacs::write_dimacs(&g) != text {
                return Err(format!("round-trip changed\n{text}"));
            }
        }
        Ok(format!("{} clause-sets byte-stable", multi.len()))
    }
}

type Outcome = std::result::Result<String, String>;

fn expect_eq<T: PartialEq + fmt::Debug + ?Sized>(what: &str, got: &T, want: &T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn nm_rows() -> Outcome {
    let ks = [1, 2, 3, 4, 5, 11, 12, 26, 27, 57, 58];
    let got: Vec<u64> = ks.iter().map(|&k| bounds::nm(k)).collect::<Result<_>>().map_err(|e| e.to_string())?;
    expect_eq("nm", &got[..], &[2, 4, 5, 6, 8, 14, 16, 30, 32, 62, 64])?;
    for k in 1..=10_000 {
        let (a, b) = (ok(bounds::nm(k))?, ok(bounds::nm_rec(k))?);
        if a != b {
            return Err(format!("nm({k}) = {a} but the recursion gives {b}"));
        }
    }
    Ok("11 spot values; closed form = recursion for k <= 10^4".into())
}

/// Rows `(k, nM, ΔnM, i, Δi, i', Δi', h, Δh, i - h)`.
pub const I_H_TABLE: [[i64; 10]; 11] = [
    [2, 4, 1, 2, 1, 1, 0, 2, 0, 0],
    [3, 5, 1, 3, 1, 1, 0, 2, 0, 1],
    [4, 6, 2, 4, 0, 1, 1, 2, 2, 2],
    [5, 8, 1, 4, 1, 2, 0, 4, 0, 0],
    [6, 9, 1, 5, 0, 2, 1, 4, 1, 1],
    [7, 10, 1, 5, 1, 3, 0, 5, 0, 0],
    [8, 11, 1, 6, 0, 3, 1, 5, 1, 1],
    [9, 12, 1, 6, 1, 4, 0, 6, 0, 0],
    [10, 13, 1, 7, 1, 4, 0, 6, 0, 1],
    [11, 14, 2, 8, 0, 4, 1, 6, 2, 2],
    [12, 16, 1, 8, 1, 5, 0, 8, 0, 0],
];

fn i_h_rows() -> Outcome {
    let row = |k: u64| -> Result<[i64; 4]> {
        Ok([bounds::nm(k)?, bounds::nm_i(k)?, bounds::nm_iprime(k)?, bounds::nm_h(k)?].map(|x| x as i64))
    };
    for want in I_H_TABLE {
        let k = want[0] as u64;
        let (a, b) = (ok(row(k))?, ok(row(k + 1))?);
        let got = [
            k as i64,
            a[0],
            b[0] - a[0],
            a[1],
            b[1] - a[1],
            a[2],
            b[2] - a[2],
            a[3],
            b[3] - a[3],
            a[1] - a[3],
        ];
        expect_eq(&format!("row k = {k}"), &got, &want)?;
    }
    Ok("rows k = 2..12 with forward differences".into())
}

pub const NM1_TABLE: [u64; 30] = [
    2, 4, 5, 6, 8, 8, 10, 11, 12, 13, 14, 16, 16, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 32,
    32, 34, 35,
];

fn nm1_rows() -> Outcome {
    let got: Vec<u64> = (1..=30).map(bounds::nm1).collect::<Result<_>>().map_err(|e| e.to_string())?;
    expect_eq("nm1(1..30)", &got[..], &NM1_TABLE)?;
    let mut dev = vec![];
    for k in 1..=10_000 {
        if ok(bounds::nm1(k))? != ok(bounds::nm(k))? {
            dev.push(k);
        }
    }
    let want: Vec<u64> = (3..=13u32).map(|m| (1u64 << m) - m as u64 + 1).collect();
    expect_eq("deviation set", &dev, &want)?;
    Ok(format!("30 values; deviations {dev:?}"))
}

fn random_prefix(rng: &mut ChaCha8Rng) -> Vec<u64> {
    let len = rng.gen_range(1..=40);
    let mut p = vec![2];
    while p.len() < len {
        let last = *p.last().unwrap();
        p.push(last + rng.gen_range(0..=3));
    }
    p
}

fn potprec_props(seed: u64) -> Outcome {
    const K: u64 = 500;
    let fixed = ok(Potprec::new(ok(BoundsFunction::new(vec![2]))?).values(2000))?;
    for (k, v) in (1..=2000).zip(&fixed) {
        if ok(bounds::nm(k))? != *v {
            return Err(format!("potprec([2])({k}) = {v} != nm({k})"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..100 {
        let p = random_prefix(&mut rng);
        let f = ok(BoundsFunction::new(p.clone()))?;
        let fp = ok(Potprec::new(f.clone()).values(K))?;
        // intensive: f' <= f wherever f is finite
        if let Some(k) = (1..=p.len()).find(|&k| fp[k - 1] > p[k - 1]) {
            return Err(format!("trial {trial}: not intensive at k = {k} for {p:?}"));
        }
        let fpp = ok(Potprec::new(ok(BoundsFunction::new(fp.clone()))?).values(K))?;
        if fpp != fp {
            return Err(format!("trial {trial}: not idempotent for {p:?}"));
        }
        // monotone: raise the prefix pointwise (keeping its shape), and truncate it
        let mut bump = 0;
        let q: Vec<u64> = p
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if i > 0 && rng.gen_bool(0.3) {
                    bump += 1;
                }
                a + bump
            })
            .collect();
        let cut = p[..rng.gen_range(1..=p.len())].to_vec();
        for g in [q, cut] {
            let gp = ok(Potprec::new(ok(BoundsFunction::new(g.clone()))?).values(K))?;
            if let Some(k) = (0..K as usize).find(|&k| fp[k] > gp[k]) {
                return Err(format!("trial {trial}: not monotone at k = {} for {p:?} <= {g:?}", k + 1));
            }
        }
    }
    Ok("potprec([2]) = nm for k <= 2000; 100 random prefixes to k = 500".into())
}

fn potp_spots() -> Outcome {
    let f = ok(BoundsFunction::new(vec![2, 4, 5]))?;
    let dp = |e0, e1| DegreePair { e0, e1 };
    expect_eq("potp([2,4,5],4,7)", &ok(bounds::potp(&f, 4, 7))?, &vec![])?;
    expect_eq("potp([2,4,5],4,6)", &ok(bounds::potp(&f, 4, 6))?, &vec![dp(2, 4), dp(3, 3)])?;
    let nm = BoundsFunction::nm_prefix(20);
    expect_eq("potp(nm,6,9)", &ok(bounds::potp(&nm, 6, 9))?, &vec![dp(4, 5)])?;
    Ok("3 spot values".into())
}

fn jumps() -> Outcome {
    let mut jumps = vec![];
    for k in 1..=10_000 {
        match ok(bounds::nm(k + 1))? - ok(bounds::nm(k))? {
            1 => {}
            2 => jumps.push(k),
            d => return Err(format!("Δnm({k}) = {d}")),
        }
    }
    let want: Vec<u64> = (1..14u32).map(|m| (1u64 << (m + 1)) - m as u64 - 2).filter(|&k| k <= 10_000).collect();
    expect_eq("jump set", &jumps, &want)?;
    Ok(format!("{} jumps up to 10^4, Δnm ∈ {{1, 2}}", jumps.len()))
}

fn s2_sandwich() -> Outcome {
    for k in 1..=10_000 {
        let (s, n) = (ok(bounds::s2(k))?, ok(bounds::nm(k))?);
        if !(k + 1 <= s && s <= n) {
            return Err(format!("k = {k}: s2 = {s}, nm = {n}"));
        }
    }
    Ok("k + 1 <= s2(k) <= nm(k) for k <= 10^4".into())
}

/// δ, σ, minvdeg, nfc of a clause-set.
fn profile(f: &ClauseSet) -> (i64, i64, Option<u64>, u64) {
    let m = f.measures();
    (m.delta, matching::surplus(&f.to_multi()).value, m.minvdeg, m.nfc)
}

fn generators() -> Outcome {
    let flag = |ok: bool, what: String| if ok { Ok(()) } else { Err(what) };
    for n in 1..=4u32 {
        let f = ok(transform::gen_a(n))?;
        let (d, s, mv, nfc) = profile(&f);
        let full = 1i64 << n;
        expect_eq(&format!("A({n}) (δ, σ, minvdeg, nfc)"), &(d, s, mv, nfc), &(full - n as i64, full - n as i64, Some(full as u64), full as u64))?;
        flag(classify::is_unsat_hitting(&f) && classify::is_mu(&f), format!("A({n}) not UHIT/MU"))?;
        if n <= 3 {
            flag(classify::is_saturated_mu(&f) && classify::is_marginal_mu(&f), format!("A({n}) not saturated and marginal"))?;
        }
    }
    for n in 2..=5u32 {
        let f = ok(transform::gen_dt(n))?;
        let (d, s, mv, _) = profile(&f);
        expect_eq(&format!("DT({n}) (δ, σ, minvdeg)"), &(d, s, mv), &(2, 2, Some(4)))?;
        flag(classify::is_saturated_mu(&f), format!("DT({n}) not SMU"))?;
        flag(transform::singular_vars(&f).is_empty(), format!("DT({n}) singular"))?;
        flag(classify::is_hitting(&f) == (n <= 3), format!("DT({n}) hitting flag"))?;
    }
    for n in 1..=6u32 {
        let f = ok(transform::gen_m(n))?;
        let (d, s, mv, nfc) = profile(&f);
        expect_eq(&format!("M({n}) (δ, σ, minvdeg, nfc)"), &(d, s, mv, nfc), &(1, 1, Some(n as u64 + 1), n as u64 + 1))?;
        flag(matching::is_matching_lean(&f.to_multi()), format!("M({n}) not matching-lean"))?;
        flag(classify::is_hitting(&f), format!("M({n}) not hitting"))?;
        flag(classify::is_satisfiable_set(&f) == (n >= 2), format!("M({n}) satisfiability"))?;
    }
    // F3, F4 reach nm(δ); the δ = 6 witness reaches nm1(6) = nm(6) - 1
    let named = [
        ("F3", transform::gen_f3(), 3, 5, 4, ok(bounds::nm(3))?),
        ("F4", transform::gen_f4(), 4, 6, 6, ok(bounds::nm(4))?),
        ("def6", transform::gen_def6_witness(), 6, 8, 8, ok(bounds::nm1(6))?),
    ];
    for (name, f, k, mv, nfc, bound) in named {
        let (d, _, m, c) = profile(&f);
        expect_eq(&format!("{name} (δ, minvdeg, nfc)"), &(d, m, c), &(k, Some(mv), nfc))?;
        flag(mv == bound, format!("{name}: minvdeg {mv} does not reach {bound}"))?;
        flag(classify::is_unsat_hitting(&f) && classify::is_mu(&f), format!("{name} not UHIT/MU"))?;
        flag(classify::dyadic_sum_is_one(&f), format!("{name} dyadic sum"))?;
    }
    Ok("A(1..4), DT(2..5), M(1..6), F3, F4, def6".into())
}

fn sharpness() -> Outcome {
    for k in 1..=20u64 {
        let f = ok(transform::gen_vmu_sharp(k))?;
        let (d, s, mv, _) = profile(&f);
        expect_eq(&format!("k = {k} (δ, σ, minvdeg)"), &(d, s, mv), &(k as i64, k as i64, Some(ok(bounds::nm(k))?)))?;
        if classify::is_satisfiable_set(&f) {
            return Err(format!("k = {k}: satisfiable"));
        }
        if k <= 8 && !classify::is_vmu(&f) {
            return Err(format!("k = {k}: not VMU"));
        }
    }
    Ok("k = 1..20 sharp, VMU for k <= 8".into())
}

fn mlean() -> Outcome {
    for k in 1..=6u64 {
        for big_k in 1..=8u32 {
            let f = ok(transform::gen_mlean_highdeg(k, big_k))?;
            let tag = format!("k = {k}, K = {big_k}");
            expect_eq(&format!("{tag}: δ"), &f.delta(), &(k as i64))?;
            if !matching::is_matching_lean(&f.to_multi()) {
                return Err(format!("{tag}: not matching-lean"));
            }
            if let Some(v) = f.vars().into_iter().find(|&v| f.degrees(v).0 < big_k as u64) {
                return Err(format!("{tag}: ldeg({v}) = {}", f.degrees(v).0));
            }
            if k >= 2 && classify::is_satisfiable_set(&f) {
                return Err(format!("{tag}: satisfiable"));
            }
        }
    }
    Ok("k = 1..6, K = 1..8".into())
}

/// One deterministic sample of every generator family.
pub fn family_samples() -> Result<Vec<ClauseSet>> {
    let mut out = vec![transform::gen_f3(), transform::gen_f4(), transform::gen_def6_witness()];
    for n in 0..=4 {
        out.push(transform::gen_a(n)?);
    }
    for n in 2..=5 {
        out.push(transform::gen_dt(n)?);
    }
    for n in 1..=6 {
        out.push(transform::gen_m(n)?);
    }
    for k in 1..=8 {
        out.push(transform::gen_uclash(k, bounds::n_a(k)? as u32 + 1)?);
        out.push(transform::gen_vmu_sharp(k)?);
        out.push(transform::gen_mlean_highdeg(k.min(4), 3)?);
    }
    out.push(transform::fsue_chain(&ClauseSet::new([Clause::bottom()]), 4)?);
    Ok(out)
}

/// Instance `index` of the seeded fuzz corpus: 1 ≤ n ≤ max_n variables,
/// clause/variable ratio in [0.3, 8), clause widths up to a per-instance
/// maximum in 1..=5, repeated clauses allowed. Instances `4i + 2` are
/// planted (all clauses agree with a hidden total assignment); instances
/// `4i + 3` also contain a renamed, sign-flipped copy of M(V) for a random V.
pub fn fuzz_instance(seed: u64, index: u64, max_n: u32) -> MultiClauseSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n = rng.gen_range(1..=max_n);
    let ratio: f64 = rng.gen_range(0.3..8.0);
    let width = rng.gen_range(1..=5u32).min(n);
    let c = ((ratio * n as f64).round() as usize).max(1);
    let planted: Option<Vec<bool>> = (index % 4 == 2).then(|| (0..=n).map(|_| rng.gen_bool(0.5)).collect());
    let mut f = MultiClauseSet::top();
    if index % 4 == 3 && n >= 2 {
        let mut vars: Vec<u32> = (1..=n).collect();
        let size = rng.gen_range(2..=n.min(8)) as usize;
        let (picked, _) = vars.partial_shuffle(&mut rng, size);
        let flips: Vec<bool> = picked.iter().map(|_| rng.gen_bool(0.5)).collect();
        let block = transform::gen_m(size as u32).unwrap();
        for c in &block {
            let lits = c.lits().iter().map(|x| {
                let i = x.var() as usize - 1;
                Lit::from_var(picked[i], x.is_pos() != flips[i])
            });
            f.add(Clause::new(lits).unwrap(), 1);
        }
    }
    for _ in 0..c {
        let w = rng.gen_range(1..=width);
        let mut vars = BTreeSet::new();
        while vars.len() < w as usize {
            vars.insert(rng.gen_range(1..=n));
        }
        let mut lits: Vec<Lit> = vars.into_iter().map(|v| Lit::from_var(v, rng.gen_bool(0.5))).collect();
        if let Some(model) = &planted {
            if !lits.iter().any(|x| model[x.var() as usize] == x.is_pos()) {
                let j = rng.gen_range(0..lits.len());
                lits[j] = !lits[j];
            }
        }
        let clause = Clause::new(lits).unwrap();
        f.add(clause, 1);
    }
    f
}

fn reduction(cfg: &Config) -> Outcome {
    let sat_limit = 14;
    let mut stats = [0usize; 3]; // surplus steps, sat-checked, witnesses
    for i in 0..cfg.fuzz_count as u64 {
        let f = fuzz_instance(cfg.seed, i, cfg.fuzz_max_n);
        let small = f.n() <= sat_limit;
        let t = reduce::autarky_reduce(&f, small, sat_limit);
        let r = &t.result;
        if !(r.is_top() || *r == MultiClauseSet::from_clauses([Clause::bottom()]) || reduce::reduced_bound_holds(r)) {
            return Err(format!("instance {i}: postcondition fails on\n{}", dimacs::write_dimacs(r)));
        }
        if r.entries().any(|(c, _)| f.multiplicity(c) == 0) {
            return Err(format!("instance {i}: result is not a sub-clause-set"));
        }
        if !reduce::verify_trace(&f, &t) {
            return Err(format!("instance {i}: trace does not replay"));
        }
        stats[0] += t.surplus_steps();
        if small {
            stats[1] += 1;
            if classify::is_satisfiable(r) != classify::is_satisfiable(&f) {
                return Err(format!("instance {i}: satisfiability changed"));
            }
            for s in &t.steps {
                if let reduce::ReductionStep::Surplus { witness, .. } = s {
                    if witness.is_none() {
                        return Err(format!("instance {i}: no witness autarky for a surplus step"));
                    }
                    stats[2] += 1;
                }
            }
        }
    }
    let mlcr = MultiClauseSet::from_ints(&[&[1, 2], &[-1, 2, -3], &[-2, 3], &[1, -2, -3]]).map_err(|e| e.to_string())?;
    let t = reduce::autarky_reduce(&mlcr, true, sat_limit);
    let witnessed = t.steps.iter().any(|s| matches!(s, reduce::ReductionStep::Surplus { witness: Some(w), .. } if reduce::verify_autarky(&mlcr, w)));
    if !t.result.is_top() || !witnessed || !reduce::verify_trace(&mlcr, &t) {
        return Err("MLCR example does not reduce to ⊤ with a verified witness".into());
    }
    Ok(format!(
        "{} instances (seed {}), {} surplus steps, {} sat-checked, {} witness autarkies; MLCR example -> ⊤",
        cfg.fuzz_count, cfg.seed, stats[0], stats[1], stats[2]
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for name in Suite::NAMES {
            assert!(name.parse::<Suite>().is_ok());
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn fuzz_is_deterministic() {
        assert_eq!(fuzz_instance(3, 17, 40), fuzz_instance(3, 17, 40));
        assert_ne!(fuzz_instance(3, 17, 40), fuzz_instance(3, 18, 40));
        for i in 0..50 {
            assert!(fuzz_instance(0, i, 12).n() <= 12);
        }
    }

    #[test]
    fn cheap_checks_pass() {
        let mut r = Runner::new(Config { fuzz_count: 200, ..Config::default() });
        for id in [2, 5, 7, 11, 12, 14] {
            let c = r.run(id);
            assert!(c.passed, "{c}");
        }
    }
}
