//! Integer sequences bounding the minimum variable degree: the non-Mersenne
//! numbers nM and their auxiliaries, nA, S_2, and the potential-degree-pair
//! operator `potprec` with the improved bound nM1.

use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// Largest k accepted by the closed forms.
pub const K_MAX: u64 = 1 << 57;
/// Largest k for which the recursion table may be grown.
pub const NM_REC_MAX: u64 = 1 << 24;

fn floor_log2(x: u64) -> u64 {
    debug_assert!(x > 0);
    63 - x.leading_zeros() as u64
}

fn check_k(k: u64, min: u64) -> Result<()> {
    if k < min {
        return Err(out_of_range(format!("k = {k} (need k >= {min})")));
    }
    if k > K_MAX {
        return Err(out_of_range(format!("k = {k} exceeds 2^57")));
    }
    Ok(())
}

/// nM(k) = k + ⌊log2(k + 1 + ⌊log2(k + 1)⌋)⌋.
pub fn nm(k: u64) -> Result<u64> {
    check_k(k, 1)?;
    Ok(nm_unchecked(k))
}

fn nm_unchecked(k: u64) -> u64 {
    k + floor_log2(k + 1 + floor_log2(k + 1))
}

static NM_TABLE: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();

/// nM(k) from the defining recursion `max_{2≤i≤k} min(2i, nM(k-i+1) + i)`,
/// memoised in a process-wide table.
///
/// `i ↦ i - nM(k-i+1)` is strictly increasing, so the maximum sits at the
/// crossover `i*` (the first i with `2i ≥ nM(k-i+1) + i`) or just before it;
/// the crossover is found by binary search.
pub fn nm_rec(k: u64) -> Result<u64> {
    check_k(k, 1)?;
    if k > NM_REC_MAX {
        return Err(out_of_range(format!("k = {k} exceeds the recursion table limit")));
    }
    let mut table = NM_TABLE.get_or_init(|| Mutex::new(vec![0, 2])).lock().unwrap();
    while (table.len() as u64) <= k {
        let kk = table.len();
        let v = nm_step(&table, kk);
        debug_assert!(v > table[kk - 1], "nM strictly increasing");
        table.push(v);
    }
    Ok(table[k as usize])
}

/// One recursion step; `t[j]` = nM(j) for 1 ≤ j < k.
fn nm_step(t: &[u64], k: usize) -> u64 {
    let f = |i: usize| i as i64 - t[k - i + 1] as i64;
    let (mut lo, mut hi) = (2usize, k);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if f(mid) >= 0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let i = lo;
    let at = t[k - i + 1] + i as u64;
    if i > 2 {
        at.max(2 * (i as u64 - 1))
    } else {
        at
    }
}

/// i(k): the smallest i ∈ [2, k] with i ≥ nM(k - i + 1).
pub fn nm_i(k: u64) -> Result<u64> {
    check_k(k, 2)?;
    let (mut lo, mut hi) = (2u64, k);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if mid >= nm_unchecked(k - mid + 1) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// i'(k) = k - i(k) + 1.
pub fn nm_iprime(k: u64) -> Result<u64> {
    Ok(k - nm_i(k)? + 1)
}

/// h(k) = nM(i'(k)).
pub fn nm_h(k: u64) -> Result<u64> {
    nm(nm_iprime(k)?)
}

/// k is a jump position (nM(k+1) - nM(k) = 2) iff k = 2^{m+1} - m - 2 for some m ≥ 1.
pub fn is_jump(k: u64) -> bool {
    (1..58u32).any(|m| (1u64 << (m + 1)) - m as u64 - 2 == k)
}

/// nA(k): the smallest n ≥ 0 with 2^n - n ≥ k.
pub fn n_a(k: u64) -> Result<u64> {
    check_k(k, 1)?;
    Ok((0u64..).find(|&n| (1u64 << n) - n >= k).expect("k ≤ 2^57"))
}

/// 1 + ⌊log2(k + ⌊log2 k⌋)⌋, equal to nA(k) for k ≥ 2.
pub fn n_a_closed(k: u64) -> Result<u64> {
    check_k(k, 2)?;
    Ok(1 + floor_log2(k + floor_log2(k)))
}

/// S_2(k): the least s with 2^k dividing s!, i.e. s - popcount(s) ≥ k.
pub fn s2(k: u64) -> Result<u64> {
    check_k(k, 1)?;
    Ok((k + 1..).find(|&s| s - s.count_ones() as u64 >= k).expect("unbounded scan"))
}

/// A bounds function `[a_1, ..., a_p]`: `f(k) = a_k` for k ≤ p, +∞ beyond.
///
/// Only the shape is validated (a_1 = 2, non-decreasing). That each a_k
/// really bounds the minimum variable degree at deficiency k is the
/// caller's responsibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsFunction {
    prefix: Vec<u64>,
}

impl BoundsFunction {
    pub fn new(prefix: Vec<u64>) -> Result<BoundsFunction> {
        match prefix.first() {
            None => return Err(Error::InvalidBoundsFunction("empty prefix".into())),
            Some(&a) if a != 2 => {
                return Err(Error::InvalidBoundsFunction(format!("a_1 = {a}, must be 2")))
            }
            _ => {}
        }
        if let Some(w) = prefix.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidBoundsFunction(format!(
                "a_{} = {} > a_{} = {}",
                w + 1,
                prefix[w],
                w + 2,
                prefix[w + 1]
            )));
        }
        Ok(BoundsFunction { prefix })
    }

    /// `[nM(1), ..., nM(p)]`.
    pub fn nm_prefix(p: usize) -> BoundsFunction {
        BoundsFunction { prefix: (1..=p as u64).map(nm_unchecked).collect() }
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    /// `None` stands for +∞.
    pub fn get(&self, k: u64) -> Option<u64> {
        if k == 0 {
            return None;
        }
        self.prefix.get(k as usize - 1).copied()
    }
}

/// A literal-degree pair `(e0, e1)` with 2 ≤ e0 ≤ e1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreePair {
    pub e0: u64,
    pub e1: u64,
}

/// Pairs `(e0, e1)` with `2 ≤ e0 ≤ e1 ≤ k`, `e0 + e1 = m` and
/// `f(k - e + 1) + e ≥ m` for both entries; an infinite value always passes.
fn potp_with(f: impl Fn(u64) -> Option<u64>, k: u64, m: u64) -> Vec<DegreePair> {
    let ok = |e: u64| f(k - e + 1).map_or(true, |v| v + e >= m);
    let lo = 2.max(m.saturating_sub(k));
    (lo..=m / 2)
        .map(|e0| DegreePair { e0, e1: m - e0 })
        .filter(|p| p.e1 <= k && ok(p.e0) && ok(p.e1))
        .collect()
}

fn potp_nonempty(f: impl Fn(u64) -> Option<u64>, k: u64, m: u64) -> bool {
    let ok = |e: u64| f(k - e + 1).map_or(true, |v| v + e >= m);
    let lo = 2.max(m.saturating_sub(k));
    (lo..=m / 2).any(|e0| ok(e0) && ok(m - e0))
}

/// Potential degree-pairs of `f` for deficiency k and minimum variable degree m.
pub fn potp(f: &BoundsFunction, k: u64, m: u64) -> Result<Vec<DegreePair>> {
    if k < 2 || m < 4 {
        return Err(out_of_range(format!("potp needs k >= 2 and m >= 4 (got k = {k}, m = {m})")));
    }
    check_k(k, 2)?;
    Ok(potp_with(|j| f.get(j), k, m))
}

/// Memoised evaluation of `potprec(f)`.
///
/// f'(1) = 2, and for k ≥ 2, f'(k) = min(m*, f(k)) with m* the largest
/// 4 ≤ m ≤ 2k such that potp_{f'}(k, m) is nonempty. Nonempty potp sets
/// are closed downwards in m and grow with k, so m* is found by scanning
/// upwards from m*(k-1).
#[derive(Clone, Debug)]
pub struct Potprec {
    base: BoundsFunction,
    values: Vec<u64>,
    mstar: Vec<u64>,
}

impl Potprec {
    pub fn new(base: BoundsFunction) -> Potprec {
        Potprec { base, values: vec![0, 2], mstar: vec![0, 2] }
    }

    pub fn base(&self) -> &BoundsFunction {
        &self.base
    }

    pub fn eval(&mut self, k: u64) -> Result<u64> {
        check_k(k, 1)?;
        if k > NM_REC_MAX {
            return Err(out_of_range(format!("k = {k} exceeds the recursion table limit")));
        }
        self.extend_to(k as usize);
        Ok(self.values[k as usize])
    }

    /// Values f'(1..=k).
    pub fn values(&mut self, k: u64) -> Result<Vec<u64>> {
        self.eval(k.max(1))?;
        Ok(self.values[1..=k as usize].to_vec())
    }

    fn extend_to(&mut self, k: usize) {
        while self.values.len() <= k {
            let kk = self.values.len() as u64;
            let vals = &self.values;
            let f = |j: u64| Some(vals[j as usize]);
            let mut m = self.mstar[kk as usize - 1].max(4);
            while m < 2 * kk && potp_nonempty(f, kk, m + 1) {
                m += 1;
            }
            debug_assert!(potp_nonempty(f, kk, m));
            let v = self.base.get(kk).map_or(m, |a| a.min(m));
            self.mstar.push(m);
            self.values.push(v);
        }
    }

    /// As a bounds function over 1..=k.
    pub fn as_bounds(&mut self, k: u64) -> Result<BoundsFunction> {
        BoundsFunction::new(self.values(k)?)
    }
}

/// f'(k) for a one-off evaluation of potprec(prefix).
pub fn potprec_eval(prefix: &BoundsFunction, k: u64) -> Result<u64> {
    Potprec::new(prefix.clone()).eval(k)
}

/// The base prefix of nM1.
pub const NM1_PREFIX: [u64; 6] = [2, 4, 5, 6, 8, 8];

static NM1: OnceLock<Mutex<Potprec>> = OnceLock::new();

/// nM1 = potprec([2, 4, 5, 6, 8, 8]), memoised process-wide.
pub fn nm1(k: u64) -> Result<u64> {
    NM1.get_or_init(|| {
        Mutex::new(Potprec::new(BoundsFunction::new(NM1_PREFIX.to_vec()).expect("valid prefix")))
    })
    .lock()
    .unwrap()
    .eval(k)
}

/// k ∈ {2^m - m + 1 : m ≥ 3}, where nM1 falls one below nM.
pub fn nm1_deviates(k: u64) -> bool {
    (3..58u32).any(|m| (1u64 << m) - m as u64 + 1 == k)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The defining recursion, literally: O(k) per value.
    fn nm_oracle(kmax: usize) -> Vec<u64> {
        let mut t = vec![0u64, 2];
        for k in 2..=kmax {
            let v = (2..=k).map(|i| (2 * i as u64).min(t[k - i + 1] + i as u64)).max().unwrap();
            t.push(v);
        }
        t
    }

    /// potprec with m* found by a downward scan from 2k.
    fn potprec_oracle(base: &BoundsFunction, kmax: u64) -> Vec<u64> {
        let mut vals = vec![0u64, 2];
        for k in 2..=kmax {
            let f = |j: u64| Some(vals[j as usize]);
            let m = (4..=2 * k).rev().find(|&m| !potp_with(f, k, m).is_empty()).unwrap();
            vals.push(base.get(k).map_or(m, |a| a.min(m)));
        }
        vals[1..].to_vec()
    }

    #[test]
    fn nm_examples() {
        let got: Vec<u64> = (1..=5).map(|k| nm(k).unwrap()).collect();
        assert_eq!(got, [2, 4, 5, 6, 8]);
        assert_eq!([nm(11), nm(12), nm(27), nm(58)].map(|x| x.unwrap()), [14, 16, 32, 64]);
        assert_eq!(nm(1024 - 10).unwrap(), 1024);
        assert!(nm(0).is_err());
        assert!(nm_rec(0).is_err());
    }

    #[test]
    fn nm_rec_matches_oracle() {
        let t = nm_oracle(2000);
        for k in 1..=2000u64 {
            assert_eq!(nm_rec(k).unwrap(), t[k as usize], "k = {k}");
            assert_eq!(nm(k).unwrap(), t[k as usize], "k = {k}");
        }
    }

    #[test]
    fn aux_examples() {
        let row = |k| (nm_i(k).unwrap(), nm_iprime(k).unwrap(), nm_h(k).unwrap());
        assert_eq!(row(5), (4, 2, 4));
        assert_eq!(row(7), (5, 3, 5));
        assert_eq!(row(11), (8, 4, 6));
        assert!(nm_i(1).is_err());
        // direct definition
        for k in 2..=300u64 {
            let i = (2..=k).find(|&i| i >= nm(k - i + 1).unwrap()).unwrap();
            assert_eq!(nm_i(k).unwrap(), i);
        }
    }

    #[test]
    fn jumps_na_s2() {
        let j: Vec<u64> = (1..=60).filter(|&k| is_jump(k)).collect();
        assert_eq!(j, [1, 4, 11, 26, 57]);
        for k in 6..=12 {
            assert_eq!(n_a(k).unwrap(), 4);
        }
        for k in 13..=27 {
            assert_eq!(n_a(k).unwrap(), 5);
        }
        assert_eq!(n_a(1).unwrap(), 0);
        for k in 2..=5000 {
            assert_eq!(n_a(k).unwrap(), n_a_closed(k).unwrap());
        }
        assert_eq!([1, 2, 4, 5].map(|k| s2(k).unwrap()), [2, 4, 6, 8]);
        // 2-adic valuation of s! computed by repeated division
        for k in 1..=200u64 {
            let v = |s: u64| (1..).map(|j| s >> j).take_while(|&q| q > 0).sum::<u64>();
            let s = (1..).find(|&s| v(s) >= k).unwrap();
            assert_eq!(s2(k).unwrap(), s);
        }
    }

    #[test]
    fn bounds_function_validation() {
        assert!(BoundsFunction::new(vec![]).is_err());
        assert!(BoundsFunction::new(vec![3]).is_err());
        assert!(BoundsFunction::new(vec![2, 5, 4]).is_err());
        let f = BoundsFunction::new(vec![2, 4, 5]).unwrap();
        assert_eq!((f.get(3), f.get(4)), (Some(5), None));
    }

    #[test]
    fn potp_examples() {
        let f = BoundsFunction::new(vec![2, 4, 5]).unwrap();
        assert!(potp(&f, 4, 7).unwrap().is_empty());
        assert_eq!(
            potp(&f, 4, 6).unwrap(),
            [DegreePair { e0: 2, e1: 4 }, DegreePair { e0: 3, e1: 3 }]
        );
        assert_eq!(potp(&BoundsFunction::nm_prefix(5), 6, 9).unwrap(), [DegreePair { e0: 4, e1: 5 }]);
        assert_eq!(potp(&BoundsFunction::nm_prefix(12), 13, 17).unwrap(), [DegreePair { e0: 8, e1: 9 }]);
        let g = BoundsFunction::new(vec![2, 4, 5, 6, 8, 8]).unwrap();
        assert!(potp(&g, 13, 17).unwrap().is_empty());
        for k in 2..20 {
            assert_eq!(potp(&f, k, 4).unwrap(), [DegreePair { e0: 2, e1: 2 }]);
            assert!(potp(&f, k, 2 * k + 1).unwrap().is_empty());
        }
        assert!(potp(&f, 1, 4).is_err());
        assert!(potp(&f, 4, 3).is_err());
    }

    #[test]
    fn potprec_examples() {
        let mut p = Potprec::new(BoundsFunction::new(vec![2]).unwrap());
        assert_eq!(p.values(12).unwrap(), [2, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14, 16]);
        let g = BoundsFunction::new(NM1_PREFIX.to_vec()).unwrap();
        assert_eq!(potprec_eval(&g, 6).unwrap(), 8);
        assert_eq!(potprec_eval(&g, 7).unwrap(), 10);
        let f = BoundsFunction::new(vec![2, 4, 5]).unwrap();
        assert_eq!(potprec_eval(&f, 4).unwrap(), 6);
    }

    #[test]
    fn potprec_matches_downward_oracle() {
        for base in [vec![2], NM1_PREFIX.to_vec(), vec![2, 3, 3, 5, 9], vec![2, 2, 2]] {
            let b = BoundsFunction::new(base).unwrap();
            let want = potprec_oracle(&b, 300);
            assert_eq!(Potprec::new(b).values(300).unwrap(), want);
        }
    }

    #[test]
    fn nm1_table() {
        let want = [
            2, 4, 5, 6, 8, 8, 10, 11, 12, 13, 14, 16, 16, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27,
            28, 29, 30, 32, 32, 34, 35,
        ];
        let got: Vec<u64> = (1..=30).map(|k| nm1(k).unwrap()).collect();
        assert_eq!(got, want);
        for k in 1..=2000 {
            let d = nm(k).unwrap() - nm1(k).unwrap();
            assert_eq!(d == 1, nm1_deviates(k), "k = {k}");
            assert!(d <= 1);
        }
    }
}
