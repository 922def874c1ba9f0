//! Minimum-distance and weight-hierarchy bounds computed from an [`HStar`].
//!
//! All indices `i`, `r`, `j` are 1-based, matching `m_1 < ... < m_n`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hstar::HStar;
use crate::semigroup::NumericalSemigroup;

/// Default node cap for the generalized-Hamming-weight search.
pub const DEFAULT_GHW_CAP: u64 = 10_000_000;

fn check_index(hs: &HStar, i: usize) -> Result<()> {
    if i == 0 || i > hs.n() {
        return Err(Error::IndexOutOfRange { index: i, max: hs.n() });
    }
    Ok(())
}

fn require_isometry_dual(hs: &HStar) -> Result<()> {
    if !hs.is_isometry_dual() {
        return Err(Error::NotIsometryDual);
    }
    Ok(())
}

/// `Λ*_i = (m_i + H) ∩ H*`, ascending.
pub fn lambda_star(hs: &HStar, i: usize) -> Result<Vec<i64>> {
    check_index(hs, i)?;
    Ok(lambda_unchecked(hs, i))
}

fn lambda_unchecked(hs: &HStar, i: usize) -> Vec<i64> {
    let mi = hs.m(i);
    let s = hs.semigroup();
    hs.members()
        .iter()
        .copied()
        .filter(|&m| s.contains(m - mi))
        .collect()
}

/// Fixed-width bitset over member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IndexSet(Vec<u64>);

impl IndexSet {
    fn new(len: usize) -> Self {
        IndexSet(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn union_count(&self, other: &Self, out: &mut Self) -> usize {
        let mut total = 0;
        for ((o, a), b) in out.0.iter_mut().zip(&self.0).zip(&other.0) {
            *o = a | b;
            total += o.count_ones() as usize;
        }
        total
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// All sets `Λ*_1, ..., Λ*_n` of one [`HStar`].
#[derive(Debug, Clone)]
pub struct LambdaProfile {
    sets: Vec<Vec<i64>>,
    counts: Vec<usize>,
    bits: Vec<IndexSet>,
}

impl LambdaProfile {
    pub fn new(hs: &HStar) -> Self {
        let n = hs.n();
        let sets: Vec<Vec<i64>> = (1..=n).into_par_iter().map(|i| lambda_unchecked(hs, i)).collect();
        let counts = sets.iter().map(Vec::len).collect();
        let bits = sets
            .iter()
            .map(|set| {
                let mut b = IndexSet::new(n);
                for m in set {
                    b.insert(hs.dimension_at(*m) - 1);
                }
                b
            })
            .collect();
        Self { sets, counts, bits }
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    /// `Λ*_i`, for 1-based `i`.
    pub fn set(&self, i: usize) -> &[i64] {
        &self.sets[i - 1]
    }

    /// `(#Λ*_1, ..., #Λ*_n)`.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Running minimum of the counts: entry `i - 1` is `d*(i)`.
    pub fn d_star_sequence(&self) -> Vec<usize> {
        self.counts
            .iter()
            .scan(usize::MAX, |acc, &c| {
                *acc = (*acc).min(c);
                Some(*acc)
            })
            .collect()
    }

    /// Every `δ` in `1..=n` for which the sequence is monotone.
    pub fn monotone_deltas(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&d| is_monotone(&self.counts, d)).collect()
    }

    /// `d*_r(i)`: the smallest union of `r` of the sets `Λ*_1..Λ*_i`.
    ///
    /// Depth-first over `j_1 < ... < j_r`, abandoning a branch as soon as its
    /// partial union is no smaller than the best complete union found.
    pub fn ghw_bound(&self, i: usize, r: usize, cap: u64) -> Result<usize> {
        let n = self.n();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        if r == 0 || r > i {
            return Err(Error::IndexOutOfRange { index: r, max: i });
        }
        // The last r sets form a valid starting incumbent.
        let mut seed = IndexSet::new(n);
        for j in i - r..i {
            let prev = seed.clone();
            prev.union_count(&self.bits[j], &mut seed);
        }
        let mut search = GhwSearch {
            bits: &self.bits,
            i,
            r,
            cap,
            nodes: 0,
            best: seed.len(),
            scratch: vec![IndexSet::new(n); r + 1],
        };
        search.descend(0, 0)?;
        Ok(search.best)
    }
}

struct GhwSearch<'a> {
    bits: &'a [IndexSet],
    i: usize,
    r: usize,
    cap: u64,
    nodes: u64,
    best: usize,
    // scratch[d] holds the union of the first d chosen sets
    scratch: Vec<IndexSet>,
}

impl GhwSearch<'_> {
    fn descend(&mut self, start: usize, depth: usize) -> Result<()> {
        let remaining = self.r - depth;
        for j in start..=self.i - remaining {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::EnumerationCapExceeded { cap: self.cap });
            }
            let (head, tail) = self.scratch.split_at_mut(depth + 1);
            let size = head[depth].union_count(&self.bits[j], &mut tail[0]);
            if size >= self.best {
                continue;
            }
            if remaining == 1 {
                self.best = size;
            } else {
                self.descend(j + 1, depth + 1)?;
            }
        }
        Ok(())
    }
}

pub fn lambda_profile(hs: &HStar) -> LambdaProfile {
    LambdaProfile::new(hs)
}

/// `d*(i) = min{#Λ*_r : r <= i}`.
pub fn d_star(hs: &HStar, i: usize) -> Result<usize> {
    check_index(hs, i)?;
    Ok((1..=i).map(|r| lambda_unchecked(hs, r).len()).min().expect("i >= 1"))
}

/// One row of the per-dimension bound table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub i: usize,
    pub m_i: i64,
    pub lambda_count: usize,
    pub d_star: usize,
    pub goppa: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_ord: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
}

pub fn bound_table(hs: &HStar) -> BoundTable {
    let profile = LambdaProfile::new(hs);
    let d_star = profile.d_star_sequence();
    let d_ord = d_ord_sequence(hs).ok();
    let n = hs.n() as i64;
    let rows = (1..=hs.n())
        .map(|i| BoundRow {
            i,
            m_i: hs.m(i),
            lambda_count: profile.counts()[i - 1],
            d_star: d_star[i - 1],
            goppa: n - hs.m(i),
            d_ord: d_ord.as_ref().map(|v| v[i - 1]),
        })
        .collect();
    BoundTable { rows }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoppaRecord {
    pub i: usize,
    pub goppa: i64,
    pub dstar: usize,
    pub equality: bool,
}

/// Compares `d*` with the Goppa value `n - m_i` for every `i`.
///
/// Fails if `d*(i) < n - m_i`, or if equality is missing where
/// `m_i < π - l_g` forces it.
pub fn goppa_compare(hs: &HStar) -> Result<Vec<GoppaRecord>> {
    let d_star = LambdaProfile::new(hs).d_star_sequence();
    let n = hs.n() as i64;
    let threshold = hs.pi() - hs.semigroup().frobenius();
    let mut out = Vec::with_capacity(hs.n());
    for i in 1..=hs.n() {
        let goppa = n - hs.m(i);
        let dstar = d_star[i - 1];
        if (dstar as i64) < goppa {
            return Err(Error::InternalInvariantViolation(format!(
                "d*({i}) = {dstar} below Goppa value {goppa}"
            )));
        }
        let equality = dstar as i64 == goppa;
        if hs.m(i) < threshold && !equality {
            return Err(Error::InternalInvariantViolation(format!(
                "m_{i} = {} < π - l_g = {threshold} but d*({i}) = {dstar} != {goppa}",
                hs.m(i)
            )));
        }
        out.push(GoppaRecord { i, goppa, dstar, equality });
    }
    Ok(out)
}

/// `A[h] = {t ∈ H : h - t ∈ H}`.
pub fn a_set(s: &NumericalSemigroup, h: i64) -> Result<Vec<i64>> {
    if !s.contains(h) {
        return Err(Error::NotAMember(h));
    }
    Ok((0..=h).filter(|&t| s.contains(t) && s.contains(h - t)).collect())
}

fn a_count(s: &NumericalSemigroup, h: i64) -> usize {
    (0..=h).filter(|&t| s.contains(t) && s.contains(h - t)).count()
}

/// `d_ORD(1..=n)` in one pass, for isometry-dual sequences.
pub fn d_ord_sequence(hs: &HStar) -> Result<Vec<usize>> {
    require_isometry_dual(hs)?;
    let n = hs.n();
    let s = hs.semigroup();
    Ok((1..=n)
        .scan(usize::MAX, |acc, r| {
            *acc = (*acc).min(a_count(s, hs.m(n - r + 1)));
            Some(*acc)
        })
        .collect())
}

/// Order bound `min{#A[m_{n-r+1}] : r <= i}` for isometry-dual sequences.
pub fn d_ord(hs: &HStar, i: usize) -> Result<usize> {
    require_isometry_dual(hs)?;
    check_index(hs, i)?;
    Ok(d_ord_sequence(hs)?[i - 1])
}

/// Order bound in its original form, `min{#A[h] : h ∈ H*, h >= n+2g-1-m_i}`.
pub fn d_ord_direct(hs: &HStar, i: usize) -> Result<usize> {
    require_isometry_dual(hs)?;
    check_index(hs, i)?;
    let floor = hs.top() - hs.m(i);
    Ok(hs
        .members()
        .iter()
        .filter(|&&h| h >= floor)
        .map(|&h| a_count(hs.semigroup(), h))
        .min()
        .expect("m_n = n+2g-1 qualifies"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LSetCheck {
    pub l_set: Vec<i64>,
    pub identity_holds: bool,
}

/// `L_i = {m_i + l : l a gap}` and the identity `#Λ*_i = n-i+1-#(L_i ∩ H*)`.
pub fn l_set_check(hs: &HStar, i: usize) -> Result<LSetCheck> {
    require_isometry_dual(hs)?;
    check_index(hs, i)?;
    let mi = hs.m(i);
    let l_set: Vec<i64> = hs.semigroup().gaps().iter().map(|&l| mi + l).collect();
    let hits = l_set.iter().filter(|&&m| hs.contains(m)).count();
    let lhs = lambda_unchecked(hs, i).len();
    let identity_holds = lhs + hits == hs.n() - i + 1;
    Ok(LSetCheck { l_set, identity_holds })
}

fn is_monotone(counts: &[usize], delta: usize) -> bool {
    match counts.iter().position(|&c| c < delta) {
        None => true,
        Some(first_low) => counts[first_low..].iter().all(|&c| c < delta),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImprovedProfile {
    pub delta: usize,
    pub dimension: usize,
    pub monotone: bool,
    /// 1-based indices `i` with `#Λ*_i >= δ`.
    pub indices: Vec<usize>,
}

/// Indices kept by the improved code of designed distance `delta`.
pub fn improved_profile(hs: &HStar, delta: usize) -> Result<ImprovedProfile> {
    improved_from_counts(LambdaProfile::new(hs).counts(), delta)
}

pub fn improved_from_counts(counts: &[usize], delta: usize) -> Result<ImprovedProfile> {
    let n = counts.len();
    if delta == 0 || delta > n {
        return Err(Error::DeltaOutOfRange { delta, n });
    }
    let indices: Vec<usize> = (1..=n).filter(|&i| counts[i - 1] >= delta).collect();
    Ok(ImprovedProfile {
        delta,
        dimension: indices.len(),
        monotone: is_monotone(counts, delta),
        indices,
    })
}

/// Dimension of the dual-side improved code, `n - #{i : #A[m_i] < δ}`.
pub fn feng_rao_improved_dim(hs: &HStar, delta: usize) -> Result<usize> {
    require_isometry_dual(hs)?;
    let n = hs.n();
    if delta == 0 || delta > n {
        return Err(Error::DeltaOutOfRange { delta, n });
    }
    let s = hs.semigroup();
    let checks = hs.members().iter().filter(|&&m| a_count(s, m) < delta).count();
    Ok(n - checks)
}

/// `d*_r(i)` with the default node cap.
pub fn ghw_bound(hs: &HStar, i: usize, r: usize) -> Result<usize> {
    check_index(hs, i)?;
    LambdaProfile::new(hs).ghw_bound(i, r, DEFAULT_GHW_CAP)
}

/// Values `d*_r(i)` for a grid of `(r, i)`; pairs with `r > i` are skipped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GhwTable {
    pub entries: BTreeMap<(usize, usize), usize>,
}

impl GhwTable {
    pub fn build(profile: &LambdaProfile, rs: &[usize], is: &[usize], cap: u64) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for &r in rs {
            for &i in is.iter().filter(|&&i| i >= r) {
                entries.insert((r, i), profile.ghw_bound(i, r, cap)?);
            }
        }
        Ok(Self { entries })
    }

    pub fn get(&self, r: usize, i: usize) -> Option<usize> {
        self.entries.get(&(r, i)).copied()
    }

    /// Non-decreasing in `r`, non-increasing in `i`, wherever neighbours exist.
    pub fn is_monotone(&self) -> bool {
        self.entries.iter().all(|(&(r, i), &v)| {
            let up = self.get(r + 1, i).is_none_or(|w| v <= w);
            let right = self.get(r, i + 1).is_none_or(|w| w <= v);
            up && right
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn suzuki() -> HStar {
        HStar::from_equiv_divisor(&sg(&[8, 10, 12, 13]), 64).unwrap()
    }

    fn klein() -> HStar {
        HStar::from_isometry_dual(&sg(&[3, 5, 7]), 23).unwrap()
    }

    /// Union-size minimum over every r-subset, no pruning.
    fn naive_ghw(sets: &[Vec<i64>], i: usize, r: usize) -> usize {
        fn go(sets: &[Vec<i64>], start: usize, i: usize, left: usize, acc: &mut Vec<i64>, best: &mut usize) {
            if left == 0 {
                let mut u = acc.clone();
                u.sort_unstable();
                u.dedup();
                *best = (*best).min(u.len());
                return;
            }
            for j in start..i {
                let before = acc.len();
                acc.extend_from_slice(&sets[j]);
                go(sets, j + 1, i, left - 1, acc, best);
                acc.truncate(before);
            }
        }
        let mut best = usize::MAX;
        go(sets, 0, i, r, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn lambda_endpoints() {
        let hs = suzuki();
        assert_eq!(lambda_star(&hs, 1).unwrap(), hs.members());
        assert_eq!(lambda_star(&hs, 64).unwrap(), vec![91]);
        assert_eq!(lambda_star(&hs, 2).unwrap().len(), 56);
        assert_eq!(
            lambda_star(&hs, 65),
            Err(Error::IndexOutOfRange { index: 65, max: 64 })
        );
        assert!(lambda_star(&hs, 0).is_err());
    }

    #[test]
    fn trivial_semigroup_profile() {
        let hs = HStar::from_equiv_divisor(&sg(&[1]), 7).unwrap();
        let p = lambda_profile(&hs);
        assert_eq!(p.counts(), &[7, 6, 5, 4, 3, 2, 1]);
        for i in 1..=7 {
            assert!(l_set_check(&hs, i).unwrap().l_set.is_empty());
        }
    }

    #[test]
    fn two_three_profile_against_sieve() {
        let hs = HStar::from_equiv_divisor(&sg(&[2, 3]), 8).unwrap();
        // Direct intersection of {m_i + h : h ∈ [0, 9]} with the member list.
        let members = [0i64, 2, 3, 4, 5, 6, 7, 9];
        let h = [0i64, 2, 3, 4, 5, 6, 7, 8, 9];
        let oracle: Vec<usize> = members
            .iter()
            .map(|mi| members.iter().filter(|m| h.iter().any(|x| mi + x == **m)).count())
            .collect();
        assert_eq!(oracle, vec![8, 6, 5, 4, 3, 2, 2, 1]);
        assert_eq!(lambda_profile(&hs).counts(), oracle.as_slice());
    }

    #[test]
    fn suzuki_values() {
        let hs = suzuki();
        let p = lambda_profile(&hs);
        assert_eq!(p.counts().len(), 64);
        assert_eq!(&p.counts()[..3], &[64, 56, 54]);
        assert_eq!(d_star(&hs, 55).unwrap(), 4);
        assert_eq!(d_star(&hs, 1).unwrap(), 64);
        assert_eq!(hs.m(55), 69);
        let imp = improved_profile(&hs, 4).unwrap();
        assert_eq!(imp.dimension, 58);
        assert!(imp.monotone);
        assert_eq!(feng_rao_improved_dim(&hs, 4).unwrap(), 58);
        // Counts agree with the order-bound route #A[m_{n-r+1}].
        let s = hs.semigroup();
        for r in 1..=64 {
            assert_eq!(p.counts()[r - 1], a_count(s, hs.m(64 - r + 1)));
        }
    }

    #[test]
    fn goppa_records() {
        let hs = suzuki();
        let rec = goppa_compare(&hs).unwrap();
        assert_eq!(rec[0], GoppaRecord { i: 1, goppa: 64, dstar: 64, equality: true });
        assert_eq!(rec[1], GoppaRecord { i: 2, goppa: 56, dstar: 56, equality: true });
        assert!(rec[63].goppa < 0);
    }

    #[test]
    fn a_sets() {
        assert_eq!(a_set(&sg(&[2, 3]), 6).unwrap(), vec![0, 2, 3, 4, 6]);
        assert_eq!(a_set(&sg(&[3, 5, 7]), 10).unwrap(), vec![0, 3, 5, 7, 10]);
        assert_eq!(a_set(&sg(&[3, 5, 7]), 0).unwrap(), vec![0]);
        assert_eq!(a_set(&sg(&[3, 5, 7]), 4), Err(Error::NotAMember(4)));
    }

    #[test]
    fn klein_order_bound_matches() {
        let hs = klein();
        for i in 1..=23 {
            let d = d_star(&hs, i).unwrap();
            assert_eq!(d_ord(&hs, i).unwrap(), d);
            assert_eq!(d_ord_direct(&hs, i).unwrap(), d);
            assert!(l_set_check(&hs, i).unwrap().identity_holds);
        }
        assert_eq!(d_ord(&hs, 1).unwrap(), 23);
        for delta in 1..=23 {
            assert_eq!(
                feng_rao_improved_dim(&hs, delta).unwrap(),
                improved_profile(&hs, delta).unwrap().dimension
            );
        }
    }

    #[test]
    fn order_bound_needs_isometry_dual() {
        let s = sg(&[2, 3]);
        let hs = HStar::from_explicit(&s, 8, &[0, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(d_ord(&hs, 1), Err(Error::NotIsometryDual));
        assert_eq!(l_set_check(&hs, 1), Err(Error::NotIsometryDual));
        assert_eq!(feng_rao_improved_dim(&hs, 1), Err(Error::NotIsometryDual));
    }

    #[test]
    fn improved_edges() {
        let hs = klein();
        let all = improved_profile(&hs, 1).unwrap();
        assert_eq!(all.dimension, 23);
        assert!(all.monotone);
        assert_eq!(improved_profile(&hs, 0), Err(Error::DeltaOutOfRange { delta: 0, n: 23 }));
        assert!(improved_profile(&hs, 24).is_err());
        assert!(!is_monotone(&[5, 2, 3, 1], 3));
        assert!(is_monotone(&[5, 4, 3, 1], 3));
    }

    #[test]
    fn ghw_small_cases() {
        let hs = HStar::from_equiv_divisor(&sg(&[2, 3]), 8).unwrap();
        let p = lambda_profile(&hs);
        for i in 1..=8 {
            assert_eq!(p.ghw_bound(i, 1, DEFAULT_GHW_CAP).unwrap(), d_star(&hs, i).unwrap());
        }
        assert_eq!(p.ghw_bound(8, 8, DEFAULT_GHW_CAP).unwrap(), 8);
        assert!(p.ghw_bound(3, 4, DEFAULT_GHW_CAP).is_err());
        assert_eq!(ghw_bound(&hs, 4, 2).unwrap(), naive_ghw(&(1..=8).map(|i| p.set(i).to_vec()).collect::<Vec<_>>(), 4, 2));
    }

    #[test]
    fn ghw_cap_is_reported() {
        let p = lambda_profile(&suzuki());
        assert_eq!(
            p.ghw_bound(64, 32, 100),
            Err(Error::EnumerationCapExceeded { cap: 100 })
        );
    }

    #[test]
    fn ghw_pruned_equals_naive() {
        let cases = [
            HStar::from_equiv_divisor(&sg(&[2, 3]), 9).unwrap(),
            HStar::from_isometry_dual(&sg(&[3, 4]), 12).unwrap(),
            HStar::from_isometry_dual(&sg(&[3, 5, 7]), 12).unwrap(),
            HStar::from_explicit(&sg(&[2, 3]), 8, &[0, 2, 3, 4, 5, 6, 7, 8]).unwrap(),
        ];
        for hs in &cases {
            let p = lambda_profile(hs);
            let sets: Vec<Vec<i64>> = (1..=hs.n()).map(|i| p.set(i).to_vec()).collect();
            for i in 1..=hs.n().min(12) {
                for r in 1..=i {
                    assert_eq!(
                        p.ghw_bound(i, r, DEFAULT_GHW_CAP).unwrap(),
                        naive_ghw(&sets, i, r),
                        "i={i} r={r}"
                    );
                }
            }
            let all: Vec<usize> = (1..=hs.n().min(12)).collect();
            let table = GhwTable::build(&p, &all, &all, DEFAULT_GHW_CAP).unwrap();
            assert!(table.is_monotone());
        }
    }

    #[test]
    fn bound_table_rows() {
        let t = bound_table(&klein());
        assert_eq!(t.rows.len(), 23);
        assert!(t.rows.iter().all(|r| r.d_ord == Some(r.d_star)));
        assert!(t.rows.windows(2).all(|w| w[1].d_star <= w[0].d_star));
        let nd = bound_table(&HStar::from_explicit(&sg(&[2, 3]), 8, &[0, 2, 3, 4, 5, 6, 7, 8]).unwrap());
        assert!(nd.rows.iter().all(|r| r.d_ord.is_none()));
    }
}
