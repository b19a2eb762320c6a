//! Arithmetic progressions with common difference in a given set.
//!
//! A [`DenseSet`] is a bitmap over `[1, N]`. For a difference `d` the starts
//! of `(k+1)`-term progressions are the set bits of
//! `L & (L >> d) & (L >> 2d) & ... & (L >> kd)`, evaluated one 64-bit word at a
//! time.
//!
//! [`build_witness`] constructs `Λ = { n : {n^k alpha / k!} ∈ [0, δ] }`. For a
//! progression `n, n+d, ..., n+kd` inside `Λ`, the k-th finite difference of
//! `j -> (n + jd)^k alpha / k!` equals `d^k alpha`, while the same alternating
//! binomial sum of the fractional parts has absolute value below `2^k δ`. So
//! `||d^k alpha|| < 2^k δ < 1/4`, and `d` cannot lie in `S_k(alpha)`.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fixedpoint::{frac_npow, AlphaSpec, Membership, Precision, Rational};
use crate::lemma::factorial;

const WORD: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSet {
    n: u64,
    /// Bit `i` stands for the integer `i`; bit 0 is always clear.
    words: Vec<u64>,
}

impl DenseSet {
    pub fn empty(n: u64) -> Self {
        Self { n, words: vec![0; (n / WORD + 1) as usize] }
    }

    pub fn full(n: u64) -> Self {
        Self::from_elements(n, 1..=n)
    }

    /// Elements outside `[1, n]` are ignored.
    pub fn from_elements(n: u64, elements: impl IntoIterator<Item = u64>) -> Self {
        let mut set = Self::empty(n);
        for x in elements {
            set.insert(x);
        }
        set
    }

    /// Each integer of `[1, n]` independently with probability `p`.
    pub fn random(n: u64, p: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::from_elements(n, (1..=n).filter(|_| rng.gen_bool(p)))
    }

    pub fn insert(&mut self, x: u64) {
        if (1..=self.n).contains(&x) {
            self.words[(x / WORD) as usize] |= 1 << (x % WORD);
        }
    }

    pub fn contains(&self, x: u64) -> bool {
        (1..=self.n).contains(&x) && self.words[(x / WORD) as usize] >> (x % WORD) & 1 == 1
    }

    pub fn upper(&self) -> u64 {
        self.n
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn density(&self) -> Rational {
        if self.n == 0 {
            return Rational::from_integer(0);
        }
        Rational::new(self.count(), self.n)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.n).filter(|&x| self.contains(x))
    }

    /// 64 bits starting at bit `offset`, zero past the end.
    #[inline]
    fn window(&self, offset: u64) -> u64 {
        let idx = (offset / WORD) as usize;
        let shift = offset % WORD;
        let lo = self.words.get(idx).copied().unwrap_or(0);
        if shift == 0 {
            return lo;
        }
        let hi = self.words.get(idx + 1).copied().unwrap_or(0);
        (lo >> shift) | (hi << (WORD - shift))
    }

    /// Word `w` of `AND_{j=0..=k} (L >> jd)`.
    #[inline]
    fn ap_word(&self, w: u64, d: u64, k: u32) -> u64 {
        let base = w * WORD;
        let mut acc = self.words[w as usize];
        for j in 1..=k as u64 {
            if acc == 0 {
                break;
            }
            acc &= self.window(base + j * d);
        }
        acc
    }

    /// First start `n` of a `(k+1)`-term progression with difference `d`.
    fn first_start(&self, d: u64, k: u32) -> Option<u64> {
        let last = self.n.checked_sub(k as u64 * d)?;
        (0..=last / WORD)
            .find_map(|w| {
                let bits = self.ap_word(w, d, k);
                (bits != 0).then(|| w * WORD + bits.trailing_zeros() as u64)
            })
            .filter(|&n| n >= 1 && n <= last)
    }

    /// Number of starts of `(k+1)`-term progressions with difference `d`.
    fn count_starts(&self, d: u64, k: u32) -> u64 {
        let Some(last) = self.n.checked_sub(k as u64 * d) else { return 0 };
        (0..=last / WORD).map(|w| self.ap_word(w, d, k).count_ones() as u64).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApWitness {
    pub start: u64,
    pub diff: u64,
    /// Number of terms, `k + 1`.
    pub len: u32,
}

impl ApWitness {
    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len as u64).map(|j| self.start + j * self.diff)
    }

    /// Re-checks every term against the bitmap and the difference against `diffs`.
    pub fn validate(&self, set: &DenseSet, diffs: &[u64]) -> bool {
        diffs.binary_search(&self.diff).is_ok() && self.terms().all(|x| set.contains(x))
    }
}

fn usable_diffs(set: &DenseSet, diffs: &[u64], k: u32) -> Vec<u64> {
    let k = k.max(1) as u64;
    diffs.iter().copied().filter(|&d| d >= 1 && d.saturating_mul(k) < set.n).collect()
}

/// Lexicographically first `(k+1)`-term progression (smallest difference,
/// then smallest start) with difference in `diffs` (ascending).
pub fn find_ap(set: &DenseSet, diffs: &[u64], k: u32) -> Option<ApWitness> {
    let ds = usable_diffs(set, diffs, k);
    ds.par_iter().find_map_first(|&d| {
        set.first_start(d, k).map(|start| ApWitness { start, diff: d, len: k + 1 })
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanStats {
    /// All `(start, diff)` pairs.
    pub progressions: u64,
    pub differences_tested: u64,
    pub differences_with_progression: u64,
}

/// Counts every `(k+1)`-term progression with difference in `diffs`.
pub fn intersectivity_scan(set: &DenseSet, diffs: &[u64], k: u32) -> ScanStats {
    let ds = usable_diffs(set, diffs, k);
    let counts: Vec<u64> = ds.par_iter().map(|&d| set.count_starts(d, k)).collect();
    ScanStats {
        progressions: counts.iter().sum(),
        differences_tested: ds.len() as u64,
        differences_with_progression: counts.iter().filter(|&&c| c > 0).count() as u64,
    }
}

/// Largest `delta` accepted: `2^k delta < 1/4`.
pub fn witness_threshold_ok(k: u32, delta: Rational) -> bool {
    k < 60 && delta * Rational::from_integer(1u64 << k) < Rational::new(1, 4)
}

/// `Λ_δ = { n <= N : {n^k alpha / k!} ∈ [0, δ] }`; undecidable `n` are left out.
pub fn build_witness(
    k: u32,
    alpha: &AlphaSpec,
    delta: Rational,
    n: u64,
    prec: Precision,
) -> Result<DenseSet> {
    if delta == Rational::from_integer(0) || !witness_threshold_ok(k, delta) {
        return Err(Error::InvalidParameter(format!("delta {delta} violates 2^{k} * delta < 1/4")));
    }
    let gamma = alpha.divided_by(factorial(k)?)?;
    let g = gamma.realize(prec);
    let zero = Rational::from_integer(0);
    let members: Vec<Vec<u64>> = crate::parallel::map_chunks(1..n + 1, 1 << 14, |r| {
        let mut out = Vec::new();
        for x in r {
            if frac_npow(x, k, &g)?.interval_test(zero, delta) == Membership::Inside {
                out.push(x);
            }
        }
        Ok(out)
    })?;
    Ok(DenseSet::from_elements(n, members.into_iter().flatten()))
}

/// Density as `f64`, for reporting.
pub fn density_f64(set: &DenseSet) -> f64 {
    set.density().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_first(set: &DenseSet, diffs: &[u64], k: u32) -> Option<(u64, u64)> {
        for &d in diffs {
            for n in 1..=set.upper() {
                if (0..=k as u64).all(|j| set.contains(n + j * d)) {
                    return Some((n, d));
                }
            }
        }
        None
    }

    fn naive_count(set: &DenseSet, diffs: &[u64], k: u32) -> u64 {
        let mut c = 0;
        for &d in diffs {
            for n in 1..=set.upper() {
                if (0..=k as u64).all(|j| set.contains(n + j * d)) {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn full_set_first_witness() {
        let set = DenseSet::full(100);
        let w = find_ap(&set, &[3, 5, 9], 2).unwrap();
        assert_eq!((w.start, w.diff, w.len), (1, 3, 3));
        assert!(w.validate(&set, &[3, 5, 9]));
    }

    #[test]
    fn parity_obstruction() {
        let set = DenseSet::from_elements(200, (1..=100).map(|x| 2 * x));
        let odd: Vec<u64> = (0..100).map(|x| 2 * x + 1).collect();
        assert_eq!(find_ap(&set, &odd, 1), None);
        assert_eq!(intersectivity_scan(&set, &odd, 1).progressions, 0);
    }

    #[test]
    fn empty_set_has_no_progressions() {
        let set = DenseSet::empty(500);
        assert_eq!(intersectivity_scan(&set, &[1, 2, 3], 2).progressions, 0);
    }

    #[test]
    fn full_ten_count() {
        let set = DenseSet::full(10);
        let diffs: Vec<u64> = (1..=10).collect();
        // pairs (n, d) with n + 2d <= 10: d=1..4 gives 8+6+4+2.
        assert_eq!(intersectivity_scan(&set, &diffs, 2).progressions, 20);
    }

    #[test]
    fn word_search_matches_naive() {
        for seed in 0..6 {
            let set = DenseSet::random(700, 0.3, seed);
            let diffs: Vec<u64> = (1..350).filter(|d| d % 3 != seed % 3).collect();
            for k in 1..=3 {
                let fast = find_ap(&set, &diffs, k).map(|w| (w.start, w.diff));
                assert_eq!(fast, naive_first(&set, &diffs, k), "seed {seed} k {k}");
                assert_eq!(
                    intersectivity_scan(&set, &diffs, k).progressions,
                    naive_count(&set, &diffs, k)
                );
            }
        }
    }

    #[test]
    fn witness_threshold() {
        let prec = Precision::new(128).unwrap();
        assert!(build_witness(2, &AlphaSpec::sqrt2(), Rational::new(1, 32), 100, prec).is_ok());
        assert!(matches!(
            build_witness(2, &AlphaSpec::sqrt2(), Rational::new(1, 8), 100, prec),
            Err(Error::InvalidParameter(_))
        ));
        assert!(!witness_threshold_ok(2, Rational::new(1, 16)));
        assert!(witness_threshold_ok(3, Rational::new(1, 64)));
    }

    #[test]
    fn bitmap_edges() {
        let mut set = DenseSet::empty(128);
        set.insert(0);
        set.insert(129);
        set.insert(128);
        set.insert(64);
        assert_eq!(set.count(), 2);
        assert!(set.contains(128) && set.contains(64) && !set.contains(0));
        assert_eq!(set.elements().collect::<Vec<_>>(), vec![64, 128]);
        // 64, 128 with d = 64 fits exactly at the top.
        assert_eq!(find_ap(&set, &[64], 1).map(|w| w.start), Some(64));
    }
}
