//! Exponential sums along generated sets and multiple ergodic averages on
//! circle rotations.
//!
//! Phases are exact fixed-point fractional parts; `cos`/`sin` are applied only
//! when a phase is mapped to the unit circle. Sums use the fixed-shape tree of
//! [`crate::parallel`], so every figure is reproducible across worker counts.

use std::f64::consts::PI;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fixedpoint::{frac_npow, AlphaSpec, Membership, Precision, Rational, UnitValue};
use crate::parallel::{map_chunks, tree_sum, LEAF};
use crate::sequences::{gen_skprime, sk_interval};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl Add for Cplx {
    type Output = Cplx;

    fn add(self, rhs: Cplx) -> Cplx {
        Cplx { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Cplx {
    /// `e(x) = exp(2 pi i x)`.
    pub fn unit(x: f64) -> Self {
        let (s, c) = (2.0 * PI * x).sin_cos();
        Cplx { re: c, im: s }
    }

    pub fn scale(self, f: f64) -> Self {
        Cplx { re: self.re * f, im: self.im * f }
    }

    pub fn modulus(self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl std::ops::Sub for Cplx {
    type Output = Cplx;

    fn sub(self, rhs: Cplx) -> Cplx {
        Cplx { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

/// `e({x})` for an exact fractional part. Zero maps to exactly `1 + 0i`.
pub fn unit_phase(x: &UnitValue) -> Cplx {
    if x.mantissa().is_zero() {
        return Cplx { re: 1.0, im: 0.0 };
    }
    Cplx::unit(x.to_f64())
}

/// An average of unit-modulus terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexAvg {
    pub re: f64,
    pub im: f64,
    pub count: u64,
    /// Leaf width of the reduction tree that produced the sum.
    pub leaf: usize,
}

impl ComplexAvg {
    fn from_sum(sum: Cplx, count: u64) -> Self {
        let inv = if count == 0 { 0.0 } else { 1.0 / count as f64 };
        Self { re: sum.re * inv, im: sum.im * inv, count, leaf: LEAF }
    }

    pub fn value(&self) -> Cplx {
        Cplx { re: self.re, im: self.im }
    }

    pub fn modulus(&self) -> f64 {
        self.value().modulus()
    }
}

/// Index sequence an exponential sum runs over.
#[derive(Debug, Clone, Copy)]
pub enum Elements<'a> {
    Slice(&'a [u64]),
    /// `start, start + 1, ...`
    Range {
        start: u64,
        len: u64,
    },
}

impl Elements<'_> {
    pub fn len(&self) -> u64 {
        match self {
            Elements::Slice(s) => s.len() as u64,
            Elements::Range { len, .. } => *len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: u64) -> u64 {
        match self {
            Elements::Slice(s) => s[i as usize],
            Elements::Range { start, .. } => start + i,
        }
    }

    pub fn max(&self) -> u64 {
        match self {
            Elements::Slice(s) => s.iter().copied().max().unwrap_or(0),
            Elements::Range { start, len } => (start + len).saturating_sub(1),
        }
    }
}

/// `A_N = (1/N) sum_{n<=N} e(a_n^k alpha)` over the first `n` elements.
pub fn weyl_sum(
    seq: Elements<'_>,
    k: u32,
    alpha: &AlphaSpec,
    n: u64,
    prec: Precision,
) -> Result<ComplexAvg> {
    if n > seq.len() {
        return Err(Error::InvalidParameter(format!(
            "asked for {n} terms of a sequence of length {}",
            seq.len()
        )));
    }
    let a = alpha.realize(prec);
    let sum = tree_sum(0..n, |i| Ok(unit_phase(&frac_npow(seq.get(i), k, &a)?)))?;
    Ok(ComplexAvg::from_sum(sum, n))
}

/// `A_N` at every `N` in `checkpoints` (each at most `seq.len()`), computing
/// the phases once. Each value is bit-identical to [`weyl_sum`] at that `N`.
pub fn weyl_profile(
    seq: Elements<'_>,
    k: u32,
    alpha: &AlphaSpec,
    checkpoints: &[u64],
    prec: Precision,
) -> Result<Vec<ComplexAvg>> {
    let last = checkpoints.iter().copied().max().unwrap_or(0);
    if last > seq.len() {
        return Err(Error::InvalidParameter(format!(
            "asked for {last} terms of a sequence of length {}",
            seq.len()
        )));
    }
    let a = alpha.realize(prec);
    let head = match seq {
        Elements::Slice(s) => Elements::Slice(&s[..last as usize]),
        Elements::Range { start, .. } => Elements::Range { start, len: last },
    };
    let ph = phases(head, k, &a)?;
    checkpoints.iter().map(|&n| avg_of(&ph, 0, n as usize)).collect()
}

/// Phases `e(a_i^k alpha)` for every element, in order.
pub fn phases(seq: Elements<'_>, k: u32, a: &UnitValue) -> Result<Vec<Cplx>> {
    let chunks = map_chunks(0..seq.len(), 1 << 14, |r| {
        r.map(|i| Ok(unit_phase(&frac_npow(seq.get(i), k, a)?))).collect::<Result<Vec<_>>>()
    })?;
    Ok(chunks.into_iter().flatten().collect())
}

fn avg_of(phases: &[Cplx], lo: usize, hi: usize) -> Result<ComplexAvg> {
    let sum = tree_sum(lo as u64..hi as u64, |i| Ok(phases[i as usize]))?;
    Ok(ComplexAvg::from_sum(sum, (hi - lo) as u64))
}

/// Analytic bounds on the real part of any average of `e(x)` with `x` in the
/// window of block `j`.
pub fn block_real_bounds(j: u32) -> (f64, f64) {
    if j.is_multiple_of(2) {
        ((0.4 * PI).cos(), (0.2 * PI).cos())
    } else {
        (-1.0, (1.2 * PI).cos())
    }
}

/// Slack on the analytic bounds for the rounding of `cos` and the sum.
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BlockStat {
    pub j: u32,
    pub lo: u64,
    pub hi: u64,
    pub len: usize,
    /// `None` for an empty block.
    pub avg: Option<ComplexAvg>,
    pub bounds: (f64, f64),
}

impl BlockStat {
    pub fn within_bounds(&self) -> bool {
        self.avg.is_none_or(|a| {
            a.re >= self.bounds.0 - BOUND_SLACK && a.re <= self.bounds.1 + BOUND_SLACK
        })
    }
}

/// `A_N` at the index closing block `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub j: u32,
    pub n: u64,
    pub avg: ComplexAvg,
    /// `|A_N - A_{N_prev}|` against the previous block end, if any.
    pub gap: Option<f64>,
}

/// Index-aligned window `N`: `A_N`, `A_{2N}` and the directly summed `B_N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexWindow {
    pub n: u64,
    pub a_n: ComplexAvg,
    pub a_2n: ComplexAvg,
    pub b_n: ComplexAvg,
    /// `|B_N - (2 A_{2N} - A_N)|`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WindowReport {
    pub k: u32,
    pub alpha: AlphaSpec,
    pub j_max: u32,
    pub total: u64,
    pub uncertain_count: u64,
    pub blocks: Vec<BlockStat>,
    pub trajectory: Vec<TrajectoryPoint>,
    pub windows: Vec<IndexWindow>,
}

impl WindowReport {
    /// Blocks whose average escapes the analytic bounds.
    pub fn violations(&self) -> Vec<&BlockStat> {
        self.blocks.iter().filter(|b| !b.within_bounds()).collect()
    }

    pub fn empty_blocks(&self) -> Vec<u32> {
        self.blocks.iter().filter(|b| b.len == 0).map(|b| b.j).collect()
    }

    /// Smallest trajectory gap over blocks `j >= from`.
    pub fn min_gap_from(&self, from: u32) -> Option<f64> {
        self.trajectory.iter().filter(|t| t.j >= from).filter_map(|t| t.gap).reduce(f64::min)
    }

    pub fn max_identity_residual(&self) -> f64 {
        self.windows.iter().map(|w| w.residual).fold(0.0, f64::max)
    }
}

/// Per-block averages of `e(a^k alpha)` over `S'_k`, the block-aligned `A_N`
/// trajectory and index-aligned `A_N / B_N` windows.
pub fn block_sign_report(
    k: u32,
    alpha: &AlphaSpec,
    j_max: u32,
    prec: Precision,
) -> Result<WindowReport> {
    let set = gen_skprime(k, alpha, j_max, prec)?;
    let a = alpha.realize(prec);
    let ph = phases(Elements::Slice(set.elements()), k, &a)?;

    let mut blocks = Vec::with_capacity(set.blocks().len());
    let mut trajectory: Vec<TrajectoryPoint> = Vec::new();
    for b in set.blocks() {
        let r = b.indices();
        let avg = if b.len == 0 { None } else { Some(avg_of(&ph, r.start, r.end)?) };
        blocks.push(BlockStat {
            j: b.j,
            lo: b.lo,
            hi: b.hi,
            len: b.len,
            avg,
            bounds: block_real_bounds(b.j),
        });
        if r.end == 0 {
            continue;
        }
        let a_n = avg_of(&ph, 0, r.end)?;
        let gap = trajectory.last().map(|prev| (a_n.value() - prev.avg.value()).modulus());
        trajectory.push(TrajectoryPoint { j: b.j, n: r.end as u64, avg: a_n, gap });
    }

    let total = ph.len();
    let mut windows = Vec::new();
    let mut n = 1usize;
    while 2 * n <= total {
        let a_n = avg_of(&ph, 0, n)?;
        let a_2n = avg_of(&ph, 0, 2 * n)?;
        let b_n = avg_of(&ph, n, 2 * n)?;
        let predicted = a_2n.value().scale(2.0) - a_n.value();
        let residual = (b_n.value() - predicted).modulus();
        windows.push(IndexWindow { n: n as u64, a_n, a_2n, b_n, residual });
        n *= 2;
    }

    Ok(WindowReport {
        k,
        alpha: alpha.clone(),
        j_max,
        total: total as u64,
        uncertain_count: set.uncertain_count,
        blocks,
        trajectory,
        windows,
    })
}

/// Parameters of the weighted-versus-unweighted comparison on the rotation
/// `T x = x + beta` with characters `f_i(x) = e(m_i x)`, weight
/// `g = 1_[lo, hi]` and `p(n) = n^k alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDiff {
    pub k: u32,
    pub alpha: AlphaSpec,
    pub beta: AlphaSpec,
    pub window: (Rational, Rational),
    /// Character exponents `m_1, ..., m_{k-1}`.
    pub characters: Vec<i64>,
    /// Sum over `n = start + 1, ..., end`.
    pub start: u64,
    pub end: u64,
}

impl WeightedDiff {
    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::OrderOutOfRange(0));
        }
        if self.characters.len() != self.k as usize - 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} character exponents, got {}",
                self.k - 1,
                self.characters.len()
            )));
        }
        if self.start >= self.end {
            return Err(Error::InvalidParameter("empty averaging window".into()));
        }
        let (lo, hi) = self.window;
        if lo >= hi || hi > Rational::from_integer(1) {
            return Err(Error::InvalidParameter(format!("bad interval [{lo}, {hi}]")));
        }
        Ok(())
    }

    /// Frequency `sum_i i m_i` of `prod_i f_i(T^{in} x)` in `n beta`.
    pub fn frequency(&self) -> i64 {
        self.characters.iter().enumerate().map(|(i, m)| (i as i64 + 1) * m).sum()
    }
}

/// `D(M, N) = sup_x |avg prod f_i(T^{in} x) g({p(n)}) - (∫g) avg prod f_i(T^{in} x)|`.
///
/// The product of characters is `e(s x) e(s n beta)` with `s = sum_i i m_i`;
/// the unimodular `e(s x)` drops out of the modulus, leaving a scalar average.
pub fn weighted_average_diff(params: &WeightedDiff, prec: Precision) -> Result<f64> {
    params.validate()?;
    let a = params.alpha.realize(prec);
    let b = params.beta.realize(prec);
    let s = params.frequency();
    let (lo, hi) = params.window;
    let integral = (hi - lo).to_f64().unwrap_or(f64::NAN);
    let sum = tree_sum(params.start + 1..params.end + 1, |n| {
        weighted_term(params, &a, &b, s, integral, n)
    })?;
    Ok(ComplexAvg::from_sum(sum, params.end - params.start).modulus())
}

fn weighted_term(
    params: &WeightedDiff,
    a: &UnitValue,
    b: &UnitValue,
    s: i64,
    integral: f64,
    n: u64,
) -> Result<Cplx> {
    let (lo, hi) = params.window;
    let inside = frac_npow(n, params.k, a)?.interval_test(lo, hi) == Membership::Inside;
    let weight = if inside { 1.0 } else { 0.0 } - integral;
    let phase = unit_phase(&frac_npow(n, 1, b)?.mul_i64(s));
    Ok(phase.scale(weight))
}

/// The complex difference average behind `D(start, N)` for every `N` in
/// `checkpoints` (each in `(start, end]`), evaluating the terms once. Each
/// modulus is bit-identical to [`weighted_average_diff`] with `end = N`.
pub fn weighted_average_diff_profile(
    params: &WeightedDiff,
    checkpoints: &[u64],
    prec: Precision,
) -> Result<Vec<ComplexAvg>> {
    params.validate()?;
    if let Some(&bad) = checkpoints.iter().find(|&&n| n <= params.start || n > params.end) {
        return Err(Error::InvalidParameter(format!(
            "checkpoint {bad} outside ({}, {}]",
            params.start, params.end
        )));
    }
    let a = params.alpha.realize(prec);
    let b = params.beta.realize(prec);
    let s = params.frequency();
    let integral = (params.window.1 - params.window.0).to_f64().unwrap_or(f64::NAN);
    let terms = map_chunks(params.start + 1..params.end + 1, 1 << 14, |r| {
        r.map(|n| weighted_term(params, &a, &b, s, integral, n)).collect::<Result<Vec<_>>>()
    })?
    .concat();
    checkpoints
        .iter()
        .map(|&n| {
            let len = n - params.start;
            let sum = tree_sum(0..len, |i| Ok(terms[i as usize]))?;
            Ok(ComplexAvg::from_sum(sum, len))
        })
        .collect()
}

/// `round(10^(lo + i / per_decade))` for `i = 0..=per_decade * (hi - lo)`, deduplicated.
pub fn log_grid(lo_exp: u32, hi_exp: u32, per_decade: u32) -> Vec<u64> {
    let steps = per_decade * hi_exp.saturating_sub(lo_exp);
    let mut out: Vec<u64> = (0..=steps)
        .map(|i| 10f64.powf(lo_exp as f64 + i as f64 / per_decade as f64).round() as u64)
        .collect();
    out.dedup();
    out
}

type Interval = (BigUint, BigUint);

/// Half-open pieces of the arc `[start, start + len)` on the circle of
/// circumference `modulus`.
fn arc_pieces(start: &BigUint, len: &BigUint, modulus: &BigUint) -> Vec<Interval> {
    if len >= modulus {
        return vec![(BigUint::zero(), modulus.clone())];
    }
    let end = start + len;
    if &end <= modulus {
        vec![(start.clone(), end)]
    } else {
        vec![(start.clone(), modulus.clone()), (BigUint::zero(), end - modulus)]
    }
}

fn intersect(a: &[Interval], b: &[Interval]) -> Vec<Interval> {
    let mut out = Vec::new();
    for (a0, a1) in a {
        for (b0, b1) in b {
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
        }
    }
    out
}

/// Lebesgue measure of `A ∩ T^{-n} A ∩ ... ∩ T^{-(count-1) n} A` for the arc
/// `A = [start, start + len)` and rotation `b`, exact in units of `2^-B`.
pub fn arc_return_measure(
    start: &BigUint,
    len: &BigUint,
    b: &UnitValue,
    n: u64,
    count: u32,
) -> Result<BigUint> {
    let modulus = b.precision().modulus();
    let mut acc = arc_pieces(start, len, &modulus);
    for i in 1..count as u64 {
        if acc.is_empty() {
            break;
        }
        let steps = i.checked_mul(n).ok_or_else(|| Error::Overflow(format!("{i} * {n}")))?;
        let shift = frac_npow(steps, 1, b)?;
        // T^{-m} A = A - m beta.
        let shifted = (start + &modulus - shift.mantissa()) % &modulus;
        acc = intersect(&acc, &arc_pieces(&shifted, len, &modulus));
    }
    Ok(acc.into_iter().map(|(lo, hi)| hi - lo).sum())
}

/// `(1/N) sum_{n<=N} 1_{S_k}(n) λ(A ∩ T^{-n} A ∩ ... ∩ T^{-(k-1)n} A)` for the
/// rotation by `beta` and the arc `A = [lo, hi)`.
pub fn recurrence_average(
    k: u32,
    alpha: &AlphaSpec,
    beta: &AlphaSpec,
    arc: (Rational, Rational),
    n_end: u64,
    prec: Precision,
) -> Result<f64> {
    let (lo, hi) = arc;
    if lo > hi || hi > Rational::from_integer(1) {
        return Err(Error::InvalidParameter(format!("bad arc [{lo}, {hi})")));
    }
    if n_end == 0 {
        return Err(Error::InvalidParameter("empty averaging range".into()));
    }
    let a = alpha.realize(prec);
    let b = beta.realize(prec);
    let bits = prec.bits();
    let scale = |r: Rational| (BigUint::from(*r.numer()) << bits) / BigUint::from(*r.denom());
    let start = scale(lo);
    let len = scale(hi) - &start;
    let (set_lo, set_hi) = sk_interval();
    let unit = (-(bits as f64)).exp2();
    let sum: f64 = tree_sum(1..n_end + 1, |n| {
        if frac_npow(n, k, &a)?.interval_test(set_lo, set_hi) != Membership::Inside {
            return Ok(0.0);
        }
        let measure = arc_return_measure(&start, &len, &b, n, k)?;
        Ok(measure.to_f64().unwrap_or(f64::NAN) * unit)
    })?;
    Ok(sum / n_end as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{density, gen_sk};

    fn r(n: u64, d: u64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn singleton_sum_is_unit() {
        let alpha = AlphaSpec::sqrt2();
        let prec = Precision::new(128).unwrap();
        let avg = weyl_sum(Elements::Slice(&[7]), 2, &alpha, 1, prec).unwrap();
        let x = frac_npow(7, 2, &alpha.realize(prec)).unwrap().to_f64();
        assert_eq!(avg.value(), Cplx::unit(x));
        assert!((avg.modulus() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn too_many_terms_rejected() {
        let prec = Precision::new(128).unwrap();
        let err = weyl_sum(Elements::Slice(&[1, 2]), 1, &AlphaSpec::sqrt2(), 3, prec);
        assert!(err.is_err());
    }

    #[test]
    fn block_bounds_constants() {
        let (lo, hi) = block_real_bounds(4);
        assert!((lo - 0.309_016_994_374_947_4).abs() < 1e-15);
        assert!((hi - 0.809_016_994_374_947_5).abs() < 1e-15);
        let (lo, hi) = block_real_bounds(3);
        assert_eq!(lo, -1.0);
        assert!((hi + 0.809_016_994_374_947_5).abs() < 1e-15);
    }

    #[test]
    fn small_block_report() {
        let alpha = AlphaSpec::sqrt2();
        let prec = Precision::policy(2, 1 << 13).unwrap();
        let rep = block_sign_report(2, &alpha, 12, prec).unwrap();
        assert!(rep.violations().is_empty());
        assert_eq!(rep.empty_blocks(), vec![1, 2]);
        assert!(rep.max_identity_residual() < 1e-12);
    }

    #[test]
    fn full_window_weight_is_exactly_zero() {
        let params = WeightedDiff {
            k: 2,
            alpha: AlphaSpec::sqrt2(),
            beta: AlphaSpec::golden(),
            window: (r(0, 1), r(1, 1)),
            characters: vec![1],
            start: 0,
            end: 5000,
        };
        let d = weighted_average_diff(&params, Precision::policy(2, 5000).unwrap()).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn trivial_characters_reduce_to_density() {
        let alpha = AlphaSpec::sqrt2();
        let n = 20_000;
        let prec = Precision::policy(2, n).unwrap();
        let params = WeightedDiff {
            k: 2,
            alpha: alpha.clone(),
            beta: AlphaSpec::golden(),
            window: (r(1, 4), r(3, 4)),
            characters: vec![0],
            start: 0,
            end: n,
        };
        let d = weighted_average_diff(&params, prec).unwrap();
        let s = gen_sk(2, &alpha, n, prec).unwrap();
        let dens = density(&s, n).unwrap().to_f64().unwrap();
        assert!((d - (dens - 0.5).abs()).abs() < 1e-12);
    }

    #[test]
    fn profile_matches_direct_evaluation() {
        let params = WeightedDiff {
            k: 2,
            alpha: AlphaSpec::sqrt2(),
            beta: AlphaSpec::golden(),
            window: (r(1, 4), r(3, 4)),
            characters: vec![1],
            start: 0,
            end: 3000,
        };
        let prec = Precision::policy(2, 3000).unwrap();
        let profile = weighted_average_diff_profile(&params, &[1000, 2047, 3000], prec).unwrap();
        for (&n, d) in [1000u64, 2047, 3000].iter().zip(profile) {
            let direct = weighted_average_diff(&WeightedDiff { end: n, ..params.clone() }, prec);
            assert_eq!(direct.unwrap().to_bits(), d.modulus().to_bits());
        }
        assert!(weighted_average_diff_profile(&params, &[0], prec).is_err());
    }

    #[test]
    fn weyl_profile_matches_weyl_sum() {
        let prec = Precision::policy(2, 5000).unwrap();
        let seq = Elements::Range { start: 1, len: 5000 };
        let profile = weyl_profile(seq, 2, &AlphaSpec::sqrt3(), &[1, 1025, 4999], prec).unwrap();
        for (&n, p) in [1u64, 1025, 4999].iter().zip(&profile) {
            let direct = weyl_sum(seq, 2, &AlphaSpec::sqrt3(), n, prec).unwrap();
            assert_eq!(direct.re.to_bits(), p.re.to_bits());
            assert_eq!(direct.im.to_bits(), p.im.to_bits());
        }
        assert!(weyl_profile(seq, 2, &AlphaSpec::sqrt3(), &[5001], prec).is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(3, 5, 4);
        assert_eq!(g.first(), Some(&1000));
        assert_eq!(g.last(), Some(&100_000));
        assert_eq!(g.len(), 9);
    }

    #[test]
    fn character_count_checked() {
        let params = WeightedDiff {
            k: 3,
            alpha: AlphaSpec::sqrt2(),
            beta: AlphaSpec::golden(),
            window: (r(1, 4), r(3, 4)),
            characters: vec![1],
            start: 0,
            end: 10,
        };
        assert!(weighted_average_diff(&params, Precision::new(128).unwrap()).is_err());
    }

    #[test]
    fn full_and_empty_arcs() {
        let alpha = AlphaSpec::sqrt2();
        let beta = AlphaSpec::sqrt3();
        let n = 5000;
        let prec = Precision::policy(2, n).unwrap();
        let full = recurrence_average(2, &alpha, &beta, (r(0, 1), r(1, 1)), n, prec).unwrap();
        let s = gen_sk(2, &alpha, n, prec).unwrap();
        assert_eq!(full, s.len() as f64 / n as f64);
        let empty = recurrence_average(2, &alpha, &beta, (r(3, 10), r(3, 10)), n, prec).unwrap();
        assert_eq!(empty, 0.0);
    }

    #[test]
    fn arc_measure_two_arcs() {
        let prec = Precision::new(64).unwrap();
        let b = UnitValue::from_ratio(1, 8, prec).unwrap();
        let modulus = prec.modulus();
        let len = &modulus * 3u32 / 10u32;
        // [0, 0.3) ∩ [-1/8, 0.3 - 1/8) has measure 0.3 - 1/8.
        let m = arc_return_measure(&BigUint::zero(), &len, &b, 1, 2).unwrap();
        let expect = &len - (&modulus >> 3);
        assert_eq!(m, expect);
        // Shift by 5/8 ≡ -3/8 leaves them disjoint.
        let m = arc_return_measure(&BigUint::zero(), &len, &b, 5, 2).unwrap();
        assert!(m.is_zero());
    }
}
