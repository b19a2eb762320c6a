//! The skew product `R` on the k-torus:
//!
//! ```text
//! R(t)_i = t_i + C(i,1) t_{i-1} + ... + C(i,i-1) t_1 + alpha
//! ```
//!
//! Writing `t_0 = alpha`, the orbit has the closed form
//! `R^N(t)_i = sum_{r=0}^{i} C(i,r) N^r t_{i-r}`, so the last coordinate of
//! `R^{jn}` evaluates `(jn)^k alpha` plus lower-order terms. Combining the
//! last coordinates with a [`LemmaSolution`] cancels every lower-order term
//! except `t_k`, which is what makes `S_k` a set of non-recurrence.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fixedpoint::{frac_npow, reduce_signed, AlphaSpec, Precision, Rational, UnitValue};
use crate::lemma::{binomial, solve_canonical, LemmaSolution, MAX_ORDER};
use crate::parallel::{map_chunks, tree_sum};
use crate::sequences::SetStream;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusPoint {
    coords: Vec<UnitValue>,
}

impl TorusPoint {
    pub fn new(coords: Vec<UnitValue>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::InvalidParameter("torus point needs a coordinate".into()));
        };
        if coords.iter().any(|c| c.bits() != first.bits()) {
            return Err(Error::InvalidParameter(
                "torus coordinates must share one precision".into(),
            ));
        }
        Ok(Self { coords })
    }

    pub fn origin(k: u32, prec: Precision) -> Self {
        Self { coords: vec![UnitValue::zero(prec); k as usize] }
    }

    /// Parses `t1,t2,...,tk` (decimals or fractions).
    pub fn parse(text: &str, prec: Precision) -> Result<Self> {
        let coords =
            text.split(',').map(|c| UnitValue::parse(c, prec)).collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn dim(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coords(&self) -> &[UnitValue] {
        &self.coords
    }

    /// Last coordinate `t_k`.
    pub fn last(&self) -> &UnitValue {
        self.coords.last().expect("non-empty by construction")
    }
}

#[derive(Debug, Clone)]
pub struct SkewSystem {
    k: u32,
    alpha: UnitValue,
    /// `binom[i][r] = C(i, r)` for `i <= k`.
    binom: Vec<Vec<u64>>,
}

impl SkewSystem {
    pub fn new(k: u32, alpha: UnitValue) -> Result<Self> {
        if k == 0 || k > MAX_ORDER {
            return Err(Error::OrderOutOfRange(k));
        }
        let binom = (0..=k as u64).map(|i| (0..=i).map(|r| binomial(i, r)).collect()).collect();
        Ok(Self { k, alpha, binom })
    }

    pub fn from_spec(k: u32, alpha: &AlphaSpec, prec: Precision) -> Result<Self> {
        Self::new(k, alpha.realize(prec))
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alpha(&self) -> &UnitValue {
        &self.alpha
    }

    pub fn precision(&self) -> Precision {
        self.alpha.precision()
    }

    fn check_point(&self, p: &TorusPoint) -> Result<()> {
        if p.dim() != self.k {
            return Err(Error::InvalidParameter(format!(
                "point of dimension {} for a system of dimension {}",
                p.dim(),
                self.k
            )));
        }
        if p.coords[0].bits() != self.alpha.bits() {
            return Err(Error::InvalidParameter("point and system precision differ".into()));
        }
        Ok(())
    }

    /// Coordinate `i` (1-based) of `t` with `t_0 = alpha`.
    fn coord<'a>(&'a self, p: &'a TorusPoint, i: usize) -> &'a UnitValue {
        if i == 0 {
            &self.alpha
        } else {
            &p.coords[i - 1]
        }
    }

    /// One application of `R`.
    pub fn step(&self, p: &TorusPoint) -> Result<TorusPoint> {
        self.check_point(p)?;
        let coords = (1..=self.k as usize)
            .map(|i| {
                let mut acc = p.coords[i - 1].add(&self.alpha);
                for j in 1..i {
                    acc = acc.add(&p.coords[i - j - 1].mul_u64(self.binom[i][j]));
                }
                acc
            })
            .collect();
        Ok(TorusPoint { coords })
    }

    /// `R^steps` by repeated stepping.
    pub fn iterate(&self, p: &TorusPoint, steps: u64) -> Result<TorusPoint> {
        let mut cur = p.clone();
        for _ in 0..steps {
            cur = self.step(&cur)?;
        }
        Ok(cur)
    }

    fn orbit_coord(&self, p: &TorusPoint, i: usize, powers: &[BigUint]) -> UnitValue {
        let mut acc = p.coords[i - 1].clone();
        for (r, power) in powers.iter().enumerate().take(i + 1).skip(1) {
            let factor = power * self.binom[i][r];
            acc = acc.add(&self.coord(p, i - r).mul_int(&factor));
        }
        acc
    }

    fn powers(&self, steps: u64) -> Vec<BigUint> {
        let base = BigUint::from(steps);
        let mut out = Vec::with_capacity(self.k as usize + 1);
        let mut cur = BigUint::one();
        for _ in 0..=self.k {
            out.push(cur.clone());
            cur *= &base;
        }
        out
    }

    /// `R^steps(p)` in closed form.
    pub fn orbit(&self, p: &TorusPoint, steps: u64) -> Result<TorusPoint> {
        self.check_point(p)?;
        let powers = self.powers(steps);
        let coords = (1..=self.k as usize)
            .map(|i| {
                let c = self.orbit_coord(p, i, &powers);
                c.check_budget()?;
                Ok(c)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusPoint { coords })
    }

    /// `c_{j,n}`: last coordinate of `R^{jn}(p)`.
    pub fn orbit_last_coord(&self, p: &TorusPoint, j: u64, n: u64) -> Result<UnitValue> {
        self.check_point(p)?;
        let steps = j.checked_mul(n).ok_or_else(|| Error::Overflow(format!("{j} * {n}")))?;
        let c = self.orbit_coord(p, self.k as usize, &self.powers(steps));
        c.check_budget()?;
        Ok(c)
    }
}

/// `sum_j l_j c_{j,n} - (m n^k alpha + (sum_j l_j) t_k)` modulo 1, with the
/// accumulated error radius of both sides. The identity is exact, so the
/// residual is zero up to that radius.
pub fn verify_identity_e1(
    sys: &SkewSystem,
    sol: &LemmaSolution,
    p: &TorusPoint,
    n: u64,
) -> Result<UnitValue> {
    if sol.k != sys.k {
        return Err(Error::InvalidParameter(format!(
            "solution of order {} for a system of dimension {}",
            sol.k, sys.k
        )));
    }
    let mut lhs = UnitValue::zero(sys.precision());
    for (idx, &lj) in sol.l.iter().enumerate() {
        let c = sys.orbit_last_coord(p, idx as u64 + 1, n)?;
        lhs = lhs.add(&c.mul_i64(lj));
    }
    let twisted = frac_npow(n, sys.k, &sys.alpha)?.mul_i64(sol.m);
    let rhs = twisted.add(&p.last().mul_i64(sol.coefficient_sum()));
    let residual = lhs.sub(&rhs);
    residual.check_budget()?;
    Ok(residual)
}

/// The sup-norm ball of radius `epsilon / (2M)` around the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonBall {
    pub epsilon: Rational,
    /// `M = sum_j |l_j|`.
    pub total: u64,
}

impl EpsilonBall {
    pub fn new(epsilon: Rational, sol: &LemmaSolution) -> Result<Self> {
        if epsilon == Rational::from_integer(0) || epsilon >= Rational::new(1, 4) {
            return Err(Error::InvalidParameter(format!("epsilon {epsilon} must lie in (0, 1/4)")));
        }
        Ok(Self { epsilon, total: sol.total })
    }

    pub fn radius(&self) -> Rational {
        self.epsilon / Rational::from_integer(2 * self.total)
    }

    /// Every stored coordinate is within the radius of 0 modulo 1.
    pub fn contains(&self, p: &TorusPoint) -> bool {
        let radius = self.radius();
        p.coords.iter().all(|c| {
            let d = c.dist_to_integer();
            d.mantissa() * BigUint::from(*radius.denom())
                <= BigUint::from(*radius.numer()) << d.bits()
        })
    }
}

/// `alpha / m` with `m` from [`solve_canonical`]: the rotation parameter of the
/// system whose non-recurrence along `S_k(alpha)` is certified.
pub fn system_parameter(k: u32, alpha: &AlphaSpec) -> Result<AlphaSpec> {
    let sol = solve_canonical(k)?;
    alpha.divided_by(sol.m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateEntry {
    pub n: u64,
    /// `||m n^k alpha'||` as stored.
    pub distance: f64,
    /// The certified lower bound exceeds epsilon.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub k: u32,
    pub epsilon: Rational,
    pub solution: LemmaSolution,
    pub system_alpha: AlphaSpec,
    pub entries: Vec<CertificateEntry>,
}

impl CertificateReport {
    pub fn radius(&self) -> Rational {
        self.epsilon / Rational::from_integer(2 * self.solution.total)
    }

    pub fn certified_count(&self) -> usize {
        self.entries.iter().filter(|e| e.certified).count()
    }

    /// Vacuously true for an empty set.
    pub fn all_certified(&self) -> bool {
        self.entries.iter().all(|e| e.certified)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CertificateEntry> {
        self.entries.iter().filter(|e| !e.certified)
    }

    pub fn min_distance(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.distance).reduce(f64::min)
    }
}

/// For each `n` in `set ∩ [1, n_limit]`, certifies
/// `U_eps ∩ R^{-n} U_eps ∩ ... ∩ R^{-kn} U_eps = ∅` for the system with
/// parameter `alpha' = alpha / m`, by checking `||n^k m alpha'|| > epsilon`.
///
/// The working precision is `prec` widened by the bits of `m`, since the
/// twisted value carries an error of `m n^k`.
pub fn nonrecurrence_certificate(
    k: u32,
    alpha: &AlphaSpec,
    set: &SetStream,
    epsilon: Rational,
    n_limit: u64,
    prec: Precision,
) -> Result<CertificateReport> {
    let solution = solve_canonical(k)?;
    EpsilonBall::new(epsilon, &solution)?;
    let system_alpha = alpha.divided_by(solution.m)?;
    let extra = 64 - (solution.m as u64).leading_zeros();
    let work = Precision::new(prec.bits() + extra)?;
    let a = system_alpha.realize(work);
    let members = set.prefix_up_to(n_limit);
    let chunks = map_chunks(0..members.len() as u64, 4096, |r| {
        members[r.start as usize..r.end as usize]
            .iter()
            .map(|&n| {
                let twisted = frac_npow(n, k, &a)?.mul_i64(solution.m);
                twisted.check_budget()?;
                let dist = twisted.dist_to_integer();
                Ok(CertificateEntry {
                    n,
                    distance: dist.to_f64(),
                    certified: dist.certainly_above(epsilon),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(CertificateReport {
        k,
        epsilon,
        solution,
        system_alpha,
        entries: chunks.into_iter().flatten().collect(),
    })
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Additive-recurrence (Kronecker) sampler over the ball, one 64-bit lattice
/// coordinate per torus coordinate. Sample `i` depends only on `(seed, i)`.
#[derive(Debug, Clone)]
pub struct BallSampler {
    starts: Vec<u64>,
    steps: Vec<u64>,
}

impl BallSampler {
    pub fn new(dim: u32, seed: u64) -> Self {
        // Generalized golden ratio: the positive root of x^(d+1) = x + 1.
        let d = dim as f64;
        let mut phi = 2.0f64;
        for _ in 0..64 {
            phi = (1.0 + phi).powf(1.0 / (d + 1.0));
        }
        let steps = (0..dim)
            .map(|c| {
                let a = phi.powi(-(c as i32 + 1)).fract();
                ((a * 18_446_744_073_709_551_616.0) as u64) | 1
            })
            .collect();
        let starts =
            (0..dim as u64).map(|c| splitmix64(seed ^ c.wrapping_mul(0x100_0000_01b3))).collect();
        Self { starts, steps }
    }

    /// Sample `i` as a point of the ball.
    pub fn sample(&self, ball: &EpsilonBall, prec: Precision, i: u64) -> TorusPoint {
        let radius = ball.radius();
        let num = BigInt::from(*radius.numer()) << prec.bits();
        let den = BigInt::from(*radius.denom()) << 63;
        let coords = self
            .starts
            .iter()
            .zip(&self.steps)
            .map(|(&start, &step)| {
                let u = start.wrapping_add(i.wrapping_mul(step));
                // u - 2^63 in [-2^63, 2^63) maps to an offset in [-radius, radius).
                let centered = BigInt::from(u as i128 - (1i128 << 63));
                let offset = num_integer::Integer::div_floor(&(centered * &num), &den);
                UnitValue::from_mantissa(reduce_signed(&offset, prec.bits()), BigUint::zero(), prec)
            })
            .collect();
        TorusPoint { coords }
    }
}

/// Number of sampled `p ∈ U_eps` with `R^{jn} p ∈ U_eps` for every `j = 1..k`.
pub fn monte_carlo_return_check(
    sys: &SkewSystem,
    ball: &EpsilonBall,
    n: u64,
    samples: u64,
    seed: u64,
) -> Result<u64> {
    let sampler = BallSampler::new(sys.k, seed);
    let prec = sys.precision();
    tree_sum(0..samples, |i| {
        let p = sampler.sample(ball, prec, i);
        if !ball.contains(&p) {
            return Ok(0u64);
        }
        for j in 1..=sys.k as u64 {
            let steps = j.checked_mul(n).ok_or_else(|| Error::Overflow(format!("{j} * {n}")))?;
            if !ball.contains(&sys.orbit(&p, steps)?) {
                return Ok(0);
            }
        }
        Ok(1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::gen_sk;

    fn prec(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn quarter(p: Precision) -> UnitValue {
        UnitValue::from_ratio(1, 4, p).unwrap()
    }

    #[test]
    fn k2_step_matches_hand_formula() {
        let p = prec(128);
        let alpha = AlphaSpec::sqrt2().realize(p);
        let sys = SkewSystem::new(2, alpha.clone()).unwrap();
        let t = TorusPoint::parse("0.3,0.7", p).unwrap();
        let next = sys.step(&t).unwrap();
        let (t1, t2) = (&t.coords()[0], &t.coords()[1]);
        assert_eq!(next.coords()[0], t1.add(&alpha));
        assert_eq!(next.coords()[1], t2.add(&t1.mul_u64(2)).add(&alpha));
    }

    #[test]
    fn k1_is_rotation() {
        let p = prec(128);
        let alpha = AlphaSpec::sqrt2().realize(p);
        let sys = SkewSystem::new(1, alpha.clone()).unwrap();
        let t = TorusPoint::parse("0.125", p).unwrap();
        assert_eq!(sys.step(&t).unwrap().coords()[0], t.coords()[0].add(&alpha));
        let far = sys.iterate(&t, 37).unwrap();
        assert_eq!(far.coords()[0].mantissa(), t.coords()[0].add(&alpha.mul_u64(37)).mantissa());
    }

    #[test]
    fn origin_step_with_dyadic_alpha() {
        let p = prec(64);
        let sys = SkewSystem::new(2, quarter(p)).unwrap();
        let next = sys.step(&TorusPoint::origin(2, p)).unwrap();
        assert_eq!(next.coords(), &[quarter(p), quarter(p)]);
    }

    #[test]
    fn last_coord_examples() {
        let p = prec(128);
        let alpha = AlphaSpec::sqrt2().realize(p);
        let sys = SkewSystem::new(2, alpha.clone()).unwrap();
        let origin = TorusPoint::origin(2, p);
        // c_{2,3} at the origin is {36 sqrt 2} = 0.91168824543...
        let c = sys.orbit_last_coord(&origin, 2, 3).unwrap();
        assert!((c.to_f64() - 0.911_688_245_431_421_8).abs() < 1e-15);

        let t = TorusPoint::parse("0.3,0.7", p).unwrap();
        assert_eq!(&sys.orbit_last_coord(&t, 5, 0).unwrap(), t.last());
        let n = 11u64;
        let by_hand = t.coords()[1].add(&t.coords()[0].mul_u64(2 * n)).add(&alpha.mul_u64(n * n));
        assert_eq!(sys.orbit_last_coord(&t, 1, n).unwrap(), by_hand);
    }

    #[test]
    fn identity_k2_residual_zero() {
        let p = prec(160);
        let sys = SkewSystem::from_spec(2, &AlphaSpec::sqrt2(), p).unwrap();
        let sol = solve_canonical(2).unwrap();
        let t = TorusPoint::parse("0.123,0.456", p).unwrap();
        for n in [0, 1, 2, 17, 999_983] {
            let res = verify_identity_e1(&sys, &sol, &t, n).unwrap();
            assert!(res.is_zero_within_err(), "n={n}: {res:?}");
            assert!(res.mantissa().is_zero());
        }
    }

    #[test]
    fn identity_rejects_mismatched_order() {
        let p = prec(128);
        let sys = SkewSystem::from_spec(3, &AlphaSpec::sqrt2(), p).unwrap();
        let sol = solve_canonical(2).unwrap();
        let t = TorusPoint::origin(3, p);
        assert!(verify_identity_e1(&sys, &sol, &t, 3).is_err());
    }

    #[test]
    fn ball_bounds() {
        let sol = solve_canonical(2).unwrap();
        assert!(EpsilonBall::new(Rational::new(1, 4), &sol).is_err());
        assert!(EpsilonBall::new(Rational::from_integer(0), &sol).is_err());
        let ball = EpsilonBall::new(Rational::new(1, 10), &sol).unwrap();
        assert_eq!(ball.radius(), Rational::new(1, 60));
    }

    #[test]
    fn sampler_stays_in_ball() {
        let p = prec(128);
        let sol = solve_canonical(3).unwrap();
        let ball = EpsilonBall::new(Rational::new(1, 10), &sol).unwrap();
        let sampler = BallSampler::new(3, 7);
        for i in 0..500 {
            assert!(ball.contains(&sampler.sample(&ball, p, i)));
        }
    }

    #[test]
    fn certificate_examples() {
        let alpha = AlphaSpec::sqrt2();
        let p = Precision::policy(2, 100_000).unwrap();
        let eps = Rational::new(1, 10);
        let s = gen_sk(2, &alpha, 2000, p).unwrap();
        let report = nonrecurrence_certificate(2, &alpha, &s, eps, 2000, p).unwrap();
        assert!(report.all_certified());
        assert!(report.min_distance().unwrap() >= 0.25 - 1e-12);

        let six = SetStream::explicit(vec![6], None).unwrap();
        let report = nonrecurrence_certificate(2, &alpha, &six, eps, 10, p).unwrap();
        assert!(!report.all_certified());
        assert!((report.entries[0].distance - 0.088_311_754_568_578_2).abs() < 1e-12);

        let empty = SetStream::explicit(vec![], None).unwrap();
        let report = nonrecurrence_certificate(2, &alpha, &empty, eps, 10, p).unwrap();
        assert!(report.all_certified());
        assert!(report.entries.is_empty());
    }

    #[test]
    fn zero_samples_count_zero() {
        let p = prec(128);
        let sys = SkewSystem::from_spec(2, &AlphaSpec::sqrt2(), p).unwrap();
        let ball = EpsilonBall::new(Rational::new(1, 10), &solve_canonical(2).unwrap()).unwrap();
        assert_eq!(monte_carlo_return_check(&sys, &ball, 5, 0, 1).unwrap(), 0);
    }
}
