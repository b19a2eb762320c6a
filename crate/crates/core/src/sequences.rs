//! The integer sets `S_k`, `S'_k` and `S^k`.
//!
//! * `S_k = { n : {n^k alpha} in [1/4, 3/4] }`.
//! * `S'_k` is the union over `j >= 1` of dyadic blocks `I_j`: the integers of
//!   `[2^j, 2^(j+1)]` whose `{n^k alpha}` lies in `[1/10, 2/10]` for even `j`
//!   and in `[5/10, 6/10]` for odd `j`. Neighbouring blocks share the endpoint
//!   `2^(j+1)`; it is assigned to the lower block.
//! * `S^k` is the image of a set under `a -> a^k`.
//!
//! Membership is decided by [`UnitValue::interval_test`]; values whose error
//! ball straddles an endpoint are left out and counted in `uncertain_count`.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::ops::Range;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fixedpoint::{frac_npow, AlphaSpec, Membership, Precision, Rational, UnitValue};
use crate::parallel::map_chunks;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetKind {
    Sk,
    SkPrime,
    Power {
        base: Box<SetKind>,
        exponent: u32,
    },
    /// Elements supplied directly (set files, hand-built sets).
    Explicit,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetKind::Sk => write!(f, "sk"),
            SetKind::SkPrime => write!(f, "skprime"),
            SetKind::Power { base, exponent } => write!(f, "power{exponent}({base})"),
            SetKind::Explicit => write!(f, "explicit"),
        }
    }
}

/// The fractional-part window defining `S_k`.
pub fn sk_interval() -> (Rational, Rational) {
    (Rational::new(1, 4), Rational::new(3, 4))
}

/// Fractional-part window of dyadic block `j`.
pub fn block_interval(j: u32) -> (Rational, Rational) {
    if j.is_multiple_of(2) {
        (Rational::new(1, 10), Rational::new(2, 10))
    } else {
        (Rational::new(5, 10), Rational::new(6, 10))
    }
}

/// Integer range `[lo, hi]` owned by block `j >= 1`.
pub fn block_range(j: u32) -> (u64, u64) {
    assert!((1..63).contains(&j), "block index {j} out of range");
    let hi = 1u64 << (j + 1);
    let lo = if j == 1 { 2 } else { (1u64 << j) + 1 };
    (lo, hi)
}

/// Block owning `n`, if any (`1` belongs to no block).
pub fn block_of(n: u64) -> Option<u32> {
    match n {
        0 | 1 => None,
        2..=4 => Some(1),
        _ => Some(crate::fixedpoint::ceil_log2(n) - 1),
    }
}

/// One dyadic block of an `S'_k` stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub j: u32,
    pub lo: u64,
    pub hi: u64,
    /// Index into the stream of the first element of this block.
    pub first_index: usize,
    pub len: usize,
}

impl Block {
    pub fn range_len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn density(&self) -> f64 {
        self.len as f64 / self.range_len() as f64
    }

    pub fn indices(&self) -> Range<usize> {
        self.first_index..self.first_index + self.len
    }
}

/// Members of a range together with the count of undecidable indices.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Scan {
    pub members: Vec<u64>,
    pub uncertain: u64,
}

fn scan_with<F>(range: Range<u64>, k: u32, alpha: &UnitValue, window: F) -> Result<Scan>
where
    F: Fn(u64) -> Option<(Rational, Rational)>,
{
    let mut scan = Scan::default();
    for n in range {
        let Some((lo, hi)) = window(n) else { continue };
        match frac_npow(n, k, alpha)?.interval_test(lo, hi) {
            Membership::Inside => scan.members.push(n),
            Membership::Outside => {}
            Membership::Uncertain => scan.uncertain += 1,
        }
    }
    Ok(scan)
}

/// Sequential `S_k` membership scan of `range`.
pub fn scan_sk(k: u32, alpha: &UnitValue, range: Range<u64>) -> Result<Scan> {
    let (lo, hi) = sk_interval();
    scan_with(range, k, alpha, |_| Some((lo, hi)))
}

/// Sequential `S'_k` membership scan of `range`.
pub fn scan_skprime(k: u32, alpha: &UnitValue, range: Range<u64>) -> Result<Scan> {
    scan_with(range, k, alpha, |n| block_of(n).map(block_interval))
}

fn par_scan(range: Range<u64>, f: impl Fn(Range<u64>) -> Result<Scan> + Sync) -> Result<Scan> {
    let parts = map_chunks(range, CHUNK, f)?;
    let mut out = Scan::default();
    for part in parts {
        out.members.extend(part.members);
        out.uncertain += part.uncertain;
    }
    Ok(out)
}

/// An ascending enumeration of a generated set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetStream {
    pub kind: SetKind,
    pub k: u32,
    pub alpha: Option<AlphaSpec>,
    /// The stream enumerates every member of `[1, bound]`.
    pub bound: u64,
    pub uncertain_count: u64,
    elements: Vec<u64>,
    blocks: Vec<Block>,
}

impl SetStream {
    /// A hand-supplied set; `elements` must be strictly increasing and positive.
    pub fn explicit(elements: Vec<u64>, bound: Option<u64>) -> Result<Self> {
        if elements.first() == Some(&0) {
            return Err(Error::InvalidParameter("set elements must be positive".into()));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("set elements must be strictly increasing".into()));
        }
        let last = elements.last().copied().unwrap_or(0);
        let bound = bound.unwrap_or(last).max(last);
        Ok(Self {
            kind: SetKind::Explicit,
            k: 0,
            alpha: None,
            bound,
            uncertain_count: 0,
            elements,
            blocks: Vec::new(),
        })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.iter().copied()
    }

    /// Dyadic blocks (only for `S'_k` streams).
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    /// Number of members in `[1, n]`.
    pub fn count_up_to(&self, n: u64) -> usize {
        self.elements.partition_point(|&x| x <= n)
    }

    /// Members `<= n` as a slice.
    pub fn prefix_up_to(&self, n: u64) -> &[u64] {
        &self.elements[..self.count_up_to(n)]
    }

    /// Writes a checkpoint: a header comment and one integer per line.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = BufWriter::new(File::create(path)?);
        let alpha = self.alpha.as_ref().map(|a| a.to_string()).unwrap_or_else(|| "-".into());
        writeln!(
            out,
            "# reclab-set kind={} k={} alpha={} bound={} uncertain={}",
            self.kind, self.k, alpha, self.bound, self.uncertain_count
        )?;
        for n in &self.elements {
            writeln!(out, "{n}")?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a checkpoint written by [`SetStream::save`] or any set file
    /// accepted by [`read_set_file`].
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let elements = parse_set_text(&text)?;
        let mut stream = Self::explicit(elements, None)?;
        let header = text.lines().find_map(|l| l.trim().strip_prefix("# reclab-set "));
        if let Some(header) = header {
            for field in header.split_whitespace() {
                let Some((key, value)) = field.split_once('=') else { continue };
                let bad = || Error::Parse(format!("bad checkpoint field `{field}`"));
                match key {
                    "kind" => {
                        stream.kind = match value {
                            "sk" => SetKind::Sk,
                            "skprime" => SetKind::SkPrime,
                            _ => SetKind::Explicit,
                        }
                    }
                    "k" => stream.k = value.parse().map_err(|_| bad())?,
                    "alpha" if value != "-" => stream.alpha = Some(value.parse()?),
                    "bound" => stream.bound = value.parse().map_err(|_| bad())?,
                    "uncertain" => stream.uncertain_count = value.parse().map_err(|_| bad())?,
                    _ => {}
                }
            }
            if stream.kind == SetKind::SkPrime {
                stream.blocks = rebuild_blocks(&stream.elements, stream.bound);
            }
        }
        Ok(stream)
    }
}

fn rebuild_blocks(elements: &[u64], bound: u64) -> Vec<Block> {
    let j_max = crate::fixedpoint::ceil_log2(bound).saturating_sub(1);
    let mut blocks = Vec::with_capacity(j_max as usize);
    for j in 1..=j_max {
        let (lo, hi) = block_range(j);
        let first_index = elements.partition_point(|&x| x < lo);
        let end = elements.partition_point(|&x| x <= hi);
        blocks.push(Block { j, lo, hi, first_index, len: end - first_index });
    }
    blocks
}

/// Parses set-file text: one integer per line, `a..b` for an inclusive run,
/// `#` comments. Output is sorted and deduplicated.
pub fn parse_set_text(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Parse(format!("set file line {}: `{}`", lineno + 1, raw.trim()));
        if let Some((a, b)) = line.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(line.parse().map_err(|_| bad())?);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.first() == Some(&0) {
        return Err(Error::Parse("set files hold positive integers".into()));
    }
    Ok(out)
}

pub fn read_set_file(path: &Path) -> Result<Vec<u64>> {
    let file = File::open(path)?;
    let mut text = String::new();
    for line in BufReader::new(file).lines() {
        text.push_str(&line?);
        text.push('\n');
    }
    parse_set_text(&text)
}

/// `S_k` over `[1, n_max]`.
pub fn gen_sk(k: u32, alpha: &AlphaSpec, n_max: u64, prec: Precision) -> Result<SetStream> {
    let a = alpha.realize(prec);
    let scan = par_scan(1..n_max + 1, |r| scan_sk(k, &a, r))?;
    Ok(SetStream {
        kind: SetKind::Sk,
        k,
        alpha: Some(alpha.clone()),
        bound: n_max,
        uncertain_count: scan.uncertain,
        elements: scan.members,
        blocks: Vec::new(),
    })
}

/// `S'_k` restricted to blocks `I_1, ..., I_{j_max}`.
pub fn gen_skprime(k: u32, alpha: &AlphaSpec, j_max: u32, prec: Precision) -> Result<SetStream> {
    if j_max >= 62 {
        return Err(Error::InvalidParameter(format!("j_max={j_max} too large")));
    }
    let a = alpha.realize(prec);
    let mut elements = Vec::new();
    let mut blocks = Vec::with_capacity(j_max as usize);
    let mut uncertain = 0;
    for j in 1..=j_max {
        let (lo, hi) = block_range(j);
        let scan = par_scan(lo..hi + 1, |r| scan_skprime(k, &a, r))?;
        blocks.push(Block { j, lo, hi, first_index: elements.len(), len: scan.members.len() });
        elements.extend(scan.members);
        uncertain += scan.uncertain;
    }
    let bound = if j_max == 0 { 0 } else { 1u64 << (j_max + 1) };
    Ok(SetStream {
        kind: SetKind::SkPrime,
        k,
        alpha: Some(alpha.clone()),
        bound,
        uncertain_count: uncertain,
        elements,
        blocks,
    })
}

/// `{a^k : a in s}` in the same order.
pub fn power_set(s: &SetStream, k: u32) -> Result<SetStream> {
    let overflow = |a: u64| Error::Overflow(format!("{a}^{k} exceeds 64 bits"));
    let elements = s
        .elements
        .iter()
        .map(|&a| a.checked_pow(k).ok_or_else(|| overflow(a)))
        .collect::<Result<Vec<_>>>()?;
    let bound = s.bound.checked_pow(k).ok_or_else(|| overflow(s.bound))?;
    Ok(SetStream {
        kind: SetKind::Power { base: Box::new(s.kind.clone()), exponent: k },
        k: s.k,
        alpha: s.alpha.clone(),
        bound,
        uncertain_count: s.uncertain_count,
        elements,
        blocks: Vec::new(),
    })
}

/// `|s ∩ [1, n]| / n`.
pub fn density(s: &SetStream, n: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidParameter("density over an empty range".into()));
    }
    if n > s.bound && s.kind != SetKind::Explicit {
        return Err(Error::InvalidParameter(format!(
            "stream materialized to {} only, asked for {n}",
            s.bound
        )));
    }
    Ok(Rational::new(s.count_up_to(n) as u64, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2_stream(k: u32, n_max: u64) -> SetStream {
        gen_sk(k, &AlphaSpec::sqrt2(), n_max, Precision::policy(k, n_max).unwrap()).unwrap()
    }

    #[test]
    fn small_sk_members() {
        let s = sqrt2_stream(2, 5);
        assert_eq!(s.elements(), &[1, 2, 3, 4, 5]);
        assert_eq!(density(&s, 5).unwrap(), Rational::from_integer(1));
        let s = sqrt2_stream(2, 10);
        assert!(s.contains(1));
        // {36 sqrt 2} = 0.9117
        assert!(!s.contains(6));
        assert_eq!(s.uncertain_count, 0);
    }

    #[test]
    fn block_geometry() {
        assert_eq!(block_range(1), (2, 4));
        assert_eq!(block_range(2), (5, 8));
        assert_eq!(block_range(4), (17, 32));
        assert_eq!(block_of(1), None);
        assert_eq!(block_of(2), Some(1));
        assert_eq!(block_of(4), Some(1));
        assert_eq!(block_of(5), Some(2));
        assert_eq!(block_of(32), Some(4));
        assert_eq!(block_of(33), Some(5));
        for j in 1..20 {
            let (lo, hi) = block_range(j);
            assert_eq!(block_of(lo), Some(j));
            assert_eq!(block_of(hi), Some(j));
        }
    }

    #[test]
    fn empty_skprime() {
        let s = gen_skprime(2, &AlphaSpec::sqrt2(), 0, Precision::new(64).unwrap()).unwrap();
        assert!(s.is_empty());
        assert!(s.blocks().is_empty());
    }

    #[test]
    fn skprime_blocks_respect_windows() {
        let alpha = AlphaSpec::sqrt2();
        let prec = Precision::policy(2, 1 << 13).unwrap();
        let s = gen_skprime(2, &alpha, 12, prec).unwrap();
        let a = alpha.realize(prec);
        for b in s.blocks() {
            let (lo, hi) = block_interval(b.j);
            for &n in &s.elements()[b.indices()] {
                assert!(n >= b.lo && n <= b.hi);
                let x = frac_npow(n, 2, &a).unwrap();
                assert_eq!(x.interval_test(lo, hi), Membership::Inside);
            }
        }
        assert!(s.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn power_set_examples() {
        let base = SetStream::explicit(vec![1, 2, 3], None).unwrap();
        assert_eq!(power_set(&base, 2).unwrap().elements(), &[1, 4, 9]);
        let base = SetStream::explicit(vec![2], None).unwrap();
        assert_eq!(power_set(&base, 3).unwrap().elements(), &[8]);
        let s = sqrt2_stream(2, 5);
        assert_eq!(power_set(&s, 2).unwrap().elements(), &[1, 4, 9, 16, 25]);
        let big = SetStream::explicit(vec![1 << 33], None).unwrap();
        assert!(matches!(power_set(&big, 2), Err(Error::Overflow(_))));
    }

    #[test]
    fn empty_stream_density_zero() {
        let s = SetStream::explicit(vec![], Some(100)).unwrap();
        assert_eq!(density(&s, 100).unwrap(), Rational::from_integer(0));
        assert!(density(&s, 0).is_err());
    }

    #[test]
    fn explicit_rejects_unsorted() {
        assert!(SetStream::explicit(vec![3, 2], None).is_err());
        assert!(SetStream::explicit(vec![0, 2], None).is_err());
    }

    #[test]
    fn set_text_parsing() {
        let v = parse_set_text("# header\n5\n1..3\n\n2 # dup\n").unwrap();
        assert_eq!(v, vec![1, 2, 3, 5]);
        assert!(parse_set_text("x\n").is_err());
        assert!(parse_set_text("5..1\n").is_err());
    }

    #[test]
    fn members_are_far_from_integers() {
        let alpha = AlphaSpec::sqrt2();
        let prec = Precision::policy(3, 5000).unwrap();
        let s = gen_sk(3, &alpha, 5000, prec).unwrap();
        let a = alpha.realize(prec);
        let quarter = Rational::new(1, 4);
        for n in s.iter() {
            let d = frac_npow(n, 3, &a).unwrap().dist_to_integer();
            assert!(d.interval_test(quarter, Rational::new(1, 2)) == Membership::Inside);
        }
    }
}
