//! Ground truth independent of the path combinatorics.
//!
//! Candidates for `x_{n+1}`, `y_{n+1}` come from substituting the automorphism into
//! `x_n`, `y_n`. The non-polynomial letter images expand as alternating geometric series,
//! truncated by degree. Candidates are then certified by the multiplication-only identities
//! `x_{n+1} x_n = x_n y_n` and `y_{n+1} x_n = 1 + y_n^r`. The group ring of the free group
//! has no zero divisors, so a candidate passing its identity is the true value.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::dyck::check_r;
use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::poly::{CommPoly, NCPoly};
use crate::serial::PolyDump;
use crate::word::{Gen, ReducedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Debug)]
enum LetterImage {
    Terms(Vec<(ReducedWord, i64)>),
    /// `head * sum_k (-1)^k gen^(step k)`.
    Series { head: ReducedWord, gen: Gen, step: i32 },
}

fn word(raw: &[(Gen, i32)]) -> ReducedWord {
    ReducedWord::reduce(raw.iter().copied())
}

/// The substitution `x -> x y x^-1`, `y -> (1 + y^r) x^-1`, or its inverse
/// `x -> (1 + x^r) y^-1`, `y -> y x y^-1`.
struct Substitution {
    grading: Gen,
    /// Images of `x`, `x^-1`, `y`, `y^-1`.
    images: [LetterImage; 4],
}

impl Substitution {
    fn new(r: u32, dir: Direction) -> Self {
        use Gen::{X, Y};
        let r = r as i32;
        match dir {
            Direction::Forward => Substitution {
                grading: Y,
                images: [
                    LetterImage::Terms(vec![(word(&[(X, 1), (Y, 1), (X, -1)]), 1)]),
                    LetterImage::Terms(vec![(word(&[(X, 1), (Y, -1), (X, -1)]), 1)]),
                    LetterImage::Terms(vec![(word(&[(Y, r), (X, -1)]), 1), (word(&[(X, -1)]), 1)]),
                    LetterImage::Series { head: word(&[(X, 1)]), gen: Y, step: r },
                ],
            },
            Direction::Inverse => Substitution {
                grading: X,
                images: [
                    LetterImage::Terms(vec![(word(&[(X, r), (Y, -1)]), 1), (word(&[(Y, -1)]), 1)]),
                    LetterImage::Series { head: word(&[(Y, 1)]), gen: X, step: r },
                    LetterImage::Terms(vec![(word(&[(Y, 1), (X, 1), (Y, -1)]), 1)]),
                    LetterImage::Terms(vec![(word(&[(Y, 1), (X, -1), (Y, -1)]), 1)]),
                ],
            },
        }
    }

    fn image(&self, gen: Gen, positive: bool) -> &LetterImage {
        let idx = match (gen, positive) {
            (Gen::X, true) => 0,
            (Gen::X, false) => 1,
            (Gen::Y, true) => 2,
            (Gen::Y, false) => 3,
        };
        &self.images[idx]
    }

    /// Lowest degree the image reaches and the degree of its leading (series-free) part.
    fn degree_bounds(&self, img: &LetterImage) -> (i64, i64) {
        match img {
            LetterImage::Terms(ts) => {
                let ds = ts.iter().map(|(w, _)| w.degree(self.grading));
                let (lo, hi) = ds.fold((i64::MAX, i64::MIN), |(a, b), d| (a.min(d), b.max(d)));
                (lo, hi)
            }
            LetterImage::Series { head, .. } => {
                let d = head.degree(self.grading);
                (d, d)
            }
        }
    }
}

/// Result of one substitution pass.
#[derive(Clone, Debug)]
pub struct Applied {
    pub poly: NCPoly,
    /// Degree window (in the grading generator) inside which every coefficient is exact.
    pub window: (i64, i64),
    /// Some output term sits within `r` of the upper end of the window.
    pub boundary_touched: bool,
    /// Some letter image was a series.
    pub series_used: bool,
}

struct Expander<'a> {
    sub: &'a Substitution,
    hi: i64,
}

impl Expander<'_> {
    fn expand(&self, factors: &[&LetterImage], suffix_min: &[i64], coeff: &Integer, out: &mut NCPoly) {
        let mut cur = ReducedWord::one();
        self.walk(factors, suffix_min, 0, &mut cur, 0, 1, coeff, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        factors: &[&LetterImage],
        suffix_min: &[i64],
        idx: usize,
        cur: &mut ReducedWord,
        deg: i64,
        sign: i64,
        coeff: &Integer,
        out: &mut NCPoly,
    ) {
        if idx == factors.len() {
            let c = if sign > 0 { coeff.clone() } else { -coeff };
            out.add_term(cur.clone(), c);
            return;
        }
        let g = self.sub.grading;
        let rest = suffix_min[idx + 1];
        match factors[idx] {
            LetterImage::Terms(ts) => {
                for (w, c) in ts {
                    let d = deg + w.degree(g);
                    if d + rest > self.hi {
                        continue;
                    }
                    let mut next = cur.clone();
                    next.push_word(w);
                    self.walk(factors, suffix_min, idx + 1, &mut next, d, sign * c, coeff, out);
                }
            }
            LetterImage::Series { head, gen, step } => {
                let base = deg + head.degree(g);
                let per = if *gen == g { *step as i64 } else { 0 };
                let mut k = 0i64;
                while base + per * k + rest <= self.hi {
                    let mut next = cur.clone();
                    next.push_word(head);
                    next.push(*gen, step * k as i32);
                    let s = if k % 2 == 0 { sign } else { -sign };
                    self.walk(factors, suffix_min, idx + 1, &mut next, base + per * k, s, coeff, out);
                    k += 1;
                    if per == 0 {
                        break;
                    }
                }
            }
        }
    }
}

/// Applies `F` (or `F^-1`) letterwise. Every output coefficient of grading-degree at most
/// `observed max + margin` is exact, where the observed max is the largest degree reached
/// with every series cut to its constant term.
pub fn apply_f(p: &NCPoly, r: u32, dir: Direction, margin: i64) -> Result<Applied> {
    check_r(r)?;
    if margin < r as i64 {
        return Err(Error::Validation(format!("margin {margin} is below r = {r}")));
    }
    let sub = Substitution::new(r, dir);
    let mut series_used = false;
    let mut observed = i64::MIN;
    let mut lowest = i64::MAX;
    let mut jobs = Vec::with_capacity(p.len());
    for (w, c) in p.iter() {
        let mut factors = Vec::new();
        for s in w.syllables() {
            let img = sub.image(s.gen, s.exp > 0);
            series_used |= matches!(img, LetterImage::Series { .. });
            for _ in 0..s.exp.unsigned_abs() {
                factors.push(img);
            }
        }
        let bounds: Vec<(i64, i64)> = factors.iter().map(|f| sub.degree_bounds(f)).collect();
        let mut suffix_min = vec![0i64; factors.len() + 1];
        for i in (0..factors.len()).rev() {
            suffix_min[i] = suffix_min[i + 1] + bounds[i].0;
        }
        observed = observed.max(bounds.iter().map(|b| b.1).sum());
        lowest = lowest.min(suffix_min[0]);
        jobs.push((factors, suffix_min, c));
    }
    if jobs.is_empty() {
        return Ok(Applied {
            poly: NCPoly::zero(),
            window: (0, 0),
            boundary_touched: false,
            series_used: false,
        });
    }
    let hi = observed + margin;
    let ex = Expander { sub: &sub, hi };
    let poly = jobs
        .par_iter()
        .fold(NCPoly::zero, |mut acc, (factors, suffix_min, c)| {
            ex.expand(factors, suffix_min, c, &mut acc);
            acc
        })
        .reduce(NCPoly::zero, |mut a, b| {
            a.add_assign_ref(&b);
            a
        });
    let g = sub.grading;
    let boundary_touched = poly.iter().any(|(w, _)| w.degree(g) > hi - r as i64);
    Ok(Applied {
        poly,
        window: (lowest, hi),
        boundary_touched,
        series_used,
    })
}

/// `F(p)` within the guaranteed window, with the margin doubled until the boundary of the
/// window stays clear of output terms.
pub fn apply_f_settled(p: &NCPoly, r: u32, dir: Direction, margin: i64) -> Result<Applied> {
    let mut m = margin.max(r as i64);
    for _ in 0..MAX_ATTEMPTS {
        let a = apply_f(p, r, dir, m)?;
        if !a.boundary_touched {
            return Ok(a);
        }
        m *= 2;
    }
    Err(Error::ResourceCap {
        what: "substitution window kept touching output terms".into(),
        limit: MAX_ATTEMPTS as u64,
    })
}

const MAX_ATTEMPTS: u32 = 6;

pub const DEFAULT_MARGIN: i64 = 8;

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    /// `x_{n} x_{n-1} = x_{n-1} y_{n-1}` held.
    pub x_identity: bool,
    /// `y_{n} x_{n-1} = 1 + y_{n-1}^r` held; `None` when `y_n` was not computed.
    pub y_identity: Option<bool>,
    pub margin: i64,
    pub attempts: u32,
}

#[derive(Clone, Debug)]
pub struct CertifiedPair {
    pub n: u32,
    pub x: NCPoly,
    /// `y_n`; the last pair of a chain carries none.
    pub y: Option<NCPoly>,
    pub certificate: Certificate,
}

/// `cand * x_prev == x_prev * y_prev`.
pub fn certify_x(x_prev: &NCPoly, y_prev: &NCPoly, cand: &NCPoly) -> bool {
    cand.mul(x_prev) == x_prev.mul(y_prev)
}

/// `cand * x_prev == 1 + y_prev^r`.
pub fn certify_y(r: u32, x_prev: &NCPoly, y_prev: &NCPoly, cand: &NCPoly) -> bool {
    cand.mul(x_prev) == NCPoly::one().add(&y_prev.pow(r))
}

fn certified_step(
    r: u32,
    source: &NCPoly,
    margin: i64,
    check: impl Fn(&NCPoly) -> bool,
    label: &str,
) -> Result<(NCPoly, i64, u32)> {
    let mut m = margin.max(r as i64);
    for attempt in 1..=MAX_ATTEMPTS {
        let cand = apply_f(source, r, Direction::Forward, m)?;
        if check(&cand.poly) {
            return Ok((cand.poly, m, attempt));
        }
        m *= 2;
    }
    Err(Error::Mismatch(format!(
        "no certified candidate for {label} (r = {r}) up to margin {}",
        m / 2
    )))
}

/// Certified `(x_n, y_n)` for `n = 0..=big_n`; `y` is computed up to `big_n - 1` only.
pub fn certified_chain(r: u32, big_n: u32, margin: i64) -> Result<Vec<CertifiedPair>> {
    check_r(r)?;
    let mut out = vec![CertifiedPair {
        n: 0,
        x: NCPoly::word(ReducedWord::x(1)),
        y: if big_n > 0 { Some(NCPoly::word(ReducedWord::y(1))) } else { None },
        certificate: Certificate {
            x_identity: true,
            y_identity: Some(true),
            margin: 0,
            attempts: 0,
        },
    }];
    for k in 0..big_n {
        let prev = &out[k as usize];
        let y_prev = prev.y.as_ref().expect("y is kept below the last step");
        let (x, mx, ax) = certified_step(
            r,
            &prev.x,
            margin,
            |c| certify_x(&prev.x, y_prev, c),
            &format!("x_{}", k + 1),
        )?;
        let (y, y_ok, my, ay) = if k + 1 < big_n {
            let (y, my, ay) = certified_step(
                r,
                y_prev,
                margin,
                |c| certify_y(r, &prev.x, y_prev, c),
                &format!("y_{}", k + 1),
            )?;
            (Some(y), Some(true), my, ay)
        } else {
            (None, None, 0, 0)
        };
        out.push(CertifiedPair {
            n: k + 1,
            x,
            y,
            certificate: Certificate {
                x_identity: true,
                y_identity: y_ok,
                margin: mx.max(my),
                attempts: ax.max(ay),
            },
        });
    }
    Ok(out)
}

/// Re-checks every identity of a chain (used after loading from disk).
pub fn recertify(r: u32, chain: &[CertifiedPair]) -> Result<()> {
    if let Some(first) = chain.first() {
        let seed_ok = first.x == NCPoly::word(ReducedWord::x(1))
            && first.y.as_ref().is_none_or(|y| *y == NCPoly::word(ReducedWord::y(1)));
        if first.n != 0 || !seed_ok {
            return Err(Error::Mismatch("chain does not start at (x, y)".into()));
        }
    }
    for w in chain.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        let y_prev = prev
            .y
            .as_ref()
            .ok_or_else(|| Error::Mismatch(format!("y_{} missing", prev.n)))?;
        if !certify_x(&prev.x, y_prev, &cur.x) {
            return Err(Error::Mismatch(format!("x_{} fails its identity", cur.n)));
        }
        if let Some(y) = &cur.y {
            if !certify_y(r, &prev.x, y_prev, y) {
                return Err(Error::Mismatch(format!("y_{} fails its identity", cur.n)));
            }
        }
    }
    Ok(())
}

const CACHE_FORMAT: u32 = 1;

/// Disk cache for certified chains, one JSON dump per polynomial.
pub struct ChainCache {
    dir: PathBuf,
}

impl ChainCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(ChainCache { dir })
    }

    fn file(&self, r: u32, big_n: u32, name: &str) -> PathBuf {
        self.dir.join(format!("chain-r{r}-n{big_n}-v{CACHE_FORMAT}-{name}.json"))
    }

    fn load(&self, r: u32, big_n: u32) -> Result<Option<Vec<CertifiedPair>>> {
        let mut out = Vec::new();
        for k in 0..=big_n {
            let xf = self.file(r, big_n, &format!("x{k}"));
            if !xf.exists() {
                return Ok(None);
            }
            let x = PolyDump::read(&xf)?.to_poly()?;
            let y = if k < big_n {
                Some(PolyDump::read(&self.file(r, big_n, &format!("y{k}")))?.to_poly()?)
            } else {
                None
            };
            out.push(CertifiedPair {
                n: k,
                x,
                y,
                certificate: Certificate {
                    x_identity: true,
                    y_identity: if k < big_n { Some(true) } else { None },
                    margin: 0,
                    attempts: 0,
                },
            });
        }
        Ok(Some(out))
    }

    fn store(&self, r: u32, big_n: u32, chain: &[CertifiedPair]) -> Result<()> {
        for p in chain {
            PolyDump::new(r, p.n, format!("x_{}", p.n), &p.x).write(&self.file(r, big_n, &format!("x{}", p.n)))?;
            if let Some(y) = &p.y {
                PolyDump::new(r, p.n, format!("y_{}", p.n), y).write(&self.file(r, big_n, &format!("y{}", p.n)))?;
            }
        }
        Ok(())
    }

    /// Loads the chain if cached (and re-certifies it), otherwise computes and stores it.
    pub fn chain(&self, r: u32, big_n: u32, margin: i64) -> Result<Vec<CertifiedPair>> {
        if let Some(chain) = self.load(r, big_n)? {
            recertify(r, &chain)?;
            return Ok(chain);
        }
        let chain = certified_chain(r, big_n, margin)?;
        self.store(r, big_n, &chain)?;
        Ok(chain)
    }
}

/// Commutative `t_0 = x`, `t_1 = y`, `t_{n+1} = (1 + t_n^r) / t_{n-1}`.
pub fn commutative_chain(r: u32, big_n: u32) -> Result<Vec<CommPoly>> {
    check_r(r)?;
    let mut out = vec![CommPoly::monomial((1, 0), Integer::ONE)];
    if big_n >= 1 {
        out.push(CommPoly::monomial((0, 1), Integer::ONE));
    }
    for k in 1..big_n as usize {
        let num = CommPoly::one().add(&out[k].pow(r));
        let next = num.div_exact(&out[k - 1]).ok_or_else(|| {
            Error::Mismatch(format!("commutative t_{} is not a Laurent polynomial", k + 1))
        })?;
        out.push(next);
    }
    Ok(out)
}

/// `t_n(1,1)` from the integer recurrence, integrality checked at every step.
pub fn values_at_ones(r: u32, big_n: u32) -> Result<Vec<Integer>> {
    check_r(r)?;
    let mut out = vec![Integer::ONE, Integer::ONE];
    for k in 1..big_n as usize {
        let num = &Integer::ONE + &out[k].pow(r);
        let next = num
            .div_exact(&out[k - 1])
            .ok_or_else(|| Error::Mismatch(format!("t_{}(1,1) is not an integer", k + 1)))?;
        out.push(next);
    }
    out.truncate(big_n as usize + 1);
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub r: u32,
    pub n: u32,
    pub name: String,
    pub equal: bool,
    pub term_count: usize,
    pub coeff_sum: Integer,
    pub y_degree: Option<(i64, i64)>,
    pub x_degree: Option<(i64, i64)>,
    pub positive: bool,
    pub abelian_matches_commutative: bool,
    pub oracle_positive: bool,
    /// Terms of the formula output absent from the oracle (first few, with coefficient differences).
    pub only_in_formula: Vec<String>,
    pub only_in_oracle: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.equal && self.positive && self.abelian_matches_commutative
    }
}

const DIFF_SAMPLE: usize = 20;

fn diff_sample(a: &NCPoly, b: &NCPoly) -> Vec<String> {
    let d = a.sub(b);
    d.sorted_terms()
        .into_iter()
        .filter(|(_, c)| c.is_positive())
        .take(DIFF_SAMPLE)
        .map(|(w, c)| format!("{c}*{w}"))
        .collect()
}

/// Compares the formula output `x_{n-1}` against the certified oracle.
pub fn verify_theorem_with(r: u32, n: u32, formula: &NCPoly, oracle: &NCPoly) -> Result<TheoremReport> {
    let comm = commutative_chain(r, n - 1)?;
    Ok(TheoremReport {
        r,
        n,
        name: format!("x_{}", n - 1),
        equal: formula == oracle,
        term_count: formula.len(),
        coeff_sum: formula.coeff_sum(),
        y_degree: formula.degree_range(Gen::Y),
        x_degree: formula.degree_range(Gen::X),
        positive: formula.all_positive(),
        abelian_matches_commutative: formula.abelianize() == comm[n as usize - 1],
        oracle_positive: oracle.all_positive(),
        only_in_formula: diff_sample(formula, oracle),
        only_in_oracle: diff_sample(oracle, formula),
    })
}

pub fn verify_theorem(
    r: u32,
    n: u32,
    opts: crate::family::EnumOptions,
    margin: i64,
    cache: Option<&ChainCache>,
) -> Result<TheoremReport> {
    if n < 4 {
        return Err(Error::Validation(format!("n = {n} is out of range; need n >= 4")));
    }
    let formula = crate::formula::compute_x(r, n, opts)?;
    let chain = match cache {
        Some(c) => c.chain(r, n - 1, margin)?,
        None => certified_chain(r, n - 1, margin)?,
    };
    verify_theorem_with(r, n, &formula, &chain[n as usize - 1].x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn p(s: &str) -> NCPoly {
        NCPoly::from_str(s).unwrap()
    }

    #[test]
    fn letter_images() {
        let a = apply_f(&p("x"), 3, Direction::Forward, 3).unwrap();
        assert_eq!(a.poly, p("x y x^-1"));
        assert!(!a.series_used);
        let b = apply_f(&p("y"), 3, Direction::Forward, 3).unwrap();
        assert_eq!(b.poly, p("x^-1 + y^3 x^-1"));
        let c = commutator();
        let fc = apply_f(&c, 3, Direction::Forward, 6).unwrap();
        assert_eq!(fc.poly, c);
        assert!(fc.series_used && !fc.boundary_touched);
        let gc = apply_f(&c, 3, Direction::Inverse, 6).unwrap();
        assert_eq!(gc.poly, c);
    }

    fn commutator() -> NCPoly {
        p("x y x^-1 y^-1")
    }

    #[test]
    fn inverse_undoes_forward() {
        for s in ["y", "x", "x y^2 x^-1", "y^2 x"] {
            let f = apply_f(&p(s), 2, Direction::Forward, 4).unwrap();
            let back = apply_f_settled(&f.poly, 2, Direction::Inverse, 4).unwrap();
            assert_eq!(back.poly, p(s), "{s}");
        }
    }

    #[test]
    fn chain_small() {
        let ch = certified_chain(3, 3, DEFAULT_MARGIN).unwrap();
        assert_eq!(ch[1].x, p("x y x^-1"));
        assert_eq!(ch[1].y.as_ref().unwrap(), &p("x^-1 + y^3 x^-1"));
        assert_eq!(ch[2].x, p("x y x^-1 y^-1 x^-1 + x y x^-1 y^2 x^-1"));
        assert_eq!(ch[3].x.coeff_sum(), Integer::from(9));
        assert!(ch[3].y.is_none());
        recertify(3, &ch).unwrap();
    }

    #[test]
    fn perturbation_is_rejected() {
        let ch = certified_chain(2, 3, DEFAULT_MARGIN).unwrap();
        let mut bad = ch[3].x.clone();
        let (w, _) = bad.sorted_terms()[0];
        let w = w.clone();
        bad.add_term(w, Integer::ONE);
        assert!(!certify_x(&ch[2].x, ch[2].y.as_ref().unwrap(), &bad));
    }

    #[test]
    fn commutative_values() {
        let ones: Vec<i64> = values_at_ones(3, 5).unwrap().iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(ones, vec![1, 1, 2, 9, 365, 5403014]);
        let c = commutative_chain(2, 6).unwrap();
        let sums: Vec<i64> = c.iter().map(|t| t.coeff_sum().to_i64().unwrap()).collect();
        assert_eq!(sums, vec![1, 1, 2, 5, 13, 34, 89]);
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ChainCache::new(dir.path()).unwrap();
        let a = cache.chain(3, 3, DEFAULT_MARGIN).unwrap();
        let b = cache.chain(3, 3, DEFAULT_MARGIN).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert_eq!(u.x, v.x);
            assert_eq!(u.y, v.y);
        }
    }
}
