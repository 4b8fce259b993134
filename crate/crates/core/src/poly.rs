//! Laurent polynomials: the group algebra of the free group on `x`, `y` over the
//! integers ([`NCPoly`]) and its commutative image ([`CommPoly`]).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::ParseError;
use crate::integer::Integer;
use crate::word::{Gen, ReducedWord};

/// Left operands above this many terms are multiplied in parallel chunks.
const PAR_MUL_THRESHOLD: usize = 2048;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPoly {
    terms: FxHashMap<ReducedWord, Integer>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        NCPoly::monomial(ReducedWord::one(), Integer::ONE)
    }

    pub fn monomial(word: ReducedWord, coeff: Integer) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn word(word: ReducedWord) -> Self {
        NCPoly::monomial(word, Integer::ONE)
    }

    pub fn from_terms<I: IntoIterator<Item = (ReducedWord, Integer)>>(terms: I) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn with_capacity(n: usize) -> Self {
        NCPoly {
            terms: FxHashMap::with_capacity_and_hasher(n, Default::default()),
        }
    }

    pub fn add_term(&mut self, word: ReducedWord, coeff: Integer) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(word) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_ref(&coeff);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &ReducedWord) -> Integer {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ReducedWord, &Integer)> {
        self.terms.iter()
    }

    /// Terms in the canonical word order.
    pub fn sorted_terms(&self) -> Vec<(&ReducedWord, &Integer)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn into_terms(self) -> impl Iterator<Item = (ReducedWord, Integer)> {
        self.terms.into_iter()
    }

    pub fn add_assign_ref(&mut self, other: &NCPoly) {
        self.terms.reserve(other.len());
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        big.add_assign_ref(small);
        big
    }

    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &Integer) -> NCPoly {
        if k.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Multiplies every word on the left and right by fixed units.
    pub fn conjugate_by(&self, left: &ReducedWord, right: &ReducedWord) -> NCPoly {
        let mut out = NCPoly::with_capacity(self.len());
        for (w, c) in &self.terms {
            let mut nw = left.clone();
            nw.push_word(w);
            nw.push_word(right);
            out.add_term(nw, c.clone());
        }
        out
    }

    fn mul_chunk(left: &[(&ReducedWord, &Integer)], right: &NCPoly) -> NCPoly {
        let mut out = NCPoly::with_capacity(left.len() * right.len());
        for (lw, lc) in left {
            for (rw, rc) in &right.terms {
                out.add_term(lw.mul(rw), *lc * rc);
            }
        }
        out
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let left: Vec<(&ReducedWord, &Integer)> = self.terms.iter().collect();
        if left.len() < PAR_MUL_THRESHOLD {
            return NCPoly::mul_chunk(&left, other);
        }
        left.par_chunks(PAR_MUL_THRESHOLD / 4)
            .map(|chunk| NCPoly::mul_chunk(chunk, other))
            .reduce(NCPoly::zero, |mut a, b| {
                if a.len() < b.len() {
                    let mut b = b;
                    b.add_assign_ref(&a);
                    return b;
                }
                a.add_assign_ref(&b);
                a
            })
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        let mut acc = NCPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn coeff_sum(&self) -> Integer {
        self.terms.values().sum()
    }

    pub fn abelianize(&self) -> CommPoly {
        let mut out = CommPoly::zero();
        for (w, c) in &self.terms {
            out.add_term((w.degree(Gen::X), w.degree(Gen::Y)), c.clone());
        }
        out
    }

    /// Range of the total exponent of `gen` over all terms.
    pub fn degree_range(&self, gen: Gen) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|w| w.degree(gen));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    pub fn all_positive(&self) -> bool {
        self.terms.values().all(Integer::is_positive)
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter<F: Fn(&ReducedWord) -> bool>(&self, keep: F) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *c == Integer::ONE {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Parses `term + term + ...` where a term is `word` or `coeff*word`.
impl FromStr for NCPoly {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let t = text.trim();
        if t == "0" {
            return Ok(NCPoly::zero());
        }
        let mut p = NCPoly::zero();
        for term in t.split(" + ") {
            let (coeff, word) = match term.split_once('*') {
                Some((c, w)) => (
                    c.trim()
                        .parse::<Integer>()
                        .map_err(|_| ParseError::new(text, format!("bad coefficient `{c}`")))?,
                    w,
                ),
                None => (Integer::ONE, term),
            };
            p.add_term(word.parse()?, coeff);
        }
        Ok(p)
    }
}

/// Laurent polynomial in commuting `x`, `y`, keyed by `(x-exponent, y-exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommPoly {
    terms: FxHashMap<(i64, i64), Integer>,
}

impl CommPoly {
    pub fn zero() -> Self {
        CommPoly::default()
    }

    pub fn one() -> Self {
        CommPoly::monomial((0, 0), Integer::ONE)
    }

    pub fn monomial(exp: (i64, i64), coeff: Integer) -> Self {
        let mut p = CommPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn add_term(&mut self, exp: (i64, i64), coeff: Integer) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        slot.add_ref(&coeff);
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: (i64, i64)) -> Integer {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Integer)> {
        self.terms.iter()
    }

    pub fn sorted_terms(&self) -> Vec<((i64, i64), Integer)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        v.sort_unstable_by_key(|t| t.0);
        v
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_term((ka.0 + kb.0, ka.1 + kb.1), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut acc = CommPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn coeff_sum(&self) -> Integer {
        self.terms.values().sum()
    }

    fn leading(&self) -> Option<((i64, i64), Integer)> {
        self.terms
            .iter()
            .max_by_key(|(k, _)| **k)
            .map(|(k, c)| (*k, c.clone()))
    }

    fn bounds(&self) -> Option<((i64, i64), (i64, i64))> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(((first.0, first.0), (first.1, first.1)), |(a, b), k| {
            ((a.0.min(k.0), a.1.max(k.0)), (b.0.min(k.1), b.1.max(k.1)))
        }))
    }

    /// Exact division in the Laurent ring, or `None` if `divisor` does not divide `self`.
    ///
    /// Lexicographic order on exponent pairs is compatible with multiplication of
    /// Laurent monomials, so the quotient is built from the top down. Every quotient
    /// exponent must lie in the box cut out by the Newton polytopes; leaving the box
    /// proves non-divisibility and bounds the loop.
    pub fn div_exact(&self, divisor: &CommPoly) -> Option<CommPoly> {
        let (lead_exp, lead_c) = divisor.leading()?;
        if self.is_zero() {
            return Some(CommPoly::zero());
        }
        let (na, nb) = self.bounds()?;
        let (da, db) = divisor.bounds()?;
        let a_range = (na.0 - da.0, na.1 - da.1);
        let b_range = (nb.0 - db.0, nb.1 - db.1);
        let mut rem = self.clone();
        let mut quot = CommPoly::zero();
        while let Some((rexp, rc)) = rem.leading() {
            let qexp = (rexp.0 - lead_exp.0, rexp.1 - lead_exp.1);
            if qexp.0 < a_range.0 || qexp.0 > a_range.1 || qexp.1 < b_range.0 || qexp.1 > b_range.1
            {
                return None;
            }
            let qc = rc.div_exact(&lead_c)?;
            let step = CommPoly::monomial(qexp, qc.clone());
            rem = rem.sub(&step.mul(divisor));
            quot.add_term(qexp, qc);
        }
        Some(quot)
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*x^{a} y^{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::tests::arb_raw;
    use proptest::prelude::*;

    fn p(s: &str) -> NCPoly {
        s.parse().unwrap()
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("1 + y^3").mul(&p("x^-1")), p("x^-1 + y^3 x^-1"));
        let q = p("2*x y + y^-1");
        assert_eq!(q.mul(&NCPoly::one()), q);
        assert_eq!(p("x y").mul(&p("y x")), p("x y^2 x"));
        assert_ne!(p("x").mul(&p("y")), p("y").mul(&p("x")));
    }

    #[test]
    fn cancellation_drops_terms() {
        let q = p("x + y").sub(&p("x"));
        assert_eq!(q, p("y"));
        assert_eq!(p("x").sub(&p("x")), NCPoly::zero());
        assert_eq!(p("x").pow(0), NCPoly::one());
    }

    #[test]
    fn abelianize_examples() {
        let a = p("x y x^-1 y^-1").abelianize();
        assert_eq!(a, CommPoly::monomial((0, 0), Integer::ONE));
        // x_2 = x y x^-1 (y^-1 + y^{r-1}) x^-1 for r = 3
        let x2 = p("x y x^-1 y^-1 x^-1 + x y x^-1 y^2 x^-1");
        let mut expect = CommPoly::zero();
        expect.add_term((-1, 0), Integer::ONE);
        expect.add_term((-1, 3), Integer::ONE);
        assert_eq!(x2.abelianize(), expect);
    }

    #[test]
    fn coeff_sum_examples() {
        assert_eq!(p("1 + y^3").coeff_sum(), Integer::from(2));
        assert_eq!(NCPoly::zero().coeff_sum(), Integer::ZERO);
    }

    #[test]
    fn comm_division() {
        // (1 + y^3) * x^-1 divided by x^-1
        let mut num = CommPoly::zero();
        num.add_term((-1, 0), Integer::ONE);
        num.add_term((-1, 3), Integer::ONE);
        let den = CommPoly::monomial((-1, 0), Integer::ONE);
        let q = num.div_exact(&den).unwrap();
        assert_eq!(q.mul(&den), num);
        // 1 + y is not divisible by 1 + x
        let mut a = CommPoly::one();
        a.add_term((0, 1), Integer::ONE);
        let mut b = CommPoly::one();
        b.add_term((1, 0), Integer::ONE);
        assert!(a.div_exact(&b).is_none());
    }

    fn arb_poly() -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((arb_raw(), -3i64..=3), 0..5).prop_map(|terms| {
            NCPoly::from_terms(
                terms
                    .into_iter()
                    .map(|(raw, c)| (ReducedWord::reduce(raw), Integer::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        }

        #[test]
        fn abelianize_is_ring_hom(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.mul(&b).abelianize(), a.abelianize().mul(&b.abelianize()));
            prop_assert_eq!(a.add(&b).abelianize(), a.abelianize().add(&b.abelianize()));
            prop_assert_eq!(a.coeff_sum(), a.abelianize().coeff_sum());
        }

        #[test]
        fn coeff_sum_is_multiplicative(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.mul(&b).coeff_sum(), &a.coeff_sum() * &b.coeff_sum());
        }

        #[test]
        fn no_zero_coefficients(a in arb_poly(), b in arb_poly()) {
            let q = a.mul(&b).sub(&a);
            prop_assert!(q.iter().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn comm_division_recovers_factor(a in arb_poly(), b in arb_poly()) {
            let (a, b) = (a.abelianize(), b.abelianize());
            prop_assume!(!b.is_zero());
            let prod = a.mul(&b);
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }
    }
}
