//! Reduced words in the free group on `x` and `y`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub fn other(self) -> Gen {
        match self {
            Gen::X => Gen::Y,
            Gen::Y => Gen::X,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
        }
    }
}

/// One run `g^e` of a reduced word; `exp` is never zero inside a [`ReducedWord`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: i32,
}

impl Syllable {
    pub fn new(gen: Gen, exp: i32) -> Self {
        Syllable { gen, exp }
    }
}

/// A freely reduced word, stored as run-length syllables with alternating generators.
/// The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    syllables: Vec<Syllable>,
}

impl ReducedWord {
    pub fn one() -> Self {
        ReducedWord::default()
    }

    pub fn x(exp: i32) -> Self {
        ReducedWord::reduce([(Gen::X, exp)])
    }

    pub fn y(exp: i32) -> Self {
        ReducedWord::reduce([(Gen::Y, exp)])
    }

    /// Free reduction of an arbitrary syllable list: zero exponents vanish and
    /// neighbouring runs of the same generator merge, to fixpoint.
    pub fn reduce<I: IntoIterator<Item = (Gen, i32)>>(raw: I) -> Self {
        let mut w = ReducedWord::one();
        for (g, e) in raw {
            w.push(g, e);
        }
        w
    }

    /// Right-multiplies by `g^e` in place.
    pub fn push(&mut self, gen: Gen, exp: i32) {
        if exp == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(top) if top.gen == gen => {
                top.exp += exp;
                if top.exp == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable { gen, exp }),
        }
    }

    pub fn push_word(&mut self, other: &ReducedWord) {
        for s in &other.syllables {
            self.push(s.gen, s.exp);
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_one(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        let mut out = self.clone();
        out.push_word(other);
        out
    }

    pub fn inv(&self) -> ReducedWord {
        ReducedWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.gen, -s.exp))
                .collect(),
        }
    }

    /// Number of letters, counting `g^e` as `|e|` letters.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as u64).sum()
    }

    /// Total exponent of `gen`.
    pub fn degree(&self, gen: Gen) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| s.exp as i64)
            .sum()
    }

    /// Minimal two-row presentation `x^{a_1} y^{b_1} x^{a_2} y^{b_2} ...` as `(a_i, b_i)` columns.
    pub fn columns(&self) -> Vec<(i32, i32)> {
        let mut cols: Vec<(i32, i32)> = Vec::new();
        let mut i = 0;
        while i < self.syllables.len() {
            let s = self.syllables[i];
            match s.gen {
                Gen::X => {
                    let b = match self.syllables.get(i + 1) {
                        Some(next) => {
                            i += 1;
                            next.exp
                        }
                        None => 0,
                    };
                    cols.push((s.exp, b));
                }
                Gen::Y => cols.push((0, s.exp)),
            }
            i += 1;
        }
        cols
    }

    pub fn from_columns<I: IntoIterator<Item = (i32, i32)>>(cols: I) -> Self {
        ReducedWord::reduce(
            cols.into_iter()
                .flat_map(|(a, b)| [(Gen::X, a), (Gen::Y, b)]),
        )
    }

    /// Renders the two-row matrix form `[a_1 a_2 ...; b_1 b_2 ...]`. With `pad_to`, the
    /// minimal presentation is extended with trailing zero columns up to that width.
    pub fn render_matrix(&self, pad_to: Option<usize>) -> String {
        let mut cols = self.columns();
        if let Some(width) = pad_to {
            while cols.len() < width {
                cols.push((0, 0));
            }
        }
        render_columns(&cols)
    }

    /// Parses either the canonical token form (`x y^-2`, `1`) or the matrix form.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        text.parse()
    }
}

pub fn render_columns(cols: &[(i32, i32)]) -> String {
    let top: Vec<String> = cols.iter().map(|c| c.0.to_string()).collect();
    let bottom: Vec<String> = cols.iter().map(|c| c.1.to_string()).collect();
    format!("[{}; {}]", top.join(" "), bottom.join(" "))
}

pub fn parse_columns(text: &str) -> Result<Vec<(i32, i32)>, ParseError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(text, "matrix must be enclosed in [ ]"))?;
    let mut rows = inner.split(';');
    let (top, bottom) = match (rows.next(), rows.next(), rows.next()) {
        (Some(a), Some(b), None) => (a, b),
        _ => return Err(ParseError::new(text, "matrix needs exactly two rows")),
    };
    let nums = |row: &str| -> Result<Vec<i32>, ParseError> {
        row.split_whitespace()
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| ParseError::new(text, format!("bad exponent `{tok}`")))
            })
            .collect()
    };
    let (a, b) = (nums(top)?, nums(bottom)?);
    if a.len() != b.len() {
        return Err(ParseError::new(text, "rows differ in length"));
    }
    Ok(a.into_iter().zip(b).collect())
}

impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letter_len()
            .cmp(&other.letter_len())
            .then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exp == 1 {
                write!(f, "{}", s.gen.as_char())?;
            } else {
                write!(f, "{}^{}", s.gen.as_char(), s.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for ReducedWord {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let t = text.trim();
        if t.starts_with('[') {
            return parse_columns(t).map(ReducedWord::from_columns);
        }
        if t == "1" {
            return Ok(ReducedWord::one());
        }
        if t.is_empty() {
            return Err(ParseError::new(text, "empty input"));
        }
        let mut raw = Vec::new();
        for tok in t.split_whitespace() {
            let mut chars = tok.chars();
            let gen = match chars.next() {
                Some('x') => Gen::X,
                Some('y') => Gen::Y,
                _ => return Err(ParseError::new(text, format!("bad token `{tok}`"))),
            };
            let rest = chars.as_str();
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|e| e.parse::<i32>().ok())
                    .ok_or_else(|| ParseError::new(text, format!("bad token `{tok}`")))?
            };
            raw.push((gen, exp));
        }
        Ok(ReducedWord::reduce(raw))
    }
}

impl serde::Serialize for ReducedWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.syllables.len()))?;
        for syl in &self.syllables {
            seq.serialize_element(&(syl.gen.as_char().to_string(), syl.exp))?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for ReducedWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<(String, i32)> = Vec::deserialize(d)?;
        let mut out = Vec::with_capacity(raw.len());
        for (g, e) in raw {
            let gen = match g.as_str() {
                "x" => Gen::X,
                "y" => Gen::Y,
                other => {
                    return Err(serde::de::Error::custom(format!("unknown generator `{other}`")))
                }
            };
            out.push((gen, e));
        }
        Ok(ReducedWord::reduce(out))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> ReducedWord {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(ReducedWord::reduce([(Gen::X, 1), (Gen::X, -1)]).is_one());
        assert_eq!(
            ReducedWord::reduce([(Gen::X, 1), (Gen::Y, 0), (Gen::X, 2)]),
            ReducedWord::x(3)
        );
    }

    #[test]
    fn a4_row_reduces() {
        let a = [1, -1, 0, 1, 0, 0, 0, 0, 1, -1];
        let b = [1, -1, 0, -1, 0, 0, -1, 0, -1, 0];
        let word = ReducedWord::from_columns(a.into_iter().zip(b));
        assert_eq!(word, w("x y x^-1 y^-1 x y^-2 x y^-1 x^-1"));
    }

    #[test]
    fn mul_and_inv() {
        assert_eq!(w("x y").mul(&w("y^-1 x")), ReducedWord::x(2));
        assert_eq!(w("x y x^-1 y^-1").inv(), w("y x y^-1 x^-1"));
        assert!(ReducedWord::x(1).mul(&ReducedWord::x(1).inv()).is_one());
    }

    #[test]
    fn matrix_form() {
        assert_eq!(w("x y x^-1").render_matrix(None), "[1 -1; 1 0]");
        assert_eq!(w("y^2 x").render_matrix(None), "[0 1; 2 0]");
        assert_eq!(w("x y x^-1").render_matrix(Some(3)), "[1 -1 0; 1 0 0]");
        assert_eq!(ReducedWord::one().render_matrix(None), "[; ]");
        assert_eq!(w("[1 -1; 1 0]"), w("x y x^-1"));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(ReducedWord::one().to_string(), "1");
        assert_eq!(w("x y^-2 x").to_string(), "x y^-2 x");
        assert!("z^2".parse::<ReducedWord>().is_err());
        assert!("x^".parse::<ReducedWord>().is_err());
        assert!("[1 2; 3]".parse::<ReducedWord>().is_err());
        assert!("".parse::<ReducedWord>().is_err());
    }

    #[test]
    fn order_is_length_first() {
        assert!(w("y^5") > w("x y"));
        assert!(w("x y") < w("y x"));
        assert!(ReducedWord::one() < w("x"));
    }

    pub(crate) fn arb_raw() -> impl Strategy<Value = Vec<(Gen, i32)>> {
        prop::collection::vec(
            (prop_oneof![Just(Gen::X), Just(Gen::Y)], -3i32..=3),
            0..12,
        )
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(raw in arb_raw()) {
            let once = ReducedWord::reduce(raw);
            let twice = ReducedWord::reduce(once.syllables().iter().map(|s| (s.gen, s.exp)));
            prop_assert_eq!(&once, &twice);
            for pair in once.syllables().windows(2) {
                prop_assert_ne!(pair[0].gen, pair[1].gen);
            }
            prop_assert!(once.syllables().iter().all(|s| s.exp != 0));
        }

        #[test]
        fn group_laws(a in arb_raw(), b in arb_raw(), c in arb_raw()) {
            let (a, b, c) = (ReducedWord::reduce(a), ReducedWord::reduce(b), ReducedWord::reduce(c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&ReducedWord::one()), a.clone());
            prop_assert_eq!(a.inv().inv(), a.clone());
            prop_assert!(a.mul(&a.inv()).is_one());
        }

        #[test]
        fn text_round_trips(raw in arb_raw(), pad in 0usize..4) {
            let word = ReducedWord::reduce(raw);
            let width = word.columns().len() + pad;
            prop_assert_eq!(&word.to_string().parse::<ReducedWord>().unwrap(), &word);
            prop_assert_eq!(&word.render_matrix(Some(width)).parse::<ReducedWord>().unwrap(), &word);
        }
    }
}
