//! Words in the letters X and Y and the cyclic-permutation rules that
//! produce trace syzygies tr(A·(XY − YX)) = 0.
//!
//! A word M satisfies the *monomial rule* when M·XY is a rotation of M·YX.
//! Two words M₁, M₂ that fail it can still combine: M₁ + M₂ works when
//! M₁XY ~ M₂YX and M₂XY ~ M₁YX, and M₁ − M₂ works when M₁XY ~ M₂XY and
//! M₁YX ~ M₂YX (~ meaning "is a rotation of").

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    X,
    Y,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid word `{0}` (use letters X, Y with optional ^k, or E for the empty word)")]
pub struct WordParseError(String);

/// A finite word over {X, Y}; the empty word stands for the identity E.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (#X, #Y).
    pub fn bidegree(&self) -> (u32, u32) {
        let x = self.0.iter().filter(|&&l| l == Letter::X).count() as u32;
        (x, self.0.len() as u32 - x)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Lexicographically least rotation (necklace representative).
    pub fn canonical_rotation(&self) -> Word {
        (0..self.0.len().max(1))
            .map(|k| self.rotate(k))
            .min()
            .expect("at least one rotation")
    }

    /// Every word of length `len`, in lexicographic order (X < Y).
    pub fn all_of_length(len: usize) -> Vec<Word> {
        (0..1usize << len)
            .map(|bits| {
                Word(
                    (0..len)
                        .map(|i| {
                            if bits >> (len - 1 - i) & 1 == 0 {
                                Letter::X
                            } else {
                                Letter::Y
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Word {
    /// Runs are compressed with exponents: XYYX prints as `XY^2X`; the empty
    /// word prints as `E`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("E");
        }
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            f.write_str(if l == Letter::X { "X" } else { "Y" })?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "E" || t == "1" {
            return Ok(Word::empty());
        }
        let bytes = t.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        if bytes.is_empty() {
            return Err(WordParseError(s.into()));
        }
        while i < bytes.len() {
            let l = match bytes[i] {
                b'X' => Letter::X,
                b'Y' => Letter::Y,
                _ => return Err(WordParseError(s.into())),
            };
            i += 1;
            let mut reps = 1usize;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                reps = t[start..i].parse().map_err(|_| WordParseError(s.into()))?;
            }
            out.extend(std::iter::repeat_n(l, reps));
        }
        Ok(Word(out))
    }
}

fn xy() -> Word {
    Word(vec![Letter::X, Letter::Y])
}

fn yx() -> Word {
    Word(vec![Letter::Y, Letter::X])
}

/// Whether `b` is a rotation of `a`.
pub fn cyclic_equal(a: &Word, b: &Word) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let doubled = a.concat(a);
    doubled.0.windows(b.len()).any(|w| w == b.0.as_slice())
}

/// M·XY can be cyclically permuted into M·YX.
pub fn monomial_rule(w: &Word) -> bool {
    cyclic_equal(&w.concat(&xy()), &w.concat(&yx()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinomialRule {
    Sum,
    Difference,
    None,
}

/// Which binomial combination of two words (both failing the monomial rule)
/// is a trace syzygy. Returns `None` when the precondition fails.
pub fn binomial_rule(m1: &Word, m2: &Word) -> BinomialRule {
    if monomial_rule(m1) || monomial_rule(m2) {
        return BinomialRule::None;
    }
    let (a_xy, a_yx) = (m1.concat(&xy()), m1.concat(&yx()));
    let (b_xy, b_yx) = (m2.concat(&xy()), m2.concat(&yx()));
    if cyclic_equal(&a_xy, &b_yx) && cyclic_equal(&b_xy, &a_yx) {
        BinomialRule::Sum
    } else if cyclic_equal(&a_xy, &b_xy) && cyclic_equal(&a_yx, &b_yx) {
        BinomialRule::Difference
    } else {
        BinomialRule::None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExprOrigin {
    Monomial,
    BinomialSum,
    BinomialDifference,
    Explicit,
}

/// A signed sum of words, e.g. `XY + YX` or `XY^2X - YX^2Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordExpr {
    terms: Vec<(i8, Word)>,
    origin: ExprOrigin,
}

impl WordExpr {
    pub fn monomial(w: Word) -> Self {
        WordExpr {
            terms: vec![(1, w)],
            origin: ExprOrigin::Monomial,
        }
    }

    /// An arbitrary signed combination; fails on an empty term list.
    pub fn explicit(terms: Vec<(i8, Word)>) -> Option<Self> {
        if terms.is_empty() || terms.iter().any(|(s, _)| *s != 1 && *s != -1) {
            return None;
        }
        Some(WordExpr {
            terms,
            origin: ExprOrigin::Explicit,
        })
    }

    fn binomial(m1: Word, m2: Word, rule: BinomialRule) -> Option<Self> {
        let (a, b) = if m1 <= m2 { (m1, m2) } else { (m2, m1) };
        match rule {
            BinomialRule::Sum => Some(WordExpr {
                terms: vec![(1, a), (1, b)],
                origin: ExprOrigin::BinomialSum,
            }),
            BinomialRule::Difference => Some(WordExpr {
                terms: vec![(1, a), (-1, b)],
                origin: ExprOrigin::BinomialDifference,
            }),
            BinomialRule::None => None,
        }
    }

    pub fn terms(&self) -> &[(i8, Word)] {
        &self.terms
    }

    pub fn origin(&self) -> ExprOrigin {
        self.origin
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(_, w)| w.len()).max().unwrap_or(0)
    }

    /// Common bidegree when all words share one.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let first = self.terms.first()?.1.bidegree();
        self.terms
            .iter()
            .all(|(_, w)| w.bidegree() == first)
            .then_some(first)
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, w)) in self.terms.iter().enumerate() {
            match (k, *s) {
                (0, -1) => write!(f, "-")?,
                (0, _) => {}
                (_, -1) => write!(f, " - ")?,
                _ => write!(f, " + ")?,
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for WordExpr {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut terms = Vec::new();
        let mut sign = 1i8;
        let mut cur = String::new();
        for c in s.chars() {
            match c {
                '+' | '-' => {
                    if !cur.trim().is_empty() {
                        terms.push((sign, cur.trim().parse()?));
                        cur.clear();
                    }
                    sign = if c == '-' { -1 } else { 1 };
                }
                _ => cur.push(c),
            }
        }
        if cur.trim().is_empty() {
            return Err(WordParseError(s.into()));
        }
        terms.push((sign, cur.trim().parse()?));
        let mut e = WordExpr::explicit(terms).ok_or_else(|| WordParseError(s.into()))?;
        if e.terms.len() == 1 && e.terms[0].0 == 1 {
            e.origin = ExprOrigin::Monomial;
        }
        Ok(e)
    }
}

/// All candidate trace syzygies up to `max_degree`, ordered by degree and
/// then lexicographically by their leading word.
///
/// Monomial candidates that are rotations of one another are collapsed to
/// the least such word. Binomial pairs are unordered (smaller word first), so
/// each pair appears once. The empty word (A = E) is always first.
pub fn candidates(max_degree: usize) -> Vec<WordExpr> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let words = Word::all_of_length(d);
        let mut seen_mono: BTreeSet<Word> = BTreeSet::new();
        let mut level: Vec<WordExpr> = Vec::new();
        let (solutions, others): (Vec<Word>, Vec<Word>) =
            words.into_iter().partition(monomial_rule);
        for w in solutions {
            if seen_mono.insert(w.canonical_rotation()) {
                level.push(WordExpr::monomial(w));
            }
        }
        for (i, a) in others.iter().enumerate() {
            for b in &others[i + 1..] {
                if a.bidegree() != b.bidegree() {
                    continue;
                }
                level.extend(WordExpr::binomial(
                    a.clone(),
                    b.clone(),
                    binomial_rule(a, b),
                ));
            }
        }
        level.sort_by(|a, b| a.terms[0].1.cmp(&b.terms[0].1));
        out.extend(level);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn e(s: &str) -> WordExpr {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("XY^2X"), w("XYYX"));
        assert_eq!(w("XYYX").to_string(), "XY^2X");
        assert_eq!(w("E"), Word::empty());
        assert_eq!(Word::empty().to_string(), "E");
        assert!("XZ".parse::<Word>().is_err());
        assert_eq!(e("XY^2X - YX^2Y").to_string(), "XY^2X - YX^2Y");
        assert_eq!(w("X^2Y").bidegree(), (2, 1));
    }

    #[test]
    fn rotations() {
        assert!(cyclic_equal(&w("XXY"), &w("YXX")));
        assert!(cyclic_equal(&w("XY"), &w("YX")));
        assert!(!cyclic_equal(&w("XXY"), &w("XYY")));
        assert!(cyclic_equal(&Word::empty(), &Word::empty()));
        assert_eq!(w("YXX").canonical_rotation(), w("XXY"));
    }

    #[test]
    fn monomial_rule_examples() {
        assert!(monomial_rule(&w("X")));
        assert!(monomial_rule(&w("XYX")));
        assert!(!monomial_rule(&w("XY")));
        assert!(monomial_rule(&Word::empty()));
    }

    #[test]
    fn binomial_rule_examples() {
        assert_eq!(binomial_rule(&w("XY"), &w("YX")), BinomialRule::Sum);
        assert_eq!(
            binomial_rule(&w("XY^2X"), &w("YX^2Y")),
            BinomialRule::Difference
        );
        assert_eq!(binomial_rule(&w("X^2Y"), &w("Y^2X")), BinomialRule::None);
        // precondition: both must fail the monomial rule
        assert_eq!(binomial_rule(&w("X"), &w("Y")), BinomialRule::None);
    }

    #[test]
    fn candidates_up_to_two() {
        let got: Vec<String> = candidates(2).iter().map(|c| c.to_string()).collect();
        assert_eq!(got, vec!["E", "X", "Y", "X^2", "XY + YX", "Y^2"]);
    }

    fn contains(list: &[WordExpr], expect: &str) -> bool {
        let want = e(expect);
        list.iter().any(|c| {
            let mut a: Vec<_> = c.terms().to_vec();
            let mut b: Vec<_> = want.terms().to_vec();
            a.sort();
            b.sort();
            a == b
        })
    }

    #[test]
    fn candidates_degree_three_and_four() {
        let c3 = candidates(3);
        for s in ["X^3", "Y^3", "XYX", "YXY", "X^2Y + YX^2", "XY^2 + Y^2X"] {
            assert!(contains(&c3, s), "missing {s}");
        }
        let c4 = candidates(4);
        for s in [
            "X^4",
            "Y^4",
            "X^3Y + YX^3",
            "Y^3X + XY^3",
            "X^2YX + XYX^2",
            "Y^2XY + YXY^2",
            "XY^2X - YX^2Y",
        ] {
            assert!(contains(&c4, s), "missing {s}");
        }
    }

    #[test]
    fn candidates_degree_five_matches_listed_solutions() {
        let c5 = candidates(5);
        for s in [
            "X^5",
            "Y^5",
            "X^2YX^2",
            "Y^2XY^2",
            "X^4Y + YX^4",
            "XY^4 + Y^4X",
            "XYX^2Y + YX^2YX",
            "YXY^2X + XY^2XY",
        ] {
            assert!(contains(&c5, s), "missing {s}");
        }
    }

    #[test]
    fn candidates_are_deterministic_and_ordered() {
        let a = candidates(5);
        assert_eq!(a, candidates(5));
        let degs: Vec<usize> = a.iter().map(|c| c.degree()).collect();
        assert!(degs.windows(2).all(|p| p[0] <= p[1]));
        assert!(a.iter().all(|c| c.bidegree().is_some()));
    }
}
