//! Binary words over the alphabet `{+, -}`.
//!
//! Words index verbal powers of an entourage: each `+` stands for the
//! entourage itself and each `-` for its inverse.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Plus,
    Minus,
}

impl Letter {
    pub fn flip(self) -> Letter {
        match self {
            Letter::Plus => Letter::Minus,
            Letter::Minus => Letter::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::Plus => '+',
            Letter::Minus => '-',
        }
    }
}

/// Which letter an alternation word starts with: `±n` or `∓n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lead {
    PlusFirst,
    MinusFirst,
}

impl Lead {
    fn letter(self) -> Letter {
        match self {
            Lead::PlusFirst => Letter::Plus,
            Lead::MinusFirst => Letter::Minus,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(Vec<Letter>);

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid letter {found:?} at position {position}: words use only '+' and '-'")]
pub struct ParseWordError {
    pub position: usize,
    pub found: char,
}

impl BinaryWord {
    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        BinaryWord(letters)
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

    pub fn concat(&self, other: &BinaryWord) -> BinaryWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        BinaryWord(letters)
    }

    /// `self <= other` in the subword order: `self` is obtained from `other`
    /// by deleting letters.
    pub fn is_subword_of(&self, other: &BinaryWord) -> bool {
        let mut rest = other.0.iter();
        self.0.iter().all(|l| rest.any(|m| m == l))
    }

    /// The strictly alternating word of length `n` starting with the letter
    /// given by `lead`.
    pub fn alternation(lead: Lead, n: usize) -> BinaryWord {
        let first = lead.letter();
        BinaryWord(
            (0..n)
                .map(|i| if i % 2 == 0 { first } else { first.flip() })
                .collect(),
        )
    }

    /// Replace every maximal run of equal letters by a single letter.
    pub fn collapse_runs(&self) -> BinaryWord {
        let mut letters = self.0.clone();
        letters.dedup();
        BinaryWord(letters)
    }

    /// Alternating words contain no two equal adjacent letters.
    pub fn is_alternating(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// Every word of length exactly `len`, in lexicographic order with `+`
    /// before `-`.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BinaryWord> {
        assert!(len < 64);
        (0u64..1 << len).map(move |mask| {
            BinaryWord(
                (0..len)
                    .map(|i| {
                        if mask >> (len - 1 - i) & 1 == 0 {
                            Letter::Plus
                        } else {
                            Letter::Minus
                        }
                    })
                    .collect(),
            )
        })
    }

    /// Every word of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = BinaryWord> {
        (0..=max_len).flat_map(BinaryWord::all_of_length)
    }
}

impl From<Letter> for BinaryWord {
    fn from(l: Letter) -> Self {
        BinaryWord(vec![l])
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(BinaryWord::empty());
        }
        s.chars()
            .enumerate()
            .map(|(position, c)| match c {
                '+' => Ok(Letter::Plus),
                '-' | '−' => Ok(Letter::Minus),
                found => Err(ParseWordError { position, found }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryWord)
    }
}

impl Serialize for BinaryWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinaryWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("+").concat(&w("-")), w("+-"));
        assert_eq!(BinaryWord::empty().concat(&w("+-+")), w("+-+"));
        assert_eq!(w("+-").concat(&w("-+")), w("+--+"));
    }

    #[test]
    fn subword_examples() {
        assert!(w("+-").is_subword_of(&w("+-+")));
        assert!(!w("+-").is_subword_of(&w("-+")));
        for v in BinaryWord::all_up_to(4) {
            assert!(BinaryWord::empty().is_subword_of(&v));
        }
    }

    #[test]
    fn alternation_examples() {
        assert_eq!(
            BinaryWord::alternation(Lead::PlusFirst, 0),
            BinaryWord::empty()
        );
        assert_eq!(BinaryWord::alternation(Lead::PlusFirst, 3), w("+-+"));
        assert_eq!(BinaryWord::alternation(Lead::MinusFirst, 2), w("-+"));
    }

    #[test]
    fn alternation_recursion() {
        // ±(n+1) = +(∓n) and ∓(n+1) = -(±n)
        for n in 0..8 {
            let pm = BinaryWord::alternation(Lead::PlusFirst, n + 1);
            let mp = BinaryWord::alternation(Lead::MinusFirst, n + 1);
            assert_eq!(
                pm,
                w("+").concat(&BinaryWord::alternation(Lead::MinusFirst, n))
            );
            assert_eq!(
                mp,
                w("-").concat(&BinaryWord::alternation(Lead::PlusFirst, n))
            );
        }
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(w("++---+").collapse_runs(), w("+-+"));
        assert_eq!(w("+-+").collapse_runs(), w("+-+"));
        assert_eq!(BinaryWord::empty().collapse_runs(), BinaryWord::empty());
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(BinaryWord::empty().to_string(), "e");
        assert_eq!(w("ε"), BinaryWord::empty());
        assert_eq!(w("−+"), w("-+"));
        assert_eq!(w("+-+").to_string(), "+-+");
        let err = "+x".parse::<BinaryWord>().unwrap_err();
        assert_eq!(
            err,
            ParseWordError {
                position: 1,
                found: 'x'
            }
        );
        let json = serde_json::to_string(&w("-+")).unwrap();
        assert_eq!(json, "\"-+\"");
        assert_eq!(serde_json::from_str::<BinaryWord>(&json).unwrap(), w("-+"));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(BinaryWord::all_up_to(3).count(), 1 + 2 + 4 + 8);
        let words: Vec<_> = BinaryWord::all_of_length(2)
            .map(|v| v.to_string())
            .collect();
        assert_eq!(words, ["++", "+-", "-+", "--"]);
    }

    #[test]
    fn subword_is_partial_order() {
        let words: Vec<_> = BinaryWord::all_up_to(5).collect();
        for a in &words {
            assert!(a.is_subword_of(a));
            for b in &words {
                if a.is_subword_of(b) && b.is_subword_of(a) {
                    assert_eq!(a, b);
                }
            }
        }
        // transitivity on a smaller range keeps the cubic loop cheap
        let small: Vec<_> = BinaryWord::all_up_to(4).collect();
        for a in &small {
            for b in small.iter().filter(|b| a.is_subword_of(b)) {
                for c in small.iter().filter(|c| b.is_subword_of(c)) {
                    assert!(a.is_subword_of(c));
                }
            }
        }
    }

    fn arb_word(max: usize) -> impl Strategy<Value = BinaryWord> {
        prop::collection::vec(
            prop_oneof![Just(Letter::Plus), Just(Letter::Minus)],
            0..=max,
        )
        .prop_map(BinaryWord::new)
    }

    proptest! {
        #[test]
        fn concat_is_associative(a in arb_word(4), b in arb_word(4), c in arb_word(4)) {
            prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
            prop_assert_eq!(BinaryWord::empty().concat(&a), a.clone());
            prop_assert_eq!(a.concat(&BinaryWord::empty()), a);
        }

        #[test]
        fn collapse_is_idempotent_subword(v in arb_word(8)) {
            let c = v.collapse_runs();
            prop_assert_eq!(c.collapse_runs(), c.clone());
            prop_assert!(c.is_subword_of(&v));
            prop_assert!(c.is_alternating());
        }

        #[test]
        fn alternation_shape(n in 0usize..10, plus in any::<bool>()) {
            let lead = if plus { Lead::PlusFirst } else { Lead::MinusFirst };
            let a = BinaryWord::alternation(lead, n);
            prop_assert_eq!(a.len(), n);
            prop_assert!(a.is_alternating());
            prop_assert!(a.is_subword_of(&BinaryWord::alternation(lead, n + 2)));
        }

        #[test]
        fn text_round_trips(v in arb_word(8)) {
            prop_assert_eq!(v.to_string().parse::<BinaryWord>().unwrap(), v);
        }
    }
}
