//! Letter-to-integer codings.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::word::{check_alphabet, Alphabet, Letter, ParikhVector, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coding {
    alphabet: Arc<Alphabet>,
    values: Vec<i64>,
}

impl Coding {
    pub fn new(alphabet: Arc<Alphabet>, values: Vec<i64>) -> Result<Self> {
        if values.len() != alphabet.len() {
            return domain(format!(
                "coding has {} values for a {}-letter alphabet",
                values.len(),
                alphabet.len()
            ));
        }
        Ok(Self { alphabet, values })
    }

    /// Letters named by integers keep their value; any other alphabet is
    /// coded by letter position.
    pub fn identity(alphabet: Arc<Alphabet>) -> Result<Self> {
        let parsed: Option<Vec<i64>> = alphabet.names().iter().map(|n| n.parse().ok()).collect();
        let values = parsed.unwrap_or_else(|| (0..alphabet.len() as i64).collect());
        Self::new(alphabet, values)
    }

    /// Parses `a=0,b=1,c=3` (named) or `0,1,3` (positional).
    pub fn parse_inline(alphabet: Arc<Alphabet>, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.contains('=') {
            let lines: Vec<&str> = text.split(',').collect();
            Self::parse_assignments(alphabet, lines.into_iter().enumerate())
        } else {
            let values = text
                .split(',')
                .map(|tok| {
                    tok.trim().parse::<i64>().map_err(|_| Error::Parse {
                        line: 1,
                        message: format!("coding value {tok:?} is not an integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Self::new(alphabet, values)
        }
    }

    /// Parses `letter = integer` lines; `#` starts a comment. Lines of the
    /// form `letter -> image` are skipped so a morphism file can carry its
    /// coding.
    pub fn parse_file(alphabet: Arc<Alphabet>, text: &str) -> Result<Self> {
        let lines = text.lines().enumerate().filter(|(_, l)| !l.contains("->"));
        Self::parse_assignments(alphabet, lines)
    }

    fn parse_assignments<'a>(
        alphabet: Arc<Alphabet>,
        lines: impl Iterator<Item = (usize, &'a str)>,
    ) -> Result<Self> {
        let mut values: Vec<Option<i64>> = vec![None; alphabet.len()];
        for (idx, raw) in lines {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line, message };
            let (letter, value) = body
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected `letter = integer`, got {body:?}")))?;
            let letter = letter.trim();
            let slot = alphabet
                .index_of(letter)
                .ok_or_else(|| parse_err(format!("unknown letter {letter:?}")))?;
            let value: i64 = value.trim().parse().map_err(|_| {
                parse_err(format!("coding value {:?} is not an integer", value.trim()))
            })?;
            if values[slot as usize].replace(value).is_some() {
                return Err(parse_err(format!("letter {letter:?} coded twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::Parse {
                    line: 0,
                    message: format!("no value for letter {:?}", alphabet.name(i as Letter)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, values)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    #[inline]
    pub fn value(&self, letter: Letter) -> i64 {
        self.values[letter as usize]
    }

    pub fn min_value(&self) -> i64 {
        *self.values.iter().min().expect("non-empty")
    }

    pub fn max_value(&self) -> i64 {
        *self.values.iter().max().expect("non-empty")
    }

    /// `<values, ψ(u)>`, the inner-product form of the digit sum.
    pub fn inner(&self, v: &ParikhVector) -> i64 {
        v.dot(&self.values)
    }

    /// Values are an identity map on this alphabet's integer letters.
    pub fn is_identity(&self) -> bool {
        Self::identity(self.alphabet.clone()).is_ok_and(|id| id.values == self.values)
    }
}

/// Applies the coding letterwise. The result lives on the alphabet of the
/// distinct coded values in increasing order.
pub fn code(c: &Coding, u: &Word) -> Result<Word> {
    check_alphabet(c.alphabet(), u.alphabet())?;
    let distinct: Vec<i64> = c
        .values
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let target = Arc::new(Alphabet::new(distinct.iter().map(|v| v.to_string()))?);
    let symbols = u
        .symbols()
        .iter()
        .map(|&s| distinct.binary_search(&c.value(s)).expect("value present") as Letter)
        .collect();
    Word::new(target, symbols)
}
