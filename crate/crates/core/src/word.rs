//! Alphabets, finite words and the letterwise transformations built on them.
//!
//! A [`Word`] stores letters as `u8` indices into a shared [`Alphabet`]. The
//! alphabet decides how letters are rendered; any integer meaning is supplied
//! separately by a [`Coding`].

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::coding::Coding;
use crate::error::{domain, Result};

/// Largest alphabet the crate supports.
pub const MAX_LETTERS: usize = 16;

/// Letter index into an [`Alphabet`].
pub type Letter = u8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return domain("alphabet must be non-empty");
        }
        if names.len() > MAX_LETTERS {
            return domain(format!(
                "alphabet has {} letters, at most {MAX_LETTERS} are supported",
                names.len()
            ));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.contains(|c: char| c.is_whitespace() || c == ',') {
                return domain(format!("invalid letter name {name:?}"));
            }
            if names[..i].contains(name) {
                return domain(format!("duplicate letter {name:?}"));
            }
        }
        Ok(Self { names })
    }

    /// The alphabet `{0, 1, ..., q-1}`.
    pub fn digits(q: usize) -> Result<Self> {
        Self::new((0..q).map(|d| d.to_string()))
    }

    /// Shared `{0, 1, 2}`.
    pub fn ternary() -> Arc<Alphabet> {
        static TERNARY: OnceLock<Arc<Alphabet>> = OnceLock::new();
        TERNARY
            .get_or_init(|| Arc::new(Alphabet::digits(3).expect("valid")))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Letter)
    }

    pub fn is_ternary(&self) -> bool {
        self.names == ["0", "1", "2"]
    }

    /// True when every letter renders as a single character, in which case
    /// words print without separators.
    pub fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    pub fn render(&self, symbols: &[Letter]) -> String {
        if self.single_char() {
            symbols.iter().map(|&s| self.name(s)).collect()
        } else {
            symbols
                .iter()
                .map(|&s| self.name(s))
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses the textual form produced by [`Alphabet::render`]. Commas are
    /// accepted as separators for any alphabet.
    pub fn parse(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        let tokens: Vec<&str> = if text.contains(',') || !self.single_char() {
            text.split(',').map(str::trim).collect()
        } else {
            text.char_indices()
                .map(|(i, c)| &text[i..i + c.len_utf8()])
                .collect()
        };
        tokens
            .into_iter()
            .map(|tok| match self.index_of(tok) {
                Some(l) => Ok(l),
                None => domain(format!("letter {tok:?} not in alphabet {:?}", self.names)),
            })
            .collect()
    }
}

/// An immutable finite word over an alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    symbols: Vec<Letter>,
}

impl Word {
    pub fn new(alphabet: Arc<Alphabet>, symbols: Vec<Letter>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= alphabet.len()) {
            return domain(format!(
                "letter index {bad} out of range for a {}-letter alphabet",
                alphabet.len()
            ));
        }
        Ok(Self { alphabet, symbols })
    }

    pub(crate) fn from_trusted(alphabet: Arc<Alphabet>, symbols: Vec<Letter>) -> Self {
        debug_assert!(symbols.iter().all(|&s| (s as usize) < alphabet.len()));
        Self { alphabet, symbols }
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        Self {
            alphabet,
            symbols: Vec::new(),
        }
    }

    pub fn parse(alphabet: Arc<Alphabet>, text: &str) -> Result<Self> {
        let symbols = alphabet.parse(text)?;
        Ok(Self { alphabet, symbols })
    }

    /// Word over `{0,1,2}` from its digit string; panics on other characters.
    /// Meant for tests and literals.
    pub fn ternary(text: &str) -> Self {
        Self::parse(Alphabet::ternary(), text).expect("ternary literal")
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[Letter] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Letter> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of occurrences of `letter`, written `|u|_a`.
    pub fn count(&self, letter: Letter) -> usize {
        self.symbols.iter().filter(|&&s| s == letter).count()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.same_alphabet(other)?;
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Ok(Word::from_trusted(self.alphabet.clone(), symbols))
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.symbols.starts_with(&self.symbols)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.symbols.ends_with(&self.symbols)
    }

    /// First index at which `self` occurs in `other`.
    pub fn find_in(&self, other: &[Letter]) -> Option<usize> {
        memchr::memmem::find(other, &self.symbols)
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        self.find_in(&other.symbols).is_some()
    }

    pub(crate) fn same_alphabet(&self, other: &Word) -> Result<()> {
        check_alphabet(&self.alphabet, &other.alphabet)
    }
}

pub(crate) fn check_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        domain(format!(
            "alphabet mismatch: {:?} vs {:?}",
            a.names(),
            b.names()
        ))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.symbols))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

/// Per-letter occurrence counts, indexed by alphabet position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParikhVector {
    counts: [u32; MAX_LETTERS],
    letters: u8,
}

impl ParikhVector {
    pub fn zero(letters: usize) -> Self {
        assert!(letters <= MAX_LETTERS);
        Self {
            counts: [0; MAX_LETTERS],
            letters: letters as u8,
        }
    }

    pub fn from_counts(counts: &[u32]) -> Result<Self> {
        if counts.len() > MAX_LETTERS {
            return domain("too many coordinates for a Parikh vector");
        }
        let mut v = Self::zero(counts.len());
        v.counts[..counts.len()].copy_from_slice(counts);
        Ok(v)
    }

    pub fn of_symbols(letters: usize, symbols: &[Letter]) -> Self {
        let mut v = Self::zero(letters);
        for &s in symbols {
            v.counts[s as usize] += 1;
        }
        v
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts[..self.letters as usize]
    }

    pub fn get(&self, letter: Letter) -> u32 {
        self.counts[letter as usize]
    }

    /// Length of any word with this Parikh vector.
    pub fn total(&self) -> u64 {
        self.counts().iter().map(|&c| c as u64).sum()
    }

    pub fn dot(&self, values: &[i64]) -> i64 {
        self.counts()
            .iter()
            .zip(values)
            .map(|(&c, &v)| c as i64 * v)
            .sum()
    }

    pub(crate) fn inc(&mut self, letter: Letter) {
        self.counts[letter as usize] += 1;
    }

    pub(crate) fn dec(&mut self, letter: Letter) {
        self.counts[letter as usize] -= 1;
    }

    /// `max_a |u|_a - min_b |u|_b`, the largest letter-count difference.
    pub fn spread(&self) -> u32 {
        let c = self.counts();
        let max = c.iter().copied().max().unwrap_or(0);
        let min = c.iter().copied().min().unwrap_or(0);
        max - min
    }
}

/// `DS(u)`: sum of the coded values of the letters of `u`.
pub fn digit_sum(u: &Word, coding: &Coding) -> Result<i64> {
    check_alphabet(u.alphabet(), coding.alphabet())?;
    Ok(u.symbols().iter().map(|&s| coding.value(s)).sum())
}

pub fn parikh(u: &Word) -> ParikhVector {
    ParikhVector::of_symbols(u.alphabet().len(), u.symbols())
}

/// The mirror image `u^R`.
pub fn mirror(u: &Word) -> Word {
    let mut symbols = u.symbols().to_vec();
    symbols.reverse();
    Word::from_trusted(u.alphabet().clone(), symbols)
}

/// `τ_c`: fixes `c` and swaps the two other letters of `{0,1,2}`.
pub fn tau(c: Letter, u: &Word) -> Result<Word> {
    if !u.alphabet().is_ternary() {
        return domain("tau is only defined on the alphabet {0,1,2}");
    }
    if c > 2 {
        return domain(format!("tau: fixed letter {c} not in {{0,1,2}}"));
    }
    let symbols = u.symbols().iter().map(|&x| tau_letter(c, x)).collect();
    Ok(Word::from_trusted(u.alphabet().clone(), symbols))
}

#[inline]
pub(crate) fn tau_letter(c: Letter, x: Letter) -> Letter {
    if x == c {
        x
    } else {
        // the two non-fixed letters sum to 3 - c
        3 - c - x
    }
}

/// `x + delta (mod 3)`; `delta = -1` is the underlined letter, `+1` the barred one.
pub fn letter_shift(x: Letter, delta: i8) -> Letter {
    (x as i16 + delta as i16).rem_euclid(3) as Letter
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_sum_examples() {
        let id = Coding::identity(Alphabet::ternary()).unwrap();
        assert_eq!(digit_sum(&Word::ternary("0112"), &id).unwrap(), 4);
        assert_eq!(digit_sum(&Word::ternary(""), &id).unwrap(), 0);
        let u = Word::ternary("2122");
        let ds = digit_sum(&u, &id).unwrap();
        assert_eq!(ds, 7);
        assert_eq!(ds, u.len() as i64 + u.count(2) as i64 - u.count(0) as i64);
    }

    #[test]
    fn digit_sum_rejects_foreign_alphabet() {
        let abc = Arc::new(Alphabet::new(["a", "b", "c"]).unwrap());
        let coding = Coding::identity(abc).unwrap();
        assert!(matches!(
            digit_sum(&Word::ternary("01"), &coding),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn parikh_examples() {
        assert_eq!(parikh(&Word::ternary("0112")).counts(), &[1, 2, 1]);
        assert_eq!(parikh(&Word::ternary("")).counts(), &[0, 0, 0]);
        assert_eq!(parikh(&Word::ternary("01121220")).counts(), &[2, 3, 3]);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror(&Word::ternary("012")).to_string(), "210");
        assert_eq!(mirror(&Word::ternary("")).to_string(), "");
        assert_eq!(mirror(&Word::ternary("0112")).to_string(), "2110");
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(0, &Word::ternary("012")).unwrap().to_string(), "021");
        assert_eq!(tau(1, &Word::ternary("012")).unwrap().to_string(), "210");
        assert_eq!(tau(2, &Word::ternary("2")).unwrap().to_string(), "2");
    }

    #[test]
    fn tau_needs_ternary_alphabet() {
        let abc = Arc::new(Alphabet::new(["a", "b", "c"]).unwrap());
        let w = Word::parse(abc, "abc").unwrap();
        assert!(tau(0, &w).is_err());
        assert!(tau(3, &Word::ternary("0")).is_err());
    }

    #[test]
    fn letter_shift_examples() {
        assert_eq!(letter_shift(0, -1), 2);
        assert_eq!(letter_shift(0, 1), 1);
        assert_eq!(letter_shift(2, 1), 0);
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::digits(17).is_err());
        assert!(Alphabet::digits(16).is_ok());
    }

    #[test]
    fn multi_char_letters_render_with_commas() {
        let a = Arc::new(Alphabet::digits(12).unwrap());
        let w = Word::parse(a.clone(), "10,2,11").unwrap();
        assert_eq!(w.symbols(), &[10, 2, 11]);
        assert_eq!(w.to_string(), "10,2,11");
        assert!(Word::new(a, vec![12]).is_err());
    }
}
