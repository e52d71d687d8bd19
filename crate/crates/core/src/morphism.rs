//! Non-erasing morphisms over finite alphabets.

use std::sync::Arc;

use crate::coding::Coding;
use crate::error::{domain, Error, Result};
use crate::word::{check_alphabet, Alphabet, Letter, Word};

/// Default cap on the length of any word produced by [`Morphism::iterate`].
pub const DEFAULT_LENGTH_CAP: usize = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Arc<Alphabet>,
    images: Vec<Vec<Letter>>,
}

impl Morphism {
    pub fn new(alphabet: Arc<Alphabet>, images: Vec<Vec<Letter>>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return domain(format!(
                "{} images for a {}-letter alphabet",
                images.len(),
                alphabet.len()
            ));
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return domain(format!(
                    "image of {:?} is empty; erasing morphisms are not supported",
                    alphabet.name(a as Letter)
                ));
            }
            if img.iter().any(|&s| s as usize >= alphabet.len()) {
                return domain("image letter outside the alphabet");
            }
        }
        Ok(Self { alphabet, images })
    }

    /// `σ: 0 → 01, 1 → 12, 2 → 20`.
    pub fn tml() -> Self {
        Self::new(
            Alphabet::ternary(),
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .expect("valid")
    }

    /// `σ₃: a → abc, b → bca, c → cab`.
    pub fn sigma3() -> Self {
        let abc = Arc::new(Alphabet::new(["a", "b", "c"]).expect("valid"));
        Self::new(abc, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).expect("valid")
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "tml" => Ok(Self::tml()),
            "sigma3" => Ok(Self::sigma3()),
            other => domain(format!("unknown preset {other:?} (expected tml or sigma3)")),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.images[letter as usize]
    }

    /// Common image length when the morphism is uniform.
    pub fn uniform_length(&self) -> Option<usize> {
        let k = self.images[0].len();
        self.images.iter().all(|i| i.len() == k).then_some(k)
    }

    /// `σ(seed)` starts with `seed` and is longer than one letter.
    pub fn is_prolongable(&self, seed: Letter) -> bool {
        let img = self.image(seed);
        img.len() >= 2 && img[0] == seed
    }

    pub(crate) fn apply_symbols(&self, symbols: &[Letter]) -> Vec<Letter> {
        let len = self.image_len(symbols);
        let mut out = Vec::with_capacity(len);
        for &s in symbols {
            out.extend_from_slice(&self.images[s as usize]);
        }
        out
    }

    fn image_len(&self, symbols: &[Letter]) -> usize {
        symbols.iter().map(|&s| self.images[s as usize].len()).sum()
    }

    pub fn apply(&self, u: &Word) -> Result<Word> {
        check_alphabet(&self.alphabet, u.alphabet())?;
        Ok(Word::from_trusted(
            self.alphabet.clone(),
            self.apply_symbols(u.symbols()),
        ))
    }

    pub fn iterate(&self, u: &Word, k: usize) -> Result<Word> {
        self.iterate_capped(u, k, DEFAULT_LENGTH_CAP)
    }

    pub fn iterate_capped(&self, u: &Word, k: usize, cap: usize) -> Result<Word> {
        check_alphabet(&self.alphabet, u.alphabet())?;
        let mut cur = u.symbols().to_vec();
        for step in 0..k {
            let next_len = self.image_len(&cur);
            if next_len > cap {
                return Err(Error::Resource(format!(
                    "iterate: step {} would produce {next_len} symbols (cap {cap})",
                    step + 1
                )));
            }
            cur = self.apply_symbols(&cur);
        }
        Ok(Word::from_trusted(self.alphabet.clone(), cur))
    }

    /// `σ^k(letter)` as raw symbols.
    pub(crate) fn power_of_letter(&self, letter: Letter, k: usize) -> Vec<Letter> {
        let mut cur = vec![letter];
        for _ in 0..k {
            cur = self.apply_symbols(&cur);
        }
        cur
    }
}

/// A morphism file: the morphism, the seed (first rule's letter), and the
/// coding when the file carries `letter = integer` lines.
#[derive(Debug, Clone)]
pub struct MorphismSpec {
    pub morphism: Morphism,
    pub seed: Letter,
    pub coding: Option<Coding>,
}

/// Parses `letter -> image` rules, one per line. Images of single-character
/// alphabets may be written unseparated (`0 -> 01`); otherwise tokens are
/// separated by spaces or commas. `#` starts a comment.
pub fn parse_morphism(text: &str) -> Result<MorphismSpec> {
    let mut rules: Vec<(usize, String, String)> = Vec::new();
    let mut has_coding = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some((lhs, rhs)) = body.split_once("->") {
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(Error::Parse {
                    line,
                    message: format!("rule must start with a single letter token, got {lhs:?}"),
                });
            }
            if rules.iter().any(|(_, l, _)| l == lhs) {
                return Err(Error::Parse {
                    line,
                    message: format!("second rule for letter {lhs:?}"),
                });
            }
            rules.push((line, lhs.to_string(), rhs.trim().to_string()));
        } else if body.contains('=') {
            has_coding = true;
        } else {
            return Err(Error::Parse {
                line,
                message: format!("expected `letter -> image` or `letter = integer`, got {body:?}"),
            });
        }
    }
    if rules.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no rules".into(),
        });
    }
    let alphabet =
        Alphabet::new(rules.iter().map(|(_, l, _)| l.clone())).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
    let alphabet = Arc::new(alphabet);
    let mut images = Vec::with_capacity(rules.len());
    for (line, _, rhs) in &rules {
        let tokens: Vec<&str> = if rhs.contains(|c: char| c.is_whitespace() || c == ',') {
            rhs.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .collect()
        } else {
            rhs.char_indices()
                .map(|(i, c)| &rhs[i..i + c.len_utf8()])
                .collect()
        };
        if tokens.is_empty() {
            return Err(Error::Parse {
                line: *line,
                message: "empty image".into(),
            });
        }
        let img = tokens
            .iter()
            .map(|t| {
                alphabet.index_of(t).ok_or_else(|| Error::Parse {
                    line: *line,
                    message: format!("image letter {t:?} has no rule of its own"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        images.push(img);
    }
    let morphism = Morphism::new(alphabet.clone(), images)?;
    let coding = if has_coding {
        Some(Coding::parse_file(alphabet, text)?)
    } else {
        None
    };
    Ok(MorphismSpec {
        morphism,
        seed: 0,
        coding,
    })
}
