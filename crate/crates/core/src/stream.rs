//! Prefixes of fixed points `σ^∞(seed)`.

use std::sync::Arc;

use parking_lot::{Mutex, RwLock};

use crate::error::{domain, Error, Result};
use crate::morphism::{Morphism, DEFAULT_LENGTH_CAP};
use crate::suffix::SuffixIndex;
use crate::word::{Alphabet, Letter, Word};

/// Lazily materialized prefix of the fixed point of a prolongable morphism.
///
/// The buffer only ever grows, and each growth step swaps in a fresh `Arc`,
/// so snapshots handed out earlier stay valid and need no locking.
#[derive(Debug)]
pub struct FixedPointStream {
    morphism: Morphism,
    seed: Letter,
    cap: usize,
    buffer: RwLock<Arc<Vec<Letter>>>,
    suffixes: Mutex<Option<Arc<SuffixIndex>>>,
}

impl FixedPointStream {
    pub fn new(morphism: Morphism, seed: Letter) -> Result<Self> {
        if seed as usize >= morphism.alphabet().len() {
            return domain(format!("seed index {seed} outside the alphabet"));
        }
        if !morphism.is_prolongable(seed) {
            return domain(format!(
                "morphism is not prolongable on {:?}",
                morphism.alphabet().name(seed)
            ));
        }
        Ok(Self {
            morphism,
            seed,
            cap: DEFAULT_LENGTH_CAP,
            buffer: RwLock::new(Arc::new(vec![seed])),
            suffixes: Mutex::new(None),
        })
    }

    /// `t = σ^∞(0)` for `σ: 0 → 01, 1 → 12, 2 → 20`.
    pub fn tml() -> Self {
        Self::new(Morphism::tml(), 0).expect("prolongable")
    }

    /// `σ₃^∞(a)`.
    pub fn sigma3() -> Self {
        Self::new(Morphism::sigma3(), 0).expect("prolongable")
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.max(1);
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn seed(&self) -> Letter {
        self.seed
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.morphism.alphabet()
    }

    /// A read-only buffer holding at least the first `n` letters.
    pub fn snapshot(&self, n: usize) -> Result<Arc<Vec<Letter>>> {
        {
            let buf = self.buffer.read();
            if buf.len() >= n {
                return Ok(buf.clone());
            }
        }
        if n > self.cap {
            return Err(Error::Resource(format!(
                "prefix of length {n} exceeds the window cap of {} symbols",
                self.cap
            )));
        }
        let mut buf = self.buffer.write();
        while buf.len() < n {
            let mut next = self.morphism.apply_symbols(&buf);
            debug_assert!(next.starts_with(&buf));
            next.truncate(self.cap);
            *buf = Arc::new(next);
        }
        Ok(buf.clone())
    }

    pub fn prefix(&self, n: usize) -> Result<Word> {
        let buf = self.snapshot(n)?;
        Ok(Word::from_trusted(
            self.alphabet().clone(),
            buf[..n].to_vec(),
        ))
    }

    pub fn letter(&self, i: usize) -> Result<Letter> {
        Ok(self.snapshot(i + 1)?[i])
    }

    /// Suffix array over a prefix of at least `min_len` letters, shared
    /// between callers.
    pub(crate) fn suffix_index(&self, min_len: usize) -> Result<Arc<SuffixIndex>> {
        let mut slot = self.suffixes.lock();
        if let Some(idx) = slot.as_ref() {
            if idx.len() >= min_len {
                return Ok(idx.clone());
            }
        }
        let len = min_len
            .next_power_of_two()
            .max(1 << 12)
            .min(self.cap.max(min_len));
        let buf = self.snapshot(len)?;
        let idx = Arc::new(SuffixIndex::build(&buf[..len]));
        *slot = Some(idx.clone());
        Ok(idx)
    }
}

/// `t_i` of a uniform morphism's fixed point read straight off the base-k
/// digits of `i`, without materializing any prefix.
pub fn automatic_letter(morphism: &Morphism, seed: Letter, i: u64) -> Result<Letter> {
    let k = morphism
        .uniform_length()
        .ok_or_else(|| Error::Domain("automatic evaluation needs a uniform morphism".into()))?;
    if !morphism.is_prolongable(seed) {
        return domain("morphism is not prolongable on the seed");
    }
    let k = k as u64;
    let mut digits = Vec::new();
    let mut rest = i;
    while rest > 0 {
        digits.push((rest % k) as usize);
        rest /= k;
    }
    let mut letter = seed;
    for &d in digits.iter().rev() {
        letter = morphism.image(letter)[d];
    }
    Ok(letter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_examples() {
        let t = FixedPointStream::tml();
        assert_eq!(t.prefix(8).unwrap().to_string(), "01121220");
        assert_eq!(t.prefix(1).unwrap().to_string(), "0");
        assert_eq!(
            t.prefix(32).unwrap().to_string(),
            "01121220122020011220200120010112"
        );
    }

    #[test]
    fn prefixes_are_consistent_across_growth() {
        let t = FixedPointStream::tml();
        let short = t.snapshot(10).unwrap();
        let long = t.snapshot(5000).unwrap();
        assert_eq!(&long[..short.len()], &short[..]);
        assert_eq!(t.prefix(10).unwrap().symbols(), &short[..10]);
    }

    #[test]
    fn non_prolongable_seed_rejected() {
        assert!(FixedPointStream::new(Morphism::tml(), 3).is_err());
        let m = Morphism::new(Alphabet::ternary(), vec![vec![1, 0], vec![1, 1], vec![2]]).unwrap();
        assert!(matches!(
            FixedPointStream::new(m.clone(), 0),
            Err(Error::Domain(_))
        ));
        assert!(FixedPointStream::new(m, 1).is_ok());
    }

    #[test]
    fn cap_is_enforced() {
        let t = FixedPointStream::tml().with_cap(100);
        assert_eq!(t.prefix(100).unwrap().len(), 100);
        assert!(matches!(t.prefix(101), Err(Error::Resource(_))));
    }

    #[test]
    fn automatic_evaluator_matches_sigma3() {
        let s = FixedPointStream::sigma3();
        let p = s.snapshot(729).unwrap();
        for (i, &l) in p[..729].iter().enumerate() {
            assert_eq!(automatic_letter(s.morphism(), 0, i as u64).unwrap(), l);
        }
    }

    #[test]
    fn automatic_evaluator_needs_uniform_morphism() {
        let m = Morphism::new(
            Alphabet::digits(2).unwrap().into(),
            vec![vec![0, 1], vec![0]],
        )
        .unwrap();
        assert!(automatic_letter(&m, 0, 5).is_err());
        let fib = FixedPointStream::new(m, 0).unwrap();
        assert_eq!(fib.prefix(8).unwrap().to_string(), "01001010");
    }
}
