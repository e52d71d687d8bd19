//! Morphic words over small integer alphabets: fixed-point generation,
//! subword / abelian / additive complexity, and exhaustive checks of the
//! digit-sum structure of `t = σ^∞(0)` with `σ: 0 → 01, 1 → 12, 2 → 20`.
//!
//! ```
//! use morphic::{additive_complexity, Coding, FixedPointStream};
//!
//! let t = FixedPointStream::tml();
//! let id = Coding::identity(t.alphabet().clone()).unwrap();
//! assert_eq!(additive_complexity(&t, &id, 7).unwrap(), 7);
//! ```

pub mod coding;
pub mod complexity;
pub mod error;
pub mod ivp;
pub mod morphism;
pub mod regularity;
pub mod report;
pub mod stream;
pub mod suffix;
pub mod tml;
pub mod word;

pub use coding::{code, Coding};
pub use complexity::{
    abelian_complexity, additive_complexity, digit_sum_set, enumerate_factors, evenness,
    factor_set, parikh_set, recurrence_index, subword_complexity, ComplexityRow, ComplexityTable,
    FactorIndex,
};
pub use error::{Error, Result};
pub use morphism::{parse_morphism, Morphism, MorphismSpec};
pub use report::{Failure, Report};
pub use stream::{automatic_letter, FixedPointStream};
pub use word::{
    digit_sum, letter_shift, mirror, parikh, tau, Alphabet, Letter, ParikhVector, Word,
};

/// `⌊log₂ n⌋` for `n ≥ 1`.
pub fn floor_log2(n: usize) -> usize {
    assert!(n >= 1, "floor_log2(0)");
    (usize::BITS - 1 - n.leading_zeros()) as usize
}
