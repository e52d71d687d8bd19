//! Suffix array with LCP, used to count distinct factors of one length inside
//! an arbitrary window of a prefix in linear time per query.

use crate::word::Letter;

#[derive(Debug)]
pub struct SuffixIndex {
    sa: Vec<u32>,
    /// `lcp[r]` = longest common prefix of suffixes `sa[r-1]` and `sa[r]`.
    lcp: Vec<u32>,
}

impl SuffixIndex {
    /// Prefix doubling; `O(L log² L)`.
    pub fn build(text: &[Letter]) -> Self {
        let n = text.len();
        assert!(n < u32::MAX as usize);
        let mut sa: Vec<u32> = (0..n as u32).collect();
        let mut rank: Vec<u32> = text.iter().map(|&c| c as u32).collect();
        let mut tmp = vec![0u32; n];
        let mut k = 1usize;
        while n > 1 && k < n {
            {
                let key = |i: u32| {
                    let i = i as usize;
                    let second = if i + k < n { rank[i + k] as u64 + 1 } else { 0 };
                    ((rank[i] as u64) << 32) | second
                };
                sa.sort_unstable_by_key(|&i| key(i));
                tmp[sa[0] as usize] = 0;
                for r in 1..n {
                    let bump = (key(sa[r - 1]) != key(sa[r])) as u32;
                    tmp[sa[r] as usize] = tmp[sa[r - 1] as usize] + bump;
                }
            }
            std::mem::swap(&mut rank, &mut tmp);
            let classes = rank[sa[n - 1] as usize] as usize + 1;
            if classes == n {
                break;
            }
            k *= 2;
        }

        // Kasai.
        let mut lcp = vec![0u32; n];
        let mut inv = vec![0u32; n];
        for (r, &s) in sa.iter().enumerate() {
            inv[s as usize] = r as u32;
        }
        let mut h = 0usize;
        for i in 0..n {
            let r = inv[i] as usize;
            if r == 0 {
                h = 0;
                continue;
            }
            let j = sa[r - 1] as usize;
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[r] = h as u32;
            h = h.saturating_sub(1);
        }
        Self { sa, lcp }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Number of distinct length-`n` factors among the windows lying inside
    /// the first `window` letters.
    pub fn distinct(&self, n: usize, window: usize) -> usize {
        assert!(
            window <= self.len(),
            "window {window} beyond index length {}",
            self.len()
        );
        if n == 0 || n > window {
            return (n == 0) as usize;
        }
        let last_start = window - n;
        let mut count = 0;
        let mut run_min = u32::MAX;
        let mut seen_any = false;
        for r in 0..self.sa.len() {
            if r > 0 {
                run_min = run_min.min(self.lcp[r]);
            }
            if self.sa[r] as usize <= last_start {
                if !seen_any || (run_min as usize) < n {
                    count += 1;
                }
                seen_any = true;
                run_min = u32::MAX;
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn naive(text: &[u8], n: usize, window: usize) -> usize {
        text[..window].windows(n).collect::<HashSet<_>>().len()
    }

    #[test]
    fn matches_naive_on_pseudorandom_text() {
        let mut x: u32 = 12345;
        let text: Vec<u8> = (0..700)
            .map(|_| {
                x = x.wrapping_mul(1103515245).wrapping_add(12345);
                ((x >> 16) % 3) as u8
            })
            .collect();
        let idx = SuffixIndex::build(&text);
        for n in 1..20 {
            for window in [n, n + 1, 50, 333, 700] {
                assert_eq!(
                    idx.distinct(n, window),
                    naive(&text, n, window),
                    "n={n} w={window}"
                );
            }
        }
    }

    #[test]
    fn periodic_text() {
        let text: Vec<u8> = (0..256).map(|i| (i % 2) as u8).collect();
        let idx = SuffixIndex::build(&text);
        assert_eq!(idx.distinct(1, 256), 2);
        assert_eq!(idx.distinct(17, 256), 2);
        assert_eq!(idx.distinct(17, 17), 1);
    }
}
