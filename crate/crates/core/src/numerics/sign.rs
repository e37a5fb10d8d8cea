//! Sign vectors in `{-1, +1}^n` and their Gray-code enumeration.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest `n` representable by a 64-bit pattern with room for the index walk.
pub const MAX_COMPONENTS: usize = 62;

/// An element of `{-1, +1}^n`; bit `j` set means component `j` is `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    n: u32,
    bits: u64,
}

impl SignVector {
    pub fn new(n: u32, bits: u64) -> Result<Self> {
        if n == 0 || n as usize > MAX_COMPONENTS || bits >> n != 0 {
            return Err(Error::InvalidSignVector { n, bits });
        }
        Ok(SignVector { n, bits })
    }

    /// The sign vector visited at position `index` of the Gray-code walk.
    pub fn gray(n: u32, index: u64) -> Result<Self> {
        Self::new(n, gray_code(index))
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn sign(&self, j: u32) -> i8 {
        if self.bits >> j & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// Product of all components.
    pub fn parity(&self) -> i8 {
        if self.bits.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

#[inline]
pub fn gray_code(index: u64) -> u64 {
    index ^ (index >> 1)
}

/// One position of a Gray-code walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrayStep {
    pub bits: u64,
    /// Component flipped relative to the previous step; `None` on the first step.
    pub flipped: Option<u32>,
}

/// Walks Gray-code indices `start..end`; consecutive patterns differ in one bit.
#[derive(Debug, Clone)]
pub struct GrayWalk {
    next: u64,
    end: u64,
    first: bool,
}

impl GrayWalk {
    pub fn new(start: u64, end: u64) -> Self {
        GrayWalk { next: start, end, first: true }
    }

    pub fn full(n: u32) -> Self {
        Self::new(0, 1u64 << n)
    }
}

impl Iterator for GrayWalk {
    type Item = GrayStep;

    fn next(&mut self) -> Option<GrayStep> {
        if self.next >= self.end {
            return None;
        }
        let i = self.next;
        self.next += 1;
        let flipped = if std::mem::take(&mut self.first) { None } else { Some(i.trailing_zeros()) };
        Some(GrayStep { bits: gray_code(i), flipped })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = (self.end - self.next) as usize;
        (r, Some(r))
    }
}

const BLOCK_BITS: u32 = 12;

/// Splits the walk over `{-1,+1}^n` into fixed blocks of `2^12` indices,
/// evaluates `f(start, end)` for each block (possibly in parallel) and returns
/// the results in block order.
///
/// The block layout depends only on `n`, never on the thread count, so a
/// reduction over the returned vector in order is reproducible bit for bit.
pub fn map_blocks<T, F>(n: u32, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let total = 1u64 << n;
    let block = 1u64 << BLOCK_BITS.min(n);
    let blocks = total / block;
    if blocks == 1 {
        return vec![f(0, total)];
    }
    (0..blocks).into_par_iter().map(|b| f(b * block, (b + 1) * block)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn walk_visits_every_pattern_once() {
        for n in 1..=10 {
            let seen: HashSet<u64> = GrayWalk::full(n).map(|s| s.bits).collect();
            assert_eq!(seen.len(), 1 << n);
            assert!(seen.iter().all(|&b| b < 1 << n));
        }
    }

    #[test]
    fn consecutive_patterns_differ_in_flipped_bit() {
        let steps: Vec<_> = GrayWalk::full(8).collect();
        assert_eq!(steps[0].flipped, None);
        for w in steps.windows(2) {
            let j = w[1].flipped.unwrap();
            assert_eq!(w[0].bits ^ w[1].bits, 1 << j);
        }
    }

    #[test]
    fn sub_walks_agree_with_full_walk() {
        let full: Vec<_> = GrayWalk::full(9).map(|s| s.bits).collect();
        let split: Vec<_> = GrayWalk::new(0, 100).chain(GrayWalk::new(100, 512)).map(|s| s.bits).collect();
        assert_eq!(full, split);
    }

    #[test]
    fn parity_matches_popcount() {
        let v = SignVector::new(4, 0b1011).unwrap();
        assert_eq!(v.parity(), -1);
        assert_eq!((0..4).map(|j| v.sign(j)).collect::<Vec<_>>(), vec![-1, -1, 1, -1]);
        assert_eq!(SignVector::new(3, 0).unwrap().parity(), 1);
    }

    #[test]
    fn rejects_out_of_range_bits() {
        assert!(SignVector::new(3, 8).is_err());
        assert!(SignVector::new(0, 0).is_err());
        assert!(SignVector::new(63, 0).is_err());
    }

    #[test]
    fn blocks_cover_range_in_order() {
        let ranges = map_blocks(14, |s, e| (s, e));
        assert_eq!(ranges.len(), 4);
        assert_eq!(ranges[0], (0, 4096));
        assert_eq!(ranges[3].1, 1 << 14);
        assert_eq!(map_blocks(3, |s, e| (s, e)), vec![(0, 8)]);
    }
}
