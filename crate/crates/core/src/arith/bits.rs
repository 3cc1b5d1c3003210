//! Fixed-length bit vector backed by `u64` words.

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn zeros(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = BitSet {
            words: vec![u64::MAX; len.div_ceil(64)],
            len,
        };
        s.clear_tail();
        s
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Reads 64 bits starting at bit `start`; bits past the end read as zero.
    #[inline]
    pub fn word_at(&self, start: usize) -> u64 {
        let wi = start >> 6;
        let off = start & 63;
        let lo = self.words.get(wi).copied().unwrap_or(0);
        if off == 0 {
            lo
        } else {
            let hi = self.words.get(wi + 1).copied().unwrap_or(0);
            (lo >> off) | (hi << (64 - off))
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.len & 63;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitSet(len={}, ones={})", self.len, self.count_ones())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_respects_length() {
        let s = BitSet::ones(70);
        assert_eq!(s.count_ones(), 70);
        assert_eq!(s.iter_ones().last(), Some(69));
    }

    #[test]
    fn word_at_straddles_words() {
        let mut s = BitSet::zeros(200);
        for i in [3, 63, 64, 100, 127, 128, 199] {
            s.set(i);
        }
        for start in 0..200 {
            let w = s.word_at(start);
            for b in 0..64 {
                let expect = start + b < 200 && s.get(start + b);
                assert_eq!((w >> b) & 1 == 1, expect, "start={start} b={b}");
            }
        }
    }
}
