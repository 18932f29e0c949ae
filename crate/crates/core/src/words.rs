//! Word-packed bit vector helpers shared by polynomials and cell sets.
//!
//! Bit `i` lives in word `i / 64` at position `i % 64`.

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    words
        .get(i / WORD_BITS)
        .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
}

#[inline]
pub(crate) fn flip(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] ^= 1 << (i % WORD_BITS);
}

/// `dst ^= src << shift`, dropping bits that land past the end of `dst`.
pub(crate) fn xor_shl(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / WORD_BITS, shift % WORD_BITS);
    if ws >= dst.len() {
        return;
    }
    let limit = src.len().min(dst.len() - ws);
    if bs == 0 {
        for (d, s) in dst[ws..ws + limit].iter_mut().zip(&src[..limit]) {
            *d ^= s;
        }
        return;
    }
    for i in 0..limit {
        dst[ws + i] ^= src[i] << bs;
        if let Some(d) = dst.get_mut(ws + i + 1) {
            *d ^= src[i] >> (WORD_BITS - bs);
        }
    }
}

/// `dst ^= src >> shift`.
pub(crate) fn xor_shr(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / WORD_BITS, shift % WORD_BITS);
    if ws >= src.len() {
        return;
    }
    for i in 0..dst.len().min(src.len() - ws) {
        let mut v = src[i + ws] >> bs;
        if bs != 0 {
            if let Some(hi) = src.get(i + ws + 1) {
                v |= hi << (WORD_BITS - bs);
            }
        }
        dst[i] ^= v;
    }
}

/// Index of the highest set bit, if any.
pub(crate) fn highest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .rposition(|&w| w != 0)
        .map(|i| i * WORD_BITS + (WORD_BITS - 1 - words[i].leading_zeros() as usize))
}

pub(crate) fn count_ones(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Iterate over the indices of set bits in ascending order.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * WORD_BITS + t)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_shl(src: &[u64], shift: usize, len: usize) -> Vec<u64> {
        let mut out = vec![0; len];
        for i in ones(src) {
            if i + shift < len * WORD_BITS {
                flip(&mut out, i + shift);
            }
        }
        out
    }

    #[test]
    fn shifts_match_bitwise_reference() {
        let src = [0x8000_0000_0000_0001u64, 0xdead_beef_0123_4567, 0x5];
        for shift in [0, 1, 5, 63, 64, 65, 127, 130, 200] {
            let mut dst = vec![0; 4];
            xor_shl(&mut dst, &src, shift);
            assert_eq!(dst, naive_shl(&src, shift, 4), "shl {shift}");

            let mut dst = vec![0; 3];
            xor_shr(&mut dst, &src, shift);
            let expect: Vec<u64> = {
                let mut out = vec![0; 3];
                for i in ones(&src) {
                    if i >= shift {
                        flip(&mut out, i - shift);
                    }
                }
                out
            };
            assert_eq!(dst, expect, "shr {shift}");
        }
    }

    #[test]
    fn highest_bit_and_ones() {
        assert_eq!(highest_bit(&[0, 0]), None);
        assert_eq!(highest_bit(&[1, 0]), Some(0));
        assert_eq!(highest_bit(&[0, 1 << 3]), Some(67));
        assert_eq!(ones(&[0b1010, 1]).collect::<Vec<_>>(), vec![1, 3, 64]);
    }
}
