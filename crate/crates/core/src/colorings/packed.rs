/// Fixed-width bit-packed array of small color indices.
///
/// Entries are `width` bits wide and may straddle word boundaries.
#[derive(Clone, PartialEq, Eq)]
pub struct PackedColors {
    words: Vec<u64>,
    width: u32,
    len: usize,
}

/// Bits needed to store colors `0..r`.
pub fn bits_for(r: u32) -> u32 {
    debug_assert!(r >= 2);
    32 - (r - 1).leading_zeros()
}

impl PackedColors {
    pub fn new(width: u32, len: usize) -> Self {
        assert!((1..=8).contains(&width), "width {width} out of range");
        let words = (len * width as usize).div_ceil(64);
        Self {
            words: vec![0; words],
            width,
            len,
        }
    }

    pub fn for_colors(r: u32, len: usize) -> Self {
        Self::new(bits_for(r), len)
    }

    /// Resizes in place, zeroing contents, reusing the allocation when it is large enough.
    pub fn reset(&mut self, width: u32, len: usize) {
        assert!((1..=8).contains(&width), "width {width} out of range");
        let words = (len * width as usize).div_ceil(64);
        self.words.clear();
        self.words.resize(words, 0);
        self.width = width;
        self.len = len;
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Heap bytes held by the backing store.
    pub fn heap_bytes(&self) -> usize {
        self.words.capacity() * 8
    }

    #[inline]
    fn mask(&self) -> u64 {
        (1u64 << self.width) - 1
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len);
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, (bit % 64) as u32);
        let mut v = self.words[w] >> off;
        if off + self.width > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        (v & self.mask()) as u8
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u8) {
        debug_assert!(i < self.len);
        let mask = self.mask();
        let value = value as u64 & mask;
        let bit = i * self.width as usize;
        let (w, off) = (bit / 64, (bit % 64) as u32);
        self.words[w] = (self.words[w] & !(mask << off)) | (value << off);
        if off + self.width > 64 {
            let spill = off + self.width - 64;
            let hi_mask = (1u64 << spill) - 1;
            self.words[w + 1] = (self.words[w + 1] & !hi_mask) | (value >> (self.width - spill));
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl std::fmt::Debug for PackedColors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn widths() {
        assert_eq!(bits_for(2), 1);
        assert_eq!(bits_for(3), 2);
        assert_eq!(bits_for(4), 2);
        assert_eq!(bits_for(5), 3);
        assert_eq!(bits_for(36), 6);
    }

    proptest! {
        #[test]
        fn stores_what_it_is_given(r in 2u32..=36, values in prop::collection::vec(0u8..36, 0..300)) {
            let values: Vec<u8> = values.into_iter().map(|v| v % r as u8).collect();
            let mut packed = PackedColors::for_colors(r, values.len());
            for (i, &v) in values.iter().enumerate() {
                packed.set(i, v);
            }
            // Overwrite in reverse to exercise neighbour masking.
            for (i, &v) in values.iter().enumerate().rev() {
                packed.set(i, v);
            }
            prop_assert_eq!(packed.iter().collect::<Vec<_>>(), values);
        }
    }
}
