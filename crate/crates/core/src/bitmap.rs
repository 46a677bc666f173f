//! Dense membership tables over all `2^n` subsets of a small ground set.

use alloc::vec;
use alloc::vec::Vec;

use crate::subset::Subset;

/// Positions inside a 64-bit word whose bit `e` is clear, for `e < 6`.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

#[derive(Clone)]
pub(crate) struct Bitmap {
    n: usize,
    words: Vec<u64>,
}

impl Bitmap {
    pub(crate) fn new(n: usize) -> Self {
        debug_assert!(n <= 30);
        let len = if n >= 6 { 1usize << (n - 6) } else { 1 };
        Bitmap { n, words: vec![0; len] }
    }

    pub(crate) fn from_sets<'a, I: IntoIterator<Item = &'a Subset>>(n: usize, sets: I) -> Self {
        let mut map = Bitmap::new(n);
        for &s in sets {
            map.insert(s);
        }
        map
    }

    #[inline]
    pub(crate) fn insert(&mut self, s: Subset) {
        let i = s.bits() as usize;
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub(crate) fn contains(&self, s: Subset) -> bool {
        let i = s.bits() as usize;
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// Marks every subset of a marked set.
    pub(crate) fn close_downward(&mut self) {
        for e in 0..self.n {
            if e < 6 {
                let shift = 1u32 << e;
                let mask = LOW_MASKS[e];
                for w in self.words.iter_mut() {
                    *w |= (*w >> shift) & mask;
                }
            } else {
                let step = 1usize << (e - 6);
                for i in 0..self.words.len() {
                    if i & step == 0 {
                        self.words[i] |= self.words[i | step];
                    }
                }
            }
        }
    }

    /// Marks every superset (inside the ground set) of a marked set.
    pub(crate) fn close_upward(&mut self) {
        for e in 0..self.n {
            if e < 6 {
                let shift = 1u32 << e;
                let mask = LOW_MASKS[e];
                for w in self.words.iter_mut() {
                    *w |= (*w & mask) << shift;
                }
            } else {
                let step = 1usize << (e - 6);
                for i in 0..self.words.len() {
                    if i & step == 0 {
                        self.words[i | step] |= self.words[i];
                    }
                }
            }
        }
    }
}
