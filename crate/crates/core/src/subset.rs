//! Fixed-width subsets of a ground set `{1, ..., n}` with `n <= 64`.
//!
//! Element `e` is stored at bit `e - 1`. The integer value of the word is the
//! canonical sort key used for bases throughout the crate.

use core::fmt;
use core::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Sub};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole ground set `{1, ..., n}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    /// `{e}` for a 1-based element label.
    #[inline]
    pub const fn singleton(e: usize) -> Self {
        debug_assert!(e >= 1 && e <= MAX_ELEMENTS);
        Subset(1u64 << (e - 1))
    }

    /// Builds a subset from 1-based labels, returning the first invalid label
    /// (0 or above 64) as the error.
    pub fn try_from_elements<I>(elements: I) -> Result<Self, usize>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > MAX_ELEMENTS {
                return Err(e);
            }
            bits |= 1u64 << (e - 1);
        }
        Ok(Subset(bits))
    }

    /// Panicking variant of [`Subset::try_from_elements`], meant for literals.
    pub fn of(elements: &[usize]) -> Self {
        match Self::try_from_elements(elements.iter().copied()) {
            Ok(s) => s,
            Err(e) => panic!("element {e} outside 1..=64"),
        }
    }

    #[inline]
    pub const fn contains(self, e: usize) -> bool {
        e >= 1 && e <= MAX_ELEMENTS && (self.0 >> (e - 1)) & 1 == 1
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn with(self, e: usize) -> Self {
        Subset(self.0 | (1u64 << (e - 1)))
    }

    #[inline]
    pub const fn without(self, e: usize) -> Self {
        Subset(self.0 & !(1u64 << (e - 1)))
    }

    /// Smallest element, if any.
    #[inline]
    pub const fn min_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Largest element, if any.
    #[inline]
    pub const fn max_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Elements in increasing order.
    #[inline]
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Packs the bits selected by `mask` into the low bits (element order kept).
    pub fn compress(self, mask: Subset) -> Subset {
        let mut out = 0u64;
        let mut pos = 0;
        let mut m = mask.0;
        while m != 0 {
            let low = m & m.wrapping_neg();
            if self.0 & low != 0 {
                out |= 1u64 << pos;
            }
            pos += 1;
            m &= m - 1;
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`]: spreads the low bits over `mask`.
    pub fn expand(self, mask: Subset) -> Subset {
        let mut out = 0u64;
        let mut pos = 0;
        let mut m = mask.0;
        while m != 0 {
            let low = m & m.wrapping_neg();
            if (self.0 >> pos) & 1 == 1 {
                out |= low;
            }
            pos += 1;
            m &= m - 1;
        }
        Subset(out)
    }

    /// 0/1 incidence vector of length `n`.
    pub fn incidence(self, n: usize) -> alloc::vec::Vec<u8> {
        (1..=n).map(|e| self.contains(e) as u8).collect()
    }
}

/// Iterator over the elements of a [`Subset`], ascending.
#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl FromIterator<usize> for Subset {
    /// Panics on labels outside `1..=64`.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        match Subset::try_from_elements(iter) {
            Ok(s) => s,
            Err(e) => panic!("element {e} outside 1..=64"),
        }
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    #[inline]
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitAndAssign for Subset {
    #[inline]
    fn bitand_assign(&mut self, rhs: Subset) {
        self.0 &= rhs.0;
    }
}

impl BitOr for Subset {
    type Output = Subset;
    #[inline]
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitOrAssign for Subset {
    #[inline]
    fn bitor_assign(&mut self, rhs: Subset) {
        self.0 |= rhs.0;
    }
}

impl BitXor for Subset {
    type Output = Subset;
    #[inline]
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

/// Set difference.
impl Sub for Subset {
    type Output = Subset;
    #[inline]
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// All `k`-subsets of `mask`, in increasing integer order.
pub fn subsets_of_size(mask: Subset, k: usize) -> KSubsets {
    let m = mask.len();
    let state = if k > m {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(Subset::full(k).0)
    };
    KSubsets { mask, width: m, state }
}

#[derive(Clone, Debug)]
pub struct KSubsets {
    mask: Subset,
    width: usize,
    state: Option<u64>,
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.state?;
        let out = Subset(cur).expand(self.mask);
        // Gosper's hack on the compressed index space.
        self.state = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 || (self.width < 64 && r >> self.width != 0) {
                None
            } else {
                Some((((r ^ cur) >> 2) / c) | r)
            }
        };
        Some(out)
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
