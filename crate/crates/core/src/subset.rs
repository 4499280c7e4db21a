//! Subsets of a ground set `{1, …, n}` packed into a bitmask.
//!
//! Element `i` lives at bit `i - 1`. Masks never leave the crate's public
//! surface in text form: `Display` and serialization use sorted element
//! lists.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest ground set a dense table may be built over.
pub const MAX_GROUND: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    /// Builds a subset from 1-based element labels. Panics on 0 or labels above 32.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        let mut mask = 0u32;
        for e in elems {
            assert!((1..=32).contains(&e), "element {e} out of range");
            mask |= 1 << (e - 1);
        }
        Subset(mask)
    }

    /// The whole ground set `{1, …, n}`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        Subset::from_elements([e])
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=32).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Self {
        Subset(self.0 | (1 << (e - 1)))
    }

    pub fn without(self, e: usize) -> Self {
        Subset(self.0 & !(1 << (e - 1)))
    }

    /// `X - i + j`.
    pub fn swap(self, out: usize, inn: usize) -> Self {
        self.without(out).with(inn)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        self.elements().next()
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as usize + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// All subsets of `{1, …, n}` in ascending mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..(1u32 << n)).map(Subset)
}

/// All subsets of `{1, …, n}` with exactly `k` elements, ascending by mask.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    all_subsets(n).filter(move |s| s.len() == k)
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let elems = Vec::<usize>::deserialize(d)?;
        let mut mask = 0u32;
        for e in elems {
            if !(1..=MAX_GROUND).contains(&e) {
                return Err(D::Error::custom(format!("element {e} out of range")));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset(mask))
    }
}
