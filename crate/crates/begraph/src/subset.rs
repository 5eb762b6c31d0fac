//! Small element sets over a ground set `{1, .., n}`, stored as bit masks.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Capacity of a [`Subset`]; ground sets are limited to this many elements.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of the ground set `{1, .., n}` with `n <= 64`.
///
/// Element `e` is stored in bit `e - 1`. Ordering is lexicographic on the
/// sorted element sequence, so `{1,4} < {2,3}` — the order in which bases
/// files are written.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// Builds a subset from 1-based element labels. Panics above [`MAX_ELEMENTS`].
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        let mut bits = 0u64;
        for e in elements {
            assert!(
                (1..=MAX_ELEMENTS).contains(&e),
                "element {e} outside 1..={MAX_ELEMENTS}"
            );
            bits |= 1 << (e - 1);
        }
        Subset(bits)
    }

    /// The full ground set `{1, .., n}`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_ELEMENTS);
        if n == 0 {
            Subset(0)
        } else {
            Subset(u64::MAX >> (MAX_ELEMENTS - n))
        }
    }

    pub fn contains(self, e: usize) -> bool {
        e >= 1 && e <= MAX_ELEMENTS && self.0 & (1 << (e - 1)) != 0
    }

    #[must_use]
    pub fn with(self, e: usize) -> Subset {
        assert!((1..=MAX_ELEMENTS).contains(&e));
        Subset(self.0 | 1 << (e - 1))
    }

    #[must_use]
    pub fn without(self, e: usize) -> Subset {
        assert!((1..=MAX_ELEMENTS).contains(&e));
        Subset(self.0 & !(1 << (e - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// 1-based element labels in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    pub fn elements(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Relabels every element through `map` (1-based on both sides).
    #[must_use]
    pub fn map_elements(self, map: impl Fn(usize) -> usize) -> Subset {
        Subset::from_elements(self.iter().map(map))
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (mut a, mut b) = (self.0, other.0);
        while a != 0 && b != 0 {
            let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
            if la != lb {
                return la.cmp(&lb);
            }
            a &= a - 1;
            b &= b - 1;
        }
        // the shorter sequence is a prefix of the longer one
        (a != 0).cmp(&(b != 0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Calls `f` on every `k`-element subset of `{1, .., n}`, in lexicographic
/// order of the sorted element sequences.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(Subset)) {
    assert!(k <= n && n <= MAX_ELEMENTS);
    let mut picked = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, picked: &mut Vec<usize>, f: &mut impl FnMut(Subset)) {
        if picked.len() == k {
            f(Subset::from_elements(picked.iter().copied()));
            return;
        }
        let remaining = k - picked.len();
        for e in start..=(n - remaining + 1) {
            picked.push(e);
            rec(n, k, e + 1, picked, f);
            picked.pop();
        }
    }
    if k == 0 {
        f(Subset::EMPTY);
    } else {
        rec(n, k, 1, &mut picked, &mut f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order_on_element_sequences() {
        let s = |v: &[usize]| Subset::from_elements(v.iter().copied());
        let mut sets = vec![s(&[2, 3]), s(&[1, 4]), s(&[1, 2]), s(&[1, 3])];
        sets.sort();
        assert_eq!(sets, vec![s(&[1, 2]), s(&[1, 3]), s(&[1, 4]), s(&[2, 3])]);
        assert!(s(&[1]) < s(&[1, 2]));
        assert!(s(&[2]) > s(&[1, 9]));
    }

    #[test]
    fn set_operations() {
        let a = Subset::from_elements([1, 2, 5]);
        let b = Subset::from_elements([2, 3]);
        assert_eq!(a | b, Subset::from_elements([1, 2, 3, 5]));
        assert_eq!(a & b, Subset::from_elements([2]));
        assert_eq!(a - b, Subset::from_elements([1, 5]));
        assert_eq!(a.without(5).with(4), Subset::from_elements([1, 2, 4]));
        assert_eq!(Subset::full(3).elements(), vec![1, 2, 3]);
        assert_eq!(Subset::full(0), Subset::EMPTY);
    }

    #[test]
    fn combinations_count_and_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |s| seen.push(s));
        assert_eq!(seen.len(), 6);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        let mut empty = Vec::new();
        for_each_combination(3, 0, |s| empty.push(s));
        assert_eq!(empty, vec![Subset::EMPTY]);
    }
}
