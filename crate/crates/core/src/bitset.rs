use std::fmt;

/// Fixed-capacity set of element ids.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    len: usize,
    blocks: Vec<u64>,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        ElementSet {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = ElementSet::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(len: usize, ids: I) -> Self {
        let mut s = ElementSet::empty(len);
        for i in ids {
            s.insert(i);
        }
        s
    }

    /// Capacity (the parent group order).
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns true if `i` was not present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let mask = 1u64 << (i % 64);
        let fresh = self.blocks[i / 64] & mask == 0;
        self.blocks[i / 64] |= mask;
        fresh
    }

    pub fn remove(&mut self, i: usize) {
        self.blocks[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(bi * 64 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = ElementSet::from_ids(130, [0, 5, 64, 129]);
        assert_eq!(a.count(), 4);
        assert_eq!(a.to_vec(), vec![0, 5, 64, 129]);
        let b = ElementSet::from_ids(130, [5, 129, 7]);
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 129]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!b.is_subset(&a));
        a.remove(5);
        assert!(!a.contains(5));
        assert_eq!(ElementSet::full(70).count(), 70);
    }
}
