//! Index newtypes and the fixed-width bit set backing all passenger and
//! point sets.

use std::fmt;
use std::marker::PhantomData;

/// A dense index into a fixed universe `[0, universe)`.
pub trait Id: Copy + Eq + Ord + fmt::Debug {
    fn from_index(index: u32) -> Self;
    fn index(self) -> u32;
}

/// Passenger index in the conductor game.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PassengerId(u32);

impl PassengerId {
    pub const fn new(index: u32) -> Self {
        Self(index)
    }
}

impl Id for PassengerId {
    fn from_index(index: u32) -> Self {
        Self(index)
    }
    fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PassengerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Axis point index in the rectangle game.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointId(u32);

impl PointId {
    pub const fn new(index: u32) -> Self {
        Self(index)
    }
}

impl Id for PointId {
    fn from_index(index: u32) -> Self {
        Self(index)
    }
    fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const BITS: u32 = u64::BITS;

/// Fixed-width bit set over a universe `[0, universe)` of ids.
///
/// Set algebra is O(universe/64); iteration yields ids in ascending order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdSet<T: Id> {
    universe: u32,
    blocks: Vec<u64>,
    _marker: PhantomData<T>,
}

impl<T: Id> IdSet<T> {
    pub fn new(universe: u32) -> Self {
        let blocks = universe.div_ceil(BITS) as usize;
        Self { universe, blocks: vec![0; blocks], _marker: PhantomData }
    }

    /// Builds a set from raw indices, panicking on out-of-range input.
    pub fn from_indices(universe: u32, indices: &[u32]) -> Self {
        let mut set = Self::new(universe);
        for &i in indices {
            set.insert(T::from_index(i));
        }
        set
    }

    /// Builds a set from raw indices, reporting the first out-of-range one.
    pub fn try_from_indices<I>(universe: u32, indices: I) -> Result<Self, u32>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut set = Self::new(universe);
        for i in indices {
            if i >= universe {
                return Err(i);
            }
            set.insert(T::from_index(i));
        }
        Ok(set)
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    /// Inserts an id, returning whether it was absent.
    pub fn insert(&mut self, id: T) -> bool {
        let i = id.index();
        assert!(i < self.universe, "id {i} out of range for universe {}", self.universe);
        let (block, bit) = (i / BITS, i % BITS);
        let mask = 1u64 << bit;
        let fresh = self.blocks[block as usize] & mask == 0;
        self.blocks[block as usize] |= mask;
        fresh
    }

    pub fn contains(&self, id: T) -> bool {
        let i = id.index();
        if i >= self.universe {
            return false;
        }
        self.blocks[(i / BITS) as usize] & (1u64 << (i % BITS)) != 0
    }

    pub fn len(&self) -> u32 {
        self.blocks.iter().map(|b| b.count_ones()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    /// Smallest id present in both sets.
    pub fn first_common(&self, other: &Self) -> Option<T> {
        for (k, (a, b)) in self.blocks.iter().zip(&other.blocks).enumerate() {
            let both = a & b;
            if both != 0 {
                return Some(T::from_index(k as u32 * BITS + both.trailing_zeros()));
            }
        }
        None
    }

    /// Largest id present, if any.
    pub fn max_id(&self) -> Option<T> {
        for (k, &b) in self.blocks.iter().enumerate().rev() {
            if b != 0 {
                return Some(T::from_index(k as u32 * BITS + 63 - b.leading_zeros()));
            }
        }
        None
    }

    /// Ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = T> + '_ {
        self.blocks.iter().enumerate().flat_map(|(k, &block)| {
            let base = k as u32 * BITS;
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(T::from_index(base + bit))
            })
        })
    }

    /// Raw indices in ascending order (the serialized form).
    pub fn indices(&self) -> Vec<u32> {
        self.iter().map(Id::index).collect()
    }

    /// The same bits viewed as a set over another id type.
    pub fn retagged<U: Id>(&self) -> IdSet<U> {
        IdSet { universe: self.universe, blocks: self.blocks.clone(), _marker: PhantomData }
    }
}

impl<T: Id> fmt::Debug for IdSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pset(universe: u32, ids: &[u32]) -> IdSet<PassengerId> {
        IdSet::from_indices(universe, ids)
    }

    #[test]
    fn insert_iter_roundtrip() {
        let set = pset(130, &[0, 63, 64, 129, 5]);
        assert_eq!(set.indices(), vec![0, 5, 63, 64, 129]);
        assert_eq!(set.len(), 5);
        assert!(set.contains(PassengerId::new(64)));
        assert!(!set.contains(PassengerId::new(65)));
        assert_eq!(set.max_id(), Some(PassengerId::new(129)));
    }

    #[test]
    fn disjointness_and_overlap() {
        let a = pset(10, &[1, 2, 3]);
        let b = pset(10, &[4, 5]);
        let c = pset(10, &[3, 4]);
        assert!(a.is_disjoint(&b));
        assert!(!a.is_disjoint(&c));
        assert_eq!(a.first_common(&c), Some(PassengerId::new(3)));
        assert_eq!(a.first_common(&b), None);
    }

    #[test]
    fn empty_set() {
        let set = pset(7, &[]);
        assert!(set.is_empty());
        assert_eq!(set.len(), 0);
        assert_eq!(set.max_id(), None);
    }

    #[test]
    fn try_from_indices_reports_out_of_range() {
        assert_eq!(IdSet::<PassengerId>::try_from_indices(4, [1, 9]).unwrap_err(), 9);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn insert_out_of_range_panics() {
        pset(3, &[3]);
    }

    #[test]
    fn retag_preserves_bits() {
        let a = pset(70, &[0, 69]);
        let b: IdSet<PointId> = a.retagged();
        assert_eq!(b.indices(), vec![0, 69]);
    }
}
