//! Ordered, duplicate-free item sequences.

use std::fmt;

use crate::error::{Error, Result};

/// Index of an item in the ground set `[0, n)`.
pub type ItemId = usize;

/// An ordered list of distinct items.
///
/// Prefixes saturate: asking for more items than the sequence holds returns
/// the whole sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence(Vec<ItemId>);

impl Sequence {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Builds a sequence, rejecting repeated items.
    pub fn new(items: Vec<ItemId>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(items.len());
        for &item in &items {
            if !seen.insert(item) {
                return Err(Error::DuplicateItem(item));
            }
        }
        Ok(Self(items))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn into_items(self) -> Vec<ItemId> {
        self.0
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.0.contains(&item)
    }

    /// First `min(j, len)` items.
    pub fn prefix(&self, j: usize) -> &[ItemId] {
        &self.0[..j.min(self.0.len())]
    }

    /// Owned version of [`Sequence::prefix`].
    pub fn prefix_seq(&self, j: usize) -> Sequence {
        Sequence(self.prefix(j).to_vec())
    }

    /// Appends `item` (the `π ⊕ i` operation).
    pub fn push(&mut self, item: ItemId) -> Result<()> {
        if self.contains(item) {
            return Err(Error::ItemAlreadyPresent(item));
        }
        self.0.push(item);
        Ok(())
    }

    pub fn concat(&self, item: ItemId) -> Result<Sequence> {
        let mut next = self.clone();
        next.push(item)?;
        Ok(next)
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    /// Checks every item lies in `[0, n)`.
    pub fn check_within(&self, n: usize) -> Result<()> {
        if self.0.len() > n {
            return Err(Error::SequenceTooLong {
                len: self.0.len(),
                n,
            });
        }
        match self.0.iter().find(|&&i| i >= n) {
            Some(&item) => Err(Error::ItemOutOfRange { item, n }),
            None => Ok(()),
        }
    }

    /// Membership mask over `[0, n)`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &i in &self.0 {
            mask[i] = true;
        }
        mask
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for item in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{item}")?;
            first = false;
        }
        Ok(())
    }
}

impl TryFrom<Vec<ItemId>> for Sequence {
    type Error = Error;

    fn try_from(items: Vec<ItemId>) -> Result<Self> {
        Sequence::new(items)
    }
}

impl AsRef<[ItemId]> for Sequence {
    fn as_ref(&self) -> &[ItemId] {
        &self.0
    }
}
