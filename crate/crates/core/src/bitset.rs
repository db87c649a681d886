use crate::model::ItemId;

/// Fixed-width bit row over dense item ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn with_capacity(items: usize) -> Self {
        Bits { words: vec![0; items.div_ceil(64)] }
    }

    pub(crate) fn from_ids<'a>(items: usize, ids: impl IntoIterator<Item = &'a ItemId>) -> Self {
        let mut bits = Self::with_capacity(items);
        for id in ids {
            bits.set(id.index());
        }
        bits
    }

    pub(crate) fn set(&mut self, index: usize) {
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub(crate) fn get(&self, index: usize) -> bool {
        self.words.get(index / 64).is_some_and(|w| w & (1 << (index % 64)) != 0)
    }

    /// `mask ⊆ self`.
    #[inline]
    pub(crate) fn contains_all(&self, mask: &Bits) -> bool {
        mask.words.iter().zip(&self.words).all(|(m, w)| w & m == *m)
    }
}
