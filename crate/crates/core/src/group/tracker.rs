use alloc::vec::Vec;

use super::{GroupModel, Letter, Word};

/// Maintains a reduced word under right multiplication by generators,
/// tracking its length in O(1) per step. Sweeping a tracker along a path
/// yields every distance from a fixed vertex in linear time.
pub(crate) struct Tracker<'a> {
    model: &'a GroupModel,
    stack: Vec<Letter>,
    len: u64,
}

impl<'a> Tracker<'a> {
    pub fn new(model: &'a GroupModel, start: &Word) -> Self {
        Tracker { model, stack: start.letters().to_vec(), len: model.length(start) }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn step(&mut self, s: Letter) {
        let model = self.model;
        if let Some(top) = self.stack.last() {
            if top.factor == s.factor {
                self.len -= model.syllable_weight(*top);
            }
        }
        model.push_letter(&mut self.stack, s);
        if let Some(top) = self.stack.last() {
            if top.factor == s.factor {
                self.len += model.syllable_weight(*top);
            }
        }
    }
}
