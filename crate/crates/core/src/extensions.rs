//! Lexicographic enumeration of fillings `1..n` of a shape, one entry at a
//! time. A [`Placement`] describes which cell ("slot") may receive the next
//! entry; every partial filling it allows must be completable.

pub(crate) trait Placement {
    /// Number of entries in a complete filling.
    fn size(&self) -> usize;
    /// Slots are `0..slots()`.
    fn slots(&self) -> usize;
    fn can_place(&self, slot: usize) -> bool;
    fn place(&mut self, slot: usize);
    fn unplace(&mut self, slot: usize);
}

/// Yields the slot sequence of every complete filling, in lexicographic order.
pub(crate) struct Extensions<P> {
    state: P,
    word: Vec<usize>,
    started: bool,
    done: bool,
}

impl<P: Placement> Extensions<P> {
    pub(crate) fn new(state: P) -> Self {
        Extensions {
            state,
            word: Vec::new(),
            started: false,
            done: false,
        }
    }

    fn fill(&mut self) -> bool {
        while self.word.len() < self.state.size() {
            match (0..self.state.slots()).find(|&s| self.state.can_place(s)) {
                Some(s) => {
                    self.state.place(s);
                    self.word.push(s);
                }
                None => return false,
            }
        }
        true
    }
}

impl<P: Placement> Iterator for Extensions<P> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if !self.fill() {
                self.done = true;
                return None;
            }
            return Some(self.word.clone());
        }
        while let Some(last) = self.word.pop() {
            self.state.unplace(last);
            if let Some(s) = (last + 1..self.state.slots()).find(|&s| self.state.can_place(s)) {
                self.state.place(s);
                self.word.push(s);
                if self.fill() {
                    return Some(self.word.clone());
                }
                self.done = true;
                return None;
            }
        }
        self.done = true;
        None
    }
}
