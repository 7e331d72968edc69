//! Indexing of words of bounded length over a finite alphabet.

/// All words of length `0..=max_len` over `letters` letters, ordered by
/// length and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Words {
    letters: usize,
    max_len: usize,
    offsets: Vec<usize>,
}

impl Words {
    pub fn new(letters: usize, max_len: usize) -> Self {
        let mut offsets = vec![0usize];
        let mut count = 1usize;
        for _ in 0..=max_len {
            offsets.push(offsets.last().unwrap() + count);
            count *= letters;
        }
        Words {
            letters,
            max_len,
            offsets,
        }
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of words.
    pub fn count(&self) -> usize {
        self.offsets[self.max_len + 1]
    }

    /// Number of words of length exactly `n`.
    pub fn count_of_length(&self, n: usize) -> usize {
        if n > self.max_len {
            0
        } else {
            self.offsets[n + 1] - self.offsets[n]
        }
    }

    /// Index of a word, `None` if it is too long.
    pub fn index(&self, word: &[usize]) -> Option<usize> {
        if word.len() > self.max_len {
            return None;
        }
        let mut r = 0;
        for &l in word {
            debug_assert!(l < self.letters);
            r = r * self.letters + l;
        }
        Some(self.offsets[word.len()] + r)
    }

    pub fn length(&self, idx: usize) -> usize {
        // first length whose block ends after idx; empty blocks are skipped
        (0..=self.max_len)
            .find(|&n| idx < self.offsets[n + 1])
            .expect("word index in range")
    }

    pub fn word(&self, idx: usize) -> Vec<usize> {
        let n = self.length(idx);
        let mut r = idx - self.offsets[n];
        let mut w = vec![0; n];
        for k in (0..n).rev() {
            w[k] = r % self.letters;
            r /= self.letters;
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let w = Words::new(3, 3);
        assert_eq!(w.count(), 1 + 3 + 9 + 27);
        for i in 0..w.count() {
            assert_eq!(w.index(&w.word(i)), Some(i));
        }
        assert_eq!(w.index(&[0, 0, 0, 0]), None);
        assert_eq!(w.count_of_length(2), 9);
    }

    #[test]
    fn degenerate_alphabets() {
        let w = Words::new(0, 4);
        assert_eq!(w.count(), 1);
        assert_eq!(w.word(0), Vec::<usize>::new());
        let w = Words::new(1, 4);
        assert_eq!(w.count(), 5);
        assert_eq!(w.word(3), vec![0, 0, 0]);
        assert_eq!(w.length(4), 4);
    }
}
