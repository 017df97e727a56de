//! Lexicographic enumeration of fixed-length symbol words.
//!
//! Order convention everywhere: the leftmost cell is the most significant
//! digit, so enumeration order, word codes and pattern codes all agree.

use crate::alphabet::Symbol;
use crate::error::{Error, Result};

/// `s^len` as a checked 128-bit count.
pub fn word_count(s: usize, len: u64) -> u128 {
    let mut n: u128 = 1;
    for _ in 0..len {
        n = n.saturating_mul(s as u128);
    }
    n
}

/// Errors out when `s^len` exceeds the enumeration cap.
pub fn check_cap(s: usize, len: u64, cap: u64) -> Result<()> {
    let required = word_count(s, len);
    if required > cap as u128 {
        Err(Error::CapExceeded {
            required,
            cap,
        })
    } else {
        Ok(())
    }
}

/// Code of a word, leftmost symbol most significant.
pub fn word_code(word: &[Symbol], s: usize) -> usize {
    word.iter().fold(0usize, |acc, &sym| acc * s + sym as usize)
}

/// Inverse of `word_code` for words of length `len`.
pub fn decode_word(code: usize, s: usize, len: usize) -> Vec<Symbol> {
    let mut word = vec![0 as Symbol; len];
    let mut rest = code;
    for i in (0..len).rev() {
        word[i] = (rest % s) as Symbol;
        rest /= s;
    }
    word
}

/// Iterates all words of a fixed length in lexicographic order.
pub struct WordIter {
    word: Vec<Symbol>,
    s: usize,
    started: bool,
    done: bool,
}

impl WordIter {
    pub fn new(s: usize, len: usize) -> Self {
        WordIter {
            word: vec![0; len],
            s,
            started: false,
            done: s == 0,
        }
    }

    /// Advances to the next word, returning it by reference.
    pub fn next_word(&mut self) -> Option<&[Symbol]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.word);
        }
        // odometer: rightmost digit runs fastest
        for i in (0..self.word.len()).rev() {
            if (self.word[i] as usize) + 1 < self.s {
                self.word[i] += 1;
                for digit in &mut self.word[i + 1..] {
                    *digit = 0;
                }
                return Some(&self.word);
            }
        }
        self.done = true;
        None
    }
}
