//! The hike monoid: words over the simple cycles of a graph, where two
//! adjacent letters commute exactly when their cycles are vertex-disjoint.
//! Each hike is stored as the lexicographically least word of its class.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::enumeration::{simple_cycles, SimpleCyclePrime};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::zeta_coefficients;

/// Largest number of hikes [`enumerate_hikes`] materializes by default.
pub const DEFAULT_HIKE_BUDGET: u64 = 1_000_000;

/// The primes of a graph, indexed in `(length, vertex sequence)` order,
/// with their pairwise commutation relation.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    primes: Vec<SimpleCyclePrime>,
    commute: Vec<bool>,
}

impl PrimeTable {
    /// All primes with at most `max_len` arcs.
    pub fn new(g: &Graph, max_len: usize) -> Self {
        Self::from_primes(simple_cycles(g, max_len))
    }

    pub fn from_primes(primes: Vec<SimpleCyclePrime>) -> Self {
        let p = primes.len();
        let mut commute = vec![false; p * p];
        for a in 0..p {
            for b in 0..p {
                commute[a * p + b] = primes[a].is_disjoint(&primes[b]);
            }
        }
        Self { primes, commute }
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[SimpleCyclePrime] {
        &self.primes
    }

    pub fn prime(&self, letter: u32) -> &SimpleCyclePrime {
        &self.primes[letter as usize]
    }

    pub fn prime_len(&self, letter: u32) -> usize {
        self.primes[letter as usize].len()
    }

    /// Letter of the prime with the same cyclic vertex sequence.
    pub fn index_of(&self, gamma: &SimpleCyclePrime) -> Option<u32> {
        self.primes
            .iter()
            .position(|p| p.vertices() == gamma.vertices())
            .map(|i| i as u32)
    }

    pub fn commutes(&self, a: u32, b: u32) -> bool {
        self.commute[a as usize * self.primes.len() + b as usize]
    }

    /// Total length of a word.
    pub fn word_len(&self, word: &[u32]) -> usize {
        word.iter().map(|&a| self.prime_len(a)).sum()
    }

    /// Whether `word` followed by `a` is in normal form, given that `word`
    /// is. The new letter could only move left past the letters it commutes
    /// with; the word stays least unless one of those is larger than `a`.
    pub fn extends_canonically(&self, word: &[u32], a: u32) -> bool {
        for &b in word.iter().rev() {
            if !self.commutes(a, b) {
                return true;
            }
            if b > a {
                return false;
            }
        }
        true
    }

    pub fn is_normal(&self, word: &[u32]) -> bool {
        (0..word.len()).all(|i| self.extends_canonically(&word[..i], word[i]))
    }

    /// Lexicographically least word equivalent to `word`: repeatedly emit
    /// the smallest letter that can be moved to the front.
    pub fn normalize(&self, word: &[u32]) -> Hike {
        let mut rest = word.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                if best.is_some_and(|b| rest[b] <= rest[i]) {
                    continue;
                }
                if rest[..i].iter().all(|&b| self.commutes(rest[i], b)) {
                    best = Some(i);
                }
            }
            out.push(rest.remove(best.expect("the first letter is always movable")));
        }
        Hike {
            length: self.word_len(&out),
            word: out,
        }
    }

    /// Product of two hikes.
    pub fn concat(&self, left: &Hike, right: &Hike) -> Hike {
        let mut word = left.word.clone();
        word.extend_from_slice(&right.word);
        self.normalize(&word)
    }

    /// `0` unless the letters are pairwise vertex-disjoint, then
    /// `(-1)^(number of letters)`.
    pub fn mobius(&self, h: &Hike) -> i32 {
        let w = &h.word;
        for i in 0..w.len() {
            for j in (i + 1)..w.len() {
                if !self.commutes(w[i], w[j]) {
                    return 0;
                }
            }
        }
        if w.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Letters that can occupy the last position of some representative.
    pub fn right_prime_divisors(&self, h: &Hike) -> BTreeSet<u32> {
        let w = &h.word;
        (0..w.len())
            .filter(|&i| w[i + 1..].iter().all(|&b| self.commutes(w[i], b)))
            .map(|i| w[i])
            .collect()
    }

    /// A hike with exactly one right prime divisor.
    pub fn is_walk(&self, h: &Hike) -> bool {
        self.right_prime_divisors(h).len() == 1
    }

    /// Removes one occurrence of the right divisor `a`, if it is one.
    pub fn strip_right_divisor(&self, h: &Hike, a: u32) -> Option<Hike> {
        let w = &h.word;
        let i = (0..w.len())
            .rev()
            .find(|&i| w[i] == a && w[i + 1..].iter().all(|&b| self.commutes(a, b)))?;
        let mut word = w.clone();
        word.remove(i);
        Some(self.normalize(&word))
    }
}

/// A hike in normal form. The identity is the empty word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hike {
    length: usize,
    word: Vec<u32>,
}

impl Hike {
    pub fn identity() -> Self {
        Self { length: 0, word: Vec::new() }
    }

    /// Prime letters in normal-form order.
    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Total number of arcs.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of prime letters, with multiplicity.
    pub fn omega(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// All hikes of length at most `max_len`, grouped by length.
#[derive(Clone, Debug)]
pub struct HikeEnumeration {
    pub table: PrimeTable,
    pub by_length: Vec<Vec<Hike>>,
}

impl HikeEnumeration {
    pub fn max_len(&self) -> usize {
        self.by_length.len() - 1
    }

    /// `|H_l|` for `l = 0..=max_len`.
    pub fn counts(&self) -> Vec<u64> {
        self.by_length.iter().map(|h| h.len() as u64).collect()
    }

    pub fn hikes(&self, len: usize) -> &[Hike] {
        &self.by_length[len]
    }
}

/// Number of hikes of length at most `max_len`, read off the zeta function.
pub fn hike_count_estimate(g: &Graph, max_len: usize) -> Result<BigInt> {
    let zeta = zeta_coefficients(g, max_len);
    let coeffs = zeta.exact().ok_or(Error::Weighted)?;
    Ok(coeffs.iter().sum())
}

/// Every hike of length at most `max_len` on an unweighted graph, each
/// class exactly once, by depth-first extension of normal-form words.
pub fn enumerate_hikes(g: &Graph, max_len: usize) -> Result<HikeEnumeration> {
    enumerate_hikes_with_budget(g, max_len, DEFAULT_HIKE_BUDGET)
}

pub fn enumerate_hikes_with_budget(g: &Graph, max_len: usize, budget: u64) -> Result<HikeEnumeration> {
    if !g.is_unweighted() {
        return Err(Error::Weighted);
    }
    let estimate = hike_count_estimate(g, max_len)?;
    if estimate > BigInt::from(budget) {
        let count = estimate.to_u64().unwrap_or(u64::MAX);
        return Err(Error::Budget { count, budget });
    }
    let table = PrimeTable::new(g, max_len.min(g.n()));
    let mut by_length = vec![Vec::new(); max_len + 1];
    let mut word = Vec::new();
    extend(&table, max_len, &mut word, 0, &mut by_length);
    for level in &mut by_length {
        level.sort();
    }
    Ok(HikeEnumeration { table, by_length })
}

fn extend(table: &PrimeTable, max_len: usize, word: &mut Vec<u32>, len: usize, out: &mut [Vec<Hike>]) {
    out[len].push(Hike { length: len, word: word.clone() });
    for a in 0..table.len() as u32 {
        let next = len + table.prime_len(a);
        if next > max_len {
            // primes are sorted by length
            break;
        }
        if table.extends_canonically(word, a) {
            word.push(a);
            extend(table, max_len, word, next, out);
            word.pop();
        }
    }
}

/// Self-avoiding hikes (pairwise vertex-disjoint sets of primes) of length
/// at most `max_len`.
pub fn self_avoiding_hikes(table: &PrimeTable, max_len: usize) -> Vec<Hike> {
    fn go(table: &PrimeTable, max_len: usize, start: u32, word: &mut Vec<u32>, len: usize, out: &mut Vec<Hike>) {
        out.push(Hike { length: len, word: word.clone() });
        for a in start..table.len() as u32 {
            let next = len + table.prime_len(a);
            if next > max_len {
                break;
            }
            if word.iter().all(|&b| table.commutes(a, b)) {
                word.push(a);
                go(table, max_len, a + 1, word, next, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(table, max_len, 0, &mut Vec::new(), 0, &mut out);
    out
}
