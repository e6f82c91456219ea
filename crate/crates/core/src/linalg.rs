//! Exact matrix rank over prime fields.
//!
//! GF(2) uses rows packed into 64-bit words. Odd characteristics use a dense
//! row-reduction with `u64` arithmetic.

use crate::error::{Error, Result};

/// Largest supported characteristic; products of two residues fit in a `u64`.
pub const MAX_CHAR: u32 = (1 << 31) - 1;

/// A prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Field(u32);

impl Field {
    pub const GF2: Field = Field(2);
    pub const GF3: Field = Field(3);

    pub fn new(p: u32) -> Result<Field> {
        if p > MAX_CHAR || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(p))
    }

    pub fn characteristic(self) -> u32 {
        self.0
    }

    /// `-1` as a residue.
    pub fn minus_one(self) -> u32 {
        self.0 - 1
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::GF2
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major GF(2) matrix, each row packed into `words` 64-bit words.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let words = cols.div_ceil(64);
        BitMatrix { cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.data.len().checked_div(self.words).unwrap_or(0)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] |= 1 << (c % 64);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    /// Rank by Gaussian elimination; consumes the matrix.
    pub fn rank(mut self) -> usize {
        let rows = self.rows();
        let w = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == rows {
                break;
            }
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let Some(pivot) = (rank..rows).find(|&r| self.data[r * w + word] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..w {
                    self.data.swap(pivot * w + k, rank * w + k);
                }
            }
            let (head, tail) = self.data.split_at_mut((rank + 1) * w);
            let prow = &head[rank * w..];
            for row in tail.chunks_exact_mut(w) {
                if row[word] & bit != 0 {
                    // columns before `word` are already zero in the pivot row
                    for k in word..w {
                        row[k] ^= prow[k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Dense matrix over GF(p) with entries reduced into `0..p`.
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    field: Field,
    cols: usize,
    data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> DenseMatrix {
        DenseMatrix { field, cols, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.data.len().checked_div(self.cols).unwrap_or(0)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        let p = self.field.0 as i64;
        self.data[r * self.cols + c] = v.rem_euclid(p) as u32;
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn rank(mut self) -> usize {
        let p = self.field.0 as u64;
        let rows = self.rows();
        let n = self.cols;
        let mut rank = 0;
        for c in 0..n {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| self.data[r * n + c] != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..n {
                    self.data.swap(pivot * n + k, rank * n + k);
                }
            }
            let inv = inverse(self.data[rank * n + c] as u64, p);
            let (head, tail) = self.data.split_at_mut((rank + 1) * n);
            let prow = &head[rank * n..];
            for row in tail.chunks_exact_mut(n) {
                if row[c] == 0 {
                    continue;
                }
                let factor = row[c] as u64 * inv % p;
                for k in c..n {
                    let sub = factor * prow[k] as u64 % p;
                    row[k] = ((row[k] as u64 + p - sub) % p) as u32;
                }
            }
            rank += 1;
        }
        rank
    }
}

fn inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::new(2).is_ok());
        assert!(Field::new(65521).is_ok());
        assert_eq!(Field::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Field::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Field::new(0), Err(Error::NotPrime(0)));
    }

    #[test]
    fn gf2_rank_examples() {
        let mut m = BitMatrix::zeros(3, 3);
        // rows 110, 011, 101 are dependent over GF(2)
        for (r, c) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)] {
            m.set(r, c);
        }
        assert_eq!(m.rank(), 2);
        let mut id = BitMatrix::zeros(70, 70);
        for i in 0..70 {
            id.set(i, i);
        }
        assert_eq!(id.rank(), 70);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn gf3_rank_differs_from_gf2() {
        // same pattern; over GF(3) the rows are independent
        let mut m = DenseMatrix::zeros(Field::GF3, 3, 3);
        for (r, c) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)] {
            m.set(r, c, 1);
        }
        assert_eq!(m.rank(), 3);
        let mut m2 = DenseMatrix::zeros(Field::GF2, 3, 3);
        for (r, c) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)] {
            m2.set(r, c, 1);
        }
        assert_eq!(m2.rank(), 2);
    }

    #[test]
    fn dense_matches_bits_on_random() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (r, c) = (rng.random_range(1..20), rng.random_range(1..90));
            let mut b = BitMatrix::zeros(r, c);
            let mut d = DenseMatrix::zeros(Field::GF2, r, c);
            for i in 0..r {
                for j in 0..c {
                    if rng.random_bool(0.3) {
                        b.set(i, j);
                        d.set(i, j, 1);
                    }
                }
            }
            assert_eq!(b.rank(), d.rank());
        }
    }

    #[test]
    fn negative_entries_reduce() {
        let mut m = DenseMatrix::zeros(Field::GF3, 1, 2);
        m.set(0, 0, -1);
        assert_eq!(m.get(0, 0), 2);
        assert_eq!(Field::GF3.minus_one(), 2);
    }
}
