//! Exact rank computations over GF(p).

use thiserror::Error;

pub const DEFAULT_PRIME: u64 = 32003;
pub const DEFAULT_SECOND_PRIME: u64 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{0} is not a prime below 2^31")]
pub struct NotPrime(pub u64);

/// Prime modulus. Kept below 2^31 so products fit in u64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldPrime(u64);

impl FieldPrime {
    pub fn new(p: u64) -> Result<Self, NotPrime> {
        if !(2..1 << 31).contains(&p) {
            return Err(NotPrime(p));
        }
        let mut d = 2;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(NotPrime(p));
            }
            d += 1;
        }
        Ok(FieldPrime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn reduce(self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }

    fn inv(self, a: u64) -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (a % self.0, self.0 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            e >>= 1;
        }
        acc
    }
}

impl Default for FieldPrime {
    fn default() -> Self {
        FieldPrime(DEFAULT_PRIME)
    }
}

/// Rank of an integer matrix (rows of equal length) reduced mod p.
pub fn rank_mod_p(rows: &[Vec<i64>], p: FieldPrime) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| p.reduce(x)).collect())
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let q = p.get();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = p.inv(m[rank][col]);
        for x in m[rank][col..].iter_mut() {
            *x = *x * inv % q;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + q - f * y % q) % q;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
