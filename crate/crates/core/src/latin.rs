//! Latin square enumeration with parity, and the bridge to C_{J_n}.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::coeff::coefficient;
use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::matrix::{ExponentMatrix, PsiElement};

/// Parity convention used throughout: the product of the signs of the n row
/// permutations and the n column permutations.
pub const PARITY_CONVENTION: &str = "row*column signs";

/// An n×n array over the symbols {1..n} with every symbol exactly once per
/// row and column. Symbols are stored zero-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    /// Builds a square from rows over the symbols {1..n}.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > 31 {
            return Err(Error::InvalidLatinSquare(format!(
                "order {} out of supported range 1..=31",
                n
            )));
        }
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidLatinSquare(format!(
                    "row of length {} in a square of order {}",
                    row.len(),
                    n
                )));
            }
            for &v in row {
                if v < 1 || v as usize > n {
                    return Err(Error::InvalidLatinSquare(format!(
                        "symbol {} outside 1..={}",
                        v, n
                    )));
                }
                cells.push(v - 1);
            }
        }
        let square = LatinSquare { n, cells };
        for i in 0..n {
            let mut row_seen = 0u32;
            let mut col_seen = 0u32;
            for j in 0..n {
                row_seen |= 1 << square.cells[i * n + j];
                col_seen |= 1 << square.cells[j * n + i];
            }
            let full = (1u32 << n) - 1;
            if row_seen != full {
                return Err(Error::InvalidLatinSquare(format!(
                    "row {} repeats a symbol",
                    i
                )));
            }
            if col_seen != full {
                return Err(Error::InvalidLatinSquare(format!(
                    "column {} repeats a symbol",
                    i
                )));
            }
        }
        Ok(square)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The symbol at (i, j), in {1..n}.
    pub fn symbol(&self, i: usize, j: usize) -> u8 {
        self.cells[i * self.n + j] + 1
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.symbol(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[j * n + i] = self.cells[i * n + j];
            }
        }
        LatinSquare { n, cells }
    }

    /// +1 or -1: the product of the 2n row and column permutation signs.
    pub fn parity(&self) -> i32 {
        let n = self.n;
        let mut inversions = 0usize;
        for i in 0..n {
            for j in 0..n {
                for jj in j + 1..n {
                    if self.cells[i * n + j] > self.cells[i * n + jj] {
                        inversions += 1;
                    }
                    if self.cells[j * n + i] > self.cells[jj * n + i] {
                        inversions += 1;
                    }
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// The pair (els(n), ols(n)) of even and odd Latin square counts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LatinParityCount {
    pub n: usize,
    pub els: u64,
    pub ols: u64,
}

impl LatinParityCount {
    pub fn total(&self) -> u64 {
        self.els + self.ols
    }

    pub fn difference(&self) -> i128 {
        self.els as i128 - self.ols as i128
    }
}

/// Exhaustively enumerates all Latin squares of order n, counting parities.
///
/// Guarded by `max_latin_order` (default 5; order 6 takes 812 million
/// squares and must be enabled explicitly). Enumeration partitions by the
/// leading rows and merges tallies by addition, so the result is independent
/// of the thread count.
pub fn count_parities(n: usize, guards: &Guards) -> Result<LatinParityCount> {
    if n == 0 || n > 31 {
        return Err(Error::InvalidLatinSquare(format!(
            "order {} out of supported range 1..=31",
            n
        )));
    }
    guards.check_latin(n)?;
    let prefix_rows = if n >= 5 { 2 } else { 1 };
    let prefix_cells = (prefix_rows * n).min(n * n);
    let mut tasks = Vec::new();
    Board::new(n).collect_prefixes(prefix_cells, &mut tasks);
    let (els, ols) = tasks
        .into_par_iter()
        .map(|mut board| {
            let mut tally = (0u64, 0u64);
            board.complete_from(prefix_cells, &mut tally);
            tally
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    Ok(LatinParityCount { n, els, ols })
}

/// Cell-by-cell backtracking state with a running inversion tally, so the
/// parity of a completed square is available in O(1).
#[derive(Clone)]
struct Board {
    n: usize,
    cells: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    inversions: u32,
}

impl Board {
    fn new(n: usize) -> Self {
        Board {
            n,
            cells: vec![0; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            inversions: 0,
        }
    }

    fn inversion_delta(&self, i: usize, j: usize, v: u8) -> u32 {
        let n = self.n;
        let mut delta = 0;
        for jj in 0..j {
            if self.cells[i * n + jj] > v {
                delta += 1;
            }
        }
        for ii in 0..i {
            if self.cells[ii * n + j] > v {
                delta += 1;
            }
        }
        delta
    }

    fn place(&mut self, c: usize, v: u8) {
        let (i, j) = (c / self.n, c % self.n);
        self.inversions += self.inversion_delta(i, j, v);
        self.cells[c] = v;
        self.row_used[i] |= 1 << v;
        self.col_used[j] |= 1 << v;
    }

    fn unplace(&mut self, c: usize) {
        let (i, j) = (c / self.n, c % self.n);
        let v = self.cells[c];
        self.row_used[i] &= !(1 << v);
        self.col_used[j] &= !(1 << v);
        self.inversions -= self.inversion_delta(i, j, v);
    }

    /// Clones one board per valid filling of the first `upto` cells.
    fn collect_prefixes(&mut self, upto: usize, out: &mut Vec<Board>) {
        self.prefixes_rec(0, upto, out);
    }

    fn prefixes_rec(&mut self, c: usize, upto: usize, out: &mut Vec<Board>) {
        if c == upto {
            out.push(self.clone());
            return;
        }
        let (i, j) = (c / self.n, c % self.n);
        for v in 0..self.n as u8 {
            if self.row_used[i] & (1 << v) == 0 && self.col_used[j] & (1 << v) == 0 {
                self.place(c, v);
                self.prefixes_rec(c + 1, upto, out);
                self.unplace(c);
            }
        }
    }

    fn complete_from(&mut self, c: usize, tally: &mut (u64, u64)) {
        if c == self.n * self.n {
            if self.inversions.is_multiple_of(2) {
                tally.0 += 1;
            } else {
                tally.1 += 1;
            }
            return;
        }
        let (i, j) = (c / self.n, c % self.n);
        let used = self.row_used[i] | self.col_used[j];
        for v in 0..self.n as u8 {
            if used & (1 << v) == 0 {
                self.place(c, v);
                self.complete_from(c + 1, tally);
                self.unplace(c);
            }
        }
    }
}

/// Both sides of the identity C_{J_n} = (-1)^{n(n-1)/2}(els(n) - ols(n)).
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub counts: LatinParityCount,
    /// Coefficient of the all-ones matrix in (det X)^n.
    pub c_jn: BigInt,
    /// (-1)^{n(n-1)/2} (els - ols).
    pub expected: BigInt,
}

impl RelationReport {
    pub fn agree(&self) -> bool {
        self.c_jn == self.expected
    }
}

/// Computes C_{J_n} through the coefficient engine and els(n) - ols(n) by
/// enumeration, and reports whether they match under the fixed parity
/// convention.
pub fn relation_check(n: usize, guards: &Guards) -> Result<RelationReport> {
    let counts = count_parities(n, guards)?;
    let jn = PsiElement::new(ExponentMatrix::ones(n), n as u32).expect("J_n lies in Ψ(n)");
    let c_jn = coefficient(&jn);
    let mut expected = BigInt::from(counts.difference());
    if (n * (n - 1) / 2) % 2 == 1 {
        expected = -expected;
    }
    Ok(RelationReport {
        counts,
        c_jn,
        expected,
    })
}

/// Parity-count report for even n, flagging the n = p-1 case where the
/// nonzero difference is guaranteed by Glynn's theorem.
#[derive(Clone, Debug)]
pub struct AlonTarsiReport {
    pub counts: LatinParityCount,
    /// Set to n+1 when n+1 is prime.
    pub prime_case: Option<u64>,
}

impl AlonTarsiReport {
    pub fn nonzero(&self) -> bool {
        self.counts.difference() != 0
    }
}

pub fn alon_tarsi_check(n: usize, guards: &Guards) -> Result<AlonTarsiReport> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddOrder { n });
    }
    let counts = count_parities(n, guards)?;
    let succ = n as u64 + 1;
    Ok(AlonTarsiReport {
        counts,
        prime_case: crate::witness::is_prime(succ).then_some(succ),
    })
}
