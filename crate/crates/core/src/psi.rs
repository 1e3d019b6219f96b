//! Enumeration of Ψ(m): n×n nonnegative integer matrices with all row and
//! column sums equal to m.

use num_bigint::BigInt;

use crate::matrix::{ExponentMatrix, PsiElement};

/// Lazily yields every element of Ψ(m) exactly once, in ascending row-major
/// lexicographic order of the flattened entries.
///
/// Cells are filled row-major. Cells in the top-left (n-1)×(n-1) block are
/// free; the last entry of each row and the whole last row are forced by the
/// margins, which prunes the search as soon as a prefix is infeasible.
pub fn enumerate_psi(n: usize, m: u32) -> PsiIter {
    assert!(n >= 1, "order must be at least 1");
    PsiIter {
        n,
        m,
        entries: vec![0; n * n],
        row_rem: vec![m; n],
        col_rem: vec![m; n],
        started: false,
        done: false,
    }
}

pub struct PsiIter {
    n: usize,
    m: u32,
    entries: Vec<u32>,
    row_rem: Vec<u32>,
    col_rem: Vec<u32>,
    started: bool,
    done: bool,
}

impl PsiIter {
    #[inline]
    fn place(&mut self, c: usize, v: u32) {
        self.entries[c] = v;
        self.row_rem[c / self.n] -= v;
        self.col_rem[c % self.n] -= v;
    }

    #[inline]
    fn unplace(&mut self, c: usize) -> u32 {
        let v = self.entries[c];
        self.row_rem[c / self.n] += v;
        self.col_rem[c % self.n] += v;
        v
    }

    /// Continues the search: forward fills cells from `c`, backward resumes
    /// after the previous solution. Returns false when the space is exhausted.
    fn advance(&mut self, mut c: usize, mut forward: bool) -> bool {
        let n = self.n;
        let nn = n * n;
        loop {
            if forward {
                if c == nn {
                    return true;
                }
                let i = c / n;
                let j = c % n;
                if i + 1 < n && j + 1 < n {
                    // free cell; 0 is always feasible
                    self.place(c, 0);
                    c += 1;
                } else if i + 1 < n {
                    // last column: forced by the row margin
                    let v = self.row_rem[i];
                    if v <= self.col_rem[j] {
                        self.place(c, v);
                        c += 1;
                    } else {
                        forward = false;
                    }
                } else {
                    // last row: forced by the column margin
                    let v = self.col_rem[j];
                    if v <= self.row_rem[i] {
                        self.place(c, v);
                        c += 1;
                    } else {
                        forward = false;
                    }
                }
            } else {
                if c == 0 {
                    return false;
                }
                c -= 1;
                let i = c / n;
                let j = c % n;
                let v = self.unplace(c);
                if i + 1 < n && j + 1 < n && v < self.row_rem[i] && v < self.col_rem[j] {
                    self.place(c, v + 1);
                    c += 1;
                    forward = true;
                }
            }
        }
    }
}

impl Iterator for PsiIter {
    type Item = PsiElement;

    fn next(&mut self) -> Option<PsiElement> {
        if self.done {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.advance(0, true)
        } else {
            self.advance(self.n * self.n, false)
        };
        if !found {
            self.done = true;
            return None;
        }
        let matrix = ExponentMatrix::from_vec_unchecked(self.n, self.entries.clone());
        Some(PsiElement::new_unchecked(matrix, self.m))
    }
}

/// Number of elements of Ψ(m) by exhaustive enumeration.
pub fn psi_count(n: usize, m: u32) -> u64 {
    enumerate_psi(n, m).count() as u64
}

/// Upper bound on |Ψ(m)|: the first n-1 rows range over all compositions of
/// m into n parts and the last row is forced.
pub fn psi_size_estimate(n: usize, m: u32) -> BigInt {
    if n <= 1 {
        return BigInt::from(1);
    }
    let per_row = crate::comb::binomial(m as u64 + n as u64 - 1, n as u64 - 1);
    let mut acc = BigInt::from(1);
    for _ in 0..n - 1 {
        acc *= &per_row;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: filter all entry grids with values 0..=m.
    fn brute_force_psi(n: usize, m: u32) -> Vec<Vec<u32>> {
        let nn = n * n;
        let mut out = Vec::new();
        let mut grid = vec![0u32; nn];
        loop {
            let ok = (0..n).all(|i| (0..n).map(|j| grid[i * n + j]).sum::<u32>() == m)
                && (0..n).all(|j| (0..n).map(|i| grid[i * n + j]).sum::<u32>() == m);
            if ok {
                out.push(grid.clone());
            }
            // odometer increment, most significant digit first so the
            // output comes out in ascending row-major order
            let mut pos = nn;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if grid[pos] < m {
                    grid[pos] += 1;
                    for cell in grid.iter_mut().skip(pos + 1) {
                        *cell = 0;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn margin_one_gives_permutation_matrices() {
        let elems: Vec<_> = enumerate_psi(3, 1).collect();
        assert_eq!(elems.len(), 6);
        for e in &elems {
            assert!(e.matrix().entries().iter().all(|&v| v <= 1));
        }
    }

    #[test]
    fn order_two_is_parametrized_by_top_left() {
        let elems: Vec<String> = enumerate_psi(2, 3).map(|e| e.to_string()).collect();
        assert_eq!(elems, vec!["0,3;3,0", "1,2;2,1", "2,1;1,2", "3,0;0,3"]);
    }

    #[test]
    fn matches_brute_force_oracle() {
        for (n, m) in [(1, 4), (2, 0), (2, 5), (3, 1), (3, 2), (3, 3), (4, 1)] {
            let expected = brute_force_psi(n, m);
            let got: Vec<Vec<u32>> = enumerate_psi(n, m)
                .map(|e| e.matrix().entries().to_vec())
                .collect();
            assert_eq!(got, expected, "n={} m={}", n, m);
        }
    }

    #[test]
    fn order_three_margin_two_has_21_elements() {
        assert_eq!(psi_count(3, 2), 21);
    }

    #[test]
    fn margin_zero_yields_zero_matrix() {
        let elems: Vec<_> = enumerate_psi(3, 0).collect();
        assert_eq!(elems.len(), 1);
        assert_eq!(elems[0].matrix(), &ExponentMatrix::zero(3));
    }

    #[test]
    fn margin_one_count_is_factorial() {
        for n in 1..=5usize {
            let expected: u64 = (1..=n as u64).product();
            assert_eq!(psi_count(n, 1), expected);
        }
    }

    #[test]
    fn order_two_count_is_margin_plus_one() {
        for m in 0..=8 {
            assert_eq!(psi_count(2, m), m as u64 + 1);
        }
    }

    #[test]
    fn yields_certified_margins_in_lex_order() {
        let elems: Vec<_> = enumerate_psi(3, 3).collect();
        for e in &elems {
            assert_eq!(e.margin(), 3);
            assert_eq!(e.matrix().row_sums(), vec![3, 3, 3]);
            assert_eq!(e.matrix().col_sums(), vec![3, 3, 3]);
        }
        let mut sorted = elems.clone();
        sorted.sort();
        assert_eq!(elems, sorted);
        // deterministic: a second run yields the same sequence
        let again: Vec<_> = enumerate_psi(3, 3).collect();
        assert_eq!(elems, again);
    }

    #[test]
    fn estimate_bounds_actual_count() {
        for (n, m) in [(2, 4), (3, 2), (3, 4), (4, 2)] {
            let actual = BigInt::from(psi_count(n, m));
            assert!(psi_size_estimate(n, m) >= actual);
        }
    }
}
