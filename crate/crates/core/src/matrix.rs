//! Exponent matrices and certified equal-margin (Ψ) elements.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// An n×n matrix of nonnegative integers, the exponent record of a monomial
/// x^L = ∏ x_ij^{l_ij}.
///
/// Entries are stored row-major. Ordering is lexicographic on the flattened
/// entry sequence (within one order n), which is the enumeration and report
/// order used throughout.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl ExponentMatrix {
    /// Builds a matrix from row-major entries; `entries.len()` must be n².
    pub fn from_entries(n: usize, entries: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotSquare("order must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::NotSquare(format!(
                "{} entries for order {}",
                entries.len(),
                n
            )));
        }
        Ok(ExponentMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
        }
        Self::from_entries(n, rows.concat())
    }

    pub(crate) fn from_vec_unchecked(n: usize, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        ExponentMatrix { n, entries }
    }

    /// The n×n zero matrix.
    pub fn zero(n: usize) -> Self {
        ExponentMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    /// m·I, the identity scaled by m.
    pub fn scaled_identity(n: usize, m: u32) -> Self {
        let mut out = Self::zero(n);
        for i in 0..n {
            out.entries[i * n + i] = m;
        }
        out
    }

    /// The all-ones matrix J_n.
    pub fn ones(n: usize) -> Self {
        ExponentMatrix {
            n,
            entries: vec![1; n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.n + j] = v;
    }

    /// Row-major flattened entries.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sum(&self, i: usize) -> u32 {
        self.row(i).iter().sum()
    }

    pub fn col_sum(&self, j: usize) -> u32 {
        (0..self.n).map(|i| self.get(i, j)).sum()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        (0..self.n).map(|i| self.row_sum(i)).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.n).map(|j| self.col_sum(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        ExponentMatrix { n, entries }
    }

    /// The matrix with row i replaced by row σ(i) of `self`.
    pub fn permute_rows(&self, sigma: &Permutation) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            let src = sigma.image(i);
            entries[i * n..(i + 1) * n].copy_from_slice(self.row(src));
        }
        ExponentMatrix { n, entries }
    }
}

impl fmt::Display for ExponentMatrix {
    /// Text form: rows separated by `;`, entries by `,`, exact decimal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExponentMatrix({})", self)
    }
}

impl FromStr for ExponentMatrix {
    type Err = Error;

    /// Parses either the `a,b;c,d` text form or a JSON array of arrays.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        if t.starts_with('[') {
            let rows: Vec<Vec<u32>> =
                serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            return Self::from_rows(&rows);
        }
        let mut rows = Vec::new();
        for row in t.split(';') {
            let parsed: Result<Vec<u32>> = row
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad entry {:?}", e.trim())))
                })
                .collect();
            rows.push(parsed?);
        }
        Self::from_rows(&rows)
    }
}

/// An [`ExponentMatrix`] certified to lie in Ψ(m): every row and column
/// sums to the common margin m.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PsiElement {
    matrix: ExponentMatrix,
    margin: u32,
}

impl PsiElement {
    /// Certifies membership in Ψ(margin), failing on any margin mismatch.
    pub fn new(matrix: ExponentMatrix, margin: u32) -> Result<Self> {
        for i in 0..matrix.order() {
            let s = matrix.row_sum(i);
            if s != margin {
                return Err(Error::RowMargin {
                    index: i,
                    found: s,
                    expected: margin,
                });
            }
        }
        for j in 0..matrix.order() {
            let s = matrix.col_sum(j);
            if s != margin {
                return Err(Error::ColMargin {
                    index: j,
                    found: s,
                    expected: margin,
                });
            }
        }
        Ok(PsiElement { matrix, margin })
    }

    /// Certifies with the margin inferred from the first row sum.
    pub fn infer(matrix: ExponentMatrix) -> Result<Self> {
        let margin = matrix.row_sum(0);
        Self::new(matrix, margin)
    }

    pub(crate) fn new_unchecked(matrix: ExponentMatrix, margin: u32) -> Self {
        debug_assert!(Self::new(matrix.clone(), margin).is_ok());
        PsiElement { matrix, margin }
    }

    pub fn matrix(&self) -> &ExponentMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExponentMatrix {
        self.matrix
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }
}

impl fmt::Display for PsiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let s = "3,1,1;1,2,2;1,2,2";
        let m: ExponentMatrix = s.parse().unwrap();
        assert_eq!(m.to_string(), s);
        assert_eq!(m.get(0, 0), 3);
        assert_eq!(m.get(2, 1), 2);
    }

    #[test]
    fn json_form() {
        let m: ExponentMatrix = "[[3,1,1],[1,2,2],[1,2,2]]".parse().unwrap();
        assert_eq!(m.to_string(), "3,1,1;1,2,2;1,2,2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<ExponentMatrix>().is_err());
        assert!("1,2;3".parse::<ExponentMatrix>().is_err());
        assert!("1,x;3,4".parse::<ExponentMatrix>().is_err());
        assert!("1,-2;3,4".parse::<ExponentMatrix>().is_err());
        assert!("[[1,2],[3]]".parse::<ExponentMatrix>().is_err());
    }

    #[test]
    fn psi_certification() {
        let m: ExponentMatrix = "3,1,1;1,2,2;1,2,2".parse().unwrap();
        let p = PsiElement::new(m.clone(), 5).unwrap();
        assert_eq!(p.margin(), 5);
        assert!(PsiElement::new(m.clone(), 4).is_err());
        let bad: ExponentMatrix = "1,0;0,2".parse().unwrap();
        assert!(PsiElement::infer(bad).is_err());
    }

    #[test]
    fn transpose_and_row_permute() {
        let m: ExponentMatrix = "1,2;3,4".parse().unwrap();
        assert_eq!(m.transpose().to_string(), "1,3;2,4");
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(m.permute_rows(&swap).to_string(), "3,4;1,2");
    }

    #[test]
    fn margin_sums() {
        let m: ExponentMatrix = "3,1,1;1,2,2;1,2,2".parse().unwrap();
        assert_eq!(m.row_sums(), vec![5, 5, 5]);
        assert_eq!(m.col_sums(), vec![5, 5, 5]);
    }
}
