//! Permutations of {0..n-1} with cached sign.

use crate::error::{Error, Result};
use crate::matrix::ExponentMatrix;

/// A permutation σ of {0..n-1} stored as its image sequence, with the sign
/// (-1)^inversions cached at construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
    sign: i8,
}

impl Permutation {
    /// Builds σ from zero-based images; fails unless they form a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{:?}", images)));
            }
            seen[v] = true;
        }
        let sign = sign_of(&images);
        Ok(Permutation { images, sign })
    }

    /// Builds σ from one-based images (the usual written form).
    pub fn from_one_based(images: Vec<usize>) -> Result<Self> {
        let shifted: Vec<usize> = images
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation(format!("{:?}", images)))
            })
            .collect::<Result<_>>()?;
        Self::new(shifted)
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
            sign: 1,
        }
    }

    /// All of S_n in lexicographic order of the image sequence.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        collect_rec(n, &mut cur, &mut used, &mut out);
        out
    }

    pub fn order(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    /// +1 or -1.
    #[inline]
    pub fn sign(&self) -> i32 {
        self.sign as i32
    }

    /// σ∘τ, mapping i to σ(τ(i)).
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        let images: Vec<usize> = tau.images.iter().map(|&i| self.images[i]).collect();
        Permutation {
            sign: self.sign * tau.sign,
            images,
        }
    }

    /// The 0/1 permutation matrix P_σ with a 1 at (i, σ(i)).
    pub fn matrix(&self) -> ExponentMatrix {
        let n = self.order();
        let mut m = ExponentMatrix::zero(n);
        for i in 0..n {
            m.set(i, self.images[i], 1);
        }
        m
    }
}

fn sign_of(images: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn collect_rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
    if cur.len() == n {
        let images = cur.clone();
        let sign = sign_of(&images);
        out.push(Permutation { images, sign });
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            cur.push(v);
            collect_rec(n, cur, used, out);
            cur.pop();
            used[v] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::from_one_based(vec![0, 1]).is_err());
    }

    #[test]
    fn identity_sign_is_plus_one() {
        assert_eq!(Permutation::identity(4).sign(), 1);
    }

    #[test]
    fn s3_lex_order_and_signs() {
        let all = Permutation::all(3);
        let images: Vec<Vec<usize>> = all.iter().map(|p| p.one_based()).collect();
        assert_eq!(
            images,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1],
            ]
        );
        let signs: Vec<i32> = all.iter().map(|p| p.sign()).collect();
        assert_eq!(signs, vec![1, -1, -1, 1, 1, -1]);
    }

    #[test]
    fn sn_sizes() {
        for n in 1..=6 {
            let count = Permutation::all(n).len() as u64;
            let expected: u64 = (1..=n as u64).product();
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn permutation_matrix() {
        let p = Permutation::from_one_based(vec![2, 3, 1]).unwrap();
        assert_eq!(p.matrix().to_string(), "0,1,0;0,0,1;1,0,0");
    }

    #[test]
    fn sign_multiplicative_under_composition() {
        let all = Permutation::all(4);
        for a in &all {
            for b in all.iter().step_by(3) {
                let c = a.compose(b);
                assert_eq!(c.sign(), a.sign() * b.sign());
                // recompute from scratch to confirm the cached sign
                let fresh = Permutation::new(c.images().to_vec()).unwrap();
                assert_eq!(fresh.sign(), c.sign());
            }
        }
    }
}
