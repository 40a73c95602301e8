//! Permutations on [k], the voltage group elements.
//!
//! Internally 0-indexed: `image[j] = g(j)`. Text formats are 1-indexed.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("image of length {0} is not a bijection on [{0}]")]
    NotABijection(usize),
    #[error("image value {value} out of range for degree {degree}")]
    OutOfRange { value: usize, degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm { image: (0..k).collect() }
    }

    /// Builds a permutation from its 0-indexed image vector.
    pub fn from_images(image: Vec<usize>) -> Result<Self, PermError> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &v in &image {
            if v >= k {
                return Err(PermError::OutOfRange { value: v, degree: k });
            }
            if seen[v] {
                return Err(PermError::NotABijection(k));
            }
            seen[v] = true;
        }
        Ok(Perm { image })
    }

    /// Builds a permutation from a 1-indexed image list, as used in voltage files.
    pub fn from_one_based(image: &[usize]) -> Result<Self, PermError> {
        let k = image.len();
        for &v in image {
            if v == 0 || v > k {
                return Err(PermError::OutOfRange { value: v, degree: k });
            }
        }
        Perm::from_images(image.iter().map(|&v| v - 1).collect())
    }

    /// The transposition (a b) in S_k (0-indexed points).
    pub fn transposition(k: usize, a: usize, b: usize) -> Self {
        let mut image: Vec<usize> = (0..k).collect();
        image.swap(a, b);
        Perm { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, j: usize) -> usize {
        self.image[j]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn one_based_image(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(j, &v)| j == v)
    }

    /// Functional composition: `(self . other)(j) = self(other(j))`.
    /// Panics on degree mismatch; degrees are fixed per assignment.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in permutation composition"
        );
        Perm {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut image = vec![0; self.degree()];
        for (j, &v) in self.image.iter().enumerate() {
            image[v] = j;
        }
        Perm { image }
    }

    /// +1 for even permutations, -1 for odd, via cycle counting.
    pub fn sign(&self) -> i8 {
        let k = self.degree();
        let mut seen = vec![false; k];
        let mut transpositions = 0usize;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.image[j];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Perm {
    /// Cycle notation on 1-indexed points, e.g. `(1 2)`; identity prints `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let k = self.degree();
        let mut seen = vec![false; k];
        for start in 0..k {
            if seen[start] || self.image[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut j = start;
            let mut first = true;
            while !seen[j] {
                seen[j] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", j + 1)?;
                first = false;
                j = self.image[j];
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_squares_to_identity() {
        let t = Perm::transposition(2, 0, 1);
        assert!(t.compose(&t).is_identity());
    }

    #[test]
    fn transposition_sign_is_negative() {
        assert_eq!(Perm::transposition(2, 0, 1).sign(), -1);
        assert_eq!(Perm::identity(4).sign(), 1);
        // 3-cycle is even
        assert_eq!(Perm::from_one_based(&[2, 3, 1]).unwrap().sign(), 1);
    }

    #[test]
    fn three_cycle_inverse() {
        // (123): 1->2, 2->3, 3->1, image (2,3,1) one-based
        let c = Perm::from_one_based(&[2, 3, 1]).unwrap();
        let inv = c.inverse();
        assert_eq!(inv.one_based_image(), vec![3, 1, 2]);
        assert!(c.compose(&inv).is_identity());
    }

    #[test]
    fn compose_applies_right_then_left() {
        // g = (12), h = (23) in S_3; (g.h)(3) = g(2) = 1
        let g = Perm::transposition(3, 0, 1);
        let h = Perm::transposition(3, 1, 2);
        let gh = g.compose(&h);
        assert_eq!(gh.apply(2), 0);
        assert_eq!(gh.one_based_image(), vec![2, 3, 1]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_one_based(&[1, 1]).is_err());
        assert!(Perm::from_one_based(&[0, 2]).is_err());
        assert!(Perm::from_one_based(&[3, 1]).is_err());
    }

    #[test]
    fn cycle_notation_display() {
        assert_eq!(Perm::identity(3).to_string(), "id");
        assert_eq!(Perm::transposition(2, 0, 1).to_string(), "(1 2)");
        assert_eq!(
            Perm::from_one_based(&[2, 3, 1]).unwrap().to_string(),
            "(1 2 3)"
        );
    }
}
