//! Finite enumeration of linear combinations, used wherever a search over
//! closed morphisms has to be made decidable.

use crate::field::{axpy, Field, Scalar};

/// Coefficients range over `0..=bound` over the rationals and over all
/// residues over a prime field. At most `limit` combinations are visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub bound: u32,
    pub limit: usize,
}

impl Default for Lattice {
    fn default() -> Lattice {
        Lattice {
            bound: 1,
            limit: 1 << 14,
        }
    }
}

impl Lattice {
    pub fn new(bound: u32) -> Lattice {
        Lattice {
            bound,
            ..Lattice::default()
        }
    }

    pub fn coefficients(&self, field: Field) -> Vec<Scalar> {
        match field {
            Field::Rational => (0..=self.bound as i64).map(|c| field.from_i64(c)).collect(),
            Field::Prime(p) => (0..p as i64).map(|c| field.from_i64(c)).collect(),
        }
    }

    /// Coefficient vectors of length `k` in counting order, starting at zero.
    pub fn combinations(&self, field: Field, k: usize) -> Vec<Vec<Scalar>> {
        let coeffs = self.coefficients(field);
        let mut out = Vec::new();
        let mut digits = vec![0usize; k];
        loop {
            if out.len() >= self.limit {
                break;
            }
            out.push(digits.iter().map(|&d| coeffs[d].clone()).collect());
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                digits[i] += 1;
                if digits[i] < coeffs.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
        out
    }

    /// Vectors `offset + Σ c_i dirs[i]` over the lattice of coefficients.
    pub fn points(&self, field: Field, offset: &[Scalar], dirs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        self.combinations(field, dirs.len())
            .into_iter()
            .map(|cs| {
                let mut v = offset.to_vec();
                for (c, d) in cs.iter().zip(dirs) {
                    axpy(&mut v, c, d);
                }
                v
            })
            .collect()
    }

    /// First lattice point satisfying `pred`.
    pub fn find(
        &self,
        field: Field,
        offset: &[Scalar],
        dirs: &[Vec<Scalar>],
        mut pred: impl FnMut(&[Scalar]) -> bool,
    ) -> Option<Vec<Scalar>> {
        self.points(field, offset, dirs).into_iter().find(|v| pred(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let l = Lattice::new(1);
        assert_eq!(l.combinations(Field::Rational, 3).len(), 8);
        assert_eq!(l.combinations(Field::Prime(5), 2).len(), 25);
        assert_eq!(l.combinations(Field::Rational, 0), vec![Vec::<Scalar>::new()]);
        let small = Lattice { bound: 3, limit: 10 };
        assert_eq!(small.combinations(Field::Rational, 4).len(), 10);
    }
}
