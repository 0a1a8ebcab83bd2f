use crate::error::{Error, Result};
use crate::Vector;

/// The complex structure of `C^n = R^{2n}` in block coordinates
/// `(x_1 … x_n, y_1 … y_n)`: `J(x, y) = (−y, x)`.
///
/// For `n = 1` this is `J(a, b) = (−b, a)`; for `n = 2`,
/// `J(x_1, x_2, x_3, x_4) = (−x_3, −x_4, x_1, x_2)`. Interleaved pairings are
/// not used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexStructure {
    pub n: usize,
}

impl ComplexStructure {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "complex dimension must be positive".into(),
            ));
        }
        Ok(ComplexStructure { n })
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vector> {
        if v.len() != 2 * self.n {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n,
                got: v.len(),
            });
        }
        Ok(self.apply_unchecked(v))
    }

    pub(crate) fn apply_unchecked(&self, v: &[f64]) -> Vector {
        let n = self.n;
        Vector::from_fn(2 * n, |i, _| if i < n { -v[i + n] } else { v[i - n] })
    }

    /// `Ω(u, v) = g(Ju, v)`.
    pub fn kaehler_form(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        let ju = self.apply(u)?;
        if v.len() != ju.len() {
            return Err(Error::DimensionMismatch {
                expected: ju.len(),
                got: v.len(),
            });
        }
        Ok(ju.iter().zip(v).map(|(a, b)| a * b).sum())
    }
}

/// `J(v)` on `C^n`.
pub fn apply_j(n: usize, v: &[f64]) -> Result<Vector> {
    ComplexStructure::new(n)?.apply(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(apply_j(1, &[1.0, 0.0]).unwrap().as_slice(), &[0.0, 1.0]);
        assert_eq!(apply_j(1, &[0.0, 1.0]).unwrap().as_slice(), &[-1.0, 0.0]);
        assert_eq!(
            apply_j(2, &[1.0, 0.0, 0.0, 0.0]).unwrap().as_slice(),
            &[0.0, 0.0, 1.0, 0.0]
        );
        assert_eq!(
            apply_j(2, &[1.0, 2.0, 3.0, 4.0]).unwrap().as_slice(),
            &[-3.0, -4.0, 1.0, 2.0]
        );
        assert!(matches!(
            apply_j(2, &[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(apply_j(0, &[]).is_err());
    }

    fn vec_pair() -> impl Strategy<Value = (usize, Vec<f64>, Vec<f64>)> {
        (1usize..4).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(-10.0..10.0f64, 2 * n),
                prop::collection::vec(-10.0..10.0f64, 2 * n),
            )
        })
    }

    proptest! {
        #[test]
        fn j_squares_to_minus_identity((n, u, _) in vec_pair()) {
            let j = ComplexStructure::new(n).unwrap();
            let jju = j.apply(j.apply(&u).unwrap().as_slice()).unwrap();
            for (a, b) in jju.iter().zip(&u) {
                prop_assert_eq!(*a, -*b);
            }
        }

        #[test]
        fn j_is_an_isometry((n, u, v) in vec_pair()) {
            let j = ComplexStructure::new(n).unwrap();
            let (ju, jv) = (j.apply(&u).unwrap(), j.apply(&v).unwrap());
            let uv: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
            prop_assert!((ju.dot(&jv) - uv).abs() <= 1e-12 * (1.0 + uv.abs()));
            prop_assert!(j.kaehler_form(&u, &u).unwrap().abs() <= 1e-12);
            let antisym = j.kaehler_form(&u, &v).unwrap() + j.kaehler_form(&v, &u).unwrap();
            prop_assert!(antisym.abs() <= 1e-12 * (1.0 + uv.abs()));
        }
    }
}
