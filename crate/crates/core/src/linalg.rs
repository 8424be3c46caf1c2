//! Dense exact linear algebra over `F_p` and `Q`.
//!
//! Sizes here are a few hundred rows at most, so everything is dense and
//! single-threaded; results are bit-for-bit deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{FieldConfig, Scalar};

/// Rank of a dense matrix by Gaussian elimination over its field.
pub fn rank(_field: &FieldConfig, rows: &[Vec<Scalar>]) -> usize {
    let mut rows: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][c].inverse().expect("pivot is nonzero");
        for x in rows[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        for i in (r + 1)..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for k in c..ncols {
                let d = &factor * &rows[r][k];
                rows[i][k] -= &d;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Fraction-free (Bareiss) rank of an integer matrix.
pub fn rank_fraction_free(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in (r + 1)..nrows {
            for k in (c + 1)..ncols {
                let v = &a[r][c] * &a[i][k] - &a[i][c] * &a[r][k];
                a[i][k] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Clears denominators row by row, turning a rational matrix into an integer one.
pub fn integer_rows(rows: &[Vec<Scalar>]) -> Option<Vec<Vec<BigInt>>> {
    rows.iter()
        .map(|row| {
            let mut l = BigInt::one();
            for x in row {
                l = l.lcm(x.as_rational()?.denom());
            }
            row.iter()
                .map(|x| {
                    let r = x.as_rational()?;
                    Some(r.numer() * (&l / r.denom()))
                })
                .collect()
        })
        .collect()
}

/// Rank using the field-appropriate elimination: fraction-free for `Q`.
pub fn exact_rank(field: &FieldConfig, rows: &[Vec<Scalar>]) -> usize {
    if field.is_rational() {
        if let Some(ints) = integer_rows(rows) {
            return rank_fraction_free(&ints);
        }
    }
    rank(field, rows)
}

/// A factored system `A x = b` with the columns of `A` fixed up front.
///
/// Row operations are recorded so that any number of right-hand sides can be
/// solved against the same reduction.
pub struct LinearSystem {
    field: FieldConfig,
    ncols: usize,
    nrows: usize,
    /// `transform * A = reduced`.
    transform: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl LinearSystem {
    /// `columns[j]` is the j-th column vector of length `nrows`.
    pub fn new(field: FieldConfig, nrows: usize, columns: &[Vec<Scalar>]) -> Self {
        let ncols = columns.len();
        let mut a: Vec<Vec<Scalar>> = (0..nrows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        let mut t: Vec<Vec<Scalar>> = (0..nrows)
            .map(|i| {
                (0..nrows)
                    .map(|j| if i == j { field.one() } else { field.zero() })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == nrows {
                break;
            }
            let Some(piv) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, piv);
            t.swap(r, piv);
            let inv = a[r][c].inverse().expect("nonzero pivot");
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for x in t[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..nrows {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for k in 0..ncols {
                    let d = &f * &a[r][k];
                    a[i][k] -= &d;
                }
                for k in 0..nrows {
                    let d = &f * &t[r][k];
                    t[i][k] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        LinearSystem {
            field,
            ncols,
            nrows,
            transform: t,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Returns a solution of `A x = b`, or `None` when `b` is outside the column span.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.nrows, "right-hand side length");
        let tb: Vec<Scalar> = self
            .transform
            .iter()
            .map(|row| {
                row.iter().zip(b).fold(self.field.zero(), |acc, (x, y)| {
                    if y.is_zero() {
                        acc
                    } else {
                        &acc + &(x * y)
                    }
                })
            })
            .collect();
        if tb[self.pivots.len()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.ncols];
        for (k, &c) in self.pivots.iter().enumerate() {
            x[c] = tb[k].clone();
        }
        Some(x)
    }

    pub fn contains(&self, b: &[Scalar]) -> bool {
        self.solve(b).is_some()
    }
}
