//! Exact Gauss–Jordan elimination over a [`Field`].


use super::field::Field;
use crate::error::{Error, Result};

/// Bring `m` to reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].checked_inv().expect("nonzero pivot");
        for x in m[r].iter_mut().skip(c) {
            *x = x.clone() * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                if !p.is_zero() {
                    *x = x.clone() - &(f.clone() * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Unique solution of `a x = b`; overdetermined systems must be consistent.
pub fn solve_unique<F: Field>(a: &[Vec<F>], b: &[F]) -> Result<Vec<F>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return Err(Error::Inconsistent);
    }
    if pivots.len() < n {
        return Err(Error::Singular);
    }
    Ok((0..n).map(|i| aug[i][n].clone()).collect())
}

/// Basis of the right kernel of `a` (an `rows × cols` matrix).
pub fn kernel<F: Field>(a: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{rat, Rational};
    use num_traits::Zero;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn solves_square_system() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve_unique(&a, &[rat(3), rat(5)]).unwrap();
        assert_eq!(x, vec![Rational::new(4.into(), 5.into()), Rational::new(7.into(), 5.into())]);
    }

    #[test]
    fn detects_inconsistency_and_singularity() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve_unique(&a, &[rat(1), rat(2)]), Err(Error::Inconsistent));
        assert_eq!(solve_unique(&a, &[rat(1), rat(1)]), Err(Error::Singular));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let s = row.iter().zip(v).fold(rat(0), |acc, (x, y)| acc + x * y);
                assert!(s.is_zero());
            }
        }
    }
}
