//! Small exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Q;

/// Reduced row echelon form; returns the nonzero rows.
pub fn rref(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(p) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = Q::one() / &m[pivot_row][col];
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    rref(rows).len()
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let red = rref(&aug);
    if red.len() < n {
        return None;
    }
    for (i, row) in red.iter().enumerate() {
        if !row[i].is_one() || row[..n].iter().enumerate().any(|(j, x)| j != i && !x.is_zero()) {
            return None;
        }
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of an integer matrix given as rows (computed exactly).
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let q_rows: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| crate::rational::q(x)).collect())
        .collect();
    rank(&q_rows)
}

/// Greedily picks a maximal linearly independent subset of integer vectors
/// and returns their indices. Cheaper than a full rank computation when the
/// input is a long list of lattice points.
pub fn independent_subset(vectors: &[Vec<i64>]) -> Vec<usize> {
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut r: Vec<Q> = v.iter().map(|&x| crate::rational::q(x)).collect();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = Q::one() / &r[p];
            for x in r.iter_mut() {
                *x *= &inv;
            }
            // keep earlier basis rows reduced in the new pivot column
            for b in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&r) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push(r);
            pivots.push(p);
            chosen.push(idx);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let inv = inverse(&m(&[&[2, -1], &[-1, 2]])).unwrap();
        assert_eq!(inv[0][0], Q::new(2.into(), 3.into()));
        assert_eq!(inv[0][1], Q::new(1.into(), 3.into()));
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank_i64(&[vec![0, 0], vec![0, 0]]), 0);
        let vs = vec![vec![1, 0, 0], vec![2, 0, 0], vec![0, 1, 0], vec![1, 1, 0]];
        assert_eq!(independent_subset(&vs), vec![0, 2]);
    }
}
