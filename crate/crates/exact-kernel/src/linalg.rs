//! Dense Gaussian elimination over big complex numbers and exact rationals.

use rug::Rational;

use crate::bigcomplex::BigComplex;
use crate::KernelError;

fn pivot_row(m: &[Vec<BigComplex>], col: usize, from: usize) -> Option<(usize, f64)> {
    (from..m.len())
        .map(|r| (r, m[r][col].log10_abs()))
        .filter(|(_, a)| a.is_finite())
        .max_by(|a, b| a.1.total_cmp(&b.1))
}

/// Numerical rank: a pivot counts when its magnitude exceeds `10^threshold_log10`.
pub fn rank_complex(matrix: &[Vec<BigComplex>], threshold_log10: f64) -> usize {
    let mut m = matrix.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some((p, mag)) = pivot_row(&m, c, rank) else { continue };
        if mag < threshold_log10 {
            continue;
        }
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for r in rank + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..cols {
                let v = &m[r][k] - &(&f * &m[rank][k]);
                m[r][k] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix.
pub fn determinant(matrix: &[Vec<BigComplex>]) -> Result<BigComplex, KernelError> {
    let n = matrix.len();
    let digits = matrix.first().and_then(|r| r.first()).map_or(30, BigComplex::digits);
    let mut m = matrix.to_vec();
    let mut det = BigComplex::one(digits);
    for c in 0..n {
        let Some((p, _)) = pivot_row(&m, c, c) else { return Ok(BigComplex::zero(digits)) };
        if p != c {
            m.swap(c, p);
            det = det.neg();
        }
        let piv = m[c][c].clone();
        det = &det * &piv;
        for r in c + 1..n {
            let f = &m[r][c] / &piv;
            for k in c..n {
                let v = &m[r][k] - &(&f * &m[c][k]);
                m[r][k] = v;
            }
        }
    }
    Ok(det)
}

/// Solves a square system by partial pivoting.
pub fn solve(matrix: &[Vec<BigComplex>], rhs: &[BigComplex]) -> Result<Vec<BigComplex>, KernelError> {
    let n = matrix.len();
    let mut m: Vec<Vec<BigComplex>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let (p, _) = pivot_row(&m, c, c).ok_or(KernelError::Singular)?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for r in 0..n {
            if r == c || m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &piv;
            for k in c..=n {
                let v = &m[r][k] - &(&f * &m[c][k]);
                m[r][k] = v;
            }
        }
    }
    (0..n).map(|i| m[i][n].try_div(&m[i][i])).collect()
}

/// Least-squares solution through the normal equations, with the max residual
/// `max_i |A x - b|_i` over all rows.
pub fn least_squares(
    rows: &[Vec<BigComplex>],
    rhs: &[BigComplex],
) -> Result<(Vec<BigComplex>, f64), KernelError> {
    let n = rows.first().map_or(0, Vec::len);
    let digits = rhs.first().map_or(30, BigComplex::digits);
    let mut ata = vec![vec![BigComplex::zero(digits); n]; n];
    let mut atb = vec![BigComplex::zero(digits); n];
    for (row, b) in rows.iter().zip(rhs) {
        for i in 0..n {
            if row[i].is_zero() {
                continue;
            }
            let ci = row[i].conj();
            for j in 0..n {
                if !row[j].is_zero() {
                    ata[i][j] = &ata[i][j] + &(&ci * &row[j]);
                }
            }
            atb[i] = &atb[i] + &(&ci * b);
        }
    }
    let x = solve(&ata, &atb)?;
    let mut worst = f64::NEG_INFINITY;
    for (row, b) in rows.iter().zip(rhs) {
        let mut acc = b.neg();
        for (a, v) in row.iter().zip(&x) {
            acc = &acc + &(a * v);
        }
        worst = worst.max(acc.log10_abs());
    }
    Ok((x, worst))
}

/// Exact rank over the rationals.
pub fn rank_rational(matrix: &[Vec<Rational>]) -> usize {
    let mut m = matrix.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for r in rank + 1..m.len() {
            if m[r][c] == 0 {
                continue;
            }
            let f = Rational::from(&m[r][c] / &piv);
            for k in c..cols {
                let v = Rational::from(&f * &m[rank][k]);
                m[r][k] -= v;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, 40)
    }

    #[test]
    fn solve_and_det() {
        let a = vec![vec![c(2.0, 0.0), c(1.0, 1.0)], vec![c(0.0, 1.0), c(3.0, 0.0)]];
        let b = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let x = solve(&a, &b).unwrap();
        let r0 = &(&a[0][0] * &x[0]) + &(&a[0][1] * &x[1]);
        assert!((&r0 - &b[0]).log10_abs() < -35.0);
        let d = determinant(&a).unwrap();
        assert!((&d - &c(7.0, -1.0)).log10_abs() < -35.0);
    }

    #[test]
    fn ranks() {
        let a = vec![vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]];
        assert_eq!(rank_complex(&a, -20.0), 1);
        let q = vec![
            vec![Rational::from(1), Rational::from(2)],
            vec![Rational::from(3), Rational::from(4)],
        ];
        assert_eq!(rank_rational(&q), 2);
    }
}
