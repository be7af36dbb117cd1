//! Exact rank and kernels over Q(q, a, ...) and over Q.

use num_rational::BigRational;
use num_traits::Zero;

use crate::scalars::Scalar;

/// Rough size of a scalar, used to pick cheap pivots.
fn weight(s: &Scalar) -> usize {
    s.numer().terms.len() + s.denom().terms.len()
}

/// Row-reduce in place; returns the pivot columns in order.
pub fn row_reduce(m: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == m.len() {
            break;
        }
        let best = (top..m.len())
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| weight(&m[r][col]));
        let Some(p) = best else { continue };
        m.swap(top, p);
        let inv = m[top][col].inv().expect("pivot nonzero");
        let prow: Vec<Scalar> = m[top].iter().map(|x| x.mul(&inv)).collect();
        m[top] = prow;
        for r in 0..m.len() {
            if r == top || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for k in col..ncols {
                if m[top][k].is_zero() {
                    continue;
                }
                let v = m[r][k].sub(&f.mul(&m[top][k]));
                m[r][k] = v;
            }
        }
        pivots.push(col);
        top += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Basis of {v : M v = 0}, one vector per free column.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = m[r][free].neg();
        }
        out.push(v);
    }
    out
}

pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        for r in top + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[top][col];
            for k in col..ncols {
                let v = &m[r][k] - &f * &m[top][k];
                m[r][k] = v;
            }
        }
        top += 1;
        if top == m.len() {
            break;
        }
    }
    top
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    #[test]
    fn rank_and_kernel() {
        let s = |t: &str| parse_scalar(t).unwrap();
        let m = vec![
            vec![s("1"), s("q"), s("q^2")],
            vec![s("q"), s("q^2"), s("q^3")],
            vec![s("1"), s("a"), s("0")],
        ];
        assert_eq!(rank(&m), 2);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row
                .iter()
                .zip(&k[0])
                .fold(Scalar::zero(), |acc, (x, y)| acc.add(&x.mul(y)));
            assert!(dot.is_zero());
        }
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(rank_rational(&[vec![r(1), r(2)], vec![r(2), r(4)]]), 1);
    }
}
