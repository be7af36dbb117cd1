//! Cartan data, positive roots, zeta factors and the quantum Cartan matrix.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{ParseError, Scalar, UPoly, URat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("invalid symmetrized Cartan matrix: {0}")]
    Invalid(String),
    #[error("operation requires a finite-type Cartan datum")]
    NotFinite,
    #[error("unknown Cartan preset '{0}'")]
    UnknownPreset(String),
}

/// Symmetrized generalized Cartan matrix (d_ij) plus derived flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanDatum {
    pub name: String,
    d: Vec<Vec<i64>>,
    pub is_finite_type: bool,
    pub is_strongly_symmetrizable: bool,
    pub is_simply_laced: bool,
}

pub type RootVector = Vec<i64>;

/// Coweight sum r_i * omega_i^vee in fundamental-coweight coordinates.
pub type Coweight = Vec<i64>;

impl CartanDatum {
    pub fn new(name: &str, d: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let l = d.len();
        if l == 0 {
            return Err(CartanError::Invalid("empty matrix".into()));
        }
        for (i, row) in d.iter().enumerate() {
            if row.len() != l {
                return Err(CartanError::Invalid(format!(
                    "row {} has length {}, expected {}",
                    i + 1,
                    row.len(),
                    l
                )));
            }
            if row[i] <= 0 || row[i] % 2 != 0 {
                return Err(CartanError::Invalid(format!(
                    "d_{0}{0} = {1} must be even and positive",
                    i + 1,
                    row[i]
                )));
            }
        }
        for i in 0..l {
            for j in 0..l {
                if d[i][j] != d[j][i] {
                    return Err(CartanError::Invalid(format!(
                        "not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if i != j {
                    if d[i][j] > 0 {
                        return Err(CartanError::Invalid(format!("d_{}{} > 0", i + 1, j + 1)));
                    }
                    if (2 * d[i][j]) % d[i][i] != 0 {
                        return Err(CartanError::Invalid(format!(
                            "c_{}{} = 2d_ij/d_ii not integral",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let is_simply_laced = (0..l).all(|i| d[i][i] == 2);
        let is_strongly_symmetrizable = (0..l).all(|i| {
            (0..l).all(|j| i == j || d[i][j] == 0 || d[i][j] == -(d[i][i] / 2).max(d[j][j] / 2))
        });
        let is_finite_type = leading_minors_positive(&d);
        Ok(CartanDatum {
            name: name.to_string(),
            d,
            is_finite_type,
            is_strongly_symmetrizable,
            is_simply_laced,
        })
    }

    /// Built-in types: A1, A2, A3, B2, G2 and the affine A2-hat.
    pub fn preset(name: &str) -> Result<Self, CartanError> {
        let d = match name {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "B2" => vec![vec![4, -2], vec![-2, 2]],
            "G2" => vec![vec![6, -3], vec![-3, 2]],
            "A2hat" | "A2-hat" | "A2^(1)" => {
                vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]
            }
            _ => return Err(CartanError::UnknownPreset(name.to_string())),
        };
        CartanDatum::new(name, d)
    }

    /// Parse `"2,-1;-1,2"` as the matrix (d_ij).
    pub fn parse_matrix(s: &str) -> Result<Self, ParseError> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for row in s.split(';') {
            let mut r = Vec::new();
            let mut o2 = offset;
            for entry in row.split(',') {
                let t = entry.trim();
                let v: i64 = t.parse().map_err(|_| ParseError {
                    pos: o2 + entry.len() - entry.trim_start().len(),
                    msg: format!("expected integer, found '{}'", t),
                })?;
                r.push(v);
                o2 += entry.len() + 1;
            }
            rows.push(r);
            offset += row.len() + 1;
        }
        CartanDatum::new("custom", rows).map_err(|e| ParseError {
            pos: 0,
            msg: e.to_string(),
        })
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn d(&self, i: usize, j: usize) -> i64 {
        self.d[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.d
    }

    /// d_i = d_ii / 2.
    pub fn d_i(&self, i: usize) -> i64 {
        self.d[i][i] / 2
    }

    /// c_ij = 2 d_ij / d_ii.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        2 * self.d[i][j] / self.d[i][i]
    }

    /// Whether shuffle-algebra membership has a wheel characterization here.
    pub fn wheel_supported(&self) -> bool {
        self.is_finite_type || self.is_strongly_symmetrizable || self.is_simply_laced
    }

    /// zeta_ij(x) = (x - q^{-d_ij}) / (x - 1).
    pub fn zeta(&self, i: usize, j: usize) -> URat {
        let num = UPoly::linear(&Scalar::q_pow(-self.d[i][j]));
        let den = UPoly::linear(&Scalar::one());
        URat::new(num, den).expect("x - 1 is nonzero")
    }

    /// C_ij(x) = (x^{d_ij} - x^{-d_ij}) / (x^{d_i} - x^{-d_i}) as a reduced rational function.
    pub fn quantum_cartan(&self, i: usize, j: usize) -> URat {
        let dij = self.d[i][j];
        let di = self.d_i(i);
        if dij == 0 {
            return URat::new(UPoly::zero(), UPoly::constant(Scalar::one())).expect("nonzero");
        }
        // multiply through by x^{|d_ij| + d_i}
        let a = dij.unsigned_abs() as usize;
        let sign = if dij > 0 {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        };
        let mut num = UPoly::monomial(sign.clone(), 2 * a).add(&UPoly::monomial(sign.neg(), 0));
        let mut den = UPoly::monomial(Scalar::one(), 2 * di as usize)
            .add(&UPoly::monomial(Scalar::from_int(-1), 0));
        // num carries x^{d_i}, den carries x^{|d_ij|}; cancel the common power of x
        if di as usize >= a {
            num = num.mul(&UPoly::monomial(Scalar::one(), di as usize - a));
        } else {
            den = den.mul(&UPoly::monomial(Scalar::one(), a - di as usize));
        }
        let (n, d) = reduce_upoly(&num, &den);
        URat::new(n, d).expect("nonzero denominator")
    }

    /// Positive roots by closure under adding simple roots, checked against root strings.
    pub fn positive_roots(&self) -> Result<Vec<RootVector>, CartanError> {
        if !self.is_finite_type {
            return Err(CartanError::NotFinite);
        }
        let l = self.rank();
        let simple: Vec<RootVector> = (0..l).map(|i| unit(l, i)).collect();
        let mut roots: Vec<RootVector> = simple.clone();
        let mut frontier = simple;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..l {
                    // alpha_i-string through beta: beta - p alpha_i, ..., beta + r alpha_i with p - r = <beta, alpha_i^vee>
                    let mut p = 0;
                    loop {
                        let mut g = beta.clone();
                        g[i] -= p + 1;
                        if roots.contains(&g) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing = self.coroot_pairing(beta, i);
                    let r = p - pairing;
                    if r > 0 {
                        let mut g = beta.clone();
                        g[i] += 1;
                        if !roots.contains(&g) && !next.contains(&g) {
                            next.push(g);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            frontier = next;
        }
        roots.sort_by(|a, b| {
            a.iter()
                .sum::<i64>()
                .cmp(&b.iter().sum::<i64>())
                .then_with(|| b.cmp(a))
        });
        Ok(roots)
    }

    /// <beta, alpha_i^vee> = sum_j m_j c_ij.
    pub fn coroot_pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| beta[j] * self.c(i, j)).sum()
    }

    /// Simple coroot alpha_i^vee in fundamental-coweight coordinates: r_j = c_ij.
    pub fn simple_coroot(&self, i: usize) -> Coweight {
        (0..self.rank()).map(|j| self.c(i, j)).collect()
    }

    /// s_i(mu) = mu - <mu, alpha_i> alpha_i^vee.
    pub fn reflect_coweight(&self, mu: &[i64], i: usize) -> Coweight {
        let ar = self.simple_coroot(i);
        let p = mu[i];
        mu.iter().zip(ar.iter()).map(|(m, a)| m - p * a).collect()
    }
}

/// <mu, alpha> = sum r_i m_i with <omega_i^vee, alpha_j> = delta_ij.
pub fn coweight_pairing(mu: &[i64], alpha: &[i64]) -> i64 {
    mu.iter().zip(alpha.iter()).map(|(r, m)| r * m).sum()
}

fn unit(l: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = 1;
    v
}

// Sylvester's criterion on exact integer determinants.
fn leading_minors_positive(d: &[Vec<i64>]) -> bool {
    (1..=d.len()).all(|k| {
        let m: Vec<Vec<i128>> = (0..k)
            .map(|i| (0..k).map(|j| d[i][j] as i128).collect())
            .collect();
        bareiss_det(m) > 0
    })
}

fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn reduce_upoly(num: &UPoly, den: &UPoly) -> (UPoly, UPoly) {
    // Euclid over Q(q); only used on small integer-coefficient polynomials
    let g = upoly_gcd(num, den);
    let n = upoly_div(num, &g);
    let d = upoly_div(den, &g);
    let lc = d.0.last().cloned().expect("nonzero");
    let inv = lc.inv().expect("nonzero");
    let scale = |p: &UPoly| UPoly(p.0.iter().map(|c| c.mul(&inv)).collect()).trimmed();
    (scale(&n), scale(&d))
}

fn upoly_rem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone().trimmed();
    let db = b.degree().expect("nonzero divisor");
    let lb = b.0[db].inv().expect("nonzero");
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let f = r.0[dr].mul(&lb);
        let mut nr = r.0.clone();
        for (i, c) in b.0.iter().enumerate() {
            nr[i + dr - db] = nr[i + dr - db].sub(&c.mul(&f));
        }
        r = UPoly(nr).trimmed();
    }
    r
}

fn upoly_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    let (mut x, mut y) = (a.clone().trimmed(), b.clone().trimmed());
    while !y.is_zero() {
        let r = upoly_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn upoly_div(a: &UPoly, b: &UPoly) -> UPoly {
    let db = b.degree().expect("nonzero divisor");
    let lb = b.0[db].inv().expect("nonzero");
    let mut r = a.clone().trimmed();
    let mut q = vec![Scalar::zero(); r.0.len().saturating_sub(db).max(1)];
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let f = r.0[dr].mul(&lb);
        q[dr - db] = f.clone();
        let mut nr = r.0.clone();
        for (i, c) in b.0.iter().enumerate() {
            nr[i + dr - db] = nr[i + dr - db].sub(&c.mul(&f));
        }
        r = UPoly(nr).trimmed();
    }
    UPoly(q).trimmed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    #[test]
    fn flags() {
        let a2 = CartanDatum::preset("A2").unwrap();
        assert!(a2.is_finite_type && a2.is_simply_laced && a2.is_strongly_symmetrizable);
        let b2 = CartanDatum::preset("B2").unwrap();
        assert!(b2.is_finite_type && !b2.is_simply_laced && b2.is_strongly_symmetrizable);
        assert_eq!(b2.c(0, 1), -1);
        assert_eq!(b2.c(1, 0), -2);
        let aff = CartanDatum::preset("A2hat").unwrap();
        assert!(!aff.is_finite_type && aff.is_simply_laced);
        assert!(CartanDatum::new("bad", vec![vec![2, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn zeta_examples() {
        let a1 = CartanDatum::preset("A1").unwrap();
        let z = a1.zeta(0, 0);
        assert_eq!(z.num.coeff(0), s("-q^-2"));
        let a2 = CartanDatum::preset("A2").unwrap();
        let z = a2.zeta(0, 1);
        assert_eq!(z.num.coeff(0), s("-q"));
        assert_eq!(z.den.coeff(0), s("-1"));
    }

    #[test]
    fn quantum_cartan_examples() {
        let a1 = CartanDatum::preset("A1").unwrap();
        let c = a1.quantum_cartan(0, 0);
        // x + 1/x = (x^2 + 1)/x
        assert_eq!(c.num, UPoly(vec![s("1"), s("0"), s("1")]));
        assert_eq!(c.den, UPoly(vec![s("0"), s("1")]));
        let a2 = CartanDatum::preset("A2").unwrap();
        let c = a2.quantum_cartan(0, 1);
        assert_eq!(c.num, UPoly(vec![s("-1")]));
        assert_eq!(c.den, UPoly(vec![s("1")]));
        let a3 = CartanDatum::preset("A3").unwrap();
        assert!(a3.quantum_cartan(0, 2).num.is_zero());
    }

    #[test]
    fn root_counts() {
        for (name, n) in [("A1", 1), ("A2", 3), ("B2", 4), ("A3", 6), ("G2", 6)] {
            assert_eq!(
                CartanDatum::preset(name)
                    .unwrap()
                    .positive_roots()
                    .unwrap()
                    .len(),
                n,
                "{}",
                name
            );
        }
        assert!(CartanDatum::preset("A2hat")
            .unwrap()
            .positive_roots()
            .is_err());
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(coweight_pairing(&[1], &[1]), 1);
        assert_eq!(coweight_pairing(&[1, 0], &[0, 1]), 0);
        let a1 = CartanDatum::preset("A1").unwrap();
        let s1 = a1.reflect_coweight(&[1], 0);
        assert_eq!(s1, vec![-1]);
        let mu: Vec<i64> = s1.iter().zip([1i64]).map(|(a, b)| a + b).collect();
        assert_eq!(coweight_pairing(&mu, &[1]), 0);
    }
}
