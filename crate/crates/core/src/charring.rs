//! Truncated weight characters, q-characters, the normalization characters chi^mu and the
//! QQ-system check.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{coweight_pairing, CartanDatum, CartanError, Coweight};
use crate::lweights::{prefundamental, psi_tilde, LWeightMonomial};
use crate::scalars::{scalar_to_string, Point, Scalar};
use crate::simplemod::{full_character, DimConfig, SimpleError};

#[derive(Debug, Error)]
pub enum CharError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Simple(#[from] SimpleError),
    #[error("series has no inverse: constant term is {0}")]
    NotInvertible(i64),
}

/// Sum of c_beta [-beta] over beta in N^I with |beta| <= depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSeries {
    pub rank: usize,
    pub depth: usize,
    pub coeffs: BTreeMap<Vec<u32>, i64>,
}

impl WeightSeries {
    pub fn zero(rank: usize, depth: usize) -> Self {
        WeightSeries {
            rank,
            depth,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, depth: usize) -> Self {
        Self::monomial(rank, depth, vec![0; rank], 1)
    }

    /// c [-beta], or zero beyond the depth.
    pub fn monomial(rank: usize, depth: usize, beta: Vec<u32>, c: i64) -> Self {
        let mut s = Self::zero(rank, depth);
        s.add_term(beta, c);
        s
    }

    pub fn add_term(&mut self, beta: Vec<u32>, c: i64) {
        if c == 0 || beta.iter().sum::<u32>() as usize > self.depth {
            return;
        }
        let e = self.coeffs.entry(beta).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
    }

    pub fn coeff(&self, beta: &[u32]) -> i64 {
        self.coeffs.get(beta).copied().unwrap_or(0)
    }

    pub fn constant(&self) -> i64 {
        self.coeff(&vec![0; self.rank])
    }

    pub fn truncate(&self, depth: usize) -> Self {
        let mut s = Self::zero(self.rank, depth.min(self.depth));
        for (b, c) in &self.coeffs {
            s.add_term(b.clone(), *c);
        }
        s
    }

    pub fn add(&self, o: &WeightSeries) -> Self {
        let mut s = self.truncate(self.depth.min(o.depth));
        for (b, c) in &o.coeffs {
            s.add_term(b.clone(), *c);
        }
        s
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut s = Self::zero(self.rank, self.depth);
        for (b, c) in &self.coeffs {
            s.add_term(b.clone(), c * k);
        }
        s
    }

    pub fn sub(&self, o: &WeightSeries) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &WeightSeries) -> Self {
        let mut s = Self::zero(self.rank, self.depth.min(o.depth));
        for (b1, c1) in &self.coeffs {
            for (b2, c2) in &o.coeffs {
                s.add_term(b1.iter().zip(b2).map(|(x, y)| x + y).collect(), c1 * c2);
            }
        }
        s
    }

    /// Inverse of a series with constant term +-1.
    pub fn inv(&self) -> Result<Self, CharError> {
        let c0 = self.constant();
        if c0.abs() != 1 {
            return Err(CharError::NotInvertible(c0));
        }
        // 1/(c0 (1 - u)) = c0 (1 + u + u^2 + ...), u = 1 - self/c0
        let u = Self::one(self.rank, self.depth).sub(&self.scale(c0));
        let mut acc = Self::one(self.rank, self.depth);
        let mut pw = Self::one(self.rank, self.depth);
        for _ in 0..self.depth {
            pw = pw.mul(&u);
            acc = acc.add(&pw);
        }
        Ok(acc.scale(c0))
    }

    /// 1/(1 - [-beta])^k.
    pub fn geometric(rank: usize, depth: usize, beta: &[u32], k: u32) -> Self {
        let mut g = Self::zero(rank, depth);
        let h = beta.iter().sum::<u32>().max(1) as usize;
        for m in 0..=depth / h {
            g.add_term(beta.iter().map(|b| b * m as u32).collect(), 1);
        }
        let mut s = Self::one(rank, depth);
        for _ in 0..k {
            s = s.mul(&g);
        }
        s
    }

    pub fn to_json(&self) -> WeightSeriesJson {
        WeightSeriesJson {
            depth: self.depth,
            terms: self
                .coeffs
                .iter()
                .map(|(b, c)| WeightTermJson {
                    beta: b.clone(),
                    coeff: *c,
                })
                .collect(),
        }
    }
}

impl fmt::Display for WeightSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.coeffs.iter().enumerate() {
            let sign = match (k, *c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let root: Vec<String> = b
                .iter()
                .enumerate()
                .filter(|(_, m)| **m > 0)
                .map(|(i, m)| {
                    if *m == 1 {
                        format!("a{}", i + 1)
                    } else {
                        format!("{}a{}", m, i + 1)
                    }
                })
                .collect();
            let mag = c.abs();
            let body = match (root.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => format!("[-{}]", root.join("-")),
                (false, _) => format!("{}[-{}]", mag, root.join("-")),
            };
            write!(f, "{}{}", sign, body)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WeightTermJson {
    pub beta: Vec<u32>,
    pub coeff: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WeightSeriesJson {
    pub depth: usize,
    pub terms: Vec<WeightTermJson>,
}

/// Truncated sum of multiplicity * [base] * prod A^{-1}_{i,x}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCharacter {
    pub rank: usize,
    pub n_max: usize,
    pub terms: Vec<(LWeightMonomial, i64)>,
}

impl QCharacter {
    pub fn new(rank: usize, n_max: usize) -> Self {
        QCharacter {
            rank,
            n_max,
            terms: Vec::new(),
        }
    }

    /// Adds a term, merging with an equal monomial and dropping anything past n_max.
    pub fn push(&mut self, m: LWeightMonomial, mult: i64) {
        if m.afactors.len() > self.n_max || mult == 0 {
            return;
        }
        if let Some(k) = self.terms.iter().position(|(t, _)| *t == m) {
            self.terms[k].1 += mult;
            if self.terms[k].1 == 0 {
                self.terms.remove(k);
            }
        } else {
            self.terms.push((m, mult));
        }
    }

    pub fn mul(&self, o: &QCharacter) -> QCharacter {
        let mut r = QCharacter::new(self.rank, self.n_max.min(o.n_max));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.push(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn to_json(&self) -> QCharacterJson {
        QCharacterJson {
            n_max: self.n_max,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| QTermJson {
                    base: m.base.clone(),
                    afactors: m
                        .afactors
                        .iter()
                        .map(|(i, x)| (i + 1, x.to_string()))
                        .collect(),
                    constant: m.constant.iter().map(scalar_to_string).collect(),
                    mult: *c,
                })
                .collect(),
        }
    }
}

impl fmt::Display for QCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = if *c == 1 {
                    String::new()
                } else {
                    format!("{} ", c)
                };
                s.push_str(&format!("[{}]", m.base.as_deref().unwrap_or("psi")));
                for (i, x) in &m.afactors {
                    s.push_str(&format!(" A^-1_{{{},{}}}", i + 1, x));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct QTermJson {
    pub base: Option<String>,
    pub afactors: Vec<(usize, String)>,
    pub constant: Vec<String>,
    pub mult: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct QCharacterJson {
    pub n_max: usize,
    pub terms: Vec<QTermJson>,
}

/// prod over positive roots of (1 - [-alpha])^{-max(0, <mu, alpha>)}.
pub fn chi_mu(c: &CartanDatum, mu: &Coweight, depth: usize) -> Result<WeightSeries, CharError> {
    let roots = c.positive_roots()?;
    let r = c.rank();
    let mut s = WeightSeries::one(r, depth);
    for alpha in &roots {
        let k = coweight_pairing(mu, alpha).max(0) as u32;
        if k > 0 {
            let beta: Vec<u32> = alpha.iter().map(|x| *x as u32).collect();
            s = s.mul(&WeightSeries::geometric(r, depth, &beta, k));
        }
    }
    Ok(s)
}

/// Each A^{-1}_{i,x} contributes [-alpha_i]; bases and constants are forgotten.
pub fn weight_image(qc: &QCharacter, depth: usize) -> WeightSeries {
    let mut s = WeightSeries::zero(qc.rank, depth);
    for (m, c) in &qc.terms {
        let beta: Vec<u32> = m.adegree(qc.rank).iter().map(|k| *k as u32).collect();
        s.add_term(beta, *c);
    }
    s
}

/// chi^{w_i} chi^{s_i w_i} / chi^{s_i w_i + w_i}.
pub fn qq_constant(c: &CartanDatum, i: usize, depth: usize) -> Result<WeightSeries, CharError> {
    let r = c.rank();
    let mut w = vec![0; r];
    w[i] = 1;
    let sw = c.reflect_coweight(&w, i);
    let sum: Coweight = w.iter().zip(&sw).map(|(x, y)| x + y).collect();
    Ok(chi_mu(c, &w, depth)?
        .mul(&chi_mu(c, &sw, depth)?)
        .mul(&chi_mu(c, &sum, depth)?.inv()?))
}

#[derive(Clone, Debug)]
pub struct QQReport {
    pub holds: bool,
    pub lhs: WeightSeries,
    pub rhs: WeightSeries,
    pub chi: WeightSeries,
    /// Number of nonzero l-weight spaces found in each of the four q-characters.
    pub qchar_sizes: Vec<usize>,
}

/// Checks Q~_{i,aq_i} Q_{i,aq_i^-1} - [-alpha_i] Q~_{i,aq_i^-1} Q_{i,aq_i} = chi prod_{j != i} prod_s Q_{j,aq_i^s}
/// on weight characters truncated at `depth`.
pub fn verify_qq(
    c: &CartanDatum,
    i: usize,
    a: &Point,
    depth: usize,
    n_max: usize,
    cfg: &DimConfig,
) -> Result<QQReport, CharError> {
    let r = c.rank();
    let di = c.d_i(i);
    // a q-string of length n_max reaches q^{-2 d n_max} from the pole
    let dmax = (0..r).map(|j| c.d(j, j)).max().unwrap_or(2) as usize;
    let cfg = &DimConfig {
        k: cfg.k.max(dmax * n_max),
        ..cfg.clone()
    };
    // Q~_{i,b} = [L(psi~_{i, b q_i^-2})], Q_{i,b} = [L(psi_{i,b})]
    let inputs = [
        psi_tilde(c, i, &a.shift(-di)),
        prefundamental(r, i, &a.shift(-di)),
        psi_tilde(c, i, &a.shift(-3 * di)),
        prefundamental(r, i, &a.shift(di)),
    ];
    let chars: Vec<_> = inputs
        .par_iter()
        .map(|psi| full_character(c, psi, depth, n_max, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let ch: Vec<&WeightSeries> = chars.iter().map(|(_, w)| w).collect();
    let mut alpha = vec![0u32; r];
    alpha[i] = 1;
    let shift = WeightSeries::monomial(r, depth, alpha, 1);
    let lhs = ch[0].mul(ch[1]).sub(&shift.mul(ch[2]).mul(ch[3]));

    let chi = qq_constant(c, i, depth)?;
    let mut rhs = chi.clone();
    for j in (0..r).filter(|&j| j != i) {
        let cij = c.c(i, j);
        let mut s = cij + 1;
        while s < -cij {
            let psi = prefundamental(r, j, &a.shift(s * di));
            rhs = rhs.mul(&full_character(c, &psi, depth, n_max, cfg)?.1);
            s += 2;
        }
    }
    let holds = lhs == rhs;
    Ok(QQReport {
        holds,
        lhs,
        rhs,
        chi,
        qchar_sizes: chars.iter().map(|(q, _)| q.terms.len()).collect(),
    })
}

/// The constant tuple of an l-weight monomial, for display.
pub fn constant_string(k: &[Scalar]) -> String {
    k.iter()
        .map(scalar_to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_examples() {
        let a1 = CartanDatum::preset("A1").unwrap();
        let s = chi_mu(&a1, &vec![1], 3).unwrap();
        assert_eq!(s, WeightSeries::geometric(1, 3, &[1], 1));
        assert_eq!(s.coeffs.len(), 4);
        assert_eq!(chi_mu(&a1, &vec![-1], 3).unwrap(), WeightSeries::one(1, 3));
        assert_eq!(qq_constant(&a1, 0, 0).unwrap(), WeightSeries::one(1, 0));
    }

    #[test]
    fn inverse() {
        let g = WeightSeries::geometric(2, 4, &[1, 1], 2);
        assert_eq!(g.mul(&g.inv().unwrap()), WeightSeries::one(2, 4));
        let two = WeightSeries::monomial(1, 2, vec![0], 2);
        assert!(two.inv().is_err());
    }

    #[test]
    fn display() {
        let mut s = WeightSeries::one(2, 2);
        s.add_term(vec![1, 1], -2);
        s.add_term(vec![1, 0], 1);
        assert_eq!(s.to_string(), "1 + [-a1] - 2[-a1-a2]");
    }
}
