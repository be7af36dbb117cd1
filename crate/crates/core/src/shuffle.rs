//! The big shuffle algebra: elements, shuffle product, shifts, wheel and slope membership.
//!
//! An element of degree n is stored as its numerator rho, a color-symmetric Laurent
//! polynomial in the variables z_{i,a}; its value is rho / prod_{i<j} prod_{a,b} (z_{ia} - z_{jb}).
//! Variables are laid out color by color: z_{i,a} has index offset(i) + a (0-based).

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CartanDatum, Coweight};
use crate::laurent::LPoly;
use crate::scalars::{parse_scalar, scalar_to_string, ParseError, Scalar};

/// Tag for the orientation of cross-color denominator factors.
pub const SIGN_CONVENTION: &str = "i<j";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShuffleError {
    #[error("membership undecidable: no wheel characterization for Cartan datum '{0}'")]
    Unsupported(String),
    #[error("same-color denominator did not cancel after symmetrization")]
    Remainder,
    #[error("degree mismatch")]
    DegreeMismatch,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleElement {
    degree: Vec<usize>,
    num: LPoly,
}

pub fn offsets(degree: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(degree.len());
    let mut acc = 0;
    for &n in degree {
        o.push(acc);
        acc += n;
    }
    o
}

/// Color of each variable in the flat layout.
pub fn var_colors(degree: &[usize]) -> Vec<usize> {
    degree
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat_n(i, n))
        .collect()
}

impl ShuffleElement {
    pub fn new(degree: Vec<usize>, num: LPoly) -> Self {
        assert_eq!(
            num.nvars(),
            degree.iter().sum::<usize>(),
            "numerator arity must match degree"
        );
        ShuffleElement { degree, num }
    }

    /// The unit: empty degree, numerator 1.
    pub fn one(rank: usize) -> Self {
        ShuffleElement {
            degree: vec![0; rank],
            num: LPoly::one(0),
        }
    }

    pub fn zero(degree: Vec<usize>) -> Self {
        let n = degree.iter().sum();
        ShuffleElement {
            degree,
            num: LPoly::zero(n),
        }
    }

    /// z_{i,1}^d in degree varsigma^i (color i is 0-based).
    pub fn generator(rank: usize, i: usize, d: i32) -> Self {
        let mut degree = vec![0; rank];
        degree[i] = 1;
        ShuffleElement {
            degree,
            num: LPoly::var_pow(1, 0, d, Scalar::one()),
        }
    }

    pub fn degree(&self) -> &[usize] {
        &self.degree
    }

    pub fn size(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &LPoly {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &ShuffleElement) -> Result<ShuffleElement, ShuffleError> {
        if self.degree != o.degree {
            return Err(ShuffleError::DegreeMismatch);
        }
        Ok(ShuffleElement {
            degree: self.degree.clone(),
            num: self.num.add(&o.num),
        })
    }

    pub fn scale(&self, s: &Scalar) -> ShuffleElement {
        ShuffleElement {
            degree: self.degree.clone(),
            num: self.num.scale(s),
        }
    }

    /// Number of cross-color denominator factors.
    pub fn cross_pairs(&self) -> usize {
        let mut k = 0;
        for i in 0..self.degree.len() {
            for j in i + 1..self.degree.len() {
                k += self.degree[i] * self.degree[j];
            }
        }
        k
    }

    /// Range of total z-degrees of the rational function (numerator degree minus denominator degree).
    pub fn hom_degree_range(&self) -> Option<(i32, i32)> {
        let c = self.cross_pairs() as i32;
        self.num
            .total_degree_range()
            .map(|(lo, hi)| (lo - c, hi - c))
    }

    pub fn is_color_symmetric(&self) -> bool {
        let off = offsets(&self.degree);
        let n = self.size();
        for (i, &ni) in self.degree.iter().enumerate() {
            for a in 0..ni.saturating_sub(1) {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(off[i] + a, off[i] + a + 1);
                if self.num.permute(&perm) != self.num {
                    return false;
                }
            }
        }
        true
    }

    /// Full numerator-over-denominator value at a point (all variables specified).
    pub fn eval(&self, vals: &[Scalar]) -> Result<Scalar, crate::scalars::ScalarError> {
        let colors = var_colors(&self.degree);
        let mut den = Scalar::one();
        for a in 0..vals.len() {
            for b in 0..vals.len() {
                if colors[a] < colors[b] {
                    den = den.mul(&vals[a].sub(&vals[b]));
                }
            }
        }
        self.num.eval(vals).div(&den)
    }
}

/// Symmetrize a Laurent polynomial given as numerator over the canonical denominator times
/// nothing else: sum over all per-color permutations.
pub fn symmetrize(degree: &[usize], p: &LPoly) -> LPoly {
    let off = offsets(degree);
    let per_color: Vec<Vec<Vec<usize>>> = degree
        .iter()
        .map(|&n| (0..n).permutations(n).collect())
        .collect();
    let mut out = LPoly::zero(p.nvars());
    for combo in per_color.iter().multi_cartesian_product() {
        let mut perm = vec![0; p.nvars()];
        for (i, pi) in combo.iter().enumerate() {
            for (a, &b) in pi.iter().enumerate() {
                perm[off[i] + a] = off[i] + b;
            }
        }
        out.add_assign(&p.permute(&perm));
    }
    if degree.iter().all(|&n| n == 0) {
        return p.clone();
    }
    out
}

/// Shuffle product E * E'.
pub fn shuffle_mul(
    c: &CartanDatum,
    e1: &ShuffleElement,
    e2: &ShuffleElement,
) -> Result<ShuffleElement, ShuffleError> {
    let rank = c.rank();
    assert!(
        e1.degree.len() == rank && e2.degree.len() == rank,
        "degree rank mismatch"
    );
    let deg: Vec<usize> = (0..rank).map(|i| e1.degree[i] + e2.degree[i]).collect();
    let n = deg.iter().sum::<usize>();
    if e1.is_zero() || e2.is_zero() {
        return Ok(ShuffleElement::zero(deg));
    }
    let off = offsets(&deg);
    let off1 = offsets(&e1.degree);
    let off2 = offsets(&e2.degree);
    let colors = var_colors(&deg);

    // zeta numerators: q^{-d_ij} for each pair of colors
    let qd: Vec<Vec<Scalar>> = (0..rank)
        .map(|i| (0..rank).map(|j| Scalar::q_pow(-c.d(i, j))).collect())
        .collect();

    let choices: Vec<Vec<Vec<usize>>> = (0..rank)
        .map(|i| (0..deg[i]).combinations(e1.degree[i]).collect())
        .collect();
    let mut total = LPoly::zero(n);
    for pick in choices.iter().multi_cartesian_product() {
        // map flat slots of E and E' into the product layout
        let mut in_first = vec![false; n];
        let mut map1 = vec![0; e1.size()];
        let mut map2 = vec![0; e2.size()];
        for i in 0..rank {
            let s: &Vec<usize> = pick[i];
            let mut k2 = 0;
            for slot in 0..deg[i] {
                if let Ok(k1) = s.binary_search(&slot) {
                    map1[off1[i] + k1] = off[i] + slot;
                    in_first[off[i] + slot] = true;
                } else {
                    map2[off2[i] + k2] = off[i] + slot;
                    k2 += 1;
                }
            }
        }
        let mut term = e1.num.embed(n, &map1).mul(&e2.num.embed(n, &map2));
        let mut sign = false;
        for a in 0..n {
            for b in 0..n {
                if in_first[a] && !in_first[b] {
                    term = term.mul(&LPoly::linear_diff(n, a, b, &qd[colors[a]][colors[b]]));
                    if colors[a] > colors[b] || (colors[a] == colors[b] && a > b) {
                        sign = !sign;
                    }
                } else if a < b && colors[a] == colors[b] && in_first[a] == in_first[b] {
                    term = term.mul(&LPoly::linear_diff(n, a, b, &Scalar::one()));
                }
            }
        }
        if sign {
            term = term.neg();
        }
        total.add_assign(&term);
    }
    // divide out the same-color Vandermonde
    for a in 0..n {
        for b in a + 1..n {
            if colors[a] == colors[b] {
                total = total
                    .div_linear(a, b, &Scalar::one())
                    .ok_or(ShuffleError::Remainder)?;
            }
        }
    }
    Ok(ShuffleElement {
        degree: deg,
        num: total,
    })
}

/// Product of several elements, left to right.
pub fn shuffle_product(
    c: &CartanDatum,
    es: &[ShuffleElement],
) -> Result<ShuffleElement, ShuffleError> {
    let mut acc = ShuffleElement::one(c.rank());
    for e in es {
        acc = shuffle_mul(c, &acc, e)?;
    }
    Ok(acc)
}

/// sigma_r: multiply by prod z_{ia}^{r_i} (plus side) or prod z_{ia}^{-r_i} (minus side).
pub fn shift(e: &ShuffleElement, r: &Coweight, side: Side) -> ShuffleElement {
    let sgn = if side == Side::Plus { 1 } else { -1 };
    let ex: Vec<i32> = var_colors(&e.degree)
        .iter()
        .map(|&i| sgn * r[i] as i32)
        .collect();
    ShuffleElement {
        degree: e.degree.clone(),
        num: e.num.shift(&ex),
    }
}

/// Membership of the numerator in S: all applicable wheel conditions hold.
pub fn wheel_membership(c: &CartanDatum, e: &ShuffleElement) -> Result<bool, ShuffleError> {
    if !c.wheel_supported() {
        return Err(ShuffleError::Unsupported(c.name.clone()));
    }
    if (c.is_finite_type || c.is_strongly_symmetrizable) && !wheel1_holds(c, e) {
        return Ok(false);
    }
    if c.is_simply_laced && !wheel2_holds(c, e) {
        return Ok(false);
    }
    Ok(true)
}

/// Specializations z_{i,k+1} = z_{j,1} q^{d_ij + k d_ii}, k = 0..-c_ij, for each ordered pair i != j.
pub fn wheel1_specializations(
    c: &CartanDatum,
    degree: &[usize],
) -> Vec<Vec<(usize, usize, Scalar)>> {
    let off = offsets(degree);
    let mut out = Vec::new();
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            if i == j {
                continue;
            }
            let len = (1 - c.c(i, j)) as usize;
            if degree[i] < len || degree[j] < 1 {
                continue;
            }
            let subs = (0..len)
                .map(|k| {
                    (
                        off[i] + k,
                        off[j],
                        Scalar::q_pow(c.d(i, j) + k as i64 * c.d(i, i)),
                    )
                })
                .collect();
            out.push(subs);
        }
    }
    out
}

pub fn wheel1_holds(c: &CartanDatum, e: &ShuffleElement) -> bool {
    wheel1_specializations(c, &e.degree).iter().all(|subs| {
        let mut p = e.num.clone();
        for (v, t, f) in subs {
            p = p.subst_scaled(*v, *t, f);
        }
        p.is_zero()
    })
}

/// One window of the divisibility conditions for simply-laced types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wheel2Window {
    pub i: usize,
    pub j: usize,
    /// i-variables at x, xq^2, ..., xq^{2u}
    pub u: usize,
    /// j-variables at yq^{s'}, ..., yq^{s'+2v}
    pub v: usize,
    pub s_prime: i64,
    pub exponent: usize,
}

/// All windows fitting the degree, normalized to s = 0 (x absorbs any common shift).
pub fn wheel2_windows(c: &CartanDatum, degree: &[usize]) -> Vec<Wheel2Window> {
    let mut out = Vec::new();
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            if i == j || degree[i] == 0 || degree[j] == 0 {
                continue;
            }
            let d = c.d(i, j);
            for u in 0..degree[i] {
                for v in 0..degree[j] {
                    // t = 2u, s' + t' = 2u, t' - s' = 2v, and s - t' = -(u+v) = d mod 2
                    let uv = (u + v) as i64;
                    if (uv + d).rem_euclid(2) != 0 {
                        continue;
                    }
                    let e = (uv + d) / 2 + 1;
                    if e <= 0 {
                        continue;
                    }
                    out.push(Wheel2Window {
                        i,
                        j,
                        u,
                        v,
                        s_prime: u as i64 - v as i64,
                        exponent: e as usize,
                    });
                }
            }
        }
    }
    out
}

pub fn wheel2_holds(c: &CartanDatum, e: &ShuffleElement) -> bool {
    let off = offsets(&e.degree);
    wheel2_windows(c, &e.degree).iter().all(|w| {
        let x = off[w.i];
        let y = off[w.j];
        let mut p = e.num.clone();
        for k in 1..=w.u {
            p = p.subst_scaled(x + k, x, &Scalar::q_pow(2 * k as i64));
        }
        for k in 1..=w.v {
            p = p.subst_scaled(y + k, y, &Scalar::q_pow(2 * k as i64));
        }
        // z_{j,1} now stands for y q^{s'}; test divisibility by (x - q^{-s'} z_{j,1})^e
        let cst = Scalar::q_pow(-w.s_prime);
        for _ in 0..w.exponent {
            match p.div_linear(x, y, &cst) {
                Some(r) => p = r,
                None => return false,
            }
        }
        true
    })
}

/// Vanishing as the first m_i variables of each color are scaled by xi -> 0, for all 0 < m <= n.
pub fn slope_negative_membership(f: &ShuffleElement) -> bool {
    if f.is_zero() {
        return true;
    }
    let off = offsets(&f.degree);
    let colors = var_colors(&f.degree);
    let ranges: Vec<Vec<usize>> = f.degree.iter().map(|&n| (0..=n).collect()).collect();
    for m in ranges.iter().multi_cartesian_product() {
        if m.iter().all(|&&x| x == 0) {
            continue;
        }
        let vars: Vec<usize> = (0..f.degree.len())
            .flat_map(|i| {
                let o = off[i];
                (0..*m[i]).map(move |a| o + a)
            })
            .collect();
        let mut both = 0;
        for (ia, &a) in vars.iter().enumerate() {
            for &b in &vars[ia + 1..] {
                if colors[a] != colors[b] {
                    both += 1;
                }
            }
        }
        let val = f.num.min_subset_degree(&vars).expect("nonzero") - both;
        if val < 1 {
            return false;
        }
    }
    true
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ShuffleJson {
    /// n_i per color.
    pub degree: Vec<usize>,
    /// Numerator terms: exponents keyed "i,a" (1-based color and slot), coefficient as a Scalar string.
    pub terms: Vec<(BTreeMap<String, i32>, String)>,
    pub sign_convention: String,
}

impl ShuffleElement {
    pub fn to_json(&self) -> ShuffleJson {
        let colors = var_colors(&self.degree);
        let off = offsets(&self.degree);
        let terms = self
            .num
            .terms()
            .iter()
            .map(|(e, c)| {
                let m = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(v, &x)| (format!("{},{}", colors[v] + 1, v - off[colors[v]] + 1), x))
                    .collect();
                (m, scalar_to_string(c))
            })
            .collect();
        ShuffleJson {
            degree: self.degree.clone(),
            terms,
            sign_convention: SIGN_CONVENTION.to_string(),
        }
    }

    pub fn from_json(j: &ShuffleJson) -> Result<Self, ShuffleError> {
        let off = offsets(&j.degree);
        let n: usize = j.degree.iter().sum();
        let bad = |msg: String| ShuffleError::Parse(ParseError { pos: 0, msg });
        if j.sign_convention != SIGN_CONVENTION {
            return Err(bad(format!(
                "unsupported sign convention '{}'",
                j.sign_convention
            )));
        }
        let mut num = LPoly::zero(n);
        for (m, cs) in &j.terms {
            let mut e = vec![0; n];
            for (k, &x) in m {
                let (i, a) = k
                    .split_once(',')
                    .and_then(|(i, a)| {
                        Some((
                            i.trim().parse::<usize>().ok()?,
                            a.trim().parse::<usize>().ok()?,
                        ))
                    })
                    .ok_or_else(|| bad(format!("bad variable key '{}'", k)))?;
                if i == 0 || i > j.degree.len() || a == 0 || a > j.degree[i - 1] {
                    return Err(bad(format!("variable '{}' outside degree", k)));
                }
                e[off[i - 1] + a - 1] += x;
            }
            num.add_term(e, parse_scalar(cs)?);
        }
        Ok(ShuffleElement {
            degree: j.degree.clone(),
            num,
        })
    }
}
