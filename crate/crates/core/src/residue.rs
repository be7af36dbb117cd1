//! Rational functions with linear denominators, and the three one-variable contour
//! operations used by pairings and residue functionals:
//! residue at a monomial point, and the dz/(2 pi i z) integral over a circle around 0 or infinity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::laurent::LPoly;
use crate::scalars::{Point, Scalar};

/// A denominator factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// z_v - p
    Pt(usize, Point),
    /// z_u - c z_v with u < v
    Rel(usize, usize, Point),
}

impl Factor {
    fn involves(&self, a: usize) -> bool {
        match self {
            Factor::Pt(v, _) => *v == a,
            Factor::Rel(u, v, _) => *u == a || *v == a,
        }
    }
}

type Den = Vec<(Factor, u32)>;

/// Sum of numerator / product-of-factors terms, keyed by denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RExpr {
    nvars: usize,
    terms: BTreeMap<Den, LPoly>,
}

/// Generalized binomial coefficient C(k, j) for any integer k.
pub fn binom(k: i64, j: u32) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j as i64 {
        num *= BigInt::from(k - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

/// C(m + j - 1, j): coefficient of u^j in (1 - u)^{-m}.
fn neg_binom(m: u32, j: u32) -> Scalar {
    Scalar::from_rat(binom(m as i64 + j as i64 - 1, j))
}

fn merge_den(a: &Den, b: &Den) -> Den {
    let mut m: BTreeMap<Factor, u32> = a.iter().cloned().collect();
    for (f, k) in b {
        *m.entry(f.clone()).or_insert(0) += k;
    }
    m.into_iter().collect()
}

/// Truncated power series with LPoly coefficients.
fn series_mul(a: &[LPoly], b: &[LPoly], len: usize, nvars: usize) -> Vec<LPoly> {
    let mut out = vec![LPoly::zero(nvars); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if !y.is_zero() {
                out[i + j].add_assign(&x.mul(y));
            }
        }
    }
    out
}

fn rseries_mul(a: &[RExpr], b: &[RExpr], len: usize, nvars: usize) -> Vec<RExpr> {
    let mut out = vec![RExpr::zero(nvars); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

impl RExpr {
    pub fn zero(nvars: usize) -> Self {
        RExpr {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: LPoly) -> Self {
        let mut r = RExpr::zero(p.nvars());
        if !p.is_zero() {
            r.terms.insert(Vec::new(), p);
        }
        r
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        RExpr::from_poly(LPoly::constant(nvars, c))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, den: Den, num: LPoly) {
        if num.is_zero() {
            return;
        }
        match self.terms.get_mut(&den) {
            Some(p) => {
                p.add_assign(&num);
                if p.is_zero() {
                    self.terms.remove(&den);
                }
            }
            None => {
                self.terms.insert(den, num);
            }
        }
    }

    pub fn add(&self, o: &RExpr) -> RExpr {
        let mut r = self.clone();
        for (d, p) in &o.terms {
            r.add_term(d.clone(), p.clone());
        }
        r
    }

    pub fn neg(&self) -> RExpr {
        RExpr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(d, p)| (d.clone(), p.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> RExpr {
        let mut r = RExpr::zero(self.nvars);
        for (d, p) in &self.terms {
            r.add_term(d.clone(), p.scale(s));
        }
        r
    }

    pub fn mul(&self, o: &RExpr) -> RExpr {
        let mut r = RExpr::zero(self.nvars);
        for (d1, p1) in &self.terms {
            for (d2, p2) in &o.terms {
                r.add_term(merge_den(d1, d2), p1.mul(p2));
            }
        }
        r
    }

    pub fn mul_poly(&self, p: &LPoly) -> RExpr {
        let mut r = RExpr::zero(self.nvars);
        for (d, q) in &self.terms {
            r.add_term(d.clone(), q.mul(p));
        }
        r
    }

    /// Divide by (z_v - p)^m; p must be nonzero (poles at 0 belong in the numerator).
    pub fn div_pt(&self, v: usize, p: &Point, m: u32) -> RExpr {
        let f = vec![(Factor::Pt(v, p.clone()), m)];
        let mut r = RExpr::zero(self.nvars);
        for (d, q) in &self.terms {
            r.add_term(merge_den(d, &f), q.clone());
        }
        r
    }

    /// Divide by (z_u - c z_v)^m for u != v.
    pub fn div_rel(&self, u: usize, v: usize, c: &Point, m: u32) -> RExpr {
        assert_ne!(u, v);
        let (f, scale) = if u < v {
            (Factor::Rel(u, v, c.clone()), Scalar::one())
        } else {
            // z_u - c z_v = -c (z_v - c^{-1} z_u)
            let mc = c.to_scalar().neg();
            (
                Factor::Rel(v, u, c.inv()),
                mc.pow(-(m as i64)).expect("nonzero"),
            )
        };
        let fd = vec![(f, m)];
        let mut r = RExpr::zero(self.nvars);
        for (d, q) in &self.terms {
            r.add_term(merge_den(d, &fd), q.scale(&scale));
        }
        r
    }

    /// The value once every variable has been integrated out.
    pub fn value(&self) -> Option<Scalar> {
        let mut acc = Scalar::zero();
        let zero = vec![0; self.nvars];
        for (d, p) in &self.terms {
            if !d.is_empty() {
                return None;
            }
            for (e, c) in p.terms() {
                if *e != zero {
                    return None;
                }
                acc = acc.add(c);
            }
        }
        Some(acc)
    }

    /// Evaluate at a full point (all variables given).
    pub fn eval(&self, vals: &[Scalar]) -> Result<Scalar, crate::scalars::ScalarError> {
        let mut acc = Scalar::zero();
        for (d, p) in &self.terms {
            let mut den = Scalar::one();
            for (f, m) in d {
                let v = match f {
                    Factor::Pt(v, pt) => vals[*v].sub(&pt.to_scalar()),
                    Factor::Rel(u, v, c) => vals[*u].sub(&c.to_scalar().mul(&vals[*v])),
                };
                den = den.mul(&v.pow(*m as i64)?);
            }
            acc = acc.add(&p.eval(vals).div(&den)?);
        }
        Ok(acc)
    }

    /// Res_{z_a = x} (no 1/z_a factor).
    pub fn residue_at(&self, a: usize, x: &Point) -> RExpr {
        let n = self.nvars;
        let xs = x.to_scalar();
        let mut out = RExpr::zero(n);
        for (den, num) in &self.terms {
            let mut m0 = 0u32;
            let mut rest: Den = Vec::new();
            let mut involved: Vec<(Factor, u32)> = Vec::new();
            for (f, m) in den {
                match f {
                    Factor::Pt(v, p) if *v == a && p == x => m0 += m,
                    f if f.involves(a) => involved.push((f.clone(), *m)),
                    _ => rest.push((f.clone(), *m)),
                }
            }
            if m0 == 0 {
                continue;
            }
            let len = m0 as usize;
            // numerator expanded at z_a = x + t
            let mut nser: Vec<LPoly> = vec![LPoly::zero(n); len];
            for (e, c) in num.terms() {
                let k = e[a];
                let mut ne = e.clone();
                ne[a] = 0;
                for j in 0..len {
                    let b = binom(k as i64, j as u32);
                    if b == BigRational::from_integer(0.into()) {
                        continue;
                    }
                    let coef = c
                        .mul(&xs.pow(k as i64 - j as i64).expect("x nonzero"))
                        .scale_rat(&b);
                    nser[j].add_term(ne.clone(), coef);
                }
            }
            let mut ser: Vec<RExpr> = nser.into_iter().map(RExpr::from_poly).collect();
            for (f, m) in &involved {
                let mut fs: Vec<RExpr> = Vec::with_capacity(len);
                match f {
                    Factor::Pt(_, p) => {
                        // (x - p + t)^{-m}
                        let dx = xs.sub(&p.to_scalar());
                        let lead = dx.pow(-(*m as i64)).expect("distinct points");
                        let ratio = dx.inv().expect("distinct points").neg();
                        for j in 0..len {
                            let c = lead
                                .mul(&ratio.pow(j as i64).expect("nonzero"))
                                .mul(&neg_binom(*m, j as u32));
                            fs.push(RExpr::constant(n, c));
                        }
                    }
                    Factor::Rel(u, v, c) if *u == a => {
                        // (x + t - c z_v)^{-m} = sum_j C(m+j-1,j) (-1)^j (-c)^{-m-j} t^j (z_v - x/c)^{-(m+j)}
                        let w = x.div(c);
                        let mc = c.to_scalar().neg();
                        for j in 0..len {
                            let mut coef = mc
                                .pow(-(*m as i64) - j as i64)
                                .expect("nonzero")
                                .mul(&neg_binom(*m, j as u32));
                            if j % 2 == 1 {
                                coef = coef.neg();
                            }
                            fs.push(RExpr::constant(n, coef).div_pt(*v, &w, m + j as u32));
                        }
                    }
                    Factor::Rel(u, _, c) => {
                        // (z_u - c x - c t)^{-m} = sum_j C(m+j-1,j) c^j t^j (z_u - c x)^{-(m+j)}
                        let w = c.mul(x);
                        let cs = c.to_scalar();
                        for j in 0..len {
                            let coef = cs
                                .pow(j as i64)
                                .expect("nonzero")
                                .mul(&neg_binom(*m, j as u32));
                            fs.push(RExpr::constant(n, coef).div_pt(*u, &w, m + j as u32));
                        }
                    }
                }
                ser = rseries_mul(&ser, &fs, len, n);
            }
            let top = &ser[len - 1];
            let restd = rest;
            for (d, p) in &top.terms {
                out.add_term(merge_den(d, &restd), p.clone());
            }
        }
        out
    }

    /// Integral of f dz_a / (2 pi i z_a) over a circle around 0 enclosing no other pole:
    /// the z_a^0 coefficient of the expansion at z_a = 0.
    pub fn ct_zero(&self, a: usize) -> RExpr {
        let n = self.nvars;
        let mut out = RExpr::zero(n);
        for (den, num) in &self.terms {
            let (lo, _) = match num.degree_range_in(a) {
                Some(r) => r,
                None => continue,
            };
            if lo > 0 {
                continue;
            }
            let len = (-lo) as usize + 1;
            let mut rest: Den = Vec::new();
            let mut ser: Vec<LPoly> = vec![LPoly::zero(n); len];
            ser[0] = LPoly::one(n);
            for (f, m) in den {
                if !f.involves(a) {
                    rest.push((f.clone(), *m));
                    continue;
                }
                let mut fs: Vec<LPoly> = Vec::with_capacity(len);
                match f {
                    Factor::Pt(_, p) => {
                        // (z - p)^{-m} = (-p)^{-m} sum C(m+j-1,j) p^{-j} z^j
                        let ps = p.to_scalar();
                        let lead = ps.neg().pow(-(*m as i64)).expect("nonzero");
                        for j in 0..len {
                            let c = lead
                                .mul(&ps.pow(-(j as i64)).expect("nonzero"))
                                .mul(&neg_binom(*m, j as u32));
                            fs.push(LPoly::constant(n, c));
                        }
                    }
                    Factor::Rel(u, v, c) if *u == a => {
                        // (z_a - c z_v)^{-m} = (-c z_v)^{-m} sum C(m+j-1,j) (c z_v)^{-j} z_a^j
                        let cs = c.to_scalar();
                        let lead = cs.neg().pow(-(*m as i64)).expect("nonzero");
                        for j in 0..len {
                            let coef = lead
                                .mul(&cs.pow(-(j as i64)).expect("nonzero"))
                                .mul(&neg_binom(*m, j as u32));
                            fs.push(LPoly::var_pow(n, *v, -(*m as i32) - j as i32, coef));
                        }
                    }
                    Factor::Rel(u, _, c) => {
                        // (z_u - c z_a)^{-m} = z_u^{-m} sum C(m+j-1,j) c^j z_u^{-j} z_a^j
                        let cs = c.to_scalar();
                        for j in 0..len {
                            let coef = cs
                                .pow(j as i64)
                                .expect("nonzero")
                                .mul(&neg_binom(*m, j as u32));
                            fs.push(LPoly::var_pow(n, *u, -(*m as i32) - j as i32, coef));
                        }
                    }
                }
                ser = series_mul(&ser, &fs, len, n);
            }
            let mut acc = LPoly::zero(n);
            for (e, c) in num.terms() {
                if e[a] > 0 {
                    continue;
                }
                let j = (-e[a]) as usize;
                let mut ne = e.clone();
                ne[a] = 0;
                acc.add_assign(&ser[j].mul(&LPoly::monomial(ne, c.clone())));
            }
            out.add_term(rest, acc);
        }
        out
    }

    /// Integral of f dz_a / (2 pi i z_a) over a circle around infinity enclosing every other pole:
    /// the z_a^0 coefficient of the expansion at z_a = infinity.
    pub fn ct_inf(&self, a: usize) -> RExpr {
        let n = self.nvars;
        let mut out = RExpr::zero(n);
        for (den, num) in &self.terms {
            let (_, hi) = match num.degree_range_in(a) {
                Some(r) => r,
                None => continue,
            };
            let big_m: i32 = den
                .iter()
                .filter(|(f, _)| f.involves(a))
                .map(|(_, m)| *m as i32)
                .sum();
            if hi < big_m {
                continue;
            }
            let len = (hi - big_m) as usize + 1;
            let mut rest: Den = Vec::new();
            let mut ser: Vec<LPoly> = vec![LPoly::zero(n); len];
            ser[0] = LPoly::one(n);
            for (f, m) in den {
                if !f.involves(a) {
                    rest.push((f.clone(), *m));
                    continue;
                }
                let mut fs: Vec<LPoly> = Vec::with_capacity(len);
                match f {
                    Factor::Pt(_, p) => {
                        // (z - p)^{-m} = z^{-m} sum C(m+j-1,j) p^j z^{-j}
                        let ps = p.to_scalar();
                        for j in 0..len {
                            let c = ps
                                .pow(j as i64)
                                .expect("nonzero")
                                .mul(&neg_binom(*m, j as u32));
                            fs.push(LPoly::constant(n, c));
                        }
                    }
                    Factor::Rel(u, v, c) if *u == a => {
                        // (z_a - c z_v)^{-m} = z_a^{-m} sum C(m+j-1,j) (c z_v)^j z_a^{-j}
                        let cs = c.to_scalar();
                        for j in 0..len {
                            let coef = cs
                                .pow(j as i64)
                                .expect("nonzero")
                                .mul(&neg_binom(*m, j as u32));
                            fs.push(LPoly::var_pow(n, *v, j as i32, coef));
                        }
                    }
                    Factor::Rel(u, _, c) => {
                        // (z_u - c z_a)^{-m} = (-c)^{-m} z_a^{-m} sum C(m+j-1,j) (z_u / c)^j z_a^{-j}
                        let cs = c.to_scalar();
                        let lead = cs.neg().pow(-(*m as i64)).expect("nonzero");
                        for j in 0..len {
                            let coef = lead
                                .mul(&cs.pow(-(j as i64)).expect("nonzero"))
                                .mul(&neg_binom(*m, j as u32));
                            fs.push(LPoly::var_pow(n, *u, j as i32, coef));
                        }
                    }
                }
                ser = series_mul(&ser, &fs, len, n);
            }
            let mut acc = LPoly::zero(n);
            for (e, c) in num.terms() {
                let j = e[a] - big_m;
                if j < 0 {
                    continue;
                }
                let mut ne = e.clone();
                ne[a] = 0;
                acc.add_assign(&ser[j as usize].mul(&LPoly::monomial(ne, c.clone())));
            }
            out.add_term(rest, acc);
        }
        out
    }

    /// Poles of z_a at constant points, with their orders in this representation.
    pub fn point_poles(&self, a: usize) -> BTreeMap<Point, u32> {
        let mut m = BTreeMap::new();
        for den in self.terms.keys() {
            for (f, k) in den {
                if let Factor::Pt(v, p) = f {
                    if *v == a {
                        let e = m.entry(p.clone()).or_insert(0);
                        *e = (*e).max(*k);
                    }
                }
            }
        }
        m
    }
}
