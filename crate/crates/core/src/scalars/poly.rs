use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a monomial in the generators q, a1, ..., am.
/// Trailing zeros are trimmed so vectors of different lengths compare correctly.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Mono(v).trimmed()
    }

    pub fn from_vec(v: Vec<u32>) -> Self {
        Mono(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        Mono((0..n).map(|i| self.get(i) + o.get(i)).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..self.0.len()).all(|i| self.get(i) <= o.get(i))
    }

    /// `o / self`, assuming divisibility.
    pub fn div_into(&self, o: &Mono) -> Mono {
        let n = o.0.len().max(self.0.len());
        Mono::from_vec((0..n).map(|i| o.get(i) - self.get(i)).collect())
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let n = self.0.len().min(o.0.len());
        Mono::from_vec((0..n).map(|i| self.get(i).min(o.get(i))).collect())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }
}

// graded lexicographic: total degree first, then lex with q > a1 > a2 ...
impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        let d = self.degree().cmp(&o.degree());
        if d != Ordering::Equal {
            return d;
        }
        let n = self.0.len().max(o.0.len());
        for i in 0..n {
            let c = self.get(i).cmp(&o.get(i));
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Mono, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        MPoly::constant(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        MPoly::constant(rat(n))
    }

    pub fn monomial(c: BigRational, m: Mono) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        MPoly::monomial(BigRational::one(), Mono::var(i, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                == Some(true)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Mono::one()).cloned();
        }
        None
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn lc(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.nvars()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.get(v)).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.get(v)).min().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.get(v) > 0)
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let (big, small) = if self.terms.len() >= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return o.clone();
        }
        let mut r = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact multivariate division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if d.is_one() {
            return Some(self.clone());
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        if d.is_monomial() {
            let mut q = MPoly::zero();
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return None;
                }
                q.terms.insert(lm.div_into(m), c / &lc);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let tm = lm.div_into(&m);
            let tc = &c / &lc;
            rem = rem.sub(&d.mul_mono(&tm).scale(&tc));
            q.add_term(tm, tc);
        }
        Some(q)
    }

    /// Gcd of the monomial supports (largest monomial dividing every term).
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Mono::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    pub fn div_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (m.div_into(k), c.clone()))
                .collect(),
        }
    }

    /// Rescale so the graded-lex leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        self.scale(&(BigRational::one() / lc))
    }

    /// Rescale to integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive_int(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = num_integer::Integer::lcm(&den, c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            g = num_integer::Integer::gcd(&g, &n);
        }
        let mut s = BigRational::new(den, g);
        if self.lc().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn eval(&self, vals: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t *= num_traits::pow(vals[i].clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// View as a univariate polynomial in variable `v`; index = degree in `v`.
    pub fn to_univariate(&self, v: usize) -> Vec<MPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![MPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.get(v) as usize;
            let mut mm = m.0.clone();
            if v < mm.len() {
                mm[v] = 0;
            }
            out[e].add_term(Mono::from_vec(mm), c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[MPoly], v: usize) -> MPoly {
        let mut r = MPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            r = r.add(&c.mul_mono(&Mono::var(v, e as u32)));
        }
        r
    }
}

/// Generator names: index 0 is q, index 1 is a (also accepted as a1), then a2, a3, ...
pub fn gen_name(i: usize) -> String {
    match i {
        0 => "q".to_string(),
        1 => "a".to_string(),
        _ => format!("a{}", i),
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !a.is_one() || m.is_one() {
                parts.push(format!("{}", a));
            }
            for (i, e) in m.0.iter().enumerate() {
                match *e {
                    0 => {}
                    1 => parts.push(gen_name(i)),
                    e => parts.push(format!("{}^{}", gen_name(i), e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
