//! Sparse Laurent polynomials in z_0..z_{n-1} over Scalar.

use std::collections::BTreeMap;

use crate::scalars::Scalar;

pub type Exps = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPoly {
    nvars: usize,
    terms: BTreeMap<Exps, Scalar>,
}

impl LPoly {
    pub fn zero(nvars: usize) -> Self {
        LPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = LPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        LPoly::constant(nvars, Scalar::one())
    }

    pub fn monomial(exps: Exps, c: Scalar) -> Self {
        let mut p = LPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// c * z_i^e.
    pub fn var_pow(nvars: usize, i: usize, e: i32, c: Scalar) -> Self {
        let mut ex = vec![0; nvars];
        ex[i] = e;
        LPoly::monomial(ex, c)
    }

    /// z_s - c * z_t.
    pub fn linear_diff(nvars: usize, s: usize, t: usize, c: &Scalar) -> Self {
        LPoly::var_pow(nvars, s, 1, Scalar::one()).add(&LPoly::var_pow(nvars, t, 1, c.neg()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, e: Exps, c: Scalar) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &LPoly) -> LPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn add_assign(&mut self, o: &LPoly) {
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> LPoly {
        LPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &LPoly) -> LPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> LPoly {
        if s.is_zero() {
            return LPoly::zero(self.nvars);
        }
        LPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.mul(s)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &LPoly) -> LPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = LPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.mul(c2));
            }
        }
        r
    }

    /// Multiply by the monomial z^e.
    pub fn shift(&self, e: &[i32]) -> LPoly {
        LPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (x.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn total_degree_range(&self) -> Option<(i32, i32)> {
        let degs = self.terms.keys().map(|e| e.iter().sum::<i32>());
        let mut it = degs.peekable();
        it.peek()?;
        let (mut lo, mut hi) = (i32::MAX, i32::MIN);
        for d in it {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Some((lo, hi))
    }

    pub fn degree_range_in(&self, v: usize) -> Option<(i32, i32)> {
        if self.terms.is_empty() {
            return None;
        }
        let lo = self.terms.keys().map(|e| e[v]).min().expect("nonempty");
        let hi = self.terms.keys().map(|e| e[v]).max().expect("nonempty");
        Some((lo, hi))
    }

    /// Minimal degree over monomials of the sum of exponents in `vars`.
    pub fn min_subset_degree(&self, vars: &[usize]) -> Option<i32> {
        self.terms
            .keys()
            .map(|e| vars.iter().map(|&v| e[v]).sum::<i32>())
            .min()
    }

    /// Rename variables into a space of `nvars` variables: old variable k becomes `map[k]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> LPoly {
        let mut r = LPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (k, &x) in e.iter().enumerate() {
                ne[map[k]] += x;
            }
            r.add_term(ne, c.clone());
        }
        r
    }

    /// Substitute z_v = c * z_t (v != t); z_v then no longer occurs.
    pub fn subst_scaled(&self, v: usize, t: usize, c: &Scalar) -> LPoly {
        let mut r = LPoly::zero(self.nvars);
        let mut pows: BTreeMap<i32, Scalar> = BTreeMap::new();
        for (e, coef) in &self.terms {
            let k = e[v];
            let f = pows
                .entry(k)
                .or_insert_with(|| c.pow(k as i64).expect("nonzero substitution factor"))
                .clone();
            let mut ne = e.clone();
            ne[t] += k;
            ne[v] = 0;
            r.add_term(ne, coef.mul(&f));
        }
        r
    }

    /// Substitute z_v = value; z_v no longer occurs.
    pub fn subst_value(&self, v: usize, value: &Scalar) -> LPoly {
        let mut r = LPoly::zero(self.nvars);
        let mut pows: BTreeMap<i32, Scalar> = BTreeMap::new();
        for (e, coef) in &self.terms {
            let k = e[v];
            let f = pows
                .entry(k)
                .or_insert_with(|| value.pow(k as i64).expect("nonzero value"))
                .clone();
            let mut ne = e.clone();
            ne[v] = 0;
            r.add_term(ne, coef.mul(&f));
        }
        r
    }

    pub fn eval(&self, vals: &[Scalar]) -> Scalar {
        let mut p = self.clone();
        for (v, x) in vals.iter().enumerate() {
            p = p.subst_value(v, x);
        }
        p.coeff(&vec![0; self.nvars])
    }

    /// Exact quotient by (z_s - c z_t), or None if it does not divide.
    pub fn div_linear(&self, s: usize, t: usize, c: &Scalar) -> Option<LPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        // Group by the exponent of z_s; the rest of the monomial is the key.
        let mut by_deg: BTreeMap<i32, LPoly> = BTreeMap::new();
        for (e, coef) in &self.terms {
            let mut rest = e.clone();
            rest[s] = 0;
            by_deg
                .entry(e[s])
                .or_insert_with(|| LPoly::zero(self.nvars))
                .add_term(rest, coef.clone());
        }
        let lo = *by_deg.keys().next().expect("nonempty");
        let hi = *by_deg.keys().next_back().expect("nonempty");
        let mut czt = vec![0; self.nvars];
        czt[t] = 1;
        let czt = LPoly::monomial(czt, c.clone());
        // Q = sum_k z_s^k R_k with R_{k-1} = Q_k + c z_t R_k
        let mut quotient = LPoly::zero(self.nvars);
        let mut carry = LPoly::zero(self.nvars);
        let mut k = hi;
        while k > lo {
            let qk = by_deg
                .get(&k)
                .cloned()
                .unwrap_or_else(|| LPoly::zero(self.nvars));
            let rk1 = qk.add(&czt.mul(&carry));
            let mut ex = vec![0; self.nvars];
            ex[s] = k - 1;
            quotient.add_assign(&rk1.shift(&ex));
            carry = rk1;
            k -= 1;
        }
        let q0 = by_deg
            .get(&lo)
            .cloned()
            .unwrap_or_else(|| LPoly::zero(self.nvars));
        if q0.add(&czt.mul(&carry)).is_zero() {
            Some(quotient)
        } else {
            None
        }
    }

    /// Apply a permutation of variables: variable k goes to perm[k].
    pub fn permute(&self, perm: &[usize]) -> LPoly {
        self.embed(self.nvars, perm)
    }
}
