use super::point::Point;
use super::scalar::Scalar;
use super::ScalarError;

/// Dense univariate polynomial in z over Scalar; index = degree.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly(pub Vec<Scalar>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        UPoly(vec![c]).trimmed()
    }

    /// z - p
    pub fn linear(p: &Scalar) -> Self {
        UPoly(vec![p.neg(), Scalar::one()])
    }

    pub fn monomial(c: Scalar, e: usize) -> Self {
        let mut v = vec![Scalar::zero(); e + 1];
        v[e] = c;
        UPoly(v).trimmed()
    }

    pub fn trimmed(mut self) -> Self {
        while self.0.last().map(|c| c.is_zero()) == Some(true) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        let t = self.clone().trimmed();
        if t.0.is_empty() {
            None
        } else {
            Some(t.0.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.0.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect()).trimmed()
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return UPoly::zero();
        }
        let mut v = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        UPoly(v).trimmed()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Divide by (z - p) when p is a root; returns None otherwise.
    pub fn div_linear(&self, p: &Scalar) -> Option<UPoly> {
        let n = self.0.len();
        if n == 0 {
            return Some(UPoly::zero());
        }
        let mut out = vec![Scalar::zero(); n.saturating_sub(1)];
        let mut carry = Scalar::zero();
        for i in (0..n).rev() {
            let v = self.0[i].add(&carry.mul(p));
            if i == 0 {
                return if v.is_zero() {
                    Some(UPoly(out).trimmed())
                } else {
                    None
                };
            }
            out[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Coefficients of f(p + t) in t.
    pub fn taylor_shift(&self, p: &Scalar) -> UPoly {
        // repeated synthetic division
        let mut coeffs = self.0.clone();
        let n = coeffs.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = coeffs[j + 1].mul(p);
                coeffs[j] = coeffs[j].add(&t);
            }
        }
        UPoly(coeffs).trimmed()
    }
}

/// Univariate rational function num/den over Scalar.
#[derive(Clone, Debug)]
pub struct URat {
    pub num: UPoly,
    pub den: UPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorResult {
    /// Order of the pole at p (0 when f is regular there).
    pub pole_order: usize,
    /// Leading Taylor coefficients of (z - p)^pole_order * f at p.
    pub coeffs: Vec<Scalar>,
}

impl URat {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(URat { num, den })
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar, ScalarError> {
        self.num.eval(x).div(&self.den.eval(x))
    }
}

/// Pole order at p and the first `order` Taylor coefficients of the regular part.
pub fn taylor_at(f: &URat, p: &Point, order: usize) -> TaylorResult {
    let ps = p.to_scalar();
    let mut num = f.num.clone();
    let mut den = f.den.clone();
    let mut k: isize = 0;
    while let Some(d) = den.div_linear(&ps) {
        if den.degree().is_none() {
            break;
        }
        den = d;
        k += 1;
    }
    // cancel zeros of the numerator against the pole
    while k > 0 && !num.is_zero() {
        match num.div_linear(&ps) {
            Some(n) => {
                num = n;
                k -= 1;
            }
            None => break,
        }
    }
    let n = num.taylor_shift(&ps);
    let d = den.taylor_shift(&ps);
    let d0 = d.coeff(0);
    let d0inv = d0.inv().expect("pole factors were removed");
    // power series division n / d
    let mut out: Vec<Scalar> = Vec::with_capacity(order);
    for i in 0..order {
        let mut acc = n.coeff(i);
        for j in 1..=i {
            let dj = d.coeff(j);
            if !dj.is_zero() {
                acc = acc.sub(&dj.mul(&out[i - j]));
            }
        }
        out.push(acc.mul(&d0inv));
    }
    TaylorResult {
        pole_order: k.max(0) as usize,
        coeffs: out,
    }
}
