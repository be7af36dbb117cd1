use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{MPoly, Mono};
use super::ScalarError;

/// Exact element of Q(q, a1, ..., am) kept as a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            num: MPoly::from_int(n),
            den: MPoly::one(),
        }
    }

    pub fn from_rat(r: BigRational) -> Self {
        Scalar {
            num: MPoly::constant(r),
            den: MPoly::one(),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        Scalar {
            num: p,
            den: MPoly::one(),
        }
    }

    /// q^k for any integer k.
    pub fn q_pow(k: i64) -> Self {
        Scalar::gen_pow(0, k)
    }

    /// Generator `i` (0 = q, 1 = a, ...) raised to an integer power.
    pub fn gen_pow(i: usize, k: i64) -> Self {
        let m = Mono::var(i, k.unsigned_abs() as u32);
        let p = MPoly::monomial(BigRational::one(), m);
        if k >= 0 {
            Scalar {
                num: p,
                den: MPoly::one(),
            }
        } else {
            Scalar {
                num: MPoly::one(),
                den: p,
            }
        }
    }

    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// Build num/den and bring it to canonical form.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::canon(num, den))
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    fn canon(num: MPoly, den: MPoly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_constant() {
            let c = den.lc();
            return Scalar {
                num: num.scale(&(BigRational::one() / c)),
                den: MPoly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = d.lc();
        let inv = BigRational::one() / lc;
        Scalar {
            num: n.scale(&inv),
            den: d.scale(&inv),
        }
    }

    /// Re-normalize; a no-op on values built through the public API.
    pub fn canonicalize(&self) -> Scalar {
        Scalar::canon(self.num.clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Scalar::canon(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.den).add(&o.num),
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return Scalar {
                num: o.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &o.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        let den = self.den.mul(&d2);
        Scalar::canon(num, den)
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return o.clone();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.num),
                den: MPoly::one(),
            };
        }
        // cross-cancel before multiplying to keep sizes down
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.lc();
        let inv = BigRational::one() / lc;
        Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let lc = self.num.lc();
        let s = BigRational::one() / lc;
        Ok(Scalar {
            num: self.den.scale(&s),
            den: self.num.scale(&s),
        })
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        if k >= 0 {
            let e = k as u32;
            Ok(Scalar {
                num: self.num.pow(e),
                den: self.den.pow(e),
            })
        } else {
            self.inv()?.pow(-k)
        }
    }

    pub fn scale_rat(&self, r: &BigRational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    /// Evaluate at rational values of the generators (index 0 = q).
    pub fn eval(&self, vals: &[BigRational]) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(vals);
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.num.eval(vals) / d)
    }

    /// Number of generator slots referenced (1 + index of the last generator used).
    pub fn nvars(&self) -> usize {
        self.num.nvars().max(self.den.nvars())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                Scalar::$f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                Scalar::$f(&self, &o)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::div`] for a checked version.
    fn div(self, o: &Scalar) -> Scalar {
        Scalar::div(self, o).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}
