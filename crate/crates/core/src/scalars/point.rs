use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{gen_name, MPoly, Mono};
use super::scalar::Scalar;

/// A unit of Q(q, a1..am): nonzero rational times a Laurent monomial in the generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Point {
    coeff: BigRational,
    exps: Vec<i64>,
}

impl Point {
    pub fn new(coeff: BigRational, exps: Vec<i64>) -> Self {
        assert!(!coeff.is_zero(), "a point must be nonzero");
        let mut p = Point { coeff, exps };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn one() -> Self {
        Point::new(BigRational::one(), vec![])
    }

    /// The generator `a` (index 1).
    pub fn a() -> Self {
        Point::new(BigRational::one(), vec![0, 1])
    }

    pub fn gen(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Point::new(BigRational::one(), e)
    }

    pub fn q_pow(k: i64) -> Self {
        Point::new(BigRational::one(), vec![k])
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exp(&self, i: usize) -> i64 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn q_exp(&self) -> i64 {
        self.exp(0)
    }

    pub fn mul(&self, o: &Point) -> Point {
        let n = self.exps.len().max(o.exps.len());
        Point::new(
            &self.coeff * &o.coeff,
            (0..n).map(|i| self.exp(i) + o.exp(i)).collect(),
        )
    }

    pub fn inv(&self) -> Point {
        Point::new(
            BigRational::one() / &self.coeff,
            self.exps.iter().map(|e| -e).collect(),
        )
    }

    pub fn div(&self, o: &Point) -> Point {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i64) -> Point {
        let c = if k >= 0 {
            num_traits::pow(self.coeff.clone(), k as usize)
        } else {
            num_traits::pow(BigRational::one() / &self.coeff, (-k) as usize)
        };
        Point::new(c, self.exps.iter().map(|e| e * k).collect())
    }

    /// x * q^k.
    pub fn shift(&self, k: i64) -> Point {
        self.mul(&Point::q_pow(k))
    }

    /// True when `o = self * q^k` for some integer k; returns that k.
    pub fn q_offset_to(&self, o: &Point) -> Option<i64> {
        let r = o.div(self);
        if r.coeff.is_one() && r.exps.len() <= 1 {
            Some(r.exp(0))
        } else {
            None
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        let mut num = Mono::one();
        let mut den = Mono::one();
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                num = num.mul(&Mono::var(i, *e as u32));
            } else if *e < 0 {
                den = den.mul(&Mono::var(i, (-e) as u32));
            }
        }
        Scalar::new(
            MPoly::monomial(self.coeff.clone(), num),
            MPoly::monomial(BigRational::one(), den),
        )
        .expect("monomial denominator is nonzero")
    }

    pub fn eval(&self, vals: &[BigRational]) -> BigRational {
        let mut acc = self.coeff.clone();
        for (i, e) in self.exps.iter().enumerate() {
            if *e >= 0 {
                acc *= num_traits::pow(vals[i].clone(), *e as usize);
            } else {
                acc /= num_traits::pow(vals[i].clone(), (-e) as usize);
            }
        }
        acc
    }
}

/// x * q^k.
pub fn point_shift(x: &Point, k: i64) -> Point {
    x.shift(k)
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        // a before q reads more naturally: "1*a^1*q^-2"
        let mut order: Vec<usize> = (1..self.exps.len()).collect();
        order.push(0);
        for i in order {
            let e = self.exp(i);
            if e != 0 {
                write!(f, "*{}^{}", gen_name(i), e)?;
            }
        }
        Ok(())
    }
}
