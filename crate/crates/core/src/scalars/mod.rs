//! Exact coefficient field Q(q, a1, ..., am) and monomial points.

mod gcd;
mod parse;
mod point;
mod poly;
mod scalar;
mod upoly;

pub use gcd::{gcd, lcm};
pub use parse::{parse_point, parse_point_at, parse_point_list, parse_scalar};
pub use point::{point_shift, Point};
pub use poly::{gen_name, rat, MPoly, Mono};
pub use scalar::Scalar;
pub use upoly::{taylor_at, TaylorResult, UPoly, URat};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// One arithmetic step; division by zero is reported, never panics.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: Op) -> Result<Scalar, ScalarError> {
    match op {
        Op::Add => Ok(a.add(b)),
        Op::Sub => Ok(a.sub(b)),
        Op::Mul => Ok(a.mul(b)),
        Op::Div => a.div(b),
    }
}

/// Serialized form `NUM / DEN`, parenthesized so it parses back unambiguously.
pub fn scalar_to_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        format!("{}", s.numer())
    } else if let Some(p) = laurent_monomial(s) {
        p.to_string()
    } else {
        format!("({}) / ({})", s.numer(), s.denom())
    }
}

/// c * q^i * a^j ... when both numerator and denominator are single terms.
fn laurent_monomial(s: &Scalar) -> Option<Point> {
    let (n, d) = (s.numer(), s.denom());
    if n.terms.len() != 1 || d.terms.len() != 1 {
        return None;
    }
    let (mn, cn) = n.terms.iter().next()?;
    let (md, cd) = d.terms.iter().next()?;
    let nv = mn.nvars().max(md.nvars());
    let exps = (0..nv)
        .map(|i| mn.get(i) as i64 - md.get(i) as i64)
        .collect();
    Some(Point::new(cn / cd, exps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    #[test]
    fn self_division_is_one() {
        let x = s("(q^2 - 1)/q");
        assert!(scalar_arith(&x, &x, Op::Div).unwrap().is_one());
    }

    #[test]
    fn partial_fractions() {
        let lhs = s("1/(1-q)").add(&s("1/(1+q)"));
        assert_eq!(lhs, s("2/(1-q^2)"));
    }

    #[test]
    fn bivariate_sum_terminates() {
        // used to blow up integer sizes in the remainder sequence
        let x = s("(3*a^2 + 3*q)/(3*q*a + a^2)");
        let y = s("(-q^2 - 2*a)/(-2*q*a^2 + q - 3*a)");
        let z = s("(-2*q^2 + a)/(-3*q*a^2 - 3*a)");
        assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn monomial_quotients_print_as_points() {
        let x = s("3/(2*q^2*a)");
        assert_eq!(scalar_to_string(&x), "3/2*a^-1*q^-2");
        assert_eq!(parse_scalar(&scalar_to_string(&x)).unwrap(), x);
    }

    #[test]
    fn unit_inverse() {
        assert!(Scalar::q_pow(2).mul(&Scalar::q_pow(-2)).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            scalar_arith(&Scalar::one(), &Scalar::zero(), Op::Div),
            Err(ScalarError::DivisionByZero)
        );
        assert!(parse_scalar("1/(q-q)").is_err());
    }

    #[test]
    fn bivariate_gcd_cancels() {
        let x = s("(q^2*a^2 - 1)/(q*a - 1)");
        assert_eq!(x, s("q*a + 1"));
        let y = s("(q^3 - a^3)/(q^2 - a^2)");
        assert_eq!(y, s("(q^2 + q*a + a^2)/(q + a)"));
    }

    #[test]
    fn serialization_round_trip() {
        for t in ["(q^2 - 1)/q", "3/2*a*q - 7", "1/(1-q*a)^2", "0", "-q^-3"] {
            let x = s(t);
            assert_eq!(parse_scalar(&scalar_to_string(&x)).unwrap(), x, "{}", t);
        }
    }

    #[test]
    fn point_shift_examples() {
        let a = Point::a();
        assert_eq!(point_shift(&a, 2), parse_point("1*a^1*q^2").unwrap());
        assert_eq!(point_shift(&parse_point("1*a^1*q^-1").unwrap(), 1), a);
        let p = parse_point("3*a^2").unwrap();
        assert_eq!(point_shift(&p, 0), p);
    }

    #[test]
    fn point_grammar() {
        let p = parse_point("1 * a^1 * q^-2").unwrap();
        assert_eq!(p.q_exp(), -2);
        assert_eq!(p.exp(1), 1);
        assert_eq!(parse_point(&p.to_string()).unwrap(), p);
        let e = parse_point("1 * a^1 * x^2").unwrap_err();
        assert_eq!(e.pos, 10);
        assert!(parse_point("0*a").is_err());
    }

    #[test]
    fn taylor_examples() {
        let a = Point::a();
        let z = UPoly(vec![Scalar::zero(), Scalar::one()]);
        // 1/(z - a) at a
        let f = URat::new(
            UPoly::constant(Scalar::one()),
            UPoly::linear(&a.to_scalar()),
        )
        .unwrap();
        let t = taylor_at(&f, &a, 0);
        assert_eq!(t.pole_order, 1);
        assert!(t.coeffs.is_empty());
        // z/(z-a) at aq
        let f = URat::new(z.clone(), UPoly::linear(&a.to_scalar())).unwrap();
        let t = taylor_at(&f, &a.shift(1), 1);
        assert_eq!(t.pole_order, 0);
        assert_eq!(t.coeffs[0], s("q/(q-1)"));
        // 1/z at a
        let f = URat::new(UPoly::constant(Scalar::one()), z).unwrap();
        let t = taylor_at(&f, &a, 2);
        assert_eq!(t.coeffs, vec![s("1/a"), s("-1/a^2")]);
    }
}
