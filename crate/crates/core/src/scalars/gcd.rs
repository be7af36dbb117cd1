//! Fraction-free multivariate gcd over Q via recursive primitive remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::MPoly;

/// Monic gcd (graded-lex leading coefficient 1). `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    gcd_raw(a, b).monic()
}

fn gcd_raw(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    // strip monomial contents first; this handles the common Laurent-type cases fast
    let ma = a.mono_content();
    let mb = b.mono_content();
    let mg = ma.gcd(&mb);
    let a1 = a.div_mono(&ma);
    let b1 = b.div_mono(&mb);
    if a1.is_constant() || b1.is_constant() {
        return MPoly::monomial(BigRational::one(), mg);
    }
    if a1 == b1 {
        return a1.mul_mono(&mg);
    }
    let nv = a1.nvars().max(b1.nvars());
    // main variable: one used by both, preferring the lowest degree
    let mut best: Option<(usize, u32)> = None;
    for v in 0..nv {
        let da = a1.degree_in(v);
        let db = b1.degree_in(v);
        if da > 0 && db > 0 {
            let d = da.max(db);
            if best.map(|(_, bd)| d < bd).unwrap_or(true) {
                best = Some((v, d));
            }
        }
    }
    // a common factor only involves shared variables, so none shared means gcd 1
    let g = match best {
        None => MPoly::one(),
        Some((v, _)) => gcd_in_var(&a1, &b1, v),
    };
    g.mul_mono(&mg)
}

fn primitive_part(coeffs: &[MPoly]) -> (MPoly, Vec<MPoly>) {
    let mut g = MPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd_raw(&g, c);
        if g.is_constant() {
            break;
        }
    }
    let g = if g.is_constant() {
        MPoly::one()
    } else {
        g.primitive_int()
    };
    let pp = coeffs
        .iter()
        .map(|c| c.div_exact(&g).expect("content divides coefficient"))
        .collect::<Vec<_>>();
    (g, strip_numeric_content(pp))
}

/// Scale so the coefficients are integral with gcd 1; without this the remainder
/// sequence doubles its integer sizes at every step.
fn strip_numeric_content(v: Vec<MPoly>) -> Vec<MPoly> {
    let mut den = BigInt::one();
    for c in v.iter().flat_map(|p| p.terms.values()) {
        den = den.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    for c in v.iter().flat_map(|p| p.terms.values()) {
        g = g.gcd(&(c.numer() * (&den / c.denom())));
    }
    if g.is_zero() {
        return v;
    }
    let s = BigRational::new(den, g);
    v.iter().map(|p| p.scale(&s)).collect()
}

fn trim(v: &mut Vec<MPoly>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()) == Some(true) {
        v.pop();
    }
}

fn deg(v: &[MPoly]) -> isize {
    if v.iter().all(|c| c.is_zero()) {
        -1
    } else {
        v.len() as isize - 1
    }
}

fn prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = deg(b);
    let lb = b[db as usize].clone();
    while deg(&r) >= db && deg(&r) >= 0 {
        let dr = deg(&r) as usize;
        let lr = r[dr].clone();
        let shift = dr - db as usize;
        let mut nr: Vec<MPoly> = r.iter().map(|c| c.mul(&lb)).collect();
        for (i, bc) in b.iter().enumerate() {
            if !bc.is_zero() {
                nr[i + shift] = nr[i + shift].sub(&bc.mul(&lr));
            }
        }
        nr.truncate(dr);
        if nr.is_empty() {
            nr.push(MPoly::zero());
        }
        trim(&mut nr);
        r = nr;
    }
    r
}

fn gcd_in_var(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let (ca, mut pa) = primitive_part(&a.to_univariate(v));
    let (cb, mut pb) = primitive_part(&b.to_univariate(v));
    let c = gcd_raw(&ca, &cb);
    if deg(&pa) < deg(&pb) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        if deg(&pb) < 0 {
            break;
        }
        let r = prem(&pa, &pb);
        if deg(&r) < 0 {
            break;
        }
        if deg(&r) == 0 {
            pb = vec![MPoly::one()];
            break;
        }
        let (_, rp) = primitive_part(&r);
        pa = pb;
        pb = rp;
    }
    let (_, g) = primitive_part(&pb);
    MPoly::from_univariate(&g, v).mul(&c).primitive_int()
}

/// Least common multiple of two monic polynomials.
pub fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
    let g = gcd(a, b);
    a.mul(&b.div_exact(&g).expect("gcd divides")).monic()
}
