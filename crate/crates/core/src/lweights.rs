//! l-weights: tuples of rational functions in z with zeros and poles at monomial points.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CartanDatum, Coweight};
use crate::scalars::{
    parse_point_at, parse_scalar, scalar_to_string, ParseError, Point, Scalar, ScalarError,
};

#[derive(Debug, Error)]
pub enum LWeightError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("component {0}: zero and pole counts differ, so it is not invertible at infinity")]
    NotBalanced(usize),
    #[error("component {0}: leading scalar must be nonzero")]
    ZeroLeading(usize),
    #[error("expected {expected} components, got {got}")]
    Rank { expected: usize, got: usize },
    #[error("quotient is not constant in z: {0}")]
    NotConstant(String),
}

/// One component c * z^val0 * prod (z - p) / prod (z - p').
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub c: Scalar,
    pub val0: i64,
    pub zeros: BTreeMap<Point, u32>,
    pub poles: BTreeMap<Point, u32>,
}

impl Component {
    pub fn one() -> Self {
        Component {
            c: Scalar::one(),
            val0: 0,
            zeros: BTreeMap::new(),
            poles: BTreeMap::new(),
        }
    }

    fn cancel(mut self) -> Self {
        let common: Vec<Point> = self
            .zeros
            .keys()
            .filter(|p| self.poles.contains_key(*p))
            .cloned()
            .collect();
        for p in common {
            let k = self.zeros[&p].min(self.poles[&p]);
            for m in [&mut self.zeros, &mut self.poles] {
                let e = m.get_mut(&p).expect("present");
                *e -= k;
                if *e == 0 {
                    m.remove(&p);
                }
            }
        }
        self
    }

    fn count(m: &BTreeMap<Point, u32>) -> i64 {
        m.values().map(|k| *k as i64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        Self::count(&self.zeros) + self.val0 == Self::count(&self.poles)
    }

    pub fn mul(&self, o: &Component) -> Component {
        let mut r = self.clone();
        r.c = r.c.mul(&o.c);
        r.val0 += o.val0;
        for (p, k) in &o.zeros {
            *r.zeros.entry(p.clone()).or_insert(0) += k;
        }
        for (p, k) in &o.poles {
            *r.poles.entry(p.clone()).or_insert(0) += k;
        }
        r.cancel()
    }

    pub fn inv(&self) -> Component {
        Component {
            c: self.c.inv().expect("nonzero leading scalar"),
            val0: -self.val0,
            zeros: self.poles.clone(),
            poles: self.zeros.clone(),
        }
    }

    /// Some(c) when the component is the constant c.
    pub fn as_constant(&self) -> Option<&Scalar> {
        if self.val0 == 0 && self.zeros.is_empty() && self.poles.is_empty() {
            Some(&self.c)
        } else {
            None
        }
    }

    pub fn eval(&self, z: &Scalar) -> Result<Scalar, ScalarError> {
        let mut v = self.c.mul(&z.pow(self.val0)?);
        for (p, k) in &self.zeros {
            v = v.mul(&z.sub(&p.to_scalar()).pow(*k as i64)?);
        }
        for (p, k) in &self.poles {
            v = v.div(&z.sub(&p.to_scalar()).pow(*k as i64)?)?;
        }
        Ok(v)
    }

    pub fn parse(s: &str, offset: usize) -> Result<Component, ParseError> {
        let mut parts = s.split('|');
        let head = parts.next().unwrap_or("");
        let c = parse_scalar(head.trim()).map_err(|e| ParseError {
            pos: e.pos + offset,
            msg: e.msg,
        })?;
        let mut comp = Component {
            c,
            val0: 0,
            zeros: BTreeMap::new(),
            poles: BTreeMap::new(),
        };
        let mut pos = offset + head.len() + 1;
        for part in parts {
            let t = part.trim_start();
            let lead = part.len() - t.len();
            let (is_zero, rest, skip) = if let Some(r) = t.strip_prefix("zeros:") {
                (true, r, 6)
            } else if let Some(r) = t.strip_prefix("poles:") {
                (false, r, 6)
            } else {
                return Err(ParseError {
                    pos: pos + lead,
                    msg: "expected 'zeros:' or 'poles:'".into(),
                });
            };
            let mut off = pos + lead + skip;
            for item in rest.split(',') {
                let it = item.trim();
                if !it.is_empty() {
                    if it == "0" {
                        comp.val0 += if is_zero { 1 } else { -1 };
                    } else {
                        let p = parse_point_at(item, off)?;
                        let m = if is_zero {
                            &mut comp.zeros
                        } else {
                            &mut comp.poles
                        };
                        *m.entry(p).or_insert(0) += 1;
                    }
                }
                off += item.len() + 1;
            }
            pos += part.len() + 1;
        }
        if comp.c.is_zero() {
            return Err(ParseError {
                pos: offset,
                msg: "leading scalar must be nonzero".into(),
            });
        }
        Ok(comp.cancel())
    }
}

fn list(m: &BTreeMap<Point, u32>, zeros_at_0: i64) -> String {
    let mut items: Vec<String> = Vec::new();
    for _ in 0..zeros_at_0.max(0) {
        items.push("0".into());
    }
    for (p, k) in m {
        for _ in 0..*k {
            items.push(p.to_string());
        }
    }
    items.join(", ")
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", scalar_to_string(&self.c))?;
        let z = list(&self.zeros, self.val0);
        let p = list(&self.poles, -self.val0);
        if !z.is_empty() || !p.is_empty() {
            write!(f, " | zeros: {} | poles: {}", z, p)?;
        }
        Ok(())
    }
}

/// An I-tuple of rational functions, regular and invertible at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LWeight {
    pub comps: Vec<Component>,
}

impl LWeight {
    pub fn one(rank: usize) -> Self {
        LWeight {
            comps: vec![Component::one(); rank],
        }
    }

    pub fn new(comps: Vec<Component>) -> Result<Self, LWeightError> {
        for (i, c) in comps.iter().enumerate() {
            if c.c.is_zero() {
                return Err(LWeightError::ZeroLeading(i));
            }
            if !c.is_balanced() {
                return Err(LWeightError::NotBalanced(i));
            }
        }
        Ok(LWeight {
            comps: comps.into_iter().map(Component::cancel).collect(),
        })
    }

    /// Components separated by ';', each in the form `c | zeros: p1, p2 | poles: p3, p4`.
    pub fn parse(s: &str) -> Result<Self, LWeightError> {
        let mut comps = Vec::new();
        let mut off = 0;
        for part in s.split(';') {
            comps.push(Component::parse(part, off)?);
            off += part.len() + 1;
        }
        LWeight::new(comps)
    }

    pub fn parse_rank(s: &str, rank: usize) -> Result<Self, LWeightError> {
        let w = LWeight::parse(s)?;
        if w.rank() != rank {
            return Err(LWeightError::Rank {
                expected: rank,
                got: w.rank(),
            });
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn mul(&self, o: &LWeight) -> LWeight {
        LWeight {
            comps: self
                .comps
                .iter()
                .zip(&o.comps)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn inv(&self) -> LWeight {
        LWeight {
            comps: self.comps.iter().map(Component::inv).collect(),
        }
    }

    pub fn div(&self, o: &LWeight) -> LWeight {
        self.mul(&o.inv())
    }

    pub fn as_constant(&self) -> Option<Vec<Scalar>> {
        self.comps
            .iter()
            .map(|c| c.as_constant().cloned())
            .collect()
    }

    /// Nonzero poles of component i.
    pub fn poles(&self, i: usize) -> &BTreeMap<Point, u32> {
        &self.comps[i].poles
    }

    pub fn max_pole_order(&self) -> u32 {
        self.comps
            .iter()
            .flat_map(|c| c.poles.values().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> LWeightJson {
        LWeightJson {
            components: self.comps.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(j: &LWeightJson) -> Result<Self, LWeightError> {
        LWeight::parse(&j.components.join(";"))
    }
}

impl fmt::Display for LWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LWeightJson {
    pub components: Vec<String>,
}

/// Pole order at 0 of each component.
pub fn ord(psi: &LWeight) -> Coweight {
    psi.comps.iter().map(|c| -c.val0).collect()
}

/// (z - a)/z in position i, 1 elsewhere.
pub fn prefundamental(rank: usize, i: usize, a: &Point) -> LWeight {
    let mut w = LWeight::one(rank);
    w.comps[i].val0 = -1;
    w.comps[i].zeros.insert(a.clone(), 1);
    w
}

/// q_i^s as a power of q.
fn qi_pow(c: &CartanDatum, i: usize, s: i64) -> i64 {
    s * c.d_i(i)
}

pub fn psi_tilde(c: &CartanDatum, i: usize, a: &Point) -> LWeight {
    let mut w = LWeight::one(c.rank());
    for j in 0..c.rank() {
        let comp = &mut w.comps[j];
        if j == i {
            comp.val0 = 1;
            comp.poles.insert(a.clone(), 1);
        } else {
            let cij = c.c(i, j);
            let mut s = cij + 2;
            while s <= -cij {
                *comp.zeros.entry(a.shift(qi_pow(c, i, s))).or_insert(0) += 1;
                comp.val0 -= 1;
                s += 2;
            }
        }
    }
    w
}

/// The l-weight value of A^{-1}_{i,x}.
pub fn aweight_inverse(c: &CartanDatum, i: usize, x: &Point) -> LWeight {
    let mut w = LWeight::one(c.rank());
    for j in 0..c.rank() {
        let d = c.d(i, j);
        if d != 0 {
            let comp = &mut w.comps[j];
            comp.c = Scalar::q_pow(-d);
            comp.zeros.insert(x.shift(d), 1);
            comp.poles.insert(x.shift(-d), 1);
        }
    }
    w
}

/// A term [base] * prod A^{-1}_{i,x} * constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LWeightMonomial {
    pub base: Option<String>,
    pub afactors: Vec<(usize, Point)>,
    pub constant: Vec<Scalar>,
}

impl LWeightMonomial {
    pub fn base(rank: usize, tag: Option<String>) -> Self {
        LWeightMonomial {
            base: tag,
            afactors: Vec::new(),
            constant: vec![Scalar::one(); rank],
        }
    }

    pub fn with_afactors(mut self, fs: impl IntoIterator<Item = (usize, Point)>) -> Self {
        self.afactors.extend(fs);
        self.afactors.sort();
        self
    }

    /// Multiset union of A-factors; bases are joined with '*'.
    pub fn mul(&self, o: &LWeightMonomial) -> LWeightMonomial {
        let base = match (&self.base, &o.base) {
            (Some(x), Some(y)) => Some(format!("{}*{}", x, y)),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        };
        let mut afactors = self.afactors.clone();
        afactors.extend(o.afactors.iter().cloned());
        afactors.sort();
        let constant = self
            .constant
            .iter()
            .zip(&o.constant)
            .map(|(a, b)| a.mul(b))
            .collect();
        LWeightMonomial {
            base,
            afactors,
            constant,
        }
    }

    /// Explicit value given the value of the base.
    pub fn value(&self, c: &CartanDatum, base: &LWeight) -> LWeight {
        let mut w = base.clone();
        for (i, x) in &self.afactors {
            w = w.mul(&aweight_inverse(c, *i, x));
        }
        for (comp, k) in w.comps.iter_mut().zip(&self.constant) {
            comp.c = comp.c.mul(k);
        }
        w
    }

    /// Total A-degree per color.
    pub fn adegree(&self, rank: usize) -> Vec<usize> {
        let mut n = vec![0; rank];
        for (i, _) in &self.afactors {
            n[*i] += 1;
        }
        n
    }
}

/// [psi~_{i,a q_i^-2} psi_{i,a}^-1] / [psi~_{i,a} psi_{i,a q_i^2}^-1] / A^{-1}_{i,a}.
/// Returns whether it is the identity tuple, and the constant tuple it equals.
pub fn check_a_ratio(
    c: &CartanDatum,
    i: usize,
    a: &Point,
) -> Result<(bool, Vec<Scalar>), LWeightError> {
    let r = c.rank();
    let qi2 = qi_pow(c, i, 2);
    let num = psi_tilde(c, i, &a.shift(-qi2)).div(&prefundamental(r, i, a));
    let den = psi_tilde(c, i, a).div(&prefundamental(r, i, &a.shift(qi2)));
    let quot = num.div(&den).div(&aweight_inverse(c, i, a));
    match quot.as_constant() {
        Some(k) => Ok((k.iter().all(Scalar::is_one), k)),
        None => Err(LWeightError::NotConstant(quot.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ords() {
        let a = Point::a();
        assert_eq!(ord(&prefundamental(1, 0, &a)), vec![1]);
        assert_eq!(ord(&prefundamental(1, 0, &a).inv()), vec![-1]);
        let fund = LWeight::parse("q | zeros: 1*a^1*q^-1 | poles: 1*a^1*q^1").unwrap();
        assert_eq!(ord(&fund), vec![0]);
    }

    #[test]
    fn grammar_round_trip() {
        for s in [
            "q | zeros: 1*a^1*q^-1 | poles: 1*a^1*q^1",
            "1 | zeros: 1*a^1 | poles: 0",
            "1; 1 | zeros: 0 | poles: a*q",
        ] {
            let w = LWeight::parse(s).unwrap();
            assert_eq!(LWeight::parse(&w.to_string()).unwrap(), w);
        }
        assert!(LWeight::parse("1 | zeros: a").is_err());
        assert_eq!(
            LWeight::parse("1 | zeros: a | poles: 0").unwrap(),
            prefundamental(1, 0, &Point::a())
        );
    }

    #[test]
    fn tilde_components() {
        let a2 = CartanDatum::preset("A2").unwrap();
        let t = psi_tilde(&a2, 0, &Point::a());
        assert_eq!(
            t.comps[1].zeros.keys().cloned().collect::<Vec<_>>(),
            vec![Point::a().shift(1)]
        );
        assert_eq!(t.comps[1].val0, -1);
        let b2 = CartanDatum::preset("B2").unwrap();
        // c_01 = -1 for the long node 0, c_10 = -2 for the short node 1
        assert_eq!(psi_tilde(&b2, 0, &Point::a()).comps[1].zeros.len(), 1);
        assert_eq!(
            psi_tilde(&b2, 1, &Point::a()).comps[0]
                .zeros
                .values()
                .sum::<u32>(),
            2
        );
    }

    #[test]
    fn aweight_limits() {
        let a1 = CartanDatum::preset("A1").unwrap();
        let w = aweight_inverse(&a1, 0, &Point::a());
        assert_eq!(ord(&w), vec![0]);
        assert_eq!(w.comps[0].c, Scalar::q_pow(-2));
    }
}
