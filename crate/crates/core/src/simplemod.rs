//! Dimensions of l-weight spaces of simple modules from residue conditions, and q-characters.
//!
//! A functional F -> Res_{z_n = x_n} ... Res_{z_1 = x_1} (z^d F K) only sees a finite jet of F
//! at x, so the functional matrix factors as (jets of the residue kernel) x (Taylor
//! coefficients of the numerators). Ranks are taken of that product.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;

use itertools::Itertools;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cartan::{CartanDatum, CartanError};
use crate::charring::{chi_mu, weight_image, QCharacter, WeightSeries};
use crate::hopfpair::{abs_degree, antipode_lhs_batch, kernel, slotted_numerator, HopfError};
use crate::laurent::LPoly;
use crate::linalg::rank;
use crate::lweights::{ord, LWeight, LWeightMonomial};
use crate::residue::binom;
use crate::scalars::{parse_point_at, ParseError, Point, Scalar};
use crate::shuffle::{offsets, wheel1_specializations, wheel2_windows, ShuffleElement};

#[derive(Debug, Error)]
pub enum SimpleError {
    #[error("no wheel characterization for Cartan datum {0}")]
    Unsupported(String),
    #[error("rank not stabilized at n = {n:?}, x = {x}; trace {trace:?}")]
    NotStabilized {
        n: Vec<usize>,
        x: String,
        trace: Vec<RankStep>,
    },
    #[error("support point has degree {got:?}, expected {expected:?}")]
    Degree {
        expected: Vec<usize>,
        got: Vec<usize>,
    },
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Per color, a sorted multiset of points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportPoint(pub Vec<Vec<Point>>);

impl SupportPoint {
    pub fn new(mut per_color: Vec<Vec<Point>>) -> Self {
        for v in &mut per_color {
            v.sort();
        }
        SupportPoint(per_color)
    }

    /// Colors separated by ';', points within a color by ','.
    pub fn parse(s: &str, rank: usize) -> Result<Self, ParseError> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != rank {
            return Err(ParseError {
                pos: 0,
                msg: format!("expected {} colors separated by ';'", rank),
            });
        }
        let mut out = Vec::new();
        let mut offset = 0;
        for part in parts {
            let mut pts = Vec::new();
            let mut o = offset;
            for item in part.split(',') {
                if !item.trim().is_empty() {
                    pts.push(parse_point_at(item, o)?);
                }
                o += item.len() + 1;
            }
            out.push(pts);
            offset += part.len() + 1;
        }
        Ok(SupportPoint::new(out))
    }

    pub fn degree(&self) -> Vec<usize> {
        self.0.iter().map(Vec::len).collect()
    }

    pub fn afactors(&self) -> Vec<(usize, Point)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.iter().map(move |p| (i, p.clone())))
            .collect()
    }

    /// (1-based color, point) pairs.
    pub fn to_json(&self) -> Vec<(usize, String)> {
        self.afactors()
            .into_iter()
            .map(|(i, p)| (i + 1, p.to_string()))
            .collect()
    }
}

impl fmt::Display for SupportPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|v| v.iter().map(|p| p.to_string()).join(", "))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankStep {
    pub w: usize,
    pub d: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub psi: String,
    pub n: Vec<usize>,
    pub x: SupportPoint,
    pub dimension: usize,
    pub windows: (usize, usize),
    pub stabilized: bool,
    pub rank_trace: Vec<RankStep>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DimensionReportJson {
    pub psi: String,
    pub n: Vec<usize>,
    pub x: Vec<(usize, String)>,
    pub dim: usize,
    pub stabilized: bool,
    pub windows: (usize, usize),
    pub rank_trace: Vec<RankStep>,
}

impl DimensionReport {
    pub fn to_json(&self) -> DimensionReportJson {
        DimensionReportJson {
            psi: self.psi.clone(),
            n: self.n.clone(),
            x: self.x.to_json(),
            dim: self.dimension,
            stabilized: self.stabilized,
            windows: self.windows,
            rank_trace: self.rank_trace.clone(),
        }
    }
}

/// Which family of functionals defines the dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    /// Iterated residues of the psi-dressed pairing integrand.
    Borel,
    /// The left side of the antipode identity with a multiplier isolating x.
    Shifted,
}

#[derive(Clone, Debug)]
pub struct DimConfig {
    /// Laurent window; default 3 + max pole order of psi.
    pub w: Option<usize>,
    /// Exponent window; default w + max pole order of psi.
    pub d: Option<usize>,
    /// Lattice radius for candidate supports.
    pub k: usize,
    /// Maximal number of window enlargements.
    pub cap: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for DimConfig {
    fn default() -> Self {
        DimConfig {
            w: None,
            d: None,
            k: 4,
            cap: 3,
            cache_dir: None,
        }
    }
}

impl DimConfig {
    pub fn windows(&self, psi: &LWeight) -> (usize, usize) {
        let m = psi.max_pole_order() as usize;
        let w = self.w.unwrap_or(3 + m);
        (w, self.d.unwrap_or(w + m))
    }
}

// ---------------------------------------------------------------------------
// Candidate supports

/// Multisets per color drawn from {p q^k : p a pole of psi, |k| <= K}.
pub fn candidate_support(psi: &LWeight, n: &[usize], k: usize) -> Vec<SupportPoint> {
    let mut lattice = BTreeSet::new();
    for comp in &psi.comps {
        for p in comp.poles.keys() {
            for s in -(k as i64)..=k as i64 {
                lattice.insert(p.shift(s));
            }
        }
    }
    let lattice: Vec<Point> = lattice.into_iter().collect();
    let per_color: Vec<Vec<Vec<Point>>> = n
        .iter()
        .map(|&ni| {
            if ni == 0 {
                vec![Vec::new()]
            } else {
                lattice
                    .iter()
                    .cloned()
                    .combinations_with_replacement(ni)
                    .collect()
            }
        })
        .collect();
    let mut out = vec![Vec::new()];
    for choices in per_color {
        let mut next = Vec::new();
        for prefix in &out {
            for ch in &choices {
                let mut v: Vec<Vec<Point>> = prefix.clone();
                v.push(ch.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(SupportPoint::new).collect()
}

/// All color multi-degrees with 1 <= |n| <= n_max, by total size then lexicographically.
pub fn degrees_up_to(rank: usize, n_max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..rank)
        .map(|_| 0..=n_max)
        .multi_cartesian_product()
        .filter(|v| {
            let s: usize = v.iter().sum();
            s >= 1 && s <= n_max
        })
        .collect();
    out.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    out
}

// ---------------------------------------------------------------------------
// Column space

fn boxed(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        let mut next = Vec::new();
        for v in &out {
            for k in 0..b {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn derivative(p: &LPoly, v: usize) -> LPoly {
    let mut r = LPoly::zero(p.nvars());
    for (e, c) in p.terms() {
        if e[v] != 0 {
            let mut ne = e.clone();
            ne[v] -= 1;
            r.add_term(ne, c.scale_rat(&BigRational::from_integer(e[v].into())));
        }
    }
    r
}

/// The polynomials whose coefficients must vanish for p to satisfy the wheel conditions.
fn wheel_residuals(c: &CartanDatum, degree: &[usize], p: &LPoly) -> Vec<LPoly> {
    let mut out = Vec::new();
    if c.is_finite_type || c.is_strongly_symmetrizable {
        for subs in wheel1_specializations(c, degree) {
            let mut r = p.clone();
            for (v, t, f) in &subs {
                r = r.subst_scaled(*v, *t, f);
            }
            out.push(r);
        }
    }
    if c.is_simply_laced {
        let off = offsets(degree);
        for w in wheel2_windows(c, degree) {
            let (x, y) = (off[w.i], off[w.j]);
            let mut r = p.clone();
            for k in 1..=w.u {
                r = r.subst_scaled(x + k, x, &Scalar::q_pow(2 * k as i64));
            }
            for k in 1..=w.v {
                r = r.subst_scaled(y + k, y, &Scalar::q_pow(2 * k as i64));
            }
            // divisible by (z_x - q^{-s'} z_y)^e iff the first e x-derivatives vanish on the line
            let cst = Scalar::q_pow(-w.s_prime);
            for _ in 0..w.exponent {
                out.push(r.subst_scaled(x, y, &cst));
                r = derivative(&r, x);
            }
        }
    }
    out
}

/// Color-symmetric Laurent numerators of the given degree with exponents in [-w, w]
/// satisfying the wheel conditions.
pub fn column_basis(
    c: &CartanDatum,
    degree: &[usize],
    w: usize,
) -> Result<Vec<LPoly>, SimpleError> {
    if !c.wheel_supported() {
        return Err(SimpleError::Unsupported(c.name.clone()));
    }
    let n: usize = degree.iter().sum();
    let w = w as i32;
    // monomial symmetric functions per color, multiplied across colors
    let per_color: Vec<Vec<Vec<Vec<i32>>>> = degree
        .iter()
        .map(|&ni| {
            (-w..=w)
                .combinations_with_replacement(ni)
                .map(|lam| {
                    lam.into_iter()
                        .permutations(ni)
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut cands: Vec<LPoly> = vec![LPoly::one(n)];
    for (i, orbits) in per_color.iter().enumerate() {
        let off = offsets(degree)[i];
        let mut next = Vec::new();
        for p in &cands {
            for orbit in orbits {
                let mut m = LPoly::zero(n);
                for e in orbit {
                    let mut ex = vec![0; n];
                    ex[off..off + e.len()].copy_from_slice(e);
                    m.add_term(ex, Scalar::one());
                }
                next.push(p.mul(&m));
            }
        }
        cands = next;
    }
    let residuals: Vec<Vec<LPoly>> = cands
        .iter()
        .map(|p| wheel_residuals(c, degree, p))
        .collect();
    if residuals.iter().all(|r| r.iter().all(LPoly::is_zero)) {
        return Ok(cands);
    }
    // one row per (condition, monomial)
    let mut rows: BTreeMap<(usize, Vec<i32>), Vec<Scalar>> = BTreeMap::new();
    for (k, res) in residuals.iter().enumerate() {
        for (ci, r) in res.iter().enumerate() {
            for (e, coef) in r.terms() {
                let row = rows
                    .entry((ci, e.clone()))
                    .or_insert_with(|| vec![Scalar::zero(); cands.len()]);
                row[k] = coef.clone();
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = rows.into_values().collect();
    let ker = crate::linalg::kernel(&rows, cands.len());
    Ok(ker
        .into_iter()
        .map(|v| {
            let mut p = LPoly::zero(n);
            for (coef, cand) in v.iter().zip(&cands) {
                if !coef.is_zero() {
                    p.add_assign(&cand.scale(coef));
                }
            }
            p
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Row space

/// One ordering of the entries of x: colors and points per position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Ordering {
    colors: Vec<usize>,
    xs: Vec<Point>,
}

fn orderings(x: &SupportPoint) -> Vec<Ordering> {
    let flat = x.afactors();
    let n = flat.len();
    let set: BTreeSet<Vec<(usize, Point)>> = flat.into_iter().permutations(n).collect();
    set.into_iter()
        .map(|v| Ordering {
            colors: v.iter().map(|(i, _)| *i).collect(),
            xs: v.into_iter().map(|(_, p)| p).collect(),
        })
        .collect()
}

/// Upper bound on the pole order of z_a at x_a once z_1..z_{a-1} have been taken at x.
fn pole_bounds(c: &CartanDatum, psi: &LWeight, o: &Ordering) -> Vec<u32> {
    let mut b: Vec<u32> = Vec::with_capacity(o.xs.len());
    for (a, xa) in o.xs.iter().enumerate() {
        let mut k = psi.poles(o.colors[a]).get(xa).copied().unwrap_or(0);
        for bb in 0..a {
            if o.xs[bb].shift(-c.d(o.colors[a], o.colors[bb])) == *xa {
                k += b[bb];
            }
        }
        b.push(k);
    }
    b
}

fn dist_poly(n: usize, xs: &[Point], delta: &[u32]) -> LPoly {
    let mut p = LPoly::one(n);
    for (a, &k) in delta.iter().enumerate() {
        let f = LPoly::var_pow(n, a, 1, Scalar::one()).sub(&LPoly::constant(n, xs[a].to_scalar()));
        for _ in 0..k {
            p = p.mul(&f);
        }
    }
    p
}

/// h(delta) = Res ... Res (prod (z_a - x_a)^delta_a K) over the box.
fn kernel_jets(
    c: &CartanDatum,
    psi: &LWeight,
    o: &Ordering,
    bounds: &[u32],
) -> BTreeMap<Vec<u32>, Scalar> {
    let n = o.xs.len();
    let k = kernel(c, &o.colors, Some(psi));
    let mut out = BTreeMap::new();
    for delta in boxed(bounds) {
        let mut r = k.mul_poly(&dist_poly(n, &o.xs, &delta));
        for (a, xa) in o.xs.iter().enumerate() {
            r = r.residue_at(a, xa);
            if r.is_zero() {
                break;
            }
        }
        if !r.is_zero() {
            out.insert(delta, r.value().expect("all variables taken"));
        }
    }
    out
}

/// Taylor coefficients of p at x for all gamma in the box.
fn taylor_jets(p: &LPoly, xs: &[Point], bounds: &[u32]) -> BTreeMap<Vec<u32>, Scalar> {
    let n = xs.len();
    let mut out: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    let cells = boxed(bounds);
    for (e, coef) in p.terms() {
        // per variable: C(e_a, g) x_a^{e_a - g}
        let per: Vec<Vec<Scalar>> = (0..n)
            .map(|a| {
                (0..bounds[a])
                    .map(|g| {
                        xs[a]
                            .pow(e[a] as i64 - g as i64)
                            .to_scalar()
                            .scale_rat(&binom(e[a] as i64, g))
                    })
                    .collect()
            })
            .collect();
        for g in &cells {
            let mut v = coef.clone();
            for a in 0..n {
                v = v.mul(&per[a][g[a] as usize]);
            }
            if !v.is_zero() {
                let e = out.entry(g.clone()).or_insert_with(Scalar::zero);
                *e = e.add(&v);
            }
        }
    }
    out
}

fn element(degree: &[usize], p: &LPoly) -> ShuffleElement {
    ShuffleElement::new(degree.to_vec(), p.clone())
}

/// Rows of the functional matrix contributed by one ordering, or none if all jets vanish.
fn borel_rows(
    c: &CartanDatum,
    psi: &LWeight,
    o: &Ordering,
    degree: &[usize],
    basis: &[LPoly],
    d: usize,
) -> Vec<Vec<Scalar>> {
    let bounds = pole_bounds(c, psi, o);
    if bounds.contains(&0) {
        return Vec::new();
    }
    let h = kernel_jets(c, psi, o, &bounds);
    if h.is_empty() {
        return Vec::new();
    }
    let jets: Vec<BTreeMap<Vec<u32>, Scalar>> = basis
        .iter()
        .map(|p| {
            taylor_jets(
                &slotted_numerator(&o.colors, &element(degree, p)),
                &o.xs,
                &bounds,
            )
        })
        .collect();
    let cells = boxed(&bounds);
    // R[beta][k] = sum_gamma h(beta + gamma) J_k(gamma)
    let r: Vec<Vec<Scalar>> = cells
        .iter()
        .map(|beta| {
            jets.iter()
                .map(|j| {
                    let mut s = Scalar::zero();
                    for (g, jv) in j {
                        let key: Vec<u32> = beta.iter().zip(g).map(|(x, y)| x + y).collect();
                        if let Some(hv) = h.get(&key) {
                            s = s.add(&hv.mul(jv));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    if 2 * d + 1 >= *bounds.iter().max().expect("n > 0") as usize {
        // z^d = sum_beta C(d, beta) x^{d - beta} (z - x)^beta, and the binomial matrix has full column rank
        return r;
    }
    let n = o.xs.len();
    let di = d as i64;
    (0..n)
        .map(|_| -di..=di)
        .multi_cartesian_product()
        .map(|dv| {
            let mut row = vec![Scalar::zero(); basis.len()];
            for (beta, rb) in cells.iter().zip(&r) {
                let mut coef = Scalar::one();
                for a in 0..n {
                    coef = coef.mul(
                        &o.xs[a]
                            .pow(dv[a] - beta[a] as i64)
                            .to_scalar()
                            .scale_rat(&binom(dv[a], beta[a])),
                    );
                }
                for (k, v) in rb.iter().enumerate() {
                    row[k] = row[k].add(&coef.mul(v));
                }
            }
            row
        })
        .collect()
}

/// Reachable poles of each variable with pole-order bounds, for one ordering.
fn reachable(c: &CartanDatum, psi: &LWeight, o: &Ordering) -> Vec<BTreeMap<Point, u32>> {
    let mut out: Vec<BTreeMap<Point, u32>> = Vec::new();
    for a in 0..o.xs.len() {
        let mut m: BTreeMap<Point, u32> = psi.poles(o.colors[a]).clone();
        for (bb, rb) in out.iter().enumerate() {
            let d = c.d(o.colors[a], o.colors[bb]);
            for (p, k) in rb {
                *m.entry(p.shift(-d)).or_insert(0) += k;
            }
        }
        out.push(m);
    }
    out
}

fn shifted_rows(
    c: &CartanDatum,
    psi: &LWeight,
    o: &Ordering,
    degree: &[usize],
    basis: &[LPoly],
) -> Result<Vec<Vec<Scalar>>, SimpleError> {
    let n = o.xs.len();
    let reach = reachable(c, psi, o);
    // kill every reachable pole other than x_a
    let mut g = LPoly::one(n);
    for (a, ra) in reach.iter().enumerate() {
        for (p, k) in ra {
            if *p != o.xs[a] {
                let f =
                    LPoly::var_pow(n, a, 1, Scalar::one()).sub(&LPoly::constant(n, p.to_scalar()));
                for _ in 0..*k {
                    g = g.mul(&f);
                }
            }
        }
    }
    let bounds: Vec<u32> = (0..n)
        .map(|a| reach[a].get(&o.xs[a]).copied().unwrap_or(0).max(1))
        .collect();
    let fs: Vec<ShuffleElement> = basis.iter().map(|p| element(degree, p)).collect();
    let fdeg = basis.iter().map(abs_degree).max().unwrap_or(0);
    let mut rows = Vec::new();
    for beta in boxed(&bounds) {
        let mult = g.mul(&dist_poly(n, &o.xs, &beta));
        let t = abs_degree(&mult) + fdeg + 4;
        let row = antipode_lhs_batch(c, &o.colors, &mult, psi, &fs, t)?;
        if row != antipode_lhs_batch(c, &o.colors, &mult, psi, &fs, t + 2)? {
            return Err(HopfError::Truncation { t, t2: t + 2 }.into());
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The functional matrix at windows (w, d), one block of rows per ordering of x
/// (orderings contributing nothing give empty blocks), against [`column_basis`].
pub fn functional_blocks(
    c: &CartanDatum,
    psi: &LWeight,
    x: &SupportPoint,
    w: usize,
    d: usize,
    pipeline: Pipeline,
) -> Result<Vec<Vec<Vec<Scalar>>>, SimpleError> {
    let degree = x.degree();
    let ords = orderings(x);
    if pipeline == Pipeline::Borel
        && ords
            .iter()
            .all(|o| pole_bounds(c, psi, o).contains(&0))
    {
        return Ok(vec![Vec::new(); ords.len()]);
    }
    let basis = column_basis(c, &degree, w)?;
    if basis.is_empty() {
        return Ok(vec![Vec::new(); ords.len()]);
    }
    ords.iter()
        .map(|o| match pipeline {
            Pipeline::Borel => Ok(borel_rows(c, psi, o, &degree, &basis, d)),
            Pipeline::Shifted => shifted_rows(c, psi, o, &degree, &basis),
        })
        .collect()
}

/// Rank of the functional matrix at windows (w, d).
pub fn functional_rank(
    c: &CartanDatum,
    psi: &LWeight,
    x: &SupportPoint,
    w: usize,
    d: usize,
    pipeline: Pipeline,
) -> Result<usize, SimpleError> {
    let rows: Vec<Vec<Scalar>> = functional_blocks(c, psi, x, w, d, pipeline)?
        .into_iter()
        .flatten()
        .collect();
    Ok(rank(&rows))
}

fn cache_key(
    c: &CartanDatum,
    psi: &LWeight,
    x: &SupportPoint,
    w: usize,
    d: usize,
    cap: usize,
    p: Pipeline,
) -> String {
    let mut h = Sha256::new();
    h.update(format!("{:?}|{}|{}|{}|{}|{}|{:?}", c.matrix(), psi, x, w, d, cap, p).as_bytes());
    h.finalize().iter().map(|b| format!("{:02x}", b)).collect()
}

fn cache_get(cfg: &DimConfig, key: &str, x: &SupportPoint) -> Option<DimensionReport> {
    let path = cfg.cache_dir.as_ref()?.join(format!("{}.json", key));
    let text = std::fs::read_to_string(path).ok()?;
    let j: DimensionReportJson = serde_json::from_str(&text).ok()?;
    Some(DimensionReport {
        psi: j.psi,
        n: j.n,
        x: x.clone(),
        dimension: j.dim,
        windows: j.windows,
        stabilized: j.stabilized,
        rank_trace: j.rank_trace,
    })
}

fn cache_put(cfg: &DimConfig, key: &str, r: &DimensionReport) {
    let Some(dir) = cfg.cache_dir.as_ref() else {
        return;
    };
    // a failed cache write only costs a recomputation later
    if std::fs::create_dir_all(dir).is_ok() {
        if let Ok(text) = serde_json::to_string_pretty(&r.to_json()) {
            let _ = std::fs::write(dir.join(format!("{}.json", key)), text);
        }
    }
}

/// Dimension of the l-weight space at x, enlarging (w, d) until the rank repeats.
pub fn dim_weight_space(
    c: &CartanDatum,
    psi: &LWeight,
    n: &[usize],
    x: &SupportPoint,
    cfg: &DimConfig,
    pipeline: Pipeline,
) -> Result<DimensionReport, SimpleError> {
    if x.degree() != n {
        return Err(SimpleError::Degree {
            expected: n.to_vec(),
            got: x.degree(),
        });
    }
    let (mut w, mut d) = cfg.windows(psi);
    let key = cache_key(c, psi, x, w, d, cfg.cap, pipeline);
    if let Some(r) = cache_get(cfg, &key, x) {
        return Ok(r);
    }
    let mut trace = Vec::new();
    loop {
        let r = functional_rank(c, psi, x, w, d, pipeline)?;
        trace.push(RankStep { w, d, rank: r });
        let k = trace.len();
        if k >= 2 && trace[k - 1].rank == trace[k - 2].rank {
            let rep = DimensionReport {
                psi: psi.to_string(),
                n: n.to_vec(),
                x: x.clone(),
                dimension: r,
                windows: (trace[k - 2].w, trace[k - 2].d),
                stabilized: true,
                rank_trace: trace,
            };
            cache_put(cfg, &key, &rep);
            return Ok(rep);
        }
        if k > cfg.cap {
            return Err(SimpleError::NotStabilized {
                n: n.to_vec(),
                x: x.to_string(),
                trace,
            });
        }
        w += 1;
        d += 1;
    }
}

/// The q-character up to |n| <= n_max with the report of every candidate point.
pub fn qcharacter_reports(
    c: &CartanDatum,
    psi: &LWeight,
    n_max: usize,
    cfg: &DimConfig,
) -> Result<(QCharacter, Vec<DimensionReport>), SimpleError> {
    let r = c.rank();
    let jobs: Vec<(Vec<usize>, SupportPoint)> = degrees_up_to(r, n_max)
        .into_iter()
        .flat_map(|n| {
            candidate_support(psi, &n, cfg.k)
                .into_iter()
                .map(move |x| (n.clone(), x))
        })
        .collect();
    let reports: Vec<DimensionReport> = jobs
        .par_iter()
        .map(|(n, x)| dim_weight_space(c, psi, n, x, cfg, Pipeline::Borel))
        .collect::<Result<_, _>>()?;
    let mut qc = QCharacter::new(r, n_max);
    qc.push(LWeightMonomial::base(r, None), 1);
    for rep in &reports {
        qc.push(
            LWeightMonomial::base(r, None).with_afactors(rep.x.afactors()),
            rep.dimension as i64,
        );
    }
    Ok((qc, reports))
}

pub fn qcharacter(
    c: &CartanDatum,
    psi: &LWeight,
    n_max: usize,
    cfg: &DimConfig,
) -> Result<QCharacter, SimpleError> {
    Ok(qcharacter_reports(c, psi, n_max, cfg)?.0)
}

/// The q-character and the weight character chi^{ord psi} * (weight image), truncated at `depth`.
pub fn full_character(
    c: &CartanDatum,
    psi: &LWeight,
    depth: usize,
    n_max: usize,
    cfg: &DimConfig,
) -> Result<(QCharacter, WeightSeries), SimpleError> {
    let chi = chi_mu(c, &ord(psi), depth).map_err(|e| match e {
        crate::charring::CharError::Cartan(e) => SimpleError::Cartan(e),
        _ => SimpleError::Cartan(CartanError::NotFinite),
    })?;
    let qc = qcharacter(c, psi, n_max, cfg)?;
    Ok((qc.clone(), chi.mul(&weight_image(&qc, depth))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lweights::prefundamental;

    fn a1() -> CartanDatum {
        CartanDatum::preset("A1").unwrap()
    }

    fn neg() -> LWeight {
        prefundamental(1, 0, &Point::a()).inv()
    }

    #[test]
    fn lattice_examples() {
        let s = candidate_support(&neg(), &[1], 2);
        assert_eq!(s.len(), 5);
        assert_eq!(candidate_support(&neg(), &[2], 1).len(), 6);
        assert!(candidate_support(&prefundamental(1, 0, &Point::a()), &[1], 4).is_empty());
    }

    #[test]
    fn single_points() {
        let c = a1();
        let cfg = DimConfig::default();
        let at = |p: Point| SupportPoint::new(vec![vec![p]]);
        let r = dim_weight_space(&c, &neg(), &[1], &at(Point::a()), &cfg, Pipeline::Borel).unwrap();
        assert_eq!(r.dimension, 1);
        assert!(r.stabilized);
        let r = dim_weight_space(
            &c,
            &neg(),
            &[1],
            &at(Point::a().shift(2)),
            &cfg,
            Pipeline::Borel,
        )
        .unwrap();
        assert_eq!(r.dimension, 0);
    }

    #[test]
    fn a2_basis_is_wheel() {
        let c = CartanDatum::preset("A2").unwrap();
        let b = column_basis(&c, &[2, 1], 2).unwrap();
        assert!(!b.is_empty());
        for p in &b {
            let e = ShuffleElement::new(vec![2, 1], p.clone());
            assert!(crate::shuffle::wheel_membership(&c, &e).unwrap());
        }
    }

    #[test]
    fn support_parse() {
        let x = SupportPoint::parse("1*a^1, 1*a^1*q^-2", 1).unwrap();
        assert_eq!(x.degree(), vec![2]);
        assert_eq!(SupportPoint::parse(&x.to_string(), 1).unwrap(), x);
        assert!(SupportPoint::parse("1*a^1; a", 1).is_err());
    }
}
