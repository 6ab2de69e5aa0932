//! Geodesics in the Farey graph.
//!
//! Vertices are reduced fractions `p/q` together with `1/0 = ∞`; `p/q` and
//! `r/s` are adjacent when `|ps − qr| = 1`. To count geodesics from `u` to
//! `v`, a unimodular map sends `u` to `∞` and `v` to some `t`; every geodesic
//! from `∞` to a non-integer `t` enters through `⌊t⌋` or `⌊t⌋ + 1` and then
//! stays inside the strip of Farey triangles cut out by mediant descent
//! towards `t`, so a layered count on that strip is exact.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::oracle::{geodesic_count, SimpleGraph};

/// Longest strip (in triangles) or Stern–Brocot word built explicitly.
pub const MAX_STRIP_LEN: usize = 1 << 22;

/// Largest vertex height admitted in a [`FareyBall`].
pub const BALL_HEIGHT_CAP: u64 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("malformed fraction {0:?}: expected p/q")]
    Malformed(String),
    #[error("fraction {0} is not in lowest terms")]
    NotReduced(String),
    #[error("the only fraction with denominator 0 is 1/0")]
    BadInfinity,
    #[error("negative denominator in {0:?}")]
    NegativeDenominator(String),
    #[error("the two vertices are equal")]
    EqualVertices,
    #[error("operation undefined at infinity")]
    Infinite,
    #[error("{0} is an integer")]
    Integer(String),
    #[error("{0} is not positive")]
    NotPositive(String),
    #[error("strip of {0} triangles exceeds the limit of {MAX_STRIP_LEN}")]
    TooLong(String),
    #[error("ball height {height} exceeds the cap of {cap}")]
    CapExceeded { height: u64, cap: u64 },
    #[error("map is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
}

/// A reduced fraction with nonnegative denominator; `1/0` is `∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: BigInt,
    q: BigInt,
}

impl Fraction {
    /// Reduces and normalizes the sign. `q = 0` yields `∞` for any `p ≠ 0`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, FareyError> {
        let (mut p, mut q) = (p.into(), q.into());
        if q.is_zero() {
            return if p.is_zero() {
                Err(FareyError::BadInfinity)
            } else {
                Ok(Fraction::infinity())
            };
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        let g = p.gcd(&q);
        Ok(Fraction {
            p: p / &g,
            q: q / g,
        })
    }

    pub fn infinity() -> Self {
        Fraction {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Fraction {
            p: n.into(),
            q: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.q.is_one()
    }

    /// `max(|p|, q)`.
    pub fn height(&self) -> BigInt {
        self.p.abs().max(self.q.clone())
    }

    pub fn floor(&self) -> Result<BigInt, FareyError> {
        if self.is_infinite() {
            return Err(FareyError::Infinite);
        }
        Ok(self.p.div_floor(&self.q))
    }

    pub fn mediant(&self, other: &Fraction) -> Fraction {
        // mediants of Farey neighbors are reduced
        Fraction {
            p: &self.p + &other.p,
            q: &self.q + &other.q,
        }
    }

    fn cmp_finite(&self, other: &Fraction) -> Ordering {
        (&self.p * &other.q).cmp(&(&other.p * &self.q))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = FareyError;

    /// Strict: `p/q` in lowest terms with `q ≥ 0`; `1/0` for `∞`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || FareyError::Malformed(s.to_string());
        let (p, q) = s.split_once('/').ok_or_else(malformed)?;
        let digits = |t: &str, signed: bool| {
            let body = if signed {
                t.strip_prefix('-').unwrap_or(t)
            } else {
                t
            };
            !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
        };
        if !digits(p, true) || !digits(q.strip_prefix('-').unwrap_or(q), false) {
            return Err(malformed());
        }
        let p: BigInt = p.parse().map_err(|_| malformed())?;
        let q: BigInt = q.parse().map_err(|_| malformed())?;
        if q.is_negative() {
            return Err(FareyError::NegativeDenominator(s.to_string()));
        }
        if q.is_zero() {
            return if p.is_one() {
                Ok(Fraction::infinity())
            } else {
                Err(FareyError::BadInfinity)
            };
        }
        if !p.gcd(&q).is_one() {
            return Err(FareyError::NotReduced(s.to_string()));
        }
        Ok(Fraction { p, q })
    }
}

pub fn is_edge(u: &Fraction, v: &Fraction) -> Result<bool, FareyError> {
    if u == v {
        return Err(FareyError::EqualVertices);
    }
    Ok((&u.p * &v.q - &u.q * &v.p).abs().is_one())
}

/// `[a0; a1, ..., am]` with `a_i ≥ 1` for `i ≥ 1` and `am ≥ 2` when `m ≥ 1`.
pub fn continued_fraction(t: &Fraction) -> Result<Vec<BigInt>, FareyError> {
    if t.is_infinite() {
        return Err(FareyError::Infinite);
    }
    let (mut p, mut q) = (t.p.clone(), t.q.clone());
    let mut out = Vec::new();
    while !q.is_zero() {
        let (a, r) = p.div_mod_floor(&q);
        out.push(a);
        p = std::mem::replace(&mut q, r);
    }
    Ok(out)
}

fn partial_quotient_len(a: &BigInt, t: &Fraction) -> Result<usize, FareyError> {
    a.to_usize()
        .filter(|&n| n <= MAX_STRIP_LEN)
        .ok_or_else(|| FareyError::TooLong(t.to_string()))
}

/// The mediant-descent path from `1/1` to `t` in the Stern–Brocot tree.
pub fn stern_brocot_word(t: &Fraction) -> Result<String, FareyError> {
    if t.is_infinite() {
        return Err(FareyError::Infinite);
    }
    if !t.p.is_positive() {
        return Err(FareyError::NotPositive(t.to_string()));
    }
    let cf = continued_fraction(t)?;
    let last = cf.len() - 1;
    let mut word = String::new();
    for (i, a) in cf.iter().enumerate() {
        let mut n = partial_quotient_len(a, t)?;
        if i == last {
            n -= 1;
        }
        if word.len() + n > MAX_STRIP_LEN {
            return Err(FareyError::TooLong(t.to_string()));
        }
        let letter = if i % 2 == 0 { 'R' } else { 'L' };
        word.extend(std::iter::repeat_n(letter, n));
    }
    Ok(word)
}

/// A strip of Farey triangles; vertex 0 is `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyStrip {
    pub vertices: Vec<Fraction>,
    pub triangles: Vec<[usize; 3]>,
}

impl FareyStrip {
    pub fn graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.vertices.len());
        for t in &self.triangles {
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                g.add_edge(t[i], t[j])
                    .expect("strip triangles are nondegenerate");
            }
        }
        g
    }

    pub fn target(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// The triangles `(∞, n, n+1)`, then mediant descent inside `(n, n+1)` down
/// to `t`, where `n = ⌊t⌋`.
pub fn farey_corridor(t: &Fraction) -> Result<FareyStrip, FareyError> {
    if t.is_infinite() {
        return Err(FareyError::Infinite);
    }
    if t.is_integer() {
        return Err(FareyError::Integer(t.to_string()));
    }
    let cf = continued_fraction(t)?;
    let mut total = 0usize;
    for a in &cf[1..] {
        total = total.saturating_add(partial_quotient_len(a, t)?);
    }
    if total > MAX_STRIP_LEN {
        return Err(FareyError::TooLong(t.to_string()));
    }

    let n = t.floor()?;
    let mut vertices = vec![
        Fraction::infinity(),
        Fraction::integer(n.clone()),
        Fraction::integer(n + 1),
    ];
    let mut triangles = vec![[0, 1, 2]];
    let (mut lo, mut hi) = (1usize, 2usize);
    loop {
        let m = vertices[lo].mediant(&vertices[hi]);
        let im = vertices.len();
        let ord = t.cmp_finite(&m);
        vertices.push(m);
        triangles.push([lo, hi, im]);
        match ord {
            Ordering::Equal => break,
            Ordering::Less => hi = im,
            Ordering::Greater => lo = im,
        }
    }
    Ok(FareyStrip {
        vertices,
        triangles,
    })
}

/// `x ↦ (a x + b) / (c x + d)` with `ad − bc = ±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMap {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl UnimodularMap {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, FareyError> {
        let m = UnimodularMap {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = m.determinant();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(FareyError::NotUnimodular(det))
        }
    }

    pub fn identity() -> Self {
        UnimodularMap::new(1, 0, 0, 1).unwrap()
    }

    pub fn translation(n: impl Into<BigInt>) -> Self {
        UnimodularMap::new(1, n, 0, 1).unwrap()
    }

    /// `x ↦ −1/x`.
    pub fn inversion() -> Self {
        UnimodularMap::new(0, -1, 1, 0).unwrap()
    }

    /// `x ↦ −x`.
    pub fn reflection() -> Self {
        UnimodularMap::new(-1, 0, 0, 1).unwrap()
    }

    /// A map sending `u` to `∞`, built from a Bézout pair of `u`.
    pub fn sending_to_infinity(u: &Fraction) -> Self {
        if u.is_infinite() {
            return UnimodularMap::identity();
        }
        // x p + y q = 1, so [[x, y], [-q, p]] has determinant 1 and kills the
        // denominator at p/q
        let e = u.p.extended_gcd(&u.q);
        let (x, y) = if e.gcd.is_negative() {
            (-e.x, -e.y)
        } else {
            (e.x, e.y)
        };
        UnimodularMap {
            a: x,
            b: y,
            c: -u.q.clone(),
            d: u.p.clone(),
        }
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn apply(&self, x: &Fraction) -> Fraction {
        let p = &self.a * &x.p + &self.b * &x.q;
        let q = &self.c * &x.p + &self.d * &x.q;
        // unimodular maps send primitive vectors to primitive vectors
        match q.sign() {
            Sign::NoSign => Fraction::infinity(),
            Sign::Plus => Fraction { p, q },
            Sign::Minus => Fraction { p: -p, q: -q },
        }
    }
}

/// Distance and number of geodesics between two Farey vertices.
pub fn farey_geodesics(u: &Fraction, v: &Fraction) -> Result<(usize, BigUint), FareyError> {
    if is_edge(u, v)? {
        return Ok((1, BigUint::one()));
    }
    let to_inf = UnimodularMap::sending_to_infinity(u);
    let t = to_inf.apply(v);
    let shift = UnimodularMap::translation(-t.floor()?);
    let t = shift.apply(&t);
    let strip = farey_corridor(&t)?;
    let (dist, count) =
        geodesic_count(&strip.graph(), 0, strip.target()).expect("strips are connected");
    Ok((dist, count))
}

/// The subgraph of the Farey graph induced on `∞` and every reduced
/// fraction of height at most `height(center) + generations`.
#[derive(Debug, Clone)]
pub struct FareyBall {
    pub graph: SimpleGraph,
    pub labels: Vec<Fraction>,
    pub height: u64,
    index: HashMap<Fraction, usize>,
}

impl FareyBall {
    pub fn index_of(&self, x: &Fraction) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &Fraction) -> bool {
        self.index.contains_key(x)
    }
}

pub fn farey_ball(center: &Fraction, generations: u64) -> Result<FareyBall, FareyError> {
    let base = if center.is_infinite() {
        1
    } else {
        center.height().to_u64().unwrap_or(u64::MAX)
    };
    let height = base.saturating_add(generations);
    if height > BALL_HEIGHT_CAP {
        return Err(FareyError::CapExceeded {
            height,
            cap: BALL_HEIGHT_CAP,
        });
    }
    let h = height as i64;

    let mut coords: Vec<(i64, i64)> = vec![(1, 0)];
    for q in 1..=h {
        for p in -h..=h {
            if p.gcd(&q) == 1 {
                coords.push((p, q));
            }
        }
    }
    let index_of: HashMap<(i64, i64), usize> =
        coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let mut graph = SimpleGraph::new(coords.len());
    for (i, &(p, q)) in coords.iter().enumerate().skip(1) {
        if q == 1 {
            graph.add_edge(0, i).unwrap();
        }
        // neighbors r/s with p s − q r = ±1
        for s in 1..=h {
            for e in [1, -1] {
                let num = p * s - e;
                if num % q == 0 {
                    if let Some(&j) = index_of.get(&(num / q, s)) {
                        if j > i {
                            graph.add_edge(i, j).unwrap();
                        }
                    }
                }
            }
        }
    }

    let labels: Vec<Fraction> = coords
        .iter()
        .map(|&(p, q)| Fraction {
            p: p.into(),
            q: q.into(),
        })
        .collect();
    let index = labels
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, f)| (f, i))
        .collect();
    Ok(FareyBall {
        graph,
        labels,
        height,
        index,
    })
}
