//! Exact arithmetic in the radical extension `Q(b^(-1/L))`.
//!
//! The exponential demand weights are powers `n^(-p)` with rational `p`, so
//! every value of one instance lives in a single field `Q(x)` where
//! `x = b^(-1/L)`, `b` is the primitive root of `n` (largest integer with
//! `b^k = n`) and `L` the common exponent denominator. `x` has minimal
//! polynomial `x^L - 1/b` (irreducible since `b` is not a perfect power), so
//! coefficient vectors over the power basis are a faithful representation:
//! equality is coefficient equality, division is a polynomial inverse, and
//! signs come from interval refinement, which terminates because nonzero
//! elements have nonzero coefficient vectors.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest `(root, k)` with `root^k == n`; `root` is then not a perfect
/// power.
pub fn primitive_root(n: u64) -> (u64, u32) {
    assert!(n >= 2);
    let max_k = 63 - n.leading_zeros().max(0);
    for k in (2..=max_k.max(2)).rev() {
        let root = (n as f64).powf(1.0 / k as f64).round() as u64;
        for candidate in [root.saturating_sub(1), root, root + 1] {
            if candidate >= 2 && candidate.checked_pow(k).map_or(false, |p| p == n) {
                return (candidate, k);
            }
        }
    }
    (n, 1)
}

/// Field context: values are polynomials in `x = base^(-1/degree)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadicalCtx {
    pub base: u64,
    pub degree: u32,
}

impl RadicalCtx {
    /// Context for powers of `n` whose exponents have denominators dividing
    /// `denom_lcm` (after rescaling to the primitive root of `n`).
    pub fn for_exponents(n: u64, exponent_denoms: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::param(format!("radical context needs n >= 2, got {n}")));
        }
        let (base, k) = primitive_root(n);
        let mut l: u64 = 1;
        for d in exponent_denoms {
            if d == 0 {
                return Err(Error::param("zero exponent denominator".to_string()));
            }
            // Exponent p/d of n becomes p*k/d of base; the reduced
            // denominator divides d, so the lcm of the original denominators
            // is a safe (if not minimal) degree.
            l = num_integer::lcm(l, d);
        }
        if l > 64 {
            return Err(Error::param(format!("radical degree {l} exceeds the supported 64")));
        }
        let _ = k;
        Ok(RadicalCtx { base, degree: l as u32 })
    }

    /// `n^(-p)` for `p >= 0`, where `n` is the value this context was built
    /// for (exponents are rescaled to the primitive base internally).
    pub fn power_of(&self, n: u64, p: Ratio<u64>) -> Result<Radical> {
        let (base, k) = primitive_root(n);
        if base != self.base {
            return Err(Error::param(format!(
                "value base {base} does not match context base {}",
                self.base
            )));
        }
        // exponent of the primitive base
        let scaled = Ratio::new(*p.numer() * k as u64, *p.denom());
        let l = self.degree as u64;
        if l % *scaled.denom() != 0 {
            return Err(Error::param(format!(
                "exponent denominator {} does not divide context degree {l}",
                scaled.denom()
            )));
        }
        let int_part = *scaled.numer() / *scaled.denom();
        let num_in_l = (*scaled.numer() % *scaled.denom()) * (l / *scaled.denom());
        let coeff = BigRational::new(BigInt::one(), BigInt::from(self.base).pow(int_part as u32));
        if num_in_l == 0 {
            return Ok(Radical::Rational(coeff));
        }
        let mut coeffs = vec![BigRational::zero(); self.degree as usize];
        coeffs[num_in_l as usize] = coeff;
        Ok(Radical::alg(self.base, self.degree, coeffs))
    }
}

/// Element of `Q` or of one radical extension `Q(base^(-1/degree))`.
#[derive(Debug, Clone)]
pub enum Radical {
    Rational(BigRational),
    Alg { base: u64, degree: u32, coeffs: Vec<BigRational> },
}

impl Radical {
    pub fn from_rational(q: BigRational) -> Self {
        Radical::Rational(q)
    }

    fn alg(base: u64, degree: u32, coeffs: Vec<BigRational>) -> Self {
        Radical::Alg { base, degree, coeffs }.normalized()
    }

    fn normalized(self) -> Self {
        match self {
            Radical::Alg { base, degree, coeffs } => {
                if coeffs.iter().skip(1).all(|c| c.is_zero()) {
                    Radical::Rational(coeffs.into_iter().next().unwrap_or_else(BigRational::zero))
                } else {
                    Radical::Alg { base, degree, coeffs }
                }
            }
            r => r,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Radical::Rational(q) => Some(q),
            Radical::Alg { .. } => None,
        }
    }

    fn ctx(&self) -> Option<(u64, u32)> {
        match self {
            Radical::Rational(_) => None,
            Radical::Alg { base, degree, .. } => Some((*base, *degree)),
        }
    }

    fn coeffs_in(&self, base: u64, degree: u32) -> Vec<BigRational> {
        match self {
            Radical::Rational(q) => {
                let mut v = vec![BigRational::zero(); degree as usize];
                v[0] = q.clone();
                v
            }
            Radical::Alg { base: b, degree: d, coeffs } => {
                assert!(
                    *b == base && *d == degree,
                    "mixed radical contexts: ({b}, {d}) vs ({base}, {degree})"
                );
                coeffs.clone()
            }
        }
    }

    fn join_ctx(&self, other: &Radical) -> Option<(u64, u32)> {
        match (self.ctx(), other.ctx()) {
            (None, None) => None,
            (Some(c), None) | (None, Some(c)) => Some(c),
            (Some(a), Some(b)) => {
                assert!(a == b, "mixed radical contexts: {a:?} vs {b:?}");
                Some(a)
            }
        }
    }

    /// Rational bracket `(lo, hi)` around the value, after `steps` interval
    /// bisections of the base radical.
    fn eval_interval(&self, steps: u32) -> (BigRational, BigRational) {
        match self {
            Radical::Rational(q) => (q.clone(), q.clone()),
            Radical::Alg { base, degree, coeffs } => {
                let (xlo, xhi) = bracket_root(*base, *degree, steps);
                let mut lo = BigRational::zero();
                let mut hi = BigRational::zero();
                let mut plo = BigRational::one();
                let mut phi = BigRational::one();
                for (j, c) in coeffs.iter().enumerate() {
                    if j > 0 {
                        plo = plo * xlo.clone();
                        phi = phi * xhi.clone();
                    }
                    if c.is_zero() {
                        continue;
                    }
                    if c.is_positive() {
                        lo = lo + c.clone() * plo.clone();
                        hi = hi + c.clone() * phi.clone();
                    } else {
                        lo = lo + c.clone() * phi.clone();
                        hi = hi + c.clone() * plo.clone();
                    }
                }
                (lo, hi)
            }
        }
    }

    /// Exact sign: `-1`, `0`, `1`.
    pub fn sign(&self) -> i32 {
        match self {
            Radical::Rational(q) => {
                if q.is_zero() {
                    0
                } else if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Radical::Alg { .. } => {
                // Nonzero by normalization; refine until the bracket decides.
                let mut steps = 8;
                loop {
                    let (lo, hi) = self.eval_interval(steps);
                    if lo.is_positive() {
                        return 1;
                    }
                    if hi.is_negative() {
                        return -1;
                    }
                    steps += 8;
                    assert!(steps < 4096, "interval refinement failed to separate from zero");
                }
            }
        }
    }

    pub fn inv(&self) -> Radical {
        match self {
            Radical::Rational(q) => {
                assert!(!q.is_zero(), "division by zero");
                Radical::Rational(q.recip())
            }
            Radical::Alg { base, degree, coeffs } => {
                // Extended Euclid against the minimal polynomial
                // m(x) = x^degree - 1/base.
                let mut m = vec![BigRational::zero(); *degree as usize + 1];
                m[0] = -BigRational::new(BigInt::one(), BigInt::from(*base));
                m[*degree as usize] = BigRational::one();
                let (g, s, _) = poly_ext_gcd(coeffs.clone(), m.clone());
                assert!(
                    poly_degree(&g) == Some(0),
                    "minimal polynomial not coprime with a nonzero element"
                );
                let scale = g[0].clone().recip();
                let scaled: Vec<BigRational> = s.into_iter().map(|c| c * scale.clone()).collect();
                let reduced = poly_mod_min(scaled, *base, *degree);
                Radical::alg(*base, *degree, reduced)
            }
        }
    }
}

/// Bisection bracket for `x = base^(-1/degree)` inside `(0, 1)`.
fn bracket_root(base: u64, degree: u32, steps: u32) -> (BigRational, BigRational) {
    let target = BigRational::new(BigInt::one(), BigInt::from(base));
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    let two = BigRational::from_integer(2.into());
    for _ in 0..steps {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        let mut p = BigRational::one();
        for _ in 0..degree {
            p = p * mid.clone();
        }
        if p < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn poly_degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_divrem(a: Vec<BigRational>, b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = poly_trim(a);
    let mut quot = vec![
        BigRational::zero();
        rem.len().saturating_sub(db).max(1)
    ];
    while let Some(dr) = poly_degree(&rem) {
        if dr < db {
            break;
        }
        let factor = rem[dr].clone() / lead.clone();
        quot[dr - db] = factor.clone();
        for i in 0..=db {
            let delta = factor.clone() * b[i].clone();
            rem[dr - db + i] = rem[dr - db + i].clone() - delta;
        }
        rem = poly_trim(rem);
    }
    (poly_trim(quot), rem)
}

/// `(g, s, t)` with `s*a + t*b = g`.
fn poly_ext_gcd(
    a: Vec<BigRational>,
    b: Vec<BigRational>,
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = poly_trim(a);
    let mut r1 = poly_trim(b);
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = Vec::new();
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1 = vec![BigRational::one()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divrem(r0.clone(), &r1);
        let snew = poly_sub(&s0, &poly_mul(&q, &s1));
        let tnew = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = snew;
        t0 = t1;
        t1 = tnew;
    }
    (r0, s0, t0)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = out[i].clone() - y.clone();
    }
    poly_trim(out)
}

/// Reduce a polynomial modulo `x^degree = 1/base` into the power basis.
fn poly_mod_min(p: Vec<BigRational>, base: u64, degree: u32) -> Vec<BigRational> {
    let l = degree as usize;
    let mut out = vec![BigRational::zero(); l];
    let inv_base = BigRational::new(BigInt::one(), BigInt::from(base));
    for (i, c) in p.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let wraps = (i / l) as u32;
        let mut factor = BigRational::one();
        for _ in 0..wraps {
            factor = factor * inv_base.clone();
        }
        out[i % l] = out[i % l].clone() + c * factor;
    }
    out
}

impl PartialEq for Radical {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Radical::Rational(a), Radical::Rational(b)) => a == b,
            // A normalized Alg is irrational, a Rational is not; Algs over
            // different primitive bases generate fields meeting only in Q.
            (Radical::Rational(_), Radical::Alg { .. })
            | (Radical::Alg { .. }, Radical::Rational(_)) => false,
            (
                Radical::Alg { base: b1, degree: d1, coeffs: c1 },
                Radical::Alg { base: b2, degree: d2, coeffs: c2 },
            ) => b1 == b2 && d1 == d2 && c1 == c2,
        }
    }
}

impl PartialOrd for Radical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(Scalar::total_cmp(self, other))
    }
}

impl Add for Radical {
    type Output = Radical;
    fn add(self, rhs: Radical) -> Radical {
        match self.join_ctx(&rhs) {
            None => match (self, rhs) {
                (Radical::Rational(a), Radical::Rational(b)) => Radical::Rational(a + b),
                _ => unreachable!(),
            },
            Some((base, degree)) => {
                let a = self.coeffs_in(base, degree);
                let b = rhs.coeffs_in(base, degree);
                let coeffs = a
                    .into_iter()
                    .zip(b)
                    .map(|(x, y)| x + y)
                    .collect();
                Radical::alg(base, degree, coeffs)
            }
        }
    }
}

impl Sub for Radical {
    type Output = Radical;
    fn sub(self, rhs: Radical) -> Radical {
        self + (-rhs)
    }
}

impl Neg for Radical {
    type Output = Radical;
    fn neg(self) -> Radical {
        match self {
            Radical::Rational(q) => Radical::Rational(-q),
            Radical::Alg { base, degree, coeffs } => {
                Radical::Alg { base, degree, coeffs: coeffs.into_iter().map(|c| -c).collect() }
            }
        }
    }
}

impl Mul for Radical {
    type Output = Radical;
    fn mul(self, rhs: Radical) -> Radical {
        match self.join_ctx(&rhs) {
            None => match (self, rhs) {
                (Radical::Rational(a), Radical::Rational(b)) => Radical::Rational(a * b),
                _ => unreachable!(),
            },
            Some((base, degree)) => {
                let a = self.coeffs_in(base, degree);
                let b = rhs.coeffs_in(base, degree);
                let product = poly_mul(&a, &b);
                Radical::alg(base, degree, poly_mod_min(product, base, degree))
            }
        }
    }
}

impl Div for Radical {
    type Output = Radical;
    fn div(self, rhs: Radical) -> Radical {
        self * rhs.inv()
    }
}

impl Rem for Radical {
    type Output = Radical;
    fn rem(self, rhs: Radical) -> Radical {
        // Field: exact division leaves no remainder.
        let q = self.clone() / rhs.clone();
        self - q * rhs
    }
}

impl Zero for Radical {
    fn zero() -> Self {
        Radical::Rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Radical::Rational(q) if q.is_zero())
    }
}

impl One for Radical {
    fn one() -> Self {
        Radical::Rational(BigRational::one())
    }
}

impl num_traits::Num for Radical {
    type FromStrRadixErr = <BigRational as num_traits::Num>::FromStrRadixErr;

    fn from_str_radix(str: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(str, radix).map(Radical::Rational)
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radical::Rational(q) => write!(f, "{q}"),
            Radical::Alg { base, degree, coeffs } => {
                let mut first = true;
                for (j, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    if j == 0 {
                        write!(f, "{c}")?;
                    } else {
                        write!(f, "({c})*{base}^(-{j}/{degree})")?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

impl Scalar for Radical {
    const EXACT: bool = true;

    fn from_u64(v: u64) -> Self {
        Radical::Rational(BigRational::from_integer(v.into()))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Radical::Rational(BigRational::new(num.into(), den.into()))
    }

    fn to_f64_lossy(&self) -> f64 {
        match self {
            Radical::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            Radical::Alg { base, degree, coeffs } => {
                let x = (1.0 / *base as f64).powf(1.0 / *degree as f64);
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(j as i32))
                    .sum()
            }
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        // Values differ, so refined brackets must eventually separate.
        let mut steps = 8;
        loop {
            let (alo, ahi) = self.eval_interval(steps);
            let (blo, bhi) = other.eval_interval(steps);
            if ahi < blo {
                return Ordering::Less;
            }
            if bhi < alo {
                return Ordering::Greater;
            }
            steps += 8;
            assert!(steps < 4096, "interval refinement failed to separate values");
        }
    }
}
