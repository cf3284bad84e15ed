use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Coefficient domain of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    /// Rational coefficients; `Q[x]` is Euclidean.
    Q,
    /// Integer coefficients.
    Z,
}

impl Domain {
    fn name(self) -> &'static str {
        match self {
            Domain::Q => "Q",
            Domain::Z => "Z",
        }
    }
}

/// Dense univariate polynomial with exact coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`. The vector never has a trailing
/// zero, so the zero polynomial is the empty vector. Polynomials tagged
/// [`Domain::Z`] only ever hold integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
    domain: Domain,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    ///
    /// Returns [`Error::NotIntegral`] when a `Z`-tagged polynomial would carry
    /// a non-integer coefficient.
    pub fn from_coeffs(coeffs: Vec<Rational>, domain: Domain) -> Result<Self> {
        if domain == Domain::Z && coeffs.iter().any(|c| !c.is_integer()) {
            return Err(Error::NotIntegral);
        }
        Ok(Self::from_coeffs_unchecked(coeffs, domain))
    }

    pub(crate) fn from_coeffs_unchecked(mut coeffs: Vec<Rational>, domain: Domain) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        debug_assert!(domain == Domain::Q || coeffs.iter().all(|c| c.is_integer()));
        Poly { coeffs, domain }
    }

    pub fn from_ints(coeffs: &[i64], domain: Domain) -> Self {
        Self::from_coeffs_unchecked(coeffs.iter().map(|&c| super::int(c)).collect(), domain)
    }

    pub fn zero(domain: Domain) -> Self {
        Poly { coeffs: Vec::new(), domain }
    }

    pub fn one(domain: Domain) -> Self {
        Self::constant(Rational::one(), domain)
    }

    pub fn x(domain: Domain) -> Self {
        Self::monomial(Rational::one(), 1, domain)
    }

    pub fn constant(c: Rational, domain: Domain) -> Self {
        Self::from_coeffs_unchecked(vec![c], domain)
    }

    pub fn monomial(c: Rational, k: usize, domain: Domain) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs_unchecked(coeffs, domain)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Nonzero constants; over `Z` only `±1` are units.
    pub fn is_unit(&self) -> bool {
        match self.domain {
            Domain::Q => self.coeffs.len() == 1,
            Domain::Z => self.coeffs.len() == 1 && self.coeffs[0].abs().is_one(),
        }
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Same coefficients, tagged `Q`.
    pub fn to_rational(&self) -> Poly {
        Poly { coeffs: self.coeffs.clone(), domain: Domain::Q }
    }

    /// Same coefficients, tagged `Z`, if they are all integers.
    pub fn to_integer(&self) -> Result<Poly> {
        Self::from_coeffs(self.coeffs.clone(), Domain::Z)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn check_domain(&self, other: &Poly) -> Result<()> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch(self.domain.name(), other.domain.name()))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_domain(other)?;
        Ok(self.add_raw(other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_domain(other)?;
        Ok(self.mul_raw(other))
    }

    fn add_raw(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs_unchecked(coeffs, self.domain)
    }

    fn mul_raw(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.domain);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs_unchecked(coeffs, self.domain)
    }

    /// Multiplies every coefficient by `c`. The domain tag is kept, so over
    /// `Z` the scalar has to be an integer.
    pub fn scale(&self, c: &Rational) -> Poly {
        debug_assert!(self.domain == Domain::Q || c.is_integer());
        Self::from_coeffs_unchecked(self.coeffs.iter().map(|a| a * c).collect(), self.domain)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.domain);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division over `Q`: `self = q·divisor + r` with
    /// `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_domain(divisor)?;
        if self.domain != Domain::Q {
            return Err(Error::RequiresRationals);
        }
        self.div_rem_field(divisor)
    }

    fn div_rem_field(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dlen = divisor.coeffs.len();
        let Some(lead) = divisor.leading() else {
            return Err(Error::DivisionByZero);
        };
        if self.coeffs.len() < dlen {
            return Ok((Poly::zero(self.domain), self.clone()));
        }
        let lead_inv = lead.recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dlen - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dlen - 1);
        Ok((
            Self::from_coeffs_unchecked(quot, self.domain),
            Self::from_coeffs_unchecked(rem, self.domain),
        ))
    }

    /// Exact quotient `self / divisor` in the polynomial's own ring, if it
    /// exists. Over `Z` the quotient must have integer coefficients.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if self.domain != divisor.domain {
            return None;
        }
        if divisor.is_zero() {
            return self.is_zero().then(|| Poly::zero(self.domain));
        }
        let (q, r) = self.to_rational().div_rem_field(&divisor.to_rational()).ok()?;
        if !r.is_zero() {
            return None;
        }
        match self.domain {
            Domain::Q => Some(q),
            Domain::Z => q.to_integer().ok(),
        }
    }

    /// `divisor | self` in the polynomial's own ring.
    pub fn is_divisible_by(&self, divisor: &Poly) -> bool {
        self.exact_div(divisor).is_some()
    }

    /// Scales to leading coefficient one (over `Q`). Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lead) => self.scale(&lead.recip()),
        }
    }

    /// Monic greatest common divisor over `Q`; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_domain(other)?;
        if self.domain != Domain::Q {
            return Err(Error::RequiresRationals);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem_field(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic least common multiple over `Q`; zero if either input is zero.
    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.domain));
        }
        let g = self.gcd(other)?;
        let prod = self * other;
        Ok(prod.exact_div(&g).expect("gcd divides the product").monic())
    }

    /// Inverse of `self` modulo `modulus` over `Q`, reduced below
    /// `deg modulus`; `None` when the two are not coprime.
    pub fn inverse_mod(&self, modulus: &Poly) -> Option<Poly> {
        if self.domain != Domain::Q || modulus.domain != Domain::Q || modulus.is_zero() {
            return None;
        }
        // Extended Euclid tracking only the coefficient of `self`.
        let (mut r0, mut r1) = (modulus.clone(), self.div_rem_field(modulus).ok()?.1);
        let (mut t0, mut t1) = (Poly::zero(Domain::Q), Poly::one(Domain::Q));
        while !r1.is_zero() {
            let (quot, rem) = r0.div_rem_field(&r1).ok()?;
            let t2 = &t0 - &(&quot * &t1);
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = t0.scale(&r0.coeffs[0].recip());
        Some(inv.div_rem_field(modulus).ok()?.1)
    }

    /// Ordinary derivative d/dx. Integral polynomials stay integral.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        Self::from_coeffs_unchecked(coeffs, self.domain)
    }

    /// The n-th Hasse derivative: `x^k ↦ C(k, n) x^(k−n)`.
    pub fn hasse_derivative(&self, n: usize) -> Poly {
        if n == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(n)
            .map(|(k, c)| c * binomial(k as u64, n as u64))
            .collect();
        Self::from_coeffs_unchecked(coeffs, self.domain)
    }

    /// Substitutes `x ↦ unit·x + shift`.
    pub fn substitute_affine(&self, unit: &Rational, shift: &Rational) -> Poly {
        let lin = Self::from_coeffs_unchecked(vec![shift.clone(), unit.clone()], Domain::Q);
        let mut acc = Poly::zero(Domain::Q);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone(), Domain::Q);
        }
        acc.domain = self.domain;
        acc
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// `gcd` of the coefficients (content) for integral polynomials, as a
    /// nonnegative integer.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .map(|c| c.to_integer())
            .fold(BigInt::zero(), |acc, c| acc.gcd(&c))
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics when the coefficient domains differ; use the
            /// `checked_*` methods for fallible arithmetic.
            fn $method(self, rhs: &Poly) -> Poly {
                self.check_domain(rhs).expect("polynomial domain mismatch");
                self.$raw(rhs)
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

impl Poly {
    fn sub_raw(&self, other: &Poly) -> Poly {
        self.add_raw(&-other)
    }
}

forward_binop!(Add, add, add_raw);
forward_binop!(Sub, sub, sub_raw);
forward_binop!(Mul, mul, mul_raw);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect(), domain: self.domain }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Sparse ascending terms, e.g. `3 - 2*x + x^3` or `1/2*x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.domain.name(), self)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    DivMod,
    Gcd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithResult {
    Single(Poly),
    QuotRem(Poly, Poly),
}

/// Dispatches one of the basic ring operations with domain checking.
pub fn poly_arith(p: &Poly, q: &Poly, op: ArithOp) -> Result<ArithResult> {
    Ok(match op {
        ArithOp::Add => ArithResult::Single(p.checked_add(q)?),
        ArithOp::Mul => ArithResult::Single(p.checked_mul(q)?),
        ArithOp::DivMod => {
            let (a, b) = p.div_rem(q)?;
            ArithResult::QuotRem(a, b)
        }
        ArithOp::Gcd => ArithResult::Single(p.gcd(q)?),
    })
}
