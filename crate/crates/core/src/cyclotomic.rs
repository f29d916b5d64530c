//! Exact arithmetic in cyclotomic fields `Q(ζ_N) = Q[x]/(Φ_N)`.
//!
//! A [`CycNumber`] stores its level `N` and its coordinates in the power
//! basis `1, ζ_N, …, ζ_N^{φ(N)-1}`, reduced modulo `Φ_N`, with trailing zero
//! coordinates trimmed. Values at different levels are compared and combined
//! by lifting to the least common multiple of the levels. A number whose only
//! nonzero coordinate is the constant term is rational at every level and
//! takes the fast paths below.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic level must be positive, got {0}")]
    InvalidLevel(i64),
    #[error("level {from} does not divide target level {to}")]
    LevelMismatch { from: u64, to: u64 },
    #[error("cannot parse cyclotomic number {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Coefficients of `Φ_n`, lowest degree first. Memoized process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static TABLE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(n >= 1);
    let table = TABLE.get_or_init(Default::default);
    let hit = table.read().unwrap().get(&n).cloned();
    if let Some(p) = hit {
        return p;
    }
    // x^n - 1 = Π_{d | n} Φ_d
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_monic_division(&poly, &cyclotomic_polynomial(d));
        }
    }
    let poly = Arc::new(poly);
    table.write().unwrap().entry(n).or_insert(poly).clone()
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "cyclotomic division not exact");
    quot
}

/// Euler's totient, as the degree of `Φ_n`.
pub fn euler_phi(n: u64) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycNumber {
    level: u64,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    pub fn zero() -> Self {
        Self {
            level: 1,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut x = Self {
            level: 1,
            coeffs: vec![q],
        };
        x.trim();
        x
    }

    /// Builds `Σ coeffs[k] ζ_N^k` and reduces it modulo `Φ_N`. `coeffs` may
    /// be longer than `φ(N)`.
    pub fn from_coefficients(level: u64, coeffs: Vec<BigRational>) -> Result<Self, ScalarError> {
        if level == 0 {
            return Err(ScalarError::InvalidLevel(0));
        }
        Ok(Self::reduced(level, coeffs))
    }

    /// `ζ_N^k`.
    pub fn root_of_unity(n: i64, k: i64) -> Result<Self, ScalarError> {
        if n <= 0 {
            return Err(ScalarError::InvalidLevel(n));
        }
        let e = k.rem_euclid(n) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Ok(Self::reduced(n as u64, coeffs))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Power-basis coordinates; entries past the end are zero.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// All `φ(N)` power-basis coordinates.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let mut out = self.coeffs.clone();
        out.resize(euler_phi(self.level), BigRational::zero());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The rational value, if this number lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn is_rational_form(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn constant(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn reduced(level: u64, mut coeffs: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(level);
        let d = phi.len() - 1;
        if coeffs.len() > d {
            for i in (d..coeffs.len()).rev() {
                let c = std::mem::take(&mut coeffs[i]);
                if c.is_zero() {
                    continue;
                }
                // x^i ≡ x^{i-d}·(x^d - Φ) = -Σ_{j<d} Φ_j x^{i-d+j}
                for (j, &pj) in phi[..d].iter().enumerate() {
                    match pj {
                        0 => {}
                        1 => coeffs[i - d + j] -= &c,
                        -1 => coeffs[i - d + j] += &c,
                        _ => coeffs[i - d + j] -= &c * BigRational::from_integer(BigInt::from(pj)),
                    }
                }
            }
            coeffs.truncate(d);
        }
        let mut x = Self { level, coeffs };
        x.trim();
        x
    }

    /// The same value expressed at level `m`, which must be a multiple of
    /// the current level: `ζ_N = ζ_M^{M/N}`.
    pub fn lift_level(&self, m: u64) -> Result<Self, ScalarError> {
        if m == 0 || !m.is_multiple_of(self.level) {
            return Err(ScalarError::LevelMismatch {
                from: self.level,
                to: m,
            });
        }
        Ok(self.lift_unchecked(m))
    }

    fn lift_unchecked(&self, m: u64) -> Self {
        if m == self.level {
            return self.clone();
        }
        if self.is_rational_form() {
            return Self {
                level: m,
                coeffs: self.coeffs.clone(),
            };
        }
        let step = (m / self.level) as usize;
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Self::reduced(m, coeffs)
    }

    fn common_level(a: &Self, b: &Self) -> u64 {
        a.level.lcm(&b.level)
    }

    fn add_ref(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.is_rational_form() && other.is_rational_form() {
            let mut x = Self {
                level: Self::common_level(self, other),
                coeffs: vec![&self.coeffs[0] + &other.coeffs[0]],
            };
            x.trim();
            return x;
        }
        if self.is_rational_form() {
            return other.add_ref(self);
        }
        if other.is_rational_form() {
            let mut x = self.clone();
            x.coeffs[0] += &other.coeffs[0];
            x.trim();
            return x;
        }
        if self.level == other.level {
            let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
                (self, other)
            } else {
                (other, self)
            };
            let mut x = long.clone();
            for (dst, src) in x.coeffs.iter_mut().zip(&short.coeffs) {
                *dst += src;
            }
            x.trim();
            return x;
        }
        let m = Self::common_level(self, other);
        self.lift_unchecked(m).add_ref(&other.lift_unchecked(m))
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_rational_form() {
            return other.scale(&self.coeffs[0]);
        }
        if other.is_rational_form() {
            return self.scale(&other.coeffs[0]);
        }
        if self.level != other.level {
            let m = Self::common_level(self, other);
            return self.lift_unchecked(m).mul_ref(&other.lift_unchecked(m));
        }
        let mut prod = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::reduced(self.level, prod)
    }

    /// Multiplication by a rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        if q.is_one() {
            return self.clone();
        }
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_rational_form() {
            return Ok(Self {
                level: self.level,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        // Extended Euclid: s·a ≡ gcd (mod Φ_N), and the gcd is a unit since
        // Φ_N is irreducible and a ≠ 0 has lower degree.
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.level)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let (mut r0, mut r1) = (phi, self.coeffs.clone());
        let (mut s0, mut s1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let next_s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        debug_assert_eq!(r0.len(), 1, "gcd with Φ_N must be constant");
        let c = r0[0].recip();
        let coeffs = s0.into_iter().map(|x| x * &c).collect();
        Ok(Self::reduced(self.level, coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Writes the value as `c·ζ_N^k` when it has that shape.
    fn as_scaled_root(&self) -> Option<(BigRational, u64)> {
        if self.is_rational_form() {
            return None;
        }
        let n = self.level;
        (1..n).find_map(|k| {
            let back = Self::root_of_unity(n as i64, (n - k) as i64).ok()?;
            (self * &back).as_rational().map(|c| (c, k))
        })
    }
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (dst, src) in out.iter_mut().zip(b) {
        *dst -= src;
    }
    poly_trim(&mut out);
    out
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().expect("nonzero divisor").recip();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + b.len() - 1] * &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        quot[i] = c;
    }
    rem.truncate(b.len() - 1);
    poly_trim(&mut rem);
    poly_trim(&mut quot);
    (quot, rem)
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.is_rational_form() && other.is_rational_form() {
            return self.constant() == other.constant();
        }
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let m = Self::common_level(self, other);
        self.lift_unchecked(m).coeffs == other.lift_unchecked(m).coeffs
    }
}

impl Eq for CycNumber {}

impl Default for CycNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycNumber {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for CycNumber {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &'a CycNumber) -> CycNumber {
        self.add_ref(rhs)
    }
}

impl Add for CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: CycNumber) -> CycNumber {
        self.add_ref(&rhs)
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &'a CycNumber) -> CycNumber {
        self.add_ref(&-rhs)
    }
}

impl Sub for CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: CycNumber) -> CycNumber {
        self.add_ref(&-rhs)
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &'a CycNumber) -> CycNumber {
        self.mul_ref(rhs)
    }
}

impl Mul for CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: CycNumber) -> CycNumber {
        self.mul_ref(&rhs)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Writes `coeff·z{N}^{k}` with sign handling; `first` controls whether a
/// leading `+` separator is emitted.
fn write_term(
    f: &mut fmt::Formatter<'_>,
    coeff: &BigRational,
    root: Option<(u64, u64)>,
    first: bool,
) -> fmt::Result {
    let negative = coeff.is_negative();
    let magnitude = coeff.abs();
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    match root {
        None => write_rational(f, &magnitude),
        Some((n, k)) => {
            if !magnitude.is_one() {
                write_rational(f, &magnitude)?;
                write!(f, "*")?;
            }
            write!(f, "z{n}^{k}")
        }
    }
}

/// Textual form: rationals as `a/b`, roots as `z{N}^{k}`, joined by `+`/`-`.
/// Examples: `0`, `-3/4`, `z4^1`, `-1 - z3^1`, `1/2*z8^3`.
impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write_rational(f, &q);
        }
        if let Some((c, k)) = self.as_scaled_root() {
            return write_term(f, &c, Some((self.level, k)), true);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = (k > 0).then_some((self.level, k as u64));
            write_term(f, c, root, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber[{}]({})", self.level, self)
    }
}

impl FromStr for CycNumber {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse()
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Self {
            input,
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn fail<T>(&self, reason: impl Into<String>) -> Result<T, ScalarError> {
        Err(ScalarError::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    /// Whitespace is only allowed at the ends and around `+`/`-`.
    fn misplaced_space(&self) -> bool {
        let tokens: Vec<&str> = self.input.split_whitespace().collect();
        tokens.windows(2).any(|w| {
            let before = w[0].chars().last();
            let after = w[1].chars().next();
            !matches!(before, Some('+' | '-')) && !matches!(after, Some('+' | '-'))
        })
    }

    fn parse(mut self) -> Result<CycNumber, ScalarError> {
        if self.chars.is_empty() {
            return self.fail("empty input");
        }
        if self.misplaced_space() {
            return self.fail("unexpected whitespace");
        }
        let mut total = CycNumber::zero();
        let mut first = true;
        while self.pos < self.chars.len() {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                Some(c) => return self.fail(format!("expected '+' or '-', found {c:?}")),
                None => unreachable!(),
            };
            let term = self.term()?;
            total = if negative { &total - &term } else { &total + &term };
            first = false;
        }
        Ok(total)
    }

    fn term(&mut self) -> Result<CycNumber, ScalarError> {
        match self.peek() {
            Some('z') => self.root(),
            Some(c) if c.is_ascii_digit() => {
                let q = self.rational()?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    let root = self.root()?;
                    Ok(root.scale(&q))
                } else {
                    Ok(CycNumber::from_rational(q))
                }
            }
            Some(c) => self.fail(format!("unexpected character {c:?}")),
            None => self.fail("dangling sign"),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected digits");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<BigRational, ScalarError> {
        let num = self.integer()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.integer()?;
            if den.is_zero() {
                return self.fail("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn small_integer(&mut self) -> Result<i64, ScalarError> {
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.integer()?;
        let v: i64 = match v.try_into() {
            Ok(v) => v,
            Err(_) => return self.fail("root index out of range"),
        };
        Ok(if negative { -v } else { v })
    }

    fn root(&mut self) -> Result<CycNumber, ScalarError> {
        self.pos += 1; // 'z'
        let n = self.small_integer()?;
        let k = if self.peek() == Some('^') {
            self.pos += 1;
            self.small_integer()?
        } else {
            1
        };
        CycNumber::root_of_unity(n, k).or_else(|e| self.fail(e.to_string()))
    }
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(CycNumber::from_integer(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
