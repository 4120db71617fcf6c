//! Integer polynomials in the loop parameter δ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::ExactDiv;

/// Sparse polynomial in δ with integer coefficients. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl DeltaPoly {
    pub fn monomial(coeff: impl Into<BigInt>, exponent: u32) -> Self {
        let c = coeff.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exponent, c);
        }
        DeltaPoly { coeffs }
    }

    /// δ raised to `exponent`.
    pub fn delta_pow(exponent: u32) -> Self {
        Self::monomial(1, exponent)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
        let mut p = DeltaPoly::default();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exponent: u32) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn lowest_exponent(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// The exponent if this is a single monomial.
    pub fn monomial_exponent(&self) -> Option<u32> {
        (self.coeffs.len() == 1).then(|| *self.coeffs.keys().next().unwrap())
    }

    pub fn add_term(&mut self, exponent: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return DeltaPoly::default();
        }
        DeltaPoly { coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect() }
    }

    pub fn shift(&self, by: u32) -> Self {
        DeltaPoly { coeffs: self.coeffs.iter().map(|(&e, v)| (e + by, v.clone())).collect() }
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut power = BigRational::one();
        let mut current = 0u32;
        for (&e, c) in &self.coeffs {
            while current < e {
                power *= at;
                current += 1;
            }
            acc += &power * BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Polynomial long division; `None` unless the remainder vanishes.
    pub fn div_exact(&self, divisor: &DeltaPoly) -> Option<DeltaPoly> {
        let (dd, dc) = divisor.coeffs.iter().next_back().map(|(&e, c)| (e, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = DeltaPoly::default();
        while let Some((re, rc)) = rem.coeffs.iter().next_back().map(|(&e, c)| (e, c.clone())) {
            if re < dd {
                return None;
            }
            let (q, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let step = DeltaPoly::monomial(q, re - dd);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Sparse text form such as `3*d^2 - d + 1`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "d")?,
                1 => write!(f, "{mag}*d")?,
                _ if unit => write!(f, "d^{e}")?,
                _ => write!(f, "{mag}*d^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DeltaPoly({self})")
    }
}

impl<'a> Add<&'a DeltaPoly> for &'a DeltaPoly {
    type Output = DeltaPoly;
    fn add(self, rhs: &DeltaPoly) -> DeltaPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&DeltaPoly> for DeltaPoly {
    fn add_assign(&mut self, rhs: &DeltaPoly) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

impl<'a> Sub<&'a DeltaPoly> for &'a DeltaPoly {
    type Output = DeltaPoly;
    fn sub(self, rhs: &DeltaPoly) -> DeltaPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a DeltaPoly> for &'a DeltaPoly {
    type Output = DeltaPoly;
    fn mul(self, rhs: &DeltaPoly) -> DeltaPoly {
        let mut out = DeltaPoly::default();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Add for DeltaPoly {
    type Output = DeltaPoly;
    fn add(mut self, rhs: DeltaPoly) -> DeltaPoly {
        self += &rhs;
        self
    }
}

impl Sub for DeltaPoly {
    type Output = DeltaPoly;
    fn sub(self, rhs: DeltaPoly) -> DeltaPoly {
        &self - &rhs
    }
}

impl Mul for DeltaPoly {
    type Output = DeltaPoly;
    fn mul(self, rhs: DeltaPoly) -> DeltaPoly {
        &self * &rhs
    }
}

impl Neg for DeltaPoly {
    type Output = DeltaPoly;
    fn neg(self) -> DeltaPoly {
        DeltaPoly { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Zero for DeltaPoly {
    fn zero() -> Self {
        DeltaPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for DeltaPoly {
    fn one() -> Self {
        DeltaPoly::constant(1)
    }
}

impl ExactDiv for DeltaPoly {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div_exact(divisor)
    }
}

// JSON form: {"exponent": coefficient, ...}; coefficients that do not fit an
// i64 are written as decimal strings.
impl Serialize for DeltaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            let key = e.to_string();
            match i64::try_from(c) {
                Ok(v) => map.serialize_entry(&key, &v)?,
                Err(_) => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for DeltaPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(d)?;
        let mut p = DeltaPoly::default();
        for (k, v) in raw {
            let e: u32 = k.parse().map_err(D::Error::custom)?;
            let c: BigInt = match v {
                serde_json::Value::Number(n) => n.to_string().parse().map_err(D::Error::custom)?,
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
                other => return Err(D::Error::custom(format!("bad coefficient {other}"))),
            };
            p.add_term(e, c);
        }
        Ok(p)
    }
}
