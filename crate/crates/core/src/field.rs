//! Prime fields F_p with p < 2^16.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field F_p. Residues are stored as `u16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Fp {
    p: u16,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p > u16::MAX as u32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Fp { p: p as u16 })
    }

    pub const F2: Fp = Fp { p: 2 };

    #[inline]
    pub fn p(self) -> u16 {
        self.p
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.p == 2
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u16 {
        v.rem_euclid(self.p as i64) as u16
    }

    #[inline]
    pub fn add(self, a: u16, b: u16) -> u16 {
        let s = a as u32 + b as u32;
        let p = self.p as u32;
        (if s >= p { s - p } else { s }) as u16
    }

    #[inline]
    pub fn sub(self, a: u16, b: u16) -> u16 {
        if a >= b {
            a - b
        } else {
            (a as u32 + self.p as u32 - b as u32) as u16
        }
    }

    #[inline]
    pub fn neg(self, a: u16) -> u16 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u16, b: u16) -> u16 {
        ((a as u32 * b as u32) % self.p as u32) as u16
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(self, a: u16, b: u16, c: u16) -> u16 {
        ((a as u32 + b as u32 * c as u32) % self.p as u32) as u16
    }

    pub fn pow(self, mut base: u16, mut exp: u32) -> u16 {
        let mut acc = 1u16 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u16) -> u16 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u32 - 2)
    }
}

impl<'de> Deserialize<'de> for Fp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u32::deserialize(d)?;
        Fp::new(p).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A single field element tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u16,
    modulus: Fp,
}

impl Scalar {
    pub fn new(value: i64, modulus: Fp) -> Self {
        Scalar {
            value: modulus.reduce(value),
            modulus,
        }
    }

    pub fn value(self) -> u16 {
        self.value
    }

    pub fn modulus(self) -> Fp {
        self.modulus
    }
}

/// A vector in F_p^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VectorFp {
    pub field: Fp,
    pub coords: Vec<u16>,
}

impl VectorFp {
    pub fn new(field: Fp, coords: Vec<u16>) -> Self {
        let coords = coords.into_iter().map(|c| c % field.p()).collect();
        VectorFp { field, coords }
    }

    pub fn zero(field: Fp, n: usize) -> Self {
        VectorFp { field, coords: vec![0; n] }
    }

    pub fn unit(field: Fp, n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        VectorFp { field, coords }
    }

    pub fn from_scalars(entries: &[Scalar]) -> Result<Self> {
        let field = match entries.first() {
            Some(s) => s.modulus(),
            None => return Err(Error::MalformedMatrix("empty scalar list has no modulus".into())),
        };
        let mut coords = Vec::with_capacity(entries.len());
        for s in entries {
            if s.modulus() != field {
                return Err(Error::ModulusMismatch {
                    left: field.p(),
                    right: s.modulus().p(),
                });
            }
            coords.push(s.value());
        }
        Ok(VectorFp { field, coords })
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.coords)
    }
}

#[inline]
pub(crate) fn is_zero(v: &[u16]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// `dst += c * src`
#[inline]
pub(crate) fn axpy(field: Fp, dst: &mut [u16], c: u16, src: &[u16]) {
    if c == 0 {
        return;
    }
    if field.is_two() {
        for (d, s) in dst.iter_mut().zip(src) {
            *d ^= *s;
        }
    } else {
        for (d, s) in dst.iter_mut().zip(src) {
            if *s != 0 {
                *d = field.mul_add(*d, c, *s);
            }
        }
    }
}

pub(crate) fn scale(field: Fp, v: &mut [u16], c: u16) {
    if c == 1 {
        return;
    }
    for x in v.iter_mut() {
        *x = field.mul(*x, c);
    }
}
