//! Fixed-width arithmetic modulo `2^k`.
//!
//! [`Residue`] is a value in `[0, 2^k)` together with its width. Every
//! operation truncates to the low `k` bits, which is what makes the
//! digit-inheritance property hold for `add`, `mul` and `pow`.
//!
//! [`Exponent`] reuses the same representation at width `k - 2` for
//! discrete-log exponents, which live modulo `2^(k-2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limbs::Fixed;

pub const MIN_WIDTH: u32 = 3;
pub const MAX_WIDTH: u32 = 4096;

/// The exponent `k` of the modulus `2^k`, with `3 <= k <= 4096`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Width(u32);

impl Width {
    pub fn new(k: u32) -> Result<Self> {
        if (MIN_WIDTH..=MAX_WIDTH).contains(&k) {
            Ok(Width(k))
        } else {
            Err(Error::WidthOutOfRange(k))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Bit width of discrete-log exponents at this width (`k - 2`).
    #[inline]
    pub fn exponent_bits(self) -> u32 {
        self.0 - 2
    }
}

impl fmt::Display for Width {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Width {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let k: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{s:?} is not a valid width")))?;
        Width::new(k)
    }
}

impl TryFrom<u32> for Width {
    type Error = Error;

    fn try_from(k: u32) -> Result<Self> {
        Width::new(k)
    }
}

impl Serialize for Width {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u32(self.0)
    }
}

fn check_same(a: Width, b: Width) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::WidthMismatch {
            left: a.get(),
            right: b.get(),
        })
    }
}

/// An element of `Z / 2^k Z`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: Fixed,
}

impl Residue {
    pub(crate) fn from_fixed(value: Fixed) -> Self {
        debug_assert!((MIN_WIDTH..=MAX_WIDTH).contains(&value.bits()));
        Residue { value }
    }

    pub fn zero(width: Width) -> Self {
        Self::from_fixed(Fixed::zero(width.get()))
    }

    pub fn one(width: Width) -> Self {
        Self::from_u64(width, 1)
    }

    /// `value mod 2^k`.
    pub fn from_u64(width: Width, value: u64) -> Self {
        Self::from_fixed(Fixed::from_u64(width.get(), value))
    }

    /// Little-endian 64-bit limbs, reduced modulo `2^k`.
    pub fn from_limbs(width: Width, limbs: &[u64]) -> Self {
        Self::from_fixed(Fixed::from_limbs(width.get(), limbs))
    }

    /// `2^p mod 2^k`; zero once `p >= k`.
    pub fn power_of_two(width: Width, p: u32) -> Self {
        Self::from_fixed(Fixed::power_of_two(width.get(), p))
    }

    /// Parses a `0x`-prefixed hex string. Leading zeros are accepted;
    /// values of `2^k` or more are rejected.
    pub fn from_hex(width: Width, text: &str) -> Result<Self> {
        Fixed::from_hex(width.get(), text.trim())
            .map(Self::from_fixed)
            .map_err(Error::Parse)
    }

    /// Minimal-length lowercase hex with `0x` prefix.
    pub fn to_hex(&self) -> String {
        self.value.to_hex()
    }

    #[inline]
    pub fn width(&self) -> Width {
        Width(self.value.bits())
    }

    pub fn limbs(&self) -> &[u64] {
        self.value.limbs()
    }

    /// The value if it fits in a `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    /// The low 64 bits.
    pub fn low_u64(&self) -> u64 {
        self.value.low_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.value.is_odd()
    }

    pub fn is_one(&self) -> bool {
        self.value.low_u64() == 1 && self.value.to_u64().is_some()
    }

    /// Dyadic valuation, `None` for zero.
    pub fn trailing_zeros(&self) -> Option<u32> {
        self.value.trailing_zeros()
    }

    pub fn add(&self, rhs: &Residue) -> Result<Residue> {
        check_same(self.width(), rhs.width())?;
        Ok(Self::from_fixed(self.value.add(&rhs.value)))
    }

    pub fn sub(&self, rhs: &Residue) -> Result<Residue> {
        check_same(self.width(), rhs.width())?;
        Ok(Self::from_fixed(self.value.sub(&rhs.value)))
    }

    pub fn mul(&self, rhs: &Residue) -> Result<Residue> {
        check_same(self.width(), rhs.width())?;
        Ok(Self::from_fixed(self.value.mul(&rhs.value)))
    }

    /// Product of two residues already known to share a width.
    #[inline]
    pub(crate) fn mul_same(&self, rhs: &Residue) -> Residue {
        Self::from_fixed(self.value.mul(&rhs.value))
    }

    /// Two's complement within `k` bits.
    pub fn neg(&self) -> Residue {
        Self::from_fixed(self.value.neg())
    }

    /// Multiplicative inverse of an odd residue.
    pub fn inverse(&self) -> Result<Residue> {
        if !self.is_odd() {
            return Err(Error::EvenInput {
                value: self.to_hex(),
            });
        }
        Ok(Self::from_fixed(self.value.inverse()))
    }

    pub fn pow(&self, exponent: u64) -> Residue {
        Self::from_fixed(self.value.pow(&[exponent]))
    }

    /// Raises to an exponent given as little-endian 64-bit limbs.
    pub fn pow_limbs(&self, exponent: &[u64]) -> Residue {
        Self::from_fixed(self.value.pow(exponent))
    }

    pub fn pow_exponent(&self, exponent: &Exponent) -> Residue {
        self.pow_limbs(exponent.limbs())
    }

    /// `self mod 2^j`.
    pub fn truncate(&self, j: Width) -> Result<Residue> {
        if j > self.width() {
            return Err(Error::Widening {
                from: self.width().get(),
                to: j.get(),
            });
        }
        Ok(Self::from_fixed(self.value.truncate(j.get())))
    }

    /// Binary digit of weight `2^i`.
    pub fn bit(&self, i: u32) -> Result<u8> {
        if i >= self.width().get() {
            return Err(Error::BitIndex {
                index: i,
                width: self.width().get(),
            });
        }
        Ok(self.value.bit(i) as u8)
    }

    #[inline]
    pub(crate) fn bit_unchecked(&self, i: u32) -> bool {
        self.value.bit(i)
    }

    /// The residue modulo 8.
    #[inline]
    pub fn low3(&self) -> u8 {
        (self.value.low_u64() & 7) as u8
    }

    /// `self * 2^p mod 2^k`.
    pub fn shl(&self, p: u32) -> Residue {
        Self::from_fixed(self.value.shl(p))
    }

    /// `floor(self / 2^p)`.
    pub fn shr(&self, p: u32) -> Residue {
        Self::from_fixed(self.value.shr(p))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (k={})", self.to_hex(), self.width())
    }
}

impl Serialize for Residue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

/// A discrete-log exponent in `[0, 2^(k-2))`, with arithmetic modulo `2^(k-2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    value: Fixed,
}

impl Exponent {
    pub(crate) fn from_fixed(value: Fixed) -> Self {
        Exponent { value }
    }

    pub fn zero(width: Width) -> Self {
        Self::from_fixed(Fixed::zero(width.exponent_bits()))
    }

    /// `value mod 2^(k-2)`.
    pub fn from_u64(width: Width, value: u64) -> Self {
        Self::from_fixed(Fixed::from_u64(width.exponent_bits(), value))
    }

    /// `2^i mod 2^(k-2)`.
    pub fn power_of_two(width: Width, i: u32) -> Self {
        Self::from_fixed(Fixed::power_of_two(width.exponent_bits(), i))
    }

    /// Parses a decimal string; values of `2^(k-2)` or more are rejected.
    pub fn from_decimal(width: Width, text: &str) -> Result<Self> {
        Fixed::from_decimal(width.exponent_bits(), text.trim())
            .map(Self::from_fixed)
            .map_err(Error::Parse)
    }

    pub fn to_decimal(&self) -> String {
        self.value.to_decimal()
    }

    /// The width `k` this exponent belongs to.
    pub fn width(&self) -> Width {
        Width(self.value.bits() + 2)
    }

    pub fn limbs(&self) -> &[u64] {
        self.value.limbs()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.value.is_odd()
    }

    pub fn bit(&self, i: u32) -> bool {
        i < self.value.bits() && self.value.bit(i)
    }

    pub(crate) fn set_bit(&mut self, i: u32) {
        self.value.set_bit(i)
    }

    pub fn add(&self, rhs: &Exponent) -> Result<Exponent> {
        check_same(self.width(), rhs.width())?;
        Ok(Self::from_fixed(self.value.add(&rhs.value)))
    }

    pub fn mul(&self, rhs: &Exponent) -> Result<Exponent> {
        check_same(self.width(), rhs.width())?;
        Ok(Self::from_fixed(self.value.mul(&rhs.value)))
    }

    /// `-self mod 2^(k-2)`.
    pub fn neg(&self) -> Exponent {
        Self::from_fixed(self.value.neg())
    }

    /// Inverse modulo `2^(k-2)` of an odd exponent.
    pub fn inverse(&self) -> Result<Exponent> {
        if !self.is_odd() {
            return Err(Error::EvenInput {
                value: self.to_decimal(),
            });
        }
        Ok(Self::from_fixed(self.value.inverse()))
    }

    /// `self mod 2^(j-2)`, the exponent as seen at the narrower width `j`.
    pub fn truncate(&self, j: Width) -> Result<Exponent> {
        if j > self.width() {
            return Err(Error::Widening {
                from: self.width().get(),
                to: j.get(),
            });
        }
        Ok(Self::from_fixed(self.value.truncate(j.exponent_bits())))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^{})", self.to_decimal(), self.value.bits())
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_decimal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: u32) -> Width {
        Width::new(k).unwrap()
    }

    fn r(k: u32, v: u64) -> Residue {
        Residue::from_u64(w(k), v)
    }

    #[test]
    fn width_bounds() {
        assert!(Width::new(2).is_err());
        assert!(Width::new(3).is_ok());
        assert!(Width::new(4096).is_ok());
        assert_eq!(Width::new(4097), Err(Error::WidthOutOfRange(4097)));
        assert_eq!("17".parse::<Width>().unwrap().get(), 17);
        assert!("x".parse::<Width>().is_err());
    }

    #[test]
    fn add_examples() {
        assert_eq!(r(5, 17).add(&r(5, 17)).unwrap(), r(5, 2));
        for x in 0..32 {
            assert_eq!(r(5, 0).add(&r(5, x)).unwrap(), r(5, x));
        }
        // 300 mod 256
        assert_eq!(r(8, 200).add(&r(8, 100)).unwrap(), r(8, 44));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(r(5, 3).mul(&r(5, 11)).unwrap(), r(5, 1));
        for x in 0..32 {
            assert_eq!(r(5, 1).mul(&r(5, x)).unwrap(), r(5, x));
        }
        assert_eq!(r(5, 17).mul(&r(5, 17)).unwrap(), r(5, 1));
    }

    #[test]
    fn width_mismatch_is_rejected() {
        let err = r(5, 3).add(&r(6, 3)).unwrap_err();
        assert_eq!(err, Error::WidthMismatch { left: 5, right: 6 });
        assert!(r(5, 3).mul(&r(6, 3)).is_err());
    }

    #[test]
    fn neg_examples() {
        assert_eq!(r(5, 7).neg(), r(5, 25));
        assert_eq!(r(5, 0).neg(), r(5, 0));
        assert_eq!(r(8, 1).neg(), r(8, 255));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(r(5, 3).inverse().unwrap(), r(5, 11));
        assert_eq!(r(5, 1).inverse().unwrap(), r(5, 1));
        assert_eq!(r(5, 17).inverse().unwrap(), r(5, 17));
        assert!(matches!(r(5, 6).inverse(), Err(Error::EvenInput { .. })));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(r(5, 3).pow(6), r(5, 25));
        assert_eq!(r(5, 3).pow(8), r(5, 1));
        for k in [3, 5, 64, 1000] {
            assert_eq!(r(k, 12345).pow(0), Residue::one(w(k)));
        }
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(r(8, 0b1011_0111).truncate(w(3)).unwrap(), r(3, 0b111));
        assert_eq!(r(8, 0xa5).truncate(w(8)).unwrap(), r(8, 0xa5));
        assert_eq!(r(5, 25).truncate(w(3)).unwrap(), r(3, 1));
        assert!(matches!(
            r(5, 25).truncate(w(6)),
            Err(Error::Widening { from: 5, to: 6 })
        ));
    }

    #[test]
    fn bit_examples() {
        assert_eq!(r(5, 7).bit(2).unwrap(), 1);
        assert_eq!(r(5, 7).bit(3).unwrap(), 0);
        assert_eq!(r(5, 9).bit(2).unwrap(), 0);
        assert!(matches!(
            r(5, 9).bit(5),
            Err(Error::BitIndex { index: 5, width: 5 })
        ));
    }

    #[test]
    fn hex_text() {
        let x = Residue::from_hex(w(12), "0x0FfF").unwrap();
        assert_eq!(x, r(12, 0xfff));
        assert_eq!(x.to_hex(), "0xfff");
        assert_eq!(r(12, 0).to_string(), "0x0");
        assert!(Residue::from_hex(w(12), "0x1000").is_err());
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"0xfff\"");
    }

    #[test]
    fn exponent_arithmetic() {
        let k = w(5);
        let e = Exponent::from_u64(k, 3);
        assert_eq!(e.inverse().unwrap(), Exponent::from_u64(k, 3));
        assert_eq!(Exponent::from_u64(k, 2).neg(), Exponent::from_u64(k, 6));
        assert_eq!(
            e.add(&Exponent::from_u64(k, 6)).unwrap(),
            Exponent::from_u64(k, 1)
        );
        assert_eq!(Exponent::from_decimal(k, "7").unwrap().to_u64(), Some(7));
        assert!(Exponent::from_decimal(k, "8").is_err());
        // k = 3: exponents live modulo 2
        let e3 = Exponent::from_u64(w(3), 1);
        assert_eq!(e3.add(&e3).unwrap(), Exponent::zero(w(3)));
        assert_eq!(e3.inverse().unwrap(), e3);
        assert_eq!(e3.width(), w(3));
        assert_eq!(
            Exponent::from_u64(w(6), 13)
                .truncate(w(5))
                .unwrap()
                .to_u64(),
            Some(5)
        );
    }
}
