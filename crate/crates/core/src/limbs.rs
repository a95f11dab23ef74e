//! Little-endian 64-bit limb vectors interpreted modulo `2^bits`.
//!
//! Every value keeps exactly `ceil(bits / 64)` limbs and the bits above
//! `bits` in the top limb are always zero, so derived equality and hashing
//! are exact residue comparisons.

use std::cmp::Ordering;
use std::fmt::Write as _;

const DECIMAL_CHUNK: u64 = 10_000_000_000_000_000_000;
const DECIMAL_CHUNK_DIGITS: usize = 19;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Fixed {
    bits: u32,
    limbs: Vec<u64>,
}

#[inline]
fn limb_count(bits: u32) -> usize {
    bits.div_ceil(64) as usize
}

#[inline]
fn top_mask(bits: u32) -> u64 {
    match bits % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl Fixed {
    pub(crate) fn zero(bits: u32) -> Self {
        debug_assert!(bits > 0);
        Fixed {
            bits,
            limbs: vec![0; limb_count(bits)],
        }
    }

    pub(crate) fn from_u64(bits: u32, value: u64) -> Self {
        let mut out = Self::zero(bits);
        out.limbs[0] = value;
        out.mask();
        out
    }

    /// Builds a value from arbitrary limbs, reducing modulo `2^bits`.
    pub(crate) fn from_limbs(bits: u32, limbs: &[u64]) -> Self {
        let mut out = Self::zero(bits);
        let n = out.limbs.len().min(limbs.len());
        out.limbs[..n].copy_from_slice(&limbs[..n]);
        out.mask();
        out
    }

    /// `2^exp mod 2^bits`.
    pub(crate) fn power_of_two(bits: u32, exp: u32) -> Self {
        let mut out = Self::zero(bits);
        if exp < bits {
            out.limbs[(exp / 64) as usize] = 1u64 << (exp % 64);
        }
        out
    }

    #[inline]
    fn mask(&mut self) {
        let m = top_mask(self.bits);
        if let Some(top) = self.limbs.last_mut() {
            *top &= m;
        }
    }

    #[inline]
    pub(crate) fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub(crate) fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    #[inline]
    pub(crate) fn low_u64(&self) -> u64 {
        self.limbs[0]
    }

    /// The value as a `u64` when it fits.
    pub(crate) fn to_u64(&self) -> Option<u64> {
        if self.limbs[1..].iter().all(|&l| l == 0) {
            Some(self.limbs[0])
        } else {
            None
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    #[inline]
    pub(crate) fn is_odd(&self) -> bool {
        self.limbs[0] & 1 == 1
    }

    #[inline]
    pub(crate) fn bit(&self, i: u32) -> bool {
        debug_assert!(i < self.bits);
        (self.limbs[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    pub(crate) fn set_bit(&mut self, i: u32) {
        debug_assert!(i < self.bits);
        self.limbs[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    pub(crate) fn trailing_zeros(&self) -> Option<u32> {
        self.limbs
            .iter()
            .enumerate()
            .find(|(_, &l)| l != 0)
            .map(|(i, l)| i as u32 * 64 + l.trailing_zeros())
    }

    pub(crate) fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.bits, rhs.bits);
        let mut out = Self::zero(self.bits);
        let mut carry = false;
        for ((o, &a), &b) in out.limbs.iter_mut().zip(&self.limbs).zip(&rhs.limbs) {
            let (s1, c1) = a.overflowing_add(b);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            *o = s2;
            carry = c1 | c2;
        }
        out.mask();
        out
    }

    pub(crate) fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.bits, rhs.bits);
        let mut out = Self::zero(self.bits);
        let mut borrow = false;
        for ((o, &a), &b) in out.limbs.iter_mut().zip(&self.limbs).zip(&rhs.limbs) {
            let (d1, b1) = a.overflowing_sub(b);
            let (d2, b2) = d1.overflowing_sub(borrow as u64);
            *o = d2;
            borrow = b1 | b2;
        }
        out.mask();
        out
    }

    /// Two's complement within `bits`.
    pub(crate) fn neg(&self) -> Self {
        Self::zero(self.bits).sub(self)
    }

    /// Schoolbook product, computing only the limbs below `2^bits`.
    pub(crate) fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.bits, rhs.bits);
        let mut out = Self::zero(self.bits);
        for (i, &a) in self.limbs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = a as u128;
            let mut carry: u128 = 0;
            for (o, &b) in out.limbs[i..].iter_mut().zip(&rhs.limbs) {
                let t = *o as u128 + a * b as u128 + carry;
                *o = t as u64;
                carry = t >> 64;
            }
        }
        out.mask();
        out
    }

    /// Left-to-right square-and-multiply over the bits of `exp` (little-endian limbs).
    pub(crate) fn pow(&self, exp: &[u64]) -> Self {
        let mut acc = Self::from_u64(self.bits, 1);
        let top = exp.iter().rposition(|&l| l != 0);
        let Some(top) = top else {
            return acc;
        };
        for (idx, &limb) in exp[..=top].iter().enumerate().rev() {
            let start = if idx == top {
                63 - limb.leading_zeros()
            } else {
                63
            };
            for b in (0..=start).rev() {
                acc = acc.mul(&acc);
                if (limb >> b) & 1 == 1 {
                    acc = acc.mul(self);
                }
            }
        }
        acc
    }

    /// Inverse of an odd value by 2-adic Newton iteration `x <- x(2 - ax)`.
    ///
    /// Any odd `a` satisfies `a * a == 1 (mod 8)`, so `a` is its own inverse to
    /// three bits; each step doubles the number of correct low bits.
    pub(crate) fn inverse(&self) -> Self {
        debug_assert!(self.is_odd());
        let two = Self::from_u64(self.bits, 2);
        let mut x = self.clone();
        let mut correct = 3u32;
        while correct < self.bits {
            x = x.mul(&two.sub(&self.mul(&x)));
            correct = correct.saturating_mul(2);
        }
        x
    }

    /// Reduces to the low `bits` bits (`bits <= self.bits`).
    pub(crate) fn truncate(&self, bits: u32) -> Self {
        debug_assert!(bits <= self.bits);
        Self::from_limbs(bits, &self.limbs)
    }

    pub(crate) fn shl(&self, shift: u32) -> Self {
        if shift >= self.bits {
            return Self::zero(self.bits);
        }
        let words = (shift / 64) as usize;
        let rem = shift % 64;
        let n = self.limbs.len();
        let mut out = Self::zero(self.bits);
        for i in (words..n).rev() {
            let src = i - words;
            let mut v = self.limbs[src] << rem;
            if rem > 0 && src > 0 {
                v |= self.limbs[src - 1] >> (64 - rem);
            }
            out.limbs[i] = v;
        }
        out.mask();
        out
    }

    pub(crate) fn shr(&self, shift: u32) -> Self {
        if shift >= self.bits {
            return Self::zero(self.bits);
        }
        let words = (shift / 64) as usize;
        let rem = shift % 64;
        let n = self.limbs.len();
        let mut out = Self::zero(self.bits);
        for i in 0..n - words {
            let src = i + words;
            let mut v = self.limbs[src] >> rem;
            if rem > 0 && src + 1 < n {
                v |= self.limbs[src + 1] << (64 - rem);
            }
            out.limbs[i] = v;
        }
        out
    }

    /// Minimal-length lowercase hex with `0x` prefix.
    pub(crate) fn to_hex(&self) -> String {
        let top = self.limbs.iter().rposition(|&l| l != 0);
        let Some(top) = top else {
            return "0x0".to_string();
        };
        let mut s = format!("0x{:x}", self.limbs[top]);
        for l in self.limbs[..top].iter().rev() {
            write!(s, "{l:016x}").unwrap();
        }
        s
    }

    /// Parses `0x`-prefixed hex; leading zeros are allowed, values `>= 2^bits` are not.
    pub(crate) fn from_hex(bits: u32, text: &str) -> Result<Self, String> {
        let digits = text
            .strip_prefix("0x")
            .or_else(|| text.strip_prefix("0X"))
            .ok_or_else(|| format!("{text:?} is missing the 0x prefix"))?;
        if digits.is_empty() {
            return Err(format!("{text:?} has no hex digits"));
        }
        let mut out = Self::zero(bits);
        for (pos, c) in digits.bytes().rev().enumerate() {
            let d = (c as char)
                .to_digit(16)
                .ok_or_else(|| format!("{text:?} contains non-hex character {:?}", c as char))?
                as u64;
            if d == 0 {
                continue;
            }
            let shift = pos as u64 * 4;
            let idx = (shift / 64) as usize;
            if idx >= out.limbs.len() {
                return Err(format!("{text:?} does not fit in {bits} bits"));
            }
            out.limbs[idx] |= d << (shift % 64);
        }
        if out.limbs.last().copied().unwrap_or(0) & !top_mask(bits) != 0 {
            return Err(format!("{text:?} does not fit in {bits} bits"));
        }
        Ok(out)
    }

    pub(crate) fn to_decimal(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut work = self.limbs.clone();
        let mut chunks = Vec::new();
        while work.iter().any(|&l| l != 0) {
            let mut rem: u128 = 0;
            for l in work.iter_mut().rev() {
                let cur = (rem << 64) | *l as u128;
                *l = (cur / DECIMAL_CHUNK as u128) as u64;
                rem = cur % DECIMAL_CHUNK as u128;
            }
            chunks.push(rem as u64);
        }
        let mut s = chunks.pop().unwrap().to_string();
        for c in chunks.iter().rev() {
            write!(s, "{c:0width$}", width = DECIMAL_CHUNK_DIGITS).unwrap();
        }
        s
    }

    pub(crate) fn from_decimal(bits: u32, text: &str) -> Result<Self, String> {
        if text.is_empty() || !text.bytes().all(|c| c.is_ascii_digit()) {
            return Err(format!("{text:?} is not a decimal integer"));
        }
        // One spare limb absorbs the overflow check.
        let mut acc = vec![0u64; limb_count(bits) + 1];
        for c in text.bytes() {
            let mut carry = (c - b'0') as u128;
            for l in acc.iter_mut() {
                let t = *l as u128 * 10 + carry;
                *l = t as u64;
                carry = t >> 64;
            }
            if carry != 0 || *acc.last().unwrap() != 0 {
                return Err(format!("{text:?} does not fit in {bits} bits"));
            }
        }
        let n = limb_count(bits);
        if acc[n - 1] & !top_mask(bits) != 0 {
            return Err(format!("{text:?} does not fit in {bits} bits"));
        }
        Ok(Self::from_limbs(bits, &acc[..n]))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .cmp(&other.bits)
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
