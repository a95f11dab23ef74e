//! Digit-serial discrete logarithms modulo `2^k` and the `(s, p, e)` codec.
//!
//! Every odd residue is `(-1)^s * h^e mod 2^k` for a unique sign bit `s` and
//! exponent `e` in `[0, 2^(k-2))`. Every residue is then
//! `(-1)^s * 2^p * h^e mod 2^k` once the dyadic valuation `p` is split off.
//!
//! [`dlg`] finds `(s, e)` one exponent bit per step: the sign comes from a
//! single bit of the input, and each later step clears bit `i` of a working
//! residue by multiplying with `h^(2^(i-2))` taken from the root's power table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kbit::{Exponent, Residue, Width};
use crate::root::{validate_root, Root};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    /// `s` in `(-1)^s`.
    pub fn bit(self) -> u8 {
        match self {
            Sign::Positive => 0,
            Sign::Negative => 1,
        }
    }

    pub fn from_bit(s: u8) -> Result<Sign> {
        match s {
            0 => Ok(Sign::Positive),
            1 => Ok(Sign::Negative),
            other => Err(Error::invalid("sign bit", format!("{other} is not 0 or 1"))),
        }
    }

    pub fn flip_if(self, cond: bool) -> Sign {
        match (self, cond) {
            (s, false) => s,
            (Sign::Positive, true) => Sign::Negative,
            (Sign::Negative, true) => Sign::Positive,
        }
    }

    fn apply(self, x: Residue) -> Residue {
        match self {
            Sign::Positive => x,
            Sign::Negative => x.neg(),
        }
    }
}

/// `(s, e)` with `A = (-1)^s * h^e mod 2^k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PairRepr", into = "PairRepr")]
pub struct DlgPair {
    sign: Sign,
    e: Exponent,
}

impl DlgPair {
    pub fn new(sign: Sign, e: Exponent) -> Self {
        DlgPair { sign, e }
    }

    pub fn from_parts(width: Width, s: u8, e: u64) -> Result<Self> {
        if width.exponent_bits() < 64 && e >> width.exponent_bits() != 0 {
            return Err(Error::invalid(
                "exponent",
                format!("{e} is not below 2^{}", width.exponent_bits()),
            ));
        }
        Ok(DlgPair::new(
            Sign::from_bit(s)?,
            Exponent::from_u64(width, e),
        ))
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn s(&self) -> u8 {
        self.sign.bit()
    }

    pub fn e(&self) -> &Exponent {
        &self.e
    }

    pub fn width(&self) -> Width {
        self.e.width()
    }
}

impl fmt::Debug for DlgPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(s={}, e={}; k={})", self.s(), self.e, self.width())
    }
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    s: u8,
    e: String,
    k: u32,
}

impl TryFrom<PairRepr> for DlgPair {
    type Error = Error;

    fn try_from(r: PairRepr) -> Result<Self> {
        let width = Width::new(r.k)?;
        Ok(DlgPair::new(
            Sign::from_bit(r.s)?,
            Exponent::from_decimal(width, &r.e)?,
        ))
    }
}

impl From<DlgPair> for PairRepr {
    fn from(p: DlgPair) -> Self {
        PairRepr {
            s: p.s(),
            e: p.e.to_decimal(),
            k: p.width().get(),
        }
    }
}

/// `(s, p, e)` with `x = (-1)^s * 2^p * h^e mod 2^k`.
///
/// `p` is bounded by `k`, and `p == k` is reserved for the zero sentinel
/// `(0, k, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TripleRepr", into = "TripleRepr")]
pub struct DlgTriple {
    sign: Sign,
    p: u32,
    e: Exponent,
}

impl DlgTriple {
    pub fn new(sign: Sign, p: u32, e: Exponent) -> Result<Self> {
        let k = e.width().get();
        if p > k {
            return Err(Error::invalid("triple", format!("p = {p} exceeds k = {k}")));
        }
        if p == k && (sign != Sign::Positive || !e.is_zero()) {
            return Err(Error::invalid(
                "triple",
                format!("p = k = {k} is only valid as the zero sentinel (0, {k}, 0)"),
            ));
        }
        Ok(DlgTriple { sign, p, e })
    }

    pub fn zero(width: Width) -> Self {
        DlgTriple {
            sign: Sign::Positive,
            p: width.get(),
            e: Exponent::zero(width),
        }
    }

    pub fn from_pair(pair: DlgPair, p: u32) -> Result<Self> {
        DlgTriple::new(pair.sign, p, pair.e)
    }

    pub fn is_zero(&self) -> bool {
        self.p == self.width().get()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn s(&self) -> u8 {
        self.sign.bit()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> &Exponent {
        &self.e
    }

    pub fn width(&self) -> Width {
        self.e.width()
    }

    /// The odd part `(s, e)`.
    pub fn pair(&self) -> DlgPair {
        DlgPair::new(self.sign, self.e.clone())
    }
}

impl fmt::Debug for DlgTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(s={}, p={}, e={}; k={})",
            self.s(),
            self.p,
            self.e,
            self.width()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct TripleRepr {
    s: u8,
    p: u32,
    e: String,
    k: u32,
}

impl TryFrom<TripleRepr> for DlgTriple {
    type Error = Error;

    fn try_from(r: TripleRepr) -> Result<Self> {
        let width = Width::new(r.k)?;
        DlgTriple::new(
            Sign::from_bit(r.s)?,
            r.p,
            Exponent::from_decimal(width, &r.e)?,
        )
    }
}

impl From<DlgTriple> for TripleRepr {
    fn from(t: DlgTriple) -> Self {
        TripleRepr {
            s: t.s(),
            p: t.p,
            e: t.e.to_decimal(),
            k: t.width().get(),
        }
    }
}

/// Width-`k` multiplications performed by one [`dlg_counted`] call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct MulCounter {
    count: u32,
}

impl MulCounter {
    pub fn count(self) -> u32 {
        self.count
    }

    /// Upper bound `2(k - 3) + 2` on the count for any input at width `k`.
    pub fn bound(width: Width) -> u32 {
        2 * (width.get() - 3) + 2
    }

    #[inline]
    fn mul(&mut self, a: &Residue, b: &Residue) -> Residue {
        self.count += 1;
        a.mul_same(b)
    }
}

fn same_width(a: Width, b: Width) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::WidthMismatch {
            left: a.get(),
            right: b.get(),
        })
    }
}

fn check_odd_input(a: &Residue, base: &Root) -> Result<()> {
    same_width(a.width(), base.width())?;
    if !a.is_odd() {
        return Err(Error::EvenInput { value: a.to_hex() });
    }
    Ok(())
}

/// Whether an odd `A` is a negated power of the base.
///
/// Positive powers of a base with `h_1 = 0` have `a_1 = 0`, and positive
/// powers of a base with `h_1 = 1` have `a_2 = 0`; negation flips that bit.
pub fn classify_sign(a: &Residue, base: &Root) -> Result<Sign> {
    check_odd_input(a, base)?;
    Ok(sign_of(a, base))
}

#[inline]
fn sign_of(a: &Residue, base: &Root) -> Sign {
    if a.bit_unchecked(base.mod8_class().sign_bit_index()) {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

/// Discrete logarithm of an odd residue.
pub fn dlg(a: &Residue, base: &Root) -> Result<DlgPair> {
    dlg_counted(a, base).map(|(pair, _)| pair)
}

/// [`dlg`] together with the number of width-`k` multiplications it used.
pub fn dlg_counted(a: &Residue, base: &Root) -> Result<(DlgPair, MulCounter)> {
    check_odd_input(a, base)?;
    let width = a.width();
    let k = width.get();
    let mut muls = MulCounter::default();

    let sign = sign_of(a, base);
    let start = sign.apply(a.clone());

    // `acc` tracks h^b, and `work` tracks start * h^b. Each step keeps
    // `work = 1 (mod 2^i)`, so `work` ends at 1 and `b = -e`.
    let mut acc = Residue::one(width);
    let mut b = Exponent::zero(width);
    let low3 = start.low3();
    debug_assert!(low3 == 1 || low3 == base.mod8_class().value());
    if low3 == base.mod8_class().value() {
        acc = base.h().clone();
        b.set_bit(0);
    }
    let mut work = muls.mul(&start, &acc);

    for i in 3..k {
        if work.bit_unchecked(i) {
            b.set_bit(i - 2);
            let step = base.power_of_two_power(i - 2);
            acc = muls.mul(&acc, step);
            work = muls.mul(&work, step);
        }
    }
    debug_assert!(work.is_one());
    debug_assert!(start.mul_same(&acc).is_one());

    Ok((DlgPair::new(sign, b.neg()), muls))
}

/// `h^e mod 2^k` as a product of power-table entries.
fn base_power(base: &Root, e: &Exponent) -> Residue {
    let width = base.width();
    let mut out = Residue::one(width);
    for j in 0..width.exponent_bits() {
        if e.bit(j) {
            out = out.mul_same(base.power_of_two_power(j));
        }
    }
    out
}

/// `(-1)^s * h^e mod 2^k`.
pub fn decode_pair(pair: &DlgPair, base: &Root) -> Result<Residue> {
    same_width(pair.width(), base.width())?;
    Ok(pair.sign.apply(base_power(base, &pair.e)))
}

/// Canonical triple of any residue; zero maps to `(0, k, 0)`.
pub fn factor_triple(x: &Residue, base: &Root) -> Result<DlgTriple> {
    same_width(x.width(), base.width())?;
    let Some(p) = x.trailing_zeros() else {
        return Ok(DlgTriple::zero(x.width()));
    };
    let pair = dlg(&x.shr(p), base)?;
    DlgTriple::from_pair(pair, p)
}

/// `(-1)^s * 2^p * h^e mod 2^k`.
pub fn decode_triple(t: &DlgTriple, base: &Root) -> Result<Residue> {
    same_width(t.width(), base.width())?;
    if t.is_zero() {
        return Ok(Residue::zero(t.width()));
    }
    Ok(t.sign.apply(base_power(base, &t.e)).shl(t.p))
}

/// Multiplication carried out on triples: XOR the signs, add the
/// valuations (saturating to the zero sentinel) and add the exponents.
pub fn log_multiply(a: &DlgTriple, b: &DlgTriple, base: &Root) -> Result<DlgTriple> {
    same_width(a.width(), b.width())?;
    same_width(a.width(), base.width())?;
    let width = a.width();
    let p = a.p + b.p;
    if p >= width.get() {
        return Ok(DlgTriple::zero(width));
    }
    DlgTriple::new(a.sign.flip_if(b.sign == Sign::Negative), p, a.e.add(&b.e)?)
}

/// Inverse on pairs: `(s, e) -> (s, -e mod 2^(k-2))`.
pub fn invert_pair(pair: &DlgPair) -> DlgPair {
    DlgPair::new(pair.sign, pair.e.neg())
}

/// Re-expresses a pair taken at base `from` in terms of base `to`.
///
/// With `to.h = (-1)^t * from.h^d` (`d` is always odd), the exponent becomes
/// `e * d^-1 mod 2^(k-2)` and the sign picks up `t` once per unit of the new
/// exponent.
pub fn rebase(pair: &DlgPair, from: &Root, to: &Root) -> Result<DlgPair> {
    same_width(pair.width(), from.width())?;
    same_width(from.width(), to.width())?;
    let to_in_from = dlg(to.h(), from)?;
    let e = pair.e.mul(&to_in_from.e.inverse()?)?;
    let sign = pair
        .sign
        .flip_if(to_in_from.sign == Sign::Negative && e.is_odd());
    Ok(DlgPair::new(sign, e))
}

/// Discrete log of `A mod 2^j` to base `h mod 2^j`, reusing the truncated
/// power table of `base`.
pub fn dlg_truncated(a: &Residue, base: &Root, j: Width) -> Result<DlgPair> {
    check_odd_input(a, base)?;
    let narrow = base.truncate(j)?;
    dlg(&a.truncate(j)?, &narrow)
}

/// Validates `h` and computes `dlg(A)` in one call.
pub fn dlg_with_base(a: &Residue, h: &Residue) -> Result<DlgPair> {
    dlg(a, &validate_root(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root::root_from_u64;

    fn w(k: u32) -> Width {
        Width::new(k).unwrap()
    }

    fn r(k: u32, v: u64) -> Residue {
        Residue::from_u64(w(k), v)
    }

    fn root(k: u32, h: u64) -> Root {
        root_from_u64(w(k), h).unwrap()
    }

    fn pair(k: u32, s: u8, e: u64) -> DlgPair {
        DlgPair::from_parts(w(k), s, e).unwrap()
    }

    fn triple(k: u32, s: u8, p: u32, e: u64) -> DlgTriple {
        DlgTriple::from_pair(pair(k, s, e), p).unwrap()
    }

    #[test]
    fn classify_sign_examples() {
        assert_eq!(
            classify_sign(&r(5, 7), &root(5, 3)).unwrap(),
            Sign::Negative
        );
        for h in [3, 5, 11, 13, 19, 21, 27, 29] {
            assert_eq!(
                classify_sign(&r(5, 1), &root(5, h)).unwrap(),
                Sign::Positive
            );
        }
        assert_eq!(
            classify_sign(&r(5, 7), &root(5, 5)).unwrap(),
            Sign::Negative
        );
        assert!(matches!(
            classify_sign(&r(5, 8), &root(5, 3)),
            Err(Error::EvenInput { .. })
        ));
    }

    #[test]
    fn dlg_examples() {
        assert_eq!(dlg(&r(5, 17), &root(5, 3)).unwrap(), pair(5, 0, 4));
        assert_eq!(dlg(&r(5, 1), &root(5, 5)).unwrap(), pair(5, 0, 0));
        assert_eq!(dlg(&r(5, 7), &root(5, 3)).unwrap(), pair(5, 1, 6));
        assert_eq!(dlg(&r(5, 7), &root(5, 5)).unwrap(), pair(5, 1, 2));
    }

    #[test]
    fn dlg_errors() {
        assert!(matches!(
            dlg(&r(5, 12), &root(5, 3)),
            Err(Error::EvenInput { .. })
        ));
        assert!(matches!(
            dlg(&r(6, 7), &root(5, 3)),
            Err(Error::WidthMismatch { left: 6, right: 5 })
        ));
    }

    #[test]
    fn dlg_at_k3() {
        let base = root(3, 3);
        assert_eq!(dlg(&r(3, 1), &base).unwrap(), pair(3, 0, 0));
        assert_eq!(dlg(&r(3, 3), &base).unwrap(), pair(3, 0, 1));
        assert_eq!(dlg(&r(3, 5), &base).unwrap(), pair(3, 1, 1));
        assert_eq!(dlg(&r(3, 7), &base).unwrap(), pair(3, 1, 0));
    }

    #[test]
    fn decode_pair_examples() {
        assert_eq!(decode_pair(&pair(5, 0, 0), &root(5, 13)).unwrap(), r(5, 1));
        assert_eq!(decode_pair(&pair(5, 1, 0), &root(5, 13)).unwrap(), r(5, 31));
        assert_eq!(decode_pair(&pair(5, 1, 6), &root(5, 3)).unwrap(), r(5, 7));
    }

    #[test]
    fn factor_triple_examples() {
        assert_eq!(
            factor_triple(&r(5, 12), &root(5, 3)).unwrap(),
            triple(5, 0, 2, 1)
        );
        let zero = factor_triple(&r(5, 0), &root(5, 3)).unwrap();
        assert_eq!(zero, DlgTriple::zero(w(5)));
        assert_eq!((zero.s(), zero.p(), zero.e().to_u64()), (0, 5, Some(0)));
        assert_eq!(
            factor_triple(&r(5, 7), &root(5, 3)).unwrap(),
            triple(5, 1, 0, 6)
        );
    }

    #[test]
    fn decode_triple_examples() {
        assert_eq!(
            decode_triple(&DlgTriple::zero(w(5)), &root(5, 3)).unwrap(),
            r(5, 0)
        );
        assert_eq!(
            decode_triple(&triple(5, 0, 0, 0), &root(5, 5)).unwrap(),
            r(5, 1)
        );
        assert_eq!(
            decode_triple(&triple(5, 0, 2, 1), &root(5, 3)).unwrap(),
            r(5, 12)
        );
    }

    #[test]
    fn triple_validation() {
        let e0 = Exponent::zero(w(5));
        assert!(DlgTriple::new(Sign::Positive, 6, e0.clone()).is_err());
        assert!(DlgTriple::new(Sign::Negative, 5, e0.clone()).is_err());
        assert!(DlgTriple::new(Sign::Positive, 5, Exponent::from_u64(w(5), 1)).is_err());
        assert!(DlgTriple::new(Sign::Positive, 5, e0).unwrap().is_zero());
        assert!(DlgPair::from_parts(w(5), 0, 8).is_err());
        assert!(DlgPair::from_parts(w(5), 2, 0).is_err());
    }

    #[test]
    fn log_multiply_examples() {
        let base = root(5, 3);
        let sq = log_multiply(&triple(5, 0, 0, 1), &triple(5, 0, 0, 1), &base).unwrap();
        assert_eq!(sq, triple(5, 0, 0, 2));
        assert_eq!(decode_triple(&sq, &base).unwrap(), r(5, 9));

        let z = log_multiply(&triple(5, 0, 3, 0), &triple(5, 0, 2, 0), &base).unwrap();
        assert_eq!(z, DlgTriple::zero(w(5)));

        let m = log_multiply(&triple(5, 1, 0, 6), &triple(5, 0, 0, 2), &base).unwrap();
        assert_eq!(m, triple(5, 1, 0, 0));
        assert_eq!(decode_triple(&m, &base).unwrap(), r(5, 31));
    }

    #[test]
    fn invert_pair_examples() {
        assert_eq!(invert_pair(&pair(5, 0, 0)), pair(5, 0, 0));
        assert_eq!(invert_pair(&pair(5, 0, 2)), pair(5, 0, 6));
        assert_eq!(invert_pair(&pair(5, 1, 6)), pair(5, 1, 2));
    }

    #[test]
    fn rebase_examples() {
        let (b3, b5) = (root(5, 3), root(5, 5));
        assert_eq!(dlg(&r(5, 5), &b3).unwrap(), pair(5, 1, 3));
        assert_eq!(rebase(&pair(5, 0, 2), &b3, &b5).unwrap(), pair(5, 0, 6));
        assert_eq!(rebase(&pair(5, 0, 4), &b3, &b5).unwrap(), pair(5, 0, 4));
        for e in 0..8 {
            for s in 0..2 {
                assert_eq!(rebase(&pair(5, s, e), &b3, &b3).unwrap(), pair(5, s, e));
            }
        }
    }

    #[test]
    fn dlg_truncated_examples() {
        let base = root(5, 3);
        assert_eq!(dlg_truncated(&r(5, 7), &base, w(4)).unwrap(), pair(4, 1, 2));
        assert_eq!(dlg_truncated(&r(5, 7), &base, w(5)).unwrap(), pair(5, 1, 6));
        for h in [3, 5, 11, 13, 19, 21, 27, 29] {
            for a in [1, 9, 17, 25] {
                assert_eq!(
                    dlg_truncated(&r(5, a), &root(5, h), w(3)).unwrap(),
                    pair(3, 0, 0)
                );
            }
        }
        assert!(dlg_truncated(&r(5, 7), &base, w(6)).is_err());
    }

    #[test]
    fn json_shapes() {
        let t = triple(5, 0, 2, 1);
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"s":0,"p":2,"e":"1","k":5}"#
        );
        let back: DlgTriple = serde_json::from_str(r#"{"s":0,"p":2,"e":"1","k":5}"#).unwrap();
        assert_eq!(back, t);
        assert_eq!(
            serde_json::to_string(&DlgTriple::zero(w(5))).unwrap(),
            r#"{"s":0,"p":5,"e":"0","k":5}"#
        );
        assert_eq!(
            serde_json::to_string(&pair(5, 1, 6)).unwrap(),
            r#"{"s":1,"e":"6","k":5}"#
        );
        assert!(serde_json::from_str::<DlgTriple>(r#"{"s":0,"p":6,"e":"1","k":5}"#).is_err());
        assert!(serde_json::from_str::<DlgPair>(r#"{"s":0,"e":"8","k":5}"#).is_err());
    }

    #[test]
    fn mul_counter_bound_at_k1024() {
        let k = w(1024);
        let base = root(1024, 3);
        let bound = MulCounter::bound(k);
        assert_eq!(bound, 2044);
        for seed in 1..20u64 {
            let limbs: Vec<u64> = (0..16)
                .map(|i| seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(i * 7) | 1)
                .collect();
            let (pair, muls) = dlg_counted(&Residue::from_limbs(k, &limbs), &base).unwrap();
            assert!(muls.count() <= bound);
            assert!(muls.count() > 1, "{pair:?}");
        }
    }
}
