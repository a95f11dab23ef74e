//! Brute-force reference implementations and conformance vectors.
//!
//! Nothing here uses the power table or the digit-serial algorithm to decide
//! an answer. Powers are built by repeated multiplication and inverses by the
//! extended Euclidean algorithm over arbitrary-precision integers, so a bug in
//! the fast paths cannot hide behind a shared helper.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dlg::{factor_triple, DlgPair, DlgTriple, Sign};
use crate::error::{Error, Result};
use crate::kbit::{Exponent, Residue, Width};
use crate::root::{Root, MAX_ENUMERATION_WIDTH};

/// Largest width for which the brute-force tables are built.
pub const MAX_TABLE_WIDTH: u32 = 20;

fn table_guard(what: &'static str, width: Width, limit: u32) -> Result<()> {
    if width.get() > limit {
        return Err(Error::TooLarge {
            what,
            k: width.get(),
            limit,
        });
    }
    Ok(())
}

/// SplitMix64, the generator behind every sampled mode.
///
/// `state += 0x9e3779b97f4a7c15`, then
/// `z = (state ^ (state >> 30)) * 0xbf58476d1ce4e5b9`,
/// `z = (z ^ (z >> 27)) * 0x94d049bb133111eb`, output `z ^ (z >> 31)`
/// (all arithmetic wrapping modulo `2^64`). A random `k`-bit residue takes
/// `ceil(k / 64)` outputs as little-endian limbs and drops the bits above `k`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn residue(&mut self, width: Width) -> Residue {
        let limbs: Vec<u64> = (0..width.get().div_ceil(64))
            .map(|_| self.next_u64())
            .collect();
        Residue::from_limbs(width, &limbs)
    }

    /// A random residue with bit 0 forced to one.
    pub fn odd_residue(&mut self, width: Width) -> Residue {
        let mut limbs: Vec<u64> = (0..width.get().div_ceil(64))
            .map(|_| self.next_u64())
            .collect();
        limbs[0] |= 1;
        Residue::from_limbs(width, &limbs)
    }

    /// A uniformly random semi-primitive root base: odd, with the mod-8
    /// class taken from bit 1 of the raw draw.
    pub fn root_base(&mut self, width: Width) -> Residue {
        let mut limbs: Vec<u64> = (0..width.get().div_ceil(64))
            .map(|_| self.next_u64())
            .collect();
        let class = if limbs[0] & 2 == 0 { 3 } else { 5 };
        limbs[0] = (limbs[0] & !7) | class;
        Residue::from_limbs(width, &limbs)
    }
}

/// Forward and backward discrete-log tables for one base.
#[derive(Debug, Clone)]
pub struct DlgTable {
    base: Root,
    forward: Vec<Residue>,
    backward: HashMap<Residue, (Sign, u64)>,
}

/// Result of trying to split the odd residues as `{±h^i : 0 <= i < 2^(k-2)}`.
struct Cover {
    forward: Vec<Residue>,
    backward: HashMap<Residue, (Sign, u64)>,
    bijective: bool,
}

fn cover(h: &Residue) -> Cover {
    let width = h.width();
    let half = 1u64 << width.exponent_bits();
    let mut forward = Vec::with_capacity(half as usize);
    let mut backward = HashMap::with_capacity(2 * half as usize);
    let mut bijective = true;
    let mut cur = Residue::one(width);
    for i in 0..half {
        let neg = cur.neg();
        bijective &= backward.insert(cur.clone(), (Sign::Positive, i)).is_none();
        bijective &= backward.insert(neg, (Sign::Negative, i)).is_none();
        forward.push(cur.clone());
        cur = cur.mul(h).expect("same width");
    }
    bijective &= backward.len() as u64 == 2 * half;
    Cover {
        forward,
        backward,
        bijective,
    }
}

/// Whether `{±h^i mod 2^k : 0 <= i < 2^(k-2)}` is exactly the set of odd
/// residues, checked by enumeration.
pub fn covers_odd_residues(h: &Residue) -> Result<bool> {
    table_guard("odd-residue cover check", h.width(), MAX_TABLE_WIDTH)?;
    if !h.is_odd() {
        return Ok(false);
    }
    Ok(cover(h).bijective)
}

impl DlgTable {
    pub fn new(base: &Root) -> Result<Self> {
        table_guard("brute-force table", base.width(), MAX_TABLE_WIDTH)?;
        let c = cover(base.h());
        if !c.bijective {
            return Err(Error::invalid(
                "base",
                format!("{} does not generate the odd residues up to sign", base.h()),
            ));
        }
        Ok(DlgTable {
            base: base.clone(),
            forward: c.forward,
            backward: c.backward,
        })
    }

    pub fn base(&self) -> &Root {
        &self.base
    }

    /// `h^i` for `0 <= i < 2^(k-2)`.
    pub fn forward(&self) -> &[Residue] {
        &self.forward
    }

    /// Sign and exponent of an odd residue, `None` for even input.
    pub fn lookup(&self, a: &Residue) -> Option<DlgPair> {
        let width = self.base.width();
        self.backward
            .get(a)
            .map(|&(sign, e)| DlgPair::new(sign, Exponent::from_u64(width, e)))
    }

    /// Whether `a` is a non-negated power of the base.
    pub fn is_positive_power(&self, a: &Residue) -> bool {
        matches!(self.backward.get(a), Some((Sign::Positive, _)))
    }

    /// Canonical triple of `x`, using the table for the odd part.
    pub fn triple(&self, x: &Residue) -> Result<DlgTriple> {
        let width = self.base.width();
        let Some(p) = x.trailing_zeros() else {
            return Ok(DlgTriple::zero(width));
        };
        let pair = self
            .lookup(&x.shr(p))
            .ok_or_else(|| Error::invalid("table", format!("{} missing", x.shr(p))))?;
        DlgTriple::from_pair(pair, p)
    }
}

/// Discrete log by linear scan over `h^0, h^1, ...`.
pub fn brute_force_dlg(a: &Residue, base: &Root) -> Result<DlgPair> {
    let width = base.width();
    table_guard("brute-force discrete log", width, MAX_TABLE_WIDTH)?;
    if a.width() != width {
        return Err(Error::WidthMismatch {
            left: a.width().get(),
            right: width.get(),
        });
    }
    if !a.is_odd() {
        return Err(Error::EvenInput { value: a.to_hex() });
    }
    let neg = a.neg();
    let mut cur = Residue::one(width);
    for i in 0..1u64 << width.exponent_bits() {
        if cur == *a {
            return Ok(DlgPair::new(Sign::Positive, Exponent::from_u64(width, i)));
        }
        if cur == neg {
            return Ok(DlgPair::new(Sign::Negative, Exponent::from_u64(width, i)));
        }
        cur = cur.mul(base.h())?;
    }
    Err(Error::invalid(
        "base",
        format!("{} is not reached by ±{}^i", a, base.h()),
    ))
}

/// Least `t >= 1` with `a^t = 1`, by repeated multiplication.
pub fn brute_force_order(a: &Residue) -> Result<u64> {
    table_guard("brute-force order", a.width(), MAX_TABLE_WIDTH)?;
    if !a.is_odd() {
        return Err(Error::EvenInput { value: a.to_hex() });
    }
    let mut cur = a.clone();
    let mut t = 1;
    while !cur.is_one() {
        cur = cur.mul(a)?;
        t += 1;
    }
    Ok(t)
}

pub(crate) fn to_biguint(x: &Residue) -> BigUint {
    let bytes: Vec<u8> = x.limbs().iter().flat_map(|l| l.to_le_bytes()).collect();
    BigUint::from_bytes_le(&bytes)
}

pub(crate) fn from_biguint(width: Width, x: &BigUint) -> Residue {
    Residue::from_limbs(width, &x.to_u64_digits())
}

/// Inverse modulo `2^k` by the extended Euclidean algorithm.
pub fn extended_gcd_inverse(a: &Residue) -> Result<Residue> {
    if !a.is_odd() {
        return Err(Error::EvenInput { value: a.to_hex() });
    }
    let width = a.width();
    let modulus = BigInt::one() << width.get() as usize;
    let (mut r0, mut r1) = (
        modulus.clone(),
        BigInt::from_biguint(BigSign::Plus, to_biguint(a)),
    );
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    debug_assert!(r0.is_one());
    let inv = t0.mod_floor(&modulus);
    Ok(from_biguint(width, inv.magnitude()))
}

/// `(-1)^s * 2^p * h^e mod 2^k` by square-and-multiply on `h`.
pub fn naive_decode_triple(t: &DlgTriple, h: &Residue) -> Result<Residue> {
    if t.width() != h.width() {
        return Err(Error::WidthMismatch {
            left: t.width().get(),
            right: h.width().get(),
        });
    }
    let odd = h.pow_exponent(t.e());
    let signed = match t.sign() {
        Sign::Positive => odd,
        Sign::Negative => odd.neg(),
    };
    signed.mul(&Residue::power_of_two(h.width(), t.p()))
}

/// One conformance record: `x = (-1)^s * 2^p * h^e mod 2^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestVector {
    pub k: u32,
    pub h: String,
    pub x: String,
    pub s: u8,
    pub p: u32,
    pub e: String,
}

impl TestVector {
    pub fn new(h: &Residue, x: &Residue, t: &DlgTriple) -> Self {
        TestVector {
            k: h.width().get(),
            h: h.to_hex(),
            x: x.to_hex(),
            s: t.s(),
            p: t.p(),
            e: t.e().to_decimal(),
        }
    }

    pub fn triple(&self) -> Result<DlgTriple> {
        let width = Width::new(self.k)?;
        DlgTriple::new(
            Sign::from_bit(self.s)?,
            self.p,
            Exponent::from_decimal(width, &self.e)?,
        )
    }

    /// Re-decodes the triple naively and compares against `x`.
    pub fn check(&self) -> Result<bool> {
        let width = Width::new(self.k)?;
        let h = Residue::from_hex(width, &self.h)?;
        let x = Residue::from_hex(width, &self.x)?;
        Ok(naive_decode_triple(&self.triple()?, &h)? == x)
    }

    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorMode {
    /// Every `x` in `[0, 2^k)`, ascending.
    Exhaustive,
    /// `count` residues drawn from [`SplitMix64`] seeded with `seed`.
    Sampled { count: usize, seed: u64 },
}

/// Stream of [`TestVector`]s; see [`generate_vectors`].
pub struct VectorStream {
    base: Root,
    source: Source,
}

enum Source {
    Exhaustive {
        table: DlgTable,
        next: u64,
        end: u64,
    },
    Sampled {
        rng: SplitMix64,
        remaining: usize,
    },
}

impl Iterator for VectorStream {
    type Item = Result<TestVector>;

    fn next(&mut self) -> Option<Self::Item> {
        let width = self.base.width();
        match &mut self.source {
            Source::Exhaustive { table, next, end } => {
                if *next >= *end {
                    return None;
                }
                let x = Residue::from_u64(width, *next);
                *next += 1;
                Some(
                    table
                        .triple(&x)
                        .map(|t| TestVector::new(self.base.h(), &x, &t)),
                )
            }
            Source::Sampled { rng, remaining } => {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                let x = rng.residue(width);
                Some(sampled_vector(&self.base, &x))
            }
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = match &self.source {
            Source::Exhaustive { next, end, .. } => (end - next) as usize,
            Source::Sampled { remaining, .. } => *remaining,
        };
        (n, Some(n))
    }
}

fn sampled_vector(base: &Root, x: &Residue) -> Result<TestVector> {
    let t = factor_triple(x, base)?;
    if naive_decode_triple(&t, base.h())? != *x {
        return Err(Error::invalid(
            "vector",
            format!("triple {t:?} does not decode to {x}"),
        ));
    }
    Ok(TestVector::new(base.h(), x, &t))
}

/// Conformance vectors for one base.
///
/// Exhaustive mode (k <= 16) answers from the brute-force table. Sampled
/// mode factors with the digit-serial algorithm and re-checks every record by
/// naive decoding before emitting it.
pub fn generate_vectors(base: &Root, mode: VectorMode) -> Result<VectorStream> {
    let width = base.width();
    let source = match mode {
        VectorMode::Exhaustive => {
            table_guard("exhaustive vector generation", width, MAX_ENUMERATION_WIDTH)?;
            Source::Exhaustive {
                table: DlgTable::new(base)?,
                next: 0,
                end: 1 << width.get(),
            }
        }
        VectorMode::Sampled { count, seed } => Source::Sampled {
            rng: SplitMix64::new(seed),
            remaining: count,
        },
    };
    Ok(VectorStream {
        base: base.clone(),
        source,
    })
}
