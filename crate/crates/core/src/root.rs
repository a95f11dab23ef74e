//! Semi-primitive roots modulo `2^k`.
//!
//! For `k >= 3` the unit group is `<-1> x <h>` exactly when `h = 3` or
//! `h = 5 (mod 8)`. Those bases have order `2^(k-2)` and their powers together
//! with the negated powers cover every odd residue. `h = 7 (mod 8)` is
//! rejected even at `k = 3`, where its order happens to be `2^(k-2)` as well,
//! because `-1` is then itself a power of `h`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kbit::{Residue, Width};

/// Largest width accepted by [`enumerate_roots`].
pub const MAX_ENUMERATION_WIDTH: u32 = 16;

/// Low three bits of a valid base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mod8Class {
    /// `h = 011 (mod 8)`: `h_1 = 1`, so positive powers have `a_2 = 0`.
    Three,
    /// `h = 101 (mod 8)`: `h_1 = 0`, so positive powers have `a_1 = 0`.
    Five,
}

impl Mod8Class {
    pub fn value(self) -> u8 {
        match self {
            Mod8Class::Three => 3,
            Mod8Class::Five => 5,
        }
    }

    /// Bit `h_1` of the base.
    pub fn h1(self) -> u8 {
        match self {
            Mod8Class::Three => 1,
            Mod8Class::Five => 0,
        }
    }

    /// Index of the bit that is zero for every positive power of the base.
    pub fn sign_bit_index(self) -> u32 {
        match self {
            Mod8Class::Three => 2,
            Mod8Class::Five => 1,
        }
    }
}

impl TryFrom<u8> for Mod8Class {
    type Error = u8;

    fn try_from(low3: u8) -> std::result::Result<Self, u8> {
        match low3 & 7 {
            3 => Ok(Mod8Class::Three),
            5 => Ok(Mod8Class::Five),
            other => Err(other),
        }
    }
}

/// A validated base `h` with its squaring table `[h^(2^0), ..., h^(2^(k-3))]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Root {
    h: Residue,
    class: Mod8Class,
    power_table: Vec<Residue>,
}

impl Root {
    pub fn h(&self) -> &Residue {
        &self.h
    }

    pub fn width(&self) -> Width {
        self.h.width()
    }

    pub fn mod8_class(&self) -> Mod8Class {
        self.class
    }

    /// `power_table()[j] == h^(2^j)` for `0 <= j <= k - 3`.
    pub fn power_table(&self) -> &[Residue] {
        &self.power_table
    }

    /// `h^(2^j)`.
    #[inline]
    pub fn power_of_two_power(&self, j: u32) -> &Residue {
        &self.power_table[j as usize]
    }

    /// The same base viewed modulo `2^j`. Entries of the power table are
    /// truncated rather than recomputed.
    pub fn truncate(&self, j: Width) -> Result<Root> {
        let h = self.h.truncate(j)?;
        let power_table = self.power_table[..j.exponent_bits() as usize]
            .iter()
            .map(|p| p.truncate(j))
            .collect::<Result<Vec<_>>>()?;
        Ok(Root {
            h,
            class: self.class,
            power_table,
        })
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Root({} mod 2^{})", self.h, self.width())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.h, f)
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Root", 2)?;
        st.serialize_field("h", &self.h)?;
        st.serialize_field("k", &self.width())?;
        st.end()
    }
}

/// Accepts `h` as a logarithm base iff `h mod 8` is 3 or 5, and builds its
/// power table with `k - 3` squarings.
pub fn validate_root(h: &Residue) -> Result<Root> {
    if !h.is_odd() {
        return Err(Error::EvenInput { value: h.to_hex() });
    }
    let k = h.width().get();
    let class = Mod8Class::try_from(h.low3()).map_err(|mod8| Error::InvalidBase {
        h: h.to_hex(),
        k,
        mod8,
    })?;

    let mut power_table = Vec::with_capacity((k - 2) as usize);
    power_table.push(h.clone());
    for j in 1..=k - 3 {
        let prev = &power_table[j as usize - 1];
        let next = prev.mul_same(prev);
        power_table.push(next);
    }

    // h^(2^(k-3)) must be 2^(k-1) + 1.
    if k > 3 {
        let expected = Residue::power_of_two(h.width(), k - 1).add(&Residue::one(h.width()))?;
        if power_table[(k - 3) as usize] != expected {
            return Err(Error::InvalidBase {
                h: h.to_hex(),
                k,
                mod8: class.value(),
            });
        }
    }

    Ok(Root {
        h: h.clone(),
        class,
        power_table,
    })
}

/// Convenience constructor from a small base value.
pub fn root_from_u64(width: Width, h: u64) -> Result<Root> {
    validate_root(&Residue::from_u64(width, h))
}

/// Multiplicative order of an odd residue, returned as `log2` of the order.
///
/// The unit group modulo `2^k` is a 2-group, so the order is found by
/// repeated squaring: at most `k - 2` multiplications.
pub fn multiplicative_order_log2(a: &Residue) -> Result<u32> {
    if !a.is_odd() {
        return Err(Error::EvenInput { value: a.to_hex() });
    }
    let mut cur = a.clone();
    let mut log2 = 0;
    while !cur.is_one() {
        cur = cur.mul_same(&cur);
        log2 += 1;
    }
    Ok(log2)
}

/// Multiplicative order of an odd residue, when it fits in a `u64`.
pub fn multiplicative_order(a: &Residue) -> Result<u64> {
    let log2 = multiplicative_order_log2(a)?;
    1u64.checked_shl(log2)
        .ok_or_else(|| Error::invalid("order", format!("2^{log2} does not fit in 64 bits")))
}

/// All semi-primitive roots modulo `2^k` in ascending order.
pub fn enumerate_roots(width: Width) -> Result<Vec<Root>> {
    let k = width.get();
    if k > MAX_ENUMERATION_WIDTH {
        return Err(Error::TooLarge {
            what: "root enumeration (use validate_root for a single base)",
            k,
            limit: MAX_ENUMERATION_WIDTH,
        });
    }
    (3u64..1 << k)
        .step_by(2)
        .filter(|h| matches!(h & 7, 3 | 5))
        .map(|h| root_from_u64(width, h))
        .collect()
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
    fn validate_three_at_k5() {
        let root = root_from_u64(w(5), 3).unwrap();
        assert_eq!(root.mod8_class(), Mod8Class::Three);
        assert_eq!(root.mod8_class().value(), 3);
        assert_eq!(root.power_table(), &[r(5, 3), r(5, 9), r(5, 17)]);
    }

    #[test]
    fn validate_five_at_k5() {
        let root = root_from_u64(w(5), 5).unwrap();
        assert_eq!(root.mod8_class(), Mod8Class::Five);
        assert_eq!(root.mod8_class().h1(), 0);
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(matches!(
            root_from_u64(w(5), 7),
            Err(Error::InvalidBase { mod8: 7, k: 5, .. })
        ));
        assert!(matches!(
            root_from_u64(w(5), 1),
            Err(Error::InvalidBase { mod8: 1, .. })
        ));
        assert!(matches!(
            root_from_u64(w(5), 6),
            Err(Error::EvenInput { .. })
        ));
        // 7 has order 2 = 2^(k-2) at k = 3 but is still rejected.
        assert!(root_from_u64(w(3), 7).is_err());
    }

    #[test]
    fn invalid_base_message_names_the_rule() {
        let msg = root_from_u64(w(5), 7).unwrap_err().to_string();
        assert!(msg.contains("mod 8"), "{msg}");
        assert!(msg.contains("3 or 5"), "{msg}");
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(&r(5, 3)).unwrap(), 8);
        for k in [3, 9, 100] {
            assert_eq!(multiplicative_order(&r(k, 1)).unwrap(), 1);
        }
        assert_eq!(multiplicative_order(&r(5, 17)).unwrap(), 2);
        assert!(multiplicative_order(&r(5, 4)).is_err());
        assert_eq!(multiplicative_order_log2(&r(1024, 3)).unwrap(), 1022);
    }

    #[test]
    fn enumerate_small_widths() {
        let hs = |k| -> Vec<u64> {
            enumerate_roots(w(k))
                .unwrap()
                .iter()
                .map(|r| r.h().to_u64().unwrap())
                .collect()
        };
        assert_eq!(hs(3), vec![3, 5]);
        assert_eq!(hs(4), vec![3, 5, 11, 13]);
        assert_eq!(hs(5).len(), 8);
        assert!(matches!(
            enumerate_roots(w(17)),
            Err(Error::TooLarge {
                k: 17,
                limit: 16,
                ..
            })
        ));
    }

    #[test]
    fn truncated_root_keeps_class_and_table() {
        let root = root_from_u64(w(40), 0x1234_5675).unwrap();
        for j in 3..=40 {
            let t = root.truncate(w(j)).unwrap();
            let direct = validate_root(&root.h().truncate(w(j)).unwrap()).unwrap();
            assert_eq!(t, direct);
        }
    }

    #[test]
    fn power_table_at_large_width() {
        let root = root_from_u64(w(4096), 3).unwrap();
        let table = root.power_table();
        assert_eq!(table.len(), 4094);
        for pair in table.windows(2).take(50) {
            assert_eq!(pair[1], pair[0].mul(&pair[0]).unwrap());
        }
    }
}
