//! Discrete logarithms modulo `2^k` with any semi-primitive root as base.
//!
//! Every `k`-bit integer factors as `x = (-1)^s * 2^p * h^e mod 2^k` where
//! `h` is a semi-primitive root (`h = 3` or `5 (mod 8)`). This crate provides
//! fixed-width arithmetic on `k`-bit residues ([`kbit`]), validation of the
//! base ([`root`]), the digit-serial discrete-log algorithm and the triple
//! codec ([`dlg`]), and brute-force reference implementations with
//! conformance-vector generation ([`oracle`]).
//!
//! ```
//! use dlog2k::{dlg, root_from_u64, Residue, Width};
//!
//! let k = Width::new(5).unwrap();
//! let base = root_from_u64(k, 3).unwrap();
//! let pair = dlg(&Residue::from_u64(k, 7), &base).unwrap();
//! // 7 = -(3^6) mod 32
//! assert_eq!((pair.s(), pair.e().to_u64()), (1, Some(6)));
//! ```

pub mod dlg;
pub mod error;
pub mod kbit;
mod limbs;
pub mod oracle;
pub mod root;

pub use dlg::{
    classify_sign, decode_pair, decode_triple, dlg, dlg_counted, dlg_truncated, dlg_with_base,
    factor_triple, invert_pair, log_multiply, rebase, DlgPair, DlgTriple, MulCounter, Sign,
};
pub use error::{Error, Result};
pub use kbit::{Exponent, Residue, Width, MAX_WIDTH, MIN_WIDTH};
pub use root::{
    enumerate_roots, multiplicative_order, multiplicative_order_log2, root_from_u64, validate_root,
    Mod8Class, Root, MAX_ENUMERATION_WIDTH,
};
