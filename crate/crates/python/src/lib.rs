//! Python bindings for `dlog2k`.
//!
//! Residues and exponents cross the boundary as Python `int`s. A residue
//! must lie in `[0, 2^k)`, an exponent in `[0, 2^(k-2))`; the width `k` comes
//! from the `Root` argument. Signs are `0` or `1`. Library errors surface as
//! `ValueError`.

use dlog2k::oracle::{self, VectorMode};
use dlog2k::{DlgPair, DlgTriple, Exponent, MulCounter, Residue, Root, Sign, Width};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type Pair = (u8, BigUint);
type Triple = (u8, u32, BigUint);

fn err(e: dlog2k::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn width(k: u32) -> PyResult<Width> {
    Width::new(k).map_err(err)
}

fn residue(k: Width, x: &BigUint) -> PyResult<Residue> {
    Residue::from_hex(k, &format!("{x:#x}")).map_err(err)
}

fn int(x: &Residue) -> BigUint {
    BigUint::parse_bytes(&x.to_hex().as_bytes()[2..], 16).expect("hex digits")
}

fn exponent(k: Width, e: &BigUint) -> PyResult<Exponent> {
    Exponent::from_decimal(k, &e.to_string()).map_err(err)
}

fn exponent_int(e: &Exponent) -> BigUint {
    e.to_decimal().parse().expect("decimal digits")
}

fn pair(k: Width, s: u8, e: &BigUint) -> PyResult<DlgPair> {
    Ok(DlgPair::new(
        Sign::from_bit(s).map_err(err)?,
        exponent(k, e)?,
    ))
}

fn pair_out(p: &DlgPair) -> Pair {
    (p.s(), exponent_int(p.e()))
}

fn triple(k: Width, (s, p, e): &Triple) -> PyResult<DlgTriple> {
    DlgTriple::new(Sign::from_bit(*s).map_err(err)?, *p, exponent(k, e)?).map_err(err)
}

fn triple_out(t: &DlgTriple) -> Triple {
    (t.s(), t.p(), exponent_int(t.e()))
}

/// A validated semi-primitive root `h` modulo `2^k` (`h mod 8` is 3 or 5).
#[pyclass(frozen, name = "Root", module = "dlog2k")]
pub struct PyRoot {
    inner: Root,
}

impl PyRoot {
    fn k(&self) -> Width {
        self.inner.width()
    }
}

#[pymethods]
impl PyRoot {
    #[new]
    fn new(k: u32, h: BigUint) -> PyResult<Self> {
        let h = residue(width(k)?, &h)?;
        Ok(PyRoot {
            inner: dlog2k::validate_root(&h).map_err(err)?,
        })
    }

    #[getter(k)]
    fn get_k(&self) -> u32 {
        self.k().get()
    }

    #[getter]
    fn h(&self) -> BigUint {
        int(self.inner.h())
    }

    #[getter]
    fn mod8_class(&self) -> u8 {
        self.inner.mod8_class().value()
    }

    /// `[h, h^2, h^4, ..., h^(2^(k-3))]`.
    #[getter]
    fn power_table(&self) -> Vec<BigUint> {
        self.inner.power_table().iter().map(int).collect()
    }

    fn __eq__(&self, other: &PyRoot) -> bool {
        self.inner.h() == other.inner.h()
    }

    fn __repr__(&self) -> String {
        format!("Root(k={}, h={})", self.k(), self.inner.h())
    }
}

/// All semi-primitive roots modulo `2^k` in ascending order (`k <= 16`).
#[pyfunction]
fn enumerate_roots(k: u32) -> PyResult<Vec<PyRoot>> {
    let roots = dlog2k::enumerate_roots(width(k)?).map_err(err)?;
    Ok(roots.into_iter().map(|inner| PyRoot { inner }).collect())
}

/// `(s, e)` with `a = (-1)^s * h^e mod 2^k` for odd `a`.
#[pyfunction]
fn dlg(a: BigUint, base: &PyRoot) -> PyResult<Pair> {
    let a = residue(base.k(), &a)?;
    Ok(pair_out(&dlog2k::dlg(&a, &base.inner).map_err(err)?))
}

/// Like `dlg`, also returning the number of k-bit multiplications used.
#[pyfunction]
fn dlg_counted(a: BigUint, base: &PyRoot) -> PyResult<(u8, BigUint, u32)> {
    let a = residue(base.k(), &a)?;
    let (p, muls) = dlog2k::dlg_counted(&a, &base.inner).map_err(err)?;
    Ok((p.s(), exponent_int(p.e()), muls.count()))
}

/// Upper bound `2(k-3)+2` on the multiplications `dlg` performs.
#[pyfunction]
fn mul_bound(k: u32) -> PyResult<u32> {
    Ok(MulCounter::bound(width(k)?))
}

#[pyfunction]
fn classify_sign(a: BigUint, base: &PyRoot) -> PyResult<u8> {
    let a = residue(base.k(), &a)?;
    Ok(dlog2k::classify_sign(&a, &base.inner).map_err(err)?.bit())
}

#[pyfunction]
fn decode_pair(s: u8, e: BigUint, base: &PyRoot) -> PyResult<BigUint> {
    let p = pair(base.k(), s, &e)?;
    Ok(int(&dlog2k::decode_pair(&p, &base.inner).map_err(err)?))
}

/// `(s, p, e)` with `x = (-1)^s * 2^p * h^e mod 2^k`; zero maps to `(0, k, 0)`.
#[pyfunction]
fn factor(x: BigUint, base: &PyRoot) -> PyResult<Triple> {
    let x = residue(base.k(), &x)?;
    Ok(triple_out(
        &dlog2k::factor_triple(&x, &base.inner).map_err(err)?,
    ))
}

#[pyfunction]
fn decode(s: u8, p: u32, e: BigUint, base: &PyRoot) -> PyResult<BigUint> {
    let t = triple(base.k(), &(s, p, e))?;
    Ok(int(&dlog2k::decode_triple(&t, &base.inner).map_err(err)?))
}

/// The triple of the product of two factored residues.
#[pyfunction]
fn log_multiply(a: Triple, b: Triple, base: &PyRoot) -> PyResult<Triple> {
    let (a, b) = (triple(base.k(), &a)?, triple(base.k(), &b)?);
    Ok(triple_out(
        &dlog2k::log_multiply(&a, &b, &base.inner).map_err(err)?,
    ))
}

/// The pair of `a^-1` given the pair of `a`.
#[pyfunction]
fn invert_pair(k: u32, s: u8, e: BigUint) -> PyResult<Pair> {
    Ok(pair_out(&dlog2k::invert_pair(&pair(width(k)?, s, &e)?)))
}

/// Re-expresses a pair relative to another base of the same width.
#[pyfunction]
fn rebase(s: u8, e: BigUint, from_base: &PyRoot, to_base: &PyRoot) -> PyResult<Pair> {
    let p = pair(from_base.k(), s, &e)?;
    Ok(pair_out(
        &dlog2k::rebase(&p, &from_base.inner, &to_base.inner).map_err(err)?,
    ))
}

/// Multiplicative inverse of odd `a` modulo `2^k`.
#[pyfunction]
fn inverse(k: u32, a: BigUint) -> PyResult<BigUint> {
    let a = residue(width(k)?, &a)?;
    Ok(int(&a.inverse().map_err(err)?))
}

/// Reference discrete log by linear scan over the powers of `h` (`k <= 20`).
#[pyfunction]
fn brute_force_dlg(a: BigUint, base: &PyRoot) -> PyResult<Pair> {
    let a = residue(base.k(), &a)?;
    Ok(pair_out(
        &oracle::brute_force_dlg(&a, &base.inner).map_err(err)?,
    ))
}

/// Conformance vectors as `(x, s, p, e)` tuples: every residue when
/// `samples` is `None` (`k <= 16`), otherwise `samples` SplitMix64 draws.
#[pyfunction]
#[pyo3(signature = (base, samples=None, seed=0))]
fn generate_vectors(
    base: &PyRoot,
    samples: Option<usize>,
    seed: u64,
) -> PyResult<Vec<(BigUint, u8, u32, BigUint)>> {
    let mode = match samples {
        None => VectorMode::Exhaustive,
        Some(count) => VectorMode::Sampled { count, seed },
    };
    let k = base.k();
    oracle::generate_vectors(&base.inner, mode)
        .map_err(err)?
        .map(|v| {
            let v = v.map_err(err)?;
            let t = v.triple().map_err(err)?;
            let x = Residue::from_hex(k, &v.x).map_err(err)?;
            Ok((int(&x), t.s(), t.p(), exponent_int(t.e())))
        })
        .collect()
}

#[pymodule(name = "dlog2k")]
pub fn dlog2k_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRoot>()?;
    m.add_function(wrap_pyfunction!(enumerate_roots, m)?)?;
    m.add_function(wrap_pyfunction!(dlg, m)?)?;
    m.add_function(wrap_pyfunction!(dlg_counted, m)?)?;
    m.add_function(wrap_pyfunction!(mul_bound, m)?)?;
    m.add_function(wrap_pyfunction!(classify_sign, m)?)?;
    m.add_function(wrap_pyfunction!(decode_pair, m)?)?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(log_multiply, m)?)?;
    m.add_function(wrap_pyfunction!(invert_pair, m)?)?;
    m.add_function(wrap_pyfunction!(rebase, m)?)?;
    m.add_function(wrap_pyfunction!(inverse, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_dlg, m)?)?;
    m.add_function(wrap_pyfunction!(generate_vectors, m)?)?;
    Ok(())
}
