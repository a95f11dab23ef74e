use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::Path;
use std::time::Instant;

use dlog2k::oracle::{
    brute_force_dlg, generate_vectors, naive_decode_triple, DlgTable, SplitMix64, VectorMode,
};
use dlog2k::{
    classify_sign, decode_triple, dlg, dlg_counted, enumerate_roots, factor_triple, validate_root,
    DlgTriple, Exponent, MulCounter, Residue, Root, Sign, Width,
};
use serde_json::json;
use thiserror::Error;

use crate::Format;

/// Widest range `verify --exhaustive` accepts.
const MAX_EXHAUSTIVE_VERIFY: u32 = 10;
/// Sampled verification also compares against the linear scan up to this width.
const MAX_SCAN_VERIFY: u32 = 16;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] dlog2k::Error),
    #[error("{0}")]
    BadArgs(String),
    #[error("I/O failure: {0}")]
    Io(#[from] io::Error),
    #[error("verification failed: {0} mismatches")]
    Mismatch(u64),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::BadArgs(_) => 2,
            CliError::Io(_) | CliError::Mismatch(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

fn base_root(k: Width, base: &str) -> Result<Root> {
    Ok(validate_root(&Residue::from_hex(k, base)?)?)
}

pub fn factor(out: &mut impl Write, k: Width, base: &str, x: &str, format: Format) -> Result<()> {
    let root = base_root(k, base)?;
    let x = Residue::from_hex(k, x)?;
    let t = factor_triple(&x, &root)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&t).expect("serializable"))?,
        Format::Plain => writeln!(out, "s={} p={} e={}", t.s(), t.p(), t.e())?,
    }
    Ok(())
}

pub fn decode(
    out: &mut impl Write,
    k: Width,
    base: &str,
    s: u8,
    p: u32,
    e: &str,
    format: Format,
) -> Result<()> {
    let root = base_root(k, base)?;
    let t = DlgTriple::new(Sign::from_bit(s)?, p, Exponent::from_decimal(k, e)?)?;
    let x = decode_triple(&t, &root)?;
    match format {
        Format::Json => writeln!(out, "{}", json!({ "k": k.get(), "x": x.to_hex() }))?,
        Format::Plain => writeln!(out, "{x}")?,
    }
    Ok(())
}

pub fn roots(out: &mut impl Write, k: Width, count_only: bool, format: Format) -> Result<()> {
    let roots = enumerate_roots(k)?;
    match (count_only, format) {
        (true, _) => writeln!(out, "{}", roots.len())?,
        (false, Format::Plain) => {
            for r in &roots {
                writeln!(out, "{}", r.h())?;
            }
        }
        (false, Format::Json) => {
            let hs: Vec<String> = roots.iter().map(|r| r.h().to_hex()).collect();
            writeln!(out, "{}", json!({ "k": k.get(), "roots": hs }))?;
        }
    }
    Ok(())
}

#[derive(Debug, Default)]
struct Tally {
    checked: u64,
    mismatches: u64,
}

impl Tally {
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            if self.mismatches < 10 {
                eprintln!("mismatch: {}", detail());
            }
            self.mismatches += 1;
        }
    }
}

fn verify_exhaustive(k: Width, bases: &[Root], tally: &mut Tally) -> Result<()> {
    for base in bases {
        let table = DlgTable::new(base)?;
        for a in (1..1u64 << k.get()).step_by(2) {
            let a = Residue::from_u64(k, a);
            let fast = dlg(&a, base)?;
            let slow = table.lookup(&a);
            tally.record(slow.as_ref() == Some(&fast), || {
                format!(
                    "k={k} h={} A={a}: engine {fast:?}, table {slow:?}",
                    base.h()
                )
            });
        }
    }
    Ok(())
}

fn verify_sampled(
    base: &Root,
    rng: &mut SplitMix64,
    count: usize,
    tally: &mut Tally,
) -> Result<()> {
    let k = base.width();
    for _ in 0..count {
        let a = rng.odd_residue(k);
        let (pair, muls) = dlg_counted(&a, base)?;
        let back = naive_decode_triple(&DlgTriple::from_pair(pair.clone(), 0)?, base.h())?;
        let mut ok = back == a
            && muls.count() <= MulCounter::bound(k)
            && classify_sign(&a, base)? == pair.sign();
        if k.get() <= MAX_SCAN_VERIFY {
            ok &= brute_force_dlg(&a, base)? == pair;
        }
        tally.record(ok, || format!("k={k} h={} A={a}: {pair:?}", base.h()));
    }
    Ok(())
}

pub fn verify(
    out: &mut impl Write,
    widths: RangeInclusive<u32>,
    base: Option<&str>,
    mode: Mode,
    format: Format,
) -> Result<()> {
    if mode == Mode::Exhaustive && *widths.end() > MAX_EXHAUSTIVE_VERIFY {
        return Err(CliError::BadArgs(format!(
            "exhaustive verification is limited to k <= {MAX_EXHAUSTIVE_VERIFY}; use --samples"
        )));
    }
    let mut rng = match mode {
        Mode::Sampled { seed, .. } => SplitMix64::new(seed),
        Mode::Exhaustive => SplitMix64::new(0),
    };
    let mut total = Tally::default();
    let mut rows = Vec::new();
    for k in widths {
        let k = Width::new(k)?;
        let bases = match (base, mode) {
            (Some(h), _) => vec![base_root(k, h)?],
            (None, Mode::Exhaustive) => enumerate_roots(k)?,
            (None, Mode::Sampled { .. }) => vec![base_root(k, "0x3")?],
        };
        let mut tally = Tally::default();
        match mode {
            Mode::Exhaustive => verify_exhaustive(k, &bases, &mut tally)?,
            Mode::Sampled { count, .. } => verify_sampled(&bases[0], &mut rng, count, &mut tally)?,
        }
        match format {
            Format::Plain => writeln!(
                out,
                "k={k}: {} base(s), {} checked, {} mismatches",
                bases.len(),
                tally.checked,
                tally.mismatches
            )?,
            Format::Json => rows.push(json!({
                "k": k.get(),
                "bases": bases.len(),
                "checked": tally.checked,
                "mismatches": tally.mismatches,
            })),
        }
        total.checked += tally.checked;
        total.mismatches += tally.mismatches;
    }
    match format {
        Format::Plain => writeln!(
            out,
            "total: {} checked, {} mismatches",
            total.checked, total.mismatches
        )?,
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "widths": rows, "checked": total.checked, "mismatches": total.mismatches })
        )?,
    }
    if total.mismatches > 0 {
        return Err(CliError::Mismatch(total.mismatches));
    }
    Ok(())
}

pub fn vectors(
    stdout: &mut impl Write,
    k: Width,
    base: &str,
    mode: Mode,
    path: Option<&Path>,
) -> Result<()> {
    let root = base_root(k, base)?;
    let mode = match mode {
        Mode::Exhaustive => VectorMode::Exhaustive,
        Mode::Sampled { count, seed } => VectorMode::Sampled { count, seed },
    };
    let stream = generate_vectors(&root, mode)?;
    let write_all = |out: &mut dyn Write| -> Result<()> {
        for v in stream {
            writeln!(out, "{}", v?.to_json_line())?;
        }
        out.flush()?;
        Ok(())
    };
    match path {
        Some(p) => write_all(&mut BufWriter::new(File::create(p)?)),
        None => write_all(&mut BufWriter::new(stdout)),
    }
}

pub fn bench(
    out: &mut impl Write,
    k: Width,
    base: &str,
    samples: usize,
    seed: u64,
    format: Format,
) -> Result<()> {
    if samples == 0 {
        return Err(CliError::BadArgs("--samples must be positive".into()));
    }
    let root = base_root(k, base)?;
    let mut rng = SplitMix64::new(seed);
    let inputs: Vec<Residue> = (0..samples).map(|_| rng.odd_residue(k)).collect();
    let mut max_muls = 0;
    let start = Instant::now();
    for a in &inputs {
        let (_, muls) = dlg_counted(a, &root)?;
        max_muls = max_muls.max(muls.count());
    }
    let total = start.elapsed();
    let mean = total / samples as u32;
    let bound = MulCounter::bound(k);
    match format {
        Format::Plain => writeln!(
            out,
            "k={k} base={} calls={samples} total={total:.3?} mean={mean:.3?} max_muls={max_muls} bound={bound}",
            root.h()
        )?,
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "k": k.get(),
                "base": root.h().to_hex(),
                "calls": samples,
                "total_ns": total.as_nanos() as u64,
                "mean_ns": mean.as_nanos() as u64,
                "max_muls": max_muls,
                "bound": bound,
            })
        )?,
    }
    Ok(())
}
