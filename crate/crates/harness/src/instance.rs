//! Instance files: a JSON document with an explicit `dim`, row-major complex
//! matrices written as `[re, im]` pairs and optional spectra.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "label": "z-up",
//!   "rho": [
//!     [[1.0, 0.0], [0.0, 0.0]],
//!     [[0.0, 0.0], [0.0, 0.0]]
//!   ],
//!   "basis_a": [
//!     [[1.0, 0.0], [0.0, 0.0]],
//!     [[0.0, 0.0], [1.0, 0.0]]
//!   ]
//! }
//! ```
//!
//! Basis matrices hold the kets as columns.

use std::io;
use std::path::Path;

use kdq_core::linalg::{seeded_rng, ComplexMatrix, C64};
use kdq_core::quantum::{DensityOperator, Observable, PvmBasis};
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::error::{HarnessError, Result};

type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    dim: usize,
    label: String,
    rho: Rows,
    basis_a: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis_b: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spectrum_a: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    spectrum_b: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub label: String,
    pub rho: DensityOperator,
    pub basis_a: PvmBasis,
    pub basis_b: Option<PvmBasis>,
    pub spectrum_a: Option<Vec<f64>>,
    pub spectrum_b: Option<Vec<f64>>,
}

fn to_matrix(field: &'static str, dim: usize, rows: &Rows) -> Result<ComplexMatrix> {
    let bad = |found: String| HarnessError::Invariant {
        field,
        message: format!("expected {dim}x{dim} matrix, found {found}"),
    };
    if rows.len() != dim {
        return Err(bad(format!("{} rows", rows.len())));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != dim) {
        return Err(bad(format!("a row of length {}", r.len())));
    }
    let entries = rows.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect();
    ComplexMatrix::from_row_major(dim, dim, entries).map_err(|e| invariant(field, e))
}

fn to_rows(m: &ComplexMatrix) -> Rows {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect()
}

fn invariant(field: &'static str, e: kdq_core::Error) -> HarnessError {
    HarnessError::Invariant { field, message: e.to_string() }
}

fn check_spectrum(field: &'static str, basis: Option<&PvmBasis>, spectrum: &Option<Vec<f64>>) -> Result<()> {
    match (basis, spectrum) {
        (_, None) => Ok(()),
        (None, Some(_)) => Err(HarnessError::Invariant { field, message: "spectrum given without its basis".into() }),
        (Some(b), Some(s)) => Observable::new(b.clone(), s.clone()).map(|_| ()).map_err(|e| invariant(field, e)),
    }
}

impl Instance {
    pub fn new(
        label: impl Into<String>,
        rho: DensityOperator,
        basis_a: PvmBasis,
        basis_b: Option<PvmBasis>,
    ) -> Result<Self> {
        let inst = Self { label: label.into(), rho, basis_a, basis_b, spectrum_a: None, spectrum_b: None };
        inst.validate()?;
        Ok(inst)
    }

    pub fn with_spectra(mut self, spectrum_a: Option<Vec<f64>>, spectrum_b: Option<Vec<f64>>) -> Result<Self> {
        self.spectrum_a = spectrum_a;
        self.spectrum_b = spectrum_b;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let mismatch = |field, found: usize| HarnessError::Invariant {
            field,
            message: format!("dimension {found} does not match rho dimension {d}"),
        };
        if self.basis_a.dim() != d {
            return Err(mismatch("basis_a", self.basis_a.dim()));
        }
        if let Some(b) = &self.basis_b {
            if b.dim() != d {
                return Err(mismatch("basis_b", b.dim()));
            }
        }
        check_spectrum("spectrum_a", Some(&self.basis_a), &self.spectrum_a)?;
        check_spectrum("spectrum_b", self.basis_b.as_ref(), &self.spectrum_b)
    }

    /// Random state of the given rank and Haar-random bases, all drawn from stream 0 of `seed`.
    pub fn random(d: usize, rank: usize, seed: u64, with_b: bool) -> Result<Self> {
        let mut rng = seeded_rng(seed, 0);
        let rho = DensityOperator::random_with(&mut rng, d, rank)?;
        let basis_a = PvmBasis::random_with(&mut rng, d)?;
        let basis_b = if with_b { Some(PvmBasis::random_with(&mut rng, d)?) } else { None };
        Self::new(format!("random-d{d}-r{rank}-s{seed}"), rho, basis_a, basis_b)
    }

    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    pub fn observable_a(&self) -> Option<Observable> {
        let s = self.spectrum_a.clone()?;
        Observable::new(self.basis_a.clone(), s).ok()
    }

    pub fn observable_b(&self) -> Option<Observable> {
        let s = self.spectrum_b.clone()?;
        Observable::new(self.basis_b.clone()?, s).ok()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut de = serde_json::Deserializer::from_str(text);
        let file: InstanceFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            HarnessError::Schema { path, line: inner.line(), column: inner.column(), message: inner.to_string() }
        })?;
        de.end().map_err(|e| HarnessError::Schema {
            path: ".".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let d = file.dim;
        if d == 0 {
            return Err(HarnessError::Invariant { field: "dim", message: "dimension must be positive".into() });
        }
        let rho = DensityOperator::new(to_matrix("rho", d, &file.rho)?).map_err(|e| invariant("rho", e))?;
        let basis_a = PvmBasis::new(to_matrix("basis_a", d, &file.basis_a)?).map_err(|e| invariant("basis_a", e))?;
        let basis_b = match &file.basis_b {
            Some(rows) => Some(PvmBasis::new(to_matrix("basis_b", d, rows)?).map_err(|e| invariant("basis_b", e))?),
            None => None,
        };
        Self::new(file.label, rho, basis_a, basis_b)?.with_spectra(file.spectrum_a, file.spectrum_b)
    }

    /// Canonical form: two-space indented JSON, one matrix row per line, trailing newline.
    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            dim: self.dim(),
            label: self.label.clone(),
            rho: to_rows(self.rho.matrix()),
            basis_a: to_rows(self.basis_a.matrix()),
            basis_b: self.basis_b.as_ref().map(|b| to_rows(b.matrix())),
            spectrum_a: self.spectrum_a.clone(),
            spectrum_b: self.spectrum_b.clone(),
        };
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, RowFormatter::default());
        file.serialize(&mut ser).expect("instance values are finite");
        buf.push(b'\n');
        String::from_utf8(buf).expect("json output is utf-8")
    }
}

/// Indented JSON down to the matrix level; each matrix row stays on one line.
#[derive(Default)]
struct RowFormatter {
    depth: usize,
    has_value: bool,
}

const INDENTED_DEPTH: usize = 2;

impl RowFormatter {
    fn indented(&self) -> bool {
        self.depth <= INDENTED_DEPTH
    }

    fn open<W: ?Sized + io::Write>(&mut self, w: &mut W, bracket: &[u8]) -> io::Result<()> {
        self.depth += 1;
        self.has_value = false;
        w.write_all(bracket)
    }

    fn close<W: ?Sized + io::Write>(&mut self, w: &mut W, bracket: &[u8]) -> io::Result<()> {
        let indented = self.indented();
        self.depth -= 1;
        if indented && self.has_value {
            w.write_all(b"\n")?;
            w.write_all(&b"  ".repeat(self.depth))?;
        }
        w.write_all(bracket)
    }

    fn separate<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if self.indented() {
            w.write_all(if first { b"\n" } else { b",\n" })?;
            w.write_all(&b"  ".repeat(self.depth))
        } else if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }
}

impl Formatter for RowFormatter {
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.open(w, b"[")
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.close(w, b"]")
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.separate(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.open(w, b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.close(w, b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.separate(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}

pub fn parse_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    Instance::from_json(&text)
}

pub fn emit_instance(inst: &Instance, path: &Path) -> Result<()> {
    std::fs::write(path, inst.to_json()).map_err(|e| HarnessError::io(path, e))
}
