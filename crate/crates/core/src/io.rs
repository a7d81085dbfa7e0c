//! JSON frame files.
//!
//! ```json
//! { "field": "complex", "p": 2.0, "dimension": 2,
//!   "atoms": [ { "weight": 0.5, "functional": [[1.0, 0.0], ...], "vector": [...] } ] }
//! ```
//!
//! Real scalars are bare numbers, complex scalars `[re, im]`. Doubles are
//! written in shortest round-trip form, so write→read is bit-exact.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Exponent, Frame};
use crate::measure::MeasureSpace;
use crate::scalar::{self, Field, Scalar, ScalarRepr};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomRecord {
    pub weight: f64,
    pub functional: Vec<ScalarRepr>,
    pub vector: Vec<ScalarRepr>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameFile {
    pub field: Field,
    pub p: f64,
    pub dimension: usize,
    pub atoms: Vec<AtomRecord>,
}

impl From<&Frame> for FrameFile {
    fn from(frame: &Frame) -> Self {
        let field = frame.field();
        let atoms = (0..frame.len())
            .map(|i| AtomRecord {
                weight: frame.space().weight(i),
                functional: scalar::encode_all(frame.functional(i), field),
                vector: scalar::encode_all(frame.vector(i), field),
            })
            .collect();
        FrameFile { field, p: frame.p(), dimension: frame.dim(), atoms }
    }
}

impl TryFrom<FrameFile> for Frame {
    type Error = Error;

    fn try_from(file: FrameFile) -> Result<Frame> {
        let d = file.dimension;
        let mut weights = Vec::with_capacity(file.atoms.len());
        let mut functionals: Vec<Scalar> = Vec::with_capacity(file.atoms.len() * d);
        let mut vectors: Vec<Scalar> = Vec::with_capacity(file.atoms.len() * d);
        for atom in &file.atoms {
            for row in [&atom.functional, &atom.vector] {
                if row.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: row.len() });
                }
            }
            weights.push(atom.weight);
            functionals.extend(scalar::decode_all(&atom.functional));
            vectors.extend(scalar::decode_all(&atom.vector));
        }
        Frame::new(MeasureSpace::new(weights)?, Exponent::new(file.p)?, file.field, d, functionals, vectors)
    }
}

pub fn frame_to_json(frame: &Frame) -> String {
    serde_json::to_string_pretty(&FrameFile::from(frame)).expect("frame files always serialize")
}

pub fn frame_from_json(text: &str) -> Result<Frame> {
    let file: FrameFile = serde_json::from_str(text)?;
    Frame::try_from(file)
}

pub fn write_frame(frame: &Frame, path: &Path) -> Result<()> {
    let mut text = frame_to_json(frame);
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_frame(path: &Path) -> Result<Frame> {
    frame_from_json(&fs::read_to_string(path)?)
}

/// Reads a vector stored as a JSON array of scalars.
pub fn read_vector(path: &Path) -> Result<Vec<Scalar>> {
    vector_from_json(&fs::read_to_string(path)?)
}

pub fn vector_from_json(text: &str) -> Result<Vec<Scalar>> {
    let reprs: Vec<ScalarRepr> = serde_json::from_str(text)?;
    let v = scalar::decode_all(&reprs);
    if !scalar::all_finite(&v) {
        return Err(Error::NonFinite("vector file"));
    }
    Ok(v)
}
