use std::fs;
use std::io::{self, Write};
use std::path::Path;

use dualinv_core::{DualMatrix, DualVector, RealMatrix};
use serde::Deserialize;
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

use crate::Failure;

#[derive(Debug, Deserialize)]
struct MatrixDoc {
    real: Vec<Vec<f64>>,
    #[serde(default)]
    dual: Option<Vec<Vec<f64>>>,
}

fn read_doc(path: &Path) -> Result<MatrixDoc, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("cannot parse {}: {e}", path.display())))
}

fn to_real(rows: &[Vec<f64>], what: &str, path: &Path) -> Result<RealMatrix, Failure> {
    RealMatrix::from_rows(rows)
        .map_err(|e| Failure::usage(format!("{} in {}: {e}", what, path.display())))
}

pub fn read_matrix(path: &Path) -> Result<DualMatrix, Failure> {
    let doc = read_doc(path)?;
    let real = to_real(&doc.real, "real part", path)?;
    let dual = match &doc.dual {
        Some(rows) => to_real(rows, "dual part", path)?,
        None => RealMatrix::zeros(real.rows(), real.cols()),
    };
    DualMatrix::new(real, dual).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn read_vector(path: &Path) -> Result<DualVector, Failure> {
    let m = read_matrix(path)?;
    if m.shape().1 != 1 {
        return Err(Failure::usage(format!(
            "{}: expected a single column, got {} columns",
            path.display(),
            m.shape().1
        )));
    }
    DualVector::new(m.real().column_values(), m.dual().column_values())
        .map_err(|e| Failure::usage(e.to_string()))
}

pub fn real_json(m: &RealMatrix) -> Value {
    json!(m.to_rows())
}

pub fn dual_json(m: &DualMatrix) -> Value {
    json!({"real": real_json(m.real()), "dual": real_json(m.dual())})
}

pub fn vector_json(v: &DualVector) -> Value {
    let (real, dual) = v.as_columns();
    json!({"real": real_json(&real), "dual": real_json(&dual)})
}

/// Pretty printer that writes floats as `{:.16e}` (round-trips every finite
/// `f64`) and keeps arrays nested in arrays, such as matrix rows, on one line.
#[derive(Default)]
struct Precise {
    indent: usize,
    in_array: Vec<bool>,
    compact: Vec<bool>,
    has_value: bool,
}

impl Precise {
    fn newline<W: ?Sized + Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.indent {
            w.write_all(b"  ")?;
        }
        Ok(())
    }

    fn inline(&self) -> bool {
        self.compact.last().copied().unwrap_or(false)
    }
}

impl Formatter for Precise {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        let nested = self.in_array.last().copied().unwrap_or(false);
        self.in_array.push(true);
        self.compact.push(nested || self.inline());
        if !self.inline() {
            self.indent += 1;
        }
        self.has_value = false;
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        let compact = self.compact.pop().unwrap_or(false);
        self.in_array.pop();
        if !compact {
            self.indent -= 1;
            if self.has_value {
                self.newline(w)?;
            }
        }
        w.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if self.inline() {
            if !first {
                w.write_all(b", ")?;
            }
            Ok(())
        } else {
            if !first {
                w.write_all(b",")?;
            }
            self.newline(w)
        }
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.in_array.push(false);
        self.compact.push(false);
        self.indent += 1;
        self.has_value = false;
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.in_array.pop();
        self.compact.pop();
        self.indent -= 1;
        if self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}

pub fn render(doc: &Value) -> Vec<u8> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise::default());
    serde::Serialize::serialize(doc, &mut ser).expect("in-memory JSON serialization");
    buf.push(b'\n');
    buf
}

/// Ordered object builder.
#[derive(Default)]
pub struct Doc(Map<String, Value>);

impl Doc {
    pub fn new(command: &str) -> Self {
        let mut d = Self::default();
        d.set("command", command);
        d
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }
}
