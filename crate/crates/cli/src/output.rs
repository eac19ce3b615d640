//! Result records and their json, csv and plain renderings.

use clap::ValueEnum;
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    /// One JSON object per line.
    #[default]
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub value_re: f64,
    pub value_im: f64,
    pub meta: Map<String, Value>,
}

impl ResultRecord {
    pub fn new(command: &str, inputs: Map<String, Value>, value: Complex<f64>) -> Self {
        ResultRecord {
            command: command.to_string(),
            inputs,
            value_re: value.re,
            value_im: value.im,
            meta: Map::new(),
        }
    }

    pub fn meta(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.meta.insert(key.to_string(), v.into());
        self
    }

    pub fn value(&self) -> Complex<f64> {
        Complex::new(self.value_re, self.value_im)
    }
}

/// Builds an `inputs` map from key/value pairs.
#[macro_export]
macro_rules! inputs {
    ($($k:literal => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = serde_json::Map::new();
        $( m.insert($k.to_string(), serde_json::json!($v)); )*
        m
    }};
}

/// Writes records in `format`. For csv one header row precedes the data.
pub fn emit(out: &mut dyn Write, format: Format, records: &[ResultRecord]) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["command", "inputs", "value_re", "value_im", "meta"])?;
            for r in records {
                w.write_record([
                    r.command.clone(),
                    Value::Object(r.inputs.clone()).to_string(),
                    format!("{:?}", r.value_re),
                    format!("{:?}", r.value_im),
                    Value::Object(r.meta.clone()).to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Plain => {
            for r in records {
                let sign = if r.value_im.is_sign_negative() { '-' } else { '+' };
                write!(out, "{}: {:?} {sign} {:?}i", r.command, r.value_re, r.value_im.abs())?;
                let ins: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                if !ins.is_empty() {
                    write!(out, "  [{}]", ins.join(" "))?;
                }
                writeln!(out)?;
                for (k, v) in &r.meta {
                    writeln!(out, "    {k}: {v}")?;
                }
            }
        }
    }
    Ok(())
}

/// CSV with one row per `(class, value)`, used by `lens-sum --multiset`.
pub fn emit_class_rows(out: &mut dyn Write, rows: &[(String, Complex<f64>)]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(["class", "value_re", "value_im"])?;
    for (c, v) in rows {
        w.write_record([c.clone(), format!("{:?}", v.re), format!("{:?}", v.im)])?;
    }
    w.flush()?;
    Ok(())
}
