//! Rendering of exact results as text, JSON, symbolic or decimal output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use toric_core::exactnum::{approximate, LogLinear, Place};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Symbolic,
    Decimal,
}

/// One computed quantity with optional context fields and place breakdown.
pub struct Report {
    pub quantity: &'static str,
    pub value: LogLinear,
    pub fields: Vec<(&'static str, Value)>,
    pub per_place: Option<BTreeMap<Place, LogLinear>>,
}

impl Report {
    pub fn new(quantity: &'static str, value: LogLinear) -> Self {
        Report { quantity, value, fields: Vec::new(), per_place: None }
    }

    pub fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn places(mut self, per_place: BTreeMap<Place, LogLinear>) -> Self {
        self.per_place = Some(per_place);
        self
    }

    pub fn render(&self, format: Format, bits: u32) -> String {
        match format {
            Format::Symbolic => format!("{}\n", self.value),
            Format::Decimal => format!("{}\n", approximate(&self.value, bits).decimal),
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&self.to_json(bits)).expect("serializable");
                out.push('\n');
                out
            }
            Format::Text => self.to_text(bits),
        }
    }

    fn to_json(&self, bits: u32) -> Value {
        let mut m = Map::new();
        m.insert("quantity".into(), self.quantity.into());
        for (k, v) in &self.fields {
            m.insert((*k).into(), v.clone());
        }
        let a = approximate(&self.value, bits);
        m.insert("value".into(), self.value.to_json());
        m.insert("symbolic".into(), self.value.to_string().into());
        m.insert("decimal".into(), a.decimal.into());
        m.insert("error_bound".into(), a.error_bound.to_string().into());
        if let Some(pp) = &self.per_place {
            let places: Map<String, Value> = pp
                .iter()
                .map(|(v, x)| (v.to_string(), json!({"value": x.to_json(), "symbolic": x.to_string()})))
                .collect();
            m.insert("per_place".into(), Value::Object(places));
        }
        Value::Object(m)
    }

    fn to_text(&self, bits: u32) -> String {
        let mut s = String::new();
        for (k, v) in &self.fields {
            let shown = match v {
                Value::String(t) => t.clone(),
                other => other.to_string(),
            };
            writeln!(s, "{k}: {shown}").unwrap();
        }
        writeln!(s, "{}: {}", self.quantity, self.value).unwrap();
        if !self.value.is_rational() {
            writeln!(s, "  ≈ {}", approximate(&self.value, bits).decimal).unwrap();
        }
        if let Some(pp) = &self.per_place {
            writeln!(s, "per place:").unwrap();
            for (v, x) in pp {
                writeln!(s, "  {:>5}  {x}", v.to_string()).unwrap();
            }
        }
        s
    }
}
