//! The record every command emits, and its two serializations.
//!
//! The table form has one line per field, `section<TAB>key<TAB>value`, with
//! a `[]` suffix on keys holding lists (items joined by commas). The JSON
//! form is an object with fixed key order. Big integers are always decimal
//! strings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Field {
    Scalar(String),
    List(Vec<String>),
}

impl Field {
    pub fn as_scalar(&self) -> Option<&str> {
        match self {
            Field::Scalar(s) => Some(s),
            Field::List(_) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[String]> {
        match self {
            Field::List(v) => Some(v),
            Field::Scalar(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OutputRecord {
    /// The subcommand and its arguments as given.
    pub command: String,
    pub inputs: Vec<(String, Field)>,
    pub outputs: Vec<(String, Field)>,
    /// Names of the theorems or identities the command checked.
    pub checks: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::error::Error for ParseError {}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "malformed record: {}", self.0)
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            ',' => out.push_str("\\c"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Result<String, ParseError> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some('c') => out.push(','),
            other => return Err(ParseError(format!("bad escape \\{other:?}"))),
        }
    }
    Ok(out)
}

impl OutputRecord {
    pub fn new(command: impl Into<String>) -> Self {
        OutputRecord { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.push((key.to_string(), Field::Scalar(value.to_string())));
        self
    }

    pub fn output(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.outputs.push((key.to_string(), Field::Scalar(value.to_string())));
        self
    }

    pub fn output_list<I, T>(&mut self, key: &str, items: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        let items = items.into_iter().map(|t| t.to_string()).collect();
        self.outputs.push((key.to_string(), Field::List(items)));
        self
    }

    pub fn check(&mut self, name: &str) -> &mut Self {
        self.checks.push(name.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.outputs.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// The scalar output `key`, if present.
    pub fn scalar(&self, key: &str) -> Option<&str> {
        self.get(key).and_then(Field::as_scalar)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command\t\t{}", escape(&self.command));
        for (section, fields) in [("input", &self.inputs), ("output", &self.outputs)] {
            for (k, v) in fields {
                match v {
                    Field::Scalar(s) => {
                        let _ = writeln!(out, "{section}\t{}\t{}", escape(k), escape(s));
                    }
                    Field::List(items) => {
                        let joined: Vec<String> = items.iter().map(|s| escape(s)).collect();
                        let _ = writeln!(out, "{section}\t{}[]\t{}", escape(k), joined.join(","));
                    }
                }
            }
        }
        for c in &self.checks {
            let _ = writeln!(out, "check\t\t{}", escape(c));
        }
        let _ = writeln!(out, "elapsed_ms\t\t{}", self.elapsed_ms);
        out
    }

    pub fn from_table(text: &str) -> Result<Self, ParseError> {
        let mut r = OutputRecord::default();
        let mut saw_command = false;
        for line in text.lines().filter(|l| !l.is_empty()) {
            let mut parts = line.splitn(3, '\t');
            let (Some(section), Some(key), Some(value)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(ParseError(format!("line {line:?} has fewer than three columns")));
            };
            match section {
                "command" => {
                    r.command = unescape(value)?;
                    saw_command = true;
                }
                "check" => r.checks.push(unescape(value)?),
                "elapsed_ms" => {
                    r.elapsed_ms = value.parse().map_err(|_| ParseError(format!("elapsed {value:?}")))?;
                }
                "input" | "output" => {
                    let (name, field) = match key.strip_suffix("[]") {
                        Some(name) => {
                            let items = if value.is_empty() {
                                Vec::new()
                            } else {
                                value.split(',').map(unescape).collect::<Result<_, _>>()?
                            };
                            (name, Field::List(items))
                        }
                        None => (key, Field::Scalar(unescape(value)?)),
                    };
                    let entry = (unescape(name)?, field);
                    if section == "input" {
                        r.inputs.push(entry);
                    } else {
                        r.outputs.push(entry);
                    }
                }
                other => return Err(ParseError(format!("unknown section {other:?}"))),
            }
        }
        if !saw_command {
            return Err(ParseError("no command line".into()));
        }
        Ok(r)
    }

    pub fn to_json_value(&self) -> Value {
        let section = |fields: &[(String, Field)]| {
            let mut m = Map::new();
            for (k, v) in fields {
                m.insert(k.clone(), serde_json::to_value(v).expect("strings serialize"));
            }
            Value::Object(m)
        };
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("inputs".into(), section(&self.inputs));
        m.insert("outputs".into(), section(&self.outputs));
        m.insert("checks".into(), self.checks.iter().cloned().map(Value::String).collect());
        m.insert("elapsed_ms".into(), Value::from(self.elapsed_ms));
        Value::Object(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let v: Value = serde_json::from_str(text).map_err(|e| ParseError(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| ParseError("not an object".into()))?;
        let str_of = |key: &str| {
            obj.get(key)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| ParseError(format!("missing {key}")))
        };
        let section = |key: &str| -> Result<Vec<(String, Field)>, ParseError> {
            let m = obj
                .get(key)
                .and_then(Value::as_object)
                .ok_or_else(|| ParseError(format!("missing {key}")))?;
            m.iter()
                .map(|(k, v)| {
                    serde_json::from_value::<Field>(v.clone())
                        .map(|f| (k.clone(), f))
                        .map_err(|e| ParseError(format!("{key}.{k}: {e}")))
                })
                .collect()
        };
        let checks = obj
            .get("checks")
            .and_then(Value::as_array)
            .ok_or_else(|| ParseError("missing checks".into()))?
            .iter()
            .map(|c| c.as_str().map(str::to_string).ok_or_else(|| ParseError("check not a string".into())))
            .collect::<Result<_, _>>()?;
        Ok(OutputRecord {
            command: str_of("command")?,
            inputs: section("inputs")?,
            outputs: section("outputs")?,
            checks,
            elapsed_ms: obj
                .get("elapsed_ms")
                .and_then(Value::as_u64)
                .ok_or_else(|| ParseError("missing elapsed_ms".into()))?,
        })
    }
}
