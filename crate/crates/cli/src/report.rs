//! Command output: an ordered list of facts rendered either as `key: value`
//! text or as a JSON object. Both renderings carry the same facts.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Fact {
    Text(String),
    Count(u64),
    Flag(bool),
    List(Vec<String>),
}

impl From<&str> for Fact {
    fn from(s: &str) -> Self {
        Fact::Text(s.to_string())
    }
}

impl From<String> for Fact {
    fn from(s: String) -> Self {
        Fact::Text(s)
    }
}

impl From<usize> for Fact {
    fn from(n: usize) -> Self {
        Fact::Count(n as u64)
    }
}

impl From<u64> for Fact {
    fn from(n: u64) -> Self {
        Fact::Count(n)
    }
}

impl From<bool> for Fact {
    fn from(b: bool) -> Self {
        Fact::Flag(b)
    }
}

impl From<Vec<String>> for Fact {
    fn from(v: Vec<String>) -> Self {
        Fact::List(v)
    }
}

/// The result of one command. `failed` marks a verification failure.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub failed: bool,
    facts: Vec<(String, Fact)>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            failed: false,
            facts: Vec::new(),
        }
    }

    pub fn fact(&mut self, key: &str, value: impl Into<Fact>) -> &mut Self {
        self.facts.push((key.to_string(), value.into()));
        self
    }

    /// Record a pass/fail check; any failure fails the report.
    pub fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        self.failed |= !ok;
        self.fact(key, if ok { "pass" } else { "fail" })
    }

    pub fn facts(&self) -> &[(String, Fact)] {
        &self.facts
    }

    pub fn status(&self) -> &'static str {
        if self.failed {
            "fail"
        } else {
            "ok"
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain values");
                s.push('\n');
                s
            }
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "status: {}", self.status()).unwrap();
        for (k, v) in &self.facts {
            match v {
                Fact::Text(s) => writeln!(out, "{k}: {s}"),
                Fact::Count(n) => writeln!(out, "{k}: {n}"),
                Fact::Flag(b) => writeln!(out, "{k}: {b}"),
                Fact::List(items) => {
                    writeln!(out, "{k}:").unwrap();
                    items.iter().try_for_each(|i| writeln!(out, "  - {i}"))
                }
            }
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut facts = Map::new();
        for (k, v) in &self.facts {
            let v = match v {
                Fact::Text(s) => Value::from(s.as_str()),
                Fact::Count(n) => Value::from(*n),
                Fact::Flag(b) => Value::from(*b),
                Fact::List(items) => Value::from(items.clone()),
            };
            facts.insert(k.clone(), v);
        }
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command.as_str()));
        top.insert("status".into(), Value::from(self.status()));
        top.insert("facts".into(), Value::Object(facts));
        Value::Object(top)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = Report::new("space classes");
        r.fact("classes", 1usize).fact("representatives", vec!["[0,0:RU]".to_string()]);
        assert_eq!(
            r.render(Format::Text),
            "command: space classes\nstatus: ok\nclasses: 1\nrepresentatives:\n  - [0,0:RU]\n"
        );
        r.check("axioms", false);
        assert_eq!(r.to_json()["status"], "fail");
        assert_eq!(r.to_json()["facts"]["classes"], 1);
    }
}
