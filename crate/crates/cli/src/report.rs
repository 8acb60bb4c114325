use std::fmt::Display;

use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Field {
    Text(String),
    List(Vec<String>),
    Block(String),
}

/// Ordered key/value report, rendered as text lines or as JSON.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, Field)>,
}

impl Report {
    pub fn text(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.entries
            .push((key.to_string(), Field::Text(value.to_string())));
        self
    }

    pub fn list<I, T>(&mut self, key: &str, items: I) -> &mut Self
    where
        I: IntoIterator<Item = T>,
        T: Display,
    {
        let items = items.into_iter().map(|i| i.to_string()).collect();
        self.entries.push((key.to_string(), Field::List(items)));
        self
    }

    /// Multi-line content such as a DOT graph.
    pub fn block(&mut self, key: &str, content: impl Into<String>) -> &mut Self {
        self.entries
            .push((key.to_string(), Field::Block(content.into())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find_map(|(k, f)| match f {
            Field::Text(v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (key, field) in &self.entries {
            match field {
                Field::Text(v) => out.push_str(&format!("{key}: {v}\n")),
                Field::List(items) => {
                    out.push_str(&format!("{key}:\n"));
                    for item in items {
                        out.push_str(&format!("  - {item}\n"));
                    }
                }
                Field::Block(content) => {
                    out.push_str(&format!("{key}: |\n"));
                    for line in content.lines() {
                        out.push_str(&format!("  {line}\n"));
                    }
                }
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut map = Map::new();
        for (key, field) in &self.entries {
            let value = match field {
                Field::Text(v) | Field::Block(v) => Value::String(v.clone()),
                Field::List(items) => {
                    Value::Array(items.iter().cloned().map(Value::String).collect())
                }
            };
            map.insert(key.clone(), value);
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
        text.push('\n');
        text
    }
}
