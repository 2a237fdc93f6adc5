//! Ordered key/value reports rendered as text lines or a JSON object.
//! Exact values are always carried as strings.

use serde_json::{Map, Value};

use super::config::Format;

#[derive(Debug, Default, Clone, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    /// Exact values (maps, field elements, polynomials) by their display form.
    pub fn put_exact(&mut self, key: &str, value: &impl std::fmt::Display) -> &mut Self {
        self.put(key, value.to_string())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self
                .entries
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}: {s}"),
                    other => format!("{k}: {other}"),
                })
                .collect::<Vec<_>>()
                .join("\n"),
            Format::Json => {
                let mut m = Map::new();
                for (k, v) in &self.entries {
                    m.insert(k.clone(), v.clone());
                }
                serde_json::to_string_pretty(&Value::Object(m)).expect("JSON values serialize")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_formats() {
        let mut r = Report::new();
        r.put("map", "z^2 - 2").put("degree", 2).put("steps", vec![2, 2, 1]);
        assert_eq!(r.render(Format::Text), "map: z^2 - 2\ndegree: 2\nsteps: [2,2,1]");
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["map"], "z^2 - 2");
        assert_eq!(v["steps"][2], 1);
        // identical inputs serialize identically
        assert_eq!(r.render(Format::Json), r.clone().render(Format::Json));
    }
}
