use serde::Serialize;
use serde_json::{Map, Value};

/// Machine-readable result of one invocation. Keys are emitted in sorted
/// order so identical invocations produce identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub seed: Option<u64>,
    #[serde(rename = "toolVersion")]
    pub tool_version: &'static str,
}

impl OutputEnvelope {
    pub fn new(command: &str, parameters: Value, results: Value) -> Self {
        let parameters = match parameters {
            Value::Object(map) => map,
            _ => Map::new(),
        };
        OutputEnvelope {
            command: command.to_string(),
            parameters,
            results,
            seed: None,
            tool_version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_json(&self) -> String {
        // round-trip through Value: its maps are ordered by key
        let value = serde_json::to_value(self).expect("envelope serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted() {
        let env = OutputEnvelope::new("x", json!({"b": 1, "a": 2}), json!({"z": 0, "m": {"y": 1, "c": 2}}));
        let text = env.to_json();
        let order: Vec<usize> = ["\"command\"", "\"parameters\"", "\"results\"", "\"seed\"", "\"toolVersion\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.find("\"c\"").unwrap() < text.find("\"y\"").unwrap());
    }
}
