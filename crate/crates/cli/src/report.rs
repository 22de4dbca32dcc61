use crate::Format;
use serde::Serialize;

/// Result of one command: exit code plus a report rendered in either format.
pub struct Outcome {
    pub code: u8,
    pub body: Body,
}

pub enum Body {
    Report {
        value: serde_json::Value,
        text: String,
    },
    Error(String),
}

impl Outcome {
    pub fn report<T: Serialize>(code: u8, value: &T, text: String) -> Self {
        match serde_json::to_value(value) {
            Ok(value) => Outcome {
                code,
                body: Body::Report { value, text },
            },
            Err(e) => Outcome::usage(format!("serialization: {e}")),
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            body: Body::Error(msg.into()),
        }
    }

    pub fn format(&self, f: Format) -> Result<String, String> {
        match (&self.body, f) {
            (Body::Report { text, .. }, Format::Text) => Ok(text.trim_end().to_string()),
            (Body::Report { value, .. }, Format::Structured) => {
                serde_json::to_string_pretty(value).map_err(|e| e.to_string())
            }
            (Body::Error(m), Format::Text) => Ok(format!("error: {m}")),
            (Body::Error(m), Format::Structured) => {
                serde_json::to_string_pretty(&serde_json::json!({ "error": m }))
                    .map_err(|e| e.to_string())
            }
        }
    }
}

pub fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn profile(v: &[u32]) -> String {
    let mut parts: Vec<String> = vec![];
    let mut i = 0;
    while i < v.len() {
        let j = v[i..].iter().take_while(|&&x| x == v[i]).count();
        parts.push(if j > 1 {
            format!("{}^{}", v[i], j)
        } else {
            v[i].to_string()
        });
        i += j;
    }
    format!("[{}]", parts.join(" "))
}
