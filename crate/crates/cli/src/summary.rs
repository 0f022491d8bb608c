use std::fmt;

/// The `RESULT key=value ...` line. Values must not contain whitespace.
#[derive(Debug, Default)]
pub struct Summary {
    fields: Vec<(&'static str, String)>,
}

impl Summary {
    pub fn new(kind: &str) -> Self {
        Self::default().with("kind", kind)
    }

    pub fn with(mut self, key: &'static str, value: impl fmt::Display) -> Self {
        let value = value.to_string();
        debug_assert!(!value.contains(char::is_whitespace), "{key}={value:?}");
        self.fields.push((key, value));
        self
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("RESULT")?;
        for (k, v) in &self.fields {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}
