use std::fmt::Display;
use std::path::Path;

/// Everything needed to repeat a run, written as `#` comment lines at the top of each output.
#[derive(Debug, Clone)]
pub struct RunManifest {
    command: &'static str,
    invocation: String,
    entries: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(command: &'static str) -> Self {
        let invocation = std::iter::once("ilt".to_string())
            .chain(std::env::args().skip(1).map(|a| quote(&a)))
            .collect::<Vec<_>>()
            .join(" ");
        RunManifest {
            command,
            invocation,
            entries: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn set_path(&mut self, key: &str, path: Option<&Path>) -> &mut Self {
        let shown = path.map_or_else(|| "-".to_string(), |p| p.display().to_string());
        self.set(key, shown)
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("ilt {}", env!("CARGO_PKG_VERSION")),
            format!("command: {}", self.command),
            format!("invocation: {}", self.invocation),
        ];
        out.extend(self.entries.iter().map(|(k, v)| format!("{k}: {v}")));
        out
    }
}

fn quote(arg: &str) -> String {
    if !arg.is_empty()
        && arg
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_.:/=+".contains(c))
    {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', r"'\''"))
    }
}
