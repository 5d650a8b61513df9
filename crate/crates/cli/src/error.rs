use std::path::PathBuf;

use serde_json::{json, Value};
use sunada_core::ErrorKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}{source}", prefix(.path))]
    Core {
        path: Option<PathBuf>,
        source: sunada_core::Error,
    },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Config(String),
}

fn prefix(path: &Option<PathBuf>) -> String {
    path.as_ref().map(|p| format!("{}: ", p.display())).unwrap_or_default()
}

impl From<sunada_core::Error> for CliError {
    fn from(source: sunada_core::Error) -> Self {
        CliError::Core { path: None, source }
    }
}

impl CliError {
    pub fn in_file(path: &std::path::Path) -> impl FnOnce(sunada_core::Error) -> CliError + '_ {
        move |source| CliError::Core {
            path: Some(path.to_path_buf()),
            source,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core { source, .. } => match source.kind() {
                ErrorKind::Parse => "parse",
                ErrorKind::Precondition => "precondition",
                ErrorKind::Numerical => "numerical",
            },
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
            CliError::Config(_) => "precondition",
        }
    }

    /// 2 parse, 3 precondition, 4 numerical; unreadable files and usage
    /// errors count as parse failures.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "precondition" => 3,
            "numerical" => 4,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut body = json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Core {
            source: sunada_core::Error::Parse { line, .. },
            path,
        } = self
        {
            body["line"] = json!(line);
            if let Some(p) = path {
                body["file"] = json!(p.display().to_string());
            }
        }
        json!({ "error": body })
    }
}
