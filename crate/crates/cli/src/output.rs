use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::scene_file::{OutputFormat, SceneFile};

/// Environment variable naming the directory for relative or defaulted output paths.
pub const OUT_DIR_VAR: &str = "PADIC_WF_OUT_DIR";

/// Where a command's primary output goes.
#[derive(Debug, Clone)]
pub struct Sink {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Sink {
    /// `--out` wins over the scene file's `[output]`, and its `.csv` or `.json`
    /// extension picks the format; relative paths and the
    /// default file name are resolved against `PADIC_WF_OUT_DIR` when set.
    pub fn resolve(file: &SceneFile, scene_path: &Path, command: &str, flag: Option<&Path>) -> Sink {
        let spec = file.output.clone().unwrap_or_default();
        let dir = std::env::var_os(OUT_DIR_VAR).map(PathBuf::from);
        let ext = match spec.format {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        };
        let path = match (flag, spec.path.as_deref(), &dir) {
            (Some(p), _, _) => Some(p.to_path_buf()),
            (None, Some(p), Some(d)) if Path::new(p).is_relative() => Some(d.join(p)),
            (None, Some(p), _) => Some(PathBuf::from(p)),
            (None, None, Some(d)) => {
                let stem = scene_path.file_stem().and_then(|s| s.to_str()).unwrap_or("scene");
                Some(d.join(format!("{stem}.{command}.{ext}")))
            }
            (None, None, None) => None,
        };
        // an explicit `--out` extension overrides the file's format
        let format = match flag.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("csv") => OutputFormat::Csv,
            Some("json") => OutputFormat::Json,
            _ => spec.format,
        };
        Sink { path, format }
    }

    /// Writes `body` to the file, or to stdout when there is none.
    pub fn emit(&self, body: &str) -> Result<(), CliError> {
        match &self.path {
            Some(p) => {
                if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(parent).map_err(|e| CliError::Eval(format!("{}: {e}", parent.display())))?;
                }
                std::fs::write(p, body).map_err(|e| CliError::Eval(format!("{}: {e}", p.display())))
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Eval(e.to_string()))
            }
        }
    }

    pub fn is_file(&self) -> bool {
        self.path.is_some()
    }
}
