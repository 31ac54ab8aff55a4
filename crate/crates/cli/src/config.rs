use std::fmt;
use std::path::{Path, PathBuf};

use hyperscheme::families::DEFAULT_VERTEX_BUDGET;
use hyperscheme::Error;
use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "IoError",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                Error::Parse(_) => 1,
                Error::NotCommutative(_) => 3,
                Error::ParameterOutOfRange(_) | Error::BallTooLarge { .. } => 4,
                _ => 2,
            },
        }
    }

    pub fn to_json(&self) -> String {
        json!({"error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code()}).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tol: Option<f64>,
    pub seed: u64,
    pub out: PathBuf,
    pub window: usize,
    pub grid_nodes: usize,
    pub moment_order: usize,
    pub vertex_budget: usize,
}

impl RunConfig {
    pub fn new(tol: Option<f64>, seed: u64, out: PathBuf) -> Result<Self, CliError> {
        if let Some(t) = tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::ParameterOutOfRange(format!("--tol must be positive, got {t}")).into());
            }
        }
        Ok(Self {
            tol,
            seed,
            out,
            window: 8,
            grid_nodes: 400,
            moment_order: 8,
            vertex_budget: DEFAULT_VERTEX_BUDGET,
        })
    }

    pub fn set_family_options(
        &mut self,
        window: usize,
        grid_nodes: usize,
        moment_order: usize,
        vertex_budget: usize,
    ) -> Result<(), CliError> {
        if window == 0 || grid_nodes < 2 || moment_order == 0 || vertex_budget == 0 {
            return Err(Error::ParameterOutOfRange(
                "window, grid nodes, moment order and vertex budget must be positive".into(),
            )
            .into());
        }
        self.window = window;
        self.grid_nodes = grid_nodes;
        self.moment_order = moment_order;
        self.vertex_budget = vertex_budget;
        Ok(())
    }

    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    /// Writes `contents` to `<out>/<name>`, creating the directory.
    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        write_file(&self.out, name, contents)
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}
