use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generic::table::{check_primes, Side, DEFAULT_PRIMES};
use crate::gf::is_prime;
use crate::quiver::DynkinQuiver;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Numeric,
    Generic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Class window: `dim` bounds dimension vectors on the representation side, `ue1`/`ue0` bound the
/// projective multiplicities of the two degrees on the complex side.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Window {
    pub dim: Option<Vec<i64>>,
    pub ue1: Option<Vec<usize>>,
    pub ue0: Option<Vec<usize>>,
}

/// A representation given by matrices over F_q, one per arrow, rows at the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepInput {
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CommandArgs {
    pub side: Option<Side>,
    pub l: Option<String>,
    pub m: Option<String>,
    pub n: Option<String>,
    /// Cross-check hall numbers against exhaustive enumeration.
    pub oracle: bool,
    /// Factors of a product, left to right.
    pub factors: Vec<String>,
    pub nu: Option<Vec<i64>>,
    pub class: Option<String>,
    pub rep: Option<RepInput>,
    pub out: Option<String>,
}

/// Everything a command needs; loaded from TOML and overridable from the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JobConfig {
    /// Path to a quiver file, or a built-in name such as `A2`, `D4`, `E6`.
    pub quiver: String,
    pub primes: Vec<u64>,
    /// Field size for single-prime commands; defaults to the first prime.
    pub q: Option<u64>,
    pub mode: Mode,
    pub cap: u64,
    pub format: Format,
    pub window: Window,
    pub args: CommandArgs,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            quiver: String::new(),
            primes: DEFAULT_PRIMES.to_vec(),
            q: None,
            mode: Mode::Numeric,
            cap: 1 << 24,
            format: Format::Json,
            window: Window::default(),
            args: CommandArgs::default(),
            base_dir: None,
        }
    }
}

fn builtin_quiver(name: &str) -> Option<DynkinQuiver> {
    let (kind, rank) = name.split_at(1);
    let n: usize = rank.parse().ok()?;
    match kind {
        "A" | "a" if n >= 1 => Some(DynkinQuiver::a_linear(n)),
        "D" | "d" if n >= 4 => Some(DynkinQuiver::d_standard(n)),
        "E" | "e" if (6..=8).contains(&n) => Some(DynkinQuiver::e_standard(n)),
        _ => None,
    }
}

impl JobConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut c = Self::from_toml(&text)?;
        c.base_dir = path.parent().map(Path::to_path_buf);
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::Config("primes must not be empty".into()));
        }
        check_primes(&self.primes)?;
        if let Some(q) = self.q {
            if !is_prime(q) {
                return Err(Error::Config(format!("q = {q} is not a prime")));
            }
        }
        if self.cap == 0 {
            return Err(Error::Config("cap must be positive".into()));
        }
        if let Some(d) = &self.window.dim {
            if d.iter().any(|&x| x < 0) {
                return Err(Error::Config(format!("window.dim {d:?} has a negative entry")));
            }
        }
        if self.window.ue1.is_some() != self.window.ue0.is_some() {
            return Err(Error::Config("window.ue1 and window.ue0 must be given together".into()));
        }
        Ok(())
    }

    pub fn q(&self) -> u64 {
        self.q.unwrap_or(self.primes[0])
    }

    /// Reads the quiver file (relative to the config file) or falls back to a built-in name.
    pub fn load_quiver(&self) -> Result<Arc<DynkinQuiver>> {
        if self.quiver.is_empty() {
            return Err(Error::Config("no quiver given".into()));
        }
        let path = match &self.base_dir {
            Some(b) => b.join(&self.quiver),
            None => PathBuf::from(&self.quiver),
        };
        if path.is_file() {
            let text = std::fs::read_to_string(&path)?;
            return Ok(Arc::new(DynkinQuiver::parse_spec(&text)?));
        }
        builtin_quiver(&self.quiver)
            .map(Arc::new)
            .ok_or_else(|| Error::Config(format!("quiver {:?} is neither a file nor a built-in name", self.quiver)))
    }

    pub fn dim_window(&self, n: usize) -> Result<Vec<i64>> {
        let d = self.window.dim.clone().ok_or_else(|| Error::Config("window.dim is required".into()))?;
        if d.len() != n {
            return Err(Error::Config(format!("window.dim {d:?} does not have {n} entries")));
        }
        Ok(d)
    }

    pub fn ue_window(&self, n: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        match (&self.window.ue1, &self.window.ue0) {
            (Some(a), Some(b)) if a.len() == n && b.len() == n => Ok((a.clone(), b.clone())),
            (Some(_), Some(_)) => Err(Error::Config(format!("window.ue1/ue0 must have {n} entries"))),
            _ => Err(Error::Config("window.ue1 and window.ue0 are required".into())),
        }
    }
}
