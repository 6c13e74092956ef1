//! Run configuration: a `key = value` file overridden by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use yqn_core::drinfeld::ModuleSpec;
use yqn_core::scalar::GaussRat;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("bad value for {key}: `{value}` ({reason})")]
    BadValue { key: String, value: String, reason: String },
    #[error("unknown check `{0}` for this subcommand")]
    UnknownCheck(String),
}

/// Which part of the suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Rmatrix,
    Yangian,
    Pairing,
    Sergeev,
    Drinfeld,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Rmatrix, Suite::Yangian, Suite::Pairing, Suite::Sergeev, Suite::Drinfeld];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rmatrix => "rmatrix",
            Suite::Yangian => "yangian",
            Suite::Pairing => "pairing",
            Suite::Sergeev => "sergeev",
            Suite::Drinfeld => "drinfeld",
        }
    }
}

const DEFAULT_POINTS: [(i64, i64); 4] = [(2, 1), (5, 1), (-1, 3), (9, 2)];

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub big_n: usize,
    pub n: usize,
    pub points: Vec<GaussRat>,
    /// Pairing degree bound `D`.
    pub max_degree: u32,
    pub smax: usize,
    /// x-degree bound for the Sergeev checks.
    pub degree: u32,
    pub seed: u64,
    pub checks: Option<Vec<String>>,
    pub modules: Vec<ModuleSpec>,
    pub negative_controls: bool,
    pub timings: bool,
    pub report: Option<PathBuf>,
    pub dump: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            big_n: 1,
            n: 2,
            points: Vec::new(),
            max_degree: 2,
            smax: 3,
            degree: 2,
            seed: 1,
            checks: None,
            modules: Vec::new(),
            negative_controls: false,
            timings: false,
            report: None,
            dump: None,
        }
    }
}

fn bad(key: &str, value: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::BadValue { key: key.into(), value: value.into(), reason: reason.into() }
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(key: &str, value: &str) -> Result<T, ConfigError> {
    let v: T = value.trim().parse().map_err(|_| bad(key, value, "not a number"))?;
    if v <= T::default() {
        return Err(bad(key, value, "must be positive"));
    }
    Ok(v)
}

pub fn parse_point(s: &str) -> Result<GaussRat, ConfigError> {
    s.trim().parse::<GaussRat>().map_err(|e| bad("points", s, e.to_string()))
}

pub fn parse_points(s: &str) -> Result<Vec<GaussRat>, ConfigError> {
    let v = s.split(',').map(parse_point).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(bad("points", s, "empty list"));
    }
    Ok(v)
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(bad(key, value, "expected true or false")),
    }
}

/// `principal:z=2,-1/3` or `pullback:m=1,n=2,M=1`.
pub fn parse_module(s: &str) -> Result<ModuleSpec, ConfigError> {
    let err = |r: &str| bad("module", s, r);
    let (kind, args) = s.trim().split_once(':').ok_or_else(|| err("expected kind:arguments"))?;
    match kind {
        "principal" => {
            let zs = args.strip_prefix("z=").ok_or_else(|| err("expected z=..."))?;
            Ok(ModuleSpec::Principal(parse_points(zs)?))
        }
        "pullback" => {
            let mut kv = BTreeMap::new();
            for part in args.split(',') {
                let (k, v) = part.split_once('=').ok_or_else(|| err("expected key=value"))?;
                let v: usize = v.trim().parse().map_err(|_| err("not a number"))?;
                kv.insert(k.trim().to_string(), v);
            }
            let get = |k: &str| kv.get(k).copied().ok_or_else(|| err(&format!("missing {k}")));
            let (n, big_m) = (get("n")?, get("M")?);
            if n == 0 || big_m == 0 {
                return Err(err("n and M must be positive"));
            }
            Ok(ModuleSpec::Pullback { m: get("m")?, n, big_m })
        }
        _ => Err(err("kind must be principal or pullback")),
    }
}

impl RunConfig {
    /// Applies one `key = value` setting; flags and files share this path.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "N" => self.big_n = positive(key, value)?,
            "n" => self.n = positive(key, value)?,
            "points" => self.points = parse_points(value)?,
            "max-degree" | "max_degree" => self.max_degree = positive(key, value)?,
            "smax" => self.smax = positive(key, value)?,
            "degree" => self.degree = positive(key, value)?,
            "seed" => self.seed = value.trim().parse().map_err(|_| bad(key, value, "not a number"))?,
            "checks" => self.checks = Some(value.split(',').map(|c| c.trim().to_string()).filter(|c| !c.is_empty()).collect()),
            "module" | "modules" => {
                self.modules = value.split(';').map(parse_module).collect::<Result<Vec<_>, _>>()?;
            }
            "negative-controls" | "negative_controls" => self.negative_controls = parse_bool(key, value)?,
            "timings" => self.timings = parse_bool(key, value)?,
            "report" => self.report = Some(PathBuf::from(value.trim())),
            "dump" => self.dump = Some(PathBuf::from(value.trim())),
            _ => return Err(ConfigError::UnknownKey(key.into())),
        }
        Ok(())
    }

    /// Settings from text; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: k + 1 })?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        self.apply_text(&text)
    }

    /// The configured points, or the first `n` defaults.
    pub fn effective_points(&self) -> Vec<GaussRat> {
        if !self.points.is_empty() {
            return self.points.clone();
        }
        DEFAULT_POINTS.iter().cycle().take(self.n).map(|&(a, b)| GaussRat::frac(a, b)).collect()
    }

    /// The configured modules, or principal series at the first point and
    /// at all points.
    pub fn effective_modules(&self) -> Vec<ModuleSpec> {
        if !self.modules.is_empty() {
            return self.modules.clone();
        }
        let pts = self.effective_points();
        let mut out = vec![ModuleSpec::Principal(pts[..1].to_vec())];
        if pts.len() > 1 {
            out.push(ModuleSpec::Principal(pts));
        }
        out
    }

    /// Echo of every setting in a fixed order, as strings.
    pub fn echo(&self) -> BTreeMap<&'static str, String> {
        let join = |v: &[GaussRat]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let mut m = BTreeMap::new();
        m.insert("N", self.big_n.to_string());
        m.insert("n", self.n.to_string());
        m.insert("points", join(&self.effective_points()));
        m.insert("max_degree", self.max_degree.to_string());
        m.insert("smax", self.smax.to_string());
        m.insert("degree", self.degree.to_string());
        m.insert("seed", self.seed.to_string());
        m.insert("checks", self.checks.as_ref().map_or("all".into(), |c| c.join(",")));
        m.insert("modules", self.effective_modules().iter().map(ModuleSpec::label).collect::<Vec<_>>().join("; "));
        m.insert("negative_controls", self.negative_controls.to_string());
        m
    }
}
