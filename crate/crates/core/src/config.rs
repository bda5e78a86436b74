//! Run configuration.
//!
//! The on-disk form is flat `key = value` text, one entry per line, `#`
//! starting a comment. Keys mirror the [`RunConfig`] field names; the same
//! format is used for the run manifest so a manifest can be fed back in as a
//! config file.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    TwoStream,
    WeakLandau,
    StrongLandau,
    SymmetricTwoStream,
    Advect1d,
}

impl Problem {
    pub const ALL: [Problem; 5] = [
        Problem::TwoStream,
        Problem::WeakLandau,
        Problem::StrongLandau,
        Problem::SymmetricTwoStream,
        Problem::Advect1d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::TwoStream => "two_stream",
            Problem::WeakLandau => "weak_landau",
            Problem::StrongLandau => "strong_landau",
            Problem::SymmetricTwoStream => "symmetric_two_stream",
            Problem::Advect1d => "advect1d",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().replace('-', "_").to_ascii_lowercase();
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown problem '{s}'")))
    }
}

/// Benchmark parameters. `drift` and `v_th` are only read by the symmetric
/// two-stream initializer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemSpec {
    pub problem: Problem,
    pub alpha: f64,
    pub k: f64,
    pub drift: f64,
    pub v_th: f64,
}

impl ProblemSpec {
    pub fn new(problem: Problem) -> Self {
        let (alpha, k) = match problem {
            Problem::TwoStream => (0.01, 0.5),
            Problem::WeakLandau => (0.01, 0.5),
            Problem::StrongLandau => (0.5, 0.5),
            Problem::SymmetricTwoStream => (0.0005, 0.2),
            Problem::Advect1d => (0.0, 1.0),
        };
        ProblemSpec {
            problem,
            alpha,
            k,
            drift: 5.0 * 3f64.sqrt() / 4.0,
            v_th: 0.5,
        }
    }

    /// Periodic domain length `2π/k`.
    pub fn length(&self) -> f64 {
        2.0 * PI / self.k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TracerOrder {
    First,
    Second,
    Third,
}

impl TracerOrder {
    pub fn as_u8(self) -> u8 {
        match self {
            TracerOrder::First => 1,
            TracerOrder::Second => 2,
            TracerOrder::Third => 3,
        }
    }

    pub fn from_u8(order: u8) -> Result<Self> {
        match order {
            1 => Ok(TracerOrder::First),
            2 => Ok(TracerOrder::Second),
            3 => Ok(TracerOrder::Third),
            _ => Err(Error::InvalidConfig(format!(
                "tracer order must be 1, 2 or 3 (got {order})"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum InterpOrder {
    Two,
    Four,
    Six,
}

impl InterpOrder {
    pub fn as_u8(self) -> u8 {
        match self {
            InterpOrder::Two => 2,
            InterpOrder::Four => 4,
            InterpOrder::Six => 6,
        }
    }

    pub fn from_u8(order: u8) -> Result<Self> {
        match order {
            2 => Ok(InterpOrder::Two),
            4 => Ok(InterpOrder::Four),
            6 => Ok(InterpOrder::Six),
            _ => Err(Error::InvalidConfig(format!(
                "interpolation order must be 2, 4 or 6 (got {order})"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub nx: usize,
    pub nv: usize,
    pub v_max: f64,
    pub cfl: f64,
    pub t_final: f64,
    pub order: TracerOrder,
    pub interp: InterpOrder,
    pub reduced_prediction: bool,
    /// Time between diagnostics records; `0` records after every step.
    pub diag_every: f64,
    pub snapshot_times: Vec<f64>,
    pub out_dir: PathBuf,
    pub weno_eps: f64,
    pub entropy_floor: f64,
}

impl RunConfig {
    pub fn new(problem: Problem) -> Self {
        RunConfig {
            problem: ProblemSpec::new(problem),
            nx: 128,
            nv: 128,
            v_max: 6.0,
            cfl: 5.0,
            t_final: 10.0,
            order: TracerOrder::Third,
            interp: InterpOrder::Six,
            reduced_prediction: false,
            diag_every: 0.5,
            snapshot_times: Vec::new(),
            out_dir: PathBuf::from("out"),
            weno_eps: 1e-6,
            entropy_floor: 1e-14,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return bad(format!("cfl must be positive (got {})", self.cfl));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return bad(format!("t_final must be >= 0 (got {})", self.t_final));
        }
        if !(self.problem.k > 0.0 && self.problem.k.is_finite()) {
            return bad(format!("k must be positive (got {})", self.problem.k));
        }
        if !(self.weno_eps > 0.0) {
            return bad(format!("weno_eps must be positive (got {})", self.weno_eps));
        }
        if !(self.entropy_floor > 0.0) {
            return bad(format!(
                "entropy_floor must be positive (got {})",
                self.entropy_floor
            ));
        }
        if self.diag_every < 0.0 {
            return bad(format!("diag_every must be >= 0 (got {})", self.diag_every));
        }
        if self.snapshot_times.iter().any(|t| !(*t >= 0.0)) {
            return bad("snapshot times must be >= 0".into());
        }
        Ok(())
    }

    /// Applies one `key = value` pair.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let parse_f64 = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("{key}: not a number: '{v}'")))
        };
        let parse_usize = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| Error::InvalidConfig(format!("{key}: not a count: '{v}'")))
        };
        let parse_u8 = |v: &str| {
            v.parse::<u8>()
                .map_err(|_| Error::InvalidConfig(format!("{key}: not an order: '{v}'")))
        };
        match key.trim() {
            "problem" => {
                // Switching problems resets the physical parameters, so
                // `problem` should precede alpha/k overrides in a file.
                self.problem = ProblemSpec::new(value.parse()?);
            }
            "alpha" => self.problem.alpha = parse_f64(value)?,
            "k" => self.problem.k = parse_f64(value)?,
            "drift" => self.problem.drift = parse_f64(value)?,
            "v_th" => self.problem.v_th = parse_f64(value)?,
            "nx" => self.nx = parse_usize(value)?,
            "nv" => self.nv = parse_usize(value)?,
            "v_max" => self.v_max = parse_f64(value)?,
            "cfl" => self.cfl = parse_f64(value)?,
            "t_final" => self.t_final = parse_f64(value)?,
            "order" => self.order = TracerOrder::from_u8(parse_u8(value)?)?,
            "interp" => self.interp = InterpOrder::from_u8(parse_u8(value)?)?,
            "reduced_prediction" => {
                self.reduced_prediction = value
                    .parse()
                    .map_err(|_| Error::InvalidConfig(format!("{key}: expected true/false, got '{value}'")))?
            }
            "diag_every" => self.diag_every = parse_f64(value)?,
            "snapshot_times" => {
                self.snapshot_times = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(parse_f64)
                    .collect::<Result<_>>()?
            }
            "out_dir" => self.out_dir = PathBuf::from(value),
            "weno_eps" => self.weno_eps = parse_f64(value)?,
            "entropy_floor" => self.entropy_floor = parse_f64(value)?,
            other => return Err(Error::InvalidConfig(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Overlays the entries of a key–value text onto `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigParse {
                line: n + 1,
                message: format!("expected 'key = value', got '{line}'"),
            })?;
            self.set(key, value).map_err(|e| Error::ConfigParse {
                line: n + 1,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = RunConfig::new(Problem::TwoStream);
        config.apply_text(&text)?;
        Ok(config)
    }

    /// Serializes every field in the key–value format.
    pub fn to_text(&self) -> String {
        let snaps = self
            .snapshot_times
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let p = &self.problem;
        format!(
            "problem = {}\nalpha = {:e}\nk = {:e}\ndrift = {:e}\nv_th = {:e}\n\
             nx = {}\nnv = {}\nv_max = {:e}\ncfl = {:e}\nt_final = {:e}\n\
             order = {}\ninterp = {}\nreduced_prediction = {}\ndiag_every = {:e}\n\
             snapshot_times = {}\nout_dir = {}\nweno_eps = {:e}\nentropy_floor = {:e}\n",
            p.problem,
            p.alpha,
            p.k,
            p.drift,
            p.v_th,
            self.nx,
            self.nv,
            self.v_max,
            self.cfl,
            self.t_final,
            self.order.as_u8(),
            self.interp.as_u8(),
            self.reduced_prediction,
            self.diag_every,
            snaps,
            self.out_dir.display(),
            self.weno_eps,
            self.entropy_floor,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(p.name().parse::<Problem>().unwrap(), p);
        }
        assert_eq!("two-stream".parse::<Problem>().unwrap(), Problem::TwoStream);
        assert!("bump_on_tail".parse::<Problem>().is_err());
    }

    #[test]
    fn defaults_follow_benchmarks() {
        let two = ProblemSpec::new(Problem::TwoStream);
        assert_eq!((two.alpha, two.k), (0.01, 0.5));
        assert!((two.length() - 4.0 * PI).abs() < 1e-15);
        let sym = ProblemSpec::new(Problem::SymmetricTwoStream);
        assert!((sym.length() - 10.0 * PI).abs() < 1e-13);
        assert!((sym.drift - 2.165_063_509_461_097).abs() < 1e-15);
        assert_eq!(ProblemSpec::new(Problem::StrongLandau).alpha, 0.5);
    }

    #[test]
    fn text_round_trip() {
        let mut cfg = RunConfig::new(Problem::WeakLandau);
        cfg.nx = 64;
        cfg.cfl = 2.5;
        cfg.order = TracerOrder::Second;
        cfg.interp = InterpOrder::Four;
        cfg.reduced_prediction = true;
        cfg.snapshot_times = vec![1.0, 2.5];
        let mut back = RunConfig::new(Problem::TwoStream);
        back.apply_text(&cfg.to_text()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_bad_values() {
        let mut cfg = RunConfig::new(Problem::TwoStream);
        assert!(cfg.set("order", "4").is_err());
        assert!(cfg.set("interp", "5").is_err());
        assert!(cfg.set("colour", "blue").is_err());
        cfg.cfl = 0.0;
        assert!(cfg.validate().is_err());
        cfg.cfl = 1.0;
        cfg.t_final = -1.0;
        assert!(cfg.validate().is_err());
        let err = cfg.apply_text("nx = 32\nnonsense\n").unwrap_err();
        assert!(matches!(err, Error::ConfigParse { line: 2, .. }));
    }
}
