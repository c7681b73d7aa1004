use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::representation::RepresentationRegistry;
use crate::solver::{tail_length, SolverRegistry, DEFAULT_TAIL_FRACTION, DEFAULT_TOLERANCE};

pub const MIN_SWEEP_CUTOFF: usize = 64;
pub const DEFAULT_SWEEP_CUTOFF: usize = 1024;
pub const DEFAULT_EIGENPAIRS: usize = 25;

/// A list of values or an evenly spaced comb with both endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Values(Vec<f64>),
    Linspace { start: f64, stop: f64, count: usize },
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        match *self {
            Grid::Values(ref v) => v.clone(),
            Grid::Linspace { start, stop, count } => match count {
                0 => vec![],
                1 => vec![start],
                _ => (0..count)
                    .map(|i| start + (stop - start) * (i as f64 / (count - 1) as f64))
                    .collect(),
            },
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Grid::Values(v) => v.len(),
            Grid::Linspace { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::Values(v) => {
                let parts: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
                f.write_str(&parts.join(", "))
            }
            Grid::Linspace { start, stop, count } => write!(f, "grid({start:?}, {stop:?}, {count})"),
        }
    }
}

fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{}` is not a number", s.trim()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{}` is not finite", s.trim()))
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("grid(").and_then(|r| r.strip_suffix(')')) {
            let args: Vec<&str> = inner.split(',').collect();
            let [start, stop, count] = args[..] else {
                return Err("grid(start, stop, count) takes three arguments".into());
            };
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("grid count `{}` is not a non-negative integer", count.trim()))?;
            return Ok(Grid::Linspace {
                start: parse_number(start)?,
                stop: parse_number(stop)?,
                count,
            });
        }
        if s.is_empty() {
            return Ok(Grid::Values(vec![]));
        }
        s.split(',').map(parse_number).collect::<std::result::Result<_, _>>().map(Grid::Values)
    }
}

/// Coupling values, either absolute or in units of `g_c = omega / 2`.
#[derive(Debug, Clone, PartialEq)]
pub enum CouplingSpec {
    Absolute(Grid),
    RelativeToCritical(Grid),
}

impl CouplingSpec {
    pub fn grid(&self) -> &Grid {
        match self {
            CouplingSpec::Absolute(g) | CouplingSpec::RelativeToCritical(g) => g,
        }
    }

    pub fn couplings(&self, omega: f64) -> Vec<f64> {
        match self {
            CouplingSpec::Absolute(g) => g.points(),
            CouplingSpec::RelativeToCritical(g) => {
                g.points().into_iter().map(|c| c * 0.5 * omega).collect()
            }
        }
    }
}

/// A survey over `(omega0, omega, g2)` and representations.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub omega0: Grid,
    pub omega: Grid,
    pub coupling: CouplingSpec,
    /// Representation names: a parity block label or `full`.
    pub subspaces: Vec<String>,
    pub cutoff: usize,
    pub eigenpairs: usize,
    pub tail_fraction: f64,
    pub tolerance: f64,
    pub solver: String,
}

impl SweepConfig {
    pub fn new(omega0: Grid, omega: Grid, coupling: CouplingSpec) -> Self {
        Self {
            omega0,
            omega,
            coupling,
            subspaces: vec!["q14+".into()],
            cutoff: DEFAULT_SWEEP_CUTOFF,
            eigenpairs: DEFAULT_EIGENPAIRS,
            tail_fraction: DEFAULT_TAIL_FRACTION,
            tolerance: DEFAULT_TOLERANCE,
            solver: "auto".into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::InvalidParameter(m));
        for (name, grid) in [
            ("omega0", &self.omega0),
            ("omega", &self.omega),
            ("coupling", self.coupling.grid()),
        ] {
            if grid.is_empty() {
                return invalid(format!("{name} grid is empty"));
            }
            if grid.points().iter().any(|v| !v.is_finite()) {
                return invalid(format!("{name} grid has a non-finite value"));
            }
        }
        if self.subspaces.is_empty() {
            return invalid("no subspaces requested".into());
        }
        if self.cutoff < MIN_SWEEP_CUTOFF {
            return Err(Error::CutoffTooSmall {
                got: self.cutoff,
                min: MIN_SWEEP_CUTOFF,
            });
        }
        if self.eigenpairs < 2 {
            return invalid(format!("eigenpairs must be >= 2, got {}", self.eigenpairs));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return invalid(format!("tolerance must be positive, got {}", self.tolerance));
        }
        tail_length(self.cutoff, self.tail_fraction)?;
        let reps = RepresentationRegistry::default();
        for s in &self.subspaces {
            reps.get(s)?;
        }
        SolverRegistry::default().get(&self.solver)?;
        for &omega0 in &self.omega0.points() {
            for &omega in &self.omega.points() {
                for g2 in self.coupling.couplings(omega) {
                    ModelParams::new(omega0, omega, g2)?;
                }
            }
        }
        Ok(())
    }

    /// Parses the line-based `key = value` format; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut omega0 = None;
        let mut omega = None;
        let mut coupling = None;
        let mut cfg = SweepConfig::new(Grid::Values(vec![]), Grid::Values(vec![]), CouplingSpec::Absolute(Grid::Values(vec![])));
        let mut seen: Vec<&str> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| Error::Config { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, found `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let canonical = match key {
                "coupling" | "coupling_gc" => "coupling",
                k => k,
            };
            if seen.contains(&canonical) {
                return Err(err(format!("`{key}` given more than once")));
            }
            let grid = || value.parse::<Grid>().map_err(&err);
            let integer = || {
                value
                    .parse::<usize>()
                    .map_err(|_| err(format!("`{value}` is not a non-negative integer")))
            };
            let number = || parse_number(value).map_err(&err);
            match key {
                "omega0" => omega0 = Some(grid()?),
                "omega" => omega = Some(grid()?),
                "coupling" => coupling = Some(CouplingSpec::Absolute(grid()?)),
                "coupling_gc" => coupling = Some(CouplingSpec::RelativeToCritical(grid()?)),
                "subspaces" => {
                    cfg.subspaces = value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                    let reps = RepresentationRegistry::default();
                    if let Some(bad) = cfg.subspaces.iter().find(|s| reps.get(s).is_err()) {
                        return Err(err(format!("unknown subspace `{bad}`")));
                    }
                }
                "cutoff" => cfg.cutoff = integer()?,
                "eigenpairs" => cfg.eigenpairs = integer()?,
                "tail_fraction" => cfg.tail_fraction = number()?,
                "tolerance" => cfg.tolerance = number()?,
                "solver" => cfg.solver = value.to_string(),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
            seen.push(canonical);
        }

        let missing = |k: &str| Error::InvalidParameter(format!("config is missing `{k}`"));
        cfg.omega0 = omega0.ok_or_else(|| missing("omega0"))?;
        cfg.omega = omega.ok_or_else(|| missing("omega"))?;
        cfg.coupling = coupling.ok_or_else(|| missing("coupling"))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

impl fmt::Display for SweepConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "omega0 = {}", self.omega0)?;
        writeln!(f, "omega = {}", self.omega)?;
        match &self.coupling {
            CouplingSpec::Absolute(g) => writeln!(f, "coupling = {g}")?,
            CouplingSpec::RelativeToCritical(g) => writeln!(f, "coupling_gc = {g}")?,
        }
        writeln!(f, "subspaces = {}", self.subspaces.join(", "))?;
        writeln!(f, "cutoff = {}", self.cutoff)?;
        writeln!(f, "eigenpairs = {}", self.eigenpairs)?;
        writeln!(f, "tail_fraction = {:?}", self.tail_fraction)?;
        writeln!(f, "tolerance = {:?}", self.tolerance)?;
        writeln!(f, "solver = {}", self.solver)
    }
}

impl FromStr for SweepConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# degenerate survey
omega0 = 0
omega = 0.45   # boson
coupling_gc = grid(0, 2, 201)
subspaces = q14+, full
cutoff = 1024
";

    #[test]
    fn parses_sample() {
        let c = SweepConfig::parse(SAMPLE).unwrap();
        assert_eq!(c.omega0, Grid::Values(vec![0.0]));
        assert_eq!(c.subspaces, vec!["q14+", "full"]);
        assert_eq!(c.eigenpairs, 25);
        let g = c.coupling.couplings(0.45);
        assert_eq!(g.len(), 201);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 0.225);
        assert!((g[200] - 0.45).abs() < 1e-16);
    }

    #[test]
    fn round_trip() {
        let mut c = SweepConfig::parse(SAMPLE).unwrap();
        c.tolerance = 1.0 / 3.0 * 1e-6;
        c.omega = Grid::Values(vec![0.1 + 0.2, 0.55]);
        let again = SweepConfig::parse(&c.to_string()).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.to_string(), c.to_string());
    }

    #[test]
    fn errors_name_the_line() {
        let cases = [
            ("omega0 = 0\nomega 0.5\n", 2),
            ("omega0 = 0\nomega = 0.5\nfrobnicate = 1\n", 3),
            ("omega0 = 0\nomega0 = 1\n", 2),
            ("omega0 = x\n", 1),
            ("omega0 = 0\nomega = 0.5\ncoupling = grid(0, 1)\n", 3),
            ("omega0 = 0\nomega = 0.5\nsubspaces = q12+\n", 3),
            ("omega0 = 0\ncoupling = 0.1\ncoupling_gc = 0.1\n", 3),
        ];
        for (text, line) in cases {
            match SweepConfig::parse(text) {
                Err(Error::Config { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn invariants_enforced() {
        let base = "omega0 = 0\ncoupling = 0.1\n";
        assert!(SweepConfig::parse(&format!("{base}omega =\n")).is_err());
        assert!(SweepConfig::parse(&format!("{base}omega = 0.5\ncutoff = 32\n")).is_err());
        assert!(SweepConfig::parse(&format!("{base}omega = 0.5\neigenpairs = 1\n")).is_err());
        assert!(SweepConfig::parse(&format!("{base}omega = 0.5\nsolver = magic\n")).is_err());
        assert!(SweepConfig::parse(&format!("{base}omega = -0.5\n")).is_err());
        assert!(SweepConfig::parse("omega0 = 0\nomega = 0.5\n").is_err());
        assert!(SweepConfig::parse(&format!("{base}omega = 0.5\n")).is_ok());
    }
}
