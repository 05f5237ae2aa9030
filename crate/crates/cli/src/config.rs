//! Plain-text run configuration: one `key = value` per line, `#` starts a
//! comment. Unknown keys are rejected so typos do not silently fall back to
//! defaults.

use std::path::{Path, PathBuf};

use ar_iet::analysis::AnalysisConfig;
use ar_iet::gasket::{default_seed, Triple};
use ar_iet::rational::{parse_rational, Rational};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: Triple,
    pub max_word_letters: usize,
    pub max_depth: usize,
    pub max_steps: usize,
    pub output_dir: Option<PathBuf>,
    pub rng_seed: u64,
    pub analysis: AnalysisConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            max_word_letters: 1 << 20,
            max_depth: 500,
            max_steps: 1_000_000,
            output_dir: None,
            rng_seed: 0,
            analysis: AnalysisConfig::default(),
        }
    }
}

fn positive(key: &str, value: &str) -> Result<usize, CliError> {
    match value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(CliError::usage(format!("{key} must be a positive integer, got {value:?}"))),
    }
}

fn rational(key: &str, value: &str) -> Result<Rational, CliError> {
    parse_rational(value).map_err(|e| CliError::usage(format!("{key}: {e}")))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::usage(format!("config line {}: expected key = value", n + 1)));
            };
            let (key, value) = (key.trim(), value.trim());
            let a = &mut cfg.analysis;
            match key {
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|e| CliError::usage(format!("seed: {e}")))?
                }
                "max_word_letters" => cfg.max_word_letters = positive(key, value)?,
                "max_depth" => cfg.max_depth = positive(key, value)?,
                "max_steps" => cfg.max_steps = positive(key, value)?,
                "output_dir" => cfg.output_dir = Some(PathBuf::from(value)),
                "rng_seed" => {
                    cfg.rng_seed = value
                        .parse()
                        .map_err(|_| CliError::usage(format!("rng_seed: bad integer {value:?}")))?
                }
                "l1_threshold" => a.l1_threshold = rational(key, value)?,
                "ue_tolerance" => a.ue_tolerance = rational(key, value)?,
                "xi_sum_threshold" => a.xi_sum_threshold = rational(key, value)?,
                "xi_tail_threshold" => a.xi_tail_threshold = rational(key, value)?,
                "nue_tail_threshold" => a.nue_tail_threshold = rational(key, value)?,
                "bqp_bound" => a.bqp_bound = positive(key, value)? as u64,
                "eigen_persistence" => a.eigen_persistence = positive(key, value)?,
                "eigen_floor" => a.eigen_floor = Some(rational(key, value)?),
                _ => return Err(CliError::usage(format!("config line {}: unknown key {key:?}", n + 1))),
            }
        }
        if !cfg.seed.is_admissible() {
            return Err(CliError::usage("seed must satisfy a > b > c > 0"));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Where an output named `out` goes: relative names land in `output_dir`.
    pub fn resolve(&self, out: &Path) -> PathBuf {
        match &self.output_dir {
            Some(dir) if out.is_relative() => dir.join(out),
            _ => out.to_path_buf(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ar_iet::rational::ratio;

    #[test]
    fn parses_keys_and_comments() {
        let cfg = RunConfig::parse(
            "# thresholds\nl1_threshold = 1/5  # stricter\n\nseed = 7/1,4/1,2/1\nrng_seed=9\n",
        )
        .unwrap();
        assert_eq!(cfg.analysis.l1_threshold, ratio(1, 5));
        assert_eq!(cfg.seed, Triple::from_ints(7, 4, 2));
        assert_eq!(cfg.rng_seed, 9);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("max_depth = 0").is_err());
        assert!(RunConfig::parse("colour = red").is_err());
        assert!(RunConfig::parse("seed = 1,2,3").is_err());
        assert!(RunConfig::parse("just words").is_err());
    }
}
