//! Job configuration: `key = value` lines plus a `cartan:` block of integer
//! rows. `#` starts a comment.
//!
//! ```text
//! command = module
//! weights = 0 1; 1 0
//! depth = 6
//! symmetrizers = 2 1
//! cartan:
//!   2 -1
//!   -2 2
//! ```

use qfold::cartan::{validate_cartan, CartanData, Weight};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JobConfig {
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizers: Option<Vec<u32>>,
    pub command: Option<String>,
    pub weights: Vec<Vec<i64>>,
    pub depth: Option<i64>,
    pub out: Option<String>,
}

fn err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError { line, message: message.into() }
}

fn ints<T: std::str::FromStr>(line: usize, s: &str) -> Result<Vec<T>, ConfigError> {
    s.split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| err(line, format!("expected an integer, found {t:?}"))))
        .collect()
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = JobConfig::default();
        let mut in_matrix = false;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                in_matrix = false;
                continue;
            }
            if content == "cartan:" {
                if !cfg.cartan.is_empty() {
                    return Err(err(line, "duplicate cartan block"));
                }
                in_matrix = true;
                continue;
            }
            if let Some((key, value)) = content.split_once('=') {
                in_matrix = false;
                let value = value.trim();
                match key.trim() {
                    "command" => cfg.command = Some(value.to_string()),
                    "depth" => {
                        let d: i64 = value.parse().map_err(|_| err(line, format!("bad depth {value:?}")))?;
                        if d < 0 {
                            return Err(err(line, "depth must be nonnegative"));
                        }
                        cfg.depth = Some(d);
                    }
                    "symmetrizers" => cfg.symmetrizers = Some(ints(line, value)?),
                    "weights" | "weight" => {
                        cfg.weights = value.split(';').map(|w| ints(line, w)).collect::<Result<_, _>>()?;
                        if cfg.weights.iter().any(Vec::is_empty) {
                            return Err(err(line, "empty weight"));
                        }
                    }
                    "out" => cfg.out = Some(value.to_string()),
                    other => return Err(err(line, format!("unknown key {other:?}"))),
                }
                continue;
            }
            if in_matrix {
                cfg.cartan.push(ints(line, content)?);
                continue;
            }
            return Err(err(line, format!("cannot parse {content:?}")));
        }
        Ok(cfg)
    }

    pub fn cartan_data(&self) -> Result<CartanData, ConfigError> {
        if self.cartan.is_empty() {
            return Err(err(0, "missing cartan block"));
        }
        validate_cartan(&self.cartan, self.symmetrizers.as_deref()).map_err(|e| err(0, e.to_string()))
    }

    /// The configured weights, each dominant and of the right rank.
    pub fn dominant_weights(&self, cd: &CartanData) -> Result<Vec<Weight>, ConfigError> {
        self.weights
            .iter()
            .map(|w| {
                if w.len() != cd.rank() {
                    return Err(err(0, format!("weight {w:?} has {} coordinates, rank is {}", w.len(), cd.rank())));
                }
                let w = Weight::from_coords(w.clone());
                if !cd.is_dominant(&w) {
                    return Err(err(0, format!("weight {:?} is not dominant", w.coords())));
                }
                Ok(w)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example() {
        let cfg = JobConfig::parse("command = module # run it\nweights = 0 1; 1 0\ndepth = 6\ncartan:\n 2 -1\n -2 2\n").unwrap();
        assert_eq!(cfg.command.as_deref(), Some("module"));
        assert_eq!(cfg.weights, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(cfg.depth, Some(6));
        assert_eq!(cfg.cartan, vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(cfg.cartan_data().unwrap().symmetrizer(), &[2, 1]);
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(JobConfig::parse("cartan:\n2 x\n").unwrap_err().line, 2);
        assert!(JobConfig::parse("colour = red\n").is_err());
        assert!(JobConfig::parse("2 -1\n").is_err());
        assert!(JobConfig::parse("depth = -1\n").is_err());
        let cfg = JobConfig::parse("weights = -1 0\ncartan:\n2 -1\n-1 2\n").unwrap();
        assert!(cfg.dominant_weights(&cfg.cartan_data().unwrap()).is_err());
        let cfg = JobConfig::parse("cartan:\n2 -1\n-1 3\n").unwrap();
        assert!(cfg.cartan_data().is_err());
    }
}
