use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{build_algebra, fixtures, Algebra, QuiverPresentation};
use crate::error::{Error, Result};

/// Where an algebra comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    /// `k[t]/(t^n)` over GF(p).
    Kt { n: usize, p: u64 },
    /// Cyclic Nakayama algebra on `m` vertices with radical length `n`.
    Nakayama { m: usize, n: usize, p: u64 },
    File(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSpec {
    pub kind: FixtureKind,
    pub seed: u64,
}

impl FixtureSpec {
    pub fn kt(n: usize, p: u64) -> Self {
        FixtureSpec { kind: FixtureKind::Kt { n, p }, seed: 0 }
    }

    pub fn nakayama(m: usize, n: usize, p: u64) -> Self {
        FixtureSpec { kind: FixtureKind::Nakayama { m, n, p }, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn presentation(&self) -> Result<QuiverPresentation> {
        match &self.kind {
            FixtureKind::Kt { n, p } => Ok(fixtures::kt(*n, *p)),
            FixtureKind::Nakayama { m, n, p } => Ok(fixtures::nakayama(*m, *n, *p)),
            FixtureKind::File(path) => QuiverPresentation::from_json(&read_file(path)?),
        }
    }

    pub fn build(&self) -> Result<Arc<Algebra>> {
        build_algebra(&self.presentation()?)
    }
}

pub(crate) fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

impl fmt::Display for FixtureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FixtureKind::Kt { n, p } => write!(f, "kt:{n}:{p}"),
            FixtureKind::Nakayama { m, n, p } => write!(f, "nakayama:{m}:{n}:{p}"),
            FixtureKind::File(path) => write!(f, "{path}"),
        }
    }
}

fn num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("{what} must be a number, got {s:?}")))
}

impl FromStr for FixtureSpec {
    type Err = Error;

    /// `kt:n:p`, `nakayama:m:N:p`, or a path to an algebra file.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let kind = match parts.as_slice() {
            ["kt", n, p] => {
                let n = num(n, "n")?;
                if n < 2 {
                    return Err(Error::Invalid(format!("kt needs n >= 2, got {n}")));
                }
                FixtureKind::Kt { n, p: num(p, "p")? }
            }
            ["nakayama", m, n, p] => {
                let (m, n) = (num(m, "m")?, num(n, "N")?);
                if m < 1 || n < 2 {
                    return Err(Error::Invalid(format!("nakayama needs m >= 1 and N >= 2, got m = {m}, N = {n}")));
                }
                FixtureKind::Nakayama { m, n, p: num(p, "p")? }
            }
            ["kt" | "nakayama", ..] => return Err(Error::Parse(format!("malformed fixture {s:?}; expected kt:n:p or nakayama:m:N:p"))),
            _ => FixtureKind::File(s.to_string()),
        };
        Ok(FixtureSpec { kind, seed: 0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let f: FixtureSpec = "kt:3:3".parse().unwrap();
        assert_eq!(f, FixtureSpec::kt(3, 3));
        assert_eq!(f.to_string(), "kt:3:3");
        let g: FixtureSpec = "nakayama:2:2:3".parse().unwrap();
        assert_eq!(g.kind, FixtureKind::Nakayama { m: 2, n: 2, p: 3 });
        assert_eq!(g.build().unwrap().num_vertices(), 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!("kt:1:2".parse::<FixtureSpec>(), Err(Error::Invalid(_))));
        assert!(matches!("nakayama:0:2:2".parse::<FixtureSpec>(), Err(Error::Invalid(_))));
        assert!(matches!("nakayama:2:1:2".parse::<FixtureSpec>(), Err(Error::Invalid(_))));
        assert!(matches!("kt:x:2".parse::<FixtureSpec>(), Err(Error::Parse(_))));
        assert!(matches!("kt:3".parse::<FixtureSpec>(), Err(Error::Parse(_))));
        assert!(matches!("kt:3:4".parse::<FixtureSpec>().unwrap().build(), Err(Error::InvalidPrime(4))));
    }
}
