//! Correspondence between delay-time paths and Schröder paths.
//!
//! Turning every vertical step into a rise and stretching every horizontal
//! step to width two maps the paths of [`PathModel::delay`] with horizontal
//! length `L` one-to-one onto the Schröder paths of length `2L`.

use std::fmt;

use serde::Serialize;

use super::paths::{Direction, Path, PathModel};
use crate::error::PathError;

/// Largest semilength accepted by [`enumerate_schroder_paths`].
const MAX_SCHRODER_SEMILENGTH: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchroderStep {
    /// (1, 1)
    Up,
    /// (1, -1)
    Down,
    /// (2, 0)
    Flat,
}

impl SchroderStep {
    fn symbol(self) -> char {
        match self {
            SchroderStep::Up => 'U',
            SchroderStep::Down => 'D',
            SchroderStep::Flat => 'H',
        }
    }
}

/// Written with `H` for the double-width flat step.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchroderPath(pub Vec<SchroderStep>);

impl SchroderPath {
    /// Horizontal extent.
    pub fn length(&self) -> usize {
        self.0
            .iter()
            .map(|s| if *s == SchroderStep::Flat { 2 } else { 1 })
            .sum()
    }

    pub fn is_valid(&self) -> bool {
        let mut h = 0i64;
        for s in &self.0 {
            h += match s {
                SchroderStep::Up => 1,
                SchroderStep::Down => -1,
                SchroderStep::Flat => 0,
            };
            if h < 0 {
                return false;
            }
        }
        h == 0
    }
}

impl fmt::Display for SchroderPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl Serialize for SchroderPath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Maps an admissible delay-time path onto its Schröder path.
pub fn schroder_bijection(path: &Path) -> Result<SchroderPath, PathError> {
    let length = path.count(Direction::Horizontal) + path.count(Direction::Down);
    let model = PathModel::delay(
        length,
        crate::Rational::one(),
        crate::Rational::one(),
        crate::Rational::one(),
    );
    path.check(&model)?;
    let steps = path
        .steps()
        .iter()
        .map(|d| match d {
            Direction::Vertical => SchroderStep::Up,
            Direction::Horizontal => SchroderStep::Flat,
            Direction::Down => SchroderStep::Down,
            Direction::Up => unreachable!("rejected by the model check"),
        })
        .collect();
    Ok(SchroderPath(steps))
}

pub fn schroder_bijection_inverse(path: &SchroderPath) -> Result<Path, PathError> {
    if !path.is_valid() {
        return Err(PathError::Inadmissible(format!(
            "{path} is not a Schröder path"
        )));
    }
    let steps = path
        .0
        .iter()
        .map(|s| match s {
            SchroderStep::Up => Direction::Vertical,
            SchroderStep::Flat => Direction::Horizontal,
            SchroderStep::Down => Direction::Down,
        })
        .collect();
    Ok(Path(steps))
}

/// All Schröder paths from `(0, 0)` to `(2n, 0)`, by exhaustive search.
pub fn enumerate_schroder_paths(n: usize) -> Result<Vec<SchroderPath>, PathError> {
    if n > MAX_SCHRODER_SEMILENGTH {
        return Err(PathError::EnumerationBound {
            requested: 2 * n,
            limit: 2 * MAX_SCHRODER_SEMILENGTH,
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    walk(2 * n, 0, 0, &mut prefix, &mut out);
    Ok(out)
}

fn walk(
    target: usize,
    x: usize,
    h: usize,
    prefix: &mut Vec<SchroderStep>,
    out: &mut Vec<SchroderPath>,
) {
    if x == target {
        if h == 0 {
            out.push(SchroderPath(prefix.clone()));
        }
        return;
    }
    let remaining = target - x;
    if h + 1 < remaining {
        prefix.push(SchroderStep::Up);
        walk(target, x + 1, h + 1, prefix, out);
        prefix.pop();
    }
    if h > 0 {
        prefix.push(SchroderStep::Down);
        walk(target, x + 1, h - 1, prefix, out);
        prefix.pop();
    }
    if remaining >= 2 && h <= remaining - 2 {
        prefix.push(SchroderStep::Flat);
        walk(target, x + 2, h, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_paths, schroder};
    use crate::Rational;
    use std::collections::BTreeSet;

    fn p(s: &str) -> Path {
        s.parse().unwrap()
    }

    #[test]
    fn small_images() {
        assert_eq!(schroder_bijection(&p("")).unwrap(), SchroderPath(vec![]));
        assert_eq!(schroder_bijection(&p("HH")).unwrap().to_string(), "HH");
        assert_eq!(schroder_bijection(&p("VHD")).unwrap().to_string(), "UHD");
        assert_eq!(schroder_bijection(&p("VHD")).unwrap().length(), 4);
    }

    #[test]
    fn rejects_inadmissible() {
        assert!(schroder_bijection(&p("DV")).is_err());
        assert!(schroder_bijection(&p("V")).is_err());
        assert!(schroder_bijection(&p("UD")).is_err());
        assert!(schroder_bijection_inverse(&SchroderPath(vec![SchroderStep::Down])).is_err());
    }

    #[test]
    fn enumerated_schroder_counts() {
        for n in 0..=6 {
            let all = enumerate_schroder_paths(n).unwrap();
            assert_eq!(all.len() as u64, u64::try_from(schroder(n as u64)).unwrap());
            assert!(all.iter().all(|s| s.is_valid() && s.length() == 2 * n));
        }
        assert!(enumerate_schroder_paths(11).is_err());
    }

    #[test]
    fn bijection_onto_schroder_paths() {
        for len in 0..=6usize {
            let model = PathModel::delay(len, Rational::one(), Rational::one(), Rational::one());
            let sources = enumerate_paths(&model, model.max_path_steps()).unwrap();
            let images: BTreeSet<SchroderPath> = sources
                .iter()
                .map(|s| schroder_bijection(s).unwrap())
                .collect();
            assert_eq!(images.len(), sources.len(), "injective at L = {len}");
            let targets: BTreeSet<SchroderPath> =
                enumerate_schroder_paths(len).unwrap().into_iter().collect();
            assert_eq!(images, targets);
            for s in &sources {
                assert_eq!(
                    &schroder_bijection_inverse(&schroder_bijection(s).unwrap()).unwrap(),
                    s
                );
            }
        }
    }
}
