//! Weighted lattice paths over the step set `{U, D, H, V}`.
//!
//! A [`PathModel`] fixes which steps are allowed, their weights, the floor the
//! path may not drop below, the start and end heights, and the total
//! horizontal displacement. [`count_weighted_paths`] sums the weight product
//! over all admissible paths by dynamic programming; [`enumerate_paths`] lists
//! them one by one and serves as the brute-force oracle for the DP.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::PathError;
use crate::rational::Rational;

/// Hard cap on path length for [`enumerate_paths`].
pub const MAX_ENUMERATION_STEPS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// (1, 1)
    Up,
    /// (1, -1)
    Down,
    /// (1, 0)
    Horizontal,
    /// (0, 1)
    Vertical,
}

impl Direction {
    pub fn dx(self) -> i64 {
        match self {
            Direction::Vertical => 0,
            _ => 1,
        }
    }

    pub fn dy(self) -> i64 {
        match self {
            Direction::Up | Direction::Vertical => 1,
            Direction::Down => -1,
            Direction::Horizontal => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Up => 'U',
            Direction::Down => 'D',
            Direction::Horizontal => 'H',
            Direction::Vertical => 'V',
        }
    }

    pub fn from_symbol(c: char) -> Result<Self, PathError> {
        match c {
            'U' => Ok(Direction::Up),
            'D' => Ok(Direction::Down),
            'H' => Ok(Direction::Horizontal),
            'V' => Ok(Direction::Vertical),
            other => Err(PathError::BadSymbol(other)),
        }
    }
}

/// Which of the large-N constants a step carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StepLabel {
    A1,
    A2,
    A3,
    A4,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub direction: Direction,
    pub weight: Rational,
    pub label: StepLabel,
}

impl Step {
    pub fn new(direction: Direction, weight: Rational, label: StepLabel) -> Self {
        Step {
            direction,
            weight,
            label,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathModel {
    steps: Vec<Step>,
    floor: i64,
    start_height: i64,
    end_height: i64,
    horizontal_length: usize,
}

impl PathModel {
    pub fn new(
        steps: Vec<Step>,
        floor: i64,
        start_height: i64,
        end_height: i64,
        horizontal_length: usize,
    ) -> Result<Self, PathError> {
        if steps.is_empty() {
            return Err(PathError::InvalidModel("empty step set".into()));
        }
        for (i, s) in steps.iter().enumerate() {
            if steps[..i].iter().any(|t| t.direction == s.direction) {
                return Err(PathError::InvalidModel(format!(
                    "duplicate step {}",
                    s.direction.symbol()
                )));
            }
        }
        if start_height < floor || end_height < floor {
            return Err(PathError::InvalidModel(
                "start and end heights must lie on or above the floor".into(),
            ));
        }
        Ok(PathModel {
            steps,
            floor,
            start_height,
            end_height,
            horizontal_length,
        })
    }

    fn ground(steps: Vec<Step>, horizontal_length: usize) -> Self {
        Self::new(steps, 0, 0, 0, horizontal_length).expect("ground-level model is valid")
    }

    /// Rises and falls, `2·pairs` steps long, returning to the floor.
    pub fn dyck(pairs: usize, up: Rational, down: Rational) -> Self {
        Self::ground(
            vec![
                Step::new(Direction::Up, up, StepLabel::A1),
                Step::new(Direction::Down, down, StepLabel::A2),
            ],
            2 * pairs,
        )
    }

    /// Rises, falls and horizontal steps of total length `length`.
    pub fn motzkin(length: usize, up: Rational, down: Rational, horizontal: Rational) -> Self {
        Self::ground(
            vec![
                Step::new(Direction::Up, up, StepLabel::A1),
                Step::new(Direction::Down, down, StepLabel::A2),
                Step::new(Direction::Horizontal, horizontal, StepLabel::A3),
            ],
            length,
        )
    }

    /// Vertical, falling and horizontal steps: the delay-time model whose
    /// unit-weight paths of horizontal length `L` are counted by `R_L`.
    pub fn delay(length: usize, vertical: Rational, down: Rational, horizontal: Rational) -> Self {
        Self::ground(
            vec![
                Step::new(Direction::Vertical, vertical, StepLabel::A1),
                Step::new(Direction::Down, down, StepLabel::A2),
                Step::new(Direction::Horizontal, horizontal, StepLabel::A3),
            ],
            length,
        )
    }

    /// All four steps: vertical `A1`, fall `A2`, horizontal `A3`, rise `A4`.
    pub fn jacobi4(
        length: usize,
        vertical: Rational,
        down: Rational,
        horizontal: Rational,
        up: Rational,
    ) -> Self {
        Self::ground(
            vec![
                Step::new(Direction::Vertical, vertical, StepLabel::A1),
                Step::new(Direction::Down, down, StepLabel::A2),
                Step::new(Direction::Horizontal, horizontal, StepLabel::A3),
                Step::new(Direction::Up, up, StepLabel::A4),
            ],
            length,
        )
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn start_height(&self) -> i64 {
        self.start_height
    }

    pub fn end_height(&self) -> i64 {
        self.end_height
    }

    pub fn horizontal_length(&self) -> usize {
        self.horizontal_length
    }

    pub fn step(&self, direction: Direction) -> Option<&Step> {
        self.steps.iter().find(|s| s.direction == direction)
    }

    /// Replaces the weight of an existing step.
    pub fn with_weight(
        mut self,
        direction: Direction,
        weight: Rational,
    ) -> Result<Self, PathError> {
        let step = self
            .steps
            .iter_mut()
            .find(|s| s.direction == direction)
            .ok_or_else(|| {
                PathError::InvalidModel(format!("model has no {} step", direction.symbol()))
            })?;
        step.weight = weight;
        Ok(self)
    }

    /// Highest height from which the end point is still reachable at
    /// horizontal position `x`: every remaining unit of `dx` lowers by at most 1.
    fn ceiling(&self, x: usize) -> i64 {
        self.end_height + (self.horizontal_length - x) as i64
    }

    /// Upper bound on the number of steps in any admissible path.
    pub fn max_path_steps(&self) -> usize {
        let climb = (self.end_height - self.start_height).max(0) as usize;
        match self.step(Direction::Vertical) {
            Some(_) => 2 * self.horizontal_length + climb,
            None => self.horizontal_length,
        }
    }
}

/// A path as its sequence of step directions, written over `{U, D, H, V}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<Direction>);

impl Path {
    pub fn steps(&self) -> &[Direction] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, direction: Direction) -> usize {
        self.0.iter().filter(|&&d| d == direction).count()
    }

    /// Checks step membership, the floor, and both endpoint constraints.
    pub fn check(&self, model: &PathModel) -> Result<(), PathError> {
        let (mut x, mut h) = (0usize, model.start_height);
        for (i, &d) in self.0.iter().enumerate() {
            if model.step(d).is_none() {
                return Err(PathError::Inadmissible(format!(
                    "step {} at position {i} is not in the model",
                    d.symbol()
                )));
            }
            x += d.dx() as usize;
            h += d.dy();
            if h < model.floor {
                return Err(PathError::Inadmissible(format!(
                    "drops below the floor at position {i}"
                )));
            }
        }
        if x != model.horizontal_length || h != model.end_height {
            return Err(PathError::Inadmissible(format!(
                "ends at ({x}, {h}) instead of ({}, {})",
                model.horizontal_length, model.end_height
            )));
        }
        Ok(())
    }

    /// Product of the model weights along the path (the path is assumed to
    /// use only steps of the model).
    pub fn weight(&self, model: &PathModel) -> Rational {
        self.0
            .iter()
            .map(|&d| {
                model
                    .step(d)
                    .map(|s| s.weight.clone())
                    .unwrap_or_else(Rational::zero)
            })
            .product()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(Direction::from_symbol)
            .collect::<Result<_, _>>()
            .map(Path)
    }
}

impl Serialize for Path {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Sum over admissible paths of the product of step weights.
///
/// State is `(x, height)`. Within one column `x` the only move is the
/// vertical step, which strictly raises the height, so each column is closed
/// in a single upward sweep before the `dx = 1` steps advance to `x + 1`.
/// Heights above [`PathModel::ceiling`] can never return to the end height
/// and are dropped, which keeps the table finite even with vertical steps.
pub fn count_weighted_paths(model: &PathModel) -> Rational {
    let length = model.horizontal_length;
    let floor = model.floor;
    if model.start_height > model.ceiling(0) {
        return Rational::zero();
    }
    let width = (model.ceiling(0) - floor + 1) as usize;
    let idx = |h: i64| (h - floor) as usize;

    let vertical = model.step(Direction::Vertical).map(|s| &s.weight);
    let advancing: Vec<&Step> = model
        .steps
        .iter()
        .filter(|s| s.direction.dx() == 1)
        .collect();

    let mut column = vec![Rational::zero(); width];
    column[idx(model.start_height)] = Rational::one();
    for x in 0..=length {
        let top = model.ceiling(x);
        if let Some(w) = vertical {
            for h in floor..top {
                if !column[idx(h)].is_zero() {
                    let lifted = &column[idx(h)] * w;
                    column[idx(h + 1)] += lifted;
                }
            }
        }
        if x == length {
            break;
        }
        let next_top = model.ceiling(x + 1);
        let mut next = vec![Rational::zero(); width];
        for h in floor..=top {
            let here = &column[idx(h)];
            if here.is_zero() {
                continue;
            }
            for step in &advancing {
                let h2 = h + step.direction.dy();
                if h2 >= floor && h2 <= next_top {
                    next[idx(h2)] += here * &step.weight;
                }
            }
        }
        column = next;
    }
    column[idx(model.end_height)].clone()
}

/// Every admissible path of the model with at most `max_steps` steps, in
/// lexicographic order of the model's step list.
pub fn enumerate_paths(model: &PathModel, max_steps: usize) -> Result<Vec<Path>, PathError> {
    if max_steps > MAX_ENUMERATION_STEPS {
        return Err(PathError::EnumerationBound {
            requested: max_steps,
            limit: MAX_ENUMERATION_STEPS,
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(max_steps);
    extend(
        model,
        max_steps,
        0,
        model.start_height,
        &mut prefix,
        &mut out,
    );
    Ok(out)
}

fn extend(
    model: &PathModel,
    max_steps: usize,
    x: usize,
    h: i64,
    prefix: &mut Vec<Direction>,
    out: &mut Vec<Path>,
) {
    if x == model.horizontal_length && h == model.end_height {
        out.push(Path(prefix.clone()));
    }
    if prefix.len() == max_steps {
        return;
    }
    for step in &model.steps {
        let d = step.direction;
        let x2 = x + d.dx() as usize;
        let h2 = h + d.dy();
        if x2 > model.horizontal_length || h2 < model.floor || h2 > model.ceiling(x2) {
            continue;
        }
        prefix.push(d);
        extend(model, max_steps, x2, h2, prefix, out);
        prefix.pop();
    }
}
