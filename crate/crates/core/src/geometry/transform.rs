use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::polyomino::{Cell, Polyomino};
use crate::error::{Error, Result};

/// An element of the dihedral group of the square.
///
/// Id `r + 4f` reflects across a vertical line when `f = 1`, then rotates
/// `r` quarter turns counter-clockwise. Id 0 is the identity and id 4 the
/// vertical reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Transform(u8);

impl Transform {
    pub const IDENTITY: Transform = Transform(0);
    pub const QUARTER_TURN: Transform = Transform(1);
    pub const HALF_TURN: Transform = Transform(2);
    pub const VERTICAL_REFLECTION: Transform = Transform(4);

    pub fn new(id: u8) -> Result<Self> {
        if id < 8 {
            Ok(Transform(id))
        } else {
            Err(Error::UnknownTransform(id))
        }
    }

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = Transform> {
        (0..8).map(Transform)
    }

    pub fn quarter_turns(self) -> u8 {
        self.0 % 4
    }

    pub fn reflects(self) -> bool {
        self.0 >= 4
    }

    fn map(self, x: i64, y: i64) -> (i64, i64) {
        let (mut x, mut y) = if self.reflects() { (-x, y) } else { (x, y) };
        for _ in 0..self.quarter_turns() {
            (x, y) = (-y, x);
        }
        (x, y)
    }

    pub fn apply(self, p: &Polyomino) -> Polyomino {
        if self == Transform::IDENTITY {
            return p.clone();
        }
        let mapped: Vec<(i64, i64)> = p
            .cells()
            .iter()
            .map(|c| self.map(c.x as i64, c.y as i64))
            .collect();
        let min_x = mapped.iter().map(|c| c.0).min().unwrap();
        let min_y = mapped.iter().map(|c| c.1).min().unwrap();
        Polyomino::from_normalized(
            mapped
                .into_iter()
                .map(|(x, y)| Cell::new((x - min_x) as u32, (y - min_y) as u32))
                .collect(),
        )
    }
}

impl TryFrom<u8> for Transform {
    type Error = Error;
    fn try_from(id: u8) -> Result<Self> {
        Transform::new(id)
    }
}

impl From<Transform> for u8 {
    fn from(t: Transform) -> u8 {
        t.0
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Subgroups of the dihedral group that classify shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    Identity,
    VerticalReflection,
    Rotations,
    Full,
}

impl Symmetry {
    pub fn elements(self) -> &'static [Transform] {
        const ID: [Transform; 1] = [Transform(0)];
        const VR: [Transform; 2] = [Transform(0), Transform(4)];
        const ROT: [Transform; 4] = [Transform(0), Transform(1), Transform(2), Transform(3)];
        const FULL: [Transform; 8] = [
            Transform(0),
            Transform(1),
            Transform(2),
            Transform(3),
            Transform(4),
            Transform(5),
            Transform(6),
            Transform(7),
        ];
        match self {
            Symmetry::Identity => &ID,
            Symmetry::VerticalReflection => &VR,
            Symmetry::Rotations => &ROT,
            Symmetry::Full => &FULL,
        }
    }

    pub fn contains(self, t: Transform) -> bool {
        self.elements().contains(&t)
    }

    /// Smallest subgroup containing both.
    pub fn join(self, other: Symmetry) -> Symmetry {
        use Symmetry::*;
        match (self, other) {
            (a, b) if a == b => a,
            (Identity, x) | (x, Identity) => x,
            _ => Full,
        }
    }

    pub fn includes(self, other: Symmetry) -> bool {
        self.join(other) == self
    }

    /// Distinct shapes reachable from `p`, in ascending shape order.
    pub fn orbit(self, p: &Polyomino) -> Vec<Polyomino> {
        let set: BTreeSet<Polyomino> = self.elements().iter().map(|t| t.apply(p)).collect();
        set.into_iter().collect()
    }

    /// Canonical class representative: the least shape in the orbit.
    pub fn canonical(self, p: &Polyomino) -> Polyomino {
        self.elements()
            .iter()
            .map(|t| t.apply(p))
            .min()
            .expect("groups are non-empty")
    }
}

/// How library pieces may be placed. Ordered by permissiveness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformMode {
    #[default]
    Fixed,
    VerticalReflections,
    RotationsAndReflections,
}

impl TransformMode {
    pub fn symmetry(self) -> Symmetry {
        match self {
            TransformMode::Fixed => Symmetry::Identity,
            TransformMode::VerticalReflections => Symmetry::VerticalReflection,
            TransformMode::RotationsAndReflections => Symmetry::Full,
        }
    }
}

/// The orbit of `p` under the mode's group.
pub fn transforms(p: &Polyomino, mode: TransformMode) -> Vec<Polyomino> {
    mode.symmetry().orbit(p)
}
