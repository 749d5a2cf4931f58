use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A unit square addressed by column `x` and row `y`, with `(0, 0)` the
/// bottom-left square of the enclosing region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Cell {
    pub x: u32,
    pub y: u32,
}

impl Cell {
    pub const fn new(x: u32, y: u32) -> Self {
        Cell { x, y }
    }
}

/// Row-major: by row, then by column.
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[u32; 2]>::deserialize(d)?;
        Ok(Cell { x, y })
    }
}

/// A finite, edge-connected set of unit cells, translated so that its
/// bounding box starts at the origin. Cells are stored in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyomino {
    cells: Vec<Cell>,
    width: u32,
    height: u32,
}

impl Polyomino {
    /// Normalizes an arbitrary cell set. Duplicates are ignored.
    pub fn from_cells<I>(cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let set: BTreeSet<(i64, i64)> = cells.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyPolyomino);
        }
        let min_x = set.iter().map(|c| c.0).min().unwrap();
        let min_y = set.iter().map(|c| c.1).min().unwrap();
        let mut out = Vec::with_capacity(set.len());
        for &(x, y) in &set {
            let (dx, dy) = (x - min_x, y - min_y);
            if dx > u32::MAX as i64 / 2 || dy > u32::MAX as i64 / 2 {
                return Err(Error::CoordinateOutOfRange(x, y));
            }
            out.push(Cell::new(dx as u32, dy as u32));
        }
        let poly = Self::from_normalized(out);
        if !poly.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(poly)
    }

    /// The `h x w` rectangle (height first).
    pub fn rect(height: u32, width: u32) -> Self {
        assert!(height > 0 && width > 0, "rectangle sides must be positive");
        let mut cells = Vec::with_capacity((height * width) as usize);
        for y in 0..height {
            for x in 0..width {
                cells.push(Cell::new(x, y));
            }
        }
        Polyomino {
            cells,
            width,
            height,
        }
    }

    // Caller guarantees min x = min y = 0 and no duplicates.
    pub(crate) fn from_normalized(mut cells: Vec<Cell>) -> Self {
        cells.sort();
        cells.dedup();
        let width = cells.iter().map(|c| c.x).max().map_or(0, |x| x + 1);
        let height = cells.iter().map(|c| c.y).max().map_or(0, |y| y + 1);
        Polyomino {
            cells,
            width,
            height,
        }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn area(&self) -> u32 {
        self.cells.len() as u32
    }

    pub fn is_rectangle(&self) -> bool {
        self.area() == self.width * self.height
    }

    /// `(height, width)` when the shape is a rectangle.
    pub fn rect_dims(&self) -> Option<(u32, u32)> {
        self.is_rectangle().then_some((self.height, self.width))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.cells.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            let c = self.cells[i];
            let mut visit = |n: Cell| {
                if let Ok(j) = self.cells.binary_search(&n) {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        queue.push_back(j);
                    }
                }
            };
            visit(Cell::new(c.x + 1, c.y));
            visit(Cell::new(c.x, c.y + 1));
            if c.x > 0 {
                visit(Cell::new(c.x - 1, c.y));
            }
            if c.y > 0 {
                visit(Cell::new(c.x, c.y - 1));
            }
        }
        reached == self.cells.len()
    }
}

/// Shapes compare by their row-major cell lists; this order picks the
/// canonical representative of a symmetry class.
impl Ord for Polyomino {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cells.cmp(&other.cells)
    }
}

impl PartialOrd for Polyomino {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((h, w)) = self.rect_dims() {
            return write!(f, "{h}x{w}");
        }
        for y in (0..self.height).rev() {
            for x in 0..self.width {
                let c = if self.contains(Cell::new(x, y)) { '#' } else { '.' };
                write!(f, "{c}")?;
            }
            if y > 0 {
                write!(f, "/")?;
            }
        }
        Ok(())
    }
}

/// JSON form: a list of `[x, y]` cells, or `{"rect": [h, w]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyominoSpec {
    Rect { rect: [u32; 2] },
    Cells(Vec<[i64; 2]>),
}

impl PolyominoSpec {
    pub fn to_polyomino(&self) -> Result<Polyomino> {
        match self {
            PolyominoSpec::Rect { rect: [h, w] } => {
                if *h == 0 || *w == 0 {
                    return Err(Error::EmptyPolyomino);
                }
                Ok(Polyomino::rect(*h, *w))
            }
            PolyominoSpec::Cells(cells) => Polyomino::from_cells(cells.iter().map(|c| (c[0], c[1]))),
        }
    }
}

impl From<&Polyomino> for PolyominoSpec {
    fn from(p: &Polyomino) -> Self {
        match p.rect_dims() {
            Some((h, w)) => PolyominoSpec::Rect { rect: [h, w] },
            None => PolyominoSpec::Cells(
                p.cells()
                    .iter()
                    .map(|c| [c.x as i64, c.y as i64])
                    .collect(),
            ),
        }
    }
}

impl Serialize for Polyomino {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyominoSpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyomino {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PolyominoSpec::deserialize(d)?
            .to_polyomino()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_moves_to_origin() {
        let p = Polyomino::from_cells([(3, 5)]).unwrap();
        assert_eq!(p.cells(), &[Cell::new(0, 0)]);
        assert_eq!((p.width(), p.height(), p.area()), (1, 1, 1));
    }

    #[test]
    fn translation_by_minus_one() {
        let p = Polyomino::from_cells([(1, 1), (2, 1), (1, 0)]).unwrap();
        let q = Polyomino::from_cells([(0, 1), (1, 1), (0, 0)]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.cells(), &[Cell::new(0, 0), Cell::new(0, 1), Cell::new(1, 1)]);
    }

    #[test]
    fn rejects_gaps_and_empty_sets() {
        assert_eq!(Polyomino::from_cells([(0, 0), (2, 0)]), Err(Error::Disconnected));
        assert_eq!(Polyomino::from_cells([(0, 0), (1, 1)]), Err(Error::Disconnected));
        assert_eq!(Polyomino::from_cells(Vec::new()), Err(Error::EmptyPolyomino));
    }

    #[test]
    fn duplicates_collapse() {
        let p = Polyomino::from_cells([(0, 0), (0, 0), (1, 0)]).unwrap();
        assert_eq!(p, Polyomino::rect(1, 2));
    }

    #[test]
    fn negative_input_is_translated() {
        let p = Polyomino::from_cells([(-4, -2), (-3, -2)]).unwrap();
        assert_eq!(p, Polyomino::rect(1, 2));
    }

    #[test]
    fn rectangle_flag() {
        assert!(Polyomino::rect(2, 3).is_rectangle());
        assert_eq!(Polyomino::rect(2, 3).rect_dims(), Some((2, 3)));
        let l = Polyomino::from_cells([(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(!l.is_rectangle());
        assert_eq!(l.to_string(), "##/#.");
    }

    #[test]
    fn json_forms() {
        let r: Polyomino = serde_json::from_str(r#"{"rect":[2,3]}"#).unwrap();
        assert_eq!(r, Polyomino::rect(2, 3));
        let l: Polyomino = serde_json::from_str("[[0,0],[0,1],[1,1]]").unwrap();
        assert_eq!(l.area(), 3);
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"rect":[2,3]}"#);
        assert!(serde_json::from_str::<Polyomino>("[[0,0],[5,5]]").is_err());
    }
}
