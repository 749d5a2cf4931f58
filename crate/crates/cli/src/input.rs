//! Instance and library files.

use std::path::Path;

use serde::Deserialize;
use subtile_core::represent::RowAssignedPiece;
use subtile_core::{Cell, Error, Library, PieceMultiset, Placement, Polyomino, Tiling, Transform, TransformMode};

use crate::Failure;

/// A library file is either a full library object or a bare list of pieces
/// (placed without transforms).
#[derive(Deserialize)]
#[serde(untagged)]
enum LibraryFile {
    Full(Library),
    Bare(Vec<Polyomino>),
}

impl From<LibraryFile> for Library {
    fn from(f: LibraryFile) -> Self {
        match f {
            LibraryFile::Full(l) => l,
            LibraryFile::Bare(p) => Library::new(p, TransformMode::Fixed),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct Board {
    pub n: usize,
    pub m: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    library: Option<LibraryFile>,
    board: Option<Board>,
    tiling: Option<Tiling>,
    multiset: Option<PieceMultiset>,
    assigned: Option<Vec<RowAssignedPiece>>,
}

/// A parsed `--instance` file.
#[derive(Debug, Clone)]
pub struct Instance {
    pub library: Option<Library>,
    pub board: Option<Board>,
    pub tiling: Option<Tiling>,
    pub multiset: Option<PieceMultiset>,
    pub assigned: Option<Vec<RowAssignedPiece>>,
}

impl Instance {
    /// Board from the explicit field or the tiling.
    pub fn board(&self) -> Option<Board> {
        self.board
            .or_else(|| self.tiling.as_ref().map(|t| Board { n: t.n, m: t.m }))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn load_library(path: &Path, pairs: bool) -> Result<Library, Failure> {
    let text = read(path)?;
    if pairs {
        let pairs: Vec<[Number; 2]> = parse(path, &text)?;
        let dims = pairs
            .iter()
            .map(|[h, w]| Ok((h.get()? as u32, w.get()? as u32)))
            .collect::<Result<Vec<_>, Failure>>()?;
        if dims.iter().any(|&(h, w)| h == 0 || w == 0) {
            return Err(Failure::Input("rectangle sides must be positive".into()));
        }
        return Ok(Library::rectangles(&dims, TransformMode::Fixed));
    }
    Ok(parse::<LibraryFile>(path, &text)?.into())
}

pub fn load_instance(path: &Path, pairs: bool) -> Result<Instance, Failure> {
    let text = read(path)?;
    if pairs {
        return parse::<PairTiling>(path, &text)?.into_instance();
    }
    let raw: RawInstance = parse(path, &text)?;
    let inst = Instance {
        library: raw.library.map(Library::from),
        board: raw.board,
        tiling: raw.tiling,
        multiset: raw.multiset,
        assigned: raw.assigned,
    };
    if let (Some(lib), Some(t)) = (&inst.library, &inst.tiling) {
        if let Some(p) = t.placements.iter().find(|p| p.piece >= lib.len()) {
            return Err(Failure::Core(Error::UnknownPiece(p.piece, lib.len())));
        }
    }
    if let (Some(b), Some(t)) = (inst.board, &inst.tiling) {
        if (b.n, b.m) != (t.n, t.m) {
            return Err(Failure::Input("board does not match the tiling's dimensions".into()));
        }
    }
    Ok(inst)
}

/// A non-negative integer written as a JSON number or a binary string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(u64),
    Bits(String),
}

impl Number {
    fn get(&self) -> Result<u64, Failure> {
        match self {
            Number::Int(v) => Ok(*v),
            Number::Bits(s) => {
                u64::from_str_radix(s, 2).map_err(|_| Failure::Input(format!("{s:?} is not a binary number")))
            }
        }
    }
}

/// Rectangles as `(h, w)` pairs with their bottom-left squares as `(x, y)`
/// pairs, entries aligned by index.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairTiling {
    pieces: Vec<[Number; 2]>,
    corners: Vec<[Number; 2]>,
}

impl PairTiling {
    fn into_instance(self) -> Result<Instance, Failure> {
        if self.pieces.len() != self.corners.len() {
            return Err(Failure::Input(format!(
                "{} pieces but {} corners",
                self.pieces.len(),
                self.corners.len()
            )));
        }
        let mut dims: Vec<(u32, u32)> = Vec::new();
        let mut placements = Vec::new();
        let (mut n, mut m) = (0u64, 0u64);
        for ([h, w], [x, y]) in self.pieces.iter().zip(&self.corners) {
            let (h, w, x, y) = (h.get()?, w.get()?, x.get()?, y.get()?);
            if h == 0 || w == 0 {
                return Err(Failure::Input("rectangle sides must be positive".into()));
            }
            let d = (h as u32, w as u32);
            let i = match dims.iter().position(|&e| e == d) {
                Some(i) => i,
                None => {
                    dims.push(d);
                    dims.len() - 1
                }
            };
            placements.push(Placement::new(i, Transform::IDENTITY, Cell::new(x as u32, y as u32)));
            n = n.max(y + h);
            m = m.max(x + w);
        }
        Ok(Instance {
            library: Some(Library::rectangles(&dims, TransformMode::Fixed)),
            board: None,
            tiling: Some(Tiling::new(n as usize, m as usize, placements)),
            multiset: None,
            assigned: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn bare_and_full_libraries() {
        let bare = load_library(file(r#"[{"rect":[1,2]}]"#).path(), false).unwrap();
        assert_eq!(bare.len(), 1);
        let full = load_library(
            file(r#"{"pieces":[{"rect":[1,2]}],"mode":"rotations-and-reflections"}"#).path(),
            false,
        )
        .unwrap();
        assert_eq!(full.mode(), TransformMode::RotationsAndReflections);
    }

    #[test]
    fn pair_lists() {
        let lib = load_library(file(r#"[["1","10"],[2,1]]"#).path(), true).unwrap();
        assert_eq!(lib.rect_dims().unwrap(), vec![(1, 2), (2, 1)]);
        let inst = load_instance(
            file(r#"{"pieces":[["1","10"],["1","10"]],"corners":[[0,0],["10",0]]}"#).path(),
            true,
        )
        .unwrap();
        let t = inst.tiling.unwrap();
        assert_eq!((t.n, t.m), (1, 4));
        assert_eq!(t.placements[1].at, Cell::new(2, 0));
    }

    #[test]
    fn schema_errors() {
        assert!(load_instance(file(r#"{"libary":[]}"#).path(), false).is_err());
        assert!(load_library(file("not json").path(), false).is_err());
        let bad = r#"{"library":[{"rect":[1,1]}],"tiling":{"n":1,"m":1,"placements":[{"piece":3,"at":[0,0]}]}}"#;
        assert!(matches!(
            load_instance(file(bad).path(), false),
            Err(Failure::Core(Error::UnknownPiece(3, 1)))
        ));
    }
}
