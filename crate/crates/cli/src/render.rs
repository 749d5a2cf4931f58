//! SVG and ASCII pictures of tilings with their fault lines.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subtile_core::geometry::validate_tiling_with;
use subtile_core::{vertical_faults, Error, Library, Result, Symmetry, Tiling};

#[derive(Debug, Clone, Copy)]
pub struct RenderSpec {
    /// Side of one cell in SVG user units.
    pub cell: u32,
    pub seed: u64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { cell: 24, seed: 0 }
    }
}

/// One fill colour per library piece, drawn from the seeded stream.
fn palette(len: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            let h: u32 = rng.gen_range(0..360);
            let s: u32 = rng.gen_range(45..75);
            let l: u32 = rng.gen_range(55..80);
            format!("hsl({h},{s}%,{l}%)")
        })
        .collect()
}

fn owners(lib: &Library, t: &Tiling) -> Result<Vec<usize>> {
    let mut grid = vec![usize::MAX; t.n * t.m];
    for (i, p) in t.placements.iter().enumerate() {
        for c in p.cells(lib)? {
            grid[c.y as usize * t.m + c.x as usize] = i;
        }
    }
    Ok(grid)
}

fn checked(lib: &Library, t: &Tiling, sym: Symmetry) -> Result<Vec<usize>> {
    let v = validate_tiling_with(lib, t, sym);
    if !v.is_empty() {
        return Err(Error::InvalidTiling(v));
    }
    vertical_faults(lib, t)
}

/// Well-formed SVG: one `<rect>` per rectangular placement (a filled
/// `<path>` and an outline otherwise) and a dashed line at every fault.
pub fn svg(lib: &Library, t: &Tiling, sym: Symmetry, spec: RenderSpec) -> Result<String> {
    let faults = checked(lib, t, sym)?;
    let owner = owners(lib, t)?;
    let colors = palette(lib.len(), spec.seed);
    let px = spec.cell as usize;
    let (w, h) = (t.m * px, t.n * px);
    // SVG y grows downward; row 0 is drawn at the bottom
    let top = |y: usize| (t.n - y) * px;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#
    )
    .unwrap();
    for (i, p) in t.placements.iter().enumerate() {
        let shape = p.shape(lib)?;
        let fill = &colors[p.piece];
        let (x0, y0) = (p.at.x as usize, p.at.y as usize);
        if shape.is_rectangle() {
            let (sh, sw) = (shape.height() as usize, shape.width() as usize);
            writeln!(
                out,
                r##"  <rect x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="#222" stroke-width="1" data-piece="{}"/>"##,
                x0 * px,
                top(y0 + sh),
                sw * px,
                sh * px,
                p.piece
            )
            .unwrap();
            continue;
        }
        let mut body = String::new();
        let mut edges = String::new();
        for c in shape.cells() {
            let (x, y) = (x0 + c.x as usize, y0 + c.y as usize);
            write!(body, "M{} {}h{px}v{px}h-{px}z", x * px, top(y + 1)).unwrap();
            let same = |dx: i64, dy: i64| {
                let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                nx >= 0 && ny >= 0 && (nx as usize) < t.m && (ny as usize) < t.n && owner[ny as usize * t.m + nx as usize] == i
            };
            let (l, r, b, u) = (x * px, (x + 1) * px, top(y), top(y + 1));
            if !same(-1, 0) {
                write!(edges, "M{l} {u}V{b}").unwrap();
            }
            if !same(1, 0) {
                write!(edges, "M{r} {u}V{b}").unwrap();
            }
            if !same(0, -1) {
                write!(edges, "M{l} {b}H{r}").unwrap();
            }
            if !same(0, 1) {
                write!(edges, "M{l} {u}H{r}").unwrap();
            }
        }
        writeln!(out, r#"  <path d="{body}" fill="{fill}" stroke="none" data-piece="{}"/>"#, p.piece).unwrap();
        writeln!(out, r##"  <path d="{edges}" fill="none" stroke="#222" stroke-width="1"/>"##).unwrap();
    }
    for f in &faults {
        writeln!(
            out,
            r##"  <line class="fault" x1="{x}" y1="0" x2="{x}" y2="{h}" stroke="#c00" stroke-width="2" stroke-dasharray="6 4"/>"##,
            x = f * px
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

const LABELS: &[u8] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

/// One character per cell naming its placement, top row first. Columns
/// are separated by `:` at faults and by a space elsewhere.
pub fn ascii(lib: &Library, t: &Tiling, sym: Symmetry) -> Result<String> {
    let faults = checked(lib, t, sym)?;
    let owner = owners(lib, t)?;
    let mut out = String::new();
    for y in (0..t.n).rev() {
        for x in 0..t.m {
            if x > 0 {
                out.push(if faults.contains(&x) { ':' } else { ' ' });
            }
            out.push(LABELS[owner[y * t.m + x] % LABELS.len()] as char);
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use subtile_core::{Cell, Placement, Transform, TransformMode};

    fn dominoes(k: u32) -> (Library, Tiling) {
        let lib = Library::rectangles(&[(1, 2)], TransformMode::Fixed);
        let p = (0..k).map(|i| Placement::new(0, Transform::IDENTITY, Cell::new(2 * i, 0))).collect();
        (lib, Tiling::new(1, 2 * k as usize, p))
    }

    #[test]
    fn single_domino() {
        let (lib, t) = dominoes(1);
        let s = svg(&lib, &t, Symmetry::Identity, RenderSpec::default()).unwrap();
        assert_eq!(s.matches("<rect").count(), 1);
        assert!(!s.contains("fault"));
        assert!(s.contains(r#"viewBox="0 0 48 24""#));
    }

    #[test]
    fn fault_between_dominoes() {
        let (lib, t) = dominoes(2);
        let s = svg(&lib, &t, Symmetry::Identity, RenderSpec::default()).unwrap();
        assert_eq!(s.matches("<rect").count(), 2);
        assert_eq!(s.matches(r#"class="fault""#).count(), 1);
        assert!(s.contains(r#"x1="48""#));
        assert_eq!(ascii(&lib, &t, Symmetry::Identity).unwrap(), "A A:B B\n");
    }

    #[test]
    fn deterministic_per_seed() {
        let (lib, t) = dominoes(2);
        let spec = RenderSpec { cell: 10, seed: 7 };
        let a = svg(&lib, &t, Symmetry::Identity, spec).unwrap();
        assert_eq!(a, svg(&lib, &t, Symmetry::Identity, spec).unwrap());
        assert_ne!(a, svg(&lib, &t, Symmetry::Identity, RenderSpec { cell: 10, seed: 8 }).unwrap());
    }

    #[test]
    fn invalid_tiling_is_refused() {
        let (lib, mut t) = dominoes(2);
        t.placements.pop();
        assert!(svg(&lib, &t, Symmetry::Identity, RenderSpec::default()).is_err());
    }

    #[test]
    fn non_rectangles_get_outlines() {
        let lib = subtile_core::subtile::staircase_library();
        let t = subtile_core::subtile::staircase_tiling(5).unwrap();
        let s = svg(&lib, &t, Symmetry::Full, RenderSpec::default()).unwrap();
        assert_eq!(s.matches("<path").count(), 2 * t.placements.len());
        assert!(!s.contains("fault"));
        assert_eq!(ascii(&lib, &t, Symmetry::Full).unwrap(), "A A B B C\nA B B C C\n");
    }
}
