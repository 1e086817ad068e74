use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::geometry::{EpsilonGrid, Polyline};
use crate::error::{Error, Result};

/// Mean number of occupied `ε`-cells over the grid offsets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxCount {
    pub eps: f64,
    pub count: f64,
}

/// Default number of random grid translations per scale.
pub const DEFAULT_OFFSETS: usize = 4;

/// Cap on cell visits for a single scale and offset.
const MAX_VISITS: usize = 200_000_000;

fn pack(ix: i64, iy: i64) -> u64 {
    ((ix as u32 as u64) << 32) | (iy as u32 as u64)
}

/// Cells of side 1 (in grid units) crossed by the segment `a → b`.
fn walk_segment(a: [f64; 2], b: [f64; 2], out: &mut Vec<u64>) {
    let mut ix = a[0].floor() as i64;
    let mut iy = a[1].floor() as i64;
    let ex = b[0].floor() as i64;
    let ey = b[1].floor() as i64;
    out.push(pack(ix, iy));
    if ix == ex && iy == ey {
        return;
    }
    let dx = b[0] - a[0];
    let dy = b[1] - a[1];
    let step_x: i64 = if dx > 0.0 { 1 } else { -1 };
    let step_y: i64 = if dy > 0.0 { 1 } else { -1 };
    let t_delta_x = if dx != 0.0 {
        1.0 / dx.abs()
    } else {
        f64::INFINITY
    };
    let t_delta_y = if dy != 0.0 {
        1.0 / dy.abs()
    } else {
        f64::INFINITY
    };
    let mut t_max_x = if dx > 0.0 {
        ((ix + 1) as f64 - a[0]) / dx
    } else if dx < 0.0 {
        (ix as f64 - a[0]) / dx
    } else {
        f64::INFINITY
    };
    let mut t_max_y = if dy > 0.0 {
        ((iy + 1) as f64 - a[1]) / dy
    } else if dy < 0.0 {
        (iy as f64 - a[1]) / dy
    } else {
        f64::INFINITY
    };
    let remaining = (ex - ix).unsigned_abs() + (ey - iy).unsigned_abs();
    for _ in 0..remaining {
        if t_max_x < t_max_y {
            ix += step_x;
            t_max_x += t_delta_x;
        } else {
            iy += step_y;
            t_max_y += t_delta_y;
        }
        out.push(pack(ix, iy));
        if ix == ex && iy == ey {
            break;
        }
    }
    // rounding can leave the walk short of the end cell
    out.push(pack(ex, ey));
}

/// Number of cells of side `eps` with origin `offset` meeting the polyline.
pub fn count_cells(poly: &Polyline, eps: f64, offset: [f64; 2]) -> Result<usize> {
    let mut cells = Vec::new();
    let mut visits = 0usize;
    let to_grid = |p: &[f64; 2]| [(p[0] - offset[0]) / eps, (p[1] - offset[1]) / eps];
    if poly.connected && poly.points.len() >= 2 {
        for w in poly.points.windows(2) {
            let a = to_grid(&w[0]);
            let b = to_grid(&w[1]);
            visits += ((b[0] - a[0]).abs() + (b[1] - a[1]).abs()) as usize + 2;
            if visits > MAX_VISITS {
                return Err(Error::BudgetExceeded(format!(
                    "box count at ε = {eps} exceeds cell budget"
                )));
            }
            walk_segment(a, b, &mut cells);
        }
    } else {
        for p in &poly.points {
            let g = to_grid(p);
            cells.push(pack(g[0].floor() as i64, g[1].floor() as i64));
        }
    }
    cells.sort_unstable();
    cells.dedup();
    Ok(cells.len())
}

/// `N(ε)` for every scale of the grid, averaged over `offsets` seeded grid
/// translations. Offsets are drawn as fractions of `ε`, so scaling the
/// polyline and the grid by a power of two gives identical counts.
pub fn box_count(
    poly: &Polyline,
    grid: &EpsilonGrid,
    offsets: usize,
    seed: u64,
) -> Result<Vec<BoxCount>> {
    poly.validate()?;
    let b = poly.bbox();
    let extent = (b[2] - b[0]).max(b[3] - b[1]);
    if grid.max() > extent && extent > 0.0 {
        return Err(Error::invalid(format!(
            "largest ε = {} exceeds the polyline extent {extent}",
            grid.max()
        )));
    }
    let offsets = offsets.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fractions: Vec<[f64; 2]> = (0..offsets)
        .map(|_| [rng.gen::<f64>(), rng.gen::<f64>()])
        .collect();
    grid.eps
        .par_iter()
        .map(|&eps| {
            let mut total = 0usize;
            for f in &fractions {
                total += count_cells(poly, eps, [f[0] * eps, f[1] * eps])?;
            }
            Ok(BoxCount {
                eps,
                count: total as f64 / offsets as f64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_counts() {
        let seg = Polyline::new(vec![[0.0, 0.0], [1.0, 0.0]]);
        let n = count_cells(&seg, 0.01, [0.005, 0.005]).unwrap();
        assert_eq!(n, 101);
        let diag = Polyline::new(vec![[0.0, 0.0], [1.0, 1.0]]);
        let n = count_cells(&diag, 0.1, [0.03, 0.07]).unwrap();
        // a generic diagonal crosses 10 columns and 10 rows
        assert!((19..=21).contains(&n), "{n}");
    }

    #[test]
    fn point_set_counts() {
        let pts = Polyline::point_set(vec![[0.1, 0.1], [0.12, 0.1], [0.9, 0.9]]);
        assert_eq!(count_cells(&pts, 0.5, [0.0, 0.0]).unwrap(), 2);
        assert_eq!(count_cells(&pts, 0.01, [0.0, 0.0]).unwrap(), 3);
    }

    #[test]
    fn walk_matches_dense_sampling() {
        let seg = Polyline::new(vec![[0.013, 0.71], [0.94, 0.022], [0.5, 0.5]]);
        let eps = 0.037;
        let offset = [0.011, 0.029];
        let n = count_cells(&seg, eps, offset).unwrap();
        let mut cells = std::collections::BTreeSet::new();
        for w in seg.points.windows(2) {
            for i in 0..=200_000 {
                let t = i as f64 / 200_000.0;
                let x = w[0][0] + t * (w[1][0] - w[0][0]);
                let y = w[0][1] + t * (w[1][1] - w[0][1]);
                cells.insert((
                    ((x - offset[0]) / eps).floor() as i64,
                    ((y - offset[1]) / eps).floor() as i64,
                ));
            }
        }
        assert_eq!(n, cells.len());
    }
}
