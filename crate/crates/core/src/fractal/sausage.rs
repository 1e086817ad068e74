use rayon::prelude::*;

use super::fit::{scaling_fit, DimensionEstimate, DimensionMethod};
use super::geometry::{EpsilonGrid, Polyline};
use crate::error::{Error, Result};

/// Rows per `ε` of the scanline raster.
pub const ROWS_PER_EPS: f64 = 8.0;

/// Douglas–Peucker tolerance relative to `ε` applied before rasterizing.
pub const SIMPLIFY_FRACTION: f64 = 1.0 / 200.0;

/// Cap on chord intervals held at once.
const MAX_CHUNK_INTERVALS: usize = 8_000_000;

/// Cap on scanline rows.
const MAX_ROWS: usize = 50_000_000;

/// `[lo, hi]` of `{x : |(x, y) − c| < eps}`.
fn disk_chord(c: [f64; 2], eps: f64, y: f64) -> Option<(f64, f64)> {
    let dy = y - c[1];
    let h2 = eps * eps - dy * dy;
    if h2 <= 0.0 {
        return None;
    }
    let h = h2.sqrt();
    Some((c[0] - h, c[0] + h))
}

/// Intersection of the horizontal line at `y` with the `eps`-neighbourhood
/// of segment `ab` (a stadium, hence convex, so the result is one interval).
fn stadium_chord(a: [f64; 2], b: [f64; 2], eps: f64, y: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for c in [a, b] {
        if let Some((l, h)) = disk_chord(c, eps, y) {
            lo = lo.min(l);
            hi = hi.max(h);
        }
    }
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len = dx.hypot(dy);
    if len > 0.0 {
        // band |n·(p − a)| < eps with n the unit normal, and 0 ≤ t ≤ 1 along
        // the segment; both are intervals in x on the line
        let (nx, ny) = (-dy / len, dx / len);
        let (ux, uy) = (dx / len, dy / len);
        let mut band = (f64::NEG_INFINITY, f64::INFINITY);
        let base_n = ny * (y - a[1]) - nx * a[0];
        if nx != 0.0 {
            let x1 = (-eps - base_n) / nx;
            let x2 = (eps - base_n) / nx;
            band = (x1.min(x2), x1.max(x2));
        } else if base_n.abs() >= eps {
            band = (f64::INFINITY, f64::NEG_INFINITY);
        }
        let base_t = uy * (y - a[1]) - ux * a[0];
        let mut along = (f64::NEG_INFINITY, f64::INFINITY);
        if ux != 0.0 {
            let x1 = (0.0 - base_t) / ux;
            let x2 = (len - base_t) / ux;
            along = (x1.min(x2), x1.max(x2));
        } else if !(0.0..=len).contains(&base_t) {
            along = (f64::INFINITY, f64::NEG_INFINITY);
        }
        let l = band.0.max(along.0);
        let h = band.1.min(along.1);
        if l < h {
            lo = lo.min(l);
            hi = hi.max(h);
        }
    }
    (lo < hi).then_some((lo, hi))
}

/// Area of the `eps`-neighbourhood with scanline rows at `y = (j + 1/2) h`.
/// Each row contributes `h` times the exact length of the union of chords.
/// Rows are swept in chunks whose interval load is capped, so memory stays
/// bounded even where many windings overlap.
pub fn sausage_area_rows(poly: &Polyline, eps: f64, h: f64) -> Result<f64> {
    poly.validate()?;
    if !(eps > 0.0 && h > 0.0) {
        return Err(Error::invalid("eps and row spacing must be positive"));
    }
    let row_of = |y: f64| ((y / h) - 0.5).ceil() as i64;
    let segments: Vec<([f64; 2], [f64; 2])> = poly.segments().collect();
    let spans: Vec<(i64, i64)> = segments
        .iter()
        .map(|(a, b)| (row_of(a[1].min(b[1]) - eps), row_of(a[1].max(b[1]) + eps)))
        .collect();
    let first = spans.iter().map(|s| s.0).min().unwrap();
    let last = spans.iter().map(|s| s.1).max().unwrap();
    let n_rows = (last - first + 1) as usize;
    if n_rows > MAX_ROWS {
        return Err(Error::BudgetExceeded(format!(
            "sausage raster at ε = {eps} needs {n_rows} rows"
        )));
    }
    // intervals per row, via a difference array
    let mut load = vec![0i64; n_rows + 1];
    for &(lo, hi) in &spans {
        load[(lo - first) as usize] += 1;
        load[(hi - first) as usize + 1] -= 1;
    }
    let mut chunks: Vec<(i64, i64)> = Vec::new();
    let (mut running, mut acc, mut start) = (0i64, 0usize, first);
    for r in 0..n_rows {
        running += load[r];
        let row_load = running as usize;
        if row_load > MAX_CHUNK_INTERVALS {
            return Err(Error::BudgetExceeded(format!(
                "sausage raster at ε = {eps} has {row_load} intervals in one row"
            )));
        }
        let row = first + r as i64;
        if acc + row_load > MAX_CHUNK_INTERVALS {
            chunks.push((start, row - 1));
            start = row;
            acc = 0;
        }
        acc += row_load;
    }
    chunks.push((start, last));

    let mut order: Vec<usize> = (0..segments.len()).collect();
    order.sort_unstable_by_key(|&i| spans[i].0);
    let mut next = 0;
    let mut active: Vec<usize> = Vec::new();
    let mut intervals: Vec<(i64, f64, f64)> = Vec::new();
    let mut total = 0.0;
    for &(c_lo, c_hi) in &chunks {
        while next < order.len() && spans[order[next]].0 <= c_hi {
            active.push(order[next]);
            next += 1;
        }
        active.retain(|&i| spans[i].1 >= c_lo);
        intervals.clear();
        for &i in &active {
            let (a, b) = segments[i];
            let (lo, hi) = spans[i];
            for j in lo.max(c_lo)..=hi.min(c_hi) {
                if let Some((l, r)) = stadium_chord(a, b, eps, (j as f64 + 0.5) * h) {
                    intervals.push((j, l, r));
                }
            }
        }
        total += union_length(&mut intervals) * h;
    }
    Ok(total)
}

/// Total length of the per-row unions of `(row, lo, hi)` intervals.
fn union_length(intervals: &mut [(i64, f64, f64)]) -> f64 {
    intervals.par_sort_unstable_by(|p, q| p.0.cmp(&q.0).then(p.1.total_cmp(&q.1)));
    let mut total = 0.0;
    let mut i = 0;
    while i < intervals.len() {
        let row = intervals[i].0;
        let (mut cur_l, mut cur_r) = (intervals[i].1, intervals[i].2);
        i += 1;
        while i < intervals.len() && intervals[i].0 == row {
            let (l, r) = (intervals[i].1, intervals[i].2);
            if l > cur_r {
                total += cur_r - cur_l;
                cur_l = l;
                cur_r = r;
            } else if r > cur_r {
                cur_r = r;
            }
            i += 1;
        }
        total += cur_r - cur_l;
    }
    total
}

/// Area of the `eps`-neighbourhood: the polyline is first simplified within
/// `eps/200`, then rasterized with `eps/8` row spacing.
pub fn sausage_area(poly: &Polyline, eps: f64) -> Result<f64> {
    let simple = poly.simplified(eps * SIMPLIFY_FRACTION);
    sausage_area_rows(&simple, eps, eps / ROWS_PER_EPS)
}

/// Areas for every scale of a grid.
pub fn sausage_areas(poly: &Polyline, grid: &EpsilonGrid) -> Result<Vec<f64>> {
    grid.eps.iter().map(|&e| sausage_area(poly, e)).collect()
}

/// Dimension from the sausage areas: `2 − slope(log A, log ε)`.
pub fn estimate_dimension_sausage(
    poly: &Polyline,
    grid: &EpsilonGrid,
) -> Result<DimensionEstimate> {
    let areas = sausage_areas(poly, grid)?;
    scaling_fit(&grid.eps, &areas, 1.0, 2.0, DimensionMethod::SausageSlope)
}
