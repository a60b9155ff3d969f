//! Exact Euclidean nearest-site queries on pixel grids.
//!
//! Two-pass separable distance transform with argmin tracking. Ties are
//! broken toward the smallest `(row, col)` site so the result is a total,
//! deterministic function of the input:
//!
//! - pass 1 scans each row for the nearest site column (ties -> smaller
//!   column),
//! - pass 2 runs a lower-envelope sweep over rows per column (ties -> smaller
//!   row).
//!
//! Within a row all candidate sites share the row coordinate, so the
//! smaller-column rule is exactly the lexicographic rule; across rows the row
//! coordinate dominates, so the smaller-row rule finishes the ordering. The
//! envelope arithmetic stays exact: parabola heights are squared integer
//! distances, and any true tie at an integer query point yields an integer
//! intersection, which f64 division reproduces exactly.

use crate::par::{self, Exec};

const NONE: u32 = u32::MAX;

/// Nearest site per pixel, row-major `h`x`w`.
pub(crate) struct NearestSiteMap {
    pub row: Vec<u32>,
    pub col: Vec<u32>,
    /// Squared Euclidean distance to that site, in pixel units.
    pub dist2: Vec<f64>,
}

/// Computes, for every pixel, the nearest site under the lexicographic
/// tie-break. Returns `None` when `is_site` contains no `true` entry.
pub(crate) fn nearest_sites(
    exec: Exec,
    is_site: &[bool],
    h: usize,
    w: usize,
) -> Option<NearestSiteMap> {
    assert_eq!(is_site.len(), h * w);
    if !is_site.iter().any(|&s| s) {
        return None;
    }

    // Pass 1: per row, nearest site column and its 1D distance.
    let mut pass1 = vec![(NONE, NONE); h * w]; // (dist, col)
    par::for_each_chunk_mut(exec, &mut pass1, w, |r, out| {
        row_nearest(&is_site[r * w..(r + 1) * w], out);
    });

    // Pass 2: per column, lower envelope over rows. Output column-major so
    // each column owns a contiguous chunk.
    let mut pass2 = vec![(NONE, NONE, 0.0f64); h * w]; // (row, col, dist2)
    par::for_each_chunk_mut(exec, &mut pass2, h, |c, out| {
        let mut g = vec![f64::INFINITY; h];
        for r in 0..h {
            let (d, _) = pass1[r * w + c];
            if d != NONE {
                g[r] = (d as f64) * (d as f64);
            }
        }
        let mut idx = vec![0u32; h];
        envelope_argmin(&g, 1.0, &mut idx);
        for (r, slot) in out.iter_mut().enumerate() {
            let br = idx[r] as usize;
            let (d1, bc) = pass1[br * w + c];
            debug_assert_ne!(d1, NONE);
            let dr = r as f64 - br as f64;
            let d1 = d1 as f64;
            *slot = (br as u32, bc, dr * dr + d1 * d1);
        }
    });

    let mut row = vec![0u32; h * w];
    let mut col = vec![0u32; h * w];
    let mut dist2 = vec![0.0f64; h * w];
    for c in 0..w {
        for r in 0..h {
            let (br, bc, d2) = pass2[c * h + r];
            row[r * w + c] = br;
            col[r * w + c] = bc;
            dist2[r * w + c] = d2;
        }
    }
    Some(NearestSiteMap { row, col, dist2 })
}

/// 1D nearest site in a line, ties toward the smaller index.
fn row_nearest(sites: &[bool], out: &mut [(u32, u32)]) {
    let w = sites.len();
    let mut prev: Option<usize> = None;
    for c in 0..w {
        if sites[c] {
            prev = Some(c);
        }
        out[c] = match prev {
            Some(p) => ((c - p) as u32, p as u32),
            None => (NONE, NONE),
        };
    }
    let mut next: Option<usize> = None;
    for c in (0..w).rev() {
        if sites[c] {
            next = Some(c);
        }
        if let Some(n) = next {
            let d_r = (n - c) as u32;
            // Keep the left site on ties: it has the smaller column.
            if out[c].0 == NONE || d_r < out[c].0 {
                out[c] = (d_r, n as u32);
            }
        }
    }
}

/// Lower-envelope argmin over parabolas `f_i(q) = scale2*(q - i)^2 + g[i]`.
///
/// Entries with `g[i] = +inf` carry no site and are skipped. For each integer
/// query `q` the index written to `out[q]` minimizes `f_i(q)`; exact ties go
/// to the smallest `i`. At least one finite `g` entry is required.
pub(crate) fn envelope_argmin(g: &[f64], scale2: f64, out: &mut [u32]) {
    let m = g.len();
    debug_assert_eq!(out.len(), m);
    let mut v = vec![0usize; m]; // vertex indices of kept parabolas
    let mut z = vec![0.0f64; m + 1]; // z[k] = left boundary of parabola k's reign

    let mut k = usize::MAX; // empty stack marker
    for i in 0..m {
        if !g[i].is_finite() {
            continue;
        }
        if k == usize::MAX {
            k = 0;
            v[0] = i;
            z[0] = f64::NEG_INFINITY;
            continue;
        }
        loop {
            let j = v[k];
            // Intersection of parabolas at vertices j < i.
            let s = (scale2 * ((i * i) as f64 - (j * j) as f64) + g[i] - g[j])
                / (2.0 * scale2 * (i as f64 - j as f64));
            if k > 0 && s <= z[k] {
                k -= 1;
            } else {
                k += 1;
                v[k] = i;
                z[k] = s;
                break;
            }
        }
    }
    assert_ne!(k, usize::MAX, "envelope requires at least one finite entry");

    let mut j = 0usize;
    for (q, slot) in out.iter_mut().enumerate() {
        // Strict comparison: at an exact boundary the earlier (smaller-index)
        // parabola keeps the query.
        while j < k && z[j + 1] < q as f64 {
            j += 1;
        }
        *slot = v[j] as u32;
    }
}

/// Exact 1D squared-distance transform with per-sample spacing, used by the
/// volumetric metrics. `g` is mutated in place to `min_i scale2*(q-i)^2 + g[i]`.
pub(crate) fn envelope_dist2(g: &mut [f64], scale2: f64) {
    if !g.iter().any(|d| d.is_finite()) {
        return;
    }
    let mut idx = vec![0u32; g.len()];
    envelope_argmin(g, scale2, &mut idx);
    let old: Vec<f64> = g.to_vec();
    for (q, out) in g.iter_mut().enumerate() {
        let i = idx[q] as usize;
        let dq = q as f64 - i as f64;
        *out = scale2 * dq * dq + old[i];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(is_site: &[bool], h: usize, w: usize) -> Vec<(u32, u32)> {
        let mut out = vec![(NONE, NONE); h * w];
        for r in 0..h {
            for c in 0..w {
                let mut best: Option<(f64, usize, usize)> = None;
                for br in 0..h {
                    for bc in 0..w {
                        if !is_site[br * w + bc] {
                            continue;
                        }
                        let d2 = ((r as f64 - br as f64).powi(2))
                            + ((c as f64 - bc as f64).powi(2));
                        let cand = (d2, br, bc);
                        if best.map_or(true, |b| cand < b) {
                            best = Some(cand);
                        }
                    }
                }
                if let Some((_, br, bc)) = best {
                    out[r * w + c] = (br as u32, bc as u32);
                }
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_with_ties() {
        let mut rng = 0x12345u64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for _ in 0..50 {
            let h = 3 + (next() % 14) as usize;
            let w = 3 + (next() % 14) as usize;
            let mut sites = vec![false; h * w];
            let n_sites = 1 + (next() % 6) as usize;
            for _ in 0..n_sites {
                let i = (next() as usize) % (h * w);
                sites[i] = true;
            }
            let m = nearest_sites(Exec::Seq, &sites, h, w).unwrap();
            let b = brute(&sites, h, w);
            for i in 0..h * w {
                assert_eq!((m.row[i], m.col[i]), b[i], "pixel {i} ({h}x{w})");
            }
            let p = nearest_sites(Exec::Par, &sites, h, w).unwrap();
            assert_eq!(p.row, m.row);
            assert_eq!(p.col, m.col);
        }
    }

    #[test]
    fn no_sites_is_none() {
        assert!(nearest_sites(Exec::Seq, &[false; 12], 3, 4).is_none());
    }

    #[test]
    fn four_way_tie_prefers_smallest_row_then_col() {
        // Sites at the four neighbors of the center of a 3x3 grid.
        let mut sites = vec![false; 9];
        for &(r, c) in &[(0usize, 1usize), (1, 0), (1, 2), (2, 1)] {
            sites[r * 3 + c] = true;
        }
        let m = nearest_sites(Exec::Seq, &sites, 3, 3).unwrap();
        assert_eq!((m.row[4], m.col[4]), (0, 1));
    }
}
