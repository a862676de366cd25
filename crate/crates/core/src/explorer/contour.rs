//! Marching squares for the `q = 0` level set.
//!
//! A sample counts as negative when `q < 0`. Every crossing vertex lies on a
//! grid edge whose two samples have opposite signs, linearly interpolated.
//! Saddle cells (diagonal corners sharing a sign) are resolved by the sign of
//! `q` at the cell centre.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::scan::ScanResult;
use crate::outcome::OutcomePair;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    /// `(x, beta)` vertices. A closed polyline does not repeat its first
    /// vertex.
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

impl Polyline {
    pub fn segments(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len().saturating_sub(1)
        }
    }
}

/// A connected set of negative samples and the contour lines around it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeRegion {
    pub polylines: Vec<Polyline>,
    /// Number of negative grid samples in the region.
    pub sample_count: usize,
    pub min_q: f64,
    pub min_at: [f64; 2],
}

/// Level-set regions of one outcome of a scan. Saddle centres are evaluated
/// with the scan's own model.
pub fn negative_regions(result: &ScanResult, pair: OutcomePair) -> Vec<NegativeRegion> {
    let x = result.spec.x.values();
    let y = result.spec.beta.values();
    let grid = result.grid(pair);
    let nx = x.len();
    let center = |ix: usize, iy: usize| {
        let xm = 0.5 * (x[ix] + x[ix + 1]);
        let ym = 0.5 * (y[iy] + y[iy + 1]);
        match result.spec.system.table(xm, ym) {
            Ok(t) => t.get(pair),
            Err(_) => {
                let k = iy * nx + ix;
                0.25 * (grid[k] + grid[k + 1] + grid[k + nx] + grid[k + nx + 1])
            }
        }
    };
    extract(&x, &y, &grid, &center)
}

/// Marching squares on a raw row-major grid (x fastest). `center(ix, iy)`
/// gives `q` at the middle of cell `(ix, iy)` and is consulted for saddles only.
pub fn extract(x: &[f64], y: &[f64], v: &[f64], center: &dyn Fn(usize, usize) -> f64) -> Vec<NegativeRegion> {
    let nx = x.len();
    let ny = y.len();
    assert_eq!(v.len(), nx * ny, "grid size mismatch");
    let neg = |k: usize| v[k] < 0.0;
    let mut uf = UnionFind::new(nx * ny);

    for iy in 0..ny {
        for ix in 0..nx {
            let k = iy * nx + ix;
            if !neg(k) {
                continue;
            }
            if ix + 1 < nx && neg(k + 1) {
                uf.union(k, k + 1);
            }
            if iy + 1 < ny && neg(k + nx) {
                uf.union(k, k + nx);
            }
        }
    }

    // Edge numbering: horizontal (ix, iy)-(ix+1, iy) first, then vertical
    // (ix, iy)-(ix, iy+1).
    let h_count = nx.saturating_sub(1) * ny;
    let h = |ix: usize, iy: usize| iy * (nx - 1) + ix;
    let ve = |ix: usize, iy: usize| h_count + iy * nx + ix;
    let endpoints = |e: usize| -> (usize, usize) {
        if e < h_count {
            let (ix, iy) = (e % (nx - 1), e / (nx - 1));
            (iy * nx + ix, iy * nx + ix + 1)
        } else {
            let k = e - h_count;
            (k, k + nx)
        }
    };

    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut link = |a: usize, b: usize| {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    };
    for iy in 0..ny.saturating_sub(1) {
        for ix in 0..nx.saturating_sub(1) {
            let c = [iy * nx + ix, iy * nx + ix + 1, (iy + 1) * nx + ix + 1, (iy + 1) * nx + ix];
            let s = c.map(neg);
            let bottom = h(ix, iy);
            let right = ve(ix + 1, iy);
            let top = h(ix, iy + 1);
            let left = ve(ix, iy);
            let crossing = [
                (s[0] != s[1], bottom),
                (s[1] != s[2], right),
                (s[3] != s[2], top),
                (s[0] != s[3], left),
            ];
            let edges: Vec<usize> = crossing.iter().filter(|(x, _)| *x).map(|(_, e)| *e).collect();
            match edges.len() {
                0 => {}
                2 => link(edges[0], edges[1]),
                4 => {
                    let mid_neg = center(ix, iy) < 0.0;
                    if mid_neg == s[0] {
                        // c0 and c2 joined through the centre
                        link(bottom, right);
                        link(top, left);
                        if s[0] {
                            uf.union(c[0], c[2]);
                        }
                    } else {
                        link(bottom, left);
                        link(right, top);
                        if s[1] {
                            uf.union(c[1], c[3]);
                        }
                    }
                }
                _ => unreachable!("a cell has an even number of sign changes"),
            }
        }
    }

    let point = |e: usize| -> [f64; 2] {
        let (a, b) = endpoints(e);
        let t = v[a] / (v[a] - v[b]);
        let pa = [x[a % nx], y[a / nx]];
        let pb = [x[b % nx], y[b / nx]];
        [pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]
    };
    let negative_end = |e: usize| {
        let (a, b) = endpoints(e);
        if neg(a) {
            a
        } else {
            b
        }
    };

    // Trace open chains from boundary vertices first, then closed loops.
    let mut used: BTreeMap<usize, bool> = adj.keys().map(|&k| (k, false)).collect();
    let mut chains: Vec<(Vec<usize>, bool)> = Vec::new();
    let starts: Vec<usize> = adj
        .iter()
        .filter(|(_, n)| n.len() == 1)
        .map(|(&k, _)| k)
        .chain(adj.keys().copied())
        .collect();
    for start in starts {
        if used[&start] {
            continue;
        }
        let open = adj[&start].len() == 1;
        let mut chain = vec![start];
        used.insert(start, true);
        let mut cur = start;
        loop {
            let next = adj[&cur].iter().copied().find(|n| !used[n]);
            match next {
                Some(n) => {
                    used.insert(n, true);
                    chain.push(n);
                    cur = n;
                }
                None => break,
            }
        }
        chains.push((chain, !open));
    }

    // Regions in order of their first sample.
    let mut region_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut regions: Vec<NegativeRegion> = Vec::new();
    for k in 0..nx * ny {
        if !neg(k) {
            continue;
        }
        let root = uf.find(k);
        let id = *region_of_root.entry(root).or_insert_with(|| {
            regions.push(NegativeRegion {
                polylines: Vec::new(),
                sample_count: 0,
                min_q: f64::INFINITY,
                min_at: [0.0, 0.0],
            });
            regions.len() - 1
        });
        let r = &mut regions[id];
        r.sample_count += 1;
        if v[k] < r.min_q {
            r.min_q = v[k];
            r.min_at = [x[k % nx], y[k / nx]];
        }
    }
    for (chain, closed) in chains {
        let id = region_of_root[&uf.find(negative_end(chain[0]))];
        regions[id].polylines.push(Polyline {
            points: chain.iter().map(|&e| point(e)).collect(),
            closed,
        });
    }
    regions
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut k: usize) -> usize {
        while self.parent[k] != k {
            self.parent[k] = self.parent[self.parent[k]];
            k = self.parent[k];
        }
        k
    }

    // Smaller index becomes the root, keeping ids deterministic.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis(n: usize) -> Vec<f64> {
        (0..n).map(|i| i as f64).collect()
    }

    #[test]
    fn all_positive_is_empty() {
        let v = vec![1.0; 25];
        assert!(extract(&axis(5), &axis(5), &v, &|_, _| 1.0).is_empty());
    }

    #[test]
    fn single_negative_sample_gives_closed_square() {
        let mut v = vec![1.0; 25];
        v[2 * 5 + 2] = -1.0;
        let r = extract(&axis(5), &axis(5), &v, &|_, _| 1.0);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].polylines.len(), 1);
        let p = &r[0].polylines[0];
        assert!(p.closed);
        assert_eq!(p.segments(), 4);
        for q in &p.points {
            let d = (q[0] - 2.0).abs() + (q[1] - 2.0).abs();
            assert!((d - 0.5).abs() < 1e-12);
        }
        assert_eq!(r[0].sample_count, 1);
        assert_eq!(r[0].min_at, [2.0, 2.0]);
    }

    #[test]
    fn boundary_region_is_open() {
        let mut v = vec![1.0; 16];
        v[0] = -2.0;
        v[1] = -1.0;
        let r = extract(&axis(4), &axis(4), &v, &|_, _| 1.0);
        assert_eq!(r.len(), 1);
        let p = &r[0].polylines[0];
        assert!(!p.closed);
        assert_eq!(p.points.len(), 3);
    }

    #[test]
    fn saddle_uses_centre() {
        // 2x2 grid, negative on one diagonal
        let v = vec![-1.0, 1.0, 1.0, -1.0];
        let joined = extract(&axis(2), &axis(2), &v, &|_, _| -0.5);
        assert_eq!(joined.len(), 1);
        assert_eq!(joined[0].sample_count, 2);
        let split = extract(&axis(2), &axis(2), &v, &|_, _| 0.5);
        assert_eq!(split.len(), 2);
    }
}
