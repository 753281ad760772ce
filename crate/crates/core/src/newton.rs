//! Newton polytopes of Laurent polynomials, as an H-representation used to
//! prune monomials that can no longer reach the constant term.
//!
//! Ranks 1 to 3 get the exact convex hull (brute-force facet enumeration in
//! integer arithmetic). Rank 4 and above use the bounding box of the support,
//! which still encloses the hull.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::ring::Coefficient;

/// Half-space `normal · x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn value(&self, point: &[i64]) -> i64 {
        self.normal.iter().zip(point).map(|(a, x)| a * x).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    rank: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    exact: bool,
}

impl NewtonPolytope {
    pub fn of<C: Coefficient>(f: &LaurentPoly<C>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::EmptySupport);
        }
        let points: Vec<Vec<i64>> = f
            .support()
            .map(|m| m.exponents().iter().map(|&e| e as i64).collect())
            .collect();
        Ok(Self::from_points(f.rank(), points))
    }

    /// Hull of a nonempty point set in `Z^rank`.
    pub fn from_points(rank: usize, mut points: Vec<Vec<i64>>) -> Self {
        assert!(!points.is_empty(), "empty point set");
        points.sort();
        points.dedup();
        if rank <= 3 {
            exact_hull(rank, &points)
        } else {
            bounding_box(rank, &points)
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// `false` when the region is the bounding-box relaxation.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        self.contains_dilate(point, 1)
    }

    /// Whether `point` lies in the dilate `scale · P` (`scale >= 0`).
    pub fn contains_dilate(&self, point: &[i64], scale: i64) -> bool {
        if scale == 0 {
            return point.iter().all(|&x| x == 0);
        }
        self.facets
            .iter()
            .all(|facet| facet.value(point) <= scale * facet.offset)
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn newton_polytope(&self) -> Result<NewtonPolytope> {
        NewtonPolytope::of(self)
    }
}

fn bounding_box(rank: usize, points: &[Vec<i64>]) -> NewtonPolytope {
    let mut lo = points[0].clone();
    let mut hi = points[0].clone();
    for p in points {
        for i in 0..rank {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    let mut facets = Vec::with_capacity(2 * rank);
    for i in 0..rank {
        let mut e = vec![0; rank];
        e[i] = 1;
        facets.push(Facet {
            normal: e.clone(),
            offset: hi[i],
        });
        e[i] = -1;
        facets.push(Facet {
            normal: e,
            offset: -lo[i],
        });
    }
    let mut corners = BTreeSet::new();
    for mask in 0u32..(1 << rank) {
        let corner: Vec<i64> = (0..rank)
            .map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] })
            .collect();
        corners.insert(corner);
    }
    NewtonPolytope {
        rank,
        vertices: corners.into_iter().collect(),
        facets,
        exact: false,
    }
}

type V3 = [i64; 3];

fn sub(a: &V3, b: &V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: &V3, b: &V3) -> V3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &V3, b: &V3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn is_zero(a: &V3) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Adds `c · x <= c · anchor` if every point lies on one side of the
/// hyperplane through `anchor` with normal `c`, oriented outward.
fn try_supporting(points: &[V3], c: V3, anchor: &V3, out: &mut BTreeSet<(V3, i64)>) {
    let level = dot(&c, anchor);
    let mut above = false;
    let mut below = false;
    for p in points {
        let v = dot(&c, p);
        above |= v > level;
        below |= v < level;
        if above && below {
            return;
        }
    }
    if !above {
        push_normalized(out, c, level);
    }
    if !below {
        push_normalized(out, [-c[0], -c[1], -c[2]], -level);
    }
}

fn push_normalized(out: &mut BTreeSet<(V3, i64)>, c: V3, offset: i64) {
    let g = c[0].gcd(&c[1]).gcd(&c[2]);
    if g == 0 {
        return;
    }
    out.insert(([c[0] / g, c[1] / g, c[2] / g], offset / g));
}

fn exact_hull(rank: usize, points: &[Vec<i64>]) -> NewtonPolytope {
    let pts: Vec<V3> = points
        .iter()
        .map(|p| {
            let mut v = [0; 3];
            v[..rank].copy_from_slice(p);
            v
        })
        .collect();
    let p0 = pts[0];
    let dirs: Vec<V3> = pts.iter().map(|p| sub(p, &p0)).collect();
    let u = dirs.iter().find(|d| !is_zero(d)).copied();
    let v = u.and_then(|u| dirs.iter().find(|d| !is_zero(&cross(&u, d))).copied());
    let w = match (u, v) {
        (Some(u), Some(v)) => {
            let n = cross(&u, &v);
            dirs.iter().find(|d| dot(&n, d) != 0).copied()
        }
        _ => None,
    };

    let mut raw: BTreeSet<(V3, i64)> = BTreeSet::new();
    let unit = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    match (u, v, w) {
        (None, _, _) => {
            for e in unit {
                try_supporting(&pts, e, &p0, &mut raw);
            }
        }
        (Some(u), None, _) => {
            for e in unit {
                let c = cross(&u, &e);
                if !is_zero(&c) {
                    try_supporting(&pts, c, &p0, &mut raw);
                }
            }
            for p in &pts {
                try_supporting(&pts, u, p, &mut raw);
            }
        }
        (Some(u), Some(v), None) => {
            let n = cross(&u, &v);
            try_supporting(&pts, n, &p0, &mut raw);
            for (i, p) in pts.iter().enumerate() {
                for q in &pts[i + 1..] {
                    let c = cross(&n, &sub(q, p));
                    if !is_zero(&c) {
                        try_supporting(&pts, c, p, &mut raw);
                    }
                }
            }
        }
        (Some(_), Some(_), Some(_)) => {
            for (i, p) in pts.iter().enumerate() {
                for (j, q) in pts.iter().enumerate().skip(i + 1) {
                    let pq = sub(q, p);
                    for r in &pts[j + 1..] {
                        let c = cross(&pq, &sub(r, p));
                        if !is_zero(&c) {
                            try_supporting(&pts, c, p, &mut raw);
                        }
                    }
                }
            }
        }
    }

    // Padded coordinates are zero on every point, so truncating the normal
    // leaves each constraint unchanged on Z^rank.
    let mut facets: BTreeSet<Facet> = BTreeSet::new();
    for (c, offset) in raw {
        let normal = c[..rank].to_vec();
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let g = normal.iter().fold(0i64, |g, x| g.gcd(x));
        facets.insert(Facet {
            normal: normal.iter().map(|x| x / g).collect(),
            offset: offset / g,
        });
    }
    let facets: Vec<Facet> = facets.into_iter().collect();

    let vertices = points
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<i64>> = facets
                .iter()
                .filter(|f| f.value(p) == f.offset)
                .map(|f| f.normal.clone())
                .collect();
            matrix_rank(&tight, rank) == rank
        })
        .cloned()
        .collect();

    NewtonPolytope {
        rank,
        vertices,
        facets,
        exact: true,
    }
}

/// Rank of a set of integer row vectors of length `cols`.
fn matrix_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let (a, b) = (m[rank][col], m[r][col]);
                let pivot_row = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = *x * a - p * b;
                }
                let g = m[r].iter().fold(0i128, |g, x| g.gcd(x));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}
