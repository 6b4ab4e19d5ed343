//! Planar polygon diagnostics for profile curves: closure gap,
//! self-intersection by a sort-and-sweep over segments, and winding number.

use std::f64::consts::PI;

pub type Point = (f64, f64);

/// Tolerance of the intersection predicates.
pub const SWEEP_TOL: f64 = 1e-9;

/// Distance between the first and the last vertex.
pub fn closure_gap(points: &[Point]) -> f64 {
    match (points.first(), points.last()) {
        (Some(a), Some(b)) => (a.0 - b.0).hypot(a.1 - b.1),
        _ => 0.0,
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn on_segment(a: Point, b: Point, p: Point, tol: f64) -> bool {
    p.0 >= a.0.min(b.0) - tol && p.0 <= a.0.max(b.0) + tol && p.1 >= a.1.min(b.1) - tol && p.1 <= a.1.max(b.1) + tol
}

/// Whether segments `ab` and `cd` meet, touching included. Orientation
/// values within `tol` times the segment lengths count as collinear.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point, tol: f64) -> bool {
    let len1 = (b.0 - a.0).hypot(b.1 - a.1);
    let len2 = (d.0 - c.0).hypot(d.1 - c.1);
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    let e1 = tol * len2.max(f64::MIN_POSITIVE);
    let e2 = tol * len1.max(f64::MIN_POSITIVE);
    let sign = |v: f64, e: f64| if v > e { 1 } else if v < -e { -1 } else { 0 };
    let (s1, s2, s3, s4) = (sign(d1, e1), sign(d2, e1), sign(d3, e2), sign(d4, e2));
    if s1 * s2 < 0 && s3 * s4 < 0 {
        return true;
    }
    (s1 == 0 && on_segment(c, d, a, tol))
        || (s2 == 0 && on_segment(c, d, b, tol))
        || (s3 == 0 && on_segment(a, b, c, tol))
        || (s4 == 0 && on_segment(a, b, d, tol))
}

/// Pairs `(i, j)`, `i < j`, of non-adjacent segments `pᵢpᵢ₊₁` and `pⱼpⱼ₊₁`
/// that meet. With `closed`, the first and last segments count as adjacent
/// (they share the closing vertex).
pub fn self_intersections(points: &[Point], closed: bool, tol: f64) -> Vec<(usize, usize)> {
    let segs = points.len().saturating_sub(1);
    if segs < 3 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..segs).collect();
    let xmin = |i: usize| points[i].0.min(points[i + 1].0);
    let xmax = |i: usize| points[i].0.max(points[i + 1].0);
    order.sort_by(|&a, &b| xmin(a).total_cmp(&xmin(b)).then(a.cmp(&b)));

    let adjacent = |i: usize, j: usize| {
        let (lo, hi) = (i.min(j), i.max(j));
        hi == lo + 1 || (closed && lo == 0 && hi == segs - 1)
    };
    let mut active: Vec<usize> = Vec::new();
    let mut hits = Vec::new();
    for &i in &order {
        let left = xmin(i) - tol;
        active.retain(|&j| xmax(j) >= left);
        for &j in &active {
            if adjacent(i, j) {
                continue;
            }
            if segments_intersect(points[i], points[i + 1], points[j], points[j + 1], tol) {
                hits.push((i.min(j), i.max(j)));
            }
        }
        active.push(i);
    }
    hits.sort_unstable();
    hits
}

pub fn is_simple(points: &[Point], closed: bool, tol: f64) -> bool {
    self_intersections(points, closed, tol).is_empty()
}

/// Winding number of the polygon about the origin, from the accumulated
/// angle of consecutive vertices. Not rounded.
pub fn winding_number(points: &[Point]) -> f64 {
    let total: f64 = points
        .windows(2)
        .map(|w| {
            let a = w[0].1.atan2(w[0].0);
            let b = w[1].1.atan2(w[1].0);
            let mut d = b - a;
            if d > PI {
                d -= 2.0 * PI;
            } else if d <= -PI {
                d += 2.0 * PI;
            }
            d
        })
        .sum();
    total / (2.0 * PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize, turns: f64, radius: impl Fn(f64) -> f64) -> Vec<Point> {
        (0..=n)
            .map(|i| {
                let a = turns * 2.0 * PI * i as f64 / n as f64;
                (radius(a) * a.cos(), radius(a) * a.sin())
            })
            .collect()
    }

    #[test]
    fn circle_is_closed_and_simple() {
        let pts = circle(400, 1.0, |_| 1.0);
        assert!(closure_gap(&pts) < 1e-12);
        assert!(is_simple(&pts, true, SWEEP_TOL));
        assert!((winding_number(&pts) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn limacon_self_intersects() {
        // r = 1/2 + cos a has an inner loop
        let pts = circle(600, 1.0, |a| 0.5 + a.cos());
        assert!(!is_simple(&pts, true, SWEEP_TOL));
    }

    #[test]
    fn figure_eight_crossing_found() {
        let pts = vec![(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0)];
        assert_eq!(self_intersections(&pts, true, SWEEP_TOL), vec![(0, 2)]);
    }

    #[test]
    fn double_cover_winds_twice() {
        let pts = circle(800, -2.0, |_| 1.0);
        assert!((winding_number(&pts) + 2.0).abs() < 1e-12);
        assert!(!is_simple(&pts, true, SWEEP_TOL));
    }

    #[test]
    fn touching_counts() {
        assert!(segments_intersect((0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (1.0, 1.0), SWEEP_TOL));
        assert!(!segments_intersect((0.0, 0.0), (2.0, 0.0), (1.0, 1e-6), (1.0, 1.0), SWEEP_TOL));
    }
}
