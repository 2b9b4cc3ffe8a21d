//! Planar convex hulls (monotone chain) and distance to a hull.

use crate::scalar::Real;

pub type Point2<T> = [T; 2];

#[inline]
fn cross<T: Real>(o: Point2<T>, a: Point2<T>, b: Point2<T>) -> T {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull without collinear vertices. Collinear input yields
/// its two extreme points, a single repeated point yields one vertex.
pub fn convex_hull<T: Real>(points: &[Point2<T>]) -> Vec<Point2<T>> {
    let mut pts = points.to_vec();
    pts.sort_by(|p, q| p.partial_cmp(q).expect("finite hull input"));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point2<T>> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= T::zero() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2<T>> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= T::zero() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn segment_distance<T: Real>(a: Point2<T>, b: Point2<T>, p: Point2<T>) -> T {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let s = if len2 > T::zero() {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).max(T::zero()).min(T::one())
    } else {
        T::zero()
    };
    let dx = ap[0] - s * ab[0];
    let dy = ap[1] - s * ab[1];
    (dx * dx + dy * dy).sqrt()
}

/// Euclidean distance from `p` to the hull given by [`convex_hull`]; zero
/// inside. An empty hull is infinitely far away.
pub fn outside_distance<T: Real>(hull: &[Point2<T>], p: Point2<T>) -> T {
    match hull.len() {
        0 => T::infinity(),
        1 => segment_distance(hull[0], hull[0], p),
        2 => segment_distance(hull[0], hull[1], p),
        k => {
            let edges = (0..k).map(|i| (hull[i], hull[(i + 1) % k]));
            if edges.clone().all(|(a, b)| cross(a, b, p) >= T::zero()) {
                return T::zero();
            }
            edges
                .map(|(a, b)| segment_distance(a, b, p))
                .fold(T::infinity(), T::min)
        }
    }
}
