//! Exact lattice convex hulls.

pub type Pt = (i64, i64);

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull in counter-clockwise order without collinear points.
/// Degenerate inputs give one or two points.
pub fn hull(points: &[Pt]) -> Vec<Pt> {
    let mut p: Vec<Pt> = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let mut lower: Vec<Pt> = Vec::new();
    for &x in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], x) <= 0 {
            lower.pop();
        }
        lower.push(x);
    }
    let mut upper: Vec<Pt> = Vec::new();
    for &x in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], x) <= 0 {
            upper.pop();
        }
        upper.push(x);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Closed-hull membership, boundary included.
pub fn contains(h: &[Pt], q: Pt) -> bool {
    match h.len() {
        0 => false,
        1 => h[0] == q,
        2 => on_segment(h[0], h[1], q),
        n => (0..n).all(|k| cross(h[k], h[(k + 1) % n], q) >= 0),
    }
}

fn on_segment(a: Pt, b: Pt, q: Pt) -> bool {
    cross(a, b, q) == 0
        && q.0 >= a.0.min(b.0)
        && q.0 <= a.0.max(b.0)
        && q.1 >= a.1.min(b.1)
        && q.1 <= a.1.max(b.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate() {
        let h = hull(&[(1, 0), (1, 0)]);
        assert!(contains(&h, (1, 0)) && !contains(&h, (2, 0)));
        let h = hull(&[(1, 0), (3, 0), (2, 0)]);
        assert_eq!(h.len(), 2);
        assert!(contains(&h, (2, 0)) && !contains(&h, (4, 0)));
    }

    #[test]
    fn square() {
        let h = hull(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]);
        assert_eq!(h.len(), 4);
        assert!(contains(&h, (2, 1)) && contains(&h, (1, 1)) && !contains(&h, (3, 1)));
    }
}
