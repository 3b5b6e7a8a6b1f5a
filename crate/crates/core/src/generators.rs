//! Constructors for the named system families.

use crate::error::{invalid, unsupported, Result};
use crate::system::{Colour, Colouring, MAX_POINTS};

/// Every triple coloured `c`.
pub fn uniform(n: usize, c: Colour) -> Result<Colouring> {
    let e = Colouring::empty(n)?;
    Ok(match c {
        Colour::Blue => e,
        Colour::Red => e.complement(),
    })
}

/// The seven lines of the Fano plane on points `0..7`.
pub const FANO_LINES: [(usize, usize, usize); 7] = [
    (0, 1, 2),
    (0, 3, 4),
    (0, 5, 6),
    (1, 3, 5),
    (1, 4, 6),
    (2, 3, 6),
    (2, 4, 5),
];

/// Steiner triple system whose blocks are the red triples.
///
/// `n = 7` gives the Fano plane; `n ≡ 3 (mod 6)` uses the Bose construction
/// over `Z_v × {0,1,2}` with `v = n / 3`, point `(x, i)` numbered `i·v + x`.
pub fn steiner(n: usize) -> Result<Colouring> {
    if n == 7 {
        return Colouring::from_red_triples(7, FANO_LINES);
    }
    if n % 6 != 3 || n > 63 {
        return Err(unsupported(format!(
            "Steiner triple systems are built for n = 7 or n ≡ 3 (mod 6), n ≤ 63; got {n}"
        )));
    }
    let v = n / 3;
    let half = v.div_ceil(2); // inverse of 2 mod odd v
    let pt = |x: usize, i: usize| (i % 3) * v + x;
    let mut triples = Vec::with_capacity(n * (n - 1) / 6);
    for x in 0..v {
        triples.push((pt(x, 0), pt(x, 1), pt(x, 2)));
    }
    for x in 0..v {
        for y in x + 1..v {
            let mid = (x + y) * half % v;
            for i in 0..3 {
                triples.push((pt(x, i), pt(y, i), pt(mid, i + 1)));
            }
        }
    }
    Colouring::from_red_triples(n, triples)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Points of PG(2, q): nonzero vectors of GF(q)^3 whose first nonzero
/// coordinate is 1, in lexicographic order.
pub fn projective_points(q: usize) -> Result<Vec<[usize; 3]>> {
    if !is_prime(q) {
        return Err(invalid(format!("projective plane order {q} is not prime")));
    }
    if q * q + q + 1 > MAX_POINTS {
        return Err(unsupported(format!("PG(2,{q}) has more than {MAX_POINTS} points")));
    }
    let mut pts = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    pts.push(v);
                }
            }
        }
    }
    Ok(pts)
}

/// Collinearity system of PG(2, q) for prime `q`: a triple is red iff its
/// three points lie on a common projective line (zero determinant mod `q`).
pub fn projective_plane(q: usize) -> Result<Colouring> {
    let pts = projective_points(q)?;
    let q = q as i64;
    let n = pts.len();
    let det = |a: &[usize; 3], b: &[usize; 3], c: &[usize; 3]| {
        let [a0, a1, a2] = a.map(|x| x as i64);
        let [b0, b1, b2] = b.map(|x| x as i64);
        let [c0, c1, c2] = c.map(|x| x as i64);
        (a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)).rem_euclid(q)
    };
    let mut s = Colouring::empty(n)?;
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                if det(&pts[i], &pts[j], &pts[k]) == 0 {
                    s.set(i, j, k, Colour::Red)?;
                }
            }
        }
    }
    Ok(s)
}

/// Largest coordinate magnitude accepted by [`planar`].
pub const PLANAR_COORD_LIMIT: i64 = 1 << 30;

/// Euclidean collinearity system of distinct integer points.
pub fn planar(points: &[(i64, i64)]) -> Result<Colouring> {
    let n = points.len();
    if let Some(&(x, y)) = points
        .iter()
        .find(|(x, y)| x.abs() > PLANAR_COORD_LIMIT || y.abs() > PLANAR_COORD_LIMIT)
    {
        return Err(invalid(format!("point ({x},{y}) exceeds the ±2^30 coordinate range")));
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(invalid(format!("duplicate point ({},{})", p.0, p.1)));
        }
    }
    let mut s = Colouring::empty(n)?;
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                if orientation(points[i], points[j], points[k]) == 0 {
                    s.set(i, j, k, Colour::Red)?;
                }
            }
        }
    }
    Ok(s)
}

/// Sign of the cross product `(b - a) × (c - a)`, computed exactly.
pub fn orientation(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i32 {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let cross = (b.0 as i128 - ax) * (c.1 as i128 - ay) - (b.1 as i128 - ay) * (c.0 as i128 - ax);
    cross.signum() as i32
}

/// The `side × side` integer grid, row-major.
pub fn grid(side: usize) -> Vec<(i64, i64)> {
    (0..side)
        .flat_map(|y| (0..side).map(move |x| (x as i64, y as i64)))
        .collect()
}

/// Colour of `a < b < c` for leaves `lo..hi` of the balanced binary tree
/// whose left subtree over `k` leaves holds `ceil(k/2)` of them.
fn btree_red(mut lo: usize, mut hi: usize, a: usize, b: usize, c: usize) -> bool {
    loop {
        let mid = lo + (hi - lo).div_ceil(2);
        if c < mid {
            hi = mid;
        } else if a >= mid {
            lo = mid;
        } else {
            return b < mid;
        }
    }
}

/// Leaves of a balanced binary tree; a triple is red iff two of its points
/// sit in the left subtree of the three points' lowest common ancestor.
pub fn btree_colouring(n: usize) -> Result<Colouring> {
    let mut s = Colouring::empty(n)?;
    for c in 0..n {
        for b in 0..c {
            for a in 0..b {
                if btree_red(0, n, a, b, c) {
                    s.set(a, b, c, Colour::Red)?;
                }
            }
        }
    }
    Ok(s)
}

/// Disjoint union of two systems; `s2`'s points are renumbered after `s1`'s.
/// Triples meeting both parts are red iff exactly two points lie in the first.
pub fn compose(s1: &Colouring, s2: &Colouring) -> Result<Colouring> {
    let (n1, n2) = (s1.n(), s2.n());
    let n = n1 + n2;
    if n > MAX_POINTS {
        return Err(invalid(format!(
            "composition has {n} points, above the {MAX_POINTS}-point cap"
        )));
    }
    let mut s = Colouring::empty(n)?;
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let in_first = [i, j, k].iter().filter(|&&p| p < n1).count();
                let red = match in_first {
                    3 => s1.colour(i, j, k)? == Colour::Red,
                    0 => s2.colour(i - n1, j - n1, k - n1)? == Colour::Red,
                    c => c == 2,
                };
                if red {
                    s.set(i, j, k, Colour::Red)?;
                }
            }
        }
    }
    Ok(s)
}
