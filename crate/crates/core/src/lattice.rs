//! Integer-lattice geometry: Newton polygons of symmetric supports, edge
//! slope sets, the band homomorphisms attached to a filling direction,
//! and lattice-class counting in the intersection of two bands.
//!
//! Everything is decided with exact integer arithmetic (cross products in
//! 128 bits); there is no floating point.

use std::collections::BTreeSet;
use std::fmt;

use crate::qtorus::{ExponentPair, SymmetricClass};
use crate::skein_t2::gcd_i64;

/// Errors from lattice computations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("empty support has no Newton polygon")]
    EmptySupport,
    #[error("direction ({p}, {q}) is not coprime")]
    NotCoprime { p: i64, q: i64 },
}

/// The convex hull of a finite lattice support. Only extreme points are
/// stored; degenerate hulls are classified explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NewtonPolygon {
    Point(ExponentPair),
    /// Endpoints, lexicographically smaller first.
    Segment(ExponentPair, ExponentPair),
    /// Extreme points in counterclockwise order, starting at the
    /// lexicographically smallest.
    Polygon(Vec<ExponentPair>),
}

impl NewtonPolygon {
    pub fn vertices(&self) -> Vec<ExponentPair> {
        match self {
            NewtonPolygon::Point(a) => vec![*a],
            NewtonPolygon::Segment(a, b) => vec![*a, *b],
            NewtonPolygon::Polygon(v) => v.clone(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            NewtonPolygon::Point(_) => "point",
            NewtonPolygon::Segment(_, _) => "segment",
            NewtonPolygon::Polygon(_) => "polygon",
        }
    }

    /// True iff the vertex set equals its own negation.
    pub fn is_symmetric(&self) -> bool {
        let vs: BTreeSet<ExponentPair> = self.vertices().into_iter().collect();
        vs.iter().all(|v| vs.contains(&v.neg()))
    }
}

fn cross(o: ExponentPair, a: ExponentPair, b: ExponentPair) -> i128 {
    let (ax, ay) = ((a.p - o.p) as i128, (a.q - o.q) as i128);
    let (bx, by) = ((b.p - o.p) as i128, (b.q - o.q) as i128);
    ax * by - ay * bx
}

/// Convex hull of a nonempty support, with collinear interior points
/// dropped (monotone chain).
pub fn newton_polygon<I: IntoIterator<Item = ExponentPair>>(
    support: I,
) -> Result<NewtonPolygon, LatticeError> {
    let pts: BTreeSet<ExponentPair> = support.into_iter().collect();
    if pts.is_empty() {
        return Err(LatticeError::EmptySupport);
    }
    let pts: Vec<ExponentPair> = pts.into_iter().collect(); // sorted lexicographically
    if pts.len() == 1 {
        return Ok(NewtonPolygon::Point(pts[0]));
    }
    let mut lower: Vec<ExponentPair> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<ExponentPair> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 {
        return Ok(NewtonPolygon::Segment(
            lower[0].min(lower[1]),
            lower[0].max(lower[1]),
        ));
    }
    Ok(NewtonPolygon::Polygon(lower))
}

/// A slope in `ℚ ∪ {∞}`, canonical: lowest terms, positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite { num: i64, den: i64 },
    Infinity,
}

impl Slope {
    pub fn new(num: i64, den: i64) -> Self {
        if den == 0 {
            return Slope::Infinity;
        }
        let g = gcd_i64(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Slope::Finite { num: n, den: d }
    }

    /// Slope of the lattice direction `(dx, dy)`, i.e. `dy/dx`.
    pub fn of_direction(d: ExponentPair) -> Self {
        Self::new(d.q, d.p)
    }

    pub fn parse(text: &str) -> Option<Self> {
        let t = text.trim();
        if t == "inf" {
            return Some(Slope::Infinity);
        }
        match t.split_once('/') {
            None => t.parse::<i64>().ok().map(|n| Slope::new(n, 1)),
            Some((n, d)) => {
                let n = n.trim().parse::<i64>().ok()?;
                let d = d.trim().parse::<i64>().ok()?;
                if d == 0 {
                    None
                } else {
                    Some(Slope::new(n, d))
                }
            }
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Slope::*;
        match (self, other) {
            (Infinity, Infinity) => std::cmp::Ordering::Equal,
            (Infinity, Finite { .. }) => std::cmp::Ordering::Greater,
            (Finite { .. }, Infinity) => std::cmp::Ordering::Less,
            (Finite { num: a, den: b }, Finite { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Infinity => write!(f, "inf"),
            Slope::Finite { num, den: 1 } => write!(f, "{}", num),
            Slope::Finite { num, den } => write!(f, "{}/{}", num, den),
        }
    }
}

/// Edge slopes of a polygon; a point has none and a segment exactly one.
pub fn slopes(p: &NewtonPolygon) -> BTreeSet<Slope> {
    let mut out = BTreeSet::new();
    match p {
        NewtonPolygon::Point(_) => {}
        NewtonPolygon::Segment(a, b) => {
            out.insert(Slope::of_direction(b.sub(*a)));
        }
        NewtonPolygon::Polygon(vs) => {
            for (i, v) in vs.iter().enumerate() {
                let w = vs[(i + 1) % vs.len()];
                out.insert(Slope::of_direction(w.sub(*v)));
            }
        }
    }
    out
}

/// The pair of band homomorphisms attached to a coprime filling
/// direction `(p, q)`: `λ` vanishes on it, `ε` takes value 1 on it, and
/// the two form a unimodular basis of the dual lattice. `m` is the
/// maximum of `λ` over the polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BandPair {
    pub lam: (i64, i64),
    pub eps: (i64, i64),
    pub m: i64,
}

impl BandPair {
    pub fn lam_at(&self, at: ExponentPair) -> i64 {
        self.lam.0 * at.p + self.lam.1 * at.q
    }

    pub fn eps_at(&self, at: ExponentPair) -> i64 {
        self.eps.0 * at.p + self.eps.1 * at.q
    }

    pub fn det(&self) -> i64 {
        self.lam.0 * self.eps.1 - self.lam.1 * self.eps.0
    }
}

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a.abs(), s, 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - (a.div_euclid(b)) * y)
}

/// The two homomorphisms attached to a coprime direction: `λ = (q, −p)`
/// vanishing on it, and `ε` with `ε(p, q) = 1` from extended Euclid, its
/// first coefficient reduced to the least nonnegative residue modulo
/// `|q|` (for `q = 0` the direction is `(±1, 0)` and `ε = (p, 0)`).
pub fn band_forms(p: i64, q: i64) -> Result<((i64, i64), (i64, i64)), LatticeError> {
    if gcd_i64(p, q) != 1 {
        return Err(LatticeError::NotCoprime { p, q });
    }
    let lam = (q, -p);
    let eps = if q == 0 {
        (p, 0) // direction is (±1, 0) and ε(p, 0) = p² = 1
    } else {
        let (g, a, _b) = ext_gcd(p, q);
        debug_assert_eq!(g, 1);
        let a_red = a.rem_euclid(q.abs());
        let b_adj = (1 - a_red as i128 * p as i128) / q as i128;
        (a_red, b_adj as i64)
    };
    Ok((lam, eps))
}

/// Builds the band pair for a coprime direction against a polygon. The
/// flag is true iff the maximum of `λ` is attained at a unique vertex,
/// equivalently iff `q/p` is not an edge slope.
pub fn band_pair(
    p: i64,
    q: i64,
    poly: &NewtonPolygon,
) -> Result<(BandPair, bool), LatticeError> {
    let (lam, eps) = band_forms(p, q)?;
    let vertices = poly.vertices();
    let vals: Vec<i64> = vertices.iter().map(|v| lam.0 * v.p + lam.1 * v.q).collect();
    let m = *vals.iter().max().expect("nonempty polygon");
    let unique = vals.iter().filter(|&&v| v == m).count() == 1;
    let bp = BandPair { lam, eps, m };
    debug_assert!(bp.det() == 1 || bp.det() == -1);
    debug_assert_eq!(bp.lam_at(ExponentPair::new(p, q)), 0);
    debug_assert_eq!(bp.eps_at(ExponentPair::new(p, q)), 1);
    Ok((bp, unique))
}

/// Number of sign-flip classes of lattice points with `|λ| ≤ M` and
/// `ε ∈ {0, 1}`, counted by enumeration in band coordinates.
pub fn count_classes(m: i64) -> u64 {
    let mut seen: BTreeSet<SymmetricClass> = BTreeSet::new();
    for u in -m..=m {
        for v in 0..=1i64 {
            seen.insert(SymmetricClass::of(ExponentPair::new(u, v)));
        }
    }
    seen.len() as u64
}

/// The explicit classes in the band intersection, one canonical
/// representative each, sorted.
pub fn enumerate_classes(bp: &BandPair) -> Vec<SymmetricClass> {
    let d = bp.det();
    debug_assert!(d == 1 || d == -1);
    let (l1, l2) = bp.lam;
    let (e1, e2) = bp.eps;
    let mut seen: BTreeSet<SymmetricClass> = BTreeSet::new();
    for u in -bp.m..=bp.m {
        for v in 0..=1i64 {
            // invert the unimodular map (α, β) ↦ (λ, ε)
            let alpha = d * (e2 * u - l2 * v);
            let beta = d * (-e1 * u + l1 * v);
            let at = ExponentPair::new(alpha, beta);
            debug_assert_eq!(bp.lam_at(at), u);
            debug_assert_eq!(bp.eps_at(at), v);
            seen.insert(SymmetricClass::of(at));
        }
    }
    seen.into_iter().collect()
}
