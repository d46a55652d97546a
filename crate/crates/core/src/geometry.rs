//! Points and exact segment–segment contact classification.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        Point {
            x: T::from_i64(x),
            y: T::from_i64(y),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    pub fn map<U: Scalar>(&self) -> Point<U> {
        Point {
            x: U::from_rational(&self.x.to_rational()),
            y: U::from_rational(&self.y.to_rational()),
        }
    }

    pub fn sub(&self, o: &Point<T>) -> Point<T> {
        Point {
            x: self.x.clone() - o.x.clone(),
            y: self.y.clone() - o.y.clone(),
        }
    }

    pub fn add(&self, o: &Point<T>) -> Point<T> {
        Point {
            x: self.x.clone() + o.x.clone(),
            y: self.y.clone() + o.y.clone(),
        }
    }

    pub fn scale(&self, s: &T) -> Point<T> {
        Point {
            x: self.x.clone() * s.clone(),
            y: self.y.clone() * s.clone(),
        }
    }

    pub fn midpoint(&self, o: &Point<T>) -> Point<T> {
        let half = T::from_ratio(1, 2);
        self.add(o).scale(&half)
    }

    /// Lexicographic order by `(x, y)`.
    pub fn lex_cmp(&self, o: &Point<T>) -> Ordering {
        self.x
            .partial_cmp(&o.x)
            .unwrap_or(Ordering::Equal)
            .then(self.y.partial_cmp(&o.y).unwrap_or(Ordering::Equal))
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn cross<T: Scalar>(u: &Point<T>, v: &Point<T>) -> T {
    u.x.clone() * v.y.clone() - u.y.clone() * v.x.clone()
}

pub fn dot<T: Scalar>(u: &Point<T>, v: &Point<T>) -> T {
    u.x.clone() * v.x.clone() + u.y.clone() * v.y.clone()
}

pub fn orient<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> Ordering {
    T::orient(&a.x, &a.y, &b.x, &b.y, &c.x, &c.y)
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq)]
pub enum Contact<T> {
    None,
    /// Transversal crossing interior to both; `t`, `u` are the parameters
    /// along the first and second segment.
    Proper {
        t: T,
        u: T,
        point: Point<T>,
    },
    /// A single common point that is an endpoint of at least one segment.
    Touch(Point<T>),
    /// Collinear with a common sub-segment of positive length.
    Overlap,
}

/// `c` on the closed segment `ab`, given that the three are collinear.
fn between<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> bool {
    let (lo, hi) = if a.lex_cmp(b) == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    };
    lo.lex_cmp(c) != Ordering::Greater && c.lex_cmp(hi) != Ordering::Greater
}

pub fn contact<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>, d: &Point<T>) -> Contact<T> {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        let sorted = |p: &Point<T>, q: &Point<T>| {
            if p.lex_cmp(q) == Ordering::Greater {
                (q.clone(), p.clone())
            } else {
                (p.clone(), q.clone())
            }
        };
        let (lo1, hi1) = sorted(a, b);
        let (lo2, hi2) = sorted(c, d);
        let lo = if lo1.lex_cmp(&lo2) == Ordering::Greater {
            lo1
        } else {
            lo2
        };
        let hi = if hi1.lex_cmp(&hi2) == Ordering::Less {
            hi1
        } else {
            hi2
        };
        return match lo.lex_cmp(&hi) {
            Ordering::Less => Contact::Overlap,
            Ordering::Equal => Contact::Touch(lo),
            Ordering::Greater => Contact::None,
        };
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let strictly_apart =
        |p: Ordering, q: Ordering| p != Ordering::Equal && q != Ordering::Equal && p != q;
    if strictly_apart(o1, o2) && strictly_apart(o3, o4) {
        let r = b.sub(a);
        let s = d.sub(c);
        let ca = c.sub(a);
        let denom = cross(&r, &s);
        let t = cross(&ca, &s) / denom.clone();
        let u = cross(&ca, &r) / denom;
        let point = a.add(&r.scale(&t));
        return Contact::Proper { t, u, point };
    }
    if o1 == Ordering::Equal && between(a, b, c) {
        return Contact::Touch(c.clone());
    }
    if o2 == Ordering::Equal && between(a, b, d) {
        return Contact::Touch(d.clone());
    }
    if o3 == Ordering::Equal && between(c, d, a) {
        return Contact::Touch(a.clone());
    }
    if o4 == Ordering::Equal && between(c, d, b) {
        return Contact::Touch(b.clone());
    }
    Contact::None
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment<T: Scalar>(a: &Point<T>, b: &Point<T>, p: &Point<T>) -> bool {
    orient(a, b, p) == Ordering::Equal && between(a, b, p)
}

/// Conservative f64 bounding box.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Bbox {
    lo: (f64, f64),
    hi: (f64, f64),
}

impl Bbox {
    pub(crate) fn of<T: Scalar>(a: &Point<T>, b: &Point<T>) -> Bbox {
        let (ax, ay) = a.to_f64();
        let (bx, by) = b.to_f64();
        let pad = |v: f64| v.abs() * 1e-9 + 1e-300;
        Bbox {
            lo: (ax.min(bx) - pad(ax.min(bx)), ay.min(by) - pad(ay.min(by))),
            hi: (ax.max(bx) + pad(ax.max(bx)), ay.max(by) + pad(ay.max(by))),
        }
    }

    pub(crate) fn meets(&self, o: &Bbox) -> bool {
        self.lo.0 <= o.hi.0 && o.lo.0 <= self.hi.0 && self.lo.1 <= o.hi.1 && o.lo.1 <= self.hi.1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn p(x: i64, y: i64) -> Point<Rational> {
        Point::from_i64(x, y)
    }

    #[test]
    fn proper_crossing_parameters() {
        match contact(&p(0, 0), &p(4, 4), &p(0, 4), &p(4, 0)) {
            Contact::Proper { t, u, point } => {
                assert_eq!(t, <Rational as Scalar>::from_ratio(1, 2));
                assert_eq!(u, <Rational as Scalar>::from_ratio(1, 2));
                assert_eq!(point, p(2, 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn touches_and_overlaps() {
        assert_eq!(
            contact(&p(0, 0), &p(4, 0), &p(2, 0), &p(2, 3)),
            Contact::Touch(p(2, 0))
        );
        assert_eq!(
            contact(&p(0, 0), &p(4, 0), &p(4, 0), &p(5, 3)),
            Contact::Touch(p(4, 0))
        );
        assert_eq!(
            contact(&p(0, 0), &p(4, 0), &p(2, 0), &p(6, 0)),
            Contact::Overlap
        );
        assert_eq!(
            contact(&p(0, 0), &p(4, 0), &p(4, 0), &p(6, 0)),
            Contact::Touch(p(4, 0))
        );
        assert_eq!(
            contact(&p(0, 0), &p(4, 0), &p(5, 0), &p(6, 0)),
            Contact::None
        );
        assert_eq!(
            contact(&p(0, 0), &p(4, 0), &p(0, 1), &p(4, 1)),
            Contact::None
        );
        assert_eq!(
            contact(&p(0, 0), &p(1, 1), &p(3, 0), &p(2, 5)),
            Contact::None
        );
    }

    #[test]
    fn float_scalar_agrees_on_simple_cases() {
        let q = |x: f64, y: f64| Point::new(x, y);
        assert!(matches!(
            contact(&q(0.0, 0.0), &q(2.0, 2.0), &q(0.0, 2.0), &q(2.0, 0.0)),
            Contact::Proper { .. }
        ));
        assert_eq!(
            contact(&q(0.0, 0.0), &q(2.0, 0.0), &q(1.0, 0.0), &q(3.0, 0.0)),
            Contact::Overlap
        );
    }
}
