//! Newton polygons of series over a discretely valued coefficient ring
//! (Hoffmann's definition restricted to `n ≥ 0`), read through a finite
//! window `0..=N`.
//!
//! The polygon kept here is the negative-slope-and-flat part of the lower
//! hull: from `(0, v(a_0))` — or the first nonzero coefficient — to the
//! rightmost point of least valuation inside the window.
//!
//! Window semantics. A series is *complete* in the window when its support is
//! known to end at or before `N`. Otherwise:
//! * negative-slope edges are exact once a valuation-0 point has been seen
//!   (no later point can lie below it); if the least valuation in the window
//!   is positive, every edge is provisional;
//! * a flat run touching the window boundary has unknown length.
//!
//! Both situations set `censored`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::rings::{valuation_of, RingElem, Val, Valuation};
use crate::series::Series;

/// A lattice point `(i, v(a_i))` for a nonzero coefficient `a_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NPPoint {
    pub i: u64,
    pub v: u64,
}

impl NPPoint {
    pub fn new(i: u64, v: u64) -> Self {
        NPPoint { i, v }
    }
}

impl Serialize for NPPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.i)?;
        t.serialize_element(&self.v)?;
        t.end()
    }
}

/// An exact rational slope serialized as `["num", "den"]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Slope(pub BigRational);

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.0.numer().to_string())?;
        t.serialize_element(&self.0.denom().to_string())?;
        t.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub slope: Slope,
    pub hlen: u64,
    pub from: NPPoint,
    pub to: NPPoint,
}

impl Edge {
    fn between(a: NPPoint, b: NPPoint) -> Edge {
        let rise = BigInt::from(b.v) - BigInt::from(a.v);
        let run = BigInt::from(b.i - a.i);
        Edge {
            slope: Slope(BigRational::new(rise, run)),
            hlen: b.i - a.i,
            from: a,
            to: b,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.slope.0.is_negative()
    }
}

/// Value of Hoffmann's `f*(s)` read from a window. When `censored` is set,
/// `length` is only what the window shows (a lower bound for a flat run, a
/// provisional value otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FStar {
    pub length: u64,
    pub censored: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub window: u64,
    pub vertices: Vec<NPPoint>,
    pub edges: Vec<Edge>,
    pub censored: bool,
    #[serde(skip)]
    pub complete: bool,
    #[serde(skip)]
    points: Vec<NPPoint>,
}

/// Points `(i, v(a_i))` for `0 ≤ i ≤ n` with `a_i ≠ 0`.
pub fn np_points(f: &Series, v: &Valuation, n: usize) -> Result<Vec<NPPoint>> {
    Ok(points_of(&f.prefix(n + 1)?, v))
}

/// Points of an explicit coefficient list.
pub fn points_of(coeffs: &[RingElem], v: &Valuation) -> Vec<NPPoint> {
    coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match valuation_of(c, v) {
            Val::Fin(e) => Some(NPPoint::new(i as u64, e)),
            Val::Inf => None,
        })
        .collect()
}

/// `(a - o) × (b - o)`; positive for a counterclockwise turn.
fn cross(o: NPPoint, a: NPPoint, b: NPPoint) -> i128 {
    let (ox, oy) = (o.i as i128, o.v as i128);
    (a.i as i128 - ox) * (b.v as i128 - oy) - (a.v as i128 - oy) * (b.i as i128 - ox)
}

/// Vertices of the full lower convex hull (monotone chain), collinear interior
/// points dropped. `points` must be sorted by strictly increasing index.
pub fn full_lower_hull(points: &[NPPoint]) -> Vec<NPPoint> {
    debug_assert!(points.windows(2).all(|w| w[0].i < w[1].i));
    let mut hull: Vec<NPPoint> = Vec::with_capacity(points.len());
    for &p in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Vertices of the negative-slope-and-flat part of the lower hull: the full
/// lower hull cut at its rightmost vertex of least valuation.
pub fn lower_hull(points: &[NPPoint]) -> Vec<NPPoint> {
    let mut hull = full_lower_hull(points);
    if let Some(min_v) = hull.iter().map(|p| p.v).min() {
        let last = hull.iter().rposition(|p| p.v == min_v).expect("nonempty");
        hull.truncate(last + 1);
    }
    hull
}

impl NewtonPolygon {
    /// Polygon of the points seen in window `0..=window`; `complete` says
    /// whether the series has no nonzero coefficient past the window.
    pub fn from_points(points: Vec<NPPoint>, window: u64, complete: bool) -> Self {
        let vertices = lower_hull(&points);
        let edges: Vec<Edge> = vertices.windows(2).map(|w| Edge::between(w[0], w[1])).collect();
        let censored = !complete
            && match vertices.last() {
                None => true,
                Some(last) => last.v > 0 || last.i == window,
            };
        NewtonPolygon {
            window,
            vertices,
            edges,
            censored,
            complete,
            points,
        }
    }

    /// `NP(f)` with respect to `v`, read from coefficients `0..=n`.
    pub fn of_series(f: &Series, v: &Valuation, n: usize) -> Result<Self> {
        let complete = f.support_bound().is_some_and(|s| s <= n);
        Ok(Self::from_points(np_points(f, v, n)?, n as u64, complete))
    }

    pub fn points(&self) -> &[NPPoint] {
        &self.points
    }

    pub fn negative_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_negative())
    }

    /// Least valuation seen in the window.
    pub fn min_valuation(&self) -> Option<u64> {
        self.vertices.last().map(|p| p.v)
    }

    /// Hoffmann's `f*(s)`: horizontal length of the edge of slope exactly `s`,
    /// 0 when there is none.
    ///
    /// Positive slopes are only determined for complete windows; otherwise
    /// they report `(0, censored)`.
    pub fn f_star(&self, s: &BigRational) -> FStar {
        let find = |edges: &[Edge]| edges.iter().find(|e| &e.slope.0 == s).map_or(0, |e| e.hlen);
        match s.cmp(&BigRational::zero()) {
            Ordering::Less => FStar {
                length: find(&self.edges),
                censored: !self.complete && self.min_valuation().is_none_or(|m| m > 0),
            },
            Ordering::Equal => FStar {
                length: find(&self.edges),
                censored: self.censored,
            },
            Ordering::Greater if self.complete => {
                let full = full_lower_hull(&self.points);
                let rising: Vec<Edge> = full.windows(2).map(|w| Edge::between(w[0], w[1])).collect();
                FStar {
                    length: find(&rising),
                    censored: false,
                }
            }
            Ordering::Greater => FStar {
                length: 0,
                censored: true,
            },
        }
    }
}

/// `f*(s)` of `f` read from window `0..=n`.
pub fn f_star(f: &Series, v: &Valuation, s: &BigRational, n: usize) -> Result<FStar> {
    Ok(NewtonPolygon::of_series(f, v, n)?.f_star(s))
}

/// The single-edge conditions of the series Dumas criterion: `v(a_n) = 0` and
/// `k·(n−i) < n·v(a_i)` for every `1 ≤ i < n` with `a_i ≠ 0`, compared as
/// exact integers. With `v(a_0) = k` this says `NP(f)` is the single edge
/// `(0,k)–(n,0)` up to its flat tail.
pub fn single_edge_test(f: &Series, v: &Valuation, k: u64, n: usize) -> Result<bool> {
    if n == 0 {
        return Ok(false);
    }
    let coeffs = f.prefix(n + 1)?;
    Ok(single_edge_holds(|i| valuation_of(&coeffs[i], v), k, n))
}

pub(crate) fn single_edge_holds(mut val: impl FnMut(usize) -> Val, k: u64, n: usize) -> bool {
    if val(n) != Val::Fin(0) {
        return false;
    }
    (1..n).all(|i| match val(i) {
        Val::Inf => true,
        Val::Fin(vi) => (k as u128) * ((n - i) as u128) < (n as u128) * (vi as u128),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::RingTag;
    use crate::sparser::parse_series;
    use proptest::prelude::*;

    fn p(i: u64, v: u64) -> NPPoint {
        NPPoint::new(i, v)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn two_adic() -> Valuation {
        Valuation::adic(&RingElem::int(2)).unwrap()
    }

    fn f4() -> Series {
        parse_series("8 + 8*z + 4*z^2 + 2*z^3 + z^4*inv(1-z)", RingTag::Int).unwrap()
    }

    #[test]
    fn points_examples() {
        let v = two_adic();
        assert_eq!(
            np_points(&f4(), &v, 4).unwrap(),
            vec![p(0, 3), p(1, 3), p(2, 2), p(3, 1), p(4, 0)]
        );
        assert_eq!(
            np_points(&Series::from_ints(&[6, 1]), &v, 3).unwrap(),
            vec![p(0, 1), p(1, 0)]
        );
        assert_eq!(
            np_points(&Series::from_ints(&[4, 0, 1]), &v, 4).unwrap(),
            vec![p(0, 2), p(2, 0)]
        );
    }

    #[test]
    fn hull_examples() {
        let pts = [p(0, 3), p(1, 3), p(2, 2), p(3, 1), p(4, 0)];
        assert_eq!(lower_hull(&pts), vec![p(0, 3), p(4, 0)]);
        let np = NewtonPolygon::from_points(pts.to_vec(), 4, true);
        assert_eq!(np.edges.len(), 1);
        assert_eq!(np.edges[0].slope.0, q(-3, 4));
        assert_eq!(np.edges[0].hlen, 4);
        assert_eq!(lower_hull(&[p(0, 1), p(1, 0)]), vec![p(0, 1), p(1, 0)]);
        let rising = NewtonPolygon::from_points(vec![p(0, 2), p(1, 3)], 1, true);
        assert_eq!(rising.vertices, vec![p(0, 2)]);
        assert_eq!(rising.negative_edges().count(), 0);
    }

    #[test]
    fn f_star_examples() {
        let v = two_adic();
        assert_eq!(
            f_star(&f4(), &v, &q(-3, 4), 16).unwrap(),
            FStar {
                length: 4,
                censored: false
            }
        );
        assert_eq!(
            f_star(&f4(), &v, &q(-1, 2), 16).unwrap(),
            FStar {
                length: 0,
                censored: false
            }
        );
        let h = parse_series("2 + 2*(1-2)*z*inv(1-z)", RingTag::Int).unwrap();
        let hs = f_star(&h, &v, &q(0, 1), 20).unwrap();
        assert!(hs.censored && hs.length >= 20);
    }

    #[test]
    fn positive_slopes_on_complete_windows() {
        let v = two_adic();
        let f = Series::from_ints(&[4, 1, 4]);
        let np = NewtonPolygon::of_series(&f, &v, 8).unwrap();
        assert_eq!(
            np.f_star(&q(2, 1)),
            FStar {
                length: 1,
                censored: false
            }
        );
        assert_eq!(
            np.f_star(&q(-2, 1)),
            FStar {
                length: 1,
                censored: false
            }
        );
        let g = parse_series("4 + z + 4*z^2*inv(1-z)", RingTag::Int).unwrap();
        let ng = NewtonPolygon::of_series(&g, &v, 8).unwrap();
        assert!(ng.f_star(&q(2, 1)).censored);
    }

    #[test]
    fn failure_example_regression() {
        let v = two_adic();
        let g = Series::from_ints(&[2, -2]);
        let h = parse_series("2 + 2*(1-2)*z*inv(1-z)", RingTag::Int).unwrap();
        let gh = g.mul(&h).unwrap();
        assert_eq!(
            gh.prefix(10).unwrap()[..3],
            [RingElem::int(4), RingElem::int(-8), RingElem::int(0)]
        );
        let zero = q(0, 1);
        for n in [8, 32, 128] {
            assert_eq!(
                f_star(&g, &v, &zero, n).unwrap(),
                FStar {
                    length: 1,
                    censored: false
                }
            );
            let hs = f_star(&h, &v, &zero, n).unwrap();
            assert!(hs.censored);
            assert_eq!(hs.length, n as u64);
            assert_eq!(f_star(&gh, &v, &zero, n).unwrap().length, 0);
        }
        assert_eq!(
            f_star(&Series::from_ints(&[4, -8]), &v, &zero, 8).unwrap(),
            FStar {
                length: 0,
                censored: false
            }
        );
    }

    #[test]
    fn single_edge_examples() {
        let v = two_adic();
        assert!(single_edge_test(&f4(), &v, 3, 4).unwrap());
        let f5 = parse_series("(8+z^2)*inv(1-z)", RingTag::Int).unwrap();
        assert!(single_edge_test(&f5, &v, 3, 2).unwrap());
        assert!(!single_edge_test(&Series::from_ints(&[4, 2, 1]), &v, 2, 2).unwrap());
    }

    #[test]
    fn json_shape() {
        let np = NewtonPolygon::of_series(&Series::from_ints(&[6, 1]), &two_adic(), 3).unwrap();
        let j = serde_json::to_value(&np).unwrap();
        assert_eq!(
            j,
            serde_json::json!({
                "window": 3,
                "vertices": [[0, 1], [1, 0]],
                "edges": [{"slope": ["-1", "1"], "hlen": 1, "from": [0, 1], "to": [1, 0]}],
                "censored": false
            })
        );
    }

    /// O(n³) oracle: maximal segments with every point on or above their
    /// supporting line; vertices are their endpoints, cut like `lower_hull`.
    pub(crate) fn brute_force_hull(points: &[NPPoint]) -> Vec<NPPoint> {
        if points.len() == 1 {
            return points.to_vec();
        }
        let mut vs: Vec<NPPoint> = Vec::new();
        for (a_ix, &a) in points.iter().enumerate() {
            for &b in &points[a_ix + 1..] {
                let supporting = points.iter().all(|&c| cross(a, b, c) >= 0);
                let maximal = points
                    .iter()
                    .all(|&c| cross(a, b, c) != 0 || (a.i <= c.i && c.i <= b.i));
                if supporting && maximal {
                    vs.push(a);
                    vs.push(b);
                }
            }
        }
        vs.sort_by_key(|p| p.i);
        vs.dedup();
        let min_v = vs.iter().map(|p| p.v).min().unwrap();
        let last = vs.iter().rposition(|p| p.v == min_v).unwrap();
        vs.truncate(last + 1);
        vs
    }

    fn point_set() -> impl Strategy<Value = Vec<NPPoint>> {
        prop::collection::btree_map(0u64..40, 0u64..=20, 1..=12)
            .prop_map(|m| m.into_iter().map(|(i, v)| p(i, v)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn hull_matches_brute_force(pts in point_set()) {
            prop_assert_eq!(lower_hull(&pts), brute_force_hull(&pts));
        }

        #[test]
        fn edges_are_convex_and_supporting(pts in point_set()) {
            let np = NewtonPolygon::from_points(pts.clone(), 40, true);
            for w in np.edges.windows(2) {
                prop_assert!(w[0].slope < w[1].slope);
                prop_assert_eq!(w[0].to, w[1].from);
            }
            for e in &np.edges {
                for &c in &pts {
                    prop_assert!(cross(e.from, e.to, c) >= 0);
                }
            }
        }
    }
}
