//! The quotient square: edge catalog, removed points, gluing translations
//! and canonical representatives.
//!
//! The bottom side splits into segments `[1-2^-k, 1-2^-k-1] x {0}` glued by
//! translation onto `[2^-k-1, 2^-k] x {1}` on the top; the left and right
//! sides carry the mirror-image family. Segment endpoints and the corners
//! are removed before gluing. Every surface point has a unique canonical
//! representative in `[0,1) x [0,1)` (bottom and left edges win).

use std::cmp::Ordering;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::rational::RatInterval;
use crate::stream::{Description, DigitStream};

/// One square coordinate: an exact dyadic or an infinite expansion.
#[derive(Clone, Debug, PartialEq)]
pub enum Coord {
    Dyadic(Dyadic),
    Stream(DigitStream),
}

impl Coord {
    /// The exact dyadic value, when the coordinate has one (dyadic, or a
    /// stream that normalized to a terminating description).
    pub fn exact(&self) -> Option<Dyadic> {
        match self {
            Coord::Dyadic(d) => Some(d.clone()),
            Coord::Stream(s) => match s.description() {
                Description::Terminating(d) => Some(d.clone()),
                _ => None,
            },
        }
    }

    pub fn as_stream(&self) -> Result<DigitStream> {
        match self {
            Coord::Stream(s) => Ok(s.clone()),
            Coord::Dyadic(d) => DigitStream::terminating(d.clone()),
        }
    }

    /// First `m` expansion digits. Coordinates equal to one have no
    /// fraction expansion and are rejected by the callers that need digits.
    pub fn digits(&self, m: u64) -> Vec<u8> {
        match self {
            Coord::Dyadic(d) => d.fraction_digits(m),
            Coord::Stream(s) => s.digits(m),
        }
    }

    /// Encloses the value in an exact rational interval of width `<= 2^-m`.
    pub fn enclosure(&self, m: u32) -> RatInterval {
        match self {
            Coord::Dyadic(d) => RatInterval::point(d.into()),
            Coord::Stream(s) => match s.description() {
                Description::Terminating(d) => RatInterval::point(d.into()),
                _ => RatInterval::from_truncation(&s.to_dyadic_approx(m), m),
            },
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Coord::Dyadic(d) => d.to_f64(),
            Coord::Stream(s) => s.to_dyadic_approx(64).to_f64(),
        }
    }

    /// Exact comparison of the coordinate against a dyadic value.
    pub fn cmp_dyadic(&self, d: &Dyadic) -> Result<Ordering> {
        match self {
            Coord::Dyadic(v) => Ok(v.cmp(d)),
            Coord::Stream(s) => s.cmp_dyadic(d),
        }
    }
}

impl From<Dyadic> for Coord {
    fn from(d: Dyadic) -> Self {
        Coord::Dyadic(d)
    }
}

impl From<DigitStream> for Coord {
    fn from(s: DigitStream) -> Self {
        Coord::Stream(s)
    }
}

/// A point of the closed unit square.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarePoint {
    x: Coord,
    y: Coord,
}

impl SquarePoint {
    pub fn new(x: Coord, y: Coord) -> Result<Self> {
        for c in [&x, &y] {
            if let Some(d) = c.exact() {
                if d.is_negative() || d > Dyadic::one() {
                    return Err(Error::OutsideSquare);
                }
            }
        }
        Ok(SquarePoint { x, y })
    }

    pub fn dyadic(x: Dyadic, y: Dyadic) -> Result<Self> {
        Self::new(Coord::Dyadic(x), Coord::Dyadic(y))
    }

    /// Convenience constructor from small fractions `xn/2^xe`, `yn/2^ye`.
    pub fn from_parts(xn: i128, xe: u32, yn: i128, ye: u32) -> Result<Self> {
        Self::dyadic(Dyadic::new(xn, xe), Dyadic::new(yn, ye))
    }

    pub fn x(&self) -> &Coord {
        &self.x
    }

    pub fn y(&self) -> &Coord {
        &self.y
    }

    /// Exact dyadic coordinates when both are available.
    pub fn exact_pair(&self) -> Option<(Dyadic, Dyadic)> {
        Some((self.x.exact()?, self.y.exact()?))
    }
}

/// Which glued family an edge belongs to: horizontal edges run along the
/// bottom/top sides, vertical edges along the left/right sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeFamily {
    Horizontal,
    Vertical,
}

/// Which member of a glued pair: `Lower` is the bottom/left segment (the
/// canonical side), `Upper` the top/right partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeSide {
    Lower,
    Upper,
}

/// Identifier of one boundary segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeId {
    pub family: EdgeFamily,
    pub k: u32,
    pub side: EdgeSide,
}

/// Why a point is removed from the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RemovedReason {
    /// One of the four square corners.
    Corner { x_is_one: bool, y_is_one: bool },
    /// An endpoint of a glued segment: on the lower side the value
    /// `1 - 2^-index`, on the upper side `2^-index`.
    SegmentEndpoint {
        family: EdgeFamily,
        side: EdgeSide,
        index: u32,
    },
}

impl std::fmt::Display for RemovedReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RemovedReason::Corner { x_is_one, y_is_one } => {
                write!(
                    f,
                    "corner ({}, {})",
                    u8::from(*x_is_one),
                    u8::from(*y_is_one)
                )
            }
            RemovedReason::SegmentEndpoint {
                family,
                side,
                index,
            } => {
                write!(f, "segment endpoint {family:?}/{side:?} k={index}")
            }
        }
    }
}

/// Classification of a square point against the quotient structure.
#[derive(Clone, Debug, PartialEq)]
pub enum PointClass {
    Interior,
    EdgeInterior { edge: EdgeId, partner: SquarePoint },
    Removed(RemovedReason),
}

/// One boundary segment with exact endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeSegment {
    pub id: EdgeId,
    pub start: (Dyadic, Dyadic),
    pub end: (Dyadic, Dyadic),
}

impl EdgeSegment {
    pub fn length(&self) -> Dyadic {
        let dx = self.end.0.sub(&self.start.0).abs();
        let dy = self.end.1.sub(&self.start.1).abs();
        dx.max(dy)
    }
}

/// All four segments per index `k <= k_max`, lower sides first.
pub fn edge_catalog(k_max: u32) -> Vec<EdgeSegment> {
    let mut edges = Vec::with_capacity(4 * (k_max as usize + 1));
    for k in 0..=k_max {
        let lo = Dyadic::one_minus_pow2_neg(k);
        let hi = Dyadic::one_minus_pow2_neg(k + 1);
        let top_lo = Dyadic::pow2_neg(k + 1);
        let top_hi = Dyadic::pow2_neg(k);
        edges.push(EdgeSegment {
            id: EdgeId {
                family: EdgeFamily::Horizontal,
                k,
                side: EdgeSide::Lower,
            },
            start: (lo.clone(), Dyadic::zero()),
            end: (hi.clone(), Dyadic::zero()),
        });
        edges.push(EdgeSegment {
            id: EdgeId {
                family: EdgeFamily::Horizontal,
                k,
                side: EdgeSide::Upper,
            },
            start: (top_lo.clone(), Dyadic::one()),
            end: (top_hi.clone(), Dyadic::one()),
        });
        edges.push(EdgeSegment {
            id: EdgeId {
                family: EdgeFamily::Vertical,
                k,
                side: EdgeSide::Lower,
            },
            start: (Dyadic::zero(), lo),
            end: (Dyadic::zero(), hi),
        });
        edges.push(EdgeSegment {
            id: EdgeId {
                family: EdgeFamily::Vertical,
                k,
                side: EdgeSide::Upper,
            },
            start: (Dyadic::one(), top_lo),
            end: (Dyadic::one(), top_hi),
        });
    }
    edges
}

/// Interior point of an edge at parameter `t` in `(0, 1)` along the segment.
pub fn point_on_edge(id: EdgeId, t: &Dyadic) -> SquarePoint {
    debug_assert!(*t > Dyadic::zero() && *t < Dyadic::one());
    let step = t.mul_pow2(-(id.k as i32 + 1));
    let (along, fixed_is_one) = match id.side {
        EdgeSide::Lower => (Dyadic::one_minus_pow2_neg(id.k).add(&step), false),
        EdgeSide::Upper => (Dyadic::pow2_neg(id.k + 1).add(&step), true),
    };
    let fixed = if fixed_is_one {
        Dyadic::one()
    } else {
        Dyadic::zero()
    };
    let (x, y) = match id.family {
        EdgeFamily::Horizontal => (along, fixed),
        EdgeFamily::Vertical => (fixed, along),
    };
    SquarePoint::dyadic(x, y).expect("edge points lie in the square")
}

/// Value-level position of one coordinate relative to the boundary.
enum Placement {
    /// Exactly the dyadic value given.
    Exact(Dyadic),
    /// Certified strictly between 0 and 1, no dyadic value available.
    StrictlyInside,
}

fn place(coord: &Coord) -> Result<Placement> {
    if let Some(d) = coord.exact() {
        if d.is_negative() || d > Dyadic::one() {
            return Err(Error::OutsideSquare);
        }
        return Ok(Placement::Exact(d));
    }
    // Non-terminating expansions never equal 0 (they contain a one) or 1
    // (never eventually all ones); the probes certify this and surface an
    // undecidable degenerate description as an error.
    let stream = match coord {
        Coord::Stream(s) => s,
        Coord::Dyadic(_) => unreachable!("dyadic handled above"),
    };
    stream
        .next_one_after(0)
        .map_err(|_| Error::PrecisionExhausted { cap: 256 })?;
    stream
        .next_zero_after(0)
        .map_err(|_| Error::PrecisionExhausted { cap: 256 })?;
    Ok(Placement::StrictlyInside)
}

/// Along one boundary side: removed endpoint or interior of segment `k`.
enum SidePosition {
    Endpoint { index: u32 },
    Inside { k: u32 },
}

/// The lower sides are cut at `1 - 2^-k`; position `t` in `(0, 1)`.
fn lower_side_position(t: &Dyadic) -> SidePosition {
    let r = Dyadic::one().sub(t);
    if r.is_unit_pow2() {
        SidePosition::Endpoint {
            index: r.exponent(),
        }
    } else {
        SidePosition::Inside {
            k: r.exponent() - r.num_bits() as u32,
        }
    }
}

/// The upper sides are cut at `2^-k`.
fn upper_side_position(t: &Dyadic) -> SidePosition {
    if t.is_unit_pow2() {
        SidePosition::Endpoint {
            index: t.exponent(),
        }
    } else {
        SidePosition::Inside {
            k: t.exponent() - t.num_bits() as u32,
        }
    }
}

/// Gluing translation along a lower edge: `t + 3*2^-(k+1) - 1`.
fn glue_lower_to_upper(t: &Dyadic, k: u32) -> Dyadic {
    t.add(&Dyadic::new(3, k + 1)).sub(&Dyadic::one())
}

/// Inverse translation from an upper edge: `t + 1 - 3*2^-(k+1)`.
fn glue_upper_to_lower(t: &Dyadic, k: u32) -> Dyadic {
    t.add(&Dyadic::one()).sub(&Dyadic::new(3, k + 1))
}

/// Classifies a point of the closed square as interior, edge-interior (with
/// its glued partner) or removed. Boundary positions must be exactly
/// representable; a non-dyadic coordinate lying exactly on the boundary is
/// rejected as misuse.
pub fn classify_point(p: &SquarePoint) -> Result<PointClass> {
    let px = place(p.x())?;
    let py = place(p.y())?;

    let (x_exact, y_exact) = match (&px, &py) {
        (Placement::StrictlyInside, Placement::StrictlyInside) => return Ok(PointClass::Interior),
        (Placement::Exact(x), Placement::Exact(y)) => (Some(x), Some(y)),
        (Placement::Exact(x), Placement::StrictlyInside) => (Some(x), None),
        (Placement::StrictlyInside, Placement::Exact(y)) => (None, Some(y)),
    };

    let zero = Dyadic::zero();
    let one = Dyadic::one();
    let x_on = x_exact.map(|x| (*x == zero, *x == one));
    let y_on = y_exact.map(|y| (*y == zero, *y == one));
    let x_boundary = matches!(x_on, Some((true, _)) | Some((_, true)));
    let y_boundary = matches!(y_on, Some((true, _)) | Some((_, true)));

    match (x_boundary, y_boundary) {
        (false, false) => Ok(PointClass::Interior),
        (true, true) => {
            let (_, x_is_one) = x_on.unwrap();
            let (_, y_is_one) = y_on.unwrap();
            Ok(PointClass::Removed(RemovedReason::Corner {
                x_is_one,
                y_is_one,
            }))
        }
        (true, false) => {
            // left or right side; position runs along y
            let y = match y_exact {
                Some(y) => y.clone(),
                None => return Err(Error::NonDyadicBoundary),
            };
            let (_, x_is_one) = x_on.unwrap();
            let side = if x_is_one {
                EdgeSide::Upper
            } else {
                EdgeSide::Lower
            };
            let pos = match side {
                EdgeSide::Lower => lower_side_position(&y),
                EdgeSide::Upper => upper_side_position(&y),
            };
            match pos {
                SidePosition::Endpoint { index } => {
                    Ok(PointClass::Removed(RemovedReason::SegmentEndpoint {
                        family: EdgeFamily::Vertical,
                        side,
                        index,
                    }))
                }
                SidePosition::Inside { k } => {
                    let (partner_x, partner_y) = match side {
                        EdgeSide::Lower => (one, glue_lower_to_upper(&y, k)),
                        EdgeSide::Upper => (zero, glue_upper_to_lower(&y, k)),
                    };
                    Ok(PointClass::EdgeInterior {
                        edge: EdgeId {
                            family: EdgeFamily::Vertical,
                            k,
                            side,
                        },
                        partner: SquarePoint::dyadic(partner_x, partner_y)?,
                    })
                }
            }
        }
        (false, true) => {
            // bottom or top side; position runs along x
            let x = match x_exact {
                Some(x) => x.clone(),
                None => return Err(Error::NonDyadicBoundary),
            };
            let (_, y_is_one) = y_on.unwrap();
            let side = if y_is_one {
                EdgeSide::Upper
            } else {
                EdgeSide::Lower
            };
            let pos = match side {
                EdgeSide::Lower => lower_side_position(&x),
                EdgeSide::Upper => upper_side_position(&x),
            };
            match pos {
                SidePosition::Endpoint { index } => {
                    Ok(PointClass::Removed(RemovedReason::SegmentEndpoint {
                        family: EdgeFamily::Horizontal,
                        side,
                        index,
                    }))
                }
                SidePosition::Inside { k } => {
                    let (partner_x, partner_y) = match side {
                        EdgeSide::Lower => (glue_lower_to_upper(&x, k), one),
                        EdgeSide::Upper => (glue_upper_to_lower(&x, k), zero),
                    };
                    Ok(PointClass::EdgeInterior {
                        edge: EdgeId {
                            family: EdgeFamily::Horizontal,
                            k,
                            side,
                        },
                        partner: SquarePoint::dyadic(partner_x, partner_y)?,
                    })
                }
            }
        }
    }
}

/// The glued partner of an edge-interior point.
pub fn identify_edge(p: &SquarePoint) -> Result<SquarePoint> {
    match classify_point(p)? {
        PointClass::EdgeInterior { partner, .. } => Ok(partner),
        PointClass::Removed(reason) => Err(Error::RemovedPoint(reason.to_string())),
        PointClass::Interior => Err(Error::NotEdgeInterior),
    }
}

/// The unique representative in `[0,1) x [0,1)`: interior and lower-edge
/// points are fixed, upper-edge points map to their partner.
pub fn canonical_rep(p: &SquarePoint) -> Result<SquarePoint> {
    match classify_point(p)? {
        PointClass::Interior => Ok(p.clone()),
        PointClass::Removed(reason) => Err(Error::RemovedPoint(reason.to_string())),
        PointClass::EdgeInterior { edge, partner } => match edge.side {
            EdgeSide::Lower => Ok(p.clone()),
            EdgeSide::Upper => Ok(partner),
        },
    }
}

/// True when the point already is its canonical representative.
pub fn is_canonical(p: &SquarePoint) -> Result<bool> {
    match classify_point(p)? {
        PointClass::Interior => Ok(true),
        PointClass::EdgeInterior { edge, .. } => Ok(edge.side == EdgeSide::Lower),
        PointClass::Removed(reason) => Err(Error::RemovedPoint(reason.to_string())),
    }
}

/// Distance to the square boundary, `min(x, 1-x, y, 1-y)`, as an exact
/// interval at the requested stream precision. Defined for interior points.
pub fn boundary_distance(p: &SquarePoint, precision: u32) -> Result<RatInterval> {
    match classify_point(p)? {
        PointClass::Interior => {}
        PointClass::Removed(reason) => return Err(Error::RemovedPoint(reason.to_string())),
        PointClass::EdgeInterior { .. } => return Err(Error::NotInterior),
    }
    let one = crate::rational::Rational::one();
    let x = p.x().enclosure(precision);
    let y = p.y().enclosure(precision);
    let from_left = x.clone();
    let from_right = RatInterval::new(one.sub(x.hi()), one.sub(x.lo()));
    let from_bottom = y.clone();
    let from_top = RatInterval::new(one.sub(y.hi()), one.sub(y.lo()));
    Ok(from_left.min(&from_right).min(&from_bottom).min(&from_top))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use crate::sequence::{SequenceSpec, SparseSequence};

    fn pt(xn: i128, xe: u32, yn: i128, ye: u32) -> SquarePoint {
        SquarePoint::from_parts(xn, xe, yn, ye).unwrap()
    }

    #[test]
    fn spec_classification_examples() {
        // (1/2, 0): shared endpoint of the first two bottom segments
        match classify_point(&pt(1, 1, 0, 0)).unwrap() {
            PointClass::Removed(RemovedReason::SegmentEndpoint {
                family: EdgeFamily::Horizontal,
                side: EdgeSide::Lower,
                index: 1,
            }) => {}
            other => panic!("{other:?}"),
        }
        assert_eq!(
            classify_point(&pt(1, 2, 1, 2)).unwrap(),
            PointClass::Interior
        );
        match classify_point(&pt(1, 2, 0, 0)).unwrap() {
            PointClass::EdgeInterior { edge, partner } => {
                assert_eq!(
                    edge,
                    EdgeId {
                        family: EdgeFamily::Horizontal,
                        k: 0,
                        side: EdgeSide::Lower
                    }
                );
                assert_eq!(partner, pt(3, 2, 1, 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn corners_are_removed() {
        for (x, y, xo, yo) in [
            (0, 0, false, false),
            (1, 0, true, false),
            (0, 1, false, true),
            (1, 1, true, true),
        ] {
            match classify_point(&pt(x, 0, y, 0)).unwrap() {
                PointClass::Removed(RemovedReason::Corner { x_is_one, y_is_one }) => {
                    assert_eq!((x_is_one, y_is_one), (xo, yo));
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn identify_edge_examples() {
        assert_eq!(identify_edge(&pt(1, 2, 0, 0)).unwrap(), pt(3, 2, 1, 0));
        assert_eq!(identify_edge(&pt(5, 3, 0, 0)).unwrap(), pt(3, 3, 1, 0));
        assert_eq!(identify_edge(&pt(0, 0, 1, 2)).unwrap(), pt(1, 0, 3, 2));
        assert!(matches!(
            identify_edge(&pt(1, 2, 1, 2)),
            Err(Error::NotEdgeInterior)
        ));
        assert!(matches!(
            identify_edge(&pt(1, 1, 0, 0)),
            Err(Error::RemovedPoint(_))
        ));
    }

    #[test]
    fn canonical_rep_examples() {
        assert_eq!(canonical_rep(&pt(3, 2, 1, 0)).unwrap(), pt(1, 2, 0, 0));
        assert_eq!(canonical_rep(&pt(1, 2, 1, 2)).unwrap(), pt(1, 2, 1, 2));
        assert_eq!(canonical_rep(&pt(1, 0, 3, 2)).unwrap(), pt(0, 0, 1, 2));
        assert!(canonical_rep(&pt(0, 0, 1, 0)).is_err());
    }

    #[test]
    fn involution_and_isometry_on_edge_grid() {
        for k in 0..=6u32 {
            for family in [EdgeFamily::Horizontal, EdgeFamily::Vertical] {
                for side in [EdgeSide::Lower, EdgeSide::Upper] {
                    let id = EdgeId { family, k, side };
                    let samples: Vec<SquarePoint> = (1..16)
                        .map(|i| point_on_edge(id, &Dyadic::new(i, 4)))
                        .collect();
                    for p in &samples {
                        let q = identify_edge(p).unwrap();
                        assert_eq!(identify_edge(&q).unwrap(), *p, "involution at {id:?}");
                    }
                    // isometry: parameter differences survive the gluing
                    let a = identify_edge(&samples[2]).unwrap();
                    let b = identify_edge(&samples[9]).unwrap();
                    let before = samples[9].exact_pair().unwrap();
                    let after_a = a.exact_pair().unwrap();
                    let after_b = b.exact_pair().unwrap();
                    let orig = samples[2].exact_pair().unwrap();
                    let d_before = before.0.sub(&orig.0).abs().max(before.1.sub(&orig.1).abs());
                    let d_after = after_b
                        .0
                        .sub(&after_a.0)
                        .abs()
                        .max(after_b.1.sub(&after_a.1).abs());
                    assert_eq!(d_before, d_after);
                }
            }
        }
    }

    #[test]
    fn canonical_constant_on_gluing_classes() {
        for k in 0..=5u32 {
            let id = EdgeId {
                family: EdgeFamily::Horizontal,
                k,
                side: EdgeSide::Lower,
            };
            let p = point_on_edge(id, &Dyadic::new(3, 3));
            let q = identify_edge(&p).unwrap();
            assert_eq!(canonical_rep(&q).unwrap(), canonical_rep(&p).unwrap());
            assert_eq!(
                canonical_rep(&canonical_rep(&p).unwrap()).unwrap(),
                canonical_rep(&p).unwrap()
            );
        }
    }

    #[test]
    fn edge_catalog_lengths_and_density() {
        let edges = edge_catalog(12);
        assert_eq!(edges.len(), 4 * 13);
        let mut total_bottom = Dyadic::zero();
        for e in &edges {
            assert_eq!(e.length(), Dyadic::pow2_neg(e.id.k + 1));
            if e.id.family == EdgeFamily::Horizontal && e.id.side == EdgeSide::Lower {
                total_bottom = total_bottom.add(&e.length());
            }
        }
        // the lower segments cover the bottom side up to 2^-13
        assert_eq!(total_bottom, Dyadic::one_minus_pow2_neg(13));
    }

    #[test]
    fn boundary_distance_examples() {
        let cases = [
            (pt(1, 2, 1, 2), Rational::from_i64(1, 4)),
            (pt(1, 1, 1, 3), Rational::from_i64(1, 8)),
            (pt(9, 4, 3, 2), Rational::from_i64(1, 4)),
        ];
        for (p, expected) in cases {
            let bd = boundary_distance(&p, 32).unwrap();
            assert!(bd.is_point());
            assert_eq!(bd.lo(), &expected);
        }
    }

    #[test]
    fn boundary_distance_requires_interior() {
        assert!(matches!(
            boundary_distance(&pt(1, 2, 0, 0), 32),
            Err(Error::NotInterior)
        ));
        assert!(boundary_distance(&pt(1, 1, 0, 0), 32).is_err());
    }

    #[test]
    fn stream_points_classify_interior() {
        let seq = SparseSequence::new(SequenceSpec::Polynomial {
            coefficients: vec![0, 0, 1],
        })
        .unwrap();
        let p = SquarePoint::new(
            Coord::Stream(DigitStream::sparse_complement(seq.clone())),
            Coord::Stream(DigitStream::sparse_sum(seq)),
        )
        .unwrap();
        assert_eq!(classify_point(&p).unwrap(), PointClass::Interior);
    }

    #[test]
    fn non_dyadic_boundary_rejected() {
        let seq = SparseSequence::new(SequenceSpec::Polynomial {
            coefficients: vec![0, 0, 1],
        })
        .unwrap();
        let p = SquarePoint::new(
            Coord::Stream(DigitStream::sparse_sum(seq)),
            Coord::Dyadic(Dyadic::zero()),
        )
        .unwrap();
        assert!(matches!(classify_point(&p), Err(Error::NonDyadicBoundary)));
    }

    #[test]
    fn outside_square_rejected() {
        assert!(SquarePoint::from_parts(-1, 1, 0, 0).is_err());
        assert!(SquarePoint::from_parts(3, 1, 0, 0).is_err());
    }
}
