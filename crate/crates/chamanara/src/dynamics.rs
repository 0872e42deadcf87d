//! The hyperbolic affine automorphism of the surface and its dynamics.
//!
//! On canonical representatives the map contracts x by half and doubles y,
//! cutting at the horizontal midline:
//!
//! ```text
//! (x, y) -> (x/2 + 1/2, 2y)      if y in [0, 1/2)
//! (x, y) -> (x/2,       2y - 1)  if y in [1/2, 1)
//! ```
//!
//! On binary expansions this is a one-digit shuffle: the complement of y's
//! leading digit moves to the front of x, y shifts left. Dyadic coordinates
//! always take the piecewise-affine route, infinite expansions the digit
//! route; the two agree wherever both apply. The coordinate transposition
//! conjugates the map to its inverse and is exposed for exactly that use.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::metric::{bound_between, DistanceBound, Enclosure, Separation, DEFAULT_EDGE_LIMIT};
use crate::rational::{RatInterval, Rational};
use crate::stream::DigitStream;
use crate::surface::{canonical_rep, classify_point, is_canonical, Coord, PointClass, SquarePoint};

/// Names for the maps whose derivatives the library exposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapName {
    Baker,
    BakerInverse,
    BakerPower(i64),
    /// The coordinate swap. Orientation-reversing, so it is a conjugation
    /// utility rather than a member of the affine group under study.
    Transpose,
}

/// An affine (or anti-affine) self-map descriptor with its derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapDescriptor {
    pub name: MapName,
}

impl MapDescriptor {
    pub fn new(name: MapName) -> Self {
        MapDescriptor { name }
    }

    /// The constant derivative matrix, rows major.
    pub fn derivative(&self) -> [[Rational; 2]; 2] {
        let pow = |n: i64| -> Rational {
            if n >= 0 {
                Rational::from(&Dyadic::pow2_neg(n as u32))
            } else {
                Rational::integer(1i64 << (-n).min(62))
            }
        };
        match self.name {
            MapName::Baker => [[pow(1), Rational::zero()], [Rational::zero(), pow(-1)]],
            MapName::BakerInverse => [[pow(-1), Rational::zero()], [Rational::zero(), pow(1)]],
            MapName::BakerPower(n) => [[pow(n), Rational::zero()], [Rational::zero(), pow(-n)]],
            MapName::Transpose => [
                [Rational::zero(), Rational::one()],
                [Rational::one(), Rational::zero()],
            ],
        }
    }

    pub fn determinant(&self) -> Rational {
        let d = self.derivative();
        d[0][0].mul(&d[1][1]).sub(&d[0][1].mul(&d[1][0]))
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.determinant().is_positive()
    }
}

fn require_canonical(p: &SquarePoint) -> Result<()> {
    if is_canonical(p)? {
        Ok(())
    } else {
        Err(Error::NotCanonical)
    }
}

/// Whether y lies in the lower branch `[0, 1/2)`. Exact for dyadics; for
/// infinite expansions the leading digit decides (the value of a
/// non-terminating expansion never equals 1/2 exactly).
fn lower_branch(y: &Coord) -> Result<bool> {
    match y {
        Coord::Dyadic(d) => Ok(*d < Dyadic::half()),
        Coord::Stream(s) => match s.description() {
            crate::stream::Description::Terminating(d) => Ok(*d < Dyadic::half()),
            _ => Ok(s.digit_at(1) == 0),
        },
    }
}

/// One forward step of the automorphism on a canonical representative.
pub fn baker(p: &SquarePoint) -> Result<SquarePoint> {
    require_canonical(p)?;
    let low = lower_branch(p.y())?;

    let x = match p.x() {
        Coord::Dyadic(d) => {
            let half = d.halve();
            Coord::Dyadic(if low { half.add(&Dyadic::half()) } else { half })
        }
        Coord::Stream(s) => {
            let bit = if low { 1 } else { 0 };
            Coord::Stream(DigitStream::prefix_then(&[bit], s.clone()))
        }
    };
    let y = match p.y() {
        Coord::Dyadic(d) => {
            let doubled = d.double();
            Coord::Dyadic(if low {
                doubled
            } else {
                doubled.sub(&Dyadic::one())
            })
        }
        Coord::Stream(s) => Coord::Stream(DigitStream::shift_of(s.clone(), 1)),
    };
    SquarePoint::new(x, y)
}

/// One backward step; pointwise equal to `transpose . baker . transpose`.
pub fn baker_inverse(p: &SquarePoint) -> Result<SquarePoint> {
    require_canonical(p)?;
    let left = match p.x() {
        Coord::Dyadic(d) => *d < Dyadic::half(),
        Coord::Stream(s) => match s.description() {
            crate::stream::Description::Terminating(d) => *d < Dyadic::half(),
            _ => s.digit_at(1) == 0,
        },
    };

    let x = match p.x() {
        Coord::Dyadic(d) => {
            let doubled = d.double();
            Coord::Dyadic(if left {
                doubled
            } else {
                doubled.sub(&Dyadic::one())
            })
        }
        Coord::Stream(s) => Coord::Stream(DigitStream::shift_of(s.clone(), 1)),
    };
    let y = match p.y() {
        Coord::Dyadic(d) => {
            let half = d.halve();
            Coord::Dyadic(if left {
                half.add(&Dyadic::half())
            } else {
                half
            })
        }
        Coord::Stream(s) => {
            let bit = if left { 1 } else { 0 };
            Coord::Stream(DigitStream::prefix_then(&[bit], s.clone()))
        }
    };
    SquarePoint::new(x, y)
}

/// The coordinate swap followed by canonicalization.
pub fn transpose(p: &SquarePoint) -> Result<SquarePoint> {
    if let PointClass::Removed(reason) = classify_point(p)? {
        return Err(Error::RemovedPoint(reason.to_string()));
    }
    let swapped = SquarePoint::new(p.y().clone(), p.x().clone())?;
    canonical_rep(&swapped)
}

/// The digit-level step: `x' = [1 - y_1, x_1, x_2, ...]`, `y' = [y_2, y_3, ...]`.
///
/// Defined only for non-terminating expansions; dyadic values take the
/// piecewise-affine route instead.
pub fn baker_digit_step(x: &DigitStream, y: &DigitStream) -> Result<(DigitStream, DigitStream)> {
    if x.is_terminating() || y.is_terminating() {
        return Err(Error::TerminatingStream);
    }
    let x_out = DigitStream::prefix_then(&[1 - y.digit_at(1)], x.clone());
    let y_out = DigitStream::shift_of(y.clone(), 1);
    Ok((x_out, y_out))
}

/// The orbit segment `map^n(p)` for `n` in `[n_min, n_max]`, all canonical.
pub fn iterate(p: &SquarePoint, n_min: i64, n_max: i64) -> Result<Vec<SquarePoint>> {
    if n_min > 0 || n_max < 0 {
        return Err(Error::ParameterRange {
            name: "window",
            value: n_min.max(n_max),
            min: 0,
            max: 0,
        });
    }
    let base = canonical_rep(p)?;
    let mut backward = Vec::new();
    let mut cur = base.clone();
    for _ in 0..(-n_min) {
        cur = baker_inverse(&cur)?;
        backward.push(cur.clone());
    }
    backward.reverse();
    let mut orbit = backward;
    orbit.push(base.clone());
    let mut cur = base;
    for _ in 0..n_max {
        cur = baker(&cur)?;
        orbit.push(cur.clone());
    }
    Ok(orbit)
}

/// Largest supported period for the fixed-point enumeration.
pub const PERIODIC_CAP: u32 = 20;

/// A fixed point of the n-th power of the automorphism.
///
/// Coordinates are exact rationals over `2^n - 1`; both expansions are
/// purely periodic and tied by reversal-complement of the defining word.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicPoint {
    x: Rational,
    y: Rational,
    period: u32,
    y_word: Vec<u8>,
}

impl PeriodicPoint {
    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn y_word(&self) -> &[u8] {
        &self.y_word
    }

    /// The word whose repetition expands x: the reversed complement of y's.
    pub fn x_word(&self) -> Vec<u8> {
        self.y_word.iter().rev().map(|&b| 1 - b).collect()
    }

    /// The point as a stream-coordinate square point.
    pub fn square_point(&self) -> SquarePoint {
        let x = DigitStream::periodic(&self.x_word()).expect("mixed word");
        let y = DigitStream::periodic(&self.y_word).expect("mixed word");
        SquarePoint::new(Coord::Stream(x), Coord::Stream(y)).expect("interior point")
    }

    /// The n points of the cycle, starting here.
    pub fn orbit(&self) -> Result<Vec<SquarePoint>> {
        let mut out = Vec::with_capacity(self.period as usize);
        let mut cur = self.square_point();
        for _ in 0..self.period {
            out.push(cur.clone());
            cur = baker(&cur)?;
        }
        Ok(out)
    }

    /// Exact check that the n-th power fixes the point.
    pub fn verify_fixed(&self) -> Result<bool> {
        let start = self.square_point();
        let mut cur = start.clone();
        for _ in 0..self.period {
            cur = baker(&cur)?;
        }
        Ok(cur == start)
    }

    pub fn enclosure(&self) -> Enclosure {
        Enclosure {
            x: RatInterval::point(self.x.clone()),
            y: RatInterval::point(self.y.clone()),
        }
    }
}

/// All fixed points of the n-th power in the open square: one for every
/// n-bit word except all-zeros and all-ones, hence `2^n - 2` points.
///
/// The word w gives `y = int(w) / (2^n - 1)` (w repeated as an expansion)
/// and x repeats the reversed complement of w. The excluded constant words
/// correspond to the removed corner limits, not surface points.
pub fn periodic_points(n: u32) -> Result<Vec<PeriodicPoint>> {
    if !(1..=PERIODIC_CAP).contains(&n) {
        return Err(Error::ParameterRange {
            name: "period",
            value: n as i64,
            min: 1,
            max: PERIODIC_CAP as i64,
        });
    }
    let den = (1u64 << n) - 1;
    let mut out = Vec::with_capacity(den.saturating_sub(1) as usize);
    for w in 1..den {
        let y_word: Vec<u8> = (0..n).rev().map(|i| ((w >> i) & 1) as u8).collect();
        let x_word: Vec<u8> = y_word.iter().rev().map(|&b| 1 - b).collect();
        let x_int = x_word.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        out.push(PeriodicPoint {
            x: Rational::from_i64(x_int as i64, den as i64),
            y: Rational::from_i64(w as i64, den as i64),
            period: n,
            y_word,
        });
    }
    Ok(out)
}

/// Pairwise isolation certificate for a family of periodic points.
#[derive(Clone, Debug)]
pub struct IsolationReport {
    pub min_separation: Separation,
    pub inconclusive_pairs: Vec<(usize, usize)>,
}

/// Minimum certified pairwise distance bound at the given depth. Returns
/// the infinite sentinel for fewer than two points and flags any pair whose
/// lower bound collapses to zero.
pub fn verify_isolation(points: &[PeriodicPoint], depth: u32) -> IsolationReport {
    let enclosures: Vec<Enclosure> = points.iter().map(|p| p.enclosure()).collect();
    let mut min = Separation::Infinite;
    let mut inconclusive = Vec::new();
    for i in 0..enclosures.len() {
        for j in (i + 1)..enclosures.len() {
            let b: DistanceBound =
                bound_between(&enclosures[i], &enclosures[j], depth, DEFAULT_EDGE_LIMIT);
            if !b.lower.is_positive() {
                inconclusive.push((i, j));
            }
            min = min.merge_min(b);
        }
    }
    IsolationReport {
        min_separation: min,
        inconclusive_pairs: inconclusive,
    }
}
