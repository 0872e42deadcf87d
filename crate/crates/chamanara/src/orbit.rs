//! The discrete-orbit pipeline: special points with sparse expansions, their
//! exact orbits in closed form, certified pairwise separation, accumulation
//! analysis against the removed-point families, the finite stabilizer proxy,
//! and the punctured-surface description.
//!
//! A special point pairs `x = 1 - sum 2^{-s_n}` (sparse zeros) with
//! `y = sum 2^{-t_n}` (sparse ones), both sequences having divergent
//! increments. After n forward steps the expansion is, in closed form,
//!
//! ```text
//! x^(n) = [1-y_n, 1-y_{n-1}, ..., 1-y_1, x_1, x_2, ...]
//! y^(n) = [y_{n+1}, y_{n+2}, ...]
//! ```
//!
//! and the backward orbit is the same formula through the coordinate swap.
//! Orbit points crowd the corner (1, 0): digitwise limits keep at most one
//! zero among the x digits and one among y's ones, so every accumulation
//! point is a removed boundary point `(1 - 2^-j, 0)` or `(1, 2^-j)` with
//! `j` in `N ∪ {∞}`.

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::dynamics::{baker_digit_step, MapDescriptor, MapName};
use crate::error::{Error, Result};
use crate::metric::{bound_between, Enclosure, Separation, DEFAULT_EDGE_LIMIT};
use crate::rational::{RatInterval, Rational};
use crate::sequence::SparseSequence;
use crate::stream::{Description, DigitStream};
use crate::surface::{Coord, SquarePoint};

/// A point of the invariant product set, built from two sparse sequences.
#[derive(Clone, Debug)]
pub struct SpecialPoint {
    x_seq: Option<SparseSequence>,
    y_seq: Option<SparseSequence>,
    x: DigitStream,
    y: DigitStream,
}

impl SpecialPoint {
    pub fn x(&self) -> &DigitStream {
        &self.x
    }

    pub fn y(&self) -> &DigitStream {
        &self.y
    }

    pub fn x_seq(&self) -> Option<&SparseSequence> {
        self.x_seq.as_ref()
    }

    pub fn y_seq(&self) -> Option<&SparseSequence> {
        self.y_seq.as_ref()
    }

    pub fn point(&self) -> SquarePoint {
        SquarePoint::new(Coord::Stream(self.x.clone()), Coord::Stream(self.y.clone()))
            .expect("special points lie in the open square")
    }

    /// Wraps raw streams without divergence checks. Exists for negative
    /// paths (e.g. feeding a periodic point through the stabilizer proxy);
    /// orbits of such points need not be discrete.
    pub fn from_streams_unchecked(x: DigitStream, y: DigitStream) -> Self {
        SpecialPoint {
            x_seq: None,
            y_seq: None,
            x,
            y,
        }
    }
}

/// Builds the special point `(1 - sum 2^{-s_n}, sum 2^{-t_n})` after
/// spot-checking both divergence witnesses, and verifies that the digit
/// step keeps the pair sparse-describable.
pub fn make_special_point(x_seq: SparseSequence, y_seq: SparseSequence) -> Result<SpecialPoint> {
    x_seq.check_divergence_defaults()?;
    y_seq.check_divergence_defaults()?;
    let x = DigitStream::sparse_complement(x_seq.clone());
    let y = DigitStream::sparse_sum(y_seq.clone());

    // both coordinates are strictly inside (0, 1)
    for s in [&x, &y] {
        s.next_one_after(0)?;
        s.next_zero_after(0)?;
    }

    // invariance hook: one digit step stays a prefixed/shifted sparse pair
    let (x1, y1) = baker_digit_step(&x, &y)?;
    debug_assert!(matches!(x1.description(), Description::PrefixThen(..)));
    debug_assert!(matches!(y1.description(), Description::ShiftOf(..)));

    Ok(SpecialPoint {
        x_seq: Some(x_seq),
        y_seq: Some(y_seq),
        x,
        y,
    })
}

/// Digit prefixes of one orbit point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPointDigits {
    pub index: i64,
    pub x_digits: Vec<u8>,
    pub y_digits: Vec<u8>,
}

/// Closed-form digits of the orbit point at index `n` (any sign), to `m`
/// places, without stacking n stream wrappers.
pub fn orbit_digits(zeta: &SpecialPoint, n: i64, m: u64) -> OrbitPointDigits {
    let x = &zeta.x;
    let y = &zeta.y;
    let (x_digits, y_digits) = if n >= 0 {
        let n = n as u64;
        let xd = (1..=m)
            .map(|i| {
                if i <= n {
                    1 - y.digit_at(n - i + 1)
                } else {
                    x.digit_at(i - n)
                }
            })
            .collect();
        let yd = (1..=m).map(|i| y.digit_at(n + i)).collect();
        (xd, yd)
    } else {
        let k = (-n) as u64;
        let xd = (1..=m).map(|i| x.digit_at(k + i)).collect();
        let yd = (1..=m)
            .map(|i| {
                if i <= k {
                    1 - x.digit_at(k - i + 1)
                } else {
                    y.digit_at(i - k)
                }
            })
            .collect();
        (xd, yd)
    };
    OrbitPointDigits {
        index: n,
        x_digits,
        y_digits,
    }
}

/// The orbit point at index `n >= 0` as a pair of streams: an explicit
/// prefix of reversed complemented y digits in front of x, and y shifted.
pub fn forward_orbit_streams(zeta: &SpecialPoint, n: u64) -> (DigitStream, DigitStream) {
    let prefix: Vec<u8> = (0..n).map(|i| 1 - zeta.y.digit_at(n - i)).collect();
    (
        DigitStream::prefix_then(&prefix, zeta.x.clone()),
        DigitStream::shift_of(zeta.y.clone(), n),
    )
}

/// The orbit point at any index as streams; negative indices go through the
/// coordinate swap, which conjugates the map to its inverse.
pub fn orbit_streams(zeta: &SpecialPoint, n: i64) -> (DigitStream, DigitStream) {
    if n >= 0 {
        forward_orbit_streams(zeta, n as u64)
    } else {
        let swapped = SpecialPoint::from_streams_unchecked(zeta.y.clone(), zeta.x.clone());
        let (sx, sy) = forward_orbit_streams(&swapped, (-n) as u64);
        (sy, sx)
    }
}

fn enclosure_of_digits(d: &OrbitPointDigits, m: u32) -> Enclosure {
    Enclosure {
        x: RatInterval::from_truncation(&Dyadic::from_bits(&d.x_digits, m), m),
        y: RatInterval::from_truncation(&Dyadic::from_bits(&d.y_digits, m), m),
    }
}

/// Certified pairwise-separation report over an orbit window.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub window: (i64, i64),
    pub precision: u32,
    pub depth: u32,
    pub points: Vec<OrbitPointDigits>,
    pub min_separation: Separation,
    pub inconclusive_pairs: Vec<(i64, i64)>,
}

/// Evaluates every orbit point in the window to `precision` digits and
/// bounds all pairwise surface distances from below. Pairs whose bound
/// collapses to zero are reported as inconclusive, not failed.
pub fn certified_separation(
    zeta: &SpecialPoint,
    n_min: i64,
    n_max: i64,
    precision: u32,
    depth: u32,
) -> Result<OrbitReport> {
    if n_min > n_max {
        return Err(Error::ParameterRange {
            name: "window",
            value: n_min,
            min: i64::MIN,
            max: n_max,
        });
    }
    let points: Vec<OrbitPointDigits> = (n_min..=n_max)
        .map(|n| orbit_digits(zeta, n, precision as u64))
        .collect();
    let enclosures: Vec<Enclosure> = points
        .iter()
        .map(|d| enclosure_of_digits(d, precision))
        .collect();

    let mut min = Separation::Infinite;
    let mut inconclusive = Vec::new();
    for i in 0..enclosures.len() {
        for j in (i + 1)..enclosures.len() {
            let b = bound_between(&enclosures[i], &enclosures[j], depth, DEFAULT_EDGE_LIMIT);
            if !b.lower.is_positive() {
                inconclusive.push((points[i].index, points[j].index));
            }
            min = min.merge_min(b);
        }
    }
    Ok(OrbitReport {
        window: (n_min, n_max),
        precision,
        depth,
        points,
        min_separation: min,
        inconclusive_pairs: inconclusive,
    })
}

/// The four boundary families that can absorb orbit limits, each indexed by
/// `j` with `None` standing for infinity (the corner).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitFamily {
    /// `(1 - 2^-j, 0)`; j = ∞ gives the corner (1, 0).
    BottomEdge,
    /// `(1, 2^-j)`; j = ∞ gives the corner (1, 0).
    RightEdge,
    /// `(2^-j, 1)`; j = ∞ gives the corner (0, 1).
    TopEdge,
    /// `(0, 1 - 2^-j)`; j = ∞ gives the corner (0, 1).
    LeftEdge,
}

/// A removed-point limit candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitCandidate {
    pub family: LimitFamily,
    /// `None` encodes j = ∞ (2^-∞ = 0).
    pub j: Option<u32>,
}

impl LimitCandidate {
    pub fn point(&self) -> (Dyadic, Dyadic) {
        let (one, zero) = (Dyadic::one(), Dyadic::zero());
        let small = |j: Option<u32>| j.map(Dyadic::pow2_neg).unwrap_or_else(Dyadic::zero);
        let large = |j: Option<u32>| Dyadic::one().sub(&small(j));
        match self.family {
            LimitFamily::BottomEdge => (large(self.j), zero),
            LimitFamily::RightEdge => (one, small(self.j)),
            LimitFamily::TopEdge => (small(self.j), one),
            LimitFamily::LeftEdge => (zero, large(self.j)),
        }
    }

    pub fn square_point(&self) -> SquarePoint {
        let (x, y) = self.point();
        SquarePoint::dyadic(x, y).expect("candidates lie on the boundary")
    }

    /// Limit expansion digit of the x coordinate at position `i`.
    fn x_digit(&self, i: u64) -> u8 {
        match self.family {
            // mostly ones, a single zero at j
            LimitFamily::BottomEdge => u8::from(Some(i) != self.j.map(u64::from)),
            LimitFamily::RightEdge => 1,
            // mostly zeros, a single one at j
            LimitFamily::TopEdge => u8::from(Some(i) == self.j.map(u64::from)),
            LimitFamily::LeftEdge => 0,
        }
    }

    fn y_digit(&self, i: u64) -> u8 {
        match self.family {
            LimitFamily::BottomEdge => 0,
            LimitFamily::RightEdge => u8::from(Some(i) == self.j.map(u64::from)),
            LimitFamily::TopEdge => 1,
            LimitFamily::LeftEdge => u8::from(Some(i) != self.j.map(u64::from)),
        }
    }

    /// Whether the K statistic counts (zeros in x, ones in y) as in the
    /// standard orientation, or the transposed pair.
    fn standard_orientation(&self) -> bool {
        matches!(
            self.family,
            LimitFamily::BottomEdge | LimitFamily::RightEdge
        )
    }
}

/// One cluster of orbit indices around a common removed-point candidate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cluster {
    pub members: Vec<i64>,
    pub candidate: LimitCandidate,
    /// Exact upper bound on the sup-distance from any member to the candidate.
    pub residual_num: String,
    pub residual_den: String,
    /// Zeros among the limit x digits plus ones among the limit y digits,
    /// over the stabilized common prefix (counts transposed for the
    /// mirror-image families).
    pub k_statistic: u64,
}

/// Accumulation analysis of a forward orbit window.
#[derive(Clone, Debug)]
pub struct AccumulationReport {
    pub n_max: i64,
    pub tol_exp: u32,
    pub clusters: Vec<(Cluster, Rational)>,
    pub unclustered: Vec<i64>,
    /// Clusters whose residual exceeded the tolerance: a finite-horizon
    /// artifact or a bug, kept distinct from healthy clusters.
    pub flagged: Vec<usize>,
}

fn candidate_set(tol_exp: u32) -> Vec<LimitCandidate> {
    let j_max = tol_exp + 2;
    let mut out = Vec::new();
    // smaller j first, so nearest-candidate ties break toward smaller j
    for j in 1..=j_max {
        for family in [
            LimitFamily::BottomEdge,
            LimitFamily::RightEdge,
            LimitFamily::TopEdge,
            LimitFamily::LeftEdge,
        ] {
            out.push(LimitCandidate { family, j: Some(j) });
        }
    }
    out.push(LimitCandidate {
        family: LimitFamily::BottomEdge,
        j: None,
    });
    out.push(LimitCandidate {
        family: LimitFamily::TopEdge,
        j: None,
    });
    out
}

/// Sup-distance interval from an enclosure to an exact point.
fn sup_distance(e: &Enclosure, p: &(Dyadic, Dyadic)) -> RatInterval {
    let px = RatInterval::point(Rational::from(&p.0));
    let py = RatInterval::point(Rational::from(&p.1));
    e.x.abs_diff(&px).max(&e.y.abs_diff(&py))
}

/// Greedily clusters forward-orbit points around the nearest removed-point
/// candidate within `2^-tol_exp`, reporting the residual and the K statistic
/// of each cluster's stabilized digit prefix.
pub fn accumulation_clusters(
    zeta: &SpecialPoint,
    n_max: i64,
    tol_exp: u32,
) -> Result<AccumulationReport> {
    if tol_exp < 4 {
        return Err(Error::ParameterRange {
            name: "tol_exp",
            value: tol_exp as i64,
            min: 4,
            max: 120,
        });
    }
    if n_max < 0 {
        return Err(Error::ParameterRange {
            name: "n_max",
            value: n_max,
            min: 0,
            max: i64::MAX,
        });
    }
    let tol = Rational::from(&Dyadic::pow2_neg(tol_exp));
    let precision = tol_exp + 16;
    let candidates = candidate_set(tol_exp);

    let points: Vec<OrbitPointDigits> = (0..=n_max)
        .map(|n| orbit_digits(zeta, n, precision as u64))
        .collect();

    let mut assignment: Vec<Option<usize>> = Vec::with_capacity(points.len());
    for d in &points {
        let e = enclosure_of_digits(d, precision);
        let mut best: Option<(usize, Rational)> = None;
        for (idx, c) in candidates.iter().enumerate() {
            let dist = sup_distance(&e, &c.point());
            if dist.certainly_le(&tol) {
                let hi = dist.hi().clone();
                match &best {
                    Some((_, cur)) if *cur <= hi => {}
                    _ => best = Some((idx, hi)),
                }
            }
        }
        assignment.push(best.map(|(i, _)| i));
    }

    let mut clusters: Vec<(Cluster, Rational)> = Vec::new();
    let mut unclustered = Vec::new();
    let mut order: Vec<usize> = Vec::new();
    for (pos, d) in points.iter().enumerate() {
        match assignment[pos] {
            None => unclustered.push(d.index),
            Some(cidx) => {
                let slot = order.iter().position(|&c| c == cidx);
                let cluster_pos = match slot {
                    Some(p) => p,
                    None => {
                        order.push(cidx);
                        clusters.push((
                            Cluster {
                                members: Vec::new(),
                                candidate: candidates[cidx],
                                residual_num: String::new(),
                                residual_den: String::new(),
                                k_statistic: 0,
                            },
                            Rational::zero(),
                        ));
                        clusters.len() - 1
                    }
                };
                clusters[cluster_pos].0.members.push(d.index);
                let e = enclosure_of_digits(d, precision);
                let dist = sup_distance(&e, &candidates[cidx].point());
                let hi = dist.hi().clone();
                if hi > clusters[cluster_pos].1 {
                    clusters[cluster_pos].1 = hi;
                }
            }
        }
    }

    let mut flagged = Vec::new();
    for (pos, (cluster, residual)) in clusters.iter_mut().enumerate() {
        cluster.residual_num = residual.numerator().to_string();
        cluster.residual_den = residual.denominator().to_string();
        cluster.k_statistic = k_statistic(&points, cluster, precision as u64);
        if *residual > tol {
            flagged.push(pos);
        }
    }

    Ok(AccumulationReport {
        n_max,
        tol_exp,
        clusters,
        unclustered,
        flagged,
    })
}

/// K over the stabilized prefix: digits are compared member-by-member
/// against the candidate's limit expansion, and the count stops at the
/// first divergence in each coordinate.
fn k_statistic(points: &[OrbitPointDigits], cluster: &Cluster, precision: u64) -> u64 {
    let members: Vec<&OrbitPointDigits> = points
        .iter()
        .filter(|d| cluster.members.contains(&d.index))
        .collect();
    let c = &cluster.candidate;

    let stable_len =
        |get: &dyn Fn(&OrbitPointDigits) -> &Vec<u8>, limit: &dyn Fn(u64) -> u8| -> u64 {
            let mut len = 0;
            'outer: for i in 1..=precision {
                for m in &members {
                    if get(m)[i as usize - 1] != limit(i) {
                        break 'outer;
                    }
                }
                len = i;
            }
            len
        };

    let lx = stable_len(&|d| &d.x_digits, &|i| c.x_digit(i));
    let ly = stable_len(&|d| &d.y_digits, &|i| c.y_digit(i));

    let (x_counted, y_counted) = if c.standard_orientation() {
        (0u8, 1u8)
    } else {
        (1u8, 0u8)
    };
    let kx = (1..=lx).filter(|&i| c.x_digit(i) == x_counted).count() as u64;
    let ky = (1..=ly).filter(|&i| c.y_digit(i) == y_counted).count() as u64;
    kx + ky
}

/// A non-periodicity witness for one candidate period.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodWitness {
    pub period: u32,
    /// Position i with `y_i != y_{i+period}`.
    pub position: u64,
}

/// Certificate that the point is fixed by no nontrivial power up to the
/// checked bound.
#[derive(Clone, Debug)]
pub struct StabilizerCertificate {
    pub checked: u32,
    pub witnesses: Vec<PeriodWitness>,
}

fn period_scan_horizon(y: &DigitStream, period: u64) -> u64 {
    match y.description() {
        Description::SparseSum(seq) | Description::SparseComplement(seq) => {
            match seq.witness_index(period + 1) {
                Some(n) => seq.value(n).saturating_add(period + 4),
                None => 1 << 16,
            }
        }
        Description::Periodic(w) => w.len() as u64 + period + 1,
        Description::Terminating(d) => d.exponent() as u64 + period + 1,
        Description::PrefixThen(p, tail) => p.len() as u64 + period_scan_horizon(tail, period),
        Description::ShiftOf(s, _) => period_scan_horizon(s, period),
    }
}

/// Certifies that no power `0 < |n| <= limit` of the map fixes the point:
/// a fixed point of the n-th power would force y's expansion to be purely
/// periodic with period n, and a digit witness refutes each candidate
/// period. Fails with the offending period when the expansion really is
/// periodic (only possible for bypassed rational inputs).
pub fn stabilizer_proxy_check(zeta: &SpecialPoint, limit: u32) -> Result<StabilizerCertificate> {
    if limit < 1 {
        return Err(Error::ParameterRange {
            name: "limit",
            value: limit as i64,
            min: 1,
            max: 4096,
        });
    }
    let y = &zeta.y;
    let mut witnesses = Vec::with_capacity(limit as usize);
    for p in 1..=limit {
        let horizon = period_scan_horizon(y, p as u64);
        let witness = (1..=horizon).find(|&i| y.digit_at(i) != y.digit_at(i + p as u64));
        match witness {
            Some(position) => witnesses.push(PeriodWitness {
                period: p,
                position,
            }),
            None => return Err(Error::PeriodicExpansion { period: p }),
        }
    }
    Ok(StabilizerCertificate {
        checked: limit,
        witnesses,
    })
}

/// One puncture of the constructed surface.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Puncture {
    pub index: i64,
    pub x_digits: Vec<u8>,
    pub y_digits: Vec<u8>,
}

/// The surface minus one discrete orbit, with per-puncture safety radii and
/// the generating automorphism.
#[derive(Clone, Debug)]
pub struct PuncturedSurfaceDescription {
    pub half_window: u32,
    pub precision: u32,
    pub punctures: Vec<Puncture>,
    /// Half the certified minimum pairwise separation.
    pub radius: Rational,
    pub generator: MapDescriptor,
    /// The generator carries the puncture list onto itself shifted by one
    /// index; checked digit-exactly over the window.
    pub shift_invariance: bool,
}

/// Assembles the punctured surface: requires the stabilizer proxy and a
/// conclusive separation certificate over `[-half_window, half_window]`.
pub fn build_punctured_surface(
    zeta: &SpecialPoint,
    half_window: u32,
    precision: u32,
    depth: u32,
) -> Result<PuncturedSurfaceDescription> {
    if half_window < 1 {
        return Err(Error::ParameterRange {
            name: "half_window",
            value: 0,
            min: 1,
            max: 512,
        });
    }
    stabilizer_proxy_check(zeta, half_window)?;
    let n = half_window as i64;
    let report = certified_separation(zeta, -n, n, precision, depth)?;
    if !report.inconclusive_pairs.is_empty() {
        return Err(Error::Inconclusive {
            count: report.inconclusive_pairs.len(),
        });
    }
    let radius = match &report.min_separation {
        Separation::Infinite => Rational::one(),
        Separation::Bound(b) => {
            if !b.lower.is_positive() {
                return Err(Error::Inconclusive { count: 1 });
            }
            b.lower.halve()
        }
    };

    let mut shift_invariance = true;
    for w in report.points.windows(2) {
        let (cur, next) = (&w[0], &w[1]);
        // the digit step: next x = (1 - y_1) then cur x, next y = cur y shifted
        let expected_first = 1 - cur.y_digits[0];
        if next.x_digits[0] != expected_first
            || next.x_digits[1..] != cur.x_digits[..cur.x_digits.len() - 1]
            || next.y_digits[..next.y_digits.len() - 1] != cur.y_digits[1..]
        {
            shift_invariance = false;
        }
    }

    Ok(PuncturedSurfaceDescription {
        half_window,
        precision,
        punctures: report
            .points
            .iter()
            .map(|p| Puncture {
                index: p.index,
                x_digits: p.x_digits.clone(),
                y_digits: p.y_digits.clone(),
            })
            .collect(),
        radius,
        generator: MapDescriptor::new(MapName::Baker),
        shift_invariance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{SequenceSpec, SparseSequence};
    use crate::surface::{classify_point, PointClass};

    fn squares() -> SparseSequence {
        SparseSequence::new(SequenceSpec::Polynomial {
            coefficients: vec![0, 0, 1],
        })
        .unwrap()
    }

    fn pow2m1() -> SparseSequence {
        SparseSequence::new(SequenceSpec::Exponential {
            base: 2,
            offset: -1,
        })
        .unwrap()
    }

    fn zeta_squares() -> SpecialPoint {
        make_special_point(squares(), squares()).unwrap()
    }

    fn zeta_exp() -> SpecialPoint {
        make_special_point(pow2m1(), pow2m1()).unwrap()
    }

    #[test]
    fn special_point_digit_truncations() {
        let z = zeta_squares();
        // ten-digit truncations 0.0110111101 and 0.1001000010
        assert_eq!(z.x().digits(10), vec![0, 1, 1, 0, 1, 1, 1, 1, 0, 1]);
        assert_eq!(z.y().digits(10), vec![1, 0, 0, 1, 0, 0, 0, 0, 1, 0]);
        assert_eq!(z.x().to_dyadic_approx(10), Dyadic::new(0b0110111101, 10));
        assert_eq!(z.y().to_dyadic_approx(10), Dyadic::new(0b1001000010, 10));
    }

    #[test]
    fn exponential_family_y_digits() {
        let z = zeta_exp();
        assert_eq!(z.y().digits(8), vec![1, 0, 1, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn constant_increment_rejected() {
        let lin = SparseSequence::new(SequenceSpec::Polynomial {
            coefficients: vec![0, 2],
        })
        .unwrap();
        assert!(make_special_point(lin.clone(), lin).is_err());
    }

    #[test]
    fn orbit_digits_identity_at_zero() {
        let z = zeta_exp();
        let d = orbit_digits(&z, 0, 16);
        assert_eq!(d.x_digits, z.x().digits(16));
        assert_eq!(d.y_digits, z.y().digits(16));
    }

    #[test]
    fn orbit_digits_forward_example() {
        // y = 1,0,1,0,0,0,1,...; after three steps y starts at position 4
        // and x gains the reversed complement of 1,0,1
        let z = zeta_exp();
        let d = orbit_digits(&z, 3, 8);
        assert_eq!(d.y_digits[..4], [0, 0, 0, 1]);
        assert_eq!(d.x_digits[..3], [0, 1, 0]);
        assert_eq!(d.x_digits[3..8], z.x().digits(5)[..]);
    }

    #[test]
    fn closed_form_matches_stepwise_digit_rule() {
        let z = zeta_squares();
        let mut x = z.x().clone();
        let mut y = z.y().clone();
        for n in 1..=64i64 {
            let (nx, ny) = baker_digit_step(&x, &y).unwrap();
            x = nx;
            y = ny;
            if n % 16 == 0 || n <= 4 {
                let closed = orbit_digits(&z, n, 96);
                assert_eq!(closed.x_digits, x.digits(96), "x at n = {n}");
                assert_eq!(closed.y_digits, y.digits(96), "y at n = {n}");
            }
        }
    }

    #[test]
    fn backward_orbit_via_transpose_conjugation() {
        let z = zeta_squares();
        for n in 1..=32i64 {
            // direct closed form for negative indices
            let direct = orbit_digits(&z, -n, 64);
            // swap, run forward, swap back
            let (sx, sy) = orbit_streams(&z, -n);
            assert_eq!(direct.x_digits, sx.digits(64), "x at n = -{n}");
            assert_eq!(direct.y_digits, sy.digits(64), "y at n = -{n}");
        }
    }

    #[test]
    fn orbit_streams_match_digit_arrays() {
        let z = zeta_exp();
        for n in [-7i64, -1, 0, 1, 5, 20] {
            let (sx, sy) = orbit_streams(&z, n);
            let d = orbit_digits(&z, n, 48);
            assert_eq!(sx.digits(48), d.x_digits);
            assert_eq!(sy.digits(48), d.y_digits);
        }
    }

    #[test]
    fn separation_small_window() {
        let z = zeta_exp();
        let r = certified_separation(&z, -5, 5, 64, 1).unwrap();
        assert_eq!(r.points.len(), 11);
        assert!(r.inconclusive_pairs.is_empty());
        assert!(r.min_separation.is_positive());
        if let Separation::Bound(b) = &r.min_separation {
            assert!(b.lower <= *b.upper.as_ref().unwrap());
        }
    }

    #[test]
    fn separation_sentinel_for_single_point() {
        let z = zeta_exp();
        let r = certified_separation(&z, 3, 3, 64, 1).unwrap();
        assert_eq!(r.min_separation, Separation::Infinite);
        assert!(r.inconclusive_pairs.is_empty());
    }

    #[test]
    fn separation_monotone_in_window() {
        let z = zeta_squares();
        let mut prev: Option<Rational> = None;
        for half in [5i64, 10, 20] {
            let r = certified_separation(&z, -half, half, 96, 1).unwrap();
            let lower = r.min_separation.lower().unwrap().clone();
            if let Some(p) = prev {
                assert!(lower <= p, "separation must not grow with the window");
            }
            prev = Some(lower);
        }
    }

    #[test]
    fn low_precision_is_inconclusive_not_wrong() {
        let z = zeta_exp();
        let r = certified_separation(&z, 30, 40, 4, 1).unwrap();
        assert!(!r.inconclusive_pairs.is_empty());
    }

    #[test]
    fn accumulation_candidates_are_removed_points() {
        let z = zeta_exp();
        let r = accumulation_clusters(&z, 120, 16).unwrap();
        assert!(!r.clusters.is_empty());
        assert!(r.flagged.is_empty());
        for (c, _) in &r.clusters {
            assert!(matches!(
                c.candidate.family,
                LimitFamily::BottomEdge | LimitFamily::RightEdge
            ));
            match classify_point(&c.candidate.square_point()).unwrap() {
                PointClass::Removed(_) => {}
                other => panic!("candidate classified {other:?}"),
            }
            assert!(
                c.k_statistic <= 1,
                "K = {} for {:?}",
                c.k_statistic,
                c.candidate
            );
        }
    }

    #[test]
    fn accumulation_finds_the_right_edge_family() {
        // indices just below an exponent land near (1, 1/2)
        let z = zeta_exp();
        let r = accumulation_clusters(&z, 200, 20).unwrap();
        let right: Vec<&Cluster> = r
            .clusters
            .iter()
            .map(|(c, _)| c)
            .filter(|c| c.candidate.family == LimitFamily::RightEdge)
            .collect();
        assert!(
            right
                .iter()
                .any(|c| c.candidate.j == Some(1) && c.members.len() >= 2),
            "expected a multi-member cluster at (1, 1/2), got {right:?}"
        );
        for c in right {
            assert!(c.k_statistic <= 1);
        }
    }

    #[test]
    fn stabilizer_proxy_passes_for_special_points() {
        for z in [zeta_squares(), zeta_exp()] {
            let cert = stabilizer_proxy_check(&z, 10).unwrap();
            assert_eq!(cert.witnesses.len(), 10);
            for w in &cert.witnesses {
                // the recorded position really is a mismatch
                assert_ne!(
                    z.y().digit_at(w.position),
                    z.y().digit_at(w.position + w.period as u64)
                );
            }
        }
    }

    #[test]
    fn stabilizer_proxy_rejects_periodic_bypass() {
        let third = DigitStream::from_rational(1, 3).unwrap();
        let fake = SpecialPoint::from_streams_unchecked(third.clone(), third);
        match stabilizer_proxy_check(&fake, 2) {
            Err(Error::PeriodicExpansion { period: 2 }) => {}
            other => panic!("expected period-2 rejection, got {other:?}"),
        }
        assert!(matches!(
            stabilizer_proxy_check(&zeta_exp(), 0),
            Err(Error::ParameterRange { .. })
        ));
    }

    #[test]
    fn punctured_surface_small() {
        let z = zeta_exp();
        let d = build_punctured_surface(&z, 10, 96, 1).unwrap();
        assert_eq!(d.punctures.len(), 21);
        assert!(d.radius.is_positive());
        assert!(d.shift_invariance);
        assert_eq!(d.generator.name, MapName::Baker);
    }

    #[test]
    fn punctured_surface_rejects_periodic_bypass() {
        let third = DigitStream::from_rational(1, 3).unwrap();
        let fake = SpecialPoint::from_streams_unchecked(third.clone(), third);
        assert!(build_punctured_surface(&fake, 10, 64, 1).is_err());
    }

    #[test]
    fn gap_growth_along_y() {
        // distances between consecutive ones in y grow without bound on
        // tested horizons
        for z in [zeta_squares(), zeta_exp()] {
            let seq = z.y_seq().unwrap();
            for threshold in [4u64, 8, 16, 24] {
                let witness = seq.witness_index(threshold).unwrap();
                assert!(seq.verify_divergence(threshold, witness + 32).is_ok());
            }
        }
    }
}
