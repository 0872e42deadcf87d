//! JSON and CSV wire formats for reports.
//!
//! Exact values serialize without loss: dyadics as `{num, den_exp}` with the
//! numerator in decimal, general rationals as `{num, den}`, digit dumps as
//! ASCII strings capped at the stated precision with an explicit `truncated`
//! marker. Emission is deterministic: identical inputs produce identical
//! bytes.

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::dynamics::{MapDescriptor, PeriodicPoint};
use crate::metric::Separation;
use crate::orbit::{
    AccumulationReport, Cluster, OrbitPointDigits, OrbitReport, PuncturedSurfaceDescription,
};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicJson {
    pub num: String,
    pub den_exp: u32,
}

impl From<&Dyadic> for DyadicJson {
    fn from(d: &Dyadic) -> Self {
        DyadicJson {
            num: d.numerator().to_string(),
            den_exp: d.exponent(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson {
            num: r.numerator().to_string(),
            den: r.denominator().to_string(),
        }
    }
}

/// A digit dump capped at `precision` places; `truncated` records that the
/// expansion continues past the cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitsJson {
    pub digits: String,
    pub precision: u64,
    pub truncated: bool,
}

impl DigitsJson {
    pub fn from_bits(bits: &[u8], truncated: bool) -> Self {
        DigitsJson {
            digits: bits
                .iter()
                .map(|&b| if b == 1 { '1' } else { '0' })
                .collect(),
            precision: bits.len() as u64,
            truncated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationJson {
    pub infinite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<RationalJson>,
    pub depth: u32,
}

impl SeparationJson {
    fn of(s: &Separation, default_depth: u32) -> Self {
        match s {
            Separation::Infinite => SeparationJson {
                infinite: true,
                lower: None,
                upper: None,
                depth: default_depth,
            },
            Separation::Bound(b) => SeparationJson {
                infinite: false,
                lower: Some((&b.lower).into()),
                upper: b.upper.as_ref().map(Into::into),
                depth: b.depth,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPointJson {
    pub n: i64,
    pub x: DigitsJson,
    pub y: DigitsJson,
    pub x_approx: DyadicJson,
    pub y_approx: DyadicJson,
}

fn orbit_point_json(d: &OrbitPointDigits) -> OrbitPointJson {
    let m = d.x_digits.len() as u32;
    OrbitPointJson {
        n: d.index,
        x: DigitsJson::from_bits(&d.x_digits, true),
        y: DigitsJson::from_bits(&d.y_digits, true),
        x_approx: (&Dyadic::from_bits(&d.x_digits, m)).into(),
        y_approx: (&Dyadic::from_bits(&d.y_digits, m)).into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReportJson {
    pub window: [i64; 2],
    pub precision: u32,
    pub depth: u32,
    pub points: Vec<OrbitPointJson>,
    pub min_separation: SeparationJson,
    pub inconclusive_pairs: Vec<[i64; 2]>,
}

impl From<&OrbitReport> for OrbitReportJson {
    fn from(r: &OrbitReport) -> Self {
        OrbitReportJson {
            window: [r.window.0, r.window.1],
            precision: r.precision,
            depth: r.depth,
            points: r.points.iter().map(orbit_point_json).collect(),
            min_separation: SeparationJson::of(&r.min_separation, r.depth),
            inconclusive_pairs: r.inconclusive_pairs.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub family: crate::orbit::LimitFamily,
    /// `null` encodes j = infinity.
    pub j: Option<u32>,
    pub x: DyadicJson,
    pub y: DyadicJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterJson {
    pub members: Vec<i64>,
    pub candidate: CandidateJson,
    pub residual: RationalJson,
    pub k_statistic: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccumulationReportJson {
    pub n_max: i64,
    pub tol_exp: u32,
    pub clusters: Vec<ClusterJson>,
    pub unclustered: Vec<i64>,
    pub flagged: Vec<usize>,
}

fn cluster_json(c: &Cluster, residual: &Rational) -> ClusterJson {
    let (x, y) = c.candidate.point();
    ClusterJson {
        members: c.members.clone(),
        candidate: CandidateJson {
            family: c.candidate.family,
            j: c.candidate.j,
            x: (&x).into(),
            y: (&y).into(),
        },
        residual: residual.into(),
        k_statistic: c.k_statistic,
    }
}

impl From<&AccumulationReport> for AccumulationReportJson {
    fn from(r: &AccumulationReport) -> Self {
        AccumulationReportJson {
            n_max: r.n_max,
            tol_exp: r.tol_exp,
            clusters: r
                .clusters
                .iter()
                .map(|(c, res)| cluster_json(c, res))
                .collect(),
            unclustered: r.unclustered.clone(),
            flagged: r.flagged.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicPointJson {
    pub period: u32,
    pub x: RationalJson,
    pub y: RationalJson,
    pub y_word: String,
}

impl From<&PeriodicPoint> for PeriodicPointJson {
    fn from(p: &PeriodicPoint) -> Self {
        PeriodicPointJson {
            period: p.period(),
            x: p.x().into(),
            y: p.y().into(),
            y_word: p
                .y_word()
                .iter()
                .map(|&b| if b == 1 { '1' } else { '0' })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub derivative: [[RationalJson; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuncturedSurfaceJson {
    pub half_window: u32,
    pub precision: u32,
    pub punctures: Vec<OrbitPointJson>,
    pub radius: RationalJson,
    pub generator: GeneratorJson,
    pub shift_invariance: bool,
}

impl From<&PuncturedSurfaceDescription> for PuncturedSurfaceJson {
    fn from(d: &PuncturedSurfaceDescription) -> Self {
        let m = d.precision;
        PuncturedSurfaceJson {
            half_window: d.half_window,
            precision: d.precision,
            punctures: d
                .punctures
                .iter()
                .map(|p| OrbitPointJson {
                    n: p.index,
                    x: DigitsJson::from_bits(&p.x_digits, true),
                    y: DigitsJson::from_bits(&p.y_digits, true),
                    x_approx: (&Dyadic::from_bits(&p.x_digits, m)).into(),
                    y_approx: (&Dyadic::from_bits(&p.y_digits, m)).into(),
                })
                .collect(),
            radius: (&d.radius).into(),
            generator: describe_generator(&d.generator),
            shift_invariance: d.shift_invariance,
        }
    }
}

fn describe_generator(m: &MapDescriptor) -> GeneratorJson {
    let d = m.derivative();
    GeneratorJson {
        name: format!("{:?}", m.name).to_lowercase(),
        derivative: [
            [(&d[0][0]).into(), (&d[0][1]).into()],
            [(&d[1][0]).into(), (&d[1][1]).into()],
        ],
    }
}

/// A bare orbit dump without separation analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDumpJson {
    pub window: [i64; 2],
    pub precision: u32,
    pub points: Vec<OrbitPointJson>,
}

impl OrbitDumpJson {
    pub fn new(window: (i64, i64), precision: u32, points: &[OrbitPointDigits]) -> Self {
        OrbitDumpJson {
            window: [window.0, window.1],
            precision,
            points: points.iter().map(orbit_point_json).collect(),
        }
    }
}

/// The orbit dump as CSV: `n, x_num, x_den_exp, y_num, y_den_exp`, exact
/// truncations at the stated precision.
pub fn orbit_csv(points: &[OrbitPointDigits], precision: u32) -> String {
    let mut out = String::from("n,x_num,x_den_exp,y_num,y_den_exp\n");
    for p in points {
        let x = Dyadic::from_bits(&p.x_digits, precision);
        let y = Dyadic::from_bits(&p.y_digits, precision);
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.index,
            x.numerator(),
            x.exponent(),
            y.numerator(),
            y.exponent()
        ));
    }
    out
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> crate::error::Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}
