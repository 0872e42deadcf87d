//! SVG picture of the square: glued edges with matching labels and colors,
//! removed points as crosses, and an optional orbit overlay.
//!
//! Output is SVG 1.1 and deterministic byte-for-byte for a given input;
//! only the generator-version comment line is allowed to change between
//! releases.

use std::fmt::Write;

use crate::orbit::{orbit_digits, SpecialPoint};
use crate::surface::{edge_catalog, EdgeFamily, EdgeSide};

pub struct RenderOptions<'a> {
    /// Draw edges with index `k <= edge_limit`.
    pub edge_limit: u32,
    /// Square side in pixels.
    pub scale: u32,
    /// Orbit overlay: point and window.
    pub orbit: Option<(&'a SpecialPoint, i64, i64)>,
    /// Digits used to place orbit dots.
    pub precision: u32,
}

impl Default for RenderOptions<'_> {
    fn default() -> Self {
        RenderOptions {
            edge_limit: 6,
            scale: 512,
            orbit: None,
            precision: 64,
        }
    }
}

const MARGIN: f64 = 40.0;

struct Canvas {
    scale: f64,
}

impl Canvas {
    fn x(&self, v: f64) -> f64 {
        MARGIN + v * self.scale
    }

    /// SVG y grows downward; the square's y grows upward.
    fn y(&self, v: f64) -> f64 {
        MARGIN + (1.0 - v) * self.scale
    }
}

fn edge_color(family: EdgeFamily, k: u32) -> String {
    let base = match family {
        EdgeFamily::Horizontal => 0,
        EdgeFamily::Vertical => 180,
    };
    format!("hsl({},70%,45%)", (base + k * 47) % 360)
}

fn edge_label(family: EdgeFamily, k: u32) -> String {
    match family {
        EdgeFamily::Horizontal => format!("h{k}"),
        EdgeFamily::Vertical => format!("v{k}"),
    }
}

/// Renders the surface diagram. Edge pairs come out as one `<g>` per
/// `(family, k)` holding both glued segments and their shared label.
pub fn render_svg(opts: &RenderOptions) -> String {
    let c = Canvas {
        scale: opts.scale as f64,
    };
    let side = opts.scale as f64 + 2.0 * MARGIN;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    let _ = writeln!(
        svg,
        "<!-- chamanara renderer {} -->",
        env!("CARGO_PKG_VERSION")
    );
    let _ = writeln!(
        svg,
        r##"<rect x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="white" stroke="#ccc" stroke-width="0.5"/>"##,
        c.x(0.0),
        c.y(1.0),
        opts.scale as f64,
        opts.scale as f64
    );

    let edges = edge_catalog(opts.edge_limit);

    // glued pairs, one group per (family, k)
    for k in 0..=opts.edge_limit {
        for family in [EdgeFamily::Horizontal, EdgeFamily::Vertical] {
            let color = edge_color(family, k);
            let label = edge_label(family, k);
            let _ = writeln!(svg, r#"<g id="edge-{label}">"#);
            for e in edges
                .iter()
                .filter(|e| e.id.family == family && e.id.k == k)
            {
                let (x1, y1) = (c.x(e.start.0.to_f64()), c.y(e.start.1.to_f64()));
                let (x2, y2) = (c.x(e.end.0.to_f64()), c.y(e.end.1.to_f64()));
                let _ = writeln!(
                    svg,
                    r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="3"/>"#
                );
                // label offset depends on which side the segment sits on
                let (lx, ly) = match (e.id.family, e.id.side) {
                    (EdgeFamily::Horizontal, EdgeSide::Lower) => ((x1 + x2) / 2.0, y1 + 16.0),
                    (EdgeFamily::Horizontal, EdgeSide::Upper) => ((x1 + x2) / 2.0, y1 - 8.0),
                    (EdgeFamily::Vertical, EdgeSide::Lower) => (x1 - 20.0, (y1 + y2) / 2.0),
                    (EdgeFamily::Vertical, EdgeSide::Upper) => (x1 + 8.0, (y1 + y2) / 2.0),
                };
                let _ = writeln!(
                    svg,
                    r#"<text x="{lx:.2}" y="{ly:.2}" font-size="11" fill="{color}">{label}</text>"#
                );
            }
            let _ = writeln!(svg, "</g>");
        }
    }

    // removed points: segment endpoints and corners, deduplicated
    let mut removed: Vec<(String, String)> = Vec::new();
    for e in &edges {
        for p in [&e.start, &e.end] {
            removed.push((
                format!("{:.2}", c.x(p.0.to_f64())),
                format!("{:.2}", c.y(p.1.to_f64())),
            ));
        }
    }
    removed.sort();
    removed.dedup();
    for (x, y) in &removed {
        let x: f64 = x.parse().unwrap_or(0.0);
        let y: f64 = y.parse().unwrap_or(0.0);
        let r = 3.0;
        let _ = writeln!(
            svg,
            r##"<path class="removed" d="M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2}" stroke="#c33" stroke-width="1.2"/>"##,
            x - r,
            y - r,
            x + r,
            y + r,
            x - r,
            y + r,
            x + r,
            y - r
        );
    }

    // orbit overlay
    if let Some((zeta, n_min, n_max)) = opts.orbit {
        for n in n_min..=n_max {
            let d = orbit_digits(zeta, n, opts.precision as u64);
            let x = crate::dyadic::Dyadic::from_bits(&d.x_digits, opts.precision).to_f64();
            let y = crate::dyadic::Dyadic::from_bits(&d.y_digits, opts.precision).to_f64();
            let _ = writeln!(
                svg,
                r##"<circle class="orbit" cx="{:.2}" cy="{:.2}" r="2" fill="#136"><title>n={n}</title></circle>"##,
                c.x(x),
                c.y(y)
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::make_special_point;
    use crate::sequence::{SequenceSpec, SparseSequence};

    #[test]
    fn edge_pair_groups_and_orbit_dots() {
        let seq = SparseSequence::new(SequenceSpec::Exponential {
            base: 2,
            offset: -1,
        })
        .unwrap();
        let zeta = make_special_point(seq.clone(), seq).unwrap();
        let opts = RenderOptions {
            edge_limit: 6,
            scale: 512,
            orbit: Some((&zeta, 0, 100)),
            precision: 64,
        };
        let svg = render_svg(&opts);
        assert_eq!(svg.matches("<g id=\"edge-").count(), 14);
        assert_eq!(svg.matches("<circle").count(), 101);
        assert!(svg.contains("version=\"1.1\""));
        assert!(svg.contains("class=\"removed\""));
    }

    #[test]
    fn rendering_is_deterministic() {
        let opts = RenderOptions::default();
        assert_eq!(render_svg(&opts), render_svg(&opts));
    }
}
