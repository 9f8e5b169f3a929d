//! Band diagrams: the Newton polygon, the two bands and the spanning
//! classes, drawn deterministically into a standalone SVG string. One
//! diagram is emitted per generator, stacked vertically.

use skeinfill_core::lattice::{BandPair, NewtonPolygon};
use skeinfill_core::qtorus::SymmetricClass;

const UNIT: f64 = 32.0;

fn sx(p: i64) -> f64 {
    p as f64 * UNIT
}

fn sy(q: i64) -> f64 {
    -(q as f64) * UNIT
}

fn fmt(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    // avoid the negative-zero artifact so output is byte-stable
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{:.2}", r)
}

/// Clips a convex region against `a·p + b·q ≤ c` in lattice coordinates,
/// which reads `a·x − b·y ≤ c·UNIT` in drawing coordinates.
fn clip_halfplane(poly: Vec<(f64, f64)>, a: f64, b: f64, c: f64) -> Vec<(f64, f64)> {
    let value = |p: &(f64, f64)| a * p.0 - b * p.1 - c * UNIT;
    let mut out = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let cur = poly[i];
        let nxt = poly[(i + 1) % n];
        let vc = value(&cur);
        let vn = value(&nxt);
        if vc <= 1e-9 {
            out.push(cur);
        }
        if (vc <= 1e-9) != (vn <= 1e-9) {
            let t = vc / (vc - vn);
            out.push((cur.0 + t * (nxt.0 - cur.0), cur.1 + t * (nxt.1 - cur.1)));
        }
    }
    out
}

fn band_region(w: f64, h: f64, form: (i64, i64), lo: i64, hi: i64) -> Vec<(f64, f64)> {
    let frame = vec![(-w, -h), (w, -h), (w, h), (-w, h)];
    let (a, b) = (form.0 as f64, form.1 as f64);
    let clipped = clip_halfplane(frame, a, b, hi as f64);
    clip_halfplane(clipped, -a, -b, -(lo as f64))
}

fn polygon_points(points: &[(f64, f64)]) -> String {
    points
        .iter()
        .map(|(x, y)| format!("{},{}", fmt(*x), fmt(*y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn diagram_group(
    polygon: &NewtonPolygon,
    band: &BandPair,
    classes: &[SymmetricClass],
    out: &mut String,
) -> (f64, f64) {
    let mut extent = 2i64;
    for v in polygon.vertices() {
        extent = extent.max(v.p.abs()).max(v.q.abs());
    }
    for c in classes {
        extent = extent.max(c.rep().p.abs()).max(c.rep().q.abs());
    }
    extent += 1;
    let w = sx(extent);
    let h = -sy(extent);

    let lam_region = band_region(w, h, band.lam, -band.m, band.m);
    if lam_region.len() >= 3 {
        out.push_str(&format!(
            "    <polygon points=\"{}\" fill=\"#d62728\" fill-opacity=\"0.15\" stroke=\"#d62728\" stroke-width=\"1\"/>\n",
            polygon_points(&lam_region)
        ));
    }
    let eps_region = band_region(w, h, band.eps, 0, 1);
    if eps_region.len() >= 3 {
        out.push_str(&format!(
            "    <polygon points=\"{}\" fill=\"#1f77b4\" fill-opacity=\"0.15\" stroke=\"#1f77b4\" stroke-width=\"1\"/>\n",
            polygon_points(&eps_region)
        ));
    }

    out.push_str(&format!(
        "    <line x1=\"{}\" y1=\"0.00\" x2=\"{}\" y2=\"0.00\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
        fmt(-w),
        fmt(w)
    ));
    out.push_str(&format!(
        "    <line x1=\"0.00\" y1=\"{}\" x2=\"0.00\" y2=\"{}\" stroke=\"#999999\" stroke-width=\"1\"/>\n",
        fmt(-h),
        fmt(h)
    ));

    for p in -extent..=extent {
        for q in -extent..=extent {
            out.push_str(&format!(
                "    <circle cx=\"{}\" cy=\"{}\" r=\"1.50\" fill=\"#bbbbbb\"/>\n",
                fmt(sx(p)),
                fmt(sy(q))
            ));
        }
    }

    match polygon {
        NewtonPolygon::Point(a) => {
            out.push_str(&format!(
                "    <circle cx=\"{}\" cy=\"{}\" r=\"4.00\" fill=\"#333333\"/>\n",
                fmt(sx(a.p)),
                fmt(sy(a.q))
            ));
        }
        NewtonPolygon::Segment(a, b) => {
            out.push_str(&format!(
                "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#333333\" stroke-width=\"2\"/>\n",
                fmt(sx(a.p)),
                fmt(sy(a.q)),
                fmt(sx(b.p)),
                fmt(sy(b.q))
            ));
        }
        NewtonPolygon::Polygon(vs) => {
            let pts: Vec<(f64, f64)> = vs.iter().map(|v| (sx(v.p), sy(v.q))).collect();
            out.push_str(&format!(
                "    <polygon points=\"{}\" fill=\"#888888\" fill-opacity=\"0.25\" stroke=\"#333333\" stroke-width=\"2\"/>\n",
                polygon_points(&pts)
            ));
        }
    }

    for c in classes {
        for at in [c.rep(), c.rep().neg()] {
            out.push_str(&format!(
                "    <circle cx=\"{}\" cy=\"{}\" r=\"3.00\" fill=\"#2ca02c\"/>\n",
                fmt(sx(at.p)),
                fmt(sy(at.q))
            ));
        }
    }

    (w, h)
}

/// Renders one diagram per generator, stacked vertically: gray polygon,
/// the band where `|λ| ≤ M` in red, the band `0 ≤ ε ≤ 1` in blue, and
/// the spanning classes (with their mirrors) in green.
pub fn band_diagrams(items: &[(&NewtonPolygon, BandPair, Vec<SymmetricClass>)]) -> String {
    let pad = UNIT * 0.75;
    let mut groups: Vec<(String, f64, f64)> = Vec::new();
    for (polygon, band, classes) in items {
        let mut body = String::new();
        let (w, h) = diagram_group(polygon, band, classes, &mut body);
        groups.push((body, w + pad, h + pad));
    }
    let width = groups.iter().map(|(_, w, _)| *w).fold(UNIT, f64::max);
    let total_height: f64 = groups.iter().map(|(_, _, h)| 2.0 * h).sum::<f64>().max(UNIT);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        fmt(-width),
        fmt(0.0),
        fmt(2.0 * width),
        fmt(total_height)
    ));
    let mut offset = 0.0;
    for (body, _, h) in &groups {
        out.push_str(&format!("  <g transform=\"translate(0.00 {})\">\n", fmt(offset + h)));
        out.push_str(body);
        out.push_str("  </g>\n");
        offset += 2.0 * h;
    }
    out.push_str("</svg>\n");
    out
}
