//! SVG figures: the lifted polytope and roof of a curve at one place, or
//! the subdivision of `Q_A` induced by the roof of a surface.

use std::fmt::Write as _;

use toric_core::exactnum::{LogLinear, Place, Rational};
use toric_core::geom::LiftedPoint;
use toric_core::roof::Roof;
use toric_core::toric::weight_vector;
use toric_core::{Error, MonomialPair};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_X: f64 = WIDTH * 0.1;
const MARGIN_Y: f64 = HEIGHT * 0.1;

fn q_f64(q: &Rational) -> f64 {
    LogLinear::from_rational(q.clone()).to_f64()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Affine map from data coordinates onto the drawing area.
struct Frame {
    x0: f64,
    xr: f64,
    y0: f64,
    yr: f64,
}

impl Frame {
    fn new(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let span = |it: &mut dyn Iterator<Item = f64>| {
            let (lo, hi) = it.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
            if hi - lo < 1e-9 {
                (lo - 1.0, 2.0)
            } else {
                (lo, hi - lo)
            }
        };
        let (x0, xr) = span(&mut xs.clone());
        let (y0, yr) = span(&mut ys.clone());
        Frame { x0, xr, y0, yr }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN_X + (x - self.x0) / self.xr * (WIDTH - 2.0 * MARGIN_X)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_Y - (y - self.y0) / self.yr * (HEIGHT - 2.0 * MARGIN_Y)
    }
}

fn header(title: &str) -> String {
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="640" height="400" viewBox="0 0 640 400">"#).unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="640" height="400" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="320" y="24" font-family="monospace" font-size="14" text-anchor="middle">{}</text>"#, escape(title)).unwrap();
    s
}

fn points_attr(pts: &[(f64, f64)]) -> String {
    pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect::<Vec<_>>().join(" ")
}

/// Orders the points of a convex polygon counterclockwise around their centroid.
fn cyclic(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let n = pts.len() as f64;
    let cx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let cy = pts.iter().map(|p| p.1).sum::<f64>() / n;
    pts.sort_by(|a, b| {
        let ta = (a.1 - cy).atan2(a.0 - cx);
        let tb = (b.1 - cy).atan2(b.0 - cx);
        ta.total_cmp(&tb)
    });
    pts
}

pub fn render(pair: &MonomialPair, place: Place) -> Result<String, Error> {
    let tau = weight_vector(pair, place)?;
    match pair.ambient_dim() {
        1 => Ok(curve(pair, &tau, place)),
        2 => Ok(surface(pair, &tau, place)),
        n => Err(Error::UnsupportedDimension(n)),
    }
}

fn curve(pair: &MonomialPair, tau: &[LogLinear], place: Place) -> String {
    let roof = Roof::from_weight(pair.exponents(), tau).expect("validated pair");
    let neg: Vec<LogLinear> = tau.iter().map(|t| -t).collect();
    let floor = Roof::from_weight(pair.exponents(), &neg).expect("validated pair");
    let gens: Vec<(f64, f64)> = roof.generators().iter().map(|g| (q_f64(&g.base[0]), g.lift.to_f64())).collect();
    let frame = Frame::new(gens.iter().map(|g| g.0), gens.iter().map(|g| g.1).chain([0.0]));
    let at = |x: f64, y: f64| (frame.px(x), frame.py(y));

    let mut s = header(&format!("roof at place {place}"));
    // axes
    let (ax0, ay) = at(frame.x0, 0.0);
    let (ax1, _) = at(frame.x0 + frame.xr, 0.0);
    writeln!(s, r##"<line x1="{ax0:.2}" y1="{ay:.2}" x2="{ax1:.2}" y2="{ay:.2}" stroke="#888888" stroke-width="1"/>"##).unwrap();
    // lifted polytope: upper chain left to right, lower chain back
    let upper: Vec<LiftedPoint> = roof.vertices();
    let mut lower: Vec<LiftedPoint> = floor.vertices();
    lower.reverse();
    let mut outline: Vec<(f64, f64)> = upper.iter().map(|v| at(q_f64(&v.base[0]), v.lift.to_f64())).collect();
    outline.extend(lower.iter().map(|v| at(q_f64(&v.base[0]), -v.lift.to_f64())));
    writeln!(s, r##"<polygon points="{}" fill="#e8eef8" stroke="#4a6fa5" stroke-width="1"/>"##, points_attr(&outline)).unwrap();
    let roof_line: Vec<(f64, f64)> = upper.iter().map(|v| at(q_f64(&v.base[0]), v.lift.to_f64())).collect();
    writeln!(s, r##"<polyline points="{}" fill="none" stroke="#000000" stroke-width="3"/>"##, points_attr(&roof_line)).unwrap();
    for &(x, y) in &gens {
        let (px, py) = at(x, y);
        writeln!(s, r##"<circle cx="{px:.2}" cy="{py:.2}" r="4" fill="#c0392b"/>"##).unwrap();
    }
    // exact labels at the breakpoints
    for v in &upper {
        let (px, py) = at(q_f64(&v.base[0]), v.lift.to_f64());
        writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" font-family="monospace" font-size="11" text-anchor="middle">{}</text>"#,
            HEIGHT - MARGIN_Y / 2.0,
            escape(&v.base[0].to_string())
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" font-family="monospace" font-size="11" text-anchor="middle">{}</text>"#,
            py - 8.0,
            escape(&v.lift.to_string())
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn surface(pair: &MonomialPair, tau: &[LogLinear], place: Place) -> String {
    let roof = Roof::from_weight(pair.exponents(), tau).expect("validated pair");
    let xy = |p: &LiftedPoint| (q_f64(&p.base[0]), q_f64(&p.base[1]));
    let gens: Vec<(f64, f64)> = roof.generators().iter().map(xy).collect();
    let frame = Frame::new(gens.iter().map(|g| g.0), gens.iter().map(|g| g.1));
    let at = |(x, y): (f64, f64)| (frame.px(x), frame.py(y));

    let mut s = header(&format!("subdivision of Q_A at place {place}"));
    let domain: Vec<(f64, f64)> = roof
        .domain()
        .vertices()
        .iter()
        .map(|v| at((v[0].to_f64(), v[1].to_f64())))
        .collect();
    for cell in roof.cells() {
        let poly = cyclic(cell.vertices.iter().map(|v| at(xy(v))).collect());
        writeln!(s, r##"<polygon points="{}" fill="#e8eef8" stroke="#4a6fa5" stroke-width="1"/>"##, points_attr(&poly)).unwrap();
    }
    let outline = cyclic(domain);
    writeln!(s, r##"<polygon points="{}" fill="none" stroke="#000000" stroke-width="3"/>"##, points_attr(&outline)).unwrap();
    for &g in &gens {
        let (px, py) = at(g);
        writeln!(s, r##"<circle cx="{px:.2}" cy="{py:.2}" r="4" fill="#c0392b"/>"##).unwrap();
    }
    for v in roof.vertices() {
        let (px, py) = at(xy(&v));
        writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="11">({}, {}): {}</text>"#,
            px + 6.0,
            py - 6.0,
            escape(&v.base[0].to_string()),
            escape(&v.base[1].to_string()),
            escape(&v.lift.to_string())
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
