//! Minimal self-contained SVG line and step plots.

use std::fmt::Write;

use crate::montecarlo::Histogram;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const PAD: f64 = 50.0;

struct Frame {
    x0: f64,
    x1: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        PAD + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * PAD)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - PAD - y / self.y1 * (HEIGHT - 2.0 * PAD)
    }
}

fn frame(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64>) -> Frame {
    let x0 = xs.clone().fold(f64::INFINITY, f64::min);
    let mut x1 = xs.fold(f64::NEG_INFINITY, f64::max);
    if !(x1 > x0) {
        x1 = x0 + 1.0;
    }
    let y1 = ys.fold(0.0, f64::max) * 1.05;
    Frame { x0, x1, y1: if y1 > 0.0 { y1 } else { 1.0 } }
}

fn header(out: &mut String, f: &Frame, title: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect width="100%" height="100%" fill="white"/>
<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>
<line x1="{PAD}" y1="{}" x2="{}" y2="{}" stroke="black"/>
<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{}" stroke="black"/>
"#,
        WIDTH / 2.0,
        escape(title),
        HEIGHT - PAD,
        WIDTH - PAD,
        HEIGHT - PAD,
        HEIGHT - PAD,
    );
    for k in 0..=4 {
        let x = f.x0 + (f.x1 - f.x0) * k as f64 / 4.0;
        let y = f.y1 * k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{:.3}</text>"#,
            f.px(x),
            HEIGHT - PAD + 16.0,
            x
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{:.3}</text>"#,
            PAD - 6.0,
            f.py(y) + 4.0,
            y
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn polyline(out: &mut String, f: &Frame, xs: &[f64], ys: &[f64], style: &str) {
    let mut points = String::new();
    for (x, y) in xs.iter().zip(ys) {
        let _ = write!(points, "{:.2},{:.2} ", f.px(*x), f.py(*y));
    }
    let _ = writeln!(out, r#"<polyline fill="none" {style} points="{}"/>"#, points.trim_end());
}

fn steps(out: &mut String, f: &Frame, hist: &Histogram) {
    let mut d = format!("M{:.2},{:.2}", f.px(hist.edges[0]), f.py(0.0));
    for (e, y) in hist.edges.windows(2).zip(&hist.density) {
        let _ = write!(d, " L{:.2},{:.2} L{:.2},{:.2}", f.px(e[0]), f.py(*y), f.px(e[1]), f.py(*y));
    }
    let _ = write!(d, " L{:.2},{:.2}", f.px(hist.edges[hist.edges.len() - 1]), f.py(0.0));
    let _ = writeln!(out, r##"<path d="{d}" fill="#c6dbef" stroke="#3182bd" stroke-width="1"/>"##);
}

pub fn density_svg(lambdas: &[f64], rho: &[f64], title: &str) -> String {
    let f = frame(lambdas.iter().copied(), rho.iter().copied());
    let mut out = String::new();
    header(&mut out, &f, title);
    polyline(&mut out, &f, lambdas, rho, r##"stroke="#d62728" stroke-width="2""##);
    out.push_str("</svg>\n");
    out
}

pub fn histogram_svg(hist: &Histogram, title: &str) -> String {
    let f = frame(hist.edges.iter().copied(), hist.density.iter().copied());
    let mut out = String::new();
    header(&mut out, &f, title);
    steps(&mut out, &f, hist);
    out.push_str("</svg>\n");
    out
}

/// Histogram with the theory density drawn dashed on top.
pub fn overlay_svg(hist: &Histogram, lambdas: &[f64], rho: &[f64], title: &str) -> String {
    let f = frame(hist.edges.iter().chain(lambdas).copied(), hist.density.iter().chain(rho).copied());
    let mut out = String::new();
    header(&mut out, &f, title);
    steps(&mut out, &f, hist);
    polyline(&mut out, &f, lambdas, rho, r##"stroke="black" stroke-width="2" stroke-dasharray="6,4""##);
    out.push_str("</svg>\n");
    out
}
