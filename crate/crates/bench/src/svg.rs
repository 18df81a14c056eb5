//! Frontier plot: the reference curve as a polyline, traced points as
//! circles, extrapolated points in a separate colour.

use std::fmt::Write as _;

use aro_core::{ErrorReport, FrontierPoint, ReferenceFrontier};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

struct Scale {
    lo: f64,
    hi: f64,
    out_lo: f64,
    out_hi: f64,
}

impl Scale {
    fn new(values: impl Iterator<Item = f64>, out_lo: f64, out_hi: f64) -> Self {
        let (mut lo, mut hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
        if !lo.is_finite() || !hi.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        let pad = ((hi - lo) * 0.05).max(1e-12);
        Self {
            lo: lo - pad,
            hi: hi + pad,
            out_lo,
            out_hi,
        }
    }

    fn map(&self, v: f64) -> f64 {
        self.out_lo + (v - self.lo) / (self.hi - self.lo) * (self.out_hi - self.out_lo)
    }
}

pub fn frontier_svg(
    title: &str,
    reference: &ReferenceFrontier,
    points: &[FrontierPoint],
    report: &ErrorReport,
) -> String {
    let xs = reference
        .points()
        .iter()
        .map(|p| p.stddev)
        .chain(points.iter().map(|p| p.stddev));
    let ys = reference
        .points()
        .iter()
        .map(|p| p.mean_return)
        .chain(points.iter().map(|p| p.expected_return));
    let x = Scale::new(xs, MARGIN, WIDTH - MARGIN / 2.0);
    let y = Scale::new(ys, HEIGHT - MARGIN, MARGIN / 2.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN / 2.0, HEIGHT - MARGIN, MARGIN / 2.0);
    let _ = writeln!(
        s,
        r#"<g stroke="black"><line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>"#
    );
    for t in 0..=4 {
        let f = t as f64 / 4.0;
        let xv = x.lo + f * (x.hi - x.lo);
        let yv = y.lo + f * (y.hi - y.lo);
        let px = x.map(xv);
        let py = y.map(yv);
        let _ = writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{xv:.4}</text>"#,
            y0 + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{py:.2}" text-anchor="end">{yv:.5}</text>"#,
            x0 - 6.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">standard deviation</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 18.0
    );
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">mean return</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    let mut line = String::new();
    for p in reference.points() {
        let _ = write!(line, "{:.2},{:.2} ", x.map(p.stddev), y.map(p.mean_return));
    }
    let _ = writeln!(
        s,
        r##"<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{}"/>"##,
        line.trim_end()
    );

    for (p, flagged) in points.iter().zip(&report.extrapolation_flags) {
        let colour = if *flagged { "#d62728" } else { "#ff7f0e" };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="none" stroke="{colour}"{}><title>lambda={:.4}</title></circle>"#,
            x.map(p.stddev),
            y.map(p.expected_return),
            if *flagged { r#" stroke-width="2""# } else { "" },
            p.lambda
        );
    }
    let _ = writeln!(
        s,
        r##"<g transform="translate({:.2},{:.2})"><line x1="0" y1="0" x2="18" y2="0" stroke="#1f4e9c"/><text x="22" y="4">unconstrained frontier</text><circle cx="9" cy="16" r="3" fill="none" stroke="#ff7f0e"/><text x="22" y="20">ARO portfolios</text><circle cx="9" cy="32" r="3" fill="none" stroke="#d62728" stroke-width="2"/><text x="22" y="36">extrapolated reference</text></g>"##,
        x0 + 12.0,
        y1 + 10.0
    );
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
