//! SVG drawing of a nine-interval map: domain pieces on the upper row,
//! their images on the lower row, exact endpoint labels on a shared axis.

use std::fmt::Write;

use ar_iet::iet::Ar9Map;
use ar_iet::interval::Interval;
use ar_iet::rational::{format_rational, to_f64, Rational};
use ar_iet::words::PHI;

const WIDTH: f64 = 960.0;
const MARGIN: f64 = 40.0;
const ROW_H: f64 = 34.0;
const UPPER_Y: f64 = 40.0;
const LOWER_Y: f64 = 150.0;
const FILLS: [&str; 3] = ["#cfe2f3", "#f9cb9c", "#b6d7a8"];

struct Scale {
    lo: f64,
    span: f64,
}

impl Scale {
    fn x(&self, r: &Rational) -> f64 {
        MARGIN + (to_f64(r) - self.lo) / self.span * (WIDTH - 2.0 * MARGIN)
    }
}

fn piece_rect(out: &mut String, s: &Scale, iv: &Interval, y: f64, fill: &str, label: &str) {
    let (x0, x1) = (s.x(&iv.lo), s.x(&iv.hi));
    let _ = writeln!(
        out,
        r#"  <rect x="{x0:.3}" y="{y:.3}" width="{:.3}" height="{ROW_H:.3}" fill="{fill}" stroke="black" stroke-width="1"/>"#,
        x1 - x0
    );
    let _ = writeln!(
        out,
        r#"  <text x="{:.3}" y="{:.3}" font-size="13" text-anchor="middle">{label}</text>"#,
        (x0 + x1) / 2.0,
        y + ROW_H / 2.0 + 5.0
    );
}

fn ticks(out: &mut String, s: &Scale, points: &[Rational], y: f64) {
    for p in points {
        let x = s.x(p);
        let _ = writeln!(
            out,
            r#"  <line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="black" stroke-width="1"/>"#,
            y,
            y + 6.0
        );
        let _ = writeln!(
            out,
            r#"  <text x="{x:.3}" y="{:.3}" font-size="9" text-anchor="middle">{}</text>"#,
            y + 16.0,
            format_rational(p)
        );
    }
}

/// `induced`, when given, adds its three supports as dashed outlines.
pub fn render_layout(m: &Ar9Map, induced: Option<&Ar9Map>) -> String {
    let dom = m.domain();
    let parts = dom.parts();
    let lo = &parts[0].lo;
    let hi = &parts[parts.len() - 1].hi;
    let scale = Scale {
        lo: to_f64(lo),
        span: to_f64(&(hi - lo)),
    };
    let height = LOWER_Y + ROW_H + 40.0;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(out, "<!-- ar-iet {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"  <text x="{MARGIN}" y="20" font-size="12">triple {} order {}</text>"#,
        m.triple(),
        m.order()
    );
    for l in 0..9u8 {
        let fill = FILLS[PHI[l as usize] as usize];
        piece_rect(&mut out, &scale, m.piece(l), UPPER_Y, fill, &format!("{}", l + 1));
        piece_rect(&mut out, &scale, m.image(l), LOWER_Y, fill, &format!("T{}", l + 1));
    }
    let mut upper: Vec<Rational> = m.pieces().iter().flat_map(|p| [p.lo.clone(), p.hi.clone()]).collect();
    upper.sort();
    upper.dedup();
    let mut lower: Vec<Rational> = m.images().iter().flat_map(|p| [p.lo.clone(), p.hi.clone()]).collect();
    lower.sort();
    lower.dedup();
    ticks(&mut out, &scale, &upper, UPPER_Y + ROW_H);
    ticks(&mut out, &scale, &lower, LOWER_Y + ROW_H);
    if let Some(ind) = induced {
        for iv in ind.omegas() {
            let (x0, x1) = (scale.x(&iv.lo), scale.x(&iv.hi));
            let _ = writeln!(
                out,
                r##"  <rect x="{x0:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#c00000" stroke-width="1.5" stroke-dasharray="6,4"/>"##,
                UPPER_Y - 6.0,
                x1 - x0,
                LOWER_Y + ROW_H - UPPER_Y + 12.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
