//! Minimal SVG line chart of τ_QSL against the scan axis, one series per bath.

use std::fmt::Write;

use crate::bath::BathKind;
use crate::qsl::{ScanAxis, ScanTable};

use super::csv::format_sig;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;

fn colour(kind: BathKind) -> &'static str {
    match kind {
        BathKind::Fermionic => "#d62728",
        BathKind::Bosonic => "#1f77b4",
    }
}

fn axis_label(axis: ScanAxis) -> &'static str {
    match axis {
        ScanAxis::OhmicS => "Ohmic exponent s",
        ScanAxis::InitialTau => "initial time τ",
        ScanAxis::BField => "magnetic parameter B",
    }
}

pub fn render_svg(table: &ScanTable) -> String {
    let points: Vec<(f64, BathKind, f64)> = table
        .rows
        .iter()
        .filter_map(|r| r.result.as_ref().ok().map(|q| (r.axis_value, r.kind, q.unified)))
        .collect();
    let (x_lo, x_hi) = points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        (lo.min(p.0), hi.max(p.0))
    });
    let (x_lo, x_hi) = match (x_lo.is_finite(), x_hi > x_lo) {
        (true, true) => (x_lo, x_hi),
        (true, false) => (x_lo - 0.5, x_lo + 0.5),
        (false, _) => (0.0, 1.0),
    };
    let y_max = points.iter().map(|p| p.2).fold(0.0_f64, f64::max);
    let y_hi = if y_max > 0.0 { 1.05 * y_max } else { 1.0 };

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| MARGIN_TOP + plot_h - y / y_hi * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let frac = i as f64 / TICKS as f64;
        let xv = x_lo + frac * (x_hi - x_lo);
        let yv = frac * y_hi;
        let (px, py) = (sx(xv), sy(yv));
        let base = MARGIN_TOP + plot_h;
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{base}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            base + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            base + 20.0,
            format_tick(xv)
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{MARGIN_LEFT}" y2="{py:.2}" stroke="black"/>"#,
            MARGIN_LEFT - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 8.0,
            py + 4.0,
            format_tick(yv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 15.0,
        axis_label(table.axis)
    );
    let _ = writeln!(
        svg,
        r#"<text transform="translate(20 {:.2}) rotate(-90)" text-anchor="middle">QSL time</text>"#,
        MARGIN_TOP + plot_h / 2.0
    );

    let mut legend_y = MARGIN_TOP + 15.0;
    for kind in BathKind::ALL {
        let series: Vec<String> = points
            .iter()
            .filter(|p| p.1 == kind)
            .map(|p| format!("{:.2},{:.2}", sx(p.0), sy(p.2)))
            .collect();
        if series.is_empty() {
            continue;
        }
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            colour(kind),
            series.join(" ")
        );
        let lx = WIDTH - MARGIN_RIGHT + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{legend_y}" x2="{:.2}" y2="{legend_y}" stroke="{}" stroke-width="2"/>"#,
            lx + 25.0,
            colour(kind)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}">{kind}</text>"#,
            lx + 32.0,
            legend_y + 4.0
        );
        legend_y += 20.0;
    }
    svg.push_str("</svg>\n");
    svg
}

fn format_tick(v: f64) -> String {
    let s = format_sig((v * 1e4).round() / 1e4);
    if s.len() > 8 {
        format!("{v:.2e}")
    } else {
        s
    }
}
