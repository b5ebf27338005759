//! Line plots of observables against τ as standalone SVG documents.

use std::fmt::Write as _;
use std::io;
use std::path::PathBuf;

use crate::config::Observable;
use crate::output::{Column, OutputPaths};
use crate::run::ObservableSeries;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 2] = ["#1f4e9c", "#c0392b"];

fn title(observable: Observable) -> &'static str {
    match observable {
        Observable::Entropy => "field entropy S_F",
        Observable::EntropySqueezing => "entropy squeezing E_x, E_p",
        Observable::Mandel => "Mandel Q",
        Observable::Quadrature => "quadrature squeezing V_x, V_p",
    }
}

fn has_zero_line(observable: Observable) -> bool {
    matches!(
        observable,
        Observable::EntropySqueezing | Observable::Quadrature
    )
}

/// Writes one SVG per requested observable next to `paths.csv()` and returns
/// the files written. An empty selection writes nothing.
pub fn emit_plot(series: &ObservableSeries, paths: &OutputPaths) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for &observable in series.config.observables() {
        let curves: Vec<(Column, Vec<Option<f64>>)> = Column::ALL
            .into_iter()
            .filter(|c| c.observable() == observable)
            .filter_map(|c| c.values(series).map(|v| (c, v)))
            .collect();
        let mut heading = title(observable).to_string();
        if let Some(label) = &series.label {
            heading.push_str(&format!(" ({label})"));
        }
        let svg = render(&series.tau, &curves, &heading, has_zero_line(observable));
        let path = paths.plot(observable);
        std::fs::write(&path, svg)?;
        written.push(path);
    }
    Ok(written)
}

/// Round-number tick positions covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn render(
    tau: &[f64],
    curves: &[(Column, Vec<Option<f64>>)],
    heading: &str,
    zero_line: bool,
) -> String {
    let (mut x_lo, mut x_hi) = (tau[0], tau[tau.len() - 1]);
    if x_hi <= x_lo {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    let finite = curves.iter().flat_map(|(_, v)| v.iter().flatten().copied());
    let (mut y_lo, mut y_hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !y_lo.is_finite() {
        (y_lo, y_hi) = (0.0, 1.0);
    }
    if zero_line {
        y_lo = y_lo.min(0.0);
        y_hi = y_hi.max(0.0);
    }
    let pad = if y_hi > y_lo {
        0.05 * (y_hi - y_lo)
    } else {
        0.5
    };
    y_lo -= pad;
    y_hi += pad;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(heading)
    );

    for x in ticks(x_lo, x_hi) {
        let px = sx(x);
        let _ = writeln!(
            svg,
            r##"<line x1="{px:.2}" y1="{TOP:.2}" x2="{px:.2}" y2="{:.2}" stroke="#e0e0e0"/>"##,
            TOP + plot_h
        );
        let _ = writeln!(
            svg,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + plot_h + 18.0,
            tick_label(x)
        );
    }
    for y in ticks(y_lo, y_hi) {
        let py = sy(y);
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#e0e0e0"/>"##,
            LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            py + 4.0,
            tick_label(y)
        );
    }
    if zero_line {
        let py = sy(0.0);
        let _ = writeln!(
            svg,
            r##"<line x1="{LEFT:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#444444" stroke-dasharray="6 4"/>"##,
            LEFT + plot_w
        );
    }
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">tau</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );

    for (k, (column, values)) in curves.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        // NA samples split the curve into separate polylines
        let mut segment = String::new();
        let flush = |segment: &mut String, svg: &mut String| {
            if !segment.is_empty() {
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
                    segment.trim_end()
                );
                segment.clear();
            }
        };
        for (&x, v) in tau.iter().zip(values) {
            match v {
                Some(y) => {
                    let _ = write!(segment, "{:.2},{:.2} ", sx(x), sy(*y));
                }
                None => flush(&mut segment, &mut svg),
            }
        }
        flush(&mut segment, &mut svg);
        if curves.len() > 1 {
            let ly = TOP + 16.0 + 16.0 * k as f64;
            let lx = LEFT + plot_w - 90.0;
            let _ = writeln!(
                svg,
                r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#,
                ly - 4.0,
                lx + 20.0,
                ly - 4.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#,
                lx + 26.0,
                column.header()
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
