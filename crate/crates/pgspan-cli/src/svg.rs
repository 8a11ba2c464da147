//! Minimal log-log scatter of spanner size against n, one series per t.

use std::fmt::Write as _;

use pgspan::io::ReportRow;

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

pub fn scatter_svg(rows: &[ReportRow]) -> String {
    let (w, h) = (640.0, 480.0);
    let (ml, mr, mt, mb) = (60.0, 20.0, 20.0, 50.0);
    let points: Vec<(f64, f64, u32)> = rows
        .iter()
        .filter(|r| r.n > 0 && r.m_spanner > 0)
        .map(|r| ((r.n as f64).log10(), (r.m_spanner as f64).log10(), r.t))
        .collect();
    let mut ts: Vec<u32> = points.iter().map(|&(_, _, t)| t).collect();
    ts.sort_unstable();
    ts.dedup();

    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y, _) in &points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if points.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let pad = 0.15;
    let (x0, x1) = (x0 - pad, x1 + pad);
    let (y0, y1) = (y0 - pad, y1 + pad);
    let px = |x: f64| ml + (x - x0) / (x1 - x0) * (w - ml - mr);
    let py = |y: f64| h - mb - (y - y0) / (y1 - y0) * (h - mt - mb);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(out, "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        h - mb,
        w - mr,
        h - mb
    );
    let _ = writeln!(
        out,
        "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>",
        h - mb
    );
    // decade ticks
    for d in (x0.ceil() as i64)..=(x1.floor() as i64) {
        let x = px(d as f64);
        let _ = writeln!(
            out,
            "<line x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"#999\"/>",
            h - mb,
            h - mb + 5.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{x}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">1e{d}</text>",
            h - mb + 20.0
        );
    }
    for d in (y0.ceil() as i64)..=(y1.floor() as i64) {
        let y = py(d as f64);
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{ml}\" y2=\"{y}\" stroke=\"#999\"/>",
            ml - 5.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"end\">1e{d}</text>",
            ml - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">n (log)</text>",
        (ml + w - mr) / 2.0,
        h - 8.0
    );
    let _ = writeln!(
        out,
        "<text x=\"14\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 {})\">spanner edges (log)</text>",
        (mt + h - mb) / 2.0,
        (mt + h - mb) / 2.0
    );
    for &(x, y, t) in &points {
        let color = COLORS[ts.iter().position(|&u| u == t).unwrap_or(0) % COLORS.len()];
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{color}\" fill-opacity=\"0.75\"/>",
            px(x),
            py(y)
        );
    }
    for (i, t) in ts.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let y = mt + 16.0 * i as f64 + 10.0;
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{y}\" r=\"4\" fill=\"{color}\"/>",
            w - mr - 90.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\">t = {t}</text>",
            w - mr - 80.0,
            y + 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emits_points_and_legend() {
        let row = |n: usize, m: usize, t: u32| ReportRow {
            n,
            m_input: m,
            t,
            algorithm: "par".into(),
            strategy: "greedy".into(),
            seed: 0,
            m_spanner: m,
            rounds: 1,
            girth: None,
            degeneracy: 1,
            arboricity: 1,
            arboricity_exact: true,
            max_stretch: None,
            millis: 0,
        };
        let svg = scatter_svg(&[row(256, 1000, 3), row(512, 1800, 3), row(256, 700, 5)]);
        assert!(svg.contains("<svg"));
        assert_eq!(svg.matches("<circle").count(), 3 + 2); // points + legend
        assert!(svg.contains("t = 3"));
        assert!(svg.contains("t = 5"));
    }
}
