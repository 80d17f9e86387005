//! Chart renderings in the Adams layout: stem `t − s` across, filtration `s` up.

use std::fmt::Write;

use sqfib::resolution::Chart;

/// A grid followed by one line per class.
pub fn text(chart: &Chart) -> String {
    let x_max = chart.t_max;
    let cell = |s: usize, x: usize| match chart.get(s, x + s) {
        0 => ".".to_string(),
        d => d.to_string(),
    };
    let width = (0..=chart.s_max)
        .flat_map(|s| (0..=x_max).map(move |x| (s, x)))
        .map(|(s, x)| cell(s, x).len())
        .chain([x_max.to_string().len()])
        .max()
        .unwrap_or(1);
    let label = chart.s_max.to_string().len().max(3);
    let mut out = String::new();
    for s in (0..=chart.s_max).rev() {
        let _ = write!(out, "{s:>label$} |");
        for x in 0..=x_max {
            if x + s <= chart.t_max {
                let _ = write!(out, " {:>width$}", cell(s, x));
            }
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>label$} +", "");
    out.push_str(&"-".repeat((x_max + 1) * (width + 1)));
    out.push('\n');
    let _ = write!(out, "{:>label$}  ", "t-s");
    for x in 0..=x_max {
        let _ = write!(out, " {x:>width$}");
    }
    out.push('\n');
    for ((s, t), d) in chart.iter() {
        let _ = writeln!(out, "s={s} t={t} stem={} dim={d}", t - s);
    }
    if chart.is_empty() {
        out.push_str("no classes\n");
    }
    out
}

pub fn table(chart: &Chart) -> String {
    chart.to_table()
}

const CELL: usize = 32;
const MARGIN: usize = 40;

/// One `<g class="class">` per nonzero entry, carrying `data-s`, `data-t`
/// and `data-dim`, with one dot per basis element.
pub fn svg(chart: &Chart, title: &str) -> String {
    let cols = chart.t_max + 1;
    let rows = chart.s_max + 1;
    let width = 2 * MARGIN + cols * CELL;
    let height = 2 * MARGIN + rows * CELL;
    let px = |x: usize| MARGIN + x * CELL + CELL / 2;
    let py = |s: usize| height - MARGIN - s * CELL - CELL / 2;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
    let _ = writeln!(out, r##"<g stroke="#ddd" stroke-width="1">"##);
    for x in 0..=cols {
        let gx = MARGIN + x * CELL;
        let _ = writeln!(out, r#"<line x1="{gx}" y1="{MARGIN}" x2="{gx}" y2="{}"/>"#, height - MARGIN);
    }
    for s in 0..=rows {
        let gy = MARGIN + s * CELL;
        let _ = writeln!(out, r#"<line x1="{MARGIN}" y1="{gy}" x2="{}" y2="{gy}"/>"#, width - MARGIN);
    }
    out.push_str("</g>\n");
    let _ = writeln!(out, r#"<g font-family="monospace" font-size="10" text-anchor="middle">"#);
    for x in 0..cols {
        let _ = writeln!(out, r#"<text x="{}" y="{}">{x}</text>"#, px(x), height - MARGIN + 14);
    }
    for s in 0..rows {
        let _ = writeln!(out, r#"<text x="{}" y="{}">{s}</text>"#, MARGIN - 12, py(s) + 4);
    }
    out.push_str("</g>\n");
    for ((s, t), d) in chart.iter() {
        let (cx, cy) = (px(t - s), py(s));
        let _ = writeln!(out, r#"<g class="class" data-s="{s}" data-t="{t}" data-dim="{d}">"#);
        let spread = 6;
        for k in 0..d {
            let offset = (2 * k + 1) as isize * spread / 2 - (d as isize * spread) / 2;
            let _ = writeln!(out, r#"<circle cx="{}" cy="{cy}" r="3"/>"#, cx as isize + offset);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
