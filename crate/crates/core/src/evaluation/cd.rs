//! Critical difference diagrams as SVG and plain text.

use alloc::string::String;
use core::fmt::Write;

use super::comparison::ComparisonReport;

const WIDTH: f64 = 720.0;
const AXIS_LEFT: f64 = 160.0;
const AXIS_RIGHT: f64 = 560.0;
const AXIS_Y: f64 = 50.0;
const BAR_GAP: f64 = 8.0;
const ROW_GAP: f64 = 22.0;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn x_of(rank: f64, k: usize) -> f64 {
    let span = (k.max(2) - 1) as f64;
    AXIS_LEFT + (rank - 1.0) / span * (AXIS_RIGHT - AXIS_LEFT)
}

/// Standalone SVG: a rank axis (1 on the left), one labelled spoke per
/// classifier and a thick bar under each clique of two or more.
pub fn render_cd_svg(report: &ComparisonReport) -> String {
    let k = report.classifiers.len();
    let bars: usize = report.cliques.iter().filter(|c| c.len() > 1).count();
    let left = k.div_ceil(2);
    let first_row = AXIS_Y + 20.0 + bars as f64 * BAR_GAP + 10.0;
    let height = first_row + left as f64 * ROW_GAP + 20.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{AXIS_LEFT:.2}" y1="{AXIS_Y:.2}" x2="{AXIS_RIGHT:.2}" y2="{AXIS_Y:.2}" stroke="black" stroke-width="1"/>"#
    );
    for r in 1..=k {
        let x = x_of(r as f64, k);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{AXIS_Y:.2}" stroke="black" stroke-width="1"/>"#,
            AXIS_Y - 6.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{r}</text>"#,
            AXIS_Y - 10.0
        );
    }
    for (pos, &c) in report.order.iter().enumerate() {
        let rank = report.average_ranks[c];
        let x = x_of(rank, k);
        let on_left = pos < left;
        let row = if on_left { pos } else { k - 1 - pos };
        let y = first_row + row as f64 * ROW_GAP;
        let (end, anchor, tx) = if on_left {
            (AXIS_LEFT - 20.0, "end", AXIS_LEFT - 24.0)
        } else {
            (AXIS_RIGHT + 20.0, "start", AXIS_RIGHT + 24.0)
        };
        let name = escape(&report.classifiers[c]);
        let _ = writeln!(
            s,
            r#"<g class="spoke" data-classifier="{name}" data-rank="{rank:.3}"><polyline points="{x:.2},{AXIS_Y:.2} {x:.2},{y:.2} {end:.2},{y:.2}" fill="none" stroke="black" stroke-width="1"/><text x="{tx:.2}" y="{:.2}" text-anchor="{anchor}">{name} ({rank:.3})</text></g>"#,
            y + 4.0
        );
    }
    for (j, clique) in report.cliques.iter().filter(|c| c.len() > 1).enumerate() {
        let lo = clique.iter().map(|&c| report.average_ranks[c]).fold(f64::INFINITY, f64::min);
        let hi = clique.iter().map(|&c| report.average_ranks[c]).fold(f64::NEG_INFINITY, f64::max);
        let y = AXIS_Y + 16.0 + j as f64 * BAR_GAP;
        let _ = writeln!(
            s,
            r#"<line class="clique" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="black" stroke-width="4" stroke-linecap="round"/>"#,
            x_of(lo, k) - 3.0,
            x_of(hi, k) + 3.0
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Terminal rendering: the rank table followed by one line per clique.
pub fn render_cd_text(report: &ComparisonReport) -> String {
    let width = report.classifiers.iter().map(|n| n.len()).max().unwrap_or(0).max(10);
    let mut s = String::new();
    let _ = writeln!(s, "{:<width$}  avg rank", "classifier");
    for &c in &report.order {
        let _ = writeln!(s, "{:<width$}  {:.3}", report.classifiers[c], report.average_ranks[c]);
    }
    let _ = writeln!(s, "cliques (alpha = {}, Holm):", report.alpha);
    for clique in &report.cliques {
        let names: alloc::vec::Vec<&str> = clique.iter().map(|&c| report.classifiers[c].as_str()).collect();
        let _ = writeln!(s, "  [{}]", names.join(", "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::build_cliques;
    use alloc::format;
    use alloc::string::ToString;
    use alloc::vec::Vec;

    fn report() -> ComparisonReport {
        let table: Vec<Vec<f64>> = (0..6).map(|d| alloc::vec![0.7 + 0.01 * d as f64, 0.69 + 0.012 * d as f64]).collect();
        let ds: Vec<String> = (0..6).map(|d| d.to_string()).collect();
        build_cliques(&["a<b".to_string(), "c".to_string()], &ds, &table, 0.05).unwrap()
    }

    #[test]
    fn one_bar_for_one_clique() {
        let r = report();
        assert_eq!(r.cliques.len(), 1);
        let svg = render_cd_svg(&r);
        assert_eq!(svg.matches("class=\"clique\"").count(), 1);
        assert_eq!(svg.matches("class=\"spoke\"").count(), 2);
        assert!(svg.contains("a&lt;b"));
        assert_eq!(svg, render_cd_svg(&r));
        for (c, rank) in r.average_ranks.iter().enumerate() {
            assert!(svg.contains(&format!("data-classifier=\"{}\" data-rank=\"{rank:.3}\"", escape(&r.classifiers[c]))));
        }
        assert!(render_cd_text(&r).contains("[a<b, c]") || render_cd_text(&r).contains("[c, a<b]"));
    }
}
