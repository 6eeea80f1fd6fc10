use std::fmt::Write as _;

use super::central::Ray;
use super::spectrum::class_label;

const SIZE: f64 = 640.0;
const RADIUS: f64 = 260.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Standalone SVG 1.1 ray diagram: one segment per ray from the origin,
/// `Ω = 1` rays in black, central rays highlighted.
pub fn svg_render(rays: &[Ray]) -> String {
    let c = SIZE / 2.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(
        s,
        r#"  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#
    );
    let _ = writeln!(s, r#"  <circle cx="{c}" cy="{c}" r="3" fill="black"/>"#);
    for r in rays {
        let (dx, dy) = (r.phase.cos(), -r.phase.sin());
        let (x, y) = (c + RADIUS * dx, c + RADIUS * dy);
        let (colour, width) = if r.central {
            ("#c0392b", 3.0)
        } else {
            ("black", 1.0)
        };
        let _ = writeln!(
            s,
            r#"  <line x1="{c:.3}" y1="{c:.3}" x2="{x:.3}" y2="{y:.3}" stroke="{colour}" stroke-width="{width}"/>"#
        );
        let mut labels: Vec<String> = r
            .classes
            .iter()
            .take(3)
            .map(|(g, o)| format!("{}:{}", class_label(g), o))
            .collect();
        if r.classes.len() > 3 {
            labels.push(format!("+{} more", r.classes.len() - 3));
        }
        let (lx, ly) = (c + (RADIUS + 12.0) * dx, c + (RADIUS + 12.0) * dy);
        let anchor = if dx < -0.1 {
            "end"
        } else if dx > 0.1 {
            "start"
        } else {
            "middle"
        };
        let _ = writeln!(
            s,
            r#"  <text x="{lx:.3}" y="{ly:.3}" font-family="monospace" font-size="8" text-anchor="{anchor}" fill="{colour}">{}</text>"#,
            escape(&labels.join(" "))
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::super::central::{ray_diagram, CentralCharge};
    use super::super::spectrum::{invariant_spectrum, Window};
    use super::*;

    #[test]
    fn one_line_per_ray() {
        let w = Window::symmetric(1);
        let rays = ray_diagram(
            &CentralCharge::standard(4),
            &invariant_spectrum(2, w).unwrap(),
            w,
        )
        .unwrap();
        let svg = svg_render(&rays);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("version=\"1.1\""));
        assert_eq!(svg.matches("<line").count(), rays.len());
        assert_eq!(
            svg.matches("#c0392b").count(),
            2 * rays.iter().filter(|r| r.central).count()
        );
    }
}
