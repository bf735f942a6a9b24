//! Static SVG of a region boundary: the polyline plus its two open rays.

use ctr_core::regions::{round12, BoundaryTrace};

const SIZE: f64 = 480.0;
const PAD: f64 = 40.0;

pub fn render(trace: &BoundaryTrace) -> String {
    let pts = &trace.points;
    let hi1 = pts.iter().map(|p| p.d1).fold(0.0, f64::max) * 1.5;
    let hi2 = pts.iter().map(|p| p.d2).fold(0.0, f64::max) * 1.5;
    let span = hi1.max(hi2).max(1e-12);
    let x = |d1: f64| round12(PAD + d1 / span * (SIZE - 2.0 * PAD));
    let y = |d2: f64| round12(SIZE - PAD - d2 / span * (SIZE - 2.0 * PAD));

    let poly: Vec<String> = pts.iter().map(|p| format!("{},{}", x(p.d1), y(p.d2))).collect();
    let ray = |from: (f64, f64), dir: [f64; 2]| {
        let (a, b) = (from.0 + 2.0 * span * dir[0], from.1 + 2.0 * span * dir[1]);
        format!(
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-dasharray="4 3"/>"#,
            x(from.0),
            y(from.1),
            x(a),
            y(b)
        )
    };
    let first = pts.first().map_or((0.0, 0.0), |p| (p.d1, p.d2));
    let last = pts.last().map_or((0.0, 0.0), |p| (p.d1, p.d2));

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    s.push_str(&format!(
        "<clipPath id=\"plot\"><rect x=\"{PAD}\" y=\"{PAD}\" width=\"{w}\" height=\"{w}\"/></clipPath>\n",
        w = SIZE - 2.0 * PAD
    ));
    s.push_str(&format!(
        "<line x1=\"{PAD}\" y1=\"{b}\" x2=\"{e}\" y2=\"{b}\" stroke=\"gray\"/>\n<line x1=\"{PAD}\" y1=\"{b}\" x2=\"{PAD}\" y2=\"{PAD}\" stroke=\"gray\"/>\n",
        b = SIZE - PAD,
        e = SIZE - PAD
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\">d1</text>\n<text x=\"8\" y=\"{}\" font-size=\"12\">d2</text>\n",
        SIZE - PAD,
        SIZE - 12.0,
        PAD
    ));
    s.push_str("<g clip-path=\"url(#plot)\">\n");
    s.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
        poly.join(" ")
    ));
    s.push_str(&ray(first, trace.start_ray));
    s.push('\n');
    s.push_str(&ray(last, trace.end_ray));
    s.push_str("\n</g>\n</svg>\n");
    s
}
