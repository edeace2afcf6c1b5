use std::fmt::Write;

use super::{
    num, ContactStyle, ContactTarget, Curve, CurvePoint, CurveStyle, DiagramSpec, RenderOptions,
};

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Cubic control points for segment `i` of a curve, in layout units.
pub(crate) fn controls(
    a: CurvePoint,
    b: CurvePoint,
    i: usize,
    amplitude: f64,
    bend: f64,
) -> (CurvePoint, CurvePoint) {
    let dx = b.x - a.x;
    if dx.abs() < 1e-9 {
        // two contacts on one fiber: a loop to the right
        return (
            CurvePoint {
                x: a.x + 0.25,
                y: a.y,
            },
            CurvePoint {
                x: b.x + 0.25,
                y: b.y,
            },
        );
    }
    let w = if i % 2 == 0 { amplitude } else { -amplitude };
    (
        CurvePoint {
            x: a.x + dx / 3.0,
            y: a.y + if bend == 0.0 { w } else { 0.0 },
        },
        CurvePoint {
            x: b.x - dx / 3.0,
            y: b.y - w + bend,
        },
    )
}

fn segment_path(curve: &Curve, i: usize, opts: &RenderOptions, bend: f64, first: bool) -> String {
    let a = curve.points[i];
    let b = curve.points[i + 1];
    let amp = if curve.style == CurveStyle::Baseline {
        0.0
    } else {
        opts.amplitude
    };
    let (c1, c2) = controls(a, b, i, amp, bend);
    let mut d = String::new();
    if first {
        let _ = write!(d, "M {} {} ", num(opts.px(a.x)), num(opts.py(a.y)));
    }
    let _ = write!(
        d,
        "C {} {} {} {} {} {}",
        num(opts.px(c1.x)),
        num(opts.py(c1.y)),
        num(opts.px(c2.x)),
        num(opts.py(c2.y)),
        num(opts.px(b.x)),
        num(opts.py(b.y))
    );
    d
}

fn curve_class(style: CurveStyle) -> &'static str {
    match style {
        CurveStyle::Baseline => "curve baseline",
        CurveStyle::Certified => "curve certified",
        CurveStyle::Reducible => "curve reducible",
        CurveStyle::Uncertified => "curve uncertified",
    }
}

fn write_curve(out: &mut String, curve: &Curve, opts: &RenderOptions) {
    let _ = writeln!(
        out,
        r#"<g class="{}" data-anchor="{}">"#,
        curve_class(curve.style),
        escape(&curve.anchor)
    );
    let dash = if curve.style == CurveStyle::Uncertified {
        r#" stroke-dasharray="6 4""#
    } else {
        ""
    };
    let mut run = String::new();
    let flush = |out: &mut String, run: &mut String| {
        if !run.is_empty() {
            let _ = writeln!(out, r#"<path class="strand" d="{run}" fill="none"{dash}/>"#);
            run.clear();
        }
    };
    for i in 0..curve.points.len().saturating_sub(1) {
        if curve.paired_segments.contains(&i) {
            flush(out, &mut run);
            let bend = 1.5 * opts.amplitude.abs().max(0.02);
            out.push_str("<g class=\"tangent-pair\">\n");
            for b in [bend, -bend] {
                let d = segment_path(curve, i, opts, b, true);
                let _ = writeln!(out, r#"<path class="branch" d="{d}" fill="none"{dash}/>"#);
            }
            out.push_str("</g>\n");
        } else {
            let d = segment_path(curve, i, opts, 0.0, run.is_empty());
            if !run.is_empty() {
                run.push(' ');
            }
            run.push_str(&d);
        }
    }
    flush(out, &mut run);
    out.push_str("</g>\n");
}

/// A cluster of short strokes standing for a generic point.
fn scribble(cx: f64, cy: f64) -> String {
    let mut d = String::new();
    for (dx, dy) in [(-9.0, -3.0), (-7.0, 1.5), (-8.0, 5.0)] {
        let _ = write!(d, "M {} {} q 4 -6 8 0 t 8 0 ", num(cx + dx), num(cy + dy));
    }
    d.trim_end().to_string()
}

pub(crate) fn render_svg(spec: &DiagramSpec, opts: &RenderOptions) -> String {
    let width = opts.document_width(spec);
    let height = opts.height;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="serif" font-size="{f}">"#,
        w = num(width),
        h = num(height),
        f = num(opts.font_size)
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&spec.title));
    out.push_str("<style>line,path{stroke:#000;stroke-width:1.5}.ellipsis{stroke-width:1}.fuzzy path{stroke:#777;stroke-width:1}.reducible path{stroke:#555}</style>\n");

    let top = opts.py(1.0);
    let bottom = opts.py(0.0);
    for fiber in &spec.fibers {
        let x = num(opts.px(fiber.x));
        let _ = writeln!(
            out,
            r#"<line class="fiber" data-prime="{}" x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            fiber.prime.get(),
            num(bottom),
            num(top)
        );
    }
    for &e in &spec.ellipsis {
        let x = num(opts.px(e));
        let _ = writeln!(
            out,
            r#"<line class="ellipsis" x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            num(bottom),
            num(top)
        );
    }
    let ax = num(opts.px(spec.generic_axis.x));
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{ax}" y1="{}" x2="{ax}" y2="{}"/>"#,
        num(bottom),
        num(top)
    );

    for curve in &spec.horizontal_curves {
        write_curve(&mut out, curve, opts);
    }

    for c in &spec.contacts {
        let cx = opts.px(spec.contact_x(c.target));
        let cy = opts.py(c.y);
        let (x, y) = (num(cx), num(cy));
        let anchor = c
            .curve
            .map(|k| {
                format!(
                    r#" data-anchor="{}""#,
                    escape(&spec.horizontal_curves[k].anchor)
                )
            })
            .unwrap_or_default();
        match (c.style, c.curve) {
            (ContactStyle::Dot, Some(_)) => {
                let _ = writeln!(
                    out,
                    r#"<circle class="contact dot"{anchor} cx="{x}" cy="{y}" r="3"/>"#
                );
            }
            (ContactStyle::Dot, None) => {
                let _ = writeln!(
                    out,
                    r#"<circle class="point dot" cx="{x}" cy="{y}" r="3"/>"#
                );
            }
            (ContactStyle::Blip, _) => {
                let _ = writeln!(
                    out,
                    r##"<circle class="contact blip"{anchor} cx="{x}" cy="{y}" r="7" fill="#fff" stroke="#000" stroke-width="1.5"/>"##
                );
            }
            (ContactStyle::Tangent, _) => {
                let _ = writeln!(
                    out,
                    r##"<g class="contact tangent"{anchor}><circle cx="{x}" cy="{y}" r="3"/><circle cx="{x}" cy="{y}" r="6" fill="none" stroke="#000"/></g>"##
                );
            }
            (ContactStyle::Fuzzy, curve) => {
                let class = if curve.is_some() {
                    "fuzzy curve-end"
                } else {
                    "fuzzy axis-label"
                };
                let label = match (c.target, curve) {
                    (_, Some(k)) => spec.horizontal_curves[k].label.clone(),
                    (ContactTarget::Fiber(i), None) => spec.fibers[i].label.clone(),
                    (ContactTarget::GenericAxis, None) => spec.generic_axis.label.clone(),
                };
                let _ = writeln!(
                    out,
                    r#"<g class="{class}" data-label="{}"><path d="{}" fill="none"/></g>"#,
                    escape(&label),
                    scribble(cx, cy)
                );
            }
        }
    }

    for label in &spec.labels {
        let (dx, dy) = opts.label_offset(label.placement);
        let anchor = if dx < 0.0 { "end" } else { "start" };
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}" text-anchor="{anchor}">{}</text>"#,
            num(opts.px(label.x) + dx),
            num(opts.py(label.y) + dy),
            escape(&label.text)
        );
    }
    out.push_str("</svg>\n");
    out
}
