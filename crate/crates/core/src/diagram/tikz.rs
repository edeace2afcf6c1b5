use std::fmt::Write;

use super::svg::controls;
use super::{num, ContactStyle, CurveStyle, DiagramSpec, Placement, RenderOptions};

pub(crate) const PREAMBLE: &str = r"\tikzset{
  dot/.style={circle, fill, inner sep=1.2pt},
  big dot/.style={circle, draw, thick, fill=white, inner sep=2.8pt},
  tangent/.style={circle, draw, double, inner sep=1.6pt},
  fuzzy/.style={circle, fill=gray!35, draw=gray!70, densely dotted, inner sep=3.5pt},
  uncertified/.style={dashed},
  reducible/.style={gray},
}
";

/// `(2, T^12+1)` as `$(2, T^{12}+1)$`.
fn math(text: &str) -> String {
    let mut out = String::from("$");
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '^' => {
                out.push_str("^{");
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    out.push(d);
                    chars.next();
                }
                out.push('}');
            }
            '*' => {}
            _ => out.push(c),
        }
    }
    out.push('$');
    out
}

fn anchor_of(placement: Placement) -> &'static str {
    match placement {
        Placement::Right => "west",
        Placement::AboveLeft => "south east",
        Placement::AboveRight => "south west",
        Placement::BelowRight => "north west",
    }
}

pub(crate) fn render_tikz(spec: &DiagramSpec, opts: &RenderOptions) -> String {
    let scale = opts.fiber_spacing / opts.units_per_cm;
    let height = (opts.height - 2.0 * opts.margin) / opts.units_per_cm;
    let x = |v: f64| num(v * scale);
    let y = |v: f64| num(v * height);
    let mut out = String::new();
    let _ = writeln!(out, "% {}", spec.title);
    out.push_str(PREAMBLE);
    out.push_str("\\begin{tikzpicture}[font=\\tiny]\n");

    for fiber in &spec.fibers {
        let _ = writeln!(
            out,
            "\\draw[thick] ({}, {}) -- ({}, {});",
            x(fiber.x),
            y(0.0),
            x(fiber.x),
            y(1.0)
        );
    }
    for &e in &spec.ellipsis {
        let _ = writeln!(
            out,
            "\\draw ({}, {}) -- ({}, {});",
            x(e),
            y(0.0),
            x(e),
            y(1.0)
        );
    }
    let ax = spec.generic_axis.x;
    let _ = writeln!(
        out,
        "\\draw[thick] ({}, {}) -- ({}, {});",
        x(ax),
        y(0.0),
        x(ax),
        y(1.0)
    );

    for curve in &spec.horizontal_curves {
        let style = match curve.style {
            CurveStyle::Baseline | CurveStyle::Certified => "thick",
            CurveStyle::Reducible => "thick, reducible",
            CurveStyle::Uncertified => "thick, uncertified",
        };
        let amp = if curve.style == CurveStyle::Baseline {
            0.0
        } else {
            opts.amplitude
        };
        let mut open = false;
        for i in 0..curve.points.len().saturating_sub(1) {
            let (a, b) = (curve.points[i], curve.points[i + 1]);
            let paired = curve.paired_segments.contains(&i);
            let bend = 1.5 * opts.amplitude.abs().max(0.02);
            let bends = if paired { vec![bend, -bend] } else { vec![0.0] };
            if paired && open {
                out.push_str(";\n");
                open = false;
            }
            for bend in bends {
                let (c1, c2) = controls(a, b, i, amp, bend);
                if !open {
                    let _ = write!(out, "\\draw[{style}] ({}, {})", x(a.x), y(a.y));
                    open = true;
                }
                let _ = write!(
                    out,
                    " .. controls ({}, {}) and ({}, {}) .. ({}, {})",
                    x(c1.x),
                    y(c1.y),
                    x(c2.x),
                    y(c2.y),
                    x(b.x),
                    y(b.y)
                );
                if paired {
                    out.push_str(";\n");
                    open = false;
                }
            }
        }
        if open {
            out.push_str(";\n");
        }
    }

    for c in &spec.contacts {
        let style = match (c.style, c.curve) {
            (ContactStyle::Dot, _) => "dot",
            (ContactStyle::Blip, _) => "big dot",
            (ContactStyle::Tangent, _) => "tangent",
            (ContactStyle::Fuzzy, _) => "fuzzy",
        };
        let _ = writeln!(
            out,
            "\\path ({}, {}) node[{style}] {{}};",
            x(spec.contact_x(c.target)),
            y(c.y)
        );
    }
    for label in &spec.labels {
        let _ = writeln!(
            out,
            "\\path ({}, {}) node[anchor={}, inner sep=4pt] {{{}}};",
            x(label.x),
            y(label.y),
            anchor_of(label.placement),
            math(&label.text)
        );
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}
