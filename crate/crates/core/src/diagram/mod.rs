//! Mumford-style pictures of `Spec Z_p[T]` and `Spec Z[T]`.
//!
//! Planning turns fiber reports into a [`DiagramSpec`] in layout units: fibers sit
//! at integer `x`, heights run from the `(T)` baseline at `y = 0` to the fuzzy
//! generic points at `y = 1`. Rendering scales that to SVG or TikZ.

mod plan;
mod svg;
mod tikz;

use serde::Serialize;
use thiserror::Error;

use crate::padic::Prime;

pub use plan::{plan_global_diagram, plan_zp_diagram, slot_height, DEFAULT_BUDGET, VISIBLE_SLOTS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagramError {
    #[error("report space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },
    #[error("invalid diagram: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberLine {
    pub prime: Prime,
    pub label: String,
    pub x: f64,
}

/// The generic fiber `A^1` over `Q_p` (or `Q`), drawn as the rightmost vertical line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenericAxis {
    pub label: String,
    pub x: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContactTarget {
    Fiber(usize),
    GenericAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContactStyle {
    Dot,
    Blip,
    Tangent,
    Fuzzy,
}

/// A marked point. `curve` names the anchor curve it belongs to, if any.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contact {
    pub target: ContactTarget,
    pub y: f64,
    pub style: ContactStyle,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveStyle {
    Baseline,
    Certified,
    Reducible,
    Uncertified,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
}

/// A horizontal curve through its contact points. Segment `i` joins `points[i]`
/// and `points[i + 1]`; segments listed in `paired_segments` are drawn as two
/// branches leaving a tangent contact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub anchor: String,
    pub label: String,
    pub style: CurveStyle,
    pub points: Vec<CurvePoint>,
    pub paired_segments: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    Right,
    AboveLeft,
    AboveRight,
    BelowRight,
}

/// Text at `(x, y)` naming the point at height `point_y`; the two differ when
/// crowded labels are pushed apart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Label {
    pub text: String,
    pub x: f64,
    pub y: f64,
    pub point_y: f64,
    pub placement: Placement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagramSpec {
    pub title: String,
    pub fibers: Vec<FiberLine>,
    pub generic_axis: GenericAxis,
    /// `x` positions of the unlabeled fibers standing in for the remaining primes.
    pub ellipsis: Vec<f64>,
    pub horizontal_curves: Vec<Curve>,
    pub contacts: Vec<Contact>,
    pub labels: Vec<Label>,
}

impl DiagramSpec {
    /// Only the generic axis.
    pub fn empty(title: &str) -> Self {
        DiagramSpec {
            title: title.into(),
            fibers: vec![],
            generic_axis: GenericAxis {
                label: "(0)".into(),
                x: 0.0,
            },
            ellipsis: vec![],
            horizontal_curves: vec![],
            contacts: vec![],
            labels: vec![],
        }
    }

    pub fn contact_x(&self, target: ContactTarget) -> f64 {
        match target {
            ContactTarget::Fiber(i) => self.fibers[i].x,
            ContactTarget::GenericAxis => self.generic_axis.x,
        }
    }

    /// Largest `x` used by any element.
    pub fn extent(&self) -> f64 {
        let xs = self
            .fibers
            .iter()
            .map(|f| f.x)
            .chain(self.ellipsis.iter().copied())
            .chain(self.labels.iter().map(|l| l.x))
            .chain(
                self.horizontal_curves
                    .iter()
                    .flat_map(|c| c.points.iter().map(|p| p.x)),
            );
        xs.fold(self.generic_axis.x, f64::max)
    }

    pub fn count_contacts(&self, style: ContactStyle) -> usize {
        self.contacts
            .iter()
            .filter(|c| c.style == style && c.curve.is_some())
            .count()
    }

    /// Rejects dangling references and non-finite coordinates.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let bad = |msg: String| Err(DiagramError::InvalidSpec(msg));
        let finite = |v: f64| v.is_finite();
        if !finite(self.generic_axis.x) || self.fibers.iter().any(|f| !finite(f.x)) {
            return bad("non-finite fiber position".into());
        }
        for (i, c) in self.contacts.iter().enumerate() {
            if let ContactTarget::Fiber(k) = c.target {
                if k >= self.fibers.len() {
                    return bad(format!("contact {i} references missing fiber {k}"));
                }
            }
            if let Some(k) = c.curve {
                if k >= self.horizontal_curves.len() {
                    return bad(format!("contact {i} references missing curve {k}"));
                }
            }
            if !finite(c.y) {
                return bad(format!("contact {i} has a non-finite height"));
            }
        }
        for curve in &self.horizontal_curves {
            if curve.points.iter().any(|p| !finite(p.x) || !finite(p.y)) {
                return bad(format!("curve {} has a non-finite point", curve.label));
            }
            if let Some(&s) = curve
                .paired_segments
                .iter()
                .find(|&&s| s + 1 >= curve.points.len())
            {
                return bad(format!("curve {} pairs missing segment {s}", curve.label));
            }
        }
        if let Some(l) = self
            .labels
            .iter()
            .find(|l| l.text.is_empty() || !finite(l.x) || !finite(l.y) || !finite(l.point_y))
        {
            return bad(format!("malformed label {:?}", l.text));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Svg,
    Tikz,
}

/// Scale and styling. Lengths are SVG user units; TikZ output divides them by
/// `units_per_cm`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderOptions {
    pub format: Format,
    /// Minimum document width; wide diagrams grow past it.
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub fiber_spacing: f64,
    /// Vertical wobble of curves between fibers, in layout units.
    pub amplitude: f64,
    pub font_size: f64,
    pub units_per_cm: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            format: Format::Svg,
            width: 480.0,
            height: 480.0,
            margin: 48.0,
            fiber_spacing: 160.0,
            amplitude: 0.06,
            font_size: 12.0,
            units_per_cm: 40.0,
        }
    }
}

impl RenderOptions {
    pub fn with_format(format: Format) -> Self {
        RenderOptions {
            format,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let lengths = [
            self.width,
            self.height,
            self.fiber_spacing,
            self.font_size,
            self.units_per_cm,
        ];
        if lengths.iter().any(|v| !v.is_finite() || *v <= 0.0)
            || !(self.margin.is_finite() && self.margin >= 0.0)
            || !self.amplitude.is_finite()
            || self.height <= 2.0 * self.margin
        {
            return Err(DiagramError::InvalidSpec(
                "render lengths must be positive and the height must exceed twice the margin"
                    .into(),
            ));
        }
        Ok(())
    }

    pub fn px(&self, x: f64) -> f64 {
        self.margin + x * self.fiber_spacing
    }

    pub fn py(&self, y: f64) -> f64 {
        self.margin + (1.0 - y) * (self.height - 2.0 * self.margin)
    }

    /// Document width for a spec: room for every element plus the rightmost labels.
    pub fn document_width(&self, spec: &DiagramSpec) -> f64 {
        (self.px(spec.extent()) + self.margin + 8.0 * self.font_size).max(self.width)
    }

    /// Pixel offset of a label's text anchor from its point.
    pub fn label_offset(&self, placement: Placement) -> (f64, f64) {
        let s = self.font_size;
        match placement {
            Placement::Right => (0.75 * s, 0.35 * s),
            Placement::AboveLeft => (-0.75 * s, -0.9 * s),
            Placement::AboveRight => (0.75 * s, -0.9 * s),
            Placement::BelowRight => (0.75 * s, 1.4 * s),
        }
    }
}

/// The rendered document for `spec`, after validating both inputs.
pub fn render(spec: &DiagramSpec, opts: &RenderOptions) -> Result<String, DiagramError> {
    spec.validate()?;
    opts.validate()?;
    Ok(match opts.format {
        Format::Svg => svg::render_svg(spec, opts),
        Format::Tikz => tikz::render_tikz(spec, opts),
    })
}

/// Fixed two-decimal coordinates, with `-0.00` normalized.
pub(crate) fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}
