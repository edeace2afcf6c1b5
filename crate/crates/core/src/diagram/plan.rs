use std::collections::BTreeSet;

use super::{
    Contact, ContactStyle, ContactTarget, Curve, CurvePoint, CurveStyle, DiagramError, DiagramSpec,
    FiberLine, GenericAxis, Label, Placement,
};
use crate::padic::Prime;
use crate::poly::{FpPoly, IntPoly};
use crate::spectrum::{Anchor, FiberBehavior, FiberReport, FiberVerdict, GenericVerdict, Space};

/// Slots `(p, T+k)` spread evenly up a fiber; higher `k` share the top of the fiber.
pub const VISIBLE_SLOTS: u64 = 8;

/// Closed points labeled per fiber in a global diagram unless told otherwise.
pub const DEFAULT_BUDGET: usize = 7;

const SLOT_SPAN: f64 = 0.8;
const TAIL_SPAN: f64 = 0.12;
const AXIS_GAP: f64 = 1.5;
const LEAD_IN: f64 = 0.4;
const LABEL_GAP: f64 = 0.04;

/// Height of the closed point `(p, T+k)`.
pub fn slot_height(p: Prime, k: u64) -> f64 {
    let p = p.get();
    let visible = p.min(VISIBLE_SLOTS);
    if k < visible {
        SLOT_SPAN * k as f64 / visible as f64
    } else {
        SLOT_SPAN + TAIL_SPAN * (k - visible + 1) as f64 / (p - visible + 1) as f64
    }
}

/// Half a slot above the slot of the constant term, for a factor of degree ≥ 2.
fn nonlinear_height(p: Prime, g: &FpPoly) -> f64 {
    let visible = p.get().min(VISIBLE_SLOTS);
    let c = g.coeff(0);
    let half = if c < visible {
        0.5 * SLOT_SPAN / visible as f64
    } else {
        0.5 * TAIL_SPAN / (p.get() - visible + 1) as f64
    };
    slot_height(p, c) + half
}

struct Mark {
    y: f64,
    style: ContactStyle,
    ideal: String,
    base: bool,
}

fn ideal(p: Prime, g: &FpPoly) -> String {
    format!("({}, {g})", p.get())
}

fn factor_mark(p: Prime, g: &FpPoly, style: ContactStyle) -> Mark {
    match g.linear_root() {
        Some(r) => {
            let k = (p.get() - r) % p.get();
            Mark {
                y: slot_height(p, k),
                style,
                ideal: ideal(p, &FpPoly::linear(p, k)),
                base: k == 0,
            }
        }
        None => Mark {
            y: nonlinear_height(p, g),
            style,
            ideal: ideal(p, g),
            base: false,
        },
    }
}

/// Where an anchor meets one fiber, lowest first.
fn marks(row: &FiberBehavior) -> Vec<Mark> {
    let p = row.fiber;
    let mut out: Vec<Mark> = match &row.verdict {
        FiberVerdict::Split { factors, .. } => factors
            .iter()
            .filter(|s| s.root.is_some())
            .map(|s| factor_mark(p, &s.factor, ContactStyle::Dot))
            .collect(),
        FiberVerdict::Blip { factor, .. } => vec![factor_mark(p, factor, ContactStyle::Blip)],
        FiberVerdict::Tangent {
            factor, factors, ..
        } => std::iter::once(factor_mark(p, factor, ContactStyle::Tangent))
            .chain(
                factors
                    .iter()
                    .filter(|s| s.multiplicity == 1 && s.root.is_some())
                    .map(|s| factor_mark(p, &s.factor, ContactStyle::Dot)),
            )
            .collect(),
        FiberVerdict::Disjoint { .. } | FiberVerdict::ContainedInFiber => vec![],
    };
    out.sort_by(|a, b| a.y.total_cmp(&b.y));
    out
}

fn is_t(anchor: &Anchor) -> bool {
    matches!(anchor, Anchor::Fixed(f) if *f == IntPoly::t())
}

fn curve_style(generic: &GenericVerdict) -> CurveStyle {
    match generic {
        GenericVerdict::Irreducible { .. } => CurveStyle::Certified,
        GenericVerdict::Reducible { .. } => CurveStyle::Reducible,
        GenericVerdict::Undecided { .. } => CurveStyle::Uncertified,
    }
}

struct Planner {
    spec: DiagramSpec,
    labeled: BTreeSet<(Option<usize>, String)>,
}

impl Planner {
    fn label(&mut self, target: ContactTarget, text: String, y: f64, placement: Placement) {
        let key = match target {
            ContactTarget::Fiber(i) => Some(i),
            ContactTarget::GenericAxis => None,
        };
        if self.labeled.insert((key, text.clone())) {
            let x = self.spec.contact_x(target);
            self.spec.labels.push(Label {
                text,
                x,
                y,
                point_y: y,
                placement,
            });
        }
    }

    /// Pushes right-hand labels in each column upward until they are
    /// `LABEL_GAP` apart.
    fn spread_labels(&mut self) {
        let mut order: Vec<usize> = (0..self.spec.labels.len())
            .filter(|&i| self.spec.labels[i].placement == Placement::Right)
            .collect();
        order.sort_by(|&a, &b| {
            let (la, lb) = (&self.spec.labels[a], &self.spec.labels[b]);
            la.x.total_cmp(&lb.x)
                .then(la.y.total_cmp(&lb.y))
                .then(a.cmp(&b))
        });
        let mut prev: Option<(f64, f64)> = None;
        for i in order {
            let label = &mut self.spec.labels[i];
            if let Some((x, y)) = prev {
                if x == label.x && label.y < y + LABEL_GAP {
                    label.y = y + LABEL_GAP;
                }
            }
            prev = Some((label.x, label.y));
        }
    }

    fn contact(
        &mut self,
        target: ContactTarget,
        y: f64,
        style: ContactStyle,
        curve: Option<usize>,
    ) {
        self.spec.contacts.push(Contact {
            target,
            y,
            style,
            curve,
        });
    }
}

/// Without a budget every contact is labeled; with one, closed points `(p, T+k)`
/// come from the budget and only tangent contacts add labels.
fn plan(
    title: String,
    primes: &[Prime],
    reports: &[&FiberReport],
    budget: Option<usize>,
) -> DiagramSpec {
    let n = primes.len();
    let last = n.saturating_sub(1) as f64;
    let ellipsis: Vec<f64> = if budget.is_some() && n > 0 {
        [0.45, 0.6, 0.7, 0.78].iter().map(|d| last + d).collect()
    } else {
        vec![]
    };
    let axis_x = if n == 0 { 0.0 } else { last + AXIS_GAP };
    let fibers = primes
        .iter()
        .enumerate()
        .map(|(i, &p)| FiberLine {
            prime: p,
            label: format!("({})", p.get()),
            x: i as f64,
        })
        .collect();
    let mut pl = Planner {
        spec: DiagramSpec {
            title,
            fibers,
            generic_axis: GenericAxis {
                label: "(0)".into(),
                x: axis_x,
            },
            ellipsis,
            horizontal_curves: vec![],
            contacts: vec![],
            labels: vec![],
        },
        labeled: BTreeSet::new(),
    };
    let axis = ContactTarget::GenericAxis;

    for (i, &p) in primes.iter().enumerate() {
        pl.contact(ContactTarget::Fiber(i), 1.0, ContactStyle::Fuzzy, None);
        pl.label(
            ContactTarget::Fiber(i),
            format!("({})", p.get()),
            1.0,
            Placement::AboveLeft,
        );
    }
    pl.contact(axis, 1.0, ContactStyle::Fuzzy, None);
    pl.label(axis, "(0)".into(), 1.0, Placement::AboveRight);

    // the (T) line through every base point (p, T)
    let mut points = vec![CurvePoint {
        x: -LEAD_IN,
        y: 0.0,
    }];
    for (i, &p) in primes.iter().enumerate() {
        points.push(CurvePoint {
            x: i as f64,
            y: 0.0,
        });
        pl.contact(ContactTarget::Fiber(i), 0.0, ContactStyle::Dot, Some(0));
        if budget.is_none_or(|b| b >= 1) {
            let text = ideal(p, &FpPoly::t(p));
            pl.label(ContactTarget::Fiber(i), text, 0.0, Placement::Right);
        }
    }
    points.push(CurvePoint { x: axis_x, y: 0.0 });
    pl.spec.horizontal_curves.push(Curve {
        anchor: "T".into(),
        label: "(T)".into(),
        style: CurveStyle::Baseline,
        points,
        paired_segments: vec![],
    });
    pl.contact(axis, 0.0, ContactStyle::Fuzzy, Some(0));
    pl.label(axis, "(T)".into(), 0.0, Placement::BelowRight);

    if let Some(b) = budget {
        for (i, &p) in primes.iter().enumerate() {
            let shown = (b as u64).min(p.get()).min(VISIBLE_SLOTS);
            for k in 1..shown {
                let y = slot_height(p, k);
                pl.contact(ContactTarget::Fiber(i), y, ContactStyle::Dot, None);
                let text = ideal(p, &FpPoly::linear(p, k));
                pl.label(ContactTarget::Fiber(i), text, y, Placement::Right);
            }
        }
    }

    let anchors: Vec<&FiberReport> = reports
        .iter()
        .copied()
        .filter(|r| !is_t(&r.anchor))
        .collect();
    let m = anchors.len();
    for (a, report) in anchors.iter().enumerate() {
        let index = pl.spec.horizontal_curves.len();
        let generic_y = 0.3 + 0.55 * (a + 1) as f64 / (m + 1) as f64;
        let mut points = Vec::new();
        let mut paired = Vec::new();
        for (i, row) in report.rows.iter().enumerate() {
            for mark in marks(row) {
                if mark.style == ContactStyle::Tangent && !mark.base {
                    paired.push(points.len());
                }
                points.push(CurvePoint {
                    x: i as f64,
                    y: mark.y,
                });
                let target = ContactTarget::Fiber(i);
                pl.contact(target, mark.y, mark.style, Some(index));
                if budget.is_none() || mark.style == ContactStyle::Tangent {
                    pl.label(target, mark.ideal, mark.y, Placement::Right);
                }
            }
        }
        if points.is_empty() {
            points.push(CurvePoint {
                x: -LEAD_IN,
                y: generic_y,
            });
        }
        points.push(CurvePoint {
            x: axis_x,
            y: generic_y,
        });
        let style = curve_style(&report.generic);
        let label = format!("({})", report.anchor);
        if style == CurveStyle::Certified {
            pl.contact(axis, generic_y, ContactStyle::Fuzzy, Some(index));
        }
        pl.label(axis, label.clone(), generic_y, Placement::Right);
        pl.spec.horizontal_curves.push(Curve {
            anchor: report.anchor.to_string(),
            label,
            style,
            points,
            paired_segments: paired,
        });
    }
    pl.spread_labels();
    pl.spec
}

/// `Spec Z_p[T]`: one special fiber, the generic axis, and a curve per report.
pub fn plan_zp_diagram(p: Prime, reports: &[FiberReport]) -> Result<DiagramSpec, DiagramError> {
    for r in reports {
        if r.space != (Space::Zp { p }) || r.rows.len() != 1 {
            return Err(DiagramError::SpaceMismatch {
                expected: format!("Zp({})", p.get()),
                found: space_name(&r.space),
            });
        }
    }
    let refs: Vec<&FiberReport> = reports.iter().collect();
    Ok(plan(format!("Spec Z_{}[T]", p.get()), &[p], &refs, None))
}

/// `Spec Z[T]` over the given primes, labeling up to `budget` closed points
/// `(p, T+k)` per fiber.
pub fn plan_global_diagram(
    primes: &[Prime],
    reports: &[FiberReport],
    budget: usize,
) -> Result<DiagramSpec, DiagramError> {
    let expected = Space::Z {
        primes: primes.to_vec(),
    };
    for r in reports {
        if r.space != expected || r.rows.len() != primes.len() {
            return Err(DiagramError::SpaceMismatch {
                expected: space_name(&expected),
                found: space_name(&r.space),
            });
        }
    }
    let refs: Vec<&FiberReport> = reports.iter().collect();
    Ok(plan("Spec Z[T]".into(), primes, &refs, Some(budget)))
}

fn space_name(space: &Space) -> String {
    match space {
        Space::Zp { p } => format!("Zp({})", p.get()),
        Space::Z { primes } => {
            let list: Vec<String> = primes.iter().map(|p| p.get().to_string()).collect();
            format!("Z({})", list.join(","))
        }
    }
}
