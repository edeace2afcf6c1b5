use std::fmt::Write;

/// One term of a polynomial as it is printed: sign, magnitude and degree.
pub(crate) struct Term {
    pub negative: bool,
    pub magnitude: String,
    pub degree: usize,
}

/// Descending powers, `T^2+2*T+2`, with `T^2-13` rather than `T^2+-13`.
/// Terms must already be in descending degree order and nonzero.
pub(crate) fn render_terms(terms: impl IntoIterator<Item = Term>) -> String {
    let mut out = String::new();
    for (i, term) in terms.into_iter().enumerate() {
        if term.negative {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let unit = term.magnitude == "1";
        match term.degree {
            0 => out.push_str(&term.magnitude),
            d => {
                if !unit {
                    out.push_str(&term.magnitude);
                    out.push('*');
                }
                out.push('T');
                if d > 1 {
                    let _ = write!(out, "^{d}");
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
