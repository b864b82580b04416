//! CSV emission for scan tables.

use crate::qsl::{ScanRow, ScanTable};

pub const CSV_HEADER: &str =
    "axis,value,bath,tau_qsl_unified,tau_qsl_ml,tau_qsl_mt,alpha_tau,alpha_target,f_rel_purity";

const SIGNIFICANT_DIGITS: i32 = 12;

/// Formats `x` with 12 significant digits in the style of C's `%.12g`
/// (exponent written without padding, e.g. `1.5e-7`).
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (SIGNIFICANT_DIGITS - 1) as usize, x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent marker");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !(-5..SIGNIFICANT_DIGITS).contains(&exponent) {
        return format!("{}e{}", trim_fraction(mantissa), exponent);
    }
    let decimals = (SIGNIFICANT_DIGITS - 1 - exponent) as usize;
    trim_fraction(&format!("{x:.decimals$}")).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn render_row(axis: &str, row: &ScanRow) -> String {
    let head = format!("{axis},{},{}", format_sig(row.axis_value), row.kind);
    match &row.result {
        Ok(r) => {
            let fields = [r.unified, r.ml, r.mt, r.alpha_at_tau, r.alpha_at_target, r.f_rel_purity];
            let body: Vec<String> = fields.iter().map(|&v| format_sig(v)).collect();
            format!("{head},{}", body.join(","))
        }
        // error note in the last column
        Err(e) => {
            let note = e.to_string().replace([',', '\n', '\r'], ";");
            format!("{head},,,,,,error: {note}")
        }
    }
}

/// Header plus one line per row, LF-terminated.
pub fn render_csv(table: &ScanTable) -> String {
    let axis = table.axis.as_str();
    let mut out = String::with_capacity(96 * (table.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        out.push_str(&render_row(axis, row));
        out.push('\n');
    }
    out
}
