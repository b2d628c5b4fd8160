//! Locale-free numeric formatting shared by every report.

/// Rounds half away from zero to `decimals` places.
pub fn round_half_away(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (x * scale).round() / scale
}

/// Fixed-point text with half-away-from-zero rounding; never prints `-0`.
pub fn fixed(x: f64, decimals: u32) -> String {
    let r = round_half_away(x, decimals);
    // -0.0 + 0.0 == +0.0
    format!("{:.*}", decimals as usize, r + 0.0)
}
