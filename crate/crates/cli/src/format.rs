//! Number rendering for exported data files: shortest round-trip
//! representation, capped at nine significant digits so reruns diff
//! cleanly.

pub fn fmt_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_nan() {
        return "NaN".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    let shortest = format!("{v}");
    if significant_digits(&shortest) <= 9 {
        shortest
    } else {
        let rounded: f64 = format!("{v:.8e}").parse().expect("9-digit float reparses");
        format!("{rounded}")
    }
}

fn significant_digits(s: &str) -> usize {
    let mantissa = s.split(['e', 'E']).next().unwrap_or(s);
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let trimmed = digits.trim_start_matches('0');
    trimmed.len()
}
