//! Number and label rendering shared by the JSON and CSV writers.

use qinterf_core::optics::JonesVector;

/// Deepest decimal place written by [`fixed12`]; smaller magnitudes print as zero.
const MAX_DECIMALS: i32 = 30;

/// Fixed-point decimal carrying 12 significant digits.
pub fn fixed12(value: f64) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let magnitude = value.abs();
    let decimals = if magnitude == 0.0 {
        11
    } else {
        (11 - magnitude.log10().floor() as i32).clamp(0, MAX_DECIMALS)
    };
    let text = format!("{value:.*}", decimals as usize);
    // Values that round to zero keep no sign.
    match text.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => text,
    }
}

/// Name of a canonical (phase-fixed, unit) polarization state: `H`, `V`,
/// `D`, `A`, or `elliptical`.
pub fn polarization_label(j: &JonesVector) -> &'static str {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let named = [
        ("H", JonesVector::real(1.0, 0.0)),
        ("V", JonesVector::real(0.0, 1.0)),
        ("D", JonesVector::real(s, s)),
        ("A", JonesVector::real(s, -s)),
    ];
    named
        .iter()
        .find(|(_, reference)| j.ray_distance(reference) < 1e-9)
        .map_or("elliptical", |(name, _)| name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qinterf_core::Amplitude as Complex64;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fixed12(1.0), "1.00000000000");
        assert_eq!(fixed12(0.5), "0.500000000000");
        assert_eq!(fixed12(0.0), "0.00000000000");
        assert_eq!(fixed12(-0.0), "0.00000000000");
        assert_eq!(fixed12(123.456), "123.456000000");
        assert_eq!(fixed12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fixed12(2.5e-4), "0.000250000000000");
        assert_eq!(fixed12(-1e-40), "0.000000000000000000000000000000");
        assert_eq!(fixed12(1e13), "10000000000000");
    }

    #[test]
    fn labels_ignore_global_phase() {
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(polarization_label(&JonesVector::horizontal().scale(i)), "H");
        assert_eq!(polarization_label(&JonesVector::vertical()), "V");
        assert_eq!(polarization_label(&JonesVector::real(1.0, -1.0)), "A");
        assert_eq!(polarization_label(&JonesVector::new(1.0.into(), i)), "elliptical");
    }
}
