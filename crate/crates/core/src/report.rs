//! Decimal rendering shared by CSV and structured-record output.

/// Scientific notation with 12 significant digits.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Serde helper writing floats as [`fmt12`] strings.
pub mod as_fmt12 {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt12(*x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt12(std::f64::consts::LN_2), "6.93147180560e-1");
        assert_eq!(fmt12(-0.0079051), "-7.90510000000e-3");
        assert_eq!(fmt12(1.0), "1.00000000000e0");
    }
}
