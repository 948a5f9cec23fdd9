//! Bound expressions like `|P|^{2/3}|Q|^{2/3} + |P| + |Q|`, as fixed-point
//! decimals, and the ratio of a count to them.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Digits after the decimal point.
pub const DIGITS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    /// `|P|^{2/3}|Q|^{2/3} + |P| + |Q|`
    Dim3,
    /// `|P| + |Q|`
    Dim2,
    /// `|P|^{2/3}|Q|^{2/3}`
    Main,
    /// `|P|^{4/3}`
    Repeated,
    /// `|P|^{2/3}`
    Distinct,
    /// `|P|`
    Linear,
}

impl EnvelopeKind {
    pub fn name(self) -> &'static str {
        match self {
            EnvelopeKind::Dim3 => "dim3",
            EnvelopeKind::Dim2 => "dim2",
            EnvelopeKind::Main => "main",
            EnvelopeKind::Repeated => "repeated",
            EnvelopeKind::Distinct => "distinct",
            EnvelopeKind::Linear => "linear",
        }
    }

    pub fn expression(self) -> &'static str {
        match self {
            EnvelopeKind::Dim3 => "|P|^(2/3)*|Q|^(2/3) + |P| + |Q|",
            EnvelopeKind::Dim2 => "|P| + |Q|",
            EnvelopeKind::Main => "|P|^(2/3)*|Q|^(2/3)",
            EnvelopeKind::Repeated => "|P|^(4/3)",
            EnvelopeKind::Distinct => "|P|^(2/3)",
            EnvelopeKind::Linear => "|P|",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub kind: EnvelopeKind,
    /// Value times `10^DIGITS`, truncated.
    pub scaled: BigUint,
    /// Set when the value was truncated.
    pub approx: bool,
    /// `count / value` times `10^DIGITS`, truncated; `None` for a zero envelope.
    pub ratio_scaled: Option<BigUint>,
}

fn ten_pow(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

/// `floor(base^(num/den) * 10^DIGITS)` and whether it is exact.
fn scaled_power(base: u64, num: u32, den: u32) -> (BigUint, bool) {
    let radicand = BigUint::from(base).pow(num) * ten_pow(DIGITS * den);
    let root = radicand.nth_root(den);
    let exact = root.pow(den) == radicand;
    (root, exact)
}

pub(crate) fn format_scaled(v: &BigUint) -> String {
    let unit = ten_pow(DIGITS);
    let int = v / &unit;
    let frac = (v % &unit).to_string();
    format!("{}.{:0>width$}", int, frac, width = DIGITS as usize)
}

impl Envelope {
    pub fn new(kind: EnvelopeKind, p_len: usize, q_len: usize, count: u64) -> Envelope {
        let (p, q) = (p_len as u64, q_len as u64);
        let unit = ten_pow(DIGITS);
        let (scaled, exact) = match kind {
            EnvelopeKind::Dim3 => {
                let (main, exact) = scaled_power(p * q, 2, 3);
                (main + BigUint::from(p + q) * &unit, exact)
            }
            EnvelopeKind::Dim2 => (BigUint::from(p + q) * &unit, true),
            EnvelopeKind::Main => scaled_power(p * q, 2, 3),
            EnvelopeKind::Repeated => scaled_power(p, 4, 3),
            EnvelopeKind::Distinct => scaled_power(p, 2, 3),
            EnvelopeKind::Linear => (BigUint::from(p) * &unit, true),
        };
        let ratio_scaled = if scaled.is_zero() {
            None
        } else {
            Some(BigUint::from(count) * &unit * &unit / &scaled)
        };
        Envelope { kind, scaled, approx: !exact, ratio_scaled }
    }

    pub fn value_string(&self) -> String {
        format_scaled(&self.scaled)
    }

    pub fn ratio_string(&self) -> Option<String> {
        self.ratio_scaled.as_ref().map(format_scaled)
    }

    pub fn ratio_f64(&self) -> Option<f64> {
        self.ratio_scaled
            .as_ref()
            .map(|r| r.to_f64().unwrap_or(f64::INFINITY) / 10f64.powi(DIGITS as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_cube_root() {
        // (8 * 8)^(2/3) = 16
        let e = Envelope::new(EnvelopeKind::Main, 8, 8, 8);
        assert!(!e.approx);
        assert_eq!(e.value_string(), format!("16.{}", "0".repeat(30)));
        assert_eq!(e.ratio_string().unwrap(), format!("0.5{}", "0".repeat(29)));
    }

    #[test]
    fn truncated_root() {
        // 2^(2/3) = 1.587401051968199474751705639272...
        let e = Envelope::new(EnvelopeKind::Distinct, 2, 0, 0);
        assert!(e.approx);
        assert_eq!(e.value_string(), "1.587401051968199474751705639272");
        let d3 = Envelope::new(EnvelopeKind::Dim3, 27, 27, 45);
        // 729^(2/3) = 81, + 54
        assert_eq!(d3.value_string(), format!("135.{}", "0".repeat(30)));
        assert!((d3.ratio_f64().unwrap() - 45.0 / 135.0).abs() < 1e-15);
    }

    #[test]
    fn empty_sets() {
        assert!(Envelope::new(EnvelopeKind::Dim2, 0, 0, 0).ratio_scaled.is_none());
    }
}
