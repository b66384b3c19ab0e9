//! Output configuration shared by the CLI subcommands.

use std::path::PathBuf;

use crate::error::{domain, Result};
use crate::field::{format_rational, rational_to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NumericMode {
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputConfig {
    pub format: Format,
    pub numeric_mode: NumericMode,
    /// Digits after the decimal point in float mode, 1..=17.
    pub float_digits: usize,
    pub output_path: Option<PathBuf>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            format: Format::Plain,
            numeric_mode: NumericMode::Exact,
            float_digits: 12,
            output_path: None,
        }
    }
}

impl OutputConfig {
    pub fn new(
        format: Format,
        numeric_mode: NumericMode,
        float_digits: usize,
        output_path: Option<PathBuf>,
    ) -> Result<Self> {
        if !(1..=17).contains(&float_digits) {
            return Err(domain(format!("--digits must be in 1..=17, got {float_digits}")));
        }
        Ok(OutputConfig {
            format,
            numeric_mode,
            float_digits,
            output_path,
        })
    }

    /// A value as `num/den` in exact mode, fixed-point otherwise.
    pub fn value(&self, value: &Rational) -> String {
        match self.numeric_mode {
            NumericMode::Exact => format_rational(value),
            NumericMode::Float => format!("{:.*}", self.float_digits, rational_to_f64(value)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, ratio};

    #[test]
    fn values() {
        let exact = OutputConfig::default();
        assert_eq!(exact.value(&ratio(415177, 2911)), "415177/2911");
        assert_eq!(exact.value(&int(1)), "1");
        let float = OutputConfig::new(Format::Plain, NumericMode::Float, 12, None).unwrap();
        assert_eq!(float.value(&int(5)), "5.000000000000");
        let short = OutputConfig::new(Format::Plain, NumericMode::Float, 3, None).unwrap();
        assert_eq!(short.value(&ratio(11, 15)), "0.733");
    }

    #[test]
    fn digit_range() {
        assert!(OutputConfig::new(Format::Csv, NumericMode::Float, 0, None).is_err());
        assert!(OutputConfig::new(Format::Csv, NumericMode::Float, 18, None).is_err());
        assert!(OutputConfig::new(Format::Csv, NumericMode::Float, 17, None).is_ok());
    }
}
