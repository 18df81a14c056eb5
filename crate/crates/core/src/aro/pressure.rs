use core::f64::consts::FRAC_PI_2;
use core::str::FromStr;

use crate::Error;

/// The golden ratio.
pub const PHI: f64 = 1.618_033_988_749_895;

/// How the selection-pressure exponent is read.
///
/// `Monotone` evaluates `sin(max(1 - phi^ln(i) / b, 0) * pi/2)`, which falls
/// with the iteration count and rises with the number of buds the current
/// parent has produced. `Literal` evaluates the printed form
/// `sin(max(1 - phi^(ln(i) / b), 0) * pi/2)`, which is zero for every
/// `i, b >= 1` and so always selects the chaotic variation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum PressureForm {
    #[default]
    Monotone,
    Literal,
}

impl PressureForm {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Monotone => "monotone",
            Self::Literal => "literal",
        }
    }
}

impl FromStr for PressureForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "monotone" => Ok(Self::Monotone),
            "literal" => Ok(Self::Literal),
            other => Err(Error::Config(alloc::format!(
                "unknown selection-pressure form {other:?} (expected monotone or literal)"
            ))),
        }
    }
}

/// Probability of picking the stochastic weight variation at iteration `i`
/// after `b` buds from the current parent. Both counters start at 1.
pub fn selection_pressure(i: u64, b: u64, form: PressureForm) -> f64 {
    debug_assert!(i >= 1 && b >= 1);
    let ln_i = libm::log(i.max(1) as f64);
    let b = b.max(1) as f64;
    let x = match form {
        PressureForm::Monotone => 1.0 - libm::pow(PHI, ln_i) / b,
        PressureForm::Literal => 1.0 - libm::pow(PHI, ln_i / b),
    };
    libm::sin(x.max(0.0) * FRAC_PI_2)
}
