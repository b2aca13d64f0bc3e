//! Exact arithmetic kernel: rationals, sparse polynomials in `z`, `phi`,
//! `eps`, unreduced rational functions, factored products of linear forms,
//! substitution and simple-pole residues.
//!
//! Rational functions are never reduced by a gcd. Constructions work with
//! [`FactoredRat`] and [`FactoredSum`], whose denominators are products of
//! [`LinForm`]s; collapsing a sum uses the factor-wise lcm and trial
//! division by each linear factor, which is all the cancellation needed here.

mod factored;
mod linform;
mod mpoly;
mod qmatrix;
mod ratfun;
mod residue;

pub use factored::{FactoredRat, FactoredSum, Fraction};
pub use linform::LinForm;
pub use mpoly::{Exponent, MPoly};
pub use qmatrix::QMatrix;
pub use ratfun::{RatFun, Substitution};
pub use residue::residue_at;

pub use num::{BigInt, BigRational};

/// Arbitrary-precision rational; always normalized (positive denominator,
/// lowest terms).
pub type Rational = BigRational;

/// The three equivariant parameters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    Z,
    Phi,
    Eps,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::Z, Var::Phi, Var::Eps];

    pub fn index(self) -> usize {
        match self {
            Var::Z => 0,
            Var::Phi => 1,
            Var::Eps => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::Phi => "phi",
            Var::Eps => "eps",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::Phi => "\\varphi",
            Var::Eps => "\\varepsilon",
        }
    }
}

/// Parses `p/q` or an integer. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() || s.contains(['.', 'e', 'E']) {
        return None;
    }
    let r: Rational = s.parse().ok()?;
    Some(r)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/7"), Some(rat(-3, 7)));
        assert_eq!(parse_rational("4"), Some(int(4)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational(""), None);
    }
}
