use std::fmt;

use super::{MPoly, Rational};

/// Integer linear form `z*z + phi*phi + eps*eps` in the equivariant weights.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinForm {
    pub z: i64,
    pub phi: i64,
    pub eps: i64,
}

impl LinForm {
    pub const fn new(z: i64, phi: i64, eps: i64) -> Self {
        Self { z, phi, eps }
    }

    /// `r*phi + c*z`, the shape of most weights.
    pub const fn phi_z(r: i64, c: i64) -> Self {
        Self::new(c, r, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.z == 0 && self.phi == 0 && self.eps == 0
    }

    /// Splits off a sign so that the first nonzero coefficient in
    /// `(z, phi, eps)` order is positive.
    pub fn canonical(&self) -> (i64, LinForm) {
        let lead = [self.z, self.phi, self.eps]
            .into_iter()
            .find(|c| *c != 0)
            .unwrap_or(0);
        if lead < 0 {
            (-1, self.neg())
        } else {
            (1, *self)
        }
    }

    /// `self = c * p` with `p` canonical and primitive (coefficient gcd 1).
    pub fn primitive(&self) -> (i64, LinForm) {
        let (sign, canon) = self.canonical();
        let g = gcd(gcd(canon.z.abs(), canon.phi.abs()), canon.eps.abs());
        if g <= 1 {
            return (sign, canon);
        }
        (sign * g, LinForm::new(canon.z / g, canon.phi / g, canon.eps / g))
    }

    pub fn neg(&self) -> LinForm {
        LinForm::new(-self.z, -self.phi, -self.eps)
    }

    pub fn negate_z(&self) -> LinForm {
        LinForm::new(-self.z, self.phi, self.eps)
    }

    pub fn to_mpoly(&self) -> MPoly {
        MPoly::linear(self.z, self.phi, self.eps, Rational::from_integer(0.into()))
    }

    pub fn eval(&self, z: &Rational, phi: &Rational, eps: &Rational) -> Rational {
        z * Rational::from_integer(self.z.into())
            + phi * Rational::from_integer(self.phi.into())
            + eps * Rational::from_integer(self.eps.into())
    }

    /// After `eps -> -ell*phi`, `phi -> 1`: the form becomes `a*z + b`.
    pub fn spin_specialized(&self, ell: u32) -> (i64, i64) {
        (self.z, self.phi - ell as i64 * self.eps)
    }

    /// If the form is `z + n*phi`, returns `n`.
    pub fn as_z_plus_n_phi(&self) -> Option<i64> {
        (self.z == 1 && self.eps == 0).then_some(self.phi)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_mpoly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sign() {
        let (s, c) = LinForm::phi_z(2, -1).canonical();
        assert_eq!(s, -1);
        assert_eq!(c, LinForm::new(1, -2, 0));
        let (s, c) = LinForm::new(0, -1, 3).canonical();
        assert_eq!((s, c), (-1, LinForm::new(0, 1, -3)));
        assert_eq!(LinForm::new(0, 0, 1).canonical(), (1, LinForm::new(0, 0, 1)));
    }

    #[test]
    fn prints_in_text_form() {
        assert_eq!(LinForm::new(1, 0, 1).to_string(), "eps + z");
        assert_eq!(LinForm::phi_z(-1, 1).to_string(), "-phi + z");
    }
}
