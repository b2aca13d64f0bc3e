use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::{MPoly, Rational, Var};
use crate::error::{Error, Result};

/// Quotient of two polynomials, kept unreduced.
///
/// Equality of values is decided by cross-multiplication (`value_eq`); the
/// derived `PartialEq` compares representations and is rarely what you want.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: MPoly,
    den: MPoly,
}

impl RatFun {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: MPoly) -> Self {
        Self { num: p, den: MPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `a.num * b.den == b.num * a.den`.
    pub fn value_eq(&self, other: &RatFun) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn is_value_one(&self) -> bool {
        self.num == self.den
    }

    pub fn inv(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn negate_z(&self) -> RatFun {
        RatFun { num: self.num.negate_z(), den: self.den.negate_z() }
    }

    /// Divides numerator and denominator by the denominator's leading
    /// coefficient.
    pub fn normalized(&self) -> RatFun {
        match self.den.leading_term() {
            Some((_, c)) if !c.is_one() => {
                let inv = c.recip();
                RatFun { num: self.num.scale(&inv), den: self.den.scale(&inv) }
            }
            _ => self.clone(),
        }
    }

    /// Applies the substitution steps in order.
    pub fn specialize(&self, subst: &Substitution) -> Result<RatFun> {
        let mut cur = self.clone();
        for (v, value) in &subst.steps {
            cur = cur.substitute_one(*v, value)?;
        }
        Ok(cur)
    }

    fn substitute_one(&self, v: Var, value: &RatFun) -> Result<RatFun> {
        if value.num.degree_in(v) > 0 || value.den.degree_in(v) > 0 {
            return Err(Error::Domain(format!(
                "binding for {} mentions {} itself",
                v.name(),
                v.name()
            )));
        }
        let dn = self.num.degree_in(v);
        let dd = self.den.degree_in(v);
        // P(p/q) * q^deg(P), computed term by term.
        let homog = |p: &MPoly, d: u32| -> MPoly {
            if value.den.is_one() {
                return p.substitute(v, &value.num);
            }
            let mut out = MPoly::zero();
            for e in 0..=d {
                let c = p.coeff_of_power(v, e);
                if c.is_zero() {
                    continue;
                }
                let t = &(&c * &value.num.pow(e)) * &value.den.pow(d - e);
                out = &out + &t;
            }
            out
        };
        let mut num = homog(&self.num, dn);
        let mut den = homog(&self.den, dd);
        if den.is_zero() {
            return Err(Error::PoleAtSpecialization {
                factor: format!("{} with {} = {}", self.den, v.name(), value),
            });
        }
        if !value.den.is_one() {
            if dd > dn {
                num = &num * &value.den.pow(dd - dn);
            } else if dn > dd {
                den = &den * &value.den.pow(dn - dd);
            }
        }
        Ok(RatFun { num, den })
    }

    /// Numeric value at a point; errors if the denominator vanishes there.
    pub fn eval(&self, z: &Rational, phi: &Rational, eps: &Rational) -> Result<Rational> {
        let d = self.den.eval(z, phi, eps);
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization {
                factor: format!("{} at z={}, phi={}, eps={}", self.den, z, phi, eps),
            });
        }
        Ok(self.num.eval(z, phi, eps) / d)
    }

    /// Limit as `z -> infinity` with `phi`, `eps` fixed, or `None` if the
    /// numerator has higher `z`-degree.
    pub fn limit_z_infinity(&self) -> Option<RatFun> {
        if self.num.is_zero() {
            return Some(RatFun::zero());
        }
        let dn = self.num.degree_in(Var::Z);
        let dd = self.den.degree_in(Var::Z);
        match dn.cmp(&dd) {
            std::cmp::Ordering::Less => Some(RatFun::zero()),
            std::cmp::Ordering::Equal => Some(RatFun {
                num: self.num.coeff_of_power(Var::Z, dn),
                den: self.den.coeff_of_power(Var::Z, dd),
            }),
            std::cmp::Ordering::Greater => None,
        }
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            return self.num.to_latex();
        }
        format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/({})", self.den)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun { num: &self.num + &rhs.num, den: self.den.clone() };
        }
        RatFun {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: &self.num * &rhs.num, den: &self.den * &rhs.den }
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

/// Ordered list of single-variable substitutions. Each step replaces one
/// variable by a rational function of the others; when no binding mentions
/// an earlier-bound variable the result is the simultaneous substitution.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    steps: Vec<(Var, RatFun)>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, v: Var, value: RatFun) -> Self {
        self.steps.push((v, value));
        self
    }

    pub fn bind_const(self, v: Var, c: Rational) -> Self {
        self.bind(v, RatFun::constant(c))
    }

    /// `eps -> -ell*phi`, then `phi -> 1`.
    pub fn spin(ell: u32) -> Self {
        let minus_ell_phi =
            MPoly::var(Var::Phi).scale(&Rational::from_integer((-(ell as i64)).into()));
        Self::new()
            .bind(Var::Eps, RatFun::from_poly(minus_ell_phi))
            .bind_const(Var::Phi, Rational::one())
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: Var) -> MPoly {
        MPoly::var(v)
    }
    fn rf(n: MPoly, d: MPoly) -> RatFun {
        RatFun::new(n, d).unwrap()
    }

    #[test]
    fn common_factor_invariance() {
        let a = rf(p(Var::Z), &p(Var::Z) * &p(Var::Phi));
        let b = rf(MPoly::one(), p(Var::Phi));
        assert!(a.value_eq(&b));
    }

    #[test]
    fn distinct_numerators_differ() {
        let den = &p(Var::Eps) - &p(Var::Z);
        let a = rf(p(Var::Eps), den.clone());
        let b = rf(&p(Var::Eps) + &p(Var::Z), den);
        assert!(!a.value_eq(&b));
    }

    #[test]
    fn sign_normalization() {
        let zez = &p(Var::Z) * &(&p(Var::Eps) + &p(Var::Z));
        let a = rf(-p(Var::Eps), zez.clone());
        let b = rf(p(Var::Eps), -zez);
        assert!(a.value_eq(&b));
    }

    #[test]
    fn spin_two_specialization() {
        let f = rf(p(Var::Eps), &p(Var::Eps) - &p(Var::Z));
        let g = f.specialize(&Substitution::spin(2)).unwrap();
        let two = MPoly::from_int(2);
        assert!(g.value_eq(&rf(two.clone(), &two + &p(Var::Z))));
    }

    #[test]
    fn empty_substitution_is_identity() {
        let f = rf(p(Var::Eps), &p(Var::Eps) - &p(Var::Z));
        assert_eq!(f.specialize(&Substitution::new()).unwrap(), f);
    }

    #[test]
    fn identity_at_zero_diagonal() {
        let f = rf(p(Var::Z), &p(Var::Eps) - &p(Var::Z));
        let s = Substitution::spin(2).bind_const(Var::Z, Rational::zero());
        assert!(f.specialize(&s).unwrap().is_zero());
    }

    #[test]
    fn pole_at_specialization() {
        let f = rf(MPoly::one(), &p(Var::Eps) + &p(Var::Phi).scale(&Rational::from_integer(2.into())));
        let err = f.specialize(&Substitution::spin(2)).unwrap_err();
        assert!(matches!(err, Error::PoleAtSpecialization { .. }));
    }

    #[test]
    fn rational_binding() {
        // 1/(z + phi) with z -> 1/phi gives phi/(1 + phi^2)
        let f = rf(MPoly::one(), &p(Var::Z) + &p(Var::Phi));
        let s = Substitution::new().bind(Var::Z, rf(MPoly::one(), p(Var::Phi)));
        let g = f.specialize(&s).unwrap();
        assert!(g.value_eq(&rf(p(Var::Phi), &MPoly::one() + &p(Var::Phi).pow(2))));
    }

    #[test]
    fn text_form() {
        let f = rf(&p(Var::Eps) + &p(Var::Z), &p(Var::Z) * &p(Var::Phi));
        assert_eq!(f.to_string(), "(eps + z)/(z*phi)");
    }

    #[test]
    fn limits() {
        let f = rf(&p(Var::Eps) + &p(Var::Z), &p(Var::Z) - &p(Var::Phi));
        assert!(f.limit_z_infinity().unwrap().is_value_one());
        let g = rf(p(Var::Eps), p(Var::Z));
        assert!(g.limit_z_infinity().unwrap().is_zero());
        assert!(rf(p(Var::Z), p(Var::Eps)).limit_z_infinity().is_none());
    }
}
