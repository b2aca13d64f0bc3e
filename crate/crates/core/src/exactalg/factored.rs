use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::{LinForm, MPoly, RatFun, Rational};

/// `scalar * prod(form^exp)` with canonical forms (first nonzero
/// coefficient positive). Every closed formula in the construction is born
/// in this shape.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredRat {
    scalar: Rational,
    factors: BTreeMap<LinForm, i32>,
}

impl FactoredRat {
    pub fn new(scalar: Rational) -> Self {
        Self { scalar, factors: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::new(Rational::one())
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero())
    }

    pub fn from_int(c: i64) -> Self {
        Self::new(Rational::from_integer(c.into()))
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn factors(&self) -> impl Iterator<Item = (&LinForm, &i32)> {
        self.factors.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Multiplies by `form^exp`. A zero form with positive exponent zeroes
    /// the value.
    ///
    /// # Panics
    /// If `form` is zero and `exp` is negative.
    pub fn with_factor(mut self, form: LinForm, exp: i32) -> Self {
        self.mul_factor(form, exp);
        self
    }

    fn mul_factor(&mut self, form: LinForm, exp: i32) {
        if exp == 0 || self.scalar.is_zero() {
            return;
        }
        if form.is_zero() {
            assert!(exp > 0, "zero linear form in a denominator");
            self.scalar = Rational::zero();
            self.factors.clear();
            return;
        }
        let (content, canon) = form.primitive();
        if content != 1 {
            let c = Rational::from_integer(content.into());
            self.scalar *= if exp > 0 { c } else { c.recip() }.pow(exp.abs());
        }
        let slot = self.factors.entry(canon).or_insert(0);
        *slot += exp;
        if *slot == 0 {
            self.factors.remove(&canon);
        }
    }

    pub fn scale(mut self, c: &Rational) -> Self {
        self.scalar *= c;
        if self.scalar.is_zero() {
            self.factors.clear();
        }
        self
    }

    pub fn mul(&self, other: &FactoredRat) -> FactoredRat {
        if self.is_zero() || other.is_zero() {
            return FactoredRat::zero();
        }
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        for (f, e) in &other.factors {
            out.mul_factor(*f, *e);
        }
        out
    }

    pub fn recip(&self) -> Option<FactoredRat> {
        if self.is_zero() {
            return None;
        }
        let factors = self.factors.iter().map(|(f, e)| (*f, -e)).collect();
        Some(FactoredRat { scalar: self.scalar.recip(), factors })
    }

    pub fn negate_z(&self) -> FactoredRat {
        let mut out = FactoredRat::new(self.scalar.clone());
        for (f, e) in &self.factors {
            out.mul_factor(f.negate_z(), *e);
        }
        out
    }

    /// Denominator factors with their (positive) multiplicities.
    pub fn denominator_factors(&self) -> impl Iterator<Item = (LinForm, u32)> + '_ {
        self.factors
            .iter()
            .filter(|(_, e)| **e < 0)
            .map(|(f, e)| (*f, (-e) as u32))
    }

    /// Scalar times the positive-exponent factors, expanded.
    pub fn numerator_poly(&self) -> MPoly {
        let mut p = MPoly::constant(self.scalar.clone());
        for (f, e) in &self.factors {
            if *e > 0 {
                p = &p * &f.to_mpoly().pow(*e as u32);
            }
        }
        p
    }

    pub fn denominator_poly(&self) -> MPoly {
        let mut p = MPoly::one();
        for (f, e) in self.denominator_factors() {
            p = &p * &f.to_mpoly().pow(e);
        }
        p
    }

    pub fn expand(&self) -> RatFun {
        RatFun::new(self.numerator_poly(), self.denominator_poly())
            .expect("product of nonzero linear forms is nonzero")
    }

    pub fn eval(&self, z: &Rational, phi: &Rational, eps: &Rational) -> Option<Rational> {
        let mut acc = self.scalar.clone();
        for (f, e) in &self.factors {
            let v = f.eval(z, phi, eps);
            if v.is_zero() {
                if *e < 0 {
                    return None;
                }
                return Some(Rational::zero());
            }
            acc *= num::pow::pow(if *e > 0 { v } else { v.recip() }, e.unsigned_abs() as usize);
        }
        Some(acc)
    }
}

fn fmt_factors(f: &mut fmt::Formatter<'_>, factors: &[(LinForm, u32)]) -> fmt::Result {
    for (idx, (form, e)) in factors.iter().enumerate() {
        if idx > 0 {
            write!(f, "*")?;
        }
        let single = form.to_mpoly().len() == 1;
        if single {
            write!(f, "{}", form)?;
        } else {
            write!(f, "({})", form)?;
        }
        if *e > 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(())
}

impl fmt::Display for FactoredRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<_> = self
            .factors
            .iter()
            .filter(|(_, e)| **e > 0)
            .map(|(l, e)| (*l, *e as u32))
            .collect();
        let den: Vec<_> = self.denominator_factors().collect();
        if num.is_empty() {
            write!(f, "{}", self.scalar)?;
        } else {
            if !self.scalar.is_one() {
                if self.scalar == -Rational::one() {
                    write!(f, "-")?;
                } else {
                    write!(f, "{}*", self.scalar)?;
                }
            }
            fmt_factors(f, &num)?;
        }
        if !den.is_empty() {
            write!(f, "/(")?;
            fmt_factors(f, &den)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Numerator polynomial over a factored denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fraction {
    pub num: MPoly,
    pub den: BTreeMap<LinForm, u32>,
}

impl Fraction {
    pub fn den_poly(&self) -> MPoly {
        let mut p = MPoly::one();
        for (f, e) in &self.den {
            p = &p * &f.to_mpoly().pow(*e);
        }
        p
    }

    pub fn to_ratfun(&self) -> RatFun {
        RatFun::new(self.num.clone(), self.den_poly()).expect("nonzero factored denominator")
    }

    /// Removes every denominator factor that divides the numerator exactly.
    pub fn cancel_linear_factors(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let forms: Vec<LinForm> = self.den.keys().copied().collect();
        for form in forms {
            let e = self.den[&form];
            let (q, hits) = self.num.divide_out(&form.to_mpoly(), e);
            if hits > 0 {
                self.num = q;
                if hits == e {
                    self.den.remove(&form);
                } else {
                    self.den.insert(form, e - hits);
                }
            }
        }
        self
    }

    pub fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_poly(num: MPoly) -> Self {
        Self { num, den: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            let slot = den.entry(*f).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |fr: &Fraction| -> MPoly {
            let mut p = fr.num.clone();
            for (f, e) in &den {
                let own = fr.den.get(f).copied().unwrap_or(0);
                if *e > own {
                    p = &p * &f.to_mpoly().pow(e - own);
                }
            }
            p
        };
        let num = &lift(self) + &lift(other);
        if num.is_zero() {
            return Fraction::zero();
        }
        Fraction { num, den }
    }

    pub fn neg(&self) -> Fraction {
        Fraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        self.add(&other.neg())
    }

    /// Product; numerator factors are not cancelled against the new
    /// denominator.
    pub fn mul(&self, other: &Fraction) -> Fraction {
        if self.is_zero() || other.is_zero() {
            return Fraction::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            *den.entry(*f).or_insert(0) += e;
        }
        Fraction { num: &self.num * &other.num, den }
    }

    pub fn scale(&self, c: &Rational) -> Fraction {
        if c.is_zero() {
            return Fraction::zero();
        }
        Fraction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Value equality.
    pub fn value_eq(&self, other: &Fraction) -> bool {
        self.sub(other).is_zero()
    }

    pub fn is_constant(&self, c: &Rational) -> bool {
        self.value_eq(&Fraction::from_poly(MPoly::constant(c.clone())))
    }

    /// Applies `map` to every denominator form and `num_map` to the
    /// numerator, re-canonicalizing signs. Errors if a form maps to zero.
    pub fn transform(
        &self,
        map: impl Fn(LinForm) -> LinForm,
        num_map: impl Fn(&MPoly) -> MPoly,
    ) -> crate::Result<Fraction> {
        let mut num = num_map(&self.num);
        let mut den = BTreeMap::new();
        let mut content = Rational::one();
        for (f, e) in &self.den {
            let g = map(*f);
            if g.is_zero() {
                return Err(crate::Error::PoleAtSpecialization { factor: f.to_string() });
            }
            let (c, canon) = g.primitive();
            if c != 1 {
                content *= Rational::from_integer(c.into()).pow(*e as i32);
            }
            *den.entry(canon).or_insert(0) += e;
        }
        if !content.is_one() {
            num = num.scale(&content.recip());
        }
        if num.is_zero() {
            den.clear();
        }
        Ok(Fraction { num, den })
    }

    pub fn negate_z(&self) -> Fraction {
        self.transform(|f| f.negate_z(), MPoly::negate_z)
            .expect("negating z keeps forms nonzero")
    }

    pub fn eval(&self, z: &Rational, phi: &Rational, eps: &Rational) -> crate::Result<Rational> {
        let mut d = Rational::one();
        for (f, e) in &self.den {
            let v = f.eval(z, phi, eps);
            if v.is_zero() {
                return Err(crate::Error::PoleAtSpecialization {
                    factor: format!("{} at z = {}", f, z),
                });
            }
            d *= num::pow::pow(v, *e as usize);
        }
        Ok(self.num.eval(z, phi, eps) / d)
    }
}

impl From<&FactoredRat> for Fraction {
    fn from(t: &FactoredRat) -> Self {
        Fraction { num: t.numerator_poly(), den: t.denominator_factors().collect() }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfun())
    }
}

/// Formal sum of factored terms. Collapsing to a single fraction uses the
/// factor-wise least common denominator, which keeps degrees small.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FactoredSum {
    terms: Vec<FactoredRat>,
}

impl FactoredSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: Vec<FactoredRat>) -> Self {
        let terms = terms.into_iter().filter(|t| !t.is_zero()).collect();
        Self { terms }
    }

    pub fn push(&mut self, t: FactoredRat) {
        if !t.is_zero() {
            self.terms.push(t);
        }
    }

    pub fn terms(&self) -> &[FactoredRat] {
        &self.terms
    }

    pub fn extend(&mut self, other: &FactoredSum) {
        self.terms.extend(other.terms.iter().cloned());
    }

    pub fn negated(&self) -> FactoredSum {
        let m1 = -Rational::one();
        FactoredSum { terms: self.terms.iter().map(|t| t.clone().scale(&m1)).collect() }
    }

    pub fn mul(&self, other: &FactoredSum) -> FactoredSum {
        let mut out = FactoredSum::new();
        for a in &self.terms {
            for b in &other.terms {
                out.push(a.mul(b));
            }
        }
        out
    }

    pub fn negate_z(&self) -> FactoredSum {
        FactoredSum { terms: self.terms.iter().map(FactoredRat::negate_z).collect() }
    }

    /// All linear forms that occur in some term's denominator.
    pub fn denominator_forms(&self) -> Vec<LinForm> {
        let mut out: Vec<LinForm> = self
            .terms
            .iter()
            .flat_map(|t| t.denominator_factors().map(|(f, _)| f))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Single fraction over the factor-wise lcm of the denominators.
    pub fn combine(&self) -> Fraction {
        let mut lcm: BTreeMap<LinForm, u32> = BTreeMap::new();
        for t in &self.terms {
            for (f, e) in t.denominator_factors() {
                let slot = lcm.entry(f).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let mut num = MPoly::zero();
        for t in &self.terms {
            let mut p = MPoly::constant(t.scalar().clone());
            for (f, e) in t.factors() {
                if *e > 0 {
                    p = &p * &f.to_mpoly().pow(*e as u32);
                }
            }
            for (f, e_lcm) in &lcm {
                let own = t
                    .factors
                    .get(f)
                    .map(|e| if *e < 0 { (-e) as u32 } else { 0 })
                    .unwrap_or(0);
                if *e_lcm > own {
                    p = &p * &f.to_mpoly().pow(e_lcm - own);
                }
            }
            num = &num + &p;
        }
        if num.is_zero() {
            lcm.clear();
        }
        Fraction { num, den: lcm }
    }

    pub fn to_ratfun(&self) -> RatFun {
        self.combine().to_ratfun()
    }

    pub fn is_zero(&self) -> bool {
        self.combine().num.is_zero()
    }

    /// True iff the sum equals `c`.
    pub fn equals_constant(&self, c: &Rational) -> bool {
        let mut s = self.clone();
        if !c.is_zero() {
            s.push(FactoredRat::new(-c.clone()));
        }
        s.is_zero()
    }

    pub fn eval(&self, z: &Rational, phi: &Rational, eps: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for t in &self.terms {
            acc += t.eval(z, phi, eps)?;
        }
        Some(acc)
    }
}

impl From<FactoredRat> for FactoredSum {
    fn from(t: FactoredRat) -> Self {
        FactoredSum::from_terms(vec![t])
    }
}
