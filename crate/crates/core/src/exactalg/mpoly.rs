use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{Rational, Var};
use crate::error::{Error, Result};

/// Exponent triple `(e_z, e_phi, e_eps)`. Arrays compare lexicographically,
/// which is the monomial order used for iteration and printing.
pub type Exponent = [u32; 3];

/// Sparse polynomial in `z`, `phi`, `eps` with rational coefficients.
///
/// No stored coefficient is zero, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponent, Rational>,
}

fn exp_add(a: &Exponent, b: &Exponent) -> Exponent {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn exp_divides(d: &Exponent, e: &Exponent) -> bool {
    d.iter().zip(e).all(|(x, y)| x <= y)
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `cz*z + cphi*phi + ceps*eps + c0`.
    pub fn linear(cz: i64, cphi: i64, ceps: i64, c0: Rational) -> Self {
        let mut p = Self::constant(c0);
        for (v, c) in [(Var::Z, cz), (Var::Phi, cphi), (Var::Eps, ceps)] {
            let mut e = [0; 3];
            e[v.index()] = 1;
            p.add_term(e, Rational::from_integer(c.into()));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponent) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term in the lexicographic monomial order.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.degree_in(*v) > 0)
            .collect()
    }

    /// Coefficient of `v^d`, a polynomial in the other two variables.
    pub fn coeff_of_power(&self, v: Var, d: u32) -> MPoly {
        let i = v.index();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] == d)
            .map(|(e, c)| {
                let mut e = *e;
                e[i] = 0;
                (e, c.clone())
            })
            .collect();
        MPoly { terms }
    }

    pub fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self.terms.iter().map(|(e, v)| (*e, v * c)).collect();
        MPoly { terms }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self -= c * x^shift * b`, in place.
    fn sub_shifted(&mut self, b: &MPoly, shift: &Exponent, c: &Rational) {
        for (e, v) in &b.terms {
            self.add_term(exp_add(e, shift), -(v * c));
        }
    }

    /// Quotient `q` with `q * b == self`; fails if `b` does not divide `self`.
    pub fn exact_div(&self, b: &MPoly) -> Result<MPoly> {
        let (lb_exp, lb_c) = match b.leading_term() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((le, lc)) = rem.leading_term() {
            if !exp_divides(&lb_exp, le) {
                return Err(Error::NonExactDivision {
                    dividend: self.to_string(),
                    divisor: b.to_string(),
                });
            }
            let shift = [le[0] - lb_exp[0], le[1] - lb_exp[1], le[2] - lb_exp[2]];
            let c = lc / &lb_c;
            rem.sub_shifted(b, &shift, &c);
            quot.add_term(shift, c);
        }
        Ok(quot)
    }

    /// Divides by `b` as many times as it goes exactly, up to `max` times.
    /// Returns the quotient and the number of successful divisions.
    pub fn divide_out(&self, b: &MPoly, max: u32) -> (MPoly, u32) {
        let mut cur = self.clone();
        let mut count = 0;
        if cur.is_zero() {
            return (cur, 0);
        }
        while count < max {
            match cur.exact_div(b) {
                Ok(q) => {
                    cur = q;
                    count += 1;
                }
                Err(_) => break,
            }
        }
        (cur, count)
    }

    /// Substitutes `v -> value` (a polynomial).
    pub fn substitute(&self, v: Var, value: &MPoly) -> MPoly {
        let i = v.index();
        let d = self.degree_in(v);
        let mut powers = Vec::with_capacity(d as usize + 1);
        powers.push(MPoly::one());
        for n in 1..=d as usize {
            let next = &powers[n - 1] * value;
            powers.push(next);
        }
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut rest = *e;
            rest[i] = 0;
            let p = &powers[e[i] as usize];
            for (pe, pc) in &p.terms {
                out.add_term(exp_add(&rest, pe), c * pc);
            }
        }
        out
    }

    /// `z -> -z`.
    pub fn negate_z(&self) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, if e[0] % 2 == 1 { -c } else { c.clone() }))
            .collect();
        MPoly { terms }
    }

    pub fn eval(&self, z: &Rational, phi: &Rational, eps: &Rational) -> Rational {
        let vals = [z, phi, eps];
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in vals.iter().zip(e) {
                if *k > 0 {
                    t *= num::pow::pow((*x).clone(), *k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Coefficients of a polynomial in `z` alone, lowest degree first.
    /// `None` if another variable appears.
    pub fn univariate_coeffs(&self) -> Option<Vec<Rational>> {
        let d = self.degree_in(Var::Z) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for (e, c) in &self.terms {
            if e[1] != 0 || e[2] != 0 {
                return None;
            }
            out[e[0] as usize] = c.clone();
        }
        Some(out)
    }

    fn fmt_monomial(e: &Exponent) -> String {
        let mut parts = Vec::new();
        for v in Var::ALL {
            match e[v.index()] {
                0 => {}
                1 => parts.push(v.name().to_string()),
                k => parts.push(format!("{}^{}", v.name(), k)),
            }
        }
        parts.join("*")
    }

    /// LaTeX rendering (`\varphi`, `\varepsilon`), same term order as `Display`.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono: Vec<String> = Var::ALL
                .into_iter()
                .filter_map(|v| match e[v.index()] {
                    0 => None,
                    1 => Some(v.latex().to_string()),
                    k => Some(format!("{}^{{{}}}", v.latex(), k)),
                })
                .collect();
            let coeff = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("\\tfrac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            if mono.is_empty() {
                s.push_str(&coeff);
            } else {
                if !a.is_one() {
                    s.push_str(&coeff);
                    s.push(' ');
                }
                s.push_str(&mono.join(" "));
            }
        }
        s
    }
}

impl fmt::Display for MPoly {
    /// Canonical text form: terms in ascending monomial order, coefficients
    /// as `p/q`, variables `z`, `phi`, `eps`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono = Self::fmt_monomial(e);
            if mono.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", a, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let mut acc: HashMap<Exponent, Rational> =
            HashMap::with_capacity(self.len() * rhs.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let slot = acc.entry(exp_add(e1, e2)).or_insert_with(Rational::zero);
                *slot += c1 * c2;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { terms }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        MPoly { terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}
