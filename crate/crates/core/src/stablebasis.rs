//! Localization expansions of attracting and stable classes at `n = 2`,
//! the triangular matrix `S`, its closed-form inverse and the residue
//! argument showing `S^{-1} S = 1`.

use num::{BigInt, One, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactalg::{
    residue_at, FactoredRat, FactoredSum, Fraction, LinForm, QMatrix, Rational,
};
use crate::report::CheckReport;

/// `C(n, k)` from a row of Pascal's triangle; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row.swap_remove(k as usize)
}

fn binom_rat(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 || k > n {
        return Rational::zero();
    }
    Rational::from_integer(binomial(n as u32, k as u32))
}

/// Multiplies `f` by `prod_{r=lo}^{hi} form(r)^exp`; empty when `lo > hi`.
fn prod(mut f: FactoredRat, lo: i64, hi: i64, exp: i32, form: impl Fn(i64) -> LinForm) -> FactoredRat {
    for r in lo..=hi {
        f = f.with_factor(form(r), exp);
    }
    f
}

fn r_eps(r: i64) -> LinForm {
    LinForm::new(0, r, 1)
}

fn r_eps_z(r: i64) -> LinForm {
    LinForm::new(1, r, 1)
}

fn r_plus_z(r: i64) -> LinForm {
    LinForm::phi_z(r, 1)
}

fn r_minus_z(r: i64) -> LinForm {
    LinForm::phi_z(r, -1)
}

fn check_index(k: u32, j_prime: u32) -> Result<()> {
    if j_prime > k {
        return Err(Error::Domain(format!("j' = {j_prime} exceeds k = {k}")));
    }
    Ok(())
}

fn zbar_coeff(k: i64, j: i64, jp: i64) -> FactoredRat {
    let c = FactoredRat::new(binom_rat(jp, j));
    let c = prod(c, 0, k - jp - 1, -1, r_eps_z);
    let c = prod(c, k - 2 * j + 1, k - j, -1, r_plus_z);
    prod(c, 2 * j - k + 1, jp - k + j, -1, r_minus_z)
}

/// Coefficients of `[Zbar_{j'}]` on the fixed points `j = 0..=j'`.
pub fn class_zbar(k: u32, j_prime: u32) -> Result<Vec<FactoredRat>> {
    check_index(k, j_prime)?;
    let (k, jp) = (k as i64, j_prime as i64);
    Ok((0..=jp).map(|j| zbar_coeff(k, j, jp)).collect())
}

/// Coefficients of the stable class `[S_{j'}]` on the fixed points
/// `j = 0..=j'`; the column `j'` of `S`.
pub fn class_s(k: u32, j_prime: u32) -> Result<Vec<FactoredRat>> {
    check_index(k, j_prime)?;
    Ok((0..=j_prime).map(|j| s_entry(k, j, j_prime)).collect())
}

/// `S_{j j'}` with separate `(r phi + z)` and `(r phi - z)` runs.
pub fn s_entry(k: u32, j: u32, j_prime: u32) -> FactoredRat {
    if j > j_prime {
        return FactoredRat::zero();
    }
    let (k, j, jp) = (k as i64, j as i64, j_prime as i64);
    let c = FactoredRat::new(binom_rat(jp, j));
    let c = prod(c, j, jp - 1, 1, r_eps);
    let c = prod(c, 0, k - j - 1, -1, r_eps_z);
    let c = prod(c, k - 2 * j + 1, k - j, -1, r_plus_z);
    prod(c, 2 * j - k + 1, jp - k + j, -1, r_minus_z)
}

/// `S_{j j'}` with the `(r phi - z)` factors rewritten as `-(r phi + z)`:
/// a single run `r = k-j-j'..=k-j` skipping `r = k-2j`.
pub fn s_entry_simplified(k: u32, j: u32, j_prime: u32) -> FactoredRat {
    if j > j_prime {
        return FactoredRat::zero();
    }
    let (k, j, jp) = (k as i64, j as i64, j_prime as i64);
    let sign = if (jp - j) % 2 == 0 { 1 } else { -1 };
    let c = FactoredRat::new(binom_rat(jp, j) * Rational::from_integer(sign.into()));
    let c = prod(c, j, jp - 1, 1, r_eps);
    let mut c = prod(c, 0, k - j - 1, -1, r_eps_z);
    for r in k - j - jp..=k - j {
        if r != k - 2 * j {
            c = c.with_factor(r_plus_z(r), -1);
        }
    }
    c
}

/// `(S^{-1})_{ij}`, a polynomial.
pub fn s_inverse_entry(k: u32, i: u32, j: u32) -> FactoredRat {
    if i > j {
        return FactoredRat::zero();
    }
    let (k, i, j) = (k as i64, i as i64, j as i64);
    let c = FactoredRat::new(binom_rat(j, i));
    let c = prod(c, i, j - 1, 1, r_eps);
    let c = prod(c, 0, k - j - 1, 1, r_eps_z);
    prod(c, k + 1 - j - i, k - j, 1, r_plus_z)
}

/// Row or column meaning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    /// `p_{k-j,j}`.
    FixedPoint { k: u32, j: u32 },
    /// `e_a (x) e_b`.
    Tensor { a: u32, b: u32 },
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (x, y) = match *self {
            Label::FixedPoint { k, j } => (k - j, j),
            Label::Tensor { a, b } => (a, b),
        };
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&x)?;
        seq.serialize_element(&y)?;
        seq.end()
    }
}

pub fn fixed_point_labels(k: u32) -> Vec<Label> {
    (0..=k).map(|j| Label::FixedPoint { k, j }).collect()
}

/// Dense matrix of rational functions stored as numerators over factored
/// denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Fraction>,
    row_labels: Vec<Label>,
    col_labels: Vec<Label>,
}

impl SymMatrix {
    /// Entries are computed in parallel and stored in index order.
    pub fn from_fn(
        row_labels: Vec<Label>,
        col_labels: Vec<Label>,
        f: impl Fn(usize, usize) -> Fraction + Sync + Send,
    ) -> Self {
        let (rows, cols) = (row_labels.len(), col_labels.len());
        let entries = (0..rows * cols).into_par_iter().map(|idx| f(idx / cols, idx % cols)).collect();
        Self { rows, cols, entries, row_labels, col_labels }
    }

    pub fn try_from_fn(
        row_labels: Vec<Label>,
        col_labels: Vec<Label>,
        f: impl Fn(usize, usize) -> Result<Fraction> + Sync + Send,
    ) -> Result<Self> {
        let (rows, cols) = (row_labels.len(), col_labels.len());
        let entries = (0..rows * cols)
            .into_par_iter()
            .map(|idx| f(idx / cols, idx % cols))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows, cols, entries, row_labels, col_labels })
    }

    pub fn identity(labels: Vec<Label>) -> Self {
        let l2 = labels.clone();
        Self::from_fn(labels, l2, |i, j| if i == j { Fraction::one() } else { Fraction::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Fraction {
        &self.entries[i * self.cols + j]
    }

    pub fn ratfun(&self, i: usize, j: usize) -> crate::exactalg::RatFun {
        self.get(i, j).to_ratfun()
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.col_labels
    }

    pub fn entries(&self) -> &[Fraction] {
        &self.entries
    }

    /// Product with common linear factors cancelled in each entry.
    pub fn mul(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        SymMatrix::from_fn(self.row_labels.clone(), other.col_labels.clone(), |i, j| {
            let mut acc = Fraction::zero();
            for m in 0..self.cols {
                let (a, b) = (self.get(i, m), other.get(m, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc.cancel_linear_factors()
        })
    }

    /// Constant matrix.
    pub fn from_qmatrix(row_labels: Vec<Label>, col_labels: Vec<Label>, q: &QMatrix) -> Self {
        SymMatrix::from_fn(row_labels, col_labels, |i, j| {
            Fraction::from_poly(crate::exactalg::MPoly::constant(q.get(i, j).clone()))
        })
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        SymMatrix::from_fn(self.row_labels.clone(), self.col_labels.clone(), |i, j| {
            self.get(i, j).sub(other.get(i, j)).cancel_linear_factors()
        })
    }

    /// `D M D` for `D = diag(signs)`.
    pub fn conjugate_by_signs(&self, signs: &[i8]) -> SymMatrix {
        let m1 = -Rational::one();
        SymMatrix::from_fn(self.row_labels.clone(), self.col_labels.clone(), |i, j| {
            let e = self.get(i, j);
            if signs[i] * signs[j] < 0 {
                e.scale(&m1)
            } else {
                e.clone()
            }
        })
    }

    /// First nonzero entry.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        (0..self.rows * self.cols)
            .into_par_iter()
            .find_first(|idx| !self.entries[*idx].is_zero())
            .map(|idx| (idx / self.cols, idx % self.cols))
    }

    pub fn map(&self, f: impl Fn(&Fraction) -> Fraction + Sync + Send) -> SymMatrix {
        SymMatrix::from_fn(self.row_labels.clone(), self.col_labels.clone(), |i, j| f(self.get(i, j)))
    }

    pub fn try_map(&self, f: impl Fn(&Fraction) -> Result<Fraction> + Sync + Send) -> Result<SymMatrix> {
        SymMatrix::try_from_fn(self.row_labels.clone(), self.col_labels.clone(), |i, j| {
            f(self.get(i, j))
        })
    }

    pub fn negate_z(&self) -> SymMatrix {
        self.map(Fraction::negate_z)
    }

    /// First entry where the values differ.
    pub fn first_difference(&self, other: &SymMatrix) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        (0..self.rows * self.cols)
            .into_par_iter()
            .find_first(|idx| !self.entries[*idx].value_eq(&other.entries[*idx]))
            .map(|idx| (idx / self.cols, idx % self.cols))
    }

    /// First entry that differs from the identity.
    pub fn first_non_identity(&self) -> Option<(usize, usize)> {
        (0..self.rows * self.cols)
            .into_par_iter()
            .find_first(|idx| {
                let (i, j) = (idx / self.cols, idx % self.cols);
                let e = &self.entries[*idx];
                if i == j {
                    !e.is_constant(&Rational::one())
                } else {
                    !e.is_zero()
                }
            })
            .map(|idx| (idx / self.cols, idx % self.cols))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Numeric value at a point.
    pub fn eval(&self, z: &Rational, phi: &Rational, eps: &Rational) -> Result<QMatrix> {
        let vals = self
            .entries
            .par_iter()
            .map(|e| e.eval(z, phi, eps))
            .collect::<Result<Vec<_>>>()?;
        Ok(QMatrix::from_fn(self.rows, self.cols, |i, j| vals[i * self.cols + j].clone()))
    }

    /// Entries in the text form, row by row.
    pub fn text_grid(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

fn factored_matrix(k: u32, f: impl Fn(u32, u32, u32) -> FactoredRat + Sync + Send) -> SymMatrix {
    SymMatrix::from_fn(fixed_point_labels(k), fixed_point_labels(k), |i, j| {
        Fraction::from(&f(k, i as u32, j as u32))
    })
}

/// Upper triangular `S`, `S[j][j'] = class_s(k, j')[j]`.
pub fn s_matrix(k: u32) -> SymMatrix {
    factored_matrix(k, s_entry_simplified)
}

/// Closed-form `S^{-1}`.
pub fn s_inverse(k: u32) -> SymMatrix {
    factored_matrix(k, s_inverse_entry)
}

/// `(S^{-1} S)_{i j'}` as a formal sum of factored terms; the
/// `(r phi + eps + z)` factors cancel term by term.
pub fn inverse_product_entry(k: u32, i: u32, j_prime: u32) -> FactoredSum {
    let mut s = FactoredSum::new();
    for j in i..=j_prime {
        s.push(s_inverse_entry(k, i, j).mul(&s_entry_simplified(k, j, j_prime)));
    }
    s
}

pub fn verify_inverse(k: u32) -> CheckReport {
    let n = k + 1;
    let bad: Vec<(u32, u32, String)> = (0..n * n)
        .into_par_iter()
        .filter_map(|idx| {
            let (i, jp) = (idx / n, idx % n);
            let target = if i == jp { Rational::one() } else { Rational::zero() };
            let e = inverse_product_entry(k, i, jp);
            (!e.equals_constant(&target)).then(|| (i, jp, e.combine().cancel_linear_factors().to_string()))
        })
        .collect();
    let mut r = CheckReport::new("inverse").param("k", k);
    if let Some((i, jp, v)) = bad.first() {
        r.fail(json!({ "entry": [i, jp], "value": v, "failing": bad.len() }));
    }
    r
}

/// Coefficients `c` with `S_{j'} = sum_i c_{i j'} Zbar_i`, by triangular
/// back-substitution over rational functions. A structural error if some
/// coefficient is not a constant.
pub fn linrel_coefficients(k: u32) -> Result<Vec<Vec<Rational>>> {
    let n = k as usize + 1;
    let zbar: Vec<Vec<FactoredRat>> = (0..=k).map(|jp| class_zbar(k, jp)).collect::<Result<_>>()?;
    let mut c = vec![vec![Rational::zero(); n]; n];
    for jp in 0..n {
        let s = class_s(k, jp as u32)?;
        for m in (0..=jp).rev() {
            let mut rest = Fraction::from(&s[m]);
            for (i, ci) in c.iter().enumerate().take(jp + 1).skip(m + 1) {
                if !ci[jp].is_zero() {
                    rest = rest.sub(&Fraction::from(&zbar[i][m]).scale(&ci[jp]));
                }
            }
            let inv = zbar[m][m]
                .recip()
                .ok_or_else(|| Error::Structural(format!("Zbar diagonal entry {m} vanishes")))?;
            let q = rest.mul(&Fraction::from(&inv)).cancel_linear_factors();
            let value = if q.is_zero() {
                Rational::zero()
            } else if q.den.is_empty() {
                q.num.as_constant().ok_or_else(|| {
                    Error::Structural(format!("coefficient ({m},{jp}) is not constant: {q}"))
                })?
            } else {
                return Err(Error::Structural(format!("coefficient ({m},{jp}) is not constant: {q}")));
            };
            c[m][jp] = value;
        }
    }
    Ok(c)
}

pub fn verify_linrel(k: u32) -> CheckReport {
    let mut r = CheckReport::new("linrel").param("k", k);
    // direct componentwise identity
    for jp in 0..=k {
        let s = class_s(k, jp).expect("index in range");
        for (m, sm) in s.iter().enumerate() {
            let mut sum = FactoredSum::new();
            for i in m as u32..=jp {
                let z = &class_zbar(k, i).expect("index in range")[m];
                sum.push(z.clone().scale(&Rational::from_integer(binomial(jp, i))));
            }
            sum.push(sm.clone().scale(&-Rational::one()));
            if !sum.is_zero() {
                r.fail(json!({ "relation": jp, "component": m }));
            }
        }
    }
    match linrel_coefficients(k) {
        Ok(c) => {
            for (i, row) in c.iter().enumerate() {
                for (jp, v) in row.iter().enumerate() {
                    if *v != Rational::from_integer(binomial(jp as u32, i as u32)) {
                        r.fail(json!({ "coefficient": [i, jp], "value": v.to_string() }));
                    }
                }
            }
            let grid: Vec<Vec<String>> =
                c.iter().map(|row| row.iter().map(|v| v.to_string()).collect()).collect();
            r = r.with_data(json!({ "change_of_basis": grid }));
        }
        Err(e) => r.fail(json!({ "error": e.to_string() })),
    }
    r
}

fn pole_name(n: i64) -> String {
    match -n {
        0 => "z = 0".to_string(),
        1 => "z = phi".to_string(),
        -1 => "z = -phi".to_string(),
        m => format!("z = {m}*phi"),
    }
}

/// Residues of `(S^{-1} S)_{i j'}` at every candidate pole `z = -n phi`,
/// and its limit at `z -> infinity`, computed on the unreduced lcm form.
/// Candidates are the `z + n phi` factors of the summands together with
/// `n = k - j - j' + r'` for `i <= j <= j'`, `0 <= r' <= j' - i`.
pub fn verify_residues(k: u32, i: u32, j_prime: u32) -> CheckReport {
    let mut r = CheckReport::new("residues").param("k", k).param("i", i).param("j_prime", j_prime);
    if i > j_prime || j_prime > k {
        return r.failed(json!({ "error": "need i <= j' <= k" }));
    }
    let sum = inverse_product_entry(k, i, j_prime);
    let mut poles = Vec::new();
    for f in &sum.denominator_forms() {
        if f.z == 0 {
            continue;
        }
        match f.as_z_plus_n_phi() {
            Some(n) => poles.push(n),
            None => {
                r.fail(json!({ "unexpected_factor": f.to_string() }));
                return r;
            }
        }
    }
    // potential poles of the residue argument: n = k - j - j' + r'
    for j in i..=j_prime {
        for rp in 0..=(j_prime - i) {
            let n = k as i64 - j as i64 - j_prime as i64 + rp as i64;
            if !poles.contains(&n) {
                poles.push(n);
            }
        }
    }
    poles.sort_unstable();
    poles.dedup();
    let f = sum.combine().to_ratfun();
    for n in &poles {
        match residue_at(&f, *n) {
            Ok(res) if res.is_zero() => {}
            Ok(res) => r.fail(json!({ "pole_n": n, "residue": res.to_string() })),
            Err(e) => r.fail(json!({ "pole_n": n, "error": Error::Structural(e.to_string()).to_string() })),
        }
    }
    let expect = if i == j_prime { Rational::one() } else { Rational::zero() };
    match f.limit_z_infinity() {
        Some(l) if l.value_eq(&crate::exactalg::RatFun::constant(expect.clone())) => {}
        Some(l) => r.fail(json!({ "limit": l.to_string(), "expected": expect.to_string() })),
        None => r.fail(json!({ "limit": "unbounded" })),
    }
    let zeros: Vec<String> = poles.iter().map(|n| pole_name(*n)).collect();
    r.with_data(json!({ "poles": zeros }))
}

/// The weight tables of the attracting and stable patches reproduce the
/// closed-form coefficients, and have net dimension `k`.
pub fn verify_geometry(k: u32) -> CheckReport {
    use crate::moduli::{complete_intersection_coeff, patch_weights, Variant};
    let mut r = CheckReport::new("geometry").param("k", k);
    for jp in 0..=k {
        let zbar = class_zbar(k, jp).expect("index in range");
        let stab = class_s(k, jp).expect("index in range");
        for j in 0..=jp {
            for (variant, closed) in [(Variant::Zbar, &zbar[j as usize]), (Variant::Stab, &stab[j as usize])] {
                let t = match patch_weights(k, j, jp, variant) {
                    Ok(t) => t,
                    Err(e) => {
                        r.fail(json!({ "j": j, "j_prime": jp, "error": e.to_string() }));
                        continue;
                    }
                };
                if t.net_dimension() != k as i64 {
                    r.fail(json!({ "j": j, "j_prime": jp, "variant": format!("{variant:?}"), "net_dimension": t.net_dimension() }));
                }
                match complete_intersection_coeff(&t) {
                    Ok(c) if Fraction::from(&c).value_eq(&Fraction::from(closed)) => {}
                    Ok(c) => r.fail(json!({
                        "j": j,
                        "j_prime": jp,
                        "variant": format!("{variant:?}"),
                        "geometry": c.to_string(),
                        "closed_form": closed.to_string(),
                    })),
                    Err(e) => r.fail(json!({ "j": j, "j_prime": jp, "error": e.to_string() })),
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{MPoly, RatFun};

    fn lf(z: i64, phi: i64, eps: i64) -> MPoly {
        LinForm::new(z, phi, eps).to_mpoly()
    }

    fn prod_of(forms: &[MPoly]) -> MPoly {
        forms.iter().fold(MPoly::one(), |acc, f| &acc * f)
    }

    fn rf(num: MPoly, den: &[MPoly]) -> RatFun {
        RatFun::new(num, prod_of(den)).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(40, 20), BigInt::from(137846528820u64));
    }

    #[test]
    fn k2_zbar_expansion_expected() {
        let (z, epz, pez) = (lf(1, 0, 0), lf(1, 0, 1), lf(1, 1, 1));
        let (pz, pmz) = (lf(1, 1, 0), lf(-1, 1, 0));
        let expect = [
            vec![rf(MPoly::one(), &[epz.clone(), pez.clone()])],
            vec![rf(MPoly::from_int(-1), &[epz.clone(), pz.clone()]), rf(MPoly::one(), &[epz.clone(), pz.clone()])],
            vec![
                rf(MPoly::one(), &[z.clone(), pz.clone()]),
                rf(MPoly::from_int(2), &[pmz.clone(), pz.clone()]),
                rf(MPoly::from_int(-1), &[z.clone(), pmz.clone()]),
            ],
        ];
        for (jp, col) in expect.iter().enumerate() {
            let got = class_zbar(2, jp as u32).unwrap();
            assert_eq!(got.len(), col.len());
            for (g, x) in got.iter().zip(col) {
                assert!(g.expand().value_eq(x), "Zbar_{jp}: {g} vs {x}");
            }
        }
    }

    #[test]
    fn k2_s_matrix_expected() {
        let (e, z, epz, pez) = (lf(0, 0, 1), lf(1, 0, 0), lf(1, 0, 1), lf(1, 1, 1));
        let (pz, pmz, pe) = (lf(1, 1, 0), lf(-1, 1, 0), lf(0, 1, 1));
        let zero = RatFun::zero();
        let expect = [
            [
                rf(MPoly::one(), &[epz.clone(), pez.clone()]),
                rf(-&e, &[epz.clone(), pz.clone(), pez.clone()]),
                rf(&e * &pe, &[z.clone(), epz.clone(), pz.clone(), pez.clone()]),
            ],
            [
                zero.clone(),
                rf(MPoly::one(), &[epz.clone(), pz.clone()]),
                rf(pe.scale(&Rational::from_integer(2.into())), &[epz.clone(), pmz.clone(), pz.clone()]),
            ],
            [zero.clone(), zero, rf(MPoly::from_int(-1), &[z.clone(), pmz.clone()])],
        ];
        let s = s_matrix(2);
        for i in 0..3 {
            for j in 0..3 {
                assert!(s.ratfun(i, j).value_eq(&expect[i][j]), "S[{i}][{j}]");
            }
        }
    }

    #[test]
    fn class_s_examples() {
        let c = class_s(1, 1).unwrap();
        let expect = rf(-lf(0, 0, 1), &[lf(1, 0, 0), lf(1, 0, 1)]);
        assert!(c[0].expand().value_eq(&expect));
        let c = class_s(2, 1).unwrap();
        assert!(c[1].expand().value_eq(&rf(MPoly::one(), &[lf(1, 0, 1), lf(1, 1, 0)])));
        assert!(class_s(2, 3).is_err());
    }

    #[test]
    fn both_printed_forms_of_s_agree() {
        for k in 0..=7 {
            for j in 0..=k {
                for jp in 0..=k {
                    let a = Fraction::from(&s_entry(k, j, jp));
                    let b = Fraction::from(&s_entry_simplified(k, j, jp));
                    assert!(a.value_eq(&b), "k={k} j={j} j'={jp}");
                }
            }
        }
    }

    #[test]
    fn k1_matrices() {
        let s = s_matrix(1);
        let si = s_inverse(1);
        let (e, z, epz) = (lf(0, 0, 1), lf(1, 0, 0), lf(1, 0, 1));
        assert!(s.ratfun(0, 0).value_eq(&rf(MPoly::one(), &[epz.clone()])));
        assert!(s.ratfun(0, 1).value_eq(&rf(-&e, &[z.clone(), epz.clone()])));
        assert!(s.ratfun(1, 1).value_eq(&rf(MPoly::one(), &[z.clone()])));
        assert!(s.get(1, 0).is_zero());
        assert_eq!(si.get(0, 0).num, epz);
        assert_eq!(si.get(0, 1).num, e);
        assert_eq!(si.get(1, 1).num, z);
        assert_eq!(s_matrix(0).get(0, 0), &Fraction::one());
        assert_eq!(s_inverse(0).get(0, 0), &Fraction::one());
    }

    #[test]
    fn inverse_small_k() {
        for k in 0..=4 {
            assert!(verify_inverse(k).passed(), "k={k}");
            let p = s_inverse(k).mul(&s_matrix(k));
            assert_eq!(p.first_non_identity(), None);
        }
    }

    #[test]
    fn triangularity_and_diagonals() {
        for k in 0..=5 {
            let s = s_matrix(k);
            let si = s_inverse(k);
            assert!(s.is_upper_triangular() && si.is_upper_triangular());
            for j in 0..=k as usize {
                assert!(!s.get(j, j).is_zero());
                assert!(s.get(j, j).mul(si.get(j, j)).is_constant(&Rational::one()));
            }
        }
    }

    #[test]
    fn stable_properties() {
        // cf_p(S_p) = cf_p(Zbar_p); off-diagonal entries vanish at phi = eps = 0
        let zero = Rational::zero();
        for k in 0..=5 {
            for jp in 0..=k {
                let s = class_s(k, jp).unwrap();
                let z = class_zbar(k, jp).unwrap();
                assert_eq!(s[jp as usize], z[jp as usize]);
                for sj in s.iter().take(jp as usize) {
                    let v = sj.numerator_poly().eval(&Rational::from_integer(3.into()), &zero, &zero);
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn linrel_k2_change_of_basis() {
        let c = linrel_coefficients(2).unwrap();
        let expect = [[1, 1, 1], [0, 1, 2], [0, 0, 1]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c[i][j], Rational::from_integer(expect[i][j].into()));
            }
        }
        assert!(verify_linrel(0).passed());
        assert!(verify_linrel(3).passed());
    }

    #[test]
    fn geometry_matches_closed_forms() {
        for k in 0..=4 {
            let r = verify_geometry(k);
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn residues_vanish() {
        let r = verify_residues(2, 0, 1);
        assert!(r.passed(), "{}", r.summary());
        let r = verify_residues(1, 0, 1);
        assert!(r.passed(), "{}", r.summary());
        for k in 0..=3 {
            for i in 0..=k {
                assert!(verify_residues(k, i, i).passed());
            }
        }
        assert!(!verify_residues(2, 2, 1).passed());
    }

    #[test]
    fn residue_candidates_at_k2() {
        let r = verify_residues(2, 0, 1);
        let poles = r.data.unwrap()["poles"].clone();
        assert_eq!(poles, json!(["z = 0", "z = -phi", "z = -2*phi"]));
    }
}
