//! R-matrix blocks from the closed formula and from `S^{-1} S~`, the
//! assembled spin `ell/2` operator and its Yang-Baxter and unitarity checks.

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactalg::{FactoredRat, FactoredSum, Fraction, LinForm, MPoly, QMatrix, RatFun, Rational, Substitution, Var};
use crate::report::CheckReport;
use crate::stablebasis::{
    binomial, fixed_point_labels, s_entry_simplified, s_inverse, Label, SymMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    TriangularProduct,
}

/// Sector-`k` block of `R` in the variables `z`, `phi`, `eps`.
#[derive(Clone, Debug)]
pub struct RBlock {
    pub k: u32,
    pub provenance: Provenance,
    pub entries: SymMatrix,
}

fn binom(n: i64, k: i64) -> Rational {
    if n < 0 || k < 0 || k > n {
        return Rational::zero();
    }
    Rational::from_integer(binomial(n as u32, k as u32))
}

fn times(mut f: FactoredRat, lo: i64, hi: i64, exp: i32, form: impl Fn(i64) -> LinForm) -> FactoredRat {
    for r in lo..=hi {
        f = f.with_factor(form(r), exp);
    }
    f
}

/// One summand of the closed formula for `R_{i j'}`.
fn closed_term(k: i64, i: i64, jp: i64, j: i64) -> FactoredRat {
    let c = FactoredRat::new(binom(j, i) * binom(jp, k - j));
    let c = times(c, i, j - 1, 1, |r| LinForm::new(0, r, 1));
    let c = times(c, 0, k - j - 1, 1, |r| LinForm::new(1, r, 1));
    let c = times(c, k + 1 - j - i, k - j, 1, |r| LinForm::phi_z(r, 1));
    let c = times(c, k - j, jp - 1, 1, |r| LinForm::new(0, r, 1));
    let c = times(c, 0, j - 1, -1, |r| LinForm::new(-1, r, 1));
    let c = times(c, 2 * j - k + 1, j, -1, |r| LinForm::phi_z(r, -1));
    times(c, k - 2 * j + 1, jp - j, -1, |r| LinForm::phi_z(r, 1))
}

/// `R_{i j'}` as the formal sum over `j = max(i, k-j')..=k`.
pub fn closed_entry(k: u32, i: u32, j_prime: u32) -> FactoredSum {
    let (k, i, jp) = (k as i64, i as i64, j_prime as i64);
    let mut s = FactoredSum::new();
    for j in i.max(k - jp)..=k {
        s.push(closed_term(k, i, jp, j));
    }
    s
}

pub fn rblock_closed(k: u32) -> RBlock {
    let entries = SymMatrix::from_fn(fixed_point_labels(k), fixed_point_labels(k), |i, j| {
        closed_entry(k, i as u32, j as u32).combine().cancel_linear_factors()
    });
    RBlock { k, provenance: Provenance::ClosedForm, entries }
}

/// `S~_{j j'} = S_{k-j, j'}` with `z -> -z`.
pub fn s_tilde(k: u32) -> SymMatrix {
    SymMatrix::from_fn(fixed_point_labels(k), fixed_point_labels(k), |j, jp| {
        Fraction::from(&s_entry_simplified(k, k - j as u32, jp as u32).negate_z())
    })
}

pub fn rblock_triangular(k: u32) -> RBlock {
    let entries = s_inverse(k).mul(&s_tilde(k));
    RBlock { k, provenance: Provenance::TriangularProduct, entries }
}

/// Reversal permutation `P_{ij} = delta_{i,k-j}`.
pub fn reversal(k: u32) -> SymMatrix {
    SymMatrix::from_fn(fixed_point_labels(k), fixed_point_labels(k), |i, j| {
        if i + j == k as usize {
            Fraction::one()
        } else {
            Fraction::zero()
        }
    })
}

/// `L = P S^{-1} P` and `U = S(-z)`, so that `P R = L U`.
pub fn lu_factors(k: u32) -> (SymMatrix, SymMatrix) {
    let p = reversal(k);
    let l = p.mul(&s_inverse(k)).mul(&p);
    let u = crate::stablebasis::s_matrix(k).negate_z();
    (l, u)
}

pub fn verify_lu(k: u32) -> CheckReport {
    let mut r = CheckReport::new("lu").param("k", k);
    let (l, u) = lu_factors(k);
    if !l.is_lower_triangular() {
        r.fail(json!({ "factor": "L", "shape": "not lower triangular" }));
    }
    if !u.is_upper_triangular() {
        r.fail(json!({ "factor": "U", "shape": "not upper triangular" }));
    }
    let lhs = reversal(k).mul(&rblock_triangular(k).entries);
    if let Some((i, j)) = lhs.first_difference(&l.mul(&u)) {
        r.fail(json!({ "entry": [i, j], "value": lhs.get(i, j).to_string() }));
    }
    r
}

fn labeled_failure(m: &SymMatrix, at: (usize, usize)) -> serde_json::Value {
    json!({ "entry": [at.0, at.1], "value": m.get(at.0, at.1).to_string() })
}

pub fn verify_equal_constructions(k: u32) -> CheckReport {
    let mut r = CheckReport::new("constructions").param("k", k);
    let a = rblock_closed(k).entries;
    let b = rblock_triangular(k).entries;
    if let Some(at) = a.first_difference(&b) {
        r.fail(json!({
            "entry": [at.0, at.1],
            "closed": a.get(at.0, at.1).to_string(),
            "triangular": b.get(at.0, at.1).to_string(),
        }));
    }
    r
}

/// `R(z) R(-z) = 1` for the block, with `phi` and `eps` generic.
pub fn verify_unitarity_block(k: u32) -> CheckReport {
    let mut r = CheckReport::new("unitarity").param("k", k);
    let m = rblock_closed(k).entries;
    let p = m.mul(&m.negate_z());
    if let Some(at) = p.first_non_identity() {
        r.fail(labeled_failure(&p, at));
    }
    r
}

/// `eps -> -ell phi`; the result involves `z` and `phi` only. Common
/// linear factors are cancelled afterwards.
pub fn spin_specialize(f: &Fraction, ell: u32) -> Result<Fraction> {
    let l = ell as i64;
    let minus = MPoly::var(Var::Phi).scale(&Rational::from_integer((-l).into()));
    let g = f.transform(
        |g| LinForm::new(g.z, g.phi - l * g.eps, 0),
        |p| p.substitute(Var::Eps, &minus),
    )?;
    Ok(g.cancel_linear_factors())
}

impl RBlock {
    /// Spin specialization of every entry.
    pub fn specialize(&self, ell: u32) -> Result<SymMatrix> {
        self.entries.try_map(|f| spin_specialize(f, ell))
    }
}

/// `a! ^2 C(ell, a)`: the norm relating the two basis normalizations on the
/// sectors above the middle.
fn transport_weight(ell: u32, a: u32) -> Rational {
    let mut fact = num::BigInt::one();
    for x in 1..=a {
        fact *= x;
    }
    Rational::from_integer(&fact * &fact * binomial(ell, a))
}

/// The assembled operator on `C^{ell+1} (x) C^{ell+1}` in the lexicographic
/// tensor basis, specialized to the spin chain. Entries are homogeneous in
/// `z`, `phi`; `phi = 1` is applied on output and evaluation.
#[derive(Clone, Debug)]
pub struct FullR {
    pub ell: u32,
    pub matrix: SymMatrix,
    poles: Vec<Rational>,
}

pub fn tensor_labels(ell: u32) -> Vec<Label> {
    let mut out = Vec::new();
    for a in 0..=ell {
        for b in 0..=ell {
            out.push(Label::Tensor { a, b });
        }
    }
    out
}

pub fn assemble_full(ell: u32) -> Result<FullR> {
    if ell == 0 {
        return Err(Error::Domain("ell must be at least 1".into()));
    }
    let blocks: Vec<SymMatrix> = (0..=ell)
        .into_par_iter()
        .map(|k| rblock_closed(k).specialize(ell))
        .collect::<Result<_>>()?;
    let d = ell as usize + 1;
    let w: Vec<Rational> = (0..=ell).map(|a| transport_weight(ell, a)).collect();
    let matrix = SymMatrix::from_fn(tensor_labels(ell), tensor_labels(ell), |row, col| {
        let (a1, b1) = ((row / d) as u32, (row % d) as u32);
        let (a, b) = ((col / d) as u32, (col % d) as u32);
        let k = a + b;
        if a1 + b1 != k {
            return Fraction::zero();
        }
        if k <= ell {
            return blocks[k as usize].get(b1 as usize, b as usize).clone();
        }
        let block = &blocks[(2 * ell - k) as usize];
        let e = block.get((ell - b1) as usize, (ell - b) as usize);
        let (la1, lb1, la, lb) = ((ell - a1) as usize, (ell - b1) as usize, (ell - a) as usize, (ell - b) as usize);
        let ratio = &w[la1] * &w[lb1] / (&w[la] * &w[lb]);
        e.scale(&ratio)
    });
    let mut poles: Vec<Rational> = Vec::new();
    for f in matrix.entries() {
        for form in f.den.keys() {
            if form.z != 0 {
                let p = Rational::new((-form.phi).into(), form.z.into());
                if !poles.contains(&p) {
                    poles.push(p);
                }
            }
        }
    }
    poles.sort();
    Ok(FullR { ell, matrix, poles })
}

impl FullR {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Values of `z` where some entry has a pole.
    pub fn poles(&self) -> &[Rational] {
        &self.poles
    }

    /// Entry at `phi = 1`, a rational function of `z`.
    pub fn entry(&self, i: usize, j: usize) -> RatFun {
        let s = Substitution::new().bind_const(Var::Phi, Rational::one());
        self.matrix
            .get(i, j)
            .to_ratfun()
            .specialize(&s)
            .expect("phi = 1 leaves the z-dependent denominators nonzero")
    }

    pub fn text_grid(&self) -> Vec<Vec<String>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.entry(i, j).to_string()).collect()).collect()
    }

    /// Exact numeric matrix at `z`; a pole error names the vanishing factor.
    pub fn eval_at(&self, z: &Rational) -> Result<QMatrix> {
        if self.poles.contains(z) {
            for f in self.matrix.entries() {
                for form in f.den.keys() {
                    let v = form.eval(z, &Rational::one(), &Rational::zero());
                    if v.is_zero() {
                        let s = Substitution::new().bind_const(Var::Phi, Rational::one());
                        let shown = RatFun::from_poly(form.to_mpoly()).specialize(&s)?;
                        return Err(Error::PoleAtSpecialization {
                            factor: format!("{} at z = {}", shown, z),
                        });
                    }
                }
            }
        }
        self.matrix.eval(z, &Rational::one(), &Rational::zero())
    }

    /// Numeric `R(z) (x) 1` and `1 (x) R(z)`.
    fn legs(&self, z: &Rational) -> Result<(QMatrix, QMatrix)> {
        let r = self.eval_at(z)?;
        let id = QMatrix::identity(self.ell as usize + 1);
        Ok((r.kron(&id), id.kron(&r)))
    }
}

/// Both sides of the braided Yang-Baxter equation at `(z1, z2, z3)`.
pub fn ybe_sides(r: &FullR, z1: &Rational, z2: &Rational, z3: &Rational) -> Result<(QMatrix, QMatrix)> {
    let (a12, a23) = r.legs(&(z1 - z2))?;
    let (b12, b23) = r.legs(&(z1 - z3))?;
    let (c12, c23) = r.legs(&(z2 - z3))?;
    let lhs = &(&c12 * &b23) * &a12;
    let rhs = &(&a23 * &b12) * &c23;
    Ok((lhs, rhs))
}

fn ybe_report(r: &FullR, z: &[Rational; 3]) -> CheckReport {
    let mut rep = CheckReport::new("ybe")
        .param("ell", r.ell)
        .param("z", z.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    match ybe_sides(r, &z[0], &z[1], &z[2]) {
        Ok((lhs, rhs)) => {
            if let Some((i, j)) = lhs.differences(&rhs).first() {
                rep.fail(json!({
                    "entry": [i, j],
                    "lhs": lhs.get(*i, *j).to_string(),
                    "rhs": rhs.get(*i, *j).to_string(),
                }));
            }
        }
        Err(e) => rep.fail(json!({ "error": e.to_string() })),
    }
    rep
}

pub fn verify_ybe(ell: u32, z1: &Rational, z2: &Rational, z3: &Rational) -> Result<CheckReport> {
    let r = assemble_full(ell)?;
    Ok(ybe_report(&r, &[z1.clone(), z2.clone(), z3.clone()]))
}

/// `p/q` with `p` in `[-50, 50]`, `q` in `[1, 20]`.
pub fn sample_rational(rng: &mut ChaCha8Rng) -> Rational {
    let p: i64 = rng.gen_range(-50..=50);
    let q: i64 = rng.gen_range(1..=20);
    Rational::new(p.into(), q.into())
}

/// Seeded triples whose pairwise differences avoid `poles`.
pub fn sample_triples(poles: &[Rational], trials: usize, seed: u64) -> Vec<[Rational; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let t = [sample_rational(&mut rng), sample_rational(&mut rng), sample_rational(&mut rng)];
        let diffs = [&t[0] - &t[1], &t[0] - &t[2], &t[1] - &t[2]];
        if diffs.iter().all(|d| !poles.contains(d)) {
            out.push(t);
        }
    }
    out
}

/// YBE at `trials` seeded random triples; stops at nothing, reports the
/// first failing triple.
pub fn verify_ybe_random(ell: u32, trials: usize, seed: u64) -> Result<CheckReport> {
    let r = assemble_full(ell)?;
    let triples = sample_triples(r.poles(), trials, seed);
    let reports: Vec<CheckReport> = triples.par_iter().map(|t| ybe_report(&r, t)).collect();
    let mut out = CheckReport::new("ybe").param("ell", ell).param("trials", trials).param("seed", seed);
    for rep in reports {
        if !rep.passed() {
            out.fail(json!({ "z": rep.params["z"], "witness": rep.witness }));
        }
    }
    Ok(out)
}

/// `R(z) R(-z) = 1` for the assembled operator, symbolically in `z`.
pub fn verify_unitarity_full(ell: u32) -> Result<CheckReport> {
    let r = assemble_full(ell)?;
    let mut rep = CheckReport::new("unitarity").param("ell", ell);
    let p = r.matrix.mul(&r.matrix.negate_z());
    if let Some(at) = p.first_non_identity() {
        rep.fail(labeled_failure(&p, at));
    }
    Ok(rep)
}

/// `R(0) = 1` for the assembled operator.
pub fn verify_identity_at_zero(ell: u32) -> Result<CheckReport> {
    let r = assemble_full(ell)?;
    let mut rep = CheckReport::new("identity_at_zero").param("ell", ell);
    let m = r.eval_at(&Rational::zero())?;
    if let Some((i, j)) = m.differences(&QMatrix::identity(r.dim())).first() {
        rep.fail(json!({ "entry": [i, j], "value": m.get(*i, *j).to_string() }));
    }
    Ok(rep)
}

/// Entries coupling different sectors `a + b` vanish.
pub fn verify_block_structure(r: &FullR) -> CheckReport {
    let d = r.ell as usize + 1;
    let mut rep = CheckReport::new("block_structure").param("ell", r.ell);
    for i in 0..r.dim() {
        for j in 0..r.dim() {
            if i / d + i % d != j / d + j % d && !r.matrix.get(i, j).is_zero() {
                rep.fail(json!({ "entry": [i, j] }));
            }
        }
    }
    rep
}
