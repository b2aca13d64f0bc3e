//! Representation-theoretic cross-checks: the sl2 action on the tensor
//! square, Casimir projectors, equivariance of the assembled R-matrix and
//! its spectral decomposition.

use num::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactalg::{Fraction, LinForm, MPoly, QMatrix, RatFun, Rational, Substitution, Var};
use crate::report::CheckReport;
use crate::rmatrix::{tensor_labels, FullR};
use crate::stablebasis::SymMatrix;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Spin `ell/2` irreducible in the weight basis `e_0..e_ell`:
/// `F e_a = e_{a+1}`, `E e_a = a(ell-a+1) e_{a-1}`, `H e_a = (ell-2a) e_a`.
#[derive(Clone, Debug)]
pub struct Sl2Rep {
    pub ell: u32,
    pub e: QMatrix,
    pub f: QMatrix,
    pub h: QMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E,
    F,
    H,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::E, Generator::F, Generator::H];

    pub fn name(self) -> &'static str {
        match self {
            Generator::E => "E",
            Generator::F => "F",
            Generator::H => "H",
        }
    }
}

impl Sl2Rep {
    pub fn new(ell: u32) -> Self {
        let d = ell as usize + 1;
        let l = ell as i64;
        let e = QMatrix::from_fn(d, d, |i, j| if j == i + 1 { q(j as i64 * (l - j as i64 + 1)) } else { q(0) });
        let f = QMatrix::from_fn(d, d, |i, j| if i == j + 1 { q(1) } else { q(0) });
        let h = QMatrix::from_fn(d, d, |i, j| if i == j { q(l - 2 * i as i64) } else { q(0) });
        Self { ell, e, f, h }
    }

    pub fn generator(&self, x: Generator) -> &QMatrix {
        match x {
            Generator::E => &self.e,
            Generator::F => &self.f,
            Generator::H => &self.h,
        }
    }

    /// `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
    pub fn brackets_hold(&self) -> bool {
        let br = |a: &QMatrix, b: &QMatrix| &(a * b) - &(b * a);
        br(&self.h, &self.e) == self.e.scale(&q(2))
            && br(&self.h, &self.f) == self.f.scale(&q(-2))
            && br(&self.e, &self.f) == self.h
    }
}

/// `x (x) 1 + 1 (x) x` on the tensor square, lexicographic basis.
pub fn coproduct(ell: u32, x: Generator) -> QMatrix {
    let rep = Sl2Rep::new(ell);
    let m = rep.generator(x);
    let id = QMatrix::identity(ell as usize + 1);
    &m.kron(&id) + &id.kron(m)
}

/// `C = E F + F E + H^2 / 2` on the tensor square.
pub fn casimir(ell: u32) -> QMatrix {
    let (e, f, h) = (coproduct(ell, Generator::E), coproduct(ell, Generator::F), coproduct(ell, Generator::H));
    let c = &(&e * &f) + &(&f * &e);
    &c + &(&h * &h).scale(&Rational::new(1.into(), 2.into()))
}

/// Projectors onto the total-spin-`s` summands, `s = 0..=ell`.
#[derive(Clone, Debug)]
pub struct CasimirProjectors {
    pub ell: u32,
    pub projectors: Vec<QMatrix>,
}

fn casimir_eigenvalue(s: u32) -> Rational {
    q(2 * s as i64 * (s as i64 + 1))
}

/// Lagrange interpolation in the Casimir over the eigenvalues `2s(s+1)`.
pub fn casimir_projectors(ell: u32) -> CasimirProjectors {
    let c = casimir(ell);
    let dim = c.rows();
    let id = QMatrix::identity(dim);
    let projectors = (0..=ell)
        .into_par_iter()
        .map(|s| {
            let mut p = id.clone();
            for t in (0..=ell).filter(|t| *t != s) {
                let shifted = &c - &id.scale(&casimir_eigenvalue(t));
                let denom = casimir_eigenvalue(s) - casimir_eigenvalue(t);
                p = (&p * &shifted).scale(&denom.recip());
            }
            p
        })
        .collect();
    CasimirProjectors { ell, projectors }
}

pub fn verify_projectors(ell: u32) -> CheckReport {
    let cp = casimir_projectors(ell);
    let dim = (ell as usize + 1).pow(2);
    let mut r = CheckReport::new("projectors").param("ell", ell);
    let rep = Sl2Rep::new(ell);
    if !rep.brackets_hold() {
        r.fail(json!({ "brackets": "fail" }));
    }
    let mut sum = QMatrix::zeros(dim, dim);
    for (s, p) in cp.projectors.iter().enumerate() {
        if &(p * p) != p {
            r.fail(json!({ "s": s, "property": "idempotent" }));
        }
        if p.rank() != 2 * s + 1 {
            r.fail(json!({ "s": s, "property": "rank", "rank": p.rank() }));
        }
        for (t, p2) in cp.projectors.iter().enumerate() {
            if s != t && !(p * p2).is_zero() {
                r.fail(json!({ "s": [s, t], "property": "orthogonal" }));
            }
        }
        sum = &sum + p;
    }
    if sum != QMatrix::identity(dim) {
        r.fail(json!({ "property": "complete" }));
    }
    r
}

/// Diagonal `+-1` gauge on the tensor basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge {
    pub name: String,
    pub signs: Vec<i8>,
}

impl Gauge {
    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|s| *s > 0)
    }
}

fn product_gauge(ell: u32, sa: &[i8], sb: &[i8], name: String) -> Gauge {
    let d = ell as usize + 1;
    let signs = (0..d * d).map(|i| sa[i / d] * sb[i % d]).collect();
    Gauge { name, signs }
}

/// Candidate gauges: parities `(-1)^(alpha a + beta b)` first, then all
/// product gauges `s(a) t(b)`.
fn candidate_gauges(ell: u32) -> Vec<Gauge> {
    let d = ell as usize + 1;
    let par = |on: bool| -> Vec<i8> { (0..d).map(|a| if on && a % 2 == 1 { -1 } else { 1 }).collect() };
    let mut out = vec![
        product_gauge(ell, &par(false), &par(false), "identity".into()),
        product_gauge(ell, &par(true), &par(false), "(-1)^a".into()),
        product_gauge(ell, &par(false), &par(true), "(-1)^b".into()),
        product_gauge(ell, &par(true), &par(true), "(-1)^(a+b)".into()),
    ];
    for ms in 0..(1u32 << d) {
        for mt in 0..(1u32 << d) {
            let s: Vec<i8> = (0..d).map(|a| if ms >> a & 1 == 1 { -1 } else { 1 }).collect();
            let t: Vec<i8> = (0..d).map(|b| if mt >> b & 1 == 1 { -1 } else { 1 }).collect();
            let g = product_gauge(ell, &s, &t, format!("s(a) = {s:?}, t(b) = {t:?}"));
            if !out.iter().any(|o| o.signs == g.signs) {
                out.push(g);
            }
        }
    }
    out
}

fn commutes_numerically(m: &QMatrix, g: &Gauge, gens: &[QMatrix]) -> bool {
    let d = QMatrix::diagonal(&g.signs.iter().map(|s| q(*s as i64)).collect::<Vec<_>>());
    let gm = &(&d * m) * &d;
    gens.iter().all(|x| &gm * x == x * &gm)
}

/// Generator, first nonzero entry, commutator.
type Commutator = (Generator, Option<(usize, usize)>, SymMatrix);

/// `[R(z), x]` for each generator, symbolically in `z`.
fn symbolic_commutators(m: &SymMatrix, ell: u32) -> Vec<Commutator> {
    Generator::ALL
        .par_iter()
        .map(|x| {
            let c = SymMatrix::from_qmatrix(tensor_labels(ell), tensor_labels(ell), &coproduct(ell, *x));
            let comm = m.mul(&c).sub(&c.mul(m));
            (*x, comm.first_nonzero(), comm)
        })
        .collect()
}

/// Outcome of the equivariance check.
#[derive(Clone, Debug)]
pub struct Equivariance {
    pub gauge: Option<Gauge>,
    pub gauged: Option<SymMatrix>,
    pub report: CheckReport,
}

/// Searches the diagonal `+-1` gauges for one under which `D R(z) D`
/// commutes with the coproduct, screening at a rational point and then
/// confirming symbolically.
pub fn verify_sl2_commutation(r: &FullR) -> Equivariance {
    let ell = r.ell;
    let mut report = CheckReport::new("sl2_commutation").param("ell", ell);
    let gens: Vec<QMatrix> = Generator::ALL.iter().map(|x| coproduct(ell, *x)).collect();
    let probe = (1..)
        .map(|n| Rational::new((3 * n + 4).into(), 7.into()))
        .find(|z| !r.poles().contains(z))
        .expect("finitely many poles");
    let m = match r.eval_at(&probe) {
        Ok(m) => m,
        Err(e) => {
            report.fail(json!({ "error": e.to_string() }));
            return Equivariance { gauge: None, gauged: None, report };
        }
    };
    let Some(gauge) = candidate_gauges(ell).into_iter().find(|g| commutes_numerically(&m, g, &gens)) else {
        report.fail(json!({ "gauge": "none of the diagonal sign gauges commutes", "z": probe.to_string() }));
        return Equivariance { gauge: None, gauged: None, report };
    };
    let gauged = r.matrix.conjugate_by_signs(&gauge.signs);
    for (x, bad, comm) in symbolic_commutators(&gauged, ell) {
        if let Some((i, j)) = bad {
            report.fail(json!({
                "generator": x.name(),
                "entry": [i, j],
                "value": comm.get(i, j).to_string(),
            }));
        }
    }
    report = report.with_data(json!({ "gauge": gauge.name }));
    Equivariance { gauge: Some(gauge), gauged: Some(gauged), report }
}

fn phi_one(f: &RatFun) -> RatFun {
    f.specialize(&Substitution::new().bind_const(Var::Phi, Rational::one()))
        .expect("phi = 1 is regular")
}

fn at_phi_one(f: &Fraction) -> RatFun {
    phi_one(&f.to_ratfun())
}

/// Eigenvalue functions `rho_s(z) = tr(R P_s) / (2s+1)` of a gauged,
/// equivariant operator, entries in `z` and `phi`.
pub fn spectral_values(m: &SymMatrix, cp: &CasimirProjectors) -> Vec<Fraction> {
    cp.projectors
        .par_iter()
        .enumerate()
        .map(|(s, p)| {
            let mut acc = Fraction::zero();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let c = p.get(j, i);
                    if !c.is_zero() && !m.get(i, j).is_zero() {
                        acc = acc.add(&m.get(i, j).scale(c));
                    }
                }
            }
            acc.scale(&q(2 * s as i64 + 1).recip()).cancel_linear_factors()
        })
        .collect()
}

/// Spectral data of the assembled operator.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub ell: u32,
    pub gauge: Gauge,
    pub rho: Vec<Fraction>,
    pub report: CheckReport,
}

impl Spectrum {
    /// `rho_s` at `phi = 1`.
    pub fn rho_text(&self) -> Vec<String> {
        self.rho.iter().map(|f| at_phi_one(f).to_string()).collect()
    }
}

/// `R = sum_s rho_s P_s` checked exactly, together with `rho_s(0) = 1` and
/// `rho_s(z) rho_s(-z) = 1`.
pub fn spectral_decompose(r: &FullR) -> Result<Spectrum> {
    let eq = verify_sl2_commutation(r);
    let (Some(gauge), Some(m)) = (eq.gauge, eq.gauged) else {
        return Err(Error::Structural("operator is not sl2-equivariant under any sign gauge".into()));
    };
    if !eq.report.passed() {
        return Err(Error::Structural(format!("commutation failed: {}", eq.report.summary())));
    }
    let cp = casimir_projectors(r.ell);
    let rho = spectral_values(&m, &cp);
    let mut report = CheckReport::new("spectral").param("ell", r.ell);
    let n = m.rows();
    let bad = (0..n * n).into_par_iter().find_first(|idx| {
        let (i, j) = (idx / n, idx % n);
        let mut acc = Fraction::zero();
        for (s, p) in cp.projectors.iter().enumerate() {
            if !p.get(i, j).is_zero() {
                acc = acc.add(&rho[s].scale(p.get(i, j)));
            }
        }
        !acc.value_eq(m.get(i, j))
    });
    if let Some(idx) = bad {
        return Err(Error::Structural(format!(
            "spectral reconstruction differs at entry ({}, {})",
            idx / n,
            idx % n
        )));
    }
    for (s, f) in rho.iter().enumerate() {
        match f.eval(&Rational::zero(), &Rational::one(), &Rational::zero()) {
            Ok(v) if v.is_one() => {}
            Ok(v) => report.fail(json!({ "s": s, "rho_at_zero": v.to_string() })),
            Err(e) => report.fail(json!({ "s": s, "error": e.to_string() })),
        }
        if !f.mul(&f.negate_z()).cancel_linear_factors().is_constant(&Rational::one()) {
            report.fail(json!({ "s": s, "property": "rho(z) rho(-z) = 1" }));
        }
    }
    let spec = Spectrum { ell: r.ell, gauge: gauge.clone(), rho, report: CheckReport::new("spectral") };
    let report = report.with_data(json!({ "gauge": gauge.name, "rho": spec.rho_text() }));
    Ok(Spectrum { report, ..spec })
}

/// `rho_{s+1} / rho_s` over a common denominator, with shared linear
/// factors removed. Candidates are the denominator forms of the `rho`s and
/// their images under `z -> -z`.
pub fn successive_ratios(rho: &[Fraction]) -> Vec<(MPoly, MPoly)> {
    let mut forms: Vec<LinForm> = Vec::new();
    for f in rho {
        for g in f.den.keys() {
            for h in [*g, g.negate_z().canonical().1] {
                if !forms.contains(&h) {
                    forms.push(h);
                }
            }
        }
    }
    rho.windows(2)
        .map(|w| {
            let (a, b) = (&w[1], &w[0]);
            let mut num = &a.num * &b.den_poly();
            let mut den = &b.num * &a.den_poly();
            for f in &forms {
                let p = f.to_mpoly();
                while let (Ok(n), Ok(d)) = (num.exact_div(&p), den.exact_div(&p)) {
                    num = n;
                    den = d;
                }
            }
            (num, den)
        })
        .collect()
}

pub fn verify_mobius_ratios(rho: &[Fraction]) -> CheckReport {
    let mut r = CheckReport::new("mobius").param("count", rho.len());
    let ratios = successive_ratios(rho);
    let mut shown = Vec::new();
    for (s, (num, den)) in ratios.iter().enumerate() {
        let text = match RatFun::new(num.clone(), den.clone()) {
            Ok(f) => phi_one(&f).to_string(),
            Err(_) => {
                r.fail(json!({ "s": s, "ratio": "zero denominator" }));
                continue;
            }
        };
        shown.push(text.clone());
        if num.degree_in(Var::Z) > 1 || den.degree_in(Var::Z) > 1 {
            r.fail(json!({ "s": s, "ratio": text }));
        }
    }
    r.with_data(json!({ "ratios": shown }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::assemble_full;

    #[test]
    fn reps_and_coproducts() {
        for ell in 1..=6 {
            assert!(Sl2Rep::new(ell).brackets_hold());
        }
        let h = coproduct(1, Generator::H);
        assert_eq!(h, QMatrix::diagonal(&[q(2), q(0), q(0), q(-2)]));
        let f = coproduct(1, Generator::F);
        assert_eq!(f.get(2, 0), &q(1));
        assert_eq!(f.get(1, 0), &q(1));
        let (e, f, h) = (coproduct(2, Generator::E), coproduct(2, Generator::F), coproduct(2, Generator::H));
        assert_eq!(&(&e * &f) - &(&f * &e), h);
    }

    #[test]
    fn projector_ranks() {
        for ell in 1..=3 {
            let cp = casimir_projectors(ell);
            let ranks: Vec<usize> = cp.projectors.iter().map(QMatrix::rank).collect();
            assert_eq!(ranks, (0..=ell as usize).map(|s| 2 * s + 1).collect::<Vec<_>>());
            assert!(verify_projectors(ell).passed());
        }
    }

    #[test]
    fn spin_half_commutes_with_a_gauge() {
        let r = assemble_full(1).unwrap();
        let eq = verify_sl2_commutation(&r);
        assert!(eq.report.passed(), "{}", eq.report.summary());
    }

    #[test]
    fn spin_half_spectrum() {
        let r = assemble_full(1).unwrap();
        let sp = spectral_decompose(&r).unwrap();
        assert!(sp.report.passed(), "{}", sp.report.summary());
        let texts = sp.rho_text();
        assert_eq!(texts.len(), 2);
        assert!(texts.contains(&"1".to_string()), "{texts:?}");
        assert!(verify_mobius_ratios(&sp.rho).passed());
    }

    #[test]
    fn spin_one_spectrum() {
        let r = assemble_full(2).unwrap();
        let sp = spectral_decompose(&r).unwrap();
        assert!(sp.report.passed(), "{}", sp.report.summary());
        let m = verify_mobius_ratios(&sp.rho);
        assert!(m.passed(), "{}", m.summary());
    }

    #[test]
    fn constant_ratio_passes() {
        let rho = vec![Fraction::one(), Fraction::one()];
        assert!(verify_mobius_ratios(&rho).passed());
    }
}
