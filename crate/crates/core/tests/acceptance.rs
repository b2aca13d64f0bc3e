//! One PASS/FAIL line per acceptance criterion, with wall-clock bounds.

use std::time::{Duration, Instant};

use num::One;
use spin_rmatrix::exactalg::{MPoly, RatFun, Rational, Substitution, Var};
use spin_rmatrix::moduli::{dim_m1, duality_involution, fixed_points, weight_space_dim};
use spin_rmatrix::oracle::{spectral_decompose, verify_sl2_commutation};
use spin_rmatrix::report::CheckReport;
use spin_rmatrix::rmatrix::{
    assemble_full, rblock_closed, verify_equal_constructions, verify_identity_at_zero, verify_unitarity_block,
    verify_ybe_random,
};
use spin_rmatrix::stablebasis::{
    class_zbar, s_inverse, s_matrix, verify_geometry, verify_inverse, verify_linrel, verify_residues,
};

const SEED: u64 = 20_240_601;

/// `cz z + cp phi + ce eps + c0`.
fn lin(cz: i64, cp: i64, ce: i64, c0: i64) -> MPoly {
    MPoly::linear(cz, cp, ce, Rational::from_integer(c0.into()))
}

fn prod(fs: &[MPoly]) -> MPoly {
    fs.iter().fold(MPoly::one(), |acc, f| &acc * f)
}

fn frac(c: i64, num: &[MPoly], den: &[MPoly]) -> RatFun {
    RatFun::new(prod(num).scale(&Rational::from_integer(c.into())), prod(den)).unwrap()
}

fn zero() -> RatFun {
    RatFun::zero()
}

fn first_mismatch(actual: impl Fn(usize, usize) -> RatFun, expected: &[Vec<RatFun>]) -> Option<String> {
    for (i, row) in expected.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let a = actual(i, j);
            if !a.value_eq(e) {
                return Some(format!("entry ({i},{j}): got {a}, expected {e}"));
            }
        }
    }
    None
}

fn first_failure(reports: &[CheckReport]) -> Option<String> {
    reports.iter().find(|r| !r.passed()).map(CheckReport::summary)
}

struct Outcome {
    ok: bool,
    note: String,
}

fn pass(note: impl Into<String>) -> Outcome {
    Outcome { ok: true, note: note.into() }
}

fn fail(note: impl Into<String>) -> Outcome {
    Outcome { ok: false, note: note.into() }
}

fn from_failure(f: Option<String>, note: &str) -> Outcome {
    match f {
        None => pass(note),
        Some(w) => fail(w),
    }
}

fn spin_half_block() -> Outcome {
    let b = rblock_closed(1).entries;
    let (e, z, emz) = (lin(0, 0, 1, 0), lin(1, 0, 0, 0), lin(-1, 0, 1, 0));
    let expected = vec![
        vec![frac(1, &[e.clone()], &[emz.clone()]), frac(1, &[z.clone()], &[emz.clone()])],
        vec![frac(1, &[z], &[emz.clone()]), frac(1, &[e], &[emz])],
    ];
    from_failure(first_mismatch(|i, j| b.ratfun(i, j), &expected), "k=1 block entrywise")
}

fn spin_one_goldens() -> Outcome {
    let (e, z, p) = (lin(0, 0, 1, 0), lin(1, 0, 0, 0), lin(0, 1, 0, 0));
    let ez = lin(1, 0, 1, 0);
    let pez = lin(1, 1, 1, 0);
    let pz = lin(1, 1, 0, 0);
    let pmz = lin(-1, 1, 0, 0);
    let pe = lin(0, 1, 1, 0);
    let zbar = vec![
        vec![frac(1, &[], &[ez.clone(), pez.clone()]), frac(-1, &[], &[ez.clone(), pz.clone()]), frac(1, &[], &[z.clone(), pz.clone()])],
        vec![zero(), frac(1, &[], &[ez.clone(), pz.clone()]), frac(2, &[], &[pmz.clone(), pz.clone()])],
        vec![zero(), zero(), frac(-1, &[], &[z.clone(), pmz.clone()])],
    ];
    let got = |i: usize, j: usize| {
        if i > j {
            zero()
        } else {
            class_zbar(2, j as u32).unwrap()[i].expand()
        }
    };
    if let Some(w) = first_mismatch(got, &zbar) {
        return fail(format!("Zbar classes: {w}"));
    }
    let s = s_matrix(2);
    let golden_s = vec![
        vec![
            frac(1, &[], &[ez.clone(), pez.clone()]),
            frac(-1, &[e.clone()], &[ez.clone(), pz.clone(), pez.clone()]),
            frac(1, &[e.clone(), pe.clone()], &[z.clone(), ez.clone(), pz.clone(), pez.clone()]),
        ],
        vec![zero(), frac(1, &[], &[ez.clone(), pz.clone()]), frac(2, &[pe.clone()], &[ez.clone(), pmz.clone(), pz.clone()])],
        vec![zero(), zero(), frac(-1, &[], &[z.clone(), pmz.clone()])],
    ];
    if let Some(w) = first_mismatch(|i, j| s.ratfun(i, j), &golden_s) {
        return fail(format!("S(2): {w}"));
    }
    let prod_si = s_inverse(2).mul(&s);
    if let Some(at) = prod_si.first_non_identity() {
        return fail(format!("S^-1(2) S(2) differs from identity at {at:?}"));
    }
    let den = [lin(-1, 0, 1, 0), lin(-1, 1, 1, 0)];
    let mid = &(&(&(&p * &e) + &(&p * &z)) + &e.pow(2)) + &z.pow(2);
    let corner = frac(1, &[e.clone(), pe.clone()], &den);
    let ze = frac(1, &[z.clone(), e.clone()], &den);
    let anti = frac(-1, &[z.clone(), pmz.clone()], &den);
    let two = frac(2, &[z.clone(), pe.clone()], &den);
    let block = vec![
        vec![corner.clone(), ze.clone(), anti.clone()],
        vec![two.clone(), RatFun::new(mid, prod(&den)).unwrap(), two],
        vec![anti, ze, corner],
    ];
    let b = rblock_closed(2).entries;
    if let Some(w) = first_mismatch(|i, j| b.ratfun(i, j), &block) {
        return fail(format!("k=2 block: {w}"));
    }
    let r = match assemble_full(2) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let (z1, z2) = (lin(1, 0, 0, 1), lin(1, 0, 0, 2));
    let a = frac(2, &[], &[z2.clone()]);
    let bz = frac(-1, &[z.clone()], &[z2.clone()]);
    let c = frac(2, &[], &[z1.clone(), z2.clone()]);
    let d = frac(-2, &[z.clone()], &[z1.clone(), z2.clone()]);
    let f = frac(1, &[z.clone(), lin(1, 0, 0, -1)], &[z1.clone(), z2.clone()]);
    let g = RatFun::new(&(&z.pow(2) + &z) + &MPoly::from_int(2), &z1 * &z2).unwrap();
    let one = RatFun::one();
    let o = zero;
    let full = vec![
        vec![one.clone(), o(), o(), o(), o(), o(), o(), o(), o()],
        vec![o(), a.clone(), o(), bz.clone(), o(), o(), o(), o(), o()],
        vec![o(), o(), c.clone(), o(), d.clone(), o(), f.clone(), o(), o()],
        vec![o(), bz.clone(), o(), a.clone(), o(), o(), o(), o(), o()],
        vec![o(), o(), d.clone(), o(), g, o(), d.clone(), o(), o()],
        vec![o(), o(), o(), o(), o(), a.clone(), o(), bz.clone(), o()],
        vec![o(), o(), f, o(), d, o(), c, o(), o()],
        vec![o(), o(), o(), o(), o(), bz.clone(), o(), a.clone(), o()],
        vec![o(), o(), o(), o(), o(), o(), o(), o(), one],
    ];
    from_failure(first_mismatch(|i, j| r.entry(i, j), &full), "Zbar, S, S^-1 S, k=2 block, 9x9")
}

fn inverse_identity() -> Outcome {
    let mut reports = Vec::new();
    for k in 0..=6 {
        reports.push(verify_inverse(k));
        if let Some(at) = s_inverse(k).mul(&s_matrix(k)).first_non_identity() {
            return fail(format!("matrix product k={k} differs from identity at {at:?}"));
        }
    }
    from_failure(first_failure(&reports), "k<=6, termwise and by matrix product")
}

fn residues() -> Outcome {
    let mut reports = Vec::new();
    for k in 0..=4 {
        for jp in 0..=k {
            for i in 0..=jp {
                reports.push(verify_residues(k, i, jp));
            }
        }
    }
    let n = reports.len();
    from_failure(first_failure(&reports), &format!("{n} entries, k<=4"))
}

fn linear_relations() -> Outcome {
    let reports: Vec<CheckReport> = (0..=5).map(verify_linrel).collect();
    if let Some(w) = first_failure(&reports) {
        return fail(w);
    }
    let expect = serde_json::json!([["1", "1", "1"], ["0", "1", "2"], ["0", "0", "1"]]);
    let got = reports[2].data.as_ref().map(|d| d["change_of_basis"].clone());
    if got.as_ref() != Some(&expect) {
        return fail(format!("k=2 change of basis {got:?}"));
    }
    pass("k<=5, k=2 change of basis [[1,1,1],[0,1,2],[0,0,1]]")
}

fn constructions() -> Outcome {
    let reports: Vec<CheckReport> = (0..=6).map(verify_equal_constructions).collect();
    from_failure(first_failure(&reports), "closed form = S^-1 S(-z) reversed, k<=6")
}

fn yang_baxter() -> Outcome {
    let mut reports = Vec::new();
    for ell in 1..=3 {
        match verify_ybe_random(ell, 20, SEED) {
            Ok(r) => reports.push(r),
            Err(e) => return fail(format!("ell={ell}: {e}")),
        }
    }
    from_failure(first_failure(&reports), "ell=1,2,3 at 20 seeded triples each (ell=3 empirical)")
}

fn unitarity() -> Outcome {
    let mut reports: Vec<CheckReport> = (0..=6).map(verify_unitarity_block).collect();
    for ell in 1..=3 {
        match verify_identity_at_zero(ell) {
            Ok(r) => reports.push(r),
            Err(e) => return fail(format!("ell={ell}: {e}")),
        }
    }
    from_failure(first_failure(&reports), "blocks k<=6, R(0)=Id for ell<=3")
}

fn brute_force_count(k: u32, n: usize, ell: u32) -> usize {
    let base = ell as usize + 1;
    (0..base.pow(n as u32))
        .filter(|code| {
            let mut c = *code;
            let mut sum = 0;
            for _ in 0..n {
                sum += c % base;
                c /= base;
            }
            sum == k as usize
        })
        .count()
}

fn counting() -> Outcome {
    for n in 1..=4usize {
        for ell in 1..=4u32 {
            let top = n as u32 * ell;
            for k in 0..=top + 1 {
                let pts = fixed_points(k, n, ell);
                let brute = brute_force_count(k, n, ell);
                if pts.len() != brute || weight_space_dim(k, n, ell) != brute as u128 {
                    return fail(format!("k={k} n={n} ell={ell}: {} points, {brute} sequences", pts.len()));
                }
                if k <= top {
                    for p in &pts {
                        if duality_involution(p).k() != top - k {
                            return fail(format!("duality of {p}"));
                        }
                    }
                    if let (Ok(a), Ok(b)) = (dim_m1(k, n, ell), dim_m1(top - k, n, ell)) {
                        if a != b {
                            return fail(format!("dim asymmetric at k={k} n={n} ell={ell}"));
                        }
                    }
                }
            }
        }
    }
    for ell in 1..=6u32 {
        for k in 0..=2 * ell {
            let expect = 2 * k.min(2 * ell - k) as i64;
            if dim_m1(k, 2, ell).ok() != Some(expect) {
                return fail(format!("dim at n=2 ell={ell} k={k}"));
            }
        }
    }
    pass("n<=4, ell<=4 exhaustive; n=2 dims for ell<=6; k -> n ell - k symmetric")
}

fn geometry() -> Outcome {
    let reports: Vec<CheckReport> = (0..=5).map(verify_geometry).collect();
    from_failure(first_failure(&reports), "j<=j'<=k<=5, attracting and stable patches")
}

/// `prod_{m=s+1}^{ell} (m - z)/(m + z)` at `phi = 1`.
fn expected_rho(ell: u32, s: u32) -> RatFun {
    let num: Vec<MPoly> = (s + 1..=ell).map(|m| lin(-1, 0, 0, m as i64)).collect();
    let den: Vec<MPoly> = (s + 1..=ell).map(|m| lin(1, 0, 0, m as i64)).collect();
    frac(1, &num, &den)
}

fn oracle() -> Outcome {
    let mut gauges = Vec::new();
    let phi_one = Substitution::new().bind_const(Var::Phi, Rational::one());
    for ell in 1..=3 {
        let r = match assemble_full(ell) {
            Ok(r) => r,
            Err(e) => return fail(e.to_string()),
        };
        let eq = verify_sl2_commutation(&r);
        if !eq.report.passed() {
            return fail(eq.report.summary());
        }
        let spec = match spectral_decompose(&r) {
            Ok(s) => s,
            Err(e) => return fail(format!("ell={ell}: {e}")),
        };
        if !spec.report.passed() {
            return fail(spec.report.summary());
        }
        for (s, rho) in spec.rho.iter().enumerate() {
            let got = match rho.to_ratfun().specialize(&phi_one) {
                Ok(f) => f,
                Err(e) => return fail(format!("ell={ell} rho_{s}: {e}")),
            };
            if !got.value_eq(&expected_rho(ell, s as u32)) {
                return fail(format!("ell={ell} rho_{s} = {got}"));
            }
        }
        gauges.push(format!("ell={ell}: {}", spec.gauge.name));
    }
    pass(format!("gauge {}", gauges.join(", ")))
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("1 spin-1/2 block", Duration::from_secs(1), spin_half_block),
        ("2 spin-1 goldens", Duration::from_secs(5), spin_one_goldens),
        ("3 inverse identity", Duration::from_secs(60), inverse_identity),
        ("4 residue vanishing", Duration::from_secs(60), residues),
        ("5 linear relations", Duration::from_secs(30), linear_relations),
        ("6 construction cross-check", Duration::from_secs(120), constructions),
        ("7 yang-baxter", Duration::from_secs(300), yang_baxter),
        ("8 unitarity and identity at zero", Duration::from_secs(120), unitarity),
        ("9 counting", Duration::from_secs(60), counting),
        ("10 geometry", Duration::from_secs(60), geometry),
        ("11 oracle equivariance and spectrum", Duration::from_secs(120), oracle),
    ];
    let mut failed = 0;
    for (name, bound, check) in criteria {
        let t = Instant::now();
        let out = check();
        let dt = t.elapsed();
        let ok = out.ok && dt < bound;
        if !ok {
            failed += 1;
        }
        let verdict = if ok { "PASS" } else { "FAIL" };
        let timing = format!("{:.3}s, bound {}s", dt.as_secs_f64(), bound.as_secs());
        println!("{verdict} {name}: {} ({timing})", out.note);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
