//! Combinatorial data of the quiver varieties: fixed points, dimensions,
//! patch weight tables and the fixed-point shadow of the duality.

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{FactoredRat, LinForm, Rational};
use crate::report::CheckReport;
use serde_json::json;

/// Torus fixed point `p_{k_1,...,k_n}` with `0 <= k_i <= ell`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FixedPoint {
    seq: Vec<u32>,
    ell: u32,
}

impl FixedPoint {
    pub fn new(seq: Vec<u32>, ell: u32) -> Result<Self> {
        if let Some(bad) = seq.iter().find(|x| **x > ell) {
            return Err(Error::Domain(format!("entry {bad} exceeds ell = {ell}")));
        }
        Ok(Self { seq, ell })
    }

    pub fn seq(&self) -> &[u32] {
        &self.seq
    }

    pub fn k(&self) -> u32 {
        self.seq.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// At `n = 2` the point `p_{k-j,j}` has index `j`.
    pub fn index_n2(&self) -> Option<u32> {
        (self.seq.len() == 2).then(|| self.seq[1])
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.seq.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for FixedPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.seq.serialize(s)
    }
}

/// All sequences in `{0..ell}^n` summing to `k`, lexicographically
/// descending, so `p_{k,0,...}` comes first.
pub fn fixed_points(k: u32, n: usize, ell: u32) -> Vec<FixedPoint> {
    fn rec(rest: u32, slots: usize, ell: u32, cur: &mut Vec<u32>, out: &mut Vec<FixedPoint>) {
        if slots == 0 {
            if rest == 0 {
                out.push(FixedPoint { seq: cur.clone(), ell });
            }
            return;
        }
        if rest as u64 > ell as u64 * slots as u64 {
            return;
        }
        for x in (0..=rest.min(ell)).rev() {
            cur.push(x);
            rec(rest - x, slots - 1, ell, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n, ell, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Coefficient of `q^k` in `(1 + q + ... + q^ell)^n`.
pub fn weight_space_dim(k: u32, n: usize, ell: u32) -> u128 {
    let mut poly = vec![1u128];
    for _ in 0..n {
        let mut next = vec![0u128; poly.len() + ell as usize];
        for (i, c) in poly.iter().enumerate() {
            for d in 0..=ell as usize {
                next[i + d] += c;
            }
        }
        poly = next;
    }
    poly.get(k as usize).copied().unwrap_or(0)
}

/// `2(kn - ell q^2 - r(2q+1))` with `k = q ell + r`; a domain error if the
/// stable locus is empty (more than `n` Jordan blocks needed).
pub fn dim_m1(k: u32, n: usize, ell: u32) -> Result<i64> {
    if ell == 0 {
        return Err(Error::Domain("ell must be at least 1".into()));
    }
    let (k, n, l) = (k as i64, n as i64, ell as i64);
    let q = k / l;
    let r = k % l;
    let blocks = q + i64::from(r > 0);
    if blocks > n {
        return Err(Error::Domain(format!(
            "k = {k} needs {blocks} Jordan blocks of size <= {l}, but n = {n}"
        )));
    }
    Ok(2 * (k * n - l * q * q - r * (2 * q + 1)))
}

/// `(k_1,...,k_n) -> (ell-k_1,...,ell-k_n)`.
pub fn duality_involution(p: &FixedPoint) -> FixedPoint {
    FixedPoint { seq: p.seq.iter().map(|x| p.ell - x).collect(), ell: p.ell }
}

/// Total order on the `n = 2` fixed points `0..=k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpOrder {
    k: u32,
}

pub fn fp_order(k: u32) -> FpOrder {
    FpOrder { k }
}

impl FpOrder {
    pub fn elements(&self) -> Vec<u32> {
        (0..=self.k).collect()
    }

    pub fn le(&self, i: u32, j: u32) -> bool {
        assert!(i <= self.k && j <= self.k, "index outside 0..={}", self.k);
        i <= j
    }

    pub fn lt(&self, i: u32, j: u32) -> bool {
        self.le(i, j) && i != j
    }
}

/// Weight of a patch coordinate, with the coordinate's name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedWeight {
    pub form: LinForm,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightTable {
    pub variables: Vec<TaggedWeight>,
    pub equations: Vec<LinForm>,
}

impl WeightTable {
    /// `|variables| - |equations|`.
    pub fn net_dimension(&self) -> i64 {
        self.variables.len() as i64 - self.equations.len() as i64
    }
}

impl Serialize for TaggedWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TaggedWeight", 2)?;
        st.serialize_field("form", &self.form.to_string())?;
        st.serialize_field("tag", &self.tag)?;
        st.end()
    }
}

impl Serialize for WeightTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Eq {
            form: String,
        }
        let eqs: Vec<Eq> = self.equations.iter().map(|f| Eq { form: f.to_string() }).collect();
        let mut st = s.serialize_struct("WeightTable", 2)?;
        st.serialize_field("variables", &self.variables)?;
        st.serialize_field("equations", &eqs)?;
        st.end()
    }
}

/// Which subscheme of the patch `A_j` is described.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `P(k,2,k)`.
    P,
    /// Closure of the attracting set `Z_{j'}`.
    Zbar,
    /// Stable subscheme `S_{j'}`.
    Stab,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p" => Ok(Variant::P),
            "zbar" => Ok(Variant::Zbar),
            "stab" | "s" => Ok(Variant::Stab),
            _ => Err(Error::Domain(format!("unknown patch variant `{s}`"))),
        }
    }
}

/// Variable and equation weights of the patch `A_j` intersected with the
/// chosen subscheme, at `n = 2`. `j_prime` is ignored for [`Variant::P`].
pub fn patch_weights(k: u32, j: u32, j_prime: u32, variant: Variant) -> Result<WeightTable> {
    let jp = if variant == Variant::P { k } else { j_prime };
    if j > k || (variant != Variant::P && (j > jp || jp > k)) {
        return Err(Error::Domain(format!(
            "patch indices need 0 <= j <= j' <= k, got k = {k}, j = {j}, j' = {j_prime}"
        )));
    }
    let (k, j, jp) = (k as i64, j as i64, jp as i64);
    let mut t = WeightTable::default();
    let mut var = |form: LinForm, tag: String| t.variables.push(TaggedWeight { form, tag });
    let lo = if variant == Variant::P { 0 } else { k - jp };
    for i in lo..k - j {
        var(LinForm::phi_z(k - j - i, 0), format!("x_{{(k-j,1)∪s∖({i},1)}}/x_s"));
    }
    for i in 0..j {
        var(LinForm::phi_z(k - j - i, 1), format!("x_{{(k-j,1)∪s∖({i},2)}}/x_s"));
    }
    for i in lo..k - j {
        var(LinForm::phi_z(j - i, -1), format!("x_{{(j,2)∪s∖({i},1)}}/x_s"));
    }
    for i in 0..j {
        var(LinForm::phi_z(j - i, 0), format!("x_{{(j,2)∪s∖({i},2)}}/x_s"));
    }
    let u_hi = match variant {
        Variant::P => 0,
        Variant::Zbar => k - jp,
        Variant::Stab => k - j,
    };
    for i in 0..u_hi {
        var(LinForm::new(1, i, 1), format!("u_{{{i},1,2}}"));
    }
    for i in 1..=jp {
        t.equations.push(LinForm::phi_z(i, 0));
    }
    if variant == Variant::Stab {
        for i in j..jp {
            t.equations.push(LinForm::new(0, i, 1));
        }
    }
    Ok(t)
}

/// Product of equation weights over product of variable weights.
pub fn complete_intersection_coeff(t: &WeightTable) -> Result<FactoredRat> {
    let mut c = FactoredRat::new(Rational::from_integer(1.into()));
    for v in &t.variables {
        if v.form.is_zero() {
            return Err(Error::DegeneratePatch { tag: v.tag.clone() });
        }
        c = c.with_factor(v.form, -1);
    }
    for e in &t.equations {
        c = c.with_factor(*e, 1);
    }
    Ok(c)
}

/// `|fixed_points| = weight_space_dim` for all `n <= max_n`, `ell <= max_ell`
/// and every `k`.
pub fn verify_counting(max_n: usize, max_ell: u32) -> CheckReport {
    let mut r = CheckReport::new("counting").param("max_n", max_n).param("max_ell", max_ell);
    for n in 1..=max_n {
        for ell in 1..=max_ell {
            for k in 0..=(n as u32 * ell + 1) {
                let a = fixed_points(k, n, ell).len() as u128;
                let b = weight_space_dim(k, n, ell);
                if a != b {
                    r.fail(json!({ "k": k, "n": n, "ell": ell, "fixed_points": a, "weight_space": b.to_string() }));
                }
            }
        }
    }
    r
}

/// `dim_m1(k, 2, ell) = 2 min(k, 2 ell - k)` and `k -> n ell - k` symmetry.
pub fn verify_dimensions(max_n: usize, max_ell: u32) -> CheckReport {
    let mut r = CheckReport::new("dimensions").param("max_n", max_n).param("max_ell", max_ell);
    for ell in 1..=max_ell {
        for k in 0..=2 * ell {
            let d = dim_m1(k, 2, ell);
            let expect = 2 * k.min(2 * ell - k) as i64;
            if d.as_ref().ok() != Some(&expect) {
                r.fail(json!({ "k": k, "ell": ell, "dim": format!("{d:?}"), "expected": expect }));
            }
        }
    }
    for n in 1..=max_n {
        for ell in 1..=max_ell {
            let top = n as u32 * ell;
            for k in 0..=top {
                if let (Ok(a), Ok(b)) = (dim_m1(k, n, ell), dim_m1(top - k, n, ell)) {
                    if a != b {
                        r.fail(json!({ "k": k, "n": n, "ell": ell, "dim": a, "dual": b }));
                    }
                }
                let pts = fixed_points(k, n, ell);
                let mut dual: Vec<FixedPoint> = pts.iter().map(duality_involution).collect();
                dual.sort_by(|a, b| b.cmp(a));
                if dual != fixed_points(top - k, n, ell) {
                    r.fail(json!({ "k": k, "n": n, "ell": ell, "involution": "not a bijection" }));
                }
            }
        }
    }
    r
}
