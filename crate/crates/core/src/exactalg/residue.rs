use super::{LinForm, MPoly, RatFun, Rational, Substitution, Var};
use crate::error::{Error, Result};

/// Residue of `f` at the simple pole `z = -n*phi`, i.e. `((z + n*phi) f)`
/// evaluated there. Zero if there is no pole; an error for higher order.
pub fn residue_at(f: &RatFun, n: i64) -> Result<RatFun> {
    if f.is_zero() {
        return Ok(RatFun::zero());
    }
    let form = LinForm::phi_z(n, 1);
    let lf = form.to_mpoly();
    let (den, order) = f.den().divide_out(&lf, u32::MAX);
    if order == 0 {
        return Ok(RatFun::zero());
    }
    let (num, cancelled) = f.num().divide_out(&lf, order);
    let order = order - cancelled;
    match order {
        0 => Ok(RatFun::zero()),
        1 => {
            let at =
                MPoly::var(Var::Phi).scale(&Rational::from_integer((-n).into()));
            let s = Substitution::new().bind(Var::Z, RatFun::from_poly(at));
            RatFun::new(num, den)?.specialize(&s)
        }
        _ => Err(Error::UnsupportedPoleOrder { pole: format!("z = {}*phi", -n), order }),
    }
}
