use super::ops::eliminate;
use super::Ideal;
use crate::error::{Error, Result};
use crate::polyring::{Field, MonomialOrder, PolyMatrix, PolyRing, Polynomial, Ring};

/// `F` together with all `codim x codim` minors of its Jacobian matrix.
pub fn jacobian_ideal<F: Field>(forms: &[Polynomial<F>], codim: usize) -> Result<Ideal<F>> {
    let first = forms.first().ok_or_else(|| Error::InvalidInput("no forms given".into()))?;
    let ring = first.ring().clone();
    let forms: Vec<Polynomial<F>> = forms.iter().map(|f| f.in_ring(&ring)).collect::<Result<_>>()?;
    if let Some(f) = forms.iter().find(|f| !f.is_homogeneous()) {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    let rows: Vec<Vec<Polynomial<F>>> =
        forms.iter().map(|f| (0..ring.nvars()).map(|i| f.derivative(i)).collect()).collect();
    let jac = PolyMatrix::from_rows(&ring, rows)?;
    let mut gens = forms.clone();
    gens.extend(jac.minors(codim)?.into_iter().filter(|m| !m.is_zero()));
    Ideal::new(&ring, gens)
}

/// Ideal of the closure of the image of `x -> (f_0(x) : ... : f_N(x))`,
/// with `target` the ring of the image space. The graph ideal
/// `<y_i - f_i>` is formed in the joint ring and the source variables are
/// eliminated.
pub fn ideal_from_parametrization<F: Field>(forms: &[Polynomial<F>], target: &Ring<F>) -> Result<Ideal<F>> {
    let first = forms.first().ok_or_else(|| Error::InvalidInput("no forms given".into()))?;
    if forms.len() != target.nvars() {
        return Err(Error::LengthMismatch { expected: target.nvars(), got: forms.len() });
    }
    let source = first.ring().clone();
    let d = first.degree().unwrap_or(0);
    for f in forms {
        if !f.is_homogeneous() || f.degree().unwrap_or(0) != d {
            return Err(Error::InvalidInput("parametrizing forms must be homogeneous of one degree".into()));
        }
    }
    let mut names: Vec<String> = source.vars().to_vec();
    for v in target.vars() {
        if names.contains(v) {
            return Err(Error::InvalidRing(format!("variable `{v}` used in both source and target")));
        }
        names.push(v.clone());
    }
    let k = source.nvars();
    let joint = PolyRing::new(&names, source.field().clone(), MonomialOrder::DegRevLex)?;
    let embed: Vec<Option<usize>> = (0..k).map(Some).collect();
    let mut gens = Vec::with_capacity(forms.len());
    for (i, f) in forms.iter().enumerate() {
        let f = f.in_ring(&source)?.remap(&joint, &embed)?;
        gens.push(Polynomial::var(&joint, k + i).sub(&f));
    }
    let src_names: Vec<&str> = source.vars().iter().map(String::as_str).collect();
    let image = eliminate(&Ideal::new(&joint, gens)?, &src_names)?;
    let gens = image.generators().iter().map(|g| g.in_ring(target)).collect::<Result<Vec<_>>>()?;
    Ideal::new(target, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, Rationals};

    #[test]
    fn veronese_conic() {
        let src = PolyRing::new(&["s", "t"], Rationals, MonomialOrder::DegRevLex).unwrap();
        let tgt = PolyRing::new(&["x", "y", "z"], Rationals, MonomialOrder::DegRevLex).unwrap();
        let p = |s: &str| parse_polynomial(s, &src).unwrap();
        let i = ideal_from_parametrization(&[p("s^2"), p("s*t"), p("t^2")], &tgt).unwrap();
        assert!(i.same_ideal(&Ideal::parse(&tgt, &["x*z-y^2"]).unwrap()).unwrap());
    }

    #[test]
    fn unequal_degrees_rejected() {
        let src = PolyRing::new(&["s", "t"], Rationals, MonomialOrder::DegRevLex).unwrap();
        let tgt = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::DegRevLex).unwrap();
        let p = |s: &str| parse_polynomial(s, &src).unwrap();
        assert!(ideal_from_parametrization(&[p("s^2"), p("t")], &tgt).is_err());
    }

    #[test]
    fn smooth_quadric_jacobian() {
        let r = PolyRing::new(&["x", "y", "z", "w"], Rationals, MonomialOrder::DegRevLex).unwrap();
        let q = parse_polynomial("x^2+y^2+z^2+w^2", &r).unwrap();
        let j = jacobian_ideal(&[q], 1).unwrap();
        let s = super::super::saturate(&j, &Ideal::irrelevant(&r)).unwrap();
        assert!(s.ideal.is_unit().unwrap());
    }
}
