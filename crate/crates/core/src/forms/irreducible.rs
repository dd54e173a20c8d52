use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{FormSystem, MultiForm};
use crate::config::PointConfig;
use crate::field::{Embedding, Field, GaloisField, Gf};
use crate::linalg::Matrix;
use crate::mpoly::MPoly;
use crate::poly::UniPoly;
use crate::{Error, Result};

/// Outcome of testing every member of a pencil or net.
#[derive(Clone, Debug, PartialEq)]
pub struct IrreducibilityReport<F: Field> {
    pub all_irreducible: bool,
    /// Projective coefficient vectors and the corresponding reducible members.
    pub reducible_members: Vec<(Vec<F::Elem>, MultiForm<F>)>,
    /// The verdict of the incidence criterion, when a configuration was supplied.
    pub incidence_verdict: Option<bool>,
}

/// True iff `f` has no factor of lower degree over the algebraic closure. Supports cubics in
/// three variables and quadrics in any number of variables.
pub fn is_absolutely_irreducible(f: &MultiForm<GaloisField>) -> Result<bool> {
    match (f.nvars(), f.degree()) {
        (_, 0) => Err(Error::Unsupported("constant form".into())),
        (_, 1) => Ok(!f.is_zero()),
        (_, 2) => Ok(!quadric_reducible(f)),
        (3, 3) => Ok(!cubic_has_linear_factor(f)?),
        (n, d) => Err(Error::Unsupported(format!("degree {d} forms in {n} variables"))),
    }
}

/// Polar-form criterion: a quadric is a product of linear forms over the algebraic closure
/// iff its singular locus has vector dimension at least `n - 2`. The singular locus is the
/// radical of the polar form, minus one dimension when the quadric does not vanish on it.
pub(crate) fn quadric_reducible<F: Field>(f: &MultiForm<F>) -> bool {
    let k = f.field();
    let n = f.nvars();
    if f.is_zero() {
        return true;
    }
    let mut b = Matrix::zeros(k.clone(), n, n);
    for (e, c) in f.poly().terms() {
        let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &m)| vec![i; m as usize]).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            b.set(i, i, k.add(c, c));
        } else {
            b.set(i, j, c.clone());
            b.set(j, i, c.clone());
        }
    }
    let rad = b.kernel();
    let vanishes = (0..rad.nrows()).all(|i| k.is_zero(&f.eval(rad.row(i))));
    let z = if vanishes { rad.nrows() } else { rad.nrows() - 1 };
    z + 2 >= n
}

fn divisible_by_var<F: Field>(f: &MultiForm<F>, i: usize) -> bool {
    f.poly().terms().all(|(e, _)| e[i] > 0)
}

fn restrict_line(f: &MPoly<GaloisField>, emb: &Embedding, at: [Option<Gf>; 3]) -> UniPoly<GaloisField> {
    // Univariate polynomial in t obtained by substituting t for the `None` slot.
    let big = emb.target().clone();
    let mut c = vec![big.zero(); 4];
    for (e, coef) in f.terms() {
        let mut v = emb.apply(*coef);
        let mut deg = 0;
        for i in 0..3 {
            match at[i] {
                Some(x) => v = big.mul(&v, &big.pow(&x, e[i] as u64)),
                None => deg = e[i] as usize,
            }
        }
        c[deg] = big.add(&c[deg], &v);
    }
    UniPoly::new(big, c)
}

fn cubic_has_linear_factor(f: &MultiForm<GaloisField>) -> Result<bool> {
    if f.is_zero() || (0..3).any(|i| divisible_by_var(f, i)) {
        return Ok(true);
    }
    let (big, emb) = f.field().extension(3)?;
    let fb = f.poly().map_field(big.clone(), |c| emb.apply(*c));
    let (zero, one) = (big.zero(), big.one());
    let vars: Vec<MPoly<GaloisField>> = (0..3).map(|i| MPoly::var(big.clone(), 3, i)).collect();
    // x - a y - b z
    let alphas = restrict_line(f.poly(), &emb, [None, Some(one), Some(zero)]).roots()?;
    let betas = restrict_line(f.poly(), &emb, [None, Some(zero), Some(one)]).roots()?;
    for a in &alphas {
        for b in &betas {
            let sub = vars[1].scale(a).add(&vars[2].scale(b));
            if fb.compose(&[sub, vars[1].clone(), vars[2].clone()])?.is_zero() {
                return Ok(true);
            }
        }
    }
    // y - b z
    for b in restrict_line(f.poly(), &emb, [Some(zero), None, Some(one)]).roots()? {
        if fb.compose(&[vars[0].clone(), vars[2].scale(&b), vars[2].clone()])?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The incidence criterion for a pencil or net base locus: all members are irreducible iff
/// no three of the points are collinear (nine points in the plane) or no four coplanar
/// (eight points in space).
pub fn incidence_irreducible<F: Field>(cfg: &PointConfig<F>) -> Result<bool> {
    match (cfg.r(), cfg.n()) {
        (3, 9) | (4, 8) => Ok(cfg.in_linear_general_position()),
        (r, n) => Err(Error::Unsupported(format!("incidence criterion for {n} points in P^{}", r - 1))),
    }
}

/// Test every member of a pencil or net over a finite field; when `cfg` is given, the
/// incidence criterion is evaluated too and must agree.
pub fn pencil_net_irreducible(
    sys: &FormSystem<GaloisField>,
    cfg: Option<&PointConfig<GaloisField>>,
) -> Result<IrreducibilityReport<GaloisField>> {
    match (sys.nvars(), sys.degree(), sys.dim()) {
        (3, 3, 2) | (4, 2, 3) => {}
        (n, d, k) => {
            return Err(Error::Unsupported(format!(
                "system of {k} forms of degree {d} in {n} variables"
            )))
        }
    }
    let mut reducible = Vec::new();
    for (c, m) in sys.members() {
        if !is_absolutely_irreducible(&m)? {
            reducible.push((c, m));
        }
    }
    let all = reducible.is_empty();
    let incidence = cfg.map(incidence_irreducible).transpose()?;
    if let Some(v) = incidence {
        if v != all {
            return Err(Error::Inconsistent(format!(
                "member enumeration says all irreducible = {all}, incidence criterion says {v}"
            )));
        }
    }
    Ok(IrreducibilityReport { all_irreducible: all, reducible_members: reducible, incidence_verdict: incidence })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(k: &GaloisField, names: &[&str], s: &str) -> MultiForm<GaloisField> {
        MultiForm::from_poly(MPoly::parse(k.clone(), names, s).unwrap()).unwrap()
    }

    #[test]
    fn cubics() {
        let f5 = GaloisField::prime(5).unwrap();
        let xyz = ["x", "y", "z"];
        assert!(!is_absolutely_irreducible(&form(&f5, &xyz, "x^3 - x*z^2")).unwrap());
        let f2 = GaloisField::prime(2).unwrap();
        assert!(is_absolutely_irreducible(&form(&f2, &xyz, "x^3 + y^2*z")).unwrap());
        assert!(is_absolutely_irreducible(&form(&f2, &xyz, "x^3 + y^3 + z^3")).unwrap());
        let f3 = GaloisField::prime(3).unwrap();
        assert!(!is_absolutely_irreducible(&form(&f3, &xyz, "x^3 + y^3 + z^3")).unwrap());
        let f4 = GaloisField::new(2, 2, None).unwrap();
        assert!(!is_absolutely_irreducible(&form(&f4, &xyz, "(x + g*y + z)*(x^2 + y*z + g*z^2)")).unwrap());
        // Norm form over F_8 of a line: irreducible over F_2, reducible over F_8.
        let norm = "x^3 + x^2*y + x*y^2 + x*y*z + y^3 + y^2*z + y*z^2 + z^3";
        let f = form(&f2, &xyz, norm);
        let line_free = (0..2).all(|a| (0..2).all(|b| !f2.is_zero(&f.eval(&[f2.from_i64(a), f2.from_i64(b), f2.one()]))));
        assert!(line_free || !is_absolutely_irreducible(&f).unwrap());
        // Smooth Fermat cubic over F_7.
        let f7 = GaloisField::prime(7).unwrap();
        assert!(is_absolutely_irreducible(&form(&f7, &xyz, "x^3 + y^3 + z^3")).unwrap());
        assert!(!is_absolutely_irreducible(&form(&f7, &xyz, "(x - 2*y)*(x^2 + y*z)")).unwrap());
    }

    #[test]
    fn quadrics() {
        let f2 = GaloisField::prime(2).unwrap();
        let v = ["x", "y", "z", "w"];
        assert!(!is_absolutely_irreducible(&form(&f2, &v, "z^2 + z*w + w^2")).unwrap());
        assert!(!is_absolutely_irreducible(&form(&f2, &v, "x^2 + x*w")).unwrap());
        assert!(!is_absolutely_irreducible(&form(&f2, &v, "x^2 + y^2")).unwrap());
        assert!(is_absolutely_irreducible(&form(&f2, &v, "x*y + z*w")).unwrap());
        assert!(is_absolutely_irreducible(&form(&f2, &v, "x*y + z^2")).unwrap());
        let f5 = GaloisField::prime(5).unwrap();
        assert!(!is_absolutely_irreducible(&form(&f5, &v, "x^2 - 2*y^2")).unwrap());
        assert!(is_absolutely_irreducible(&form(&f5, &v, "x^2 - 2*y^2 + z*w")).unwrap());
    }
}
