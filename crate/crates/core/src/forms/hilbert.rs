use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{monomial_index, FormSystem};
use crate::field::Field;
use crate::linalg::Echelon;
use crate::mpoly::{monomials, MPoly};
use crate::{Error, Result};

/// What the Hilbert function of the base ideal certifies about the base scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseScheme {
    /// Zero-dimensional of the Bezout degree and reduced.
    SmoothZeroDim { degree: usize },
    /// Zero-dimensional of the Bezout degree; the Jacobian drops rank on a subscheme of
    /// length `singular_length`.
    NonReduced { degree: usize, singular_length: usize },
    /// The Hilbert function has not settled at the Bezout number, so the forms share a
    /// component.
    PositiveDimensional { hilbert: Vec<usize> },
}

impl BaseScheme {
    pub fn is_smooth(&self) -> bool {
        matches!(self, BaseScheme::SmoothZeroDim { .. })
    }

    pub fn reason(&self) -> String {
        match self {
            BaseScheme::SmoothZeroDim { degree } => format!("reduced, {degree} geometric points"),
            BaseScheme::NonReduced { singular_length, .. } => {
                format!("non-reduced: Jacobian drops rank on a subscheme of length {singular_length}")
            }
            BaseScheme::PositiveDimensional { hilbert } => {
                format!("positive-dimensional base locus (Hilbert function {hilbert:?})")
            }
        }
    }
}

/// The degree-`d` part of the ideal generated by homogeneous `gens`, in echelon form.
pub(crate) fn ideal_part<F: Field>(field: &F, nvars: usize, gens: &[MPoly<F>], d: u32) -> Echelon<F> {
    let (mons, idx) = monomial_index(nvars, d);
    let mut ech = Echelon::new(field.clone(), mons.len());
    for g in gens {
        let Some(gd) = g.homogeneous_degree() else { continue };
        if gd > d {
            continue;
        }
        for m in monomials(nvars, d - gd) {
            let mut row = alloc::vec![field.zero(); mons.len()];
            for (e, c) in g.terms() {
                let sum: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                row[idx[&sum]] = c.clone();
            }
            ech.insert(row);
            if ech.rank() == mons.len() {
                return ech;
            }
        }
    }
    ech
}

/// `dim (S/I)_d` for the ideal generated by homogeneous `gens` in `nvars` variables.
pub fn hilbert_function<F: Field>(field: &F, nvars: usize, gens: &[MPoly<F>], d: u32) -> usize {
    let ech = ideal_part(field, nvars, gens, d);
    ech.width() - ech.rank()
}

fn det<F: Field>(m: &[Vec<MPoly<F>>]) -> MPoly<F> {
    match m.len() {
        1 => m[0][0].clone(),
        n => {
            let mut acc = MPoly::zero(m[0][0].field().clone(), m[0][0].nvars());
            for j in 0..n {
                let minor: Vec<Vec<MPoly<F>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = m[0][j].mul(&det(&minor));
                acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

/// Decide whether a system of `r - 1` forms in `r` variables cuts out a reduced
/// zero-dimensional scheme of the Bezout degree, using only Hilbert functions (valid over
/// any field, with no point enumeration).
///
/// With `e` the Bezout number, `HF(e) = HF(e + 1) = e` certifies by Gotzmann persistence a
/// zero-dimensional scheme of degree `e`; adjoining the maximal minors of the Jacobian, the
/// scheme is reduced iff the enlarged ideal contains every monomial of some degree.
pub fn is_smooth_zero_dim<F: Field>(sys: &FormSystem<F>) -> Result<BaseScheme> {
    let r = sys.nvars();
    let k = sys.dim();
    let delta = sys.degree();
    if r < 2 || k + 1 != r || delta == 0 {
        return Err(Error::Unsupported(format!(
            "{k} forms of degree {delta} in {r} variables (need r - 1 forms in r variables)"
        )));
    }
    let field = sys.field();
    let e = (delta as usize).pow(k as u32);
    let gens: Vec<MPoly<F>> = sys.basis().iter().map(|f| f.poly().clone()).collect();
    let d0 = e.max(delta as usize) as u32;
    let hf: Vec<usize> = (d0..=d0 + 1).map(|d| hilbert_function(field, r, &gens, d)).collect();
    if hf != [e, e] {
        return Ok(BaseScheme::PositiveDimensional { hilbert: hf });
    }
    let jac: Vec<Vec<MPoly<F>>> =
        gens.iter().map(|g| (0..r).map(|j| g.partial(j)).collect()).collect();
    let mut jgens = gens.clone();
    for skip in 0..r {
        let sub: Vec<Vec<MPoly<F>>> = jac
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != skip).map(|(_, x)| x.clone()).collect())
            .collect();
        let m = det(&sub);
        if !m.is_zero() {
            jgens.push(m);
        }
    }
    let start = jgens.iter().filter_map(|g| g.homogeneous_degree()).max().unwrap_or(delta);
    let mut prev = None;
    for d in start..=start + 3 * e as u32 + 2 {
        let h = hilbert_function(field, r, &jgens, d);
        if h == 0 {
            return Ok(BaseScheme::SmoothZeroDim { degree: e });
        }
        if prev == Some(h) && d as usize > h {
            return Ok(BaseScheme::NonReduced { degree: e, singular_length: h });
        }
        prev = Some(h);
    }
    Err(Error::Inconsistent("Jacobian ideal did not stabilize".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};

    fn sys<F: Field>(k: F, names: &[&str], polys: &[&str]) -> FormSystem<F> {
        FormSystem::from_polys(polys.iter().map(|s| MPoly::parse(k.clone(), names, s).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn grid_pencil_is_smooth() {
        let k = GaloisField::prime(5).unwrap();
        let s = sys(k, &["x", "y", "z"], &["x^3 - x*z^2", "y^3 - y*z^2"]);
        assert_eq!(is_smooth_zero_dim(&s).unwrap(), BaseScheme::SmoothZeroDim { degree: 9 });
    }

    #[test]
    fn common_factor_is_positive_dimensional() {
        let s = sys(Rationals, &["x", "y", "z"], &["x^3", "x^2*y"]);
        assert!(matches!(is_smooth_zero_dim(&s).unwrap(), BaseScheme::PositiveDimensional { .. }));
    }

    #[test]
    fn tangency_is_non_reduced() {
        // y z^2 = x^3 and y^3 = x^2 z meet with multiplicity at [0:0:1] and [0:1:0].
        let s = sys(Rationals, &["x", "y", "z"], &["y*z^2 - x^3", "y^3 - x^2*z"]);
        assert!(matches!(is_smooth_zero_dim(&s).unwrap(), BaseScheme::NonReduced { degree: 9, .. }));
    }

    #[test]
    fn cube_net_is_smooth() {
        let k = GaloisField::prime(5).unwrap();
        let s = sys(k, &["x", "y", "z", "w"], &["x^2 - x*w", "y^2 - y*w", "z^2 - z*w"]);
        assert_eq!(is_smooth_zero_dim(&s).unwrap(), BaseScheme::SmoothZeroDim { degree: 8 });
    }
}
