//! JSON formats for fields, configurations, forms and results.

use anyhow::{anyhow, bail, Context, Result};
use nagata_core::config::PointConfig;
use nagata_core::cremona::{Certificate, Verdict};
use nagata_core::field::{Field, GaloisField, Rationals};
use nagata_core::forms::{FormSystem, MultiForm};
use nagata_core::linalg::Matrix;
use nagata_core::mpoly::MPoly;
use nagata_core::picard::PicClass;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime {
        p: u64,
    },
    Ext {
        p: u64,
        deg: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u64>>,
    },
    Rational,
}

#[derive(Clone, Debug)]
pub enum AnyField {
    Finite(GaloisField),
    Rational(Rationals),
}

impl FieldSpec {
    pub fn build(&self) -> Result<AnyField> {
        Ok(match self {
            FieldSpec::Prime { p } => AnyField::Finite(GaloisField::prime(*p)?),
            FieldSpec::Ext { p, deg, modulus } => AnyField::Finite(GaloisField::new(*p, *deg, modulus.clone())?),
            FieldSpec::Rational => AnyField::Rational(Rationals),
        })
    }

    pub fn of(f: &GaloisField) -> FieldSpec {
        if f.degree() == 1 {
            FieldSpec::Prime { p: f.p() }
        } else {
            FieldSpec::Ext { p: f.p(), deg: f.degree(), modulus: Some(f.modulus().to_vec()) }
        }
    }
}

/// A coordinate: an integer, a string such as `"1+g"` or `"-3/4"`, or extension
/// coefficients low to high.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
    Coeffs(Vec<i64>),
}

impl Entry {
    pub fn parse<F: Field>(&self, f: &F) -> Result<F::Elem> {
        Ok(match self {
            Entry::Int(n) => f.from_i64(*n),
            Entry::Text(s) => f.parse_elem(s)?,
            Entry::Coeffs(c) => {
                let body: Vec<String> = c.iter().map(i64::to_string).collect();
                f.parse_elem(&format!("[{}]", body.join(",")))?
            }
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigFile {
    pub field: FieldSpec,
    pub r: usize,
    pub points: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug)]
pub enum AnyConfig {
    Finite(PointConfig<GaloisField>),
    Rational(PointConfig<Rationals>),
}

/// Run `$body` with `$c` bound to the configuration, whatever its field.
#[macro_export]
macro_rules! with_config {
    ($cfg:expr, $c:ident => $body:expr) => {
        match $cfg {
            $crate::wire::AnyConfig::Finite($c) => $body,
            $crate::wire::AnyConfig::Rational($c) => $body,
        }
    };
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("invalid configuration JSON")
    }

    /// Coordinates as given (not normalized).
    pub fn raw_points<F: Field>(&self, f: &F) -> Result<Vec<Vec<F::Elem>>> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.len() != self.r {
                    bail!("point {} has {} coordinates, expected {}", i + 1, p.len(), self.r);
                }
                p.iter().map(|e| e.parse(f)).collect()
            })
            .collect()
    }

    /// The `r x n` matrix with the given representatives as columns.
    pub fn raw_matrix<F: Field>(&self, f: &F) -> Result<Matrix<F>> {
        Ok(Matrix::from_cols(f.clone(), self.raw_points(f)?)?)
    }

    pub fn config_over<F: Field>(&self, f: &F) -> Result<PointConfig<F>> {
        Ok(PointConfig::new(f.clone(), self.r, self.raw_points(f)?)?)
    }

    pub fn build(&self) -> Result<AnyConfig> {
        Ok(match self.field.build()? {
            AnyField::Finite(f) => AnyConfig::Finite(self.config_over(&f)?),
            AnyField::Rational(q) => AnyConfig::Rational(self.config_over(&q)?),
        })
    }

    pub fn finite(&self) -> Result<PointConfig<GaloisField>> {
        match self.build()? {
            AnyConfig::Finite(c) => Ok(c),
            AnyConfig::Rational(_) => bail!("this operation needs a finite field"),
        }
    }

    pub fn with_field(&self, field: FieldSpec) -> ConfigFile {
        ConfigFile { field, ..self.clone() }
    }

    /// The first `k` points.
    pub fn truncated(&self, k: usize) -> Result<ConfigFile> {
        if k > self.points.len() {
            bail!("only {} points available", self.points.len());
        }
        Ok(ConfigFile { points: self.points[..k].to_vec(), ..self.clone() })
    }

    pub fn citation(&self) -> Option<String> {
        match (&self.name, &self.source) {
            (Some(n), Some(s)) => Some(format!("{n}: {s}")),
            (Some(n), None) => Some(n.clone()),
            (None, Some(s)) => Some(s.clone()),
            (None, None) => None,
        }
    }
}

/// A form: an expression in `x, y, z, w` (or `x1..xn`), or `[exponent, coefficient]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormEntry {
    Expr(String),
    Terms(Vec<(Vec<u32>, String)>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub nvars: usize,
    pub forms: Vec<FormEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub primes: Vec<u64>,
}

pub fn var_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

pub fn parse_poly<F: Field>(f: &F, names: &[String], text: &str) -> Result<MPoly<F>> {
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(MPoly::parse(f.clone(), &names, text)?)
}

impl SystemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("invalid form system JSON")
    }

    /// The field of the file, or `F_p` when `p` is given.
    pub fn field(&self, p: Option<u64>) -> Result<GaloisField> {
        match (p, &self.field) {
            (Some(p), _) => Ok(GaloisField::prime(p)?),
            (None, Some(spec)) => match spec.build()? {
                AnyField::Finite(f) => Ok(f),
                AnyField::Rational(_) => bail!("this operation needs a finite field"),
            },
            (None, None) => bail!("no field given: add a \"field\" entry or pass --p"),
        }
    }

    pub fn build(&self, f: &GaloisField) -> Result<FormSystem<GaloisField>> {
        let names = var_names(self.nvars);
        let polys = self
            .forms
            .iter()
            .map(|form| match form {
                FormEntry::Expr(s) => parse_poly(f, &names, s),
                FormEntry::Terms(terms) => {
                    let mut p = MPoly::zero(f.clone(), self.nvars);
                    for (e, c) in terms {
                        if e.len() != self.nvars {
                            bail!("exponent {e:?} has the wrong length");
                        }
                        p.add_term(e.clone(), f.parse_elem(c)?);
                    }
                    Ok(p)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FormSystem::from_polys(polys)?)
    }
}

pub fn elem<F: Field>(f: &F, x: &F::Elem) -> String {
    f.format_elem(x)
}

pub fn vector<F: Field>(f: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| f.format_elem(x)).collect()
}

pub fn matrix<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    m.rows_vec().iter().map(|r| vector(m.field(), r)).collect()
}

pub fn poly_text<F: Field>(p: &MPoly<F>) -> String {
    let names = var_names(p.nvars());
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    p.format(&names)
}

pub fn form_json<F: Field>(form: &MultiForm<F>) -> Value {
    let f = form.field();
    let terms: Vec<Value> = form.poly().terms().map(|(e, c)| json!([e, f.format_elem(c)])).collect();
    json!({ "text": poly_text(form.poly()), "terms": terms })
}

pub fn config_json<F: Field>(cfg: &PointConfig<F>) -> Value {
    let f = cfg.field();
    json!({
        "r": cfg.r(),
        "points": cfg.points().iter().map(|p| vector(f, p)).collect::<Vec<_>>(),
    })
}

pub fn class_json(c: &PicClass) -> Value {
    json!({ "d": c.d, "m": c.m })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassDto {
    pub d: i64,
    pub m: Vec<i64>,
}

impl From<ClassDto> for PicClass {
    fn from(c: ClassDto) -> Self {
        PicClass::new(c.d, c.m)
    }
}

fn one_based<const K: usize>(v: &[[usize; K]]) -> Vec<Vec<usize>> {
    v.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect()
}

pub fn certificate_json<F: Field>(c: &Certificate<F>) -> Value {
    json!({
        "route": c.route.as_str(),
        "statement": c.route.statement(),
        "reason": c.reason,
        "collinear_triples": one_based(&c.incidences.collinear_triples),
        "coplanar_quadruples": one_based(&c.incidences.coplanar_quadruples),
        "triple_partitions": c.incidences.triple_partitions,
        "reducible_members": c.reducible_members.iter().map(form_json).collect::<Vec<_>>(),
        "cremona_general_position": c.cremona_general_position,
        "relies_on_strengthening": c.relies_on_strengthening,
    })
}

pub fn verdict_json<F: Field>(v: &Verdict<F>, citations: &[String]) -> Value {
    json!({
        "status": v.status.as_str(),
        "rho": v.rho,
        "a": v.a,
        "b": v.b,
        "certificate": certificate_json(&v.certificate),
        "citations": citations,
    })
}

/// Parse `"1,2,3"` into numbers.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| anyhow!("cannot parse `{t}` in `{s}`")))
        .collect()
}
