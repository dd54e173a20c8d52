//! Standard Cremona transformations of point configurations, Cremona walks, and verdicts on
//! finite generation for pencils of cubics and nets of quadrics.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{config_equivalent, incidence_fingerprint, IncidenceReport, PointConfig};
use crate::field::Field;
use crate::forms::{forms_through_points, is_smooth_zero_dim, FormSystem, MultiForm};
use crate::linalg::Matrix;
use crate::mpoly::MPoly;
use crate::picard::{mw_rank_cubic, mw_rank_quadric, weyl_is_infinite};
use crate::{Error, Result};

/// One standard Cremona transformation: `transform` moves the points `subset` to the
/// coordinate points, after which every coordinate is inverted.
#[derive(Clone, Debug, PartialEq)]
pub struct CremonaStep<F: Field> {
    pub subset: Vec<usize>,
    pub transform: Matrix<F>,
}

/// Apply the standard Cremona transformation centred at the points `subset` (0-based).
/// The chosen points become the coordinate points; every other point `p` goes to the
/// coordinatewise inverse of `T p`, `T` the inverse of the matrix of chosen points.
pub fn standard_cremona<F: Field>(cfg: &PointConfig<F>, subset: &[usize]) -> Result<(PointConfig<F>, CremonaStep<F>)> {
    let r = cfg.r();
    let k = cfg.field();
    if subset.len() != r || subset.iter().any(|&i| i >= cfg.n()) {
        return Err(Error::InvalidInput(format!("need {r} point indices below {}, got {subset:?}", cfg.n())));
    }
    if subset.iter().sorted().dedup().count() != r {
        return Err(Error::InvalidInput(format!("repeated index in {subset:?}")));
    }
    let c = Matrix::from_cols(k.clone(), subset.iter().map(|&i| cfg.point(i).to_vec()).collect())?;
    let t = c
        .inverse()
        .map_err(|_| Error::Degenerate(format!("chosen points {:?} are dependent", one_based(subset))))?;
    let mut pts = Vec::with_capacity(cfg.n());
    for i in 0..cfg.n() {
        if let Some(j) = subset.iter().position(|&s| s == i) {
            let mut e = vec![k.zero(); r];
            e[j] = k.one();
            pts.push(e);
            continue;
        }
        let q = t.mul_vec(cfg.point(i))?;
        if let Some(j) = q.iter().position(|x| k.is_zero(x)) {
            let others: Vec<usize> = subset.iter().enumerate().filter(|&(l, _)| l != j).map(|(_, &s)| s + 1).collect();
            return Err(Error::Degenerate(format!(
                "point {} lies on the hyperplane spanned by points {others:?}",
                i + 1
            )));
        }
        pts.push(q.iter().map(|x| k.inv(x)).collect::<Result<Vec<_>>>()?);
    }
    let out = PointConfig::new(k.clone(), r, pts)?;
    Ok((out, CremonaStep { subset: subset.to_vec(), transform: t }))
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

/// What a Cremona walk checks after each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkCheck {
    /// Linear general position of every configuration reached (Cremona general position).
    LinearGeneralPosition,
    /// Only legal steps are taken; every configuration reached must still be a smooth base
    /// locus of a pencil of cubics or net of quadrics, with the same Mordell-Weil rank.
    PencilInvariant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkStrategy {
    Exhaustive,
    Random { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkFailure {
    /// Subsets applied before the failure.
    pub path: Vec<Vec<usize>>,
    pub reason: String,
    /// A dependent subset, when linear general position failed.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkReport {
    pub survived: bool,
    /// The steps of a random walk; for an exhaustive walk, empty.
    pub log: Vec<Vec<usize>>,
    /// Distinct configurations (up to projective equivalence and relabelling) per depth.
    pub explored_per_depth: Vec<usize>,
    /// Steps not taken because the subset was dependent or another point hit a contracted
    /// hyperplane.
    pub skipped_illegal: usize,
    /// The Mordell-Weil rank held fixed along the walk, in [`WalkCheck::PencilInvariant`].
    pub rho: Option<u64>,
    pub failure: Option<WalkFailure>,
}

/// `(a, b, rho)` when the configuration is a smooth base locus of a pencil of plane cubics
/// (`b = 0` for nets of quadrics); otherwise the reason it is not.
fn base_locus_rho<F: Field>(cfg: &PointConfig<F>) -> Result<core::result::Result<(u64, u64, u64), String>> {
    let hyp = match check_base_locus(cfg)? {
        Ok(h) => h,
        Err(reason) => return Ok(Err(reason)),
    };
    let inc = hyp.incidences;
    let a = inc.a() as u64;
    match cfg.r() {
        3 => {
            let b = inc.triple_partitions as u64;
            Ok(Ok((a, b, mw_rank_cubic(a, b)?)))
        }
        _ => Ok(Ok((a, 0, mw_rank_quadric(a)?))),
    }
}

struct Hypotheses<F: Field> {
    system: FormSystem<F>,
    incidences: IncidenceReport,
}

/// Cubic pencil (9 points in `P^2`) or quadric net (8 points in `P^3`) through the points,
/// with reduced zero-dimensional base scheme.
fn check_base_locus<F: Field>(cfg: &PointConfig<F>) -> Result<core::result::Result<Hypotheses<F>, String>> {
    let (degree, kind) = match (cfg.r(), cfg.n()) {
        (3, 9) => (3, "cubics"),
        (4, 8) => (2, "quadrics"),
        (r, n) => return Err(Error::InvalidInput(format!("need 9 points in P^2 or 8 in P^3, got {n} in P^{}", r - 1))),
    };
    let sys = forms_through_points(cfg.field(), cfg.r(), degree, cfg.points(), &vec![1; cfg.n()])?;
    if sys.dim() != cfg.r() - 1 {
        return Ok(Err(format!(
            "the {kind} through the points span dimension {}, expected {}",
            sys.dim(),
            cfg.r() - 1
        )));
    }
    let scheme = is_smooth_zero_dim(&sys)?;
    if !scheme.is_smooth() {
        return Ok(Err(format!("base scheme of the {kind} is not reduced of dimension 0: {}", scheme.reason())));
    }
    Ok(Ok(Hypotheses { system: sys, incidences: cfg.incidences()? }))
}

fn all_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(r).collect()
}

/// Repeatedly apply standard Cremona transformations, checking `check` after every step.
/// Surviving is evidence, not proof, of stability under all finite sequences.
pub fn cremona_walk<F: Field>(
    cfg: &PointConfig<F>,
    depth: usize,
    strategy: WalkStrategy,
    check: WalkCheck,
) -> Result<WalkReport> {
    let mut report = WalkReport {
        survived: false,
        log: Vec::new(),
        explored_per_depth: vec![1],
        skipped_illegal: 0,
        rho: None,
        failure: None,
    };
    let judge = |c: &PointConfig<F>, rho: Option<u64>| -> Result<core::result::Result<Option<u64>, (String, Option<Vec<usize>>)>> {
        match check {
            WalkCheck::LinearGeneralPosition => Ok(match c.lgp_violation() {
                Some(s) => Err((format!("points {s:?} are linearly dependent"), Some(s))),
                None => Ok(None),
            }),
            WalkCheck::PencilInvariant => Ok(match base_locus_rho(c)? {
                Err(reason) => Err((reason, None)),
                Ok((_, _, r)) if rho.is_some_and(|r0| r0 != r) => {
                    Err((format!("rho changed from {} to {r}", rho.unwrap_or_default()), None))
                }
                Ok((_, _, r)) => Ok(Some(r)),
            }),
        }
    };
    match judge(cfg, None)? {
        Err((reason, witness)) => {
            report.failure = Some(WalkFailure { path: Vec::new(), reason, witness });
            return Ok(report);
        }
        Ok(rho) => report.rho = rho,
    }
    let subsets = all_subsets(cfg.n(), cfg.r());
    match strategy {
        WalkStrategy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut cur = cfg.clone();
            for _ in 0..depth {
                let mut legal = Vec::new();
                for s in &subsets {
                    match standard_cremona(&cur, s) {
                        Ok((next, _)) => legal.push((s.clone(), next)),
                        Err(Error::Degenerate(_)) => report.skipped_illegal += 1,
                        Err(e) => return Err(e),
                    }
                }
                if legal.is_empty() {
                    report.failure = Some(WalkFailure {
                        path: report.log.clone(),
                        reason: "no legal Cremona step".into(),
                        witness: None,
                    });
                    return Ok(report);
                }
                let (s, next) = legal.swap_remove(rng.gen_range(0..legal.len()));
                report.log.push(s);
                if let Err((reason, witness)) = judge(&next, report.rho)? {
                    report.failure = Some(WalkFailure { path: report.log.clone(), reason, witness });
                    return Ok(report);
                }
                report.explored_per_depth.push(1);
                cur = next;
            }
        }
        WalkStrategy::Exhaustive => {
            let mut seen: BTreeMap<(u64, (usize, Vec<usize>)), Vec<PointConfig<F>>> = BTreeMap::new();
            let size = cfg.field().order().unwrap_or(0);
            seen.entry((size, incidence_fingerprint(cfg))).or_default().push(cfg.clone());
            let mut level: Vec<(PointConfig<F>, Vec<Vec<usize>>)> = vec![(cfg.clone(), Vec::new())];
            for _ in 0..depth {
                let mut next_level = Vec::new();
                for (cur, path) in &level {
                    for s in &subsets {
                        let next = match standard_cremona(cur, s) {
                            Ok((next, _)) => next,
                            Err(Error::Degenerate(_)) => {
                                report.skipped_illegal += 1;
                                continue;
                            }
                            Err(e) => return Err(e),
                        };
                        let mut p = path.clone();
                        p.push(s.clone());
                        if let Err((reason, witness)) = judge(&next, report.rho)? {
                            report.failure = Some(WalkFailure { path: p, reason, witness });
                            return Ok(report);
                        }
                        let bucket = seen.entry((size, incidence_fingerprint(&next))).or_default();
                        let mut known = false;
                        for c in bucket.iter() {
                            if config_equivalent(c, &next, true)?.is_some() {
                                known = true;
                                break;
                            }
                        }
                        if !known {
                            bucket.push(next.clone());
                            next_level.push((next, p));
                        }
                    }
                }
                report.explored_per_depth.push(next_level.len());
                level = next_level;
                if level.is_empty() {
                    break;
                }
            }
        }
    }
    report.survived = true;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    InfiniteGeneration,
    FiniteGeneration,
    Undetermined,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::InfiniteGeneration => "infinite_generation",
            Status::FiniteGeneration => "finite_generation",
            Status::Undetermined => "undetermined",
        }
    }
}

/// The argument behind a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// `rho = 8 - a + b` for the pencil of cubics through nine points.
    CubicPencilRank,
    /// `rho = 7 - a/2` for the net of quadrics through eight points.
    QuadricNetRank,
    /// Nine points in `P^5` associated to a pencil base locus in Cremona general position.
    AssociatedConfiguration,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::CubicPencilRank => "cubic_pencil_rank",
            Route::QuadricNetRank => "quadric_net_rank",
            Route::AssociatedConfiguration => "associated_configuration",
        }
    }

    pub fn statement(&self) -> &'static str {
        match self {
            Route::CubicPencilRank => {
                "for nine points cut out by two cubics, the Mordell-Weil rank of the associated elliptic \
                 fibration is 8 - a + b; the invariant ring is finitely generated iff it is 0"
            }
            Route::QuadricNetRank => {
                "for eight points cut out by three quadrics, the Mordell-Weil rank is 7 - a/2; a positive rank \
                 gives infinitely many (-1)-divisors"
            }
            Route::AssociatedConfiguration => {
                "nine points of P^2 in Cremona general position have an associated configuration of nine points \
                 in P^5, also in Cremona general position, whose Weyl group T_{2,6,3} is infinite"
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<F: Field> {
    pub route: Route,
    pub reason: String,
    pub incidences: IncidenceReport,
    /// Members of the system that split into lower-degree forms, read off the incidences.
    pub reducible_members: Vec<MultiForm<F>>,
    /// No collinear triple: the points are in Cremona general position.
    pub cremona_general_position: bool,
    /// The finite-generation conclusion for nets relies on the converse for `rho = 0`
    /// that is only known from the strengthened finiteness theorem.
    pub relies_on_strengthening: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict<F: Field> {
    pub status: Status,
    pub rho: Option<u64>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub certificate: Certificate<F>,
}

impl<F: Field> Verdict<F> {
    fn undetermined(route: Route, reason: String) -> Self {
        Verdict {
            status: Status::Undetermined,
            rho: None,
            a: None,
            b: None,
            certificate: Certificate {
                route,
                reason,
                incidences: IncidenceReport::default(),
                reducible_members: Vec::new(),
                cremona_general_position: false,
                relies_on_strengthening: false,
            },
        }
    }
}

/// The linear form vanishing on the given `r - 1` independent points.
fn hyperplane<F: Field>(cfg: &PointConfig<F>, idx: &[usize]) -> Result<MPoly<F>> {
    let m = Matrix::from_rows(cfg.field().clone(), idx.iter().map(|&i| cfg.point(i).to_vec()).collect())?;
    let ker = m.kernel();
    if ker.nrows() != 1 {
        return Err(Error::Degenerate(format!("points {idx:?} do not span a hyperplane")));
    }
    Ok(MPoly::linear(cfg.field().clone(), ker.row(0)))
}

fn complement(n: usize, s: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !s.contains(i)).collect()
}

/// Nine points of `P^2`: verdict from the pencil of cubics through them.
pub fn analyze_cubic_config<F: Field>(cfg: &PointConfig<F>) -> Result<Verdict<F>> {
    let route = Route::CubicPencilRank;
    if (cfg.r(), cfg.n()) != (3, 9) {
        return Ok(Verdict::undetermined(route, format!("need 9 points in P^2, got {} in P^{}", cfg.n(), cfg.r() - 1)));
    }
    let hyp = match check_base_locus(cfg)? {
        Ok(h) => h,
        Err(reason) => return Ok(Verdict::undetermined(route, reason)),
    };
    let inc = hyp.incidences;
    let (a, b) = (inc.collinear_triples.len() as u64, inc.triple_partitions as u64);
    let rho = mw_rank_cubic(a, b)?;
    let mut reducible = Vec::new();
    for t in &inc.collinear_triples {
        let line = hyperplane(cfg, &t[..2])?;
        let rest = complement(9, t);
        let conics = forms_through_points(cfg.field(), 3, 2, &rest.iter().map(|&i| cfg.point(i).to_vec()).collect::<Vec<_>>(), &[1; 6])?;
        if conics.dim() != 1 {
            return Err(Error::Inconsistent(format!("six residual points of triple {t:?} lie on {} conics", conics.dim())));
        }
        let member = MultiForm::new(line.mul(conics.basis()[0].poly()), 3)?;
        if !member_of(&hyp.system, &member) {
            return Err(Error::Inconsistent(format!("line-conic member for {t:?} is not in the pencil")));
        }
        if !reducible.contains(&member) {
            reducible.push(member);
        }
    }
    let status = if rho > 0 { Status::InfiniteGeneration } else { Status::FiniteGeneration };
    let reason = format!("rho = 8 - {a} + {b} = {rho}");
    Ok(Verdict {
        status,
        rho: Some(rho),
        a: Some(a),
        b: Some(b),
        certificate: Certificate {
            route,
            reason,
            cremona_general_position: a == 0,
            incidences: inc,
            reducible_members: reducible,
            relies_on_strengthening: false,
        },
    })
}

fn member_of<F: Field>(sys: &FormSystem<F>, f: &MultiForm<F>) -> bool {
    let mut rows = sys.coeff_matrix().rows_vec();
    let rank = sys.dim();
    rows.push(f.coeff_vector());
    Matrix::from_rows(sys.field().clone(), rows).map(|m| m.rank() == rank).unwrap_or(false)
}

/// Eight points of `P^3`: verdict from the net of quadrics through them.
pub fn analyze_quadric_config<F: Field>(cfg: &PointConfig<F>) -> Result<Verdict<F>> {
    let route = Route::QuadricNetRank;
    if (cfg.r(), cfg.n()) != (4, 8) {
        return Ok(Verdict::undetermined(route, format!("need 8 points in P^3, got {} in P^{}", cfg.n(), cfg.r() - 1)));
    }
    let hyp = match check_base_locus(cfg)? {
        Ok(h) => h,
        Err(reason) => return Ok(Verdict::undetermined(route, reason)),
    };
    let inc = hyp.incidences;
    let a = inc.coplanar_quadruples.len() as u64;
    let rho = mw_rank_quadric(a)?;
    let mut reducible = Vec::new();
    for q in &inc.coplanar_quadruples {
        let rest = complement(8, q);
        if q[0] != 0 {
            continue;
        }
        if !cfg.subset_dependent(&rest) {
            return Err(Error::Inconsistent(format!("complement of coplanar {q:?} is not coplanar")));
        }
        let p1 = hyperplane_of_quadruple(cfg, q)?;
        let p2 = hyperplane_of_quadruple(cfg, &rest)?;
        let member = MultiForm::new(p1.mul(&p2), 2)?;
        if !member_of(&hyp.system, &member) {
            return Err(Error::Inconsistent(format!("plane pair for {q:?} is not in the net")));
        }
        reducible.push(member);
    }
    let (status, strengthening) = if rho > 0 { (Status::InfiniteGeneration, false) } else { (Status::FiniteGeneration, true) };
    Ok(Verdict {
        status,
        rho: Some(rho),
        a: Some(a),
        b: None,
        certificate: Certificate {
            route,
            reason: format!("rho = 7 - {a}/2 = {rho}"),
            cremona_general_position: a == 0,
            incidences: inc,
            reducible_members: reducible,
            relies_on_strengthening: strengthening,
        },
    })
}

fn hyperplane_of_quadruple<F: Field>(cfg: &PointConfig<F>, q: &[usize]) -> Result<MPoly<F>> {
    let m = Matrix::from_rows(cfg.field().clone(), q.iter().map(|&i| cfg.point(i).to_vec()).collect())?;
    let ker = m.kernel();
    if ker.nrows() != 1 {
        return Err(Error::Degenerate(format!("points {q:?} do not span a plane")));
    }
    Ok(MPoly::linear(cfg.field().clone(), ker.row(0)))
}

/// Infinite generation for the `(G_a)^3` action on `A^18` from the associated nine points
/// in `P^5`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociatedCertificate<F: Field> {
    pub status: Status,
    pub route: Route,
    /// The associated configuration, indexed like the input.
    pub associated: PointConfig<F>,
    pub group_dimension: usize,
    pub representation_dimension: usize,
    pub weyl_infinite: bool,
    pub index_note: String,
}

/// Nine points of `P^2` forming a smooth pencil base locus with no collinear triple: they
/// are in Cremona general position, hence so is the associated configuration in `P^5`.
pub fn certify_dim5<F: Field>(cfg: &PointConfig<F>) -> Result<AssociatedCertificate<F>> {
    if (cfg.r(), cfg.n()) != (3, 9) {
        return Err(Error::InvalidInput(format!("need 9 points in P^2, got {} in P^{}", cfg.n(), cfg.r() - 1)));
    }
    let hyp = check_base_locus(cfg)?.map_err(Error::Degenerate)?;
    if let Some(t) = hyp.incidences.collinear_triples.first() {
        return Err(Error::Degenerate(format!(
            "points {t:?} are collinear ({} collinear triples)",
            hyp.incidences.collinear_triples.len()
        )));
    }
    let associated = cfg.dualize()?;
    if !associated.in_linear_general_position() {
        return Err(Error::Inconsistent("associated configuration is not in linear general position".into()));
    }
    Ok(AssociatedCertificate {
        status: Status::InfiniteGeneration,
        route: Route::AssociatedConfiguration,
        associated,
        group_dimension: 3,
        representation_dimension: 18,
        weyl_infinite: weyl_is_infinite(6, 9)?,
        index_note: "association is symmetric in the nine points; listed in the input order, so the classical \
                     normalization on p_1,..,p_6 corresponds to p_9,..,p_4 here"
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};

    fn grid(p: u64) -> PointConfig<GaloisField> {
        let k = GaloisField::prime(p).unwrap();
        let mut pts = Vec::new();
        for x in [-1, 0, 1] {
            for y in [-1, 0, 1] {
                pts.push(vec![k.from_i64(x), k.from_i64(y), k.one()]);
            }
        }
        PointConfig::new(k, 3, pts).unwrap()
    }

    fn rational_nine() -> PointConfig<Rationals> {
        let rows: [[i64; 9]; 3] = [
            [1, 0, 0, 1, 1, 2, -3, -2, -7],
            [0, 1, 0, 1, -1, -1, 4, -5, 2],
            [0, 0, 1, 1, 2, 1, 1, 1, -1],
        ];
        let pts = (0..9).map(|j| (0..3).map(|i| Rationals.from_i64(rows[i][j])).collect()).collect();
        PointConfig::new(Rationals, 3, pts).unwrap()
    }

    fn cube(p: u64) -> PointConfig<GaloisField> {
        let k = GaloisField::prime(p).unwrap();
        let pts = (0..8)
            .map(|b: i64| vec![k.from_i64((b >> 2) & 1), k.from_i64((b >> 1) & 1), k.from_i64(b & 1), k.one()])
            .collect();
        PointConfig::new(k, 4, pts).unwrap()
    }

    #[test]
    fn cremona_twice_is_projectively_trivial() {
        let c = rational_nine();
        let (once, _) = standard_cremona(&c, &[0, 1, 2]).unwrap();
        let (twice, _) = standard_cremona(&once, &[0, 1, 2]).unwrap();
        let eq = config_equivalent(&c, &twice, false).unwrap().unwrap();
        assert_eq!(eq.permutation, (0..9).collect::<Vec<_>>());
        let (once, _) = standard_cremona(&c, &[3, 5, 8]).unwrap();
        let (twice, _) = standard_cremona(&once, &[3, 5, 8]).unwrap();
        assert!(config_equivalent(&c, &twice, false).unwrap().is_some());
    }

    #[test]
    fn illegal_steps() {
        let g = grid(5);
        // Points 0, 1, 2 are the line x = -1.
        assert!(matches!(standard_cremona(&g, &[0, 1, 2]), Err(Error::Degenerate(_))));
        // Point 4 = (0,0) lies on the line through 0 = (-1,-1) and 8 = (1,1).
        assert!(matches!(standard_cremona(&g, &[0, 8, 5]), Err(Error::Degenerate(_))));
        assert!(standard_cremona(&g, &[0, 0, 5]).is_err());
    }

    #[test]
    fn grid_step_preserves_rho() {
        let g = grid(5);
        let mut legal = 0;
        for s in (0..9).combinations(3) {
            let Ok((h, _)) = standard_cremona(&g, &s) else { continue };
            legal += 1;
            let v = analyze_cubic_config(&h).unwrap();
            assert_eq!(v.rho, Some(2));
            assert!(!h.in_linear_general_position());
        }
        assert!(legal > 0);
    }

    #[test]
    fn verdicts() {
        let v = analyze_cubic_config(&grid(5)).unwrap();
        assert_eq!((v.status, v.a, v.b, v.rho), (Status::InfiniteGeneration, Some(8), Some(2), Some(2)));
        assert_eq!(v.certificate.reducible_members.len(), 4);
        let v = analyze_cubic_config(&rational_nine()).unwrap();
        assert_eq!((v.a, v.b, v.rho), (Some(0), Some(0), Some(8)));
        assert!(v.certificate.cremona_general_position);
        let v = analyze_quadric_config(&cube(5)).unwrap();
        assert_eq!((v.status, v.a, v.rho), (Status::InfiniteGeneration, Some(12), Some(1)));
        assert_eq!(v.certificate.reducible_members.len(), 6);
    }

    #[test]
    fn hypothesis_failures_are_undetermined() {
        let q = Rationals;
        let pts: Vec<Vec<_>> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, 3, 7], [5, 1, 2], [3, 11, 4], [7, 2, 9]]
            .iter()
            .map(|p| p.iter().map(|&c| q.from_i64(c)).collect())
            .collect();
        let c = PointConfig::new(q, 3, pts).unwrap();
        assert_eq!(analyze_cubic_config(&c).unwrap().status, Status::Undetermined);
        let k = GaloisField::prime(7).unwrap();
        let raw: [[i64; 4]; 8] =
            [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [1, 2, 0, 0], [1, 3, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]];
        let pts = raw.iter().map(|p| p.iter().map(|&c| k.from_i64(c)).collect()).collect();
        let c = PointConfig::new(k, 4, pts).unwrap();
        assert_eq!(analyze_quadric_config(&c).unwrap().status, Status::Undetermined);
    }

    #[test]
    fn walks() {
        let g = grid(5);
        let lgp = cremona_walk(&g, 3, WalkStrategy::Exhaustive, WalkCheck::LinearGeneralPosition).unwrap();
        assert!(!lgp.survived);
        assert!(lgp.failure.unwrap().path.is_empty());
        let ex = cremona_walk(&g, 2, WalkStrategy::Exhaustive, WalkCheck::PencilInvariant).unwrap();
        assert!(ex.survived, "{:?}", ex.failure);
        assert_eq!(ex.rho, Some(2));
        let rnd = cremona_walk(&g, 10, WalkStrategy::Random { seed: 7 }, WalkCheck::PencilInvariant).unwrap();
        assert!(rnd.survived);
        assert_eq!(rnd.log.len(), 10);
        let c = rational_nine();
        let r = cremona_walk(&c, 2, WalkStrategy::Random { seed: 1 }, WalkCheck::LinearGeneralPosition).unwrap();
        assert!(r.survived);
    }

    #[test]
    fn associated_configuration() {
        let cert = certify_dim5(&rational_nine()).unwrap();
        assert_eq!(cert.status, Status::InfiniteGeneration);
        assert_eq!(cert.associated.r(), 6);
        assert!(cert.weyl_infinite);
        assert!(matches!(certify_dim5(&grid(5)), Err(Error::Degenerate(_))));
    }
}
