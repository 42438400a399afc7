//! Global convexity: run the fan check on the star of every (n-3)-face.

use std::time::Duration;

use serde::Serialize;
use serde_json::json;

use crate::complex::{extract_star, validate, FaceId, PlSurface, Rank, Star, StarError};
use crate::fan::{c_check_with, Fan3, FanStatus, FanVerdict};
use crate::geometry::linalg::{self, VecN};
use crate::geometry::quotient::{coordinate_triples, is_complementary};
use crate::geometry::{ComplementStrategy, PredicateAudit, ProjectionMode, QuotientError, QuotientMap, SignContext};
use crate::scalar::{Rational, Scalar, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ModeKind {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mode {
    pub kind: ModeKind,
    /// Relative tolerance of float signs; ignored in exact mode.
    pub eps: f64,
    pub seed: u64,
}

impl Mode {
    pub fn exact(seed: u64) -> Self {
        Mode { kind: ModeKind::Exact, eps: 0.0, seed }
    }

    pub fn float(eps: f64, seed: u64) -> Self {
        Mode { kind: ModeKind::Float, eps, seed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Convex,
    NotConvex,
    Invalid,
    Uncertain,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Convex => "Convex",
            Verdict::NotConvex => "NotConvex",
            Verdict::Invalid => "Invalid",
            Verdict::Uncertain => "Uncertain",
        }
    }
}

/// The face whose check failed, with the fan verdict when the failure came
/// from the fan check itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub face: FaceId,
    pub fan: Option<FanVerdict>,
    pub reason: &'static str,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub f0: usize,
    pub f_sub: usize,
    pub f_ridge: usize,
    pub f_facet: usize,
    pub f_sub_ridge: usize,
    pub f_sub_facet: usize,
    pub f_ridge_facet: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub counts: Counts,
    pub audit: PredicateAudit,
    /// Stars examined, up to and including the witness.
    pub processed: usize,
    /// Stars whose quotient needed a general linear solve.
    pub general_solve: usize,
    /// Sum of the star cycle lengths over the processed stars.
    pub star_incidences: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    /// Equality of every field except `elapsed`.
    pub fn same_outcome(&self, other: &Report) -> bool {
        self.verdict == other.verdict
            && self.witness == other.witness
            && self.counts == other.counts
            && self.audit == other.audit
            && self.processed == other.processed
            && self.general_solve == other.general_solve
            && self.star_incidences == other.star_incidences
    }

    pub fn degree_max(&self) -> u32 {
        self.audit.max_degree()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let c = &self.counts;
        json!({
            "verdict": self.verdict.as_str(),
            "witness_face": self.witness.as_ref().map(|w| w.face.index),
            "reason": self.witness.as_ref().map(|w| w.reason),
            "counts": {
                "f0": c.f0,
                "f_n-3": c.f_sub,
                "f_n-2": c.f_ridge,
                "f_n-1": c.f_facet,
                "f_n-3,n-2": c.f_sub_ridge,
                "f_n-3,n-1": c.f_sub_facet,
                "f_n-2,n-1": c.f_ridge_facet,
            },
            "degree_max": self.degree_max(),
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        })
    }
}

/// Why a single star could not be turned into a fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum StarFailure {
    NotManifold,
    DegenerateFace,
    ZeroRay,
    MissingAnchor,
}

impl StarFailure {
    fn reason(self) -> &'static str {
        match self {
            StarFailure::NotManifold => "NotManifoldAtFace",
            StarFailure::DegenerateFace => "DegenerateFace",
            StarFailure::ZeroRay => "ZeroRay",
            StarFailure::MissingAnchor => "MissingAnchor",
        }
    }
}

impl From<StarError> for StarFailure {
    fn from(_: StarError) -> Self {
        StarFailure::NotManifold
    }
}

impl From<QuotientError> for StarFailure {
    fn from(_: QuotientError) -> Self {
        StarFailure::DegenerateFace
    }
}

/// Realization converted to the working carrier.
struct Geometry<S> {
    coords: Option<Vec<VecN<S>>>,
    equations: Option<Vec<(VecN<S>, S)>>,
}

impl<S: Scalar> Geometry<S> {
    fn new(surface: &PlSurface) -> Self {
        let convert = |v: &[Rational]| v.iter().map(S::from_rational).collect::<VecN<S>>();
        let mut coords = surface.coords().map(|c| c.iter().map(|p| convert(p)).collect::<Vec<_>>());
        let equations = surface
            .equations()
            .map(|e| e.iter().map(|eq| (convert(&eq.normal), S::from_rational(&eq.offset))).collect::<Vec<_>>());
        if coords.is_none() && surface.ambient_dim() == 3 {
            if let Some(eqs) = &equations {
                coords = derive_vertices(surface, eqs);
            }
        }
        Geometry { coords, equations }
    }
}

/// Vertex positions of a 3-dimensional surface given by facet planes: each
/// vertex is the common point of the planes of its facets.
fn derive_vertices<S: Scalar>(surface: &PlSurface, eqs: &[(VecN<S>, S)]) -> Option<Vec<VecN<S>>> {
    let p = &surface.poset;
    (0..p.num_vertices())
        .map(|v| {
            let mut facets: Vec<u32> = p
                .containing(Rank::Sub, v)
                .iter()
                .flat_map(|&r| p.containing(Rank::Ridge, r as usize).iter().copied())
                .collect();
            facets.sort_unstable();
            facets.dedup();
            let rows: Vec<VecN<S>> = facets.iter().map(|&f| eqs[f as usize].0.clone()).collect();
            let rhs: Vec<S> = facets.iter().map(|&f| eqs[f as usize].1.clone()).collect();
            if linalg::rank(rows.clone()) != 3 {
                return None;
            }
            linalg::solve_particular(&rows, &rhs, 3)
        })
        .collect()
}

/// Facets around sub-face `f` (deduplicated).
fn facets_around(surface: &PlSurface, f: usize) -> Vec<u32> {
    let p = &surface.poset;
    let mut facets: Vec<u32> =
        p.containing(Rank::Sub, f).iter().flat_map(|&r| p.containing(Rank::Ridge, r as usize).iter().copied()).collect();
    facets.sort_unstable();
    facets.dedup();
    facets
}

/// A point of `aff(F)` and a basis of `lin(F)`.
fn face_frame<S: Scalar>(surface: &PlSurface, geom: &Geometry<S>, f: usize) -> Result<(VecN<S>, Vec<VecN<S>>), StarFailure> {
    let n = surface.ambient_dim();
    if let Some(eqs) = &geom.equations {
        let facets = facets_around(surface, f);
        let rows: Vec<VecN<S>> = facets.iter().map(|&g| eqs[g as usize].0.clone()).collect();
        let rhs: Vec<S> = facets.iter().map(|&g| eqs[g as usize].1.clone()).collect();
        if facets.len() < 3 || linalg::rank(rows.clone()) != 3 {
            return Err(StarFailure::DegenerateFace);
        }
        let center = linalg::solve_particular(&rows, &rhs, n).ok_or(StarFailure::DegenerateFace)?;
        return Ok((center, linalg::null_space(&rows, n)));
    }
    let coords = geom.coords.as_ref().ok_or(StarFailure::MissingAnchor)?;
    let pts: Vec<VecN<S>> = surface.poset.vertices(Rank::Sub, f).iter().map(|&v| coords[v as usize].clone()).collect();
    if pts.is_empty() {
        return Err(StarFailure::DegenerateFace);
    }
    let hull = linalg::affine_hull(&pts);
    if hull.dimension != n - 3 {
        return Err(StarFailure::DegenerateFace);
    }
    Ok((pts[0].clone(), hull.basis))
}

/// The first coordinate triple complementary to `lin(F)` for every
/// (n-3)-face, if any. Faces whose frame cannot be built are skipped.
fn common_triple<S: Scalar>(surface: &PlSurface, geom: &Geometry<S>) -> Option<[usize; 3]> {
    let n = surface.ambient_dim();
    if n == 3 {
        return Some([0, 1, 2]);
    }
    let mut candidates: Vec<[usize; 3]> = coordinate_triples(n).collect();
    for f in 0..surface.poset.count(Rank::Sub) {
        if let Ok((_, basis)) = face_frame(surface, geom, f) {
            candidates.retain(|&t| is_complementary(&basis, n, t));
            if candidates.is_empty() {
                return None;
            }
        }
    }
    candidates.first().copied()
}

fn first_nonzero_sign<S: Scalar>(v: &[S; 3]) -> Option<(usize, Sign)> {
    v.iter().enumerate().find(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.sign()))
}

/// Image of ridge `g` in the quotient by `lin(F)`.
fn ray_of_face<S: Scalar>(
    surface: &PlSurface,
    geom: &Geometry<S>,
    q: &QuotientMap<S>,
    g: usize,
    facets: (u32, u32),
) -> Result<[S; 3], StarFailure> {
    let anchor = geom.coords.as_ref().and_then(|coords| {
        surface
            .poset
            .vertices(Rank::Ridge, g)
            .iter()
            .map(|&v| q.project(&coords[v as usize]))
            .find(|r| r.iter().any(|x| !x.is_zero()))
    });
    let Some(eqs) = &geom.equations else {
        return anchor.ok_or(StarFailure::ZeroRay);
    };
    let anchor = anchor.ok_or(StarFailure::MissingAnchor)?;
    let rows = vec![eqs[facets.0 as usize].0.clone(), eqs[facets.1 as usize].0.clone()];
    let n = surface.ambient_dim();
    let dirs = linalg::null_space(&rows, n);
    if dirs.len() != n - 2 {
        // Flat ridge: the equations do not pin the ray, the anchor does.
        return Ok(anchor);
    }
    let image = dirs.iter().map(|d| q.project_vector(d)).find(|r| r.iter().any(|x| !x.is_zero())).ok_or(StarFailure::ZeroRay)?;
    let (i, s) = first_nonzero_sign(&image).expect("nonzero image");
    let agree = anchor[i].sign() == s || (anchor[i].is_zero() && {
        let (j, t) = first_nonzero_sign(&anchor).expect("nonzero anchor");
        image[j].sign() == t
    });
    Ok(if agree { image } else { image.map(|x| -x) })
}

enum FaceOutcome {
    Convex,
    Uncertain,
    Fail(Verdict, Witness),
}

struct FaceResult {
    outcome: FaceOutcome,
    audit: PredicateAudit,
    general: bool,
    cycle: usize,
}

fn face_seed(seed: u64, face: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ (face as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Checker<'a, S> {
    surface: &'a PlSurface,
    geom: Geometry<S>,
    strategy: ComplementStrategy,
    mode: Mode,
}

impl<'a, S: Scalar> Checker<'a, S> {
    fn new(surface: &'a PlSurface, mode: Mode) -> Self {
        let geom = Geometry::new(surface);
        let strategy = match common_triple(surface, &geom) {
            Some(t) => ComplementStrategy::Fixed(t),
            None => ComplementStrategy::General,
        };
        Checker { surface, geom, strategy, mode }
    }

    fn fan_of(&self, star: &Star, f: usize) -> Result<(Fan3<S>, QuotientMap<S>), StarFailure> {
        let (center, basis) = face_frame(self.surface, &self.geom, f)?;
        let q = QuotientMap::new(center, basis, self.strategy)?;
        let k = star.len();
        let rays = (0..k)
            .map(|i| {
                let (g, after) = star.cycle[i];
                let before = star.cycle[(i + k - 1) % k].1;
                let mut r = ray_of_face(self.surface, &self.geom, &q, g as usize, (before, after))?;
                S::clear_denominators(&mut r);
                Ok::<_, StarFailure>(r)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((Fan3::new(rays), q))
    }

    fn check_face(&self, f: usize) -> FaceResult {
        let face = self.surface.poset.face_id(Rank::Sub, f);
        let mut ctx = match self.mode.kind {
            ModeKind::Exact => SignContext::exact(),
            ModeKind::Float => SignContext::tolerant(self.mode.eps),
        };
        let fail = |reason: StarFailure| FaceOutcome::Fail(Verdict::Invalid, Witness { face, fan: None, reason: reason.reason() });
        let star = match extract_star(&self.surface.poset, f) {
            Ok(s) => s,
            Err(e) => return FaceResult { outcome: fail(e.into()), audit: ctx.audit, general: false, cycle: 0 },
        };
        let cycle = star.len();
        let (fan, q) = match self.fan_of(&star, f) {
            Ok(x) => x,
            Err(e) => return FaceResult { outcome: fail(e), audit: ctx.audit, general: false, cycle },
        };
        ctx.set_extra_degree(q.extra_degree());
        let verdict = c_check_with(&fan, &mut ctx, face_seed(self.mode.seed, f));
        let outcome = match verdict.status {
            FanStatus::Convex => FaceOutcome::Convex,
            _ if ctx.hit_uncertain() => FaceOutcome::Uncertain,
            status => {
                let v = if status == FanStatus::Invalid { Verdict::Invalid } else { Verdict::NotConvex };
                FaceOutcome::Fail(v, Witness { face, fan: Some(verdict), reason: reason_name(&verdict) })
            }
        };
        FaceResult { outcome, audit: ctx.audit, general: q.mode == ProjectionMode::GeneralSolve, cycle }
    }
}

fn reason_name(v: &FanVerdict) -> &'static str {
    use crate::fan::FanReason::*;
    match v.reason {
        None => "None",
        NoSupportingHalfspace => "NoSupportingHalfspace",
        SignFlip => "SignFlip",
        WindingExceedsOne => "WindingExceedsOne",
        CoplanarFold => "CoplanarFold",
        DegenerateRays => "DegenerateRays",
    }
}

fn counts_of(surface: &PlSurface) -> Counts {
    let p = &surface.poset;
    let inc = p.incidences();
    Counts {
        f0: p.count(Rank::Vertex),
        f_sub: p.count(Rank::Sub),
        f_ridge: p.count(Rank::Ridge),
        f_facet: p.count(Rank::Facet),
        f_sub_ridge: inc.sub_ridge,
        f_sub_facet: inc.sub_facet,
        f_ridge_facet: inc.ridge_facet,
    }
}

/// Folds per-face results in index order; stops at the first definite
/// failure. Returns `true` once a failure has been absorbed.
#[derive(Default)]
struct Accumulator {
    audit: PredicateAudit,
    processed: usize,
    general: usize,
    incidences: usize,
    uncertain: bool,
    failure: Option<(Verdict, Witness)>,
}

impl Accumulator {
    fn absorb(&mut self, r: FaceResult) -> bool {
        self.audit.merge(&r.audit);
        self.processed += 1;
        self.general += r.general as usize;
        self.incidences += r.cycle;
        match r.outcome {
            FaceOutcome::Convex => false,
            FaceOutcome::Uncertain => {
                self.uncertain = true;
                false
            }
            FaceOutcome::Fail(v, w) => {
                self.failure = Some((v, w));
                true
            }
        }
    }

    fn finish(self, counts: Counts, elapsed: Duration) -> Report {
        let (verdict, witness) = match self.failure {
            Some((v, w)) => (v, Some(w)),
            None if self.uncertain => (Verdict::Uncertain, None),
            None => (Verdict::Convex, None),
        };
        Report {
            verdict,
            witness,
            counts,
            audit: self.audit,
            processed: self.processed,
            general_solve: self.general,
            star_incidences: self.incidences,
            elapsed,
        }
    }
}

fn invalid_report(surface: &PlSurface, counts: Counts, elapsed: Duration) -> Option<Report> {
    let report = validate(surface);
    let violation = report.violation?;
    let face = violation.face(&surface.poset).unwrap_or(FaceId { dim: 0, index: 0 });
    Some(Report {
        verdict: Verdict::Invalid,
        witness: Some(Witness { face, fan: None, reason: violation.reason() }),
        counts,
        audit: PredicateAudit::default(),
        processed: 0,
        general_solve: 0,
        star_incidences: 0,
        elapsed,
    })
}

/// Serial, fail-fast check of every star.
pub fn check_convexity(surface: &PlSurface, mode: Mode) -> Report {
    let timer = Stopwatch::start();
    let counts = counts_of(surface);
    if let Some(r) = invalid_report(surface, counts, Duration::ZERO) {
        return Report { elapsed: timer.elapsed(), ..r };
    }
    let report = match mode.kind {
        ModeKind::Exact => run_serial(Checker::<Rational>::new(surface, mode)),
        ModeKind::Float => run_serial(Checker::<f64>::new(surface, mode)),
    };
    report.finish(counts, timer.elapsed())
}

fn run_serial<S: Scalar>(checker: Checker<'_, S>) -> Accumulator {
    let mut acc = Accumulator::default();
    for f in 0..checker.surface.poset.count(Rank::Sub) {
        if acc.absorb(checker.check_face(f)) {
            break;
        }
    }
    acc
}

/// Same report as [`check_convexity`] (apart from `elapsed`), with stars
/// checked on `jobs` threads in deterministic blocks.
pub fn check_convexity_parallel(surface: &PlSurface, mode: Mode, jobs: usize) -> Report {
    #[cfg(feature = "parallel")]
    {
        if jobs > 1 {
            let timer = Stopwatch::start();
            let counts = counts_of(surface);
            if let Some(r) = invalid_report(surface, counts, Duration::ZERO) {
                return Report { elapsed: timer.elapsed(), ..r };
            }
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
            let acc = pool.install(|| match mode.kind {
                ModeKind::Exact => run_blocks(Checker::<Rational>::new(surface, mode)),
                ModeKind::Float => run_blocks(Checker::<f64>::new(surface, mode)),
            });
            return acc.finish(counts, timer.elapsed());
        }
    }
    let _ = jobs;
    check_convexity(surface, mode)
}

#[cfg(feature = "parallel")]
fn run_blocks<S: Scalar>(checker: Checker<'_, S>) -> Accumulator {
    use rayon::prelude::*;
    const BLOCK: usize = 2048;
    let total = checker.surface.poset.count(Rank::Sub);
    let mut acc = Accumulator::default();
    let mut start = 0;
    while start < total {
        let end = (start + BLOCK).min(total);
        let results: Vec<FaceResult> = (start..end).into_par_iter().map(|f| checker.check_face(f)).collect();
        for r in results {
            if acc.absorb(r) {
                return acc;
            }
        }
        start = end;
    }
    acc
}

/// Wall clock that reads zero where no clock is available.
struct Stopwatch {
    #[cfg(not(target_arch = "wasm32"))]
    start: std::time::Instant,
}

impl Stopwatch {
    fn start() -> Self {
        Stopwatch {
            #[cfg(not(target_arch = "wasm32"))]
            start: std::time::Instant::now(),
        }
    }

    fn elapsed(&self) -> Duration {
        #[cfg(not(target_arch = "wasm32"))]
        {
            self.start.elapsed()
        }
        #[cfg(target_arch = "wasm32")]
        {
            Duration::ZERO
        }
    }
}

/// The fan of sub-face `f` in exact arithmetic, for inspection and tests.
pub fn star_fan(surface: &PlSurface, f: usize) -> Option<Fan3<Rational>> {
    let checker = Checker::<Rational>::new(surface, Mode::exact(0));
    let star = extract_star(&surface.poset, f).ok()?;
    checker.fan_of(&star, f).ok().map(|(fan, _)| fan)
}

/// Projection mode the verifier would use for sub-face `f`.
pub fn projection_mode(surface: &PlSurface, f: usize) -> Option<ProjectionMode> {
    let checker = Checker::<Rational>::new(surface, Mode::exact(0));
    let (center, basis) = face_frame(surface, &checker.geom, f).ok()?;
    QuotientMap::new(center, basis, checker.strategy).ok().map(|q| q.mode)
}
