//! Exhaustive and randomized searches over centroid-zero bodies.
//!
//! Every generated body goes through every applicable check; anything that
//! fails is recorded with a replayable body description, and per-body
//! errors are kept rather than dropped. Output is a pure function of the
//! [`SearchConfig`], independent of the worker count.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::barycentric::{n_of_rho, residue, separation, BarycentricFrame};
use crate::bounds::{
    conjecture_bound, gruenbaum_body, mp_from_ratio, prop1_with, simplex_bound_with,
    unimodular_equivalent, EqualityCase, Status, UnimodularCertificate,
};
use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};
use crate::lattice::{enumerate_body, lambda1_body, unbounded_family, LatticePointSet};
use crate::planar::{ehrhart_planar_body, verify_thm3_body, Thm3Branch};
use crate::polytope::{center, Body, BodySpec, HalfSpace, Polytope, Simplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    ExhaustiveSimplices,
    RandomPolytopes,
    FamilyTriangles,
}

fn default_parallelism() -> usize {
    1
}

fn default_halfspaces() -> usize {
    50
}

fn default_family_max_m() -> i64 {
    20
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub dim: usize,
    pub coordinate_bound: i64,
    pub modes: BTreeSet<Mode>,
    #[serde(default)]
    pub sample_count: u64,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    /// Random halfspaces through the centroid tried per body.
    #[serde(default = "default_halfspaces")]
    pub halfspaces_per_body: usize,
    /// Upper end of the `m = 2..` range in family mode.
    #[serde(default = "default_family_max_m")]
    pub family_max_m: i64,
    /// Additionally collapse exhaustive simplices to one representative
    /// per unimodular class (quadratic; meant for small bounds).
    #[serde(default)]
    pub dedup_unimodular: bool,
}

impl SearchConfig {
    pub fn new(dim: usize, coordinate_bound: i64, modes: &[Mode]) -> Self {
        SearchConfig {
            dim,
            coordinate_bound,
            modes: modes.iter().copied().collect(),
            sample_count: 0,
            rng_seed: 0,
            parallelism: 1,
            halfspaces_per_body: default_halfspaces(),
            family_max_m: default_family_max_m(),
            dedup_unimodular: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.coordinate_bound < 1 {
            return Err(Error::precondition("coordinate_bound must be at least 1"));
        }
        if self.parallelism == 0 {
            return Err(Error::precondition("parallelism must be at least 1"));
        }
        if self.modes.contains(&Mode::ExhaustiveSimplices) && !(2..=3).contains(&self.dim) {
            return Err(Error::precondition(
                "exhaustive search supports dimensions 2 and 3",
            ));
        }
        if self.modes.contains(&Mode::RandomPolytopes) {
            crate::polytope::check_dim(self.dim)?;
        }
        if self.modes.contains(&Mode::FamilyTriangles) && self.dim != 2 {
            return Err(Error::precondition(
                "the triangle family is planar; use dim 2",
            ));
        }
        Ok(())
    }
}

fn in_box(v: &[i64], n: i64) -> bool {
    v.iter().all(|x| x.abs() <= n)
}

fn det(rows: &[Vec<i64>]) -> i64 {
    match rows.len() {
        2 => rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0],
        3 => {
            let (a, b, c) = (&rows[0], &rows[1], &rows[2]);
            a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0])
        }
        _ => unreachable!("exhaustive search is limited to d ≤ 3"),
    }
}

/// Every lattice simplex with vertices in `[−N, N]^d` and vertex sum zero,
/// once per vertex set up to `x ↦ −x`, in lexicographic order of the sorted
/// vertex list.
pub fn enumerate_centroid_simplices(cfg: &SearchConfig) -> Result<Vec<Simplex>> {
    let d = cfg.dim;
    if !(2..=3).contains(&d) {
        return Err(Error::precondition(
            "exhaustive search supports dimensions 2 and 3",
        ));
    }
    if cfg.coordinate_bound < 1 {
        return Err(Error::precondition("coordinate_bound must be at least 1"));
    }
    let n = cfg.coordinate_bound;
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..d {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-n..=n).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    let mut emit = |verts: Vec<Vec<i64>>| {
        // `verts` is strictly increasing; keep the smaller of V and −V.
        let mut neg: Vec<Vec<i64>> = verts
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .collect();
        neg.sort();
        if verts > neg {
            return;
        }
        let edges: Vec<Vec<i64>> = verts[1..]
            .iter()
            .map(|v| v.iter().zip(&verts[0]).map(|(a, b)| a - b).collect())
            .collect();
        if det(&edges) != 0 {
            out.push(verts);
        }
    };
    let m = pts.len();
    for i in 0..m {
        for j in i + 1..m {
            if d == 2 {
                let last: Vec<i64> = (0..2).map(|k| -pts[i][k] - pts[j][k]).collect();
                if in_box(&last, n) && last > pts[j] {
                    emit(vec![pts[i].clone(), pts[j].clone(), last]);
                }
                continue;
            }
            for k in j + 1..m {
                let last: Vec<i64> = (0..3).map(|c| -pts[i][c] - pts[j][c] - pts[k][c]).collect();
                if in_box(&last, n) && last > pts[k] {
                    emit(vec![pts[i].clone(), pts[j].clone(), pts[k].clone(), last]);
                }
            }
        }
    }
    let mut simplices: Vec<Simplex> = out
        .iter()
        .map(|v| {
            let refs: Vec<&[i64]> = v.iter().map(Vec::as_slice).collect();
            Simplex::from_int_vertices(&refs)
        })
        .collect::<Result<_>>()?;
    if cfg.dedup_unimodular {
        simplices = unimodular_representatives(simplices)?;
    }
    Ok(simplices)
}

/// First member of each unimodular class, in input order. Centroid-zero
/// simplices can only be related by linear maps, so candidates are
/// bucketed by volume before the pairwise search.
pub fn unimodular_representatives(simplices: Vec<Simplex>) -> Result<Vec<Simplex>> {
    let mut reps: BTreeMap<Rational, Vec<Simplex>> = BTreeMap::new();
    let mut keep = Vec::new();
    for s in simplices {
        let bucket = reps.entry(s.volume()).or_default();
        let mut seen = false;
        for r in bucket.iter() {
            if unimodular_equivalent(&s, r)?.is_some() {
                seen = true;
                break;
            }
        }
        if !seen {
            bucket.push(s.clone());
            keep.push(s);
        }
    }
    Ok(keep)
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let q = rng.gen_range(1..=3i64);
    Rational::new(rng.gen_range(-bound * q..=bound * q), q)
}

const MAX_DRAWS: usize = 64;

/// Hull of a few random rational points, translated exactly so that its
/// centroid is the origin. Draw `index` of seed `s` is always the same body.
pub fn random_centroid_body(cfg: &SearchConfig, index: u64) -> Result<Polytope> {
    let d = cfg.dim;
    crate::polytope::check_dim(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    rng.set_stream(index);
    for _ in 0..MAX_DRAWS {
        let k = rng.gen_range(d + 1..=d + 4);
        let pts: Vec<RatVector> = (0..k)
            .map(|_| {
                RatVector::new(
                    (0..d)
                        .map(|_| random_rational(&mut rng, cfg.coordinate_bound))
                        .collect(),
                )
            })
            .collect();
        if let Ok(p) = Polytope::from_points(d, pts) {
            return center(&p);
        }
    }
    Err(Error::degenerate(format!(
        "no full-dimensional draw after {MAX_DRAWS} attempts"
    )))
}

/// `count` halfspaces `{a·x ≤ 0}` with nonzero integer normals in
/// `[−9, 9]^dim`, determined by `(seed, stream)`.
pub fn random_halfspaces(dim: usize, seed: u64, stream: u64, count: usize) -> Vec<HalfSpace> {
    // A different seed from the bodies so the two streams never coincide.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    rng.set_stream(stream);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a: Vec<i64> = (0..dim).map(|_| rng.gen_range(-9..=9)).collect();
        if let Ok(h) = HalfSpace::new(RatVector::from_ints(&a), Rational::zero()) {
            out.push(h);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub source: String,
    pub check: String,
    pub detail: String,
    pub body: BodySpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BodyError {
    pub source: String,
    pub message: String,
    pub body: Option<BodySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityRecord {
    pub source: String,
    /// `simplex_bound` or `planar_bound`.
    pub bound: String,
    pub g: u64,
    pub body: BodySpec,
    pub certificate: UnimodularCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub m: i64,
    pub g: u64,
    pub interior: u64,
    pub centroid: RatVector,
}

/// Counters of checks actually performed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub prop1: u64,
    pub milman_pajor: u64,
    pub gruenbaum: u64,
    pub simplex_bound: u64,
    pub lemma1_pairs: u64,
    pub cell_injectivity: u64,
    pub planar_bound: u64,
    pub ehrhart_planar: u64,
}

impl CheckCounts {
    fn absorb(&mut self, o: &CheckCounts) {
        self.prop1 += o.prop1;
        self.milman_pajor += o.milman_pajor;
        self.gruenbaum += o.gruenbaum;
        self.simplex_bound += o.simplex_bound;
        self.lemma1_pairs += o.lemma1_pairs;
        self.cell_injectivity += o.cell_injectivity;
        self.planar_bound += o.planar_bound;
        self.ehrhart_planar += o.ehrhart_planar;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub config: SearchConfig,
    pub bodies_tested: u64,
    pub checks: CheckCounts,
    pub violations: Vec<Violation>,
    pub errors: Vec<BodyError>,
    pub equality_cases: Vec<EqualityRecord>,
    pub max_g_by_lambda1: BTreeMap<Rational, u64>,
    /// Largest `G` among planar bodies with exactly one interior lattice point.
    pub max_g_single_interior: Option<u64>,
    pub min_mp_ratio: Option<Rational>,
    /// Bodies with `G(K)` above `C(d + ⌈(d+1)/λ₁⌉, d)`; for non-simplices
    /// this bound is conjectural, so these are findings, not violations.
    pub conjecture_exceedances: Vec<Violation>,
    /// Bodies whose only interior lattice point is the origin yet
    /// `G > 2^{d+1} − 1`. That bound needs strict convexity, which
    /// polytopes lack; report only.
    pub remark_bound_exceedances: u64,
    pub family: Vec<FamilyRow>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl SearchSummary {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.errors.is_empty()
    }

    pub fn conjecture_verdict(&self) -> &'static str {
        if self.conjecture_exceedances.is_empty() {
            "no counterexample found"
        } else {
            "counterexample candidates found"
        }
    }
}

#[derive(Default)]
struct Outcome {
    tested: bool,
    checks: CheckCounts,
    violations: Vec<Violation>,
    errors: Vec<BodyError>,
    equality: Vec<EqualityRecord>,
    lambda1: Option<Rational>,
    g: u64,
    single_interior: bool,
    mp_ratio: Option<Rational>,
    conjecture_exceeded: Option<Violation>,
    remark_exceeded: bool,
}

enum Candidate {
    Simplex(Simplex),
    Body(Polytope),
}

struct Ctx<'a> {
    cfg: &'a SearchConfig,
    source: String,
    spec: BodySpec,
    out: Outcome,
}

impl Ctx<'_> {
    fn violation(&mut self, check: &str, detail: String) {
        self.out.violations.push(Violation {
            source: self.source.clone(),
            check: check.into(),
            detail,
            body: self.spec.clone(),
        });
    }
}

fn check_candidate(cfg: &SearchConfig, source: String, index: u64, cand: &Candidate) -> Outcome {
    let (body, simplex) = match cand {
        Candidate::Simplex(s) => (Body::from_simplex(s), Some(s)),
        Candidate::Body(p) => match Body::from_polytope(p) {
            Ok(b) => (b, None),
            Err(e) => {
                return Outcome {
                    errors: vec![BodyError {
                        source,
                        message: e.to_string(),
                        body: Some(BodySpec::from_polytope(p)),
                    }],
                    ..Outcome::default()
                }
            }
        },
    };
    let mut ctx = Ctx {
        cfg,
        spec: BodySpec::from_polytope(body.polytope()),
        source,
        out: Outcome::default(),
    };
    if let Err(e) = run_checks(&mut ctx, &body, simplex, index) {
        let (source, body) = (ctx.source.clone(), Some(ctx.spec.clone()));
        ctx.out.errors.push(BodyError {
            source,
            message: e.to_string(),
            body,
        });
    }
    ctx.out
}

fn run_checks(ctx: &mut Ctx, body: &Body, simplex: Option<&Simplex>, index: u64) -> Result<()> {
    let d = body.dim();
    if !body.is_centered() {
        return Err(Error::precondition("generated body is not centered"));
    }
    let pts = enumerate_body(body)?;
    let l1 = lambda1_body(body)?;
    let g = pts.count();
    ctx.out.tested = true;
    ctx.out.g = g;
    ctx.out.lambda1 = Some(l1.value.clone());

    let p1 = prop1_with(body, g, l1.clone())?;
    ctx.out.checks.prop1 += 1;
    if p1.status.is_violated() {
        ctx.violation(
            "prop1",
            format!(
                "G = {g}, bound {}, volume ratio {}",
                p1.bound, p1.evidence.volume_ratio
            ),
        );
    }

    let ev = &p1.evidence;
    let mp = mp_from_ratio(body, &ev.symmetric_volume / &ev.volume);
    ctx.out.checks.milman_pajor += 1;
    if !mp.pass || (mp.ratio == Rational::one()) != mp.symmetric {
        ctx.violation(
            "milman_pajor",
            format!("ratio {} (symmetric: {})", mp.ratio, mp.symmetric),
        );
    }
    ctx.out.mp_ratio = Some(mp.ratio);

    let pieces = body.triangulate();
    for hs in random_halfspaces(d, ctx.cfg.rng_seed, index, ctx.cfg.halfspaces_per_body) {
        let gr = gruenbaum_body(body, &ev.volume, &pieces, &hs)?;
        ctx.out.checks.gruenbaum += 1;
        if !gr.pass {
            ctx.violation(
                "gruenbaum",
                format!("halfspace a = {:?}: fraction {}", hs.normal, gr.fraction),
            );
        }
    }

    let bound = conjecture_bound(d, &l1.value)?;
    if num_bigint::BigInt::from(g) > bound {
        ctx.out.conjecture_exceeded = Some(Violation {
            source: ctx.source.clone(),
            check: "conjecture_bound".into(),
            detail: format!("G = {g} > {bound} at lambda1 = {}", l1.value),
            body: ctx.spec.clone(),
        });
    }
    if pts.interior_count() == 1 && g > (1u64 << (d + 1)) - 1 {
        ctx.out.remark_exceeded = true;
    }

    if let Some(s) = simplex {
        simplex_checks(ctx, s, &pts, &l1.value)?;
        let sb = simplex_bound_with(s, g, l1.clone())?;
        ctx.out.checks.simplex_bound += 1;
        match (&sb.status, &sb.evidence.equality) {
            (Status::Violated, _) => {
                ctx.violation("simplex_bound", format!("G = {g}, bound {}", sb.bound))
            }
            (Status::Equal, Some(eq)) => {
                if let Some(c) = eq.certificate() {
                    ctx.out.equality.push(EqualityRecord {
                        source: ctx.source.clone(),
                        bound: "simplex_bound".into(),
                        g,
                        body: ctx.spec.clone(),
                        certificate: c.clone(),
                    });
                }
                if let EqualityCase::Checked {
                    m_unimodular: false,
                    ..
                }
                | EqualityCase::Checked {
                    m_equation_holds: false,
                    ..
                } = eq
                {
                    ctx.violation(
                        "simplex_bound",
                        "equality without a unimodular M matrix".into(),
                    );
                }
                if let EqualityCase::NotApplicable { .. } = eq {
                    ctx.violation(
                        "simplex_bound",
                        format!("equality with non-integral 1/lambda1 = 1/{}", l1.value),
                    );
                }
            }
            _ => {}
        }
    }

    if d == 2 {
        let e = ehrhart_planar_body(body, Some(&pts))?;
        if !matches!(e, crate::planar::EhrhartPlanar::NotApplicable { .. }) {
            ctx.out.checks.ehrhart_planar += 1;
        }
        if e.is_violated() {
            ctx.violation("ehrhart_planar", format!("{e:?}"));
        }
        if pts.interior_count() == 1 {
            ctx.out.single_interior = true;
            let t3 = verify_thm3_body(body, &pts)?;
            ctx.out.checks.planar_bound += 1;
            if t3.status.is_violated() {
                ctx.violation(
                    "planar_bound",
                    serde_json::to_string(&t3.evidence).expect("trace serializes"),
                );
            }
            if let Thm3Branch::OriginInterior {
                equality: Some(eq), ..
            } = &t3.evidence.branch
            {
                if let Some(c) = &eq.certificate {
                    ctx.out.equality.push(EqualityRecord {
                        source: ctx.source.clone(),
                        bound: "planar_bound".into(),
                        g,
                        body: ctx.spec.clone(),
                        certificate: c.clone(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Pairwise barycentric separation and injectivity of the cell map with
/// `ρ = λ₁` over all lattice points of a centered simplex.
fn simplex_checks(
    ctx: &mut Ctx,
    s: &Simplex,
    pts: &LatticePointSet,
    lambda1: &Rational,
) -> Result<()> {
    let frame = BarycentricFrame::new(s)?;
    let betas = pts
        .as_rational()
        .iter()
        .map(|x| frame.coords(x))
        .collect::<Result<Vec<_>>>()?;
    for (i, bu) in betas.iter().enumerate() {
        for (j, bw) in betas.iter().enumerate() {
            if i == j {
                continue;
            }
            ctx.out.checks.lemma1_pairs += 1;
            let sep = separation(bu, bw, lambda1);
            if !sep.holds {
                let (u, w) = (&pts.points()[i], &pts.points()[j]);
                ctx.violation(
                    "lemma1",
                    format!(
                        "u = {u:?}, w = {w:?}: max gap {} < {}",
                        sep.value, sep.threshold
                    ),
                );
            }
        }
    }
    let n = n_of_rho(s.dim(), lambda1)?;
    let mut seen = HashSet::with_capacity(betas.len());
    ctx.out.checks.cell_injectivity += 1;
    for (b, p) in betas.iter().zip(pts.points()) {
        if !seen.insert(residue(b, n)?) {
            ctx.violation(
                "cell_injectivity",
                format!("{p:?} shares a cell at n = {n}"),
            );
        }
    }
    Ok(())
}

fn family_rows(cfg: &SearchConfig, summary: &mut SearchSummary) {
    let mut prev = 0;
    for m in 2..=cfg.family_max_m {
        let source = format!("family/m={m}");
        let row = unbounded_family(m).and_then(|p| {
            let body = Body::from_polytope(&p)?;
            let pts = enumerate_body(&body)?;
            Ok((p, pts.count(), pts.interior_count(), body.centroid()))
        });
        match row {
            Ok((p, g, interior, centroid)) => {
                let mut bad = Vec::new();
                if interior != 1 {
                    bad.push(format!("{interior} interior lattice points"));
                }
                if g < 2 * m as u64 + 1 {
                    bad.push(format!("G = {g} < 2m+1"));
                }
                if g < prev {
                    bad.push(format!("G = {g} decreased from {prev}"));
                }
                for detail in bad {
                    summary.violations.push(Violation {
                        source: source.clone(),
                        check: "family".into(),
                        detail,
                        body: BodySpec::from_polytope(&p),
                    });
                }
                prev = g;
                summary.family.push(FamilyRow {
                    m,
                    g,
                    interior,
                    centroid,
                });
            }
            Err(e) => summary.errors.push(BodyError {
                source,
                message: e.to_string(),
                body: None,
            }),
        }
    }
}

/// Runs every requested mode and aggregates the results.
pub fn run_suite(cfg: &SearchConfig) -> Result<SearchSummary> {
    cfg.validate()?;
    let started = std::time::Instant::now();
    let mut summary = SearchSummary {
        config: cfg.clone(),
        bodies_tested: 0,
        checks: CheckCounts::default(),
        violations: Vec::new(),
        errors: Vec::new(),
        equality_cases: Vec::new(),
        max_g_by_lambda1: BTreeMap::new(),
        max_g_single_interior: None,
        min_mp_ratio: None,
        conjecture_exceedances: Vec::new(),
        remark_bound_exceedances: 0,
        family: Vec::new(),
        runtime: Duration::ZERO,
    };

    let mut jobs: Vec<(String, u64, Candidate)> = Vec::new();
    if cfg.modes.contains(&Mode::ExhaustiveSimplices) {
        for (i, s) in enumerate_centroid_simplices(cfg)?.into_iter().enumerate() {
            jobs.push((format!("exhaustive/{i}"), i as u64, Candidate::Simplex(s)));
        }
    }
    if cfg.modes.contains(&Mode::RandomPolytopes) {
        let offset = jobs.len() as u64;
        for i in 0..cfg.sample_count {
            let source = format!("random/{i}");
            match random_centroid_body(cfg, i) {
                Ok(p) => jobs.push((source, offset + i, Candidate::Body(p))),
                Err(e) => summary.errors.push(BodyError {
                    source,
                    message: e.to_string(),
                    body: None,
                }),
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::precondition(format!("thread pool: {e}")))?;
    let outcomes: Vec<Outcome> = pool.install(|| {
        jobs.par_iter()
            .map(|(source, index, cand)| check_candidate(cfg, source.clone(), *index, cand))
            .collect()
    });

    for o in outcomes {
        summary.checks.absorb(&o.checks);
        summary.violations.extend(o.violations);
        summary.errors.extend(o.errors);
        summary.equality_cases.extend(o.equality);
        if !o.tested {
            continue;
        }
        summary.bodies_tested += 1;
        if let Some(l) = o.lambda1 {
            let e = summary.max_g_by_lambda1.entry(l).or_insert(0);
            *e = (*e).max(o.g);
        }
        if o.single_interior {
            summary.max_g_single_interior =
                Some(summary.max_g_single_interior.map_or(o.g, |m| m.max(o.g)));
        }
        if let Some(r) = o.mp_ratio {
            if summary.min_mp_ratio.as_ref().is_none_or(|m| r < *m) {
                summary.min_mp_ratio = Some(r);
            }
        }
        summary.conjecture_exceedances.extend(o.conjecture_exceeded);
        summary.remark_bound_exceedances += o.remark_exceeded as u64;
    }

    if cfg.modes.contains(&Mode::FamilyTriangles) {
        family_rows(cfg, &mut summary);
    }
    summary.runtime = started.elapsed();
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(dim: usize, n: i64, modes: &[Mode]) -> SearchConfig {
        SearchConfig::new(dim, n, modes)
    }

    #[test]
    fn enumeration_contains_s2_and_is_centered() {
        let s2 = Body::from_simplex(&Simplex::ehrhart(2));
        let list = enumerate_centroid_simplices(&cfg(2, 2, &[Mode::ExhaustiveSimplices])).unwrap();
        let found = list.iter().any(|s| {
            let b = Body::from_simplex(s);
            b == s2 || b == s2.reflect()
        });
        assert!(found);
        for s in enumerate_centroid_simplices(&cfg(2, 1, &[Mode::ExhaustiveSimplices])).unwrap() {
            assert!(s.vertex_sum().is_zero());
            assert!(s.is_lattice_simplex());
        }
    }

    /// Independent count: all vertex triples with zero sum, modulo order
    /// and sign, by filtering every ordered triple.
    fn brute_count_2d(n: i64) -> usize {
        let mut set = BTreeSet::new();
        let r = -n..=n;
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for e in r.clone() {
                        let (f, g) = (-a - c, -b - e);
                        if f.abs() > n || g.abs() > n {
                            continue;
                        }
                        if (c - a) * (g - b) - (e - b) * (f - a) == 0 {
                            continue;
                        }
                        let mut v = vec![[a, b], [c, e], [f, g]];
                        v.sort();
                        let mut w: Vec<[i64; 2]> = v.iter().map(|p| [-p[0], -p[1]]).collect();
                        w.sort();
                        set.insert(v.min(w));
                    }
                }
            }
        }
        set.len()
    }

    #[test]
    fn enumeration_count_matches_brute_force() {
        for n in 1..=3 {
            let got =
                enumerate_centroid_simplices(&cfg(2, n, &[Mode::ExhaustiveSimplices])).unwrap();
            assert_eq!(got.len(), brute_count_2d(n), "N = {n}");
        }
    }

    #[test]
    fn enumeration_regression_baseline() {
        let got = enumerate_centroid_simplices(&cfg(2, 4, &[Mode::ExhaustiveSimplices])).unwrap();
        assert_eq!(got.len(), brute_count_2d(4));
        assert_eq!(got.len(), 276);
    }

    #[test]
    fn enumeration_rejects_bad_dims() {
        assert!(enumerate_centroid_simplices(&cfg(4, 1, &[Mode::ExhaustiveSimplices])).is_err());
        assert!(enumerate_centroid_simplices(&cfg(1, 1, &[Mode::ExhaustiveSimplices])).is_err());
    }

    #[test]
    fn unimodular_dedup_leaves_inequivalent_reps() {
        let mut c = cfg(2, 1, &[Mode::ExhaustiveSimplices]);
        c.dedup_unimodular = true;
        let reps = enumerate_centroid_simplices(&c).unwrap();
        assert!(!reps.is_empty());
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(unimodular_equivalent(a, b).unwrap().is_none());
            }
        }
    }

    #[test]
    fn random_bodies_are_centered_and_reproducible() {
        let mut c = cfg(2, 3, &[Mode::RandomPolytopes]);
        c.rng_seed = 42;
        let a = random_centroid_body(&c, 0).unwrap();
        let b = random_centroid_body(&c, 0).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_centroid_body(&c, 1).unwrap());
        for i in 0..10 {
            let p = random_centroid_body(&c, i).unwrap();
            assert!(crate::polytope::centroid(&p).unwrap().is_zero());
        }
        let c3 = SearchConfig { dim: 3, ..c };
        assert!(
            crate::polytope::centroid(&random_centroid_body(&c3, 5).unwrap())
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn symmetrized_random_body_has_unit_ratio() {
        let mut c = cfg(2, 3, &[Mode::RandomPolytopes]);
        c.rng_seed = 7;
        let p = random_centroid_body(&c, 3).unwrap();
        let mut pts = p.vertices().to_vec();
        pts.extend(p.vertices().iter().map(RatVector::neg));
        let sym = Polytope::from_points(2, pts).unwrap();
        assert_eq!(
            crate::bounds::milman_pajor_check(&sym).unwrap().ratio,
            Rational::one()
        );
    }

    #[test]
    fn small_planar_search_is_clean() {
        let mut c = cfg(2, 3, &[Mode::ExhaustiveSimplices, Mode::RandomPolytopes]);
        c.sample_count = 10;
        c.halfspaces_per_body = 5;
        let s = run_suite(&c).unwrap();
        assert!(s.is_clean(), "{:?} {:?}", s.violations, s.errors);
        assert_eq!(s.max_g_single_interior, Some(10));
        assert!(s
            .equality_cases
            .iter()
            .any(|e| e.bound == "planar_bound" && e.g == 10));
        assert!(s.checks.lemma1_pairs > 0 && s.checks.planar_bound > 0);
    }

    #[test]
    fn summary_is_deterministic_across_workers() {
        let mut c = cfg(2, 2, &[Mode::ExhaustiveSimplices, Mode::RandomPolytopes]);
        c.sample_count = 6;
        c.halfspaces_per_body = 3;
        let a = run_suite(&c).unwrap();
        let b = run_suite(&SearchConfig {
            parallelism: 3,
            ..c.clone()
        })
        .unwrap();
        let strip = |mut s: SearchSummary| {
            s.config.parallelism = 0;
            serde_json::to_string(&s).unwrap()
        };
        assert_eq!(strip(a.clone()), strip(b));
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&run_suite(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn family_mode() {
        let mut c = cfg(2, 1, &[Mode::FamilyTriangles]);
        c.family_max_m = 8;
        let s = run_suite(&c).unwrap();
        assert!(s.is_clean());
        assert_eq!(s.family.len(), 7);
        assert!(s
            .family
            .iter()
            .all(|r| r.interior == 1 && !r.centroid.is_zero()));
    }

    #[test]
    fn config_json() {
        let c: SearchConfig = serde_json::from_str(
            r#"{"dim": 3, "coordinate_bound": 2, "modes": ["exhaustive_simplices"], "rng_seed": 1}"#,
        )
        .unwrap();
        assert_eq!(
            (c.parallelism, c.halfspaces_per_body, c.sample_count),
            (1, 50, 0)
        );
        assert!(serde_json::from_str::<SearchConfig>(r#"{"dim": 3}"#).is_err());
        assert!(cfg(2, 0, &[]).validate().is_err());
        assert!(cfg(3, 1, &[Mode::FamilyTriangles]).validate().is_err());
    }
}
