//! Property suites behind `arq verify`.

use std::sync::Arc;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::fixture::FixtureSpec;
use crate::algebra::Algebra;
use crate::ar::{ar_sequence, ar_triangle_ending_at, sample_objects, verify_ar_triangle, Check, Outcome};
use crate::complex::{
    complex_iso, decompose_complex, homology, homology_map, nu_chain, presentation_complex, random_complex,
    PerfectComplex,
};
use crate::error::{Error, Result};
use crate::explorer::{
    column, component_slice, homology_diagram, is_shifted_nu_chain, positional_predicates, rim_distance,
    rim_of_column, stabilization, MeshKind, DEFAULT_NODE_BUDGET,
};
use crate::explorer::big_homology_complex;
use crate::module::{cosyzygy, decompose, is_isomorphic, nakayama_module, projective_cover, syzygy, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Splice,
    LengthDistance,
    Stabilization,
    RigidRim,
    BigHomology,
    ArAxioms,
    ProjectiveComponent,
    ThreeTerm,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Splice => "splice",
            Suite::LengthDistance => "length-distance",
            Suite::Stabilization => "stabilization",
            Suite::RigidRim => "rigid-rim",
            Suite::BigHomology => "big-homology",
            Suite::ArAxioms => "ar-axioms",
            Suite::ProjectiveComponent => "projective-component",
            Suite::ThreeTerm => "three-term",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Lengths for the big-homology suite.
    pub lengths: Vec<usize>,
    /// Depth of projective-component slices.
    pub depth: usize,
    /// Number of random indecomposable complexes drawn.
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { lengths: vec![3, 5, 7], depth: 3, samples: 30 }
    }
}

/// Machine-readable verdict of one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub fixture: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl SuiteReport {
    pub fn outcome(&self, name: &str) -> Option<&Outcome> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter_map(|c| match &c.outcome {
                Outcome::Fail(m) => Some(format!("{}: {m}", c.name)),
                _ => None,
            })
            .collect()
    }
}

/// One property checked over many samples.
struct Tally {
    name: String,
    tested: usize,
    failures: Vec<String>,
    skip: Option<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { name: name.into(), tested: 0, failures: Vec::new(), skip: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn skip(mut self, why: &str) -> Self {
        self.skip = Some(why.into());
        self
    }

    fn check(self) -> Check {
        let outcome = if !self.failures.is_empty() {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            Outcome::Fail(format!("{} of {} failed: {}", self.failures.len(), self.tested, shown.join("; ")))
        } else if let Some(why) = self.skip {
            Outcome::Skipped(why)
        } else if self.tested == 0 {
            Outcome::Skipped("no applicable samples".into())
        } else {
            Outcome::Pass
        };
        Check { name: self.name, outcome }
    }
}

fn iso(a: &Representation, b: &Representation) -> Result<bool> {
    Ok(is_isomorphic(a, b, 0)?.is_some())
}

fn complex_isomorphic(x: &PerfectComplex, y: &PerfectComplex) -> Result<bool> {
    Ok(complex_iso(x, y, 0)?.is_some())
}

fn is_projective(m: &Representation) -> Result<bool> {
    Ok(projective_cover(m)?.projective.dim() == m.dim())
}

/// Pairwise non-isomorphic indecomposable non-projective modules reachable
/// from the simples by syzygies, cosyzygies, radicals and hearts.
pub fn sample_modules(alg: &Arc<Algebra>) -> Result<Vec<Representation>> {
    let mut candidates = Vec::new();
    for v in 0..alg.num_vertices() {
        let s = Representation::simple(alg, v);
        let o1 = syzygy(&s)?.0;
        candidates.push(syzygy(&o1)?.0);
        candidates.push(o1);
        candidates.push(cosyzygy(&s)?);
        let p = Representation::projective(alg, v);
        candidates.push(p.radical().0);
        if let Ok(h) = p.heart() {
            candidates.push(h);
        }
        candidates.push(s);
    }
    let mut out: Vec<Representation> = Vec::new();
    for c in candidates {
        if c.is_zero() {
            continue;
        }
        for (m, _) in decompose(&c, 0)? {
            if is_projective(&m)? {
                continue;
            }
            let mut seen = false;
            for o in &out {
                if iso(o, &m)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                out.push(m);
            }
        }
    }
    out.sort_by_key(|m| (m.dim(), m.dims().to_vec()));
    Ok(out)
}

/// Indecomposable summands of the standard test objects.
pub fn sample_indecomposables(alg: &Arc<Algebra>) -> Result<Vec<PerfectComplex>> {
    let mut out = Vec::new();
    for x in sample_objects(alg) {
        for s in decompose_complex(&x, 0)? {
            out.push(s.complex);
        }
    }
    Ok(out)
}

/// `count` minimal indecomposable summands of random complexes with
/// radical differentials, keeping those accepted by `keep`.
pub fn random_indecomposables<R: Rng>(
    alg: &Arc<Algebra>,
    rng: &mut R,
    count: usize,
    terms: std::ops::RangeInclusive<usize>,
    keep: impl Fn(&PerfectComplex) -> bool,
) -> Result<Vec<PerfectComplex>> {
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 50 * count.max(1) {
            return Err(Error::Budget(format!("found {} of {count} random indecomposables", out.len())));
        }
        let n = rng.gen_range(terms.clone());
        let widths: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let lo = rng.gen_range(-1..=1);
        let x = random_complex(alg, rng, lo, &widths)?;
        for s in decompose_complex(&x, rng.gen())? {
            if out.len() < count && !s.complex.is_zero() && keep(&s.complex) {
                out.push(s.complex);
            }
        }
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, fixture: &FixtureSpec, opts: &SuiteOptions) -> Result<SuiteReport> {
    let alg = fixture.build()?;
    let mut rng = ChaCha8Rng::seed_from_u64(fixture.seed);
    let (checks, data) = match suite {
        Suite::Splice => splice(&alg, &mut rng, opts)?,
        Suite::LengthDistance => length_distance(&alg, &mut rng, opts)?,
        Suite::Stabilization => stabilization_suite(&alg)?,
        Suite::RigidRim => rigid_rim(&alg, &mut rng, opts)?,
        Suite::BigHomology => big_homology(&alg, opts)?,
        Suite::ArAxioms => ar_axioms(&alg)?,
        Suite::ProjectiveComponent => projective_component(&alg, opts)?,
        Suite::ThreeTerm => three_term(&alg, &mut rng, opts)?,
    };
    let passed = checks.iter().all(|c| !matches!(c.outcome, Outcome::Fail(_)));
    Ok(SuiteReport { suite, fixture: fixture.to_string(), seed: fixture.seed, passed, checks, data })
}

const MIN_TRIANGLES: usize = 20;

fn splice(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<(Vec<Check>, Value)> {
    let not_stalk = |x: &PerfectComplex| x.stalk_projective_degree().is_none();
    let mut objects: Vec<PerfectComplex> = sample_indecomposables(alg)?.into_iter().filter(not_stalk).collect();
    let want = MIN_TRIANGLES.max(opts.samples).saturating_sub(objects.len());
    objects.extend(random_indecomposables(alg, rng, want, 2..=4, not_stalk)?);

    let mut exact = Tally::new("short exact in every degree");
    let mut connecting = Tally::new("connecting maps vanish");
    for (k, z) in objects.iter().enumerate() {
        let t = ar_triangle_ending_at(z)?;
        let lo = t.a.lo().min(t.b.lo()).min(t.c.lo()) - 1;
        let hi = t.a.hi().max(t.b.hi()).max(t.c.hi()) + 1;
        let a1 = t.w.target();
        for i in lo..=hi {
            let (ha, hb, hc) = (homology(&t.a, i)?, homology(&t.b, i)?, homology(&t.c, i)?);
            let u = homology_map(&t.u, &ha, &hb)?;
            let v = homology_map(&t.v, &hb, &hc)?;
            let ok = u.is_injective() && v.is_surjective() && u.then(&v).is_zero() && hb.dim() == ha.dim() + hc.dim();
            exact.record(ok, || format!("triangle {k}, degree {i}"));
            let w = homology_map(&t.w, &hc, &homology(a1, i)?)?;
            connecting.record(w.is_zero(), || format!("triangle {k}, degree {i}"));
        }
    }
    let mut count = Tally::new("at least 20 triangles");
    count.record(objects.len() >= MIN_TRIANGLES, || format!("only {} triangles", objects.len()));
    Ok((vec![count.check(), exact.check(), connecting.check()], json!({ "triangles": objects.len() })))
}

fn length_distance(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<(Vec<Check>, Value)> {
    let mut objects = random_indecomposables(alg, rng, opts.samples, 2..=4, |_| true)?;
    objects.extend(sample_indecomposables(alg)?);
    let names = [
        "distance at most length - 1",
        "length = rim length + distance",
        "maximal distance only on nu-chains",
        "homology strings longer than distance",
        "isolated homology forces the rim",
    ];
    let mut tallies: Vec<Tally> = names.iter().map(|n| Tally::new(n)).collect();
    let mut col_law = Tally::new("length - depth constant along columns");
    let mut points = Vec::new();
    let mut maximal = 0;
    for (k, z) in objects.iter().enumerate() {
        let r = positional_predicates(z)?;
        for t in tallies.iter_mut() {
            match r.outcome(&t.name) {
                Some(Outcome::Pass) => t.record(true, String::new),
                Some(Outcome::Fail(m)) => t.record(false, || format!("sample {k}: {m}")),
                _ => {}
            }
        }
        if r.rim_distance + 1 == r.length {
            maximal += 1;
        }
        points.push(json!({ "length": r.length, "distance": r.rim_distance }));
        let (d, rim) = rim_of_column(z)?;
        let col = column(&rim, d + 1)?;
        let lens = col.iter().enumerate().map(|(i, c)| Ok(c.length()? as i64 - i as i64)).collect::<Result<Vec<_>>>()?;
        col_law.record(lens.windows(2).all(|w| w[0] == w[1]), || format!("sample {k}: length - depth {lens:?}"));
    }
    let mut checks: Vec<Check> = tallies.into_iter().map(Tally::check).collect();
    checks.push(col_law.check());
    Ok((checks, json!({ "samples": points, "at_maximal_distance": maximal })))
}

fn stabilization_suite(alg: &Arc<Algebra>) -> Result<(Vec<Check>, Value)> {
    let mut stable = Tally::new("one more step down leaves the module unchanged");
    let mut factors = Tally::new("composition factors match the wing rim");
    let mut middle = Tally::new("presentation components stabilize at the middle term");
    let mut hearts = Tally::new("projective components stabilize at the heart");
    let mut rows = Vec::new();
    for m in sample_modules(alg)? {
        let st = stabilization(&presentation_complex(&m)?)?;
        let label = format!("module with dims {:?}", m.dims());
        stable.record(st.stable, || label.clone());
        if let Some(ok) = st.wing_rim_factors {
            factors.record(ok, || label.clone());
        }
        let e = ar_sequence(&m)?.middle;
        let omega = syzygy(&m)?.0;
        // M = Omega^-1 S: the middle carries the injective hull of S besides
        // the stabilization module
        let expected = if omega.dim() == 1 {
            let p = injective_hull_of_simple(alg, &omega);
            iso(&Representation::direct_sum(&[&st.module, &p])?, &e)?
        } else {
            iso(&st.module, &e)?
        };
        middle.record(expected, || format!("{label}: stabilization module has dims {:?}", st.module.dims()));
        rows.push(json!({ "module": m.dims(), "sigma": st.module.dims(), "position": st.position }));
    }
    for v in 0..alg.num_vertices() {
        let st = stabilization(&PerfectComplex::stalk(alg, &[v], 0))?;
        let heart = Representation::projective(alg, v).heart()?;
        hearts.record(iso(&st.module, &heart)?, || format!("vertex {}", alg.vertex_label(v)));
        stable.record(st.stable, || format!("stalk at vertex {}", alg.vertex_label(v)));
        rows.push(json!({ "stalk": alg.vertex_label(v), "sigma": st.module.dims(), "position": st.position }));
    }
    Ok((vec![stable.check(), factors.check(), middle.check(), hearts.check()], json!({ "components": rows })))
}

fn injective_hull_of_simple(alg: &Arc<Algebra>, s: &Representation) -> Representation {
    (0..alg.num_vertices())
        .map(|v| Representation::projective(alg, v))
        .find(|p| p.socle().0.dims() == s.dims())
        .expect("self-injective algebras have injective projectives")
}

fn rigid_rim(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<(Vec<Check>, Value)> {
    let mut rim = Tally::new("rigid complexes lie on the rim");
    if !alg.is_symmetric() {
        return Ok((vec![rim.skip("algebra is not symmetric").check()], Value::Null));
    }
    let mut objects = sample_indecomposables(alg)?;
    for v in 0..alg.num_vertices() {
        for k in -1..=2 {
            objects.push(PerfectComplex::stalk(alg, &[v], k));
        }
    }
    objects.extend(random_indecomposables(alg, rng, opts.samples, 2..=4, |_| true)?);
    let mut rigid = 0;
    for (k, z) in objects.iter().enumerate() {
        let r = positional_predicates(z)?;
        if r.rigid {
            rigid += 1;
            rim.record(r.rim_distance == 0, || format!("sample {k} at distance {}", r.rim_distance));
        }
    }
    Ok((vec![rim.check()], json!({ "samples": objects.len(), "rigid": rigid })))
}

fn big_homology(alg: &Arc<Algebra>, opts: &SuiteOptions) -> Result<(Vec<Check>, Value)> {
    let mut on_rim = Tally::new("complex lies on the rim");
    let mut dims = Tally::new("stabilization dimension equals total homology");
    let mut stable = Tally::new("one more step down leaves the module unchanged");
    let mut increasing = Tally::new("dimensions strictly increase with length");
    let mut sigma = Vec::new();
    let mut totals = Vec::new();
    for &len in &opts.lengths {
        let x = big_homology_complex(alg, 0, len)?;
        let (d, _) = rim_distance(&x)?;
        on_rim.record(d == 0, || format!("length {len} at distance {d}"));
        let total: usize = x.degrees().map(|i| Ok(homology(&x, i)?.dim())).sum::<Result<usize>>()?;
        let st = stabilization(&x)?;
        dims.record(st.module.dim() == total, || format!("length {len}: {} vs {total}", st.module.dim()));
        stable.record(st.stable, || format!("length {len}"));
        if let Some(&prev) = sigma.last() {
            increasing.record(st.module.dim() > prev, || format!("length {len}: {} after {prev}", st.module.dim()));
        }
        sigma.push(st.module.dim());
        totals.push(total);
    }
    let checks = vec![on_rim.check(), dims.check(), stable.check(), increasing.check()];
    Ok((checks, json!({ "lengths": opts.lengths, "sigma_dims": sigma, "total_homology": totals })))
}

fn ar_axioms(alg: &Arc<Algebra>) -> Result<(Vec<Check>, Value)> {
    let sample = sample_objects(alg);
    let mut sequences = Tally::new("sequences exact and non-split");
    let mut tau = Tally::new("first term is nu Omega^2 M");
    let mut seq_triangles = Tally::new("sequence triangles satisfy the axioms");
    let mut triangles = Tally::new("triangles satisfy the axioms");
    let mut rows = Vec::new();
    for m in sample_modules(alg)? {
        let s = ar_sequence(&m)?;
        let label = format!("module with dims {:?}", m.dims());
        let r = s.verify()?;
        sequences.record(r.passed(), || format!("{label}: {r:?}"));
        let o2 = syzygy(&syzygy(&m)?.0)?.0;
        tau.record(iso(&homology(&s.triangle.a, 0)?.module, &nakayama_module(&o2)?)?, || label.clone());
        let tr = verify_ar_triangle(&s.triangle, &sample);
        seq_triangles.record(tr.passed(), || format!("{label}: {}", tr.failures().join(", ")));
        let middle: Vec<usize> =
            decompose(&s.middle, 0)?.iter().flat_map(|(x, k)| vec![x.dim(); *k]).collect();
        rows.push(json!({ "module": m.dims(), "tau": s.tau_m.dims(), "middle_summands": middle }));
    }
    for (k, z) in sample_indecomposables(alg)?.iter().enumerate() {
        let t = ar_triangle_ending_at(z)?;
        let tr = verify_ar_triangle(&t, &sample);
        triangles.record(tr.passed(), || format!("sample {k}: {}", tr.failures().join(", ")));
    }
    let checks = vec![sequences.check(), tau.check(), seq_triangles.check(), triangles.check()];
    Ok((checks, json!({ "sequences": rows })))
}

fn projective_component(alg: &Arc<Algebra>, opts: &SuiteOptions) -> Result<(Vec<Check>, Value)> {
    let mut chains = Tally::new("column below P_S is the nu-chain");
    let mut exact = Tally::new("meshes give exact sequences");
    let mut excluded = Tally::new("only meshes ending at stalks in degrees 0 and 1 are excluded");
    let mut hearts = Tally::new("stabilization module is the heart");
    let mut rows = Vec::new();
    for s in 0..alg.num_vertices() {
        let p = PerfectComplex::stalk(alg, &[s], 0);
        let slice = component_slice(&p, opts.depth, 3, DEFAULT_NODE_BUDGET)?;
        for d in 0..=opts.depth {
            let ok = complex_isomorphic(&slice.nodes[&(d, 0)], &nu_chain(alg, s, d)?)?;
            chains.record(ok, || format!("vertex {}, depth {d}", alg.vertex_label(s)));
        }
        let diagram = homology_diagram(&slice)?;
        for m in &diagram.meshes {
            let stalk = matches!(slice.nodes[&(m.depth, m.h + 1)].stalk_projective_degree(), Some(0 | 1));
            excluded.record((m.kind == MeshKind::Excluded) == stalk, || format!("mesh ({}, {})", m.depth, m.h));
            if m.kind != MeshKind::Excluded {
                exact.record(m.kind != MeshKind::NotExact, || format!("mesh ({}, {})", m.depth, m.h));
            }
        }
        let heart = Representation::projective(alg, s).heart()?;
        let st = stabilization(&p)?;
        hearts.record(iso(&st.module, &heart)?, || format!("vertex {}", alg.vertex_label(s)));
        let nodes: Vec<Value> = diagram
            .nodes
            .iter()
            .map(|(&(d, h), m)| json!({ "d": d, "h": h, "dims": m.dims() }))
            .collect();
        rows.push(json!({ "vertex": alg.vertex_label(s), "homology": nodes }));
    }
    let checks = vec![chains.check(), exact.check(), excluded.check(), hearts.check()];
    Ok((checks, json!({ "components": rows })))
}

/// Homology of a three-term complex from the top degree down.
fn homology3(z: &PerfectComplex) -> Result<[Representation; 3]> {
    let hi = z.hi();
    Ok([homology(z, hi)?.module, homology(z, hi - 1)?.module, homology(z, hi - 2)?.module])
}

/// `Rad`, heart and `P / Soc` of the three terms of a nu-chain.
fn nu_chain_pattern(z: &PerfectComplex, h: &[Representation; 3]) -> Result<bool> {
    let alg = z.algebra();
    let hi = z.hi();
    let (top, mid, bot) = (z.term(hi)[0], z.term(hi - 1)[0], z.term(hi - 2)[0]);
    let rad = Representation::projective(alg, top).radical().0;
    let heart = Representation::projective(alg, mid).heart()?;
    let bottom = Representation::projective(alg, bot);
    let soc = bottom.socle_spaces();
    let cosoc = bottom.quotient(&soc)?.0;
    Ok(iso(&h[0], &rad)? && iso(&h[1], &heart)? && iso(&h[2], &cosoc)?)
}

fn three_term(alg: &Arc<Algebra>, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<(Vec<Check>, Value)> {
    let is3 = |x: &PerfectComplex| x.length().map(|l| l == 3).unwrap_or(false);
    let mut objects: Vec<PerfectComplex> = sample_indecomposables(alg)?.into_iter().filter(is3).collect();
    for s in 0..alg.num_vertices() {
        objects.push(nu_chain(alg, s, 2)?);
    }
    // (Omega^2 M, E_M, nu M) for every sampled module
    let mut patterns = Vec::new();
    for m in sample_modules(alg)? {
        let t = ar_triangle_ending_at(&presentation_complex(&m)?)?;
        for s in decompose_complex(&t.b, 0)? {
            if is3(&s.complex) {
                objects.push(s.complex);
            }
        }
        let o2 = syzygy(&syzygy(&m)?.0)?.0;
        patterns.push([o2, ar_sequence(&m)?.middle, nakayama_module(&m)?]);
    }
    objects.extend(random_indecomposables(alg, rng, opts.samples / 2, 3..=3, is3)?);

    let mut classified = Tally::new("every three-term complex is within distance 2");
    let mut class1 = Tally::new("distance 1 carries the pattern (Omega^2 M, E_M, nu M)");
    let mut class2 = Tally::new("distance 2 is a nu-chain with homology (Rad, heart, P / Soc)");
    let mut class0 = Tally::new("rim complexes are neither nu-chains nor of the distance 1 pattern");
    let mut counts = [0usize; 3];
    for (k, z) in objects.iter().enumerate() {
        let (d, _) = rim_distance(z)?;
        let h = homology3(z)?;
        let mut pattern = false;
        for p in &patterns {
            if iso(&h[0], &p[0])? && iso(&h[1], &p[1])? && iso(&h[2], &p[2])? {
                pattern = true;
                break;
            }
        }
        let chain = is_shifted_nu_chain(z, 2)?;
        classified.record(d <= 2, || format!("sample {k} at distance {d}"));
        match d {
            0 => class0.record(!chain && !pattern, || format!("sample {k}")),
            1 => class1.record(pattern && !chain, || format!("sample {k}")),
            2 => class2.record(chain && nu_chain_pattern(z, &h)?, || format!("sample {k}")),
            _ => {}
        }
        if d <= 2 {
            counts[d] += 1;
        }
    }
    let checks = vec![classified.check(), class0.check(), class1.check(), class2.check()];
    Ok((checks, json!({ "samples": objects.len(), "by_distance": counts })))
}
