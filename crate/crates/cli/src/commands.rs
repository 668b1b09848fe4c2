use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Subcommand};
use modinv::cartan_frac::q_tower;
use modinv::dickson::{dickson_by_moore, dickson_by_roots, DEFAULT_DICKSON_CAP};
use modinv::group_action::{act, GroupElement};
use modinv::json::{FractionJson, GroupJson, IdealJson, PolynomialJson, RingJson};
use modinv::localcoh::{
    colimit_window, depth_probe, dickson_containment_probe, pstar_closure_check,
    window_annihilator, CechComplex, DepthVerdict, DicksonProbe, GeneratorContainment,
    GradedCohomologyWindow, Instability, WindowAnnihilator, DEFAULT_DEGREE_CAP,
    DEFAULT_POWER_BOUND, DEFAULT_T_MAX,
};
use modinv::poly::Matrix;
use modinv::steenrod::reduced_power;
use modinv::{Elem, Field, PolyRing, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::report::{Check, Outcome, Status};
use crate::setup::*;

fn poly(f: &Polynomial) -> Value {
    serde_json::to_value(PolynomialJson::from_poly(f)).expect("polynomials serialize")
}

fn polys(fs: &[Polynomial]) -> Value {
    Value::Array(fs.iter().map(poly).collect())
}

// ---------------------------------------------------------------- dickson

#[derive(Args, Debug)]
pub struct DicksonArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Cross-check against the determinant construction, the expected
    /// degrees and GL-invariance.
    #[arg(long)]
    check: bool,
    /// Largest q^d accepted.
    #[arg(long, default_value_t = DEFAULT_DICKSON_CAP)]
    cap: u64,
}

pub fn dickson(a: &DicksonArgs) -> Result<Outcome> {
    let ring = a.ring.ring()?;
    let alg = dickson_by_roots(&ring, a.cap)?;
    let q = ring.field().order() as u64;
    let d = ring.nvars() as u32;
    let gens: Vec<Value> = alg
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| json!({"index": i, "degree": alg.expected_degree(i), "polynomial": poly(g)}))
        .collect();
    let mut out = Outcome::new(json!({
        "ring": RingJson::from_ring(&ring),
        "q": q,
        "d": d,
        "generators": gens,
    }));
    if a.check {
        let moore = dickson_by_moore(&ring, a.cap)?;
        let differing: Vec<usize> = (0..alg.dim())
            .filter(|&i| alg.generator(i) != moore.generator(i))
            .collect();
        let mut c = Check::from_bool("roots-equal-determinants", differing.is_empty(), || {
            format!("generators {differing:?} differ")
        });
        if let Some(&i) = differing.first() {
            c = c.witness(json!({"index": i, "roots": poly(&alg.generators()[i]), "determinants": poly(&moore.generators()[i])}));
        }
        out = out.check(c);
        let wrong: Vec<usize> = (0..alg.dim())
            .filter(|&i| alg.generators()[i].homogeneous_degree() != Some(alg.expected_degree(i)))
            .collect();
        out = out.check(Check::from_bool(
            "degrees-are-q^d-minus-q^i",
            wrong.is_empty(),
            || format!("generators {wrong:?} have unexpected degree"),
        ));
        out = out.check(Check::from_bool(
            "gl-invariant",
            alg.is_gl_invariant()?,
            || "some generator is moved by a generator of GL(d, q)".into(),
        ));
        let top = q.pow(d) as u32;
        out = out.check(Check::from_bool(
            "algebraically-independent",
            alg.monomials_independent_up_to(top)?,
            || format!("a linear relation among Dickson monomials of degree <= {top}"),
        ));
    }
    Ok(out)
}

// --------------------------------------------------------------- steenrod

#[derive(Subcommand, Debug)]
pub enum SteenrodCommand {
    /// Applies P^i to a JSON polynomial.
    Apply(ApplyArgs),
    /// Seeded randomized property checks.
    Check(SteenrodCheckArgs),
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    #[arg(long)]
    i: u32,
    /// JSON polynomial, `-` for stdin.
    #[arg(long, default_value = "-")]
    input: PathBuf,
}

pub fn steenrod_apply(a: &ApplyArgs) -> Result<Outcome> {
    let j: PolynomialJson = read_json(&a.input)?;
    let f = in_file(&a.input, j.to_poly())?;
    let g = reduced_power(a.i, &f);
    Ok(Outcome::new(json!({
        "i": a.i,
        "input": poly(&f),
        "result": poly(&g),
    })))
}

#[derive(Args, Debug)]
pub struct SteenrodCheckArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Number of random samples per property.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Largest degree of a random polynomial.
    #[arg(long, default_value_t = 6)]
    max_degree: u32,
}

fn random_elem(rng: &mut ChaCha8Rng, field: &Field) -> Elem {
    let k = rng.gen_range(0..field.order());
    field.elements().nth(k).expect("index below the order")
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &PolyRing, max_degree: u32) -> Polynomial {
    let deg = rng.gen_range(0..=max_degree);
    let basis = ring.degree_basis(deg);
    let coords: Vec<Elem> = (0..basis.len())
        .map(|_| random_elem(rng, ring.field()))
        .collect();
    ring.from_coords(&coords, deg)
}

fn random_invertible(rng: &mut ChaCha8Rng, field: &Field, d: usize) -> Result<GroupElement> {
    loop {
        let rows = (0..d)
            .map(|_| (0..d).map(|_| random_elem(rng, field)).collect())
            .collect();
        if let Ok(g) = GroupElement::new(Matrix::from_rows(field, rows)?) {
            return Ok(g);
        }
    }
}

pub fn steenrod_check(a: &SteenrodCheckArgs, seed: u64) -> Result<Outcome> {
    let ring = a.ring.ring()?;
    let field = ring.field().clone();
    let q = field.order() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cartan = Check::pass("cartan-formula");
    let mut equivariance = Check::pass("equivariance");
    let mut top = Check::pass("top-power-and-vanishing");
    for _ in 0..a.samples {
        let f = random_poly(&mut rng, &ring, a.max_degree);
        let g = random_poly(&mut rng, &ring, a.max_degree);
        let fg = &f * &g;
        let k = rng.gen_range(0..=2 * a.max_degree);
        let mut rhs = ring.zero();
        for i in 0..=k {
            rhs = &rhs + &(&reduced_power(i, &f) * &reduced_power(k - i, &g));
        }
        if cartan.status == Status::Pass && reduced_power(k, &fg) != rhs {
            cartan = Check::new("cartan-formula", Status::Fail)
                .witness(json!({"k": k, "f": poly(&f), "g": poly(&g)}));
        }
        let sigma = random_invertible(&mut rng, &field, ring.nvars())?;
        let i = rng.gen_range(0..=a.max_degree);
        if equivariance.status == Status::Pass
            && act(&sigma, &reduced_power(i, &f))? != reduced_power(i, &act(&sigma, &f)?)
        {
            equivariance =
                Check::new("equivariance", Status::Fail).witness(json!({"i": i, "f": poly(&f)}));
        }
        if let Some(n) = f.homogeneous_degree() {
            if top.status == Status::Pass
                && (reduced_power(n, &f) != f.pow(q) || !reduced_power(n + 1, &f).is_zero())
            {
                top = Check::new("top-power-and-vanishing", Status::Fail)
                    .witness(json!({"f": poly(&f)}));
            }
        }
    }
    Ok(Outcome {
        checks: vec![cartan, equivariance, top],
        result: json!({"ring": RingJson::from_ring(&ring), "samples": a.samples, "max_degree": a.max_degree}),
    })
}

// ------------------------------------------------------------- invariants

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Degrees to compute, `a..b` inclusive.
    #[arg(long, default_value = "0..6", value_parser = parse_degree_range)]
    degrees: (u32, u32),
    /// Include a basis of each graded piece.
    #[arg(long)]
    basis: bool,
}

pub fn invariants(a: &InvariantsArgs) -> Result<Outcome> {
    let setting = a.group.setting()?;
    let mut pieces = Vec::new();
    for n in a.degrees.0..=a.degrees.1 {
        let piece = setting.invariants.piece(n);
        let mut entry = json!({"degree": n, "dim": piece.dim()});
        if a.basis {
            entry["basis"] = polys(piece.basis());
        }
        pieces.push(entry);
    }
    Ok(Outcome::new(json!({
        "ring": RingJson::from_ring(setting.ring()),
        "group": GroupJson::from_group(&setting.group),
        "group_order": setting.group.order(),
        "pieces": pieces,
    })))
}

// ----------------------------------------------------------------- cartan

#[derive(Subcommand, Debug)]
pub enum CartanCommand {
    /// Applies Q^r to a JSON fraction.
    Qr(QrArgs),
}

#[derive(Args, Debug)]
pub struct QrArgs {
    #[arg(long)]
    r: u32,
    /// JSON fraction, `-` for stdin.
    #[arg(long, default_value = "-")]
    input: PathBuf,
    /// Check invariance of the input under this group.
    #[arg(long, conflicts_with = "preset")]
    group: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<GroupPreset>,
    /// Also report Q^0 .. Q^{r-1}.
    #[arg(long)]
    tower: bool,
}

pub fn cartan_qr(a: &QrArgs) -> Result<Outcome> {
    let j: FractionJson = read_json(&a.input)?;
    let u = in_file(&a.input, j.to_fraction())?;
    let ring = u.ring().clone();
    let tower = q_tower(&u, a.r);
    let frac = |f: &modinv::cartan_frac::Fraction| {
        serde_json::to_value(FractionJson::from_fraction(f)).expect("fractions serialize")
    };
    let mut result = json!({
        "r": a.r,
        "input": frac(&u),
        "result": frac(tower.last().expect("tower is nonempty")),
        "degree": tower.last().and_then(|f| f.degree()),
    });
    if a.tower {
        result["tower"] = Value::Array(tower.iter().map(frac).collect());
    }
    let mut out = Outcome::new(result);
    let group = match (&a.group, a.preset) {
        (Some(path), _) => {
            let g: GroupJson = read_json(path)?;
            Some(in_file(path, g.to_group(&ring, 200_000))?)
        }
        (None, Some(GroupPreset::Trivial)) | (None, None) => None,
        (None, Some(GroupPreset::FullGl)) => {
            Some(modinv::group_action::Group::general_linear(&ring, 200_000)?)
        }
        (None, Some(GroupPreset::CyclicTransvection)) => {
            Some(modinv::group_action::Group::cyclic_transvection(&ring)?)
        }
    };
    if let Some(g) = group {
        out = out.check(Check::from_bool(
            "input-invariant",
            u.check_invariant(&g)?,
            || "numerator or base is moved by the group".into(),
        ));
        let moved = tower
            .iter()
            .position(|f| !f.check_invariant(&g).unwrap_or(false));
        out = out.check(Check::from_bool(
            "result-invariant",
            moved.is_none(),
            || format!("Q^{} of the input is not invariant", moved.unwrap_or(0)),
        ));
    }
    Ok(out)
}

// --------------------------------------------------------------- localcoh

#[derive(Args, Debug)]
pub struct WindowArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    ideal: IdealArgs,
    /// Cohomological index.
    #[arg(long)]
    i: usize,
    /// Internal degrees `a..b` inclusive.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: (i64, i64),
    /// Largest truncation power tried.
    #[arg(long, default_value_t = DEFAULT_T_MAX, value_parser = positive)]
    tmax: u32,
    /// Largest polynomial degree of a cochain space.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP, value_parser = positive)]
    cap: u32,
    /// Largest q^d accepted when building Dickson invariants.
    #[arg(long, default_value_t = DEFAULT_DICKSON_CAP)]
    dickson_cap: u64,
}

struct Computed {
    setting: Setting,
    window: GradedCohomologyWindow,
}

impl WindowArgs {
    fn compute(&self) -> Result<Computed> {
        let setting = self.group.setting()?;
        let ideal = self.ideal.ideal(&setting, self.dickson_cap)?;
        let complex = Arc::new(CechComplex::new(
            setting.invariants.clone(),
            ideal,
            self.cap,
        )?);
        let window = colimit_window(complex, self.i, self.window, self.tmax)?;
        Ok(Computed { setting, window })
    }
}

fn window_json(w: &GradedCohomologyWindow) -> Value {
    let mut degrees = Map::new();
    for e in w.entries() {
        let mut entry =
            json!({"dim": e.dim, "stabilized": e.stabilized, "truncation": e.truncation});
        match &e.instability {
            Some(Instability::TMaxReached) => {
                entry["instability"] = json!({"kind": "t-max-reached"})
            }
            Some(Instability::DegreeCap { truncation }) => {
                entry["instability"] = json!({"kind": "degree-cap", "truncation": truncation})
            }
            None => {}
        }
        degrees.insert(e.degree.to_string(), entry);
    }
    let ideal = IdealJson::from_generators(w.complex().ideal().generators());
    json!({
        "ring": RingJson::from_ring(w.complex().invariants().ring()),
        "group_order": w.complex().invariants().group().order(),
        "ideal": ideal,
        "i": w.index(),
        "window": [w.window().0, w.window().1],
        "t_max": w.t_max(),
        "degree_cap": w.complex().degree_cap(),
        "precision": "window",
        "degrees": degrees,
    })
}

fn stabilization_check(w: &GradedCohomologyWindow) -> Check {
    let open: Vec<i64> = w
        .entries()
        .iter()
        .filter(|e| !e.stabilized)
        .map(|e| e.degree)
        .collect();
    if open.is_empty() {
        Check::pass("stabilized")
    } else {
        Check::new("stabilized", Status::Inconclusive)
            .reason(format!("degrees {open:?} did not stabilize"))
    }
}

#[derive(Args, Debug)]
pub struct LocalcohArgs {
    #[command(flatten)]
    window: WindowArgs,
}

pub fn localcoh(a: &LocalcohArgs) -> Result<Outcome> {
    let c = a.window.compute()?;
    Ok(Outcome::new(window_json(&c.window)).check(stabilization_check(&c.window)))
}

// ------------------------------------------------------------------ probe

#[derive(Subcommand, Debug)]
pub enum ProbeCommand {
    /// Radical membership of Dickson invariants in the window annihilator.
    Main(ProbeMainArgs),
    /// Regularity of the Dickson sequence in the invariant ring.
    Ls(ProbeLsArgs),
    /// Closure of the window annihilator under the reduced powers.
    Annp(ProbeAnnpArgs),
}

#[derive(Args, Debug)]
pub struct AnnihilatorArgs {
    /// Largest annihilator degree computed.
    #[arg(long, default_value_t = 8)]
    ann_cap: u32,
}

fn annihilator_json(a: &WindowAnnihilator) -> Value {
    let pieces: Vec<Value> = a
        .pieces
        .iter()
        .map(|p| {
            json!({
                "degree": p.degree,
                "dim": p.dim(),
                "ambient_dim": p.ambient_dim,
                "complete": p.is_complete(),
                "excluded_class_degrees": p.excluded,
                "basis": polys(&p.basis),
            })
        })
        .collect();
    json!({"degree_cap": a.degree_cap, "pieces": pieces})
}

#[derive(Args, Debug)]
pub struct ProbeMainArgs {
    #[command(flatten)]
    window: WindowArgs,
    #[command(flatten)]
    ann: AnnihilatorArgs,
    /// Largest power tried in radical membership.
    #[arg(long, default_value_t = DEFAULT_POWER_BOUND, value_parser = positive)]
    power_bound: u32,
    /// Test `d_{d,0}, .., d_{d,g-1}`; defaults to all of them.
    #[arg(long)]
    generators: Option<usize>,
}

pub fn probe_main(a: &ProbeMainArgs) -> Result<Outcome> {
    let c = a.window.compute()?;
    let alg = dickson_algebra(c.setting.ring(), a.window.dickson_cap)?;
    let g = a.generators.unwrap_or(alg.dim());
    let ann = window_annihilator(&c.window, a.ann.ann_cap)?;
    let probe = dickson_containment_probe(&ann, &c.window, &alg, g, a.power_bound)?;
    let mut out = Outcome::new(json!({
        "window": window_json(&c.window),
        "annihilator": annihilator_json(&ann),
        "power_bound": a.power_bound,
        "generators_tested": g,
    }));
    out = match probe {
        DicksonProbe::VacuousPass => {
            out.check(Check::pass("dickson-radical").reason("window is zero"))
        }
        DicksonProbe::HypothesisNotMet => out.check(
            Check::new("dickson-radical", Status::NotApplicable)
                .reason("hypothesis not met: no nonzero annihilator in a complete degree"),
        ),
        DicksonProbe::Inconclusive { reason } => {
            out.check(Check::new("dickson-radical", Status::Inconclusive).reason(reason))
        }
        DicksonProbe::Checked(items) => {
            for (j, status) in items {
                let name = format!("d_{{{},{j}}}-in-radical", alg.dim());
                let c = match status {
                    GeneratorContainment::Contained { power } => {
                        Check::pass(name).witness(json!({"power": power}))
                    }
                    GeneratorContainment::NotFoundWithinBound { bound } => {
                        Check::new(name, Status::Inconclusive)
                            .reason(format!("no power up to {bound} annihilates the window"))
                    }
                    GeneratorContainment::Inconclusive { reason } => {
                        Check::new(name, Status::Inconclusive).reason(reason)
                    }
                };
                out = out.check(c);
            }
            out
        }
    };
    Ok(out.check(stabilization_check(&c.window)))
}

#[derive(Args, Debug)]
pub struct ProbeLsArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Largest degree checked; defaults to 2 q^d.
    #[arg(long)]
    cap: Option<u32>,
    /// Depth the invariant ring is known to have.
    #[arg(long)]
    expect_depth: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DICKSON_CAP)]
    dickson_cap: u64,
}

fn depth_steps_json(report: &modinv::localcoh::DepthReport) -> Value {
    let steps: Vec<Value> = report
        .steps
        .iter()
        .map(|s| {
            let (verdict, extra) = match &s.verdict {
                DepthVerdict::Regular => ("regular", Value::Null),
                DepthVerdict::NotRegular { witness } => ("not-regular", poly(witness)),
                DepthVerdict::Inconclusive { reason } => {
                    ("inconclusive", Value::String(reason.clone()))
                }
            };
            let mut v = json!({"position": s.position, "degree": s.degree, "verdict": verdict});
            match verdict {
                "not-regular" => v["witness"] = extra,
                "inconclusive" => v["reason"] = extra,
                _ => {}
            }
            v
        })
        .collect();
    json!({"degree_cap": report.degree_cap, "regular_prefix": report.regular_prefix(), "steps": steps})
}

pub fn probe_ls(a: &ProbeLsArgs) -> Result<Outcome> {
    let setting = a.group.setting()?;
    let ring = setting.ring();
    let alg = dickson_algebra(ring, a.dickson_cap)?;
    let q = ring.field().order() as u32;
    let cap = a.cap.unwrap_or(2 * q.pow(ring.nvars() as u32));
    let seq = dickson_sequence(&alg);
    let report = depth_probe(&seq, &setting.invariants, cap)?;
    let prefix = report.regular_prefix();
    let blocked = report.steps.get(prefix).map(|s| &s.verdict);
    let mut check = match (a.expect_depth, blocked) {
        (_, Some(DepthVerdict::Inconclusive { reason })) => {
            Check::new("dickson-sequence", Status::Inconclusive)
                .reason(format!("position {prefix}: {reason}"))
        }
        (None, _) => Check::pass("dickson-sequence"),
        (Some(r), _) if r == prefix => Check::pass("dickson-sequence"),
        (Some(r), _) => Check::new("dickson-sequence", Status::Fail).reason(format!(
            "regular prefix has length {prefix}, expected depth {r}"
        )),
    };
    if let Some(DepthVerdict::NotRegular { witness }) = blocked {
        check = check.witness(json!({"position": prefix, "zero_divisor": poly(witness)}));
    }
    Ok(Outcome::new(json!({
        "ring": RingJson::from_ring(ring),
        "group_order": setting.group.order(),
        "sequence": polys(&seq),
        "depth": depth_steps_json(&report),
        "precision": "window",
    }))
    .check(check))
}

#[derive(Args, Debug)]
pub struct ProbeAnnpArgs {
    #[command(flatten)]
    window: WindowArgs,
    #[command(flatten)]
    ann: AnnihilatorArgs,
}

pub fn probe_annp(a: &ProbeAnnpArgs) -> Result<Outcome> {
    let c = a.window.compute()?;
    let ann = window_annihilator(&c.window, a.ann.ann_cap)?;
    let report = pstar_closure_check(&ann, &c.window)?;
    let mut check = Check::from_bool("pstar-closure", report.passes(), || {
        format!("{} violations", report.violations.len())
    });
    if let Some(v) = report.violations.first() {
        check = check
            .witness(json!({"f": poly(&v.f), "power": v.power, "class_degree": v.class_degree}));
    }
    Ok(Outcome::new(json!({
        "window": window_json(&c.window),
        "annihilator": annihilator_json(&ann),
        "checked": report.checked,
        "skipped_above_cap": report.skipped_above_cap,
    }))
    .check(check)
    .check(stabilization_check(&c.window)))
}

// ------------------------------------------------------------------ depth

#[derive(Args, Debug)]
pub struct DepthArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Sequence as a JSON ideal (generators in order).
    #[arg(long, conflicts_with = "dickson")]
    sequence: Option<PathBuf>,
    /// Use the Dickson sequence `d_{d,d-1}, .., d_{d,0}`.
    #[arg(long)]
    dickson: bool,
    /// Largest degree checked.
    #[arg(long, default_value_t = 16)]
    cap: u32,
    #[arg(long, default_value_t = DEFAULT_DICKSON_CAP)]
    dickson_cap: u64,
}

pub fn depth(a: &DepthArgs) -> Result<Outcome> {
    let setting = a.group.setting()?;
    let seq = match (&a.sequence, a.dickson) {
        (Some(path), _) => {
            let j: IdealJson = read_json(path)?;
            in_file(path, j.to_generators(setting.ring()))?
        }
        (None, true) => dickson_sequence(&dickson_algebra(setting.ring(), a.dickson_cap)?),
        (None, false) => bail!("give --sequence FILE or --dickson"),
    };
    if seq.is_empty() {
        return Err(anyhow!("the sequence is empty"));
    }
    let report = depth_probe(&seq, &setting.invariants, a.cap)?;
    let inconclusive = report.steps.iter().find_map(|s| match &s.verdict {
        DepthVerdict::Inconclusive { reason } => Some(format!("position {}: {reason}", s.position)),
        _ => None,
    });
    let check = match inconclusive {
        Some(reason) => Check::new("depth-probe", Status::Inconclusive).reason(reason),
        None => Check::pass("depth-probe"),
    };
    Ok(Outcome::new(json!({
        "ring": RingJson::from_ring(setting.ring()),
        "group_order": setting.group.order(),
        "sequence": polys(&seq),
        "depth": depth_steps_json(&report),
        "precision": "window",
    }))
    .check(check))
}
