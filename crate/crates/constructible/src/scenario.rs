//! Scenario execution: resolve definitions, run checks (optionally in
//! parallel), and emit a deterministic JSON report.
//!
//! Reports are byte-identical across runs and across worker counts for a
//! fixed scenario and seed: checks are seeded individually from the master
//! seed and the check id, results are collected in scenario order, and
//! timings are recorded only on request.

use crate::calculus::{
    boundary_stalk, cech_sum, dual, euler_integral, euler_integral_c, exc_pullback,
    extend_by_zero, nearby, open_pushforward, pullback, pushforward, pushforward_c, restrict,
};
use crate::cellset::CellSet;
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::function::Function;
use crate::map::SimplicialMap;
use crate::models::{self, square_components, ModelSpace, Registry};
use crate::product::graph_embed;
use crate::schema::{
    ActionDef, CheckBody, CheckDef, CoverDef, ExpectDef, MapDef, ScenarioDef, SquareDef,
};
use crate::traces::{compare_traces, GroupAction, VertexPerm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::sync::Arc;

// ---------------------------------------------------------------------------
// Deterministic seeding
// ---------------------------------------------------------------------------

/// Default master seed.
pub const DEFAULT_SEED: u64 = 1729;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn fnv1a64(text: &str) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in text.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// The per-check RNG: independent of check order and worker count.
fn check_rng(master_seed: u64, check_id: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(master_seed ^ fnv1a64(check_id)))
}

// ---------------------------------------------------------------------------
// Resolution environment
// ---------------------------------------------------------------------------

struct LocalMap {
    map: SimplicialMap,
    source: String,
    target: String,
}

struct LocalSquare {
    map: String,
    base: CellSet,
}

struct LocalCover {
    space: String,
    sub: CellSet,
    boundary: CellSet,
    pieces: Vec<CellSet>,
}

/// Name-resolution scope for one scenario: local definitions first, then
/// the curated model registry.
pub struct Env {
    registry: &'static Registry,
    complexes: BTreeMap<String, Arc<Complex>>,
    spaces: BTreeMap<String, CellSet>,
    functions: BTreeMap<String, Function>,
    maps: BTreeMap<String, LocalMap>,
    actions: BTreeMap<String, (String, Vec<VertexPerm>)>,
    squares: BTreeMap<String, LocalSquare>,
    covers: BTreeMap<String, LocalCover>,
}

enum SpaceRef<'a> {
    Local(&'a CellSet),
    Model(&'a ModelSpace),
}

impl Env {
    /// Builds the scope from a scenario's local definitions, validating
    /// everything eagerly.
    pub fn new(def: &ScenarioDef) -> Result<Env> {
        let mut env = Env {
            registry: models::registry(),
            complexes: BTreeMap::new(),
            spaces: BTreeMap::new(),
            functions: BTreeMap::new(),
            maps: BTreeMap::new(),
            actions: BTreeMap::new(),
            squares: BTreeMap::new(),
            covers: BTreeMap::new(),
        };
        for cd in &def.complexes {
            let complex = cd.build()?;
            if env.complexes.insert(cd.name.clone(), complex).is_some() {
                return Err(Error::Schema(format!("duplicate complex '{}'", cd.name)));
            }
        }
        for sd in &def.spaces {
            let complex = env.complexes.get(&sd.complex).ok_or_else(|| {
                Error::Schema(format!(
                    "space '{}' references unknown complex '{}'",
                    sd.name, sd.complex
                ))
            })?;
            let cells = sd.cells.build(complex)?;
            if env.spaces.insert(sd.name.clone(), cells).is_some() {
                return Err(Error::Schema(format!("duplicate space '{}'", sd.name)));
            }
        }
        for fd in &def.functions {
            let space = env.space_cells(&fd.space)?.clone();
            let f = fd.build(&space)?;
            if env.functions.insert(fd.name.clone(), f).is_some() {
                return Err(Error::Schema(format!("duplicate function '{}'", fd.name)));
            }
        }
        for md in &def.maps {
            let local = env.build_map(md)?;
            if env.maps.insert(md.name.clone(), local).is_some() {
                return Err(Error::Schema(format!("duplicate map '{}'", md.name)));
            }
        }
        for ad in &def.actions {
            let generators = Env::build_generators(ad)?;
            env.space_cells(&ad.space)?;
            if env
                .actions
                .insert(ad.name.clone(), (ad.space.clone(), generators))
                .is_some()
            {
                return Err(Error::Schema(format!("duplicate action '{}'", ad.name)));
            }
        }
        for sq in &def.squares {
            let local = env.build_square(sq)?;
            if env.squares.insert(sq.name.clone(), local).is_some() {
                return Err(Error::Schema(format!("duplicate square '{}'", sq.name)));
            }
        }
        for cv in &def.covers {
            let local = env.build_cover(cv)?;
            if env.covers.insert(cv.name.clone(), local).is_some() {
                return Err(Error::Schema(format!("duplicate cover '{}'", cv.name)));
            }
        }
        Ok(env)
    }

    /// The registry-only scope used by the expression evaluator.
    pub fn registry_only() -> Env {
        Env::new(&ScenarioDef {
            name: String::new(),
            description: String::new(),
            complexes: vec![],
            spaces: vec![],
            functions: vec![],
            maps: vec![],
            actions: vec![],
            squares: vec![],
            covers: vec![],
            checks: vec![],
        })
        .expect("empty scope always builds")
    }

    fn build_map(&self, md: &MapDef) -> Result<LocalMap> {
        let source = self.space_cells(&md.source)?.clone();
        let target = self.space_cells(&md.target)?.clone();
        let map = SimplicialMap::new(source, target, md.vertex_map())?;
        Ok(LocalMap {
            map,
            source: md.source.clone(),
            target: md.target.clone(),
        })
    }

    fn build_generators(ad: &ActionDef) -> Result<Vec<VertexPerm>> {
        ad.generators
            .iter()
            .map(|pairs| VertexPerm::new(pairs.iter().copied()))
            .collect()
    }

    fn build_square(&self, sq: &SquareDef) -> Result<LocalSquare> {
        let pi = self.map_for(&sq.map)?;
        let base = sq.base.build(pi.target().complex())?;
        Ok(LocalSquare {
            map: sq.map.clone(),
            base,
        })
    }

    fn build_cover(&self, cv: &CoverDef) -> Result<LocalCover> {
        let space = self.space_cells(&cv.space)?.clone();
        let complex = space.complex();
        let sub = cv.sub.build(complex)?;
        let boundary = cv.boundary.build(complex)?;
        let pieces = cv
            .pieces
            .iter()
            .map(|p| p.build(complex))
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalCover {
            space: cv.space.clone(),
            sub,
            boundary,
            pieces,
        })
    }

    fn space_ref(&self, name: &str) -> Result<SpaceRef<'_>> {
        if let Some(cells) = self.spaces.get(name) {
            return Ok(SpaceRef::Local(cells));
        }
        Ok(SpaceRef::Model(self.registry.space(name)?))
    }

    /// The cell set behind a space name.
    pub fn space_cells(&self, name: &str) -> Result<&CellSet> {
        match self.space_ref(name)? {
            SpaceRef::Local(cells) => Ok(cells),
            SpaceRef::Model(ms) => Ok(&ms.space),
        }
    }

    /// The test strata of a space: curated strata for model spaces, every
    /// cell separately for scenario-local spaces.
    fn strata(&self, name: &str) -> Result<Vec<CellSet>> {
        match self.space_ref(name)? {
            SpaceRef::Model(ms) => Ok(ms.strata.clone()),
            SpaceRef::Local(cells) => Ok(cells
                .members()
                .iter()
                .map(|&id| {
                    CellSet::new(cells.complex().clone(), vec![id])
                        .expect("a single cell is order-convex")
                })
                .collect()),
        }
    }

    /// The map behind a map name, with its source and target space names.
    fn map_entry(&self, name: &str) -> Result<(&SimplicialMap, &str, &str)> {
        if let Some(lm) = self.maps.get(name) {
            return Ok((&lm.map, &lm.source, &lm.target));
        }
        let mm = self.registry.map(name)?;
        Ok((&mm.map, mm.source, mm.target))
    }

    fn map_for(&self, name: &str) -> Result<&SimplicialMap> {
        Ok(self.map_entry(name)?.0)
    }

    fn action_parts(&self, name: &str) -> Result<(&CellSet, &[VertexPerm])> {
        if let Some((space, generators)) = self.actions.get(name) {
            return Ok((self.space_cells(space)?, generators));
        }
        let am = self.registry.action(name)?;
        Ok((self.space_cells(am.space)?, &am.generators))
    }

    fn square_parts(&self, name: &str) -> Result<(&SimplicialMap, &CellSet, &str)> {
        if let Some(ls) = self.squares.get(name) {
            let (map, source, _) = self.map_entry(&ls.map)?;
            return Ok((map, &ls.base, source));
        }
        let sq = self.registry.square(name)?;
        let (map, source, _) = self.map_entry(sq.map)?;
        Ok((map, &sq.base, source))
    }

    fn cover_parts(&self, name: &str) -> Result<(&CellSet, &CellSet, &CellSet, &[CellSet])> {
        if let Some(lc) = self.covers.get(name) {
            return Ok((
                self.space_cells(&lc.space)?,
                &lc.sub,
                &lc.boundary,
                &lc.pieces,
            ));
        }
        let cm = self.registry.cover(name)?;
        Ok((
            self.space_cells(cm.space)?,
            &cm.sub,
            &cm.boundary,
            &cm.pieces,
        ))
    }

    /// Resolves a function token: a scenario-defined function name, or one
    /// of the built-in forms `one:<space>`, `zero:<space>`,
    /// `indicator:<space>:<subspace>`.
    pub fn function(&self, token: &str) -> Result<Function> {
        if let Some(f) = self.functions.get(token) {
            return Ok(f.clone());
        }
        if let Some(space) = token.strip_prefix("one:") {
            return Ok(Function::one(self.space_cells(space)?.clone()));
        }
        if let Some(space) = token.strip_prefix("zero:") {
            return Ok(Function::zero(self.space_cells(space)?.clone()));
        }
        if let Some(rest) = token.strip_prefix("indicator:") {
            let (space, sub) = rest.split_once(':').ok_or_else(|| {
                Error::InvalidArgs(format!(
                    "indicator token '{token}' needs the form indicator:<space>:<subspace>"
                ))
            })?;
            return Function::indicator(
                self.space_cells(space)?.clone(),
                self.space_cells(sub)?,
            );
        }
        Err(Error::UnknownReference(format!("function '{token}'")))
    }

    /// The test basis for a check: explicit tokens if given, otherwise the
    /// stratum indicators of `space_name` plus the constant 1 and (when
    /// requested) one seeded random function.
    fn basis(
        &self,
        space_name: &str,
        explicit: &[String],
        rng: &mut ChaCha8Rng,
        with_random: bool,
    ) -> Result<Vec<(String, Function)>> {
        if !explicit.is_empty() {
            return explicit
                .iter()
                .map(|token| Ok((token.clone(), self.function(token)?)))
                .collect();
        }
        let space = self.space_cells(space_name)?;
        let mut basis = vec![(
            format!("one:{space_name}"),
            Function::one(space.clone()),
        )];
        for (i, stratum) in self.strata(space_name)?.iter().enumerate() {
            basis.push((
                format!("stratum {i} of {space_name}"),
                Function::indicator(space.clone(), stratum)?,
            ));
        }
        if with_random {
            let values = (0..space.len()).map(|_| rng.gen_range(-3..=3)).collect();
            basis.push((
                "seeded random function".to_string(),
                Function::new(space.clone(), values)?,
            ));
        }
        Ok(basis)
    }
}

// ---------------------------------------------------------------------------
// Values and rendering
// ---------------------------------------------------------------------------

/// Result of evaluating an operation: a function or an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Function(Function),
    Integer(i64),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Integer(n) => n.to_string(),
            Value::Function(f) => render_function(f),
        }
    }
}

/// Compact sparse rendering of a function, truncated for reports.
pub fn render_function(f: &Function) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let complex = f.space().complex();
    let mut out = String::new();
    let mut shown = 0;
    for (&id, &v) in f.space().members().iter().zip(f.values()) {
        if v == 0 {
            continue;
        }
        if out.len() > 160 {
            let total = f.values().iter().filter(|&&v| v != 0).count();
            out.push_str(&format!(", … ({} more)", total - shown));
            break;
        }
        if !out.is_empty() {
            out.push_str(", ");
        }
        out.push_str(&format!("{}={v}", complex.simplex(id)));
        shown += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Operation evaluator (shared by custom_op checks and the CLI)
// ---------------------------------------------------------------------------

/// Evaluates a named operation on token arguments.
///
/// Function arguments use the token grammar of [`Env::function`]; map,
/// space, and cover arguments are names; `scale` takes a leading integer.
pub fn eval_op(env: &Env, op: &str, args: &[String]) -> Result<Value> {
    let arg = |i: usize| -> Result<&String> {
        args.get(i)
            .ok_or_else(|| Error::InvalidArgs(format!("operation '{op}' needs more arguments")))
    };
    let expect_len = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidArgs(format!(
                "operation '{op}' takes {n} argument(s), got {}",
                args.len()
            )))
        }
    };
    match op {
        "pullback" | "exc_pullback" | "pushforward" | "pushforward_c" | "nearby" => {
            expect_len(2)?;
            let map = env.map_for(arg(0)?)?;
            let phi = env.function(arg(1)?)?;
            let result = match op {
                "pullback" => pullback(map, &phi)?,
                "exc_pullback" => exc_pullback(map, &phi)?,
                "pushforward" => pushforward(map, &phi)?,
                "pushforward_c" => pushforward_c(map, &phi)?,
                _ => nearby(map, &phi)?,
            };
            Ok(Value::Function(result))
        }
        "dual" => {
            expect_len(1)?;
            Ok(Value::Function(dual(&env.function(arg(0)?)?)))
        }
        "tensor" | "add" | "sub" => {
            expect_len(2)?;
            let a = env.function(arg(0)?)?;
            let b = env.function(arg(1)?)?;
            let result = match op {
                "tensor" => a.tensor(&b)?,
                "add" => a.add(&b)?,
                _ => a.sub(&b)?,
            };
            Ok(Value::Function(result))
        }
        "scale" => {
            expect_len(2)?;
            let c: i64 = arg(0)?
                .parse()
                .map_err(|_| Error::InvalidArgs("scale needs an integer first".into()))?;
            Ok(Value::Function(env.function(arg(1)?)?.scale(c)))
        }
        "restrict" | "extend_by_zero" | "open_pushforward" => {
            expect_len(2)?;
            let phi = env.function(arg(0)?)?;
            let space = env.space_cells(arg(1)?)?;
            let result = match op {
                "restrict" => restrict(&phi, space)?,
                "extend_by_zero" => extend_by_zero(&phi, space)?,
                _ => open_pushforward(&phi, space)?,
            };
            Ok(Value::Function(result))
        }
        "boundary_stalk" => {
            expect_len(3)?;
            let phi = env.function(arg(0)?)?;
            let x = env.space_cells(arg(1)?)?;
            let z = env.space_cells(arg(2)?)?;
            Ok(Value::Function(boundary_stalk(&phi, x, z)?))
        }
        "cech_sum" => {
            expect_len(2)?;
            let (x, _, boundary, pieces) = env.cover_parts(arg(0)?)?;
            let phi = env.function(arg(1)?)?;
            Ok(Value::Function(cech_sum(&phi, x, boundary, pieces)?))
        }
        "euler_integral" => {
            expect_len(1)?;
            Ok(Value::Integer(euler_integral(&env.function(arg(0)?)?)))
        }
        "euler_integral_c" => {
            expect_len(1)?;
            Ok(Value::Integer(euler_integral_c(&env.function(arg(0)?)?)))
        }
        "chi" => {
            expect_len(1)?;
            let space = env.space_cells(arg(0)?)?;
            Ok(Value::Integer(euler_integral(&Function::one(space.clone()))))
        }
        "chi_c" => {
            expect_len(1)?;
            Ok(Value::Integer(env.space_cells(arg(0)?)?.chi_c()))
        }
        other => Err(Error::UnknownOp(other.to_string())),
    }
}

// ---------------------------------------------------------------------------
// Check execution
// ---------------------------------------------------------------------------

struct Outcome {
    pass: bool,
    lhs: Option<String>,
    rhs: Option<String>,
    detail: String,
}

impl Outcome {
    fn pass(detail: String) -> Outcome {
        Outcome {
            pass: true,
            lhs: None,
            rhs: None,
            detail,
        }
    }

    fn fail(lhs: String, rhs: String, detail: String) -> Outcome {
        Outcome {
            pass: false,
            lhs: Some(lhs),
            rhs: Some(rhs),
            detail,
        }
    }
}

/// Compares two functions over a labeled basis; stops at the first
/// difference.
fn compare_over_basis(
    basis: &[(String, Function)],
    mut lhs_of: impl FnMut(&Function) -> Result<Function>,
    mut rhs_of: impl FnMut(&Function) -> Result<Function>,
    what: &str,
) -> Result<Outcome> {
    for (label, phi) in basis {
        let a = lhs_of(phi)?;
        let b = rhs_of(phi)?;
        if a != b {
            return Ok(Outcome::fail(
                render_function(&a),
                render_function(&b),
                format!("{what} differ on {label}"),
            ));
        }
    }
    Ok(Outcome::pass(format!(
        "{what} agree on {} test function(s)",
        basis.len()
    )))
}

fn run_body(env: &Env, body: &CheckBody, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    match body {
        CheckBody::TheoremMain { map, functions } => {
            // Stated for functions constant on the source's curated strata:
            // on a collapse map the two sides are the two Euler integrals of
            // the fiber, which disagree on e.g. a half-open cell indicator.
            // The default basis therefore adds no random function.
            let (f, source, _) = env.map_entry(map)?;
            let basis = env.basis(source, functions, rng, false)?;
            compare_over_basis(
                &basis,
                |phi| pushforward_c(f, phi),
                |phi| pushforward(f, phi),
                "compact and plain pushforwards",
            )
        }
        CheckBody::ExcPullbackEq { map, functions } => {
            // The comparison is stated for functions constant on the
            // target's curated strata; an arbitrary cellwise function can
            // separate the two sides even on the models where the identity
            // holds, so no random function is added to the default basis.
            let (f, _, target) = env.map_entry(map)?;
            let basis = env.basis(target, functions, rng, false)?;
            compare_over_basis(
                &basis,
                |phi| exc_pullback(f, phi),
                |phi| pullback(f, phi),
                "the two pullbacks",
            )
        }
        CheckBody::DualInvolution { space, function } => {
            let tokens: Vec<String> = function.iter().cloned().collect();
            let basis = env.basis(space, &tokens, rng, true)?;
            compare_over_basis(
                &basis,
                |phi| Ok(dual(&dual(phi))),
                |phi| Ok(phi.clone()),
                "double dual and identity",
            )
        }
        CheckBody::Triangle { map, functions } => {
            let (f, source, _) = env.map_entry(map)?;
            let embedded = graph_embed(f)?;
            if !embedded.image_is_relatively_closed() {
                return Err(Error::Inconsistency(
                    "graph image is not relatively closed".into(),
                ));
            }
            let basis = env.basis(source, functions, rng, true)?;
            let gamma = embedded.embedding();
            let projection = embedded.product().proj_right();
            let factored = compare_over_basis(
                &basis,
                |phi| embedded.carry_target_function(&pushforward_c(f, phi)?),
                |phi| {
                    let carried = embedded.carry_function(phi)?;
                    pushforward_c(projection, &pushforward_c(gamma, &carried)?)
                },
                "direct and graph-factored pushforwards",
            )?;
            if !factored.pass {
                return Ok(factored);
            }
            let invariant = compare_over_basis(
                &basis,
                |phi| embedded.carry_target_function(&pushforward_c(f, phi)?),
                |phi| pushforward_c(embedded.map_used(), &embedded.carry_function(phi)?),
                "pushforwards before and after refinement",
            )?;
            if !invariant.pass {
                return Ok(invariant);
            }
            Ok(Outcome::pass(format!(
                "{}{}",
                factored.detail,
                if embedded.subdivided() {
                    " (both sides refined once)"
                } else {
                    ""
                }
            )))
        }
        CheckBody::BaseChange { square, functions } => {
            let (pi, base, source) = env.square_parts(square)?;
            let parts = square_components(pi, base)?;
            let basis = env.basis(source, functions, rng, true)?;
            let compact = compare_over_basis(
                &basis,
                |phi| pullback(&parts.base_inclusion, &pushforward_c(&parts.map, phi)?),
                |phi| {
                    pushforward_c(&parts.restricted, &pullback(&parts.fiber_inclusion, phi)?)
                },
                "the two ways around the square",
            )?;
            if !compact.pass || !(parts.map.is_proper() && parts.restricted.is_proper()) {
                return Ok(compact);
            }
            let plain = compare_over_basis(
                &basis,
                |phi| pullback(&parts.base_inclusion, &pushforward(&parts.map, phi)?),
                |phi| {
                    pushforward(&parts.restricted, &pullback(&parts.fiber_inclusion, phi)?)
                },
                "the two ways around the square (plain pushforward)",
            )?;
            if !plain.pass {
                return Ok(plain);
            }
            Ok(Outcome::pass(format!(
                "{}; plain pushforward version also agrees",
                compact.detail
            )))
        }
        CheckBody::Cech { cover, function } => {
            let (x, sub, boundary, pieces) = env.cover_parts(cover)?;
            let basis = cover_basis(env, sub, function, rng, true)?;
            compare_over_basis(
                &basis,
                |phi| cech_sum(phi, x, boundary, pieces),
                |phi| boundary_stalk(phi, x, boundary),
                "cover sum and global boundary values",
            )
        }
        CheckBody::Nearby { map, function } => {
            let f = env.map_for(map)?;
            let phi = match function {
                Some(token) => env.function(token)?,
                None => Function::one(f.source().clone()),
            };
            let values = nearby(f, &phi)?;
            Ok(Outcome {
                pass: true,
                lhs: Some(render_function(&values)),
                rhs: None,
                detail: "generic cells agree on the center value".to_string(),
            })
        }
        CheckBody::BoundaryStalkZero { cover, function } => {
            let (x, sub, boundary, _) = env.cover_parts(cover)?;
            let basis = cover_basis(env, sub, function, rng, false)?;
            for (label, phi) in &basis {
                let stalk = boundary_stalk(phi, x, boundary)?;
                if !stalk.is_zero() {
                    return Ok(Outcome::fail(
                        render_function(&stalk),
                        "0".to_string(),
                        format!("boundary values do not vanish for {label}"),
                    ));
                }
            }
            Ok(Outcome::pass(format!(
                "boundary values vanish for {} test function(s)",
                basis.len()
            )))
        }
        CheckBody::TraceEq { action } => {
            let (space, generators) = env.action_parts(action)?;
            let group = GroupAction::new(space.clone(), generators.to_vec())?;
            let (regular, pairs) = compare_traces(&group)?;
            let lhs: Vec<i64> = pairs.iter().map(|p| p.chi_g).collect();
            let rhs: Vec<i64> = pairs.iter().map(|p| p.chi_gc).collect();
            let pass = lhs == rhs;
            Ok(Outcome {
                pass,
                lhs: Some(format!("{lhs:?}")),
                rhs: Some(format!("{rhs:?}")),
                detail: format!(
                    "group of order {}, regular after {} subdivision round(s)",
                    regular.order(),
                    regular.rounds()
                ),
            })
        }
        CheckBody::Counterexample { inner } => {
            if inner.expect_error.is_some() {
                return Err(Error::InvalidArgs(
                    "a counterexample check cannot also expect an error".into(),
                ));
            }
            let outcome = run_body(env, &inner.body, rng)?;
            if outcome.pass {
                Ok(Outcome::fail(
                    outcome.detail,
                    "a failing comparison".to_string(),
                    format!("inner check '{}' passed; no counterexample", inner.id),
                ))
            } else {
                Ok(Outcome {
                    pass: true,
                    lhs: outcome.lhs,
                    rhs: outcome.rhs,
                    detail: format!("counterexample confirmed: {}", outcome.detail),
                })
            }
        }
        CheckBody::CustomOp { op, args, expect } => {
            let value = eval_op(env, op, args)?;
            let (pass, expected) = match expect {
                ExpectDef::Scalar(n) => (value == Value::Integer(*n), n.to_string()),
                ExpectDef::Function(token) => {
                    let f = env.function(token)?;
                    (value == Value::Function(f.clone()), render_function(&f))
                }
            };
            if pass {
                Ok(Outcome::pass(format!("{op} returned the expected result")))
            } else {
                Ok(Outcome::fail(
                    value.render(),
                    expected,
                    format!("{op} returned an unexpected result"),
                ))
            }
        }
    }
}

/// Test functions on a cover's open subset: the constant 1 plus an
/// optional seeded random function, or an explicit token.
fn cover_basis(
    env: &Env,
    sub: &CellSet,
    function: &Option<String>,
    rng: &mut ChaCha8Rng,
    with_random: bool,
) -> Result<Vec<(String, Function)>> {
    if let Some(token) = function {
        return Ok(vec![(token.clone(), env.function(token)?)]);
    }
    let mut basis = vec![(
        "one on the open subset".to_string(),
        Function::one(sub.clone()),
    )];
    if with_random {
        let values = (0..sub.len()).map(|_| rng.gen_range(-3..=3)).collect();
        basis.push((
            "seeded random function".to_string(),
            Function::new(sub.clone(), values)?,
        ));
    }
    Ok(basis)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Status of one executed check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// One executed check in a report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub kind: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

/// Pass/fail/error tally.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

/// Engine identification stamped into every report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EngineInfo {
    pub name: String,
    pub version: String,
}

/// The result of running a scenario.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub engine: EngineInfo,
    pub scenario: String,
    pub seed: u64,
    /// SHA-256 of the canonical scenario JSON.
    pub input_digest: String,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Exit code contract: errors dominate failures dominate success.
    pub fn exit_code(&self) -> i32 {
        if self.summary.errors > 0 {
            3
        } else if self.summary.failed > 0 {
            1
        } else {
            0
        }
    }
}

/// Options for a scenario run.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub seed: u64,
    /// Worker threads; 0 picks the scheduler default.
    pub jobs: usize,
    /// Record per-check wall-clock milliseconds (off by default so reports
    /// are byte-identical across runs).
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: DEFAULT_SEED,
            jobs: 0,
            timings: false,
        }
    }
}

fn kind_name(body: &CheckBody) -> &'static str {
    match body {
        CheckBody::TheoremMain { .. } => "theorem_main",
        CheckBody::ExcPullbackEq { .. } => "exc_pullback_eq",
        CheckBody::DualInvolution { .. } => "dual_involution",
        CheckBody::Triangle { .. } => "triangle",
        CheckBody::BaseChange { .. } => "base_change",
        CheckBody::Cech { .. } => "cech",
        CheckBody::Nearby { .. } => "nearby",
        CheckBody::BoundaryStalkZero { .. } => "boundary_stalk_zero",
        CheckBody::TraceEq { .. } => "trace_eq",
        CheckBody::Counterexample { .. } => "counterexample",
        CheckBody::CustomOp { .. } => "custom_op",
    }
}

fn run_check(env: &Env, def: &CheckDef, seed: u64, timings: bool) -> CheckRecord {
    let started = std::time::Instant::now();
    let mut rng = check_rng(seed, &def.id);
    let result = run_body(env, &def.body, &mut rng);
    let (status, lhs, rhs, detail) = match (&def.expect_error, result) {
        (None, Ok(outcome)) => (
            if outcome.pass { Status::Pass } else { Status::Fail },
            outcome.lhs,
            outcome.rhs,
            outcome.detail,
        ),
        (None, Err(e)) => (Status::Error, None, None, format!("{}: {e}", e.code())),
        (Some(code), Err(e)) if e.code() == code => (
            Status::Pass,
            None,
            None,
            format!("failed as expected with {}: {e}", e.code()),
        ),
        (Some(code), Err(e)) => (
            Status::Error,
            Some(e.code().to_string()),
            Some(code.clone()),
            format!("expected error {code}, got {}: {e}", e.code()),
        ),
        (Some(code), Ok(_)) => (
            Status::Fail,
            Some("check ran to completion".to_string()),
            Some(format!("error {code}")),
            format!("expected error {code}, but the check ran"),
        ),
    };
    CheckRecord {
        id: def.id.clone(),
        kind: kind_name(&def.body).to_string(),
        status,
        lhs,
        rhs,
        detail,
        millis: timings.then(|| started.elapsed().as_millis() as u64),
    }
}

/// Runs a scenario and collects the report. Checks run in parallel when
/// `jobs` allows; results keep scenario order regardless.
pub fn run_scenario(def: &ScenarioDef, opts: &RunOptions) -> Result<Report> {
    let env = Env::new(def)?;
    let digest = {
        let mut hasher = Sha256::new();
        hasher.update(def.to_json().as_bytes());
        let bytes = hasher.finalize();
        bytes.iter().map(|b| format!("{b:02x}")).collect::<String>()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::MalformedInput(format!("worker pool: {e}")))?;
    let checks: Vec<CheckRecord> = pool.install(|| {
        use rayon::prelude::*;
        def.checks
            .par_iter()
            .map(|c| run_check(&env, c, opts.seed, opts.timings))
            .collect()
    });
    let summary = Summary {
        total: checks.len(),
        passed: checks.iter().filter(|c| c.status == Status::Pass).count(),
        failed: checks.iter().filter(|c| c.status == Status::Fail).count(),
        errors: checks.iter().filter(|c| c.status == Status::Error).count(),
    };
    Ok(Report {
        engine: EngineInfo {
            name: "constructible".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        scenario: def.name.clone(),
        seed: opts.seed,
        input_digest: digest,
        summary,
        checks,
    })
}

// ---------------------------------------------------------------------------
// Bundled scenarios
// ---------------------------------------------------------------------------

/// The scenario suites shipped with the engine.
pub const BUNDLED: &[(&str, &str)] = &[
    (
        "theorem_main_complex_suite",
        include_str!("../scenarios/theorem_main_complex_suite.json"),
    ),
    (
        "real_counterexamples",
        include_str!("../scenarios/real_counterexamples.json"),
    ),
    ("duality_suite", include_str!("../scenarios/duality_suite.json")),
    (
        "vanishing_suite",
        include_str!("../scenarios/vanishing_suite.json"),
    ),
    ("cech_suite", include_str!("../scenarios/cech_suite.json")),
    (
        "base_change_suite",
        include_str!("../scenarios/base_change_suite.json"),
    ),
    ("nearby_suite", include_str!("../scenarios/nearby_suite.json")),
    ("traces_suite", include_str!("../scenarios/traces_suite.json")),
    (
        "triangle_strat_suite",
        include_str!("../scenarios/triangle_strat_suite.json"),
    ),
    ("full_suite", include_str!("../scenarios/full_suite.json")),
];

/// Names of the bundled scenarios, in canonical order.
pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(name, _)| *name).collect()
}

/// Parses a bundled scenario by name.
pub fn bundled_scenario(name: &str) -> Result<ScenarioDef> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownReference(format!("scenario '{name}'")))?;
    ScenarioDef::from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_scenarios_parse_and_resolve() {
        assert_eq!(BUNDLED.len(), 10);
        for (name, _) in BUNDLED {
            let def = bundled_scenario(name).expect(name);
            assert_eq!(&def.name, name);
            assert!(!def.checks.is_empty(), "{name} has no checks");
            let ids: std::collections::BTreeSet<_> =
                def.checks.iter().map(|c| c.id.as_str()).collect();
            assert_eq!(ids.len(), def.checks.len(), "{name} repeats a check id");
            Env::new(&def).expect(name);
        }
    }

    #[test]
    fn per_check_seeding_ignores_order_and_workers() {
        use rand::RngCore;
        let mut a = check_rng(1729, "some_check");
        let mut b = check_rng(1729, "some_check");
        assert_eq!(a.next_u64(), b.next_u64());
        let mut c = check_rng(1729, "another_check");
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn function_tokens_resolve() {
        let env = Env::registry_only();
        let one = env.function("one:p1").unwrap();
        assert!(one.values().iter().all(|&v| v == 1));
        let zero = env.function("zero:p1").unwrap();
        assert!(zero.is_zero());
        let ind = env.function("indicator:p1:p1_poles").unwrap();
        assert_eq!(ind.values().iter().sum::<i64>(), 2);
        let missing = env.function("nonsense").unwrap_err();
        assert_eq!(missing.code(), "UnknownReference");
        let malformed = env.function("indicator:p1").unwrap_err();
        assert_eq!(malformed.code(), "InvalidArgs");
    }

    #[test]
    fn operations_evaluate_and_reject_bad_input() {
        let env = Env::registry_only();
        assert_eq!(
            eval_op(&env, "chi_c", &["p1".into()]).unwrap(),
            Value::Integer(2)
        );
        assert_eq!(
            eval_op(&env, "chi", &["open_interval".into()]).unwrap(),
            Value::Integer(1)
        );
        assert_eq!(
            eval_op(&env, "euler_integral_c", &["one:open_interval".into()]).unwrap(),
            Value::Integer(-1)
        );
        match eval_op(&env, "dual", &["one:circle".into()]).unwrap() {
            Value::Function(f) => assert!(f.values().iter().all(|&v| v == -1)),
            Value::Integer(_) => panic!("dual returns a function"),
        }
        let scaled = eval_op(&env, "scale", &["3".into(), "one:p1".into()]).unwrap();
        match scaled {
            Value::Function(f) => assert!(f.values().iter().all(|&v| v == 3)),
            Value::Integer(_) => panic!("scale returns a function"),
        }
        assert_eq!(
            eval_op(&env, "frobnicate", &[]).unwrap_err().code(),
            "UnknownOp"
        );
        assert_eq!(
            eval_op(&env, "dual", &[]).unwrap_err().code(),
            "InvalidArgs"
        );
        assert_eq!(
            eval_op(&env, "dual", &["one:p1".into(), "one:p1".into()])
                .unwrap_err()
                .code(),
            "InvalidArgs"
        );
    }

    fn one_check_scenario(check: &str) -> ScenarioDef {
        ScenarioDef::from_json(&format!(
            r#"{{ "name": "inline", "checks": [ {check} ] }}"#
        ))
        .unwrap()
    }

    #[test]
    fn expectation_semantics_cover_all_outcomes() {
        let opts = RunOptions::default();

        // A passing comparison.
        let ok = one_check_scenario(
            r#"{ "id": "a", "kind": "theorem_main", "map": "z2_cover" }"#,
        );
        let report = run_scenario(&ok, &opts).unwrap();
        assert_eq!(report.summary.passed, 1);
        assert_eq!(report.exit_code(), 0);

        // A failing comparison.
        let bad = one_check_scenario(
            r#"{ "id": "b", "kind": "theorem_main", "map": "open_interval_to_point" }"#,
        );
        let report = run_scenario(&bad, &opts).unwrap();
        assert_eq!(report.summary.failed, 1);
        assert_eq!(report.exit_code(), 1);
        assert!(report.checks[0].lhs.is_some() && report.checks[0].rhs.is_some());

        // A counterexample around a failing inner check passes.
        let ce = one_check_scenario(
            r#"{ "id": "c", "kind": "counterexample",
                 "inner": { "id": "ci", "kind": "theorem_main", "map": "open_interval_to_point" } }"#,
        );
        assert_eq!(run_scenario(&ce, &opts).unwrap().summary.passed, 1);

        // A counterexample around a passing inner check fails.
        let ce_bad = one_check_scenario(
            r#"{ "id": "d", "kind": "counterexample",
                 "inner": { "id": "di", "kind": "theorem_main", "map": "z2_cover" } }"#,
        );
        assert_eq!(run_scenario(&ce_bad, &opts).unwrap().summary.failed, 1);

        // Unexpected evaluation errors surface as errors and dominate the
        // exit code.
        let err = one_check_scenario(
            r#"{ "id": "e", "kind": "theorem_main", "map": "no_such_map" }"#,
        );
        let report = run_scenario(&err, &opts).unwrap();
        assert_eq!(report.summary.errors, 1);
        assert_eq!(report.exit_code(), 3);

        // Expected errors pass only when the code matches.
        let expected = one_check_scenario(
            r#"{ "id": "f", "kind": "theorem_main", "map": "no_such_map",
                 "expect_error": "UnknownReference" }"#,
        );
        assert_eq!(run_scenario(&expected, &opts).unwrap().summary.passed, 1);

        let wrong_code = one_check_scenario(
            r#"{ "id": "g", "kind": "theorem_main", "map": "no_such_map",
                 "expect_error": "CoverTooLarge" }"#,
        );
        assert_eq!(run_scenario(&wrong_code, &opts).unwrap().summary.errors, 1);

        // Expecting an error from a check that runs is a failure.
        let no_error = one_check_scenario(
            r#"{ "id": "h", "kind": "theorem_main", "map": "z2_cover",
                 "expect_error": "CoverTooLarge" }"#,
        );
        assert_eq!(run_scenario(&no_error, &opts).unwrap().summary.failed, 1);
    }

    #[test]
    fn every_bundled_scenario_passes() {
        for (name, _) in BUNDLED {
            let def = bundled_scenario(name).unwrap();
            let report = run_scenario(&def, &RunOptions::default()).unwrap();
            let troubled: Vec<String> = report
                .checks
                .iter()
                .filter(|c| c.status != Status::Pass)
                .map(|c| format!("{} [{:?}] {}", c.id, c.status, c.detail))
                .collect();
            assert!(
                troubled.is_empty(),
                "{name} has non-passing checks:\n{}",
                troubled.join("\n")
            );
            assert_eq!(report.exit_code(), 0, "{name}");
        }
    }

    #[test]
    fn reports_are_identical_across_worker_counts() {
        let def = bundled_scenario("traces_suite").unwrap();
        let base = RunOptions::default();
        let serial = run_scenario(&def, &base).unwrap().to_json();
        let parallel = run_scenario(
            &def,
            &RunOptions {
                jobs: 4,
                ..base
            },
        )
        .unwrap()
        .to_json();
        assert_eq!(serial, parallel);
        let again = run_scenario(&def, &base).unwrap().to_json();
        assert_eq!(serial, again);
    }

    #[test]
    fn timing_flag_is_the_only_nondeterminism_switch() {
        let def = bundled_scenario("cech_suite").unwrap();
        let timed = run_scenario(
            &def,
            &RunOptions {
                timings: true,
                ..RunOptions::default()
            },
        )
        .unwrap();
        assert!(timed.checks.iter().all(|c| c.millis.is_some()));
        let untimed = run_scenario(&def, &RunOptions::default()).unwrap();
        assert!(untimed.checks.iter().all(|c| c.millis.is_none()));
    }
}
