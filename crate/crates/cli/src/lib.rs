//! Command dispatch for the `xmodp` binary. Every command produces a JSON
//! report with a top-level `pass` field, the catalogue swept and the budget.

use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;
use xmodp::catalogue::Catalogue;
use xmodp::embedding::{
    compute_presheaf, generator_witness, verify_exactness_preservation, verify_full_faithful, EmbeddingError, ExactnessDiagram,
};
use xmodp::free::{build_site, hom_set, FreeObject};
use xmodp::limits::{
    coequaliser, equaliser, kernel_pair, product_over_base, pullback, quotient_by_equivalence, verify_coequaliser, verify_equaliser,
    verify_product, verify_pullback, verify_quotient, ConeResult, CoconeResult, LimitError,
};
use xmodp::session::{parse_session, Session, SessionError};
use xmodp::xmod::{validate_crossed_module, validate_morphism, CrossedModule, XModError, XModMorphism};

pub const COMMANDS: &[&str] = &[
    "validate",
    "equaliser",
    "coequaliser",
    "pullback",
    "product",
    "kernel-pair",
    "quotient",
    "homset",
    "embed",
    "verify-embedding",
    "verify-exact",
    "witness-generators",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("{command}: missing argument <{argument}>")]
    MissingArgument { command: String, argument: &'static str },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 2 for parse and usage errors, 1 for validation and computation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Failed(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse_error",
            CliError::Invalid(_) => "validation_error",
            CliError::UnknownCommand(_) => "unknown_command",
            CliError::MissingArgument { .. } => "missing_argument",
            CliError::UnknownName { .. } => "unknown_name",
            CliError::Usage(_) => "usage_error",
            CliError::Failed(_) => "failed",
        }
    }

    pub fn report(&self) -> Value {
        json!({ "pass": false, "error": self.kind(), "message": self.to_string() })
    }
}

impl From<SessionError> for CliError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::Parse { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<LimitError> for CliError {
    fn from(e: LimitError) -> Self {
        match e {
            LimitError::DiagramMismatch(_) => CliError::Usage(e.to_string()),
            LimitError::XMod(x) => x.into(),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<XModError> for CliError {
    fn from(e: XModError) -> Self {
        match e {
            XModError::BaseMismatch | XModError::CompositionMismatch => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::NotMono | EmbeddingError::IsIso | EmbeddingError::ShapeMismatch(_) | EmbeddingError::BaseMismatch => {
                CliError::Usage(e.to_string())
            }
            EmbeddingError::Limit(l) => l.into(),
            EmbeddingError::XMod(x) => x.into(),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// Command-line overrides of the session options.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub budget: Option<u128>,
    pub catalogue_order: Option<usize>,
}

pub fn load_session(text: &str) -> Result<Session, CliError> {
    Ok(parse_session(text)?)
}

/// Exit code for a command outcome.
pub fn exit_code(outcome: &Result<Value, CliError>) -> i32 {
    match outcome {
        Ok(report) if report["pass"] == Value::Bool(true) => 0,
        Ok(_) => 1,
        Err(e) => e.exit_code(),
    }
}

struct Context<'a> {
    session: &'a Session,
    command: &'a str,
    args: &'a [String],
    budget: u128,
    catalogue_order: usize,
}

impl<'a> Context<'a> {
    fn arg(&self, i: usize, argument: &'static str) -> Result<&'a str, CliError> {
        self.args
            .get(i)
            .map(String::as_str)
            .ok_or_else(|| CliError::MissingArgument { command: self.command.to_string(), argument })
    }

    fn xmod(&self, i: usize, argument: &'static str) -> Result<Arc<CrossedModule>, CliError> {
        let name = self.arg(i, argument)?;
        self.session
            .crossed_module(name)
            .cloned()
            .ok_or_else(|| CliError::UnknownName { kind: "crossed module", name: name.to_string() })
    }

    fn morphism(&self, i: usize, argument: &'static str) -> Result<XModMorphism, CliError> {
        let name = self.arg(i, argument)?;
        self.session.morphism(name).cloned().ok_or_else(|| CliError::UnknownName { kind: "morphism", name: name.to_string() })
    }

    /// The standard catalogue plus every crossed module of the session.
    fn catalogue(&self) -> Catalogue {
        let mut cat = Catalogue::standard(&self.session.base, self.catalogue_order);
        for (name, x) in &self.session.crossed_modules {
            cat.push(name.clone(), x.object.clone());
        }
        cat
    }

    fn finish(&self, mut report: Value, catalogue: Option<&Catalogue>) -> Value {
        let obj = report.as_object_mut().expect("reports are objects");
        obj.insert("command".into(), json!(self.command));
        obj.insert("budget".into(), json!(self.budget as u64));
        obj.insert(
            "catalogue".into(),
            match catalogue {
                Some(c) => json!({ "max_order": c.max_order(), "size": c.len(), "names": c.names() }),
                None => Value::Null,
            },
        );
        report
    }
}

fn describe(x: &CrossedModule) -> Value {
    json!({ "order": x.order(), "boundary": x.boundary(), "action": x.action_rows() })
}

fn describe_cone(cone: &ConeResult) -> Value {
    json!({
        "kind": cone.kind,
        "apex": describe(&cone.apex),
        "elements": cone.elements,
        "legs": cone.legs.iter().map(|l| l.map().to_vec()).collect::<Vec<_>>(),
    })
}

fn describe_cocone(cocone: &CoconeResult) -> Value {
    json!({
        "kind": cocone.kind,
        "apex": describe(&cocone.apex),
        "classes": cocone.classes,
        "leg": cocone.leg.map(),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

pub fn run_command(session: &Session, command: &str, args: &[String], options: RunOptions) -> Result<Value, CliError> {
    let ctx = Context {
        session,
        command,
        args,
        budget: options.budget.unwrap_or(session.options.budget as u128),
        catalogue_order: options.catalogue_order.unwrap_or(session.options.catalogue_order),
    };
    match command {
        "validate" => validate(&ctx),
        "equaliser" | "coequaliser" | "pullback" | "kernel-pair" => pair_construction(&ctx),
        "product" => {
            let (a, b) = (ctx.xmod(0, "A")?, ctx.xmod(1, "B")?);
            let cone = product_over_base(&a, &b)?;
            let cat = ctx.catalogue();
            let report = verify_product(&a, &b, &cone, &cat)?;
            Ok(ctx.finish(merge(json!({ "cone": describe_cone(&cone) }), serde_json::to_value(report).unwrap()), Some(&cat)))
        }
        "quotient" => {
            let name = ctx.arg(0, "relation")?;
            let rel = session.relation(name).ok_or_else(|| CliError::UnknownName { kind: "relation", name: name.to_string() })?;
            let cocone = quotient_by_equivalence(rel)?;
            let cat = ctx.catalogue();
            let report = verify_quotient(rel, &cocone, &cat)?;
            Ok(ctx.finish(merge(json!({ "cocone": describe_cocone(&cocone) }), serde_json::to_value(report).unwrap()), Some(&cat)))
        }
        "homset" => homset(&ctx),
        "embed" => {
            let a = ctx.xmod(0, "A")?;
            let site = Arc::new(build_site(&session.base));
            let u = compute_presheaf(&a, &site)?;
            let defects = u.composition_defects();
            let report = json!({ "pass": defects.is_empty(), "defects": defects, "presheaf": u.summary() });
            Ok(ctx.finish(report, None))
        }
        "verify-embedding" => {
            let (a, b) = (ctx.xmod(0, "A")?, ctx.xmod(1, "B")?);
            let site = Arc::new(build_site(&session.base));
            let report = verify_full_faithful(&a, &b, &site, ctx.budget)?;
            Ok(ctx.finish(serde_json::to_value(report).unwrap(), None))
        }
        "verify-exact" => {
            let kind = ctx.arg(0, "product|equaliser|coequaliser")?;
            let diagram = match kind {
                "product" => ExactnessDiagram::Product(ctx.xmod(1, "A")?, ctx.xmod(2, "B")?),
                "equaliser" => ExactnessDiagram::Equaliser(ctx.morphism(1, "f")?, ctx.morphism(2, "g")?),
                "coequaliser" => ExactnessDiagram::Coequaliser(ctx.morphism(1, "f")?, ctx.morphism(2, "g")?),
                other => return Err(CliError::Usage(format!("verify-exact: unknown diagram kind `{other}`"))),
            };
            let site = Arc::new(build_site(&session.base));
            let report = verify_exactness_preservation(&diagram, &site)?;
            Ok(ctx.finish(serde_json::to_value(report).unwrap(), None))
        }
        "witness-generators" => {
            let m = ctx.morphism(0, "m")?;
            let w = generator_witness(&m)?;
            let report = merge(json!({ "pass": !w.factors }), serde_json::to_value(w).unwrap());
            Ok(ctx.finish(report, None))
        }
        other => Err(CliError::UnknownCommand(other.to_string())),
    }
}

fn validate(ctx: &Context) -> Result<Value, CliError> {
    let s = ctx.session;
    let mut pass = true;
    let crossed_modules: Vec<Value> = s
        .crossed_modules
        .iter()
        .map(|(name, x)| {
            let o = &x.object;
            let r = validate_crossed_module(o.group(), o.base(), o.boundary(), o.action_table());
            pass &= r.is_valid();
            json!({ "name": name, "order": o.order(), "violations": r.violations })
        })
        .collect();
    let morphisms = s
        .morphisms
        .iter()
        .map(|(name, f)| {
            let m = &f.morphism;
            let r = validate_morphism(m.map(), m.source(), m.target())?;
            pass &= r.is_valid();
            Ok(json!({ "name": name, "source": f.source, "target": f.target, "violations": r.violations }))
        })
        .collect::<Result<Vec<Value>, XModError>>()?;
    let report = json!({
        "pass": pass,
        "base": { "name": s.base_name, "order": s.base.order() },
        "groups": s.groups.keys().collect::<Vec<_>>(),
        "crossed_modules": crossed_modules,
        "morphisms": morphisms,
        "relations": s.relations.keys().collect::<Vec<_>>(),
    });
    Ok(ctx.finish(report, None))
}

fn pair_construction(ctx: &Context) -> Result<Value, CliError> {
    let f = ctx.morphism(0, "f")?;
    let g = if ctx.command == "kernel-pair" { f.clone() } else { ctx.morphism(1, "g")? };
    let cat = ctx.catalogue();
    let (shape, report) = match ctx.command {
        "equaliser" => {
            let cone = equaliser(&f, &g)?;
            (json!({ "cone": describe_cone(&cone) }), verify_equaliser(&f, &g, &cone, &cat)?)
        }
        "coequaliser" => {
            let cocone = coequaliser(&f, &g)?;
            (json!({ "cocone": describe_cocone(&cocone) }), verify_coequaliser(&f, &g, &cocone, &cat)?)
        }
        "pullback" => {
            let cone = pullback(&f, &g)?;
            (json!({ "cone": describe_cone(&cone) }), verify_pullback(&f, &g, &cone, &cat)?)
        }
        _ => {
            let cone = kernel_pair(&f)?;
            (json!({ "cone": describe_cone(&cone) }), verify_pullback(&f, &f, &cone, &cat)?)
        }
    };
    Ok(ctx.finish(merge(shape, serde_json::to_value(report).unwrap()), Some(&cat)))
}

/// `homset A x1,x2,...`: morphisms out of the free crossed module on labels
/// with the given boundaries.
fn homset(ctx: &Context) -> Result<Value, CliError> {
    let a = ctx.xmod(0, "A")?;
    let labels = ctx.arg(1, "labels")?;
    let omega = labels
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("homset: bad label boundary `{s}`"))))
        .collect::<Result<Vec<usize>, CliError>>()?;
    if let Some(&x) = omega.iter().find(|&&x| x >= ctx.session.base.order()) {
        return Err(CliError::Usage(format!("homset: {x} is not an element of the base")));
    }
    let free = FreeObject::new(omega.clone());
    let homs = hom_set(&free, &a);
    let fibers: Vec<usize> = omega.iter().map(|&x| a.fiber(x).len()).collect();
    let expected: usize = fibers.iter().product();
    let compatible = homs.iter().all(|h| h.iter().zip(&omega).all(|(&m, &x)| a.boundary_of(m) == x));
    let report = json!({
        "pass": homs.len() == expected && compatible,
        "labels": omega,
        "fiber_sizes": fibers,
        "expected": expected,
        "count": homs.len(),
        "assignments": homs,
    });
    Ok(ctx.finish(report, None))
}
