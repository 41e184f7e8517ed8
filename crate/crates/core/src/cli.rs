//! Command dispatch and JSON reports for the `dias` binary.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::action::{check_action, check_all, CrossedModule};
use crate::actor::{
    canonical_morphism, center, check_conditions, check_xmod_action_data, semidirect_xmod, split_extension_report,
    verify_center_is_kernel, ConditionReport,
};
use crate::definition::{tensor_entries, DefinitionFile, Model, Scalar, ScalarMode};
use crate::dialgebra::{check_axioms, Dialgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::report::AxiomReport;
use crate::scalar::{Field, Rational, Zp};
use crate::tensor::Bilinear;
use crate::tetra::{build_actor, tetra_dl_space, tetra_space, xmod_tetra_space, TetraSpace};

/// Environment variable naming the default scalar mode.
pub const SCALARS_ENV: &str = "DIAS_SCALARS";

/// Moduli accepted for `mod-p` scalars.
pub const SUPPORTED_PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 101, 65521, 2147483647];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Every object, or only `object`.
    Check { object: Option<String> },
    Tetra { space: String, object: String },
    Actor { xmod: String },
    Center { xmod: String },
    Semidirect { data: String },
    VerifyCenter { xmod: String },
    Conditions { xmod: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Tetra { .. } => "tetra",
            Command::Actor { .. } => "actor",
            Command::Center { .. } => "center",
            Command::Semidirect { .. } => "semidirect",
            Command::VerifyCenter { .. } => "verify-center",
            Command::Conditions { .. } => "conditions",
        }
    }

    fn inputs(&self) -> Map<String, Value> {
        let mut m = Map::new();
        match self {
            Command::Check { object } => {
                if let Some(o) = object {
                    m.insert("object".into(), json!(o));
                }
            }
            Command::Tetra { space, object } => {
                m.insert("space".into(), json!(space));
                m.insert("object".into(), json!(object));
            }
            Command::Actor { xmod } | Command::Center { xmod } | Command::VerifyCenter { xmod } | Command::Conditions { xmod } => {
                m.insert("xmod".into(), json!(xmod));
            }
            Command::Semidirect { data } => {
                m.insert("data".into(), json!(data));
            }
        }
        m
    }
}

/// `status` of a report; `input-error` is never produced by a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportStatus {
    Ok,
    Violations,
    Advisory,
    InputError,
}

impl ReportStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportStatus::Ok => "ok",
            ReportStatus::Violations => "violations",
            ReportStatus::Advisory => "advisory",
            ReportStatus::InputError => "input-error",
        }
    }

    /// 0 for ok and advisory, 1 for violations, 2 for input errors.
    pub fn exit_code(self) -> i32 {
        match self {
            ReportStatus::Ok | ReportStatus::Advisory => 0,
            ReportStatus::Violations => 1,
            ReportStatus::InputError => 2,
        }
    }

    fn of(r: &AxiomReport) -> Self {
        match r.status() {
            crate::report::Status::Ok => ReportStatus::Ok,
            crate::report::Status::Violations => ReportStatus::Violations,
            crate::report::Status::Advisory => ReportStatus::Advisory,
        }
    }

    /// Violations dominate advisory, which dominates ok.
    fn join(self, other: Self) -> Self {
        use ReportStatus::*;
        match (self, other) {
            (InputError, _) | (_, InputError) => InputError,
            (Violations, _) | (_, Violations) => Violations,
            (Advisory, _) | (_, Advisory) => Advisory,
            _ => Ok,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub status: ReportStatus,
    pub payload: Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "status": self.status.as_str(),
            "payload": self.payload,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Human-readable projection of [`Report::to_value`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_text(&mut out, &self.to_value(), 0);
        out
    }
}

fn write_text(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_inline(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_text(out, x, indent + 1);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_inline(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_text(out, x, indent + 1);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", inline(x))),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && (!x.is_array() || x.as_array().is_some_and(|a| a.iter().all(is_scalar)))),
        _ => true,
    }
}

fn is_scalar(v: &Value) -> bool {
    !v.is_array() && !v.is_object()
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        x => x.to_string(),
    }
}

/// The scalar mode: `flag`, then the file, then `env`, then rational.
pub fn resolve_mode(file: &DefinitionFile, flag: Option<&str>, env: Option<&str>) -> Result<ScalarMode> {
    let mode = match (flag, file.scalar_mode()?, env) {
        (Some(f), _, _) => ScalarMode::parse(f, None)?,
        (None, Some(m), _) => m,
        (None, None, Some(e)) => ScalarMode::parse(e, None).map_err(|e| Error::Input(format!("{SCALARS_ENV}: {e}")))?,
        (None, None, None) => ScalarMode::Rational,
    };
    if let ScalarMode::ModP(p) = mode {
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::Input(format!("scalars: modulus {p} not supported, use one of {SUPPORTED_PRIMES:?}")));
        }
    }
    Ok(mode)
}

/// Parses `path` and runs `command`; input problems become an
/// `input-error` report rather than an `Err`.
pub fn run_path(command: &Command, path: &Path, scalars: Option<&str>) -> Report {
    let env = std::env::var(SCALARS_ENV).ok();
    let mut inputs = Map::new();
    inputs.insert("file".into(), json!(path.display().to_string()));
    inputs.extend(command.inputs());
    match DefinitionFile::read(path) {
        Ok(file) => run_with_inputs(command, &file, scalars, env.as_deref(), inputs),
        Err(e) => input_error(command, inputs, &e),
    }
}

/// Runs `command` on an already parsed file.
pub fn run(command: &Command, file: &DefinitionFile, scalars: Option<&str>, env: Option<&str>) -> Report {
    run_with_inputs(command, file, scalars, env, command.inputs())
}

fn run_with_inputs(
    command: &Command,
    file: &DefinitionFile,
    scalars: Option<&str>,
    env: Option<&str>,
    mut inputs: Map<String, Value>,
) -> Report {
    let mode = match resolve_mode(file, scalars, env) {
        Ok(m) => m,
        Err(e) => return input_error(command, inputs, &e),
    };
    inputs.insert("scalars".into(), json!(mode.name()));
    let outcome = match mode {
        ScalarMode::Rational => execute::<Rational>(command, file),
        ScalarMode::ModP(2) => execute::<Zp<2>>(command, file),
        ScalarMode::ModP(3) => execute::<Zp<3>>(command, file),
        ScalarMode::ModP(5) => execute::<Zp<5>>(command, file),
        ScalarMode::ModP(7) => execute::<Zp<7>>(command, file),
        ScalarMode::ModP(11) => execute::<Zp<11>>(command, file),
        ScalarMode::ModP(13) => execute::<Zp<13>>(command, file),
        ScalarMode::ModP(101) => execute::<Zp<101>>(command, file),
        ScalarMode::ModP(65521) => execute::<Zp<65521>>(command, file),
        ScalarMode::ModP(2147483647) => execute::<Zp<2147483647>>(command, file),
        ScalarMode::ModP(_) => unreachable!("checked by resolve_mode"),
    };
    match outcome {
        Ok((status, payload)) => Report {
            command: command.name().into(),
            inputs: Value::Object(inputs),
            status,
            payload,
        },
        Err(e) => match failed_check(&e) {
            Some(r) => Report {
                command: command.name().into(),
                inputs: Value::Object(inputs),
                status: ReportStatus::Violations,
                payload: json!({ "error": e.to_string(), "violations": violations(r) }),
            },
            None => input_error(command, inputs, &e),
        },
    }
}

fn input_error(command: &Command, inputs: Map<String, Value>, e: &Error) -> Report {
    Report {
        command: command.name().into(),
        inputs: Value::Object(inputs),
        status: ReportStatus::InputError,
        payload: json!({ "error": e.to_string() }),
    }
}

/// Failed hypothesis checks are reported as violations, not input errors.
fn failed_check(e: &Error) -> Option<&AxiomReport> {
    match e {
        Error::NotIdeal(r)
        | Error::ActionCheck(r)
        | Error::CrossedModuleCheck(r)
        | Error::HomCheck(r)
        | Error::ActionDataCheck(r) => Some(r),
        _ => None,
    }
}

fn execute<F: Field>(command: &Command, file: &DefinitionFile) -> Result<(ReportStatus, Value)> {
    let model = file.build::<F>()?;
    match command {
        Command::Check { object } => check(&model, object.as_deref()),
        Command::Tetra { space, object } => tetra(&model, space, object),
        Command::Actor { xmod } => actor(model.xmod(xmod)?),
        Command::Center { xmod } => {
            let c = center(model.xmod(xmod)?);
            Ok((
                ReportStatus::Ok,
                json!({ "l_fixed": basis(&c.l_fixed), "d_center": basis(&c.d_center) }),
            ))
        }
        Command::Semidirect { data } => semidirect(&model, data),
        Command::VerifyCenter { xmod } => {
            let c = verify_center_is_kernel(model.xmod(xmod)?)?;
            let r = c.report.sorted();
            Ok((
                ReportStatus::of(&r),
                json!({
                    "center": { "l_fixed": basis(&c.center.l_fixed), "d_center": basis(&c.center.d_center) },
                    "kernel": { "phi": basis(&c.ker_phi), "psi": basis(&c.ker_psi) },
                    "conditions": c.conditions.holding(),
                    "violations": violations(&r),
                }),
            ))
        }
        Command::Conditions { xmod } => Ok((ReportStatus::Ok, conditions(&check_conditions(model.xmod(xmod)?)))),
    }
}

fn check<F: Field>(model: &Model<F>, only: Option<&str>) -> Result<(ReportStatus, Value)> {
    let mut objects = Vec::new();
    let mut status = ReportStatus::Ok;
    let mut found = false;
    let mut push = |kind: &str, name: &str, r: AxiomReport| {
        let r = r.sorted();
        status = status.join(ReportStatus::of(&r));
        objects.push(json!({
            "kind": kind,
            "name": name,
            "status": r.status().as_str(),
            "violations": violations(&r),
        }));
    };
    let wanted = |name: &str| only.is_none_or(|o| o == name);
    for (name, d) in &model.algebras {
        if wanted(name) {
            found = true;
            push("algebra", name, check_axioms(d));
        }
    }
    for (name, (d, l, a)) in &model.actions {
        if wanted(name) {
            found = true;
            push("action", name, check_action(d, l, a)?);
        }
    }
    for (name, xm) in &model.crossed_modules {
        if wanted(name) {
            found = true;
            push("crossed_module", name, check_all(xm)?);
        }
    }
    for (name, data) in &model.action_data {
        if wanted(name) {
            found = true;
            push("action_data", name, check_xmod_action_data(data));
        }
    }
    if let (Some(o), false) = (only, found) {
        return Err(Error::Input(format!("--object: unknown object {o:?}")));
    }
    Ok((status, json!({ "objects": objects })))
}

fn tetra<F: Field>(model: &Model<F>, space: &str, object: &str) -> Result<(ReportStatus, Value)> {
    let s = match space {
        "L" => match model.algebras.get(object) {
            Some(d) => tetra_space(d),
            None => tetra_space(&model.xmod(object).map_err(|_| unknown_object(object))?.l),
        },
        "DL" => tetra_dl_space(model.xmod(object)?)?,
        "XMOD" => xmod_tetra_space(model.xmod(object)?)?,
        other => return Err(Error::Input(format!("--space: expected L, DL or XMOD, found {other:?}"))),
    };
    Ok((ReportStatus::Ok, space_value(&s)))
}

fn unknown_object(name: &str) -> Error {
    Error::Input(format!("--object: no algebra or crossed module named {name:?}"))
}

fn space_value<F: Field>(s: &TetraSpace<F>) -> Value {
    let layout = match s.kind().name() {
        "XMOD" => "on_l (l_left, r_left, l_right, r_right), then on_d (same order); each map row-major",
        _ => "l_left, r_left, l_right, r_right; each map row-major",
    };
    json!({
        "space": s.kind().name(),
        "dim": s.dim(),
        "ambient_dim": s.ambient_dim(),
        "layout": layout,
        "basis": basis(s.basis()),
    })
}

fn actor<F: Field>(xm: &CrossedModule<F>) -> Result<(ReportStatus, Value)> {
    let a = build_actor(xm)?;
    let check = check_all(&a.xmod)?.sorted();
    let m = canonical_morphism(xm)?;
    let morphism_report = m.report.clone().sorted();
    let status = ReportStatus::of(&check).join(ReportStatus::of(&morphism_report));
    Ok((
        status,
        json!({
            "dl_space": space_value(&a.dl_space),
            "xmod_space": space_value(&a.xmod_space),
            "actor": xmod_value(&a.xmod),
            "actor_violations": violations(&check),
            "canonical": {
                "phi": matrix(&m.phi),
                "psi": matrix(&m.psi),
                "violations": violations(&morphism_report),
            },
            "conditions": check_conditions(xm).holding(),
        }),
    ))
}

fn semidirect<F: Field>(model: &Model<F>, name: &str) -> Result<(ReportStatus, Value)> {
    let data = model.data(name)?;
    let s = semidirect_xmod(data)?;
    let check = check_all(&s.xmod)?.sorted();
    let split = split_extension_report(&s, data)?.sorted();
    Ok((
        ReportStatus::of(&check).join(ReportStatus::of(&split)),
        json!({
            "xmod": xmod_value(&s.xmod),
            "projection": { "l": matrix(&s.projection.0), "d": matrix(&s.projection.1) },
            "section": { "l": matrix(&s.section.0), "d": matrix(&s.section.1) },
            "inclusion": { "l": matrix(&s.inclusion.0), "d": matrix(&s.inclusion.1) },
            "xmod_violations": violations(&check),
            "split_violations": violations(&split),
        }),
    ))
}

fn conditions<F: Field>(c: &ConditionReport<F>) -> Value {
    json!({
        "holding": c.holding(),
        "con1": c.con1,
        "con2": c.con2,
        "con3": c.con3,
        "con4": c.con4,
        "ann_l": basis(&c.ann_l),
        "ann_d": basis(&c.ann_d),
        "l_left": basis(&c.l_left),
        "l_right": basis(&c.l_right),
        "d_left": basis(&c.d_left),
        "d_right": basis(&c.d_right),
    })
}

pub fn violations(r: &AxiomReport) -> Value {
    Value::Array(
        r.violations
            .iter()
            .map(|v| json!({ "label": v.label, "witness": v.witness, "difference": v.difference }))
            .collect(),
    )
}

fn vector<F: Field>(v: &[F]) -> Value {
    Value::Array(v.iter().map(|x| json!(x.to_string())).collect())
}

pub fn basis<F: Field>(s: &SubspaceBasis<F>) -> Value {
    Value::Array(s.vectors().iter().map(|v| vector(v)).collect())
}

pub fn matrix<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| vector(m.row(r))).collect())
}

fn tensor<F: Field>(t: &Bilinear<F>) -> Value {
    Value::Array(
        tensor_entries(t)
            .into_iter()
            .map(|(i, j, k, v)| {
                let v = match v {
                    Scalar::Text(s) => s,
                    Scalar::Int(n) => n.to_string(),
                };
                json!([i, j, k, v])
            })
            .collect(),
    )
}

fn dialgebra_value<F: Field>(d: &Dialgebra<F>) -> Value {
    json!({
        "dim": d.dim(),
        "left": tensor(d.product(crate::identity::Op::Left)),
        "right": tensor(d.product(crate::identity::Op::Right)),
    })
}

fn xmod_value<F: Field>(xm: &CrossedModule<F>) -> Value {
    let a = &xm.action;
    json!({
        "l": dialgebra_value(&xm.l),
        "d": dialgebra_value(&xm.d),
        "mu": matrix(&xm.mu),
        "action": { "dl": tensor(&a.dl), "ld": tensor(&a.ld), "dl_r": tensor(&a.dl_r), "ld_r": tensor(&a.ld_r) },
    })
}
