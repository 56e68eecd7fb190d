//! The construction verbs: each takes a named definition, derives a new
//! structure, and emits it as a document that reloads to an equal value.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use qk_core::cauchy::cauchy_completion;
use qk_core::error::{Error, Result};
use qk_core::modules::{category_of_module, module_of_category};
use qk_core::presheaf::PresheafCat;
use qk_core::quantaloid::centre;
use qk_core::workspace::{document_for, parse_document, to_json, Value, Workspace};

use crate::{load_workspace, Verb};

pub fn run(verb: Verb, name: &str, file: &Path, out: Option<&Path>) -> Result<bool> {
    let ws = load_workspace(file)?;
    let value = ws
        .get(name)
        .ok_or_else(|| Error::input(format!("no definition named {name:?}")))?;
    let (out_name, derived) = derive(verb, name, value)?;

    let doc = document_for(&out_name, &derived)?;
    let text = to_json(&doc);
    confirm_reload(&text, &out_name, &derived)?;

    match out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    eprintln!("{out_name}: {} definitions", doc.definitions.len());
    Ok(true)
}

fn derive(verb: Verb, name: &str, value: &Value) -> Result<(String, Value)> {
    let wrong = |want: &str| {
        Error::input(format!("{name:?} is a {}, but this verb needs a {want}", value.kind()))
    };
    Ok(match verb {
        Verb::Idm => {
            let Value::Quantaloid(q) = value else { return Err(wrong("quantaloid")) };
            (format!("{name}.idm"), Value::Quantaloid(Arc::new(q.idm()?)))
        }
        Verb::Centre => {
            let Value::Quantaloid(q) = value else { return Err(wrong("quantaloid")) };
            (format!("{name}.centre"), Value::Quantale(centre(q)?.0))
        }
        Verb::Suspension => {
            let Value::Quantale(z) = value else { return Err(wrong("quantale")) };
            (format!("{name}.susp"), Value::Quantaloid(Arc::new(z.clone().suspension("*")?)))
        }
        Verb::PresheafCategory => {
            let Value::Category(c) = value else { return Err(wrong("category")) };
            (format!("{name}.psh"), Value::Category(PresheafCat::new(c.clone())?.cat))
        }
        Verb::CauchyCompletion => {
            let Value::Category(c) = value else { return Err(wrong("category")) };
            (format!("{name}.cc"), Value::Category(cauchy_completion(c.clone())?.cat))
        }
        Verb::CategoryOfModule => {
            let Value::Module(m) = value else { return Err(wrong("module")) };
            (format!("{name}.cat"), Value::Category(category_of_module(m)?.cat))
        }
        Verb::ModuleOfCategory => {
            let Value::Category(c) = value else { return Err(wrong("category")) };
            (format!("{name}.mod"), Value::Module(module_of_category(c.clone())?.module))
        }
    })
}

/// Emitted documents must reload to the value they came from.
fn confirm_reload(text: &str, name: &str, expected: &Value) -> Result<()> {
    let ws = Workspace::load(&parse_document(text)?)?;
    let same = match (ws.get(name), expected) {
        (Some(Value::Lattice(a)), Value::Lattice(b)) => a == b,
        (Some(Value::Quantale(a)), Value::Quantale(b)) => a == b,
        (Some(Value::Quantaloid(a)), Value::Quantaloid(b)) => a == b,
        (Some(Value::Category(a)), Value::Category(b)) => a == b,
        (Some(Value::Module(a)), Value::Module(b)) => a == b,
        _ => false,
    };
    if !same {
        return Err(Error::precondition(format!(
            "emitted document for {name:?} does not reload to the same structure"
        )));
    }
    Ok(())
}
