//! The check suites: each walks the workspace, runs one family of law
//! checks over every eligible definition, and labels the reports by
//! definition name. A document that lacks the structures a suite needs is
//! a missing-fixture error, never a silent pass.

use std::sync::Arc;

use qk_core::cauchy::{cauchy_completion, make_order, QOrder};
use qk_core::centre_morita::{
    check_centre_invariance, check_prop8, doubling_equivalence, duplicate_object,
    EquivalenceData,
};
use qk_core::doctrine::{check_kz, check_lemma4_instance, check_theorem6, Caps};
use qk_core::enriched::QCategory;
use qk_core::error::{Error, Result};
use qk_core::locale_sheaf::{
    category_of_ordered_sheaf, check_suplattice_criterion, downset_to_presheaf,
    enumerate_downsets, presheaf_to_downset, Downset, OrderedSheaf,
};
use qk_core::modules::{check_corollary3, QModule};
use qk_core::presheaf::PresheafCat;
use qk_core::quantaloid::{check_extension, QHomomorphism, Quantaloid};
use qk_core::report::Report;
use qk_core::workspace::{Value, Workspace};

use crate::Suite;

pub fn run(suite: Suite, ws: &Workspace, caps: Caps) -> Result<Vec<(String, Report)>> {
    match suite {
        Suite::Lemma1 => lemma1(ws),
        Suite::Corollary3 => corollary3(ws),
        Suite::Lemma4 => lemma4(ws),
        Suite::Theorem6 => theorem6(ws),
        Suite::Example3 => example3(ws),
        Suite::Prop8 => prop8(ws),
        Suite::Prop10 => prop10(ws),
        Suite::Kz => kz(ws, caps),
    }
}

fn missing(what: &str) -> Error {
    Error::MissingFixture(format!("the document defines no {what}"))
}

fn quantaloids(ws: &Workspace) -> Vec<(String, Arc<Quantaloid>)> {
    ws.iter()
        .filter_map(|(n, v)| match v {
            Value::Quantaloid(q) => Some((n.to_string(), q.clone())),
            _ => None,
        })
        .collect()
}

fn categories(ws: &Workspace) -> Vec<(String, Arc<QCategory>)> {
    ws.iter()
        .filter_map(|(n, v)| match v {
            Value::Category(c) => Some((n.to_string(), c.clone())),
            _ => None,
        })
        .collect()
}

fn modules(ws: &Workspace) -> Vec<(String, QModule)> {
    ws.iter()
        .filter_map(|(n, v)| match v {
            Value::Module(m) => Some((n.to_string(), m.clone())),
            _ => None,
        })
        .collect()
}

fn orders(ws: &Workspace) -> Vec<(String, QOrder)> {
    ws.iter()
        .filter_map(|(n, v)| match v {
            Value::Order(o) => Some((n.to_string(), o.clone())),
            _ => None,
        })
        .collect()
}

fn lemma1(ws: &Workspace) -> Result<Vec<(String, Report)>> {
    let qs = quantaloids(ws);
    if qs.is_empty() {
        return Err(missing("quantaloids"));
    }
    qs.iter()
        .map(|(name, q)| {
            let idm = q.idm()?;
            let embed = QHomomorphism::into_idm(q, &idm)?;
            Ok((name.clone(), check_extension(q, &idm, &embed)?.report))
        })
        .collect()
}

fn corollary3(ws: &Workspace) -> Result<Vec<(String, Report)>> {
    let mods = modules(ws);
    if mods.is_empty() {
        return Err(missing("modules"));
    }
    let mut out = Vec::new();
    for (name, q) in quantaloids(ws) {
        let samples: Vec<(String, QModule)> =
            mods.iter().filter(|(_, m)| *m.base == *q).cloned().collect();
        if samples.is_empty() {
            continue;
        }
        out.push((name, check_corollary3(&q, &samples)?));
    }
    Ok(out)
}

/// A small certified order from a bare quantaloid: complete the one-object
/// category at the first identity idempotent.
fn derived_order(q: &Arc<Quantaloid>) -> Result<QOrder> {
    let idm = Arc::new(q.idm()?);
    let unit = Arc::new(QCategory::unit(idm, q.idm_object_of(0)));
    let completion = cauchy_completion(unit)?;
    make_order(q.clone(), completion.cat)
}

fn lemma4(ws: &Workspace) -> Result<Vec<(String, Report)>> {
    let qs = quantaloids(ws);
    let ords = orders(ws);
    if qs.is_empty() && ords.is_empty() {
        return Err(missing("quantaloids or orders"));
    }
    let mut out = Vec::new();
    for (name, ord) in &ords {
        out.push((name.clone(), check_lemma4_instance(ord)?));
    }
    for (name, q) in &qs {
        let ord = derived_order(q)?;
        out.push((format!("{name} (derived order)"), check_lemma4_instance(&ord)?));
    }
    Ok(out)
}

fn theorem6(ws: &Workspace) -> Result<Vec<(String, Report)>> {
    let mods = modules(ws);
    let ords = orders(ws);
    if mods.is_empty() && ords.is_empty() {
        return Err(missing("modules or orders"));
    }
    let mut out = Vec::new();
    for (name, q) in quantaloids(ws) {
        let ms: Vec<(String, QModule)> =
            mods.iter().filter(|(_, m)| *m.base == *q).cloned().collect();
        let os: Vec<(String, QOrder)> =
            ords.iter().filter(|(_, o)| *o.q == *q).cloned().collect();
        if ms.is_empty() && os.is_empty() {
            continue;
        }
        out.push((name, check_theorem6(&q, &ms, &os)?));
    }
    if out.is_empty() {
        return Err(missing("modules or orders over a defined quantaloid"));
    }
    Ok(out)
}

fn example3(ws: &Workspace) -> Result<Vec<(String, Report)>> {
    let sheaves: Vec<(&str, &OrderedSheaf)> = ws
        .iter()
        .filter_map(|(n, v)| match v {
            Value::Sheaf(o) => Some((n, o)),
            _ => None,
        })
        .collect();
    if sheaves.is_empty() {
        return Err(missing("sheaves"));
    }
    sheaves
        .into_iter()
        .map(|(name, o)| Ok((name.to_string(), sheaf_report(o)?)))
        .collect()
}

/// Downsets against presheaves over the category of sections: mutually
/// inverse translations, representables from principal downsets, and the
/// two completeness readings agreeing.
fn sheaf_report(o: &OrderedSheaf) -> Result<Report> {
    let mut report = o.validate();
    if !report.all_pass() {
        return Ok(report);
    }
    let sc = category_of_ordered_sheaf(o)?;
    let cat = sc.cat().clone();
    let pcat = PresheafCat::new(cat.clone())?;
    let frame = &o.sheaf.locale.frame;

    let mut ok = true;
    let mut witness = String::new();
    'levels: for u in 0..frame.len() {
        let downsets = enumerate_downsets(o, u);
        let matching: Vec<_> = pcat.members.iter().filter(|m| m.typ == u).collect();
        if downsets.len() != matching.len() {
            ok = false;
            witness = format!(
                "at {}: {} downsets, {} presheaves",
                frame.name(u),
                downsets.len(),
                matching.len()
            );
            break;
        }
        for s in &downsets {
            let phi = downset_to_presheaf(o, &sc, s)?;
            if presheaf_to_downset(o, &sc, &phi)? != *s {
                ok = false;
                witness = format!("{} does not survive the round trip", s.name(o));
                break 'levels;
            }
        }
        for phi in matching {
            let s = presheaf_to_downset(o, &sc, phi)?;
            if downset_to_presheaf(o, &sc, &s)?.elem != phi.elem {
                ok = false;
                witness = format!("a presheaf at {} does not survive the round trip", frame.name(u));
                break 'levels;
            }
        }
    }
    report.check("downsets and presheaves translate into each other bijectively", ok, || witness);

    let mut rep_ok = true;
    let mut rep_witness = String::new();
    for (obj, &(v, x)) in sc.section_of.iter().enumerate() {
        let s = Downset::principal(o, v, x);
        let phi = downset_to_presheaf(o, &sc, &s)?;
        for other in 0..cat.object_count() {
            if phi.elem[other] != cat.hom_elem(other, obj) {
                rep_ok = false;
                rep_witness = format!("at object {}", cat.object_name(obj));
            }
        }
    }
    report.check("principal downsets are the representable presheaves", rep_ok, || rep_witness);

    report.merge(check_suplattice_criterion(o)?.report);
    Ok(report)
}

fn prop8(ws: &Workspace) -> Result<Vec<(String, Report)>> {
    let qs = quantaloids(ws);
    if qs.is_empty() {
        return Err(missing("quantaloids"));
    }
    let mods = modules(ws);
    qs.iter()
        .map(|(name, q)| {
            let samples: Vec<(String, QModule)> =
                mods.iter().filter(|(_, m)| *m.base == **q).cloned().collect();
            Ok((name.clone(), check_prop8(q, &samples)?))
        })
        .collect()
}

fn prop10(ws: &Workspace) -> Result<Vec<(String, Report)>> {
    let qs = quantaloids(ws);
    if qs.is_empty() {
        return Err(missing("quantaloids"));
    }
    let mut out = Vec::new();
    for (name, q) in &qs {
        let identity = EquivalenceData {
            forward: QHomomorphism::identity(q),
            backward: QHomomorphism::identity(q),
        };
        out.push((
            format!("{name} (identity equivalence)"),
            check_centre_invariance(q, q, &identity)?,
        ));

        let copy = format!("{}'", q.object_name(0));
        let doubled = duplicate_object(q, 0, &copy)?;
        let equivalence = doubling_equivalence(q, &doubled, 0);
        out.push((
            format!("{name} (doubled object)"),
            check_centre_invariance(q, &doubled, &equivalence)?,
        ));
    }
    Ok(out)
}

fn kz(ws: &Workspace, caps: Caps) -> Result<Vec<(String, Report)>> {
    let cats = categories(ws);
    if cats.is_empty() {
        return Err(missing("categories"));
    }
    cats.iter()
        .map(|(name, c)| Ok((name.clone(), check_kz(c.clone(), caps)?)))
        .collect()
}
