//! The acceptance gate: ten desk-scale criteria, one test and one printed
//! verdict line each. Everything is checked exhaustively at fixture size.

use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use qk_core::cauchy::{cauchy_completion, is_cauchy_complete};
use qk_core::centre_morita::check_prop8;
use qk_core::doctrine::{check_kz, check_theorem6, Caps};
use qk_core::enriched::{
    compose_dist, dist_bottom, dist_join, Distributor, QCategory, QFunctor,
};
use qk_core::error::Error;
use qk_core::fixtures;
use qk_core::locale_sheaf::{
    category_of_ordered_sheaf, check_suplattice_criterion, downset_to_presheaf,
    enumerate_downsets, presheaf_to_downset, Downset, OrderedSheaf,
};
use qk_core::modules::{check_corollary3, QModule};
use qk_core::presheaf::{colimit, is_cocomplete, PresheafCat};
use qk_core::quantaloid::{check_extension, QHomomorphism, Quantaloid};
use qk_core::workspace::{parse_document, Value, Workspace};

fn conclude(n: usize, slug: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("ACCEPTANCE {n} ({slug}): PASS"),
        Err(why) => {
            println!("ACCEPTANCE {n} ({slug}): FAIL - {why}");
            panic!("{slug}: {why}");
        }
    }
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn load_fixture(name: &str) -> Workspace {
    let text = fs::read_to_string(fixture_path(name)).unwrap();
    Workspace::load(&parse_document(&text).unwrap()).unwrap()
}

fn fixture_quantaloids() -> Vec<(&'static str, Quantaloid)> {
    vec![
        ("two_susp", fixtures::two_susp()),
        ("omega3_susp", fixtures::omega3_susp()),
        ("min2", fixtures::min2()),
        ("qnc", fixtures::qnc()),
        ("idm(omega3_susp)", fixtures::omega3_susp().idm().unwrap()),
    ]
}

#[test]
fn criterion_01_residuation_galois_laws() {
    let mut checked = 0usize;
    let outcome = (|| {
        for (name, q) in fixture_quantaloids() {
            let n = q.object_count();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for f in q.arrows(a, b) {
                            for h in q.arrows(a, c) {
                                let ext = q.right_extension(f, h).unwrap();
                                for x in q.arrows(b, c) {
                                    let holds = q.leq(q.compose(x, f).unwrap(), h);
                                    if holds != q.leq(x, ext) {
                                        return Err(format!(
                                            "{name}: extension Galois law fails at {} and {}",
                                            q.describe(f),
                                            q.describe(x)
                                        ));
                                    }
                                    checked += 1;
                                }
                            }
                        }
                        for g in q.arrows(b, c) {
                            for h in q.arrows(a, c) {
                                let lift = q.right_lifting(g, h).unwrap();
                                for x in q.arrows(a, b) {
                                    let holds = q.leq(q.compose(g, x).unwrap(), h);
                                    if holds != q.leq(x, lift) {
                                        return Err(format!(
                                            "{name}: lifting Galois law fails at {} and {}",
                                            q.describe(g),
                                            q.describe(x)
                                        ));
                                    }
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        if checked < 500 {
            return Err(format!("only {checked} instances checked"));
        }
        Ok(())
    })();
    conclude(1, "residuation-galois", outcome);
}

fn arc(q: Quantaloid) -> Arc<Quantaloid> {
    Arc::new(q)
}

fn twochain_over(base: &Arc<Quantaloid>) -> Arc<QCategory> {
    let top = base.hom(0, 0).top();
    let bot = base.hom(0, 0).bottom();
    Arc::new(
        QCategory::new(
            base.clone(),
            vec!["x".into(), "y".into()],
            vec![0, 0],
            vec![vec![top, bot], vec![top, top]],
        )
        .unwrap(),
    )
}

fn discrete2_over(base: &Arc<Quantaloid>) -> Arc<QCategory> {
    let top = base.hom(0, 0).top();
    let bot = base.hom(0, 0).bottom();
    Arc::new(
        QCategory::new(
            base.clone(),
            vec!["d1".into(), "d2".into()],
            vec![0, 0],
            vec![vec![top, bot], vec![bot, top]],
        )
        .unwrap(),
    )
}

/// Every valid distributor between two categories, by scanning all matrices.
fn all_distributors(source: &Arc<QCategory>, target: &Arc<QCategory>) -> Vec<Distributor> {
    let mut matrices: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for b in 0..target.object_count() {
        let mut next = Vec::new();
        for m in &matrices {
            let mut rows: Vec<Vec<usize>> = vec![vec![]];
            for a in 0..source.object_count() {
                let lat = source.base.hom(source.typ(a), target.typ(b));
                rows = rows
                    .into_iter()
                    .flat_map(|r| {
                        (0..lat.len()).map(move |e| {
                            let mut r2 = r.clone();
                            r2.push(e);
                            r2
                        })
                    })
                    .collect();
            }
            for row in rows {
                let mut m2 = m.clone();
                m2.push(row);
                next.push(m2);
            }
        }
        matrices = next;
    }
    matrices
        .into_iter()
        .filter_map(|m| Distributor::new(source.clone(), target.clone(), m).ok())
        .collect()
}

fn all_functors(source: &Arc<QCategory>, target: &Arc<QCategory>) -> Vec<QFunctor> {
    let mut maps: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..source.object_count() {
        maps = maps
            .into_iter()
            .flat_map(|m| {
                (0..target.object_count()).map(move |y| {
                    let mut m2 = m.clone();
                    m2.push(y);
                    m2
                })
            })
            .collect();
    }
    maps.into_iter()
        .filter_map(|m| QFunctor::new(source.clone(), target.clone(), m).ok())
        .collect()
}

#[test]
fn criterion_02_distributor_quantaloid_laws() {
    let err = |e: Error| e.to_string();
    let outcome = (|| {
        let base = arc(fixtures::two_susp());
        let cats = [
            Arc::new(QCategory::unit(base.clone(), 0)),
            twochain_over(&base),
            discrete2_over(&base),
        ];
        let mut checked = 0usize;

        for a in &cats {
            for b in &cats {
                let phis = all_distributors(a, b);
                for phi in &phis {
                    // units
                    if compose_dist(phi, &Distributor::identity(a.clone())).map_err(err)? != *phi
                        || compose_dist(&Distributor::identity(b.clone()), phi).map_err(err)?
                            != *phi
                    {
                        return Err("a unit law fails".into());
                    }
                    checked += 1;
                }
                for c in &cats {
                    let psis = all_distributors(b, c);
                    // join preservation in the inner variable, empty join included
                    for psi in &psis {
                        let bottom_ab = dist_bottom(a.clone(), b.clone()).map_err(err)?;
                        let bottom_ac = dist_bottom(a.clone(), c.clone()).map_err(err)?;
                        if compose_dist(psi, &bottom_ab).map_err(err)? != bottom_ac {
                            return Err("composition does not preserve the empty join".into());
                        }
                        for p1 in &phis {
                            for p2 in &phis {
                                let joined =
                                    compose_dist(psi, &dist_join(p1, p2).map_err(err)?)
                                        .map_err(err)?;
                                let split = dist_join(
                                    &compose_dist(psi, p1).map_err(err)?,
                                    &compose_dist(psi, p2).map_err(err)?,
                                )
                                .map_err(err)?;
                                if joined != split {
                                    return Err(
                                        "composition does not preserve binary joins".into()
                                    );
                                }
                                checked += 1;
                            }
                        }
                    }
                    // join preservation in the outer variable
                    for phi in &phis {
                        for s1 in &psis {
                            for s2 in &psis {
                                let joined =
                                    compose_dist(&dist_join(s1, s2).map_err(err)?, phi)
                                        .map_err(err)?;
                                let split = dist_join(
                                    &compose_dist(s1, phi).map_err(err)?,
                                    &compose_dist(s2, phi).map_err(err)?,
                                )
                                .map_err(err)?;
                                if joined != split {
                                    return Err(
                                        "composition does not preserve joins on the left".into(),
                                    );
                                }
                                checked += 1;
                            }
                        }
                    }
                    // associativity over every quadruple of categories
                    for d in &cats {
                        let xis = all_distributors(c, d);
                        for phi in &phis {
                            for psi in &psis {
                                for xi in &xis {
                                    let left =
                                        compose_dist(xi, &compose_dist(psi, phi).map_err(err)?)
                                            .map_err(err)?;
                                    let right =
                                        compose_dist(&compose_dist(xi, psi).map_err(err)?, phi)
                                            .map_err(err)?;
                                    if left != right {
                                        return Err("associativity fails".into());
                                    }
                                    checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        if checked < 10_000 {
            return Err(format!("only {checked} instances checked"));
        }
        Ok(())
    })();
    conclude(2, "distributor-laws", outcome);
}

#[test]
fn criterion_03_splitting_extension_exists_uniquely() {
    let outcome = (|| {
        for (name, q) in fixture_quantaloids() {
            let idm = q.idm().map_err(|e| format!("{name}: {e}"))?;
            let embed =
                QHomomorphism::into_idm(&q, &idm).map_err(|e| format!("{name}: {e}"))?;
            let ext = check_extension(&q, &idm, &embed).map_err(|e| format!("{name}: {e}"))?;
            if ext.extensions.is_empty() {
                return Err(format!("{name}: no extension found"));
            }
            let failed = ext.report.failures().next().map(|c| c.law.clone());
            if let Some(law) = failed {
                return Err(format!("{name}: {law}"));
            }
        }
        Ok(())
    })();
    conclude(3, "splitting-extension", outcome);
}

#[test]
fn criterion_04_kz_doctrine_laws() {
    let outcome = (|| {
        let ws = load_fixture("core.json");
        let mut seen = 0usize;
        for (name, value) in ws.iter() {
            let Value::Category(cat) = value else { continue };
            let report =
                check_kz(cat.clone(), Caps::default()).map_err(|e| format!("{name}: {e}"))?;
            let failed = report.failures().next().map(|c| c.law.clone());
            if let Some(law) = failed {
                return Err(format!("{name}: {law}"));
            }
            let lax = report
                .checks
                .iter()
                .any(|c| c.law == "image of the unit is below the unit at the image" && c.pass);
            if !lax {
                return Err(format!("{name}: lax idempotency line missing"));
            }
            seen += 1;
        }
        if seen < 3 {
            return Err(format!("only {seen} categories checked"));
        }
        Ok(())
    })();
    conclude(4, "kz-doctrine", outcome);
}

fn grouped_samples(ws: &Workspace) -> Vec<(String, Arc<Quantaloid>, Vec<(String, QModule)>)> {
    let mods: Vec<(String, QModule)> = ws
        .iter()
        .filter_map(|(n, v)| match v {
            Value::Module(m) => Some((n.to_string(), m.clone())),
            _ => None,
        })
        .collect();
    ws.iter()
        .filter_map(|(n, v)| match v {
            Value::Quantaloid(q) => {
                let samples: Vec<(String, QModule)> =
                    mods.iter().filter(|(_, m)| *m.base == **q).cloned().collect();
                Some((n.to_string(), q.clone(), samples))
            }
            _ => None,
        })
        .collect()
}

#[test]
fn criterion_05_modules_are_the_algebras() {
    let outcome = (|| {
        let ws = load_fixture("core.json");
        let orders: Vec<(String, qk_core::cauchy::QOrder)> = ws
            .iter()
            .filter_map(|(n, v)| match v {
                Value::Order(o) => Some((n.to_string(), o.clone())),
                _ => None,
            })
            .collect();
        let mut seen = 0usize;
        for (name, q, samples) in grouped_samples(&ws) {
            let os: Vec<_> =
                orders.iter().filter(|(_, o)| *o.q == *q).cloned().collect();
            if samples.is_empty() && os.is_empty() {
                continue;
            }
            let report =
                check_theorem6(&q, &samples, &os).map_err(|e| format!("{name}: {e}"))?;
            let failed = report
                .failures()
                .next()
                .map(|c| (c.law.clone(), c.witness.clone().unwrap_or_default()));
            if let Some((law, witness)) = failed {
                return Err(format!("{name}: {law}: {witness}"));
            }
            seen += 1;
        }
        if seen < 2 {
            return Err(format!("only {seen} bases checked"));
        }
        Ok(())
    })();
    conclude(5, "modules-are-algebras", outcome);
}

#[test]
fn criterion_06_module_category_round_trips() {
    let outcome = (|| {
        let ws = load_fixture("core.json");
        let mut seen = 0usize;
        for (name, q, samples) in grouped_samples(&ws) {
            if samples.is_empty() {
                continue;
            }
            let report =
                check_corollary3(&q, &samples).map_err(|e| format!("{name}: {e}"))?;
            let failed = report.failures().next().map(|c| c.law.clone());
            if let Some(law) = failed {
                return Err(format!("{name}: {law}"));
            }
            // both the base and its completion must be covered per sample
            for (sample, _) in &samples {
                let plain = format!("{sample}: module round-trip is an isomorphism");
                let extended = format!("{sample}: extended round-trip is an isomorphism");
                for wanted in [&plain, &extended] {
                    if !report.checks.iter().any(|c| c.law == **wanted && c.pass) {
                        return Err(format!("{name}: line {wanted:?} missing"));
                    }
                }
            }
            seen += 1;
        }
        if seen < 2 {
            return Err(format!("only {seen} bases checked"));
        }
        Ok(())
    })();
    conclude(6, "module-category-round-trips", outcome);
}

fn sheaf_bijection(name: &str, o: &OrderedSheaf) -> Result<(), String> {
    let sc = category_of_ordered_sheaf(o).map_err(|e| format!("{name}: {e}"))?;
    let cat = sc.cat().clone();
    let pcat = PresheafCat::new(cat.clone()).map_err(|e| format!("{name}: {e}"))?;
    let frame = &o.sheaf.locale.frame;
    for u in 0..frame.len() {
        let downsets = enumerate_downsets(o, u);
        let matching: Vec<_> = pcat.members.iter().filter(|m| m.typ == u).collect();
        if downsets.len() != matching.len() {
            return Err(format!(
                "{name}: {} downsets vs {} presheaves at {}",
                downsets.len(),
                matching.len(),
                frame.name(u)
            ));
        }
        for s in &downsets {
            let phi = downset_to_presheaf(o, &sc, s).map_err(|e| format!("{name}: {e}"))?;
            let back =
                presheaf_to_downset(o, &sc, &phi).map_err(|e| format!("{name}: {e}"))?;
            if back != *s {
                return Err(format!("{name}: downset round trip moved {}", s.name(o)));
            }
        }
        for phi in matching {
            let s = presheaf_to_downset(o, &sc, phi).map_err(|e| format!("{name}: {e}"))?;
            let again =
                downset_to_presheaf(o, &sc, &s).map_err(|e| format!("{name}: {e}"))?;
            if again.elem != phi.elem {
                return Err(format!("{name}: presheaf round trip moved a presheaf"));
            }
        }
    }
    for (obj, &(v, x)) in sc.section_of.iter().enumerate() {
        let s = Downset::principal(o, v, x);
        let phi = downset_to_presheaf(o, &sc, &s).map_err(|e| format!("{name}: {e}"))?;
        for other in 0..cat.object_count() {
            if phi.elem[other] != cat.hom_elem(other, obj) {
                return Err(format!(
                    "{name}: principal downset at {} is not the representable",
                    cat.object_name(obj)
                ));
            }
        }
    }
    Ok(())
}

#[test]
fn criterion_07_downsets_as_presheaves() {
    let outcome = (|| {
        let ws = load_fixture("sheaves.json");
        let mut frames_seen = Vec::new();
        let mut seen = 0usize;
        for (name, value) in ws.iter() {
            let Value::Sheaf(o) = value else { continue };
            if !o.validate().all_pass() {
                return Err(format!("{name}: sheaf fixture fails validation"));
            }
            sheaf_bijection(name, o)?;
            let c = check_suplattice_criterion(o).map_err(|e| format!("{name}: {e}"))?;
            if c.sups != c.cocomplete {
                return Err(format!(
                    "{name}: criterion sides disagree (suprema {}, cocomplete {})",
                    c.sups, c.cocomplete
                ));
            }
            if !c.report.all_pass() {
                return Err(format!("{name}: criterion report has failures"));
            }
            frames_seen.push(o.sheaf.locale.frame.len());
            seen += 1;
        }
        if !frames_seen.contains(&2) || !frames_seen.contains(&3) {
            return Err("the boolean and three-chain frames must both appear".into());
        }
        if seen < 5 {
            return Err(format!("only {seen} sheaf fixtures checked"));
        }
        Ok(())
    })();
    conclude(7, "downsets-as-presheaves", outcome);
}

#[test]
fn criterion_08_centre_transfer() {
    let outcome = (|| {
        let ws = load_fixture("core.json");
        let mut seen = 0usize;
        for (name, q, samples) in grouped_samples(&ws) {
            let report = check_prop8(&q, &samples).map_err(|e| format!("{name}: {e}"))?;
            let failed = report.failures().next().map(|c| c.law.clone());
            if let Some(law) = failed {
                return Err(format!("{name}: {law}"));
            }
            for wanted in [
                "return transfer undoes the forward transfer on the whole centre",
                "forward transfer preserves unit, joins and composition (module side sampled)",
                "return transfer preserves unit, joins and composition on transferred families",
                "centre is commutative",
            ] {
                if !report.checks.iter().any(|c| c.law == wanted && c.pass) {
                    return Err(format!("{name}: line {wanted:?} missing"));
                }
            }
            seen += 1;
        }
        // the endomap quantale has a proper centre; include it directly
        let q = arc(fixtures::qnc());
        let report = check_prop8(&q, &[]).map_err(|e| format!("qnc: {e}"))?;
        let failed = report.failures().next().map(|c| c.law.clone());
        if let Some(law) = failed {
            return Err(format!("qnc: {law}"));
        }
        if seen < 4 {
            return Err(format!("only {seen} bases checked"));
        }
        Ok(())
    })();
    conclude(8, "centre-transfer", outcome);
}

#[test]
fn criterion_09_cauchy_colimits_are_absolute() {
    let outcome = (|| {
        let base = arc(fixtures::two_susp());
        let family = [
            Arc::new(QCategory::unit(base.clone(), 0)),
            twochain_over(&base),
            discrete2_over(&base),
        ];
        let mut colimits_checked = 0usize;
        for a in &family {
            let cc = is_cauchy_complete(a.clone()).map_err(|e| e.to_string())?;
            for &i in &cc.cauchy {
                let weight = cc.pcat.members[i].as_distributor();
                let k = match colimit(&weight, &QFunctor::identity(a.clone())) {
                    Ok(k) => k,
                    Err(Error::ColimitMissing(_)) => continue,
                    Err(e) => return Err(e.to_string()),
                };
                for tgt in &family {
                    for g in all_functors(a, tgt) {
                        let direct = colimit(&weight, &g).map_err(|e| e.to_string())?;
                        if g.apply(k.apply(0)) != direct.apply(0) {
                            return Err(format!(
                                "a functor into {} moves a Cauchy colimit",
                                tgt.object_name(0)
                            ));
                        }
                        colimits_checked += 1;
                    }
                }
            }
        }
        if colimits_checked < 20 {
            return Err(format!("only {colimits_checked} preservation instances"));
        }

        // cocomplete implies Cauchy complete, with genuinely cocomplete cases
        let ws = load_fixture("core.json");
        let Some(Value::Category(ord2cat)) = ws.get("ord2cat") else {
            return Err("ord2cat missing from the core fixture".into());
        };
        let mut instances: Vec<Arc<QCategory>> = family.to_vec();
        instances.push(ord2cat.clone());
        instances.push(PresheafCat::new(twochain_over(&base)).map_err(|e| e.to_string())?.cat);
        instances
            .push(PresheafCat::new(discrete2_over(&base)).map_err(|e| e.to_string())?.cat);
        instances.push(
            cauchy_completion(Arc::new(QCategory::unit(base.clone(), 0)))
                .map_err(|e| e.to_string())?
                .cat,
        );
        let mut cocomplete_seen = 0usize;
        for cat in &instances {
            let cocomplete = is_cocomplete(cat.clone()).map_err(|e| e.to_string())?.complete();
            if cocomplete {
                cocomplete_seen += 1;
                let cauchy = is_cauchy_complete(cat.clone()).map_err(|e| e.to_string())?;
                if !cauchy.complete {
                    return Err(format!(
                        "a cocomplete category is not Cauchy complete: {}",
                        cauchy.witness.unwrap_or_default()
                    ));
                }
            }
        }
        if cocomplete_seen < 3 {
            return Err(format!("only {cocomplete_seen} cocomplete instances"));
        }
        Ok(())
    })();
    conclude(9, "cauchy-absoluteness", outcome);
}

fn qk(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qk"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

#[test]
fn criterion_10_construction_is_deterministic() {
    let outcome = (|| {
        let core = fixture_path("core.json");
        let core = core.to_str().unwrap();
        let runs: Vec<Vec<&str>> = vec![
            vec!["construct", "idm", "two_susp", core],
            vec!["construct", "idm", "omega3_susp", core],
            vec!["construct", "idm", "min2", core],
            vec!["construct", "centre", "omega3_susp", core],
            vec!["construct", "centre", "min2", core],
            vec!["construct", "suspension", "omega3_meet", core],
            vec!["construct", "presheaf-category", "twochain", core],
            vec!["construct", "presheaf-category", "unit", core],
            vec!["construct", "cauchy-completion", "unit", core],
            vec!["construct", "category-of-module", "meetmod", core],
            vec!["construct", "category-of-module", "diamondmod", core],
            vec!["construct", "module-of-category", "ord2cat", core],
            vec!["check", "lemma1", core],
        ];
        for args in &runs {
            let (first, code1) = qk(args);
            let (second, code2) = qk(args);
            if code1 != 0 || code2 != 0 {
                return Err(format!("{args:?} exited {code1}/{code2}"));
            }
            if first.is_empty() {
                return Err(format!("{args:?} produced no output"));
            }
            if first != second {
                return Err(format!("{args:?} differs between runs"));
            }
        }
        Ok(())
    })();
    conclude(10, "deterministic-construction", outcome);
}
