//! The presheaf construction as a doctrine: monad data on a category, the
//! lax-idempotency inequality, algebra detection, and the instantiated
//! equivalence between modules and algebras.
//!
//! Everything here is computed per instance. The unit is the Yoneda
//! embedding, the multiplication is the supremum operator on presheaves of
//! presheaves, and functor equality means object-map equality (presheaf
//! categories are skeletal by construction).

use std::sync::Arc;

use crate::cauchy::{is_cauchy_complete_with, make_order, QOrder};
use crate::enriched::{functor_leq, QCategory, QFunctor};
use crate::error::{Error, Result};
use crate::modules::{
    category_of_module, extend_to_idm, functor_of_morphism, module_of_category,
    natural_endomorphisms, QModule,
};
use crate::presheaf::{is_cocomplete_with, presheaf_map, yoneda, PresheafCat};
use crate::quantaloid::Quantaloid;
use crate::report::Report;

/// Size ceiling for inputs to the doctrine tower. Three presheaf levels
/// are enumerated eagerly, so the input itself must stay small.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub max_hom: usize,
    pub max_obj: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_hom: 4, max_obj: 3 }
    }
}

pub fn check_caps(cat: &QCategory, caps: Caps) -> Result<()> {
    if cat.object_count() > caps.max_obj {
        return Err(Error::resource(format!(
            "category has {} objects, cap is {}",
            cat.object_count(),
            caps.max_obj
        )));
    }
    let base = &cat.base;
    for a in 0..base.object_count() {
        for b in 0..base.object_count() {
            let size = base.hom(a, b).len();
            if size > caps.max_hom {
                return Err(Error::resource(format!(
                    "hom({}, {}) has {} arrows, cap is {}",
                    base.object_name(a),
                    base.object_name(b),
                    size,
                    caps.max_hom
                )));
            }
        }
    }
    Ok(())
}

/// The monad data at one category: presheaves, the Yoneda unit, presheaves
/// of presheaves, and the supremum multiplication.
#[derive(Debug)]
pub struct DoctrineInstance {
    pub cat: Arc<QCategory>,
    pub presheaves: PresheafCat,
    pub double: PresheafCat,
    /// Yoneda embedding into the presheaf category.
    pub unit: QFunctor,
    /// Supremum operator, one presheaf level down.
    pub mult: QFunctor,
}

impl DoctrineInstance {
    pub fn new(cat: Arc<QCategory>) -> Result<DoctrineInstance> {
        let presheaves = PresheafCat::new(cat.clone())?;
        let double = PresheafCat::new(presheaves.cat.clone())?;
        let unit = yoneda(&presheaves);
        let mult = is_cocomplete_with(double.clone())?
            .sup_functor()
            .expect("presheaf categories are cocomplete");
        Ok(DoctrineInstance { cat, presheaves, double, unit, mult })
    }
}

fn first_difference(f: &QFunctor, g: &QFunctor) -> String {
    (0..f.map.len())
        .find(|&i| f.map[i] != g.map[i])
        .map(|i| format!("maps differ at {}", f.source.object_name(i)))
        .unwrap_or_default()
}

/// Monad laws and the lax-idempotency inequality at one instance.
pub fn check_kz(cat: Arc<QCategory>, caps: Caps) -> Result<Report> {
    check_caps(&cat, caps)?;
    let inst = DoctrineInstance::new(cat)?;
    let triple = PresheafCat::new(inst.double.cat.clone())?;
    let mut report = Report::new("doctrine laws");

    let t_unit = presheaf_map(&inst.unit, &inst.presheaves, &inst.double)?;
    let unit_t = yoneda(&inst.double);
    let identity: Vec<usize> = (0..inst.presheaves.len()).collect();

    let left = inst.mult.compose(&t_unit)?;
    report.check("multiplication absorbs the image of the unit", left.map == identity, || {
        first_difference(&left, &QFunctor::identity(inst.presheaves.cat.clone()))
    });

    let right = inst.mult.compose(&unit_t)?;
    report.check("multiplication absorbs the unit at the image", right.map == identity, || {
        first_difference(&right, &QFunctor::identity(inst.presheaves.cat.clone()))
    });

    let mult_t = is_cocomplete_with(triple.clone())?
        .sup_functor()
        .expect("presheaf categories are cocomplete");
    let t_mult = presheaf_map(&inst.mult, &triple, &inst.double)?;
    let assoc_l = inst.mult.compose(&t_mult)?;
    let assoc_r = inst.mult.compose(&mult_t)?;
    report.check("multiplication is associative", assoc_l.map == assoc_r.map, || {
        first_difference(&assoc_l, &assoc_r)
    });

    report.check(
        "image of the unit is below the unit at the image",
        functor_leq(&t_unit, &unit_t).unwrap_or(false),
        || "lax idempotency fails".into(),
    );

    Ok(report)
}

/// Algebra detection: whether the Yoneda embedding of a certified order has
/// a left adjoint. Each presheaf is solved independently, since the adjoint
/// must realize the hom row `hom(L phi, -) = hom(phi, yoneda -)`; the least
/// realizer is chosen, as satisfiers are isomorphic.
#[derive(Debug)]
pub struct Algebra {
    pub algebra: bool,
    pub structure: Option<QFunctor>,
    /// A presheaf with no realizer, when not an algebra.
    pub witness: Option<String>,
    /// Consistency lines: agreement with cocompleteness, and the adjunction
    /// inequalities when the structure map exists.
    pub report: Report,
}

pub fn is_algebra(order: &QOrder) -> Result<Algebra> {
    let cat = &order.cat;
    let pcat = PresheafCat::new(cat.clone())?;
    let y = yoneda(&pcat);

    let mut map = Vec::with_capacity(pcat.len());
    let mut witness = None;
    for (i, phi) in pcat.members.iter().enumerate() {
        let found = (0..cat.object_count()).find(|&k| {
            cat.typ(k) == phi.typ
                && (0..cat.object_count())
                    .all(|x| cat.hom_elem(k, x) == pcat.cat.hom_elem(i, y.apply(x)))
        });
        match found {
            Some(k) => map.push(k),
            None => {
                witness = Some(phi.name());
                break;
            }
        }
    }

    let mut report = Report::new("algebra structure");
    let structure = if witness.is_none() {
        let l = QFunctor::new(pcat.cat.clone(), cat.clone(), map)?;
        let unit_ok =
            (0..pcat.len()).all(|i| pcat.cat.obj_leq(i, y.apply(l.apply(i))));
        report.check("adjunction unit holds", unit_ok, || {
            "some presheaf exceeds the representable of its image".into()
        });
        let counit_ok =
            (0..cat.object_count()).all(|a| cat.obj_leq(l.apply(y.apply(a)), a));
        report.check("adjunction counit holds", counit_ok, || {
            "some representable's image escapes upward".into()
        });
        Some(l)
    } else {
        None
    };

    let algebra = structure.is_some();
    let cocomplete = is_cocomplete_with(pcat)?.complete();
    report.check("algebra status agrees with cocompleteness", algebra == cocomplete, || {
        format!("algebra: {algebra}, cocomplete: {cocomplete}")
    });

    Ok(Algebra { algebra, structure, witness, report })
}

/// The restricted doctrine at a certified order: the restricted unit is the
/// Yoneda embedding, restriction does not change the presheaf construction
/// (and that construction stays inside the certified world), and algebra
/// status is insensitive to the inclusion.
pub fn check_lemma4_instance(order: &QOrder) -> Result<Report> {
    let mut report = Report::new("restricted doctrine instance");
    let cat = order.cat.clone();

    let unrestricted = PresheafCat::new(cat.clone())?;
    let restricted = PresheafCat::new(cat.clone())?;
    let same = unrestricted.cat == restricted.cat
        && unrestricted.members == restricted.members;
    report.check("restriction does not change the presheaf construction", same, || {
        "the two constructions disagree".into()
    });

    let eta = yoneda(&unrestricted);
    let xi = yoneda(&restricted);
    report.check("restricted unit is the Yoneda embedding", eta.map == xi.map, || {
        first_difference(&eta, &xi)
    });

    let cc = is_cauchy_complete_with(PresheafCat::new(unrestricted.cat.clone())?)?;
    report.check(
        "presheaf category of the order is Cauchy complete",
        cc.complete,
        || cc.witness.clone().unwrap_or_default(),
    );

    let alg = is_algebra(order)?;
    let cocomplete = is_cocomplete_with(restricted)?.complete();
    report.check(
        "algebra status agrees across the inclusion",
        alg.algebra == cocomplete,
        || format!("algebra: {}, cocomplete: {cocomplete}", alg.algebra),
    );

    Ok(report)
}

/// The instantiated equivalence: every sample module yields a certified
/// order carrying an algebra structure, every sample algebra extracts to a
/// module that round-trips, and induced functors of module endomorphisms
/// commute with the structure maps.
pub fn check_theorem6(
    q: &Arc<Quantaloid>,
    modules: &[(String, QModule)],
    orders: &[(String, QOrder)],
) -> Result<Report> {
    let idm = Arc::new(q.idm()?);
    let mut report = Report::new("modules are the algebras");

    for (name, m) in modules {
        let validation = m.validate();
        if !validation.all_pass() {
            report.fail(
                format!("{name}: input module validates"),
                validation.failures().next().unwrap().law.clone(),
            );
            continue;
        }
        report.pass(format!("{name}: input module validates"));

        let ext = extend_to_idm(m, idm.clone())?;
        let mcat = category_of_module(&ext)?;
        let order = match make_order(q.clone(), mcat.cat.clone()) {
            Ok(order) => {
                report.pass(format!("{name}: associated category is a certified order"));
                order
            }
            Err(e) => {
                report.fail(
                    format!("{name}: associated category is a certified order"),
                    e.to_string(),
                );
                continue;
            }
        };

        let alg = is_algebra(&order)?;
        report.check(format!("{name}: associated order is an algebra"), alg.algebra, || {
            alg.witness.clone().unwrap_or_default()
        });
        let Some(structure) = &alg.structure else { continue };

        let p = PresheafCat::new(mcat.cat.clone())?;
        let mut commute = true;
        let mut culprit = String::new();
        for h in natural_endomorphisms(&ext) {
            let g = functor_of_morphism(&h, &mcat, &mcat)?;
            let pg = presheaf_map(&g, &p, &p)?;
            let lhs = g.compose(structure)?;
            let rhs = structure.compose(&pg)?;
            if lhs.map != rhs.map {
                commute = false;
                culprit = first_difference(&lhs, &rhs);
                break;
            }
        }
        report.check(
            format!("{name}: induced functors commute with the structure map"),
            commute,
            || culprit,
        );
    }

    for (name, order) in orders {
        let alg = is_algebra(order)?;
        report.check(format!("{name}: sample order is an algebra"), alg.algebra, || {
            alg.witness.clone().unwrap_or_default()
        });
        if !alg.algebra {
            continue;
        }

        let extraction = module_of_category(order.cat.clone())?;
        let validation = extraction.module.validate();
        report.check(
            format!("{name}: extracted module validates"),
            validation.all_pass(),
            || validation.failures().next().unwrap().law.clone(),
        );

        let back = category_of_module(&extraction.module)?;
        let cat = &order.cat;
        let matches = (0..cat.object_count()).all(|o| {
            let (x, e) = extraction.fibers.elem_of[o];
            let b = back.fibers.object_of[x][e];
            cat.typ(o) == back.cat.typ(b)
                && (0..cat.object_count()).all(|o2| {
                    let (x2, e2) = extraction.fibers.elem_of[o2];
                    let b2 = back.fibers.object_of[x2][e2];
                    cat.hom_elem(o, o2) == back.cat.hom_elem(b, b2)
                })
        });
        report.check(
            format!("{name}: category round-trip preserves types and homs"),
            matches,
            || "some hom entry changes across the round-trip".into(),
        );
    }

    Ok(report)
}
