//! Left adjoint distributors, Cauchy completeness and completion, and the
//! certification of orders over a split-idempotent base.
//!
//! A distributor is a left adjoint exactly when its canonical candidate
//! right adjoint (the lifting of the identity through it) satisfies the unit
//! inequality; the counit holds by construction. Over an idm base this has a
//! concrete bite: the all-bottom presheaf typed at a bottom idempotent is
//! always a left adjoint, so a category missing objects of that type cannot
//! be Cauchy complete.

use std::sync::Arc;

use crate::enriched::{compose_dist, dist_leq, lifting, Distributor, QCategory, QFunctor};
use crate::error::{Error, Result};
use crate::presheaf::{yoneda, Presheaf, PresheafCat};
use crate::quantaloid::Quantaloid;
use crate::report::Report;

#[derive(Debug, Clone)]
pub struct AdjointPair {
    pub left: Distributor,
    pub right: Distributor,
}

/// Decide adjointness of `phi` by testing its only possible right adjoint,
/// the lifting of the target identity through `phi`. Any right adjoint
/// satisfies the counit, hence sits under the lifting; conversely the
/// lifting satisfies the counit by definition, so only the unit can fail.
pub fn check_adjoint(phi: &Distributor) -> Option<AdjointPair> {
    let right = lifting(phi, &Distributor::identity(phi.target.clone()))
        .expect("lifting against the identity is always defined");
    let unit = dist_leq(
        &Distributor::identity(phi.source.clone()),
        &compose_dist(&right, phi).expect("endpoints match"),
    )
    .expect("parallel by construction");
    let counit = dist_leq(
        &compose_dist(phi, &right).expect("endpoints match"),
        &Distributor::identity(phi.target.clone()),
    )
    .expect("parallel by construction");
    debug_assert!(counit, "the canonical candidate always satisfies the counit");
    if unit && counit {
        Some(AdjointPair { left: phi.clone(), right })
    } else {
        None
    }
}

/// Indices of the members of `pcat` that are left adjoint as distributors.
pub fn cauchy_presheaves(pcat: &PresheafCat) -> Vec<usize> {
    (0..pcat.len())
        .filter(|&i| check_adjoint(&pcat.members[i].as_distributor()).is_some())
        .collect()
}

#[derive(Debug)]
pub struct CauchyCompleteness {
    pub pcat: PresheafCat,
    /// Member indices of the left adjoint presheaves.
    pub cauchy: Vec<usize>,
    pub complete: bool,
    /// A non-representable Cauchy presheaf, when incomplete.
    pub witness: Option<String>,
    pub report: Report,
}

pub fn is_cauchy_complete(cat: Arc<QCategory>) -> Result<CauchyCompleteness> {
    is_cauchy_complete_with(PresheafCat::new(cat)?)
}

/// Every left adjoint presheaf must equal a representable elementwise.
/// Representation up to isomorphism is tracked as a separate law line; the
/// presheaf category is skeletal, so the two readings agree, and the report
/// would expose any divergence rather than hide it.
pub fn is_cauchy_complete_with(pcat: PresheafCat) -> Result<CauchyCompleteness> {
    let cauchy = cauchy_presheaves(&pcat);
    let y = yoneda(&pcat);
    let representables: Vec<usize> =
        (0..pcat.over.object_count()).map(|a| y.apply(a)).collect();

    let mut report = Report::new("cauchy completeness");
    let mut witness = None;
    let mut divergence = None;
    for &i in &cauchy {
        let exact = representables.contains(&i);
        let iso = representables.iter().any(|&r| pcat.cat.obj_isomorphic(i, r));
        if !exact && witness.is_none() {
            witness = Some(pcat.members[i].name());
        }
        if exact != iso && divergence.is_none() {
            divergence = Some(pcat.members[i].name());
        }
    }
    let complete = witness.is_none();
    report.check("every left adjoint presheaf equals a representable", complete, || {
        format!("presheaf {} is a non-representable left adjoint", witness.clone().unwrap())
    });
    report.check(
        "representation up to isomorphism agrees with exact representation",
        divergence.is_none(),
        || format!("presheaf {} is represented only up to isomorphism", divergence.clone().unwrap()),
    );
    Ok(CauchyCompleteness { pcat, cauchy, complete, witness, report })
}

#[derive(Debug)]
pub struct CauchyCompletion {
    /// Full subcategory of the presheaf category on the left adjoints.
    pub cat: Arc<QCategory>,
    /// Fully faithful embedding of the original category.
    pub embed: QFunctor,
    /// Completion objects as presheaves, aligned with `cat`.
    pub members: Vec<Presheaf>,
}

pub fn cauchy_completion(cat: Arc<QCategory>) -> Result<CauchyCompletion> {
    let pcat = PresheafCat::new(cat.clone())?;
    let picked = cauchy_presheaves(&pcat);
    let names = picked.iter().map(|&i| pcat.members[i].name()).collect();
    let typs = picked.iter().map(|&i| pcat.members[i].typ).collect();
    let hom = picked
        .iter()
        .map(|&i| picked.iter().map(|&j| pcat.cat.hom_elem(i, j)).collect())
        .collect();
    let completion = Arc::new(QCategory::new(cat.base.clone(), names, typs, hom)?);
    let y = yoneda(&pcat);
    let embed_map = (0..cat.object_count())
        .map(|a| {
            picked
                .iter()
                .position(|&i| i == y.apply(a))
                .expect("representable presheaves are left adjoints")
        })
        .collect();
    let embed = QFunctor::new(cat, completion.clone(), embed_map)?;
    let members = picked.into_iter().map(|i| pcat.members[i].clone()).collect();
    Ok(CauchyCompletion { cat: completion, embed, members })
}

/// A category certified to live in the order world of `q`: its base is the
/// split-idempotent completion of `q` and it is Cauchy complete.
#[derive(Debug, Clone)]
pub struct QOrder {
    pub q: Arc<Quantaloid>,
    pub idm: Arc<Quantaloid>,
    pub cat: Arc<QCategory>,
}

pub fn make_order(q: Arc<Quantaloid>, cat: Arc<QCategory>) -> Result<QOrder> {
    let idm = q.idm()?;
    if *cat.base != idm {
        return Err(Error::precondition(
            "category base is not the split-idempotent completion of the given quantaloid",
        ));
    }
    let cc = is_cauchy_complete(cat.clone())?;
    if !cc.complete {
        return Err(Error::precondition(format!(
            "not Cauchy complete: presheaf {} is a non-representable left adjoint",
            cc.witness.unwrap()
        )));
    }
    Ok(QOrder { q, idm: Arc::new(idm), cat })
}
