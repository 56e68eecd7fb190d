//! Transfer between the centre of a base and the centre of its module
//! category, plus invariance of the centre under equivalence of bases.
//!
//! The module-side centre is never materialized: its elements exist only
//! as families sampled over a finite set of modules that always contains
//! every representable. The representables suffice to read a base family
//! back off, which is what makes the round-trip exact.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::modules::{module_morphisms, validate_morphism, QModule};
use crate::quantaloid::{
    centre, Arrow, CentreElement, QHomomorphism, Quantaloid,
};
use crate::report::Report;
use crate::suplattice::SupMorphism;

/// A finite family of modules over a common base, with the representables
/// located (when present) and all module morphisms between the samples
/// precomputed for naturality checks.
#[derive(Debug, Clone)]
pub struct SampleFamily {
    pub q: Arc<Quantaloid>,
    pub names: Vec<String>,
    pub modules: Vec<QModule>,
    /// Index of the sample equal to the representable at each object.
    pub representable_at: Vec<Option<usize>>,
    /// `morphisms[i][j]`: every module morphism from sample i to sample j.
    pub morphisms: Vec<Vec<Vec<Vec<SupMorphism>>>>,
}

impl SampleFamily {
    pub fn new(q: Arc<Quantaloid>, named: Vec<(String, QModule)>) -> Result<Self> {
        for (name, m) in &named {
            if *m.base != *q {
                return Err(Error::mismatch(format!(
                    "sample {name} lives over a different base"
                )));
            }
            let fail = m.validate().failures().next().map(|c| c.law.clone());
            if let Some(law) = fail {
                return Err(Error::precondition(format!(
                    "sample {name} is not a module: {law}"
                )));
            }
        }
        let (names, modules): (Vec<_>, Vec<_>) = named.into_iter().unzip();
        let modules: Vec<QModule> = modules;
        let representable_at = (0..q.object_count())
            .map(|a| {
                let rep = QModule::representable(q.clone(), a);
                modules.iter().position(|m| *m == rep)
            })
            .collect();
        let morphisms = modules
            .iter()
            .map(|m| modules.iter().map(|n| module_morphisms(m, n)).collect())
            .collect();
        Ok(SampleFamily { q, names, modules, representable_at, morphisms })
    }

    /// Like [`SampleFamily::new`], appending any representable that the
    /// given samples miss.
    pub fn with_representables(
        q: Arc<Quantaloid>,
        mut named: Vec<(String, QModule)>,
    ) -> Result<Self> {
        for a in 0..q.object_count() {
            let rep = QModule::representable(q.clone(), a);
            if !named.iter().any(|(_, m)| *m == rep) {
                named.push((format!("representable at {}", q.object_name(a)), rep));
            }
        }
        Self::new(q, named)
    }
}

/// A centre element of the module side, sampled: one endo-component per
/// sample module per base object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModCentreElement {
    /// `components[i][a]` acts on the carrier of sample `i` at object `a`.
    pub components: Vec<Vec<SupMorphism>>,
}

impl ModCentreElement {
    pub fn identity(family: &SampleFamily) -> Self {
        let components = family
            .modules
            .iter()
            .map(|m| m.carriers.iter().map(SupMorphism::identity).collect())
            .collect();
        ModCentreElement { components }
    }

    pub fn validate(&self, family: &SampleFamily) -> Report {
        let mut report = Report::new("module-side centre element");
        let shaped = self.components.len() == family.modules.len()
            && self
                .components
                .iter()
                .zip(&family.modules)
                .all(|(comps, m)| {
                    comps.len() == m.carriers.len()
                        && comps
                            .iter()
                            .zip(&m.carriers)
                            .all(|(c, l)| c.map.len() == l.len())
                });
        report.check("component shapes match the samples", shaped, || {
            "a component is missing or has the wrong length".into()
        });
        if !shaped {
            return report;
        }

        let mut endo_ok = true;
        for (i, m) in family.modules.iter().enumerate() {
            let laws = validate_morphism(m, m, &self.components[i]);
            let fail = laws.failures().next().map(|c| c.law.clone());
            if let Some(law) = fail {
                report.fail(
                    "components are module endomorphisms",
                    format!("{}: {law}", family.names[i]),
                );
                endo_ok = false;
                break;
            }
        }
        if endo_ok {
            report.pass("components are module endomorphisms");
        }

        let mut nat_ok = true;
        'nat: for i in 0..family.modules.len() {
            for j in 0..family.modules.len() {
                for h in &family.morphisms[i][j] {
                    for a in 0..family.q.object_count() {
                        let lhs = h[a].compose(&self.components[i][a]);
                        let rhs = self.components[j][a].compose(&h[a]);
                        if lhs != rhs {
                            report.fail(
                                "natural in module morphisms",
                                format!(
                                    "a morphism {} -> {} does not commute at {}",
                                    family.names[i],
                                    family.names[j],
                                    family.q.object_name(a)
                                ),
                            );
                            nat_ok = false;
                            break 'nat;
                        }
                    }
                }
            }
        }
        if nat_ok {
            report.pass("natural in module morphisms");
        }

        report
    }
}

fn central_in(q: &Quantaloid, components: &[usize]) -> Result<()> {
    let n = q.object_count();
    if components.len() != n {
        return Err(Error::mismatch("family length does not match the base"));
    }
    for a in 0..n {
        if components[a] >= q.hom(a, a).len() {
            return Err(Error::mismatch("family component out of range"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for f in q.arrows(a, b) {
                let lhs =
                    q.compose(Arrow { src: b, dst: b, elem: components[b] }, f)?;
                let rhs =
                    q.compose(f, Arrow { src: a, dst: a, elem: components[a] })?;
                if lhs != rhs {
                    return Err(Error::precondition(format!(
                        "family is not central: it fails to commute with an arrow {} -> {}",
                        q.object_name(a),
                        q.object_name(b)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Act by a central family: the endo-morphism of `m` whose component at
/// each object is the action of the family's arrow there. Centrality and
/// the naturality of the result are both verified.
pub fn alpha_hat(alpha: &CentreElement, m: &QModule) -> Result<Vec<SupMorphism>> {
    central_in(&m.base, &alpha.components)?;
    let components: Vec<SupMorphism> = (0..m.base.object_count())
        .map(|a| m.action(Arrow { src: a, dst: a, elem: alpha.components[a] }).clone())
        .collect();
    let fail = validate_morphism(m, m, &components).failures().next().map(|c| c.law.clone());
    if let Some(law) = fail {
        return Err(Error::input(format!(
            "acting by the family is not a module morphism: {law}"
        )));
    }
    Ok(components)
}

pub fn alpha_hat_family(
    alpha: &CentreElement,
    family: &SampleFamily,
) -> Result<ModCentreElement> {
    let components = family
        .modules
        .iter()
        .map(|m| alpha_hat(alpha, m))
        .collect::<Result<_>>()?;
    Ok(ModCentreElement { components })
}

/// Read a base family back off a module-side element: at each object,
/// apply the component at that object's representable to the identity
/// arrow. The result is verified central.
pub fn beta_bar(beta: &ModCentreElement, family: &SampleFamily) -> Result<CentreElement> {
    let q = &family.q;
    if beta.components.len() != family.modules.len() {
        return Err(Error::mismatch("element is sampled over a different family"));
    }
    let mut components = Vec::new();
    for a in 0..q.object_count() {
        let Some(i) = family.representable_at[a] else {
            return Err(Error::input(format!(
                "no sample is the representable at {}",
                q.object_name(a)
            )));
        };
        // the representable's carrier at a is hom(a, a) itself
        components.push(beta.components[i][a].apply(q.id(a).elem));
    }
    central_in(q, &components).map_err(|_| {
        Error::input("the read-back family is not central: the element was not natural")
    })?;
    Ok(CentreElement { components })
}

fn join_of(family: &SampleFamily, xs: &[&ModCentreElement]) -> ModCentreElement {
    let components = family
        .modules
        .iter()
        .enumerate()
        .map(|(i, m)| {
            m.carriers
                .iter()
                .enumerate()
                .map(|(a, carrier)| {
                    let map = (0..carrier.len())
                        .map(|e| {
                            carrier.join(xs.iter().map(|x| x.components[i][a].apply(e)))
                        })
                        .collect();
                    SupMorphism::new(carrier, carrier, map)
                        .expect("pointwise joins of join-preserving maps preserve joins")
                })
                .collect()
        })
        .collect();
    ModCentreElement { components }
}

/// `second` after `first`, componentwise.
fn compose_mce(second: &ModCentreElement, first: &ModCentreElement) -> ModCentreElement {
    let components = second
        .components
        .iter()
        .zip(&first.components)
        .map(|(s, f)| s.iter().zip(f).map(|(a, b)| a.compose(b)).collect())
        .collect();
    ModCentreElement { components }
}

/// Compare the centre of the base with the centre of its module side over
/// a sample family (missing representables are appended, so the family
/// always supports the read-back map).
pub fn check_prop8(q: &Arc<Quantaloid>, samples: &[(String, QModule)]) -> Result<Report> {
    let family = SampleFamily::with_representables(q.clone(), samples.to_vec())?;
    let (z, els) = centre(q)?;
    let mut report = Report::new("centre comparison");
    report.pass("sample family includes every representable");

    let images: Vec<ModCentreElement> = els
        .iter()
        .map(|alpha| alpha_hat_family(alpha, &family))
        .collect::<Result<_>>()?;

    let mut nat_ok = true;
    for (alpha, mce) in els.iter().zip(&images) {
        let fail = mce.validate(&family).failures().next().map(|c| c.law.clone());
        if let Some(law) = fail {
            report.fail(
                "transferred families are natural over the samples",
                format!("{}: {law}", alpha.name(q)),
            );
            nat_ok = false;
            break;
        }
    }
    if nat_ok {
        report.pass("transferred families are natural over the samples");
    }

    let mut round_ok = true;
    for (alpha, mce) in els.iter().zip(&images) {
        if beta_bar(mce, &family)? != *alpha {
            report.fail(
                "return transfer undoes the forward transfer on the whole centre",
                alpha.name(q),
            );
            round_ok = false;
            break;
        }
    }
    if round_ok {
        report.pass("return transfer undoes the forward transfer on the whole centre");
    }

    // generated module-side elements with their expected base indices:
    // the images themselves plus units, bottoms, pairwise joins and
    // pairwise composites
    let m = els.len();
    let mut generated: Vec<(ModCentreElement, usize)> =
        images.iter().cloned().zip(0..m).collect();
    generated.push((ModCentreElement::identity(&family), z.unit));
    generated.push((join_of(&family, &[]), z.lattice.bottom()));
    for i in 0..m {
        for j in 0..m {
            if i <= j {
                generated.push((
                    join_of(&family, &[&images[i], &images[j]]),
                    z.lattice.join_pair(i, j),
                ));
            }
            // actions are contravariant, so composites transfer reversed;
            // the centre is commutative, which makes the order immaterial
            generated.push((compose_mce(&images[j], &images[i]), z.mul[i][j]));
        }
    }

    let forward_structural =
        generated.iter().all(|(x, k)| *x == images[*k]);
    report.check(
        "forward transfer preserves unit, joins and composition (module side sampled)",
        forward_structural,
        || "a join or composite of transferred families is not the transfer of the join or composite".into(),
    );

    let mut backward_structural = true;
    for (x, k) in &generated {
        if beta_bar(x, &family)? != els[*k] {
            backward_structural = false;
            break;
        }
    }
    report.check(
        "return transfer preserves unit, joins and composition on transferred families",
        backward_structural,
        || "read-back disagrees on a generated family".into(),
    );

    let mut fixes = true;
    for (x, _) in &generated {
        if alpha_hat_family(&beta_bar(x, &family)?, &family)? != *x {
            fixes = false;
            break;
        }
    }
    report.check(
        "forward transfer after return transfer fixes every transferred family (sampled, not proved)",
        fixes,
        || "a generated family moves under the round trip".into(),
    );

    report.check("centre is commutative", z.is_commutative(), || {
        "two centre elements fail to commute".into()
    });

    Ok(report)
}

/// Two homomorphisms whose composites are each isomorphic to an identity.
#[derive(Debug, Clone)]
pub struct EquivalenceData {
    pub forward: QHomomorphism,
    pub backward: QHomomorphism,
}

/// A family of mutually inverse arrow pairs `a <-> h(a)`, natural against
/// every arrow of the base. Searched exhaustively.
fn natural_iso_to_identity(
    q: &Quantaloid,
    h: &QHomomorphism,
) -> Option<(Vec<Arrow>, Vec<Arrow>)> {
    let n = q.object_count();
    let mut candidates: Vec<Vec<(Arrow, Arrow)>> = Vec::new();
    for a in 0..n {
        let b = h.obj_map[a];
        let mut pairs = Vec::new();
        for u in q.arrows(a, b) {
            for v in q.arrows(b, a) {
                if q.compose(v, u).unwrap() == q.id(a)
                    && q.compose(u, v).unwrap() == q.id(b)
                {
                    pairs.push((u, v));
                }
            }
        }
        if pairs.is_empty() {
            return None;
        }
        candidates.push(pairs);
    }
    let mut pick = vec![0usize; n];
    loop {
        let to: Vec<Arrow> = (0..n).map(|a| candidates[a][pick[a]].0).collect();
        let from: Vec<Arrow> = (0..n).map(|a| candidates[a][pick[a]].1).collect();
        let natural = (0..n).all(|a| {
            (0..n).all(|b| {
                q.arrows(a, b).all(|f| {
                    q.compose(to[b], f).unwrap() == q.compose(h.apply(f), to[a]).unwrap()
                })
            })
        });
        if natural {
            return Some((to, from));
        }
        let mut x = 0;
        loop {
            if x == n {
                return None;
            }
            pick[x] += 1;
            if pick[x] < candidates[x].len() {
                break;
            }
            pick[x] = 0;
            x += 1;
        }
    }
}

/// Transport the centre along an equivalence of bases and verify the
/// result is an isomorphism of quantales.
pub fn check_centre_invariance(
    q: &Quantaloid,
    q2: &Quantaloid,
    e: &EquivalenceData,
) -> Result<Report> {
    for (name, h, src, dst) in [
        ("forward", &e.forward, q, q2),
        ("backward", &e.backward, q2, q),
    ] {
        let fail = h.validate(src, dst).failures().next().map(|c| c.law.clone());
        if let Some(law) = fail {
            return Err(Error::input(format!(
                "{name} map is not a homomorphism: {law}"
            )));
        }
    }
    let gf = e.backward.compose(&e.forward);
    let fg = e.forward.compose(&e.backward);
    if natural_iso_to_identity(q, &gf).is_none() {
        return Err(Error::input(
            "the round trip on the first base is not isomorphic to the identity",
        ));
    }
    let Some((to, from)) = natural_iso_to_identity(q2, &fg) else {
        return Err(Error::input(
            "the round trip on the second base is not isomorphic to the identity",
        ));
    };

    let (z1, els1) = centre(q)?;
    let (z2, els2) = centre(q2)?;
    let mut report = Report::new("centre invariance");
    report.pass("equivalence data validates");

    // transport: push each component through the forward map, then
    // conjugate from the round-trip image back to the object itself
    let mut map = Vec::new();
    let mut lands = true;
    for alpha in &els1 {
        let components: Vec<usize> = (0..q2.object_count())
            .map(|b| {
                let gb = e.backward.obj_map[b];
                let through = e.forward.apply(Arrow {
                    src: gb,
                    dst: gb,
                    elem: alpha.components[gb],
                });
                q2.compose(from[b], q2.compose(through, to[b]).unwrap())
                    .unwrap()
                    .elem
            })
            .collect();
        match els2.iter().position(|c| c.components == components) {
            Some(k) => map.push(k),
            None => {
                report.fail(
                    "transport lands in the centre",
                    format!("image of {} is not central", alpha.name(q)),
                );
                lands = false;
                break;
            }
        }
    }
    if !lands {
        return Ok(report);
    }
    report.pass("transport lands in the centre");

    let mut seen = vec![false; els2.len()];
    let bijective = els1.len() == els2.len()
        && map.iter().all(|&k| {
            let fresh = !seen[k];
            seen[k] = true;
            fresh
        });
    report.check("transport is a bijection on centre elements", bijective, || {
        format!("{} elements against {}", els1.len(), els2.len())
    });
    if !bijective {
        return Ok(report);
    }

    let n = map.len();
    let order_ok = (0..n)
        .all(|i| (0..n).all(|j| z1.lattice.leq(i, j) == z2.lattice.leq(map[i], map[j])));
    let mul_ok =
        (0..n).all(|i| (0..n).all(|j| map[z1.mul[i][j]] == z2.mul[map[i]][map[j]]));
    let unit_ok = map[z1.unit] == z2.unit;
    report.check(
        "transport preserves order, composition and the unit",
        order_ok && mul_ok && unit_ok,
        || "the transported structure disagrees".into(),
    );
    Ok(report)
}

/// The same base with one object doubled: hom lattices and composition
/// are copied through the obvious projection.
pub fn duplicate_object(q: &Quantaloid, a: usize, copy_name: &str) -> Result<Quantaloid> {
    let n = q.object_count();
    let old = |i: usize| if i == n { a } else { i };
    let objects: Vec<String> = (0..n)
        .map(|i| q.object_name(i).to_string())
        .chain([copy_name.to_string()])
        .collect();
    let homs: Vec<Vec<_>> = (0..=n)
        .map(|i| (0..=n).map(|j| q.hom(old(i), old(j)).clone()).collect())
        .collect();
    let comp: Vec<Vec<Vec<Vec<Vec<usize>>>>> = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    (0..=n)
                        .map(|k| {
                            (0..q.hom(old(j), old(k)).len())
                                .map(|g| {
                                    (0..q.hom(old(i), old(j)).len())
                                        .map(|f| {
                                            q.compose(
                                                Arrow { src: old(j), dst: old(k), elem: g },
                                                Arrow { src: old(i), dst: old(j), elem: f },
                                            )
                                            .unwrap()
                                            .elem
                                        })
                                        .collect()
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let ids = (0..=n).map(|i| q.id(old(i)).elem).collect();
    Quantaloid::new(objects, homs, comp, ids)
}

/// The equivalence between a base and its object-doubled variant: forward
/// is the inclusion, backward projects the copy down.
pub fn doubling_equivalence(q: &Quantaloid, doubled: &Quantaloid, a: usize) -> EquivalenceData {
    let n = q.object_count();
    let forward = QHomomorphism {
        obj_map: (0..n).collect(),
        hom_maps: (0..n)
            .map(|i| (0..n).map(|j| SupMorphism::identity(q.hom(i, j))).collect())
            .collect(),
    };
    let old = |i: usize| if i == n { a } else { i };
    let backward = QHomomorphism {
        obj_map: (0..=n).map(old).collect(),
        hom_maps: (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| SupMorphism::identity(doubled.hom(i, j)))
                    .collect()
            })
            .collect(),
    };
    EquivalenceData { forward, backward }
}
