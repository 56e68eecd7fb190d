//! Modules over a quantaloid, the associated enriched categories, and the
//! instance-level equivalence between module morphisms and cocontinuous
//! functors.
//!
//! A module assigns a suplattice to every base object and a join-preserving
//! action map to every arrow, contravariantly. The associated category puts
//! all carrier elements side by side with `hom(y, x)` the largest arrow
//! whose action sends `y` below `x`.

use std::sync::Arc;

use crate::enriched::QCategory;
use crate::error::{Error, Result};
use crate::presheaf::{is_cocomplete, sup_preservation_witness, Presheaf, PresheafCat};
use crate::quantaloid::{Arrow, Quantaloid};
use crate::report::Report;
use crate::suplattice::{is_supmorphism, FiniteSuplattice, SupMorphism};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QModule {
    pub base: Arc<Quantaloid>,
    /// One carrier lattice per base object.
    pub carriers: Vec<FiniteSuplattice>,
    /// `act[a][b][f]` maps `carriers[b]` into `carriers[a]`, contravariantly
    /// for `f` in `hom(a, b)`.
    pub act: Vec<Vec<Vec<SupMorphism>>>,
}

impl QModule {
    pub fn new(
        base: Arc<Quantaloid>,
        carriers: Vec<FiniteSuplattice>,
        act: Vec<Vec<Vec<SupMorphism>>>,
    ) -> Result<Self> {
        let n = base.object_count();
        if carriers.len() != n || act.len() != n || act.iter().any(|r| r.len() != n) {
            return Err(Error::input("module shape mismatch"));
        }
        for a in 0..n {
            for b in 0..n {
                if act[a][b].len() != base.hom(a, b).len() {
                    return Err(Error::input(format!(
                        "action table for hom({}, {}) has the wrong length",
                        base.object_name(a),
                        base.object_name(b)
                    )));
                }
                for m in &act[a][b] {
                    if m.map.len() != carriers[b].len()
                        || m.map.iter().any(|&y| y >= carriers[a].len())
                    {
                        return Err(Error::input(format!(
                            "action map for hom({}, {}) is out of range",
                            base.object_name(a),
                            base.object_name(b)
                        )));
                    }
                }
            }
        }
        Ok(QModule { base, carriers, act })
    }

    pub fn carrier(&self, x: usize) -> &FiniteSuplattice {
        &self.carriers[x]
    }

    pub fn action(&self, f: Arrow) -> &SupMorphism {
        &self.act[f.src][f.dst][f.elem]
    }

    pub fn apply(&self, f: Arrow, y: usize) -> usize {
        self.action(f).apply(y)
    }

    /// The representable module at `a`: carriers are the hom lattices into
    /// `a`, arrows act by precomposition.
    pub fn representable(base: Arc<Quantaloid>, a: usize) -> QModule {
        let n = base.object_count();
        let carriers: Vec<FiniteSuplattice> =
            (0..n).map(|x| base.hom(x, a).clone()).collect();
        let act = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        (0..base.hom(x, y).len())
                            .map(|f| {
                                let map = (0..base.hom(y, a).len())
                                    .map(|g| {
                                        base.compose(
                                            Arrow { src: y, dst: a, elem: g },
                                            Arrow { src: x, dst: y, elem: f },
                                        )
                                        .unwrap()
                                        .elem
                                    })
                                    .collect();
                                SupMorphism { map }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        QModule { base, carriers, act }
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("module laws");
        let base = &self.base;
        let n = base.object_count();

        let mut sup_ok = true;
        'sup: for a in 0..n {
            for b in 0..n {
                for f in 0..base.hom(a, b).len() {
                    if let Err(subset) =
                        is_supmorphism(&self.carriers[b], &self.carriers[a], &self.act[a][b][f])
                    {
                        report.fail(
                            "actions preserve suprema",
                            format!(
                                "act({}: {} -> {}) breaks the join of {:?}",
                                base.hom(a, b).name(f),
                                base.object_name(a),
                                base.object_name(b),
                                subset
                                    .iter()
                                    .map(|&y| self.carriers[b].name(y))
                                    .collect::<Vec<_>>()
                            ),
                        );
                        sup_ok = false;
                        break 'sup;
                    }
                }
            }
        }
        if sup_ok {
            report.pass("actions preserve suprema");
        }

        let mut id_ok = true;
        for a in 0..n {
            let id = base.id(a);
            if self.act[a][a][id.elem].map
                != (0..self.carriers[a].len()).collect::<Vec<_>>()
            {
                report.fail(
                    "identity acts as the identity",
                    format!("act(1_{}) moves an element", base.object_name(a)),
                );
                id_ok = false;
            }
        }
        if id_ok {
            report.pass("identity acts as the identity");
        }

        let mut functorial = true;
        'fun: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for f in 0..base.hom(a, b).len() {
                        for g in 0..base.hom(b, c).len() {
                            let gf = base
                                .compose(
                                    Arrow { src: b, dst: c, elem: g },
                                    Arrow { src: a, dst: b, elem: f },
                                )
                                .unwrap();
                            let chained = self.act[a][b][f].compose(&self.act[b][c][g]);
                            if self.act[a][c][gf.elem].map != chained.map {
                                report.fail(
                                    "contravariant functoriality",
                                    format!(
                                        "act({} . {}) differs from act({1}) then act({0})",
                                        base.hom(b, c).name(g),
                                        base.hom(a, b).name(f)
                                    ),
                                );
                                functorial = false;
                                break 'fun;
                            }
                        }
                    }
                }
            }
        }
        if functorial {
            report.pass("contravariant functoriality");
        }

        let mut local = true;
        'loc: for a in 0..n {
            for b in 0..n {
                let lat = base.hom(a, b);
                let bot = &self.act[a][b][lat.bottom()];
                if bot.map.iter().any(|&y| y != self.carriers[a].bottom()) {
                    report.fail(
                        "action preserves joins of arrows",
                        format!(
                            "act(bottom of hom({}, {})) is not constant bottom",
                            base.object_name(a),
                            base.object_name(b)
                        ),
                    );
                    local = false;
                    break 'loc;
                }
                for f in 0..lat.len() {
                    for g in 0..lat.len() {
                        let fg = lat.join_pair(f, g);
                        for y in 0..self.carriers[b].len() {
                            let pointwise = self.carriers[a].join_pair(
                                self.act[a][b][f].apply(y),
                                self.act[a][b][g].apply(y),
                            );
                            if self.act[a][b][fg].apply(y) != pointwise {
                                report.fail(
                                    "action preserves joins of arrows",
                                    format!(
                                        "act({} v {}) is not the pointwise join at {}",
                                        lat.name(f),
                                        lat.name(g),
                                        self.carriers[b].name(y)
                                    ),
                                );
                                local = false;
                                break 'loc;
                            }
                        }
                    }
                }
            }
        }
        if local {
            report.pass("action preserves joins of arrows");
        }

        report
    }
}

/// Objects of a category grouped by type, aligned with carrier element
/// order: `object_of[x][e]` is the category object for element `e` of the
/// fiber at base object `x`, and `elem_of` inverts it.
#[derive(Debug, Clone)]
pub struct FiberIndex {
    pub object_of: Vec<Vec<usize>>,
    pub elem_of: Vec<(usize, usize)>,
}

impl FiberIndex {
    pub fn new(cat: &QCategory) -> FiberIndex {
        let n_base = cat.base.object_count();
        let mut object_of = vec![Vec::new(); n_base];
        let mut elem_of = vec![(0, 0); cat.object_count()];
        for x in 0..n_base {
            for o in 0..cat.object_count() {
                if cat.typ(o) == x {
                    elem_of[o] = (x, object_of[x].len());
                    object_of[x].push(o);
                }
            }
        }
        FiberIndex { object_of, elem_of }
    }
}

#[derive(Debug, Clone)]
pub struct ModuleCategory {
    pub cat: Arc<QCategory>,
    pub fibers: FiberIndex,
}

/// The category with one object per carrier element and
/// `hom(y, x)` the join of all arrows acting `y` below `x`. Its object
/// order restricted to a fiber is exactly the carrier order.
pub fn category_of_module(m: &QModule) -> Result<ModuleCategory> {
    let validation = m.validate();
    if let Some(fail) = validation.failures().next() {
        return Err(Error::precondition(format!(
            "module invalid: {}: {}",
            fail.law,
            fail.witness.clone().unwrap_or_default()
        )));
    }
    let base = &m.base;
    let mut names = Vec::new();
    let mut typs = Vec::new();
    for x in 0..base.object_count() {
        for e in 0..m.carriers[x].len() {
            names.push(format!("{}.{}", base.object_name(x), m.carriers[x].name(e)));
            typs.push(x);
        }
    }
    let total = names.len();
    let offset: Vec<usize> = (0..base.object_count())
        .scan(0, |acc, x| {
            let here = *acc;
            *acc += m.carriers[x].len();
            Some(here)
        })
        .collect();
    let mut hom = vec![vec![0; total]; total];
    for yx in 0..base.object_count() {
        for ye in 0..m.carriers[yx].len() {
            for xx in 0..base.object_count() {
                for xe in 0..m.carriers[xx].len() {
                    let lat = base.hom(xx, yx);
                    let qualifying = (0..lat.len()).filter(|&f| {
                        let moved = m.act[xx][yx][f].apply(ye);
                        m.carriers[xx].leq(moved, xe)
                    });
                    hom[offset[yx] + ye][offset[xx] + xe] = lat.join(qualifying);
                }
            }
        }
    }
    let cat = Arc::new(QCategory::new(base.clone(), names, typs, hom)?);
    let fibers = FiberIndex::new(&cat);
    Ok(ModuleCategory { cat, fibers })
}

#[derive(Debug)]
pub struct ModuleExtraction {
    pub module: QModule,
    pub fibers: FiberIndex,
}

/// Recover a module from a cocomplete category with skeletal fibers:
/// carriers are the type fibers under the object order, and an arrow acts
/// on `y` by taking the supremum of the presheaf `a -> hom(a, y) . f`.
pub fn module_of_category(cat: Arc<QCategory>) -> Result<ModuleExtraction> {
    if let Some((x, y)) = cat.skeletal_witness() {
        return Err(Error::precondition(format!(
            "fiber is not skeletal: objects {} and {} are isomorphic",
            cat.object_name(x),
            cat.object_name(y)
        )));
    }
    let cc = is_cocomplete(cat.clone())?;
    let sup = match &cc.sup {
        Some(sup) => sup,
        None => {
            return Err(Error::precondition(format!(
                "category is not cocomplete: presheaf {} has no supremum",
                cc.witness.clone().unwrap()
            )))
        }
    };
    let base = &cat.base;
    let fibers = FiberIndex::new(&cat);

    let mut carriers = Vec::new();
    for x in 0..base.object_count() {
        let members = &fibers.object_of[x];
        let names = members.iter().map(|&o| cat.object_name(o).to_string()).collect();
        let leq = members
            .iter()
            .map(|&o| members.iter().map(|&o2| cat.obj_leq(o, o2)).collect())
            .collect();
        carriers.push(FiniteSuplattice::from_leq(names, leq).map_err(|e| {
            Error::precondition(format!(
                "fiber at {} is not a suplattice: {e}",
                base.object_name(x)
            ))
        })?);
    }

    let mut act = Vec::new();
    for a in 0..base.object_count() {
        let mut row = Vec::new();
        for b in 0..base.object_count() {
            let lat = base.hom(a, b);
            let mut maps = Vec::new();
            for f in 0..lat.len() {
                let arrow = Arrow { src: a, dst: b, elem: f };
                let map = fibers.object_of[b]
                    .iter()
                    .map(|&y| {
                        let elem: Vec<usize> = (0..cat.object_count())
                            .map(|o| base.compose(cat.hom(o, y), arrow).unwrap().elem)
                            .collect();
                        let idx = cc
                            .pcat
                            .find(a, &elem)
                            .expect("tensor presheaves are action-closed");
                        fibers.elem_of[sup[idx]].1
                    })
                    .collect();
                maps.push(SupMorphism { map });
            }
            row.push(maps);
        }
        act.push(row);
    }

    let module = QModule { base: base.clone(), carriers, act };
    Ok(ModuleExtraction { module, fibers })
}

/// Naturality check for a componentwise map between modules over one base.
pub fn validate_morphism(m: &QModule, n: &QModule, h: &[SupMorphism]) -> Report {
    let mut report = Report::new("module morphism laws");
    if m.base != n.base {
        report.fail("shared base", "modules live over different bases".to_string());
        return report;
    }
    let base = &m.base;
    if h.len() != base.object_count() {
        report.fail("component count", "one component per base object".to_string());
        return report;
    }

    let mut comp_ok = true;
    for x in 0..base.object_count() {
        if h[x].map.len() != m.carriers[x].len()
            || is_supmorphism(&m.carriers[x], &n.carriers[x], &h[x]).is_err()
        {
            report.fail(
                "components preserve suprema",
                format!("component at {} is not a supmorphism", base.object_name(x)),
            );
            comp_ok = false;
        }
    }
    if comp_ok {
        report.pass("components preserve suprema");
    } else {
        return report;
    }

    let mut natural = true;
    'nat: for a in 0..base.object_count() {
        for b in 0..base.object_count() {
            for f in 0..base.hom(a, b).len() {
                for y in 0..m.carriers[b].len() {
                    let via_m = h[a].apply(m.act[a][b][f].apply(y));
                    let via_n = n.act[a][b][f].apply(h[b].apply(y));
                    if via_m != via_n {
                        report.fail(
                            "naturality",
                            format!(
                                "square for {} fails at {}",
                                base.hom(a, b).name(f),
                                m.carriers[b].name(y)
                            ),
                        );
                        natural = false;
                        break 'nat;
                    }
                }
            }
        }
    }
    if natural {
        report.pass("naturality");
    }

    report
}

/// A module morphism becomes the functor acting componentwise on fibers.
pub fn functor_of_morphism(
    h: &[SupMorphism],
    source: &ModuleCategory,
    target: &ModuleCategory,
) -> Result<crate::enriched::QFunctor> {
    let map = (0..source.cat.object_count())
        .map(|o| {
            let (x, e) = source.fibers.elem_of[o];
            target.fibers.object_of[x][h[x].apply(e)]
        })
        .collect();
    crate::enriched::QFunctor::new(source.cat.clone(), target.cat.clone(), map)
}

/// A cocontinuous functor becomes the morphism acting elementwise on
/// carriers. Cocontinuity is checked, with a witness presheaf on refusal.
pub fn morphism_of_functor(
    g: &crate::enriched::QFunctor,
    source: &FiberIndex,
    target: &FiberIndex,
) -> Result<Vec<SupMorphism>> {
    let pcat = PresheafCat::new(g.source.clone())?;
    if let Some(witness) = sup_preservation_witness(g, &pcat)? {
        return Err(Error::input(format!(
            "functor is not cocontinuous: the supremum of {witness} is not preserved"
        )));
    }
    let components = source
        .object_of
        .iter()
        .enumerate()
        .map(|(x, fiber)| SupMorphism {
            map: fiber.iter().map(|&o| {
                let (tx, te) = target.elem_of[g.apply(o)];
                debug_assert_eq!(tx, x, "functors preserve types");
                te
            }).collect(),
        })
        .collect();
    Ok(components)
}

/// Search for a natural family of order isomorphisms between the carriers
/// of two modules over the same base.
pub fn module_isomorphism(m: &QModule, n: &QModule) -> Option<Vec<Vec<usize>>> {
    if m.base != n.base {
        return None;
    }
    let base = &m.base;
    let n_obj = base.object_count();
    let mut candidates: Vec<Vec<Vec<usize>>> = Vec::new();
    for x in 0..n_obj {
        let isos = order_isomorphisms(&m.carriers[x], &n.carriers[x]);
        if isos.is_empty() {
            return None;
        }
        candidates.push(isos);
    }
    let mut pick = vec![0usize; n_obj];
    loop {
        let family: Vec<&Vec<usize>> =
            (0..n_obj).map(|x| &candidates[x][pick[x]]).collect();
        let natural = (0..n_obj).all(|a| {
            (0..n_obj).all(|b| {
                (0..base.hom(a, b).len()).all(|f| {
                    (0..m.carriers[b].len()).all(|y| {
                        family[a][m.act[a][b][f].apply(y)]
                            == n.act[a][b][f].apply(family[b][y])
                    })
                })
            })
        });
        if natural {
            return Some(family.into_iter().cloned().collect());
        }
        let mut x = 0;
        loop {
            if x == n_obj {
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

fn order_isomorphisms(a: &FiniteSuplattice, b: &FiniteSuplattice) -> Vec<Vec<usize>> {
    if a.len() != b.len() {
        return Vec::new();
    }
    let n = a.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn extend(
        a: &FiniteSuplattice,
        b: &FiniteSuplattice,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = perm.len();
        if i == a.len() {
            out.push(perm.clone());
            return;
        }
        for j in 0..a.len() {
            if used[j] {
                continue;
            }
            let consistent = (0..i).all(|k| {
                a.leq(k, i) == b.leq(perm[k], j) && a.leq(i, k) == b.leq(j, perm[k])
            });
            if consistent {
                used[j] = true;
                perm.push(j);
                extend(a, b, perm, used, out);
                perm.pop();
                used[j] = false;
            }
        }
    }
    extend(a, b, &mut perm, &mut used, &mut out);
    out
}

/// Extend a module along the embedding into the split-idempotent
/// completion: the carrier at an idempotent is the fixpoint lattice of its
/// action, and restricted arrows act by restriction.
pub fn extend_to_idm(m: &QModule, idm: Arc<Quantaloid>) -> Result<QModule> {
    let base = &m.base;
    let idems = base.idempotents();
    if idems.len() != idm.object_count() {
        return Err(Error::mismatch("idempotent count does not match the completion"));
    }

    let fix: Vec<Vec<usize>> = idems
        .iter()
        .map(|&e| {
            (0..m.carriers[e.src].len())
                .filter(|&x| m.apply(e, x) == x)
                .collect()
        })
        .collect();
    let carriers: Vec<FiniteSuplattice> = idems
        .iter()
        .zip(&fix)
        .map(|(&e, members)| m.carriers[e.src].sublattice(members))
        .collect::<Result<_>>()?;

    let mut act = Vec::new();
    for (ke, &e) in idems.iter().enumerate() {
        let mut row = Vec::new();
        for (kf, &f) in idems.iter().enumerate() {
            // arrows of hom(e, f) in the completion, as original elements
            let lat = base.hom(e.src, f.src);
            let members: Vec<usize> = (0..lat.len())
                .filter(|&b| {
                    let arrow = Arrow { src: e.src, dst: f.src, elem: b };
                    base.compose(arrow, e).unwrap().elem == b
                        && base.compose(f, arrow).unwrap().elem == b
                })
                .collect();
            debug_assert_eq!(members.len(), idm.hom(ke, kf).len());
            let maps = members
                .iter()
                .map(|&b| {
                    let arrow = Arrow { src: e.src, dst: f.src, elem: b };
                    let map = fix[kf]
                        .iter()
                        .map(|&y| {
                            let moved = m.apply(arrow, y);
                            fix[ke]
                                .iter()
                                .position(|&z| z == moved)
                                .expect("restricted actions land in the fixpoints")
                        })
                        .collect();
                    SupMorphism { map }
                })
                .collect();
            row.push(maps);
        }
        act.push(row);
    }

    QModule::new(idm, carriers, act)
}

/// Instance-level round-trips between modules and cocomplete categories,
/// over the base and over its split-idempotent completion.
pub fn check_corollary3(q: &Arc<Quantaloid>, samples: &[(String, QModule)]) -> Result<Report> {
    let idm = Arc::new(q.idm()?);
    let mut report = Report::new("module and cocomplete category round-trips");
    for (name, m) in samples {
        let validation = m.validate();
        if !validation.all_pass() {
            report.fail(
                format!("{name}: module validates"),
                validation.failures().next().unwrap().law.clone(),
            );
            continue;
        }
        report.pass(format!("{name}: module validates"));

        let mcat = category_of_module(m)?;
        let cc = is_cocomplete(mcat.cat.clone())?;
        report.check(format!("{name}: associated category is cocomplete"), cc.complete(), || {
            cc.witness.clone().unwrap_or_default()
        });

        let back = module_of_category(mcat.cat.clone())?;
        report.check(
            format!("{name}: module round-trip is an isomorphism"),
            module_isomorphism(m, &back.module).is_some(),
            || "no natural family of order isomorphisms".into(),
        );

        let ext = extend_to_idm(m, idm.clone())?;
        let ext_validation = ext.validate();
        report.check(
            format!("{name}: extension to the completion validates"),
            ext_validation.all_pass(),
            || ext_validation.failures().next().unwrap().law.clone(),
        );

        // restricting along the embedding must give back m on the nose
        let idems = q.idempotents();
        let restricts = (0..q.object_count()).all(|a| {
            let ka = idems
                .iter()
                .position(|&e| e.src == a && e.elem == q.id(a).elem)
                .unwrap();
            ext.carriers[ka] == m.carriers[a]
                && (0..q.object_count()).all(|b| {
                    let kb = idems
                        .iter()
                        .position(|&e| e.src == b && e.elem == q.id(b).elem)
                        .unwrap();
                    ext.act[ka][kb] == m.act[a][b]
                })
        });
        report.check(format!("{name}: restriction along the embedding is exact"), restricts, || {
            "carrier or action changed at an identity idempotent".into()
        });

        let ext_cat = category_of_module(&ext)?;
        let ext_cc = is_cocomplete(ext_cat.cat.clone())?;
        report.check(
            format!("{name}: extended category is cocomplete over the completion"),
            ext_cc.complete(),
            || ext_cc.witness.clone().unwrap_or_default(),
        );

        let ext_back = module_of_category(ext_cat.cat.clone())?;
        report.check(
            format!("{name}: extended round-trip is an isomorphism"),
            module_isomorphism(&ext, &ext_back.module).is_some(),
            || "no natural family of order isomorphisms".into(),
        );
    }
    Ok(report)
}

/// All module morphisms between two modules over the same base, by
/// scanning componentwise join-preserving candidates and filtering on
/// naturality. Exhaustive, so desk scale only.
pub fn module_morphisms(m: &QModule, n: &QModule) -> Vec<Vec<SupMorphism>> {
    let per: Vec<Vec<SupMorphism>> = m
        .carriers
        .iter()
        .zip(&n.carriers)
        .map(|(c, d)| crate::suplattice::all_supmorphisms(c, d))
        .collect();
    let mut pick = vec![0usize; per.len()];
    let mut out = Vec::new();
    loop {
        let family: Vec<SupMorphism> =
            (0..per.len()).map(|x| per[x][pick[x]].clone()).collect();
        if validate_morphism(m, n, &family).all_pass() {
            out.push(family);
        }
        let mut x = 0;
        loop {
            if x == per.len() {
                return out;
            }
            pick[x] += 1;
            if pick[x] < per[x].len() {
                break;
            }
            pick[x] = 0;
            x += 1;
        }
    }
}

pub fn natural_endomorphisms(m: &QModule) -> Vec<Vec<SupMorphism>> {
    module_morphisms(m, m)
}

/// The tensor presheaf `a -> hom(a, y) . f` used by the action extraction,
/// exposed for reuse in tests.
pub fn tensor_presheaf(cat: &Arc<QCategory>, y: usize, f: Arrow) -> Result<Presheaf> {
    let base = &cat.base;
    if f.dst != cat.typ(y) {
        return Err(Error::mismatch("arrow must land in the type of the object"));
    }
    let elem = (0..cat.object_count())
        .map(|o| base.compose(cat.hom(o, y), f).unwrap().elem)
        .collect();
    Presheaf::new(cat.clone(), f.src, elem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::tests::arc;
    use crate::enriched::QFunctor;
    use crate::fixtures;
    use crate::presheaf::preserves_sups;

    fn omega3_module() -> QModule {
        let q = arc(fixtures::omega3_susp());
        let lat = q.hom(0, 0).clone();
        let act = vec![vec![(0..lat.len())
            .map(|f| SupMorphism {
                map: (0..lat.len()).map(|x| lat.meet_pair(f, x)).collect(),
            })
            .collect()]];
        QModule::new(q, vec![lat], act).unwrap()
    }

    fn join_action_module() -> QModule {
        let q = arc(fixtures::omega3_susp());
        let lat = q.hom(0, 0).clone();
        let act = vec![vec![(0..lat.len())
            .map(|f| SupMorphism {
                map: (0..lat.len()).map(|x| lat.join_pair(f, x)).collect(),
            })
            .collect()]];
        QModule::new(q, vec![lat], act).unwrap()
    }

    fn diamond_module() -> QModule {
        let q = arc(fixtures::two_susp());
        let lat = fixtures::diamond();
        let top = q.hom(0, 0).index_of("top").unwrap();
        let mut act_maps = vec![SupMorphism { map: vec![] }; 2];
        act_maps[top] = SupMorphism::identity(&lat);
        act_maps[1 - top] = SupMorphism { map: vec![lat.bottom(); lat.len()] };
        QModule::new(q, vec![lat], vec![vec![act_maps]]).unwrap()
    }

    fn trivial_module(q: Arc<Quantaloid>) -> QModule {
        let single = FiniteSuplattice::from_leq(vec!["bot".into()], vec![vec![true]]).unwrap();
        let n = q.object_count();
        let act = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        (0..q.hom(a, b).len())
                            .map(|_| SupMorphism { map: vec![0] })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        QModule::new(q, vec![single; n], act).unwrap()
    }

    #[test]
    fn meet_action_module_validates() {
        assert!(omega3_module().validate().all_pass());
    }

    #[test]
    fn join_action_fails_the_identity_law() {
        let report = join_action_module().validate();
        assert!(report
            .failures()
            .any(|c| c.law == "identity acts as the identity"));
    }

    #[test]
    fn representables_validate_everywhere() {
        for q in [
            arc(fixtures::two_susp()),
            arc(fixtures::omega3_susp()),
            arc(fixtures::min2()),
        ] {
            for a in 0..q.object_count() {
                assert!(QModule::representable(q.clone(), a).validate().all_pass());
            }
        }
    }

    #[test]
    fn meet_module_category_is_heyting_implication() {
        let m = omega3_module();
        let mcat = category_of_module(&m).unwrap();
        let lat = m.base.hom(0, 0);
        // hom(y, x) is the largest f with f and y below x
        for y in 0..3 {
            for x in 0..3 {
                let expected = if lat.leq(y, x) {
                    lat.top()
                } else {
                    x
                };
                assert_eq!(mcat.cat.hom_elem(y, x), expected);
            }
        }
    }

    #[test]
    fn hom_diagonal_dominates_the_identity() {
        for m in [omega3_module(), diamond_module()] {
            let mcat = category_of_module(&m).unwrap();
            for o in 0..mcat.cat.object_count() {
                assert!(mcat.cat.obj_leq(o, o));
            }
        }
    }

    #[test]
    fn module_categories_are_cocomplete() {
        for m in [omega3_module(), diamond_module(), trivial_module(arc(fixtures::min2()))] {
            let mcat = category_of_module(&m).unwrap();
            let cc = is_cocomplete(mcat.cat.clone()).unwrap();
            assert!(cc.complete(), "{}", cc.report);
        }
    }

    #[test]
    fn fiber_order_matches_the_carrier() {
        let m = diamond_module();
        let mcat = category_of_module(&m).unwrap();
        for e in 0..4 {
            for e2 in 0..4 {
                assert_eq!(
                    mcat.cat.obj_leq(mcat.fibers.object_of[0][e], mcat.fibers.object_of[0][e2]),
                    m.carriers[0].leq(e, e2)
                );
            }
        }
    }

    #[test]
    fn presheaf_category_extracts_to_the_downset_chain() {
        let c = crate::enriched::tests::twochain();
        let p = PresheafCat::new(c).unwrap();
        let got = module_of_category(p.cat.clone()).unwrap();
        let carrier = &got.module.carriers[0];
        assert_eq!(carrier.len(), 3);
        let names: Vec<&str> = carrier.names().iter().map(|s| s.as_str()).collect();
        assert_eq!(names, vec!["*[bot,bot]", "*[top,bot]", "*[top,top]"]);
        // a 3-chain: each earlier downset sits below each later one
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(carrier.leq(i, j), i <= j);
            }
        }
        assert!(got.module.validate().all_pass());
        // the identity arrow acts as the identity
        let id = got.module.base.id(0);
        assert_eq!(got.module.act[0][0][id.elem].map, vec![0, 1, 2]);
    }

    #[test]
    fn module_round_trip_is_isomorphism() {
        for m in [
            omega3_module(),
            diamond_module(),
            QModule::representable(arc(fixtures::min2()), 0),
        ] {
            let mcat = category_of_module(&m).unwrap();
            let back = module_of_category(mcat.cat.clone()).unwrap();
            assert!(module_isomorphism(&m, &back.module).is_some());
        }
    }

    #[test]
    fn category_round_trip_preserves_homs() {
        let m = omega3_module();
        let mcat = category_of_module(&m).unwrap();
        let extracted = module_of_category(mcat.cat.clone()).unwrap();
        let again = category_of_module(&extracted.module).unwrap();
        assert_eq!(again.cat.object_count(), mcat.cat.object_count());
        for y in 0..mcat.cat.object_count() {
            for x in 0..mcat.cat.object_count() {
                assert_eq!(again.cat.hom_elem(y, x), mcat.cat.hom_elem(y, x));
                assert_eq!(again.cat.typ(y), mcat.cat.typ(y));
            }
        }
    }

    #[test]
    fn morphism_functor_round_trip() {
        let m = omega3_module();
        let lat = m.base.hom(0, 0);
        let m_idx = lat.index_of("m").unwrap();
        let h = vec![SupMorphism {
            map: (0..3).map(|x| lat.meet_pair(m_idx, x)).collect(),
        }];
        assert!(validate_morphism(&m, &m, &h).all_pass());
        let mcat = category_of_module(&m).unwrap();
        let g = functor_of_morphism(&h, &mcat, &mcat).unwrap();
        let p = PresheafCat::new(mcat.cat.clone()).unwrap();
        assert!(preserves_sups(&g, &p).unwrap());
        let back = morphism_of_functor(&g, &mcat.fibers, &mcat.fibers).unwrap();
        assert_eq!(back[0].map, h[0].map);

        let id = vec![SupMorphism::identity(&m.carriers[0])];
        let gid = functor_of_morphism(&id, &mcat, &mcat).unwrap();
        assert_eq!(gid.map, (0..3).collect::<Vec<_>>());
    }

    #[test]
    fn sup_breaking_functor_is_refused() {
        let m = diamond_module();
        let mcat = category_of_module(&m).unwrap();
        // collapse both middles of the diamond to bottom but keep the top:
        // monotone, hence a functor, but it breaks the join of the middles
        let lat = &m.carriers[0];
        let bot = lat.bottom();
        let top = lat.top();
        let map: Vec<usize> = (0..4)
            .map(|e| {
                let o = if e == top { top } else { bot };
                mcat.fibers.object_of[0][o]
            })
            .collect();
        let g = QFunctor::new(mcat.cat.clone(), mcat.cat.clone(), map).unwrap();
        let err = morphism_of_functor(&g, &mcat.fibers, &mcat.fibers).unwrap_err();
        assert!(err.to_string().contains("not cocontinuous"));
    }

    #[test]
    fn corollary3_round_trips_pass() {
        let q3 = arc(fixtures::omega3_susp());
        let samples = vec![
            ("meet".to_string(), omega3_module()),
            ("representable".to_string(), QModule::representable(q3.clone(), 0)),
            ("trivial".to_string(), trivial_module(q3.clone())),
        ];
        let report = check_corollary3(&q3, &samples).unwrap();
        assert!(report.all_pass(), "{report}");

        let q2 = arc(fixtures::min2());
        let samples = vec![
            ("rep-p".to_string(), QModule::representable(q2.clone(), 0)),
            ("rep-q".to_string(), QModule::representable(q2.clone(), 1)),
        ];
        let report = check_corollary3(&q2, &samples).unwrap();
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn extension_fixpoints_shrink_carriers() {
        let q = arc(fixtures::min2());
        let idm = Arc::new(q.idm().unwrap());
        let m = QModule::representable(q.clone(), 0);
        let ext = extend_to_idm(&m, idm).unwrap();
        // bottom idempotents fix only bottom; identity idempotents fix all
        let sizes: Vec<usize> = ext.carriers.iter().map(|c| c.len()).collect();
        let idems = q.idempotents();
        for (k, &e) in idems.iter().enumerate() {
            if e.elem == q.id(e.src).elem {
                assert_eq!(sizes[k], m.carriers[e.src].len());
            } else {
                assert_eq!(sizes[k], 1);
            }
        }
    }
}
