//! Contravariant presheaves, the presheaf category construction, weighted
//! colimits and cocompleteness detection.
//!
//! A presheaf of type `X` on a category is a distributor from the one-object
//! category at `X` into it: a vector `elem[a]: X -> t(a)` with
//! `hom(a', a) . elem[a] <= elem[a']`. All presheaves of all types are
//! materialized eagerly; enumeration is output-sensitive, generating from
//! closed point vectors and closing under binary joins.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::enriched::{compose_dist, represent, Distributor, QCategory, QFunctor};
use crate::error::{Error, Result};
use crate::quantaloid::Arrow;
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    pub over: Arc<QCategory>,
    /// Base object serving as the presheaf's type.
    pub typ: usize,
    /// `elem[a]` is an element of `base.hom(typ, t(a))`.
    pub elem: Vec<usize>,
}

impl Presheaf {
    pub fn new(over: Arc<QCategory>, typ: usize, elem: Vec<usize>) -> Result<Self> {
        let base = &over.base;
        if typ >= base.object_count() {
            return Err(Error::input("presheaf type out of range"));
        }
        if elem.len() != over.object_count() {
            return Err(Error::input("presheaf vector length mismatch"));
        }
        for a in 0..over.object_count() {
            if elem[a] >= base.hom(typ, over.typ(a)).len() {
                return Err(Error::input(format!(
                    "presheaf element at {} out of range",
                    over.object_name(a)
                )));
            }
        }
        let phi = Presheaf { over, typ, elem };
        for a2 in 0..phi.over.object_count() {
            for a in 0..phi.over.object_count() {
                let moved = phi.over.base.compose(phi.over.hom(a2, a), phi.at(a)).unwrap();
                if !phi.over.base.leq(moved, phi.at(a2)) {
                    return Err(Error::input(format!(
                        "action violated: hom({}, {}) . phi({1}) exceeds phi({0})",
                        phi.over.object_name(a2),
                        phi.over.object_name(a)
                    )));
                }
            }
        }
        Ok(phi)
    }

    pub fn at(&self, a: usize) -> Arrow {
        Arrow { src: self.typ, dst: self.over.typ(a), elem: self.elem[a] }
    }

    /// Display name, e.g. `top[bot,m]`: type object, then one element name
    /// per object of the underlying category in object order.
    pub fn name(&self) -> String {
        let base = &self.over.base;
        let entries: Vec<&str> = (0..self.over.object_count())
            .map(|a| base.hom(self.typ, self.over.typ(a)).name(self.elem[a]))
            .collect();
        format!("{}[{}]", base.object_name(self.typ), entries.join(","))
    }

    /// The same data as a distributor from the one-object category at `typ`.
    pub fn as_distributor(&self) -> Distributor {
        let unit = Arc::new(QCategory::unit(self.over.base.clone(), self.typ));
        let elem = self.elem.iter().map(|&e| vec![e]).collect();
        Distributor::new(unit, self.over.clone(), elem)
            .expect("a valid presheaf is a valid distributor")
    }

    pub fn leq(&self, other: &Presheaf) -> bool {
        self.typ == other.typ
            && self.over == other.over
            && (0..self.elem.len()).all(|a| self.over.base.leq(self.at(a), other.at(a)))
    }
}

/// All action-closed vectors of type `x` on `cat`, sorted lexicographically.
/// Seeds are the closures of single-point vectors; binary joins of closed
/// vectors stay closed, so the join closure of the seeds is the full set.
fn enumerate_of_type(cat: &Arc<QCategory>, x: usize) -> Vec<Vec<usize>> {
    let base = &cat.base;
    let n = cat.object_count();
    let lat = |a: usize| base.hom(x, cat.typ(a));
    let arrow = |a: usize, e: usize| Arrow { src: x, dst: cat.typ(a), elem: e };

    let close = |mut v: Vec<usize>| -> Vec<usize> {
        loop {
            let mut changed = false;
            for a2 in 0..n {
                let parts = (0..n)
                    .map(|a| base.compose(cat.hom(a2, a), arrow(a, v[a])).unwrap().elem)
                    .chain([v[a2]]);
                let new = lat(a2).join(parts);
                if new != v[a2] {
                    v[a2] = new;
                    changed = true;
                }
            }
            if !changed {
                return v;
            }
        }
    };

    let bottom: Vec<usize> = (0..n).map(|a| lat(a).bottom()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(bottom.clone());
    for a in 0..n {
        for e in 0..lat(a).len() {
            let mut v = bottom.clone();
            v[a] = e;
            seen.insert(close(v));
        }
    }

    let mut items: Vec<Vec<usize>> = seen.iter().cloned().collect();
    let mut i = 0;
    while i < items.len() {
        for j in 0..i {
            let joined: Vec<usize> = (0..n)
                .map(|a| lat(a).join_pair(items[i][a], items[j][a]))
                .collect();
            if seen.insert(joined.clone()) {
                items.push(joined);
            }
        }
        i += 1;
    }
    seen.into_iter().collect()
}

/// The category of all presheaves on `over`, with
/// `hom(psi, phi) = meet over a of the lifting of phi(a) through psi(a)`.
/// Objects are named by [`Presheaf::name`] and ordered by type, then
/// lexicographically; the object order is elementwise, so the result is
/// always skeletal.
#[derive(Debug, Clone)]
pub struct PresheafCat {
    pub cat: Arc<QCategory>,
    pub over: Arc<QCategory>,
    pub members: Vec<Presheaf>,
}

impl PresheafCat {
    pub fn new(over: Arc<QCategory>) -> Result<PresheafCat> {
        let base = over.base.clone();
        let mut members = Vec::new();
        for x in 0..base.object_count() {
            for elem in enumerate_of_type(&over, x) {
                members.push(Presheaf { over: over.clone(), typ: x, elem });
            }
        }
        let n = members.len();
        let mut hom = vec![vec![0; n]; n];
        for (i, psi) in members.iter().enumerate() {
            for (j, phi) in members.iter().enumerate() {
                let lat = base.hom(phi.typ, psi.typ);
                let bounds = (0..over.object_count())
                    .map(|a| base.right_lifting(psi.at(a), phi.at(a)).unwrap().elem);
                hom[i][j] = lat.meet(bounds);
            }
        }
        let names = members.iter().map(|p| p.name()).collect();
        let typs = members.iter().map(|p| p.typ).collect();
        let cat = Arc::new(QCategory::new(base, names, typs, hom)?);
        Ok(PresheafCat { cat, over, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn find(&self, typ: usize, elem: &[usize]) -> Option<usize> {
        self.members.iter().position(|p| p.typ == typ && p.elem == elem)
    }

    /// Supremum of member `i`: the colimit of the identity weighted by it,
    /// when some object satisfies the defining equation.
    pub fn sup_of(&self, i: usize) -> Option<usize> {
        let id = QFunctor::identity(self.over.clone());
        colimit(&self.members[i].as_distributor(), &id)
            .ok()
            .map(|k| k.apply(0))
    }
}

/// The Yoneda embedding: object `a` goes to the presheaf `hom(-, a)`.
pub fn yoneda(p: &PresheafCat) -> QFunctor {
    let over = &p.over;
    let map = (0..over.object_count())
        .map(|a| {
            let column: Vec<usize> =
                (0..over.object_count()).map(|a2| over.hom_elem(a2, a)).collect();
            p.find(over.typ(a), &column)
                .expect("representable presheaves are action-closed")
        })
        .collect();
    QFunctor::new(over.clone(), p.cat.clone(), map)
        .expect("yoneda satisfies the functor laws")
}

/// The hom row a colimit object must match: for weight source object `a`,
/// entry at `x` is the meet over `b` of the lifting of `hom(F b, x)`
/// through `weight(b, a)`.
fn required_row(weight: &Distributor, a: usize, f: &QFunctor) -> Vec<usize> {
    let c = &f.target;
    let base = &c.base;
    (0..c.object_count())
        .map(|x| {
            let lat = base.hom(c.typ(x), weight.source.typ(a));
            let bounds = (0..weight.target.object_count()).map(|b| {
                base.right_lifting(weight.at(b, a), c.hom(f.apply(b), x))
                    .unwrap()
                    .elem
            });
            lat.meet(bounds)
        })
        .collect()
}

/// The `weight`-weighted colimit of `f`, as a functor out of the weight's
/// source. Each object must be realized exactly; candidates tie-break to the
/// least internal id (satisfiers are isomorphic, so this only fixes a
/// representative).
pub fn colimit(weight: &Distributor, f: &QFunctor) -> Result<QFunctor> {
    if weight.target != f.source {
        return Err(Error::mismatch("colimit weight must land in the functor's source"));
    }
    let c = &f.target;
    let mut map = Vec::new();
    for a in 0..weight.source.object_count() {
        let t = weight.source.typ(a);
        let req = required_row(weight, a, f);
        let satisfies = |k: usize| {
            c.typ(k) == t && (0..c.object_count()).all(|x| c.hom_elem(k, x) == req[x])
        };
        let found = (0..c.object_count()).find(|&k| satisfies(k));
        match found {
            Some(k) => {
                debug_assert!((k..c.object_count())
                    .filter(|&k2| satisfies(k2))
                    .all(|k2| c.obj_isomorphic(k, k2)));
                map.push(k);
            }
            None => {
                let base = &weight.source.base;
                let entries: Vec<&str> = (0..weight.target.object_count())
                    .map(|b| {
                        base.hom(t, weight.target.typ(b)).name(weight.elem[b][a])
                    })
                    .collect();
                return Err(Error::ColimitMissing(format!(
                    "no object realizes the weight at {} with entries [{}]",
                    weight.source.object_name(a),
                    entries.join(",")
                )));
            }
        }
    }
    QFunctor::new(weight.source.clone(), f.target.clone(), map)
}

/// Name of the first presheaf whose existing supremum `g` fails to send to
/// the corresponding colimit, checked by the defining equation.
pub fn sup_preservation_witness(
    g: &QFunctor,
    source_presheaves: &PresheafCat,
) -> Result<Option<String>> {
    if source_presheaves.over != g.source {
        return Err(Error::mismatch("presheaf category does not match the functor source"));
    }
    for (i, phi) in source_presheaves.members.iter().enumerate() {
        if let Some(s) = source_presheaves.sup_of(i) {
            let weight = phi.as_distributor();
            let req = required_row(&weight, 0, g);
            let k = g.apply(s);
            let c = &g.target;
            let ok = c.typ(k) == phi.typ
                && (0..c.object_count()).all(|x| c.hom_elem(k, x) == req[x]);
            if !ok {
                return Ok(Some(phi.name()));
            }
        }
    }
    Ok(None)
}

/// Whether `g` sends every existing presheaf supremum on its source to the
/// corresponding colimit in its target.
pub fn preserves_sups(g: &QFunctor, source_presheaves: &PresheafCat) -> Result<bool> {
    Ok(sup_preservation_witness(g, source_presheaves)?.is_none())
}

#[derive(Debug)]
pub struct Cocompleteness {
    pub pcat: PresheafCat,
    /// Object of the underlying category per presheaf index, when complete.
    pub sup: Option<Vec<usize>>,
    /// Name of a supless presheaf, when incomplete.
    pub witness: Option<String>,
    pub report: Report,
}

impl Cocompleteness {
    pub fn complete(&self) -> bool {
        self.sup.is_some()
    }

    /// The supremum assignment as a functor, when complete.
    pub fn sup_functor(&self) -> Option<QFunctor> {
        self.sup.as_ref().map(|map| {
            QFunctor::new(self.pcat.cat.clone(), self.pcat.over.clone(), map.clone())
                .expect("verified during cocompleteness check")
        })
    }
}

pub fn is_cocomplete(over: Arc<QCategory>) -> Result<Cocompleteness> {
    is_cocomplete_with(PresheafCat::new(over)?)
}

/// Cocompleteness via an already-built presheaf category: every presheaf
/// needs a supremum, and the assignment must be left adjoint to Yoneda.
pub fn is_cocomplete_with(pcat: PresheafCat) -> Result<Cocompleteness> {
    let over = pcat.over.clone();
    let mut report = Report::new("cocompleteness");
    let mut sup = Vec::with_capacity(pcat.len());
    for (i, phi) in pcat.members.iter().enumerate() {
        match pcat.sup_of(i) {
            Some(k) => sup.push(k),
            None => {
                let witness = phi.name();
                report.fail(
                    "every presheaf has a supremum",
                    format!("presheaf {witness} has none"),
                );
                return Ok(Cocompleteness { pcat, sup: None, witness: Some(witness), report });
            }
        }
    }
    report.pass("every presheaf has a supremum");

    let sup_f = QFunctor::new(pcat.cat.clone(), over.clone(), sup.clone());
    match sup_f {
        Ok(sup_f) => {
            report.pass("supremum assignment is functorial");
            let y = yoneda(&pcat);
            let unit_ok = pcat
                .members
                .iter()
                .enumerate()
                .all(|(i, _)| pcat.cat.obj_leq(i, y.apply(sup_f.apply(i))));
            report.check("adjunction unit: phi below yoneda of its sup", unit_ok, || {
                "some presheaf exceeds the representable of its supremum".into()
            });
            let counit_ok =
                (0..over.object_count()).all(|a| over.obj_leq(sup_f.apply(y.apply(a)), a));
            report.check("adjunction counit: sup of a representable is below its object", counit_ok, || {
                "some representable's supremum escapes upward".into()
            });
            Ok(Cocompleteness { pcat, sup: Some(sup), witness: None, report })
        }
        Err(e) => {
            report.fail("supremum assignment is functorial", e.to_string());
            Ok(Cocompleteness { pcat, sup: None, witness: None, report })
        }
    }
}

/// The functorial action on presheaf categories: `phi` goes to
/// `hom(-, F-) . phi`, computed by distributor composition with the left
/// represented distributor of `f`.
pub fn presheaf_map(f: &QFunctor, src: &PresheafCat, tgt: &PresheafCat) -> Result<QFunctor> {
    if f.source != src.over || f.target != tgt.over {
        return Err(Error::mismatch("presheaf map endpoints do not match the functor"));
    }
    let (left, _) = represent(f);
    let mut map = Vec::with_capacity(src.len());
    for phi in &src.members {
        let image = compose_dist(&left, &phi.as_distributor())?;
        let elem: Vec<usize> = image.elem.iter().map(|row| row[0]).collect();
        let idx = tgt
            .find(phi.typ, &elem)
            .expect("the image of a presheaf is a presheaf");
        map.push(idx);
    }
    QFunctor::new(src.cat.clone(), tgt.cat.clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enriched::tests::{arc, discrete2, twochain};
    use crate::enriched::{dist_bottom, functor_leq};
    use crate::fixtures;

    fn m_object() -> Arc<QCategory> {
        let base = arc(fixtures::omega3_susp().idm().unwrap());
        let m_obj = base.object_index("*.m").unwrap();
        let m = base.hom(m_obj, m_obj).index_of("m").unwrap();
        Arc::new(
            QCategory::new(base, vec!["z".into()], vec![m_obj], vec![vec![m]]).unwrap(),
        )
    }

    fn brute_presheaves(cat: &Arc<QCategory>, x: usize) -> BTreeSet<Vec<usize>> {
        let base = &cat.base;
        let n = cat.object_count();
        let mut vectors: Vec<Vec<usize>> = vec![vec![]];
        for a in 0..n {
            let size = base.hom(x, cat.typ(a)).len();
            vectors = vectors
                .into_iter()
                .flat_map(|v| {
                    (0..size).map(move |e| {
                        let mut v2 = v.clone();
                        v2.push(e);
                        v2
                    })
                })
                .collect();
        }
        vectors
            .into_iter()
            .filter(|v| {
                (0..n).all(|a2| {
                    (0..n).all(|a| {
                        let phi_a = Arrow { src: x, dst: cat.typ(a), elem: v[a] };
                        let moved = base.compose(cat.hom(a2, a), phi_a).unwrap();
                        let phi_a2 = Arrow { src: x, dst: cat.typ(a2), elem: v[a2] };
                        base.leq(moved, phi_a2)
                    })
                })
            })
            .collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for cat in [twochain(), discrete2(), m_object()] {
            for x in 0..cat.base.object_count() {
                let fast: BTreeSet<Vec<usize>> =
                    enumerate_of_type(&cat, x).into_iter().collect();
                assert_eq!(fast, brute_presheaves(&cat, x));
            }
        }
    }

    #[test]
    fn presheaf_counts_over_the_single_m_object() {
        let p = PresheafCat::new(m_object()).unwrap();
        assert_eq!(p.len(), 5);
        let per_type: Vec<usize> = (0..3)
            .map(|x| p.members.iter().filter(|m| m.typ == x).count())
            .collect();
        assert_eq!(per_type, vec![1, 2, 2]);
    }

    #[test]
    fn presheaf_category_is_skeletal() {
        for cat in [twochain(), discrete2(), m_object()] {
            let p = PresheafCat::new(cat).unwrap();
            assert_eq!(p.cat.skeletal_witness(), None);
        }
    }

    #[test]
    fn yoneda_lemma_holds_elementwise() {
        for cat in [twochain(), discrete2(), m_object()] {
            let p = PresheafCat::new(cat.clone()).unwrap();
            let y = yoneda(&p);
            for a in 0..cat.object_count() {
                for (j, phi) in p.members.iter().enumerate() {
                    assert_eq!(p.cat.hom_elem(y.apply(a), j), phi.elem[a]);
                }
            }
        }
    }

    #[test]
    fn yoneda_is_fully_faithful() {
        for cat in [twochain(), discrete2(), m_object()] {
            let p = PresheafCat::new(cat.clone()).unwrap();
            let y = yoneda(&p);
            for a in 0..cat.object_count() {
                assert_eq!(p.cat.typ(y.apply(a)), cat.typ(a));
                for a2 in 0..cat.object_count() {
                    assert_eq!(
                        p.cat.hom_elem(y.apply(a2), y.apply(a)),
                        cat.hom_elem(a2, a)
                    );
                }
            }
        }
    }

    #[test]
    fn identity_weight_returns_the_functor() {
        let c = twochain();
        let id_weight = Distributor::identity(c.clone());
        for map in [vec![0, 1], vec![1, 1], vec![0, 0]] {
            let f = QFunctor::new(c.clone(), c.clone(), map.clone()).unwrap();
            let k = colimit(&id_weight, &f).unwrap();
            assert_eq!(k.map, map);
        }
    }

    #[test]
    fn presheaf_weighted_colimit_of_yoneda_is_the_presheaf() {
        // the presheaf category is its own closure under these colimits
        for cat in [twochain(), m_object()] {
            let p = PresheafCat::new(cat).unwrap();
            let y = yoneda(&p);
            for (i, phi) in p.members.iter().enumerate() {
                let k = colimit(&phi.as_distributor(), &y).unwrap();
                assert_eq!(k.apply(0), i);
            }
        }
    }

    #[test]
    fn empty_weight_lands_on_the_bottom_object() {
        let c = twochain();
        let unit = Arc::new(QCategory::unit(c.base.clone(), 0));
        let weight = dist_bottom(unit, c.clone()).unwrap();
        let k = colimit(&weight, &QFunctor::identity(c.clone())).unwrap();
        assert_eq!(c.object_name(k.apply(0)), "a");
    }

    #[test]
    fn missing_colimit_names_the_weight() {
        let c = discrete2();
        let unit = Arc::new(QCategory::unit(c.base.clone(), 0));
        let weight = dist_bottom(unit, c.clone()).unwrap();
        let err = colimit(&weight, &QFunctor::identity(c)).unwrap_err();
        match err {
            Error::ColimitMissing(msg) => assert!(msg.contains("[bot,bot]")),
            other => panic!("expected a missing colimit, got {other}"),
        }
    }

    #[test]
    fn chain_is_cocomplete_and_sups_match_upper_bound_scan() {
        let c = twochain();
        let cc = is_cocomplete(c.clone()).unwrap();
        assert!(cc.complete(), "{}", cc.report);
        assert!(cc.report.all_pass());
        let sup = cc.sup.unwrap();
        let top = c.base.hom(0, 0).index_of("top").unwrap();
        // over the booleans the sup of a presheaf is the least upper bound
        // of the objects it marks; scan candidates directly
        for (i, phi) in cc.pcat.members.iter().enumerate() {
            let marked: Vec<usize> = (0..c.object_count())
                .filter(|&a| phi.elem[a] == top)
                .collect();
            let lub = (0..c.object_count())
                .filter(|&k| {
                    marked.iter().all(|&a| c.obj_leq(a, k))
                        && (0..c.object_count())
                            .filter(|&u| marked.iter().all(|&a| c.obj_leq(a, u)))
                            .all(|u| c.obj_leq(k, u))
                })
                .min();
            assert_eq!(Some(sup[i]), lub);
        }
    }

    #[test]
    fn discrete_pair_is_not_cocomplete() {
        let cc = is_cocomplete(discrete2()).unwrap();
        assert!(!cc.complete());
        assert_eq!(cc.witness.as_deref(), Some("*[bot,bot]"));
    }

    #[test]
    fn presheaf_categories_are_cocomplete() {
        for cat in [twochain(), discrete2(), m_object()] {
            let p = PresheafCat::new(cat).unwrap();
            let cc = is_cocomplete(p.cat.clone()).unwrap();
            assert!(cc.complete(), "{}", cc.report);
            assert!(cc.report.all_pass());
        }
    }

    #[test]
    fn presheaf_map_of_identity_is_identity() {
        let c = twochain();
        let p = PresheafCat::new(c.clone()).unwrap();
        let pf = presheaf_map(&QFunctor::identity(c), &p, &p).unwrap();
        assert_eq!(pf.map, (0..p.len()).collect::<Vec<_>>());
    }

    #[test]
    fn inclusion_sends_the_principal_downset_to_itself() {
        let c = twochain();
        let single = Arc::new(QCategory::unit(c.base.clone(), 0));
        let f = QFunctor::new(single.clone(), c.clone(), vec![0]).unwrap();
        let ps = PresheafCat::new(single).unwrap();
        let pc = PresheafCat::new(c.clone()).unwrap();
        let pf = presheaf_map(&f, &ps, &pc).unwrap();
        let top = c.base.hom(0, 0).index_of("top").unwrap();
        let bot = c.base.hom(0, 0).index_of("bot").unwrap();
        let down_a_src = ps.find(0, &[top]).unwrap();
        let down_a_tgt = pc.find(0, &[top, bot]).unwrap();
        assert_eq!(pf.apply(down_a_src), down_a_tgt);
    }

    #[test]
    fn presheaf_map_commutes_with_yoneda() {
        // naturality of the unit, scanned over every endofunctor
        let c = twochain();
        let p = PresheafCat::new(c.clone()).unwrap();
        let y = yoneda(&p);
        for map in [vec![0, 1], vec![0, 0], vec![1, 1]] {
            let f = QFunctor::new(c.clone(), c.clone(), map).unwrap();
            let pf = presheaf_map(&f, &p, &p).unwrap();
            let left = pf.compose(&y).unwrap();
            let right = y.compose(&f).unwrap();
            assert_eq!(left.map, right.map);
        }
    }

    #[test]
    fn unit_inequality_of_the_doctrine() {
        // the presheaf image of yoneda sits below yoneda of the presheaf
        // category, pointwise in the functor order
        for cat in [
            Arc::new(QCategory::unit(arc(fixtures::two_susp()), 0)),
            twochain(),
        ] {
            let p = PresheafCat::new(cat.clone()).unwrap();
            let pp = PresheafCat::new(p.cat.clone()).unwrap();
            let ty = presheaf_map(&yoneda(&p), &p, &pp).unwrap();
            let yt = yoneda(&pp);
            assert!(functor_leq(&ty, &yt).unwrap());
        }
    }

    #[test]
    fn left_kan_extension_restricts_and_preserves_sups() {
        let a = discrete2();
        let c = twochain();
        let f = QFunctor::new(a.clone(), c.clone(), vec![1, 0]).unwrap();
        let pa = PresheafCat::new(a.clone()).unwrap();
        let lan_map: Vec<usize> = pa
            .members
            .iter()
            .map(|phi| colimit(&phi.as_distributor(), &f).unwrap().apply(0))
            .collect();
        let lan = QFunctor::new(pa.cat.clone(), c, lan_map).unwrap();
        let y = yoneda(&pa);
        let restricted = lan.compose(&y).unwrap();
        assert_eq!(restricted.map, f.map);
        let ppa = PresheafCat::new(pa.cat.clone()).unwrap();
        assert!(preserves_sups(&lan, &ppa).unwrap());
    }

    #[test]
    fn invalid_presheaves_are_rejected() {
        let c = twochain();
        let top = c.base.hom(0, 0).index_of("top").unwrap();
        let bot = c.base.hom(0, 0).index_of("bot").unwrap();
        // marking b without a breaks the action along hom(a, b) = top
        let err = Presheaf::new(c, 0, vec![bot, top]);
        assert!(err.is_err());
    }
}
