//! Finite locales, sheaves with internal orders, and the bridge into
//! enriched categories over the completed suspension: sections become
//! objects, levels become types, downsets become presheaves, and the
//! internal suplattice criterion becomes cocompleteness.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cauchy::{make_order, QOrder};
use crate::enriched::QCategory;
use crate::error::{Error, Result};
use crate::presheaf::{is_cocomplete, Presheaf};
use crate::quantaloid::{Quantale, Quantaloid};
use crate::report::Report;
use crate::suplattice::FiniteSuplattice;

/// A finite frame: binary meets distribute over joins. Binary joins
/// suffice, since finite joins are iterated binary ones and meeting with
/// bottom is bottom in any lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLocale {
    pub frame: FiniteSuplattice,
}

impl FiniteLocale {
    pub fn new(frame: FiniteSuplattice) -> Result<Self> {
        for v in 0..frame.len() {
            for x in 0..frame.len() {
                for y in 0..frame.len() {
                    let lhs = frame.meet_pair(v, frame.join_pair(x, y));
                    let rhs =
                        frame.join_pair(frame.meet_pair(v, x), frame.meet_pair(v, y));
                    if lhs != rhs {
                        return Err(Error::input(format!(
                            "meet with {} does not distribute over the join of {} and {}",
                            frame.name(v),
                            frame.name(x),
                            frame.name(y)
                        )));
                    }
                }
            }
        }
        Ok(FiniteLocale { frame })
    }

    /// The one-object quantaloid with this frame as hom, meet as
    /// composition, and top as unit.
    pub fn suspension(&self) -> Quantaloid {
        let l = &self.frame;
        let mul = (0..l.len())
            .map(|g| (0..l.len()).map(|f| l.meet_pair(g, f)).collect())
            .collect();
        Quantale::new(l.clone(), mul, l.top())
            .expect("meet composition on a distributive lattice is a quantale")
            .suspension("*")
            .expect("suspension of a validated quantale")
    }
}

/// Sections per frame element with restriction maps downward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSheaf {
    pub locale: FiniteLocale,
    pub sections: Vec<Vec<String>>,
    /// `restrict[u][v]` maps `sections[v]` into `sections[u]`; filled
    /// exactly when `u <= v`, empty otherwise.
    pub restrict: Vec<Vec<Vec<usize>>>,
}

impl FiniteSheaf {
    pub fn new(
        locale: FiniteLocale,
        sections: Vec<Vec<String>>,
        restrict: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = locale.frame.len();
        if sections.len() != n || restrict.len() != n || restrict.iter().any(|r| r.len() != n) {
            return Err(Error::input("sheaf tables must cover every frame element"));
        }
        for v in 0..n {
            let mut seen = std::collections::BTreeSet::new();
            for name in &sections[v] {
                if !seen.insert(name) {
                    return Err(Error::input(format!(
                        "duplicate section name {name} at level {}",
                        locale.frame.name(v)
                    )));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                let map = &restrict[u][v];
                if locale.frame.leq(u, v) {
                    if map.len() != sections[v].len()
                        || map.iter().any(|&x| x >= sections[u].len())
                    {
                        return Err(Error::input(format!(
                            "restriction from {} to {} has the wrong shape",
                            locale.frame.name(v),
                            locale.frame.name(u)
                        )));
                    }
                } else if !map.is_empty() {
                    return Err(Error::input(format!(
                        "restriction from {} to {} is not along the order",
                        locale.frame.name(v),
                        locale.frame.name(u)
                    )));
                }
            }
        }
        Ok(FiniteSheaf { locale, sections, restrict })
    }

    pub fn section_count(&self, v: usize) -> usize {
        self.sections[v].len()
    }

    pub fn section_name(&self, v: usize, x: usize) -> &str {
        &self.sections[v][x]
    }

    /// `x` at level `v`, restricted down to `u <= v`.
    pub fn restricted(&self, u: usize, v: usize, x: usize) -> usize {
        self.restrict[u][v][x]
    }

    fn covers_of(&self, v: usize) -> Vec<Vec<usize>> {
        let n = self.locale.frame.len();
        let mut out = Vec::new();
        for mask in 0..(1u32 << n) {
            let subset: Vec<usize> = (0..n).filter(|&w| mask & (1 << w) != 0).collect();
            if self.locale.frame.join(subset.iter().copied()) == v {
                out.push(subset);
            }
        }
        out
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("sheaf laws");
        let frame = &self.locale.frame;
        let n = frame.len();

        let mut id_ok = true;
        for v in 0..n {
            if self.restrict[v][v] != (0..self.section_count(v)).collect::<Vec<_>>() {
                report.fail(
                    "restriction to the same level is the identity",
                    format!("level {}", frame.name(v)),
                );
                id_ok = false;
            }
        }
        if id_ok {
            report.pass("restriction to the same level is the identity");
        }

        let mut comp_ok = true;
        'comp: for w in 0..n {
            for u in 0..n {
                for v in 0..n {
                    if !(frame.leq(w, u) && frame.leq(u, v)) {
                        continue;
                    }
                    for x in 0..self.section_count(v) {
                        let two_step = self.restricted(w, u, self.restricted(u, v, x));
                        if two_step != self.restricted(w, v, x) {
                            report.fail(
                                "restrictions compose",
                                format!(
                                    "{} from {} via {} to {}",
                                    self.section_name(v, x),
                                    frame.name(v),
                                    frame.name(u),
                                    frame.name(w)
                                ),
                            );
                            comp_ok = false;
                            break 'comp;
                        }
                    }
                }
            }
        }
        if comp_ok {
            report.pass("restrictions compose");
        }

        let mut glue_ok = true;
        'glue: for v in 0..n {
            for cover in self.covers_of(v) {
                // every matching family over the cover must glue uniquely;
                // the empty cover of bottom forces a single bottom section
                let mut families: Vec<Vec<usize>> = vec![Vec::new()];
                for &u in &cover {
                    families = families
                        .into_iter()
                        .flat_map(|f| {
                            (0..self.section_count(u)).map(move |x| {
                                let mut f2 = f.clone();
                                f2.push(x);
                                f2
                            })
                        })
                        .collect();
                }
                for family in families {
                    let matching = cover.iter().enumerate().all(|(i, &u)| {
                        cover.iter().enumerate().all(|(j, &u2)| {
                            let w = frame.meet_pair(u, u2);
                            self.restricted(w, u, family[i])
                                == self.restricted(w, u2, family[j])
                        })
                    });
                    if !matching {
                        continue;
                    }
                    let gluings = (0..self.section_count(v))
                        .filter(|&x| {
                            cover
                                .iter()
                                .enumerate()
                                .all(|(i, &u)| self.restricted(u, v, x) == family[i])
                        })
                        .count();
                    if gluings != 1 {
                        let names: Vec<&str> = cover
                            .iter()
                            .enumerate()
                            .map(|(i, &u)| self.section_name(u, family[i]))
                            .collect();
                        report.fail(
                            "matching families glue uniquely",
                            format!(
                                "cover of {} glues ({}) {} times",
                                frame.name(v),
                                names.join(","),
                                gluings
                            ),
                        );
                        glue_ok = false;
                        break 'glue;
                    }
                }
            }
        }
        if glue_ok {
            report.pass("matching families glue uniquely");
        }

        report
    }
}

/// A sheaf with a preorder on each level's sections, stable under
/// restriction and local over covers. Antisymmetry is demanded only under
/// the strict reading; under the other the report records which case the
/// data is in, deciding nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedSheaf {
    pub sheaf: FiniteSheaf,
    /// `leq[v][x][y]`: section `x` below `y` at level `v`.
    pub leq: Vec<Vec<Vec<bool>>>,
    pub strict: bool,
}

impl OrderedSheaf {
    pub fn new(sheaf: FiniteSheaf, leq: Vec<Vec<Vec<bool>>>, strict: bool) -> Result<Self> {
        let n = sheaf.locale.frame.len();
        if leq.len() != n {
            return Err(Error::input("one order relation per frame element"));
        }
        for v in 0..n {
            let k = sheaf.section_count(v);
            if leq[v].len() != k || leq[v].iter().any(|row| row.len() != k) {
                return Err(Error::input(format!(
                    "order at level {} has the wrong shape",
                    sheaf.locale.frame.name(v)
                )));
            }
        }
        Ok(OrderedSheaf { sheaf, leq, strict })
    }

    pub fn le(&self, v: usize, x: usize, y: usize) -> bool {
        self.leq[v][x][y]
    }

    pub fn antisymmetry_witness(&self) -> Option<String> {
        let frame = &self.sheaf.locale.frame;
        for v in 0..frame.len() {
            for x in 0..self.sheaf.section_count(v) {
                for y in 0..x {
                    if self.le(v, x, y) && self.le(v, y, x) {
                        return Some(format!(
                            "{} and {} are equivalent at {}",
                            self.sheaf.section_name(v, x),
                            self.sheaf.section_name(v, y),
                            frame.name(v)
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Report {
        let mut report = self.sheaf.validate();
        let frame = &self.sheaf.locale.frame;
        let n = frame.len();

        let mut pre_ok = true;
        'pre: for v in 0..n {
            let k = self.sheaf.section_count(v);
            for x in 0..k {
                if !self.le(v, x, x) {
                    report.fail(
                        "levelwise order is reflexive and transitive",
                        format!("{} at {}", self.sheaf.section_name(v, x), frame.name(v)),
                    );
                    pre_ok = false;
                    break 'pre;
                }
                for y in 0..k {
                    for z in 0..k {
                        if self.le(v, x, y) && self.le(v, y, z) && !self.le(v, x, z) {
                            report.fail(
                                "levelwise order is reflexive and transitive",
                                format!(
                                    "transitivity fails through {} at {}",
                                    self.sheaf.section_name(v, y),
                                    frame.name(v)
                                ),
                            );
                            pre_ok = false;
                            break 'pre;
                        }
                    }
                }
            }
        }
        if pre_ok {
            report.pass("levelwise order is reflexive and transitive");
        }

        match (self.strict, self.antisymmetry_witness()) {
            (true, Some(w)) => report.fail("levelwise order is antisymmetric", w),
            (true, None) => report.pass("levelwise order is antisymmetric"),
            (false, Some(_)) => report.pass(
                "order kept reflexive-transitive only (equivalent distinct sections present)",
            ),
            (false, None) => report.pass("order is antisymmetric under both readings"),
        }

        let mut stable = true;
        'stab: for v in 0..n {
            for u in 0..n {
                if !frame.leq(u, v) {
                    continue;
                }
                for x in 0..self.sheaf.section_count(v) {
                    for y in 0..self.sheaf.section_count(v) {
                        if self.le(v, x, y)
                            && !self.le(
                                u,
                                self.sheaf.restricted(u, v, x),
                                self.sheaf.restricted(u, v, y),
                            )
                        {
                            report.fail(
                                "order is stable under restriction",
                                format!(
                                    "{} below {} at {} breaks at {}",
                                    self.sheaf.section_name(v, x),
                                    self.sheaf.section_name(v, y),
                                    frame.name(v),
                                    frame.name(u)
                                ),
                            );
                            stable = false;
                            break 'stab;
                        }
                    }
                }
            }
        }
        if stable {
            report.pass("order is stable under restriction");
        }

        // locality over all covers reduces to one check per pair: the set
        // of levels where the restrictions compare is closed downward, so
        // some cover works iff the set's join is the whole level
        let mut local = true;
        'loc: for v in 0..n {
            for x in 0..self.sheaf.section_count(v) {
                for y in 0..self.sheaf.section_count(v) {
                    let agree = (0..n).filter(|&w| {
                        frame.leq(w, v)
                            && self.le(
                                w,
                                self.sheaf.restricted(w, v, x),
                                self.sheaf.restricted(w, v, y),
                            )
                    });
                    if frame.join(agree) == v && !self.le(v, x, y) {
                        report.fail(
                            "order is local over covers",
                            format!(
                                "{} below {} on a cover of {} but not at it",
                                self.sheaf.section_name(v, x),
                                self.sheaf.section_name(v, y),
                                frame.name(v)
                            ),
                        );
                        local = false;
                        break 'loc;
                    }
                }
            }
        }
        if local {
            report.pass("order is local over covers");
        }

        report
    }
}

/// A downclosed subsheaf of the truncation at `level`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Downset {
    pub level: usize,
    /// `member[v][x]` for sections at `v`; meaningful only for `v` below
    /// the level, all false elsewhere.
    pub member: Vec<Vec<bool>>,
}

impl Downset {
    pub fn contains(&self, v: usize, x: usize) -> bool {
        self.member[v][x]
    }

    /// The whole truncation: every section at every level below `u`.
    pub fn full(o: &OrderedSheaf, u: usize) -> Downset {
        let frame = &o.sheaf.locale.frame;
        let member = (0..frame.len())
            .map(|v| vec![frame.leq(v, u); o.sheaf.section_count(v)])
            .collect();
        Downset { level: u, member }
    }

    /// Downclosure of the section `x` living at `v`.
    pub fn principal(o: &OrderedSheaf, v: usize, x: usize) -> Downset {
        let frame = &o.sheaf.locale.frame;
        let member = (0..frame.len())
            .map(|w| {
                (0..o.sheaf.section_count(w))
                    .map(|y| frame.leq(w, v) && o.le(w, y, o.sheaf.restricted(w, v, x)))
                    .collect()
            })
            .collect();
        Downset { level: v, member }
    }

    /// The same members, seen at a lower level.
    pub fn truncate(&self, o: &OrderedSheaf, w: usize) -> Downset {
        let frame = &o.sheaf.locale.frame;
        let member = (0..frame.len())
            .map(|v| {
                (0..o.sheaf.section_count(v))
                    .map(|x| frame.leq(v, w) && self.contains(v, x))
                    .collect()
            })
            .collect();
        Downset { level: w, member }
    }

    pub fn name(&self, o: &OrderedSheaf) -> String {
        let frame = &o.sheaf.locale.frame;
        let mut parts = Vec::new();
        for v in 0..frame.len() {
            if !frame.leq(v, self.level) {
                continue;
            }
            let names: Vec<&str> = (0..o.sheaf.section_count(v))
                .filter(|&x| self.contains(v, x))
                .map(|x| o.sheaf.section_name(v, x))
                .collect();
            parts.push(format!("{}:{{{}}}", frame.name(v), names.join(",")));
        }
        format!("{}[{}]", frame.name(self.level), parts.join(" "))
    }

    pub fn validate(&self, o: &OrderedSheaf) -> Report {
        let mut report = Report::new("downset laws");
        let frame = &o.sheaf.locale.frame;
        let n = frame.len();
        let u = self.level;

        let shaped = self.member.len() == n
            && (0..n).all(|v| {
                self.member[v].len() == o.sheaf.section_count(v)
                    && (frame.leq(v, u) || self.member[v].iter().all(|&b| !b))
            });
        report.check("members stay below the level", shaped, || {
            "a member lives above the downset's level".into()
        });
        if !shaped {
            return report;
        }

        let mut restr_ok = true;
        'restr: for v in 0..n {
            if !frame.leq(v, u) {
                continue;
            }
            for x in 0..o.sheaf.section_count(v) {
                if !self.contains(v, x) {
                    continue;
                }
                for w in 0..n {
                    if frame.leq(w, v) && !self.contains(w, o.sheaf.restricted(w, v, x)) {
                        report.fail(
                            "closed under restriction",
                            format!(
                                "{} at {} escapes at {}",
                                o.sheaf.section_name(v, x),
                                frame.name(v),
                                frame.name(w)
                            ),
                        );
                        restr_ok = false;
                        break 'restr;
                    }
                }
            }
        }
        if restr_ok {
            report.pass("closed under restriction");
        }

        // as with locality: the levels where a section's restriction is a
        // member form a downset, so all covers reduce to the join check
        let mut glue_ok = true;
        'glue: for v in 0..n {
            if !frame.leq(v, u) {
                continue;
            }
            for x in 0..o.sheaf.section_count(v) {
                let inside = (0..n).filter(|&w| {
                    frame.leq(w, v) && self.contains(w, o.sheaf.restricted(w, v, x))
                });
                if frame.join(inside) == v && !self.contains(v, x) {
                    report.fail(
                        "closed under gluing",
                        format!(
                            "{} is covered by members but missing at {}",
                            o.sheaf.section_name(v, x),
                            frame.name(v)
                        ),
                    );
                    glue_ok = false;
                    break 'glue;
                }
            }
        }
        if glue_ok {
            report.pass("closed under gluing");
        }

        let mut down_ok = true;
        'down: for v in 0..n {
            if !frame.leq(v, u) {
                continue;
            }
            for x in 0..o.sheaf.section_count(v) {
                for y in 0..o.sheaf.section_count(v) {
                    if self.contains(v, x) && o.le(v, y, x) && !self.contains(v, y) {
                        report.fail(
                            "downclosed levelwise",
                            format!(
                                "{} below member {} at {} is missing",
                                o.sheaf.section_name(v, y),
                                o.sheaf.section_name(v, x),
                                frame.name(v)
                            ),
                        );
                        down_ok = false;
                        break 'down;
                    }
                }
            }
        }
        if down_ok {
            report.pass("downclosed levelwise");
        }

        report
    }
}

/// Every downset at the given level, in a fixed bit order.
pub fn enumerate_downsets(o: &OrderedSheaf, u: usize) -> Vec<Downset> {
    let frame = &o.sheaf.locale.frame;
    let n = frame.len();
    let slots: Vec<(usize, usize)> = (0..n)
        .filter(|&v| frame.leq(v, u))
        .flat_map(|v| (0..o.sheaf.section_count(v)).map(move |x| (v, x)))
        .collect();
    let mut out = Vec::new();
    for mask in 0..(1u64 << slots.len()) {
        let mut member: Vec<Vec<bool>> =
            (0..n).map(|v| vec![false; o.sheaf.section_count(v)]).collect();
        for (bit, &(v, x)) in slots.iter().enumerate() {
            member[v][x] = mask & (1 << bit) != 0;
        }
        let candidate = Downset { level: u, member };
        if candidate.validate(o).all_pass() {
            out.push(candidate);
        }
    }
    out
}

/// The enriched category of a validated ordered sheaf, over the
/// split-idempotent completion of the frame's suspension: one object per
/// section, typed by its level, with `hom(y, x)` the greatest level at
/// which `y` restricts below `x`.
#[derive(Debug)]
pub struct SheafCategory {
    pub order: QOrder,
    /// Category object per (level, section).
    pub object_of: Vec<Vec<usize>>,
    pub section_of: Vec<(usize, usize)>,
}

impl SheafCategory {
    pub fn cat(&self) -> &Arc<QCategory> {
        &self.order.cat
    }
}

/// Frame elements below the meet, in element order: the members of the
/// completion's hom between two level idempotents.
fn hom_members(frame: &FiniteSuplattice, a: usize, b: usize) -> Vec<usize> {
    let cap = frame.meet_pair(a, b);
    (0..frame.len()).filter(|&w| frame.leq(w, cap)).collect()
}

pub fn category_of_ordered_sheaf(o: &OrderedSheaf) -> Result<SheafCategory> {
    let validation = o.validate();
    if let Some(fail) = validation.failures().next() {
        return Err(Error::precondition(format!(
            "ordered sheaf invalid: {}: {}",
            fail.law,
            fail.witness.clone().unwrap_or_default()
        )));
    }

    let frame = &o.sheaf.locale.frame;
    let q = Arc::new(o.sheaf.locale.suspension());
    let idm = Arc::new(q.idm()?);
    // every frame element is meet-idempotent, so completion objects align
    // with frame elements in element order
    debug_assert_eq!(idm.object_count(), frame.len());

    let mut names = Vec::new();
    let mut typs = Vec::new();
    let mut object_of = vec![Vec::new(); frame.len()];
    let mut section_of = Vec::new();
    for v in 0..frame.len() {
        for x in 0..o.sheaf.section_count(v) {
            object_of[v].push(names.len());
            section_of.push((v, x));
            names.push(format!("{}@{}", o.sheaf.section_name(v, x), frame.name(v)));
            typs.push(v);
        }
    }

    let total = names.len();
    let mut hom = vec![vec![0; total]; total];
    for (yo, &(vy, y)) in section_of.iter().enumerate() {
        for (xo, &(vx, x)) in section_of.iter().enumerate() {
            let members = hom_members(frame, vx, vy);
            let agree = members.iter().copied().filter(|&w| {
                o.le(w, o.sheaf.restricted(w, vy, y), o.sheaf.restricted(w, vx, x))
            });
            let level = frame.join(agree);
            hom[yo][xo] = members
                .iter()
                .position(|&w| w == level)
                .expect("the join of qualifying levels stays under the meet");
        }
    }

    let cat = Arc::new(QCategory::new(idm, names, typs, hom)?);
    let order = make_order(q, cat)?;
    Ok(SheafCategory { order, object_of, section_of })
}

/// `phi(x)` is the greatest level at which `x` restricts into the downset.
pub fn downset_to_presheaf(
    o: &OrderedSheaf,
    sc: &SheafCategory,
    s: &Downset,
) -> Result<Presheaf> {
    let validation = s.validate(o);
    if let Some(fail) = validation.failures().next() {
        return Err(Error::precondition(format!(
            "downset invalid: {}: {}",
            fail.law,
            fail.witness.clone().unwrap_or_default()
        )));
    }
    let frame = &o.sheaf.locale.frame;
    let u = s.level;
    let elem = sc
        .section_of
        .iter()
        .map(|&(vx, x)| {
            let members = hom_members(frame, u, vx);
            let inside = members
                .iter()
                .copied()
                .filter(|&v| s.contains(v, o.sheaf.restricted(v, vx, x)));
            let level = frame.join(inside);
            members
                .iter()
                .position(|&w| w == level)
                .expect("membership levels stay under the meet")
        })
        .collect();
    Presheaf::new(sc.order.cat.clone(), u, elem)
}

/// Members at level `v` are the sections whose characteristic level is
/// exactly `v`.
pub fn presheaf_to_downset(
    o: &OrderedSheaf,
    sc: &SheafCategory,
    phi: &Presheaf,
) -> Result<Downset> {
    if phi.over != sc.order.cat {
        return Err(Error::mismatch("presheaf lives over a different category"));
    }
    let frame = &o.sheaf.locale.frame;
    let u = phi.typ;
    let mut member: Vec<Vec<bool>> =
        (0..frame.len()).map(|v| vec![false; o.sheaf.section_count(v)]).collect();
    for (obj, &(v, x)) in sc.section_of.iter().enumerate() {
        if !frame.leq(v, u) {
            continue;
        }
        let members = hom_members(frame, u, v);
        if members[phi.elem[obj]] == v {
            member[v][x] = true;
        }
    }
    let s = Downset { level: u, member };
    debug_assert!(s.validate(o).all_pass());
    Ok(s)
}

fn least_upper_section(o: &OrderedSheaf, s: &Downset) -> Option<usize> {
    let frame = &o.sheaf.locale.frame;
    let u = s.level;
    let is_upper = |y: usize| {
        (0..frame.len()).all(|v| {
            !frame.leq(v, u)
                || (0..o.sheaf.section_count(v))
                    .all(|x| !s.contains(v, x) || o.le(v, x, o.sheaf.restricted(v, u, y)))
        })
    };
    let uppers: Vec<usize> = (0..o.sheaf.section_count(u)).filter(|&y| is_upper(y)).collect();
    uppers
        .iter()
        .find(|&&y0| uppers.iter().all(|&y| o.le(u, y0, y)))
        .copied()
}

/// Outcome of the internal suplattice criterion: side (a) is a levelwise
/// supremum operator on downsets compatible with restriction, side (b) is
/// cocompleteness of the associated category. The report's verdict is
/// their agreement; each side's value is spelled out in the law text.
#[derive(Debug)]
pub struct CriterionOutcome {
    pub sups: bool,
    pub sup_witness: Option<String>,
    pub cocomplete: bool,
    pub cocomplete_witness: Option<String>,
    pub report: Report,
}

pub fn check_suplattice_criterion(o: &OrderedSheaf) -> Result<CriterionOutcome> {
    let sc = category_of_ordered_sheaf(o)?;
    let frame = &o.sheaf.locale.frame;

    let mut sup_of: BTreeMap<Downset, Option<usize>> = BTreeMap::new();
    for u in 0..frame.len() {
        for s in enumerate_downsets(o, u) {
            let found = least_upper_section(o, &s);
            sup_of.insert(s, found);
        }
    }

    let mut sups = true;
    let mut sup_witness = None;
    for (s, found) in &sup_of {
        if found.is_none() {
            sups = false;
            sup_witness = Some(format!("downset {} has no least upper section", s.name(o)));
            break;
        }
    }
    if sups {
        'nat: for (s, found) in &sup_of {
            let y = found.unwrap();
            for w in 0..frame.len() {
                if !frame.leq(w, s.level) {
                    continue;
                }
                let yw = o.sheaf.restricted(w, s.level, y);
                let zw = sup_of[&s.truncate(o, w)].unwrap();
                // compare up to order equivalence, so both readings of
                // antisymmetry give the same verdict
                if !(o.le(w, yw, zw) && o.le(w, zw, yw)) {
                    sups = false;
                    sup_witness = Some(format!(
                        "supremum of {} does not restrict to the supremum at {}",
                        s.name(o),
                        frame.name(w)
                    ));
                    break 'nat;
                }
            }
        }
    }

    let cc = is_cocomplete(sc.order.cat.clone())?;
    let cocomplete = cc.complete();
    let cocomplete_witness = cc.witness.clone();

    let mut report = Report::new("internal suplattice criterion");
    report.check(
        format!(
            "downset suprema and cocompleteness agree (suprema: {sups}, cocomplete: {cocomplete})"
        ),
        sups == cocomplete,
        || {
            format!(
                "{}; {}",
                sup_witness.clone().unwrap_or_else(|| "suprema exist".into()),
                cocomplete_witness
                    .clone()
                    .unwrap_or_else(|| "category is cocomplete".into())
            )
        },
    );
    if sups && cocomplete {
        report.pass("every downset has a least upper section, naturally in restriction");
        report.pass("associated category is cocomplete");
    }

    Ok(CriterionOutcome { sups, sup_witness, cocomplete, cocomplete_witness, report })
}
