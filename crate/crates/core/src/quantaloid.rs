//! Quantaloids: categories enriched in suplattices.
//!
//! A quantaloid has a suplattice of arrows between any ordered pair of
//! objects; composition preserves joins in each variable separately.
//! Everything is stored densely: one lattice per object pair and one full
//! composition table per object triple.

use crate::error::{Error, Result};
use crate::report::Report;
use crate::suplattice::{is_supmorphism, FiniteSuplattice, SupMorphism};

/// An arrow is an element of the hom-lattice `hom(src, dst)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub elem: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantaloid {
    objects: Vec<String>,
    /// `homs[a][b]` is the lattice of arrows `a -> b`.
    homs: Vec<Vec<FiniteSuplattice>>,
    /// `comp[a][b][c][g][f]` is `g . f` for `f: a -> b`, `g: b -> c`.
    comp: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
    /// `ids[a]` is the identity element in `homs[a][a]`.
    ids: Vec<usize>,
}

impl Quantaloid {
    /// Assemble and fully validate: associativity, units, and join
    /// preservation of composition in both variables.
    pub fn new(
        objects: Vec<String>,
        homs: Vec<Vec<FiniteSuplattice>>,
        comp: Vec<Vec<Vec<Vec<Vec<usize>>>>>,
        ids: Vec<usize>,
    ) -> Result<Self> {
        let q = Quantaloid { objects, homs, comp, ids };
        q.validate_shape()?;
        let report = q.validate();
        if let Some(fail) = report.failures().next() {
            return Err(Error::input(format!(
                "{}: {}",
                fail.law,
                fail.witness.clone().unwrap_or_default()
            )));
        }
        Ok(q)
    }

    fn validate_shape(&self) -> Result<()> {
        let n = self.objects.len();
        if n == 0 {
            return Err(Error::input("a quantaloid needs at least one object"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for o in &self.objects {
            if !seen.insert(o) {
                return Err(Error::input(format!("duplicate object name {o:?}")));
            }
        }
        if self.homs.len() != n || self.homs.iter().any(|r| r.len() != n) {
            return Err(Error::input("hom matrix shape mismatch"));
        }
        if self.ids.len() != n {
            return Err(Error::input("identity list length mismatch"));
        }
        for a in 0..n {
            if self.ids[a] >= self.homs[a][a].len() {
                return Err(Error::input(format!(
                    "identity of {:?} out of range",
                    self.objects[a]
                )));
            }
        }
        if self.comp.len() != n {
            return Err(Error::input("composition table shape mismatch"));
        }
        for a in 0..n {
            if self.comp[a].len() != n {
                return Err(Error::input("composition table shape mismatch"));
            }
            for b in 0..n {
                if self.comp[a][b].len() != n {
                    return Err(Error::input("composition table shape mismatch"));
                }
                for c in 0..n {
                    let t = &self.comp[a][b][c];
                    if t.len() != self.homs[b][c].len()
                        || t.iter().any(|row| row.len() != self.homs[a][b].len())
                    {
                        return Err(Error::input(format!(
                            "composition table for {:?} -> {:?} -> {:?} has missing entries",
                            self.objects[a], self.objects[b], self.objects[c]
                        )));
                    }
                    for row in t {
                        for &v in row {
                            if v >= self.homs[a][c].len() {
                                return Err(Error::input(
                                    "composition table entry out of range",
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, a: usize, b: usize) -> &FiniteSuplattice {
        &self.homs[a][b]
    }

    pub fn id(&self, a: usize) -> Arrow {
        Arrow { src: a, dst: a, elem: self.ids[a] }
    }

    pub fn bottom(&self, a: usize, b: usize) -> Arrow {
        Arrow { src: a, dst: b, elem: self.homs[a][b].bottom() }
    }

    pub fn arrow(&self, src: usize, dst: usize, elem: usize) -> Arrow {
        debug_assert!(elem < self.homs[src][dst].len());
        Arrow { src, dst, elem }
    }

    /// All arrows `a -> b`, in lattice element order.
    pub fn arrows(&self, a: usize, b: usize) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.homs[a][b].len()).map(move |e| Arrow { src: a, dst: b, elem: e })
    }

    /// `g . f`, requiring `f.dst == g.src`.
    pub fn compose(&self, g: Arrow, f: Arrow) -> Result<Arrow> {
        if f.dst != g.src {
            return Err(Error::mismatch(format!(
                "cannot compose {} . {}",
                self.describe(g),
                self.describe(f)
            )));
        }
        Ok(Arrow {
            src: f.src,
            dst: g.dst,
            elem: self.comp[f.src][f.dst][g.dst][g.elem][f.elem],
        })
    }

    pub fn leq(&self, f: Arrow, g: Arrow) -> bool {
        f.src == g.src && f.dst == g.dst && self.homs[f.src][f.dst].leq(f.elem, g.elem)
    }

    pub fn join_arrows(&self, src: usize, dst: usize, elems: impl IntoIterator<Item = usize>) -> Arrow {
        Arrow { src, dst, elem: self.homs[src][dst].join(elems) }
    }

    pub fn describe(&self, f: Arrow) -> String {
        format!(
            "{}: {} -> {}",
            self.homs[f.src][f.dst].name(f.elem),
            self.objects[f.src],
            self.objects[f.dst]
        )
    }

    /// Full law report: partial-order axioms are already guaranteed by the
    /// hom lattices, so this checks associativity, units, and that
    /// composition is a supmorphism in each variable.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("quantaloid laws");
        let n = self.objects.len();

        let mut assoc_ok = true;
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for f in self.arrows(a, b) {
                            for g in self.arrows(b, c) {
                                for h in self.arrows(c, d) {
                                    let left = self
                                        .compose(h, self.compose(g, f).unwrap())
                                        .unwrap();
                                    let right = self
                                        .compose(self.compose(h, g).unwrap(), f)
                                        .unwrap();
                                    if left != right {
                                        report.fail(
                                            "associativity",
                                            format!(
                                                "(h.g).f != h.(g.f) at h={}, g={}, f={}",
                                                self.describe(h),
                                                self.describe(g),
                                                self.describe(f)
                                            ),
                                        );
                                        assoc_ok = false;
                                        break 'assoc;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if assoc_ok {
            report.pass("associativity");
        }

        let mut unit_ok = true;
        'unit: for a in 0..n {
            for b in 0..n {
                for f in self.arrows(a, b) {
                    let lhs = self.compose(self.id(b), f).unwrap();
                    let rhs = self.compose(f, self.id(a)).unwrap();
                    if lhs != f || rhs != f {
                        report.fail(
                            "unit laws",
                            format!("identity fails at {}", self.describe(f)),
                        );
                        unit_ok = false;
                        break 'unit;
                    }
                }
            }
        }
        if unit_ok {
            report.pass("unit laws");
        }

        // Join preservation: empty join plus binary joins in each variable.
        let mut sup_ok = true;
        'sup: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for g in self.arrows(b, c) {
                        let bot = self.bottom(a, b);
                        if self.compose(g, bot).unwrap().elem != self.homs[a][c].bottom() {
                            report.fail(
                                "composition preserves joins (right)",
                                format!("{} . bottom != bottom", self.describe(g)),
                            );
                            sup_ok = false;
                            break 'sup;
                        }
                        for f1 in self.arrows(a, b) {
                            for f2 in self.arrows(a, b) {
                                let join =
                                    self.join_arrows(a, b, [f1.elem, f2.elem]);
                                let lhs = self.compose(g, join).unwrap();
                                let rhs = self.join_arrows(
                                    a,
                                    c,
                                    [
                                        self.compose(g, f1).unwrap().elem,
                                        self.compose(g, f2).unwrap().elem,
                                    ],
                                );
                                if lhs != rhs {
                                    report.fail(
                                        "composition preserves joins (right)",
                                        format!(
                                            "{} . ({} v {}) mismatch",
                                            self.describe(g),
                                            self.describe(f1),
                                            self.describe(f2)
                                        ),
                                    );
                                    sup_ok = false;
                                    break 'sup;
                                }
                            }
                        }
                    }
                    for f in self.arrows(a, b) {
                        let bot = self.bottom(b, c);
                        if self.compose(bot, f).unwrap().elem != self.homs[a][c].bottom() {
                            report.fail(
                                "composition preserves joins (left)",
                                format!("bottom . {} != bottom", self.describe(f)),
                            );
                            sup_ok = false;
                            break 'sup;
                        }
                        for g1 in self.arrows(b, c) {
                            for g2 in self.arrows(b, c) {
                                let join =
                                    self.join_arrows(b, c, [g1.elem, g2.elem]);
                                let lhs = self.compose(join, f).unwrap();
                                let rhs = self.join_arrows(
                                    a,
                                    c,
                                    [
                                        self.compose(g1, f).unwrap().elem,
                                        self.compose(g2, f).unwrap().elem,
                                    ],
                                );
                                if lhs != rhs {
                                    report.fail(
                                        "composition preserves joins (left)",
                                        format!(
                                            "({} v {}) . {} mismatch",
                                            self.describe(g1),
                                            self.describe(g2),
                                            self.describe(f)
                                        ),
                                    );
                                    sup_ok = false;
                                    break 'sup;
                                }
                            }
                        }
                    }
                }
            }
        }
        if sup_ok {
            report.pass("composition preserves joins (both variables)");
        }

        report
    }

    /// Largest `x: b -> c` with `x . f <= h`, for `f: a -> b`, `h: a -> c`.
    pub fn right_extension(&self, f: Arrow, h: Arrow) -> Result<Arrow> {
        if f.src != h.src {
            return Err(Error::mismatch("right extension needs a common source"));
        }
        let qualifying = self
            .arrows(f.dst, h.dst)
            .filter(|&x| self.leq(self.compose(x, f).unwrap(), h))
            .map(|x| x.elem);
        let ext = self.join_arrows(f.dst, h.dst, qualifying);
        debug_assert!(self.leq(self.compose(ext, f).unwrap(), h));
        Ok(ext)
    }

    /// Largest `x: a -> b` with `g . x <= h`, for `g: b -> c`, `h: a -> c`.
    pub fn right_lifting(&self, g: Arrow, h: Arrow) -> Result<Arrow> {
        if g.dst != h.dst {
            return Err(Error::mismatch("right lifting needs a common target"));
        }
        let qualifying = self
            .arrows(h.src, g.src)
            .filter(|&x| self.leq(self.compose(g, x).unwrap(), h))
            .map(|x| x.elem);
        let lift = self.join_arrows(h.src, g.src, qualifying);
        debug_assert!(self.leq(self.compose(g, lift).unwrap(), h));
        Ok(lift)
    }

    /// All idempotent endo-arrows, in (object, element) order.
    pub fn idempotents(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for a in 0..self.objects.len() {
            for e in self.arrows(a, a) {
                if self.compose(e, e).unwrap() == e {
                    out.push(e);
                }
            }
        }
        out
    }

    /// Split-idempotent completion. Objects are the idempotents of `self`;
    /// arrows `e -> f` are the arrows `b` of `self` with `b . e = b = f . b`.
    /// The identity on `e` is `e` itself.
    pub fn idm(&self) -> Result<Quantaloid> {
        let idems = self.idempotents();
        let objects: Vec<String> = idems
            .iter()
            .map(|e| format!("{}.{}", self.objects[e.src], self.homs[e.src][e.src].name(e.elem)))
            .collect();

        // member elements of hom(e, f), as element indices of hom(e.src, f.src)
        let mut members: Vec<Vec<Vec<usize>>> = Vec::new();
        for e in &idems {
            let mut row = Vec::new();
            for f in &idems {
                let mems: Vec<usize> = self
                    .arrows(e.src, f.src)
                    .filter(|&b| {
                        self.compose(b, *e).unwrap() == b && self.compose(*f, b).unwrap() == b
                    })
                    .map(|b| b.elem)
                    .collect();
                row.push(mems);
            }
            members.push(row);
        }

        let mut homs = Vec::new();
        for (i, _) in idems.iter().enumerate() {
            let mut row = Vec::new();
            for (j, f) in idems.iter().enumerate() {
                let sub = self.homs[idems[i].src][f.src].sublattice(&members[i][j])?;
                row.push(sub);
            }
            homs.push(row);
        }

        let n = idems.len();
        let mut comp = vec![vec![vec![Vec::new(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut table = vec![vec![0usize; members[a][b].len()]; members[b][c].len()];
                    for (gi, &g) in members[b][c].iter().enumerate() {
                        for (fi, &f) in members[a][b].iter().enumerate() {
                            let composite = self
                                .compose(
                                    Arrow { src: idems[b].src, dst: idems[c].src, elem: g },
                                    Arrow { src: idems[a].src, dst: idems[b].src, elem: f },
                                )
                                .unwrap();
                            let pos = members[a][c]
                                .iter()
                                .position(|&m| m == composite.elem)
                                .ok_or_else(|| {
                                    Error::input(
                                        "idempotent completion not closed under composition",
                                    )
                                })?;
                            table[gi][fi] = pos;
                        }
                    }
                    comp[a][b][c] = table;
                }
            }
        }

        let ids: Vec<usize> = idems
            .iter()
            .enumerate()
            .map(|(i, e)| members[i][i].iter().position(|&m| m == e.elem).unwrap())
            .collect();

        Quantaloid::new(objects, homs, comp, ids)
    }

    /// Position of the identity-idempotent on `a` in the object list of
    /// `idm(self)` (the canonical embedding on objects).
    pub fn idm_object_of(&self, a: usize) -> usize {
        self.idempotents()
            .iter()
            .position(|e| e.src == a && e.elem == self.ids[a])
            .expect("identities are idempotent")
    }
}

/// A homomorphism of quantaloids: an object map plus a supmorphism on each
/// hom lattice, preserving composition and identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QHomomorphism {
    pub obj_map: Vec<usize>,
    /// `hom_maps[a][b]` maps `source.hom(a, b)` into `target.hom(F a, F b)`.
    pub hom_maps: Vec<Vec<SupMorphism>>,
}

impl QHomomorphism {
    pub fn identity(q: &Quantaloid) -> Self {
        let n = q.object_count();
        QHomomorphism {
            obj_map: (0..n).collect(),
            hom_maps: (0..n)
                .map(|a| (0..n).map(|b| SupMorphism::identity(q.hom(a, b))).collect())
                .collect(),
        }
    }

    /// The canonical full embedding of `q` into `q.idm()`: objects go to
    /// their identity idempotents, arrows are unchanged.
    pub fn into_idm(q: &Quantaloid, idm: &Quantaloid) -> Result<Self> {
        let n = q.object_count();
        let obj_map: Vec<usize> = (0..n).map(|a| q.idm_object_of(a)).collect();
        let mut hom_maps = Vec::new();
        for a in 0..n {
            let mut row = Vec::new();
            for b in 0..n {
                let src_l = q.hom(a, b);
                let dst_l = idm.hom(obj_map[a], obj_map[b]);
                let map: Result<Vec<usize>> = (0..src_l.len())
                    .map(|e| {
                        dst_l.index_of(src_l.name(e)).ok_or_else(|| {
                            Error::input("embedding is not full: hom element missing")
                        })
                    })
                    .collect();
                row.push(SupMorphism::new(src_l, dst_l, map?)?);
            }
            hom_maps.push(row);
        }
        Ok(QHomomorphism { obj_map, hom_maps })
    }

    pub fn apply(&self, f: Arrow) -> Arrow {
        Arrow {
            src: self.obj_map[f.src],
            dst: self.obj_map[f.dst],
            elem: self.hom_maps[f.src][f.dst].apply(f.elem),
        }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &QHomomorphism) -> QHomomorphism {
        let obj_map: Vec<usize> =
            first.obj_map.iter().map(|&a| self.obj_map[a]).collect();
        let hom_maps = first
            .hom_maps
            .iter()
            .enumerate()
            .map(|(a, row)| {
                row.iter()
                    .enumerate()
                    .map(|(b, m)| {
                        self.hom_maps[first.obj_map[a]][first.obj_map[b]].compose(m)
                    })
                    .collect()
            })
            .collect();
        QHomomorphism { obj_map, hom_maps }
    }

    pub fn validate(&self, source: &Quantaloid, target: &Quantaloid) -> Report {
        let mut report = Report::new("quantaloid homomorphism laws");
        let n = source.object_count();
        if self.obj_map.len() != n
            || self.obj_map.iter().any(|&a| a >= target.object_count())
            || self.hom_maps.len() != n
            || self.hom_maps.iter().any(|r| r.len() != n)
        {
            report.fail("shape", "object or hom map shape mismatch".to_string());
            return report;
        }

        let mut sup_ok = true;
        for a in 0..n {
            for b in 0..n {
                let sm = &self.hom_maps[a][b];
                if sm.map.len() != source.hom(a, b).len() {
                    report.fail("shape", format!("hom map {a} -> {b} has wrong length"));
                    return report;
                }
                if let Err(w) = is_supmorphism(
                    source.hom(a, b),
                    target.hom(self.obj_map[a], self.obj_map[b]),
                    sm,
                ) {
                    report.fail(
                        "hom maps preserve joins",
                        format!(
                            "hom({}, {}) violates joins at subset {:?}",
                            source.object_name(a),
                            source.object_name(b),
                            w.iter()
                                .map(|&e| source.hom(a, b).name(e))
                                .collect::<Vec<_>>()
                        ),
                    );
                    sup_ok = false;
                }
            }
        }
        if sup_ok {
            report.pass("hom maps preserve joins");
        }

        let mut id_ok = true;
        for a in 0..n {
            if self.apply(source.id(a)) != target.id(self.obj_map[a]) {
                report.fail(
                    "preserves identities",
                    format!("identity of {} not preserved", source.object_name(a)),
                );
                id_ok = false;
            }
        }
        if id_ok {
            report.pass("preserves identities");
        }

        let mut comp_ok = true;
        'comp: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for f in source.arrows(a, b) {
                        for g in source.arrows(b, c) {
                            let lhs = self.apply(source.compose(g, f).unwrap());
                            let rhs = target
                                .compose(self.apply(g), self.apply(f))
                                .unwrap();
                            if lhs != rhs {
                                report.fail(
                                    "preserves composition",
                                    format!(
                                        "F(g.f) != F(g).F(f) at g={}, f={}",
                                        source.describe(g),
                                        source.describe(f)
                                    ),
                                );
                                comp_ok = false;
                                break 'comp;
                            }
                        }
                    }
                }
            }
        }
        if comp_ok {
            report.pass("preserves composition");
        }

        report
    }
}

/// A splitting of an idempotent `e` on `a` through `through`:
/// `section . retraction = identity(through)` and
/// `retraction . section = e` ... with `section: through -> a` and
/// `retraction: a -> through`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Splitting {
    pub through: usize,
    pub retraction: Arrow,
    pub section: Arrow,
}

/// All splittings of the idempotent `e`, trivial one first when `e` is an
/// identity, then in (object, retraction, section) order.
pub fn splittings(q: &Quantaloid, e: Arrow) -> Vec<Splitting> {
    debug_assert_eq!(e.src, e.dst);
    let mut out = Vec::new();
    for x in 0..q.object_count() {
        for p in q.arrows(e.src, x) {
            for s in q.arrows(x, e.src) {
                if q.compose(p, s).unwrap() == q.id(x) && q.compose(s, p).unwrap() == e {
                    out.push(Splitting { through: x, retraction: p, section: s });
                }
            }
        }
    }
    // prefer the trivial splitting of an identity so strict extensions come first
    if e == q.id(e.src) {
        if let Some(pos) = out.iter().position(|s| {
            s.through == e.src && s.retraction == q.id(e.src) && s.section == q.id(e.src)
        }) {
            out.swap(0, pos);
        }
    }
    out
}

pub fn has_split_idempotents(q: &Quantaloid) -> std::result::Result<(), Arrow> {
    for e in q.idempotents() {
        if splittings(q, e).is_empty() {
            return Err(e);
        }
    }
    Ok(())
}

/// Report for the extension of a homomorphism along the idempotent-splitting
/// embedding, plus the uniqueness comparison of all strict extensions.
#[derive(Debug, Clone)]
pub struct ExtensionReport {
    pub report: Report,
    /// One homomorphism `idm(source) -> target` per valid strict extension.
    pub extensions: Vec<QHomomorphism>,
}

/// Extend `f: q -> r` along `q -> idm(q)`, assuming `r` splits idempotents.
///
/// Every extension is forced by a choice of splitting of `f(e)` for each
/// idempotent `e`, so the search enumerates splitting tuples, keeps the
/// candidates that are homomorphisms restricting to `f`, and then compares
/// them pairwise: once as plain object-by-object isomorphism of images, and
/// once as a conjugating family of invertible arrows. Both verdicts are
/// reported separately.
pub fn check_extension(
    q: &Quantaloid,
    r: &Quantaloid,
    f: &QHomomorphism,
) -> Result<ExtensionReport> {
    if let Err(e) = has_split_idempotents(r) {
        return Err(Error::precondition(format!(
            "target does not split the idempotent {}",
            r.describe(e)
        )));
    }
    let f_report = f.validate(q, r);
    if !f_report.all_pass() {
        return Err(Error::input("the given map is not a homomorphism".to_string()));
    }

    let idm = q.idm()?;
    let embed = QHomomorphism::into_idm(q, &idm)?;
    let idems = q.idempotents();

    let mut report = Report::new("idempotent-splitting extension");

    // splittings of F(e) for each idempotent e of q
    let mut choices: Vec<Vec<Splitting>> = Vec::new();
    for e in &idems {
        let fe = f.apply(*e);
        let split = splittings(r, fe);
        if split.is_empty() {
            return Err(Error::precondition(format!(
                "image idempotent {} does not split",
                r.describe(fe)
            )));
        }
        choices.push(split);
    }

    let mut extensions = Vec::new();
    let mut pick = vec![0usize; idems.len()];
    loop {
        let chosen: Vec<Splitting> =
            pick.iter().enumerate().map(|(i, &k)| choices[i][k]).collect();
        if let Some(ext) = build_extension(q, r, f, &idm, &idems, &chosen) {
            let ok = ext.validate(&idm, r).all_pass() && restricts_to(&ext, &embed, f, q);
            if ok {
                extensions.push(ext);
            }
        }
        // odometer over the splitting choices
        let mut i = 0;
        loop {
            if i == pick.len() {
                break;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == pick.len() {
            break;
        }
    }

    report.check("an extension through the splitting completion exists", !extensions.is_empty(), || {
        "no splitting tuple yields a homomorphism restricting to the given one".to_string()
    });

    let mut objwise = true;
    let mut conjugate = true;
    for i in 0..extensions.len() {
        for j in (i + 1)..extensions.len() {
            if !images_objectwise_isomorphic(r, &extensions[i], &extensions[j]) {
                objwise = false;
            }
            if !conjugating_family_exists(r, &idm, &extensions[i], &extensions[j]) {
                conjugate = false;
            }
        }
    }
    report.check(
        "any two extensions have objectwise isomorphic images",
        objwise,
        || "a pair of extensions disagrees beyond isomorphism".to_string(),
    );
    report.check(
        "any two extensions are conjugate by invertible arrows",
        conjugate,
        || "no conjugating family between some pair of extensions".to_string(),
    );

    Ok(ExtensionReport { report, extensions })
}

fn build_extension(
    q: &Quantaloid,
    r: &Quantaloid,
    f: &QHomomorphism,
    idm: &Quantaloid,
    idems: &[Arrow],
    chosen: &[Splitting],
) -> Option<QHomomorphism> {
    let n = idems.len();
    let obj_map: Vec<usize> = chosen.iter().map(|s| s.through).collect();
    let mut hom_maps = Vec::new();
    for a in 0..n {
        let mut row = Vec::new();
        for b in 0..n {
            let src_l = idm.hom(a, b);
            let dst_l = r.hom(obj_map[a], obj_map[b]);
            let mut map = Vec::with_capacity(src_l.len());
            for e in 0..src_l.len() {
                // arrows of idm(q) are named after arrows of q
                let base_elem = q.hom(idems[a].src, idems[b].src).index_of(src_l.name(e))?;
                let base = Arrow {
                    src: idems[a].src,
                    dst: idems[b].src,
                    elem: base_elem,
                };
                let fb = f.apply(base);
                let image = r
                    .compose(chosen[b].retraction, r.compose(fb, chosen[a].section).ok()?)
                    .ok()?;
                map.push(image.elem);
            }
            row.push(SupMorphism::new(src_l, dst_l, map).ok()?);
        }
        hom_maps.push(row);
    }
    Some(QHomomorphism { obj_map, hom_maps })
}

fn restricts_to(
    ext: &QHomomorphism,
    embed: &QHomomorphism,
    f: &QHomomorphism,
    q: &Quantaloid,
) -> bool {
    let composite = ext.compose(embed);
    if composite.obj_map != f.obj_map {
        return false;
    }
    for a in 0..q.object_count() {
        for b in 0..q.object_count() {
            if composite.hom_maps[a][b].map != f.hom_maps[a][b].map {
                return false;
            }
        }
    }
    true
}

/// Invertible arrows `a -> b`: those with a two-sided inverse.
pub fn isomorphisms(q: &Quantaloid, a: usize, b: usize) -> Vec<(Arrow, Arrow)> {
    let mut out = Vec::new();
    for u in q.arrows(a, b) {
        for v in q.arrows(b, a) {
            if q.compose(v, u).unwrap() == q.id(a) && q.compose(u, v).unwrap() == q.id(b) {
                out.push((u, v));
            }
        }
    }
    out
}

fn images_objectwise_isomorphic(
    r: &Quantaloid,
    g1: &QHomomorphism,
    g2: &QHomomorphism,
) -> bool {
    g1.obj_map
        .iter()
        .zip(&g2.obj_map)
        .all(|(&x, &y)| !isomorphisms(r, x, y).is_empty())
}

/// Search for invertible `u_e: G1(e) -> G2(e)` with
/// `G2(b) = u_f . G1(b) . u_e^{-1}` for every arrow `b: e -> f`.
fn conjugating_family_exists(
    r: &Quantaloid,
    idm: &Quantaloid,
    g1: &QHomomorphism,
    g2: &QHomomorphism,
) -> bool {
    let n = idm.object_count();
    let iso_choices: Vec<Vec<(Arrow, Arrow)>> = (0..n)
        .map(|e| isomorphisms(r, g1.obj_map[e], g2.obj_map[e]))
        .collect();
    if iso_choices.iter().any(|c| c.is_empty()) {
        return false;
    }
    let mut pick = vec![0usize; n];
    loop {
        let family: Vec<(Arrow, Arrow)> =
            pick.iter().enumerate().map(|(i, &k)| iso_choices[i][k]).collect();
        let ok = (0..n).all(|e| {
            (0..n).all(|fobj| {
                idm.arrows(e, fobj).all(|b| {
                    let lhs = g2.apply(b);
                    let rhs = r
                        .compose(
                            family[fobj].0,
                            r.compose(g1.apply(b), family[e].1).unwrap(),
                        )
                        .unwrap();
                    lhs == rhs
                })
            })
        });
        if ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return false;
            }
            pick[i] += 1;
            if pick[i] < iso_choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// A quantale: a monoid in suplattices, i.e. a one-object quantaloid in
/// lattice-plus-table form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantale {
    pub lattice: FiniteSuplattice,
    /// `mul[g][f]` is `g . f`.
    pub mul: Vec<Vec<usize>>,
    pub unit: usize,
}

impl Quantale {
    pub fn new(lattice: FiniteSuplattice, mul: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = lattice.len();
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::input("multiplication table shape mismatch"));
        }
        if mul.iter().flatten().any(|&v| v >= n) {
            return Err(Error::input("multiplication table entry out of range"));
        }
        if unit >= n {
            return Err(Error::input("unit out of range"));
        }
        let q = Quantale { lattice, mul, unit };
        // reuse the quantaloid validator through the suspension
        let susp = q.suspension("*")?;
        let report = susp.validate();
        if let Some(fail) = report.failures().next() {
            return Err(Error::input(format!(
                "{}: {}",
                fail.law,
                fail.witness.clone().unwrap_or_default()
            )));
        }
        Ok(q)
    }

    /// The one-object quantaloid with this quantale as its endo-hom.
    pub fn suspension(&self, object: &str) -> Result<Quantaloid> {
        let q = Quantaloid {
            objects: vec![object.to_string()],
            homs: vec![vec![self.lattice.clone()]],
            comp: vec![vec![vec![self.mul.clone()]]],
            ids: vec![self.unit],
        };
        q.validate_shape()?;
        Ok(q)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.lattice.len();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }
}

/// Validated suspension: monoid-in-Sup axioms are checked and reported as
/// errors rather than silently trusted.
pub fn suspension(lattice: FiniteSuplattice, mul: Vec<Vec<usize>>, unit: usize, object: &str) -> Result<Quantaloid> {
    let q = Quantale::new(lattice, mul, unit)?;
    let s = q.suspension(object)?;
    let report = s.validate();
    if let Some(fail) = report.failures().next() {
        return Err(Error::input(format!(
            "{}: {}",
            fail.law,
            fail.witness.clone().unwrap_or_default()
        )));
    }
    Ok(s)
}

/// An element of the centre: an object-indexed family of endo-arrows
/// commuting with every arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentreElement {
    /// `components[a]` is an element of `hom(a, a)`.
    pub components: Vec<usize>,
}

impl CentreElement {
    pub fn name(&self, q: &Quantaloid) -> String {
        self.components
            .iter()
            .enumerate()
            .map(|(a, &e)| q.hom(a, a).name(e))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The centre of a quantaloid: all natural families, with the quantale
/// structure given by pointwise order and pointwise composition.
pub fn centre(q: &Quantaloid) -> Result<(Quantale, Vec<CentreElement>)> {
    let n = q.object_count();
    let mut families = vec![CentreElement { components: Vec::new() }];
    for a in 0..n {
        families = families
            .into_iter()
            .flat_map(|fam| {
                (0..q.hom(a, a).len()).map(move |e| {
                    let mut f = fam.clone();
                    f.components.push(e);
                    f
                })
            })
            .collect();
    }
    let natural: Vec<CentreElement> = families
        .into_iter()
        .filter(|alpha| {
            (0..n).all(|a| {
                (0..n).all(|b| {
                    q.arrows(a, b).all(|f| {
                        let lhs = q
                            .compose(Arrow { src: b, dst: b, elem: alpha.components[b] }, f)
                            .unwrap();
                        let rhs = q
                            .compose(f, Arrow { src: a, dst: a, elem: alpha.components[a] })
                            .unwrap();
                        lhs == rhs
                    })
                })
            })
        })
        .collect();

    let names: Vec<String> = natural.iter().map(|c| c.name(q)).collect();
    let m = natural.len();
    let mut leq = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            leq[i][j] = (0..n)
                .all(|a| q.hom(a, a).leq(natural[i].components[a], natural[j].components[a]));
        }
    }
    let lattice = FiniteSuplattice::from_leq(names, leq).map_err(|e| {
        Error::input(format!("centre is not closed as a lattice: {e}"))
    })?;
    let mut mul = vec![vec![0usize; m]; m];
    for i in 0..m {
        for j in 0..m {
            let composite = CentreElement {
                components: (0..n)
                    .map(|a| {
                        q.compose(
                            Arrow { src: a, dst: a, elem: natural[i].components[a] },
                            Arrow { src: a, dst: a, elem: natural[j].components[a] },
                        )
                        .unwrap()
                        .elem
                    })
                    .collect(),
            };
            mul[i][j] = natural
                .iter()
                .position(|c| *c == composite)
                .ok_or_else(|| Error::input("centre not closed under composition"))?;
        }
    }
    let unit_family = CentreElement { components: (0..n).map(|a| q.id(a).elem).collect() };
    let unit = natural
        .iter()
        .position(|c| *c == unit_family)
        .ok_or_else(|| Error::input("identity family is not natural"))?;
    let quantale = Quantale::new(lattice, mul, unit)?;
    Ok((quantale, natural))
}

/// Search for an isomorphism of quantales: a bijection preserving order,
/// multiplication and unit. Exhaustive over permutations, so only sensible
/// at desk scale.
pub fn quantale_isomorphism(a: &Quantale, b: &Quantale) -> Option<Vec<usize>> {
    let n = a.lattice.len();
    if b.lattice.len() != n {
        return None;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let order_ok = (0..n)
            .all(|i| (0..n).all(|j| a.lattice.leq(i, j) == b.lattice.leq(p[i], p[j])));
        let mul_ok = (0..n).all(|i| (0..n).all(|j| p[a.mul[i][j]] == b.mul[p[i]][p[j]]));
        order_ok && mul_ok && p[a.unit] == b.unit
    })
}

fn permutations(
    perm: &mut Vec<usize>,
    k: usize,
    accept: &mut impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if k == perm.len() {
        return accept(perm).then(|| perm.clone());
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        if let Some(found) = permutations(perm, k + 1, accept) {
            return Some(found);
        }
        perm.swap(k, i);
    }
    None
}
