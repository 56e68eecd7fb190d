//! The textual document format: one JSON schema carrying every structure
//! the crate works with, by named definitions with cross-references.
//!
//! Lattices list their elements and covering pairs; the full order is the
//! reflexive-transitive closure. Quantaloids come either as explicit
//! tables or as the suspension of a named quantale; missing table entries
//! are an error. Category and distributor matrices are given as sparse
//! (row, col, elem) triples and omitted entries default to bottom, the
//! format's only defaulting rule. Loading resolves references by name,
//! rejecting duplicates, unknown names and cycles; structural validation
//! happens on load, law validation is a separate pass so that broken
//! fixtures can be loaded and reported on.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cauchy::{make_order, QOrder};
use crate::enriched::{Distributor, QCategory, QFunctor};
use crate::error::{Error, Result};
use crate::locale_sheaf::{FiniteLocale, FiniteSheaf, OrderedSheaf};
use crate::modules::QModule;
use crate::quantaloid::{Quantale, Quantaloid};
use crate::report::Report;
use crate::suplattice::FiniteSuplattice;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Document {
    pub definitions: Vec<Definition>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Definition {
    pub name: String,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Body {
    Lattice(LatticeDef),
    Quantale(QuantaleDef),
    Quantaloid(QuantaloidDef),
    Category(CategoryDef),
    Functor(FunctorDef),
    Distributor(DistributorDef),
    Module(ModuleDef),
    Sheaf(SheafDef),
    Order(OrderDef),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LatticeDef {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuantaleDef {
    pub lattice: String,
    /// `mul[g][f]` is the element name of `g . f`.
    pub mul: Vec<Vec<String>>,
    pub unit: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SuspensionForm {
    pub quantale: String,
    pub object: String,
}

/// Either the suspension of a named quantale or fully explicit tables.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuantaloidDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suspension: Option<SuspensionForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    /// `homs[a][b]` names the lattice of arrows `a -> b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub homs: Option<Vec<Vec<String>>>,
    /// `comp[a][b][c][g][f]` is the element name of `g . f`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comp: Option<Vec<Vec<Vec<Vec<Vec<String>>>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ids: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixEntry {
    pub row: String,
    pub col: String,
    pub elem: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CategoryDef {
    pub base: String,
    pub objects: Vec<String>,
    /// Base object names, one per object.
    pub types: Vec<String>,
    /// `hom[row][col]` entries; omitted cells are bottom.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hom: Vec<MatrixEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FunctorDef {
    pub source: String,
    pub target: String,
    /// Target object names, one per source object.
    pub map: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DistributorDef {
    pub source: String,
    pub target: String,
    /// Rows index target objects, columns source objects; omitted cells
    /// are bottom.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elem: Vec<MatrixEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ModuleDef {
    pub base: String,
    /// Lattice names, one per base object.
    pub carriers: Vec<String>,
    /// `act[a][b][f]` lists, for each element of carrier `b` in order,
    /// the name of its image in carrier `a`. Complete tables required.
    pub act: Vec<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SheafDef {
    pub frame: String,
    pub sections: Vec<Vec<String>>,
    /// `restrict[u][v]` lists the restricted section names; filled exactly
    /// when `u <= v`.
    pub restrict: Vec<Vec<Vec<String>>>,
    /// The full order relation per level as (below, above) pairs,
    /// reflexive pairs included.
    pub order: Vec<Vec<(String, String)>>,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct OrderDef {
    /// The original base; the category lives over its completion.
    pub base: String,
    pub category: String,
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Value {
    Lattice(FiniteSuplattice),
    Quantale(Quantale),
    Quantaloid(Arc<Quantaloid>),
    Category(Arc<QCategory>),
    Functor(QFunctor),
    Distributor(Distributor),
    Module(QModule),
    Sheaf(OrderedSheaf),
    Order(QOrder),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Lattice(_) => "lattice",
            Value::Quantale(_) => "quantale",
            Value::Quantaloid(_) => "quantaloid",
            Value::Category(_) => "category",
            Value::Functor(_) => "functor",
            Value::Distributor(_) => "distributor",
            Value::Module(_) => "module",
            Value::Sheaf(_) => "sheaf",
            Value::Order(_) => "order",
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn to_json(doc: &Document) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents always serialize");
    out.push('\n');
    out
}

/// All definitions of a document, loaded, in definition order.
#[derive(Debug)]
pub struct Workspace {
    pub order: Vec<String>,
    values: BTreeMap<String, Value>,
}

impl Workspace {
    pub fn load(doc: &Document) -> Result<Workspace> {
        let mut bodies: BTreeMap<&str, &Body> = BTreeMap::new();
        for def in &doc.definitions {
            if bodies.insert(&def.name, &def.body).is_some() {
                return Err(Error::input(format!("duplicate definition name {:?}", def.name)));
            }
        }
        let mut ws =
            Workspace { order: doc.definitions.iter().map(|d| d.name.clone()).collect(), values: BTreeMap::new() };
        let mut in_progress = Vec::new();
        for def in &doc.definitions {
            ws.resolve(&def.name, &bodies, &mut in_progress)?;
        }
        Ok(ws)
    }

    fn resolve(
        &mut self,
        name: &str,
        bodies: &BTreeMap<&str, &Body>,
        in_progress: &mut Vec<String>,
    ) -> Result<()> {
        if self.values.contains_key(name) {
            return Ok(());
        }
        if in_progress.iter().any(|n| n == name) {
            return Err(Error::input(format!(
                "circular reference through {:?}",
                in_progress.join(" -> ")
            )));
        }
        let Some(body) = bodies.get(name) else {
            return Err(Error::input(format!("reference to unknown definition {name:?}")));
        };
        in_progress.push(name.to_string());
        for dep in references(body) {
            self.resolve(&dep, bodies, in_progress)?;
        }
        in_progress.pop();
        let value = self.build(name, body)?;
        self.values.insert(name.to_string(), value);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.order.iter().map(|n| (n.as_str(), &self.values[n]))
    }

    fn lattice(&self, name: &str) -> Result<&FiniteSuplattice> {
        match self.values.get(name) {
            Some(Value::Lattice(l)) => Ok(l),
            Some(v) => Err(Error::input(format!("{name:?} is a {}, not a lattice", v.kind()))),
            None => Err(Error::input(format!("reference to unknown definition {name:?}"))),
        }
    }

    fn quantale(&self, name: &str) -> Result<&Quantale> {
        match self.values.get(name) {
            Some(Value::Quantale(z)) => Ok(z),
            Some(v) => Err(Error::input(format!("{name:?} is a {}, not a quantale", v.kind()))),
            None => Err(Error::input(format!("reference to unknown definition {name:?}"))),
        }
    }

    fn quantaloid(&self, name: &str) -> Result<&Arc<Quantaloid>> {
        match self.values.get(name) {
            Some(Value::Quantaloid(q)) => Ok(q),
            Some(v) => {
                Err(Error::input(format!("{name:?} is a {}, not a quantaloid", v.kind())))
            }
            None => Err(Error::input(format!("reference to unknown definition {name:?}"))),
        }
    }

    fn category(&self, name: &str) -> Result<&Arc<QCategory>> {
        match self.values.get(name) {
            Some(Value::Category(c)) => Ok(c),
            Some(v) => Err(Error::input(format!("{name:?} is a {}, not a category", v.kind()))),
            None => Err(Error::input(format!("reference to unknown definition {name:?}"))),
        }
    }

    fn build(&self, name: &str, body: &Body) -> Result<Value> {
        match body {
            Body::Lattice(d) => {
                Ok(Value::Lattice(FiniteSuplattice::from_covers(d.elements.clone(), &d.covers)?))
            }
            Body::Quantale(d) => {
                let l = self.lattice(&d.lattice)?.clone();
                let mul = square_table(&l, &l, &l, &d.mul, name)?;
                let unit = element(&l, &d.unit, name)?;
                Ok(Value::Quantale(Quantale::new(l, mul, unit)?))
            }
            Body::Quantaloid(d) => self.build_quantaloid(name, d),
            Body::Category(d) => {
                let base = self.quantaloid(&d.base)?.clone();
                let typ: Vec<usize> = d
                    .types
                    .iter()
                    .map(|t| {
                        base.object_index(t).ok_or_else(|| {
                            Error::input(format!("{name}: unknown base object {t:?}"))
                        })
                    })
                    .collect::<Result<_>>()?;
                if typ.len() != d.objects.len() {
                    return Err(Error::input(format!("{name}: one type per object")));
                }
                let mut hom: Vec<Vec<usize>> = (0..d.objects.len())
                    .map(|y| {
                        (0..d.objects.len())
                            .map(|x| base.hom(typ[x], typ[y]).bottom())
                            .collect()
                    })
                    .collect();
                for entry in &d.hom {
                    let y = index_of_name(&d.objects, &entry.row, name, "object")?;
                    let x = index_of_name(&d.objects, &entry.col, name, "object")?;
                    hom[y][x] = element(base.hom(typ[x], typ[y]), &entry.elem, name)?;
                }
                Ok(Value::Category(Arc::new(QCategory::new(
                    base,
                    d.objects.clone(),
                    typ,
                    hom,
                )?)))
            }
            Body::Functor(d) => {
                let source = self.category(&d.source)?.clone();
                let target = self.category(&d.target)?.clone();
                let map = d
                    .map
                    .iter()
                    .map(|o| {
                        target.object_index(o).ok_or_else(|| {
                            Error::input(format!("{name}: unknown target object {o:?}"))
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(Value::Functor(QFunctor::new(source, target, map)?))
            }
            Body::Distributor(d) => {
                let source = self.category(&d.source)?.clone();
                let target = self.category(&d.target)?.clone();
                let base = source.base.clone();
                let mut elem: Vec<Vec<usize>> = (0..target.object_count())
                    .map(|b| {
                        (0..source.object_count())
                            .map(|a| base.hom(source.typ(a), target.typ(b)).bottom())
                            .collect()
                    })
                    .collect();
                for entry in &d.elem {
                    let b = target.object_index(&entry.row).ok_or_else(|| {
                        Error::input(format!("{name}: unknown target object {:?}", entry.row))
                    })?;
                    let a = source.object_index(&entry.col).ok_or_else(|| {
                        Error::input(format!("{name}: unknown source object {:?}", entry.col))
                    })?;
                    elem[b][a] =
                        element(base.hom(source.typ(a), target.typ(b)), &entry.elem, name)?;
                }
                Ok(Value::Distributor(Distributor::new(source, target, elem)?))
            }
            Body::Module(d) => {
                let base = self.quantaloid(&d.base)?.clone();
                let n = base.object_count();
                if d.carriers.len() != n {
                    return Err(Error::input(format!("{name}: one carrier per base object")));
                }
                let carriers: Vec<FiniteSuplattice> = d
                    .carriers
                    .iter()
                    .map(|c| Ok(self.lattice(c)?.clone()))
                    .collect::<Result<_>>()?;
                if d.act.len() != n || d.act.iter().any(|row| row.len() != n) {
                    return Err(Error::input(format!("{name}: action table shape mismatch")));
                }
                let mut act = Vec::new();
                for a in 0..n {
                    let mut row = Vec::new();
                    for b in 0..n {
                        let tables = &d.act[a][b];
                        if tables.len() != base.hom(a, b).len() {
                            return Err(Error::input(format!(
                                "{name}: one table per arrow {} -> {}",
                                base.object_name(a),
                                base.object_name(b)
                            )));
                        }
                        let mut maps = Vec::new();
                        for table in tables {
                            let map = table
                                .iter()
                                .map(|v| element(&carriers[a], v, name))
                                .collect::<Result<Vec<usize>>>()?;
                            maps.push(crate::suplattice::SupMorphism::new(
                                &carriers[b],
                                &carriers[a],
                                map,
                            )?);
                        }
                        row.push(maps);
                    }
                    act.push(row);
                }
                Ok(Value::Module(QModule::new(base, carriers, act)?))
            }
            Body::Sheaf(d) => {
                let frame = self.lattice(&d.frame)?.clone();
                let locale = FiniteLocale::new(frame)?;
                let k = locale.frame.len();
                if d.restrict.len() != k
                    || d.restrict.iter().any(|r| r.len() != k)
                    || d.order.len() != k
                {
                    return Err(Error::input(format!("{name}: sheaf table shape mismatch")));
                }
                let restrict = (0..k)
                    .map(|u| {
                        (0..k)
                            .map(|v| {
                                d.restrict[u][v]
                                    .iter()
                                    .map(|s| {
                                        index_of_name(&d.sections[u], s, name, "section")
                                    })
                                    .collect::<Result<Vec<usize>>>()
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let sheaf = FiniteSheaf::new(locale, d.sections.clone(), restrict)?;
                let mut leq: Vec<Vec<Vec<bool>>> = (0..k)
                    .map(|v| {
                        vec![vec![false; sheaf.section_count(v)]; sheaf.section_count(v)]
                    })
                    .collect();
                for v in 0..k {
                    for (below, above) in &d.order[v] {
                        let x = index_of_name(&d.sections[v], below, name, "section")?;
                        let y = index_of_name(&d.sections[v], above, name, "section")?;
                        leq[v][x][y] = true;
                    }
                }
                Ok(Value::Sheaf(OrderedSheaf::new(sheaf, leq, d.strict)?))
            }
            Body::Order(d) => {
                let q = self.quantaloid(&d.base)?.clone();
                let cat = self.category(&d.category)?.clone();
                Ok(Value::Order(make_order(q, cat)?))
            }
        }
    }

    fn build_quantaloid(&self, name: &str, d: &QuantaloidDef) -> Result<Value> {
        if let Some(s) = &d.suspension {
            if d.objects.is_some() || d.homs.is_some() || d.comp.is_some() || d.ids.is_some() {
                return Err(Error::Parse(format!(
                    "{name}: a quantaloid is either a suspension or explicit tables, not both"
                )));
            }
            let z = self.quantale(&s.quantale)?;
            return Ok(Value::Quantaloid(Arc::new(z.clone().suspension(&s.object)?)));
        }
        let (Some(objects), Some(homs), Some(comp), Some(ids)) =
            (&d.objects, &d.homs, &d.comp, &d.ids)
        else {
            return Err(Error::Parse(format!(
                "{name}: explicit quantaloids need objects, homs, comp and ids"
            )));
        };
        let n = objects.len();
        if homs.len() != n
            || homs.iter().any(|r| r.len() != n)
            || comp.len() != n
            || ids.len() != n
        {
            return Err(Error::input(format!("{name}: quantaloid table shape mismatch")));
        }
        let lattices: Vec<Vec<FiniteSuplattice>> = homs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|l| Ok(self.lattice(l)?.clone()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut tables = Vec::new();
        for a in 0..n {
            if comp[a].len() != n {
                return Err(Error::input(format!("{name}: quantaloid table shape mismatch")));
            }
            let mut row = Vec::new();
            for b in 0..n {
                if comp[a][b].len() != n {
                    return Err(Error::input(format!(
                        "{name}: quantaloid table shape mismatch"
                    )));
                }
                let mut cell = Vec::new();
                for c in 0..n {
                    cell.push(square_table(
                        &lattices[b][c],
                        &lattices[a][b],
                        &lattices[a][c],
                        &comp[a][b][c],
                        name,
                    )?);
                }
                row.push(cell);
            }
            tables.push(row);
        }
        let ids = (0..n)
            .map(|a| element(&lattices[a][a], &ids[a], name))
            .collect::<Result<_>>()?;
        Ok(Value::Quantaloid(Arc::new(Quantaloid::new(
            objects.clone(),
            lattices,
            tables,
            ids,
        )?)))
    }
}

fn element(l: &FiniteSuplattice, name: &str, context: &str) -> Result<usize> {
    l.index_of(name)
        .ok_or_else(|| Error::input(format!("{context}: unknown element {name:?}")))
}

fn index_of_name(names: &[String], name: &str, context: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::input(format!("{context}: unknown {what} {name:?}")))
}

/// A `rows x cols -> out` table of element names, resolved.
fn square_table(
    rows: &FiniteSuplattice,
    cols: &FiniteSuplattice,
    out: &FiniteSuplattice,
    table: &[Vec<String>],
    context: &str,
) -> Result<Vec<Vec<usize>>> {
    if table.len() != rows.len() || table.iter().any(|r| r.len() != cols.len()) {
        return Err(Error::input(format!(
            "{context}: table must cover every pair of elements"
        )));
    }
    table
        .iter()
        .map(|row| row.iter().map(|v| element(out, v, context)).collect())
        .collect()
}

fn references(body: &Body) -> Vec<String> {
    match body {
        Body::Lattice(_) => vec![],
        Body::Quantale(d) => vec![d.lattice.clone()],
        Body::Quantaloid(d) => {
            let mut out = Vec::new();
            if let Some(s) = &d.suspension {
                out.push(s.quantale.clone());
            }
            if let Some(homs) = &d.homs {
                for row in homs {
                    for l in row {
                        if !out.contains(l) {
                            out.push(l.clone());
                        }
                    }
                }
            }
            out
        }
        Body::Category(d) => vec![d.base.clone()],
        Body::Functor(d) => vec![d.source.clone(), d.target.clone()],
        Body::Distributor(d) => vec![d.source.clone(), d.target.clone()],
        Body::Module(d) => {
            let mut out = vec![d.base.clone()];
            for c in &d.carriers {
                if !out.contains(c) {
                    out.push(c.clone());
                }
            }
            out
        }
        Body::Sheaf(d) => vec![d.frame.clone()],
        Body::Order(d) => vec![d.base.clone(), d.category.clone()],
    }
}

/// Law validation for every definition, in document order. Values whose
/// constructors already validate on load get a single summary line.
pub fn validate_all(ws: &Workspace) -> Vec<(String, Report)> {
    ws.iter()
        .map(|(name, value)| {
            let report = match value {
                Value::Lattice(_) | Value::Quantale(_) | Value::Functor(_) => {
                    loaded_clean(value.kind())
                }
                Value::Quantaloid(q) => q.validate(),
                Value::Category(c) => c.validate(),
                Value::Distributor(d) => d.validate(),
                Value::Module(m) => m.validate(),
                Value::Sheaf(o) => o.validate(),
                Value::Order(_) => loaded_clean("order"),
            };
            (name.to_string(), report)
        })
        .collect()
}

fn loaded_clean(kind: &str) -> Report {
    let mut report = Report::new(kind);
    report.pass("validated on load");
    report
}

fn covers_of(l: &FiniteSuplattice) -> Vec<(String, String)> {
    let n = l.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || !l.leq(x, y) {
                continue;
            }
            let direct = (0..n)
                .all(|z| z == x || z == y || !(l.leq(x, z) && l.leq(z, y)));
            if direct {
                out.push((l.name(x).to_string(), l.name(y).to_string()));
            }
        }
    }
    out
}

pub fn lattice_def(l: &FiniteSuplattice) -> LatticeDef {
    LatticeDef { elements: l.names().to_vec(), covers: covers_of(l) }
}

/// Shared pool for emitted definitions: lattices are deduplicated by
/// structural equality and named `{prefix}.l0`, `{prefix}.l1`, ... in
/// first-use order.
struct Emitter {
    prefix: String,
    lattices: Vec<(FiniteSuplattice, String)>,
    defs: Vec<Definition>,
}

impl Emitter {
    fn new(prefix: &str) -> Self {
        Emitter { prefix: prefix.to_string(), lattices: Vec::new(), defs: Vec::new() }
    }

    fn lattice_ref(&mut self, l: &FiniteSuplattice) -> String {
        if let Some((_, name)) = self.lattices.iter().find(|(k, _)| k == l) {
            return name.clone();
        }
        let name = format!("{}.l{}", self.prefix, self.lattices.len());
        self.defs
            .push(Definition { name: name.clone(), body: Body::Lattice(lattice_def(l)) });
        self.lattices.push((l.clone(), name.clone()));
        name
    }

    fn quantale_def(&mut self, z: &Quantale) -> QuantaleDef {
        let l = &z.lattice;
        QuantaleDef {
            lattice: self.lattice_ref(l),
            mul: z
                .mul
                .iter()
                .map(|row| row.iter().map(|&e| l.name(e).to_string()).collect())
                .collect(),
            unit: l.name(z.unit).to_string(),
        }
    }

    fn quantaloid_def(&mut self, q: &Quantaloid) -> QuantaloidDef {
        let n = q.object_count();
        let homs = (0..n)
            .map(|a| (0..n).map(|b| self.lattice_ref(q.hom(a, b))).collect())
            .collect();
        let comp = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        (0..n)
                            .map(|c| {
                                (0..q.hom(b, c).len())
                                    .map(|g| {
                                        (0..q.hom(a, b).len())
                                            .map(|f| {
                                                let v = q
                                                    .compose(
                                                        crate::quantaloid::Arrow {
                                                            src: b,
                                                            dst: c,
                                                            elem: g,
                                                        },
                                                        crate::quantaloid::Arrow {
                                                            src: a,
                                                            dst: b,
                                                            elem: f,
                                                        },
                                                    )
                                                    .unwrap()
                                                    .elem;
                                                q.hom(a, c).name(v).to_string()
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
        QuantaloidDef {
            suspension: None,
            objects: Some((0..n).map(|a| q.object_name(a).to_string()).collect()),
            homs: Some(homs),
            comp: Some(comp),
            ids: Some(
                (0..n).map(|a| q.hom(a, a).name(q.id(a).elem).to_string()).collect(),
            ),
        }
    }

    fn category_def(&mut self, c: &QCategory, base: String) -> CategoryDef {
        let n = c.object_count();
        let mut hom = Vec::new();
        for y in 0..n {
            for x in 0..n {
                let l = c.base.hom(c.typ(x), c.typ(y));
                let e = c.hom_elem(y, x);
                if e != l.bottom() {
                    hom.push(MatrixEntry {
                        row: c.object_name(y).to_string(),
                        col: c.object_name(x).to_string(),
                        elem: l.name(e).to_string(),
                    });
                }
            }
        }
        CategoryDef {
            base,
            objects: c.objects().to_vec(),
            types: c.types().iter().map(|&t| c.base.object_name(t).to_string()).collect(),
            hom,
        }
    }

    fn module_def(&mut self, m: &QModule, base: String) -> ModuleDef {
        let n = m.base.object_count();
        let carriers: Vec<String> =
            m.carriers.iter().map(|c| self.lattice_ref(c)).collect();
        let act = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        m.act[a][b]
                            .iter()
                            .map(|sm| {
                                sm.map
                                    .iter()
                                    .map(|&v| m.carriers[a].name(v).to_string())
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ModuleDef { base, carriers, act }
    }
}

/// A self-contained document for one value, dependencies included, as the
/// construction commands emit it. Functors, distributors, sheaves and
/// orders are loaded from hand-written fixtures but never emitted.
pub fn document_for(name: &str, value: &Value) -> Result<Document> {
    let mut e = Emitter::new(name);
    let body = match value {
        Value::Lattice(l) => Body::Lattice(lattice_def(l)),
        Value::Quantale(z) => Body::Quantale(e.quantale_def(z)),
        Value::Quantaloid(q) => Body::Quantaloid(e.quantaloid_def(q)),
        Value::Category(c) => {
            let base_name = format!("{name}.base");
            let base_def = e.quantaloid_def(&c.base);
            e.defs.push(Definition {
                name: base_name.clone(),
                body: Body::Quantaloid(base_def),
            });
            Body::Category(e.category_def(c, base_name))
        }
        Value::Module(m) => {
            let base_name = format!("{name}.base");
            let base_def = e.quantaloid_def(&m.base);
            e.defs.push(Definition {
                name: base_name.clone(),
                body: Body::Quantaloid(base_def),
            });
            Body::Module(e.module_def(m, base_name))
        }
        other => {
            return Err(Error::input(format!(
                "a {} has no document emitter",
                other.kind()
            )))
        }
    };
    let mut definitions = e.defs;
    definitions.push(Definition { name: name.to_string(), body });
    Ok(Document { definitions })
}
