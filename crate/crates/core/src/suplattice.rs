//! Finite complete lattices ("suplattices") and join-preserving maps.
//!
//! A finite poset is a complete lattice exactly when it has a bottom element
//! and binary joins, so validation checks those and arbitrary joins follow.
//! Elements are kept as dense indices; names are only for interchange and
//! witnesses.

use crate::error::{Error, Result};

/// A finite complete lattice given by its full order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSuplattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    bottom: usize,
    join_table: Vec<Vec<usize>>,
}

impl FiniteSuplattice {
    /// Build from a full order matrix. Validates that `leq` is a partial
    /// order with a bottom element and all binary joins.
    pub fn from_leq(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::input("a suplattice needs at least a bottom element"));
        }
        {
            let mut seen = std::collections::BTreeSet::new();
            for name in &names {
                if !seen.insert(name) {
                    return Err(Error::input(format!("duplicate element name {name:?}")));
                }
            }
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::input("order matrix shape does not match element count"));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::input(format!("order not reflexive at {:?}", names[i])));
            }
            for j in 0..n {
                if leq[i][j] && leq[j][i] && i != j {
                    return Err(Error::input(format!(
                        "order not antisymmetric: {:?} and {:?}",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::input(format!(
                            "order not transitive: {:?} <= {:?} <= {:?}",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| leq[b][x]))
            .ok_or_else(|| Error::input("no bottom element"))?;
        let mut join_table = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                join_table[i][j] = scan_join(&leq, &[i, j]).ok_or_else(|| {
                    Error::input(format!(
                        "no least upper bound for {:?} and {:?}",
                        names[i], names[j]
                    ))
                })?;
            }
        }
        Ok(FiniteSuplattice { names, leq, bottom, join_table })
    }

    /// Build from covering pairs; the reflexive-transitive closure is
    /// computed before validation.
    pub fn from_covers(names: Vec<String>, covers: &[(String, String)]) -> Result<Self> {
        let n = names.len();
        let index = |s: &String| {
            names
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::input(format!("unknown element {s:?} in covering pair")))
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (lo, hi) in covers {
            leq[index(lo)?][index(hi)?] = true;
        }
        // Floyd-Warshall style closure.
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Self::from_leq(names, leq)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one element
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.join(0..self.len())
    }

    pub fn join_pair(&self, i: usize, j: usize) -> usize {
        self.join_table[i][j]
    }

    /// Least upper bound of any family, the empty one included.
    pub fn join(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.bottom, |acc, x| self.join_table[acc][x])
    }

    /// Greatest lower bound, computed as the join of all lower bounds.
    pub fn meet(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        let elems: Vec<usize> = elems.into_iter().collect();
        let lower: Vec<usize> =
            (0..self.len()).filter(|&x| elems.iter().all(|&e| self.leq[x][e])).collect();
        self.join(lower)
    }

    pub fn meet_pair(&self, i: usize, j: usize) -> usize {
        self.meet([i, j])
    }

    /// The sublattice on `members`, which must be closed under the joins of
    /// the ambient lattice (bottom included). Join and order agree with the
    /// ambient ones, so the result embeds back by `members`.
    pub fn sublattice(&self, members: &[usize]) -> Result<FiniteSuplattice> {
        for (k, &m) in members.iter().enumerate() {
            if m >= self.len() {
                return Err(Error::input("sublattice member out of range"));
            }
            for &m2 in &members[..k] {
                if m2 == m {
                    return Err(Error::input("duplicate sublattice member"));
                }
            }
        }
        for &a in members {
            for &b in members {
                let j = self.join_pair(a, b);
                if !members.contains(&j) {
                    return Err(Error::input(format!(
                        "subset not closed under joins: {} v {} = {}",
                        self.name(a),
                        self.name(b),
                        self.name(j)
                    )));
                }
            }
        }
        let bot: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&x| members.iter().all(|&y| self.leq(x, y)))
            .collect();
        if bot.is_empty() {
            return Err(Error::input("subset has no least element"));
        }
        let names = members.iter().map(|&m| self.names[m].clone()).collect();
        let leq = members
            .iter()
            .map(|&a| members.iter().map(|&b| self.leq(a, b)).collect())
            .collect();
        FiniteSuplattice::from_leq(names, leq)
    }
}

fn scan_join(leq: &[Vec<bool>], elems: &[usize]) -> Option<usize> {
    let n = leq.len();
    let uppers: Vec<usize> =
        (0..n).filter(|&u| elems.iter().all(|&e| leq[e][u])).collect();
    uppers.iter().copied().find(|&u| uppers.iter().all(|&v| leq[u][v]))
}

/// A map between suplattices, given on elements. Whether it actually
/// preserves joins is a property ([`is_supmorphism`]), not an invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupMorphism {
    pub map: Vec<usize>,
}

impl SupMorphism {
    pub fn new(source: &FiniteSuplattice, target: &FiniteSuplattice, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::mismatch("map length does not match source lattice"));
        }
        if map.iter().any(|&y| y >= target.len()) {
            return Err(Error::mismatch("map image out of range for target lattice"));
        }
        Ok(SupMorphism { map })
    }

    pub fn identity(l: &FiniteSuplattice) -> Self {
        SupMorphism { map: (0..l.len()).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &SupMorphism) -> SupMorphism {
        SupMorphism { map: first.map.iter().map(|&x| self.map[x]).collect() }
    }
}

/// Every join-preserving map between two lattices, by exhaustive scan.
pub fn all_supmorphisms(
    source: &FiniteSuplattice,
    target: &FiniteSuplattice,
) -> Vec<SupMorphism> {
    let mut out = Vec::new();
    let mut map = vec![0usize; source.len()];
    loop {
        let cand = SupMorphism { map: map.clone() };
        if is_supmorphism(source, target, &cand).is_ok() {
            out.push(cand);
        }
        let mut i = 0;
        loop {
            if i == source.len() {
                return out;
            }
            map[i] += 1;
            if map[i] < target.len() {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

/// Check preservation of all joins. Preserving the empty join and all binary
/// joins is equivalent to preserving arbitrary ones in a finite lattice, so
/// the scan is over pairs; the witness is the violating subset.
pub fn is_supmorphism(
    source: &FiniteSuplattice,
    target: &FiniteSuplattice,
    f: &SupMorphism,
) -> std::result::Result<(), Vec<usize>> {
    if f.apply(source.bottom()) != target.bottom() {
        return Err(vec![]);
    }
    for i in 0..source.len() {
        for j in 0..source.len() {
            let lhs = f.apply(source.join_pair(i, j));
            let rhs = target.join_pair(f.apply(i), f.apply(j));
            if lhs != rhs {
                return Err(vec![i, j]);
            }
        }
    }
    Ok(())
}
