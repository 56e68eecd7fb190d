//! Canonical small structures used across tests, docs and suites.
//!
//! These are the programmatic counterparts of the JSON fixture files; the
//! workspace tests assert that both routes build equal structures.

use crate::quantaloid::{Quantale, Quantaloid};
use crate::suplattice::FiniteSuplattice;

/// The two-element boolean lattice.
pub fn two() -> FiniteSuplattice {
    FiniteSuplattice::from_covers(
        vec!["bot".into(), "top".into()],
        &[("bot".into(), "top".into())],
    )
    .unwrap()
}

/// The three-element chain `bot < m < top`.
pub fn omega3() -> FiniteSuplattice {
    FiniteSuplattice::from_covers(
        vec!["bot".into(), "m".into(), "top".into()],
        &[("bot".into(), "m".into()), ("m".into(), "top".into())],
    )
    .unwrap()
}

/// The four-element diamond: two incomparable middles.
pub fn diamond() -> FiniteSuplattice {
    FiniteSuplattice::from_covers(
        vec!["bot".into(), "a".into(), "b".into(), "top".into()],
        &[
            ("bot".into(), "a".into()),
            ("bot".into(), "b".into()),
            ("a".into(), "top".into()),
            ("b".into(), "top".into()),
        ],
    )
    .unwrap()
}

fn meet_table(l: &FiniteSuplattice) -> Vec<Vec<usize>> {
    (0..l.len()).map(|g| (0..l.len()).map(|f| l.meet_pair(g, f)).collect()).collect()
}

/// The boolean quantale, suspended at a single object `*`.
pub fn two_susp() -> Quantaloid {
    let l = two();
    let mul = meet_table(&l);
    let top = l.index_of("top").unwrap();
    Quantale::new(l, mul, top).unwrap().suspension("*").unwrap()
}

/// The three-chain locale as a one-object quantaloid under meet.
pub fn omega3_susp() -> Quantaloid {
    let l = omega3();
    let mul = meet_table(&l);
    let top = l.index_of("top").unwrap();
    Quantale::new(l, mul, top).unwrap().suspension("*").unwrap()
}

/// Two objects, every hom the boolean lattice, composition by minimum.
pub fn min2() -> Quantaloid {
    let objects = vec!["p".to_string(), "q".to_string()];
    let homs: Vec<Vec<FiniteSuplattice>> =
        (0..2).map(|_| (0..2).map(|_| two()).collect()).collect();
    let l = two();
    let min = meet_table(&l);
    let comp = vec![vec![vec![min.clone(); 2]; 2]; 2];
    let top = l.index_of("top").unwrap();
    Quantaloid::new(objects, homs, comp, vec![top, top]).unwrap()
}

/// The quantale of join-preserving endomaps of the three-chain, under
/// function composition. Elements are named by their values at `m` and
/// `top`: `mt` is the map sending `m` to `m` and `top` to `top`.
pub fn qnc() -> Quantaloid {
    let base = omega3();
    // all bottom-preserving monotone self-maps, i.e. pairs (f(m), f(top))
    let mut maps: Vec<Vec<usize>> = Vec::new();
    for fm in 0..base.len() {
        for ft in 0..base.len() {
            if base.leq(fm, ft) {
                maps.push(vec![base.bottom(), fm, ft]);
            }
        }
    }
    let letter = |e: usize| base.name(e).chars().next().unwrap();
    let names: Vec<String> =
        maps.iter().map(|f| format!("{}{}", letter(f[1]), letter(f[2]))).collect();
    let n = maps.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = (0..base.len()).all(|x| base.leq(maps[i][x], maps[j][x]));
        }
    }
    let lattice = FiniteSuplattice::from_leq(names, leq).unwrap();
    let mut mul = vec![vec![0usize; n]; n];
    for g in 0..n {
        for f in 0..n {
            let composite: Vec<usize> = (0..base.len()).map(|x| maps[g][maps[f][x]]).collect();
            mul[g][f] = maps.iter().position(|m| *m == composite).unwrap();
        }
    }
    let unit = maps.iter().position(|m| *m == vec![0, 1, 2]).unwrap();
    Quantale::new(lattice, mul, unit).unwrap().suspension("*").unwrap()
}
