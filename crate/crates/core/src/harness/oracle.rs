//! Brute-force oracles over the full symmetric group `S_2r`.
//!
//! These deliberately avoid the closed-form machinery used elsewhere: the
//! norm-preserving group is generated by breadth-first closure of its
//! generators, and dependence classes are built as explicit orbits.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest party count the `(2r)!` enumeration accepts.
pub const ORACLE_MAX_PARTIES: usize = 4;

/// Every permutation of `2r` slots in lexicographic order of the word.
pub fn all_permutations(parties: usize) -> Vec<Permutation> {
    let n = 2 * parties;
    let mut word: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_zero_based(word.clone()));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| word[i - 1] < word[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| word[j] > word[i - 1])
            .expect("pivot exists");
        word.swap(i - 1, j);
        word[i..].reverse();
    }
}

/// Generators `(2k,2l)`, `(2k-1,2l-1)` for `k < l`, and the global transpose.
pub fn norm_preserving_generators(parties: usize) -> Result<Vec<Permutation>> {
    let mut gens = vec![Permutation::gqt(parties)?];
    for k in 1..=parties {
        for l in k + 1..=parties {
            gens.push(Permutation::from_transpositions(
                &[(2 * k, 2 * l)],
                parties,
            )?);
            gens.push(Permutation::from_transpositions(
                &[(2 * k - 1, 2 * l - 1)],
                parties,
            )?);
        }
    }
    Ok(gens)
}

/// The group generated by [`norm_preserving_generators`], by breadth-first
/// closure.
pub fn norm_preserving_closure(parties: usize) -> Result<Vec<Permutation>> {
    let gens = norm_preserving_generators(parties)?;
    let start = Permutation::identity(parties)?;
    let mut seen: HashSet<Permutation> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(g) = queue.pop_front() {
        for s in &gens {
            let next = g.compose(s)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut group: Vec<Permutation> = seen.into_iter().collect();
    group.sort();
    Ok(group)
}

/// One dependence class of `S_2r`.
#[derive(Debug, Clone)]
pub struct OracleClass {
    /// Lexicographically smallest member.
    pub minimum: Permutation,
    pub size: usize,
}

/// Partition of `S_2r` into classes `{ν∘σ, ν∘σ∘τ : ν ∈ T}`.
pub fn oracle_classes(parties: usize) -> Result<Vec<OracleClass>> {
    if parties == 0 || parties > ORACLE_MAX_PARTIES {
        return Err(Error::invalid(format!(
            "brute force over (2r)! permutations is limited to 1 <= r <= {ORACLE_MAX_PARTIES} (got r = {parties})"
        )));
    }
    let group = norm_preserving_closure(parties)?;
    let tau = Permutation::gqt(parties)?;
    let mut class_of: HashMap<Permutation, usize> = HashMap::new();
    let mut classes = Vec::new();
    for sigma in all_permutations(parties) {
        if class_of.contains_key(&sigma) {
            continue;
        }
        let id = classes.len();
        // σ then ν, and τ then σ then ν
        let twin = tau.compose(&sigma)?;
        let mut members = HashSet::new();
        for nu in &group {
            members.insert(sigma.compose(nu)?);
            members.insert(twin.compose(nu)?);
        }
        let minimum = members.iter().min().expect("class is nonempty").clone();
        let size = members.len();
        for m in members {
            class_of.insert(m, id);
        }
        classes.push(OracleClass { minimum, size });
    }
    Ok(classes)
}

pub fn brute_force_class_count(parties: usize) -> Result<usize> {
    Ok(oracle_classes(parties)?.len())
}
