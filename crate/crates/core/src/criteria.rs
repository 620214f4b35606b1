//! Independent permutation criteria as per-subsystem role assignments.
//!
//! Every criterion class has a representative built from disjoint arrows
//! (reshuffles), loops (partial transposes) and free subsystems. A class is
//! stored as the role of each subsystem; which head is paired with which tail
//! does not change the class. Two assignments denote the same class when they
//! are related by reversing all arrows, exchanging loops with free
//! subsystems, or both.

use std::borrow::Cow;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{dependent, Permutation};

/// Largest party count accepted by [`enumerate_classes`].
pub const DEFAULT_MAX_PARTIES: usize = 8;

/// Role of one subsystem. The declaration order is the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Free,
    Loop,
    Head,
    Tail,
}

impl Role {
    pub fn symbol(self) -> char {
        match self {
            Role::Free => 'F',
            Role::Loop => 'L',
            Role::Head => 'H',
            Role::Tail => 'T',
        }
    }

    pub fn from_symbol(c: char) -> Option<Role> {
        match c {
            'F' => Some(Role::Free),
            'L' => Some(Role::Loop),
            'H' => Some(Role::Head),
            'T' => Some(Role::Tail),
            _ => None,
        }
    }

    fn swap_head_tail(self) -> Role {
        match self {
            Role::Head => Role::Tail,
            Role::Tail => Role::Head,
            other => other,
        }
    }

    fn swap_loop_free(self) -> Role {
        match self {
            Role::Loop => Role::Free,
            Role::Free => Role::Loop,
            other => other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoleAssignment {
    roles: Vec<Role>,
}

/// One arrow of a configuration, 1-based subsystem indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub head: usize,
    pub tail: usize,
}

impl Arrow {
    /// Arrows pointing to a lower-numbered subsystem are the primed reshuffle.
    pub fn is_primed(&self) -> bool {
        self.head > self.tail
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.is_primed() { "R'" } else { "R" };
        write!(f, "{name}({}->{})", self.head, self.tail)
    }
}

impl RoleAssignment {
    pub fn new(roles: Vec<Role>) -> Result<Self> {
        if roles.is_empty() {
            return Err(Error::invalid("a role assignment needs at least one party"));
        }
        let heads = roles.iter().filter(|&&r| r == Role::Head).count();
        let tails = roles.iter().filter(|&&r| r == Role::Tail).count();
        if heads != tails {
            return Err(Error::invalid(format!(
                "{heads} heads but {tails} tails; every arrow needs one of each"
            )));
        }
        Ok(RoleAssignment { roles })
    }

    /// Parses a string such as `"FLHT"`.
    pub fn parse(s: &str) -> Result<Self> {
        let roles = s
            .chars()
            .map(|c| {
                Role::from_symbol(c)
                    .ok_or_else(|| Error::invalid(format!("unknown role symbol {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(roles)
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn parties(&self) -> usize {
        self.roles.len()
    }

    pub fn count(&self, role: Role) -> usize {
        self.roles.iter().filter(|&&r| r == role).count()
    }

    /// Arrows formed by pairing the i-th smallest head with the i-th
    /// smallest tail.
    pub fn arrows(&self) -> Vec<Arrow> {
        let positions = |want: Role| {
            self.roles
                .iter()
                .enumerate()
                .filter(move |(_, &r)| r == want)
                .map(|(i, _)| i + 1)
        };
        positions(Role::Head)
            .zip(positions(Role::Tail))
            .map(|(head, tail)| Arrow { head, tail })
            .collect()
    }

    /// Product of `(2k, 2l-1)` for every arrow `k → l` and `(2m-1, 2m)` for
    /// every loop `m`.
    pub fn to_permutation(&self) -> Permutation {
        let mut pairs: Vec<(usize, usize)> = self
            .arrows()
            .into_iter()
            .map(|a| (2 * a.head, 2 * a.tail - 1))
            .collect();
        pairs.extend(
            self.roles
                .iter()
                .enumerate()
                .filter(|(_, &r)| r == Role::Loop)
                .map(|(i, _)| (2 * i + 1, 2 * i + 2)),
        );
        Permutation::from_transpositions(&pairs, self.parties())
            .expect("arrow and loop supports are disjoint")
    }

    fn map(&self, f: impl Fn(Role) -> Role) -> RoleAssignment {
        RoleAssignment {
            roles: self.roles.iter().map(|&r| f(r)).collect(),
        }
    }

    /// The four images under {id, reverse arrows, exchange loops/frees, both}.
    pub fn orbit(&self) -> [RoleAssignment; 4] {
        let ht = self.map(Role::swap_head_tail);
        let lf = self.map(Role::swap_loop_free);
        let both = ht.map(Role::swap_loop_free);
        [self.clone(), ht, lf, both]
    }

    /// Same assignment with subsystems relabeled: position `k` of the result
    /// carries the role of subsystem `order[k]` (1-based).
    pub fn relabel(&self, order: &[usize]) -> Result<RoleAssignment> {
        check_party_order(order, self.parties())?;
        Ok(RoleAssignment {
            roles: order.iter().map(|&k| self.roles[k - 1]).collect(),
        })
    }
}

impl fmt::Display for RoleAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.roles {
            write!(f, "{}", r.symbol())?;
        }
        Ok(())
    }
}

pub(crate) fn check_party_order(order: &[usize], parties: usize) -> Result<()> {
    if order.len() != parties {
        return Err(Error::invalid(format!(
            "party order has {} entries for {parties} parties",
            order.len()
        )));
    }
    let mut seen = vec![false; parties];
    for &k in order {
        if k == 0 || k > parties || std::mem::replace(&mut seen[k - 1], true) {
            return Err(Error::invalid(format!(
                "party order {order:?} is not a bijection of 1..={parties}"
            )));
        }
    }
    Ok(())
}

/// One independent criterion: the canonical (lexicographically smallest)
/// member of a role-assignment orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionClass {
    pub id: usize,
    pub canonical: RoleAssignment,
    pub label: String,
}

impl CriterionClass {
    pub fn parties(&self) -> usize {
        self.canonical.parties()
    }

    pub fn to_permutation(&self) -> Permutation {
        self.canonical.to_permutation()
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        display_member(&self.canonical).arrows()
    }

    pub fn is_identity(&self) -> bool {
        self.canonical.roles.iter().all(|&r| r == Role::Free)
    }
}

impl Serialize for CriterionClass {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            roles: String,
            label: &'a str,
            permutation: Permutation,
        }
        Wire {
            roles: self.canonical.to_string(),
            label: &self.label,
            permutation: self.to_permutation(),
        }
        .serialize(serializer)
    }
}

/// Wire form read back from JSON; the class id is assigned by enumeration.
#[derive(Debug, Clone, Deserialize)]
pub struct ClassRecord {
    pub roles: String,
    pub label: String,
    pub permutation: Vec<usize>,
}

fn canonical_form(a: &RoleAssignment) -> RoleAssignment {
    a.orbit().into_iter().min().expect("orbit is nonempty")
}

/// Orbit member used for display: fewest loops, then lexicographically
/// smallest. Loop-heavy canonical forms such as `FLLL` read as one loop.
fn display_member(a: &RoleAssignment) -> RoleAssignment {
    a.orbit()
        .into_iter()
        .min_by(|x, y| {
            x.count(Role::Loop)
                .cmp(&y.count(Role::Loop))
                .then_with(|| x.cmp(y))
        })
        .expect("orbit is nonempty")
}

/// Display label in the style `identity`, `QT`, `2QT`, `R`, `R+QT`, `2R`,
/// `R+R'`.
pub fn label_for(a: &RoleAssignment) -> String {
    let member = display_member(a);
    let arrows = member.arrows();
    let primed = arrows.iter().filter(|a| a.is_primed()).count();
    let plain = arrows.len() - primed;
    let loops = member.count(Role::Loop);
    let term = |n: usize, name: &str| match n {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{n}{name}")),
    };
    let parts: Vec<String> = [term(plain, "R"), term(primed, "R'"), term(loops, "QT")]
        .into_iter()
        .flatten()
        .collect();
    if parts.is_empty() {
        "identity".to_string()
    } else {
        parts.join("+")
    }
}

pub fn label_class(c: &CriterionClass) -> String {
    label_for(&c.canonical)
}

/// Canonical representative of `a`'s class. The returned id is the class's
/// position in [`enumerate_classes`] order.
pub fn canonicalize(a: &RoleAssignment) -> Result<CriterionClass> {
    // RoleAssignment::new already enforces head/tail balance; re-check for
    // values assembled elsewhere in the crate.
    if a.count(Role::Head) != a.count(Role::Tail) {
        return Err(Error::invalid("head/tail count mismatch"));
    }
    let canonical = canonical_form(a);
    let id = canonical_keys(a.parties())
        .binary_search(&canonical)
        .map_err(|_| Error::Internal(format!("{canonical} missing from enumeration")))?;
    let label = label_for(&canonical);
    Ok(CriterionClass {
        id,
        canonical,
        label,
    })
}

/// All role assignments on `parties` subsystems with equal head and tail
/// counts, in lexicographic order.
pub fn balanced_assignments(parties: usize) -> Vec<RoleAssignment> {
    const ROLES: [Role; 4] = [Role::Free, Role::Loop, Role::Head, Role::Tail];
    let total = 4usize.pow(parties as u32);
    (0..total)
        .filter_map(|code| {
            let mut c = code;
            let mut roles = vec![Role::Free; parties];
            for slot in roles.iter_mut().rev() {
                *slot = ROLES[c % 4];
                c /= 4;
            }
            RoleAssignment::new(roles).ok()
        })
        .collect()
}

fn compute_canonical_keys(parties: usize) -> Vec<RoleAssignment> {
    let set: BTreeSet<RoleAssignment> = balanced_assignments(parties)
        .iter()
        .map(canonical_form)
        .collect();
    set.into_iter().collect()
}

fn canonical_keys(parties: usize) -> Cow<'static, [RoleAssignment]> {
    static CACHE: [OnceLock<Vec<RoleAssignment>>; DEFAULT_MAX_PARTIES + 1] =
        [const { OnceLock::new() }; DEFAULT_MAX_PARTIES + 1];
    match CACHE.get(parties) {
        Some(cell) => Cow::Borrowed(cell.get_or_init(|| compute_canonical_keys(parties))),
        None => Cow::Owned(compute_canonical_keys(parties)),
    }
}

pub fn enumerate_classes(parties: usize) -> Result<Vec<CriterionClass>> {
    enumerate_classes_up_to(parties, DEFAULT_MAX_PARTIES)
}

/// Every class exactly once, in lexicographic order of the canonical form.
pub fn enumerate_classes_up_to(parties: usize, max_parties: usize) -> Result<Vec<CriterionClass>> {
    if parties == 0 || parties > max_parties {
        return Err(Error::invalid(format!(
            "party count {parties} outside 1..={max_parties}"
        )));
    }
    Ok(canonical_keys(parties)
        .iter()
        .enumerate()
        .map(|(id, canonical)| CriterionClass {
            id,
            label: label_for(canonical),
            canonical: canonical.clone(),
        })
        .collect())
}

fn binomial(n: u64, k: u64) -> Result<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc
            .checked_mul(u128::from(n - i))
            .ok_or(Error::Overflow("binomial coefficient"))?
            / u128::from(i + 1);
    }
    Ok(acc)
}

/// `(C(2r, r) + 2^r + C(r, r/2)·even(r)) / 4`, in exact integer arithmetic.
pub fn count_classes(parties: usize) -> Result<u128> {
    if parties == 0 {
        return Err(Error::invalid("party count must be at least 1"));
    }
    let r = parties as u64;
    let central = binomial(2 * r, r)?;
    let power = 1u128
        .checked_shl(parties as u32)
        .filter(|_| parties < 128)
        .ok_or(Error::Overflow("2^r"))?;
    let even_term = if r.is_multiple_of(2) {
        binomial(r, r / 2)?
    } else {
        0
    };
    let sum = central
        .checked_add(power)
        .and_then(|s| s.checked_add(even_term))
        .ok_or(Error::Overflow("orbit count"))?;
    if sum % 4 != 0 {
        return Err(Error::Internal(format!(
            "orbit count numerator {sum} is not divisible by 4"
        )));
    }
    Ok(sum / 4)
}

/// The class among `classes` that `sigma` is dependent on.
pub fn class_of<'a>(
    sigma: &Permutation,
    classes: &'a [CriterionClass],
) -> Result<&'a CriterionClass> {
    let mut found = None;
    for c in classes {
        if c.parties() != sigma.parties() {
            return Err(Error::invalid(
                "class list and permutation differ in party count",
            ));
        }
        if dependent(sigma, &c.to_permutation())? {
            if let Some(prev) = found.replace(c) {
                return Err(Error::Internal(format!(
                    "{sigma} matches both {} and {}",
                    prev.canonical, c.canonical
                )));
            }
        }
    }
    found.ok_or_else(|| Error::Internal(format!("{sigma} matches no criterion class")))
}
