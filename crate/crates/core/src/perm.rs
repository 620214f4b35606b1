//! Permutations of the `2r` index slots of an `r`-party operator.
//!
//! Slot `2k-1` carries the row (ket) index of party `k` and slot `2k` its
//! column (bra) index. All public indices are 1-based; a permutation is
//! written in one-line word notation `[σ(1) σ(2) … σ(2r)]`.
//!
//! Composition follows the map it induces: `sigma.compose(&mu)` is the
//! permutation whose criterion map equals "apply `sigma`'s map, then `mu`'s",
//! i.e. `(sigma.compose(&mu))(k) = mu(sigma(k))`.

use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images; slot k maps to map[k]
    map: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its 1-based one-line word.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        if images.is_empty() || !images.len().is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "a permutation of index slots needs an even, nonzero length (got {})",
                images.len()
            )));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        let mut map = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::invalid(format!("image {img} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::invalid(format!("image {img} appears twice")));
            }
            map.push(img - 1);
        }
        Ok(Permutation { map })
    }

    pub(crate) fn from_zero_based(map: Vec<usize>) -> Self {
        debug_assert!(map.len().is_multiple_of(2));
        Permutation { map }
    }

    pub fn identity(parties: usize) -> Result<Self> {
        check_parties(parties)?;
        Ok(Permutation {
            map: (0..2 * parties).collect(),
        })
    }

    /// The global transpose `τ = (1,2)(3,4)⋯(2r-1,2r)`.
    pub fn gqt(parties: usize) -> Result<Self> {
        check_parties(parties)?;
        Ok(Permutation {
            map: (0..2 * parties).map(|k| k ^ 1).collect(),
        })
    }

    /// Product of disjoint transpositions, given as 1-based slot pairs.
    pub fn from_transpositions(pairs: &[(usize, usize)], parties: usize) -> Result<Self> {
        let mut perm = Self::identity(parties)?;
        let n = 2 * parties;
        let mut used = vec![false; n];
        for &(a, b) in pairs {
            for s in [a, b] {
                if s == 0 || s > n {
                    return Err(Error::invalid(format!("slot {s} outside 1..={n}")));
                }
            }
            if a == b {
                return Err(Error::invalid(format!(
                    "degenerate transposition ({a},{b})"
                )));
            }
            for s in [a, b] {
                if std::mem::replace(&mut used[s - 1], true) {
                    return Err(Error::invalid(format!(
                        "transpositions overlap at slot {s}"
                    )));
                }
            }
            perm.map.swap(a - 1, b - 1);
        }
        Ok(perm)
    }

    pub fn parties(&self) -> usize {
        self.map.len() / 2
    }

    /// Number of slots, `2r`.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Image of the 1-based slot `k`.
    pub fn image(&self, k: usize) -> usize {
        self.map[k - 1] + 1
    }

    /// 1-based one-line word.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// `k ↦ mu(self(k))`: the criterion map of the result applies `self` first.
    pub fn compose(&self, mu: &Permutation) -> Result<Permutation> {
        self.check_same_parties(mu)?;
        Ok(Permutation {
            map: self.map.iter().map(|&v| mu.map[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (k, &v) in self.map.iter().enumerate() {
            inv[v] = k;
        }
        Permutation { map: inv }
    }

    /// Disjoint cycles in 1-based notation, fixed points omitted. Each cycle
    /// starts at its smallest element; cycles are ordered by that element.
    pub fn to_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut cycles = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k + 1);
                k = self.map[k];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Human-readable cycle notation, e.g. `(2,3)` or `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.to_cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    }

    /// Membership in the norm-preserving group generated by same-parity slot
    /// swaps and the global transpose: every slot keeps its parity, or every
    /// slot flips it.
    pub fn is_norm_preserving(&self) -> bool {
        let flips = |k: usize| (k ^ self.map[k]) & 1;
        let first = flips(0);
        (1..self.map.len()).all(|k| flips(k) == first)
    }

    fn check_same_parties(&self, other: &Permutation) -> Result<()> {
        if self.map.len() != other.map.len() {
            return Err(Error::invalid(format!(
                "permutations act on different party counts ({} vs {})",
                self.parties(),
                other.parties()
            )));
        }
        Ok(())
    }
}

fn check_parties(parties: usize) -> Result<()> {
    if parties == 0 {
        return Err(Error::invalid("party count must be at least 1"));
    }
    Ok(())
}

/// Whether the criteria of `sigma` and `mu` give equal trace norms on every
/// quantum state by the group-theoretic rules: `mu` is reachable from `sigma`
/// by a norm-preserving post-map, possibly after a global transpose of the
/// input (`Λ_mu = Λ_ν ∘ Λ_sigma` or `Λ_mu = Λ_ν ∘ Λ_sigma ∘ Λ_τ`, ν ∈ T).
pub fn dependent(sigma: &Permutation, mu: &Permutation) -> Result<bool> {
    sigma.check_same_parties(mu)?;
    let sigma_inv = sigma.inverse();
    // Λ_mu = Λ_ν ∘ Λ_sigma  ⇔  ν = sigma⁻¹ then mu
    if sigma_inv.compose(mu)?.is_norm_preserving() {
        return Ok(true);
    }
    // Λ_mu = Λ_ν ∘ Λ_sigma ∘ Λ_τ  ⇔  ν = sigma⁻¹ then τ then mu
    let tau = Permutation::gqt(sigma.parties())?;
    Ok(sigma_inv.compose(&tau)?.compose(mu)?.is_norm_preserving())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(&images).map_err(de::Error::custom)
    }
}
