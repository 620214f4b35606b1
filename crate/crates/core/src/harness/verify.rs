use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{criterion_norms, VerificationConfig, DISTINCTNESS_RANK};
use crate::criteria::{enumerate_classes, CriterionClass};
use crate::error::Result;
use crate::numerics::{
    random_density, random_density_of_rank, random_separable, trace_norm, DensityMatrix,
};
use crate::perm::Permutation;

fn sample_state<R: Rng + ?Sized>(
    config: &VerificationConfig,
    default_rank: Option<usize>,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let n = config.dim.pow(config.parties as u32);
    match config.state_rank.or(default_rank) {
        Some(k) => random_density_of_rank(config.dim, config.parties, k.min(n), rng),
        None => random_density(config.dim, config.parties, rng),
    }
}

fn classes_for(config: &VerificationConfig) -> Result<Vec<CriterionClass>> {
    config.validate()?;
    enumerate_classes(config.parties)
}

/// A class/sample pair that broke (or came closest to breaking) a check.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Offender {
    pub class_id: usize,
    pub label: String,
    pub roles: String,
    pub sample_seed: u64,
    pub value: f64,
}

impl Offender {
    fn new(class: &CriterionClass, sample_seed: u64, value: f64) -> Self {
        Offender {
            class_id: class.id,
            label: class.label.clone(),
            roles: class.canonical.to_string(),
            sample_seed,
            value,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Rule5Report {
    pub config: VerificationConfig,
    pub classes: usize,
    pub max_deviation: f64,
    pub worst: Option<Offender>,
    pub failures: Vec<Offender>,
    pub passed: bool,
}

/// For every random state and class `σ`, compares `‖Λ_σ(ρ)‖` with the norm
/// of `σ` applied after the global transpose, `‖Λ_σ(ρᵀ)‖`, and with the
/// transpose of the output, `‖Λ_σ(ρ)ᵀ‖`.
pub fn verify_rule5(config: &VerificationConfig) -> Result<Rule5Report> {
    let classes = classes_for(config)?;
    let tau = Permutation::gqt(config.parties)?;
    let perms: Vec<Permutation> = classes.iter().map(CriterionClass::to_permutation).collect();
    let before: Vec<Permutation> = perms
        .iter()
        .map(|sigma| tau.compose(sigma))
        .collect::<Result<_>>()?;
    let after: Vec<Permutation> = perms
        .iter()
        .map(|sigma| sigma.compose(&tau))
        .collect::<Result<_>>()?;
    let mut worst: Option<Offender> = None;
    let mut failures = Vec::new();
    for i in 0..config.samples {
        let seed = config.sample_seed(i);
        let rho = sample_state(config, None, &mut config.sample_rng(i))?;
        let direct = criterion_norms(&rho, &perms)?;
        let twin_before = criterion_norms(&rho, &before)?;
        let twin_after = criterion_norms(&rho, &after)?;
        for (k, class) in classes.iter().enumerate() {
            let dev = (direct[k] - twin_before[k])
                .abs()
                .max((direct[k] - twin_after[k]).abs());
            if worst.as_ref().is_none_or(|w| dev > w.value) {
                worst = Some(Offender::new(class, seed, dev));
            }
            if dev >= config.equality_threshold {
                failures.push(Offender::new(class, seed, dev));
            }
        }
    }
    Ok(Rule5Report {
        config: config.clone(),
        classes: classes.len(),
        max_deviation: worst.as_ref().map_or(0.0, |w| w.value),
        worst,
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleGap {
    pub sample_seed: u64,
    pub min_gap: f64,
    /// Closest pair of classes as (id, label).
    pub closest: Option<((usize, String), (usize, String))>,
    pub distinct: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistinctnessReport {
    pub config: VerificationConfig,
    pub classes: usize,
    pub samples: Vec<SampleGap>,
    pub min_gap: f64,
    /// Samples whose closest pair fell below the threshold. Coincidences on
    /// particular states are possible, so these are warnings.
    pub warnings: usize,
    pub all_distinct: bool,
}

/// On each random state (rank [`DISTINCTNESS_RANK`] by default), checks that all class norms are pairwise separated
/// by more than the distinctness threshold.
pub fn verify_distinctness(config: &VerificationConfig) -> Result<DistinctnessReport> {
    let classes = classes_for(config)?;
    let perms: Vec<Permutation> = classes.iter().map(CriterionClass::to_permutation).collect();
    let mut samples = Vec::with_capacity(config.samples);
    for i in 0..config.samples {
        let rho = sample_state(config, Some(DISTINCTNESS_RANK), &mut config.sample_rng(i))?;
        let norms = criterion_norms(&rho, &perms)?;
        samples.push(closest_pair(
            &classes,
            &norms,
            config.sample_seed(i),
            config.distinctness_threshold,
        ));
    }
    let min_gap = samples
        .iter()
        .map(|s| s.min_gap)
        .fold(f64::INFINITY, f64::min);
    let warnings = samples.iter().filter(|s| !s.distinct).count();
    Ok(DistinctnessReport {
        config: config.clone(),
        classes: classes.len(),
        samples,
        min_gap,
        warnings,
        all_distinct: warnings == 0,
    })
}

fn closest_pair(classes: &[CriterionClass], norms: &[f64], seed: u64, threshold: f64) -> SampleGap {
    let mut order: Vec<usize> = (0..norms.len()).collect();
    order.sort_by(|&a, &b| norms[a].total_cmp(&norms[b]));
    let best = order
        .windows(2)
        .map(|w| (norms[w[1]] - norms[w[0]], w[0], w[1]))
        .min_by(|x, y| x.0.total_cmp(&y.0));
    match best {
        None => SampleGap {
            sample_seed: seed,
            min_gap: f64::INFINITY,
            closest: None,
            distinct: true,
        },
        Some((gap, a, b)) => {
            let (a, b) = (a.min(b), a.max(b));
            SampleGap {
                sample_seed: seed,
                min_gap: gap,
                closest: Some((
                    (classes[a].id, classes[a].label.clone()),
                    (classes[b].id, classes[b].label.clone()),
                )),
                distinct: gap > threshold,
            }
        }
    }
}

/// Uniformly random element of the norm-preserving group: independent
/// shuffles of the odd and the even slots, then a global transpose with
/// probability one half.
pub fn random_norm_preserving<R: Rng + ?Sized>(parties: usize, rng: &mut R) -> Result<Permutation> {
    let mut odd: Vec<usize> = (0..parties).map(|k| 2 * k).collect();
    let mut even: Vec<usize> = (0..parties).map(|k| 2 * k + 1).collect();
    odd.shuffle(rng);
    even.shuffle(rng);
    let mut map = vec![0; 2 * parties];
    for k in 0..parties {
        map[2 * k] = odd[k];
        map[2 * k + 1] = even[k];
    }
    let nu = Permutation::from_zero_based(map);
    if rng.random_bool(0.5) {
        nu.compose(&Permutation::gqt(parties)?)
    } else {
        Ok(nu)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NormPreservingReport {
    pub config: VerificationConfig,
    pub max_deviation: f64,
    pub worst_permutation: Option<Permutation>,
    pub passed: bool,
}

/// `‖Λ_ν(ρ)‖ = 1` for a random `ν ∈ T` on each random state.
pub fn verify_norm_preserving(config: &VerificationConfig) -> Result<NormPreservingReport> {
    config.validate()?;
    let mut max_deviation: f64 = 0.0;
    let mut worst_permutation = None;
    for i in 0..config.samples {
        let mut rng = config.sample_rng(i);
        let nu = random_norm_preserving(config.parties, &mut rng)?;
        let rho = sample_state(config, None, &mut rng)?;
        let dev = (trace_norm(&rho.apply(&nu)?)? - 1.0).abs();
        if dev > max_deviation || worst_permutation.is_none() {
            max_deviation = max_deviation.max(dev);
            worst_permutation = Some(nu);
        }
    }
    Ok(NormPreservingReport {
        config: config.clone(),
        max_deviation,
        worst_permutation,
        passed: max_deviation < config.tolerance,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SoundnessReport {
    pub config: VerificationConfig,
    pub classes: usize,
    pub max_norm: f64,
    pub violations: Vec<Offender>,
    pub passed: bool,
}

/// No class may exceed `1 + tolerance` on random separable states. Each
/// sample mixes between 1 and `d^r` random product terms.
pub fn verify_soundness(config: &VerificationConfig) -> Result<SoundnessReport> {
    let classes = classes_for(config)?;
    let perms: Vec<Permutation> = classes.iter().map(CriterionClass::to_permutation).collect();
    let n = config.dim.pow(config.parties as u32);
    let mut max_norm = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    for i in 0..config.samples {
        let mut rng = config.sample_rng(i);
        let terms = rng.random_range(1..=n);
        let rho = random_separable(config.dim, config.parties, terms, &mut rng)?;
        for (class, norm) in classes.iter().zip(criterion_norms(&rho, &perms)?) {
            max_norm = max_norm.max(norm);
            if norm > 1.0 + config.tolerance {
                violations.push(Offender::new(class, config.sample_seed(i), norm));
            }
        }
    }
    Ok(SoundnessReport {
        config: config.clone(),
        classes: classes.len(),
        max_norm,
        passed: violations.is_empty(),
        violations,
    })
}
