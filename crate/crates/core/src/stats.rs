//! Spearman rank correlation with a two-sided p-value.

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

/// Largest sample size for which the p-value comes from the exact
/// permutation distribution.
pub const EXACT_P_LIMIT: usize = 8;

/// Values keyed by item identifiers.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedList {
    items: Vec<(String, f64)>,
}

impl RankedList {
    pub fn new<S: Into<String>>(items: impl IntoIterator<Item = (S, f64)>) -> Self {
        RankedList {
            items: items.into_iter().map(|(id, v)| (id.into(), v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(String, f64)] {
        &self.items
    }

    pub fn value(&self, id: &str) -> Option<f64> {
        self.items.iter().find(|(k, _)| k == id).map(|(_, v)| *v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spearman {
    pub rho: f64,
    pub p: f64,
}

/// 1-based ranks with ties sharing the average of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

/// Spearman's rho between two lists over the same identifiers. The
/// p-value is exact (all `n!` re-pairings of the ranks) for
/// `n ≤ EXACT_P_LIMIT` and uses the Student-t approximation otherwise.
pub fn spearman(a: &RankedList, b: &RankedList) -> Result<Spearman> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!(
            "lists have different sizes ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 3 {
        return Err(Error::invalid("spearman needs at least 3 items"));
    }
    let mut ids: Vec<&str> = a.items.iter().map(|(k, _)| k.as_str()).collect();
    ids.sort_unstable();
    if ids.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("duplicate identifier"));
    }
    let mut ya = Vec::with_capacity(a.len());
    let mut yb = Vec::with_capacity(a.len());
    for (id, v) in &a.items {
        let w = b
            .value(id)
            .ok_or_else(|| Error::invalid(format!("identifier {id:?} missing from second list")))?;
        ya.push(*v);
        yb.push(w);
    }
    let ra = average_ranks(&ya);
    let rb = average_ranks(&yb);
    let rho = pearson(&ra, &rb);
    let n = ra.len();
    let p = if n <= EXACT_P_LIMIT {
        exact_p(&ra, &rb, rho)
    } else {
        t_approx_p(rho, n)
    };
    Ok(Spearman { rho, p })
}

/// Fraction of all pairings of `rb` against `ra` whose |rho| reaches the
/// observed one.
fn exact_p(ra: &[f64], rb: &[f64], observed: f64) -> f64 {
    let n = rb.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut shuffled = vec![0.0; n];
    let (mut hits, mut total) = (0u64, 0u64);
    let threshold = observed.abs() - 1e-12;
    loop {
        for (slot, &i) in shuffled.iter_mut().zip(&perm) {
            *slot = rb[i];
        }
        if pearson(ra, &shuffled).abs() >= threshold {
            hits += 1;
        }
        total += 1;
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    hits as f64 / total as f64
}

fn t_approx_p(rho: f64, n: usize) -> f64 {
    if rho.abs() >= 1.0 {
        return 0.0;
    }
    let df = (n - 2) as f64;
    let t = rho * (df / (1.0 - rho * rho)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("df > 0");
    (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0)
}

/// Two-sided binomial sign test p-value for `positives` successes out of
/// `trials` under p = 1/2.
pub fn sign_test_two_sided(positives: u64, trials: u64) -> f64 {
    if trials == 0 {
        return 1.0;
    }
    let k = positives.min(trials - positives);
    (2.0 * binomial_tail_le(k, trials)).min(1.0)
}

/// One-sided sign test: probability of at least `positives` successes out
/// of `trials` under p = 1/2.
pub fn sign_test_greater(positives: u64, trials: u64) -> f64 {
    if positives == 0 {
        return 1.0;
    }
    1.0 - binomial_tail_le(positives - 1, trials)
}

/// P(X ≤ k) for X ~ Binomial(n, 1/2), summed in log space.
fn binomial_tail_le(k: u64, n: u64) -> f64 {
    use statrs::function::factorial::ln_binomial;
    let ln_half_n = n as f64 * 0.5f64.ln();
    (0..=k.min(n))
        .map(|i| (ln_binomial(n, i) + ln_half_n).exp())
        .sum::<f64>()
        .min(1.0)
}
