//! Poisson probability kernels.
//!
//! Probabilities are evaluated in log space with the saddle-point form of the
//! mass function (Stirling remainder plus deviance), which keeps full relative
//! accuracy far past the point where `k!` overflows. Cumulative sums are
//! accumulated from the largest term outward so that neither underflow of
//! `e^{-mu}` nor overflow of `mu^k` can occur.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Non-negative event count.
pub type Count = u64;

/// Mean of a Poisson distribution; strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rate(f64);

impl Rate {
    pub fn new(mu: f64) -> Result<Self> {
        if mu.is_finite() && mu > 0.0 {
            Ok(Rate(mu))
        } else {
            Err(domain(format!("Poisson mean must be positive and finite, got {mu}")))
        }
    }

    /// Caller guarantees `mu > 0` and finite.
    pub(crate) fn from_valid(mu: f64) -> Self {
        debug_assert!(mu.is_finite() && mu > 0.0, "invalid rate {mu}");
        Rate(mu)
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

// Stirling remainder ln(k!) - [(k + 1/2) ln k - k + ln sqrt(2 pi)] for k <= 15,
// evaluated at 50 digits.
const STIRLERR_TABLE: [f64; 16] = [
    0.0,
    0.081_061_466_795_327_258,
    0.041_340_695_955_409_294,
    0.027_677_925_684_998_339,
    0.020_790_672_103_765_093,
    0.016_644_691_189_821_192,
    0.013_876_128_823_070_748,
    0.011_896_709_945_891_770,
    0.010_411_265_261_972_096,
    0.009_255_462_182_712_733,
    0.008_330_563_433_362_871,
    0.007_573_675_487_951_841,
    0.006_942_840_107_209_530,
    0.006_408_994_188_004_207,
    0.005_951_370_112_758_848,
    0.005_554_733_551_962_801,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn stirlerr(k: Count) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if k <= 15 {
        return STIRLERR_TABLE[k as usize];
    }
    let n = k as f64;
    let nn = n * n;
    if k > 500 {
        (S0 - S1 / nn) / n
    } else if k > 80 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if k > 35 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance term `x ln(x/m) + m - x`, with a series when `x` is close to `m`.
fn bd0(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let mut v = (x - m) / (x + m);
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        v *= v;
        for j in 1..1000 {
            ej *= v;
            let s1 = s + ej / (2 * j + 1) as f64;
            if s1 == s {
                return s1;
            }
            s = s1;
        }
        s
    } else {
        x * (x / m).ln() + m - x
    }
}

/// `ln(k!)`.
pub fn ln_factorial(k: Count) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let n = k as f64;
    stirlerr(k) + (n + 0.5) * n.ln() - n + LN_SQRT_2PI
}

/// `k ln(mu) - mu - ln(k!)`.
pub fn log_pmf(mu: Rate, k: Count) -> f64 {
    let mu = mu.get();
    if k == 0 {
        return -mu;
    }
    let x = k as f64;
    -stirlerr(k) - bd0(x, mu) - 0.5 * (2.0 * PI * x).ln()
}

pub fn pmf(mu: Rate, k: Count) -> f64 {
    log_pmf(mu, k).exp()
}

/// Index of the largest Poisson term.
fn mode(mu: f64) -> Count {
    mu.floor() as Count
}

/// Sum of `f_mu(j) / f_mu(anchor)` for `j` in `lo..=hi`, walking outward from
/// `anchor` by the ratio recurrence. `anchor` must be the largest term in the
/// range, so every ratio is at most one and the walk stops once terms are
/// negligible.
fn scaled_sum(mu: f64, anchor: Count, lo: Count, hi: Count) -> f64 {
    debug_assert!(lo <= anchor && anchor <= hi);
    let mut sum = 1.0;
    let mut t = 1.0;
    let mut j = anchor;
    while j > lo {
        t *= j as f64 / mu;
        sum += t;
        j -= 1;
        if t < sum * 1e-17 {
            break;
        }
    }
    t = 1.0;
    j = anchor;
    while j < hi {
        j += 1;
        t *= mu / j as f64;
        sum += t;
        if t < sum * 1e-17 {
            break;
        }
    }
    sum
}

/// `ln F_mu(k)`.
pub fn log_cdf(mu: Rate, k: Count) -> f64 {
    let anchor = k.min(mode(mu.get()));
    log_pmf(mu, anchor) + scaled_sum(mu.get(), anchor, 0, k).ln()
}

/// `F_mu(k) = sum_{j <= k} f_mu(j)`. Above the median the complement of the
/// upper tail is returned, which is exact to rounding near one.
pub fn cdf(mu: Rate, k: Count) -> f64 {
    let lower = log_cdf(mu, k).exp();
    if lower > 0.5 {
        1.0 - sf(mu, k)
    } else {
        lower
    }
}

/// `ln P(X > k)`.
pub fn log_sf(mu: Rate, k: Count) -> f64 {
    let lo = k + 1;
    let anchor = lo.max(mode(mu.get()));
    log_pmf(mu, anchor) + scaled_sum(mu.get(), anchor, lo, Count::MAX).ln()
}

/// Upper tail `P(X > k) = 1 - F_mu(k)`, summed directly so that it keeps
/// relative accuracy when tiny.
pub fn sf(mu: Rate, k: Count) -> f64 {
    log_sf(mu, k).exp().min(1.0)
}

/// Smallest `N` with `1 - F_mu(N) < eps`.
///
/// Panics if `eps` is not in `(0, 1)`.
pub fn tail_cutoff(mu: Rate, eps: f64) -> Count {
    assert!(eps > 0.0 && eps < 1.0, "tail_cutoff: eps must lie in (0, 1), got {eps}");
    let ln_eps = eps.ln();
    // The tail is decreasing in N; start the search at a point known to be
    // above the answer, then walk down while the tail stays below eps.
    let m = mu.get();
    let mut hi = mode(m) + 1;
    while log_sf(mu, hi) >= ln_eps {
        hi = hi * 2 + 1;
    }
    let mut lo: Count = 0;
    if log_sf(mu, 0) < ln_eps {
        return 0;
    }
    // invariant: tail(lo) >= eps, tail(hi) < eps
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if log_sf(mu, mid) < ln_eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `ln(e^a + e^b)`.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln sum_i e^{x_i}`.
pub fn log_sum_exp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(mu: f64) -> Rate {
        Rate::new(mu).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn rejects_bad_rates() {
        assert!(Rate::new(0.0).is_err());
        assert!(Rate::new(-1.0).is_err());
        assert!(Rate::new(f64::NAN).is_err());
        assert!(Rate::new(f64::INFINITY).is_err());
    }

    #[test]
    fn log_pmf_simple_values() {
        assert_eq!(log_pmf(r(1.0), 0), -1.0);
        assert!((log_pmf(r(2.0), 2) - (2f64.ln() - 2.0)).abs() < 1e-15);
        assert!((pmf(r(1.0), 0) - (-1f64).exp()).abs() < 1e-16);
        assert!((pmf(r(1.0), 1) - (-1f64).exp()).abs() < 1e-16);
    }

    // Reference values evaluated at 50 significant digits.
    #[test]
    fn log_pmf_matches_high_precision() {
        let cases = [
            (15.8, 15, 0.100_346_881_209_874_597_04),
            (100.0, 100, 0.039_860_996_809_147_135_234),
            (1000.0, 1000, 0.012_614_611_348_721_499_718),
            (10000.0, 10000, 0.003_989_389_558_962_825_648_7),
            (9800.0, 10000, 0.000_525_484_308_765_747_222_82),
            (10000.0, 9900, 0.002_427_806_706_540_701_690_4),
            (3.5, 30, 2.389_739_537_606_503_202e-18),
            (50.0, 20, 7.560_514_918_371_915_679e-7),
            (0.5, 7, 9.401_826_942_470_136_154_6e-7),
        ];
        for (mu, k, want) in cases {
            let got = pmf(r(mu), k);
            assert!(rel(got, want) < 1e-12, "mu={mu} k={k}: {got} vs {want}");
        }
    }

    #[test]
    fn ln_factorial_small_and_large() {
        let mut acc = 0.0f64;
        for k in 1..=30u64 {
            acc += (k as f64).ln();
            assert!((ln_factorial(k) - acc).abs() < 1e-12 * acc.max(1.0), "k={k}");
        }
        assert_eq!(ln_factorial(0), 0.0);
    }

    #[test]
    fn cdf_examples() {
        let b = 3.7;
        assert!(rel(cdf(r(b), 0), (-b).exp()) < 1e-14);
        assert!((cdf(r(1.0), 2) - 2.5 * (-1f64).exp()).abs() < 1e-15);
        // 50-digit reference
        assert!((cdf(r(15.8), 15) - 0.486_705_067_088_469_686_34).abs() < 1e-13);
    }

    #[test]
    fn cdf_handles_extreme_rates() {
        // e^{-2000} underflows; the log form must not.
        let l = log_cdf(r(2000.0), 0);
        assert!((l + 2000.0).abs() < 1e-9);
        assert!((cdf(r(0.5), 400) - 1.0).abs() < 1e-15);
        assert!(log_sf(r(0.5), 400) < -1000.0);
    }

    #[test]
    fn sf_complements_cdf() {
        for &mu in &[0.3, 1.0, 4.5, 15.8, 60.0] {
            for k in 0..80 {
                let s = cdf(r(mu), k) + sf(r(mu), k);
                assert!((s - 1.0).abs() < 1e-14, "mu={mu} k={k} sum={s}");
            }
        }
    }

    #[test]
    fn tail_cutoff_examples() {
        assert_eq!(tail_cutoff(r(1.0), 0.5), 1);
        // 1 - F_mu(0) = 1 - e^{-mu} < eps for small mu
        assert_eq!(tail_cutoff(r(0.1), 0.999_999), 0);
        let n = tail_cutoff(r(10.0), 1e-12);
        // direct upward summation as the oracle
        let tail = |from: u64| -> f64 {
            let mut t = 0.0;
            for j in (from..from + 400).rev() {
                let lp = (j as f64) * 10f64.ln() - 10.0 - (1..=j).map(|i| (i as f64).ln()).sum::<f64>();
                t += lp.exp();
            }
            t
        };
        assert!(tail(n + 1) < 1e-12);
        assert!(tail(n) >= 1e-12);
    }

    #[test]
    fn log_sum_exp_is_stable() {
        assert!((log_sum_exp([-1000.0, -1000.0]) - (-1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(Vec::<f64>::new()), f64::NEG_INFINITY);
        assert!((log_add_exp(0.0, 0.0) - 2f64.ln()).abs() < 1e-15);
    }
}
