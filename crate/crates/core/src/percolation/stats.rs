use statrs::distribution::{ContinuousCDF, Normal};

/// Two-sided standard normal quantile for a central interval.
pub fn z_for(confidence: f64) -> f64 {
    assert!(
        confidence > 0.0 && confidence < 1.0,
        "confidence must lie in (0, 1), got {confidence}"
    );
    Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0)
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson(successes: u64, trials: u64, confidence: f64) -> (f64, f64, f64) {
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z = z_for(confidence);
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let low = (center - half).clamp(0.0, phat);
    let high = (center + half).clamp(phat, 1.0);
    (phat, low, high)
}

/// Normal-approximation interval for a mean from its sum and sum of squares.
pub fn normal_mean(sum: f64, sum_sq: f64, trials: u64, confidence: f64) -> (f64, f64, f64) {
    let n = trials as f64;
    let mean = sum / n;
    if trials < 2 {
        return (mean, mean, mean);
    }
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    let half = z_for(confidence) * (var / n).sqrt();
    ((mean), (mean - half).max(0.0), mean + half)
}
