//! Correlation statistics between paired entropy series.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Two aligned finite series of equal length at least 2.
#[derive(Debug, Clone)]
pub struct PairedSeries {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PairedSeries {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Shape(format!(
                "paired series lengths differ: {} vs {}",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::Shape("paired series needs at least 2 points".into()));
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("paired series entry".into()));
        }
        Ok(Self { xs, ys })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// The same pairs with the roles of x and y exchanged.
    pub fn swapped(&self) -> PairedSeries {
        PairedSeries {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
        }
    }
}

/// Pearson product-moment correlation. A constant series on either side
/// leaves the coefficient undefined.
pub fn pearson(s: &PairedSeries) -> Result<f64> {
    let n = s.len() as f64;
    let mx = s.xs.iter().sum::<f64>() / n;
    let my = s.ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in s.xs.iter().zip(s.ys.iter()) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation(
            "a constant series has no Pearson correlation".into(),
        ));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Fractional (average) ranks, 1-based; ties share the mean of the ranks
/// they occupy.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[idx[j]] == values[idx[i]] {
            j += 1;
        }
        // Ranks i+1 ..= j share their mean.
        let avg = (i + 1 + j) as f64 / 2.0;
        for k in i..j {
            ranks[idx[k]] = avg;
        }
        i = j;
    }
    ranks
}

/// Spearman rank correlation: Pearson on fractional ranks.
pub fn spearman(s: &PairedSeries) -> Result<f64> {
    let ranked = PairedSeries {
        xs: average_ranks(&s.xs),
        ys: average_ranks(&s.ys),
    };
    pearson(&ranked).map_err(|_| {
        Error::UndefinedCorrelation("a constant series has no Spearman correlation".into())
    })
}

/// Chatterjee rank correlation of y on x, ties-adjusted:
/// `ξ = 1 − n·Σ|r_{i+1} − r_i| / (2·Σ l_i(n − l_i))` with
/// `r_i = #{j : y_j ≤ y_i}` and `l_i = #{j : y_j ≥ y_i}`, after sorting
/// pairs by x. Ties in x are broken uniformly at random from `seed`
/// (a shuffle followed by a stable sort), which is the estimator's
/// definition rather than a convenience; equal seeds give equal results.
///
/// The statistic is directional: `xicor(x→y)` measures how well y is
/// described by a function of x, not the reverse. For a series with
/// constant y the ratio degenerates to 0/0 and 0 is returned.
pub fn xicor(s: &PairedSeries, seed: u64) -> f64 {
    let n = s.len();
    let nf = n as f64;
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    order.sort_by(|&a, &b| s.xs[a].partial_cmp(&s.xs[b]).unwrap());

    let y: Vec<f64> = order.iter().map(|&i| s.ys[i]).collect();
    let mut sorted_y = y.clone();
    sorted_y.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let r: Vec<f64> = y
        .iter()
        .map(|&v| sorted_y.partition_point(|&u| u <= v) as f64)
        .collect();
    let l: Vec<f64> = y
        .iter()
        .map(|&v| nf - sorted_y.partition_point(|&u| u < v) as f64)
        .collect();

    let num: f64 = nf * r.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>();
    let den: f64 = 2.0 * l.iter().map(|&li| li * (nf - li)).sum::<f64>();
    if den == 0.0 {
        0.0
    } else {
        1.0 - num / den
    }
}

/// All three coefficients on one series. Undefined Pearson/Spearman
/// values (constant series) are reported as `None` rather than failing
/// the whole report; xicor always produces a number.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
    pub xicor: f64,
    pub n: usize,
    pub seed: u64,
}

pub fn correlation_report(s: &PairedSeries, seed: u64) -> CorrelationReport {
    CorrelationReport {
        pearson: pearson(s).ok(),
        spearman: spearman(s).ok(),
        xicor: xicor(s, seed),
        n: s.len(),
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn series(xs: &[f64], ys: &[f64]) -> PairedSeries {
        PairedSeries::new(xs.to_vec(), ys.to_vec()).unwrap()
    }

    #[test]
    fn pearson_is_exact_on_affine_data() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        let up: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let down: Vec<f64> = xs.iter().map(|x| -3.0 * x).collect();
        assert_eq!(pearson(&series(&xs, &up)).unwrap(), 1.0);
        assert_eq!(pearson(&series(&xs, &down)).unwrap(), -1.0);
    }

    #[test]
    fn pearson_rejects_constant_series() {
        let r = pearson(&series(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]));
        assert!(matches!(r, Err(Error::UndefinedCorrelation(_))));
    }

    #[test]
    fn average_ranks_share_tied_positions() {
        let r = average_ranks(&[3.0, 1.0, 3.0, 2.0]);
        assert_eq!(r, vec![3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn spearman_is_one_on_monotone_nonlinear_data() {
        let xs: Vec<f64> = (1..=9).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.powi(3)).collect();
        assert_eq!(spearman(&series(&xs, &ys)).unwrap(), 1.0);
    }

    #[test]
    fn spearman_matches_independent_rank_then_pearson() {
        // Hand-rolled oracle: ranks computed by counting, then the
        // textbook Pearson formula on the ranks.
        let xs = [
            2.0, 7.0, 3.0, 3.0, 9.0, 1.0, 4.0, 4.0, 4.0, 8.0, 0.5, 6.0, 5.0, 2.5, 7.5, 3.5, 9.5,
            1.5, 6.5, 8.5,
        ];
        let ys = [
            1.0, 5.0, 2.0, 2.0, 9.0, 0.0, 3.0, 3.0, 7.0, 8.0, 0.2, 5.5, 4.0, 1.2, 6.0, 2.2, 9.9,
            0.7, 5.7, 8.8,
        ];
        let rank1 = |v: &[f64], i: usize| {
            let below = v.iter().filter(|&&u| u < v[i]).count() as f64;
            let equal = v.iter().filter(|&&u| u == v[i]).count() as f64;
            below + (equal + 1.0) / 2.0
        };
        let rx: Vec<f64> = (0..xs.len()).map(|i| rank1(&xs, i)).collect();
        let ry: Vec<f64> = (0..ys.len()).map(|i| rank1(&ys, i)).collect();
        let n = xs.len() as f64;
        let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
        let num: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
        let dx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum::<f64>().sqrt();
        let dy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum::<f64>().sqrt();
        let want = num / (dx * dy);

        let got = spearman(&series(&xs, &ys)).unwrap();
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }

    #[test]
    fn xicor_monotone_value_is_exact() {
        for n in [5usize, 100] {
            let xs: Vec<f64> = (0..n).map(|i| i as f64).collect();
            let ys: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
            let got = xicor(&series(&xs, &ys), 42);
            let want = 1.0 - 3.0 / (n as f64 + 1.0);
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn xicor_handles_constant_y() {
        assert_eq!(xicor(&series(&[1.0, 2.0, 3.0], &[4.0, 4.0, 4.0]), 0), 0.0);
    }

    #[test]
    fn xicor_is_deterministic_in_the_seed() {
        // Heavy x-ties so the random tie-break actually matters.
        let xs = [1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 3.0, 3.0, 4.0];
        let ys = [0.1, 0.9, 0.5, 0.2, 0.8, 0.4, 0.3, 0.7, 0.6, 1.0];
        let s = series(&xs, &ys);
        assert_eq!(xicor(&s, 7), xicor(&s, 7));
    }

    #[test]
    fn xicor_null_hypothesis_is_near_zero() {
        let n = 1000;
        let trials = 100;
        let mut total = 0.0;
        for t in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + t);
            let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let ys: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            total += xicor(&series(&xs, &ys), t).abs();
        }
        let mean = total / trials as f64;
        assert!(mean < 0.05, "mean |xi| = {mean}");
    }

    #[test]
    fn xicor_is_directional() {
        // y = |x| is a function of x but x is not a function of y.
        let xs: Vec<f64> = (-50..=50).map(|i| i as f64 / 10.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.abs()).collect();
        let s = series(&xs, &ys);
        let forward = xicor(&s, 3);
        let backward = xicor(&s.swapped(), 3);
        assert!(forward > 0.8, "forward {forward}");
        assert!(backward < forward - 0.2, "backward {backward}");
    }

    #[test]
    fn report_marks_undefined_coefficients() {
        let s = series(&[1.0, 2.0, 3.0], &[4.0, 4.0, 4.0]);
        let rep = correlation_report(&s, 11);
        assert!(rep.pearson.is_none());
        assert!(rep.spearman.is_none());
        assert_eq!(rep.xicor, 0.0);
        assert_eq!((rep.n, rep.seed), (3, 11));
    }

    #[test]
    fn mismatched_or_short_series_are_rejected() {
        assert!(PairedSeries::new(vec![1.0], vec![1.0]).is_err());
        assert!(PairedSeries::new(vec![1.0, 2.0], vec![1.0]).is_err());
        assert!(PairedSeries::new(vec![1.0, f64::NAN], vec![1.0, 2.0]).is_err());
    }
}
