//! Growth bases for the maximum number of minimal transversals of rank-k
//! hypergraphs.

use super::weights::Weights;
use super::AnalysisError;

/// Upper bound for rank 2, which is the maximal-independent-set count
/// `3^{n/3}` rounded up. Cited, not computed.
pub const RANK2_UPPER: f64 = 1.4423;

/// Upper bound for rank 4 from iterative compression over the rank-3 engine.
pub const RANK4_UPPER: f64 = 1.8863;

/// Default bisection tolerance on `x`.
pub const ROOT_TOLERANCE: f64 = 1e-10;

/// Left-hand side of the rank-k branching recurrence
/// `-1 + x^-1 + sum_{i=3}^{k} (i-2) x^-i + sum_{i=k+1}^{2k-1} (2k-i) x^-i`.
///
/// Strictly decreasing on `(0, inf)`.
pub fn recurrence(k: usize, x: f64) -> f64 {
    let inv = x.recip();
    let mut power = inv;
    let mut total = -1.0 + inv;
    for i in 2..=2 * k - 1 {
        power *= inv;
        let coeff = if i <= k { i as f64 - 2.0 } else { (2 * k - i) as f64 };
        total += coeff * power;
    }
    total
}

/// Positive root of [`recurrence`], by bisection on `[1, 2]`.
pub fn beta_k(k: usize, tolerance: f64) -> Result<f64, AnalysisError> {
    if k < 2 {
        return Err(AnalysisError::RankTooSmall { k, min: 2 });
    }
    let tolerance = tolerance.max(f64::EPSILON);
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    debug_assert!(recurrence(k, lo) > 0.0 && recurrence(k, hi) < 0.0);
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if recurrence(k, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `C(2k-1, k)^{1/(2k-1)}`, the base of the disjoint-copies lower-bound
/// construction.
pub fn lower_bound_base(k: usize) -> f64 {
    assert!(k >= 1, "rank must be at least 1");
    let span = 2 * k - 1;
    // ln C(2k-1, k) = sum_{j=1}^{k} ln((k-1+j)/j)
    let ln_binom: f64 = (1..=k).map(|j| ((k - 1 + j) as f64 / j as f64).ln()).sum();
    (ln_binom / span as f64).exp()
}

/// Growth base `2^{H(alpha)}` of the subset scan and `2^alpha a^{1-alpha}` of
/// the compression phase, for an inner engine of base `inner_base`.
pub fn compression_phase_bases(inner_base: f64, alpha: f64) -> (f64, f64) {
    let entropy =
        if alpha <= 0.0 || alpha >= 1.0 { 0.0 } else { -alpha * alpha.log2() - (1.0 - alpha) * (1.0 - alpha).log2() };
    (entropy.exp2(), alpha.exp2() * inner_base.powf(1.0 - alpha))
}

/// The `alpha` in `[0.5, 1]` balancing the two phases of iterative
/// compression, and the resulting base.
pub fn best_compression_alpha(inner_base: f64) -> (f64, f64) {
    // On [0.5, 1] the scan base decreases and the compression base
    // increases in alpha, so the optimum is where they cross.
    let gap = |a: f64| {
        let (scan, comp) = compression_phase_bases(inner_base, a);
        scan - comp
    };
    let (mut lo, mut hi) = (0.5f64, 1.0f64);
    if gap(lo) <= 0.0 {
        return (lo, compression_phase_bases(inner_base, lo).1);
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (scan, comp) = compression_phase_bases(inner_base, lo);
    (lo, scan.max(comp))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub k: usize,
    /// Lower-bound base rounded down to [`BoundsRow::lower_digits`] decimals.
    pub lower: f64,
    /// Upper-bound base rounded up to [`BoundsRow::upper_digits`] decimals.
    pub upper: f64,
    pub lower_exact: f64,
    pub upper_exact: f64,
    pub lower_digits: usize,
    pub upper_digits: usize,
}

impl BoundsRow {
    pub fn format(&self) -> String {
        format!(
            "{:>3}  {:.lw$}  {:.uw$}",
            self.k,
            self.lower,
            self.upper,
            lw = self.lower_digits,
            uw = self.upper_digits
        )
    }
}

fn round_down(x: f64, digits: usize) -> f64 {
    let scale = 10f64.powi(digits as i32);
    (x * scale).floor() / scale
}

fn round_up(x: f64, digits: usize) -> f64 {
    let scale = 10f64.powi(digits as i32);
    (x * scale).ceil() / scale
}

/// Rows for `k = 2..=k_max`. Bounds are rounded outward (lower down, upper
/// up) to 4 decimals; an upper base whose 4-decimal ceiling would read
/// `2.0000` is given to 7 decimals instead.
pub fn bounds_table(k_max: usize) -> Result<Vec<BoundsRow>, AnalysisError> {
    if k_max < 2 {
        return Err(AnalysisError::RankTooSmall { k: k_max, min: 2 });
    }
    (2..=k_max)
        .map(|k| {
            let lower_exact = lower_bound_base(k);
            let upper_exact = match k {
                2 => RANK2_UPPER,
                3 => Weights::rank3().growth_base(),
                4 => RANK4_UPPER,
                _ => beta_k(k, ROOT_TOLERANCE)?,
            };
            let upper_digits = if round_up(upper_exact, 4) >= 2.0 { 7 } else { 4 };
            Ok(BoundsRow {
                k,
                lower: round_down(lower_exact, 4),
                upper: round_up(upper_exact, upper_digits),
                lower_exact,
                upper_exact,
                lower_digits: 4,
                upper_digits,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct evaluation of the defining sum, term by term.
    fn recurrence_naive(k: usize, x: f64) -> f64 {
        let mut s = -1.0 + 1.0 / x;
        for i in 3..=k {
            s += (i as f64 - 2.0) * x.powi(-(i as i32));
        }
        for i in k + 1..=2 * k - 1 {
            s += (2 * k - i) as f64 * x.powi(-(i as i32));
        }
        s
    }

    #[test]
    fn recurrence_matches_naive_sum() {
        for k in 2..=30 {
            for x in [1.1, 1.5, 1.9, 2.0] {
                assert!((recurrence(k, x) - recurrence_naive(k, x)).abs() < 1e-12, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn beta_2_is_root_of_cubic() {
        let b = beta_k(2, ROOT_TOLERANCE).unwrap();
        // x^3 = x^2 + 1
        assert!((b.powi(3) - b.powi(2) - 1.0).abs() < 1e-9);
        assert!((b - 1.46557).abs() < 5e-6);
    }

    #[test]
    fn beta_values() {
        assert!((beta_k(5, ROOT_TOLERANCE).unwrap() - 1.9538).abs() < 1e-4);
        assert!((beta_k(10, ROOT_TOLERANCE).unwrap() - 1.9987).abs() < 5e-5);
        assert!(beta_k(1, ROOT_TOLERANCE).is_err());
    }

    #[test]
    fn beta_monotone_and_below_two() {
        let mut prev = 1.0;
        for k in 2..=30 {
            let b = beta_k(k, ROOT_TOLERANCE).unwrap();
            assert!(recurrence(k, b).abs() <= 10.0 * ROOT_TOLERANCE, "k={k}");
            assert!(b > prev && b < 2.0, "k={k}");
            prev = b;
        }
    }

    #[test]
    fn lower_bases() {
        assert!((lower_bound_base(2) - 3f64.cbrt()).abs() < 1e-12);
        assert!((lower_bound_base(3) - 10f64.powf(0.2)).abs() < 1e-12);
        // C(39, 20) = 68923264410
        assert!((lower_bound_base(20) - 68923264410f64.powf(1.0 / 39.0)).abs() < 1e-12);
        assert!((lower_bound_base(20) - 1.8962).abs() < 2e-4);
        assert_eq!(lower_bound_base(1), 1.0);
    }

    #[test]
    fn lower_below_upper() {
        for k in 5..=30 {
            assert!(lower_bound_base(k) < beta_k(k, ROOT_TOLERANCE).unwrap());
        }
        assert!(lower_bound_base(3) < Weights::rank3().growth_base());
        assert!(lower_bound_base(4) < RANK4_UPPER);
    }

    #[test]
    fn table_rows() {
        let t = bounds_table(8).unwrap();
        assert_eq!(t.len(), 7);
        let row = |k: usize| &t[k - 2];
        assert_eq!((row(3).lower, row(3).upper), (1.5848, 1.6755));
        assert_eq!((row(4).lower, row(4).upper), (1.6618, 1.8863));
        assert_eq!((row(8).lower, row(8).upper), (1.7943, 1.9947));
        assert_eq!(row(2).upper, 1.4423);
        assert_eq!(row(3).format(), "  3  1.5848  1.6755");
        assert!(bounds_table(1).is_err());
    }

    #[test]
    fn rank20_upper_uses_seven_digits() {
        let t = bounds_table(20).unwrap();
        let r = t.last().unwrap();
        assert_eq!(r.upper_digits, 7);
        assert!((r.upper - 1.9999988).abs() < 1e-12);
        assert_eq!(r.format(), " 20  1.8962  1.9999988");
    }

    #[test]
    fn compression_optimum_matches_rank4_constant() {
        let (alpha, base) = best_compression_alpha(Weights::rank3().growth_base());
        assert!((alpha - 0.66938).abs() < 1e-4, "{alpha}");
        assert!(base <= RANK4_UPPER && base > RANK4_UPPER - 1e-4, "{base}");
    }
}
