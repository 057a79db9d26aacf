//! Finite-sample estimation of probability densities and the cautious
//! decision weights built from them.
//!
//! Counting n events in a bin of width δx over T observations estimates the
//! density as p̂ = n/(Tδx) with Poisson standard error ε = √n/(Tδx). A
//! decision maker who dislikes surprises adds one standard error before
//! normalising, which systematically boosts rare-event weights relative to
//! common-event weights because *relative* errors grow as events get rarer.

use crate::dist::{DistributionSpec, Family};
use crate::error::{Error, Result};
use crate::weightmap::CdfMapCurve;

/// Event counts over a uniform bin grid from a series of T observations.
/// Observations outside the binned range count toward T but not any bin.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedDensity {
    bin_edges: Vec<f64>,
    counts: Vec<u64>,
    total_observations: u64,
    bin_width: f64,
}

impl BinnedDensity {
    /// Build from explicit edges and counts. Edges must be uniform to
    /// within 1e-12 relative and counts must not exceed T in total.
    pub fn new(bin_edges: Vec<f64>, counts: Vec<u64>, total_observations: u64) -> Result<Self> {
        if bin_edges.len() < 2 || counts.len() != bin_edges.len() - 1 {
            return Err(Error::Domain(format!(
                "expected {} counts for {} edges",
                bin_edges.len().saturating_sub(1),
                bin_edges.len()
            )));
        }
        if total_observations == 0 {
            return Err(Error::Domain("total_observations must be positive".into()));
        }
        let bin_width = bin_edges[1] - bin_edges[0];
        if !(bin_width > 0.0 && bin_width.is_finite()) {
            return Err(Error::Domain(format!(
                "bin width must be positive, got {bin_width}"
            )));
        }
        for pair in bin_edges.windows(2) {
            let w = pair[1] - pair[0];
            if ((w - bin_width) / bin_width).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "bin widths are not uniform: {w} vs {bin_width}"
                )));
            }
        }
        let total: u64 = counts.iter().sum();
        if total > total_observations {
            return Err(Error::Domain(format!(
                "binned counts {total} exceed total observations {total_observations}"
            )));
        }
        Ok(Self {
            bin_edges,
            counts,
            total_observations,
            bin_width,
        })
    }

    /// Count a sample series into `n_bins` uniform bins over [lo, hi).
    /// The full series length is recorded as T even when draws fall outside.
    pub fn from_samples(samples: &[f64], lo: f64, hi: f64, n_bins: usize) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain("empty sample series".into()));
        }
        if !(hi > lo) || n_bins == 0 {
            return Err(Error::Domain(format!(
                "invalid binning range [{lo}, {hi}) with {n_bins} bins"
            )));
        }
        let width = (hi - lo) / n_bins as f64;
        let mut counts = vec![0u64; n_bins];
        for &x in samples {
            if x >= lo && x < hi {
                let idx = (((x - lo) / width) as usize).min(n_bins - 1);
                counts[idx] += 1;
            }
        }
        let edges = (0..=n_bins).map(|i| lo + i as f64 * width).collect();
        Self::new(edges, counts, samples.len() as u64)
    }

    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total_observations(&self) -> u64 {
        self.total_observations
    }

    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        self.bin_edges
            .windows(2)
            .map(|e| 0.5 * (e[0] + e[1]))
            .collect()
    }
}

/// Density estimates p̂ per bin with their standard errors ε.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    bin_centers: Vec<f64>,
    p_hat: Vec<f64>,
    epsilon: Vec<f64>,
    bin_width: f64,
}

impl DensityEstimate {
    /// Assemble from pre-computed vectors (used for ensemble-derived
    /// uncertainties); lengths must agree and values must be non-negative.
    pub fn from_parts(
        bin_centers: Vec<f64>,
        p_hat: Vec<f64>,
        epsilon: Vec<f64>,
        bin_width: f64,
    ) -> Result<Self> {
        if bin_centers.len() != p_hat.len() || p_hat.len() != epsilon.len() {
            return Err(Error::Domain("mismatched estimate vector lengths".into()));
        }
        if bin_centers.is_empty() {
            return Err(Error::Domain("estimate needs at least one bin".into()));
        }
        if !(bin_width > 0.0 && bin_width.is_finite()) {
            return Err(Error::Domain(format!(
                "bin width must be positive, got {bin_width}"
            )));
        }
        if p_hat.iter().chain(epsilon.iter()).any(|v| !(*v >= 0.0)) {
            return Err(Error::Domain(
                "densities and errors must be non-negative".into(),
            ));
        }
        Ok(Self {
            bin_centers,
            p_hat,
            epsilon,
            bin_width,
        })
    }

    pub fn bin_centers(&self) -> &[f64] {
        &self.bin_centers
    }

    pub fn p_hat(&self) -> &[f64] {
        &self.p_hat
    }

    pub fn epsilon(&self) -> &[f64] {
        &self.epsilon
    }

    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }

    /// Same bins and densities with the uncertainty vector replaced.
    pub fn with_epsilon(&self, epsilon: Vec<f64>) -> Result<Self> {
        Self::from_parts(
            self.bin_centers.clone(),
            self.p_hat.clone(),
            epsilon,
            self.bin_width,
        )
    }
}

/// Density estimate from binned counts: p̂ = n/(Tδx), ε = √n/(Tδx).
/// Empty bins get ε = 0 (no Bayesian floor).
pub fn density_estimate(binned: &BinnedDensity) -> DensityEstimate {
    let t_dx = binned.total_observations as f64 * binned.bin_width;
    let p_hat: Vec<f64> = binned.counts.iter().map(|&n| n as f64 / t_dx).collect();
    let epsilon: Vec<f64> = binned
        .counts
        .iter()
        .map(|&n| (n as f64).sqrt() / t_dx)
        .collect();
    DensityEstimate {
        bin_centers: binned.bin_centers(),
        p_hat,
        epsilon,
        bin_width: binned.bin_width,
    }
}

/// Expected count and its uncertainty for a known bin probability density:
/// (pδxT, √(pδxT)).
pub fn expected_count(p: f64, bin_width: f64, observations: u64) -> Result<(f64, f64)> {
    if !(p > 0.0 && p < 1.0) || !(bin_width > 0.0 && bin_width.is_finite()) || observations == 0 {
        return Err(Error::Domain(format!(
            "expected_count requires p in (0, 1), dx > 0 and T >= 1, got p = {p}, dx = {bin_width}, T = {observations}"
        )));
    }
    if p * bin_width > 1.0 {
        return Err(Error::Domain(format!(
            "bin mass p*dx = {} exceeds 1",
            p * bin_width
        )));
    }
    let n = p * bin_width * observations as f64;
    Ok((n, n.sqrt()))
}

/// Exact binomial probability that a count over T trials with success
/// probability p falls in [lo, hi], summed in log space.
pub fn binomial_band_mass(p: f64, trials: u64, lo: u64, hi: u64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "binomial probability must lie in (0, 1), got {p}"
        )));
    }
    if trials == 0 || lo > hi || hi > trials {
        return Err(Error::Domain(format!(
            "invalid band [{lo}, {hi}] for {trials} trials"
        )));
    }
    use crate::dist::special::ln_gamma;
    let n = trials as f64;
    let ln_p = p.ln();
    let ln_q = (-p).ln_1p();
    let mut mass = 0.0;
    for k in lo..=hi {
        let kf = k as f64;
        let ln_choose = ln_gamma(n + 1.0) - ln_gamma(kf + 1.0) - ln_gamma(n - kf + 1.0);
        mass += (ln_choose + kf * ln_p + (n - kf) * ln_q).exp();
    }
    Ok(mass.min(1.0))
}

/// Cautious decision weights: w_i = (p̂_i + ε_i) / Σ_j (p̂_j + ε_j)δx,
/// so that Σ w_i·δx = 1.
pub fn decision_weights(estimate: &DensityEstimate) -> Result<Vec<f64>> {
    decision_weights_scaled(estimate, 1.0)
}

/// Decision weights with the standard error scaled by `multiplier` before
/// the addition. The conservative construction uses multiplier 1; other
/// values are exposed for exploration only.
pub fn decision_weights_scaled(estimate: &DensityEstimate, multiplier: f64) -> Result<Vec<f64>> {
    if !(multiplier >= 0.0 && multiplier.is_finite()) {
        return Err(Error::Domain(format!(
            "error multiplier must be a non-negative real, got {multiplier}"
        )));
    }
    let raw: Vec<f64> = estimate
        .p_hat
        .iter()
        .zip(&estimate.epsilon)
        .map(|(&p, &e)| p + multiplier * e)
        .collect();
    let total: f64 = raw.iter().sum::<f64>() * estimate.bin_width;
    if !(total > 0.0) {
        return Err(Error::Degenerate(
            "all-zero density estimate admits no decision weights".into(),
        ));
    }
    Ok(raw.into_iter().map(|v| v / total).collect())
}

/// Decision-weight density over a grid for a known reference density:
/// w(x) = (p(x) + √(p(x)/Tδx)) / ∫(p(s) + √(p(s)/Tδx)) ds, with the
/// normalisation integral taken over the grid by the trapezoid rule.
///
/// For heavy tails (shape ≤ 2) the √p correction is not integrable over the
/// real line, so grid normalisation is the defining convention there, not an
/// approximation. A Gaussian reference whose grid truncates more than 1e-3
/// of probability mass is rejected as too narrow.
pub fn analytic_decision_weight_density(
    spec: &DistributionSpec,
    t_delta_x: f64,
    grid: &[f64],
) -> Result<Vec<f64>> {
    if !(t_delta_x > 0.0 && t_delta_x.is_finite()) {
        return Err(Error::Domain(format!(
            "Tδx must be a positive real, got {t_delta_x}"
        )));
    }
    check_sorted_grid(grid)?;
    if spec.family() == Family::Gaussian {
        let truncated = 1.0 - (spec.cdf(grid[grid.len() - 1]) - spec.cdf(grid[0]));
        if truncated > 1e-3 {
            return Err(Error::Domain(format!(
                "grid truncates {truncated:.2e} of the Gaussian mass (limit 1e-3); widen the range"
            )));
        }
    }
    let raw: Vec<f64> = grid
        .iter()
        .map(|&x| {
            let p = spec.pdf(x);
            p + (p / t_delta_x).sqrt()
        })
        .collect();
    let norm = trapezoid(grid, &raw);
    if !(norm > 0.0) {
        return Err(Error::Degenerate("zero weight mass over the grid".into()));
    }
    Ok(raw.into_iter().map(|v| v / norm).collect())
}

/// Relative errors ε/p per bin and their p-weighted mean ⟨ε/p⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct RelativeErrorDecomposition {
    /// ε_i/p_i, `None` for excluded (zero-density) bins.
    pub rel_errors: Vec<Option<f64>>,
    /// Expectation of the relative error with respect to the density p.
    pub weighted_mean: f64,
    /// Indices of bins excluded because p_i = 0.
    pub excluded_bins: Vec<usize>,
}

/// Decompose per-bin uncertainties into relative errors and their density-
/// weighted mean. The sign of (ε_i/p_i − ⟨ε/p⟩) matches the sign of
/// (w_i − p̂_i normalized) for weights built by [`decision_weights`].
pub fn relative_error_decomposition(
    p: &[f64],
    epsilon: &[f64],
) -> Result<RelativeErrorDecomposition> {
    if p.len() != epsilon.len() || p.is_empty() {
        return Err(Error::Domain("mismatched or empty input vectors".into()));
    }
    if p.iter().any(|v| !(*v >= 0.0)) || epsilon.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::Domain(
            "densities and errors must be non-negative".into(),
        ));
    }
    let mut rel_errors = Vec::with_capacity(p.len());
    let mut excluded_bins = Vec::new();
    let mut eps_sum = 0.0;
    let mut p_sum = 0.0;
    for (i, (&pi, &ei)) in p.iter().zip(epsilon).enumerate() {
        if pi > 0.0 {
            rel_errors.push(Some(ei / pi));
            eps_sum += ei;
            p_sum += pi;
        } else {
            rel_errors.push(None);
            excluded_bins.push(i);
        }
    }
    if p_sum == 0.0 {
        return Err(Error::Degenerate(
            "no bins with positive density to decompose".into(),
        ));
    }
    // ⟨ε/p⟩ with respect to p: Σ p·(ε/p) / Σ p = Σ ε / Σ p (uniform bins)
    Ok(RelativeErrorDecomposition {
        rel_errors,
        weighted_mean: eps_sum / p_sum,
        excluded_bins,
    })
}

/// Pair the cumulative decision weights against the reference CDF of the
/// generating spec: points (F_p(edge), F_w(edge)) at the right edge of each
/// grid cell, with F_w the cumulative trapezoid of w.
pub fn analytic_cdf_map(
    spec: &DistributionSpec,
    t_delta_x: f64,
    grid: &[f64],
) -> Result<CdfMapCurve> {
    let w = analytic_decision_weight_density(spec, t_delta_x, grid)?;
    let mut points = Vec::with_capacity(grid.len());
    let mut fw = 0.0;
    points.push((spec.cdf(grid[0]), 0.0));
    for i in 1..grid.len() {
        fw += 0.5 * (w[i] + w[i - 1]) * (grid[i] - grid[i - 1]);
        points.push((spec.cdf(grid[i]), fw.clamp(0.0, 1.0)));
    }
    CdfMapCurve::new(
        points,
        spec.label(),
        format!("weights({}, Tdx={})", spec.label(), t_delta_x),
    )
}

/// Pair the cumulative decision weights against the decision maker's own
/// cumulative density estimate: points (Σ p̂·δx normalized, Σ w·δx) at bin
/// right edges. This is the curve a finite-sample simulation produces.
pub fn empirical_cdf_map(estimate: &DensityEstimate, weights: &[f64]) -> Result<CdfMapCurve> {
    if weights.len() != estimate.p_hat.len() {
        return Err(Error::Domain("weight vector length mismatch".into()));
    }
    let p_total: f64 = estimate.p_hat.iter().sum::<f64>() * estimate.bin_width;
    if !(p_total > 0.0) {
        return Err(Error::Degenerate("empty density estimate".into()));
    }
    let mut points = Vec::with_capacity(estimate.p_hat.len() + 1);
    points.push((0.0, 0.0));
    let mut fp = 0.0;
    let mut fw = 0.0;
    for i in 0..estimate.p_hat.len() {
        fp += estimate.p_hat[i] * estimate.bin_width / p_total;
        fw += weights[i] * estimate.bin_width;
        points.push((fp.clamp(0.0, 1.0), fw.clamp(0.0, 1.0)));
    }
    CdfMapCurve::new(points, "estimated density", "decision weights")
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 1..x.len() {
        acc += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    acc
}

fn check_sorted_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::Domain("grid needs at least two points".into()));
    }
    for pair in grid.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(Error::Domain("grid must be strictly increasing".into()));
        }
    }
    Ok(())
}
