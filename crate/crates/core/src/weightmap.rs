//! Parametric weighting models and CDF-map construction.
//!
//! A weighting model maps a cumulative probability F_p to a cumulative
//! decision weight F_w. Plotting F_w against F_p produces the inverse-S
//! curve characteristic of probability weighting: above the diagonal at low
//! cumulative probability, below it at high. The same curve object is also
//! built numerically from any pair of distributions by evaluating both CDFs
//! on a shared grid.

use crate::dist::special::{inv_norm_cdf, std_norm_cdf};
use crate::dist::DistributionSpec;
use crate::error::{Error, Result};
use crate::io::format_sig12;

/// Model kind, in the fixed order used for batch fits and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    TverskyKahneman,
    Lattimore,
    GaussianMap,
    TMap,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::TverskyKahneman,
        ModelKind::Lattimore,
        ModelKind::GaussianMap,
        ModelKind::TMap,
    ];

    /// Short name used in CLI arguments and file names.
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::TverskyKahneman => "tk",
            ModelKind::Lattimore => "lattimore",
            ModelKind::GaussianMap => "gauss",
            ModelKind::TMap => "t",
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            ModelKind::TverskyKahneman => &["gamma"],
            ModelKind::Lattimore => &["delta", "gamma"],
            ModelKind::GaussianMap => &["mu", "sigma"],
            ModelKind::TMap => &["nu", "mu"],
        }
    }

    pub fn param_count(&self) -> usize {
        self.param_names().len()
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tk" => Ok(ModelKind::TverskyKahneman),
            "lattimore" => Ok(ModelKind::Lattimore),
            "gauss" => Ok(ModelKind::GaussianMap),
            "t" => Ok(ModelKind::TMap),
            other => Err(Error::Parse(format!(
                "unknown model kind '{other}' (expected tk, lattimore, gauss or t)"
            ))),
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A parametric map from cumulative probability to cumulative decision
/// weight. Every model fixes 0 ↦ 0 and 1 ↦ 1 and is continuous on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightingModel {
    /// Single-parameter power-ratio map; identity at γ = 1.
    TverskyKahneman { gamma: f64 },
    /// Two-parameter odds-ratio map; identity at δ = γ = 1.
    Lattimore { delta: f64, gamma: f64 },
    /// Gaussian quantile map Φ((Φ⁻¹(F_p) − μ)/σ); identity at μ = 0, σ = 1.
    GaussianMap { location: f64, scale: f64 },
    /// Student-t CDF (location μ, scale fixed at 1, shape ν) evaluated at
    /// the standard normal quantile of F_p.
    TMap { shape: f64, location: f64 },
}

impl WeightingModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            WeightingModel::TverskyKahneman { .. } => ModelKind::TverskyKahneman,
            WeightingModel::Lattimore { .. } => ModelKind::Lattimore,
            WeightingModel::GaussianMap { .. } => ModelKind::GaussianMap,
            WeightingModel::TMap { .. } => ModelKind::TMap,
        }
    }

    /// Parameters in the order reported by [`ModelKind::param_names`].
    pub fn params(&self) -> Vec<f64> {
        match *self {
            WeightingModel::TverskyKahneman { gamma } => vec![gamma],
            WeightingModel::Lattimore { delta, gamma } => vec![delta, gamma],
            WeightingModel::GaussianMap { location, scale } => vec![location, scale],
            WeightingModel::TMap { shape, location } => vec![shape, location],
        }
    }

    /// Build a model of the given kind from its parameter vector.
    pub fn from_params(kind: ModelKind, params: &[f64]) -> Result<Self> {
        if params.len() != kind.param_count() {
            return Err(Error::Domain(format!(
                "model '{kind}' takes {} parameter(s), got {}",
                kind.param_count(),
                params.len()
            )));
        }
        let model = match kind {
            ModelKind::TverskyKahneman => WeightingModel::TverskyKahneman { gamma: params[0] },
            ModelKind::Lattimore => WeightingModel::Lattimore {
                delta: params[0],
                gamma: params[1],
            },
            ModelKind::GaussianMap => WeightingModel::GaussianMap {
                location: params[0],
                scale: params[1],
            },
            ModelKind::TMap => WeightingModel::TMap {
                shape: params[0],
                location: params[1],
            },
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        match *self {
            WeightingModel::TverskyKahneman { gamma } => {
                if !ok(gamma) {
                    return Err(Error::Domain(format!("tk requires gamma > 0, got {gamma}")));
                }
            }
            WeightingModel::Lattimore { delta, gamma } => {
                if !ok(delta) || !ok(gamma) {
                    return Err(Error::Domain(format!(
                        "lattimore requires delta > 0 and gamma > 0, got ({delta}, {gamma})"
                    )));
                }
            }
            WeightingModel::GaussianMap { location, scale } => {
                if !location.is_finite() || !ok(scale) {
                    return Err(Error::Domain(format!(
                        "gauss map requires finite mu and sigma > 0, got ({location}, {scale})"
                    )));
                }
            }
            WeightingModel::TMap { shape, location } => {
                if !ok(shape) || !location.is_finite() {
                    return Err(Error::Domain(format!(
                        "t map requires nu > 0 and finite mu, got ({shape}, {location})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluate the map at fp ∈ [0, 1]; endpoints return 0 and 1 by the
    /// limit convention without evaluating interior formulas.
    pub fn evaluate(&self, fp: f64) -> Result<f64> {
        match *self {
            WeightingModel::TverskyKahneman { gamma } => tk_weight(fp, gamma),
            WeightingModel::Lattimore { delta, gamma } => lattimore_weight(fp, delta, gamma),
            WeightingModel::GaussianMap { location, scale } => gaussian_map(fp, location, scale),
            WeightingModel::TMap { shape, location } => t_map(fp, shape, location),
        }
    }

    /// Compact text form, e.g. `tk(0.65)` or `gauss(0.23,1.64)`.
    pub fn label(&self) -> String {
        match *self {
            WeightingModel::TverskyKahneman { gamma } => format!("tk({gamma})"),
            WeightingModel::Lattimore { delta, gamma } => format!("lattimore({delta},{gamma})"),
            WeightingModel::GaussianMap { location, scale } => {
                format!("gauss({location},{scale})")
            }
            WeightingModel::TMap { shape, location } => format!("t({shape},{location})"),
        }
    }
}

fn check_fp(fp: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&fp) {
        return Err(Error::Domain(format!(
            "cumulative probability must lie in [0, 1], got {fp}"
        )));
    }
    Ok(())
}

/// Power-ratio weighting map F_p^γ / [F_p^γ + (1−F_p)^γ]^{1/γ}.
pub fn tk_weight(fp: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Domain(format!("tk requires gamma > 0, got {gamma}")));
    }
    check_fp(fp)?;
    if fp == 0.0 || fp == 1.0 {
        return Ok(fp);
    }
    let u = fp.powf(gamma);
    let v = (1.0 - fp).powf(gamma);
    Ok(u / (u + v).powf(1.0 / gamma))
}

/// Odds-ratio weighting map δF_p^γ / (δF_p^γ + (1−F_p)^γ).
pub fn lattimore_weight(fp: f64, delta: f64, gamma: f64) -> Result<f64> {
    if !(delta > 0.0 && delta.is_finite() && gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Domain(format!(
            "lattimore requires delta > 0 and gamma > 0, got ({delta}, {gamma})"
        )));
    }
    check_fp(fp)?;
    if fp == 0.0 || fp == 1.0 {
        return Ok(fp);
    }
    let u = delta * fp.powf(gamma);
    Ok(u / (u + (1.0 - fp).powf(gamma)))
}

/// Gaussian quantile map Φ((Φ⁻¹(F_p) − μ)/σ).
///
/// Endpoints are returned by the limit convention (0 ↦ 0, 1 ↦ 1) since
/// Φ⁻¹ diverges there.
pub fn gaussian_map(fp: f64, location: f64, scale: f64) -> Result<f64> {
    if !(scale > 0.0 && scale.is_finite()) || !location.is_finite() {
        return Err(Error::Domain(format!(
            "gauss map requires finite mu and sigma > 0, got ({location}, {scale})"
        )));
    }
    check_fp(fp)?;
    if fp == 0.0 || fp == 1.0 {
        return Ok(fp);
    }
    Ok(std_norm_cdf((inv_norm_cdf(fp) - location) / scale))
}

/// Student-t map: CDF of a t variate (location μ, scale 1, shape ν)
/// evaluated at the standard normal quantile of F_p.
pub fn t_map(fp: f64, shape: f64, location: f64) -> Result<f64> {
    if !(shape > 0.0 && shape.is_finite()) || !location.is_finite() {
        return Err(Error::Domain(format!(
            "t map requires nu > 0 and finite mu, got ({shape}, {location})"
        )));
    }
    check_fp(fp)?;
    if fp == 0.0 || fp == 1.0 {
        return Ok(fp);
    }
    let t = DistributionSpec::student_t(location, 1.0, shape)?;
    Ok(t.cdf(inv_norm_cdf(fp)))
}

/// Closed-form decision-weight density as a function of probability density
/// for the Gaussian scale-ratio comparison:
/// w(p) = p^{1/α²} (2πσ²)^{(1−α²)/(2α²)} / α.
///
/// The density p must lie in the attainable range (0, 1/√(2πσ²)].
pub fn gaussian_pdf_map(p: f64, alpha: f64, sigma: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite() && sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!(
            "pdf map requires alpha > 0 and sigma > 0, got ({alpha}, {sigma})"
        )));
    }
    let two_pi_var = 2.0 * std::f64::consts::PI * sigma * sigma;
    let peak = 1.0 / two_pi_var.sqrt();
    if !(p > 0.0) || p > peak * (1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "density {p} outside the attainable range (0, {peak}] for sigma = {sigma}"
        )));
    }
    let a2 = alpha * alpha;
    Ok(p.powf(1.0 / a2) * two_pi_var.powf((1.0 - a2) / (2.0 * a2)) / alpha)
}

/// A sampled curve of (F_p, F_w) pairs: the inverse-S object.
///
/// Invariants: F_p strictly increasing across points, every F_w in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct CdfMapCurve {
    points: Vec<(f64, f64)>,
    do_label: String,
    dm_label: String,
}

impl CdfMapCurve {
    /// Build a curve from raw points. Consecutive points that tie in F_p
    /// (saturated tails, empty bins) are collapsed onto the last entry so
    /// the stored F_p sequence is strictly increasing.
    pub fn new(
        points: Vec<(f64, f64)>,
        do_label: impl Into<String>,
        dm_label: impl Into<String>,
    ) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Degenerate(
                "a CDF map curve needs at least two points".into(),
            ));
        }
        let mut cleaned: Vec<(f64, f64)> = Vec::with_capacity(points.len());
        for (fp, fw) in points {
            if !(0.0..=1.0).contains(&fp) || !(0.0..=1.0).contains(&fw) {
                return Err(Error::Domain(format!(
                    "curve point ({fp}, {fw}) lies outside the unit square"
                )));
            }
            match cleaned.last_mut() {
                Some(last) if last.0 == fp => *last = (fp, fw),
                Some(last) if last.0 > fp => {
                    return Err(Error::Domain(format!(
                        "F_p must be non-decreasing, got {fp} after {}",
                        last.0
                    )));
                }
                _ => cleaned.push((fp, fw)),
            }
        }
        if cleaned.len() < 2 {
            return Err(Error::Degenerate(
                "curve collapsed to fewer than two distinct F_p values".into(),
            ));
        }
        Ok(Self {
            points: cleaned,
            do_label: do_label.into(),
            dm_label: dm_label.into(),
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn do_label(&self) -> &str {
        &self.do_label
    }

    pub fn dm_label(&self) -> &str {
        &self.dm_label
    }

    /// Piecewise-linear interpolation of F_w at the given F_p, clamped to
    /// the curve's F_p range.
    pub fn interpolate_fw(&self, fp: f64) -> f64 {
        let pts = &self.points;
        if fp <= pts[0].0 {
            return pts[0].1;
        }
        if fp >= pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1;
        }
        let idx = pts.partition_point(|&(x, _)| x < fp);
        let (x0, y0) = pts[idx - 1];
        let (x1, y1) = pts[idx];
        y0 + (y1 - y0) * (fp - x0) / (x1 - x0)
    }

    /// Largest |F_w − F_p| over the sampled points.
    pub fn max_diagonal_gap(&self) -> f64 {
        self.points
            .iter()
            .map(|&(fp, fw)| (fw - fp).abs())
            .fold(0.0, f64::max)
    }

    /// Serialize as `fp,fw` CSV with 12 significant digits.
    pub fn write_csv<W: std::io::Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "fp,fw")?;
        for &(fp, fw) in &self.points {
            writeln!(out, "{},{}", format_sig12(fp), format_sig12(fw))?;
        }
        Ok(())
    }
}

/// Numeric CDF map for an arbitrary (DO, DM) distribution pair: evaluates
/// both CDFs on a shared x grid and pairs them pointwise.
///
/// The grid must be strictly increasing and span at least
/// [min(locations) − 8·max(scales), max(locations) + 8·max(scales)].
pub fn numeric_cdf_map(
    do_spec: &DistributionSpec,
    dm_spec: &DistributionSpec,
    grid: &[f64],
) -> Result<CdfMapCurve> {
    check_grid_sorted(grid)?;
    let max_scale = do_spec.scale().max(dm_spec.scale());
    let min_loc = do_spec.location().min(dm_spec.location());
    let max_loc = do_spec.location().max(dm_spec.location());
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    if lo > min_loc - 8.0 * max_scale || hi < max_loc + 8.0 * max_scale {
        return Err(Error::Domain(format!(
            "grid [{lo}, {hi}] does not span [{}, {}]",
            min_loc - 8.0 * max_scale,
            max_loc + 8.0 * max_scale
        )));
    }
    let points = grid
        .iter()
        .map(|&x| (do_spec.cdf(x), dm_spec.cdf(x)))
        .collect();
    CdfMapCurve::new(points, do_spec.label(), dm_spec.label())
}

/// Evaluate a weighting model pointwise over an increasing F_p grid.
/// Rejects parameter sets that produce a non-monotone curve.
pub fn model_cdf_map(model: &WeightingModel, fp_grid: &[f64]) -> Result<CdfMapCurve> {
    model.validate()?;
    check_grid_sorted(fp_grid)?;
    let mut points = Vec::with_capacity(fp_grid.len());
    for &fp in fp_grid {
        points.push((fp, model.evaluate(fp)?));
    }
    for pair in points.windows(2) {
        if pair[1].1 < pair[0].1 {
            return Err(Error::Domain(format!(
                "model {} is not monotone on the grid (F_w drops from {} to {} near F_p = {})",
                model.label(),
                pair[0].1,
                pair[1].1,
                pair[1].0
            )));
        }
    }
    CdfMapCurve::new(points, "identity", model.label())
}

/// Default evaluation grid for a distribution pair: 2001 points spanning
/// the locations extended by ±10 of the larger scale.
pub fn default_map_grid(do_spec: &DistributionSpec, dm_spec: &DistributionSpec) -> Vec<f64> {
    let max_scale = do_spec.scale().max(dm_spec.scale());
    let lo = do_spec.location().min(dm_spec.location()) - 10.0 * max_scale;
    let hi = do_spec.location().max(dm_spec.location()) + 10.0 * max_scale;
    linspace(lo, hi, 2001)
}

/// n evenly spaced values covering [lo, hi] inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && hi > lo);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + i as f64 * step
            }
        })
        .collect()
}

fn check_grid_sorted(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::Domain("grid needs at least two points".into()));
    }
    for pair in grid.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(Error::Domain(format!(
                "grid must be strictly increasing, got {} after {}",
                pair[1], pair[0]
            )));
        }
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("grid values must be finite".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tk_identity_and_endpoints() {
        assert!((tk_weight(0.3, 1.0).unwrap() - 0.3).abs() < 1e-15);
        for g in [0.3, 0.65, 1.0, 2.0] {
            assert_eq!(tk_weight(0.0, g).unwrap(), 0.0);
            assert_eq!(tk_weight(1.0, g).unwrap(), 1.0);
        }
        assert!(tk_weight(0.5, 0.0).is_err());
        assert!(tk_weight(0.5, -1.0).is_err());
        assert!(tk_weight(1.5, 1.0).is_err());
    }

    #[test]
    fn tk_frozen_value() {
        // mpmath, 50 digits, gamma = 0.65
        assert!((tk_weight(0.5, 0.65).unwrap() - 0.43877050748468021537).abs() < 1e-14);
    }

    #[test]
    fn tk_crossing_left_of_half_for_gamma_065() {
        // locate the interior fixed point by sign change
        let mut crossing = f64::NAN;
        let n = 10_000;
        let mut prev = tk_weight(1e-4, 0.65).unwrap() - 1e-4;
        for i in 1..n {
            let fp = 1e-4 + (0.9999 - 1e-4) * i as f64 / n as f64;
            let diff = tk_weight(fp, 0.65).unwrap() - fp;
            if prev > 0.0 && diff <= 0.0 {
                crossing = fp;
                break;
            }
            prev = diff;
        }
        assert!(crossing.is_finite(), "no interior crossing found");
        assert!(crossing < 0.5, "crossing {crossing} not left of 1/2");
        // brentq oracle gives 0.35867
        assert!((crossing - 0.3587).abs() < 2e-3);
    }

    #[test]
    fn lattimore_identity_and_symmetry() {
        assert!((lattimore_weight(0.7, 1.0, 1.0).unwrap() - 0.7).abs() < 1e-15);
        // at fp = 1/2 with delta = 1 the numerator is half the denominator
        for g in [0.3, 0.58, 1.0, 2.5] {
            assert!((lattimore_weight(0.5, 1.0, g).unwrap() - 0.5).abs() < 1e-15);
        }
        assert!(lattimore_weight(0.5, 0.0, 1.0).is_err());
        assert!(lattimore_weight(0.5, 1.0, -0.5).is_err());
    }

    #[test]
    fn lattimore_frozen_value() {
        // mpmath; delta = 0.67, gamma = 0.58
        assert!(
            (lattimore_weight(0.1, 0.67, 0.58).unwrap() - 0.15777625049392243957).abs() < 1e-14
        );
    }

    #[test]
    fn gaussian_map_identity_and_frozen_value() {
        assert!((gaussian_map(0.42, 0.0, 1.0).unwrap() - 0.42).abs() < 1e-12);
        assert!((gaussian_map(0.5, 0.0, 1.64).unwrap() - 0.5).abs() < 1e-14);
        // compose quantile/cdf oracles: mu = 0.23, sigma = 1.64
        let v = gaussian_map(0.1, 0.23, 1.64).unwrap();
        assert!((v - 0.17834833603912265656).abs() < 1e-12);
        assert!(v > 0.1);
        assert!(gaussian_map(0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn t_map_values() {
        for nu in [0.8, 1.27, 5.0] {
            assert!((t_map(0.5, nu, 0.0).unwrap() - 0.5).abs() < 1e-13);
        }
        // Gaussian-limit oracle: Phi(-0.4)
        let v = t_map(0.5, 1e6, 0.4).unwrap();
        assert!((v - 0.34457825838967583).abs() < 1e-6);
        // heavy-tail value stays above the diagonal at low fp
        let v = t_map(0.01, 1.27, 0.40).unwrap();
        assert!(v > 0.01);
        // scipy composition oracle
        assert!((v - 0.089470443293015).abs() < 1e-10);
        assert!(t_map(0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn endpoint_convention() {
        for model in [
            WeightingModel::TverskyKahneman { gamma: 0.65 },
            WeightingModel::Lattimore {
                delta: 0.67,
                gamma: 0.58,
            },
            WeightingModel::GaussianMap {
                location: 0.23,
                scale: 1.64,
            },
            WeightingModel::TMap {
                shape: 1.27,
                location: 0.40,
            },
        ] {
            assert_eq!(model.evaluate(0.0).unwrap(), 0.0);
            assert_eq!(model.evaluate(1.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn endpoint_approach() {
        // near-endpoint behaviour at the fitted parameters: the Gaussian map
        // approaches its endpoints within 1e-3 at fp = 1e-9; the power-law
        // tail of the t map converges much more slowly (exact value 0.032
        // at nu = 1.27), so only boundedness and monotone decay hold there
        let g = WeightingModel::GaussianMap {
            location: 0.23,
            scale: 1.64,
        };
        assert!(g.evaluate(1e-9).unwrap() < 1e-3);
        assert!(g.evaluate(1.0 - 1e-9).unwrap() > 1.0 - 1e-3);

        let t = WeightingModel::TMap {
            shape: 1.27,
            location: 0.40,
        };
        let near0 = t.evaluate(1e-9).unwrap();
        assert!(near0 > 0.0 && near0 < 0.04);
        assert!(near0 < t.evaluate(1e-6).unwrap());
        let near1 = t.evaluate(1.0 - 1e-9).unwrap();
        assert!(near1 > 0.96 && near1 < 1.0);

        // exact at the tied endpoints for the ratio models
        assert_eq!(tk_weight(1e-9, 0.65).unwrap() > 0.0, true);
        assert!(tk_weight(1e-9, 0.65).unwrap() < 1e-3);
        assert!(lattimore_weight(1e-9, 0.67, 0.58).unwrap() < 1e-3);
    }

    #[test]
    fn gaussian_pdf_map_power_law() {
        // alpha = 1 is the identity power law
        assert!((gaussian_pdf_map(0.2, 1.0, 1.0).unwrap() - 0.2).abs() < 1e-15);
        // alpha > 1 boosts small densities
        let small = 1e-4;
        assert!(gaussian_pdf_map(small, 2.0, 1.0).unwrap() > small);
        // out-of-range density rejected
        assert!(gaussian_pdf_map(0.5, 2.0, 1.0).is_err());
        assert!(gaussian_pdf_map(0.0, 2.0, 1.0).is_err());
        assert!(gaussian_pdf_map(0.1, 0.0, 1.0).is_err());
    }

    #[test]
    fn gaussian_pdf_map_matches_ratio_construction() {
        // eliminate x between the two Gaussian densities: w(p(x)) must equal
        // the wider Gaussian's density at the same x
        let do_spec = DistributionSpec::gaussian(0.3, 1.0).unwrap();
        let alpha = 2.0;
        let dm_spec = DistributionSpec::gaussian(0.3, alpha * 1.0).unwrap();
        for dx in [0.0, 1.0, -1.0, 2.0, -2.0] {
            let x = 0.3 + dx;
            let p = do_spec.pdf(x);
            let w = gaussian_pdf_map(p, alpha, 1.0).unwrap();
            let want = dm_spec.pdf(x);
            assert!(
                ((w - want) / want).abs() < 1e-10,
                "pdf map mismatch at x = {x}: {w} vs {want}"
            );
        }
    }

    #[test]
    fn numeric_map_identical_specs_is_diagonal() {
        let g = DistributionSpec::gaussian(0.0, 1.0).unwrap();
        let grid = default_map_grid(&g, &g);
        let curve = numeric_cdf_map(&g, &g, &grid).unwrap();
        for &(fp, fw) in curve.points() {
            assert_eq!(fp, fw);
        }
    }

    #[test]
    fn numeric_map_scale_ratio_inverse_s() {
        let do_spec = DistributionSpec::gaussian(0.0, 1.0).unwrap();
        let dm_spec = DistributionSpec::gaussian(0.0, 2.0).unwrap();
        let grid = default_map_grid(&do_spec, &dm_spec);
        let curve = numeric_cdf_map(&do_spec, &dm_spec, &grid).unwrap();
        assert!(curve.interpolate_fw(0.05) > 0.05);
        assert!(curve.interpolate_fw(0.95) < 0.95);
        // equal locations cross exactly at 1/2 (x = 0 is on the grid)
        let mid = curve
            .points()
            .iter()
            .find(|&&(fp, _)| fp == 0.5)
            .expect("grid contains the shared location");
        assert_eq!(mid.1, 0.5);
    }

    #[test]
    fn numeric_map_t_shapes() {
        // DO t(0.2, 1, 3), DM t(0.35, 1, 1): qualitative inverse-S
        let do_spec = DistributionSpec::student_t(0.2, 1.0, 3.0).unwrap();
        let dm_spec = DistributionSpec::student_t(0.35, 1.0, 1.0).unwrap();
        let grid = default_map_grid(&do_spec, &dm_spec);
        let curve = numeric_cdf_map(&do_spec, &dm_spec, &grid).unwrap();
        assert!(curve.interpolate_fw(0.05) > 0.05);
        assert!(curve.interpolate_fw(0.95) < 0.95);
    }

    #[test]
    fn numeric_map_rejects_narrow_grid() {
        let g1 = DistributionSpec::gaussian(0.0, 1.0).unwrap();
        let g2 = DistributionSpec::gaussian(0.0, 2.0).unwrap();
        let grid = linspace(-4.0, 4.0, 101);
        assert!(numeric_cdf_map(&g1, &g2, &grid).is_err());
        let unsorted = vec![-20.0, -19.0, -19.5, 20.0];
        assert!(numeric_cdf_map(&g1, &g2, &unsorted).is_err());
    }

    #[test]
    fn model_map_diagonal_and_similarity() {
        let grid = linspace(0.0, 1.0, 1001);
        let tk1 = model_cdf_map(&WeightingModel::TverskyKahneman { gamma: 1.0 }, &grid).unwrap();
        for &(fp, fw) in tk1.points() {
            assert!((fw - fp).abs() < 1e-12);
        }
        // tk(0.65) visually matches gauss(0.23, 1.64): pointwise gap < 0.05
        let tk = model_cdf_map(&WeightingModel::TverskyKahneman { gamma: 0.65 }, &grid).unwrap();
        let gm = model_cdf_map(
            &WeightingModel::GaussianMap {
                location: 0.23,
                scale: 1.64,
            },
            &grid,
        )
        .unwrap();
        let gap = tk
            .points()
            .iter()
            .zip(gm.points())
            .map(|(a, b)| (a.1 - b.1).abs())
            .fold(0.0, f64::max);
        assert!(gap < 0.05, "curve gap {gap}");
    }

    #[test]
    fn model_map_monotone_for_fitted_ranges() {
        let grid = linspace(1e-6, 1.0 - 1e-6, 10_000);
        for model in [
            WeightingModel::TverskyKahneman { gamma: 0.60 },
            WeightingModel::Lattimore {
                delta: 0.67,
                gamma: 0.58,
            },
            WeightingModel::GaussianMap {
                location: 0.38,
                scale: 1.60,
            },
            WeightingModel::TMap {
                shape: 1.27,
                location: 0.40,
            },
        ] {
            let curve = model_cdf_map(&model, &grid).unwrap();
            for pair in curve.points().windows(2) {
                assert!(
                    pair[1].1 > pair[0].1,
                    "{} not strictly increasing near fp = {}",
                    model.label(),
                    pair[1].0
                );
            }
        }
    }

    #[test]
    fn model_map_rejects_non_monotone_parameters() {
        // the power-ratio map loses monotonicity for very small gamma
        let grid = linspace(1e-4, 1.0 - 1e-4, 2001);
        let err = model_cdf_map(&WeightingModel::TverskyKahneman { gamma: 0.2 }, &grid);
        assert!(err.is_err(), "expected non-monotone diagnostic");
    }

    #[test]
    fn curve_collapses_ties_and_validates() {
        let pts = vec![(0.0, 0.0), (0.5, 0.4), (0.5, 0.45), (1.0, 1.0)];
        let curve = CdfMapCurve::new(pts, "a", "b").unwrap();
        assert_eq!(curve.points().len(), 3);
        assert_eq!(curve.points()[1], (0.5, 0.45));

        assert!(CdfMapCurve::new(vec![(0.0, 0.0)], "a", "b").is_err());
        assert!(CdfMapCurve::new(vec![(0.2, 0.0), (0.1, 1.0)], "a", "b").is_err());
        assert!(CdfMapCurve::new(vec![(0.0, -0.1), (1.0, 1.0)], "a", "b").is_err());
    }

    #[test]
    fn curve_csv_format() {
        let curve = CdfMapCurve::new(vec![(0.0, 0.0), (0.5, 0.43877), (1.0, 1.0)], "a", "b")
            .unwrap();
        let mut buf = Vec::new();
        curve.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("fp,fw"));
        assert_eq!(lines.next(), Some("0,0"));
        assert_eq!(lines.next(), Some("0.500000000000,0.438770000000"));
    }
}
