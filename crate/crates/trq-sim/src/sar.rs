//! Cycle-level behavioral model of the SAR ADC.
//!
//! Conversions are modeled as successive-approximation binary searches: the
//! index register starts at `(10..0)_2` and each comparator decision fixes
//! one bit, MSB to LSB. The comparator outputs 1 on exact threshold equality,
//! which makes every conversion bit-identical to the rounding quantizers in
//! [`crate::quant`]. Twin-range conversions prepend a detection phase (one
//! comparison when the R1 window starts at zero, two otherwise) and then run
//! a shortened search in the selected range.
//!
//! Each comparison is one A/D operation; uniform conversions always consume
//! exactly `k` of them, twin-range conversions `nu + n_r1` or `nu + n_r2`.

use crate::calib::DistributionProfile;
use crate::quant::{CodeWord, TrqParams};

/// Which stage of the conversion issued a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Range-membership pre-detection (twin-range mode only).
    Detect,
    /// Binary-search step.
    Search,
}

/// One comparator operation: the threshold tested (in step units of the
/// active range) and the comparator output bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub phase: Phase,
    pub threshold: f64,
    pub bit: bool,
}

/// ADC output word: a plain index in uniform mode, a range-tagged code word
/// in twin-range mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdcCode {
    Uniform { index: u32, width: u32 },
    Trq(CodeWord),
}

/// Result of one A/D conversion.
#[derive(Debug, Clone, PartialEq)]
pub struct ConversionResult {
    pub code: AdcCode,
    /// Decoded integer level: LSB units in uniform mode, Δ_R1 units in
    /// twin-range mode.
    pub decoded_level: u32,
    /// A/D operations consumed, detection phase included.
    pub ops: u32,
    pub trace: Vec<TraceStep>,
}

/// Runs the `k`-step binary search over `[0, 2^k)` in units of `unit`,
/// given the pre-scaled value `u = x / unit`. Thresholds sit at
/// `(candidate - 1/2) * unit`; the comparator bit is `u + 0.5 >= candidate`,
/// the same predicate the rounding quantizer evaluates.
fn binary_search(u: f64, k: u32, trace: &mut Vec<TraceStep>) -> u32 {
    let mut code = 0u32;
    for bit in (0..k).rev() {
        let candidate = code | (1u32 << bit);
        let d = u + 0.5 >= f64::from(candidate);
        if d {
            code = candidate;
        }
        trace.push(TraceStep {
            phase: Phase::Search,
            threshold: f64::from(candidate) - 0.5,
            bit: d,
        });
    }
    code
}

/// Uniform `k`-bit SAR conversion with step `lsb`.
///
/// Performs exactly `k` comparisons; the decoded level equals
/// `quant::uniform_quantize(x, k, lsb)` for all `x >= 0`.
pub fn convert_uniform(x: f64, k: u32, lsb: f64) -> ConversionResult {
    debug_assert!(k >= 1 && lsb > 0.0);
    let mut trace = Vec::with_capacity(k as usize);
    let index = binary_search(x / lsb, k, &mut trace);
    ConversionResult {
        code: AdcCode::Uniform { index, width: k },
        decoded_level: index,
        ops: k,
        trace,
    }
}

/// Twin-range SAR conversion.
///
/// Detection phase first: with `bias == 0` a single comparison against
/// theta; otherwise one against the window offset and one against theta.
/// An in-window sample then runs an `n_r1`-step search over the R1 window
/// with step Δ_R1; anything else runs an `n_r2`-step search on the coarse
/// Δ_R2 grid (the early-stopped remainder of the full-resolution search).
/// Code and decoded level match [`crate::quant::trq_quantize`] exactly.
pub fn convert_trq(x: f64, p: &TrqParams) -> ConversionResult {
    debug_assert!(x >= 0.0, "BL samples are nonnegative");
    let g = x / p.v_grid;
    let offset = p.offset_grid() as f64;
    let theta = p.theta_grid() as f64;
    let nu = p.detection_ops();
    let mut trace = Vec::with_capacity((nu + p.n_r1.max(p.n_r2)) as usize);

    let in_r1 = if p.bias == 0 {
        let above = g >= theta;
        trace.push(TraceStep { phase: Phase::Detect, threshold: theta, bit: above });
        !above
    } else {
        let ge_offset = g >= offset;
        trace.push(TraceStep { phase: Phase::Detect, threshold: offset, bit: ge_offset });
        let above = g >= theta;
        trace.push(TraceStep { phase: Phase::Detect, threshold: theta, bit: above });
        ge_offset && !above
    };

    let (code, decoded) = if in_r1 {
        let payload = binary_search((g - offset) / f64::from(p.delta_r1), p.n_r1, &mut trace);
        let code = CodeWord { msb: false, payload, width: p.n_r1 };
        (code, (p.bias << p.n_r1) | payload)
    } else {
        let payload = binary_search(g / f64::from(p.delta_r2()), p.n_r2, &mut trace);
        let code = CodeWord { msb: true, payload, width: p.n_r2 };
        (code, payload << p.m)
    };

    let ops = nu + if in_r1 { p.n_r1 } else { p.n_r2 };
    debug_assert_eq!(trace.len() as u32, ops);
    ConversionResult { code: AdcCode::Trq(code), decoded_level: decoded, ops, trace }
}

/// Total A/D operations over a profiled distribution under twin-range
/// parameters: `N * nu + sum_i n(i)` where `n(i)` is `n_r1` for samples in
/// the R1 window and `n_r2` otherwise. Computed from the histogram without
/// converting individual samples.
pub fn expected_ops(profile: &DistributionProfile, p: &TrqParams) -> u64 {
    let offset = p.offset_grid() as f64;
    let theta = p.theta_grid() as f64;
    let mut ops = profile.sample_count() * u64::from(p.detection_ops());
    for (level, count) in profile.occupied() {
        let g = f64::from(level) / p.v_grid;
        let bits = if g >= offset && g < theta { p.n_r1 } else { p.n_r2 };
        ops += count * u64::from(bits);
    }
    ops
}
