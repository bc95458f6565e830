//! Reference arithmetic for the ADC quantizers and the compact output code.
//!
//! Everything here is pure integer/float arithmetic with no notion of the
//! searching process; the SAR behavioral model in [`crate::sar`] is verified
//! against these functions. Level arithmetic is exact: representable levels
//! are integers in `delta_r1` grid units, and reals only enter through the
//! `x / v_grid` scaling at the boundary.

use serde::{Deserialize, Serialize};
use std::fmt;

// ── Errors ──────────────────────────────────────────────────────────────

/// Errors from quantizer parameter validation and code-word decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantError {
    /// Parameter set violates an invariant.
    InvalidParams(String),
    /// Code-word payload does not fit the width declared for its range.
    PayloadOutOfRange { msb: bool, payload: u32, width: u32 },
}

impl fmt::Display for QuantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParams(msg) => write!(f, "invalid quantizer params: {msg}"),
            Self::PayloadOutOfRange { msb, payload, width } => write!(
                f,
                "payload {payload} out of range for msb={} width {width}",
                u8::from(*msb)
            ),
        }
    }
}

impl std::error::Error for QuantError {}

// ── Uniform quantizer ───────────────────────────────────────────────────

/// `k`-bit uniform quantizer: `clamp(round_half_up(x / delta), 0, 2^k - 1)`.
///
/// Ties round up (`floor(x/delta + 0.5)`), matching a comparator that
/// outputs 1 on exact threshold equality. Returns the integer level; the
/// quantized value is `level * delta`.
pub fn uniform_quantize(x: f64, k: u32, delta: f64) -> u32 {
    debug_assert!(k >= 1, "uniform_quantize requires k >= 1");
    debug_assert!(delta > 0.0, "uniform_quantize requires delta > 0");
    let max = (1u64 << k) - 1;
    let level = (x / delta + 0.5).floor();
    if level < 0.0 {
        0
    } else if level > max as f64 {
        max as u32
    } else {
        level as u32
    }
}

// ── Twin-range parameters ───────────────────────────────────────────────

/// Complete per-layer twin-range ADC configuration.
///
/// `delta_r1` is the R1 step in grid units; the R2 step is derived as
/// `delta_r1 << m`. `bias` shifts R1 to the window
/// `[bias * 2^n_r1 * delta_r1, (bias + 1) * 2^n_r1 * delta_r1)`; with
/// `bias = 0` this is the plain `[0, theta)` narrow range. The analog value
/// of an integer grid level is `level * v_grid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrqParams {
    /// Payload bits for the narrow range R1 (0 disables R1 entirely).
    pub n_r1: u32,
    /// Payload bits for the wide range R2.
    pub n_r2: u32,
    /// R1 step in grid units.
    pub delta_r1: u32,
    /// Non-uniformity exponent: `delta_r2 = delta_r1 << m`.
    pub m: u32,
    /// R1 window index, `0 <= bias <= 2^m - 1`.
    pub bias: u32,
    /// Grid step in analog units.
    pub v_grid: f64,
}

impl TrqParams {
    /// Plain twin-range configuration with `bias = 0` and unit grid.
    pub fn new(n_r1: u32, n_r2: u32, delta_r1: u32, m: u32) -> Self {
        Self { n_r1, n_r2, delta_r1, m, bias: 0, v_grid: 1.0 }
    }

    pub fn validate(&self) -> Result<(), QuantError> {
        if self.n_r2 == 0 {
            return Err(QuantError::InvalidParams("n_r2 must be >= 1".into()));
        }
        if self.n_r1 > 15 || self.n_r2 > 15 || self.m > 15 {
            return Err(QuantError::InvalidParams("widths above 15 bits unsupported".into()));
        }
        if self.delta_r1 == 0 {
            return Err(QuantError::InvalidParams("delta_r1 must be positive".into()));
        }
        if self.bias > (1u32 << self.m) - 1 {
            return Err(QuantError::InvalidParams(format!(
                "bias {} exceeds 2^m - 1 = {}",
                self.bias,
                (1u32 << self.m) - 1
            )));
        }
        if !(self.v_grid > 0.0) {
            return Err(QuantError::InvalidParams("v_grid must be positive".into()));
        }
        Ok(())
    }

    /// R2 step in grid units (Δ_R2 = 2^m · Δ_R1).
    pub fn delta_r2(&self) -> u32 {
        self.delta_r1 << self.m
    }

    /// Lower edge of the R1 window in grid units: `bias * 2^n_r1 * delta_r1`.
    pub fn offset_grid(&self) -> u64 {
        (u64::from(self.bias) << self.n_r1) * u64::from(self.delta_r1)
    }

    /// Upper edge of the R1 window in grid units.
    ///
    /// With `n_r1 = 0` the window is empty (`theta == offset`): every sample
    /// routes to R2 and the grid contains R2 levels only.
    pub fn theta_grid(&self) -> u64 {
        self.offset_grid() + self.r1_span_grid()
    }

    fn r1_span_grid(&self) -> u64 {
        if self.n_r1 == 0 {
            0
        } else {
            (1u64 << self.n_r1) * u64::from(self.delta_r1)
        }
    }

    /// Detection comparisons per conversion: 1 when `bias == 0`, else 2.
    pub fn detection_ops(&self) -> u32 {
        if self.bias == 0 {
            1
        } else {
            2
        }
    }

    /// Largest representable R2 level in Δ_R1 units.
    pub fn r2_top_level(&self) -> u32 {
        ((1u32 << self.n_r2) - 1) << self.m
    }
}

// ── Output code ─────────────────────────────────────────────────────────

/// Compact ADC output word: a range flag plus an unsigned payload.
///
/// The flag bit is 0 for R1 and 1 for R2; `width` is the payload bit count
/// actually used (`n_r1` or `n_r2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeWord {
    pub msb: bool,
    pub payload: u32,
    pub width: u32,
}

impl CodeWord {
    /// Builds a code word, checking the payload against the declared width.
    pub fn new(msb: bool, payload: u32, p: &TrqParams) -> Result<Self, QuantError> {
        let width = if msb { p.n_r2 } else { p.n_r1 };
        if width == 0 && !msb {
            return Err(QuantError::PayloadOutOfRange { msb, payload, width });
        }
        if payload >= (1u32 << width) {
            return Err(QuantError::PayloadOutOfRange { msb, payload, width });
        }
        Ok(Self { msb, payload, width })
    }
}

// ── Twin-range quantizer ────────────────────────────────────────────────

/// Twin-range quantization of an analog value.
///
/// Range selection is half-open: `offset <= x/v_grid < theta` selects R1,
/// anything else (including values below the R1 window) selects R2. Returns
/// the code word and the decoded integer level in Δ_R1 units.
pub fn trq_quantize(x: f64, p: &TrqParams) -> (CodeWord, u32) {
    let g = x / p.v_grid;
    let offset = p.offset_grid() as f64;
    let theta = p.theta_grid() as f64;
    if g >= offset && g < theta {
        let payload = uniform_quantize(g - offset, p.n_r1, f64::from(p.delta_r1));
        let code = CodeWord { msb: false, payload, width: p.n_r1 };
        (code, (p.bias << p.n_r1) | payload)
    } else {
        let payload = uniform_quantize(g, p.n_r2, f64::from(p.delta_r2()));
        let code = CodeWord { msb: true, payload, width: p.n_r2 };
        (code, payload << p.m)
    }
}

/// Decodes a code word to its integer level in Δ_R1 units.
///
/// R2 payloads are shifted left by `m` to align with the R1 grid; R1
/// payloads have the bias index concatenated on the left. The range flag is
/// consumed here and carries no arithmetic value.
pub fn decode(code: &CodeWord, p: &TrqParams) -> Result<u32, QuantError> {
    let width = if code.msb { p.n_r2 } else { p.n_r1 };
    if (width == 0 && !code.msb) || code.payload >= (1u32 << width) {
        return Err(QuantError::PayloadOutOfRange {
            msb: code.msb,
            payload: code.payload,
            width,
        });
    }
    Ok(if code.msb {
        code.payload << p.m
    } else {
        (p.bias << p.n_r1) | code.payload
    })
}

/// All representable levels in Δ_R1 units, deduplicated and sorted.
///
/// Union of the R1 window `{bias·2^n_r1 + c}` and the R2 grid `{c·2^m}`.
pub fn grid_levels(p: &TrqParams) -> Vec<u32> {
    let mut levels: Vec<u32> = Vec::new();
    if p.n_r1 > 0 {
        let base = p.bias << p.n_r1;
        levels.extend((0..1u32 << p.n_r1).map(|c| base + c));
    }
    levels.extend((0..1u32 << p.n_r2).map(|c| c << p.m));
    levels.sort_unstable();
    levels.dedup();
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: select the range by the detection rule, then pick
    /// the nearest representable level of that range (ties go up).
    fn oracle_trq(x: f64, p: &TrqParams) -> (bool, u32) {
        let g = x / p.v_grid;
        let in_r1 = g >= p.offset_grid() as f64 && g < p.theta_grid() as f64;
        let levels: Vec<u32> = if in_r1 {
            let base = p.bias << p.n_r1;
            (0..1u32 << p.n_r1).map(|c| base + c).collect()
        } else {
            (0..1u32 << p.n_r2).map(|c| c << p.m).collect()
        };
        let best = levels
            .iter()
            .copied()
            .map(|l| {
                let v = f64::from(l) * f64::from(p.delta_r1);
                ((g - v).abs(), l)
            })
            .fold(None::<(f64, u32)>, |acc, (d, l)| match acc {
                None => Some((d, l)),
                // tie goes to the larger level (round half up)
                Some((bd, bl)) if d < bd || (d == bd && l > bl) => Some((d, l)),
                some => some,
            })
            .unwrap()
            .1;
        (!in_r1, best)
    }

    #[test]
    fn uniform_zero_maps_to_zero() {
        assert_eq!(uniform_quantize(0.0, 3, 1.0), 0);
    }

    #[test]
    fn uniform_clamps_at_top() {
        assert_eq!(uniform_quantize(300.0, 8, 1.0), 255);
    }

    #[test]
    fn uniform_ties_round_up() {
        assert_eq!(uniform_quantize(3.5, 3, 1.0), 4);
        assert_eq!(uniform_quantize(2.5, 3, 1.0), 3);
    }

    #[test]
    fn uniform_negative_clamps_to_zero() {
        assert_eq!(uniform_quantize(-2.0, 4, 1.0), 0);
    }

    #[test]
    fn trq_early_bird_in_r1() {
        // theta = 2; an R1 value resolves with a single payload bit
        let p = TrqParams::new(1, 2, 1, 1);
        let (code, level) = trq_quantize(1.2, &p);
        assert_eq!((code.msb, code.payload), (false, 1));
        assert_eq!(level, 1);
    }

    #[test]
    fn trq_r2_value_decodes_shifted() {
        let p = TrqParams::new(1, 2, 1, 1);
        let (code, level) = trq_quantize(5.6, &p);
        assert_eq!((code.msb, code.payload), (true, 3));
        assert_eq!(level, 6);
        assert_eq!(oracle_trq(5.6, &p), (true, 6));
    }

    #[test]
    fn trq_biased_window_concatenates() {
        // offset = 4, theta = 8
        let p = TrqParams { n_r1: 2, n_r2: 2, delta_r1: 1, m: 2, bias: 1, v_grid: 1.0 };
        p.validate().unwrap();
        let (code, level) = trq_quantize(5.0, &p);
        assert_eq!((code.msb, code.payload), (false, 1));
        assert_eq!(level, 5);
        assert_eq!(oracle_trq(5.0, &p), (false, 5));
    }

    #[test]
    fn trq_matches_oracle_on_dense_grid() {
        for n_r1 in 0..=3u32 {
            for n_r2 in 1..=3u32 {
                for m in 0..=2u32 {
                    for bias in [0, (1u32 << m) - 1] {
                        let p = TrqParams { n_r1, n_r2, delta_r1: 1, m, bias, v_grid: 1.0 };
                        p.validate().unwrap();
                        let top = p.r2_top_level().max(p.theta_grid() as u32) + 2;
                        let mut q = 0u32;
                        while q <= top * 4 {
                            let x = f64::from(q) * 0.25;
                            let (code, level) = trq_quantize(x, &p);
                            let (omsb, olevel) = oracle_trq(x, &p);
                            assert_eq!(
                                (code.msb, level),
                                (omsb, olevel),
                                "x={x} p={p:?}"
                            );
                            q += 1;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn decode_r2_shifts_left_by_m() {
        let p = TrqParams::new(2, 2, 1, 1);
        let code = CodeWord { msb: true, payload: 3, width: 2 };
        assert_eq!(decode(&code, &p).unwrap(), 6);
    }

    #[test]
    fn decode_r1_identity_without_bias() {
        let p = TrqParams::new(3, 3, 1, 0);
        let code = CodeWord { msb: false, payload: 5, width: 3 };
        assert_eq!(decode(&code, &p).unwrap(), 5);
    }

    #[test]
    fn decode_r1_concatenates_bias() {
        // (01|01)_2 = 5
        let p = TrqParams { n_r1: 2, n_r2: 2, delta_r1: 1, m: 2, bias: 1, v_grid: 1.0 };
        let code = CodeWord { msb: false, payload: 1, width: 2 };
        assert_eq!(decode(&code, &p).unwrap(), 5);
    }

    #[test]
    fn decode_rejects_oversized_payload() {
        let p = TrqParams::new(1, 2, 1, 1);
        let code = CodeWord { msb: false, payload: 2, width: 1 };
        assert!(matches!(
            decode(&code, &p),
            Err(QuantError::PayloadOutOfRange { .. })
        ));
    }

    #[test]
    fn grid_levels_unions_both_ranges() {
        let p = TrqParams::new(1, 2, 1, 1);
        assert_eq!(grid_levels(&p), vec![0, 1, 2, 4, 6]);
    }

    #[test]
    fn grid_levels_empty_r1() {
        let p = TrqParams::new(0, 2, 1, 1);
        assert_eq!(grid_levels(&p), vec![0, 2, 4, 6]);
    }

    #[test]
    fn grid_degenerates_to_uniform() {
        let p = TrqParams::new(3, 3, 1, 0);
        assert_eq!(grid_levels(&p), (0u32..8).collect::<Vec<_>>());
    }

    #[test]
    fn validate_rejects_bad_params() {
        assert!(TrqParams::new(1, 0, 1, 0).validate().is_err());
        assert!(TrqParams::new(1, 2, 0, 0).validate().is_err());
        let p = TrqParams { bias: 1, ..TrqParams::new(1, 2, 1, 0) };
        assert!(p.validate().is_err());
    }

    #[test]
    fn vgrid_scales_the_boundary() {
        let p = TrqParams { v_grid: 0.5, ..TrqParams::new(1, 2, 1, 1) };
        // analog 0.6 is grid 1.2 -> R1 payload 1
        let (code, level) = trq_quantize(0.6, &p);
        assert_eq!((code.msb, code.payload, level), (false, 1, 1));
    }
}
