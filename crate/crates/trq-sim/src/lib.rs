//! Behavioral simulator and calibration toolkit for the analog-to-digital
//! conversion path of a ReRAM processing-in-memory DNN accelerator.
//!
//! The crate models the datapath from bit-sliced crossbar matrix-vector
//! products through SAR ADC conversion and shift-and-add merging, and
//! provides the twin-range quantizer, its compact output coding, per-layer
//! energy accounting, and an accuracy-constrained parameter search that
//! picks an ADC configuration per layer from calibration data.
//!
//! Module map:
//! - [`tensorio`]: on-disk formats for tensors, models, datasets, reports
//! - [`quant`]: uniform and twin-range quantizer reference arithmetic
//! - [`sar`]: cycle-level SAR ADC behavioral model and op counting
//! - [`xbar`]: crossbar tiling, bit-serial MVM, shift-and-add merge
//! - [`net`]: fixed-point inference executor and accuracy scoring
//! - [`calib`]: distribution profiling and parameter search
//! - [`energy`]: analytic A/D operation and energy accounting
//! - [`fixtures`]: deterministic synthetic models and datasets

pub mod calib;
pub mod energy;
pub mod fixtures;
pub mod net;
pub mod quant;
pub mod sar;
pub mod tensorio;
pub mod xbar;
