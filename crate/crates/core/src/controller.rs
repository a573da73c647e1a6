//! Simulator of the trigger/lighting board that alternates the light sources
//! once per camera trigger.
//!
//! Trigger `k` fires at `k / camera_rate` seconds and starts lighting phase
//! `k`. Even phases are Regular (or UV-off in ambient blink mode), odd phases
//! are UV, so pairs are always `(2i, 2i + 1)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::LightKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LightingMode {
    /// Regular and UV lights alternate; environmental light is controlled.
    DarkRoom,
    /// Only the UV light blinks; environmental light does the rest.
    AmbientBlink,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControllerConfig {
    /// Camera trigger rate in Hz.
    pub camera_rate: f64,
    /// Duty fraction of the regular light while it is on.
    pub regular_intensity: f64,
    /// Duty fraction of the UV light while it is on.
    pub uv_intensity: f64,
    pub mode: LightingMode,
    /// LED rise time between a phase switch and the start of exposure, ms.
    pub settle_ms: f64,
    /// Exposure length, ms; `None` exposes for the rest of the phase.
    pub exposure_ms: Option<f64>,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        ControllerConfig {
            camera_rate: 30.0,
            regular_intensity: 1.0,
            uv_intensity: 1.0,
            mode: LightingMode::DarkRoom,
            settle_ms: 1.0,
            exposure_ms: None,
        }
    }
}

impl ControllerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.camera_rate > 0.0 && self.camera_rate.is_finite()) {
            return Err(Error::invalid(format!(
                "camera rate must be positive, got {}",
                self.camera_rate
            )));
        }
        for (name, v) in [
            ("regular intensity", self.regular_intensity),
            ("uv intensity", self.uv_intensity),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(format!("{name} must be in [0, 1], got {v}")));
            }
        }
        if !(self.settle_ms >= 0.0 && self.settle_ms < self.period_ms()) {
            return Err(Error::invalid(format!(
                "settle delay {} ms does not fit in a {} ms phase",
                self.settle_ms,
                self.period_ms()
            )));
        }
        if let Some(e) = self.exposure_ms {
            if !(e > 0.0 && self.settle_ms + e <= self.period_ms()) {
                return Err(Error::invalid(format!(
                    "exposure {e} ms does not fit in the phase after settling"
                )));
            }
        }
        Ok(())
    }

    pub fn period_ms(&self) -> f64 {
        1000.0 / self.camera_rate
    }
}

/// Light and trigger state at the start of one lighting phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlSignals {
    pub t_ms: f64,
    pub regular_on: bool,
    pub uv_on: bool,
    pub camera_trigger: bool,
}

/// Number of whole phases that fit in `duration_ms`.
pub fn trigger_count(cfg: &ControllerConfig, duration_ms: u64) -> usize {
    // The small epsilon keeps exact multiples (30 Hz over 1000 ms) from
    // losing a trigger to floating-point error.
    (duration_ms as f64 * cfg.camera_rate / 1000.0 + 1e-9).floor() as usize
}

/// Lighting phase active at trigger `trigger_index`.
pub fn expected_light(_cfg: &ControllerConfig, trigger_index: u64) -> LightKind {
    if trigger_index.is_multiple_of(2) {
        LightKind::Regular
    } else {
        LightKind::Uv
    }
}

/// Phase-level schedule over `duration_ms`: one entry per trigger, only
/// phases that complete inside the duration are emitted.
pub fn schedule(cfg: &ControllerConfig, duration_ms: u64) -> Result<Vec<ControlSignals>> {
    cfg.validate()?;
    if duration_ms == 0 {
        return Err(Error::invalid("schedule duration must be positive"));
    }
    let n = trigger_count(cfg, duration_ms);
    let period = cfg.period_ms();
    Ok((0..n)
        .map(|k| {
            let uv = expected_light(cfg, k as u64) == LightKind::Uv;
            ControlSignals {
                t_ms: k as f64 * period,
                regular_on: cfg.mode == LightingMode::DarkRoom && !uv,
                uv_on: uv,
                camera_trigger: true,
            }
        })
        .collect())
}

/// Exposure window `(start, end)` in ms for trigger `k`.
pub fn exposure_window(cfg: &ControllerConfig, k: u64) -> (f64, f64) {
    let start = k as f64 * cfg.period_ms() + cfg.settle_ms;
    let end = match cfg.exposure_ms {
        Some(e) => start + e,
        None => (k + 1) as f64 * cfg.period_ms(),
    };
    (start, end)
}

/// Pairs formable from a schedule: one per (Regular, UV) phase couple.
pub fn pair_count(signals: &[ControlSignals]) -> usize {
    signals.iter().filter(|s| s.camera_trigger).count() / 2
}

/// Renders the schedule as `t_ms,regular,uv,trigger` lines (flags as 0/1).
pub fn to_csv(signals: &[ControlSignals]) -> String {
    let mut out = String::from("t_ms,regular,uv,trigger\n");
    for s in signals {
        let _ = writeln!(
            out,
            "{:.3},{},{},{}",
            s.t_ms, s.regular_on as u8, s.uv_on as u8, s.camera_trigger as u8
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(rate: f64, mode: LightingMode) -> ControllerConfig {
        ControllerConfig {
            camera_rate: rate,
            mode,
            settle_ms: 0.0,
            ..Default::default()
        }
    }

    #[test]
    fn thirty_hz_for_one_second() {
        let s = schedule(&cfg(30.0, LightingMode::DarkRoom), 1000).unwrap();
        assert_eq!(s.len(), 30);
        assert_eq!(s.iter().filter(|x| x.uv_on).count(), 15);
        assert_eq!(s.iter().filter(|x| x.regular_on).count(), 15);
        assert_eq!(pair_count(&s), 15);
    }

    #[test]
    fn shorter_than_one_period_is_empty() {
        let s = schedule(&cfg(30.0, LightingMode::DarkRoom), 20).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn two_hz_hand_enumerated() {
        let s = schedule(&cfg(2.0, LightingMode::DarkRoom), 3000).unwrap();
        let times: Vec<f64> = s.iter().map(|x| x.t_ms).collect();
        assert_eq!(times, vec![0.0, 500.0, 1000.0, 1500.0, 2000.0, 2500.0]);
        let phases: String = s.iter().map(|x| if x.uv_on { 'U' } else { 'R' }).collect();
        assert_eq!(phases, "RURURU");
        assert!(s.iter().all(|x| x.regular_on != x.uv_on));
    }

    #[test]
    fn expected_light_parity() {
        let dark = cfg(30.0, LightingMode::DarkRoom);
        let amb = cfg(30.0, LightingMode::AmbientBlink);
        assert_eq!(expected_light(&dark, 0), LightKind::Regular);
        assert_eq!(expected_light(&dark, 7), LightKind::Uv);
        assert_eq!(expected_light(&amb, 4), LightKind::Regular);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(matches!(
            schedule(&cfg(0.0, LightingMode::DarkRoom), 1000),
            Err(Error::InvalidArgument(_))
        ));
        assert!(schedule(&cfg(-5.0, LightingMode::DarkRoom), 1000).is_err());
        let mut c = cfg(30.0, LightingMode::DarkRoom);
        c.uv_intensity = 1.5;
        assert!(schedule(&c, 1000).is_err());
    }

    #[test]
    fn exposure_follows_settle_delay() {
        let c = ControllerConfig::default();
        let (s, e) = exposure_window(&c, 2);
        assert!((s - (2000.0 / 30.0 + 1.0)).abs() < 1e-9);
        assert!((e - 3000.0 / 30.0).abs() < 1e-9);
    }

    #[test]
    fn csv_format() {
        let s = schedule(&cfg(2.0, LightingMode::AmbientBlink), 1000).unwrap();
        assert_eq!(
            to_csv(&s),
            "t_ms,regular,uv,trigger\n0.000,0,0,1\n500.000,0,1,1\n"
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn schedule_properties(rate in 0.5f64..240.0, duration in 1u64..5000, ambient in any::<bool>()) {
            let mode = if ambient { LightingMode::AmbientBlink } else { LightingMode::DarkRoom };
            let c = cfg(rate, mode);
            let s = schedule(&c, duration).unwrap();
            prop_assert_eq!(&s, &schedule(&c, duration).unwrap());
            prop_assert_eq!(pair_count(&s), s.len() / 2);
            for (k, sig) in s.iter().enumerate() {
                prop_assert!(sig.camera_trigger);
                prop_assert_eq!(sig.uv_on, k % 2 == 1);
                match mode {
                    LightingMode::DarkRoom => prop_assert!(sig.regular_on != sig.uv_on),
                    LightingMode::AmbientBlink => prop_assert!(!sig.regular_on),
                }
                prop_assert!(sig.t_ms + c.period_ms() <= duration as f64 + 1e-6);
            }
        }
    }
}
