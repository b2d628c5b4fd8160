//! Propagation-delay comparison between an along-plane laser ISL path and
//! terrestrial fiber following the Earth's surface.
//!
//! Only one-way propagation delay is modeled; transmission, processing and
//! queuing delays are zero.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::fixed;
use crate::geometry::{arc_distance, chord_distance, SPEED_OF_LIGHT_KM_S};

/// Refractive index of Corning single-mode fiber at 1,310 nm.
pub const SMF_REFRACTIVE_INDEX: f64 = 1.4675;

/// Speed of light in a medium of refractive index `n`, km/s.
pub fn fiber_speed(n: f64) -> Result<f64> {
    if !(n.is_finite() && n >= 1.0) {
        return Err(Error::domain(format!("refractive index {n} must be >= 1")));
    }
    Ok(SPEED_OF_LIGHT_KM_S / n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MediumModel {
    pub name: String,
    pub refractive_index: f64,
    pub speed_km_s: f64,
}

impl MediumModel {
    pub fn new(name: impl Into<String>, refractive_index: f64) -> Result<Self> {
        Ok(Self {
            name: name.into(),
            refractive_index,
            speed_km_s: fiber_speed(refractive_index)?,
        })
    }

    pub fn single_mode_fiber() -> Self {
        Self::new("single-mode fiber", SMF_REFRACTIVE_INDEX).expect("n >= 1")
    }
}

/// Idealized chain of equally spaced satellites above a chain of fiber relays.
#[derive(Debug, Clone, PartialEq)]
pub struct UseCaseScenario {
    pub altitude_km: f64,
    pub earth_radius_km: f64,
    /// Angular spacing between consecutive satellites (and relay stations).
    pub per_hop_theta_deg: f64,
    /// Ground-to-ingress plus egress-to-ground distance.
    pub ingress_egress_km: f64,
    pub vacuum_speed_km_s: f64,
    pub fiber: MediumModel,
}

impl Default for UseCaseScenario {
    /// Starlink phase I shell at 550 km with the per-hop spacing rounded to
    /// 5.45° (the true spacing is 360/66 = 5.4545…°).
    fn default() -> Self {
        Self {
            altitude_km: 550.0,
            earth_radius_km: 6_378.0,
            per_hop_theta_deg: 5.45,
            ingress_egress_km: 1_100.0,
            vacuum_speed_km_s: SPEED_OF_LIGHT_KM_S,
            fiber: MediumModel::single_mode_fiber(),
        }
    }
}

/// Per-scenario overrides; absent fields keep the default scenario's value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UseCaseOverrides {
    pub per_hop_theta_deg: Option<f64>,
    pub ingress_egress_km: Option<f64>,
    pub fiber_refractive_index: Option<f64>,
}

impl UseCaseScenario {
    pub fn with_overrides(overrides: &UseCaseOverrides) -> Result<Self> {
        let mut s = Self::default();
        if let Some(t) = overrides.per_hop_theta_deg {
            s.per_hop_theta_deg = t;
        }
        if let Some(d) = overrides.ingress_egress_km {
            s.ingress_egress_km = d;
        }
        if let Some(n) = overrides.fiber_refractive_index {
            s.fiber = MediumModel::new("fiber", n)?;
        }
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("altitude_km", self.altitude_km),
            ("earth_radius_km", self.earth_radius_km),
            ("per_hop_theta_deg", self.per_hop_theta_deg),
            ("vacuum_speed_km_s", self.vacuum_speed_km_s),
            ("fiber speed", self.fiber.speed_km_s),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!("{name} = {v} must be > 0")));
            }
        }
        if !(self.ingress_egress_km.is_finite() && self.ingress_egress_km >= 0.0) {
            return Err(Error::domain("ingress_egress_km must be >= 0"));
        }
        Ok(())
    }

    pub fn orbit_radius_km(&self) -> f64 {
        self.earth_radius_km + self.altitude_km
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteLeg {
    pub hop_distance_km: f64,
    pub end_to_end_km: f64,
    pub latency_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerrestrialLeg {
    pub distance_km: f64,
    pub latency_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatencyRow {
    pub hops: u32,
    pub theta_deg: f64,
    pub sat_hop_distance_km: f64,
    pub sat_end_to_end_km: f64,
    pub sat_latency_ms: f64,
    pub terr_distance_km: f64,
    pub terr_latency_ms: f64,
}

fn check_hops(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::domain("hop count must be >= 1"))
    } else {
        Ok(())
    }
}

/// Path over `n_hops` consecutive satellites in one plane: the sum of per-hop
/// chords plus the fixed ground legs, at vacuum light speed.
pub fn satellite_row(n_hops: u32, scenario: &UseCaseScenario) -> Result<SatelliteLeg> {
    check_hops(n_hops)?;
    let per_hop = chord_distance(scenario.per_hop_theta_deg, scenario.orbit_radius_km())?;
    let hop_distance_km = f64::from(n_hops) * per_hop;
    let end_to_end_km = hop_distance_km + scenario.ingress_egress_km;
    Ok(SatelliteLeg {
        hop_distance_km,
        end_to_end_km,
        latency_ms: end_to_end_km / scenario.vacuum_speed_km_s * 1e3,
    })
}

/// Fiber along the surface arc spanning `n_hops` relay spacings.
pub fn terrestrial_row(n_hops: u32, scenario: &UseCaseScenario) -> Result<TerrestrialLeg> {
    check_hops(n_hops)?;
    let distance_km = arc_distance(f64::from(n_hops) * scenario.per_hop_theta_deg, scenario.earth_radius_km)?;
    Ok(TerrestrialLeg {
        distance_km,
        latency_ms: distance_km / scenario.fiber.speed_km_s * 1e3,
    })
}

pub fn comparison_table(max_hops: u32, scenario: &UseCaseScenario) -> Result<Vec<LatencyRow>> {
    check_hops(max_hops)?;
    scenario.validate()?;
    (1..=max_hops)
        .map(|n| {
            let sat = satellite_row(n, scenario)?;
            let terr = terrestrial_row(n, scenario)?;
            Ok(LatencyRow {
                hops: n,
                theta_deg: f64::from(n) * scenario.per_hop_theta_deg,
                sat_hop_distance_km: sat.hop_distance_km,
                sat_end_to_end_km: sat.end_to_end_km,
                sat_latency_ms: sat.latency_ms,
                terr_distance_km: terr.distance_km,
                terr_latency_ms: terr.latency_ms,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossover {
    pub first_winning_hops: u32,
    pub terrestrial_distance_km: f64,
}

/// Smallest hop count at which the satellite path has strictly lower latency.
///
/// The gap `sat(n) - terr(n)` is affine in `n`, so the answer follows from its
/// intercept and slope without scanning.
pub fn crossover(scenario: &UseCaseScenario) -> Result<Crossover> {
    scenario.validate()?;
    let gap = |n: u32| -> Result<f64> {
        Ok(satellite_row(n, scenario)?.latency_ms - terrestrial_row(n, scenario)?.latency_ms)
    };
    let (g1, g2) = (gap(1)?, gap(2)?);
    let slope = g2 - g1;
    if slope >= 0.0 && g1 >= 0.0 {
        return Err(Error::NoCrossover {
            fiber_km_s: scenario.fiber.speed_km_s,
            vacuum_km_s: scenario.vacuum_speed_km_s,
        });
    }
    let mut n = if g1 < 0.0 {
        1
    } else {
        // g1 + (n - 1) * slope < 0
        (1.0 + g1 / -slope).floor().max(1.0) as u32
    };
    // settle rounding at the boundary
    while n > 1 && gap(n - 1)? < 0.0 {
        n -= 1;
    }
    while gap(n)? >= 0.0 {
        n += 1;
    }
    Ok(Crossover {
        first_winning_hops: n,
        terrestrial_distance_km: terrestrial_row(n, scenario)?.distance_km,
    })
}

/// `hops,theta_deg,sat_hop_km,sat_e2e_km,sat_ms,terr_km,terr_ms` with
/// distances rounded to whole km and angles/latencies to 2 decimals.
pub fn write_table_csv<W: Write>(rows: &[LatencyRow], mut out: W) -> Result<()> {
    writeln!(out, "hops,theta_deg,sat_hop_km,sat_e2e_km,sat_ms,terr_km,terr_ms")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.hops,
            fixed(r.theta_deg, 2),
            fixed(r.sat_hop_distance_km, 0),
            fixed(r.sat_end_to_end_km, 0),
            fixed(r.sat_latency_ms, 2),
            fixed(r.terr_distance_km, 0),
            fixed(r.terr_latency_ms, 2),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;

    fn round2(x: f64) -> f64 {
        (x * 100.0).round() / 100.0
    }

    #[test]
    fn fiber_speed_examples() {
        assert_eq!(format!("{:.3}", fiber_speed(1.4675).unwrap()), "204287.876");
        assert_eq!(fiber_speed(1.0).unwrap(), 299_792.458);
        assert_relative_eq!(fiber_speed(1.5).unwrap(), 199_861.638_666_666_7, epsilon = 1e-6);
        assert!(fiber_speed(0.99).is_err());
        assert!(fiber_speed(f64::NAN).is_err());
    }

    #[test]
    fn satellite_rows() {
        let s = UseCaseScenario::default();
        let r1 = satellite_row(1, &s).unwrap();
        assert_eq!((r1.hop_distance_km.round(), r1.end_to_end_km.round()), (659.0, 1_759.0));
        assert_eq!(round2(r1.latency_ms), 5.87);
        let r5 = satellite_row(5, &s).unwrap();
        assert_eq!(
            (r5.hop_distance_km.round(), r5.end_to_end_km.round()),
            (3_294.0, 4_394.0)
        );
        assert_eq!(round2(r5.latency_ms), 14.66);
        let r10 = satellite_row(10, &s).unwrap();
        assert!((r10.hop_distance_km - 6_587.0).abs() <= 1.0);
        assert!((r10.end_to_end_km - 7_687.0).abs() <= 1.0);
        assert_eq!(round2(r10.latency_ms), 25.64);
        assert!(satellite_row(0, &s).is_err());
    }

    #[test]
    fn terrestrial_rows() {
        let s = UseCaseScenario::default();
        for (n, km, ms) in [(1, 607.0, 2.97), (5, 3_033.0, 14.85), (10, 6_067.0, 29.70)] {
            let r = terrestrial_row(n, &s).unwrap();
            assert_eq!(r.distance_km.round(), km);
            assert_eq!(round2(r.latency_ms), ms);
        }
    }

    #[test]
    fn table_shape() {
        let s = UseCaseScenario::default();
        assert_eq!(comparison_table(1, &s).unwrap().len(), 1);
        let rows = comparison_table(10, &s).unwrap();
        assert_eq!(rows.len(), 10);
        for r in &rows {
            assert_relative_eq!(r.sat_end_to_end_km, r.sat_hop_distance_km + 1_100.0, epsilon = 1e-9);
        }
        for w in rows.windows(2) {
            assert!(w[1].sat_latency_ms > w[0].sat_latency_ms);
            assert!(w[1].terr_latency_ms > w[0].terr_latency_ms);
        }
        assert!(comparison_table(0, &s).is_err());
    }

    #[test]
    fn zero_ingress_single_hop() {
        let s = UseCaseScenario {
            ingress_egress_km: 0.0,
            ..UseCaseScenario::default()
        };
        let r = comparison_table(1, &s).unwrap()[0];
        assert_eq!(round2(r.sat_latency_ms), 2.20);
        assert_eq!(crossover(&s).unwrap().first_winning_hops, 1);
    }

    #[test]
    fn crossover_default() {
        let c = crossover(&UseCaseScenario::default()).unwrap();
        assert_eq!(c.first_winning_hops, 5);
        assert_eq!(c.terrestrial_distance_km.round(), 3_033.0);
    }

    #[test]
    fn crossover_without_fiber_penalty() {
        let s = UseCaseScenario::with_overrides(&UseCaseOverrides {
            fiber_refractive_index: Some(1.0),
            ..Default::default()
        })
        .unwrap();
        assert!(matches!(crossover(&s), Err(Error::NoCrossover { .. })));
    }

    #[test]
    fn gap_is_affine_in_hops() {
        let s = UseCaseScenario::default();
        let gap = |n| satellite_row(n, &s).unwrap().latency_ms - terrestrial_row(n, &s).unwrap().latency_ms;
        let (g1, g2, g3) = (gap(1), gap(2), gap(3));
        assert!(((g3 - g2) - (g2 - g1)).abs() < 1e-12);
    }

    #[test]
    fn zero_distance_is_zero_latency() {
        let s = UseCaseScenario {
            ingress_egress_km: 0.0,
            per_hop_theta_deg: 0.0,
            ..UseCaseScenario::default()
        };
        assert_eq!(satellite_row(3, &s).unwrap().latency_ms, 0.0);
        assert_eq!(terrestrial_row(3, &s).unwrap().latency_ms, 0.0);
    }

    #[test]
    fn csv_layout() {
        let rows = comparison_table(2, &UseCaseScenario::default()).unwrap();
        let mut buf = Vec::new();
        write_table_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "hops,theta_deg,sat_hop_km,sat_e2e_km,sat_ms,terr_km,terr_ms\n\
             1,5.45,659,1759,5.87,607,2.97\n\
             2,10.90,1317,2417,8.06,1213,5.94\n"
        );
    }

    #[test]
    fn overrides_validate() {
        assert!(UseCaseScenario::with_overrides(&UseCaseOverrides {
            ingress_egress_km: Some(-1.0),
            ..Default::default()
        })
        .is_err());
        assert!(UseCaseScenario::with_overrides(&UseCaseOverrides {
            fiber_refractive_index: Some(0.5),
            ..Default::default()
        })
        .is_err());
    }
}
