//! Earth-centered geometric primitives.
//!
//! Positions are kilometers in a non-rotating Earth-centered inertial frame.
//! Angles at the public boundary are degrees; trigonometry runs in radians.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, km/s (exact by SI definition).
pub const SPEED_OF_LIGHT_KM_S: f64 = 299_792.458;

/// Standard gravitational parameter of Earth (WGS-84), km^3/s^2.
pub const EARTH_MU_KM3_S2: f64 = 398_600.441_8;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    /// Unit vector, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Spherical Earth used for orbit radii and ISL occlusion.
///
/// Two presets exist because the latency comparison and the ISL range figure
/// are only consistent with different radii: [`EarthModel::USE_CASE`]
/// (R = 6,378 km) for the latency table and [`EarthModel::VISIBILITY`]
/// (R = 6,371 km, 80 km grazing height) which yields a 5,014 km maximum ISL
/// range at 550 km altitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EarthModel {
    pub radius_km: f64,
    /// Lowest altitude an ISL ray may graze before the atmosphere blocks it.
    pub occlusion_altitude_km: f64,
    pub gravitational_parameter_km3_s2: f64,
}

impl EarthModel {
    pub const USE_CASE: EarthModel = EarthModel {
        radius_km: 6_378.0,
        occlusion_altitude_km: 0.0,
        gravitational_parameter_km3_s2: EARTH_MU_KM3_S2,
    };

    pub const VISIBILITY: EarthModel = EarthModel {
        radius_km: 6_371.0,
        occlusion_altitude_km: 80.0,
        gravitational_parameter_km3_s2: EARTH_MU_KM3_S2,
    };

    pub fn new(radius_km: f64, occlusion_altitude_km: f64, mu_km3_s2: f64) -> Result<Self> {
        let model = Self {
            radius_km,
            occlusion_altitude_km,
            gravitational_parameter_km3_s2: mu_km3_s2,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius_km.is_finite() && self.radius_km > 0.0) {
            return Err(Error::domain(format!("earth radius {} must be > 0", self.radius_km)));
        }
        if !(self.occlusion_altitude_km.is_finite() && self.occlusion_altitude_km >= 0.0) {
            return Err(Error::domain(format!(
                "occlusion altitude {} must be >= 0",
                self.occlusion_altitude_km
            )));
        }
        if !(self.gravitational_parameter_km3_s2.is_finite() && self.gravitational_parameter_km3_s2 > 0.0) {
            return Err(Error::domain(format!(
                "gravitational parameter {} must be > 0",
                self.gravitational_parameter_km3_s2
            )));
        }
        Ok(())
    }

    /// Radius of the sphere an ISL segment must clear.
    pub fn occlusion_radius_km(&self) -> f64 {
        self.radius_km + self.occlusion_altitude_km
    }

    pub fn preset(name: &str) -> Option<EarthModel> {
        match name {
            "use-case" => Some(Self::USE_CASE),
            "visibility" => Some(Self::VISIBILITY),
            _ => None,
        }
    }
}

/// Straight-line length of a chord subtending `theta_deg` on a circle of `radius_km`.
pub fn chord_distance(theta_deg: f64, radius_km: f64) -> Result<f64> {
    if !(0.0..=360.0).contains(&theta_deg) {
        return Err(Error::domain(format!("chord angle {theta_deg} outside [0, 360]")));
    }
    check_radius(radius_km)?;
    Ok(2.0 * radius_km * (theta_deg.to_radians() / 2.0).sin())
}

/// Length of the arc subtending `theta_deg` on a circle of `radius_km`.
pub fn arc_distance(theta_deg: f64, radius_km: f64) -> Result<f64> {
    if !(theta_deg.is_finite() && theta_deg >= 0.0) {
        return Err(Error::domain(format!("arc angle {theta_deg} must be >= 0")));
    }
    check_radius(radius_km)?;
    Ok(2.0 * std::f64::consts::PI * radius_km * (theta_deg / 360.0))
}

fn check_radius(radius_km: f64) -> Result<()> {
    if radius_km.is_finite() && radius_km > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("radius {radius_km} must be > 0")))
    }
}

/// Smallest distance from the origin to any point of segment `a`–`b`.
pub(crate) fn segment_origin_distance(a: Vec3, b: Vec3) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return a.norm();
    }
    let t = (-a.dot(ab) / len2).clamp(0.0, 1.0);
    (a + ab * t).norm()
}

/// Whether the segment between two points clears the occlusion sphere.
pub fn line_of_sight(a: Vec3, b: Vec3, earth: &EarthModel) -> Result<bool> {
    let limit = earth.occlusion_radius_km();
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("non-finite endpoint"));
    }
    if a.norm() <= limit || b.norm() <= limit {
        return Err(Error::domain("endpoint inside the occlusion sphere"));
    }
    // Compare in a symmetric order so swapping endpoints cannot flip the result.
    let (p, q) = if (a.x, a.y, a.z) <= (b.x, b.y, b.z) {
        (a, b)
    } else {
        (b, a)
    };
    Ok(segment_origin_distance(p, q) > limit)
}

/// Longest ISL between two satellites at `altitude_km` whose ray just grazes
/// the occlusion sphere.
pub fn max_isl_range(altitude_km: f64, earth: &EarthModel) -> Result<f64> {
    if !(altitude_km.is_finite() && altitude_km >= earth.occlusion_altitude_km) {
        return Err(Error::domain(format!(
            "altitude {altitude_km} below occlusion altitude {}",
            earth.occlusion_altitude_km
        )));
    }
    let orbit = earth.radius_km + altitude_km;
    let graze = earth.occlusion_radius_km();
    Ok(2.0 * ((orbit - graze) * (orbit + graze)).sqrt())
}
