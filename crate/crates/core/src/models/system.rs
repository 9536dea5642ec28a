use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::specfun::MAX_ORDER;

/// Mass and squared charge in units with ħ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    mass: f64,
    charge_sq: f64,
}

impl PhysicalConstants {
    pub fn new(mass: f64, charge_sq: f64) -> Result<Self, ModelError> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(ModelError::InvalidModel(format!(
                "mass must be finite and positive, got {mass}"
            )));
        }
        if !(charge_sq.is_finite() && charge_sq >= 0.0) {
            return Err(ModelError::InvalidModel(format!(
                "charge squared must be finite and non-negative, got {charge_sq}"
            )));
        }
        Ok(Self { mass, charge_sq })
    }

    /// M = e² = 1, so the Bohr radius is 1 and energies are in units of Me⁴.
    pub fn atomic() -> Self {
        Self {
            mass: 1.0,
            charge_sq: 1.0,
        }
    }

    /// Uncharged particle of unit mass.
    pub fn neutral() -> Self {
        Self {
            mass: 1.0,
            charge_sq: 0.0,
        }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn charge_sq(&self) -> f64 {
        self.charge_sq
    }

    /// `a = 1/(M e²)`; `None` for a neutral particle.
    pub fn bohr_radius(&self) -> Option<f64> {
        (self.charge_sq > 0.0).then(|| 1.0 / (self.mass * self.charge_sq))
    }

    /// Hydrogen energy unit `M e⁴`.
    pub fn hartree(&self) -> f64 {
        self.mass * self.charge_sq * self.charge_sq
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    FreeSphere,
    HydrogenSphere,
    HydrogenCone,
}

impl ModelKind {
    pub fn label(&self) -> &'static str {
        match self {
            ModelKind::FreeSphere => "free",
            ModelKind::HydrogenSphere => "hydrogen",
            ModelKind::HydrogenCone => "cone",
        }
    }

    pub fn is_hydrogen(&self) -> bool {
        !matches!(self, ModelKind::FreeSphere)
    }
}

/// One radial problem: the system, its constants, the radius and the angular
/// quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialModel {
    kind: ModelKind,
    constants: PhysicalConstants,
    radius: f64,
    l: u32,
    m: i32,
    s: f64,
}

fn check_radius(radius: f64) -> Result<(), ModelError> {
    if radius.is_finite() && radius > 0.0 {
        Ok(())
    } else {
        Err(ModelError::InvalidModel(format!(
            "radius must be finite and positive, got {radius}"
        )))
    }
}

fn check_l(l: u32) -> Result<(), ModelError> {
    if l < MAX_ORDER {
        Ok(())
    } else {
        Err(ModelError::InvalidModel(format!(
            "angular momentum l = {l} exceeds the supported maximum {}",
            MAX_ORDER - 1
        )))
    }
}

impl RadialModel {
    /// Free particle of unit mass in a sphere.
    pub fn free_sphere(l: u32, radius: f64) -> Result<Self, ModelError> {
        check_l(l)?;
        check_radius(radius)?;
        Ok(Self {
            kind: ModelKind::FreeSphere,
            constants: PhysicalConstants::neutral(),
            radius,
            l,
            m: 0,
            s: 1.0,
        })
    }

    /// Hydrogen atom centred in a sphere, atomic constants.
    pub fn hydrogen_sphere(l: u32, radius: f64) -> Result<Self, ModelError> {
        check_l(l)?;
        check_radius(radius)?;
        Ok(Self {
            kind: ModelKind::HydrogenSphere,
            constants: PhysicalConstants::atomic(),
            radius,
            l,
            m: 0,
            s: 1.0,
        })
    }

    /// Two-dimensional hydrogen on a cone of scale factor `s`, atomic constants.
    pub fn hydrogen_cone(m: i32, s: f64, radius: f64) -> Result<Self, ModelError> {
        check_radius(radius)?;
        if !(s.is_finite() && s > 0.0 && s <= 1.0) {
            return Err(ModelError::InvalidModel(format!(
                "cone scale factor must lie in (0, 1], got {s}"
            )));
        }
        if (m.unsigned_abs() as f64) / s > 200.0 {
            return Err(ModelError::InvalidModel(format!(
                "|m|/s = {} is too large",
                m.unsigned_abs() as f64 / s
            )));
        }
        Ok(Self {
            kind: ModelKind::HydrogenCone,
            constants: PhysicalConstants::atomic(),
            radius,
            l: 0,
            m,
            s,
        })
    }

    /// Replaces the physical constants. Free models must stay neutral and
    /// hydrogen models must stay charged.
    pub fn with_constants(mut self, constants: PhysicalConstants) -> Result<Self, ModelError> {
        let charged = constants.charge_sq() > 0.0;
        if charged != self.kind.is_hydrogen() {
            return Err(ModelError::InvalidModel(format!(
                "{} model requires {} charge",
                self.kind.label(),
                if self.kind.is_hydrogen() {
                    "positive"
                } else {
                    "zero"
                }
            )));
        }
        self.constants = constants;
        Ok(self)
    }

    pub fn with_radius(mut self, radius: f64) -> Result<Self, ModelError> {
        check_radius(radius)?;
        self.radius = radius;
        Ok(self)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn constants(&self) -> PhysicalConstants {
        self.constants
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// The angular quantum number shown to users: l for spheres, m for cones.
    pub fn angular_label(&self) -> i64 {
        match self.kind {
            ModelKind::HydrogenCone => self.m as i64,
            _ => self.l as i64,
        }
    }

    /// Effective angular exponent: l on the sphere, |m|/s on the cone.
    pub fn lambda(&self) -> f64 {
        match self.kind {
            ModelKind::HydrogenCone => self.m.unsigned_abs() as f64 / self.s,
            _ => self.l as f64,
        }
    }

    /// Spatial dimension of the radial measure.
    pub fn dimension(&self) -> u32 {
        match self.kind {
            ModelKind::HydrogenCone => 2,
            _ => 3,
        }
    }

    /// Coefficient of 1/r² in the reduced radial operator: λ(λ + d − 2).
    pub fn centrifugal(&self) -> f64 {
        let lam = self.lambda();
        lam * (lam + self.dimension() as f64 - 2.0)
    }

    /// Angular factor of the measure: 1 on the sphere (4π folded into the
    /// amplitude), 2πs on the cone.
    pub fn angular_measure(&self) -> f64 {
        match self.kind {
            ModelKind::HydrogenCone => 2.0 * std::f64::consts::PI * self.s,
            _ => 1.0,
        }
    }

    /// Full radial measure density at r.
    pub fn measure(&self, r: f64) -> f64 {
        self.angular_measure() * r.powi(self.dimension() as i32 - 1)
    }

    /// Coulomb potential `−e²/r` (zero for the free particle).
    pub fn potential(&self, r: f64) -> f64 {
        -self.constants.charge_sq() / r
    }

    /// Typical energy spacing used to turn relative tolerances into absolute ones.
    pub fn energy_scale(&self) -> f64 {
        let kinetic = 1.0 / (2.0 * self.constants.mass() * self.radius * self.radius);
        if self.kind.is_hydrogen() {
            kinetic.min(self.constants.hartree())
        } else {
            kinetic
        }
    }

    /// Energy unit used for display: `π²/(2MR²)` for the free particle and
    /// `M e⁴` for hydrogen kinds.
    pub fn display_unit(&self) -> f64 {
        match self.kind {
            ModelKind::FreeSphere => {
                std::f64::consts::PI.powi(2)
                    / (2.0 * self.constants.mass() * self.radius * self.radius)
            }
            _ => self.constants.hartree(),
        }
    }

    /// Energy below which the regular bulk states thin out: the scan grid is
    /// uniform above this value and geometric below it, where only a wall state
    /// can live. 0 for the free particle.
    pub fn bulk_floor(&self) -> f64 {
        match self.kind {
            ModelKind::FreeSphere => 0.0,
            _ => {
                let nu_min = self.lambda() + (self.dimension() as f64 - 1.0) / 2.0;
                let e2 = self.constants.charge_sq();
                -1.5 * self.constants.hartree() / (2.0 * nu_min * nu_min) - 2.0 * e2 / self.radius
            }
        }
    }

    /// Rough count of half-oscillations of the regular solution at energy E
    /// (WKB phase divided by π).
    pub fn wkb_half_waves(&self, energy: f64) -> f64 {
        let n = 2000;
        let h = self.radius / n as f64;
        let two_m = 2.0 * self.constants.mass();
        let cent = self.centrifugal();
        let mut phase = 0.0;
        for i in 0..n {
            let r = (i as f64 + 0.5) * h;
            let k2 = two_m * (energy - self.potential(r)) - cent / (r * r);
            if k2 > 0.0 {
                phase += k2.sqrt() * h;
            }
        }
        phase / std::f64::consts::PI
    }

    /// Short descriptor such as `hydrogen l=0 R=4`.
    pub fn describe(&self) -> String {
        match self.kind {
            ModelKind::HydrogenCone => format!("cone m={} s={} R={}", self.m, self.s, self.radius),
            _ => format!("{} l={} R={}", self.kind.label(), self.l, self.radius),
        }
    }
}

/// An energy together with its active wave-number representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergyPoint {
    /// E > 0 with k = √(2ME).
    Oscillatory { energy: f64, k: f64 },
    /// E < 0 for the free particle with κ = √(−2ME).
    Evanescent { energy: f64, kappa: f64 },
    /// E < 0 for hydrogen kinds, `E = −Me⁴/(2ν²)`.
    Coulomb { energy: f64, nu: f64 },
    /// E = 0.
    Threshold,
}

impl EnergyPoint {
    pub fn new(model: &RadialModel, energy: f64) -> Result<Self, ModelError> {
        if !energy.is_finite() {
            return Err(ModelError::InvalidEnergy(energy));
        }
        let c = model.constants();
        Ok(if energy > 0.0 {
            EnergyPoint::Oscillatory {
                energy,
                k: (2.0 * c.mass() * energy).sqrt(),
            }
        } else if energy < 0.0 {
            if model.kind().is_hydrogen() {
                EnergyPoint::Coulomb {
                    energy,
                    nu: c.charge_sq() * (c.mass() / (-2.0 * energy)).sqrt(),
                }
            } else {
                EnergyPoint::Evanescent {
                    energy,
                    kappa: (-2.0 * c.mass() * energy).sqrt(),
                }
            }
        } else {
            EnergyPoint::Threshold
        })
    }

    /// Hydrogen energy for principal parameter ν.
    pub fn from_nu(model: &RadialModel, nu: f64) -> Result<Self, ModelError> {
        if !(nu.is_finite() && nu > 0.0) || !model.kind().is_hydrogen() {
            return Err(ModelError::InvalidEnergy(nu));
        }
        let c = model.constants();
        Ok(EnergyPoint::Coulomb {
            energy: -c.hartree() / (2.0 * nu * nu),
            nu,
        })
    }

    pub fn energy(&self) -> f64 {
        match *self {
            EnergyPoint::Oscillatory { energy, .. }
            | EnergyPoint::Evanescent { energy, .. }
            | EnergyPoint::Coulomb { energy, .. } => energy,
            EnergyPoint::Threshold => 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        assert!(RadialModel::free_sphere(0, 0.0).is_err());
        assert!(RadialModel::free_sphere(50, 1.0).is_err());
        assert!(RadialModel::hydrogen_cone(0, 0.0, 1.0).is_err());
        assert!(RadialModel::hydrogen_cone(0, 1.5, 1.0).is_err());
        assert!(PhysicalConstants::new(-1.0, 1.0).is_err());
        let free = RadialModel::free_sphere(1, 1.0).unwrap();
        assert!(free.with_constants(PhysicalConstants::atomic()).is_err());
    }

    #[test]
    fn cone_lambda_and_measure() {
        let c = RadialModel::hydrogen_cone(1, 0.5, 0.75).unwrap();
        assert_eq!(c.lambda(), 2.0);
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.centrifugal(), 4.0);
        assert!((c.angular_measure() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn energy_representations() {
        let h = RadialModel::hydrogen_sphere(0, 4.0).unwrap();
        match EnergyPoint::new(&h, -0.125).unwrap() {
            EnergyPoint::Coulomb { nu, .. } => assert!((nu - 2.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        let f = RadialModel::free_sphere(0, 1.0).unwrap();
        match EnergyPoint::new(&f, 2.0).unwrap() {
            EnergyPoint::Oscillatory { k, .. } => assert!((k - 2.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(EnergyPoint::new(&f, 0.0).unwrap(), EnergyPoint::Threshold);
        assert_eq!(EnergyPoint::from_nu(&h, 1.0).unwrap().energy(), -0.5);
    }

    #[test]
    fn bohr_radius() {
        assert_eq!(PhysicalConstants::atomic().bohr_radius(), Some(1.0));
        assert_eq!(PhysicalConstants::neutral().bohr_radius(), None);
    }
}
