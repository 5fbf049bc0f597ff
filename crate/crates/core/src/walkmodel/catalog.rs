//! Built-in models and the `Walk` bundle of derived data.

use std::sync::Arc;

use super::angle::{angle, AngleData};
use super::conformal::{validate_conformal, ConformalData, ConformalSource, UserConformal};
use super::group::{group_orbit, xroot_field, GroupData, DEFAULT_GROUP_CAP};
use super::kernel::Kernel;
use super::model::StepModel;
use crate::error::{Error, Result};
use crate::exactalg::{qf, MPoly, QuadExt, RatFun, Q};

pub const NAMES: [&str; 3] = ["simple", "tandem", "diagonal"];

/// A validated model with its kernel, angle, group and (optional) conformal data.
#[derive(Clone, Debug)]
pub struct Walk {
    model: StepModel,
    kernel: Kernel,
    angle: AngleData,
    group: GroupData,
    xext: Arc<QuadExt>,
    conformal: Option<ConformalData>,
}

impl Walk {
    pub fn new(model: StepModel, user: Option<UserConformal>, cap: usize) -> Result<Walk> {
        let kernel = Kernel::new(&model);
        let angle = angle(&model);
        let group = group_orbit(&kernel, cap)?;
        let xext = xroot_field(&kernel)?;
        let conformal = conformal_lookup(&model, &kernel, &angle, user)?;
        Ok(Walk {
            model,
            kernel,
            angle,
            group,
            xext,
            conformal,
        })
    }

    pub fn name(&self) -> &str {
        self.model.name()
    }

    pub fn model(&self) -> &StepModel {
        &self.model
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn angle(&self) -> &AngleData {
        &self.angle
    }

    pub fn group(&self) -> &GroupData {
        &self.group
    }

    /// `Q(y)(X_+)`, the field of the root in `x` of the kernel.
    pub fn xroot_field(&self) -> &Arc<QuadExt> {
        &self.xext
    }

    pub fn has_conformal(&self) -> bool {
        self.conformal.is_some()
    }

    pub fn conformal(&self) -> Result<&ConformalData> {
        self.conformal
            .as_ref()
            .ok_or_else(|| Error::NoConformalData(self.name().to_string()))
    }

    /// Integer `pi/theta`, from the conformal data or else from the angle.
    pub fn pi_over_theta(&self) -> Result<u32> {
        match (&self.conformal, self.angle.pi_over_theta) {
            (Some(c), _) => Ok(c.pi_over_theta),
            (None, Some(m)) => Ok(m),
            (None, None) => Err(Error::NonIntegerExponent),
        }
    }

    /// Same walk, with user conformal data attached.
    pub fn with_conformal(&self, user: UserConformal) -> Result<Walk> {
        Walk::new(
            self.model.clone(),
            Some(user),
            self.group.order().max(DEFAULT_GROUP_CAP),
        )
    }

    /// One-line description for listings.
    pub fn summary(&self) -> String {
        let pt = match self.angle.pi_over_theta {
            Some(m) => m.to_string(),
            None => format!("{:.6} (unrecognized)", self.angle.pi_over_theta_approx()),
        };
        let w = if self.has_conformal() {
            "ω available"
        } else {
            "ω REQUIRED"
        };
        format!(
            "{}: π/θ={pt}, group order {}, {w}",
            self.name(),
            self.group.order()
        )
    }
}

fn uniform(name: &str, steps: &[(i64, i64)]) -> StepModel {
    let w = qf(1, steps.len() as i64);
    StepModel::new(name, steps.iter().map(|&s| (s, w.clone()))).expect("catalog model")
}

pub fn catalog_model(name: &str) -> Result<StepModel> {
    match name {
        "simple" => Ok(uniform(name, &[(1, 0), (0, 1), (-1, 0), (0, -1)])),
        "tandem" => Ok(uniform(name, &[(1, 0), (0, -1), (-1, 1)])),
        "diagonal" => Ok(uniform(name, &[(1, 1), (1, -1), (-1, 1), (-1, -1)])),
        _ => Err(Error::UnknownModel(name.to_string())),
    }
}

/// Catalog name of a step set with the same steps and weights.
pub fn identify(model: &StepModel) -> Option<&'static str> {
    NAMES.into_iter().find(|n| {
        catalog_model(n)
            .map(|m| m.steps().eq(model.steps()))
            .unwrap_or(false)
    })
}

/// Stored `(omega, omega(X_+), pi/theta)` for catalog step sets with their exact weights.
fn catalog_omega(model: &StepModel) -> Option<(RatFun, RatFun, u32)> {
    let same = |name: &str| {
        catalog_model(name)
            .map(|m| m.steps().eq(model.steps()))
            .unwrap_or(false)
    };
    if same("simple") {
        // -2x/(1-x)^2 and 2y/(1-y)^2
        let den = |i: bool| {
            let t = |e: u32, c: i64| if i { (e, 0, c) } else { (0, e, c) };
            MPoly::from_int_terms(&[t(0, 1), t(1, -2), t(2, 1)])
        };
        let w = RatFun::new(MPoly::from_int_terms(&[(1, 0, -2)]), den(true)).unwrap();
        let wp = RatFun::new(MPoly::from_int_terms(&[(0, 1, 2)]), den(false)).unwrap();
        return Some((w, wp, 2));
    }
    if same("tandem") {
        // 27x^2/(4(x-1)^3) and -27y/(4(y-1)^3)
        let den = |i: bool| {
            let t = |e: u32, c: i64| if i { (e, 0, c) } else { (0, e, c) };
            MPoly::from_int_terms(&[t(0, -4), t(1, 12), t(2, -12), t(3, 4)])
        };
        let w = RatFun::new(MPoly::from_int_terms(&[(2, 0, 27)]), den(true)).unwrap();
        let wp = RatFun::new(MPoly::from_int_terms(&[(0, 1, -27)]), den(false)).unwrap();
        return Some((w, wp, 3));
    }
    None
}

/// Validated conformal data: user-supplied if given, else from the catalog, else none.
pub fn conformal_lookup(
    model: &StepModel,
    k: &Kernel,
    angle: &AngleData,
    user: Option<UserConformal>,
) -> Result<Option<ConformalData>> {
    if let Some(u) = user.filter(|u| u.omega.is_some()) {
        let pt = match (u.pi_over_theta, angle.pi_over_theta) {
            (Some(p), Some(m)) if p != m => {
                return Err(Error::PoleOrderMismatch {
                    expected: m,
                    found: p,
                })
            }
            (Some(p), _) => p,
            (None, Some(m)) => m,
            (None, None) => return Err(Error::NonIntegerExponent),
        };
        let omega = u.omega.unwrap();
        return validate_conformal(k, omega, u.omega_xplus, pt, ConformalSource::User).map(Some);
    }
    match catalog_omega(model) {
        Some((w, wp, pt)) => {
            validate_conformal(k, w, Some(wp), pt, ConformalSource::Catalog).map(Some)
        }
        None => Ok(None),
    }
}

pub fn walk(name: &str) -> Result<Walk> {
    Walk::new(catalog_model(name)?, None, DEFAULT_GROUP_CAP)
}

/// `(name, summary)` for every catalog entry.
pub fn listing() -> Vec<(String, String)> {
    NAMES
        .iter()
        .map(|n| (n.to_string(), walk(n).expect("catalog walk").summary()))
        .collect()
}

/// `K(0,0)` for the catalog models, used by tests and listings.
pub fn k00(name: &str) -> Result<Q> {
    Ok(walk(name)?.kernel().k00().clone())
}
