use serde::{Deserialize, Serialize};

use crate::ratmath::SpectralVector;

use super::{Cone, ConeError, HRep, VRep};

/// Canonical JSON form of a cone: `{ "dim": n, "hrep": [[...]], "rays": [[...]] }`
/// with every rational written as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDocument {
    pub dim: usize,
    pub hrep: Vec<SpectralVector>,
    pub rays: Vec<SpectralVector>,
}

impl ConeDocument {
    pub fn cone_from_hrep(&self) -> Result<Cone, ConeError> {
        Cone::from_halfspaces(HRep::new(self.dim, self.hrep.clone())?)
    }

    pub fn cone_from_rays(&self) -> Result<Cone, ConeError> {
        Cone::from_rays(VRep::new(self.dim, self.rays.clone())?)
    }
}
