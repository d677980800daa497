//! Canonical model configurations used by the verification suite, the CLI
//! examples, and the tests. Rate constants are scaled so reaction zones are
//! O(10) long in the nondimensional units (quiescent sound speed 1).

use crate::eos::EosModel;
use crate::profile::{upstream_from_mach, Profile, ProfileOpts};
use crate::Result;

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub model: EosModel,
    pub mach: f64,
    pub opts: ProfileOpts,
}

impl Fixture {
    pub fn build(&self) -> Result<Profile> {
        let up = upstream_from_mach(self.mach, &self.model)?;
        Profile::build(&up, &self.model, &self.opts)
    }
}

/// Frozen (inert) configuration: no heat release and a vanishing rate, so the
/// reaction-zone state is constant. Used for constant-coefficient oracles.
pub fn frozen() -> Fixture {
    Fixture {
        model: EosModel { gamma: 1.4, q: 0.0, e_act: 0.0, k_rate: 1e-12, r_gas: 1.0, s_ref: 0.0 },
        mach: 3.0,
        opts: ProfileOpts { x_max_cap: 10.0, ..Default::default() },
    }
}

/// Baseline exothermic configuration; profile type asserted in tests.
pub fn baseline() -> Fixture {
    Fixture {
        model: EosModel { gamma: 1.4, q: 2.0, e_act: 4.0, k_rate: 4.0, r_gas: 1.0, s_ref: 0.0 },
        mach: 3.5,
        opts: ProfileOpts::default(),
    }
}
