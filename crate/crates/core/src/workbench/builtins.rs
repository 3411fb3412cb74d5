//! Built-in scenarios.

use crate::error::{GgError, Result};

use super::scenario::{parse_scenario, Scenario};

pub struct Builtin {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub description: &'static str,
    source: &'static str,
}

pub const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "S1-flat-cosymplectic",
        aliases: &["S1"],
        description: "flat cosymplectic R3",
        source: include_str!("../../scenarios/S1-flat-cosymplectic.json"),
    },
    Builtin {
        name: "S2-sasakian-heisenberg",
        aliases: &["S2"],
        description: "Sasakian Heisenberg R3",
        source: include_str!("../../scenarios/S2-sasakian-heisenberg.json"),
    },
    Builtin {
        name: "S3-exp-deformation",
        aliases: &["S3"],
        description: "non-normal exp-deformation of S1",
        source: include_str!("../../scenarios/S3-exp-deformation.json"),
    },
    Builtin {
        name: "S4-sphere-in-C2",
        aliases: &["S4", "S6a"],
        description: "S3 in flat C2",
        source: include_str!("../../scenarios/S4-sphere-in-C2.json"),
    },
    Builtin {
        name: "S5-NxT2",
        aliases: &["S5"],
        description: "(2,1) structure on N x T2",
        source: include_str!("../../scenarios/S5-NxT2.json"),
    },
    Builtin {
        name: "S6b-hyperplane-in-C2",
        aliases: &["S6b"],
        description: "hyperplane in flat C2",
        source: include_str!("../../scenarios/S6b-hyperplane-in-C2.json"),
    },
];

impl Builtin {
    pub fn source(&self) -> &'static str {
        self.source
    }

    pub fn load(&self) -> Result<Scenario> {
        parse_scenario(self.source, self.name)
    }
}

pub fn find(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name || b.aliases.contains(&name))
}

pub fn builtin(name: &str) -> Result<Scenario> {
    find(name)
        .ok_or_else(|| GgError::Scenario { location: name.to_string(), msg: "no such built-in scenario".into() })?
        .load()
}
