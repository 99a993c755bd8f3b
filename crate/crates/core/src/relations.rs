//! Named defining relations used by the verification suites, with overrides.

use std::collections::BTreeMap;

use crate::blowup::Flavor;
use crate::error::{Error, Result};
use crate::laurent::var_list;
use crate::Poly;

/// Names, variables and default text of every overridable relation.
const DEFAULTS: &[(&str, &[&str], &str)] = &[
    ("S", &["a", "b", "c"], "a*b*c - b^2 - c^2 - 1"),
    ("S-prime", &["xi", "delta", "eta"], "xi^2 - delta*eta^2 - 1"),
    ("BM", &["xi", "delta", "eta"], "xi^2 - delta*eta^2 - 1"),
    ("blowup-gg", &["u", "x", "T"], "T*x - u"),
    ("blowup-Gg", &["x", "z", "T"], "T*z^2 - T - x"),
    ("blowup-gG", &["y", "x", "T"], "T*x - y^2 + 1"),
    ("blowup-GG", &["y", "z", "T"], "T*z^2 - T - y^2 + 1"),
    ("blowup-GGv", &["t", "z", "T"], "T*z^2 - T - t + 1"),
];

#[derive(Debug, Clone)]
pub struct RelationSet {
    relations: BTreeMap<String, Poly>,
    overridden: Vec<String>,
}

impl Default for RelationSet {
    fn default() -> Self {
        let relations = DEFAULTS
            .iter()
            .map(|(n, v, s)| (n.to_string(), Poly::parse_in(s, &var_list(v)).expect("default relation parses")))
            .collect();
        RelationSet { relations, overridden: Vec::new() }
    }
}

impl RelationSet {
    /// Defaults with some relations replaced by the given polynomial texts.
    pub fn with_overrides(overrides: &BTreeMap<String, String>) -> Result<Self> {
        let mut set = Self::default();
        for (name, text) in overrides {
            let (_, vars, _) = DEFAULTS
                .iter()
                .find(|(n, _, _)| n == name)
                .ok_or_else(|| Error::Invalid(format!("unknown relation `{name}`")))?;
            let p = Poly::parse_in(text, &var_list(vars))?;
            set.relations.insert(name.clone(), p);
            set.overridden.push(name.clone());
        }
        Ok(set)
    }

    pub fn get(&self, name: &str) -> &Poly {
        &self.relations[name]
    }

    pub fn blowup(&self, flavor: Flavor) -> &Poly {
        self.get(&format!("blowup-{}", flavor.name()))
    }

    pub fn names() -> Vec<&'static str> {
        DEFAULTS.iter().map(|(n, _, _)| *n).collect()
    }

    pub fn overridden(&self) -> &[String] {
        &self.overridden
    }
}
