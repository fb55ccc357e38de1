//! Run configuration read from TOML. Every number is an integer or an exact
//! rational written `p/q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupModel, ModelKind};
use crate::homology::TruncationSpec;
use crate::report::{de_q, ser_q};
use crate::scans::ScanSpec;
use crate::verify::{Suite, VerifyPlan};
use crate::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    #[serde(default = "defaults::degree_cap")]
    pub degree_cap: usize,
    #[serde(default = "defaults::weight_cap")]
    pub weight_cap: u32,
    #[serde(default = "defaults::rips")]
    pub rips: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constants {
    #[serde(serialize_with = "ser_q", deserialize_with = "de_q", default = "defaults::lambda0")]
    pub lambda0: Q,
    #[serde(serialize_with = "ser_q", deserialize_with = "de_q", default = "defaults::lambda1")]
    pub lambda1: Q,
    #[serde(default = "defaults::degree_cap_scan")]
    pub degree_cap: usize,
    #[serde(default = "defaults::weight_cap_scan")]
    pub weight_cap: u32,
    #[serde(default = "defaults::power_cap")]
    pub power_cap: u32,
    #[serde(default = "defaults::budget")]
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDemo {
    /// Words of the subset; the first is the base point.
    #[serde(default = "defaults::subset")]
    pub subset: Vec<String>,
    #[serde(default)]
    pub lambda: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelKind,
    /// Optional generator letters, one per factor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<String>,
    #[serde(default = "defaults::ball_radius")]
    pub ball_radius: u32,
    #[serde(default = "defaults::truncation")]
    pub truncation: Truncation,
    #[serde(default = "defaults::suites")]
    pub suites: Vec<Suite>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "defaults::out")]
    pub out: String,
    #[serde(default = "defaults::samples")]
    pub samples: usize,
    /// Infinite-order class words used by the splitting checks and scans.
    #[serde(default)]
    pub classes: Vec<String>,
    #[serde(default = "defaults::constants")]
    pub constants: Constants,
    #[serde(default = "defaults::tree")]
    pub tree: TreeDemo,
}

mod defaults {
    use super::*;

    pub fn degree_cap() -> usize {
        2
    }
    pub fn weight_cap() -> u32 {
        6
    }
    pub fn rips() -> u32 {
        4
    }
    pub fn ball_radius() -> u32 {
        4
    }
    pub fn truncation() -> Truncation {
        Truncation { degree_cap: degree_cap(), weight_cap: weight_cap(), rips: rips() }
    }
    pub fn suites() -> Vec<Suite> {
        vec![Suite::All]
    }
    pub fn out() -> String {
        "out".into()
    }
    pub fn samples() -> usize {
        200
    }
    pub fn lambda0() -> Q {
        Q::from_integer(2.into())
    }
    pub fn lambda1() -> Q {
        Q::new(5.into(), 4.into())
    }
    pub fn degree_cap_scan() -> usize {
        1
    }
    pub fn weight_cap_scan() -> u32 {
        4
    }
    pub fn power_cap() -> u32 {
        2
    }
    pub fn budget() -> usize {
        5000
    }
    pub fn constants() -> Constants {
        Constants {
            lambda0: lambda0(),
            lambda1: lambda1(),
            degree_cap: degree_cap_scan(),
            weight_cap: weight_cap_scan(),
            power_cap: power_cap(),
            budget: budget(),
        }
    }
    pub fn subset() -> Vec<String> {
        vec!["e".into()]
    }
    pub fn tree() -> TreeDemo {
        TreeDemo { subset: subset(), lambda: 0 }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let model = self.model()?;
        for w in self.classes.iter().chain(&self.tree.subset) {
            model.parse(w).map_err(|e| Error::Config(format!("word `{w}`: {e}")))?;
        }
        self.scan_spec().validate().map_err(|e| Error::Config(e.to_string()))?;
        if self.suites.is_empty() {
            return Err(Error::Config("no suites requested".into()));
        }
        Ok(())
    }

    pub fn model(&self) -> Result<GroupModel> {
        let m = GroupModel::new(self.model.clone()).map_err(|e| Error::Config(e.to_string()))?;
        match &self.names {
            Some(n) => m.with_names(&n.chars().collect::<Vec<_>>()).map_err(|e| Error::Config(e.to_string())),
            None => Ok(m),
        }
    }

    pub fn truncation_spec(&self) -> TruncationSpec {
        let t = &self.truncation;
        TruncationSpec { degree_cap: t.degree_cap, weight_cap: t.weight_cap, rips: t.rips }
    }

    pub fn scan_spec(&self) -> ScanSpec {
        let c = &self.constants;
        ScanSpec {
            degree_cap: c.degree_cap,
            weight_cap: c.weight_cap,
            seed: self.seed,
            budget: c.budget,
            lambda0: c.lambda0.clone(),
            lambda1: c.lambda1.clone(),
            rips: self.truncation.rips,
            power_cap: c.power_cap,
            classes: self.classes.clone(),
        }
    }

    pub fn verify_plan(&self) -> Result<VerifyPlan> {
        let model = self.model()?;
        let hyperbolic = self.classes.iter().map(|w| model.parse(w)).collect::<Result<_>>()?;
        Ok(VerifyPlan {
            seed: self.seed,
            ball_radius: self.ball_radius,
            samples: self.samples,
            truncation: self.truncation_spec(),
            scan: self.scan_spec(),
            hyperbolic,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
seed = 7
suites = ["operators", "homology"]
classes = ["b", "ab"]

[model]
kind = "free_group"
rank = 2

[truncation]
degree_cap = 2
weight_cap = 4
rips = 4

[constants]
lambda0 = "3"
lambda1 = "5/4"
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = RunConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.model, ModelKind::FreeGroup { rank: 2 });
        assert_eq!(cfg.constants.lambda1, Q::new(5.into(), 4.into()));
        assert_eq!(cfg.samples, 200);
        let again = RunConfig::parse(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(RunConfig::parse("seed = 1"), Err(Error::Config(_))));
        assert!(RunConfig::parse("[model]\nkind = \"free_group\"\nrank = 2\nbogus = 1").is_err());
        let bad_word = SAMPLE.replace("\"ab\"", "\"aq\"");
        assert!(RunConfig::parse(&bad_word).is_err());
        let bad_lambda = SAMPLE.replace("\"3\"", "\"1.5\"");
        assert!(RunConfig::parse(&bad_lambda).is_err());
    }

    #[test]
    fn cyclic_model_from_config() {
        let cfg = RunConfig::parse("[model]\nkind = \"finite_cyclic\"\norder = 3\n").unwrap();
        assert_eq!(cfg.model().unwrap().order_of_group(), Some(3));
    }
}
