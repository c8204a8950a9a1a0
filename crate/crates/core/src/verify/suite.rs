//! Batch runs over a TOML configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crystal::{AlgebraType, CrystalModel, CrystalSpec, DEFAULT_MARGIN};
use crate::error::{Error, Result};
use crate::rep::Flavor;
use crate::scalar::QValue;

use super::engine::{CrystalCarrier, RelationReport, Summary};
use super::relations::{
    cartan_matches_expected, check_cartan, check_casimir, check_ladder, check_map, check_serre,
    Generators,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cartan,
    Ladder,
    Serre,
    Map,
    Casimir,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Cartan,
        Family::Ladder,
        Family::Serre,
        Family::Map,
        Family::Casimir,
    ];

    /// `map` compares the two flavors and has no classical-only form.
    fn has_classical(self) -> bool {
        self != Family::Map
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Cartan => "cartan",
            Family::Ladder => "ladder",
            Family::Serre => "serre",
            Family::Map => "map",
            Family::Casimir => "casimir",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation family {s:?}")))
    }
}

/// One model grid: every combination of `n` and `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelEntry {
    pub algebra: AlgebraType,
    pub n: Vec<usize>,
    pub lambda: Vec<u32>,
    /// Type C only; `None` means `lambda + 10`.
    pub cap: Option<u32>,
    pub q: Vec<QValue>,
    pub relations: Vec<Family>,
    /// Also run the classical forms of the families.
    pub classical: bool,
    pub margin: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub margin: u32,
    pub word_paths: bool,
    pub threads: Option<usize>,
    pub models: Vec<ModelEntry>,
}

/// The grid the acceptance run covers.
pub const DEFAULT_CONFIG: &str = r#"margin = 6
word_paths = true

[[model]]
type = "A"
n = [2, 3, 4]
lambda = [1, 2, 3, 4, 5]
q = ["1", "2", "1/2", "3/5"]
relations = ["cartan", "ladder", "serre", "map"]

[[model]]
type = "C"
n = [1, 2, 3]
lambda = [0, 1, 2, 3]
q = ["1", "2", "1/2", "3/5"]
relations = ["cartan", "ladder", "serre", "map"]

[[model]]
type = "A"
n = 2
lambda = [1, 2, 3, 4, 5, 6, 7, 8]
q = ["2", "1/2"]
relations = ["map", "casimir"]
classical = false
"#;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    margin: Option<u32>,
    word_paths: Option<bool>,
    threads: Option<usize>,
    #[serde(default)]
    model: Vec<toml::Spanned<RawModel>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(rename = "type")]
    algebra: String,
    n: OneOrMany<usize>,
    lambda: OneOrMany<u32>,
    cap: Option<u32>,
    #[serde(default)]
    q: Vec<String>,
    #[serde(default)]
    relations: Vec<String>,
    classical: Option<bool>,
    margin: Option<u32>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config {
            line: e.span().map(|s| line_of(text, s.start)).unwrap_or(0),
            message: e.message().to_string(),
        })?;
        let mut models = Vec::new();
        for spanned in raw.model {
            let line = line_of(text, spanned.span().start);
            let err = |message: String| Error::Config { line, message };
            let m = spanned.into_inner();
            let algebra: AlgebraType = m.algebra.parse().map_err(|e: Error| err(e.to_string()))?;
            let q =
                m.q.iter()
                    .map(|s| s.parse::<QValue>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| err(e.to_string()))?;
            let relations = m
                .relations
                .iter()
                .map(|s| s.parse::<Family>())
                .collect::<Result<Vec<_>>>()
                .map_err(|e| err(e.to_string()))?;
            let entry = ModelEntry {
                algebra,
                n: m.n.into_vec(),
                lambda: m.lambda.into_vec(),
                cap: m.cap,
                q,
                relations,
                classical: m.classical.unwrap_or(true),
                margin: m.margin,
            };
            for spec in entry.specs() {
                spec.validate().map_err(|e| err(e.to_string()))?;
            }
            models.push(entry);
        }
        Ok(SuiteConfig {
            margin: raw.margin.unwrap_or(DEFAULT_MARGIN),
            word_paths: raw.word_paths.unwrap_or(true),
            threads: raw.threads,
            models,
        })
    }

    pub fn default_suite() -> Self {
        Self::parse(DEFAULT_CONFIG).expect("built-in configuration parses")
    }
}

impl ModelEntry {
    pub fn specs(&self) -> Vec<CrystalSpec> {
        let mut out = Vec::new();
        for &n in &self.n {
            for &lambda in &self.lambda {
                out.push(match self.algebra {
                    AlgebraType::A => CrystalSpec::sl(n, lambda),
                    AlgebraType::C => CrystalSpec::sp(n, lambda, self.cap.unwrap_or(lambda + 10)),
                });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanCheck {
    pub spec: String,
    pub matches_expected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub summary: Summary,
    pub status: i32,
    pub cartan_tables: Vec<CartanCheck>,
    pub reports: Vec<RelationReport>,
}

impl SuiteOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("outcome serializes")
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("outcome serializes");
        s.push('\n');
        s
    }
}

struct Task {
    model: usize,
    flavor: usize,
    family: Family,
}

/// Runs every configured check. Reports come out in configuration order
/// regardless of scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        pool = pool.num_threads(t);
    }
    let pool = pool
        .build()
        .map_err(|e| Error::domain(format!("thread pool: {e}")))?;
    pool.install(|| run_inner(config))
}

fn run_inner(config: &SuiteConfig) -> Result<SuiteOutcome> {
    let mut models: Vec<(CrystalModel, u32)> = Vec::new();
    let mut flavors: Vec<(usize, Flavor)> = Vec::new();
    let mut tasks = Vec::new();
    for entry in &config.models {
        let margin = entry.margin.unwrap_or(config.margin);
        let families: BTreeSet<Family> = entry.relations.iter().copied().collect();
        for spec in entry.specs() {
            let model = CrystalModel::build(spec)?;
            let sl2 = model.spec().algebra == AlgebraType::A && model.spec().n == 2;
            let m = models.len();
            models.push((model, margin));
            let usable = |f: &Family| *f != Family::Casimir || sl2;
            if entry.classical && families.iter().any(|f| f.has_classical() && usable(f)) {
                let fl = flavors.len();
                flavors.push((m, Flavor::Classical));
                for &family in families.iter().filter(|f| f.has_classical() && usable(f)) {
                    tasks.push(Task {
                        model: m,
                        flavor: fl,
                        family,
                    });
                }
            }
            for q in &entry.q {
                let fl = flavors.len();
                flavors.push((m, Flavor::Deformed(q.clone())));
                for &family in families.iter().filter(|f| usable(f)) {
                    tasks.push(Task {
                        model: m,
                        flavor: fl,
                        family,
                    });
                }
            }
        }
    }

    let gens: Vec<Generators> = flavors
        .par_iter()
        .map(|(m, flavor)| Generators::build(&models[*m].0, flavor))
        .collect::<Result<_>>()?;

    let reports: Vec<RelationReport> = tasks
        .par_iter()
        .map(|task| {
            let (model, margin) = &models[task.model];
            let carrier = CrystalCarrier {
                model,
                margin: *margin,
                word_paths: config.word_paths,
            };
            let g = &gens[task.flavor];
            match task.family {
                Family::Cartan => Ok(check_cartan(&carrier, g)),
                Family::Ladder => Ok(check_ladder(&carrier, g)),
                Family::Serre => check_serre(&carrier, g),
                Family::Map => check_map(&carrier, &g.flavor.q()),
                Family::Casimir => check_casimir(&carrier, g),
            }
        })
        .collect::<Result<_>>()?;

    let cartan_tables: Vec<CartanCheck> = models
        .iter()
        .map(|(m, _)| CartanCheck {
            spec: m.spec().to_string(),
            matches_expected: cartan_matches_expected(m),
        })
        .collect();
    let mut summary = Summary::default();
    for r in &reports {
        summary.add(&r.summary);
    }
    let failed = summary.fail > 0 || cartan_tables.iter().any(|c| !c.matches_expected);
    Ok(SuiteOutcome {
        summary,
        status: i32::from(failed),
        cartan_tables,
        reports,
    })
}
