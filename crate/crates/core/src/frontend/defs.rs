use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::parser::{parse_formula_with, parse_prop};
use super::FrontendError;
use crate::syntax::{AutomatonDraft, Formula, PathAutomaton, TransitionLabel};

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct DefsFile {
    #[serde(default)]
    pub automata: BTreeMap<String, AutomatonDef>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct AutomatonDef {
    pub states: Vec<String>,
    pub start: String,
    #[serde(default)]
    pub accepting: Vec<String>,
    #[serde(default)]
    pub transitions: Vec<TransitionDef>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct TransitionDef {
    pub from: String,
    pub kind: Kind,
    pub formula: String,
    pub to: String,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub(crate) enum Kind {
    Future,
    Past,
    Test,
}

pub(crate) fn render_defs(file: &DefsFile) -> String {
    toml::to_string(file).expect("definitions serialize")
}

/// Named path automata, referenced from formulas as `@name`.
///
/// The file format is TOML:
///
/// ```toml
/// [automata.A]
/// states = ["s0", "s1"]
/// start = "s0"
/// accepting = ["s1"]
/// transitions = [
///   { from = "s0", kind = "future", formula = "p", to = "s1" },
///   { from = "s1", kind = "test", formula = "<@B> q", to = "s0" },
/// ]
/// ```
///
/// Test formulas may refer to other entries; cyclic references are rejected.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Definitions {
    automata: BTreeMap<String, PathAutomaton>,
}

impl Definitions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&PathAutomaton> {
        self.automata.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, a: PathAutomaton) {
        self.automata.insert(name.into(), a);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &PathAutomaton)> {
        self.automata.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.automata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.automata.is_empty()
    }

    pub fn from_toml(text: &str) -> Result<Self, FrontendError> {
        let file: DefsFile = toml::from_str(text).map_err(|e| FrontendError::Definitions(e.to_string()))?;
        let mut r = Resolution {
            raw: &file.automata,
            done: BTreeMap::new(),
            stack: Vec::new(),
        };
        for name in file.automata.keys() {
            r.resolve(name)?;
        }
        Ok(Definitions { automata: r.done })
    }
}

struct Resolution<'a> {
    raw: &'a BTreeMap<String, AutomatonDef>,
    done: BTreeMap<String, PathAutomaton>,
    stack: Vec<String>,
}

impl Resolution<'_> {
    fn resolve(&mut self, name: &str) -> Result<PathAutomaton, FrontendError> {
        if let Some(a) = self.done.get(name) {
            return Ok(a.clone());
        }
        let Some(def) = self.raw.get(name) else {
            return Err(FrontendError::UnknownAutomaton(name.to_string()));
        };
        if let Some(at) = self.stack.iter().position(|s| s == name) {
            let mut chain = self.stack[at..].to_vec();
            chain.push(name.to_string());
            return Err(FrontendError::Definitions(format!("cyclic reference {}", chain.join(" -> "))));
        }
        self.stack.push(name.to_string());
        let built = self.build(name, def);
        self.stack.pop();
        let a = built?;
        self.done.insert(name.to_string(), a.clone());
        Ok(a)
    }

    fn build(&mut self, name: &str, def: &AutomatonDef) -> Result<PathAutomaton, FrontendError> {
        let mut transitions = Vec::new();
        for (k, t) in def.transitions.iter().enumerate() {
            let wrap = |e: FrontendError| match e {
                FrontendError::Definitions(m) => FrontendError::Definitions(m),
                other => FrontendError::Definitions(format!("automaton {name}, transition {}: {other}", k + 1)),
            };
            let label = match t.kind {
                Kind::Future => TransitionLabel::Future(parse_prop(&t.formula).map_err(wrap)?),
                Kind::Past => TransitionLabel::Past(parse_prop(&t.formula).map_err(wrap)?),
                Kind::Test => {
                    let psi: Formula = parse_formula_with(&t.formula, &mut |n: &str| self.resolve(n)).map_err(wrap)?;
                    TransitionLabel::Test(psi)
                }
            };
            transitions.push((t.from.clone(), label, t.to.clone()));
        }
        let draft = AutomatonDraft {
            states: def.states.clone(),
            start: def.start.clone(),
            accepting: def.accepting.clone(),
            transitions,
        };
        draft.build().map_err(|vs| {
            let msgs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            FrontendError::Definitions(format!("automaton {name}: {}", msgs.join("; ")))
        })
    }
}

/// Parses a formula, resolving `@name` against `defs`.
pub fn parse_formula(text: &str, defs: &Definitions) -> Result<Formula, FrontendError> {
    parse_formula_with(text, &mut |name: &str| {
        defs.get(name)
            .cloned()
            .ok_or_else(|| FrontendError::UnknownAutomaton(name.to_string()))
    })
}
