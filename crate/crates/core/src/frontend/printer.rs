use std::collections::HashMap;

use super::defs::{render_defs, AutomatonDef, DefsFile, Kind, TransitionDef};
use super::Definitions;
use crate::syntax::{Formula, PathAutomaton, PropFormula, TransitionLabel};

/// A formula in concrete syntax together with the definitions of the
/// automata it names.
#[derive(Clone, Debug)]
pub struct Printed {
    pub text: String,
    pub definitions: Definitions,
    pub definitions_toml: String,
}

pub fn print_prop(z: &PropFormula) -> String {
    z.to_string()
}

/// Prints `f`, naming each distinct automaton `@A0`, `@A1`, ... in order of
/// first occurrence. Parsing the text against the definitions gives back
/// `f` whenever `f` is itself the output of the parser.
pub fn print_formula(f: &Formula) -> Printed {
    let mut p = Printer::default();
    let text = p.formula(f);
    let mut file = DefsFile::default();
    let mut definitions = Definitions::new();
    for (name, a, def) in p.entries {
        definitions.insert(name.clone(), a);
        file.automata.insert(name, def);
    }
    Printed {
        text,
        definitions,
        definitions_toml: render_defs(&file),
    }
}

#[derive(Default)]
struct Printer {
    names: HashMap<PathAutomaton, String>,
    entries: Vec<(String, PathAutomaton, AutomatonDef)>,
}

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) | Formula::Prop(PropFormula::Or(..)) => 1,
        Formula::And(..) | Formula::Prop(PropFormula::And(..)) => 2,
        _ => 3,
    }
}

impl Printer {
    fn child(&mut self, f: &Formula, min: u8) -> String {
        let s = self.formula(f);
        if precedence(f) < min {
            format!("({s})")
        } else {
            s
        }
    }

    fn formula(&mut self, f: &Formula) -> String {
        match f {
            Formula::Prop(z) => print_prop(z),
            Formula::Not(g) => format!("!{}", self.child(g, 3)),
            Formula::And(a, b) => format!("{} & {}", self.child(a, 2), self.child(b, 3)),
            Formula::Or(a, b) => format!("{} | {}", self.child(a, 1), self.child(b, 2)),
            Formula::Diamond(a, g) => {
                let name = self.name(a);
                format!("<@{name}> {}", self.child(g, 3))
            }
            Formula::Box(a, g) => {
                let name = self.name(a);
                format!("[@{name}] {}", self.child(g, 3))
            }
        }
    }

    fn name(&mut self, a: &PathAutomaton) -> String {
        if let Some(n) = self.names.get(a) {
            return n.clone();
        }
        let name = format!("A{}", self.names.len());
        self.names.insert(a.clone(), name.clone());
        let transitions = a
            .transitions()
            .iter()
            .map(|t| {
                let (kind, formula) = match &t.label {
                    TransitionLabel::Future(z) => (Kind::Future, print_prop(z)),
                    TransitionLabel::Past(z) => (Kind::Past, print_prop(z)),
                    TransitionLabel::Test(psi) => (Kind::Test, self.formula(psi)),
                };
                TransitionDef {
                    from: a.state_name(t.from).to_string(),
                    kind,
                    formula,
                    to: a.state_name(t.to).to_string(),
                }
            })
            .collect();
        let def = AutomatonDef {
            states: a.states().to_vec(),
            start: a.state_name(a.start()).to_string(),
            accepting: a.accepting().iter().map(|&s| a.state_name(s).to_string()).collect(),
            transitions,
        };
        self.entries.push((name.clone(), a.clone(), def));
        name
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_formula;

    fn round_trip(text: &str) {
        let f = parse_formula(text, &Definitions::new()).unwrap();
        let printed = print_formula(&f);
        let defs = Definitions::from_toml(&printed.definitions_toml).unwrap();
        assert_eq!(defs, printed.definitions);
        assert_eq!(parse_formula(&printed.text, &defs).unwrap(), f, "{}", printed.text);
    }

    #[test]
    fn round_trips() {
        round_trip("p & !q | r");
        round_trip("p & (q | r)");
        round_trip("(p & q) & r");
        round_trip("p & (q & r)");
        round_trip("!(p | q)");
        round_trip("<p*> q & [back(p | !q); {<q> p}?] false");
        round_trip("<(p; q)* + eps> [{[true] r}?] (p | q)");
    }

    #[test]
    fn shared_automata_get_one_name() {
        let f = parse_formula("<p> q & [p] r", &Definitions::new()).unwrap();
        let printed = print_formula(&f);
        assert_eq!(printed.text, "<@A0> q & [@A0] r");
        assert_eq!(printed.definitions.len(), 1);
    }
}
