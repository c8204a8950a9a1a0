use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::crystal::{Blocked, BoundaryClass, CrystalModel, Sign};
use crate::rep::{radical_json, LinOp};
use crate::scalar::{Radical, Rational};

/// What one factor of a word does to a basis state, as far as the carrier
/// space is concerned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    /// A single crystal move.
    Move(usize, Sign),
    /// A number-homogeneous Fock-space operator: changes the total
    /// occupation by `net`, passing through at most `peak` above the start.
    Level { net: i64, peak: i64 },
    /// Diagonal.
    Fixed,
}

/// A named operator together with its letter.
#[derive(Clone, Debug)]
pub struct Symbol {
    pub name: String,
    pub op: Arc<LinOp>,
    pub letter: Letter,
}

impl Symbol {
    pub fn new(name: impl Into<String>, op: LinOp, letter: Letter) -> Self {
        Symbol {
            name: name.into(),
            op: Arc::new(op),
            letter,
        }
    }
}

/// `coeff * word[0] ∘ word[1] ∘ ...`; the last factor acts first.
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Radical,
    pub word: Vec<Symbol>,
}

impl Term {
    pub fn new(coeff: Radical, word: Vec<Symbol>) -> Self {
        Term { coeff, word }
    }

    pub fn unit(word: Vec<Symbol>) -> Self {
        Term {
            coeff: Radical::one(),
            word,
        }
    }

    pub fn rational(c: Rational, word: Vec<Symbol>) -> Self {
        Term {
            coeff: Radical::from_rational(c),
            word,
        }
    }
}

/// The assertion `sum(terms) == 0`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub terms: Vec<Term>,
}

impl Relation {
    pub fn new(id: impl Into<String>, terms: Vec<Term>) -> Self {
        Relation {
            id: id.into(),
            terms,
        }
    }

    /// Terms for `[a, b]`.
    pub fn commutator_terms(a: &Symbol, b: &Symbol) -> Vec<Term> {
        vec![
            Term::unit(vec![a.clone(), b.clone()]),
            Term::new(-Radical::one(), vec![b.clone(), a.clone()]),
        ]
    }

    pub fn residual(&self, dim: usize) -> LinOp {
        let mut acc = LinOp::zero(dim);
        for term in &self.terms {
            let mut op = LinOp::identity(dim);
            for sym in term.word.iter().rev() {
                op = sym
                    .op
                    .compose(&op)
                    .expect("relation operands share the carrier");
            }
            acc = acc.add(&op.scale(&term.coeff)).expect("same dim");
        }
        acc
    }

    pub fn text(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let word: Vec<&str> = t.word.iter().map(|s| s.name.as_str()).collect();
                let c = if t.coeff.is_one() {
                    String::new()
                } else {
                    format!("({}) ", t.coeff)
                };
                format!("{c}{}", word.join(" "))
            })
            .collect();
        format!("{} == 0", parts.join(" + "))
    }
}

/// Outcome of following a word's letters from a basis state.
#[derive(Clone, Debug, Default)]
pub struct Walk {
    /// Some partial word leaves the materialized space.
    pub exits: bool,
    /// Visited states (ordinals), starting state first.
    pub path: Vec<usize>,
}

/// A finite basis on which relations are evaluated.
pub trait Carrier: Sync {
    fn dim(&self) -> usize;
    fn label(&self, idx: usize) -> Vec<i64>;
    /// Cap-margin or truncation-adjacent.
    fn flagged(&self, idx: usize) -> bool;
    /// Follows `word` right to left from `idx`.
    fn walk(&self, idx: usize, word: &[Letter]) -> Walk;
    fn descriptor(&self) -> String;
}

/// A crystal model with the margin used to flag cap-adjacent states.
pub struct CrystalCarrier<'a> {
    pub model: &'a CrystalModel,
    pub margin: u32,
    /// Word-path exit detection; when off, only the margin flags states.
    pub word_paths: bool,
}

impl<'a> CrystalCarrier<'a> {
    pub fn new(model: &'a CrystalModel, margin: u32) -> Self {
        CrystalCarrier {
            model,
            margin,
            word_paths: true,
        }
    }
}

impl Carrier for CrystalCarrier<'_> {
    fn dim(&self) -> usize {
        self.model.dim()
    }

    fn label(&self, idx: usize) -> Vec<i64> {
        self.model.state(idx).0.iter().map(|&l| l as i64).collect()
    }

    fn flagged(&self, idx: usize) -> bool {
        self.model
            .boundary_class(self.model.state(idx), self.margin)
            == BoundaryClass::CapMargin
    }

    fn walk(&self, idx: usize, word: &[Letter]) -> Walk {
        let mut walk = Walk {
            exits: false,
            path: vec![idx],
        };
        let mut current = self.model.state(idx).clone();
        for letter in word.iter().rev() {
            match letter {
                Letter::Move(node, sign) => match self.model.try_move(*node, *sign, &current) {
                    Ok(next) => {
                        walk.path
                            .push(self.model.index_of(&next).expect("image is materialized"));
                        current = next;
                    }
                    Err(Blocked::Negative) => break,
                    Err(Blocked::Cap) => {
                        walk.exits = self.word_paths;
                        break;
                    }
                },
                Letter::Fixed => {}
                Letter::Level { .. } => unreachable!("level letters belong to Fock carriers"),
            }
        }
        walk
    }

    fn descriptor(&self) -> String {
        self.model.spec().to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StateClass {
    Pass,
    Fail,
    Boundary,
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StateClass::Pass => "PASS",
            StateClass::Fail => "FAIL",
            StateClass::Boundary => "BOUNDARY",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateResult {
    pub state: Vec<i64>,
    pub residual_zero: bool,
    pub class: StateClass,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub boundary: usize,
}

impl Summary {
    pub fn add(&mut self, other: &Summary) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.boundary += other.boundary;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualEntry {
    pub target: Vec<i64>,
    pub coeff: serde_json::Value,
}

/// A failing `(state, relation)` pair with enough context to locate a
/// transcription error: the relation's word, the residual vector, and the
/// intermediate states of each term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub state: Vec<i64>,
    pub word: String,
    pub residual: Vec<ResidualEntry>,
    pub paths: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relation_id: String,
    pub flavor: String,
    pub spec: String,
    pub q: String,
    pub summary: Summary,
    pub failures: Vec<Failure>,
    pub boundary: Vec<StateResult>,
    #[serde(skip)]
    pub per_state: Vec<StateResult>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.boundary == 0
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Evaluates every relation on every basis state and classifies.
pub fn evaluate<C: Carrier + ?Sized>(
    carrier: &C,
    relation_id: &str,
    flavor: &str,
    q: &str,
    relations: &[Relation],
) -> RelationReport {
    let dim = carrier.dim();
    let residuals: Vec<LinOp> = relations.iter().map(|r| r.residual(dim)).collect();
    let letters: Vec<Vec<Vec<Letter>>> = relations
        .iter()
        .map(|r| {
            r.terms
                .iter()
                .map(|t| t.word.iter().map(|s| s.letter.clone()).collect())
                .collect()
        })
        .collect();

    let mut per_state = Vec::with_capacity(dim);
    let mut failures = Vec::new();
    let mut summary = Summary::default();
    for s in 0..dim {
        let flagged = carrier.flagged(s);
        let mut residual_zero = true;
        let mut genuine_failure = false;
        let mut any_boundary = flagged;
        for (r, relation) in relations.iter().enumerate() {
            let walks: Vec<Walk> = letters[r].iter().map(|w| carrier.walk(s, w)).collect();
            let boundary = flagged || walks.iter().any(|w| w.exits);
            any_boundary |= boundary;
            let column: Vec<(usize, &Radical)> = residuals[r].column(s).collect();
            if column.is_empty() {
                continue;
            }
            residual_zero = false;
            if !boundary {
                genuine_failure = true;
                failures.push(Failure {
                    state: carrier.label(s),
                    word: relation.text(),
                    residual: column
                        .iter()
                        .map(|(t, c)| ResidualEntry {
                            target: carrier.label(*t),
                            coeff: radical_json(c),
                        })
                        .collect(),
                    paths: walks
                        .iter()
                        .map(|w| w.path.iter().map(|&i| carrier.label(i)).collect())
                        .collect(),
                });
            }
        }
        let class = if genuine_failure {
            summary.fail += 1;
            StateClass::Fail
        } else if any_boundary {
            summary.boundary += 1;
            StateClass::Boundary
        } else {
            summary.pass += 1;
            StateClass::Pass
        };
        per_state.push(StateResult {
            state: carrier.label(s),
            residual_zero,
            class,
        });
    }
    let boundary = per_state
        .iter()
        .filter(|r| r.class == StateClass::Boundary)
        .cloned()
        .collect();
    RelationReport {
        relation_id: relation_id.to_string(),
        flavor: flavor.to_string(),
        spec: carrier.descriptor(),
        q: q.to_string(),
        summary,
        failures,
        boundary,
        per_state,
    }
}
