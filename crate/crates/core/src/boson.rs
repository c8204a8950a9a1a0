//! Truncated three-mode Fock spaces, standard and q-deformed bosons, and two
//! `so_q(3)` realizations built from them.
//!
//! Creation out of the cutoff gives zero; states at the cutoff are
//! truncation-adjacent and relation checks classify them BOUNDARY.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rep::LinOp;
use crate::scalar::{int, QValue, Radical};
use crate::verify::{
    evaluate, Carrier, Letter, Relation, RelationReport, StateClass, Symbol, Term, Walk,
};

pub const DEFAULT_CUTOFF: u32 = 8;

/// The three modes, labeled `1`, `0`, `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Plus,
    Zero,
    Minus,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Plus, Mode::Zero, Mode::Minus];

    pub fn label(self) -> i64 {
        match self {
            Mode::Plus => 1,
            Mode::Zero => 0,
            Mode::Minus => -1,
        }
    }

    fn slot(self) -> usize {
        match self {
            Mode::Plus => 0,
            Mode::Zero => 1,
            Mode::Minus => 2,
        }
    }
}

/// Occupations `(n_1, n_0, n_-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FockState(pub [u32; 3]);

impl FockState {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn occupation(&self, mode: Mode) -> u32 {
        self.0[mode.slot()]
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// All states with total occupation at most `cutoff`, ordered by total and
/// then lexicographically.
#[derive(Clone, Debug)]
pub struct FockSpace {
    cutoff: u32,
    states: Vec<FockState>,
    index: HashMap<FockState, usize>,
}

impl FockSpace {
    pub fn new(cutoff: u32) -> Self {
        let mut states = Vec::new();
        for total in 0..=cutoff {
            for a in 0..=total {
                for b in 0..=total - a {
                    states.push(FockState([a, b, total - a - b]));
                }
            }
        }
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        FockSpace {
            cutoff,
            states,
            index,
        }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[FockState] {
        &self.states
    }

    pub fn state(&self, idx: usize) -> &FockState {
        &self.states[idx]
    }

    pub fn index_of(&self, s: &FockState) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// A creation operator applied here leaves the space.
    pub fn truncation_adjacent(&self, idx: usize) -> bool {
        self.states[idx].total() == self.cutoff
    }

    /// Diagonal operator from a function of the state.
    fn diagonal<F: FnMut(&FockState) -> Radical>(&self, f: F) -> LinOp {
        LinOp::diagonal(self.states.iter().map(f).collect())
    }

    /// Shifts one occupation by `delta` with coefficient `coeff(n)` taken at
    /// the source occupation; targets outside the space give zero.
    fn ladder<F: FnMut(u32) -> Radical>(&self, mode: Mode, delta: i64, mut coeff: F) -> LinOp {
        let mut op = LinOp::zero(self.dim());
        for (i, s) in self.states.iter().enumerate() {
            let n = s.0[mode.slot()] as i64 + delta;
            if n < 0 {
                continue;
            }
            let mut t = *s;
            t.0[mode.slot()] = n as u32;
            if let Some(j) = self.index_of(&t) {
                op.insert(i, j, coeff(s.0[mode.slot()]));
            }
        }
        op
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BosonKind {
    Standard,
    QDeformed,
}

/// `(b, b^+, N)` for one mode.
#[derive(Clone, Debug)]
pub struct BosonOps {
    pub annihilator: LinOp,
    pub creator: LinOp,
    pub number: LinOp,
}

/// Standard: `b^+|n> = sqrt(n+1)|n+1>`. Q-deformed:
/// `b^+|n> = sqrt([n+1]_q)|n+1>`, so `b^+ b = [N]_q` and `b b^+ = [N+1]_q`.
pub fn boson_ops(space: &FockSpace, mode: Mode, kind: BosonKind, q: &QValue) -> BosonOps {
    let count = |n: i64| match kind {
        BosonKind::Standard => int(n),
        BosonKind::QDeformed => q.bracket(n),
    };
    BosonOps {
        annihilator: space.ladder(mode, -1, |n| Radical::sqrt_rat(&count(n as i64))),
        creator: space.ladder(mode, 1, |n| Radical::sqrt_rat(&count(n as i64 + 1))),
        number: space.diagonal(|s| Radical::from_int(s.occupation(mode) as i64)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Realization {
    /// Q-bosons with `q^N` and `sqrt(q^N + q^-N)` dressing.
    Vdj,
    /// Standard bosons with a deforming factor in the composite numbers.
    Paper,
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Realization::Vdj => write!(f, "vdj"),
            Realization::Paper => write!(f, "paper"),
        }
    }
}

impl FromStr for Realization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vdj" => Ok(Realization::Vdj),
            "paper" => Ok(Realization::Paper),
            _ => Err(Error::Parse(format!(
                "unknown realization {s:?}; expected vdj or paper"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct So3Generators {
    pub realization: Realization,
    pub q: QValue,
    pub plus: LinOp,
    pub minus: LinOp,
    pub zero: LinOp,
    /// Composite number operators, `paper` only.
    pub n1: Option<LinOp>,
    pub n2: Option<LinOp>,
    /// Largest rise in total occupation before each ladder finishes.
    plus_peak: i64,
    minus_peak: i64,
}

fn compose_all(ops: &[&LinOp]) -> LinOp {
    let mut acc = ops[ops.len() - 1].clone();
    for op in ops[..ops.len() - 1].iter().rev() {
        acc = op.compose(&acc).expect("same space");
    }
    acc
}

/// ```text
/// L+ = q^{N_-1} q^{-N_0/2} sqrt(q^{N_1} + q^{-N_1}) b1+ b0
///    + b0+ b-1 q^{N_1} q^{-N_0/2} sqrt(q^{N_-1} + q^{-N_-1})
/// L- = b0+ b1 q^{N_-1} q^{-N_0/2} sqrt(q^{N_1} + q^{-N_1})
///    + q^{N_1} q^{-N_0/2} sqrt(q^{N_-1} + q^{-N_-1}) b-1+ b0
/// L0 = N_1 - N_-1
/// ```
/// with q-bosons throughout.
pub fn vdj_so3(space: &FockSpace, q: &QValue) -> So3Generators {
    let [p, z, m] = Mode::ALL.map(|mode| boson_ops(space, mode, BosonKind::QDeformed, q));
    let dressing = |outer: Mode, root: Mode| {
        space.diagonal(|s| {
            let n_outer = s.occupation(outer) as i64;
            let n_zero = s.occupation(Mode::Zero) as i64;
            let n_root = s.occupation(root) as i64;
            Radical::sqrt_product(&[q.pow(-n_zero), q.pow(n_root) + q.pow(-n_root)])
                .scale(&q.pow(n_outer))
        })
    };
    let d1 = dressing(Mode::Minus, Mode::Plus);
    let d2 = dressing(Mode::Plus, Mode::Minus);
    let plus = compose_all(&[&d1, &p.creator, &z.annihilator])
        .add(&compose_all(&[&z.creator, &m.annihilator, &d2]))
        .expect("same space");
    let minus = compose_all(&[&z.creator, &p.annihilator, &d1])
        .add(&compose_all(&[&d2, &m.creator, &z.annihilator]))
        .expect("same space");
    let zero = p.number.sub(&m.number).expect("same space");
    So3Generators {
        realization: Realization::Vdj,
        q: q.clone(),
        plus,
        minus,
        zero,
        n1: None,
        n2: None,
        plus_peak: 0,
        minus_peak: 0,
    }
}

/// ```text
/// L+ = sqrt(2) (b1+ b0 + b0+ b-1) F
/// L- = F sqrt(2) (b1 b0+ + b0 b-1+)
/// L0 = (N1 - N2) / 2,  N1 = 2 b1+ b1 + b0+ b0,  N2 = 2 b-1+ b-1 + b0+ b0
/// F  = sqrt([N1+1]_q [N2]_q / ((N1+1) N2)),  F = 1 where N2 = 0
/// ```
/// with standard bosons.
pub fn paper_so3(space: &FockSpace, q: &QValue) -> So3Generators {
    let [p, z, m] = Mode::ALL.map(|mode| boson_ops(space, mode, BosonKind::Standard, q));
    let two = Radical::from_int(2);
    let np = compose_all(&[&p.creator, &p.annihilator]);
    let nz = compose_all(&[&z.creator, &z.annihilator]);
    let nm = compose_all(&[&m.creator, &m.annihilator]);
    let n1 = np.scale(&two).add(&nz).expect("same space");
    let n2 = nm.scale(&two).add(&nz).expect("same space");
    let eigen = |op: &LinOp, i: usize| -> i64 {
        let r = op
            .diagonal_entry(i)
            .as_rational()
            .expect("number operators are rational");
        i64::try_from(r.to_integer()).expect("small occupation")
    };
    let f = LinOp::diagonal(
        (0..space.dim())
            .map(|i| deform_entry(eigen(&n1, i) + 1, eigen(&n2, i), q))
            .collect(),
    );
    let sqrt2 = Radical::sqrt_rat(&int(2));
    let plus = compose_all(&[&p.creator, &z.annihilator])
        .add(&compose_all(&[&z.creator, &m.annihilator]))
        .expect("same space")
        .scale(&sqrt2)
        .compose(&f)
        .expect("same space");
    let minus = f
        .compose(
            &compose_all(&[&p.annihilator, &z.creator])
                .add(&compose_all(&[&z.annihilator, &m.creator]))
                .expect("same space")
                .scale(&sqrt2),
        )
        .expect("same space");
    let zero = n1
        .sub(&n2)
        .expect("same space")
        .scale_rational(&crate::scalar::rat(1, 2));
    So3Generators {
        realization: Realization::Paper,
        q: q.clone(),
        plus,
        minus,
        zero,
        n1: Some(n1),
        n2: Some(n2),
        plus_peak: 0,
        minus_peak: 1,
    }
}

/// `sqrt([a]_q [b]_q / (a b))`, or 1 when `a b = 0`.
fn deform_entry(a: i64, b: i64, q: &QValue) -> Radical {
    if a == 0 || b == 0 {
        return Radical::one();
    }
    Radical::sqrt_rat(&(q.bracket(a) * q.bracket(b) / int(a * b)))
}

pub fn build_so3(realization: Realization, space: &FockSpace, q: &QValue) -> So3Generators {
    match realization {
        Realization::Vdj => vdj_so3(space, q),
        Realization::Paper => paper_so3(space, q),
    }
}

/// The Fock space as a relation carrier.
pub struct FockCarrier<'a> {
    pub space: &'a FockSpace,
    pub label: String,
}

impl Carrier for FockCarrier<'_> {
    fn dim(&self) -> usize {
        self.space.dim()
    }

    fn label(&self, idx: usize) -> Vec<i64> {
        self.space.state(idx).0.iter().map(|&n| n as i64).collect()
    }

    fn flagged(&self, idx: usize) -> bool {
        self.space.truncation_adjacent(idx)
    }

    fn walk(&self, idx: usize, word: &[Letter]) -> Walk {
        let mut walk = Walk {
            exits: false,
            path: vec![idx],
        };
        let mut level = self.space.state(idx).total() as i64;
        let cutoff = self.space.cutoff() as i64;
        for letter in word.iter().rev() {
            match letter {
                Letter::Level { net, peak } => {
                    if level + peak > cutoff {
                        walk.exits = true;
                        break;
                    }
                    level += net;
                    if level < 0 {
                        break;
                    }
                }
                Letter::Fixed => {}
                Letter::Move(..) => unreachable!("crystal moves do not act on Fock states"),
            }
        }
        walk
    }

    fn descriptor(&self) -> String {
        self.label.clone()
    }
}

fn so3_relations(gens: &So3Generators, space: &FockSpace) -> Vec<Relation> {
    let plus = Symbol::new(
        "L+",
        gens.plus.clone(),
        Letter::Level {
            net: 0,
            peak: gens.plus_peak,
        },
    );
    let minus = Symbol::new(
        "L-",
        gens.minus.clone(),
        Letter::Level {
            net: 0,
            peak: gens.minus_peak,
        },
    );
    let zero = Symbol::new("L0", gens.zero.clone(), Letter::Fixed);
    let q = &gens.q;
    let bracket = Symbol::new(
        "[2L0]_q",
        LinOp::diagonal(
            (0..space.dim())
                .map(|i| {
                    let l0 = gens
                        .zero
                        .diagonal_entry(i)
                        .as_rational()
                        .expect("rational L0");
                    let x = i64::try_from((l0 * int(2)).to_integer()).expect("small weight");
                    Radical::from_rational(q.bracket(x))
                })
                .collect(),
        ),
        Letter::Fixed,
    );
    let minus_one = -Radical::one();
    let mut zp = Relation::commutator_terms(&zero, &plus);
    zp.push(Term::new(minus_one.clone(), vec![plus.clone()]));
    let mut zm = Relation::commutator_terms(&zero, &minus);
    zm.push(Term::unit(vec![minus.clone()]));
    let mut pm = Relation::commutator_terms(&plus, &minus);
    pm.push(Term::new(minus_one, vec![bracket]));
    vec![
        Relation::new("[L0,L+]", zp),
        Relation::new("[L0,L-]", zm),
        Relation::new("[L+,L-]", pm),
    ]
}

/// `[L0, L±] = ±L±` and `[L+, L-] = [2 L0]_q` on every Fock state.
pub fn check_so3(gens: &So3Generators, space: &FockSpace) -> RelationReport {
    let carrier = FockCarrier {
        space,
        label: format!("so3 {} cutoff={}", gens.realization, space.cutoff()),
    };
    let flavor = if gens.q.is_one() {
        "classical"
    } else {
        "deformed"
    };
    evaluate(
        &carrier,
        "so3",
        flavor,
        &gens.q.to_string(),
        &so3_relations(gens, space),
    )
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlockResult {
    /// Total occupation of the block.
    pub total: u32,
    pub pass: usize,
    pub fail: usize,
    pub boundary: usize,
}

/// Per-state classes of an `so3` report grouped by total occupation.
pub fn block_results(report: &RelationReport) -> Vec<BlockResult> {
    let mut blocks: BTreeMap<u32, BlockResult> = BTreeMap::new();
    for s in &report.per_state {
        let total = s.state.iter().sum::<i64>() as u32;
        let b = blocks.entry(total).or_insert(BlockResult {
            total,
            ..Default::default()
        });
        match s.class {
            StateClass::Pass => b.pass += 1,
            StateClass::Fail => b.fail += 1,
            StateClass::Boundary => b.boundary += 1,
        }
    }
    blocks.into_values().collect()
}

type Vector = BTreeMap<usize, Radical>;

fn apply(op: &LinOp, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (src, c) in v {
        for (tgt, a) in op.column(*src) {
            let entry = out.entry(tgt).or_insert_with(Radical::zero);
            *entry += &(c * a);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TopSpinResult {
    /// Total occupation `n`, which is also the spin of the component.
    pub total: u32,
    pub holds: bool,
}

/// The relations restricted to the highest-spin component of each block
/// below the cutoff: the span of `L-^k |n,0,0>`.
pub fn check_so3_top_spin(gens: &So3Generators, space: &FockSpace) -> Vec<TopSpinResult> {
    let relations = so3_relations(gens, space);
    let residuals: Vec<LinOp> = relations.iter().map(|r| r.residual(space.dim())).collect();
    (0..space.cutoff())
        .map(|n| {
            let top = space
                .index_of(&FockState([n, 0, 0]))
                .expect("state below cutoff");
            let mut v: Vector = [(top, Radical::one())].into_iter().collect();
            let mut holds = true;
            for _ in 0..=2 * n {
                holds &= residuals.iter().all(|r| apply(r, &v).is_empty());
                v = apply(&gens.minus, &v);
            }
            holds &= v.is_empty();
            TopSpinResult { total: n, holds }
        })
        .collect()
}
