//! State spaces of symmetric irreps and the crystal moves on them.
//!
//! A state is the tuple `(l_1, ..., l_n)` of eigenvalues of the number
//! operators `N_i`. For `sl(n)` the tuples are the compositions of `Lambda`;
//! for `sp(2n)` the node-`n` ladder `l_n -> l_n + 2` has no top, so the space
//! is cut at a total-box ceiling and states close to it are flagged.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AlgebraType {
    A,
    C,
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraType::A => write!(f, "A"),
            AlgebraType::C => write!(f, "C"),
        }
    }
}

impl std::str::FromStr for AlgebraType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(AlgebraType::A),
            "C" | "c" => Ok(AlgebraType::C),
            other => Err(Error::Parse(format!(
                "algebra type must be A or C, got {other:?}"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Raise,
    Lower,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Raise => 1,
            Sign::Lower => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Raise => Sign::Lower,
            Sign::Lower => Sign::Raise,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Raise => '+',
            Sign::Lower => '-',
        }
    }
}

/// `sl(n)` (type A, `n >= 2`) or `sp(2n)` (type C, `n >= 1`) with highest
/// weight `(Lambda, 0, ..., 0)`. `cap` is only meaningful for type C.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CrystalSpec {
    pub algebra: AlgebraType,
    pub n: usize,
    pub lambda: u32,
    pub cap: Option<u32>,
}

impl CrystalSpec {
    pub fn sl(n: usize, lambda: u32) -> Self {
        CrystalSpec {
            algebra: AlgebraType::A,
            n,
            lambda,
            cap: None,
        }
    }

    pub fn sp(n: usize, lambda: u32, cap: u32) -> Self {
        CrystalSpec {
            algebra: AlgebraType::C,
            n,
            lambda,
            cap: Some(cap),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.algebra {
            AlgebraType::A => {
                if self.n < 2 {
                    return Err(Error::domain(format!("sl(n) needs n >= 2, got {}", self.n)));
                }
            }
            AlgebraType::C => {
                if self.n < 1 {
                    return Err(Error::domain("sp(2n) needs n >= 1"));
                }
                let cap = self
                    .cap
                    .ok_or_else(|| Error::domain("type C needs a cap"))?;
                if cap < self.lambda {
                    return Err(Error::domain(format!(
                        "cap {cap} is below the highest weight {}",
                        self.lambda
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of Chevalley nodes: `n - 1` for `sl(n)`, `n` for `sp(2n)`.
    pub fn nodes(&self) -> usize {
        match self.algebra {
            AlgebraType::A => self.n - 1,
            AlgebraType::C => self.n,
        }
    }

    /// Symmetrizer `d_i`, so that the node's deformation base is `q^{d_i}`.
    pub fn symmetrizer(&self, node: usize) -> i64 {
        if self.algebra == AlgebraType::C && node == self.n {
            2
        } else {
            1
        }
    }

    /// Change of `(l_1..l_n)` under the raising move of `node` (1-based).
    pub fn move_vector(&self, node: usize) -> Vec<i64> {
        let mut v = vec![0; self.n];
        if self.algebra == AlgebraType::C && node == self.n {
            v[node - 1] = 2;
        } else {
            v[node - 1] = 1;
            v[node] = -1;
        }
        v
    }
}

impl fmt::Display for CrystalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.algebra, self.cap) {
            (AlgebraType::C, Some(cap)) => {
                write!(f, "C n={} lambda={} cap={}", self.n, self.lambda, cap)
            }
            _ => write!(f, "{} n={} lambda={}", self.algebra, self.n, self.lambda),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CrystalState(pub Vec<u32>);

impl CrystalState {
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&l| l as u64).sum()
    }
}

impl fmt::Display for CrystalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Why a move has no image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Blocked {
    /// Some `l_i` would become negative: the string ends here.
    Negative,
    /// The image exists in the infinite ladder but lies above the cap.
    Cap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundaryClass {
    Interior,
    CapMargin,
}

pub const DEFAULT_MARGIN: u32 = 6;

#[derive(Clone, Debug)]
pub struct CrystalModel {
    spec: CrystalSpec,
    states: Vec<CrystalState>,
    index: HashMap<CrystalState, usize>,
}

impl CrystalModel {
    pub fn build(spec: CrystalSpec) -> Result<Self> {
        spec.validate()?;
        let mut states = Vec::new();
        let mut current = Vec::with_capacity(spec.n);
        match spec.algebra {
            AlgebraType::A => compositions(spec.n, spec.lambda, &mut current, &mut states),
            AlgebraType::C => {
                let cap = spec.cap.expect("validated");
                bounded_tuples(spec.n, cap, &mut current, &mut states);
                states.retain(|s: &CrystalState| s.total() % 2 == u64::from(spec.lambda % 2));
            }
        }
        states.sort_by(|a, b| b.0.cmp(&a.0));
        if spec.algebra == AlgebraType::C {
            states.reverse();
        }
        let index = states
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(CrystalModel {
            spec,
            states,
            index,
        })
    }

    pub fn spec(&self) -> &CrystalSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[CrystalState] {
        &self.states
    }

    pub fn state(&self, idx: usize) -> &CrystalState {
        &self.states[idx]
    }

    pub fn index_of(&self, s: &CrystalState) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn nodes(&self) -> usize {
        self.spec.nodes()
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.nodes() {
            return Err(Error::domain(format!(
                "node {node} out of range 1..={} for {}",
                self.nodes(),
                self.spec
            )));
        }
        Ok(())
    }

    /// The move with the reason it fails, if it does.
    pub fn try_move(
        &self,
        node: usize,
        sign: Sign,
        s: &CrystalState,
    ) -> std::result::Result<CrystalState, Blocked> {
        let v = self.spec.move_vector(node);
        let mut out = Vec::with_capacity(s.0.len());
        for (l, d) in s.0.iter().zip(v) {
            let x = *l as i64 + sign.as_int() * d;
            if x < 0 {
                return Err(Blocked::Negative);
            }
            out.push(x as u32);
        }
        let image = CrystalState(out);
        if let Some(cap) = self.spec.cap {
            if self.spec.algebra == AlgebraType::C && image.total() > cap as u64 {
                return Err(Blocked::Cap);
            }
        }
        Ok(image)
    }

    /// `e_hat^{sign}_node(s)`, or `None` at the end of a string / past the cap.
    pub fn e_hat(&self, node: usize, sign: Sign, s: &CrystalState) -> Result<Option<CrystalState>> {
        self.check_node(node)?;
        Ok(self.try_move(node, sign, s).ok())
    }

    pub(crate) fn move_index(&self, node: usize, sign: Sign, idx: usize) -> Option<usize> {
        self.try_move(node, sign, &self.states[idx])
            .ok()
            .map(|t| self.index[&t])
    }

    pub fn weight_n(&self, s: &CrystalState) -> Vec<i64> {
        s.0.iter().map(|&l| l as i64).collect()
    }

    /// `H_i = l_i - l_{i+1}` for `i < n`; type C adds `H_n = l_n + 1/2`.
    pub fn weight_h(&self, s: &CrystalState) -> Vec<Rational> {
        (1..=self.nodes())
            .map(|i| self.h_eigenvalue(i, s))
            .collect()
    }

    pub fn h_eigenvalue(&self, node: usize, s: &CrystalState) -> Rational {
        let l = &s.0;
        if self.spec.algebra == AlgebraType::C && node == self.spec.n {
            rat(2 * l[node - 1] as i64 + 1, 2)
        } else {
            rat(l[node - 1] as i64 - l[node] as i64, 1)
        }
    }

    /// Twice the `H` eigenvalue, always an integer.
    pub fn h_twice(&self, node: usize, s: &CrystalState) -> i64 {
        let l = &s.0;
        if self.spec.algebra == AlgebraType::C && node == self.spec.n {
            2 * l[node - 1] as i64 + 1
        } else {
            2 * (l[node - 1] as i64 - l[node] as i64)
        }
    }

    pub fn boundary_class(&self, s: &CrystalState, margin: u32) -> BoundaryClass {
        match (self.spec.algebra, self.spec.cap) {
            (AlgebraType::C, Some(cap)) if s.total() + margin as u64 > cap as u64 => {
                BoundaryClass::CapMargin
            }
            _ => BoundaryClass::Interior,
        }
    }

    /// Cartan integers `a[i][j] = alpha_j(h_i)`, i.e. the shift of `H_i` under
    /// a raising move of node `j`; both indices 0-based here.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.nodes();
        (1..=r)
            .map(|i| {
                (1..=r)
                    .map(|j| {
                        let v = self.spec.move_vector(j);
                        if self.spec.algebra == AlgebraType::C && i == self.spec.n {
                            v[i - 1]
                        } else {
                            v[i - 1] - v[i]
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Edges `s -> e_hat^-_i(s)` as `(from, to, node)` ordinals.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut edges = Vec::new();
        for from in 0..self.dim() {
            for node in 1..=self.nodes() {
                if let Some(to) = self.move_index(node, Sign::Lower, from) {
                    edges.push((from, to, node));
                }
            }
        }
        edges
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph crystal {\n");
        out.push_str(&format!("  label=\"{}\";\n", self.spec));
        for (k, s) in self.states.iter().enumerate() {
            let h: Vec<String> = self.weight_h(s).iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("  s{k} [label=\"{s}\\nH=({})\"];\n", h.join(",")));
        }
        for (from, to, node) in self.edges() {
            out.push_str(&format!("  s{from} -> s{to} [label=\"{node}\"];\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<serde_json::Value> = self
            .edges()
            .into_iter()
            .map(|(from, to, node)| json!({ "from": from, "to": to, "node": node }))
            .collect();
        json!({
            "spec": self.spec,
            "states": self.states,
            "edges": edges,
        })
    }
}

/// Compositions of `total` into `parts` non-negative parts.
fn compositions(parts: usize, total: u32, current: &mut Vec<u32>, out: &mut Vec<CrystalState>) {
    if parts == 1 {
        current.push(total);
        out.push(CrystalState(current.clone()));
        current.pop();
        return;
    }
    for first in 0..=total {
        current.push(first);
        compositions(parts - 1, total - first, current, out);
        current.pop();
    }
}

fn bounded_tuples(parts: usize, budget: u32, current: &mut Vec<u32>, out: &mut Vec<CrystalState>) {
    if parts == 0 {
        out.push(CrystalState(current.clone()));
        return;
    }
    for first in 0..=budget {
        current.push(first);
        bounded_tuples(parts - 1, budget - first, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(v: &[u32]) -> CrystalState {
        CrystalState(v.to_vec())
    }

    #[test]
    fn triplet_states() {
        let m = CrystalModel::build(CrystalSpec::sl(2, 2)).unwrap();
        assert_eq!(m.states(), &[st(&[2, 0]), st(&[1, 1]), st(&[0, 2])]);
    }

    #[test]
    fn sl3_dimension() {
        assert_eq!(CrystalModel::build(CrystalSpec::sl(3, 2)).unwrap().dim(), 6);
    }

    #[test]
    fn sp2_odd_ladder() {
        let m = CrystalModel::build(CrystalSpec::sp(1, 1, 5)).unwrap();
        assert_eq!(m.states(), &[st(&[1]), st(&[3]), st(&[5])]);
    }

    #[test]
    fn cap_below_lambda_is_rejected() {
        assert!(CrystalModel::build(CrystalSpec::sp(2, 4, 3)).is_err());
        assert!(CrystalModel::build(CrystalSpec::sl(1, 3)).is_err());
    }

    #[test]
    fn lowering_string_of_triplet() {
        let m = CrystalModel::build(CrystalSpec::sl(2, 2)).unwrap();
        assert_eq!(
            m.e_hat(1, Sign::Lower, &st(&[2, 0])).unwrap(),
            Some(st(&[1, 1]))
        );
        assert_eq!(
            m.e_hat(1, Sign::Lower, &st(&[1, 1])).unwrap(),
            Some(st(&[0, 2]))
        );
        assert_eq!(m.e_hat(1, Sign::Lower, &st(&[0, 2])).unwrap(), None);
        assert!(m.e_hat(2, Sign::Lower, &st(&[0, 2])).is_err());
        assert!(m.e_hat(0, Sign::Lower, &st(&[0, 2])).is_err());
    }

    #[test]
    fn annihilation_propagates() {
        let m = CrystalModel::build(CrystalSpec::sl(3, 1)).unwrap();
        let first = m.e_hat(2, Sign::Lower, &st(&[1, 0, 0])).unwrap();
        assert_eq!(first, None);
    }

    #[test]
    fn sp2_ladder_ends() {
        let m = CrystalModel::build(CrystalSpec::sp(1, 1, 5)).unwrap();
        assert_eq!(m.e_hat(1, Sign::Raise, &st(&[5])).unwrap(), None);
        assert_eq!(m.try_move(1, Sign::Raise, &st(&[5])), Err(Blocked::Cap));
        assert_eq!(m.e_hat(1, Sign::Lower, &st(&[1])).unwrap(), None);
        assert_eq!(
            m.try_move(1, Sign::Lower, &st(&[1])),
            Err(Blocked::Negative)
        );
    }

    #[test]
    fn weights() {
        let m = CrystalModel::build(CrystalSpec::sl(2, 2)).unwrap();
        assert_eq!(m.weight_h(&st(&[1, 1])), vec![rat(0, 1)]);
        let m = CrystalModel::build(CrystalSpec::sl(3, 2)).unwrap();
        assert_eq!(m.weight_h(&st(&[0, 2, 0])), vec![rat(-2, 1), rat(2, 1)]);
        let m = CrystalModel::build(CrystalSpec::sp(2, 2, 8)).unwrap();
        assert_eq!(m.weight_h(&st(&[1, 3])), vec![rat(-2, 1), rat(7, 2)]);
        assert_eq!(m.weight_n(&st(&[1, 3])), vec![1, 3]);
    }

    #[test]
    fn boundary_classes() {
        let a = CrystalModel::build(CrystalSpec::sl(3, 2)).unwrap();
        for s in a.states() {
            assert_eq!(a.boundary_class(s, 6), BoundaryClass::Interior);
        }
        let c = CrystalModel::build(CrystalSpec::sp(1, 1, 9)).unwrap();
        assert_eq!(c.boundary_class(&st(&[5]), 6), BoundaryClass::CapMargin);
        assert_eq!(c.boundary_class(&st(&[1]), 6), BoundaryClass::Interior);
        assert_eq!(c.boundary_class(&st(&[3]), 6), BoundaryClass::Interior);
    }

    #[test]
    fn cartan_matrices() {
        let a = CrystalModel::build(CrystalSpec::sl(4, 1)).unwrap();
        assert_eq!(
            a.cartan_matrix(),
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]
        );
        let c = CrystalModel::build(CrystalSpec::sp(3, 1, 5)).unwrap();
        assert_eq!(
            c.cartan_matrix(),
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]
        );
        let c1 = CrystalModel::build(CrystalSpec::sp(1, 0, 4)).unwrap();
        assert_eq!(c1.cartan_matrix(), vec![vec![2]]);
    }

    #[test]
    fn symmetrizer_balances_cartan() {
        for n in 1..=4 {
            let m = CrystalModel::build(CrystalSpec::sp(n, 0, 2)).unwrap();
            let a = m.cartan_matrix();
            for i in 0..n {
                for j in 0..n {
                    let di = m.spec().symmetrizer(i + 1);
                    let dj = m.spec().symmetrizer(j + 1);
                    assert_eq!(di * a[i][j], dj * a[j][i]);
                }
            }
        }
    }

    #[test]
    fn graph_exports() {
        let m = CrystalModel::build(CrystalSpec::sl(2, 1)).unwrap();
        assert_eq!(m.edges(), vec![(0, 1, 1)]);
        let m = CrystalModel::build(CrystalSpec::sl(3, 1)).unwrap();
        assert_eq!(m.edges().len(), 2);
        let m = CrystalModel::build(CrystalSpec::sp(1, 0, 4)).unwrap();
        assert_eq!(m.states(), &[st(&[0]), st(&[2]), st(&[4])]);
        assert_eq!(m.edges(), vec![(1, 0, 1), (2, 1, 1)]);
        let json = m.to_json();
        assert_eq!(json["states"], json!([[0], [2], [4]]));
        assert_eq!(json["edges"][0], json!({"from": 1, "to": 0, "node": 1}));
        assert!(m.to_dot().contains("s2 -> s1 [label=\"1\"]"));
    }
}
