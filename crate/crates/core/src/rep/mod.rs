//! Matrix realizations on a [`CrystalModel`]: the crystal moves themselves,
//! the classical Chevalley generators `E^±_i`, the q-deformed generators
//! `e^±_i`, the diagonal deforming factors that map one onto the other, the
//! Curtright-Zachos functional for `sl(2)`, and Casimir operators.
//!
//! Placement of diagonal factors follows the printed formulas: to the right
//! of `ê^+` (evaluated on the operand state) and to the left of `ê^-`
//! (evaluated on the image state). As a consequence `e^-_i` is exactly the
//! transpose of `e^+_i`.

mod linop;

use std::collections::HashMap;

use num_traits::{One, Zero};

pub use linop::{radical_json, LinOp};

use crate::crystal::{AlgebraType, CrystalModel, CrystalState, Sign};
use crate::error::{Error, Result};
use crate::scalar::{casimir_value, int, rat, QValue, Radical, Rational};

/// Which generator family a builder produces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Classical,
    Deformed(QValue),
}

impl Flavor {
    pub fn q(&self) -> QValue {
        match self {
            Flavor::Classical => QValue::one(),
            Flavor::Deformed(q) => q.clone(),
        }
    }

    /// `x` or `[x]_q`.
    fn count(&self, x: i64) -> Rational {
        match self {
            Flavor::Classical => int(x),
            Flavor::Deformed(q) => q.bracket(x),
        }
    }

    /// `1/2` or `1/(q + q^{-1})`.
    fn long_prefactor(&self) -> Rational {
        match self {
            Flavor::Classical => rat(1, 2),
            Flavor::Deformed(q) => q.sum_inverse().recip(),
        }
    }
}

/// Memoized `sqrt(x)` / `sqrt([x]_q)`; bracket values at rational `q` can
/// have large numerators, so each is decomposed once per builder.
struct RootTable<'a> {
    flavor: &'a Flavor,
    roots: HashMap<i64, Radical>,
}

impl<'a> RootTable<'a> {
    fn new(flavor: &'a Flavor) -> Self {
        RootTable {
            flavor,
            roots: HashMap::new(),
        }
    }

    fn root(&mut self, x: i64) -> Radical {
        let flavor = self.flavor;
        self.roots
            .entry(x)
            .or_insert_with(|| Radical::sqrt_rat(&flavor.count(x)))
            .clone()
    }

    /// `sqrt(f(a) f(b))` on the principal branch, from the two roots.
    fn root_pair(&mut self, a: i64, b: i64) -> Radical {
        let (fa, fb) = (self.flavor.count(a), self.flavor.count(b));
        if fa.is_zero() || fb.is_zero() {
            return Radical::zero();
        }
        let prod = &self.root(a) * &self.root(b);
        if fa < Rational::zero() && fb < Rational::zero() {
            -prod
        } else {
            prod
        }
    }
}

/// The two integer arguments whose (q-)counts form the radicand of node
/// `node` at state `s`: `(l_i + 1, l_{i+1})`, or `(l_n + 1, -l_n - 2)` for the
/// long node of type C.
fn radicand_args(model: &CrystalModel, node: usize, s: &CrystalState) -> (i64, i64) {
    let l = &s.0;
    let spec = model.spec();
    if spec.algebra == AlgebraType::C && node == spec.n {
        let ln = l[node - 1] as i64;
        (ln + 1, -ln - 2)
    } else {
        (l[node - 1] as i64 + 1, l[node] as i64)
    }
}

fn is_long_node(model: &CrystalModel, node: usize) -> bool {
    model.spec().algebra == AlgebraType::C && node == model.spec().n
}

/// 0/1 matrix of `ê^{sign}_node`.
pub fn op_hat(model: &CrystalModel, node: usize, sign: Sign) -> Result<LinOp> {
    model.check_node(node)?;
    let mut op = LinOp::zero(model.dim());
    for s in 0..model.dim() {
        if let Some(t) = model.move_index(node, sign, s) {
            op.insert(s, t, Radical::one());
        }
    }
    Ok(op)
}

/// `N_i`, `1 <= i <= n`.
pub fn op_num(model: &CrystalModel, i: usize) -> Result<LinOp> {
    if i == 0 || i > model.spec().n {
        return Err(Error::domain(format!(
            "number operator index {i} out of range 1..={}",
            model.spec().n
        )));
    }
    Ok(LinOp::diagonal(
        model
            .states()
            .iter()
            .map(|s| Radical::from_int(s.0[i - 1] as i64))
            .collect(),
    ))
}

/// `H_i = N_i - N_{i+1}`, and `H_n = N_n + 1/2` for type C.
#[allow(non_snake_case)]
pub fn op_H(model: &CrystalModel, node: usize) -> Result<LinOp> {
    model.check_node(node)?;
    Ok(LinOp::diagonal(
        model
            .states()
            .iter()
            .map(|s| Radical::from_rational(model.h_eigenvalue(node, s)))
            .collect(),
    ))
}

/// `E^±` (classical) or `e^±` (deformed) for one node.
pub fn op_generator(
    model: &CrystalModel,
    node: usize,
    sign: Sign,
    flavor: &Flavor,
) -> Result<LinOp> {
    model.check_node(node)?;
    let mut roots = RootTable::new(flavor);
    let prefactor = if is_long_node(model, node) {
        flavor.long_prefactor()
    } else {
        Rational::one()
    };
    let mut op = LinOp::zero(model.dim());
    for s in 0..model.dim() {
        let Some(t) = model.move_index(node, sign, s) else {
            continue;
        };
        // the factor sits on the lower state of the pair in both cases
        let lower = match sign {
            Sign::Raise => s,
            Sign::Lower => t,
        };
        let (a, b) = radicand_args(model, node, model.state(lower));
        op.insert(s, t, roots.root_pair(a, b).scale(&prefactor));
    }
    Ok(op)
}

#[allow(non_snake_case)]
pub fn op_E_classical(model: &CrystalModel, node: usize, sign: Sign) -> Result<LinOp> {
    op_generator(model, node, sign, &Flavor::Classical)
}

pub fn op_e_deformed(model: &CrystalModel, node: usize, sign: Sign, q: &QValue) -> Result<LinOp> {
    op_generator(model, node, sign, &Flavor::Deformed(q.clone()))
}

/// Diagonal deforming factor `F` with `E^+ ∘ F = e^+` and `F ∘ E^- = e^-`,
/// plus its inverse on the same support. `F = 1` where the classical
/// radicand vanishes (both generators are zero there).
pub fn deform_factor(model: &CrystalModel, node: usize, q: &QValue) -> Result<(LinOp, LinOp)> {
    model.check_node(node)?;
    let classical = Flavor::Classical;
    let deformed = Flavor::Deformed(q.clone());
    let mut cl = RootTable::new(&classical);
    let mut qd = RootTable::new(&deformed);
    let long = is_long_node(model, node);
    let prefactor = if long {
        rat(2, 1) / q.sum_inverse()
    } else {
        Rational::one()
    };
    let mut forward = Vec::with_capacity(model.dim());
    let mut inverse = Vec::with_capacity(model.dim());
    for s in model.states() {
        let (a, b) = radicand_args(model, node, s);
        if a == 0 || b == 0 {
            forward.push(Radical::one());
            inverse.push(Radical::one());
            continue;
        }
        let num = qd.root_pair(a, b);
        let den = cl.root_pair(a, b);
        let f = (&num * &den.inverse_monomial().expect("nonzero monomial")).scale(&prefactor);
        inverse.push(
            f.inverse_monomial()
                .expect("deforming factor is a nonzero monomial"),
        );
        forward.push(f);
    }
    Ok((LinOp::diagonal(forward), LinOp::diagonal(inverse)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CzVariant {
    /// The Curtright-Zachos quotient in `j_0`, `j`, `J_0`, `J`.
    Eq2,
    /// The crystal-basis deforming factor of node 1.
    Eq1a,
}

fn require_sl2(model: &CrystalModel) -> Result<()> {
    let spec = model.spec();
    if spec.algebra != AlgebraType::A || spec.n != 2 {
        return Err(Error::domain(format!(
            "needs an sl(2) model (type A, n = 2), got {spec}"
        )));
    }
    Ok(())
}

/// Diagonal deforming functional of `sl(2)`.
///
/// `Eq2` evaluates `sqrt([J_0 + J][J_0 - J - 1] / ((j_0 + j)(j_0 - j - 1)))`
/// with `j_0 = J_0 = (N_1 - N_2)/2` and `j = J = Lambda/2` on every state;
/// it multiplies `j_+` from the left, so it acts on image states. `Eq1a` is
/// [`deform_factor`] of node 1 and multiplies `j_+` from the right.
pub fn cz_factor(model: &CrystalModel, q: &QValue, variant: CzVariant) -> Result<LinOp> {
    require_sl2(model)?;
    match variant {
        CzVariant::Eq1a => Ok(deform_factor(model, 1, q)?.0),
        CzVariant::Eq2 => {
            let twice_j = model.spec().lambda as i64;
            let classical = Flavor::Classical;
            let deformed = Flavor::Deformed(q.clone());
            let mut cl = RootTable::new(&classical);
            let mut qd = RootTable::new(&deformed);
            let mut diag = Vec::with_capacity(model.dim());
            for s in model.states() {
                let twice_j0 = s.0[0] as i64 - s.0[1] as i64;
                // j_0 ± j is integral because N_1 + N_2 = Lambda
                let a = (twice_j0 + twice_j) / 2;
                let b = (twice_j0 - twice_j - 2) / 2;
                if a == 0 || b == 0 {
                    diag.push(Radical::one());
                    continue;
                }
                let num = qd.root_pair(a, b);
                let den = cl.root_pair(a, b);
                diag.push(&num * &den.inverse_monomial().expect("nonzero monomial"));
            }
            Ok(LinOp::diagonal(diag))
        }
    }
}

/// Scalar Casimir `j(j+1)` or `[j]_q [j+1]_q` with `j = Lambda/2`.
pub fn casimir(model: &CrystalModel, flavor: &Flavor) -> Result<LinOp> {
    require_sl2(model)?;
    let value = casimir_value(model.spec().lambda as i64, &flavor.q());
    Ok(LinOp::identity(model.dim()).scale_rational(&value))
}

/// `E^- E^+ + f(H)` with `f(H) = (H/2)(H/2 + 1)`, or the q-analogue
/// `[H/2]_q [H/2 + 1]_q`.
pub fn casimir_from_generators(model: &CrystalModel, flavor: &Flavor) -> Result<LinOp> {
    require_sl2(model)?;
    let up = op_generator(model, 1, Sign::Raise, flavor)?;
    let down = op_generator(model, 1, Sign::Lower, flavor)?;
    let q = flavor.q();
    let f_h = LinOp::diagonal(
        model
            .states()
            .iter()
            .map(|s| Radical::from_rational(casimir_value(model.h_twice(1, s) / 2, &q)))
            .collect(),
    );
    down.compose(&up)?.add(&f_h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::CrystalSpec;

    fn q(n: i64, d: i64) -> QValue {
        QValue::new(rat(n, d)).unwrap()
    }

    fn model(spec: CrystalSpec) -> CrystalModel {
        CrystalModel::build(spec).unwrap()
    }

    fn idx(m: &CrystalModel, l: &[u32]) -> usize {
        m.index_of(&CrystalState(l.to_vec())).unwrap()
    }

    #[test]
    fn hat_of_doublet() {
        let m = model(CrystalSpec::sl(2, 1));
        let lower = op_hat(&m, 1, Sign::Lower).unwrap();
        assert_eq!(lower.nnz(), 1);
        assert!(lower.get(idx(&m, &[1, 0]), idx(&m, &[0, 1])).is_one());
    }

    #[test]
    fn hat_raise_is_transpose_of_lower() {
        for spec in [
            CrystalSpec::sl(3, 3),
            CrystalSpec::sp(2, 1, 7),
            CrystalSpec::sl(4, 2),
        ] {
            let m = model(spec);
            for node in 1..=m.nodes() {
                let up = op_hat(&m, node, Sign::Raise).unwrap();
                let down = op_hat(&m, node, Sign::Lower).unwrap();
                assert_eq!(up, down.transpose());
            }
        }
    }

    #[test]
    fn hat_on_capped_ladder() {
        let m = model(CrystalSpec::sp(1, 1, 5));
        let up = op_hat(&m, 1, Sign::Raise).unwrap();
        assert_eq!(up.nnz(), 2);
        assert!(up.get(idx(&m, &[1]), idx(&m, &[3])).is_one());
        assert!(up.get(idx(&m, &[3]), idx(&m, &[5])).is_one());
    }

    #[test]
    fn cartan_diagonals() {
        let m = model(CrystalSpec::sl(2, 2));
        let h = op_H(&m, 1).unwrap();
        let expected: Vec<Radical> = [2, 0, -2].iter().map(|&x| Radical::from_int(x)).collect();
        assert_eq!(h, LinOp::diagonal(expected));
        let c = model(CrystalSpec::sp(1, 1, 5));
        let h = op_H(&c, 1).unwrap();
        let expected: Vec<Radical> = [rat(3, 2), rat(7, 2), rat(11, 2)]
            .into_iter()
            .map(Radical::from_rational)
            .collect();
        assert_eq!(h, LinOp::diagonal(expected));
        let m = model(CrystalSpec::sl(3, 2));
        for i in 1..=3 {
            for j in 1..=3 {
                let c = op_num(&m, i)
                    .unwrap()
                    .commutator(&op_num(&m, j).unwrap())
                    .unwrap();
                assert!(c.is_zero());
            }
        }
        assert!(op_num(&m, 4).is_err());
    }

    #[test]
    fn classical_generator_entries() {
        let m = model(CrystalSpec::sl(2, 1));
        let up = op_E_classical(&m, 1, Sign::Raise).unwrap();
        assert!(up.get(idx(&m, &[0, 1]), idx(&m, &[1, 0])).is_one());

        let m = model(CrystalSpec::sl(2, 2));
        let up = op_E_classical(&m, 1, Sign::Raise).unwrap();
        assert_eq!(
            up.get(idx(&m, &[1, 1]), idx(&m, &[2, 0])),
            Radical::sqrt_rat(&int(2))
        );

        let c = model(CrystalSpec::sp(1, 0, 8));
        let up = op_E_classical(&c, 1, Sign::Raise).unwrap();
        let expected = Radical::sqrt_rat(&int(-2)).scale(&rat(1, 2));
        assert_eq!(up.get(idx(&c, &[0]), idx(&c, &[2])), expected);
    }

    #[test]
    fn deformed_generator_entries() {
        let m = model(CrystalSpec::sl(2, 2));
        let up = op_e_deformed(&m, 1, Sign::Raise, &q(2, 1)).unwrap();
        assert_eq!(
            up.get(idx(&m, &[1, 1]), idx(&m, &[2, 0])),
            Radical::sqrt_rat(&rat(5, 2))
        );

        let c = model(CrystalSpec::sp(1, 0, 8));
        let up = op_e_deformed(&c, 1, Sign::Raise, &q(2, 1)).unwrap();
        let expected = Radical::sqrt_rat(&rat(-5, 2)).scale(&rat(2, 5));
        assert_eq!(up.get(idx(&c, &[0]), idx(&c, &[2])), expected);
        assert!(op_e_deformed(&c, 2, Sign::Raise, &q(2, 1)).is_err());
    }

    #[test]
    fn deformed_at_one_is_classical() {
        for spec in [CrystalSpec::sl(3, 3), CrystalSpec::sp(2, 2, 9)] {
            let m = model(spec);
            for node in 1..=m.nodes() {
                for sign in [Sign::Raise, Sign::Lower] {
                    assert_eq!(
                        op_e_deformed(&m, node, sign, &QValue::one()).unwrap(),
                        op_E_classical(&m, node, sign).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn deform_factor_maps_classical_onto_deformed() {
        let m = model(CrystalSpec::sl(2, 2));
        let q2 = q(2, 1);
        let (f, f_inv) = deform_factor(&m, 1, &q2).unwrap();
        let up = op_E_classical(&m, 1, Sign::Raise).unwrap();
        assert_eq!(
            up.compose(&f).unwrap(),
            op_e_deformed(&m, 1, Sign::Raise, &q2).unwrap()
        );
        assert_eq!(f.compose(&f_inv).unwrap(), LinOp::identity(m.dim()));
        let (one, _) = deform_factor(&m, 1, &QValue::one()).unwrap();
        assert_eq!(one, LinOp::identity(m.dim()));
    }

    #[test]
    fn commutator_with_cartan_gives_weight_shift() {
        let m = model(CrystalSpec::sl(2, 2));
        let h = op_H(&m, 1).unwrap();
        let up = op_hat(&m, 1, Sign::Raise).unwrap();
        assert_eq!(h.commutator(&up).unwrap(), up.scale_rational(&int(2)));
    }

    #[test]
    fn cz_examples() {
        let m = model(CrystalSpec::sl(2, 1));
        let q2 = q(2, 1);
        let jp = op_E_classical(&m, 1, Sign::Raise).unwrap();
        let qj = cz_factor(&m, &q2, CzVariant::Eq2)
            .unwrap()
            .compose(&jp)
            .unwrap();
        assert_eq!(qj, op_e_deformed(&m, 1, Sign::Raise, &q2).unwrap());

        let m = model(CrystalSpec::sl(2, 2));
        let jp = op_E_classical(&m, 1, Sign::Raise).unwrap();
        let qj = cz_factor(&m, &q2, CzVariant::Eq2)
            .unwrap()
            .compose(&jp)
            .unwrap();
        let entry = qj.get(idx(&m, &[1, 1]), idx(&m, &[2, 0]));
        assert_eq!(entry, Radical::sqrt_rat(&(q2.bracket(2) * q2.bracket(1))));

        for variant in [CzVariant::Eq2, CzVariant::Eq1a] {
            assert_eq!(
                cz_factor(&m, &QValue::one(), variant).unwrap(),
                LinOp::identity(3)
            );
        }
        let bad = model(CrystalSpec::sl(3, 1));
        assert!(cz_factor(&bad, &q2, CzVariant::Eq2).is_err());
    }

    #[test]
    fn casimir_values() {
        let m = model(CrystalSpec::sl(2, 1));
        let c = casimir(&m, &Flavor::Classical).unwrap();
        assert_eq!(c, LinOp::identity(2).scale_rational(&rat(3, 4)));
        let m = model(CrystalSpec::sl(2, 2));
        let c = casimir(&m, &Flavor::Deformed(q(2, 1))).unwrap();
        assert_eq!(c, LinOp::identity(3).scale_rational(&rat(5, 2)));
    }

    #[test]
    fn casimir_from_generators_is_scalar() {
        for lambda in 0..=6 {
            let m = model(CrystalSpec::sl(2, lambda));
            for flavor in [
                Flavor::Classical,
                Flavor::Deformed(q(2, 1)),
                Flavor::Deformed(q(1, 2)),
            ] {
                let built = casimir_from_generators(&m, &flavor).unwrap();
                assert_eq!(built, casimir(&m, &flavor).unwrap(), "lambda {lambda}");
            }
        }
    }
}
