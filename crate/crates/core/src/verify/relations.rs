//! Relation families on crystal models.

use crate::crystal::{AlgebraType, CrystalModel, CrystalSpec, Sign};
use crate::error::Result;
use crate::rep::{
    casimir, casimir_from_generators, cz_factor, deform_factor, op_H, op_generator, CzVariant,
    Flavor, LinOp,
};
use crate::scalar::{binom, qbinom, QValue, Radical};

use super::engine::{evaluate, CrystalCarrier, Letter, Relation, RelationReport, Symbol, Term};

/// `e^±_i` and `h_i` of one flavor, built once and shared by all families.
pub struct Generators {
    pub flavor: Flavor,
    raise: Vec<Symbol>,
    lower: Vec<Symbol>,
    h: Vec<Symbol>,
}

impl Generators {
    pub fn build(model: &CrystalModel, flavor: &Flavor) -> Result<Self> {
        let letter = match flavor {
            Flavor::Classical => "E",
            Flavor::Deformed(_) => "e",
        };
        let mut raise = Vec::new();
        let mut lower = Vec::new();
        let mut h = Vec::new();
        for node in 1..=model.nodes() {
            for (sign, out) in [(Sign::Raise, &mut raise), (Sign::Lower, &mut lower)] {
                out.push(Symbol::new(
                    format!("{letter}{}{node}", sign.symbol()),
                    op_generator(model, node, sign, flavor)?,
                    Letter::Move(node, sign),
                ));
            }
            h.push(Symbol::new(
                format!("h{node}"),
                op_H(model, node)?,
                Letter::Fixed,
            ));
        }
        Ok(Generators {
            flavor: flavor.clone(),
            raise,
            lower,
            h,
        })
    }

    pub fn e(&self, node: usize, sign: Sign) -> &Symbol {
        match sign {
            Sign::Raise => &self.raise[node - 1],
            Sign::Lower => &self.lower[node - 1],
        }
    }

    pub fn h(&self, node: usize) -> &Symbol {
        &self.h[node - 1]
    }

    fn flavor_name(&self) -> &'static str {
        match self.flavor {
            Flavor::Classical => "classical",
            Flavor::Deformed(_) => "deformed",
        }
    }

    fn q_text(&self) -> String {
        self.flavor.q().to_string()
    }
}

/// The Cartan matrix a relation family should find, in the layout of
/// [`CrystalModel::cartan_matrix`]: `a[i][j] = alpha_j(h_i)`, 0-based.
pub fn expected_cartan(spec: &CrystalSpec) -> Vec<Vec<i64>> {
    let r = spec.nodes();
    let mut a = vec![vec![0i64; r]; r];
    for i in 0..r {
        a[i][i] = 2;
        if i + 1 < r {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    if spec.algebra == AlgebraType::C && r >= 2 {
        a[r - 2][r - 1] = -2;
        a[r - 1][r - 2] = -1;
    }
    a
}

/// Whether the weight-shift Cartan integers agree with the A/C table.
pub fn cartan_matches_expected(model: &CrystalModel) -> bool {
    model.cartan_matrix() == expected_cartan(model.spec())
}

/// `[h_i, e^±_j] = ±a e^±_j` with `a = alpha_j(h_i)`, and `[h_i, h_j] = 0`.
pub fn check_cartan(carrier: &CrystalCarrier, gens: &Generators) -> RelationReport {
    let model = carrier.model;
    let a = model.cartan_matrix();
    let r = model.nodes();
    let mut relations = Vec::new();
    for i in 1..=r {
        for j in 1..=r {
            for sign in [Sign::Raise, Sign::Lower] {
                let e = gens.e(j, sign);
                let mut terms = Relation::commutator_terms(gens.h(i), e);
                let c = -sign.as_int() * a[i - 1][j - 1];
                if c != 0 {
                    terms.push(Term::new(Radical::from_int(c), vec![e.clone()]));
                }
                relations.push(Relation::new(format!("cartan[h{i},{}]", e.name), terms));
            }
            relations.push(Relation::new(
                format!("cartan[h{i},h{j}]"),
                Relation::commutator_terms(gens.h(i), gens.h(j)),
            ));
        }
    }
    evaluate(
        carrier,
        "cartan",
        gens.flavor_name(),
        &gens.q_text(),
        &relations,
    )
}

/// `diag([H_i]_{q_i})`: `H_i` itself when classical.
fn bracket_h(model: &CrystalModel, node: usize, flavor: &Flavor) -> Symbol {
    let d = model.spec().symmetrizer(node);
    let diag = model
        .states()
        .iter()
        .map(|s| match flavor {
            Flavor::Classical => Radical::from_rational(model.h_eigenvalue(node, s)),
            // d H_i = d h_twice / 2 is an integer for every node
            Flavor::Deformed(q) => {
                Radical::from_rational(q.bracket_scaled(d * model.h_twice(node, s) / 2, d))
            }
        })
        .collect();
    let name = match flavor {
        Flavor::Classical => format!("h{node}"),
        Flavor::Deformed(_) => format!(
            "[h{node}]_q{}",
            if d == 1 {
                String::new()
            } else {
                format!("^{d}")
            }
        ),
    };
    Symbol::new(name, LinOp::diagonal(diag), Letter::Fixed)
}

/// `[e^+_i, e^-_j] = δ_ij [h_i]_{q_i}`.
pub fn check_ladder(carrier: &CrystalCarrier, gens: &Generators) -> RelationReport {
    let model = carrier.model;
    let r = model.nodes();
    let mut relations = Vec::new();
    for i in 1..=r {
        let k = bracket_h(model, i, &gens.flavor);
        for j in 1..=r {
            let mut terms =
                Relation::commutator_terms(gens.e(i, Sign::Raise), gens.e(j, Sign::Lower));
            if i == j {
                terms.push(Term::new(-Radical::one(), vec![k.clone()]));
            }
            relations.push(Relation::new(format!("ladder[{i},{j}]"), terms));
        }
    }
    evaluate(
        carrier,
        "ladder",
        gens.flavor_name(),
        &gens.q_text(),
        &relations,
    )
}

/// Serre exponent `1 - a` for the pair where node `i` is repeated.
pub fn serre_exponent(model: &CrystalModel, i: usize, j: usize) -> i64 {
    1 - model.cartan_matrix()[i - 1][j - 1]
}

/// `sum_k (-1)^k [m; k]_{q_i} (e_i)^{m-k} e_j (e_i)^k = 0` for every ordered
/// pair `i != j` and both signs, `m = 1 - a_ij`.
pub fn check_serre(carrier: &CrystalCarrier, gens: &Generators) -> Result<RelationReport> {
    let model = carrier.model;
    let r = model.nodes();
    let mut relations = Vec::new();
    for i in 1..=r {
        for j in 1..=r {
            if i == j {
                continue;
            }
            let m = serre_exponent(model, i, j);
            let qi = match &gens.flavor {
                Flavor::Classical => None,
                Flavor::Deformed(q) => Some(QValue::new(q.pow(model.spec().symmetrizer(i)))?),
            };
            for sign in [Sign::Raise, Sign::Lower] {
                let ei = gens.e(i, sign);
                let ej = gens.e(j, sign);
                let mut terms = Vec::new();
                for k in 0..=m {
                    let c = match &qi {
                        None => binom(m, k),
                        Some(qi) => qbinom(m, k)?.eval_at(qi.value()),
                    };
                    let c = if k % 2 == 0 { c } else { -c };
                    let mut word = vec![ei.clone(); (m - k) as usize];
                    word.push(ej.clone());
                    word.extend(std::iter::repeat(ei.clone()).take(k as usize));
                    terms.push(Term::rational(c, word));
                }
                relations.push(Relation::new(
                    format!("serre[{i},{j}]{}", sign.symbol()),
                    terms,
                ));
            }
        }
    }
    Ok(evaluate(
        carrier,
        "serre",
        gens.flavor_name(),
        &gens.q_text(),
        &relations,
    ))
}

/// The deforming map and its inverse, node by node; for `sl(2)` also the
/// Curtright-Zachos route.
pub fn check_map(carrier: &CrystalCarrier, q: &QValue) -> Result<RelationReport> {
    let model = carrier.model;
    let classical = Generators::build(model, &Flavor::Classical)?;
    let deformed = Generators::build(model, &Flavor::Deformed(q.clone()))?;
    let mut relations = Vec::new();
    for node in 1..=model.nodes() {
        let (f, f_inv) = deform_factor(model, node, q)?;
        let f = Symbol::new(format!("F{node}"), f, Letter::Fixed);
        let f_inv = Symbol::new(format!("F{node}^-1"), f_inv, Letter::Fixed);
        let (cp, cm) = (
            classical.e(node, Sign::Raise),
            classical.e(node, Sign::Lower),
        );
        let (dp, dm) = (deformed.e(node, Sign::Raise), deformed.e(node, Sign::Lower));
        let minus = -Radical::one();
        relations.push(Relation::new(
            format!("map+{node}"),
            vec![
                Term::unit(vec![cp.clone(), f.clone()]),
                Term::new(minus.clone(), vec![dp.clone()]),
            ],
        ));
        relations.push(Relation::new(
            format!("map-{node}"),
            vec![
                Term::unit(vec![f.clone(), cm.clone()]),
                Term::new(minus.clone(), vec![dm.clone()]),
            ],
        ));
        relations.push(Relation::new(
            format!("unmap+{node}"),
            vec![
                Term::unit(vec![dp.clone(), f_inv.clone()]),
                Term::new(minus.clone(), vec![cp.clone()]),
            ],
        ));
        relations.push(Relation::new(
            format!("unmap-{node}"),
            vec![
                Term::unit(vec![f_inv, dm.clone()]),
                Term::new(minus, vec![cm.clone()]),
            ],
        ));
    }
    if is_sl2(model) {
        relations.extend(cz_relations(model, q, &classical, &deformed)?);
    }
    Ok(evaluate(
        carrier,
        "map",
        "deformed",
        &q.to_string(),
        &relations,
    ))
}

fn is_sl2(model: &CrystalModel) -> bool {
    model.spec().algebra == AlgebraType::A && model.spec().n == 2
}

/// `Q j_+ = e^+`, `j_- Q = e^-`, and `Q ∘ ê^+ = ê^+ ∘ F`: the quotient at the
/// image state equals the crystal factor at the source.
fn cz_relations(
    model: &CrystalModel,
    q: &QValue,
    classical: &Generators,
    deformed: &Generators,
) -> Result<Vec<Relation>> {
    let cz = Symbol::new("Q", cz_factor(model, q, CzVariant::Eq2)?, Letter::Fixed);
    let f = Symbol::new("F", cz_factor(model, q, CzVariant::Eq1a)?, Letter::Fixed);
    let hat = Symbol::new(
        "ê+",
        crate::rep::op_hat(model, 1, Sign::Raise)?,
        Letter::Move(1, Sign::Raise),
    );
    let minus = -Radical::one();
    Ok(vec![
        Relation::new(
            "cz+",
            vec![
                Term::unit(vec![cz.clone(), classical.e(1, Sign::Raise).clone()]),
                Term::new(minus.clone(), vec![deformed.e(1, Sign::Raise).clone()]),
            ],
        ),
        Relation::new(
            "cz-",
            vec![
                Term::unit(vec![classical.e(1, Sign::Lower).clone(), cz.clone()]),
                Term::new(minus.clone(), vec![deformed.e(1, Sign::Lower).clone()]),
            ],
        ),
        Relation::new(
            "cz=crystal",
            vec![
                Term::unit(vec![cz, hat.clone()]),
                Term::new(minus, vec![hat, f]),
            ],
        ),
    ])
}

/// `sl(2)` Casimir: the generator-built operator equals the scalar
/// `[j]_q [j+1]_q` and commutes with `e^±`.
pub fn check_casimir(carrier: &CrystalCarrier, gens: &Generators) -> Result<RelationReport> {
    let model = carrier.model;
    let built = Symbol::new(
        "C",
        casimir_from_generators(model, &gens.flavor)?,
        Letter::Fixed,
    );
    let scalar = Symbol::new("c(j)", casimir(model, &gens.flavor)?, Letter::Fixed);
    let relations = vec![
        Relation::new(
            "casimir=scalar",
            vec![
                Term::unit(vec![built.clone()]),
                Term::new(-Radical::one(), vec![scalar]),
            ],
        ),
        Relation::new(
            "casimir[C,e+]",
            Relation::commutator_terms(&built, gens.e(1, Sign::Raise)),
        ),
        Relation::new(
            "casimir[C,e-]",
            Relation::commutator_terms(&built, gens.e(1, Sign::Lower)),
        ),
    ];
    Ok(evaluate(
        carrier,
        "casimir",
        gens.flavor_name(),
        &gens.q_text(),
        &relations,
    ))
}
