use crate::kernel::RuleData;
use crate::kernel::RuleName;
use crate::rewrite::Theory;
use crate::silk::{Case, SiLKStep, StepRule};
use crate::syntax::{Expr, Path, Pos, Signature, Sort};
use crate::syntax::{Formula, NumExpr, Sequent, Term};

pub(crate) fn n() -> NumExpr {
    NumExpr::param("n")
}

pub(crate) fn f(x: Term) -> Term {
    Term::app("f", vec![x.into()])
}

pub(crate) fn fhat(e: NumExpr, x: Term) -> Term {
    Term::app("fhat", vec![e.into(), x.into()])
}

pub(crate) fn zero() -> Term {
    Term::constant("0")
}

pub(crate) fn p(t: Term) -> Formula {
    Formula::atom("P", vec![t.into()])
}

pub(crate) fn step_formula() -> Formula {
    Formula::forall("x", Formula::imp(p(Term::var("x")), p(f(Term::var("x")))))
}

pub(crate) fn delta() -> Vec<Formula> {
    vec![p(zero()), step_formula()]
}

pub(crate) fn theory() -> Theory {
    let mut sig = Signature::default();
    sig.declare_fun("0", vec![], Sort::Iota, false).unwrap();
    sig.declare_fun("f", vec![Sort::Iota], Sort::Iota, false).unwrap();
    sig.declare_fun("fhat", vec![Sort::Omega, Sort::Iota], Sort::Iota, true).unwrap();
    sig.declare_fun("exp2", vec![Sort::Omega], Sort::Omega, true).unwrap();
    sig.declare_pred("P", vec![Sort::Iota], false).unwrap();
    let mut th = Theory::new(sig);
    let x = Term::var("x");
    let m = NumExpr::param("m");
    th.add_rule(fhat(NumExpr::ZERO, x.clone()).into(), x.clone().into());
    th.add_rule(fhat(NumExpr::succ(m.clone()), x.clone()).into(), f(fhat(m.clone(), x)).into());
    let e = NumExpr::app("exp2", vec![m.clone()]);
    th.add_rule(NumExpr::app("exp2", vec![NumExpr::ZERO]).into(), NumExpr::Lit(1).into());
    th.add_rule(NumExpr::app("exp2", vec![NumExpr::succ(m)]).into(), NumExpr::add(e.clone(), e).into());
    th
}

pub(crate) fn rho(case: Case, rule: RuleName, data: RuleData) -> SiLKStep {
    SiLKStep::new(StepRule::Rho { case, arity: rule.arity(), rule, data })
}

pub(crate) fn aux(ps: &[Pos]) -> RuleData {
    RuleData { aux: ps.to_vec(), ..RuleData::default() }
}

pub(crate) fn fhat_pattern() -> Sequent {
    Sequent::new(delta(), vec![p(fhat(n(), zero()))])
}

/// The eleven steps of the simple fhat proof.
pub(crate) fn fhat_script() -> Vec<SiLKStep> {
    let ffn = f(fhat(n(), zero()));
    vec![
        SiLKStep::new(StepRule::Ax1R { formula: p(zero()) }),
        rho(
            Case::Bc,
            RuleName::ERule,
            RuleData {
                aux: vec![Pos::right(0)],
                path: Some(Path(vec![0])),
                to: Some(Expr::Term(fhat(NumExpr::ZERO, zero()))),
                ..RuleData::default()
            },
        ),
        rho(Case::Bc, RuleName::WeakL, RuleData { formula: Some(step_formula()), ..RuleData::default() }),
        SiLKStep::new(StepRule::ClBc { pattern: Some(fhat_pattern()), vars: vec![] }),
        SiLKStep::new(StepRule::AxL { formula: p(ffn.clone()), annotation: NumExpr::succ(n()) }),
        SiLKStep::new(StepRule::Br),
        SiLKStep::new(StepRule::Cycle { terms: vec![] }),
        rho(Case::Sc, RuleName::ImpL, aux(&[Pos::right(0), Pos::left(0)])),
        rho(
            Case::Sc,
            RuleName::ForallL,
            RuleData {
                aux: vec![Pos::left(2)],
                formula: Some(step_formula()),
                term: Some(fhat(n(), zero())),
                ..RuleData::default()
            },
        ),
        rho(Case::Sc, RuleName::ContrL, aux(&[Pos::left(1), Pos::left(2)])),
        SiLKStep::new(StepRule::ClSc { annotation: Some(NumExpr::succ(n())) }),
    ]
}

pub(crate) fn exp_pattern() -> Sequent {
    Sequent::new(delta(), vec![p(fhat(NumExpr::app("exp2", vec![n()]), zero()))])
}

/// The fhat proof followed by the exponential proof calling it.
pub(crate) fn exp_script() -> Vec<SiLKStep> {
    let mut steps = fhat_script();
    let e = |k: NumExpr| NumExpr::app("exp2", vec![k]);
    let pattern = exp_pattern();
    let f0 = p(f(zero()));
    steps.extend([
        SiLKStep::new(StepRule::Ax1R { formula: f0.clone() }),
        rho(
            Case::Bc,
            RuleName::ERule,
            RuleData {
                aux: vec![Pos::right(0)],
                path: Some(Path(vec![0])),
                to: Some(Expr::Term(fhat(e(NumExpr::ZERO), zero()))),
                ..RuleData::default()
            },
        ),
        SiLKStep::new(StepRule::Ax2R { formula: p(zero()) }),
        rho(Case::Bc, RuleName::ImpL, aux(&[Pos::right(0), Pos::left(0)])).on(&["p2", "p1"]),
        rho(
            Case::Bc,
            RuleName::ForallL,
            RuleData {
                aux: vec![Pos::left(1)],
                formula: Some(step_formula()),
                term: Some(zero()),
                ..RuleData::default()
            },
        ),
        SiLKStep::new(StepRule::ClBc { pattern: Some(pattern.clone()), vars: vec![] }),
        SiLKStep::new(StepRule::Call { target: "g1".into(), g: e(NumExpr::succ(n())), f: None, terms: vec![] }),
        SiLKStep::new(StepRule::ClSc { annotation: None }),
    ]);
    steps
}
