//! The SiLK calculus: component pairs, groups and collections, and the
//! inference rules that build them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kernel::{Proof, RuleData, RuleName};
use crate::rewrite::RewriteError;
use crate::syntax::{AnnotatedSequent, Formula, Name, NumExpr, Sequent, Term};

mod apply;
mod script;

pub use apply::{apply_step, Engine};
pub use script::{check_script, leading_group, Outcome, Verdict};

#[cfg(test)]
mod tests;

/// Declared end-sequent pattern `B(n, x̄)` of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub sequent: Sequent,
    pub vars: Vec<Name>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stepcase {
    Top,
    Open(AnnotatedSequent),
    Closed(Sequent),
    /// `[ ]`, produced by cl_LKE.
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Basecase {
    Open(Sequent),
    Closed(Sequent),
}

impl Basecase {
    pub fn sequent(&self) -> &Sequent {
        match self {
            Basecase::Open(s) | Basecase::Closed(s) => s,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Basecase::Closed(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub id: Name,
    pub stepcase: Stepcase,
    pub basecase: Basecase,
    /// Derivation of the basecase sequent.
    pub base_proof: Proof,
    /// Derivation of the stepcase sequent, with link leaves for ↻ and ↷.
    pub step_proof: Option<Proof>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub name: Name,
    pub pairs: Vec<Pair>,
    pub pattern: Option<Pattern>,
    pub closure_index: Option<usize>,
    next_pair: usize,
}

impl Group {
    pub fn is_closed(&self) -> bool {
        self.closure_index.is_some()
    }

    pub fn pair(&self, id: &str) -> Option<&Pair> {
        self.pairs.iter().find(|p| &*p.id == id)
    }
}

/// Ordered component groups; new groups enter on the left.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Collection {
    pub groups: Vec<Group>,
    created: usize,
    closed: usize,
}

impl Collection {
    pub fn group(&self, name: &str) -> Option<&Group> {
        self.groups.iter().find(|g| &*g.name == name)
    }

    pub fn all_closed(&self) -> bool {
        !self.groups.is_empty() && self.groups.iter().all(Group::is_closed)
    }

    /// Groups sorted by closure index; open groups last.
    pub fn in_closure_order(&self) -> Vec<&Group> {
        let mut gs: Vec<&Group> = self.groups.iter().collect();
        gs.sort_by_key(|g| g.closure_index.unwrap_or(usize::MAX));
        gs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Bc,
    Sc,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Bc => "bc",
            Case::Sc => "sc",
        })
    }
}

/// The fifteen SiLK inference rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StepKind {
    Ax1R,
    Ax2R,
    AxL,
    CcR,
    CcL,
    Br,
    ClBc,
    ClLKE,
    ClSc,
    Rho1Sc,
    Rho2Sc,
    Rho1Bc,
    Rho2Bc,
    Cycle,
    Call,
}

impl StepKind {
    pub const ALL: [StepKind; 15] = [
        StepKind::Ax1R,
        StepKind::Ax2R,
        StepKind::AxL,
        StepKind::CcR,
        StepKind::CcL,
        StepKind::Br,
        StepKind::ClBc,
        StepKind::ClLKE,
        StepKind::ClSc,
        StepKind::Rho1Sc,
        StepKind::Rho2Sc,
        StepKind::Rho1Bc,
        StepKind::Rho2Bc,
        StepKind::Cycle,
        StepKind::Call,
    ];

    /// Conventional rule label.
    pub fn label(self) -> &'static str {
        match self {
            StepKind::Ax1R => "Ax1:r",
            StepKind::Ax2R => "Ax2:r",
            StepKind::AxL => "Ax:l",
            StepKind::CcR => "c_c:r",
            StepKind::CcL => "c_c:l",
            StepKind::Br => "br",
            StepKind::ClBc => "cl_bc",
            StepKind::ClLKE => "cl_LKE",
            StepKind::ClSc => "cl_sc",
            StepKind::Rho1Sc => "rho1_sc",
            StepKind::Rho2Sc => "rho2_sc",
            StepKind::Rho1Bc => "rho1_bc",
            StepKind::Rho2Bc => "rho2_bc",
            StepKind::Cycle => "cycle",
            StepKind::Call => "call",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for StepKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        StepKind::ALL
            .into_iter()
            .find(|k| k.label().eq_ignore_ascii_case(s) || format!("{k:?}").eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown SiLK rule `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepRule {
    Ax1R {
        formula: Formula,
    },
    Ax2R {
        formula: Formula,
    },
    AxL {
        formula: Formula,
        annotation: NumExpr,
    },
    CcR,
    CcL,
    Br,
    /// An LKE inference on one or two basecases (`Bc`) or stepcases (`Sc`).
    Rho {
        case: Case,
        arity: usize,
        rule: RuleName,
        data: RuleData,
    },
    ClBc {
        pattern: Option<Sequent>,
        vars: Vec<Name>,
    },
    ClLKE,
    ClSc {
        annotation: Option<NumExpr>,
    },
    Cycle {
        terms: Vec<Term>,
    },
    /// `g` is the call parameter, `f` the annotation (defaults to `g`).
    Call {
        target: Name,
        g: NumExpr,
        f: Option<NumExpr>,
        terms: Vec<Term>,
    },
}

/// One script line. `group` and `pairs` may be left out when unambiguous;
/// `new_pair` names the pair created by Ax1:r, Ax2:r and br.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiLKStep {
    pub rule: StepRule,
    pub group: Option<Name>,
    pub pairs: Vec<Name>,
    pub new_pair: Option<Name>,
}

impl SiLKStep {
    pub fn new(rule: StepRule) -> SiLKStep {
        SiLKStep { rule, group: None, pairs: Vec::new(), new_pair: None }
    }

    pub fn in_group(mut self, group: &str) -> SiLKStep {
        self.group = Some(group.into());
        self
    }

    pub fn on(mut self, pairs: &[&str]) -> SiLKStep {
        self.pairs = pairs.iter().map(|p| Name::from(*p)).collect();
        self
    }

    pub fn named(mut self, pair: &str) -> SiLKStep {
        self.new_pair = Some(pair.into());
        self
    }

    pub fn kind(&self) -> StepKind {
        match &self.rule {
            StepRule::Ax1R { .. } => StepKind::Ax1R,
            StepRule::Ax2R { .. } => StepKind::Ax2R,
            StepRule::AxL { .. } => StepKind::AxL,
            StepRule::CcR => StepKind::CcR,
            StepRule::CcL => StepKind::CcL,
            StepRule::Br => StepKind::Br,
            StepRule::Rho { case: Case::Bc, arity: 2, .. } => StepKind::Rho2Bc,
            StepRule::Rho { case: Case::Bc, .. } => StepKind::Rho1Bc,
            StepRule::Rho { case: Case::Sc, arity: 2, .. } => StepKind::Rho2Sc,
            StepRule::Rho { case: Case::Sc, .. } => StepKind::Rho1Sc,
            StepRule::ClBc { .. } => StepKind::ClBc,
            StepRule::ClLKE => StepKind::ClLKE,
            StepRule::ClSc { .. } => StepKind::ClSc,
            StepRule::Cycle { .. } => StepKind::Cycle,
            StepRule::Call { .. } => StepKind::Call,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SilkError {
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("group `{group}` has no pair `{pair}`")]
    UnknownPair { group: String, pair: String },
    #[error("group `{0}` is closed")]
    ClosedGroupTouched(String),
    #[error("there is no open group")]
    NoOpenGroup,
    #[error("name `{0}` is already in use")]
    DuplicateName(String),
    #[error("cannot choose {needed} pair(s) of group `{group}`; name them explicitly")]
    AmbiguousPair { group: String, needed: usize },
    #[error("pair `{pair}` of group `{group}` has an open basecase")]
    StepcaseBeforeClosedBasecase { group: String, pair: String },
    #[error("{expected} and {found} differ modulo the theory")]
    PatternMismatch { expected: String, found: String },
    #[error("annotation {found} differs from {expected}")]
    AnnotationMismatch { expected: String, found: String },
    #[error("{rule} expects {expected} argument(s), got {found}")]
    ArityMismatch { rule: String, expected: usize, found: usize },
    #[error("{0}")]
    WrongState(String),
    #[error("inference rejected: {0}")]
    Inference(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("the collection has open groups")]
    NotAProof,
}
