use std::collections::{BTreeMap, BTreeSet};

use super::{Name, Sort, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunSig {
    pub args: Vec<Sort>,
    pub result: Sort,
    pub defined: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredSig {
    pub args: Vec<Sort>,
    pub defined: bool,
}

/// Symbol table. Function and predicate names share one namespace so that
/// defined and uninterpreted symbols can never collide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub param: Name,
    pub functions: BTreeMap<Name, FunSig>,
    pub predicates: BTreeMap<Name, PredSig>,
    pub schematic: BTreeSet<Name>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::new("n")
    }
}

const RESERVED: &[&str] = &["s", "forall", "exists", "true", "false"];

impl Signature {
    pub fn new(param: &str) -> Signature {
        Signature {
            param: param.into(),
            functions: BTreeMap::new(),
            predicates: BTreeMap::new(),
            schematic: BTreeSet::new(),
        }
    }

    fn check_fresh(&self, name: &str) -> Result<(), SyntaxError> {
        if RESERVED.contains(&name) || name == &*self.param {
            return Err(SyntaxError::Declaration(format!("`{name}` is reserved")));
        }
        if self.functions.contains_key(name) || self.predicates.contains_key(name) || self.schematic.contains(name) {
            return Err(SyntaxError::Declaration(format!("`{name}` declared twice")));
        }
        Ok(())
    }

    pub fn set_param(&mut self, name: &str) -> Result<(), SyntaxError> {
        if self.functions.contains_key(name) || self.predicates.contains_key(name) || self.schematic.contains(name) {
            return Err(SyntaxError::Declaration(format!("parameter `{name}` clashes with a symbol")));
        }
        self.param = name.into();
        Ok(())
    }

    pub fn declare_fun(&mut self, name: &str, args: Vec<Sort>, result: Sort, defined: bool) -> Result<(), SyntaxError> {
        self.check_fresh(name)?;
        if result == Sort::Prop || args.contains(&Sort::Prop) {
            return Err(SyntaxError::Declaration(format!("`{name}`: functions range over o and i only")));
        }
        if result == Sort::Omega && args.iter().any(|s| *s != Sort::Omega) {
            return Err(SyntaxError::Declaration(format!("numeric function `{name}` must take numeric arguments")));
        }
        if result == Sort::Omega && !defined {
            return Err(SyntaxError::Declaration(format!("numeric function `{name}` must be defined")));
        }
        if !defined && args.contains(&Sort::Omega) {
            return Err(SyntaxError::Declaration(format!(
                "uninterpreted function `{name}` cannot take numeric arguments"
            )));
        }
        self.functions.insert(name.into(), FunSig { args, result, defined });
        Ok(())
    }

    pub fn declare_pred(&mut self, name: &str, args: Vec<Sort>, defined: bool) -> Result<(), SyntaxError> {
        self.check_fresh(name)?;
        if args.contains(&Sort::Prop) {
            return Err(SyntaxError::Declaration(format!("`{name}`: predicate arguments range over o and i only")));
        }
        self.predicates.insert(name.into(), PredSig { args, defined });
        Ok(())
    }

    pub fn declare_schematic(&mut self, name: &str) -> Result<(), SyntaxError> {
        self.check_fresh(name)?;
        self.schematic.insert(name.into());
        Ok(())
    }

    pub fn function(&self, name: &str) -> Option<&FunSig> {
        self.functions.get(name)
    }

    pub fn predicate(&self, name: &str) -> Option<&PredSig> {
        self.predicates.get(name)
    }

    pub fn is_schematic(&self, name: &str) -> bool {
        self.schematic.contains(name)
    }

    /// True for defined functions and defined predicates.
    pub fn is_defined(&self, name: &str) -> bool {
        self.functions.get(name).map(|f| f.defined).unwrap_or(false)
            || self.predicates.get(name).map(|p| p.defined).unwrap_or(false)
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.functions.contains_key(name) || self.predicates.contains_key(name) || self.schematic.contains(name)
    }
}
