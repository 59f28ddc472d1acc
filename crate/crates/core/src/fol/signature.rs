use std::collections::BTreeMap;

use crate::diagnostic::{ErrorClass, ParseDiagnostic, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Predicate,
    Function,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymbolInfo {
    pub kind: SymbolKind,
    pub arity: usize,
    pub first_use: Position,
}

/// Arity of every predicate and function symbol seen in one knowledge base.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignatureTable {
    symbols: BTreeMap<String, SymbolInfo>,
}

impl SignatureTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a use of `name`; a second arity or kind is an `ArityConflict`.
    pub fn record(&mut self, name: &str, kind: SymbolKind, arity: usize, at: Position) -> Result<(), ParseDiagnostic> {
        match self.symbols.get(name) {
            None => {
                self.symbols.insert(name.to_string(), SymbolInfo { kind, arity, first_use: at });
                Ok(())
            }
            Some(info) if info.kind == kind && info.arity == arity => Ok(()),
            Some(info) if info.kind != kind => Err(ParseDiagnostic::new(
                ErrorClass::ArityConflict,
                at,
                format!("`{name}` used as both predicate and function (first use at {})", info.first_use),
            )),
            Some(info) => Err(ParseDiagnostic::new(
                ErrorClass::ArityConflict,
                at,
                format!("`{name}` used with arity {arity} but arity {} at {}", info.arity, info.first_use),
            )),
        }
    }

    pub fn get(&self, name: &str) -> Option<&SymbolInfo> {
        self.symbols.get(name)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &SymbolInfo)> {
        self.symbols.iter()
    }
}
