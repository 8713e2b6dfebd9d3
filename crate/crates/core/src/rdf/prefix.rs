use std::collections::BTreeMap;

use super::{Iri, RdfError};
use crate::vocab;

/// Namespace IRI assigned to a prefix label that a lenient parse found undeclared.
pub const UNDECLARED_NAMESPACE_BASE: &str = "urn:xkg:undeclared:";

/// Prefix label to namespace mapping. Labels are unique; a label never maps to two
/// namespaces.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixTable {
    map: BTreeMap<String, Iri>,
}

impl PrefixTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The standard table holding every namespace the pipeline emits.
    pub fn standard() -> Self {
        let mut table = Self::new();
        for (label, ns) in vocab::STANDARD_PREFIXES {
            table.map.insert(label.to_string(), Iri::new_unchecked(ns));
        }
        table
    }

    /// Binds `label`. Rebinding a label to the same namespace is a no-op.
    pub fn insert(&mut self, label: &str, namespace: Iri) -> Result<(), RdfError> {
        if !is_valid_label(label) {
            return Err(RdfError::InvalidPrefixLabel(label.to_string()));
        }
        match self.map.get(label) {
            Some(existing) if existing != &namespace => Err(RdfError::PrefixConflict {
                label: label.to_string(),
                first: existing.as_str().to_string(),
                second: namespace.as_str().to_string(),
            }),
            Some(_) => Ok(()),
            None => {
                self.map.insert(label.to_string(), namespace);
                Ok(())
            }
        }
    }

    /// Binds `label`, replacing any previous binding (Turtle `@prefix` redefinition).
    pub(crate) fn rebind(&mut self, label: &str, namespace: Iri) {
        self.map.insert(label.to_string(), namespace);
    }

    pub fn get(&self, label: &str) -> Option<&Iri> {
        self.map.get(label)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn expand(&self, label: &str, local: &str) -> Result<Iri, RdfError> {
        let ns = self.map.get(label).ok_or_else(|| RdfError::UndeclaredPrefix(label.to_string()))?;
        Iri::new(format!("{}{}", ns.as_str(), local))
    }

    /// Contracts `iri` to `label:local` using the longest matching namespace whose
    /// remainder is a valid local name.
    pub fn contract(&self, iri: &Iri) -> Option<String> {
        self.map
            .iter()
            .filter_map(|(label, ns)| {
                let local = iri.as_str().strip_prefix(ns.as_str())?;
                is_valid_local(local).then_some((ns.as_str().len(), label, local))
            })
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)))
            .map(|(_, label, local)| format!("{label}:{local}"))
    }

    /// Union of two tables; fails on a label bound to different namespaces.
    pub fn merged(&self, other: &PrefixTable) -> Result<PrefixTable, RdfError> {
        let mut out = self.clone();
        for (label, ns) in other.iter() {
            out.insert(label, ns.clone())?;
        }
        Ok(out)
    }

    /// Labels bound to the placeholder namespace by a lenient parse.
    pub fn undeclared_labels(&self) -> Vec<&str> {
        self.map
            .iter()
            .filter(|(_, ns)| ns.as_str().starts_with(UNDECLARED_NAMESPACE_BASE))
            .map(|(label, _)| label.as_str())
            .collect()
    }

    /// Label bound to exactly `namespace`, if any.
    pub fn label_for(&self, namespace: &str) -> Option<&str> {
        self.map.iter().find(|(_, ns)| ns.as_str() == namespace).map(|(l, _)| l.as_str())
    }
}

pub(crate) fn undeclared_namespace(label: &str) -> Iri {
    Iri::new_unchecked(format!("{UNDECLARED_NAMESPACE_BASE}{label}:"))
}

fn is_pn_chars_base(c: char) -> bool {
    c.is_alphabetic()
}

fn is_pn_chars(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

/// Turtle PN_PREFIX (possibly empty).
pub fn is_valid_label(label: &str) -> bool {
    if label.is_empty() {
        return true;
    }
    let mut chars = label.chars();
    let first = chars.next().unwrap();
    if !is_pn_chars_base(first) || label.ends_with('.') {
        return false;
    }
    chars.all(|c| is_pn_chars(c) || c == '.')
}

/// Conservative subset of Turtle PN_LOCAL used when contracting: no escapes, no
/// percent-encoding, no colons.
pub fn is_valid_local(local: &str) -> bool {
    if local.is_empty() {
        return true;
    }
    let first = local.chars().next().unwrap();
    if !(first.is_alphanumeric() || first == '_') || local.ends_with('.') {
        return false;
    }
    local.chars().all(|c| is_pn_chars(c) || c == '.')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_table_has_required_labels() {
        let table = PrefixTable::standard();
        for label in ["fred", "pbrs", "pblr", "vn.role", "wn30", "dul", "d0", "owl", "rdf", "rdfs", "xsd"] {
            assert!(table.get(label).is_some(), "{label}");
        }
    }

    #[test]
    fn expand_contract_round_trip() {
        let table = PrefixTable::standard();
        for (label, _) in table.iter() {
            let iri = table.expand(label, "x_1").unwrap();
            assert_eq!(table.contract(&iri).unwrap(), format!("{label}:x_1"));
        }
    }

    #[test]
    fn conflict_detected() {
        let mut table = PrefixTable::standard();
        let err = table.insert("fred", Iri::new("http://other/").unwrap()).unwrap_err();
        assert!(matches!(err, RdfError::PrefixConflict { .. }));
        table.insert("fred", Iri::new(vocab::FRED).unwrap()).unwrap();
    }

    #[test]
    fn longest_namespace_wins() {
        let mut table = PrefixTable::new();
        table.insert("a", Iri::new("http://e/").unwrap()).unwrap();
        table.insert("b", Iri::new("http://e/sub/").unwrap()).unwrap();
        let iri = Iri::new("http://e/sub/x").unwrap();
        assert_eq!(table.contract(&iri).unwrap(), "b:x");
    }

    #[test]
    fn locals_that_cannot_be_contracted() {
        let mut table = PrefixTable::new();
        table.insert("e", Iri::new("http://e/").unwrap()).unwrap();
        assert!(table.contract(&Iri::new("http://e/a/b").unwrap()).is_none());
        assert!(table.contract(&Iri::new("http://e/a.").unwrap()).is_none());
        assert_eq!(
            table.contract(&Iri::new("http://e/celebrate-01.honorer").unwrap()).unwrap(),
            "e:celebrate-01.honorer"
        );
    }
}
