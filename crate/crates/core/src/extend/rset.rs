use serde::{Serialize, Serializer};

use crate::cones::LeftOrderCone;
use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, Window};

/// A prescription of which element of an inverse pair comes first: at most
/// one of `g`, `g⁻¹` belongs to the set, and never the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSet {
    group: GroupSpec,
    elements: Vec<Element>,
}

impl RSet {
    pub fn new(group: GroupSpec, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut elements: Vec<Element> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        for g in &elements {
            if !group.contains(g) {
                return Err(Error::NotInGroup(g.encode()));
            }
            if g.is_identity() {
                return Err(Error::InvalidRSet("the identity cannot be prescribed".into()));
            }
            if elements.binary_search(&g.inverse()).is_ok() {
                return Err(Error::InvalidRSet(format!(
                    "both {g} and its inverse are prescribed"
                )));
            }
        }
        Ok(Self { group, elements })
    }

    pub fn empty(group: GroupSpec) -> Self {
        Self {
            group,
            elements: Vec::new(),
        }
    }

    /// Parses encoded elements.
    pub fn decode<S: AsRef<str>>(group: &GroupSpec, texts: &[S]) -> Result<Self> {
        Self::new(group.clone(), group.decode_all(texts)?)
    }

    /// The canonically smaller member of every inverse pair of the window.
    pub fn canonical_full(window: &Window) -> Self {
        Self {
            group: window.group().clone(),
            elements: window.inverse_pairs().into_iter().map(|(g, _)| g).collect(),
        }
    }

    /// The positive elements of the window under a left-order cone.
    pub fn from_cone(cone: &LeftOrderCone, window: &Window) -> Self {
        let elements = window.iter().filter(|g| cone.is_positive(g)).cloned().collect();
        Self {
            group: window.group().clone(),
            elements,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Whether the set meets every inverse pair of the window exactly once.
    pub fn covers(&self, window: &Window) -> bool {
        self.first_uncovered(window).is_none()
    }

    pub fn first_uncovered(&self, window: &Window) -> Option<Element> {
        window
            .iter()
            .find(|g| !g.is_identity() && !self.contains(g) && !self.contains(&g.inverse()))
            .cloned()
    }

    /// The part of the set inside a window.
    pub fn restrict(&self, window: &Window) -> Self {
        Self {
            group: self.group.clone(),
            elements: self.elements.iter().filter(|g| window.contains(g)).cloned().collect(),
        }
    }
}

impl Serialize for RSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants() {
        let z = GroupSpec::integers();
        assert!(RSet::decode(&z, &["1", "2"]).is_ok());
        assert!(matches!(RSet::decode(&z, &["0"]), Err(Error::InvalidRSet(_))));
        assert!(matches!(RSet::decode(&z, &["1", "-1"]), Err(Error::InvalidRSet(_))));
        assert!(RSet::decode(&z, &["1/2"]).is_err());
    }

    #[test]
    fn coverage() {
        let z = GroupSpec::integers();
        let w = Window::ball(&z, 2, true);
        let full = RSet::canonical_full(&w);
        assert_eq!(serde_json::to_string(&full).unwrap(), r#"["1","2"]"#);
        assert!(full.covers(&w));
        let part = RSet::decode(&z, &["-2"]).unwrap();
        assert_eq!(part.first_uncovered(&w), Some(Element::Lattice(vec![1])));
        let k = GroupSpec::klein();
        let wk = Window::ball(&k, 2, true);
        assert!(RSet::from_cone(&LeftOrderCone::standard(&k), &wk).covers(&wk));
    }
}
