use std::collections::BTreeSet;

use super::element::Element;
use super::spec::GroupSpec;
use crate::error::{Error, Result};

/// A finite symmetric subset of a group, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    group: GroupSpec,
    elements: Vec<Element>,
}

impl Window {
    /// Build a window from an explicit list. The list is deduplicated and
    /// sorted; it must be closed under inversion.
    pub fn from_elements(group: GroupSpec, elements: Vec<Element>) -> Result<Self> {
        if let Some(g) = elements.iter().find(|g| !group.contains(g)) {
            return Err(Error::NotInGroup(g.encode()));
        }
        let set: BTreeSet<Element> = elements.into_iter().collect();
        if let Some(g) = set.iter().find(|g| !set.contains(&g.inverse())) {
            return Err(Error::NotSymmetric(g.encode()));
        }
        Ok(Self {
            group,
            elements: set.into_iter().collect(),
        })
    }

    /// A finite set that need not be symmetric. Order tables may live on such
    /// sets; everything that quantifies over `h` and `h⁻¹` requires
    /// [`Window::is_symmetric`].
    pub fn finite_set(group: GroupSpec, elements: Vec<Element>) -> Result<Self> {
        if let Some(g) = elements.iter().find(|g| !group.contains(g)) {
            return Err(Error::NotInGroup(g.encode()));
        }
        let set: BTreeSet<Element> = elements.into_iter().collect();
        Ok(Self {
            group,
            elements: set.into_iter().collect(),
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.elements.iter().all(|g| self.contains(&g.inverse()))
    }

    /// All products of at most `radius` generators and their inverses.
    pub fn ball(group: &GroupSpec, radius: usize, include_identity: bool) -> Self {
        let mut steps: Vec<Element> = Vec::new();
        for g in group.generators() {
            for s in [g.clone(), g.inverse()] {
                if !s.is_identity() && !steps.contains(&s) {
                    steps.push(s);
                }
            }
        }
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        seen.insert(group.identity());
        let mut frontier = vec![group.identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for s in &steps {
                    let p = w.mul(s);
                    if seen.insert(p.clone()) {
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        if !include_identity {
            seen.remove(&group.identity());
        }
        Self {
            group: group.clone(),
            elements: seen.into_iter().collect(),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
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

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn is_subset_of(&self, other: &Window) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// `h⁻¹ W h`.
    pub fn conjugate(&self, h: &Element) -> Window {
        let set: BTreeSet<Element> = self.elements.iter().map(|g| g.conjugate_by(h)).collect();
        Self {
            group: self.group.clone(),
            elements: set.into_iter().collect(),
        }
    }

    /// The inverse pairs `{g, g⁻¹}` of non-identity elements, each listed once
    /// with its canonically smaller member first.
    pub fn inverse_pairs(&self) -> Vec<(Element, Element)> {
        self.elements
            .iter()
            .filter(|g| !g.is_identity())
            .filter_map(|g| {
                let inv = g.inverse();
                (g < &inv).then(|| (g.clone(), inv))
            })
            .collect()
    }
}

impl<'a> IntoIterator for &'a Window {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn encoded(w: &Window) -> Vec<String> {
        w.iter().map(Element::encode).collect()
    }

    #[test]
    fn integer_ball() {
        let w = Window::ball(&GroupSpec::integers(), 2, true);
        assert_eq!(encoded(&w), ["0", "1", "-1", "2", "-2"]);
        let w = Window::ball(&GroupSpec::integers(), 2, false);
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn free_balls() {
        let f2 = GroupSpec::free(2).unwrap();
        assert_eq!(encoded(&Window::ball(&f2, 1, true)), ["1", "a", "A", "b", "B"]);
        assert_eq!(Window::ball(&f2, 2, true).len(), 17);
        assert_eq!(Window::ball(&f2, 3, true).len(), 53);
    }

    #[test]
    fn dyadic_ball() {
        let q = GroupSpec::rational_subgroup(&[2]).unwrap();
        let w = Window::ball(&q, 2, true);
        assert_eq!(encoded(&w), ["0", "1/2", "-1/2", "1", "-1", "3/2", "-3/2", "2", "-2"]);
    }

    #[test]
    fn explicit_window_must_be_symmetric() {
        let z = GroupSpec::integers();
        let e = |c| Element::Lattice(vec![c]);
        assert!(Window::from_elements(z.clone(), vec![e(0), e(1)]).is_err());
        let w = Window::from_elements(z, vec![e(1), e(0), e(-1), e(1)]).unwrap();
        assert_eq!(encoded(&w), ["0", "1", "-1"]);
        assert_eq!(w.inverse_pairs(), vec![(e(1), e(-1))]);
    }
}
