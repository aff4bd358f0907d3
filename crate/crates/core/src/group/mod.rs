//! Exact arithmetic, canonical encodings and Cayley balls for the concrete
//! groups: ℤⁿ, subgroups of ℚ with restricted denominators, free groups and
//! the Klein-bottle group.

mod element;
mod spec;
mod window;

pub use element::{Element, Rational};
pub use spec::{GroupKind, GroupSpec};
pub use window::Window;

use crate::error::Result;

/// `g · h`, checked.
pub fn compose(g: &Element, h: &Element) -> Result<Element> {
    g.compose(h)
}

pub fn invert(g: &Element) -> Element {
    g.inverse()
}

pub fn generate_ball(group: &GroupSpec, radius: usize, include_identity: bool) -> Window {
    Window::ball(group, radius, include_identity)
}

pub fn encode_element(g: &Element) -> String {
    g.encode()
}

pub fn decode_element(text: &str, group: &GroupSpec) -> Result<Element> {
    group.decode(text)
}
