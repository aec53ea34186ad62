use serde::{Deserialize, Serialize};

/// Canonical element handle.
///
/// Every structure in this crate hands out exactly one handle per element, so
/// equality of elements is equality of handles. Pointed carriers reuse the
/// same type: the basepoint `*` is [`MonElement::Zero`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonElement {
    Zero,
    One,
    /// Nonempty word of generator ids (table index, letter ids, or a path
    /// encoded as `[start vertex, step...]`).
    Word(Vec<u32>),
    /// Element of a product or coproduct that is neither all-zero nor all-one.
    Tuple(Vec<MonElement>),
}

impl MonElement {
    pub fn letter(id: u32) -> Self {
        MonElement::Word(vec![id])
    }

    pub fn word(ids: impl Into<Vec<u32>>) -> Self {
        let ids = ids.into();
        if ids.is_empty() {
            MonElement::One
        } else {
            MonElement::Word(ids)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MonElement::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, MonElement::One)
    }

    pub fn as_word(&self) -> Option<&[u32]> {
        match self {
            MonElement::Word(w) => Some(w),
            _ => None,
        }
    }
}

/// Split a label on top-level occurrences of `sep`, ignoring separators nested
/// inside parentheses.
pub(crate) fn split_top_level(s: &str, sep: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut rest = s;
    while !rest.is_empty() {
        if depth == 0 && rest.starts_with(sep) {
            parts.push(std::mem::take(&mut current));
            rest = &rest[sep.len()..];
            continue;
        }
        let c = rest.chars().next().unwrap();
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        current.push(c);
        rest = &rest[c.len_utf8()..];
    }
    parts.push(current);
    parts
}
