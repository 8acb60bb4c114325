use std::fmt;

/// Suffix marking a formal inverse in text form.
pub const INVERSE_SUFFIX: &str = "^-1";

/// Identifier of a state or a letter. Formal inverses carry a flag instead of
/// a mangled name, so `a` and `a^-1` share the same base name.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: String,
    inverse: bool,
}

impl Symbol {
    pub fn new(name: impl Into<String>) -> Self {
        Symbol {
            name: name.into(),
            inverse: false,
        }
    }

    pub fn inverted(name: impl Into<String>) -> Self {
        Symbol {
            name: name.into(),
            inverse: true,
        }
    }

    /// Parses `name` or `name^-1`.
    pub fn parse(text: &str) -> Self {
        match text.strip_suffix(INVERSE_SUFFIX) {
            Some(base) if !base.is_empty() => Symbol::inverted(base),
            _ => Symbol::new(text),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    /// The formal inverse; an involution.
    pub fn inverse(&self) -> Self {
        Symbol {
            name: self.name.clone(),
            inverse: !self.inverse,
        }
    }

    pub(crate) fn primed(&self) -> Self {
        Symbol {
            name: format!("{}'", self.name),
            inverse: self.inverse,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}{}", self.name, INVERSE_SUFFIX)
        } else {
            f.write_str(&self.name)
        }
    }
}

impl From<&str> for Symbol {
    fn from(text: &str) -> Self {
        Symbol::parse(text)
    }
}
