use std::fmt::Write as _;

use thiserror::Error;

use crate::modal::FrameClass;

/// Largest `worlds * indivs` for which a model can be built; the positivity
/// table has `2^(worlds*indivs) * worlds` entries.
pub const MAX_CELLS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model needs at least one world and one individual")]
    Empty,
    #[error("model too large: {worlds} worlds x {indivs} individuals")]
    TooLarge { worlds: usize, indivs: usize },
    #[error("access matrix has {found} entries, expected {expected}")]
    AccessShape { expected: usize, found: usize },
    #[error("positivity table has {found} entries, expected {expected}")]
    PositivityShape { expected: usize, found: usize },
    #[error("accessibility relation is not a {0} frame")]
    Frame(FrameClass),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ModelParseError {
    pub line: usize,
    pub message: String,
}

/// A finite constant-domain Kripke structure with an interpretation of the
/// positivity constant.
///
/// A property extension is a `indivs × worlds` boolean table packed into an
/// integer: bit `i * worlds + w` says whether individual `i` has the
/// property at world `w`. `positivity[e * worlds + w]` says whether the
/// extension with index `e` is positive at world `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    worlds: usize,
    indivs: usize,
    access: Vec<bool>,
    positivity: Vec<bool>,
    frame: FrameClass,
}

impl FiniteModel {
    pub fn new(worlds: usize, indivs: usize, access: Vec<bool>, positivity: Vec<bool>) -> Result<Self, ModelError> {
        if worlds == 0 || indivs == 0 {
            return Err(ModelError::Empty);
        }
        if worlds.saturating_mul(indivs) > MAX_CELLS {
            return Err(ModelError::TooLarge { worlds, indivs });
        }
        if access.len() != worlds * worlds {
            return Err(ModelError::AccessShape { expected: worlds * worlds, found: access.len() });
        }
        let expected = (1usize << (worlds * indivs)) * worlds;
        if positivity.len() != expected {
            return Err(ModelError::PositivityShape { expected, found: positivity.len() });
        }
        Ok(FiniteModel { worlds, indivs, access, positivity, frame: FrameClass::K })
    }

    /// Tags the model with a frame class, checking the frame condition.
    pub fn tagged(mut self, frame: FrameClass) -> Result<Self, ModelError> {
        if !frame.admits(&self.access, self.worlds) {
            return Err(ModelError::Frame(frame));
        }
        self.frame = frame;
        Ok(self)
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn indivs(&self) -> usize {
        self.indivs
    }

    pub fn frame(&self) -> FrameClass {
        self.frame
    }

    pub fn extension_count(&self) -> usize {
        1 << (self.worlds * self.indivs)
    }

    pub fn access_matrix(&self) -> &[bool] {
        &self.access
    }

    pub fn positivity_table(&self) -> &[bool] {
        &self.positivity
    }

    pub fn access(&self, u: usize, v: usize) -> bool {
        self.access[u * self.worlds + v]
    }

    pub fn positive(&self, ext: usize, w: usize) -> bool {
        self.positivity[ext * self.worlds + w]
    }

    pub fn set_positive(&mut self, ext: usize, w: usize, value: bool) {
        self.positivity[ext * self.worlds + w] = value;
    }

    /// Whether individual `i` is in extension `ext` at world `w`.
    pub fn in_extension(&self, ext: usize, i: usize, w: usize) -> bool {
        ext >> (i * self.worlds + w) & 1 == 1
    }

    pub fn complement(&self, ext: usize) -> usize {
        ext ^ (self.extension_count() - 1)
    }

    /// The textual model format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "worlds {}", self.worlds);
        let _ = writeln!(out, "indivs {}", self.indivs);
        out.push_str("access\n");
        for row in self.access.chunks(self.worlds) {
            out.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
            out.push('\n');
        }
        out.push_str("positivity\n");
        for row in self.positivity.chunks(self.worlds) {
            out.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ModelParseError> {
        let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| ModelParseError {
                line: text.split('\n').count(),
                message: format!("unexpected end of input, expected {what}"),
            })
        };
        let header = |(line, l): (usize, &str), key: &str| -> Result<usize, ModelParseError> {
            let err = || ModelParseError { line, message: format!("expected `{key} N`") };
            let rest = l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')).ok_or_else(err)?;
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.len() > 3 {
                return Err(err());
            }
            rest.parse().map_err(|_| err())
        };
        let worlds = header(next("worlds")?, "worlds")?;
        let indivs = header(next("indivs")?, "indivs")?;
        if worlds == 0 || indivs == 0 || worlds * indivs > MAX_CELLS {
            return Err(ModelParseError { line: 2, message: "unsupported model size".into() });
        }
        let keyword = |(line, l): (usize, &str), key: &str| {
            if l == key {
                Ok(())
            } else {
                Err(ModelParseError { line, message: format!("expected `{key}`") })
            }
        };
        let row = |(line, l): (usize, &str), out: &mut Vec<bool>| {
            if l.len() != worlds {
                return Err(ModelParseError { line, message: format!("expected {worlds} characters") });
            }
            for c in l.chars() {
                match c {
                    '0' => out.push(false),
                    '1' => out.push(true),
                    _ => return Err(ModelParseError { line, message: format!("unexpected `{c}`") }),
                }
            }
            Ok(())
        };
        keyword(next("access")?, "access")?;
        let mut access = Vec::with_capacity(worlds * worlds);
        for _ in 0..worlds {
            row(next("access row")?, &mut access)?;
        }
        keyword(next("positivity")?, "positivity")?;
        let rows = 1usize << (worlds * indivs);
        let mut positivity = Vec::with_capacity(rows * worlds);
        for _ in 0..rows {
            row(next("positivity row")?, &mut positivity)?;
        }
        for (line, l) in lines {
            if !l.is_empty() {
                return Err(ModelParseError { line, message: "trailing content".into() });
            }
        }
        FiniteModel::new(worlds, indivs, access, positivity)
            .map_err(|e| ModelParseError { line: 1, message: e.to_string() })
    }
}
