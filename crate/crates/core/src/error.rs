use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },

    #[error("{}unknown element `{name}`", fmt_line(*.line))]
    UnknownElement { line: Option<usize>, name: String },

    #[error("line {line}: duplicate product line for `{left} {right}`")]
    DuplicateProduct {
        line: usize,
        left: String,
        right: String,
    },

    #[error("line {line}: conflicting product `{left} {right} = {given}` (expected `{expected}`)")]
    ConflictingProduct {
        line: usize,
        left: String,
        right: String,
        given: String,
        expected: String,
    },

    #[error("missing `{0}:` line")]
    MissingLine(&'static str),

    #[error("line {line}: duplicate `{key}:` line")]
    DuplicateHeader { line: usize, key: &'static str },

    #[error("{}duplicate element name `{name}`", fmt_line(*.line))]
    DuplicateElement { line: Option<usize>, name: String },

    #[error("{}`eps` is reserved for the empty word and cannot name an element", fmt_line(*.line))]
    ReservedName { line: Option<usize> },

    #[error("carrier of size {size} exceeds the cap of {cap}")]
    CarrierCap { size: usize, cap: usize },

    #[error("generator argument {got} exceeds the cap of {cap}")]
    GeneratorCap { got: usize, cap: usize },

    #[error("invalid letter `{0}`: letters must be single ASCII letters, pairwise distinct")]
    InvalidLetter(String),

    #[error("table entry refers to element index {0}, which is out of range")]
    IndexOutOfRange(usize),

    #[error("word `{0}` is not irreducible")]
    NotIrreducible(String),

    #[error("word `{0}` is already irreducible")]
    AlreadyIrreducible(String),

    #[error("word `{0}` contains the identity letter")]
    ContainsIdentity(String),

    #[error("enumeration of {what} exceeds the cap of {cap}")]
    EnumerationCap { what: &'static str, cap: usize },

    #[error("the rewriting system of this monoid is not confluent")]
    NotConfluent,

    #[error("invalid tree syntax at byte {offset}: {message}")]
    TreeSyntax { offset: usize, message: String },
}

fn fmt_line(line: Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}
