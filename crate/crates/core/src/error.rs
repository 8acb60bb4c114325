use thiserror::Error;

/// Errors raised by the library. Variant names double as the error codes the
/// CLI prints, see [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no transition for state `{state}` on letter `{letter}`")]
    MissingTransition { state: String, letter: String },
    #[error("more than one transition for state `{state}` on letter `{letter}`")]
    DuplicateTransition { state: String, letter: String },
    #[error(
        "state `{0}` is declared as sink but does not fix every letter with itself as restriction"
    )]
    BadSink(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateName(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("automaton is not invertible")]
    NotInvertible,
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("power must be at least 1, got {0}")]
    BadPower(usize),
    #[error("automaton declares no sink state")]
    NoSink,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("vertex `{0}` is isolated")]
    IsolatedVertex(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("enumerating {entries} level entries exceeds the cap of {cap}")]
    LevelTooLarge { entries: u128, cap: u64 },
    #[error("vertices `{0}` and `{1}` are not connected")]
    Disconnected(String, String),
    #[error("word does not stabilize level {0}")]
    NotInStabilizer(usize),
    #[error("nucleus search did not stabilize within caps ({0})")]
    NotContractingWithinCaps(String),
    #[error("permutation group on {degree} points exceeds the cap of {cap}")]
    QuotientTooLarge { degree: usize, cap: usize },
    #[error("tuples have inconsistent lengths")]
    RaggedTuples,
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a forest")]
    NotAForest,
    #[error("orientation contains an oriented cycle")]
    OrientedCycle,
    #[error("word is not an oriented cycle of the graph: {0}")]
    NotACycle(String),
    #[error("trace words belong to different presentations")]
    PresentationMismatch,
    #[error("bad output assignment: {0}")]
    BadAssignment(String),
    #[error("bad permutation action: {0}")]
    BadAction(String),
    #[error("fragile search inconclusive up to k = {0}")]
    FragileInconclusive(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::MissingTransition { .. } => "MissingTransition",
            Error::DuplicateTransition { .. } => "DuplicateTransition",
            Error::BadSink(_) => "BadSink",
            Error::DuplicateName(_) => "DuplicateName",
            Error::UnknownState(_) => "UnknownState",
            Error::UnknownLetter(_) => "UnknownLetter",
            Error::NotInvertible => "NotInvertible",
            Error::AlphabetMismatch => "AlphabetMismatch",
            Error::BadPower(_) => "BadPower",
            Error::NoSink => "NoSink",
            Error::EmptyGraph => "EmptyGraph",
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::IsolatedVertex(_) => "IsolatedVertex",
            Error::UnknownFixture(_) => "UnknownFixture",
            Error::UnknownGenerator(_) => "UnknownGenerator",
            Error::LevelTooLarge { .. } => "LevelTooLarge",
            Error::Disconnected(..) => "Disconnected",
            Error::NotInStabilizer(_) => "NotInStabilizer",
            Error::NotContractingWithinCaps(_) => "NotContractingWithinCaps",
            Error::QuotientTooLarge { .. } => "QuotientTooLarge",
            Error::RaggedTuples => "RaggedTuples",
            Error::NotATree => "NotATree",
            Error::NotAForest => "NotAForest",
            Error::OrientedCycle => "OrientedCycle",
            Error::NotACycle(_) => "NotACycle",
            Error::PresentationMismatch => "PresentationMismatch",
            Error::BadAssignment(_) => "BadAssignment",
            Error::BadAction(_) => "BadAction",
            Error::FragileInconclusive(_) => "FragileInconclusive",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
