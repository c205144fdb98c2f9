use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("empty diagram")]
    EmptyDiagram,

    #[error("edge {edge} appears {count} time(s); every edge id must appear exactly twice")]
    EdgeCount { edge: u32, count: usize },

    #[error("edge id {edge} out of range; a {crossings}-crossing code uses edge ids 1..={max}", max = 2 * crossings)]
    EdgeRange { edge: u32, crossings: usize },

    #[error("code describes a link: the strand through edge {start} closes after {covered} of {total} edges")]
    MultiComponent { start: u32, covered: usize, total: usize },

    #[error("crossing {crossing}: strand enters through the outgoing under-position")]
    Orientation { crossing: usize },

    #[error("rotation data is not planar: V - E + F = {euler}, expected 2")]
    NonPlanar { euler: i64 },

    #[error("outer region {requested} is not a face (faces are 0..={max})")]
    InvalidOuter { requested: usize, max: usize },

    #[error("diagram is not prime, reduced and alternating: {0}")]
    InvalidDiagram(String),

    #[error("malformed word token {token:?} at byte {position}")]
    WordToken { token: String, position: usize },

    #[error("generator X{generator} out of range (presentation has {count} generators)")]
    GeneratorRange { generator: u32, count: usize },

    #[error("word contains X0; Dehn-presentation words use X1.. only")]
    ContainsOuterGenerator,

    #[error("unknown region {0}")]
    UnknownRegion(u32),

    #[error("expected a two-letter word, got {0} letter(s)")]
    WordLength(usize),

    #[error("gluing failure at square {index}: {reason}")]
    Gluing { index: usize, reason: String },

    #[error("fundamental block invariant violated: {0}")]
    BlockInvariant(String),

    #[error("unoriented completion failed at cell ({x}, {y}): {reason}")]
    Completion { x: i64, y: i64, reason: String },

    #[error("relator squares do not pair up: {0}")]
    Pairing(String),
}
