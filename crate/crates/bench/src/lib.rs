//! Shared inputs for the benchmarks in `benches/`.

use fsblocks::groupspec::{self, BuildContext};
use fsblocks::Group;

/// Builds a groupspec with default bounds; panics on malformed input.
pub fn group(spec: &str) -> Group {
    let s = groupspec::parse(spec).expect("valid groupspec");
    groupspec::build(&s, &BuildContext::default()).expect("buildable").group
}
