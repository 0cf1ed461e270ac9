//! Fixtures shared by the criterion benchmarks.

use ohtsuki_core::diagram::{braid_closure, BraidWord, LinkDiagram};

pub fn trefoil() -> LinkDiagram {
    braid_closure(&BraidWord::new(2, vec![1, 1, 1]).expect("valid braid"))
}

pub fn figure_eight() -> LinkDiagram {
    braid_closure(&BraidWord::new(3, vec![1, -2, 1, -2]).expect("valid braid"))
}
