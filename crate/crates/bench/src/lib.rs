//! Shared fixtures for the kernel benchmarks.

use coxkit::{CoxeterSystem, GroupElement, NamedType, Word};

pub fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::from_named(NamedType::parse(name).expect("catalog name"))
}

/// The longest element of a finite catalog group, found by walking up.
pub fn longest_element(sys: &CoxeterSystem) -> GroupElement {
    let mut cur = sys.identity();
    loop {
        let descents = sys.right_descents(&cur).expect("sign test");
        let up = sys
            .generators()
            .find(|s| !descents.contains(*s));
        match up {
            Some(s) => cur = sys.multiply(&cur, &sys.generator_element(s)).expect("engine"),
            None => return cur,
        }
    }
}

/// The reversed normal form: a reduced word for the inverse that is
/// generally far from ShortLex-minimal, so normalization has real work to do.
pub fn reversed_word(w: &GroupElement) -> Word {
    Word::new(w.normal_form().iter().rev().copied().collect())
}
