use crate::group::{bundled_path, GroupInstance, DEFAULT_SEED};
use crate::tolerance::Tolerance;

pub fn instance(name: &str) -> GroupInstance {
    GroupInstance::load(bundled_path(name), DEFAULT_SEED, Tolerance::default()).unwrap()
}

/// Element indices by label.
pub fn els(gi: &GroupInstance, labels: &[&str]) -> Vec<usize> {
    let mut v: Vec<usize> = labels.iter().map(|l| gi.element(l).unwrap()).collect();
    v.sort_unstable();
    v
}
