//! Shared fixtures for the criterion benches.

use nuca_core::gallery::{build_entry, GalleryEntry};
use nuca_core::{Configuration, IntervalDomain};

pub fn gallery(name: &str) -> GalleryEntry {
    build_entry(name).expect("gallery entry builds")
}

pub fn wide_window(half: i64) -> IntervalDomain {
    IntervalDomain::new(-half, half)
}

/// A sparse pulse train on a zero background, for simulation benches.
pub fn pulse_train(entry: &GalleryEntry, spacing: usize, width: usize) -> Configuration {
    let alphabet = entry.ruleset.alphabet().clone();
    let center = (0..width)
        .map(|i| if i % spacing == 0 { 1 } else { 0 })
        .collect();
    Configuration::finite("pulses", alphabet, 0, center, 1).expect("pulse train builds")
}
