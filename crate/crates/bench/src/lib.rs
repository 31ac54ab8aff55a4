//! Shared inputs for the criterion benchmarks.

use hyperscheme::families::GabFamily;
use hyperscheme::{fixtures, Scheme};

pub fn bench_schemes() -> Vec<(String, Scheme)> {
    vec![
        ("Z12".into(), fixtures::cyclic_scheme(12)),
        ("petersen".into(), fixtures::petersen()),
        ("S4_S3".into(), fixtures::s4_mod_s3()),
    ]
}

pub fn gab33() -> GabFamily {
    GabFamily::new(3.0, 3.0).expect("valid parameters")
}
