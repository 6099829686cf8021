pub mod catalog;
pub mod curve;
pub mod eval;
pub mod geodesic;
pub mod strip;
pub mod surface;

use serde_json::Value;

use geo3::Vec3;

use crate::output::{num, Report};

/// A finished command: its report and whether an invariant check failed.
pub struct Outcome {
    pub report: Report,
    pub check_failed: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome {
            report,
            check_failed: false,
        }
    }
}

pub(crate) fn vec3(v: Vec3) -> [Value; 3] {
    [num(v.x), num(v.y), num(v.z)]
}

pub(crate) fn nulls<const N: usize>() -> [Value; N] {
    std::array::from_fn(|_| Value::Null)
}

pub(crate) fn point_t(t: f64) -> String {
    format!("t = {t}")
}

pub(crate) fn point_uv(u: f64, v: f64) -> String {
    format!("(u, v) = ({u}, {v})")
}

/// `n` indices spread evenly over `0..len`, always including both ends.
pub(crate) fn spread(len: usize, n: usize) -> Vec<usize> {
    if len <= n {
        return (0..len).collect();
    }
    let mut idx: Vec<usize> = (0..n)
        .map(|i| ((i as f64) * (len - 1) as f64 / (n - 1) as f64).round() as usize)
        .collect();
    idx.dedup();
    idx
}
