use serde_json::{json, Value};

use crate::linalg::{CMatrix, SparseCMatrix};

/// Row-major nested array of `[re, im]` pairs.
pub fn dense_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| json!([m[(r, c)].re, m[(r, c)].im])).collect()))
            .collect(),
    )
}

/// `{"shape": [r, c], "entries": [[row, col, re, im], ...]}` in row-major order.
pub fn sparse_json(m: &SparseCMatrix) -> Value {
    let entries: Vec<Value> = m.entries().map(|(r, c, v)| json!([r, c, v.re, v.im])).collect();
    json!({ "shape": [m.nrows(), m.ncols()], "entries": entries })
}
