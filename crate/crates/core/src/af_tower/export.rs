use std::fmt::Write;

use serde_json::{json, Value};

use super::{inverse_limit_coefficients, AfError, Tower, TraceWeightVector};

/// `{levels, steps, coefficients, traces}`; big integers are decimal strings.
pub fn tower_json(tower: &Tower, traces: &[TraceWeightVector]) -> Result<Value, AfError> {
    let coefficients = (1..=tower.depth())
        .map(|n| {
            inverse_limit_coefficients(tower, n).map(|c| json!({"n": n, "x": c.x.to_string(), "y": c.y.to_string()}))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({
        "levels": tower.levels,
        "steps": tower.steps,
        "coefficients": coefficients,
        "traces": traces,
    }))
}

/// Bratteli diagram: one node per summand labelled by its matrix size, one edge
/// per nonzero multiplicity.
pub fn tower_dot(tower: &Tower) -> String {
    let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n");
    for l in &tower.levels {
        let _ = writeln!(s, "  \"{n}a\" [label=\"{}\"];", l.q_n, n = l.n);
        let _ = writeln!(s, "  \"{n}b\" [label=\"{}\"];", l.q_prev, n = l.n);
        let _ = writeln!(s, "  {{ rank=same; \"{n}a\"; \"{n}b\"; }}", n = l.n);
    }
    for st in &tower.steps {
        let (a, b) = (st.from, st.from + 1);
        let _ = writeln!(s, "  \"{a}a\" -> \"{b}a\" [label=\"{}\"];", st.multiplicity);
        let _ = writeln!(s, "  \"{a}b\" -> \"{b}a\" [label=\"1\"];");
        let _ = writeln!(s, "  \"{a}a\" -> \"{b}b\" [label=\"1\"];");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af_tower::{build_tower, trace_weights};
    use crate::exact_arith::CfExpansion;

    #[test]
    fn json_shape() {
        let t = build_tower(&CfExpansion::from_digits(0, &[2, 3, 1]).unwrap(), 3).unwrap();
        let w = trace_weights(&t, 1, 3).unwrap();
        let v = tower_json(&t, &[w]).unwrap();
        assert_eq!(v["levels"][1], json!({"n": 2, "q_n": "7", "q_prev": "2"}));
        assert_eq!(v["steps"][0]["multiplicity"], "3");
        assert_eq!(v["coefficients"][0], json!({"n": 1, "x": "0", "y": "1"}));
        assert_eq!(v["traces"][0]["n"], 1);
    }

    #[test]
    fn dot_has_edges_for_every_step() {
        let t = build_tower(&CfExpansion::from_digits(0, &[1, 1, 1]).unwrap(), 3).unwrap();
        let dot = tower_dot(&t);
        assert!(dot.starts_with("digraph bratteli {"));
        assert_eq!(dot.matches("->").count(), 6);
    }
}
