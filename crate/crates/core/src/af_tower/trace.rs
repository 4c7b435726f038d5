use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{AfError, DimensionVector, Tower};
use crate::exact_arith::rational_to_f64;

/// Levels between the target and the default horizon.
pub const DEFAULT_HORIZON_OFFSET: usize = 30;

/// Trace per unit rank in each summand of `C_level`, normalized so the
/// identity has trace 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceWeightVector {
    pub level: usize,
    pub horizon: usize,
    pub beta: BigRational,
    pub beta_prime: BigRational,
}

/// Weights at `level` obtained by restricting the trace that puts all mass on
/// the big summand at `horizon` (`w_M = (1, 0)`) back through `w_n = M^T w_{n+1}`.
pub fn trace_weights(tower: &Tower, level: usize, horizon: usize) -> Result<TraceWeightVector, AfError> {
    if horizon < level + 2 {
        return Err(AfError::HorizonTooSmall { level, horizon });
    }
    tower.level(horizon)?;
    tower.level(level)?;
    let (mut b, mut b_prime) = (BigInt::one(), BigInt::zero());
    for n in (level..horizon).rev() {
        let m = &tower.step(n)?.multiplicity;
        // M = [[m, 1], [1, 0]] is symmetric.
        let nb = m * &b + &b_prime;
        b_prime = std::mem::replace(&mut b, nb);
    }
    let l = tower.level(level)?;
    let norm = &b * &l.q_n + &b_prime * &l.q_prev;
    Ok(TraceWeightVector {
        level,
        horizon,
        beta: BigRational::new(b, norm.clone()),
        beta_prime: BigRational::new(b_prime, norm),
    })
}

/// `β d + β′ d′`.
pub fn trace_of(w: &TraceWeightVector, v: &DimensionVector) -> Result<BigRational, AfError> {
    if w.level != v.level {
        return Err(AfError::LevelMismatch { coefficients: w.level, vector: v.level });
    }
    Ok(&w.beta * BigRational::from(v.d.clone()) + &w.beta_prime * BigRational::from(v.d_prime.clone()))
}

/// Horizon `level + 30`, extended ten levels at a time until the trace of `probe`
/// moves by less than `1e−12`, or the tower runs out.
pub fn trace_weights_auto(
    tower: &Tower,
    level: usize,
    probe: &DimensionVector,
) -> Result<TraceWeightVector, AfError> {
    let threshold = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
    let mut horizon = (level + DEFAULT_HORIZON_OFFSET).min(tower.depth()).max(level + 2);
    let mut w = trace_weights(tower, level, horizon)?;
    loop {
        let next = horizon + 10;
        if next > tower.depth() {
            return Ok(w);
        }
        let w_next = trace_weights(tower, level, next)?;
        let moved = (trace_of(&w_next, probe)? - trace_of(&w, probe)?).abs();
        w = w_next;
        horizon = next;
        if moved < threshold {
            return Ok(w);
        }
    }
}

impl Serialize for TraceWeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row {
            n: usize,
            horizon: usize,
            beta: String,
            beta_prime: String,
            beta_approx: f64,
            beta_prime_approx: f64,
        }
        Row {
            n: self.level,
            horizon: self.horizon,
            beta: self.beta.to_string(),
            beta_prime: self.beta_prime.to_string(),
            beta_approx: rational_to_f64(&self.beta),
            beta_prime_approx: rational_to_f64(&self.beta_prime),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af_tower::{build_tower, push_k0_class};
    use crate::exact_arith::{cf_expand, convergents, Theta};

    #[test]
    fn p1_trace_is_a_convergent() {
        let theta = Theta::golden(60);
        let cf = cf_expand(&theta, 45).unwrap();
        let table = convergents(&cf);
        let t = build_tower(&cf, 45).unwrap();
        let w = trace_weights(&t, 1, 40).unwrap();
        let p1 = DimensionVector::new(1, 1, 0);
        let tr = trace_of(&w, &p1).unwrap();
        assert_eq!(tr, table.rows()[40].value());
        assert_eq!(trace_of(&w, &t.unit_vector(1).unwrap()).unwrap(), BigRational::one());
        // The same trace read at a later level agrees.
        let w5 = trace_weights(&t, 5, 40).unwrap();
        assert_eq!(trace_of(&w5, &push_k0_class(&p1, &t, 5).unwrap()).unwrap(), tr);
    }

    #[test]
    fn horizon_checks() {
        let cf = crate::exact_arith::CfExpansion::from_digits(0, &[1; 10]).unwrap();
        let t = build_tower(&cf, 10).unwrap();
        assert_eq!(trace_weights(&t, 3, 4), Err(AfError::HorizonTooSmall { level: 3, horizon: 4 }));
        assert!(matches!(trace_weights(&t, 1, 11), Err(AfError::LevelOutOfRange { .. })));
        let auto = trace_weights_auto(&t, 1, &DimensionVector::new(1, 1, 0)).unwrap();
        assert_eq!(auto.horizon, 10);
    }
}
