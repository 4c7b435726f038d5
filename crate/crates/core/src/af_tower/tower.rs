use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::AfError;
use crate::exact_arith::CfExpansion;

/// A 2×2 integer matrix `[[a, b], [c, d]]`.
pub type Mat2 = [[BigInt; 2]; 2];

/// `C_n = M_{q_n} ⊕ M_{q_{n−1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BratteliLevel {
    pub n: usize,
    pub q_n: BigInt,
    pub q_prev: BigInt,
}

/// The embedding `C_n → C_{n+1}`: the big block of `C_{n+1}` contains `m`
/// copies of `M_{q_n}` and one of `M_{q_{n−1}}`; the small block is `M_{q_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingStep {
    pub from: usize,
    pub multiplicity: BigInt,
}

impl EmbeddingStep {
    /// `[[m, 1], [1, 0]]`, acting on dimension vectors by `v ↦ M v`.
    pub fn matrix(&self) -> Mat2 {
        [[self.multiplicity.clone(), BigInt::one()], [BigInt::one(), BigInt::zero()]]
    }
}

/// Ranks `(d, d′)` of a projection class in the two summands of `C_level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionVector {
    pub level: usize,
    pub d: BigInt,
    pub d_prime: BigInt,
}

impl DimensionVector {
    pub fn new(level: usize, d: impl Into<BigInt>, d_prime: impl Into<BigInt>) -> Self {
        DimensionVector { level, d: d.into(), d_prime: d_prime.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub a0: BigInt,
    pub levels: Vec<BratteliLevel>,
    pub steps: Vec<EmbeddingStep>,
    /// The driving expansion is a complete expansion of a rational number.
    pub terminating: bool,
}

impl Tower {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, n: usize) -> Result<&BratteliLevel, AfError> {
        n.checked_sub(1)
            .and_then(|i| self.levels.get(i))
            .ok_or(AfError::LevelOutOfRange { level: n, depth: self.depth() })
    }

    /// The step out of level `n`.
    pub fn step(&self, n: usize) -> Result<&EmbeddingStep, AfError> {
        n.checked_sub(1)
            .and_then(|i| self.steps.get(i))
            .ok_or(AfError::LevelOutOfRange { level: n + 1, depth: self.depth() })
    }

    /// `q_{n+1} = m q_n + q_{n−1}` at every step (exact).
    pub fn dimension_violations(&self) -> Vec<usize> {
        self.steps
            .iter()
            .filter(|s| {
                let lo = &self.levels[s.from - 1];
                let hi = &self.levels[s.from];
                hi.q_n != &s.multiplicity * &lo.q_n + &lo.q_prev || hi.q_prev != lo.q_n
            })
            .map(|s| s.from)
            .collect()
    }

    /// Identity of `C_n`: `(q_n, q_{n−1})`.
    pub fn unit_vector(&self, n: usize) -> Result<DimensionVector, AfError> {
        let l = self.level(n)?;
        Ok(DimensionVector::new(n, l.q_n.clone(), l.q_prev.clone()))
    }
}

/// Levels `1..=depth` with dimensions from the convergent recursion
/// `q_{−1} = 0, q_0 = 1, q_n = a_n q_{n−1} + q_{n−2}`.
pub fn build_tower(cf: &CfExpansion, depth: usize) -> Result<Tower, AfError> {
    if depth == 0 || cf.len() < depth {
        return Err(AfError::InsufficientDigits { needed: depth.max(1), available: cf.len() });
    }
    let digits = cf.digits();
    let (mut q_prev, mut q) = (BigInt::one(), digits[0].clone());
    let mut levels = vec![BratteliLevel { n: 1, q_n: q.clone(), q_prev: q_prev.clone() }];
    let mut steps = Vec::new();
    for (n, m) in digits.iter().enumerate().take(depth).skip(1) {
        let m = m.clone();
        let next = &m * &q + &q_prev;
        steps.push(EmbeddingStep { from: n, multiplicity: m });
        q_prev = std::mem::replace(&mut q, next);
        levels.push(BratteliLevel { n: n + 1, q_n: q.clone(), q_prev: q_prev.clone() });
    }
    Ok(Tower {
        a0: cf.a0().clone(),
        levels,
        steps,
        terminating: cf.is_terminating() && cf.len() == depth,
    })
}

/// Push a class from its level to `to_level` through `v ↦ M v`.
pub fn push_k0_class(v: &DimensionVector, tower: &Tower, to_level: usize) -> Result<DimensionVector, AfError> {
    check_fits(v, tower)?;
    if to_level < v.level {
        return Err(AfError::LevelOutOfRange { level: to_level, depth: tower.depth() });
    }
    let mut cur = v.clone();
    for n in v.level..to_level {
        let m = &tower.step(n)?.multiplicity;
        cur = DimensionVector::new(n + 1, m * &cur.d + &cur.d_prime, cur.d.clone());
        check_fits(&cur, tower)?;
    }
    Ok(cur)
}

fn check_fits(v: &DimensionVector, tower: &Tower) -> Result<(), AfError> {
    let l = tower.level(v.level)?;
    if v.d.is_negative() || v.d_prime.is_negative() || v.d > l.q_n || v.d_prime > l.q_prev {
        return Err(AfError::RankOverflow {
            level: v.level,
            d: v.d.to_string(),
            d_prime: v.d_prime.to_string(),
        });
    }
    Ok(())
}

/// The pullback `φ*` on K-homology coefficients `(x, y)` of `z₁⁽ⁿ⁺¹⁾, z₂⁽ⁿ⁺¹⁾`:
/// `z₁⁽ⁿ⁺¹⁾ ↦ m z₁⁽ⁿ⁾ + z₂⁽ⁿ⁾`, `z₂⁽ⁿ⁺¹⁾ ↦ z₁⁽ⁿ⁾`.
pub fn khom_pullback_matrix(step: &EmbeddingStep) -> Mat2 {
    step.matrix()
}

pub fn det2(m: &Mat2) -> BigInt {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

pub fn apply2(m: &Mat2, v: (&BigInt, &BigInt)) -> (BigInt, BigInt) {
    (&m[0][0] * v.0 + &m[0][1] * v.1, &m[1][0] * v.0 + &m[1][1] * v.1)
}

pub(crate) fn big_str<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl Serialize for BratteliLevel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            n: usize,
            #[serde(serialize_with = "big_str")]
            q_n: &'a BigInt,
            #[serde(serialize_with = "big_str")]
            q_prev: &'a BigInt,
        }
        Row { n: self.n, q_n: &self.q_n, q_prev: &self.q_prev }.serialize(s)
    }
}

impl Serialize for EmbeddingStep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            from: usize,
            #[serde(serialize_with = "big_str")]
            multiplicity: &'a BigInt,
        }
        Row { from: self.from, multiplicity: &self.multiplicity }.serialize(s)
    }
}

impl Serialize for DimensionVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            level: usize,
            #[serde(serialize_with = "big_str")]
            d: &'a BigInt,
            #[serde(serialize_with = "big_str")]
            d_prime: &'a BigInt,
        }
        Row { level: self.level, d: &self.d, d_prime: &self.d_prime }.serialize(s)
    }
}
