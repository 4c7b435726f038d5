use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::tower::{apply2, big_str as serialize_big, Mat2};
use super::{push_k0_class, AfError, DimensionVector, Tower};

/// `z_n = x z₁⁽ⁿ⁾ + y z₂⁽ⁿ⁾`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KHomCoefficients {
    pub level: usize,
    #[serde(serialize_with = "serialize_big")]
    pub x: BigInt,
    #[serde(serialize_with = "serialize_big")]
    pub y: BigInt,
}

/// Coefficients of the inverse-limit class at `level`: start from `(0, 1)` at
/// level 1 and apply `[[m, 1], [1, 0]]⁻¹ = [[0, 1], [1, −m]]` step by step, so
/// that pulling back level `n+1` reproduces level `n` exactly.
pub fn inverse_limit_coefficients(tower: &Tower, level: usize) -> Result<KHomCoefficients, AfError> {
    tower.level(level)?;
    let (mut x, mut y) = (BigInt::zero(), BigInt::one());
    for n in 1..level {
        let m = &tower.step(n)?.multiplicity;
        let next_y = &x - m * &y;
        x = std::mem::replace(&mut y, next_y);
    }
    Ok(KHomCoefficients { level, x, y })
}

/// `x d + y d′`.
pub fn pairing_along_tower(c: &KHomCoefficients, v: &DimensionVector) -> Result<BigInt, AfError> {
    if c.level != v.level {
        return Err(AfError::LevelMismatch { coefficients: c.level, vector: v.level });
    }
    Ok(&c.x * &v.d + &c.y * &v.d_prime)
}

/// The recursion-derived coefficients next to the two closed forms in terms
/// of convergents, at one level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormRow {
    pub level: usize,
    /// From [`inverse_limit_coefficients`].
    #[serde(serialize_with = "serialize_pair")]
    pub recursion: (BigInt, BigInt),
    /// `(−1)^n (−q_{n−1}, q_n)`.
    #[serde(serialize_with = "serialize_pair")]
    pub printed_closed_form: (BigInt, BigInt),
    /// `[[q_n, q_{n−1}], [p_n, p_{n−1}]]⁻¹ (0, 1)`, `p` for the fractional part.
    #[serde(serialize_with = "serialize_pair")]
    pub matrix_identity: (BigInt, BigInt),
    pub printed_matches_recursion: bool,
    pub matrix_identity_matches_printed: bool,
    /// `(−1)^n (p_{n−1}, −p_n)` reproduces the recursion.
    pub convergent_form_matches_recursion: bool,
    /// Pairings of the printed closed form with the images of `1_{C_1}` and `p_1`.
    #[serde(serialize_with = "serialize_pair")]
    pub printed_pairings: (BigInt, BigInt),
}

fn serialize_pair<S: serde::Serializer>(v: &(BigInt, BigInt), s: S) -> Result<S::Ok, S::Error> {
    [v.0.to_string(), v.1.to_string()].serialize(s)
}

/// Compare the recursion with the closed forms at every level of the tower.
pub fn closed_form_comparison(tower: &Tower) -> Result<Vec<ClosedFormRow>, AfError> {
    // Convergents of the fractional part: p_{−1} = 1, p_0 = 0, q_{−1} = 0, q_0 = 1.
    let mut p = vec![BigInt::one(), BigInt::zero()];
    let mut q = vec![BigInt::zero(), BigInt::one()];
    let mut rows = Vec::new();
    let unit = tower.unit_vector(1)?;
    let p1 = DimensionVector::new(1, 1, 0);
    for n in 1..=tower.depth() {
        let a = if n == 1 { tower.levels[0].q_n.clone() } else { tower.step(n - 1)?.multiplicity.clone() };
        let pn = &a * &p[n] + &p[n - 1];
        let qn = &a * &q[n] + &q[n - 1];
        p.push(pn);
        q.push(qn);
        let (pn, pm, qn, qm) = (&p[n + 1], &p[n], &q[n + 1], &q[n]);
        let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let coeffs = inverse_limit_coefficients(tower, n)?;
        let recursion = (coeffs.x.clone(), coeffs.y.clone());
        let printed = (&sign * -qm, &sign * qn);
        // The inverse of an integer matrix with determinant (−1)^n.
        let det = qn * pm - qm * pn;
        let inv: Mat2 = [[pm * &det, -qm * &det], [-pn * &det, qn * &det]];
        let matrix_identity = apply2(&inv, (&BigInt::zero(), &BigInt::one()));
        let convergent_form = (&sign * pm, &sign * -pn);
        let printed_c = super::KHomCoefficients { level: n, x: printed.0.clone(), y: printed.1.clone() };
        let printed_pairings = (
            pairing_along_tower(&printed_c, &push_k0_class(&unit, tower, n)?)?,
            pairing_along_tower(&printed_c, &push_k0_class(&p1, tower, n)?)?,
        );
        rows.push(ClosedFormRow {
            level: n,
            printed_matches_recursion: printed == recursion,
            matrix_identity_matches_printed: matrix_identity == printed,
            convergent_form_matches_recursion: convergent_form == recursion,
            recursion,
            printed_closed_form: printed,
            matrix_identity,
            printed_pairings,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af_tower::{build_tower, khom_pullback_matrix};
    use crate::exact_arith::CfExpansion;

    fn golden_tower(n: usize) -> Tower {
        build_tower(&CfExpansion::from_digits(0, &vec![1; n]).unwrap(), n).unwrap()
    }

    #[test]
    fn seeds_and_golden_level_two() {
        let t = golden_tower(4);
        let c1 = inverse_limit_coefficients(&t, 1).unwrap();
        assert_eq!((c1.x, c1.y), (BigInt::zero(), BigInt::one()));
        let c2 = inverse_limit_coefficients(&t, 2).unwrap();
        assert_eq!((c2.x, c2.y), (BigInt::one(), BigInt::from(-1)));
    }

    #[test]
    fn pullback_reproduces_previous_level() {
        let cf = CfExpansion::from_digits(0, &[3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4, 6]).unwrap();
        let t = build_tower(&cf, 21).unwrap();
        for n in 1..=20 {
            let lo = inverse_limit_coefficients(&t, n).unwrap();
            let hi = inverse_limit_coefficients(&t, n + 1).unwrap();
            let back = apply2(&khom_pullback_matrix(t.step(n).unwrap()), (&hi.x, &hi.y));
            assert_eq!(back, (lo.x, lo.y), "level {n}");
        }
    }

    #[test]
    fn pairing_checks_levels() {
        let t = golden_tower(3);
        let c = inverse_limit_coefficients(&t, 2).unwrap();
        assert!(matches!(
            pairing_along_tower(&c, &t.unit_vector(3).unwrap()),
            Err(AfError::LevelMismatch { .. })
        ));
        let z1 = KHomCoefficients { level: 3, x: BigInt::one(), y: BigInt::zero() };
        assert_eq!(pairing_along_tower(&z1, &t.unit_vector(3).unwrap()).unwrap(), t.levels[2].q_n);
    }

    #[test]
    fn closed_forms_reported() {
        let rows = closed_form_comparison(&golden_tower(8)).unwrap();
        assert!(rows.iter().all(|r| r.convergent_form_matches_recursion));
        assert!(rows.iter().all(|r| r.matrix_identity_matches_printed));
        assert!(rows.iter().any(|r| !r.printed_matches_recursion));
        assert!(rows.iter().all(|r| r.printed_pairings.0.is_zero()));
    }
}
