use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{CfExpansion, Theta};

/// One row `(n, p_n, q_n)` of a convergent table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentRow {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
}

impl ConvergentRow {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.q.clone())
    }
}

impl Serialize for ConvergentRow {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("n", &self.n)?;
        m.serialize_entry("p", &self.p.to_string())?;
        m.serialize_entry("q", &self.q.to_string())?;
        m.end()
    }
}

/// Convergents `p_n/q_n` of a continued fraction, `n = 0..=N`.
///
/// Serialises as a JSON array of `{"n", "p", "q"}` with decimal-string integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ConvergentTable {
    rows: Vec<ConvergentRow>,
}

/// Build the convergent table with seeds `p_{-1} = 1, q_{-1} = 0, p_0 = a_0, q_0 = 1`
/// and the recursion `p_n = a_n p_{n-1} + p_{n-2}`, `q_n = a_n q_{n-1} + q_{n-2}`.
pub fn convergents(cf: &CfExpansion) -> ConvergentTable {
    let mut rows = Vec::with_capacity(cf.len() + 1);
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (cf.a0().clone(), BigInt::one());
    rows.push(ConvergentRow { n: 0, p: p.clone(), q: q.clone() });
    for (i, a) in cf.digits().iter().enumerate() {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        rows.push(ConvergentRow { n: i + 1, p: p.clone(), q: q.clone() });
    }
    ConvergentTable { rows }
}

impl ConvergentTable {
    pub fn rows(&self) -> &[ConvergentRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn last(&self) -> &ConvergentRow {
        self.rows.last().expect("a convergent table always has row 0")
    }

    /// `p_n`, with the seed `p_{-1} = 1` reachable as `p(-1)`.
    pub fn p(&self, n: isize) -> BigInt {
        if n == -1 {
            BigInt::one()
        } else {
            self.rows[n as usize].p.clone()
        }
    }

    /// `q_n`, with the seed `q_{-1} = 0` reachable as `q(-1)`.
    pub fn q(&self, n: isize) -> BigInt {
        if n == -1 {
            BigInt::zero()
        } else {
            self.rows[n as usize].q.clone()
        }
    }

    /// `p_n q_{n-1} − p_{n-1} q_n` for `n ≥ 0` (which equals `(−1)^{n−1}`).
    pub fn determinant(&self, n: usize) -> BigInt {
        let n = n as isize;
        self.p(n) * self.q(n - 1) - self.p(n - 1) * self.q(n)
    }

    /// Rows `n ≥ 1` whose determinant differs from `(−1)^{n−1}`.
    pub fn determinant_violations(&self) -> Vec<usize> {
        (1..self.rows.len())
            .filter(|&n| {
                let expected = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                self.determinant(n) != expected
            })
            .collect()
    }

    /// Rows `n ≥ 1` where `q_n ≤ q_{n−1}`. The first step may be an equality
    /// (`q_1 = q_0 = 1` when `a_1 = 1`), so it is only checked from `n = 2`.
    pub fn monotonicity_violations(&self) -> Vec<usize> {
        (2..self.rows.len())
            .filter(|&n| self.rows[n].q <= self.rows[n - 1].q)
            .collect()
    }

    /// Rows `n` (with row `n + 1` present) where `|θ − p_n/q_n| < 1/(q_n q_{n+1})`
    /// fails for some point of θ's enclosure. When row `n + 1` is θ itself the
    /// bound is attained, so equality is accepted there.
    pub fn approximation_violations(&self, theta: &Theta) -> Vec<usize> {
        let mut bad = Vec::new();
        let last = self.rows.len().saturating_sub(1);
        for n in 0..last {
            let row = &self.rows[n];
            let next = &self.rows[n + 1];
            let bound = BigRational::new(BigInt::one(), &row.q * &next.q);
            let approx = row.value();
            let worst = [theta.lower(), theta.upper()]
                .iter()
                .map(|x| (*x - &approx).abs())
                .max()
                .expect("two endpoints");
            let closing = n + 1 == last && theta.is_exact() && &next.value() == theta.lower();
            if worst > bound || (worst == bound && !closing) {
                bad.push(n);
            }
        }
        bad
    }

    /// Rows where the alternating enclosure fails: even convergents must lie
    /// below θ and odd ones above (non-strictly only for the final row of a
    /// terminating expansion, which equals θ).
    pub fn alternation_violations(&self, theta: &Theta) -> Vec<usize> {
        let last = self.rows.len() - 1;
        let mut bad = Vec::new();
        for (n, row) in self.rows.iter().enumerate() {
            let v = row.value();
            let ok = if n == last && theta.is_exact() && &v == theta.lower() {
                true
            } else if n % 2 == 0 {
                &v < theta.lower()
            } else {
                &v > theta.upper()
            };
            if !ok {
                bad.push(n);
            }
        }
        bad
    }
}
