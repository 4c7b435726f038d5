use std::collections::BTreeSet;

use serde::Serialize;

use super::{check_exact_at, ExactnessVerdict, IntMatrix, LatticeError};

/// `Z^rank` with an ordered, named basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FreeAbelianGroup {
    pub label: String,
    pub generators: Vec<String>,
}

impl FreeAbelianGroup {
    pub fn new(label: &str, generators: &[&str]) -> Result<Self, LatticeError> {
        let distinct: BTreeSet<&&str> = generators.iter().collect();
        if distinct.len() != generators.len() {
            return Err(LatticeError::InvalidMatrix(format!(
                "duplicate generator names in {label}"
            )));
        }
        Ok(FreeAbelianGroup {
            label: label.to_string(),
            generators: generators.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, generator: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == generator)
    }
}

/// A homomorphism `Z^m → Z^k` written as a `k × m` matrix in the named bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrixMap {
    pub name: String,
    pub domain: FreeAbelianGroup,
    pub codomain: FreeAbelianGroup,
    pub matrix: IntMatrix,
}

impl IntegerMatrixMap {
    pub fn new(
        name: &str,
        domain: FreeAbelianGroup,
        codomain: FreeAbelianGroup,
        matrix: IntMatrix,
    ) -> Result<Self, LatticeError> {
        if matrix.shape() != (codomain.rank(), domain.rank()) {
            return Err(LatticeError::ShapeMismatch(format!(
                "{name}: matrix is {:?} but {} → {} needs {}x{}",
                matrix.shape(),
                domain.label,
                codomain.label,
                codomain.rank(),
                domain.rank()
            )));
        }
        Ok(IntegerMatrixMap { name: name.to_string(), domain, codomain, matrix })
    }

    /// Image of a domain generator, as codomain coordinates.
    pub fn apply_generator(&self, generator: &str) -> Option<Vec<i64>> {
        self.domain.index_of(generator).map(|j| self.matrix.col(j))
    }
}

impl Serialize for IntegerMatrixMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(6))?;
        m.serialize_entry("name", &self.name)?;
        m.serialize_entry("from", &self.domain.label)?;
        m.serialize_entry("from_basis", &self.domain.generators)?;
        m.serialize_entry("to", &self.codomain.label)?;
        m.serialize_entry("to_basis", &self.codomain.generators)?;
        m.serialize_entry("matrix", &self.matrix)?;
        m.end()
    }
}

/// Exactness verdict at the codomain of `maps[index]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    pub index: usize,
    pub node: String,
    pub incoming: String,
    pub outgoing: String,
    #[serde(flatten)]
    pub verdict: ExactnessVerdict,
}

/// A cyclic sequence of composable maps; the last map returns to the first domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CyclicSequence {
    maps: Vec<IntegerMatrixMap>,
}

impl CyclicSequence {
    pub fn new(maps: Vec<IntegerMatrixMap>) -> Result<Self, LatticeError> {
        if maps.is_empty() {
            return Err(LatticeError::ShapeMismatch("empty cyclic sequence".into()));
        }
        for (k, f) in maps.iter().enumerate() {
            let g = &maps[(k + 1) % maps.len()];
            if f.codomain != g.domain {
                return Err(LatticeError::ShapeMismatch(format!(
                    "{} lands in {} but {} starts from {}",
                    f.name, f.codomain.label, g.name, g.domain.label
                )));
            }
        }
        Ok(CyclicSequence { maps })
    }

    pub fn maps(&self) -> &[IntegerMatrixMap] {
        &self.maps
    }

    pub fn map(&self, name: &str) -> Option<&IntegerMatrixMap> {
        self.maps.iter().find(|m| m.name == name)
    }

    /// Replace the matrix of the named map (same shape), e.g. to test that a
    /// perturbation breaks exactness.
    pub fn with_matrix(&self, name: &str, matrix: IntMatrix) -> Result<Self, LatticeError> {
        let mut maps = self.maps.clone();
        let slot = maps
            .iter_mut()
            .find(|m| m.name == name)
            .ok_or_else(|| LatticeError::UnknownMap(name.to_string()))?;
        *slot = IntegerMatrixMap::new(name, slot.domain.clone(), slot.codomain.clone(), matrix)?;
        CyclicSequence::new(maps)
    }

    /// Exactness at every node, in order.
    pub fn check_all(&self) -> Result<Vec<NodeReport>, LatticeError> {
        let n = self.maps.len();
        (0..n)
            .map(|k| {
                let f = &self.maps[k];
                let g = &self.maps[(k + 1) % n];
                Ok(NodeReport {
                    index: k,
                    node: f.codomain.label.clone(),
                    incoming: f.name.clone(),
                    outgoing: g.name.clone(),
                    verdict: check_exact_at(f, g)?,
                })
            })
            .collect()
    }

    pub fn is_exact(&self) -> Result<bool, LatticeError> {
        Ok(self.check_all()?.iter().all(|r| r.verdict.exact))
    }
}

fn group(label: &str, gens: &[&str]) -> FreeAbelianGroup {
    FreeAbelianGroup::new(label, gens).expect("builtin bases have distinct names")
}

fn fixed(name: &str, from: &FreeAbelianGroup, to: &FreeAbelianGroup, m: IntMatrix) -> IntegerMatrixMap {
    IntegerMatrixMap::new(name, from.clone(), to.clone(), m).expect("builtin shapes are consistent")
}

/// The six-term K-homology sequence for `A = C*(U)`, `A ⋊_α Z ≅ A_θ`.
///
/// Map names: `i0, ida0, d0, i1, ida1, d1`. Entries: `i*(z0) = w0`,
/// `i*(Dirac) = 0`, `id − α* = 0`, `∂0(w0) = z1'`, `i*(z1) = w1`, `i*(z1') = 0`,
/// `∂1(w1) = Dirac`.
pub fn builtin_khomology_sequence() -> CyclicSequence {
    let kk0_at = group("KK^0(A_θ)", &["z0", "Dirac"]);
    let kk0_a = group("KK^0(A)", &["w0"]);
    let kk1_at = group("KK^1(A_θ)", &["z1", "z1'"]);
    let kk1_a = group("KK^1(A)", &["w1"]);
    CyclicSequence::new(vec![
        fixed("i0", &kk0_at, &kk0_a, IntMatrix::from_rows(&[&[1, 0]])),
        fixed("ida0", &kk0_a, &kk0_a, IntMatrix::from_rows(&[&[0]])),
        fixed("d0", &kk0_a, &kk1_at, IntMatrix::column(&[0, 1])),
        fixed("i1", &kk1_at, &kk1_a, IntMatrix::from_rows(&[&[1, 0]])),
        fixed("ida1", &kk1_a, &kk1_a, IntMatrix::from_rows(&[&[0]])),
        fixed("d1", &kk1_a, &kk0_at, IntMatrix::column(&[0, 1])),
    ])
    .expect("builtin K-homology sequence is composable")
}

/// The Pimsner–Voiculescu K-theory sequence for the same crossed product.
///
/// Map names: `ida0, i0, delta0, ida1, i1, delta1`, with `δ0[1] = 0`,
/// `δ0[p] = [U]`, `δ1[U] = 0`, `δ1[V] = [1]`.
pub fn builtin_ktheory_sequence() -> CyclicSequence {
    let k0_a = group("K_0(A)", &["[1]"]);
    let k0_at = group("K_0(A_θ)", &["[1]", "[p]"]);
    let k1_a = group("K_1(A)", &["[U]"]);
    let k1_at = group("K_1(A_θ)", &["[U]", "[V]"]);
    CyclicSequence::new(vec![
        fixed("ida0", &k0_a, &k0_a, IntMatrix::from_rows(&[&[0]])),
        fixed("i0", &k0_a, &k0_at, IntMatrix::column(&[1, 0])),
        fixed("delta0", &k0_at, &k1_a, IntMatrix::from_rows(&[&[0, 1]])),
        fixed("ida1", &k1_a, &k1_a, IntMatrix::from_rows(&[&[0]])),
        fixed("i1", &k1_a, &k1_at, IntMatrix::column(&[1, 0])),
        fixed("delta1", &k1_at, &k0_a, IntMatrix::from_rows(&[&[0, 1]])),
    ])
    .expect("builtin K-theory sequence is composable")
}

/// One instance of `⟨∂z, x⟩ = ⟨z, δx⟩` between the two builtin sequences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub statement: String,
    pub lhs: i64,
    pub rhs: i64,
}

impl DualityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Compare boundary maps of the two sequences through the index pairing.
///
/// With the generator pairings `⟨z1,[U]⟩ = ⟨z1',[V]⟩ = 1`, `⟨z0,[1]⟩ = ⟨Dirac,[p]⟩ = 1`,
/// `⟨w0,[1]⟩ = ⟨w1,[U]⟩ = 1` (all others 0), this evaluates both sides of
/// `⟨∂0 w0, x⟩ = ⟨w0, δ1 x⟩` for `x ∈ {[U],[V]}` and `⟨∂1 w1, y⟩ = ⟨w1, δ0 y⟩`
/// for `y ∈ {[1],[p]}`.
pub fn khomology_ktheory_duality(
    khom: &CyclicSequence,
    ktheory: &CyclicSequence,
) -> Result<Vec<DualityCheck>, LatticeError> {
    let get = |seq: &CyclicSequence, name: &str| {
        seq.map(name).cloned().ok_or_else(|| LatticeError::UnknownMap(name.to_string()))
    };
    let (d0, d1) = (get(khom, "d0")?, get(khom, "d1")?);
    let (delta0, delta1) = (get(ktheory, "delta0")?, get(ktheory, "delta1")?);
    // Generator pairings are the identity in the chosen ordered bases.
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let mut out = Vec::new();
    let w0 = d0.domain.generators[0].clone();
    let kk1_image = d0.matrix.col(0);
    for (j, x) in delta1.domain.generators.iter().enumerate() {
        let lhs = dot(&kk1_image, &unit(delta1.domain.rank(), j));
        let rhs = delta1.matrix.col(j)[0];
        out.push(DualityCheck { statement: format!("<∂0({w0}), {x}> = <{w0}, δ1 {x}>"), lhs, rhs });
    }
    let w1 = d1.domain.generators[0].clone();
    let kk0_image = d1.matrix.col(0);
    for (j, y) in delta0.domain.generators.iter().enumerate() {
        let lhs = dot(&kk0_image, &unit(delta0.domain.rank(), j));
        let rhs = delta0.matrix.col(j)[0];
        out.push(DualityCheck { statement: format!("<∂1({w1}), {y}> = <{w1}, δ0 {y}>"), lhs, rhs });
    }
    Ok(out)
}

fn unit(n: usize, j: usize) -> Vec<i64> {
    (0..n).map(|i| i64::from(i == j)).collect()
}
