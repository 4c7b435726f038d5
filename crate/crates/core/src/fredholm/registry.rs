//! Fredholm module kinds registered by name and selected at runtime.

use serde::Serialize;

use super::{
    canonical_even, dirac_module, even_pairing, odd_pairing, ClassSpec, DiagonalConjugation, FiniteRep,
    FredholmError, OddFredholmModule, PairingResult, Parity, Tolerances,
};
use crate::exact_arith::Theta;
use crate::torus_rep::{clock_shift, Angle, ShiftVariant};

/// Everything a module kind needs to build itself and pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingContext {
    pub theta: Theta,
    /// Truncation half-width for truncated modules.
    pub n: usize,
    /// Fiber dimension (odd modules) or amplification (clock-shift modules).
    pub fiber_dim: usize,
    pub tolerances: Tolerances,
    pub conjugation: Option<DiagonalConjugation>,
}

impl PairingContext {
    pub fn new(theta: Theta, n: usize) -> Self {
        PairingContext { theta, n, fiber_dim: 1, tolerances: Tolerances::default(), conjugation: None }
    }

    fn angle(&self) -> Angle {
        Angle::from_theta(&self.theta)
    }

    /// `θ = m/q` in lowest terms with machine-sized parts.
    fn rational(&self) -> Result<(i64, u64), FredholmError> {
        self.angle()
            .exact()
            .map(|(m, q)| (m, q as u64))
            .ok_or_else(|| FredholmError::InvalidInput(format!("θ = {} is not an exact rational", self.theta)))
    }
}

/// A kind of Fredholm module that can be paired with named K-theory classes.
pub trait ModuleKind: Send + Sync {
    fn name(&self) -> &'static str;
    fn parity(&self) -> Parity;
    fn description(&self) -> &'static str;
    fn pair(&self, ctx: &PairingContext, class: ClassSpec) -> Result<PairingResult, FredholmError>;

    fn accepts(&self, class: ClassSpec) -> bool {
        match self.parity() {
            Parity::Even => class.is_projection(),
            Parity::Odd => class.is_unitary(),
        }
    }
}

struct Z0;
struct Z0Prime;
struct OddKind(ShiftVariant);
struct Dirac;

impl ModuleKind for Z0 {
    fn name(&self) -> &'static str {
        "z0"
    }
    fn parity(&self) -> Parity {
        Parity::Even
    }
    fn description(&self) -> &'static str {
        "canonical even module of the one-dimensional representation U, V ↦ 1 (θ ∈ Z)"
    }
    fn pair(&self, ctx: &PairingContext, class: ClassSpec) -> Result<PairingResult, FredholmError> {
        let (m, q) = ctx.rational()?;
        if q != 1 {
            return Err(FredholmError::InvalidInput(
                "z0 has a one-dimensional realisation only for integer θ; use z0prime for θ = m/q".into(),
            ));
        }
        let mut module = canonical_even(FiniteRep::ClockShift(clock_shift(m, 1)?.amplify(ctx.fiber_dim)));
        if let Some(w) = ctx.conjugation {
            module = module.with_conjugation(w);
        }
        even_pairing(&module, &class.element(), &ctx.tolerances)
    }
}

impl ModuleKind for Z0Prime {
    fn name(&self) -> &'static str {
        "z0prime"
    }
    fn parity(&self) -> Parity {
        Parity::Even
    }
    fn description(&self) -> &'static str {
        "canonical even module of the q×q clock and shift matrices (θ = m/q)"
    }
    fn pair(&self, ctx: &PairingContext, class: ClassSpec) -> Result<PairingResult, FredholmError> {
        let (m, q) = ctx.rational()?;
        let mut module = canonical_even(FiniteRep::ClockShift(clock_shift(m, q)?.amplify(ctx.fiber_dim)));
        if let Some(w) = ctx.conjugation {
            module = module.with_conjugation(w);
        }
        even_pairing(&module, &class.element(), &ctx.tolerances)
    }
}

impl ModuleKind for OddKind {
    fn name(&self) -> &'static str {
        match self.0 {
            ShiftVariant::Z1 => "z1",
            ShiftVariant::Z1Prime => "z1prime",
        }
    }
    fn parity(&self) -> Parity {
        Parity::Odd
    }
    fn description(&self) -> &'static str {
        match self.0 {
            ShiftVariant::Z1 => "odd module on ℓ²(Z): U shifts, V acts by λ^k, F = sign(k)",
            ShiftVariant::Z1Prime => "odd module on ℓ²(Z): V shifts, U acts by λ^{−k}, F = sign(k)",
        }
    }
    fn pair(&self, ctx: &PairingContext, class: ClassSpec) -> Result<PairingResult, FredholmError> {
        let mut module = OddFredholmModule::with_fiber_dim(ctx.angle(), ctx.n, self.0, ctx.fiber_dim);
        if let Some(w) = ctx.conjugation {
            module = module.with_conjugation(w);
        }
        odd_pairing(&module, &class.element(), &ctx.tolerances)
    }
}

impl ModuleKind for Dirac {
    fn name(&self) -> &'static str {
        "dirac"
    }
    fn parity(&self) -> Parity {
        Parity::Even
    }
    fn description(&self) -> &'static str {
        "Dirac module on ℓ²(Z²) ⊗ C² with F₀ = (m+in)/|m+in|, paired by compressed index"
    }
    fn pair(&self, ctx: &PairingContext, class: ClassSpec) -> Result<PairingResult, FredholmError> {
        let mut module = dirac_module(ctx.angle(), ctx.n)?;
        module.conjugation = ctx.conjugation;
        even_pairing(&super::EvenFredholmModule::Dirac(module), &class.element(), &ctx.tolerances)
    }
}

/// Name → module kind.
pub struct ModuleRegistry {
    kinds: Vec<Box<dyn ModuleKind>>,
}

impl ModuleRegistry {
    pub fn empty() -> Self {
        ModuleRegistry { kinds: Vec::new() }
    }

    /// `z0`, `z0prime`, `z1`, `z1prime`, `dirac`.
    pub fn builtin() -> Self {
        let mut r = ModuleRegistry::empty();
        r.register(Box::new(Z0));
        r.register(Box::new(Z0Prime));
        r.register(Box::new(OddKind(ShiftVariant::Z1)));
        r.register(Box::new(OddKind(ShiftVariant::Z1Prime)));
        r.register(Box::new(Dirac));
        r
    }

    /// Add a kind; a later registration under the same name replaces the earlier one.
    pub fn register(&mut self, kind: Box<dyn ModuleKind>) {
        self.kinds.retain(|k| k.name() != kind.name());
        self.kinds.push(kind);
    }

    pub fn get(&self, name: &str) -> Option<&dyn ModuleKind> {
        self.kinds.iter().find(|k| k.name() == name).map(|k| k.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.kinds.iter().map(|k| k.name()).collect()
    }

    /// Look up `name` and pair it with `class`.
    pub fn pair(&self, name: &str, ctx: &PairingContext, class: ClassSpec) -> Result<PairingResult, FredholmError> {
        let kind = self.get(name).ok_or_else(|| {
            FredholmError::InvalidInput(format!("unknown module {name:?}; known: {}", self.names().join(", ")))
        })?;
        if !kind.accepts(class) {
            return Err(FredholmError::UnsupportedClass(format!(
                "{} module {name} does not pair with class {class}",
                match kind.parity() {
                    Parity::Even => "even",
                    Parity::Odd => "odd",
                }
            )));
        }
        kind.pair(ctx, class)
    }
}
