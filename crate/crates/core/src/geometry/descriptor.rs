use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Which of `W`, `W*` the second base block is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Block {
    W,
    WStar,
}

impl Block {
    pub fn dual(self) -> Block {
        match self {
            Block::W => Block::WStar,
            Block::WStar => Block::W,
        }
    }
}

/// Base `Y x W` (or `Y x W*`): coordinates `0..q` are `Y`, `q..q+d` the second block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientSpec {
    pub q: usize,
    pub d: usize,
    pub block: Block,
}

impl AmbientSpec {
    pub fn new(q: usize, d: usize, block: Block) -> Self {
        Self { q, d, block }
    }

    pub fn base_dim(&self) -> usize {
        self.q + self.d
    }
}

/// A linear subspace of the `W`/`W*` block (or of its dual, for fibers).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WRule {
    FullFiber,
    ZeroSection,
    Subbundle(Subspace),
}

impl WRule {
    /// Canonical rule: full and zero subspaces get their named variants.
    pub fn from_subspace(s: Subspace) -> WRule {
        if s.rank() == 0 {
            WRule::ZeroSection
        } else if s.rank() == s.ambient_dim() {
            WRule::FullFiber
        } else {
            WRule::Subbundle(s)
        }
    }

    pub fn to_subspace(&self, d: usize) -> Subspace {
        match self {
            WRule::FullFiber => Subspace::full(d),
            WRule::ZeroSection => Subspace::zero(d),
            WRule::Subbundle(s) => s.clone(),
        }
    }

    pub fn dim(&self, d: usize) -> usize {
        self.to_subspace(d).rank()
    }

    /// The annihilator rule: full and zero swap, subbundles go to their complement.
    pub fn perp(&self, d: usize) -> WRule {
        WRule::from_subspace(self.to_subspace(d).annihilator())
    }

    pub(crate) fn well_formed(&self, d: usize) -> bool {
        match self {
            WRule::Subbundle(s) => s.ambient_dim() == d && s.rank() > 0 && s.rank() < d,
            _ => true,
        }
    }
}

/// Covectors `(eta_Y, eta_W)` with `eta_Y` supported on `y_support` and `eta_W` in `fiber`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConormalFiber {
    pub y_support: BTreeSet<usize>,
    pub fiber: WRule,
}

/// `{y_i = 0, i in zero_set} x w_rule` together with its covector fiber.
///
/// Built by [`ConormalComponent::conormal_of`] the fiber is the conormal one
/// (`y_support = zero_set`, `fiber = ann(w_rule)`), which makes the component
/// Lagrangian.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConormalComponent {
    pub zero_set: BTreeSet<usize>,
    pub w_rule: WRule,
    pub conormal: ConormalFiber,
}

impl ConormalComponent {
    pub fn conormal_of(zero_set: BTreeSet<usize>, w_rule: WRule, d: usize) -> Self {
        let fiber = w_rule.perp(d);
        Self { conormal: ConormalFiber { y_support: zero_set.clone(), fiber }, zero_set, w_rule }
    }

    /// The zero section over the whole base.
    pub fn zero_section(d: usize) -> Self {
        Self::conormal_of(BTreeSet::new(), WRule::FullFiber, d)
    }

    /// Set containment, decided factor by factor.
    pub fn is_contained_in(&self, other: &Self, d: usize) -> bool {
        self.zero_set.is_superset(&other.zero_set)
            && self.w_rule.to_subspace(d).is_subspace_of(&other.w_rule.to_subspace(d))
            && self.conormal.y_support.is_subset(&other.conormal.y_support)
            && self.conormal.fiber.to_subspace(d).is_subspace_of(&other.conormal.fiber.to_subspace(d))
    }

    pub(crate) fn well_formed(&self, ambient: &AmbientSpec) -> bool {
        self.zero_set.iter().chain(&self.conormal.y_support).all(|&i| i < ambient.q)
            && self.w_rule.well_formed(ambient.d)
            && self.conormal.fiber.well_formed(ambient.d)
    }
}

/// A finite union of conormal-type components, deduplicated and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConicSetDescriptor {
    pub ambient: AmbientSpec,
    pub components: Vec<ConormalComponent>,
}

impl ConicSetDescriptor {
    /// Drops components contained in others and sorts the rest.
    pub fn new(ambient: AmbientSpec, components: Vec<ConormalComponent>) -> Self {
        let mut desc = Self { ambient, components };
        desc.canonicalize();
        desc
    }

    pub fn zero_section(ambient: AmbientSpec) -> Self {
        Self::new(ambient, vec![ConormalComponent::zero_section(ambient.d)])
    }

    pub fn canonicalize(&mut self) {
        let d = self.ambient.d;
        let mut comps = std::mem::take(&mut self.components);
        comps.sort();
        comps.dedup();
        let keep: Vec<bool> = (0..comps.len())
            .map(|i| !(0..comps.len()).any(|j| j != i && comps[i].is_contained_in(&comps[j], d)))
            .collect();
        self.components = comps.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect();
    }

    /// Parses and validates JSON produced by [`ConicSetDescriptor::to_json`].
    pub fn from_json(s: &str) -> Result<Self> {
        let desc: Self = serde_json::from_str(s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        if let Some(c) = desc.components.iter().find(|c| !c.well_formed(&desc.ambient)) {
            return Err(Error::MalformedStratum(format!("{c:?}")));
        }
        Ok(Self::new(desc.ambient, desc.components))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }
}
