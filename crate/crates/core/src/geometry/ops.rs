use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::descriptor::{AmbientSpec, ConicSetDescriptor, ConormalComponent, ConormalFiber};
use super::WRule;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A locally closed stratum `{y_i = 0, i in zero_set} x rule` of the base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stratum {
    pub zero_set: BTreeSet<usize>,
    pub rule: WRule,
}

impl Stratum {
    pub fn new(zero_set: impl IntoIterator<Item = usize>, rule: WRule) -> Self {
        Self { zero_set: zero_set.into_iter().collect(), rule }
    }

    fn check(&self, ambient: &AmbientSpec) -> Result<()> {
        if let Some(i) = self.zero_set.iter().find(|&&i| i >= ambient.q) {
            return Err(Error::MalformedStratum(format!("index {i} outside the Y-block of size {}", ambient.q)));
        }
        if let WRule::Subbundle(s) = &self.rule {
            if s.ambient_dim() != ambient.d {
                return Err(Error::MalformedStratum(format!(
                    "subbundle lives in dimension {}, block has dimension {}",
                    s.ambient_dim(),
                    ambient.d
                )));
            }
        }
        Ok(())
    }

    fn canonical(&self, d: usize) -> Self {
        Self { zero_set: self.zero_set.clone(), rule: WRule::from_subspace(self.rule.to_subspace(d)) }
    }
}

/// Union of the conormal bundles of the given strata.
pub fn conormal_union(ambient: AmbientSpec, strata: &[Stratum]) -> Result<ConicSetDescriptor> {
    let mut comps = Vec::with_capacity(strata.len());
    for s in strata {
        s.check(&ambient)?;
        let s = s.canonical(ambient.d);
        comps.push(ConormalComponent::conormal_of(s.zero_set, s.rule, ambient.d));
    }
    Ok(ConicSetDescriptor::new(ambient, comps))
}

/// The critical set of a disjoint union of stratum inclusions: the zero section
/// together with the conormal bundle of every stratum.
pub fn crit_of_map(ambient: AmbientSpec, strata: &[Stratum]) -> Result<ConicSetDescriptor> {
    let mut desc = conormal_union(ambient, strata)?;
    desc.components.push(ConormalComponent::zero_section(ambient.d));
    desc.canonicalize();
    Ok(desc)
}

/// Presents the set in the dual ambient under `(w, phi) -> (phi, -w)`.
pub fn symplectic_swap(desc: &ConicSetDescriptor) -> ConicSetDescriptor {
    let ambient = AmbientSpec { block: desc.ambient.block.dual(), ..desc.ambient };
    let comps = desc
        .components
        .iter()
        .map(|c| ConormalComponent {
            zero_set: c.zero_set.clone(),
            w_rule: c.conormal.fiber.clone(),
            conormal: ConormalFiber { y_support: c.conormal.y_support.clone(), fiber: c.w_rule.clone() },
        })
        .collect();
    ConicSetDescriptor::new(ambient, comps)
}

/// A linear map of bases given by its matrix; `rows[i]` is the `i`-th target coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub rows: Vec<Vec<Rational>>,
}

impl Projection {
    /// Keeps the Y-coordinates `keep` (in that order) and the whole second block.
    pub fn coordinate(q: usize, d: usize, keep: &[usize]) -> Self {
        let unit = |i: usize| (0..q + d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect();
        let rows = keep.iter().map(|&i| unit(i)).chain((q..q + d).map(unit)).collect();
        Self { rows }
    }

    /// The kept Y-coordinates, if the matrix is a coordinate projection fixing the second block.
    fn kept(&self, ambient: &AmbientSpec) -> Result<Vec<usize>> {
        let n = ambient.base_dim();
        let unit_index = |row: &Vec<Rational>| -> Option<usize> {
            if row.len() != n {
                return None;
            }
            let nz: Vec<usize> = (0..n).filter(|&j| !row[j].is_zero()).collect();
            (nz.len() == 1 && row[nz[0]].is_one()).then(|| nz[0])
        };
        let idx: Vec<usize> = self
            .rows
            .iter()
            .map(|r| unit_index(r).ok_or_else(|| Error::UnsupportedMap("row is not a coordinate vector".into())))
            .collect::<Result<_>>()?;
        if idx.len() < ambient.d {
            return Err(Error::UnsupportedMap("target is missing the W-block".into()));
        }
        let (ys, ws) = idx.split_at(idx.len() - ambient.d);
        if ws.iter().enumerate().any(|(k, &j)| j != ambient.q + k) {
            return Err(Error::UnsupportedMap("map must be the identity on the W-block".into()));
        }
        let mut seen = BTreeSet::new();
        if ys.iter().any(|&j| j >= ambient.q || !seen.insert(j)) {
            return Err(Error::UnsupportedMap("Y-block rows must be distinct Y-coordinates".into()));
        }
        Ok(ys.to_vec())
    }
}

/// Direct image along a coordinate projection of the Y-block.
///
/// A covector `eta` on the target survives over a target point iff its
/// pullback, which vanishes on the dropped coordinates, lies over some
/// preimage in a component. On a conormal component this keeps the zero
/// conditions and covector support on the retained coordinates.
pub fn pushforward_coordinate(desc: &ConicSetDescriptor, proj: &Projection) -> Result<ConicSetDescriptor> {
    let keep = proj.kept(&desc.ambient)?;
    let reindex = |s: &BTreeSet<usize>| -> BTreeSet<usize> {
        keep.iter().enumerate().filter(|(_, j)| s.contains(j)).map(|(k, _)| k).collect()
    };
    let ambient = AmbientSpec { q: keep.len(), ..desc.ambient };
    let comps = desc
        .components
        .iter()
        .map(|c| ConormalComponent {
            zero_set: reindex(&c.zero_set),
            w_rule: c.w_rule.clone(),
            conormal: ConormalFiber { y_support: reindex(&c.conormal.y_support), fiber: c.conormal.fiber.clone() },
        })
        .collect();
    Ok(ConicSetDescriptor::new(ambient, comps))
}

/// Every component has linear covector fibers over a well-formed stratum.
pub fn is_conic(desc: &ConicSetDescriptor) -> bool {
    desc.components.iter().all(|c| c.well_formed(&desc.ambient))
}

/// Stable under `(y, w, eta) -> (y, t w, eta)`; holds when every block rule is linear.
pub fn is_homothety_stable(desc: &ConicSetDescriptor) -> bool {
    is_conic(desc)
}

/// Per component: the covector fiber is conormal to the stratum and the
/// dimensions add up to the base dimension.
pub fn isotropic_check(desc: &ConicSetDescriptor) -> bool {
    let AmbientSpec { q, d, .. } = desc.ambient;
    is_conic(desc)
        && desc.components.iter().all(|c| {
            let v = c.w_rule.to_subspace(d);
            let f = c.conormal.fiber.to_subspace(d);
            c.conormal.y_support.is_subset(&c.zero_set)
                && f.is_subspace_of(&v.annihilator())
                && (q - c.zero_set.len() + v.rank()) + (c.conormal.y_support.len() + f.rank()) == q + d
        })
}

/// Whether `(base, covector)` lies on some component.
pub fn membership(desc: &ConicSetDescriptor, base: &[Rational], covector: &[Rational]) -> Result<bool> {
    let AmbientSpec { q, d, .. } = desc.ambient;
    for v in [base, covector] {
        if v.len() != q + d {
            return Err(Error::DimensionMismatch { expected: q + d, got: v.len() });
        }
    }
    let (by, bw) = base.split_at(q);
    let (cy, cw) = covector.split_at(q);
    Ok(desc.components.iter().any(|c| {
        c.zero_set.iter().all(|&i| by[i].is_zero())
            && c.w_rule.to_subspace(d).contains(bw)
            && (0..q).all(|i| cy[i].is_zero() || c.conormal.y_support.contains(&i))
            && c.conormal.fiber.to_subspace(d).contains(cw)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Block, Subspace};
    use crate::rational::int;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn subsets(n: usize) -> Vec<Vec<usize>> {
        (1u32..1 << n).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
    }

    #[test]
    fn empty_strata_give_zero_section() {
        let amb = AmbientSpec::new(2, 1, Block::W);
        let desc = crit_of_map(amb, &[]).unwrap();
        assert_eq!(desc, ConicSetDescriptor::zero_section(amb));
        assert!(is_conic(&desc) && is_homothety_stable(&desc) && isotropic_check(&desc));
    }

    #[test]
    fn crit_counts() {
        let amb = AmbientSpec::new(1, 1, Block::W);
        let one = crit_of_map(amb, &[Stratum::new([0], WRule::FullFiber), Stratum::new([0], WRule::ZeroSection)])
            .unwrap();
        assert_eq!(one.components.len(), 3);

        let amb = AmbientSpec::new(2, 1, Block::W);
        let strata: Vec<Stratum> = subsets(2)
            .into_iter()
            .flat_map(|s| [Stratum::new(s.clone(), WRule::FullFiber), Stratum::new(s, WRule::ZeroSection)])
            .collect();
        let two = crit_of_map(amb, &strata).unwrap();
        assert_eq!(two.components.len(), 7);
        assert!(isotropic_check(&two) && is_conic(&two));
    }

    #[test]
    fn malformed_stratum() {
        let amb = AmbientSpec::new(1, 2, Block::W);
        assert!(matches!(crit_of_map(amb, &[Stratum::new([1], WRule::FullFiber)]), Err(Error::MalformedStratum(_))));
        let bad = WRule::Subbundle(Subspace::coordinate(3, &[0]));
        assert!(matches!(crit_of_map(amb, &[Stratum::new([0], bad)]), Err(Error::MalformedStratum(_))));
    }

    #[test]
    fn swap_examples() {
        let amb = AmbientSpec::new(1, 2, Block::W);
        let e1 = WRule::Subbundle(Subspace::coordinate(2, &[0]));
        let desc = conormal_union(amb, &[Stratum::new([], e1), Stratum::new([0], WRule::ZeroSection)]).unwrap();
        let sw = symplectic_swap(&desc);
        assert_eq!(sw.ambient.block, Block::WStar);
        let e2 = WRule::Subbundle(Subspace::coordinate(2, &[1]));
        assert!(sw.components.iter().any(|c| c.zero_set.is_empty() && c.w_rule == e2));
        assert!(sw.components.iter().any(|c| c.zero_set.len() == 1 && c.w_rule == WRule::FullFiber));
        assert_eq!(symplectic_swap(&sw), desc);
        assert!(isotropic_check(&sw));
    }

    #[test]
    fn pushforward_examples() {
        let amb = AmbientSpec::new(2, 1, Block::W);
        let desc = crit_of_map(amb, &[Stratum::new([0], WRule::FullFiber), Stratum::new([0, 1], WRule::ZeroSection)])
            .unwrap();
        let id = Projection::coordinate(2, 1, &[0, 1]);
        assert_eq!(pushforward_coordinate(&desc, &id).unwrap(), desc);

        // dropping y2: CN of {y1 = 0} x W stays the conormal of {y1 = 0}
        let pushed = pushforward_coordinate(&desc, &Projection::coordinate(2, 1, &[0])).unwrap();
        let expect = crit_of_map(
            AmbientSpec::new(1, 1, Block::W),
            &[Stratum::new([0], WRule::FullFiber), Stratum::new([0], WRule::ZeroSection)],
        )
        .unwrap();
        assert_eq!(pushed, expect);
        assert!(isotropic_check(&pushed));

        let zs = ConicSetDescriptor::zero_section(amb);
        let pz = pushforward_coordinate(&zs, &Projection::coordinate(2, 1, &[1])).unwrap();
        assert_eq!(pz, ConicSetDescriptor::zero_section(AmbientSpec::new(1, 1, Block::W)));
    }

    #[test]
    fn pushforward_rejects_non_coordinate() {
        let amb = AmbientSpec::new(2, 1, Block::W);
        let desc = ConicSetDescriptor::zero_section(amb);
        let sum = Projection { rows: vec![ints(&[1, 1, 0]), ints(&[0, 0, 1])] };
        assert!(matches!(pushforward_coordinate(&desc, &sum), Err(Error::UnsupportedMap(_))));
        let moves_w = Projection { rows: vec![ints(&[0, 0, 1]), ints(&[1, 0, 0])] };
        assert!(matches!(pushforward_coordinate(&desc, &moves_w), Err(Error::UnsupportedMap(_))));
    }

    #[test]
    fn corrupted_component_fails_isotropy() {
        let amb = AmbientSpec::new(1, 1, Block::W);
        let mut desc = crit_of_map(amb, &[Stratum::new([0], WRule::ZeroSection)]).unwrap();
        desc.components[0].conormal.fiber = WRule::FullFiber;
        desc.components[0].w_rule = WRule::FullFiber;
        assert!(!isotropic_check(&desc));
    }

    #[test]
    fn membership_examples() {
        let amb = AmbientSpec::new(1, 1, Block::W);
        let desc = crit_of_map(amb, &[Stratum::new([0], WRule::FullFiber), Stratum::new([0], WRule::ZeroSection)])
            .unwrap();
        assert!(membership(&desc, &ints(&[3, 5]), &ints(&[0, 0])).unwrap());
        assert!(membership(&desc, &ints(&[0, 5]), &ints(&[1, 0])).unwrap());
        assert!(!membership(&desc, &ints(&[2, 5]), &ints(&[1, 0])).unwrap());
        assert!(!membership(&desc, &ints(&[0, 5]), &ints(&[0, 1])).unwrap());
        assert!(membership(&desc, &ints(&[0, 0]), &ints(&[0, 1])).unwrap());
        assert!(matches!(membership(&desc, &ints(&[0]), &ints(&[0, 0])), Err(Error::DimensionMismatch { .. })));
    }
}
