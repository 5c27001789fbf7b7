//! Finite windows onto transversality and geometric separation.
//!
//! Orbits `π(H)` are replaced by the elements of `H` of length at most a
//! truncation radius in the word metric of the given generators. Every
//! profile carries the radii it was computed with.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::geometry::{diameter, neighborhood_diameter};
use crate::group::{GroupKind, GroupModel, Word};
use crate::Result;

/// Elements of `⟨gens⟩` of `gens`-length at most `radius`, sorted.
pub fn subgroup_orbit(model: &GroupModel, gens: &[Word], radius: u32) -> Vec<Word> {
    let steps: Vec<Word> = gens.iter().flat_map(|g| [g.clone(), model.invert(g)]).collect();
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    seen.insert(Word::identity());
    let mut frontier = alloc::vec![Word::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &steps {
                let y = model.multiply(x, s);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

/// Nontrivial elements of the `radius`-ball of `⟨gens⟩`, keeping the
/// shortlex-smaller of each pair `{g, g⁻¹}`.
pub fn generator_ball(model: &GroupModel, gens: &[Word], radius: u32) -> Vec<Word> {
    let mut out: Vec<Word> = subgroup_orbit(model, gens, radius)
        .into_iter()
        .filter(|g| !g.is_identity())
        .filter(|g| {
            let inv = model.invert(g);
            (model.length(g), g.clone()) <= (model.length(&inv), inv)
        })
        .collect();
    out.sort_by(|x, y| (model.length(x), x).cmp(&(model.length(y), y)));
    out
}

/// Membership in `⟨gens⟩`. Exact in free groups; in free products the test
/// is against the orbit of the given radius.
pub fn subgroup_member(model: &GroupModel, gens: &[Word], g: &Word, radius: u32) -> Result<bool> {
    match model.kind() {
        GroupKind::Free { .. } => Ok(model.stallings_core(gens)?.member(g)),
        GroupKind::FreeProduct { .. } => Ok(subgroup_orbit(model, gens, radius).binary_search(g).is_ok()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalityProfile {
    /// `(g, diam(α_f ∩ N_K(g·orbit)))` per coset representative.
    pub records: Vec<(Word, u64)>,
    pub max_diameter: u64,
    pub k: u64,
    pub axis_range: (i64, i64),
    pub coset_truncation: u32,
}

/// Diameters of the axis of `f` inside `K`-neighborhoods of translated orbits.
pub fn transversality_profile(
    model: &GroupModel,
    f: &Word,
    target_gens: &[Word],
    k: u64,
    coset_reps: &[Word],
    axis_range: (i64, i64),
    coset_truncation: u32,
) -> Result<TransversalityProfile> {
    let axis = model.axis_path(f, axis_range.0, axis_range.1)?.path;
    let orbit = subgroup_orbit(model, target_gens, coset_truncation);
    let records: Vec<(Word, u64)> = coset_reps
        .iter()
        .map(|g| {
            let targets: Vec<Word> = orbit.iter().map(|h| model.multiply(g, h)).collect();
            (g.clone(), neighborhood_diameter(model, &axis, &targets, k))
        })
        .collect();
    Ok(TransversalityProfile {
        max_diameter: records.iter().map(|r| r.1).max().unwrap_or(0),
        records,
        k,
        axis_range,
        coset_truncation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationProfile {
    /// `(g, diam(orbit ∩ N_κ(g·orbit)))` per candidate outside `H`.
    pub records: Vec<(Word, u64)>,
    /// Candidates dropped because they lie in `H`.
    pub excluded: usize,
    pub max_diameter: u64,
    pub kappa: u64,
    pub orbit_truncation: u32,
}

pub fn separation_profile(
    model: &GroupModel,
    h_gens: &[Word],
    kappa: u64,
    g_candidates: &[Word],
    orbit_truncation: u32,
) -> Result<SeparationProfile> {
    let orbit = subgroup_orbit(model, h_gens, orbit_truncation);
    let membership_radius = orbit_truncation.saturating_mul(2);
    let mut records = Vec::new();
    let mut excluded = 0;
    for g in g_candidates {
        if subgroup_member(model, h_gens, g, membership_radius)? {
            excluded += 1;
            continue;
        }
        let translated: Vec<Word> = orbit.iter().map(|h| model.multiply(g, h)).collect();
        let near: Vec<Word> =
            orbit.iter().filter(|x| translated.iter().any(|y| model.distance(x, y) <= kappa)).cloned().collect();
        records.push((g.clone(), diameter(model, &near)));
    }
    Ok(SeparationProfile {
        max_diameter: records.iter().map(|r| r.1).max().unwrap_or(0),
        records,
        excluded,
        kappa,
        orbit_truncation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Letter;
    use crate::Error;

    fn f2() -> GroupModel {
        GroupModel::free(2).unwrap()
    }

    fn a() -> Word {
        Word::from(Letter::new(0, 1))
    }

    fn b() -> Word {
        Word::from(Letter::new(1, 1))
    }

    #[test]
    fn orbit_of_cyclic_subgroup() {
        let m = f2();
        let o = subgroup_orbit(&m, &[a()], 3);
        assert_eq!(o.len(), 7);
        assert!(o.contains(&m.power(&a(), -3)));
        let s = generator_ball(&m, &[a(), b()], 2);
        assert_eq!(s.len(), 8);
        assert!(s.iter().all(|g| !s.contains(&m.invert(g))));
    }

    #[test]
    fn axis_inside_orbit_is_not_transverse() {
        let m = f2();
        let reps = [Word::identity()];
        let short = transversality_profile(&m, &a(), &[a()], 0, &reps, (0, 3), 10).unwrap();
        let long = transversality_profile(&m, &a(), &[a()], 0, &reps, (0, 6), 10).unwrap();
        assert_eq!(short.max_diameter, 3);
        assert_eq!(long.max_diameter, 6);
    }

    #[test]
    fn distinct_lines_meet_in_a_point() {
        let m = f2();
        let reps = m.ball(4).unwrap();
        let p = transversality_profile(&m, &b(), &[a()], 0, &reps, (-6, 6), 6).unwrap();
        assert_eq!(p.max_diameter, 0);
        let p1 = transversality_profile(&m, &b(), &[a()], 1, &reps, (-6, 6), 6).unwrap();
        assert!(p1.max_diameter <= 4);
    }

    #[test]
    fn transversality_needs_loxodromic_axis() {
        let m = GroupModel::free_product(&[2, 3]).unwrap();
        let t = Word::from(Letter::new(0, 1));
        assert_eq!(transversality_profile(&m, &t, &[], 0, &[], (0, 2), 1), Err(Error::NotLoxodromic));
    }

    #[test]
    fn separation_examples() {
        let m = f2();
        let p0 = separation_profile(&m, &[a()], 0, &[b()], 5).unwrap();
        assert_eq!(p0.records, [(b(), 0)]);
        let p1 = separation_profile(&m, &[a()], 1, &[b()], 5).unwrap();
        assert_eq!(p1.records, [(b(), 0)]);
        let p2 = separation_profile(&m, &[a()], 1, &[b(), m.power(&a(), 2)], 5).unwrap();
        assert_eq!(p2.excluded, 1);
        assert_eq!(p2.records.len(), 1);
    }

    #[test]
    fn orbit_membership_in_products() {
        let m = GroupModel::free_product(&[2, 3]).unwrap();
        let h = [m.word(&[Letter::new(0, 1), Letter::new(1, 1)]).unwrap()];
        let g = m.power(&h[0], 3);
        assert!(subgroup_member(&m, &h, &g, 3).unwrap());
        assert!(!subgroup_member(&m, &h, &Word::from(Letter::new(1, 1)), 3).unwrap());
    }
}
