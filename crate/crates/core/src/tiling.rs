//! Translational tilings of finite abelian groups.
//!
//! A subset `A` tiles `G` at level `l` with complement `T` when every group
//! element is covered exactly `l` times by the translates `A + t`, `t in T`.
//! Verification is exact rational arithmetic (weighted tiles allowed);
//! complement search is cover-the-first-hole backtracking, which enumerates
//! every complement exactly once.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::group::{dft, FiniteAbelianGroup, GroupSubset};
use crate::{Error, Result};

pub type Rational = Ratio<i64>;

/// A nonnegative rational weight per group element; generalizes subset
/// indicators as the thing being translated.
#[derive(Clone, Debug)]
pub struct WeightedTileFunction {
    group: FiniteAbelianGroup,
    weights: Vec<Rational>,
}

impl WeightedTileFunction {
    pub fn new(group: &FiniteAbelianGroup, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != group.order() as usize {
            return Err(Error::InvalidWeights(format!(
                "need {} weights, got {}",
                group.order(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| *w < Rational::from_integer(0)) {
            return Err(Error::InvalidWeights("negative weight".into()));
        }
        if weights.iter().all(|w| *w == Rational::from_integer(0)) {
            return Err(Error::InvalidWeights("all weights zero".into()));
        }
        Ok(WeightedTileFunction {
            group: group.clone(),
            weights,
        })
    }

    /// The indicator function of a subset.
    pub fn indicator(subset: &GroupSubset) -> Result<Self> {
        if subset.is_empty() {
            return Err(Error::InvalidWeights("all weights zero".into()));
        }
        let mut weights =
            vec![Rational::from_integer(0); subset.group().order() as usize];
        for e in subset.iter() {
            weights[e as usize] = Rational::from_integer(1);
        }
        Ok(WeightedTileFunction {
            group: subset.group().clone(),
            weights,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn weight(&self, e: u64) -> Rational {
        self.weights[e as usize]
    }

    /// Total mass `sum_x f(x)`.
    pub fn mass(&self) -> Rational {
        self.weights.iter().sum()
    }
}

/// A verified tiling: `sum_{t in T} f(x - t) = level` everywhere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TilingCertificate {
    pub tile: Vec<u64>,
    pub complement: Vec<u64>,
    pub level: u64,
}

/// Pointwise failure witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TilingRefutation {
    pub witness: u64,
    pub attained: String,
    pub expected: String,
}

#[derive(Clone, Debug)]
pub enum TilingOutcome {
    Tiles(TilingCertificate),
    Refuted(TilingRefutation),
}

impl TilingOutcome {
    pub fn is_tiling(&self) -> bool {
        matches!(self, TilingOutcome::Tiles(_))
    }
}

/// Exact check of `sum_{t in T} f(x - t) = level` for every `x`.
///
/// Sums are accumulated over `Ratio<i128>` so that mixed denominators
/// cannot overflow at desk scale; the refutation carries the attained value.
pub fn verify_tiling(
    f: &WeightedTileFunction,
    translates: &GroupSubset,
    level: Rational,
) -> Result<TilingOutcome> {
    if f.group() != translates.group() {
        return Err(Error::InvalidSubset("tile and translates live in different groups".into()));
    }
    let g = f.group();
    let ts = translates.elements();
    let want = widen(level);
    for x in 0..g.order() {
        let mut acc = Ratio::<i128>::from_integer(0);
        for &t in &ts {
            acc += widen(f.weight(g.sub(x, t)));
        }
        if acc != want {
            return Ok(TilingOutcome::Refuted(TilingRefutation {
                witness: x,
                attained: acc.to_string(),
                expected: want.to_string(),
            }));
        }
    }
    let tile_support: Vec<u64> = (0..g.order())
        .filter(|&e| f.weight(e) != Rational::from_integer(0))
        .collect();
    Ok(TilingOutcome::Tiles(TilingCertificate {
        tile: tile_support,
        complement: ts,
        level: if level.is_integer() && *level.numer() >= 0 {
            *level.numer() as u64
        } else {
            0
        },
    }))
}

fn widen(r: Rational) -> Ratio<i128> {
    Ratio::new(*r.numer() as i128, *r.denom() as i128)
}

/// All complements `T` with `0 in T` tiling `A` at the given level.
///
/// Level 1 runs exact-cover backtracking: always branch on the smallest
/// uncovered element, over every translate that covers it without overlap.
/// Each solution is produced exactly once. Higher levels fall back to
/// ordered enumeration with a feasibility prune. Output sorted.
pub fn find_tiling_complements(a: &GroupSubset, level: u64) -> Result<Vec<GroupSubset>> {
    let mut out = Vec::new();
    search_complements(a, level, &mut |t| {
        out.push(t);
        true
    })?;
    out.sort_by(|x, y| x.bits().lex_cmp(y.bits()));
    Ok(out)
}

/// Whether `A` tiles `G` at level 1, with a certificate when it does.
pub fn is_tile(a: &GroupSubset) -> Result<Option<TilingCertificate>> {
    let mut found = None;
    search_complements(a, 1, &mut |t| {
        found = Some(t);
        false // stop at the first complement
    })?;
    Ok(found.map(|t| TilingCertificate {
        tile: a.elements(),
        complement: t.elements(),
        level: 1,
    }))
}

/// Shared search core; the callback returns `false` to stop early.
fn search_complements(
    a: &GroupSubset,
    level: u64,
    emit: &mut dyn FnMut(GroupSubset) -> bool,
) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    if level == 0 {
        return Err(Error::InvalidParameter("tiling level must be >= 1".into()));
    }
    let g = a.group();
    let order = g.order();
    // volume obstruction: |A| * |T| = level * |G|
    if (level * order) % a.size() != 0 {
        return Ok(());
    }
    let t_size = level * order / a.size();
    if t_size > order {
        return Ok(());
    }
    // translate-membership rows: row[t] = A + t as a bit set
    let rows: Vec<BitSet> = (0..order)
        .map(|t| {
            let mut row = BitSet::new(order as usize);
            for e in a.iter() {
                row.insert(g.add(e, t) as usize);
            }
            row
        })
        .collect();
    // covers[x] = set of translates t whose translate covers x
    let mut covers: Vec<Vec<u64>> = vec![Vec::new(); order as usize];
    for (t, row) in rows.iter().enumerate() {
        for x in row.iter_ones() {
            covers[x].push(t as u64);
        }
    }

    if level == 1 {
        let mut covered = rows[0].clone(); // 0 is always in T
        let mut chosen = vec![0u64];
        exact_cover(&rows, &covers, &mut covered, &mut chosen, t_size, g, emit);
    } else {
        let mut counts = vec![0u64; order as usize];
        for x in rows[0].iter_ones() {
            counts[x] += 1;
        }
        let mut chosen = vec![0u64];
        multi_cover(&rows, &covers, &mut counts, &mut chosen, 1, t_size, level, g, emit);
    }
    Ok(())
}

fn exact_cover(
    rows: &[BitSet],
    covers: &[Vec<u64>],
    covered: &mut BitSet,
    chosen: &mut Vec<u64>,
    t_size: u64,
    g: &FiniteAbelianGroup,
    emit: &mut dyn FnMut(GroupSubset) -> bool,
) -> bool {
    let hole = match covered.first_zero() {
        None => {
            let t = GroupSubset::from_elements(g, chosen).expect("in range");
            return emit(t);
        }
        Some(x) => x,
    };
    if chosen.len() as u64 == t_size {
        return true; // can't extend, not a cover
    }
    for &t in &covers[hole] {
        let row = &rows[t as usize];
        if covered.is_disjoint(row) {
            covered.union_with(row);
            chosen.push(t);
            let keep_going = exact_cover(rows, covers, covered, chosen, t_size, g, emit);
            chosen.pop();
            covered.difference_with(row);
            if !keep_going {
                return false;
            }
        }
    }
    true
}

/// Include/exclude recursion over translates in increasing order; each
/// candidate set is visited once. Prune when the smallest deficient point
/// can no longer reach the level with the undecided translates.
#[allow(clippy::too_many_arguments)]
fn multi_cover(
    rows: &[BitSet],
    covers: &[Vec<u64>],
    counts: &mut Vec<u64>,
    chosen: &mut Vec<u64>,
    next: u64,
    t_size: u64,
    level: u64,
    g: &FiniteAbelianGroup,
    emit: &mut dyn FnMut(GroupSubset) -> bool,
) -> bool {
    let hole = match counts.iter().position(|&c| c < level) {
        None => {
            // coverage mass forces |T| = t_size exactly here
            debug_assert_eq!(chosen.len() as u64, t_size);
            let t = GroupSubset::from_elements(g, chosen).expect("in range");
            return emit(t);
        }
        Some(x) => x,
    };
    if chosen.len() as u64 == t_size || next as usize >= rows.len() {
        return true;
    }
    // covers[hole] is ascending: count candidates still undecided
    let cands = &covers[hole];
    let pos = cands.partition_point(|&t| t < next);
    if (cands.len() - pos) as u64 + counts[hole] < level {
        return true;
    }
    // include `next` unless it overfills some point
    let row = &rows[next as usize];
    if row.iter_ones().all(|x| counts[x] < level) {
        for x in row.iter_ones() {
            counts[x] += 1;
        }
        chosen.push(next);
        let keep_going =
            multi_cover(rows, covers, counts, chosen, next + 1, t_size, level, g, emit);
        chosen.pop();
        for x in row.iter_ones() {
            counts[x] -= 1;
        }
        if !keep_going {
            return false;
        }
    }
    // exclude `next`
    multi_cover(rows, covers, counts, chosen, next + 1, t_size, level, g, emit)
}

/// Spectral side of the tiling test: `T` complements `A` at level 1 iff
/// `1A^ * 1T^` vanishes away from frequency 0.
pub fn dft_tiling_criterion(a: &GroupSubset, t: &GroupSubset) -> Result<bool> {
    if a.group() != t.group() {
        return Err(Error::InvalidSubset("different groups".into()));
    }
    if a.size() * t.size() != a.group().order() {
        return Ok(false);
    }
    let da = dft(a)?;
    let dt = dft(t)?;
    let mut union = da.zero_set().clone();
    union.union_with(dt.zero_set());
    Ok((1..a.group().order()).all(|l| union.contains(l as usize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::subset_stream;

    fn z(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn subset(g: &FiniteAbelianGroup, els: &[u64]) -> GroupSubset {
        GroupSubset::from_elements(g, els).unwrap()
    }

    fn one() -> Rational {
        Rational::from_integer(1)
    }

    #[test]
    fn verify_z4_certificate_and_refutation() {
        let g = z(4);
        let f = WeightedTileFunction::indicator(&subset(&g, &[0, 1])).unwrap();
        // {0,2} tiles
        match verify_tiling(&f, &subset(&g, &[0, 2]), one()).unwrap() {
            TilingOutcome::Tiles(c) => {
                assert_eq!(c.complement, vec![0, 2]);
                assert_eq!(c.level, 1);
            }
            TilingOutcome::Refuted(r) => panic!("unexpected refutation {r:?}"),
        }
        // {0,1} does not: x=1 is covered twice
        match verify_tiling(&f, &subset(&g, &[0, 1]), one()).unwrap() {
            TilingOutcome::Tiles(_) => panic!("should refute"),
            TilingOutcome::Refuted(r) => {
                assert_eq!(r.witness, 1);
                assert_eq!(r.attained, "2");
            }
        }
    }

    #[test]
    fn full_group_tile() {
        let g = FiniteAbelianGroup::new(&[3, 2]).unwrap();
        let f = WeightedTileFunction::indicator(&GroupSubset::full(&g)).unwrap();
        let t = subset(&g, &[0]);
        assert!(verify_tiling(&f, &t, one()).unwrap().is_tiling());
    }

    #[test]
    fn weighted_tiling_level_half() {
        // f = 1/2 on {0,1} tiles Z2 at level 1/2 with T = {0}
        let g = z(2);
        let w = Rational::new(1, 2);
        let f = WeightedTileFunction::new(&g, vec![w, w]).unwrap();
        let t = subset(&g, &[0, 1]);
        assert!(verify_tiling(&f, &t, one()).unwrap().is_tiling());
        assert!(!verify_tiling(&f, &subset(&g, &[0]), one())
            .unwrap()
            .is_tiling());
    }

    #[test]
    fn find_complements_z4() {
        let g = z(4);
        let a = subset(&g, &[0, 1]);
        let found = find_tiling_complements(&a, 1).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].elements(), vec![0, 2]);
    }

    #[test]
    fn divisibility_obstruction() {
        let g = z(5);
        let a = subset(&g, &[0, 1, 2]);
        assert!(find_tiling_complements(&a, 1).unwrap().is_empty());
        assert!(is_tile(&a).unwrap().is_none());
    }

    #[test]
    fn find_complements_z6_brute_force_oracle() {
        let g = z(6);
        let a = subset(&g, &[0, 3]);
        let found = find_tiling_complements(&a, 1).unwrap();
        let lists: Vec<Vec<u64>> = found.iter().map(|t| t.elements()).collect();
        // oracle: every 3-subset containing 0, verified pointwise
        let f = WeightedTileFunction::indicator(&a).unwrap();
        let mut expected = Vec::new();
        for t in subset_stream(&g, 3).unwrap() {
            if t.contains(0) && verify_tiling(&f, &t, one()).unwrap().is_tiling() {
                expected.push(t.elements());
            }
        }
        assert_eq!(lists, expected);
        assert_eq!(
            lists,
            vec![vec![0, 1, 2], vec![0, 1, 5], vec![0, 2, 4], vec![0, 4, 5]]
        );
    }

    #[test]
    fn z8_0124_is_not_a_tile() {
        // exhaustive oracle over all 2-subsets containing 0
        let g = z(8);
        let a = subset(&g, &[0, 1, 2, 4]);
        assert!(is_tile(&a).unwrap().is_none());
        let f = WeightedTileFunction::indicator(&a).unwrap();
        for t in 1..8 {
            let cand = subset(&g, &[0, t]);
            assert!(!verify_tiling(&f, &cand, one()).unwrap().is_tiling());
        }
    }

    #[test]
    fn level_two_complements() {
        // A = {0,1} in Z4 at level 2: |T| = 4, so T = G, which works.
        let g = z(4);
        let a = subset(&g, &[0, 1]);
        let found = find_tiling_complements(&a, 2).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].elements(), vec![0, 1, 2, 3]);
        // and Z6 with A = {0,3}: T of size 6 = G works; size-6 only
        let g6 = z(6);
        let found6 = find_tiling_complements(&subset(&g6, &[0, 3]), 2).unwrap();
        assert!(found6.iter().any(|t| t.size() == 6));
        for t in &found6 {
            let f = WeightedTileFunction::indicator(&subset(&g6, &[0, 3])).unwrap();
            assert!(
                verify_tiling(&f, t, Rational::from_integer(2))
                    .unwrap()
                    .is_tiling()
            );
        }
    }

    #[test]
    fn volume_identity_on_certificates() {
        let g = z(12);
        for size in [1u64, 2, 3, 4, 6] {
            for a in subset_stream(&g, size).unwrap().take(40) {
                if !a.contains(0) {
                    continue;
                }
                for t in find_tiling_complements(&a, 1).unwrap() {
                    assert_eq!(a.size() * t.size(), g.order());
                }
            }
        }
    }

    #[test]
    fn translation_invariance_of_tiling() {
        let g = z(8);
        let a = subset(&g, &[0, 1]);
        assert!(is_tile(&a).unwrap().is_some());
        for t in 0..8 {
            assert!(is_tile(&a.translate(t)).unwrap().is_some());
        }
    }

    #[test]
    fn dft_criterion_matches_pointwise_on_z12() {
        let g = z(12);
        let a = subset(&g, &[0, 1, 2]);
        let f = WeightedTileFunction::indicator(&a).unwrap();
        for t in subset_stream(&g, 4).unwrap() {
            if !t.contains(0) {
                continue;
            }
            let pointwise = verify_tiling(&f, &t, one()).unwrap().is_tiling();
            let spectral = dft_tiling_criterion(&a, &t).unwrap();
            assert_eq!(pointwise, spectral, "T = {:?}", t.elements());
        }
    }
}
