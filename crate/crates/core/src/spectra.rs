//! Exponential spectra of group subsets via the orthogonality graph.
//!
//! Two characters with frequencies `lambda, mu` are orthogonal over `A`
//! exactly when `lambda - mu` lies in the zero set of `1A^`. A spectrum is
//! a set of `|A|` pairwise-orthogonal frequencies, i.e. a `|A|`-clique of
//! the orthogonality graph; cardinality plus pairwise orthogonality force
//! the Parseval identity, which is nevertheless re-verified exhaustively.
//! Spectra are normalized to contain frequency 0.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::group::{
    binomial, canonical_subset_stream, dft, DftTable, FiniteAbelianGroup, GroupSubset,
};
use crate::tiling::is_tile;
use crate::{Error, Result};

/// Adjacency structure on the dual group: `(lambda, mu)` is an edge iff
/// `lambda - mu` lies in the zero set of the base set's DFT.
#[derive(Clone, Debug)]
pub struct OrthogonalityGraph {
    group: FiniteAbelianGroup,
    rows: Vec<BitSet>,
}

impl OrthogonalityGraph {
    pub fn from_dft(table: &DftTable) -> Self {
        let g = table.group().clone();
        let n = g.order();
        let zero_set = table.zero_set();
        let rows = (0..n)
            .map(|lambda| {
                let mut row = BitSet::new(n as usize);
                // mu adjacent to lambda iff lambda - mu in zero set, i.e.
                // mu = lambda - z for z in the zero set
                for z in zero_set.iter_ones() {
                    row.insert(g.sub(lambda, z as u64) as usize);
                }
                row.remove(lambda as usize); // loop-free even if 0 got flagged
                row
            })
            .collect();
        OrthogonalityGraph { group: g, rows }
    }

    pub fn build(base: &GroupSubset) -> Result<Self> {
        Ok(Self::from_dft(&dft(base)?))
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn neighbors(&self, v: u64) -> &BitSet {
        &self.rows[v as usize]
    }

    pub fn is_edge(&self, a: u64, b: u64) -> bool {
        self.rows[a as usize].contains(b as usize)
    }

    pub fn degree(&self, v: u64) -> usize {
        self.rows[v as usize].count()
    }
}

/// A verified spectrum together with the worst Parseval residual observed
/// over all translation offsets `t`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumCertificate {
    pub base_set: Vec<u64>,
    pub spectrum: Vec<u64>,
    pub parseval_residual: f64,
    /// Exact-backend confirmation of all pairwise zeros (small orders only).
    pub exact_verified: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum SpectrumRefutation {
    /// These two frequencies are not orthogonal over the base set.
    NonOrthogonalPair { lambda: u64, mu: u64, dft_modulus: f64 },
    /// `|spectrum| != |A|`.
    CardinalityMismatch { expected: u64, got: u64 },
    /// The Parseval sum misses `|A|^2` at offset `t`.
    ParsevalFailure { t: u64, value: f64, expected: f64 },
}

#[derive(Clone, Debug)]
pub enum SpectrumOutcome {
    Spectrum(SpectrumCertificate),
    Refuted(SpectrumRefutation),
}

impl SpectrumOutcome {
    pub fn is_spectrum(&self) -> bool {
        matches!(self, SpectrumOutcome::Spectrum(_))
    }
}

/// Certify or refute a candidate spectrum.
///
/// Accepts iff (a) all pairwise differences lie in the zero set and (b) the
/// candidate has exactly `|A|` frequencies; the Parseval identity
/// `sum_{lambda} |1A^(t - lambda)|^2 = |A|^2` is then re-verified at every
/// offset `t` rather than trusted.
pub fn verify_spectrum(a: &GroupSubset, frequencies: &[u64]) -> Result<SpectrumOutcome> {
    if frequencies.is_empty() {
        return Err(Error::InvalidParameter("empty candidate spectrum".into()));
    }
    let g = a.group();
    for &f in frequencies {
        if f >= g.order() {
            return Err(Error::FrequencyOutOfRange {
                frequency: f,
                order: g.order(),
            });
        }
    }
    let mut sorted = frequencies.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != frequencies.len() {
        return Err(Error::InvalidParameter("repeated frequency in candidate".into()));
    }

    let table = dft(a)?;
    // (a) pairwise orthogonality
    for (i, &lam) in sorted.iter().enumerate() {
        for &mu in &sorted[..i] {
            let diff = g.sub(lam, mu);
            if !table.zero_set().contains(diff as usize) {
                return Ok(SpectrumOutcome::Refuted(SpectrumRefutation::NonOrthogonalPair {
                    lambda: mu,
                    mu: lam,
                    dft_modulus: table.value(diff).norm(),
                }));
            }
        }
    }
    // (b) cardinality
    if sorted.len() as u64 != a.size() {
        return Ok(SpectrumOutcome::Refuted(SpectrumRefutation::CardinalityMismatch {
            expected: a.size(),
            got: sorted.len() as u64,
        }));
    }
    // Parseval at every offset
    let expected = (a.size() * a.size()) as f64;
    let tol = crate::config::DFT_ZERO_REL * expected.max(1.0) * g.order() as f64;
    let mut worst = 0.0f64;
    for t in 0..g.order() {
        let sum: f64 = sorted
            .iter()
            .map(|&lam| table.value(g.sub(t, lam)).norm_sqr())
            .sum();
        let resid = (sum - expected).abs();
        if resid > worst {
            worst = resid;
        }
        if resid > tol {
            return Ok(SpectrumOutcome::Refuted(SpectrumRefutation::ParsevalFailure {
                t,
                value: sum,
                expected,
            }));
        }
    }
    // exact confirmation of the pairwise zeros on small orders
    let exact_verified = if g.order() <= crate::group::EXACT_BACKEND_MAX_ORDER {
        let mut ok = true;
        'outer: for (i, &lam) in sorted.iter().enumerate() {
            for &mu in &sorted[..i] {
                match crate::group::dft_value_is_zero_exact(a, g.sub(lam, mu)) {
                    Some(true) => {}
                    _ => {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(SpectrumOutcome::Spectrum(SpectrumCertificate {
        base_set: a.elements(),
        spectrum: sorted,
        parseval_residual: worst,
        exact_verified,
    }))
}

/// All spectra of `A` containing frequency 0, as sorted frequency lists.
///
/// Branch-and-bound clique search over the orthogonality graph restricted
/// to the neighborhood of 0; candidates are processed in increasing index
/// so each clique is produced exactly once, and branches are cut with a
/// greedy coloring bound.
pub fn find_spectra(a: &GroupSubset) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    clique_search(a, &mut |c| {
        out.push(c.to_vec());
        true
    })?;
    Ok(out)
}

/// First spectrum containing 0, if any (the scan's spectrality test).
pub fn first_spectrum(a: &GroupSubset) -> Result<Option<Vec<u64>>> {
    let mut found = None;
    clique_search(a, &mut |c| {
        found = Some(c.to_vec());
        false
    })?;
    Ok(found)
}

pub fn is_spectral(a: &GroupSubset) -> Result<bool> {
    Ok(first_spectrum(a)?.is_some())
}

fn clique_search(a: &GroupSubset, emit: &mut dyn FnMut(&[u64]) -> bool) -> Result<()> {
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    let k = a.size() as usize;
    let graph = OrthogonalityGraph::build(a)?;
    if k == 1 {
        emit(&[0]);
        return Ok(());
    }
    let mut clique = vec![0u64];
    let cand = graph.neighbors(0).clone();
    // scratch row for candidate sets along the recursion
    fn rec(
        graph: &OrthogonalityGraph,
        clique: &mut Vec<u64>,
        cand: &BitSet,
        k: usize,
        emit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> bool {
        if clique.len() == k {
            return emit(clique);
        }
        let need = k - clique.len();
        if cand.count() < need {
            return true;
        }
        if greedy_coloring_bound(graph, cand) < need {
            return true;
        }
        let members: Vec<usize> = cand.iter_ones().collect();
        for (pos, &v) in members.iter().enumerate() {
            // remaining candidates must keep enough room
            if members.len() - pos < need {
                break;
            }
            let mut next = cand.clone();
            next.intersect_with(graph.neighbors(v as u64));
            // only candidates above v: every clique enumerated once, ascending
            for &w in &members[..=pos] {
                next.remove(w);
            }
            clique.push(v as u64);
            let keep_going = rec(graph, clique, &next, k, emit);
            clique.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    rec(&graph, &mut clique, &cand, k, emit);
    Ok(())
}

/// Number of colors a greedy pass needs on the induced subgraph; an upper
/// bound for its clique number.
fn greedy_coloring_bound(graph: &OrthogonalityGraph, vertices: &BitSet) -> usize {
    let mut color_classes: Vec<BitSet> = Vec::new();
    for v in vertices.iter_ones() {
        let nb = graph.neighbors(v as u64);
        let mut placed = false;
        for class in color_classes.iter_mut() {
            if class.is_disjoint(nb) {
                class.insert(v);
                placed = true;
                break;
            }
        }
        if !placed {
            let mut class = BitSet::new(vertices.universe());
            class.insert(v);
            color_classes.push(class);
        }
    }
    color_classes.len()
}

/// One record of the exhaustive scan: verdicts for a canonical subset.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanRecord {
    pub subset: Vec<u64>,
    pub is_tile: bool,
    pub is_spectral: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tiling_witness: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum_witness: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanSizeSummary {
    pub size: u64,
    pub subsets: u64,
    pub tiles: u64,
    pub spectral: u64,
    pub discrepancies: u64,
}

/// Full classification of the canonical subsets of `G` up to `max_size`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub group: Vec<u32>,
    pub max_size: u64,
    pub records: Vec<ScanRecord>,
    /// Subsets where the tile and spectral verdicts differ.
    pub discrepancies: Vec<ScanRecord>,
    pub per_size: Vec<ScanSizeSummary>,
}

/// Classify every canonical subset of size `1..=max_size` as tile and/or
/// spectral, reporting all subsets where the verdicts differ.
///
/// Guard: refuses any size `k` with `C(|G|, k)` above `budget`.
pub fn fuglede_scan(
    group: &FiniteAbelianGroup,
    max_size: u64,
    budget: u128,
) -> Result<ScanReport> {
    let order = group.order();
    let max_size = max_size.min(order);
    if max_size < 1 {
        return Err(Error::InvalidParameter("max_size must be >= 1".into()));
    }
    for k in 1..=max_size {
        let c = binomial(order, k);
        if c > budget {
            return Err(Error::BudgetExceeded {
                order,
                size: k,
                combinations: c,
                budget,
            });
        }
    }
    let mut records = Vec::new();
    let mut per_size = Vec::new();
    for k in 1..=max_size {
        let mut summary = ScanSizeSummary {
            size: k,
            subsets: 0,
            tiles: 0,
            spectral: 0,
            discrepancies: 0,
        };
        for a in canonical_subset_stream(group, k, false)? {
            let tiling = is_tile(&a)?;
            let spectrum = first_spectrum(&a)?;
            let rec = ScanRecord {
                subset: a.elements(),
                is_tile: tiling.is_some(),
                is_spectral: spectrum.is_some(),
                tiling_witness: tiling.map(|c| c.complement),
                spectrum_witness: spectrum,
            };
            summary.subsets += 1;
            summary.tiles += rec.is_tile as u64;
            summary.spectral += rec.is_spectral as u64;
            summary.discrepancies += (rec.is_tile != rec.is_spectral) as u64;
            records.push(rec);
        }
        per_size.push(summary);
    }
    let discrepancies = records
        .iter()
        .filter(|r| r.is_tile != r.is_spectral)
        .cloned()
        .collect();
    Ok(ScanReport {
        group: group.factors().to_vec(),
        max_size,
        records,
        discrepancies,
        per_size,
    })
}

/// One instance of the lattice/dual-lattice duality specialized to finite
/// groups: a coset transversal of a subgroup `H` tiles with complement `H`
/// and has the annihilator `H^perp` as a spectrum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityCase {
    pub subgroup: Vec<u64>,
    pub transversal: Vec<u64>,
    pub annihilator: Vec<u64>,
    pub tiling_ok: bool,
    pub spectrum_ok: bool,
}

/// Run the duality check for every subgroup of `G`.
pub fn duality_check(group: &FiniteAbelianGroup) -> Result<Vec<DualityCase>> {
    use crate::tiling::{verify_tiling, Rational, WeightedTileFunction};
    let mut out = Vec::new();
    for h in crate::group::subgroups(group) {
        let transversal = crate::group::coset_transversal(&h);
        let ann = crate::group::annihilator(&h);
        let f = WeightedTileFunction::indicator(&transversal)?;
        let tiling_ok = verify_tiling(&f, &h, Rational::from_integer(1))?.is_tiling();
        let spectrum_ok = verify_spectrum(&transversal, &ann.elements())?.is_spectrum();
        out.push(DualityCase {
            subgroup: h.elements(),
            transversal: transversal.elements(),
            annihilator: ann.elements(),
            tiling_ok,
            spectrum_ok,
        });
    }
    Ok(out)
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

    #[test]
    fn graph_structure_z4() {
        let g = z(4);
        let a = subset(&g, &[0, 1]);
        let graph = OrthogonalityGraph::build(&a).unwrap();
        // zero set {2}: each vertex adjacent exactly to its antipode
        for v in 0..4u64 {
            assert_eq!(graph.neighbors(v).to_vec(), vec![g.add(v, 2) as usize]);
        }
        // translation covariance
        for t in 0..4u64 {
            for a1 in 0..4u64 {
                for b1 in 0..4u64 {
                    if a1 != b1 {
                        assert_eq!(
                            graph.is_edge(a1, b1),
                            graph.is_edge(g.add(a1, t), g.add(b1, t))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn verify_spectrum_z4() {
        let g = z(4);
        let a = subset(&g, &[0, 1]);
        match verify_spectrum(&a, &[0, 2]).unwrap() {
            SpectrumOutcome::Spectrum(c) => {
                assert_eq!(c.spectrum, vec![0, 2]);
                assert!(c.parseval_residual < 1e-9);
                assert_eq!(c.exact_verified, Some(true));
            }
            SpectrumOutcome::Refuted(r) => panic!("unexpected refutation {r:?}"),
        }
        match verify_spectrum(&a, &[0, 1]).unwrap() {
            SpectrumOutcome::Refuted(SpectrumRefutation::NonOrthogonalPair {
                lambda,
                mu,
                dft_modulus,
            }) => {
                assert_eq!((lambda, mu), (0, 1));
                // 1A^(1) = 1 - i
                assert!((dft_modulus - 2f64.sqrt()).abs() < 1e-12);
            }
            other => panic!("expected pair refutation, got {other:?}"),
        }
    }

    #[test]
    fn full_group_has_full_spectrum() {
        let g = FiniteAbelianGroup::new(&[3, 2]).unwrap();
        let a = GroupSubset::full(&g);
        let all: Vec<u64> = (0..6).collect();
        assert!(verify_spectrum(&a, &all).unwrap().is_spectrum());
    }

    #[test]
    fn out_of_range_frequency_is_error() {
        let g = z(4);
        let a = subset(&g, &[0, 1]);
        assert!(matches!(
            verify_spectrum(&a, &[0, 7]),
            Err(Error::FrequencyOutOfRange { .. })
        ));
    }

    #[test]
    fn find_spectra_z4_and_z5() {
        let g = z(4);
        let spectra = find_spectra(&subset(&g, &[0, 1])).unwrap();
        assert_eq!(spectra, vec![vec![0, 2]]);

        let g5 = z(5);
        assert!(find_spectra(&subset(&g5, &[0, 1, 2])).unwrap().is_empty());
    }

    #[test]
    fn find_spectra_z6_brute_force_oracle() {
        let g = z(6);
        let a = subset(&g, &[0, 1, 2]);
        let spectra = find_spectra(&a).unwrap();
        assert_eq!(spectra, vec![vec![0, 2, 4]]);
        // oracle: all C(5,2) candidate pairs joined with 0
        let mut expected = Vec::new();
        for x in 1..6u64 {
            for y in (x + 1)..6 {
                if verify_spectrum(&a, &[0, x, y]).unwrap().is_spectrum() {
                    expected.push(vec![0, x, y]);
                }
            }
        }
        assert_eq!(spectra, expected);
    }

    #[test]
    fn clique_search_matches_naive_on_z8() {
        let g = z(8);
        for size in 1..=8u64 {
            for a in subset_stream(&g, size).unwrap() {
                let fast = find_spectra(&a).unwrap();
                let mut naive = Vec::new();
                // enumerate all (size-1)-subsets of 1..8 joined with 0
                let table = dft(&a).unwrap();
                let others: Vec<u64> = (1..8).collect();
                let mut idx = vec![0usize; (size - 1) as usize];
                line_up(&others, &mut idx, 0, 0, &mut |chosen: &[u64]| {
                    let mut cand = vec![0u64];
                    cand.extend_from_slice(chosen);
                    let ok = cand.iter().enumerate().all(|(i, &x)| {
                        cand[..i]
                            .iter()
                            .all(|&y| table.zero_set().contains(g.sub(x, y) as usize))
                    });
                    if ok {
                        naive.push(cand);
                    }
                });
                assert_eq!(fast, naive, "A = {:?}", a.elements());
            }
        }
    }

    // tiny combination visitor for the naive oracle
    fn line_up(
        pool: &[u64],
        idx: &mut Vec<usize>,
        depth: usize,
        start: usize,
        f: &mut impl FnMut(&[u64]),
    ) {
        if depth == idx.len() {
            let chosen: Vec<u64> = idx.iter().map(|&i| pool[i]).collect();
            f(&chosen);
            return;
        }
        for i in start..pool.len() {
            idx[depth] = i;
            line_up(pool, idx, depth + 1, i + 1, f);
        }
    }

    #[test]
    fn scan_z4_singletons() {
        let g = z(4);
        let report = fuglede_scan(&g, 1, 1 << 20).unwrap();
        assert_eq!(report.records.len(), 1); // one orbit of singletons
        let r = &report.records[0];
        assert!(r.is_tile && r.is_spectral);
        assert_eq!(r.tiling_witness.as_deref(), Some(&[0, 1, 2, 3][..]));
        assert_eq!(r.spectrum_witness.as_deref(), Some(&[0][..]));
    }

    #[test]
    fn scan_klein_group_no_discrepancies() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let report = fuglede_scan(&g, 4, 1 << 20).unwrap();
        assert!(report.discrepancies.is_empty());
        // every tile spectral and conversely, per record
        for r in &report.records {
            assert_eq!(r.is_tile, r.is_spectral);
        }
    }

    #[test]
    fn scan_budget_guard() {
        let g = z(12);
        match fuglede_scan(&g, 6, 100) {
            Err(Error::BudgetExceeded { size, .. }) => assert_eq!(size, 4),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn spectra_translation_covariance() {
        let g = z(6);
        let a = subset(&g, &[0, 1, 2]);
        let s0 = find_spectra(&a).unwrap();
        for t in 0..6 {
            assert_eq!(find_spectra(&a.translate(t)).unwrap(), s0);
        }
    }

    #[test]
    fn duality_on_z6_and_klein() {
        for g in [z(6), FiniteAbelianGroup::new(&[2, 2]).unwrap()] {
            for case in duality_check(&g).unwrap() {
                assert!(case.tiling_ok && case.spectrum_ok, "case {case:?}");
            }
        }
    }
}
