//! The full verification suite, one function per criterion.
//!
//! Each criterion returns a [`CriterionReport`] with a PASS/FAIL verdict at
//! the pinned tolerances; the integration test target asserts them and the
//! CLI `repro` subcommand prints and archives them. Random sampling uses
//! fixed ChaCha8 seeds so reruns are bit-identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::disk::{self, SearchStrategy};
use crate::euclid::{self, Domain, Lattice, Polygon};
use crate::geom::{FrequencySet, Point2};
use crate::group::{
    self, abelian_groups_up_to, canonical_subset_stream, dft, FiniteAbelianGroup, GroupSubset,
};
use crate::spectra::{duality_check, find_spectra, fuglede_scan};
use crate::tiling::{self, dft_tiling_criterion, find_tiling_complements, verify_tiling};
use crate::Result;

/// Scale of the suite: `Desk` is the full pinned run, `Quick` shrinks the
/// exhaustive ranges for smoke testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Budget {
    Desk,
    Quick,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {:2} [{}] {} — {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.details
        )
    }
}

/// Criterion 1: exhaustive tile/spectral agreement on cyclic groups.
pub fn criterion_1(budget: Budget) -> Result<CriterionReport> {
    let max_n = match budget {
        Budget::Desk => 12,
        Budget::Quick => 8,
    };
    let mut subsets = 0u64;
    let mut discrepancies = 0u64;
    for n in 2..=max_n {
        let g = FiniteAbelianGroup::cyclic(n)?;
        let report = fuglede_scan(&g, n as u64, 5_000_000)?;
        subsets += report.records.len() as u64;
        discrepancies += report.discrepancies.len() as u64;
    }
    Ok(CriterionReport {
        id: 1,
        name: "finite Fuglede scan on Z_N".into(),
        pass: discrepancies == 0,
        details: format!(
            "N <= {max_n}, {subsets} canonical subsets, {discrepancies} discrepancies"
        ),
    })
}

/// Criterion 2: subgroup/annihilator duality on all abelian groups.
pub fn criterion_2(budget: Budget) -> Result<CriterionReport> {
    let max_order = match budget {
        Budget::Desk => 24,
        Budget::Quick => 12,
    };
    let mut cases = 0u64;
    let mut failures = 0u64;
    for g in abelian_groups_up_to(max_order) {
        for case in duality_check(&g)? {
            cases += 1;
            if !(case.tiling_ok && case.spectrum_ok) {
                failures += 1;
            }
        }
    }
    Ok(CriterionReport {
        id: 2,
        name: "transversal tile has annihilator spectrum".into(),
        pass: failures == 0,
        details: format!("order <= {max_order}, {cases} subgroup cases, {failures} failures"),
    })
}

/// Criterion 3: the triangle zero set on the integer grid.
pub fn criterion_3(_budget: Budget) -> Result<CriterionReport> {
    let mut worst_member = 0.0f64;
    let mut best_nonmember = f64::INFINITY;
    let mut mismatches = 0u64;
    for m in -50i64..=50 {
        for n in -50i64..=50 {
            let v = euclid::triangle_ft(m as f64, n as f64).norm();
            if euclid::triangle_zero_predicate(m, n) {
                worst_member = worst_member.max(v);
                if v >= 1e-10 {
                    mismatches += 1;
                }
            } else {
                best_nonmember = best_nonmember.min(v);
                if v <= 1e-3 {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(CriterionReport {
        id: 3,
        name: "triangle zero set on |m|,|n| <= 50".into(),
        pass: mismatches == 0,
        details: format!(
            "max |T^| on Z: {worst_member:.2e}; min off Z: {best_nonmember:.3e}; {mismatches} mismatches"
        ),
    })
}

/// Criterion 4: closed form vs boundary integral on random frequencies.
pub fn criterion_4(budget: Budget) -> Result<CriterionReport> {
    let samples = match budget {
        Budget::Desk => 10_000,
        Budget::Quick => 1_000,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let triangle = Polygon::standard_triangle();
    let mut max_err = 0.0f64;
    for _ in 0..samples {
        let r = rng.gen_range(0.1..=100.0);
        let th = rng.gen_range(0.0..std::f64::consts::TAU);
        let (xi, eta) = (r * th.cos(), r * th.sin());
        let err = (triangle.ft_boundary(xi, eta)? - euclid::triangle_ft(xi, eta)).norm();
        max_err = max_err.max(err);
    }
    Ok(CriterionReport {
        id: 4,
        name: "closed form vs boundary integral".into(),
        pass: max_err < 1e-10,
        details: format!("{samples} random frequencies, max discrepancy {max_err:.3e}"),
    })
}

/// Criterion 5: the axis lower bound and the zero-free strip.
pub fn criterion_5(_budget: Budget) -> Result<CriterionReport> {
    let floor = |xi: f64| 1.0 / (4.0 * std::f64::consts::PI * xi.abs());
    let mut violations = 0u64;
    for m in 1..=100i64 {
        for s in [1.0, -1.0] {
            let xi = s * m as f64;
            if euclid::projection_ft(xi).norm() < floor(xi) {
                violations += 1;
            }
        }
    }
    let mut grid_min_ratio = f64::INFINITY;
    let mut k = 500i64; // 5.00 in hundredths
    while k <= 5000 {
        let xi = k as f64 / 100.0;
        for s in [1.0, -1.0] {
            let v = euclid::projection_ft(s * xi).norm() / floor(xi);
            grid_min_ratio = grid_min_ratio.min(v);
            if v < 1.0 {
                violations += 1;
            }
        }
        k += 1;
    }
    let strip = euclid::zero_free_strip_scan(5.0, 0.1, 0.01, 0.01, 1e-6)?;
    Ok(CriterionReport {
        id: 5,
        name: "axis decay bound and zero-free strip".into(),
        pass: violations == 0 && strip.pass,
        details: format!(
            "{violations} bound violations, grid margin {grid_min_ratio:.3}x, strip min {:.3e} at ({}, {})",
            strip.min_modulus, strip.argmin_xi, strip.argmin_eta
        ),
    })
}

/// Criterion 6: the gradient decay bound with calibrated constant.
pub fn criterion_6(budget: Budget) -> Result<CriterionReport> {
    let (calib, test) = match budget {
        Budget::Desk => (2000, 1000),
        Budget::Quick => (400, 200),
    };
    let rep = euclid::gradient_bound_check(calib, test, 2026, 1e-5, 1.05);
    Ok(CriterionReport {
        id: 6,
        name: "gradient bound |grad T^| |zeta| <= C".into(),
        pass: rep.pass,
        details: format!(
            "C = {:.6} on {} samples; test max {:.6} on {} samples (ratio {:.4})",
            rep.c_calibrated,
            rep.calibration_samples,
            rep.test_max,
            rep.test_samples,
            rep.test_max / rep.c_calibrated
        ),
    })
}

/// Criterion 7: truncated Parseval identity for the unit square.
///
/// Stated tolerance 1e-3 at truncation radius 200. The true truncation tail
/// is `(2/(pi^2 rho)) (sin^2 pi t1 + sin^2 pi t2)`, i.e. up to 2.03e-3 at
/// rho = 200, so the random-offset half of this criterion fails for typical
/// draws; it is reported faithfully rather than loosened.
pub fn criterion_7(budget: Budget) -> Result<CriterionReport> {
    let trunc = 200.0;
    let draws = match budget {
        Budget::Desk => 25,
        Budget::Quick => 5,
    };
    let domain = Domain::unit_square();
    let lattice = Lattice::integer();
    let at_zero = euclid::lattice_parseval_check(
        &domain,
        &lattice,
        (0.0, 0.0),
        trunc,
        128,
        0.42,
        Some(1e-3),
    )?;
    let zero_exact = at_zero.residual == Some(0.0);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut max_resid = 0.0f64;
    let mut over = 0u32;
    for _ in 0..draws {
        let t = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
        let rep = euclid::lattice_parseval_check(
            &domain,
            &lattice,
            t,
            trunc,
            128,
            0.42,
            Some(1e-3),
        )?;
        let r = rep.residual.expect("pre-check passes");
        max_resid = max_resid.max(r);
        if r >= 1e-3 {
            over += 1;
        }
    }
    Ok(CriterionReport {
        id: 7,
        name: "truncated Parseval sum for the unit square".into(),
        pass: zero_exact && over == 0,
        details: format!(
            "t=0 residual {:?} (exact-zero: {zero_exact}); {over}/{draws} random offsets exceed 1e-3, max residual {max_resid:.3e} (analytic tail bound 2.03e-3 at rho=200)",
            at_zero.residual
        ),
    })
}

/// Criterion 8: counting density of the diagonal orthogonal family.
pub fn criterion_8(_budget: Budget) -> Result<CriterionReport> {
    let radii = [10.0, 100.0, 1000.0];
    let mut densities = Vec::new();
    for &r in &radii {
        let set = FrequencySet::antidiagonal_within(r);
        densities.push(set.density(r));
    }
    let monotone = densities.windows(2).all(|w| w[1] < w[0]);
    let small = densities[2] < 0.05;
    Ok(CriterionReport {
        id: 8,
        name: "density of {(-n, n)} decays to zero".into(),
        pass: monotone && small,
        details: format!(
            "N/(pi R^2) at R=10,100,1000: {:.4}, {:.5}, {:.6}",
            densities[0], densities[1], densities[2]
        ),
    })
}

/// Criterion 9: Bessel zero radii follow `A + B n` with `B = 1/2`.
pub fn criterion_9(_budget: Budget) -> Result<CriterionReport> {
    let table = disk::zero_table(120)?;
    let b_err = (table.fitted_b - 0.5).abs();
    let mut max_resid = 0.0f64;
    let mut max_gap_err = 0.0f64;
    for (i, &r) in table.radii.iter().enumerate() {
        if i >= 49 {
            let n = (i + 1) as f64;
            max_resid = max_resid.max((r - (table.fitted_a + table.fitted_b * n)).abs());
        }
    }
    for (i, w) in table.radii.windows(2).enumerate() {
        if i >= 49 {
            max_gap_err = max_gap_err.max((w[1] - w[0] - table.fitted_b).abs());
        }
    }
    let pass = b_err < 1e-3 && max_resid < 1e-3 && max_gap_err < 1e-3;
    Ok(CriterionReport {
        id: 9,
        name: "zero-radius asymptotics r_n = A + Bn + o(1)".into(),
        pass,
        details: format!(
            "A = {:.6}, B = {:.7} (|B - 1/2| = {b_err:.2e}); tail residual {max_resid:.2e}; gap error {max_gap_err:.2e}",
            table.fitted_a, table.fitted_b
        ),
    })
}

/// Criterion 10: the exact search recovers the equilateral triple.
pub fn criterion_10(_budget: Budget) -> Result<CriterionReport> {
    let mut table = disk::zero_table(16)?;
    let set = disk::orth_search(0.7, SearchStrategy::Exact, &mut table, 1e-9)?;
    let r1 = table.radius(1);
    let pts = set.points();
    let mut equilateral = set.len() == 3;
    if equilateral {
        for (i, p) in pts.iter().enumerate() {
            for q in pts.iter().take(i) {
                equilateral &= (p.dist(q) - r1).abs() < 1e-9;
            }
        }
    }
    let verified = disk::verify_orthogonal_set(&set, &table, 1e-9).is_ok();
    Ok(CriterionReport {
        id: 10,
        name: "disk orthogonal triple in R = 0.7".into(),
        pass: equilateral && verified,
        details: format!(
            "size {} with side r_1 = {r1:.6}; equilateral: {equilateral}; post-hoc orthogonality: {verified}",
            set.len()
        ),
    })
}

/// Criterion 11: distance gaps of orthogonal sets match `B - 4 eps`.
///
/// Runs the greedy growth experiment (reporting the O(R) check) and the gap
/// demo on every found or constructed set with at least two realized
/// distances beyond `r_5`.
pub fn criterion_11(budget: Budget) -> Result<CriterionReport> {
    let radii: &[f64] = match budget {
        Budget::Desk => &[5.0, 10.0, 20.0, 40.0],
        Budget::Quick => &[5.0, 10.0],
    };
    let mut table = disk::zero_table(200)?;
    let mut sizes = Vec::new();
    let mut sets: Vec<FrequencySet> = Vec::new();
    for &r in radii {
        let s = disk::orth_search(r, SearchStrategy::Greedy, &mut table, 1e-9)?;
        sizes.push((r, s.len()));
        sets.push(s);
    }
    let growth_ok = sizes.iter().all(|&(r, n)| n as f64 <= (2.0 * r).max(3.0));
    // isoceles triples with two large realized distances (r_n, r_n, r_{n+1})
    for n in [6usize, 8, 11] {
        let ra = table.radius(n);
        let rb = table.radius(n + 1);
        let apex_x = (2.0 * ra * ra - rb * rb) / (2.0 * ra);
        let apex_y = (ra * ra - apex_x * apex_x).sqrt();
        sets.push(FrequencySet::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(ra, 0.0),
            Point2::new(apex_x, apex_y),
        ])?);
    }
    let r5 = table.radius(5);
    let mut qualifying = 0u32;
    let mut failures = 0u32;
    let mut min_gap = f64::INFINITY;
    let mut threshold = 0.0f64;
    for set in &sets {
        let rep = disk::distance_gap_demo(set, &mut table, 1e-9, 0.01)?;
        let beyond = rep.realized.iter().filter(|&&d| d > r5).count();
        if beyond >= 2 {
            qualifying += 1;
            threshold = rep.threshold;
            if let Some(g) = rep.min_qualifying_gap {
                min_gap = min_gap.min(g);
            }
            if !rep.pass {
                failures += 1;
            }
        }
    }
    let size_list: Vec<String> = sizes.iter().map(|(r, n)| format!("N({r}) = {n}")).collect();
    Ok(CriterionReport {
        id: 11,
        name: "distance-gap demo beyond r_5".into(),
        pass: growth_ok && qualifying > 0 && failures == 0,
        details: format!(
            "growth {} (O(R) bound ok: {growth_ok}); {qualifying} qualifying sets, min gap {min_gap:.4} >= {threshold:.4}, {failures} failures",
            size_list.join(", ")
        ),
    })
}

/// Criterion 12: the three property suites.
pub fn criterion_12(budget: Budget) -> Result<CriterionReport> {
    let a = parseval_suite(budget)?;
    let b = clique_completeness_suite(budget)?;
    let c = tiling_criterion_suite(budget)?;
    let pass = a.1 == 0 && b.1 == 0 && c.1 == 0;
    Ok(CriterionReport {
        id: 12,
        name: "property suites (Parseval / cliques / tiling criterion)".into(),
        pass,
        details: format!(
            "Parseval {}/{} ok; clique completeness {}/{} ok; tiling criterion {}/{} ok",
            a.0 - a.1,
            a.0,
            b.0 - b.1,
            b.0,
            c.0 - c.1,
            c.0
        ),
    })
}

/// DFT Parseval (floating + exact backend) on random subsets, orders <= 64.
fn parseval_suite(budget: Budget) -> Result<(u64, u64)> {
    let trials = match budget {
        Budget::Desk => 500,
        Budget::Quick => 100,
    };
    let groups = abelian_groups_up_to(64);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut failures = 0u64;
    for _ in 0..trials {
        let g = &groups[rng.gen_range(0..groups.len())];
        let size = rng.gen_range(1..=g.order());
        let mut elements = Vec::new();
        while (elements.len() as u64) < size {
            let e = rng.gen_range(0..g.order());
            if !elements.contains(&e) {
                elements.push(e);
            }
        }
        let a = GroupSubset::from_elements(g, &elements)?;
        let table = dft(&a)?;
        let scale = (g.order() * a.size()) as f64;
        let float_ok = table.parseval_residual().abs() < 1e-9 * scale;
        let exact_ok = group::verify_parseval_exact(&a) == Some(true);
        let zeros_ok = group::verify_zero_set_exact(&a, &table) == Some(true);
        if !(float_ok && exact_ok && zeros_ok) {
            failures += 1;
        }
    }
    Ok((trials, failures))
}

/// Clique search agrees with naive enumeration on every group of order <= 16.
fn clique_completeness_suite(budget: Budget) -> Result<(u64, u64)> {
    let max_order = match budget {
        Budget::Desk => 16,
        Budget::Quick => 10,
    };
    let mut checked = 0u64;
    let mut failures = 0u64;
    for g in abelian_groups_up_to(max_order) {
        let n = g.order();
        for size in 1..=n {
            for a in canonical_subset_stream(&g, size, false)? {
                let fast = find_spectra(&a)?;
                let naive = naive_spectra(&a)?;
                checked += 1;
                if fast != naive {
                    failures += 1;
                }
            }
        }
    }
    Ok((checked, failures))
}

/// Reference enumeration: every |A|-subset of frequencies containing 0,
/// kept when all pairwise differences land in the zero set.
fn naive_spectra(a: &GroupSubset) -> Result<Vec<Vec<u64>>> {
    let g = a.group();
    let n = g.order();
    let k = a.size();
    let table = dft(a)?;
    let zero = table.zero_set();
    let mut out = Vec::new();
    let mut chosen: Vec<u64> = vec![0];
    fn rec(
        g: &FiniteAbelianGroup,
        zero: &crate::bitset::BitSet,
        chosen: &mut Vec<u64>,
        next: u64,
        k: u64,
        n: u64,
        out: &mut Vec<Vec<u64>>,
    ) {
        if chosen.len() as u64 == k {
            out.push(chosen.clone());
            return;
        }
        let need = k - chosen.len() as u64;
        for v in next..n {
            if n - v < need {
                break;
            }
            if chosen
                .iter()
                .all(|&u| zero.contains(g.sub(v, u) as usize))
            {
                chosen.push(v);
                rec(g, zero, chosen, v + 1, k, n, out);
                chosen.pop();
            }
        }
    }
    if k == 1 {
        return Ok(vec![vec![0]]);
    }
    rec(g, zero, &mut chosen, 1, k, n, &mut out);
    Ok(out)
}

/// DFT criterion vs pointwise verification, all groups of order <= 24.
///
/// For a deterministic sample of tiles per group: every complement found by
/// the backtracking search must satisfy the DFT criterion, and perturbed /
/// random candidates must agree between the two verdicts.
fn tiling_criterion_suite(budget: Budget) -> Result<(u64, u64)> {
    let max_order = match budget {
        Budget::Desk => 24,
        Budget::Quick => 12,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(1224);
    let mut checked = 0u64;
    let mut failures = 0u64;
    for g in abelian_groups_up_to(max_order) {
        let n = g.order();
        for size in 1..=n {
            if n % size != 0 {
                continue;
            }
            let mut tiles_tried = 0;
            for a in canonical_subset_stream(&g, size, false)? {
                if tiles_tried >= 4 {
                    break;
                }
                tiles_tried += 1;
                let f = tiling::WeightedTileFunction::indicator(&a)?;
                let one = tiling::Rational::from_integer(1);
                let mut candidates: Vec<GroupSubset> = find_tiling_complements(&a, 1)?;
                // perturb each found complement and add random candidates
                let t_size = n / size;
                let perturbed: Vec<GroupSubset> = candidates
                    .iter()
                    .filter_map(|t| {
                        let els = t.elements();
                        let out = g.order() - 1;
                        let swap = els.iter().position(|&e| e != 0 && e != out)?;
                        let mut els2 = els.clone();
                        els2[swap] = out;
                        els2.sort_unstable();
                        els2.dedup();
                        if els2.len() == els.len() {
                            GroupSubset::from_elements(&g, &els2).ok()
                        } else {
                            None
                        }
                    })
                    .collect();
                candidates.extend(perturbed);
                for _ in 0..25 {
                    let mut els = vec![0u64];
                    while (els.len() as u64) < t_size {
                        let e = rng.gen_range(0..n);
                        if !els.contains(&e) {
                            els.push(e);
                        }
                    }
                    candidates.push(GroupSubset::from_elements(&g, &els)?);
                }
                for t in &candidates {
                    let pointwise = verify_tiling(&f, t, one)?.is_tiling();
                    let criterion = dft_tiling_criterion(&a, t)?;
                    checked += 1;
                    if pointwise != criterion {
                        failures += 1;
                    }
                }
            }
        }
    }
    Ok((checked, failures))
}

/// Run every criterion in order.
pub fn run_all(budget: Budget) -> Result<Vec<CriterionReport>> {
    Ok(vec![
        criterion_1(budget)?,
        criterion_2(budget)?,
        criterion_3(budget)?,
        criterion_4(budget)?,
        criterion_5(budget)?,
        criterion_6(budget)?,
        criterion_7(budget)?,
        criterion_8(budget)?,
        criterion_9(budget)?,
        criterion_10(budget)?,
        criterion_11(budget)?,
        criterion_12(budget)?,
    ])
}
