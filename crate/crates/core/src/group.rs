//! Finite abelian groups `Z_{n1} x ... x Z_{nd}`, their subsets, and the
//! discrete Fourier transform with its zero set.
//!
//! Elements are addressed by a mixed-radix index with the first factor
//! varying fastest: `index = a_1 + n_1*(a_2 + n_2*(...))`. The dual group is
//! identified with the group itself; the character pairing reduces to a
//! single root of unity `exp(-2 pi i m / L)` with `L = lcm(n_j)` and an
//! integer exponent `m`, which is what makes the exact zero-test backend
//! possible.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::cyclotomic::root_sum_is_zero;
use crate::{Error, Result};

/// Largest group order for which the cyclotomic verification backend runs.
pub const EXACT_BACKEND_MAX_ORDER: u64 = 64;

/// A finite product of cyclic groups.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupDescriptor", into = "GroupDescriptor")]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
    order: u64,
    lcm: u64,
}

/// JSON wire form: `{"factors":[n1,...,nd]}`.
#[derive(Clone, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub factors: Vec<u32>,
}

impl TryFrom<GroupDescriptor> for FiniteAbelianGroup {
    type Error = Error;
    fn try_from(d: GroupDescriptor) -> Result<Self> {
        FiniteAbelianGroup::new(&d.factors)
    }
}

impl From<FiniteAbelianGroup> for GroupDescriptor {
    fn from(g: FiniteAbelianGroup) -> Self {
        GroupDescriptor {
            factors: g.factors,
        }
    }
}

impl std::fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z_{}", self.factors[0])?;
        for n in &self.factors[1..] {
            write!(f, " x Z_{n}")?;
        }
        Ok(())
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: &[u32]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("no factors given".into()));
        }
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("factor {bad} < 2")));
        }
        let mut order: u64 = 1;
        let mut lcm: u64 = 1;
        for &n in factors {
            order = order
                .checked_mul(n as u64)
                .ok_or_else(|| Error::InvalidGroup("order overflows u64".into()))?;
            lcm = num_integer::lcm(lcm, n as u64);
        }
        Ok(FiniteAbelianGroup {
            factors: factors.to_vec(),
            order,
            lcm,
        })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Common root-of-unity order: every character value is a power of
    /// `exp(-2 pi i / lcm)`.
    pub fn root_order(&self) -> u64 {
        self.lcm
    }

    pub fn is_cyclic_presentation(&self) -> bool {
        self.factors.len() == 1
    }

    /// Element index -> component tuple.
    pub fn decode(&self, mut index: u64) -> Vec<u32> {
        debug_assert!(index < self.order);
        let mut t = Vec::with_capacity(self.factors.len());
        for &n in &self.factors {
            t.push((index % n as u64) as u32);
            index /= n as u64;
        }
        t
    }

    /// Component tuple -> element index.
    pub fn encode(&self, tuple: &[u32]) -> u64 {
        debug_assert_eq!(tuple.len(), self.factors.len());
        let mut idx = 0u64;
        for (&a, &n) in tuple.iter().rev().zip(self.factors.iter().rev()) {
            debug_assert!(a < n);
            idx = idx * n as u64 + a as u64;
        }
        idx
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b, mut idx, mut stride) = (a, b, 0u64, 1u64);
        for &n in &self.factors {
            let n = n as u64;
            idx += ((a % n + b % n) % n) * stride;
            stride *= n;
            a /= n;
            b /= n;
        }
        idx
    }

    pub fn neg(&self, a: u64) -> u64 {
        let (mut a, mut idx, mut stride) = (a, 0u64, 1u64);
        for &n in &self.factors {
            let n = n as u64;
            let c = a % n;
            idx += (if c == 0 { 0 } else { n - c }) * stride;
            stride *= n;
            a /= n;
        }
        idx
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Integer exponent `m` of the character pairing:
    /// `chi_lambda(a) = exp(-2 pi i m / L)` with `m = sum_j lambda_j a_j L/n_j (mod L)`.
    pub fn character_exponent(&self, lambda: u64, a: u64) -> u64 {
        let (mut l, mut a) = (lambda, a);
        let big_l = self.lcm as u128;
        let mut m: u128 = 0;
        for &n in &self.factors {
            let n = n as u64;
            let lj = l % n;
            let aj = a % n;
            m += (lj as u128 * aj as u128 % n as u128) * (big_l / n as u128);
            l /= n;
            a /= n;
        }
        (m % big_l) as u64
    }

    /// Multiply every component by `u` (meaningful as an automorphism only
    /// for cyclic groups with `gcd(u, n) = 1`).
    pub fn scale(&self, a: u64, u: u64) -> u64 {
        let (mut a, mut idx, mut stride) = (a, 0u64, 1u64);
        for &n in &self.factors {
            let n = n as u64;
            idx += (a % n * (u % n)) % n * stride;
            stride *= n;
            a /= n;
        }
        idx
    }

    /// Units of a cyclic group (`d = 1`): all residues coprime to the order.
    pub fn units(&self) -> Vec<u64> {
        if !self.is_cyclic_presentation() {
            return vec![1];
        }
        let n = self.order;
        (1..n).filter(|&u| num_integer::gcd(u, n) == 1).collect()
    }

    /// Root-of-unity table `root[m] = exp(-2 pi i m / L)` with conjugate
    /// pairs mirrored bit-exactly, so that conjugate symmetry of DFT tables
    /// holds without tolerance.
    fn root_table(&self) -> Vec<Complex64> {
        let l = self.lcm as usize;
        let mut roots = vec![Complex64::new(1.0, 0.0); l];
        for m in 1..=l / 2 {
            let angle = -2.0 * std::f64::consts::PI * m as f64 / l as f64;
            let z = Complex64::new(angle.cos(), angle.sin());
            roots[m] = z;
            if m != l - m {
                roots[l - m] = z.conj();
            }
        }
        if l % 2 == 0 {
            roots[l / 2] = Complex64::new(-1.0, 0.0);
        }
        roots
    }
}

/// A subset of a finite abelian group, stored as a bit set of element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    group: FiniteAbelianGroup,
    members: BitSet,
}

/// JSON wire form: `{"group":{"factors":[...]},"elements":[i,...]}`.
#[derive(Clone, Serialize, Deserialize)]
pub struct SubsetDescriptor {
    pub group: GroupDescriptor,
    pub elements: Vec<u64>,
}

impl std::fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} ⊇ {:?}", self.group, self.members)
    }
}

impl GroupSubset {
    pub fn empty(group: &FiniteAbelianGroup) -> Self {
        GroupSubset {
            group: group.clone(),
            members: BitSet::new(group.order() as usize),
        }
    }

    pub fn full(group: &FiniteAbelianGroup) -> Self {
        let mut s = Self::empty(group);
        for i in 0..group.order() as usize {
            s.members.insert(i);
        }
        s
    }

    pub fn from_elements(group: &FiniteAbelianGroup, elements: &[u64]) -> Result<Self> {
        let mut s = Self::empty(group);
        for &e in elements {
            if e >= group.order() {
                return Err(Error::InvalidSubset(format!(
                    "element {e} outside group of order {}",
                    group.order()
                )));
            }
            s.members.insert(e as usize);
        }
        Ok(s)
    }

    pub fn from_descriptor(d: &SubsetDescriptor) -> Result<Self> {
        let group = FiniteAbelianGroup::new(&d.group.factors)?;
        Self::from_elements(&group, &d.elements)
    }

    pub fn descriptor(&self) -> SubsetDescriptor {
        SubsetDescriptor {
            group: GroupDescriptor {
                factors: self.group.factors().to_vec(),
            },
            elements: self.elements(),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn bits(&self) -> &BitSet {
        &self.members
    }

    pub fn size(&self) -> u64 {
        self.members.count() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: u64) -> bool {
        self.members.contains(e as usize)
    }

    pub fn insert(&mut self, e: u64) {
        self.members.insert(e as usize);
    }

    pub fn elements(&self) -> Vec<u64> {
        self.members.iter_ones().map(|i| i as u64).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter_ones().map(|i| i as u64)
    }

    /// The translate `A + t`.
    pub fn translate(&self, t: u64) -> GroupSubset {
        let mut out = Self::empty(&self.group);
        for a in self.iter() {
            out.members.insert(self.group.add(a, t) as usize);
        }
        out
    }

    /// The image `u * A` under component-wise scaling.
    pub fn scale(&self, u: u64) -> GroupSubset {
        let mut out = Self::empty(&self.group);
        for a in self.iter() {
            out.members.insert(self.group.scale(a, u) as usize);
        }
        out
    }

    /// The reflected set `-A`.
    pub fn negate(&self) -> GroupSubset {
        self.scale_by_neg()
    }

    fn scale_by_neg(&self) -> GroupSubset {
        let mut out = Self::empty(&self.group);
        for a in self.iter() {
            out.members.insert(self.group.neg(a) as usize);
        }
        out
    }
}

/// Lexicographically least translate of `A`; with `use_units` also the least
/// image under `a -> u*a + t` for cyclic groups (products fall back to
/// translation only).
pub fn canonical_form(a: &GroupSubset, use_units: bool) -> GroupSubset {
    let g = a.group();
    let units: Vec<u64> = if use_units && g.is_cyclic_presentation() {
        g.units()
    } else {
        vec![1]
    };
    let mut best: Option<GroupSubset> = None;
    for &u in &units {
        let scaled = if u == 1 { a.clone() } else { a.scale(u) };
        for t in 0..g.order() {
            let image = scaled.translate(t);
            match &best {
                None => best = Some(image),
                Some(b) => {
                    if image.bits().lex_cmp(b.bits()) == std::cmp::Ordering::Less {
                        best = Some(image);
                    }
                }
            }
        }
    }
    best.expect("nonempty orbit")
}

/// Whether `A` is its own canonical translate (cheaper than materializing
/// the canonical form; used to filter streams).
pub fn is_canonical(a: &GroupSubset, use_units: bool) -> bool {
    canonical_form(a, use_units) == *a
}

/// The DFT of a subset indicator over the whole dual group, with its zero set.
#[derive(Clone, Debug)]
pub struct DftTable {
    group: FiniteAbelianGroup,
    subset_size: u64,
    values: Vec<Complex64>,
    zero_set: BitSet,
    zero_tol_rel: f64,
}

impl DftTable {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn subset_size(&self) -> u64 {
        self.subset_size
    }

    pub fn value(&self, lambda: u64) -> Complex64 {
        self.values[lambda as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn zero_set(&self) -> &BitSet {
        &self.zero_set
    }

    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tol_rel * self.subset_size as f64
    }

    /// `sum_lambda |value|^2 - |G| |A|`, which Parseval says is zero.
    pub fn parseval_residual(&self) -> f64 {
        let sum: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        sum - (self.group.order() * self.subset_size) as f64
    }
}

/// DFT of the indicator of `A`: `1A^(lambda) = sum_{a in A} chi_lambda(a)`
/// with the negative-exponent character convention.
///
/// The zero set holds every frequency with `|value| < tol_rel * |A|`.
pub fn dft(a: &GroupSubset) -> Result<DftTable> {
    dft_with_tolerance(a, crate::config::DFT_ZERO_REL)
}

pub fn dft_with_tolerance(a: &GroupSubset, zero_tol_rel: f64) -> Result<DftTable> {
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    let g = a.group().clone();
    let order = g.order();
    let roots = g.root_table();
    let elements = a.elements();
    let mut values = Vec::with_capacity(order as usize);
    let mut zero_set = BitSet::new(order as usize);
    let threshold = zero_tol_rel * elements.len() as f64;
    for lambda in 0..order {
        let mut acc = Complex64::new(0.0, 0.0);
        for &e in &elements {
            acc += roots[g.character_exponent(lambda, e) as usize];
        }
        if acc.norm() < threshold {
            zero_set.insert(lambda as usize);
        }
        values.push(acc);
    }
    Ok(DftTable {
        group: g,
        subset_size: elements.len() as u64,
        values,
        zero_set,
        zero_tol_rel,
    })
}

/// Histogram of character exponents of `A` at frequency `lambda`, the input
/// to the exact cyclotomic backend.
fn exponent_counts(a: &GroupSubset, lambda: u64) -> Vec<i128> {
    let g = a.group();
    let mut counts = vec![0i128; g.root_order() as usize];
    for e in a.iter() {
        counts[g.character_exponent(lambda, e) as usize] += 1;
    }
    counts
}

/// Exact zero test of `1A^(lambda)` via cyclotomic-integer arithmetic.
/// Only available for groups of order <= [`EXACT_BACKEND_MAX_ORDER`].
pub fn dft_value_is_zero_exact(a: &GroupSubset, lambda: u64) -> Option<bool> {
    if a.group().order() > EXACT_BACKEND_MAX_ORDER {
        return None;
    }
    Some(root_sum_is_zero(&exponent_counts(a, lambda)))
}

/// Exact verification that the floating zero set is the true zero set:
/// every flagged zero really vanishes and no unflagged frequency does.
pub fn verify_zero_set_exact(a: &GroupSubset, table: &DftTable) -> Option<bool> {
    if a.group().order() > EXACT_BACKEND_MAX_ORDER {
        return None;
    }
    for lambda in 0..a.group().order() {
        let exact = root_sum_is_zero(&exponent_counts(a, lambda));
        if exact != table.zero_set().contains(lambda as usize) {
            return Some(false);
        }
    }
    Some(true)
}

/// Exact Parseval identity `sum_lambda |1A^(lambda)|^2 = |G| |A|` as a
/// cyclotomic-integer computation. Returns `None` above the backend bound.
pub fn verify_parseval_exact(a: &GroupSubset) -> Option<bool> {
    let g = a.group();
    if g.order() > EXACT_BACKEND_MAX_ORDER {
        return None;
    }
    let l = g.root_order() as usize;
    let mut total = vec![0i128; l];
    for lambda in 0..g.order() {
        let c = exponent_counts(a, lambda);
        // |value|^2 = value * conj(value): convolve counts with reversed counts.
        for (m1, &c1) in c.iter().enumerate() {
            if c1 == 0 {
                continue;
            }
            for (m2, &c2) in c.iter().enumerate() {
                if c2 == 0 {
                    continue;
                }
                total[(m1 + l - m2) % l] += c1 * c2;
            }
        }
    }
    total[0] -= (g.order() * a.size()) as i128;
    Some(root_sum_is_zero(&total))
}

/// Stream of all size-`size` subsets of `G` in lexicographic order.
pub fn subset_stream(
    group: &FiniteAbelianGroup,
    size: u64,
) -> Result<impl Iterator<Item = GroupSubset> + '_> {
    let order = group.order();
    if size < 1 || size > order {
        return Err(Error::SizeOutOfRange { size, order });
    }
    Ok(Combinations::new(order, size).map(move |idx| {
        let mut s = GroupSubset::empty(group);
        for &i in &idx {
            s.members.insert(i as usize);
        }
        s
    }))
}

/// Stream of canonical representatives only (one per translation orbit, or
/// per affine orbit when `use_units` is set and the group is cyclic).
pub fn canonical_subset_stream(
    group: &FiniteAbelianGroup,
    size: u64,
    use_units: bool,
) -> Result<impl Iterator<Item = GroupSubset> + '_> {
    Ok(subset_stream(group, size)?.filter(move |s| is_canonical(s, use_units)))
}

/// Lexicographic k-combinations of `0..n`.
struct Combinations {
    n: u64,
    k: u64,
    current: Vec<u64>,
    done: bool,
}

impl Combinations {
    fn new(n: u64, k: u64) -> Self {
        Combinations {
            n,
            k,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // advance
        let k = self.k as usize;
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] + 1 <= self.n - (self.k - i as u64) {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All subgroups of `G`, found by closing generator sets upward from the
/// trivial subgroup. Fine for the desk-scale orders this crate scans.
pub fn subgroups(group: &FiniteAbelianGroup) -> Vec<GroupSubset> {
    let order = group.order();
    let mut trivial = GroupSubset::empty(group);
    trivial.insert(0);
    let mut found: Vec<GroupSubset> = vec![trivial.clone()];
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        for g0 in 1..order {
            if h.contains(g0) {
                continue;
            }
            let ext = close_under_addition(&h, g0);
            if !found.contains(&ext) {
                found.push(ext.clone());
                queue.push(ext);
            }
        }
    }
    found.sort_by(|a, b| a.size().cmp(&b.size()).then(a.bits().lex_cmp(b.bits())));
    found
}

fn close_under_addition(h: &GroupSubset, extra: u64) -> GroupSubset {
    let g = h.group();
    let mut out = h.clone();
    out.insert(extra);
    let mut frontier = vec![extra];
    while let Some(x) = frontier.pop() {
        let members = out.elements();
        for m in members {
            let s = g.add(x, m);
            if !out.contains(s) {
                out.insert(s);
                frontier.push(s);
            }
        }
    }
    out
}

/// The annihilator `H^perp = { lambda : chi_lambda(h) = 1 for all h in H }`,
/// computed exactly from integer character exponents.
pub fn annihilator(h: &GroupSubset) -> GroupSubset {
    let g = h.group();
    let mut out = GroupSubset::empty(g);
    let members = h.elements();
    'freq: for lambda in 0..g.order() {
        for &m in &members {
            if g.character_exponent(lambda, m) != 0 {
                continue 'freq;
            }
        }
        out.insert(lambda);
    }
    out
}

/// Lexicographically least transversal of the cosets of `H`: the smallest
/// element of each coset. Tiles `G` with complement `H` at level 1.
pub fn coset_transversal(h: &GroupSubset) -> GroupSubset {
    let g = h.group();
    let mut seen = BitSet::new(g.order() as usize);
    let mut out = GroupSubset::empty(g);
    for x in 0..g.order() {
        if !seen.contains(x as usize) {
            out.insert(x);
            for m in h.iter() {
                seen.insert(g.add(x, m) as usize);
            }
        }
    }
    out
}

/// All isomorphism types of abelian groups of order `2..=max_order`, in
/// primary decomposition (factors are prime powers).
pub fn abelian_groups_up_to(max_order: u64) -> Vec<FiniteAbelianGroup> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        for factors in abelian_factorizations(n) {
            out.push(FiniteAbelianGroup::new(&factors).expect("valid factors"));
        }
    }
    out
}

fn abelian_factorizations(n: u64) -> Vec<Vec<u32>> {
    // primary decomposition: one partition choice per prime exponent
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut result: Vec<Vec<u32>> = vec![Vec::new()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for part in partitions(e) {
            for base in &result {
                let mut f = base.clone();
                for &a in &part {
                    f.push((p as u32).pow(a));
                }
                next.push(f);
            }
        }
        result = next;
    }
    result
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn subset(g: &FiniteAbelianGroup, els: &[u64]) -> GroupSubset {
        GroupSubset::from_elements(g, els).unwrap()
    }

    #[test]
    fn mixed_radix_roundtrip() {
        let g = FiniteAbelianGroup::new(&[3, 4, 2]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.root_order(), 12);
        for i in 0..24 {
            assert_eq!(g.encode(&g.decode(i)), i);
        }
        // first factor fastest-varying: index 1 is (1,0,0), index 3 is (0,1,0)
        assert_eq!(g.decode(1), vec![1, 0, 0]);
        assert_eq!(g.decode(3), vec![0, 1, 0]);
    }

    #[test]
    fn arithmetic() {
        let g = FiniteAbelianGroup::new(&[4, 3]).unwrap();
        let a = g.encode(&[3, 2]);
        let b = g.encode(&[2, 2]);
        assert_eq!(g.decode(g.add(a, b)), vec![1, 1]);
        assert_eq!(g.add(a, g.neg(a)), 0);
        assert_eq!(g.sub(b, b), 0);
    }

    #[test]
    fn invalid_groups_rejected() {
        assert!(FiniteAbelianGroup::new(&[]).is_err());
        assert!(FiniteAbelianGroup::new(&[1]).is_err());
        assert!(FiniteAbelianGroup::new(&[4, 0]).is_err());
    }

    #[test]
    fn dft_z4_01_zero_at_two() {
        // 1A^(2) = 1 + exp(-pi i) = 0; the only zero.
        let g = z(4);
        let a = subset(&g, &[0, 1]);
        let t = dft(&a).unwrap();
        assert_eq!(t.value(0).re, 2.0);
        assert!(t.value(2).norm() < 1e-12);
        assert_eq!(t.zero_set().to_vec(), vec![2]);
        assert_eq!(verify_zero_set_exact(&a, &t), Some(true));
    }

    #[test]
    fn dft_z5_012_no_zeros() {
        let g = z(5);
        let a = subset(&g, &[0, 1, 2]);
        let t = dft(&a).unwrap();
        assert!(t.zero_set().is_empty());
        // direct-summation oracle at every frequency
        for lambda in 0..5u64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for &e in &[0u64, 1, 2] {
                let ang = -2.0 * std::f64::consts::PI * (lambda * e % 5) as f64 / 5.0;
                acc += Complex64::new(ang.cos(), ang.sin());
            }
            assert!((acc - t.value(lambda)).norm() < 1e-12);
        }
        assert_eq!(verify_zero_set_exact(&a, &t), Some(true));
    }

    #[test]
    fn dft_empty_rejected() {
        let g = z(4);
        let a = GroupSubset::empty(&g);
        let err = dft(&a).unwrap_err();
        assert_eq!(err.to_string(), "empty set has no spectral theory here");
    }

    #[test]
    fn dft_value_at_zero_is_size() {
        let g = FiniteAbelianGroup::new(&[6, 2]).unwrap();
        let a = subset(&g, &[0, 2, 5, 7, 11]);
        let t = dft(&a).unwrap();
        assert_eq!(t.value(0), Complex64::new(5.0, 0.0));
    }

    #[test]
    fn conjugate_symmetry_is_bit_exact() {
        let g = FiniteAbelianGroup::new(&[5, 3]).unwrap();
        let a = subset(&g, &[0, 1, 4, 7, 9]);
        let t = dft(&a).unwrap();
        for lambda in 0..g.order() {
            let m = g.neg(lambda);
            assert_eq!(t.value(m), t.value(lambda).conj());
        }
    }

    #[test]
    fn parseval_floating_and_exact() {
        let g = FiniteAbelianGroup::new(&[4, 4]).unwrap();
        let a = subset(&g, &[0, 1, 5, 9, 12]);
        let t = dft(&a).unwrap();
        let scale = (g.order() * a.size()) as f64;
        assert!(t.parseval_residual().abs() < 1e-9 * scale);
        assert_eq!(verify_parseval_exact(&a), Some(true));
    }

    #[test]
    fn zero_set_translation_invariant() {
        let g = z(12);
        let a = subset(&g, &[0, 1, 5, 6]);
        let t0 = dft(&a).unwrap();
        for t in 1..12 {
            let shifted = a.translate(t);
            let tt = dft(&shifted).unwrap();
            assert_eq!(t0.zero_set().to_vec(), tt.zero_set().to_vec());
        }
    }

    #[test]
    fn canonical_translation_only() {
        let g = z(4);
        assert_eq!(
            canonical_form(&subset(&g, &[1, 2]), false).elements(),
            vec![0, 1]
        );
        assert_eq!(
            canonical_form(&subset(&g, &[0, 1]), false).elements(),
            vec![0, 1]
        );
    }

    #[test]
    fn canonical_with_units_is_orbit_minimum() {
        // {0,2,4} in Z5 maps to {0,1,2} under a -> 3a; the full affine orbit
        // (20 images) is enumerated here as the oracle.
        let g = z(5);
        let a = subset(&g, &[0, 2, 4]);
        let mut orbit_min: Option<GroupSubset> = None;
        for u in g.units() {
            for t in 0..5 {
                let img = a.scale(u).translate(t);
                orbit_min = Some(match orbit_min {
                    None => img,
                    Some(b) => {
                        if img.bits().lex_cmp(b.bits()) == std::cmp::Ordering::Less {
                            img
                        } else {
                            b
                        }
                    }
                });
            }
        }
        let canon = canonical_form(&a, true);
        assert_eq!(canon, orbit_min.unwrap());
        assert_eq!(canon.elements(), vec![0, 1, 2]);
    }

    #[test]
    fn canonical_idempotent() {
        let g = z(12);
        let a = subset(&g, &[2, 3, 7, 10]);
        for units in [false, true] {
            let c = canonical_form(&a, units);
            assert_eq!(canonical_form(&c, units), c);
        }
    }

    #[test]
    fn subset_stream_counts() {
        let g = z(3);
        let all: Vec<_> = subset_stream(&g, 1).unwrap().collect();
        assert_eq!(all.len(), 3);
        assert_eq!(all[0].elements(), vec![0]);
        assert_eq!(all[2].elements(), vec![2]);

        let g4 = z(4);
        assert_eq!(subset_stream(&g4, 2).unwrap().count(), 6);
        assert!(subset_stream(&g4, 0).is_err());
        assert!(subset_stream(&g4, 5).is_err());
    }

    #[test]
    fn canonical_stream_matches_orbit_count() {
        // Z12 size 6: strictly fewer than C(12,6) = 924 representatives;
        // cross-check against counting orbits directly.
        let g = z(12);
        let canon: Vec<_> = canonical_subset_stream(&g, 6, false).unwrap().collect();
        assert!(canon.len() < 924);
        let mut orbit_reps = std::collections::HashSet::new();
        for s in subset_stream(&g, 6).unwrap() {
            orbit_reps.insert(canonical_form(&s, false).elements());
        }
        assert_eq!(canon.len(), orbit_reps.len());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(4, 5), 0);
    }

    #[test]
    fn subgroups_of_z12() {
        // divisors of 12: subgroups of sizes 1,2,3,4,6,12
        let g = z(12);
        let subs = subgroups(&g);
        let mut sizes: Vec<u64> = subs.iter().map(|h| h.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn subgroups_of_klein_group() {
        // Z2 x Z2 has 5 subgroups: 1, three of order 2, itself.
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        assert_eq!(subgroups(&g).len(), 5);
    }

    #[test]
    fn annihilator_and_transversal() {
        let g = z(6);
        let h = subset(&g, &[0, 3]); // subgroup of order 2
        let ann = annihilator(&h);
        // chi_lambda(3) = exp(-2 pi i 3 lambda / 6) = 1 iff lambda even
        assert_eq!(ann.elements(), vec![0, 2, 4]);
        let tr = coset_transversal(&h);
        assert_eq!(tr.elements(), vec![0, 1, 2]);
    }

    #[test]
    fn abelian_group_enumeration() {
        let all = abelian_groups_up_to(16);
        // orders 2..16: 1+1+2+1+1+1+3+2+1+1+2+1+1+1+5 = 24
        assert_eq!(all.len(), 24);
        let of_16: Vec<_> = all.iter().filter(|g| g.order() == 16).collect();
        assert_eq!(of_16.len(), 5);
    }
}
