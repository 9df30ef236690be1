//! Construction of the switched-inverse permutations.
//!
//! The base sets are defined by the two trace conditions on x and 1/(x+1)
//! (with inv(0) := 0 inside trace arguments throughout):
//!
//! * W   = { x : Tr(x) = Tr(1/(x+1)) = 0 }
//! * V_M = { x : Tr(x) = Tr(1/(x+1)) = 1 }
//!
//! A valid V is any union of pairs {x, x/(x+1)} inside V_M. With U = V u W,
//! the switched function G(x) = x^-1 + delta_U(x) is a differentially
//! 4-uniform permutation.

use std::sync::Arc;

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::vfunc::VFunc;

fn require_even(field: &FieldSpec) -> Result<()> {
    if field.degree() % 2 != 0 {
        return Err(Error::OddDegree(field.degree()));
    }
    Ok(())
}

/// delta_W(x) as a bit: both traces zero.
#[inline]
fn in_w(field: &FieldSpec, x: u32) -> bool {
    field.trace_raw(x) == 0 && field.trace_raw(field.inv_raw(x ^ 1)) == 0
}

/// delta_{V_M}(x) as a bit: both traces one.
#[inline]
fn in_vm(field: &FieldSpec, x: u32) -> bool {
    field.trace_raw(x) == 1 && field.trace_raw(field.inv_raw(x ^ 1)) == 1
}

/// The pair partner x/(x+1); only meaningful for x outside {0, 1}.
#[inline]
fn partner_raw(field: &FieldSpec, x: u32) -> u32 {
    field.mul_raw(x, field.inv_raw(x ^ 1))
}

/// The involution phi(x) = 1/(x^-1 + 1). Equals x/(x+1) for x outside {0, 1}
/// and swaps 0 <-> 1.
pub fn phi_involution(field: &FieldSpec, x: FieldElement) -> Result<FieldElement> {
    if x.degree() != field.degree() {
        return Err(Error::FieldMismatch {
            expected: field.degree(),
            got: x.degree(),
        });
    }
    field.element(field.inv_raw(field.inv_raw(x.bits()) ^ 1))
}

/// W = { x : Tr(x) = Tr(1/(x+1)) = 0 }, by exhaustive scan.
pub fn compute_w(field: &Arc<FieldSpec>) -> Result<Vec<FieldElement>> {
    require_even(field)?;
    Ok((0..field.size() as u32)
        .filter(|&x| in_w(field, x))
        .map(|x| field.element(x).unwrap())
        .collect())
}

/// A list of pairs {x, x/(x+1)}, canonical representative (smaller table
/// index) first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairList {
    field: Arc<FieldSpec>,
    pairs: Vec<(u32, u32)>,
}

impl PairList {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// Pairs as field elements, canonical representative first.
    pub fn pairs(&self) -> impl Iterator<Item = (FieldElement, FieldElement)> + '_ {
        self.pairs
            .iter()
            .map(|&(a, b)| (self.field.element(a).unwrap(), self.field.element(b).unwrap()))
    }

    /// Pairs as xi-exponents, sorted ascending within each pair and across
    /// the listing.
    pub fn exponent_pairs(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (ea, eb) = (self.field.log_raw(a), self.field.log_raw(b));
                (ea.min(eb), ea.max(eb))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// All member elements, flattened.
    pub fn elements(&self) -> Vec<FieldElement> {
        let mut out: Vec<FieldElement> = self
            .pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .map(|x| self.field.element(x).unwrap())
            .collect();
        out.sort();
        out
    }
}

/// V_M = { x : Tr(x) = Tr(1/(x+1)) = 1 }, grouped into pairs {x, x/(x+1)}.
pub fn compute_vm(field: &Arc<FieldSpec>) -> Result<PairList> {
    require_even(field)?;
    let mut pairs = Vec::new();
    for x in 0..field.size() as u32 {
        if !in_vm(field, x) {
            continue;
        }
        let p = partner_raw(field, x);
        debug_assert!(in_vm(field, p), "V_M must be closed under the pairing");
        if x < p {
            pairs.push((x, p));
        }
    }
    Ok(PairList {
        field: field.clone(),
        pairs,
    })
}

/// Partition of V_M by Tr(1/x): V_0 has trace 0, V_1 has trace 1.
pub fn split_v0_v1(field: &Arc<FieldSpec>) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    require_even(field)?;
    let mut v0 = Vec::new();
    let mut v1 = Vec::new();
    for x in 0..field.size() as u32 {
        if !in_vm(field, x) {
            continue;
        }
        let e = field.element(x).unwrap();
        if field.trace_raw(field.inv_raw(x)) == 0 {
            v0.push(e);
        } else {
            v1.push(e);
        }
    }
    Ok((v0, v1))
}

/// A validated choice of V together with the indicator of U = V u W.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSpec {
    field: Arc<FieldSpec>,
    v_pairs: Vec<(u32, u32)>,
    u_bits: Vec<u64>,
}

impl SubsetSpec {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    /// Chosen pairs, canonical representative first, sorted.
    pub fn v_pairs(&self) -> &[(u32, u32)] {
        &self.v_pairs
    }

    pub fn v_pair_count(&self) -> usize {
        self.v_pairs.len()
    }

    /// Number of elements of V = twice the pair count.
    pub fn v_len(&self) -> usize {
        self.v_pairs.len() * 2
    }

    /// V as a pair list.
    pub fn v_pair_list(&self) -> PairList {
        PairList {
            field: self.field.clone(),
            pairs: self.v_pairs.clone(),
        }
    }

    /// Membership in U = V u W.
    #[inline]
    pub fn u_contains(&self, x: FieldElement) -> bool {
        self.u_contains_raw(x.bits())
    }

    #[inline]
    pub(crate) fn u_contains_raw(&self, x: u32) -> bool {
        self.u_bits[x as usize / 64] >> (x % 64) & 1 == 1
    }

    /// delta_U(x) as a coordinate value.
    #[inline]
    pub(crate) fn delta_u_raw(&self, x: u32) -> u32 {
        (self.u_bits[x as usize / 64] >> (x % 64) & 1) as u32
    }

    /// Membership in V alone (U restricted to the V_M side).
    pub fn v_contains(&self, x: FieldElement) -> bool {
        self.v_contains_raw(x.bits())
    }

    #[inline]
    pub(crate) fn v_contains_raw(&self, x: u32) -> bool {
        self.u_contains_raw(x) && in_vm(&self.field, x)
    }

    pub fn u_len(&self) -> usize {
        self.u_bits.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn subset_from_pairs(field: &Arc<FieldSpec>, mut v_pairs: Vec<(u32, u32)>) -> SubsetSpec {
    v_pairs.sort_unstable();
    v_pairs.dedup();
    let mut u_bits = vec![0u64; field.size().div_ceil(64)];
    for x in 0..field.size() as u32 {
        if in_w(field, x) {
            u_bits[x as usize / 64] |= 1 << (x % 64);
        }
    }
    for &(a, b) in &v_pairs {
        u_bits[a as usize / 64] |= 1 << (a % 64);
        u_bits[b as usize / 64] |= 1 << (b % 64);
    }
    SubsetSpec {
        field: field.clone(),
        v_pairs,
        u_bits,
    }
}

/// Validates a chosen V: every element must satisfy Tr(x) = Tr(1/(x+1)) = 1
/// and the set must be closed under x -> x/(x+1). Nothing is auto-completed;
/// a half pair is an error naming the missing partner.
pub fn validate_v(field: &Arc<FieldSpec>, elements: &[FieldElement]) -> Result<SubsetSpec> {
    require_even(field)?;
    let mut members = std::collections::BTreeSet::new();
    for &e in elements {
        if e.degree() != field.degree() {
            return Err(Error::FieldMismatch {
                expected: field.degree(),
                got: e.degree(),
            });
        }
        members.insert(e.bits());
    }
    for &x in &members {
        if !in_vm(field, x) {
            return Err(Error::TraceCondition { element: x });
        }
    }
    let mut v_pairs = Vec::new();
    for &x in &members {
        let p = partner_raw(field, x);
        if !members.contains(&p) {
            return Err(Error::UnpairedElement {
                element: x,
                partner: p,
            });
        }
        if x < p {
            v_pairs.push((x, p));
        }
    }
    Ok(subset_from_pairs(field, v_pairs))
}

/// The empty choice V = {} (so U = W).
pub fn empty_v(field: &Arc<FieldSpec>) -> Result<SubsetSpec> {
    require_even(field)?;
    Ok(subset_from_pairs(field, Vec::new()))
}

/// Uniformly selects `pair_count` distinct pairs out of V_M with a seeded
/// deterministic generator; the same seed always yields the same V.
pub fn random_v(field: &Arc<FieldSpec>, pair_count: usize, seed: u64) -> Result<SubsetSpec> {
    let vm = compute_vm(field)?;
    if pair_count > vm.len() {
        return Err(Error::PairCountTooLarge {
            requested: pair_count,
            available: vm.len(),
        });
    }
    let mut idx: Vec<usize> = (0..vm.len()).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for i in 0..pair_count {
        let j = i + (rng.next_u64() % (idx.len() - i) as u64) as usize;
        idx.swap(i, j);
    }
    let chosen = idx[..pair_count].iter().map(|&i| vm.pairs[i]).collect();
    Ok(subset_from_pairs(field, chosen))
}

/// G(x) = x^-1 + delta_U(x). The permutation property is guaranteed by the
/// phi-closure of U but is always re-checked.
pub fn build_g(spec: &SubsetSpec) -> Result<VFunc> {
    let field = spec.field();
    let table: Vec<u32> = (0..field.size() as u32)
        .map(|x| field.inv_raw(x) ^ spec.delta_u_raw(x))
        .collect();
    let g = VFunc::from_raw_unchecked(field.clone(), table);
    if !g.is_permutation() {
        return Err(Error::PermutationCheckFailed);
    }
    Ok(g)
}

/// The named members of the family.
///
/// G1, G2, G3 and GM are the switched functions for V = V_0, V_1, {} and V_M;
/// F1, F2, F3 are the three reference permutations obtained by inverting x
/// shifted by products of the traces of 1/x and 1/(x+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedFunction {
    G1,
    G2,
    G3,
    GM,
    F1,
    F2,
    F3,
}

impl NamedFunction {
    pub const ALL: [NamedFunction; 7] = [
        NamedFunction::G1,
        NamedFunction::G2,
        NamedFunction::G3,
        NamedFunction::GM,
        NamedFunction::F1,
        NamedFunction::F2,
        NamedFunction::F3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedFunction::G1 => "G1",
            NamedFunction::G2 => "G2",
            NamedFunction::G3 => "G3",
            NamedFunction::GM => "GM",
            NamedFunction::F1 => "F1",
            NamedFunction::F2 => "F2",
            NamedFunction::F3 => "F3",
        }
    }

    /// Proven nonlinearity lower bound at degree n, as a (possibly negative)
    /// integer.
    pub fn nl_lower_bound(self, n: u32) -> i64 {
        let half = 1i64 << (n - 1);
        let root = 1i64 << (n / 2);
        match self {
            NamedFunction::G1 | NamedFunction::G2 => half - 5 * root - 4,
            NamedFunction::G3 | NamedFunction::F1 => half - 3 * root - 2,
            NamedFunction::GM => half - 2 * root - 2,
            NamedFunction::F2 | NamedFunction::F3 => half - 4 * root - 2,
        }
    }

    /// The bound column formula, for table rendering.
    pub fn bound_formula(self) -> &'static str {
        match self {
            NamedFunction::G1 | NamedFunction::G2 => "2^(n-1) - 5*2^(n/2) - 4",
            NamedFunction::G3 | NamedFunction::F1 => "2^(n-1) - 3*2^(n/2) - 2",
            NamedFunction::GM => "2^(n-1) - 2^(n/2+1) - 2",
            NamedFunction::F2 | NamedFunction::F3 => "2^(n-1) - 2^(n/2+2) - 2",
        }
    }
}

impl std::str::FromStr for NamedFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "G1" => Ok(NamedFunction::G1),
            "G2" => Ok(NamedFunction::G2),
            "G3" => Ok(NamedFunction::G3),
            "GM" => Ok(NamedFunction::GM),
            "F1" => Ok(NamedFunction::F1),
            "F2" => Ok(NamedFunction::F2),
            "F3" => Ok(NamedFunction::F3),
            _ => Err(Error::UnknownFunction(s.to_string())),
        }
    }
}

impl std::fmt::Display for NamedFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn require_construction_degree(field: &FieldSpec) -> Result<()> {
    let n = field.degree();
    if n % 2 != 0 || n < 6 {
        return Err(Error::ConstructionDegree(n));
    }
    Ok(())
}

/// Closed-form table for a named function, straight from its formula.
fn closed_form_table(field: &FieldSpec, name: NamedFunction) -> Vec<u32> {
    let size = field.size() as u32;
    (0..size)
        .map(|x| {
            let tx = u32::from(field.trace_raw(x));
            let t_inv_x = u32::from(field.trace_raw(field.inv_raw(x)));
            let t_inv_x1 = u32::from(field.trace_raw(field.inv_raw(x ^ 1)));
            match name {
                // G(x) = x^-1 + 1 + Tr(x + 1/(x+1)) + <pair-selection term>
                NamedFunction::G1 => {
                    field.inv_raw(x) ^ 1 ^ (tx ^ t_inv_x1) ^ (tx & t_inv_x & t_inv_x1)
                }
                NamedFunction::G2 => {
                    field.inv_raw(x) ^ 1 ^ (tx ^ t_inv_x1) ^ (tx & (t_inv_x ^ 1) & t_inv_x1)
                }
                NamedFunction::G3 => field.inv_raw(x) ^ 1 ^ (tx ^ t_inv_x1) ^ (tx & t_inv_x1),
                NamedFunction::GM => field.inv_raw(x) ^ (tx ^ t_inv_x1) ^ 1,
                // F(x) = (x + <trace product>)^-1
                NamedFunction::F1 => field.inv_raw(x ^ (t_inv_x & t_inv_x1)),
                NamedFunction::F2 => field.inv_raw(x ^ ((tx ^ 1) & t_inv_x & t_inv_x1)),
                NamedFunction::F3 => field.inv_raw(x ^ (tx & t_inv_x & t_inv_x1)),
            }
        })
        .collect()
}

/// Builds a named function. For G1/G2/G3/GM the set-based route (build_g over
/// the corresponding V) and the closed form must agree tablewise; both are
/// computed and compared.
pub fn build_named(field: &Arc<FieldSpec>, name: NamedFunction) -> Result<VFunc> {
    require_construction_degree(field)?;
    let closed = closed_form_table(field, name);
    let func = match name {
        NamedFunction::G1 | NamedFunction::G2 => {
            let (v0, v1) = split_v0_v1(field)?;
            let v = if name == NamedFunction::G1 { v0 } else { v1 };
            build_g(&validate_v(field, &v)?)?
        }
        NamedFunction::G3 => build_g(&empty_v(field)?)?,
        NamedFunction::GM => {
            let vm = compute_vm(field)?;
            build_g(&validate_v(field, &vm.elements())?)?
        }
        NamedFunction::F1 | NamedFunction::F2 | NamedFunction::F3 => {
            let f = VFunc::from_raw_unchecked(field.clone(), closed.clone());
            if !f.is_permutation() {
                return Err(Error::PermutationCheckFailed);
            }
            f
        }
    };
    if func.table() != closed.as_slice() {
        return Err(Error::Internal(
            "set-based and closed-form constructions disagree",
        ));
    }
    Ok(func)
}

/// Renders a SubsetSpec in the V-file format shared by the CLI and fixtures:
/// a `field n=<n>` header, then one `pair <exp1> <exp2>` line per pair
/// (xi-exponents sorted ascending).
pub fn to_v_file(spec: &SubsetSpec) -> String {
    let mut out = format!("field n={}\n", spec.field().degree());
    for (e1, e2) in spec.v_pair_list().exponent_pairs() {
        out.push_str(&format!("pair {e1} {e2}\n"));
    }
    out
}

/// Parses and validates a V-file against a concrete field. Each `pair` line
/// must name a genuine pair {x, x/(x+1)}; `pairhex` lines give coordinate
/// bits instead of exponents. Lines starting with `#` are comments.
pub fn parse_v_file(field: &Arc<FieldSpec>, text: &str) -> Result<SubsetSpec> {
    require_even(field)?;
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty V-file".into()))?;
    let n: u32 = header
        .strip_prefix("field n=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad V-file header `{header}`")))?;
    if n != field.degree() {
        return Err(Error::FieldMismatch {
            expected: field.degree(),
            got: n,
        });
    }
    let mut elements = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let kind = parts.next().unwrap_or_default();
        let items: Vec<&str> = parts.collect();
        if items.len() != 2 {
            return Err(Error::Parse(format!("expected two values in `{line}`")));
        }
        let (a, b) = match kind {
            "pair" => {
                let parse_exp = |s: &str| -> Result<u32> {
                    let e: u32 = s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent `{s}`")))?;
                    if e >= field.order() {
                        return Err(Error::Parse(format!(
                            "exponent {e} out of range [0, {})",
                            field.order()
                        )));
                    }
                    Ok(field.exp_raw(e))
                };
                (parse_exp(items[0])?, parse_exp(items[1])?)
            }
            "pairhex" => {
                let parse_el = |s: &str| -> Result<u32> {
                    let bits = crate::field::parse_hex(s)?;
                    field.element(bits).map(|e| e.bits())
                };
                (parse_el(items[0])?, parse_el(items[1])?)
            }
            other => {
                return Err(Error::Parse(format!(
                    "unknown V-file line kind `{other}` (expected pair or pairhex)"
                )))
            }
        };
        if partner_raw(field, a) != b {
            return Err(Error::UnpairedElement {
                element: a,
                partner: partner_raw(field, a),
            });
        }
        elements.push(field.element(a)?);
        elements.push(field.element(b)?);
    }
    validate_v(field, &elements)
}

/// Resolves a list of xi-exponents to field elements (Table-2 style input).
pub fn elements_from_exponents(field: &Arc<FieldSpec>, exps: &[u32]) -> Result<Vec<FieldElement>> {
    exps.iter()
        .map(|&e| {
            if e >= field.order() {
                return Err(Error::Parse(format!(
                    "exponent {e} out of range [0, {})",
                    field.order()
                )));
            }
            field.element(field.exp_raw(e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f6() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::builtin(6).unwrap())
    }

    #[test]
    fn w_contains_zero_and_one() {
        let f = f6();
        let w = compute_w(&f).unwrap();
        assert!(w.contains(&f.zero()));
        assert!(w.contains(&f.one()));
        assert_eq!(w.len(), 14);
    }

    #[test]
    fn vm_pair_structure_at_n6() {
        let f = f6();
        let vm = compute_vm(&f).unwrap();
        assert_eq!(vm.len(), 7);
        let mut exps = vm.exponent_pairs();
        exps.sort_unstable();
        assert_eq!(
            exps,
            vec![(3, 53), (6, 43), (12, 23), (21, 42), (24, 46), (29, 48), (33, 58)]
        );
        let w = compute_w(&f).unwrap();
        assert_eq!(vm.len() * 2, w.len());
    }

    #[test]
    fn vm_size_bounds_hold() {
        for n in [6u32, 8, 10, 12, 14] {
            let f = Arc::new(FieldSpec::builtin(n).unwrap());
            let vm = compute_vm(&f).unwrap();
            let w = compute_w(&f).unwrap();
            let size = vm.len() * 2;
            assert_eq!(size, w.len());
            let lo = (1usize << (n - 2)) - (1 << (n / 2 - 1));
            let hi = (1usize << (n - 2)) + (1 << (n / 2 - 1));
            assert!(lo <= size && size <= hi);
        }
    }

    #[test]
    fn w_and_vm_partition_the_equal_trace_set() {
        for n in [6u32, 8, 10, 12] {
            let f = Arc::new(FieldSpec::builtin(n).unwrap());
            let w: std::collections::BTreeSet<u32> =
                compute_w(&f).unwrap().iter().map(|e| e.bits()).collect();
            let vm: std::collections::BTreeSet<u32> = compute_vm(&f)
                .unwrap()
                .elements()
                .iter()
                .map(|e| e.bits())
                .collect();
            assert!(w.is_disjoint(&vm));
            for x in 0..f.size() as u32 {
                let equal_traces = f.trace_raw(x) == f.trace_raw(f.inv_raw(x ^ 1));
                assert_eq!(equal_traces, w.contains(&x) || vm.contains(&x));
            }
        }
    }

    #[test]
    fn v0_v1_partition_and_pair_closure() {
        for n in [6u32, 8] {
            let f = Arc::new(FieldSpec::builtin(n).unwrap());
            let (v0, v1) = split_v0_v1(&f).unwrap();
            let vm = compute_vm(&f).unwrap();
            assert_eq!(v0.len() + v1.len(), vm.len() * 2);
            let s0: std::collections::BTreeSet<u32> = v0.iter().map(|e| e.bits()).collect();
            let s1: std::collections::BTreeSet<u32> = v1.iter().map(|e| e.bits()).collect();
            assert!(s0.is_disjoint(&s1));
            for set in [&s0, &s1] {
                for &x in set.iter() {
                    assert!(set.contains(&partner_raw(&f, x)));
                }
            }
            // Each half validates as a V-set.
            validate_v(&f, &v0).unwrap();
            validate_v(&f, &v1).unwrap();
        }
    }

    #[test]
    fn v0_v1_split_at_n6() {
        let f = f6();
        let (v0, v1) = split_v0_v1(&f).unwrap();
        let exps = |v: &[FieldElement]| {
            let mut e: Vec<u32> = v.iter().map(|x| f.discrete_log(*x).unwrap()).collect();
            e.sort_unstable();
            e
        };
        assert_eq!(exps(&v0), vec![3, 6, 12, 23, 24, 29, 33, 43, 46, 48, 53, 58]);
        assert_eq!(exps(&v1), vec![21, 42]);
    }

    #[test]
    fn validate_accepts_table2_sets_and_rejects_half_pairs() {
        let f = f6();
        assert_eq!(validate_v(&f, &[]).unwrap().v_len(), 0);
        let v = elements_from_exponents(&f, &[21, 42]).unwrap();
        assert_eq!(validate_v(&f, &v).unwrap().v_pair_count(), 1);

        let half = elements_from_exponents(&f, &[3]).unwrap();
        let err = validate_v(&f, &half).unwrap_err();
        let xi3 = f.exp_raw(3);
        let xi53 = f.exp_raw(53);
        assert_eq!(err, Error::UnpairedElement { element: xi3, partner: xi53 });

        // An element of W fails the trace conditions.
        let bad = vec![f.zero()];
        assert_eq!(validate_v(&f, &bad).unwrap_err(), Error::TraceCondition { element: 0 });
    }

    #[test]
    fn all_128_subsets_validate_at_n6() {
        // The number of valid V with p pairs is C(7, p); 2^7 = 128 in total.
        let f = f6();
        let vm = compute_vm(&f).unwrap();
        let mut per_count = [0usize; 8];
        for mask in 0u32..128 {
            let mut elems = Vec::new();
            for (i, (a, b)) in vm.pairs().enumerate() {
                if mask >> i & 1 == 1 {
                    elems.push(a);
                    elems.push(b);
                }
            }
            let spec = validate_v(&f, &elems).unwrap();
            per_count[spec.v_pair_count()] += 1;
        }
        assert_eq!(per_count, [1, 7, 21, 35, 35, 21, 7, 1]);
    }

    #[test]
    fn empty_v_gives_u_equal_w() {
        let f = f6();
        let spec = empty_v(&f).unwrap();
        assert_eq!(spec.u_len(), 14);
        for e in compute_w(&f).unwrap() {
            assert!(spec.u_contains(e));
        }
    }

    #[test]
    fn phi_swaps_zero_one_and_is_an_involution() {
        for n in [6u32, 8, 10] {
            let f = Arc::new(FieldSpec::builtin(n).unwrap());
            assert_eq!(phi_involution(&f, f.zero()).unwrap(), f.one());
            assert_eq!(phi_involution(&f, f.one()).unwrap(), f.zero());
            for bits in 0..f.size() as u32 {
                let x = f.element(bits).unwrap();
                let px = phi_involution(&f, x).unwrap();
                assert_eq!(phi_involution(&f, px).unwrap(), x);
                if bits > 1 {
                    // phi(x) = x/(x+1) away from {0, 1}.
                    assert_eq!(px.bits(), partner_raw(&f, bits));
                }
            }
        }
    }

    #[test]
    fn u_is_phi_closed_for_valid_subsets() {
        for n in [6u32, 8, 10, 12] {
            let f = Arc::new(FieldSpec::builtin(n).unwrap());
            let vm = compute_vm(&f).unwrap();
            let half: Vec<FieldElement> = vm
                .pairs()
                .take(vm.len() / 2)
                .flat_map(|(a, b)| [a, b])
                .collect();
            for spec in [
                empty_v(&f).unwrap(),
                validate_v(&f, &half).unwrap(),
                validate_v(&f, &vm.elements()).unwrap(),
            ] {
                for bits in 0..f.size() as u32 {
                    let x = f.element(bits).unwrap();
                    if spec.u_contains(x) {
                        assert!(spec.u_contains(phi_involution(&f, x).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn build_g_at_zero_and_permutation() {
        let f = f6();
        let g3 = build_g(&empty_v(&f).unwrap()).unwrap();
        // 0 is in W, so G(0) = 0^-1 + 1 = 1.
        assert_eq!(g3.table()[0], 1);
        assert!(g3.is_permutation());
    }

    #[test]
    fn random_v_is_deterministic_and_bounded() {
        let f = f6();
        assert_eq!(random_v(&f, 0, 9).unwrap().v_len(), 0);
        let a = random_v(&f, 3, 1234).unwrap();
        let b = random_v(&f, 3, 1234).unwrap();
        assert_eq!(a, b);
        let c = random_v(&f, 3, 1235).unwrap();
        assert_eq!(c.v_pair_count(), 3);
        let max = random_v(&f, 7, 0).unwrap();
        assert_eq!(max.v_pair_count(), 7);
        assert_eq!(max.v_pair_list().elements(), compute_vm(&f).unwrap().elements());
        assert_eq!(
            random_v(&f, 8, 0).unwrap_err(),
            Error::PairCountTooLarge { requested: 8, available: 7 }
        );
    }

    #[test]
    fn named_functions_build_and_match_routes() {
        for n in [6u32, 8, 10] {
            let f = Arc::new(FieldSpec::builtin(n).unwrap());
            for name in NamedFunction::ALL {
                let func = build_named(&f, name).unwrap();
                assert!(func.is_permutation(), "{name} at n={n}");
                assert_eq!(func.table(), closed_form_table(&f, name).as_slice());
            }
        }
        let f4 = Arc::new(FieldSpec::builtin(4).unwrap());
        assert_eq!(
            build_named(&f4, NamedFunction::G3).unwrap_err(),
            Error::ConstructionDegree(4)
        );
        let f7 = Arc::new(FieldSpec::builtin(7).unwrap());
        assert_eq!(
            build_named(&f7, NamedFunction::G3).unwrap_err(),
            Error::ConstructionDegree(7)
        );
    }

    #[test]
    fn gm_closed_form_is_trace_shifted_inverse() {
        // G_M(x) = x^-1 + Tr(x + (x+1)^-1) + 1, tablewise.
        for n in [6u32, 8, 10] {
            let f = Arc::new(FieldSpec::builtin(n).unwrap());
            let gm = build_named(&f, NamedFunction::GM).unwrap();
            for x in 0..f.size() as u32 {
                let t = u32::from(f.trace_raw(x ^ f.inv_raw(x ^ 1)));
                assert_eq!(gm.table()[x as usize], f.inv_raw(x) ^ t ^ 1);
            }
        }
    }

    #[test]
    fn v_file_round_trip_and_errors() {
        let f = f6();
        let v = elements_from_exponents(&f, &[3, 53, 21, 42]).unwrap();
        let spec = validate_v(&f, &v).unwrap();
        let text = to_v_file(&spec);
        assert_eq!(text, "field n=6\npair 3 53\npair 21 42\n");
        let parsed = parse_v_file(&f, &text).unwrap();
        assert_eq!(parsed, spec);

        // pairhex round-trips to the same spec.
        let xi3 = f.exp_raw(3);
        let xi53 = f.exp_raw(53);
        let hex_text = format!("field n=6\npairhex {xi3:x} {xi53:x}\npair 21 42\n");
        let parsed_hex = parse_v_file(&f, &hex_text).unwrap();
        assert_eq!(parsed_hex, spec);

        // Not an actual pair.
        let bad = "field n=6\npair 3 21\n";
        assert!(matches!(
            parse_v_file(&f, bad),
            Err(Error::UnpairedElement { .. })
        ));
        // Wrong field degree in header.
        assert!(matches!(
            parse_v_file(&f, "field n=8\n"),
            Err(Error::FieldMismatch { .. })
        ));
        // Exponent out of range.
        assert!(matches!(
            parse_v_file(&f, "field n=6\npair 63 3\n"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn odd_degree_is_rejected() {
        let f7 = Arc::new(FieldSpec::builtin(7).unwrap());
        assert_eq!(compute_w(&f7).unwrap_err(), Error::OddDegree(7));
        assert_eq!(compute_vm(&f7).unwrap_err(), Error::OddDegree(7));
        assert_eq!(split_v0_v1(&f7).unwrap_err(), Error::OddDegree(7));
        assert_eq!(validate_v(&f7, &[]).unwrap_err(), Error::OddDegree(7));
    }
}
