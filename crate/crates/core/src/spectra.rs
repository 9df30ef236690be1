//! Exhaustive differential spectra, Walsh spectra / nonlinearity via the fast
//! Walsh-Hadamard transform, and CCZ-invariant signatures.
//!
//! All values are exact integers; no floating point anywhere. The heavy
//! per-a and per-b loops run in parallel and merge through commutative
//! integer sums, so results are identical under any scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::vfunc::VFunc;

/// Differential spectrum: for each occurrence value delta, the number of
/// pairs (a, b) with a != 0 whose equation F(x+a) + F(x) = b has exactly
/// delta solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferentialSpectrum {
    histogram: BTreeMap<u32, u64>,
    uniformity: u32,
}

impl DifferentialSpectrum {
    fn new(n: u32, histogram: BTreeMap<u32, u64>) -> Self {
        let size = 1u64 << n;
        let pairs: u64 = histogram.values().sum();
        let mass: u64 = histogram.iter().map(|(&d, &c)| u64::from(d) * c).sum();
        assert_eq!(pairs, (size - 1) * size, "histogram must cover all (a, b)");
        assert_eq!(mass, (size - 1) * size, "each a contributes 2^n solutions");
        assert!(
            histogram.keys().all(|&d| d % 2 == 0),
            "solution counts come in pairs (x, x+a)"
        );
        let uniformity = histogram
            .iter()
            .filter(|&(_, &c)| c > 0)
            .map(|(&d, _)| d)
            .max()
            .unwrap_or(0);
        DifferentialSpectrum { histogram, uniformity }
    }

    pub fn histogram(&self) -> &BTreeMap<u32, u64> {
        &self.histogram
    }

    /// Max delta attained: the differential uniformity.
    pub fn uniformity(&self) -> u32 {
        self.uniformity
    }

    pub fn count(&self, delta: u32) -> u64 {
        self.histogram.get(&delta).copied().unwrap_or(0)
    }

    /// The customary triple [count(0), count(2), count(4)] when the
    /// uniformity is at most 4.
    pub fn as_triple(&self) -> Option<[u64; 3]> {
        if self.uniformity <= 4 {
            Some([self.count(0), self.count(2), self.count(4)])
        } else {
            None
        }
    }
}

impl std::fmt::Display for DifferentialSpectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some([a, b, c]) = self.as_triple() {
            write!(f, "[{a},{b},{c}]")
        } else {
            write!(f, "{{")?;
            for (i, (d, c)) in self.histogram.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{d}:{c}")?;
            }
            write!(f, "}}")
        }
    }
}

/// Computes the full differential spectrum with one pass over x per a,
/// bucketing per output difference with generation-stamped counters.
pub fn differential_spectrum(f: &VFunc) -> DifferentialSpectrum {
    let size = f.field().size();
    let table = f.table();
    let histogram = (1..size as u32)
        .into_par_iter()
        .fold(
            || (vec![0u32; size], vec![0u32; size], Vec::new(), BTreeMap::new()),
            |(mut counts, mut stamp, mut touched, mut hist), a| {
                touched.clear();
                for x in 0..size as u32 {
                    let d = (table[(x ^ a) as usize] ^ table[x as usize]) as usize;
                    if stamp[d] != a {
                        stamp[d] = a;
                        counts[d] = 0;
                        touched.push(d as u32);
                    }
                    counts[d] += 1;
                }
                for &d in &touched {
                    *hist.entry(counts[d as usize]).or_insert(0u64) += 1;
                }
                *hist.entry(0).or_insert(0) += (size - touched.len()) as u64;
                (counts, stamp, touched, hist)
            },
        )
        .map(|(_, _, _, hist)| hist)
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    DifferentialSpectrum::new(f.degree_n(), histogram)
}

/// Max delta over all (a, b) with a != 0.
pub fn differential_uniformity(f: &VFunc) -> u32 {
    differential_spectrum(f).uniformity()
}

/// In-place fast Walsh-Hadamard transform over the n-bit index lattice.
pub(crate) fn fwht_in_place(data: &mut [i32]) {
    debug_assert!(data.len().is_power_of_two());
    let mut h = 1;
    while h < data.len() {
        let mut block = 0;
        while block < data.len() {
            for i in block..block + h {
                let (u, v) = (data[i], data[i + h]);
                data[i] = u + v;
                data[i + h] = u - v;
            }
            block += h << 1;
        }
        h <<= 1;
    }
}

fn fill_component_signs(f: &VFunc, b: u32, out: &mut [i32]) {
    let field = f.field();
    for (x, o) in out.iter_mut().enumerate() {
        let t = field.trace_raw(field.mul_raw(b, f.table()[x]));
        *o = 1 - 2 * i32::from(t);
    }
}

/// Walsh transform of the component function Tr(b F(x)) for a fixed b != 0.
///
/// The output is indexed by linear functionals written as bit dot products;
/// as a multiset over all indices it equals {F^W(a, b) : a in F_2^n}.
pub fn component_walsh(f: &VFunc, b: FieldElement) -> Result<Vec<i32>> {
    if b.degree() != f.degree_n() {
        return Err(Error::FieldMismatch {
            expected: f.degree_n(),
            got: b.degree(),
        });
    }
    if b.is_zero() {
        return Err(Error::ZeroWalshComponent);
    }
    let mut data = vec![0i32; f.field().size()];
    fill_component_signs(f, b.bits(), &mut data);
    fwht_in_place(&mut data);
    Ok(data)
}

/// Extended Walsh spectrum (multiset of |F^W(a, b)| over all a and b != 0),
/// its maximum, and the nonlinearity 2^(n-1) - max/2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalshProfile {
    extended_spectrum: BTreeMap<u32, u64>,
    max_abs: u32,
    nonlinearity: u32,
}

impl WalshProfile {
    pub fn extended_spectrum(&self) -> &BTreeMap<u32, u64> {
        &self.extended_spectrum
    }

    /// Run-length encoding as (absolute value, count) pairs, ascending.
    pub fn extended_spectrum_rle(&self) -> Vec<(u32, u64)> {
        self.extended_spectrum.iter().map(|(&v, &c)| (v, c)).collect()
    }

    pub fn max_abs(&self) -> u32 {
        self.max_abs
    }

    pub fn nonlinearity(&self) -> u32 {
        self.nonlinearity
    }
}

/// Aggregates component Walsh transforms over all b != 0.
pub fn walsh_profile(f: &VFunc) -> WalshProfile {
    let size = f.field().size();
    let n = f.degree_n();
    let (counts, max_abs) = (1..size as u32)
        .into_par_iter()
        .fold(
            || (vec![0i32; size], vec![0u64; size + 1], 0u32),
            |(mut buf, mut counts, mut max_abs), b| {
                fill_component_signs(f, b, &mut buf);
                fwht_in_place(&mut buf);
                let mut parseval = 0u64;
                for &v in buf.iter() {
                    let a = v.unsigned_abs();
                    parseval += u64::from(a) * u64::from(a);
                    counts[a as usize] += 1;
                    max_abs = max_abs.max(a);
                }
                debug_assert_eq!(parseval, 1u64 << (2 * n), "Parseval per component");
                (buf, counts, max_abs)
            },
        )
        .map(|(_, counts, max_abs)| (counts, max_abs))
        .reduce(
            || (vec![0u64; size + 1], 0u32),
            |(mut ca, ma), (cb, mb)| {
                for (x, y) in ca.iter_mut().zip(cb) {
                    *x += y;
                }
                (ca, ma.max(mb))
            },
        );
    let extended_spectrum: BTreeMap<u32, u64> = counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(v, c)| (v as u32, c))
        .collect();
    let total: u64 = extended_spectrum.values().sum();
    assert_eq!(total, (size as u64) * (size as u64 - 1), "one value per (a, b)");
    debug_assert_eq!(max_abs % 2, 0);
    WalshProfile {
        extended_spectrum,
        max_abs,
        nonlinearity: (1u32 << (n - 1)) - max_abs / 2,
    }
}

/// The CCZ-invariant bundle used for inequivalence screening: equal bundles
/// leave functions undistinguished, unequal bundles certify CCZ-inequivalence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantSignature {
    pub nonlinearity: u32,
    pub diff_spectrum: Vec<(u32, u64)>,
    pub extended_walsh: Vec<(u32, u64)>,
}

/// Canonical (sorted, run-length encoded) signature of a function.
pub fn invariant_signature(f: &VFunc) -> InvariantSignature {
    let ds = differential_spectrum(f);
    let wp = walsh_profile(f);
    InvariantSignature {
        nonlinearity: wp.nonlinearity(),
        diff_spectrum: ds.histogram().iter().map(|(&d, &c)| (d, c)).collect(),
        extended_walsh: wp.extended_spectrum_rle(),
    }
}

/// Groups precomputed signatures by equality, preserving first-occurrence
/// order; each group lists the indices of its members.
pub fn partition_signatures(signatures: &[InvariantSignature]) -> Vec<Vec<usize>> {
    let mut keys: Vec<&InvariantSignature> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, sig) in signatures.iter().enumerate() {
        if let Some(k) = keys.iter().position(|&s| s == sig) {
            groups[k].push(i);
        } else {
            keys.push(sig);
            groups.push(vec![i]);
        }
    }
    groups
}

/// Groups functions by exact signature equality. Functions in different
/// groups are CCZ-inequivalent; same-group functions are merely not
/// distinguished by these invariants.
pub fn signature_partition(funcs: &[VFunc]) -> Result<Vec<(InvariantSignature, Vec<usize>)>> {
    if let Some(first) = funcs.first() {
        if funcs.iter().any(|f| f.field() != first.field()) {
            return Err(Error::MixedFields);
        }
    }
    let signatures: Vec<InvariantSignature> = funcs.iter().map(invariant_signature).collect();
    let groups = partition_signatures(&signatures);
    Ok(groups
        .into_iter()
        .map(|members| (signatures[members[0]].clone(), members))
        .collect())
}

/// Full analysis of one function, shaped for the JSON/CSV interfaces.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub n: u32,
    pub name: String,
    pub nl: u32,
    pub uniformity: u32,
    pub degree: u32,
    pub diff_spectrum: BTreeMap<u32, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ews: Option<Vec<(u32, u64)>>,
}

impl AnalysisReport {
    pub fn build(name: &str, f: &VFunc, with_ews: bool) -> Self {
        let ds = differential_spectrum(f);
        let wp = walsh_profile(f);
        AnalysisReport {
            n: f.degree_n(),
            name: name.to_string(),
            nl: wp.nonlinearity(),
            uniformity: ds.uniformity(),
            degree: f.algebraic_degree(),
            diff_spectrum: ds.histogram().clone(),
            ews: with_ews.then(|| wp.extended_spectrum_rle()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }

    pub fn csv_header() -> &'static str {
        "name,n,nl,uniformity,degree,diff_spectrum"
    }

    pub fn to_csv_row(&self) -> String {
        let spec = self
            .diff_spectrum
            .iter()
            .map(|(d, c)| format!("{d}:{c}"))
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "{},{},{},{},{},\"{}\"",
            self.name, self.n, self.nl, self.uniformity, self.degree, spec
        )
    }

    pub fn to_text(&self) -> String {
        let ds = self
            .diff_spectrum
            .iter()
            .map(|(d, c)| format!("{d} -> {c}"))
            .collect::<Vec<_>>()
            .join(", ");
        let mut out = format!(
            "{} (n={}): NL={}, uniformity={}, degree={}\n  differential spectrum: {}\n",
            self.name, self.n, self.nl, self.uniformity, self.degree, ds
        );
        if let Some(ews) = &self.ews {
            let line = ews
                .iter()
                .map(|(v, c)| format!("{v}^{c}"))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!("  extended Walsh spectrum: {line}\n"));
        }
        out
    }
}
