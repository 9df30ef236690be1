//! (n,n)-functions as lookup tables, with permutation checking and algebraic
//! degree via the algebraic normal form.
//!
//! A table index is the input's coordinate bit-vector; there is no separate
//! encoding layer.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// An (n,n)-function, stored as a full table of 2^n field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VFunc {
    field: Arc<FieldSpec>,
    table: Vec<u32>,
}

impl VFunc {
    /// Wraps a raw table after validating its length and entry ranges.
    pub fn from_table(field: Arc<FieldSpec>, table: Vec<u32>) -> Result<Self> {
        if table.len() != field.size() {
            return Err(Error::TableLength {
                expected: field.size(),
                got: table.len(),
            });
        }
        let limit = field.size() as u32;
        for &v in &table {
            if v >= limit {
                return Err(Error::ElementOutOfRange {
                    bits: v,
                    n: field.degree(),
                });
            }
        }
        Ok(VFunc { field, table })
    }

    /// The multiplicative inverse function x -> x^-1, with 0^-1 := 0.
    pub fn inverse_function(field: Arc<FieldSpec>) -> Self {
        let table = (0..field.size() as u32)
            .map(|x| field.inv_raw(x))
            .collect();
        VFunc { field, table }
    }

    /// The identity permutation.
    pub fn identity(field: Arc<FieldSpec>) -> Self {
        let table = (0..field.size() as u32).collect();
        VFunc { field, table }
    }

    pub(crate) fn from_raw_unchecked(field: Arc<FieldSpec>, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), field.size());
        VFunc { field, table }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn degree_n(&self) -> u32 {
        self.field.degree()
    }

    /// Raw table view (index = input coordinate bits).
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Evaluates the function on a field element.
    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        if x.degree() != self.field.degree() {
            return Err(Error::FieldMismatch {
                expected: self.field.degree(),
                got: x.degree(),
            });
        }
        self.field.element(self.table[x.bits() as usize])
    }

    /// True iff the table hits each of the 2^n values exactly once.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![0u64; self.table.len().div_ceil(64)];
        for &v in &self.table {
            let (w, b) = (v as usize / 64, v as usize % 64);
            if seen[w] >> b & 1 == 1 {
                return false;
            }
            seen[w] |= 1 << b;
        }
        true
    }

    /// Per-coordinate algebraic normal form via the Moebius transform.
    pub fn anf(&self) -> Anf {
        let n = self.field.degree();
        let size = self.field.size();
        let mut coords = Vec::with_capacity(n as usize);
        let mut dense = vec![0u8; size];
        for j in 0..n {
            for (x, d) in dense.iter_mut().enumerate() {
                *d = (self.table[x] >> j & 1) as u8;
            }
            moebius_in_place(&mut dense);
            coords.push(
                dense
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c == 1)
                    .map(|(m, _)| m as u32)
                    .collect(),
            );
        }
        Anf { n, coords }
    }

    /// Maximum ANF monomial size over all output coordinates; 0 for constants.
    pub fn algebraic_degree(&self) -> u32 {
        self.anf().degree()
    }

    /// Serializes to the text table format: a field header line followed by
    /// one `index_hex:value_hex` line per entry.
    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field {}\n", self.field.to_config_string()));
        for (x, &v) in self.table.iter().enumerate() {
            out.push_str(&format!("{x:x}:{v:x}\n"));
        }
        out
    }

    /// Parses the format produced by [`VFunc::to_table_string`].
    pub fn from_table_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty table file".into()))?;
        let config = header
            .trim()
            .strip_prefix("field ")
            .ok_or_else(|| Error::Parse("table file must start with `field <config>`".into()))?;
        let field = Arc::new(FieldSpec::from_config_str(config)?);
        let mut table = vec![u32::MAX; field.size()];
        for line in lines {
            let (idx, val) = line
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected index:value, got `{line}`")))?;
            let idx = crate::field::parse_hex(idx)? as usize;
            if idx >= table.len() {
                return Err(Error::Parse(format!("index 0x{idx:x} out of range")));
            }
            if table[idx] != u32::MAX {
                return Err(Error::Parse(format!("duplicate index 0x{idx:x}")));
            }
            table[idx] = crate::field::parse_hex(val)?;
        }
        if let Some(missing) = table.iter().position(|&v| v == u32::MAX) {
            return Err(Error::Parse(format!("missing entry for index 0x{missing:x}")));
        }
        VFunc::from_table(field, table)
    }
}

/// Algebraic normal form: per output coordinate, the set of monomial masks
/// with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    n: u32,
    coords: Vec<Vec<u32>>,
}

impl Anf {
    pub fn coordinate_monomials(&self, j: u32) -> &[u32] {
        &self.coords[j as usize]
    }

    /// Max monomial size (Hamming weight of the mask) over all coordinates.
    pub fn degree(&self) -> u32 {
        self.coords
            .iter()
            .flatten()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Rebuilds the truth table; the Moebius transform is an involution, so
    /// this must reproduce the source table exactly.
    pub fn evaluate(&self) -> Vec<u32> {
        let size = 1usize << self.n;
        let mut table = vec![0u32; size];
        let mut dense = vec![0u8; size];
        for (j, monomials) in self.coords.iter().enumerate() {
            dense.fill(0);
            for &m in monomials {
                dense[m as usize] = 1;
            }
            moebius_in_place(&mut dense);
            for (x, t) in table.iter_mut().enumerate() {
                *t |= u32::from(dense[x]) << j;
            }
        }
        table
    }
}

/// In-place subset Moebius transform over the n-bit lattice (self-inverse).
pub(crate) fn moebius_in_place(f: &mut [u8]) {
    let size = f.len();
    debug_assert!(size.is_power_of_two());
    let mut h = 1;
    while h < size {
        let mut block = 0;
        while block < size {
            for x in block..block + h {
                f[x + h] ^= f[x];
            }
            block += h << 1;
        }
        h <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand_chacha::rand_core::{Rng, SeedableRng};

    fn f6() -> Arc<FieldSpec> {
        Arc::new(FieldSpec::builtin(6).unwrap())
    }

    /// Independent ANF oracle: coefficient of monomial m is the XOR of f over
    /// the subcube {x : x subset of m}.
    fn anf_coefficient_oracle(table: &[u32], j: u32, m: u32) -> u8 {
        let mut acc = 0u8;
        let mut x = m;
        loop {
            acc ^= (table[x as usize] >> j & 1) as u8;
            if x == 0 {
                break;
            }
            x = (x - 1) & m;
        }
        acc
    }

    #[test]
    fn inverse_function_fixes_zero_and_one() {
        let f = f6();
        let inv = VFunc::inverse_function(f);
        assert_eq!(inv.table()[0], 0);
        assert_eq!(inv.table()[1], 1);
        assert!(inv.is_permutation());
    }

    #[test]
    fn constant_is_not_a_permutation() {
        let f = f6();
        let zero = VFunc::from_table(f, vec![0; 64]).unwrap();
        assert!(!zero.is_permutation());
        assert_eq!(zero.algebraic_degree(), 0);
    }

    #[test]
    fn identity_anf_is_singleton_monomials() {
        let f = f6();
        let id = VFunc::identity(f);
        let anf = id.anf();
        for j in 0..6 {
            assert_eq!(anf.coordinate_monomials(j), &[1u32 << j]);
        }
        assert_eq!(anf.degree(), 1);
    }

    #[test]
    fn constant_zero_anf_is_empty() {
        let f = f6();
        let zero = VFunc::from_table(f, vec![0; 64]).unwrap();
        let anf = zero.anf();
        for j in 0..6 {
            assert!(anf.coordinate_monomials(j).is_empty());
        }
    }

    #[test]
    fn inverse_function_has_degree_n_minus_1() {
        // Oracle: direct subcube-sum ANF coefficients at n = 6.
        let f = f6();
        let inv = VFunc::inverse_function(f);
        let anf = inv.anf();
        let mut max_weight = 0;
        for j in 0..6u32 {
            for m in 0..64u32 {
                let c = anf_coefficient_oracle(inv.table(), j, m);
                let in_anf = anf.coordinate_monomials(j).contains(&m);
                assert_eq!(c == 1, in_anf, "coefficient mismatch at j={j}, m={m:#x}");
                if c == 1 {
                    max_weight = max_weight.max(m.count_ones());
                }
            }
        }
        assert_eq!(max_weight, 5);
        assert_eq!(inv.algebraic_degree(), 5);
        for n in [8u32, 10] {
            let f = Arc::new(FieldSpec::builtin(n).unwrap());
            assert_eq!(VFunc::inverse_function(f).algebraic_degree(), n - 1);
        }
    }

    #[test]
    fn frobenius_squaring_is_linear() {
        let f = f6();
        let table = (0..64).map(|x| f.mul_raw(x, x)).collect();
        let sq = VFunc::from_table(f, table).unwrap();
        assert!(sq.is_permutation());
        assert_eq!(sq.algebraic_degree(), 1);
    }

    #[test]
    fn affine_functions_have_degree_at_most_1() {
        let f = f6();
        // x -> a*x + c for a few (a, c).
        for (a, c) in [(1u32, 5u32), (7, 0), (63, 1)] {
            let table = (0..64).map(|x| f.mul_raw(a, x) ^ c).collect();
            let func = VFunc::from_table(f.clone(), table).unwrap();
            assert!(func.algebraic_degree() <= 1);
        }
    }

    #[test]
    fn degree_is_ea_invariant_at_n6() {
        // Degree is preserved under composition with affine bijections
        // (L2 o F o L1 with L_i(x) = M_i x + c_i over GF(2)^6).
        let f = f6();
        let target = VFunc::inverse_function(f.clone());
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(77);
        let n = 6u32;
        let random_invertible = |rng: &mut rand_chacha::ChaCha12Rng| loop {
            let rows: Vec<u32> = (0..n).map(|_| rng.next_u32() & 63).collect();
            // Gaussian elimination over GF(2) to test invertibility.
            let mut m = rows.clone();
            let mut rank = 0;
            for col in 0..n {
                if let Some(p) = (rank..n as usize).find(|&r| m[r] >> col & 1 == 1) {
                    m.swap(rank, p);
                    for r in 0..n as usize {
                        if r != rank && m[r] >> col & 1 == 1 {
                            m[r] ^= m[rank];
                        }
                    }
                    rank += 1;
                }
            }
            if rank == n as usize {
                return rows;
            }
        };
        let apply = |rows: &[u32], c: u32, x: u32| -> u32 {
            let mut y = c;
            for (i, &row) in rows.iter().enumerate() {
                y ^= ((x & row).count_ones() & 1) << i;
            }
            y
        };
        for _ in 0..20 {
            let m1 = random_invertible(&mut rng);
            let m2 = random_invertible(&mut rng);
            let c1 = rng.next_u32() & 63;
            let c2 = rng.next_u32() & 63;
            let table = (0..64u32)
                .map(|x| apply(&m2, c2, target.table()[apply(&m1, c1, x) as usize]))
                .collect();
            let conj = VFunc::from_table(f.clone(), table).unwrap();
            assert_eq!(conj.algebraic_degree(), target.algebraic_degree());
        }
    }

    #[test]
    fn permutation_degree_bound() {
        let f = f6();
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        for _ in 0..10 {
            // Random permutation via Fisher-Yates.
            let mut table: Vec<u32> = (0..64).collect();
            for i in (1..table.len()).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                table.swap(i, j);
            }
            let p = VFunc::from_table(f.clone(), table).unwrap();
            assert!(p.is_permutation());
            assert!(p.algebraic_degree() <= 5);
        }
    }

    #[test]
    fn table_string_round_trip() {
        let f = f6();
        let inv = VFunc::inverse_function(f);
        let s = inv.to_table_string();
        assert!(s.starts_with("field n=6, poly=5b, xi=2\n"));
        let parsed = VFunc::from_table_str(&s).unwrap();
        assert_eq!(parsed, inv);
        assert!(VFunc::from_table_str("field n=6, poly=5b, xi=2\n0:1\n").is_err());
    }

    #[test]
    fn from_table_validates_entries() {
        let f = f6();
        assert_eq!(
            VFunc::from_table(f.clone(), vec![0; 63]).unwrap_err(),
            Error::TableLength { expected: 64, got: 63 }
        );
        let mut t: Vec<u32> = (0..64).collect();
        t[5] = 64;
        assert!(matches!(
            VFunc::from_table(f, t),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    proptest! {
        #[test]
        fn moebius_is_an_involution(bits in proptest::collection::vec(0u8..=1, 64)) {
            let mut f = bits.clone();
            moebius_in_place(&mut f);
            moebius_in_place(&mut f);
            prop_assert_eq!(f, bits);
        }

        #[test]
        fn anf_round_trips_random_tables(seed in 0u64..1000) {
            let f = f6();
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let table: Vec<u32> = (0..64).map(|_| rng.next_u32() & 63).collect();
            let func = VFunc::from_table(f, table.clone()).unwrap();
            prop_assert_eq!(func.anf().evaluate(), table);
        }
    }
}
