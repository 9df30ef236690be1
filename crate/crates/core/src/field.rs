//! Exact arithmetic in GF(2^n) over a polynomial basis.
//!
//! Elements are n-bit coordinate vectors (bit i = coefficient of x^i in the
//! residue polynomial). A [`FieldSpec`] owns eagerly built log/antilog tables
//! so that multiplication, inversion and discrete logs are O(1) inside the
//! O(2^2n) spectrum loops. The crate-wide convention 0^-1 := 0 is applied
//! everywhere, including inside trace arguments.

use crate::error::{Error, Result};

/// Smallest supported field degree.
pub const MIN_DEGREE: u32 = 2;
/// Largest supported field degree (log/antilog tables stay under 8 MiB).
pub const MAX_DEGREE: u32 = 20;

/// Conway polynomials C_{2,n} for n = 2..=20, as bitmasks (bit i = coeff of x^i).
/// These are the Magma/GAP defaults; their residue class x is primitive, so the
/// built-in fields take xi = x.
const CONWAY_POLYS: [(u32, u32); 19] = [
    (2, 0x7),
    (3, 0xB),
    (4, 0x13),
    (5, 0x25),
    (6, 0x5B),
    (7, 0x83),
    (8, 0x11D),
    (9, 0x211),
    (10, 0x46F),
    (11, 0x805),
    (12, 0x10EB),
    (13, 0x201B),
    (14, 0x40A9),
    (15, 0x8035),
    (16, 0x1002D),
    (17, 0x20009),
    (18, 0x41403),
    (19, 0x80027),
    (20, 0x1006F3),
];

/// An element of GF(2^n): an n-bit coordinate vector tagged with its degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    bits: u32,
    n: u8,
}

impl FieldElement {
    /// Coordinate bits (bit i = coefficient of x^i).
    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Degree of the ambient field.
    pub fn degree(self) -> u32 {
        u32::from(self.n)
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "0x{:x}", self.bits)
    }
}

/// A concrete representation of GF(2^n): degree, reduction polynomial and a
/// primitive element, plus the derived lookup tables.
pub struct FieldSpec {
    n: u32,
    poly: u32,
    xi: u32,
    /// exp[i] = xi^i for i in [0, 2^n - 1).
    exp: Vec<u32>,
    /// log[x] = i with xi^i = x, for x != 0.
    log: Vec<u32>,
    /// Tr(x) = parity(x & trace_mask); bit i = Tr(x^i) over the monomial basis.
    trace_mask: u32,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.poly == other.poly && self.xi == other.xi
    }
}

impl Eq for FieldSpec {}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("n", &self.n)
            .field("poly", &format_args!("0x{:x}", self.poly))
            .field("xi", &format_args!("0x{:x}", self.xi))
            .finish()
    }
}

/// Carry-less multiply of two GF(2)[x] polynomials, reduced mod `poly` of degree `n`.
fn poly_mulmod(mut a: u64, b: u64, poly: u64, n: u32) -> u64 {
    let mut r = 0u64;
    for i in 0..n {
        if (b >> i) & 1 == 1 {
            r ^= a;
        }
        a <<= 1;
        if (a >> n) & 1 == 1 {
            a ^= poly;
        }
    }
    r
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// gcd of two GF(2)[x] polynomials (bitmask representation).
fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        while poly_degree(a) >= poly_degree(b) && a != 0 {
            a ^= b << (poly_degree(a) - poly_degree(b));
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Irreducibility over GF(2) via the Frobenius criterion:
/// x^(2^n) == x mod f, and gcd(x^(2^(n/p)) - x, f) = 1 for every prime p | n.
fn poly_is_irreducible(poly: u64, n: u32) -> bool {
    let mut frobenius = vec![0u64; n as usize + 1];
    let mut h = 2u64; // the polynomial x
    frobenius[0] = h;
    for i in 1..=n {
        h = poly_mulmod(h, h, poly, n);
        frobenius[i as usize] = h;
    }
    if frobenius[n as usize] != 2 {
        return false;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= n {
        if m % p == 0 {
            if poly_gcd(frobenius[(n / p) as usize] ^ 2, poly) != 1 {
                return false;
            }
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 && poly_gcd(frobenius[(n / m) as usize] ^ 2, poly) != 1 {
        return false;
    }
    true
}

/// Carry-less product of two GF(2)[x] polynomials, no reduction.
fn poly_clmul(a: u64, b: u64) -> u64 {
    let mut r = 0u64;
    let mut i = 0;
    while b >> i != 0 {
        if (b >> i) & 1 == 1 {
            r ^= a << i;
        }
        i += 1;
    }
    r
}

impl FieldSpec {
    /// Builds a field from an explicit reduction polynomial and primitive element.
    ///
    /// Checks that `poly` is monic of degree n and irreducible, and that `xi`
    /// has multiplicative order exactly 2^n - 1 (the antilog table is rejected
    /// if any power repeats).
    pub fn new(n: u32, poly: u32, xi: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&n) {
            return Err(Error::DegreeOutOfRange {
                min: MIN_DEGREE,
                max: MAX_DEGREE,
                got: n,
            });
        }
        let size: u32 = 1 << n;
        if poly < size || poly >= size << 1 {
            return Err(Error::MalformedPolynomial {
                poly: u64::from(poly),
                n,
            });
        }
        if !poly_is_irreducible(u64::from(poly), n) {
            return Err(Error::ReduciblePolynomial {
                poly: u64::from(poly),
            });
        }
        if xi >= size {
            return Err(Error::ElementOutOfRange { bits: xi, n });
        }
        if xi == 0 {
            return Err(Error::NotPrimitive { xi });
        }

        let order = (size - 1) as usize;
        let mut exp = vec![0u32; order];
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            if log[cur as usize] != u32::MAX {
                return Err(Error::NotPrimitive { xi });
            }
            log[cur as usize] = i as u32;
            *slot = cur;
            cur = poly_mulmod(u64::from(cur), u64::from(xi), u64::from(poly), n) as u32;
        }
        if cur != 1 {
            return Err(Error::NotPrimitive { xi });
        }

        // Tr(x) is GF(2)-linear, so one mask over the monomial basis suffices.
        let mut trace_mask = 0u32;
        for i in 0..n {
            let basis = 1u64 << i;
            let mut t = 0u64;
            let mut y = basis;
            for _ in 0..n {
                t ^= y;
                y = poly_mulmod(y, y, u64::from(poly), n);
            }
            debug_assert!(t <= 1);
            trace_mask |= (t as u32) << i;
        }

        Ok(FieldSpec {
            n,
            poly,
            xi,
            exp,
            log,
            trace_mask,
        })
    }

    /// The built-in field of degree n: Conway reduction polynomial, xi = x.
    pub fn builtin(n: u32) -> Result<Self> {
        let poly = CONWAY_POLYS
            .iter()
            .find(|&&(deg, _)| deg == n)
            .map(|&(_, p)| p)
            .ok_or(Error::NoBuiltinField(n))?;
        FieldSpec::new(n, poly, 2)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Number of field elements, 2^n.
    pub fn size(&self) -> usize {
        1 << self.n
    }

    /// Order of the multiplicative group, 2^n - 1.
    pub fn order(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn reduction_poly(&self) -> u32 {
        self.poly
    }

    /// Wraps raw coordinate bits, checking the range.
    pub fn element(&self, bits: u32) -> Result<FieldElement> {
        if bits >= 1 << self.n {
            return Err(Error::ElementOutOfRange { bits, n: self.n });
        }
        Ok(FieldElement {
            bits,
            n: self.n as u8,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            bits: 0,
            n: self.n as u8,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            bits: 1,
            n: self.n as u8,
        }
    }

    /// The configured primitive element.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement {
            bits: self.xi,
            n: self.n as u8,
        }
    }

    fn check(&self, x: FieldElement) -> Result<u32> {
        if u32::from(x.n) != self.n {
            return Err(Error::FieldMismatch {
                expected: self.n,
                got: u32::from(x.n),
            });
        }
        Ok(x.bits)
    }

    fn wrap(&self, bits: u32) -> FieldElement {
        FieldElement {
            bits,
            n: self.n as u8,
        }
    }

    /// Characteristic-2 addition: bitwise XOR of coordinates.
    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.check(x)? ^ self.check(y)?))
    }

    /// Product modulo the reduction polynomial.
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul_raw(self.check(x)?, self.check(y)?)))
    }

    /// Multiplicative inverse under the convention inv(0) = 0.
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.inv_raw(self.check(x)?)))
    }

    /// x^e by square-and-multiply; pow(0, 0) = 1.
    pub fn pow(&self, x: FieldElement, e: u64) -> Result<FieldElement> {
        Ok(self.wrap(self.pow_raw(self.check(x)?, e)))
    }

    /// Absolute trace Tr(x) = sum of x^(2^i), i = 0..n-1, as a bit.
    pub fn trace(&self, x: FieldElement) -> Result<u8> {
        Ok(self.trace_raw(self.check(x)?))
    }

    /// The cube root of unity xi^((2^n - 1)/3); requires even n.
    pub fn element_of_order_3(&self) -> Result<FieldElement> {
        if self.n % 2 != 0 {
            return Err(Error::OddDegree(self.n));
        }
        Ok(self.wrap(self.exp[(self.order() / 3) as usize]))
    }

    /// The exponent k with xi^k = x; errors on x = 0.
    pub fn discrete_log(&self, x: FieldElement) -> Result<u32> {
        let bits = self.check(x)?;
        if bits == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[bits as usize])
    }

    /// Unchecked product on raw coordinate bits (both must be < 2^n).
    #[inline]
    pub fn mul_raw(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let order = self.order();
        let mut e = self.log[x as usize] + self.log[y as usize];
        if e >= order {
            e -= order;
        }
        self.exp[e as usize]
    }

    /// Unchecked inverse on raw coordinate bits, with inv_raw(0) = 0.
    #[inline]
    pub fn inv_raw(&self, x: u32) -> u32 {
        if x == 0 {
            return 0;
        }
        let order = self.order();
        let e = self.log[x as usize];
        if e == 0 {
            1
        } else {
            self.exp[(order - e) as usize]
        }
    }

    /// Unchecked square-and-multiply on raw coordinate bits.
    pub fn pow_raw(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Unchecked absolute trace on raw coordinate bits.
    #[inline]
    pub fn trace_raw(&self, x: u32) -> u8 {
        ((x & self.trace_mask).count_ones() & 1) as u8
    }

    /// xi^e on raw values (e reduced mod 2^n - 1).
    #[inline]
    pub fn exp_raw(&self, e: u32) -> u32 {
        self.exp[(e % self.order()) as usize]
    }

    /// Discrete log on raw nonzero coordinate bits.
    #[inline]
    pub fn log_raw(&self, x: u32) -> u32 {
        debug_assert!(x != 0);
        self.log[x as usize]
    }

    /// Reference inversion via x^(2^n - 2); used to cross-check the table route.
    pub fn inv_by_pow(&self, x: FieldElement) -> Result<FieldElement> {
        let bits = self.check(x)?;
        Ok(self.wrap(self.pow_raw(bits, (1u64 << self.n) - 2)))
    }

    /// Reference inversion via extended Euclid on the polynomial representation.
    pub fn inv_by_euclid(&self, x: FieldElement) -> Result<FieldElement> {
        let bits = self.check(x)?;
        if bits == 0 {
            return Ok(self.zero());
        }
        // Invariant: t0 * x == r0 and t1 * x == r1 (mod poly).
        let mut r0 = u64::from(self.poly);
        let mut r1 = u64::from(bits);
        let mut t0 = 0u64;
        let mut t1 = 1u64;
        while r1 != 0 {
            // Polynomial division r0 = q * r1 + r.
            let mut q = 0u64;
            let mut r = r0;
            while r != 0 && poly_degree(r) >= poly_degree(r1) {
                let shift = (poly_degree(r) - poly_degree(r1)) as u32;
                q |= 1u64 << shift;
                r ^= r1 << shift;
            }
            (r0, r1) = (r1, r);
            (t0, t1) = (t1, t0 ^ poly_clmul(q, t1));
        }
        debug_assert_eq!(r0, 1, "gcd(x, poly) must be 1 in a field");
        let mut r = t0;
        while poly_degree(r) >= self.n as i32 {
            r ^= u64::from(self.poly) << (poly_degree(r) - self.n as i32);
        }
        Ok(self.wrap(r as u32))
    }

    /// Serializes to the text config format `n=<int>, poly=<hex>, xi=<hex>`.
    pub fn to_config_string(&self) -> String {
        format!("n={}, poly={:x}, xi={:x}", self.n, self.poly, self.xi)
    }

    /// Parses the text config format produced by [`FieldSpec::to_config_string`].
    pub fn from_config_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut poly = None;
        let mut xi = None;
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
            let value = value.trim();
            match key.trim() {
                "n" => {
                    n = Some(value.parse::<u32>().map_err(|e| {
                        Error::Parse(format!("bad degree `{value}`: {e}"))
                    })?)
                }
                "poly" => poly = Some(parse_hex(value)?),
                "xi" => xi = Some(parse_hex(value)?),
                other => return Err(Error::Parse(format!("unknown field config key `{other}`"))),
            }
        }
        match (n, poly, xi) {
            (Some(n), Some(poly), Some(xi)) => FieldSpec::new(n, poly, xi),
            _ => Err(Error::Parse(
                "field config requires n=, poly= and xi= entries".into(),
            )),
        }
    }
}

pub(crate) fn parse_hex(s: &str) -> Result<u32> {
    let t = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    u32::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("bad hex value `{s}`: {e}")))
}
