//! Exact coefficient fields: the rationals, odd prime fields `F_p`, and the
//! quadratic extensions `F_{p^2} = F_p[w]/(w^2 - g)` with `g` the smallest
//! non-square >= 2.
//!
//! Every [`Scalar`] carries its field tag and is kept in canonical form
//! (reduced fraction; residues in `[0, p)`), so equality is structural.
//! Characteristic 2 is rejected at field construction.

use crate::Error;
use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;

/// Largest allowed prime modulus. Residue arithmetic stays in `u64` with
/// `u128` intermediates, and `p^2 - 1` fits in `u128` exponents.
pub const MAX_PRIME: u64 = 1 << 31;

/// Tag describing one of the supported exact fields.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    /// The field of rational numbers.
    Rational,
    /// The prime field `F_p`, `p` an odd prime.
    Prime(u64),
    /// The quadratic extension `F_{p^2}`, realized as `F_p[w]/(w^2 - g)`.
    Quadratic(u64),
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u128, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0.
    mod_pow(a, (p - 2) as u128, p)
}

/// Smallest quadratic non-residue `g >= 2` of `F_p`; generator of the
/// extension `F_{p^2} = F_p[w]/(w^2 - g)`.
pub fn ext_generator(p: u64) -> u64 {
    let mut g = 2;
    while mod_pow(g, ((p - 1) / 2) as u128, p) == 1 {
        g += 1;
    }
    g
}

impl FieldSpec {
    pub fn rational() -> FieldSpec {
        FieldSpec::Rational
    }

    pub fn prime(p: u64) -> Result<FieldSpec, Error> {
        if p == 2 {
            return Err(Error::CharTwo);
        }
        if p > MAX_PRIME || !is_odd_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn quadratic(p: u64) -> Result<FieldSpec, Error> {
        FieldSpec::prime(p)?;
        Ok(FieldSpec::Quadratic(p))
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) | FieldSpec::Quadratic(p) => *p,
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(*p as u128),
            FieldSpec::Quadratic(p) => Some(*p as u128 * *p as u128),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Prime {
                p: *p,
                a: n.rem_euclid(*p as i64) as u64,
            },
            FieldSpec::Quadratic(p) => Scalar::Quadratic {
                p: *p,
                g: ext_generator(*p),
                a: n.rem_euclid(*p as i64) as u64,
                b: 0,
            },
        }
    }

    /// The extension element `w` with `w^2 = g` (finite quadratic fields only).
    pub fn ext_element(&self) -> Option<Scalar> {
        match self {
            FieldSpec::Quadratic(p) => Some(Scalar::Quadratic {
                p: *p,
                g: ext_generator(*p),
                a: 0,
                b: 1,
            }),
            _ => None,
        }
    }

    /// Uniform random scalar. For the rationals this draws a small fraction,
    /// which is all the randomized identity checks need.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rational => {
                let n = rng.gen_range(-9i64..=9);
                let d = rng.gen_range(1i64..=4);
                Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            FieldSpec::Prime(p) => Scalar::Prime {
                p: *p,
                a: rng.gen_range(0..*p),
            },
            FieldSpec::Quadratic(p) => Scalar::Quadratic {
                p: *p,
                g: ext_generator(*p),
                a: rng.gen_range(0..*p),
                b: rng.gen_range(0..*p),
            },
        }
    }

    /// Nonzero uniform random scalar.
    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// The prime field and its quadratic extension share arithmetic; this is
    /// the extension tag a prime field promotes into.
    pub fn extension(&self) -> Result<FieldSpec, Error> {
        match self {
            FieldSpec::Prime(p) => Ok(FieldSpec::Quadratic(*p)),
            FieldSpec::Quadratic(p) => Ok(FieldSpec::Quadratic(*p)),
            FieldSpec::Rational => Err(Error::Unsupported(
                "no canonical quadratic extension of the rationals".into(),
            )),
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{}", p),
            FieldSpec::Quadratic(p) => write!(f, "F{}^2", p),
        }
    }
}

/// An element of one of the supported exact fields, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u64, a: u64 },
    Quadratic { p: u64, g: u64, a: u64, b: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime { p, .. } => FieldSpec::Prime(*p),
            Scalar::Quadratic { p, .. } => FieldSpec::Quadratic(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { a, .. } => *a == 0,
            Scalar::Quadratic { a, b, .. } => *a == 0 && *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { a, .. } => *a == 1,
            Scalar::Quadratic { a, b, .. } => *a == 1 && *b == 0,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), Error> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Prime { p, a }, Scalar::Prime { a: c, .. }) => Scalar::Prime {
                p: *p,
                a: (a + c) % p,
            },
            (Scalar::Quadratic { p, g, a, b }, Scalar::Quadratic { a: c, b: d, .. }) => {
                Scalar::Quadratic {
                    p: *p,
                    g: *g,
                    a: (a + c) % p,
                    b: (b + d) % p,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Prime { p, a }, Scalar::Prime { a: c, .. }) => Scalar::Prime {
                p: *p,
                a: ((*a as u128 * *c as u128) % *p as u128) as u64,
            },
            (Scalar::Quadratic { p, g, a, b }, Scalar::Quadratic { a: c, b: d, .. }) => {
                let p128 = *p as u128;
                let ac = (*a as u128 * *c as u128) % p128;
                let bd = (*b as u128 * *d as u128) % p128;
                let ad = (*a as u128 * *d as u128) % p128;
                let bc = (*b as u128 * *c as u128) % p128;
                Scalar::Quadratic {
                    p: *p,
                    g: *g,
                    a: ((ac + bd * *g as u128 % p128) % p128) as u64,
                    b: ((ad + bc) % p128) as u64,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Prime { p, a } => Scalar::Prime {
                p: *p,
                a: if *a == 0 { 0 } else { p - a },
            },
            Scalar::Quadratic { p, g, a, b } => Scalar::Quadratic {
                p: *p,
                g: *g,
                a: if *a == 0 { 0 } else { p - a },
                b: if *b == 0 { 0 } else { p - b },
            },
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.try_add(&other.neg())
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Prime { p, a } => Scalar::Prime {
                p: *p,
                a: mod_inv(*a, *p),
            },
            Scalar::Quadratic { p, g, a, b } => {
                // (a + bw)^-1 = (a - bw) / (a^2 - g b^2); the norm is nonzero
                // because g is a non-square.
                let p128 = *p as u128;
                let a2 = (*a as u128 * *a as u128) % p128;
                let gb2 = (*g as u128 * ((*b as u128 * *b as u128) % p128)) % p128;
                let norm = ((a2 + p128 - gb2 % p128) % p128) as u64;
                let ninv = mod_inv(norm, *p) as u128;
                Scalar::Quadratic {
                    p: *p,
                    g: *g,
                    a: ((*a as u128 * ninv) % p128) as u64,
                    b: (((p - b) as u128 % p128 * ninv) % p128) as u64,
                }
            }
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u128) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).unwrap();
            }
            base = base.try_mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Euler criterion / exact square test.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    return false;
                }
                let (n, d) = (r.numer(), r.denom());
                let ns = n.sqrt();
                let ds = d.sqrt();
                &(&ns * &ns) == n && &(&ds * &ds) == d
            }
            _ => {
                let order = self.field().order().unwrap();
                self.pow((order - 1) / 2).is_one()
            }
        }
    }

    /// Canonical square root if one exists in the element's own field.
    ///
    /// Finite-field roots are normalized to the lexicographically smaller of
    /// `r` and `-r` so that repeated runs are reproducible.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let ns = r.numer().sqrt();
                let ds = r.denom().sqrt();
                if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
                    Some(Scalar::Rational(BigRational::new(ns, ds)))
                } else {
                    None
                }
            }
            Scalar::Prime { p, a } => fp_sqrt(*a, *p).map(|r| Scalar::Prime { p: *p, a: r }),
            Scalar::Quadratic { p, g, a, b } => {
                if *b == 0 {
                    // Roots of base-field elements have a closed form: either
                    // sqrt(a) in F_p, or w * sqrt(a/g) when a is a non-square.
                    if let Some(r) = fp_sqrt(*a, *p) {
                        return Some(Scalar::Quadratic {
                            p: *p,
                            g: *g,
                            a: r,
                            b: 0,
                        });
                    }
                    let ag = ((*a as u128 * mod_inv(*g, *p) as u128) % *p as u128) as u64;
                    let r = fp_sqrt(ag, *p).expect("a/g must be a square when a is not");
                    return Some(canonical_root(Scalar::Quadratic {
                        p: *p,
                        g: *g,
                        a: 0,
                        b: r,
                    }));
                }
                fq_sqrt(self).map(canonical_root)
            }
        }
    }

    /// Embed into `to`; only identity embeddings and `F_p -> F_{p^2}` with the
    /// same `p` are supported.
    pub fn promote(&self, to: FieldSpec) -> Result<Scalar, Error> {
        if self.field() == to {
            return Ok(self.clone());
        }
        match (self, to) {
            (Scalar::Prime { p, a }, FieldSpec::Quadratic(q)) if *p == q => Ok(Scalar::Quadratic {
                p: *p,
                g: ext_generator(*p),
                a: *a,
                b: 0,
            }),
            _ => Err(Error::FieldMismatch),
        }
    }

    /// Inverse of `promote` when the value lies in the base field.
    pub fn demote(&self) -> Option<Scalar> {
        match self {
            Scalar::Quadratic { p, a, b, .. } if *b == 0 => Some(Scalar::Prime { p: *p, a: *a }),
            _ => None,
        }
    }
}

fn canonical_root(r: Scalar) -> Scalar {
    let n = r.neg();
    let key = |s: &Scalar| match s {
        Scalar::Prime { a, .. } => (0u64, *a),
        Scalar::Quadratic { a, b, .. } => (*b, *a),
        Scalar::Rational(_) => (0, 0),
    };
    if key(&n) < key(&r) {
        n
    } else {
        r
    }
}

/// Tonelli-Shanks over `F_p`, with the smaller of the two roots returned.
fn fp_sqrt(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if mod_pow(a, ((p - 1) / 2) as u128, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        mod_pow(a, ((p + 1) / 4) as u128, p)
    } else {
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = ext_generator(p); // any non-residue works
        let mut m = s;
        let mut c = mod_pow(z, q as u128, p);
        let mut t = mod_pow(a, q as u128, p);
        let mut r = mod_pow(a, (q.div_ceil(2)) as u128, p);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = ((t2 as u128 * t2 as u128) % p as u128) as u64;
                i += 1;
            }
            let b = mod_pow(c, 1u128 << (m - i - 1), p);
            m = i;
            c = ((b as u128 * b as u128) % p as u128) as u64;
            t = ((t as u128 * c as u128) % p as u128) as u64;
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        r
    };
    Some(r.min(p - r))
}

/// Tonelli-Shanks in the cyclic group `F_{p^2}^*` of order `p^2 - 1`.
fn fq_sqrt(x: &Scalar) -> Option<Scalar> {
    let field = x.field();
    let order = field.order().unwrap();
    let half = (order - 1) / 2;
    if !x.pow(half).is_one() {
        return None;
    }
    let mut q = order - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    // Deterministic search for a non-residue k + w.
    let w = field.ext_element().unwrap();
    let mut z = w.clone();
    let mut k = 0i64;
    while z.pow(half).is_one() {
        k += 1;
        z = w.try_add(&field.from_i64(k)).unwrap();
    }
    let mut m = s;
    let mut c = z.pow(q);
    let mut t = x.pow(q);
    let mut r = x.pow(q.div_ceil(2));
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = t2.try_mul(&t2).unwrap();
            i += 1;
        }
        let b = c.pow(1u128 << (m - i - 1));
        m = i;
        c = b.try_mul(&b).unwrap();
        t = t.try_mul(&c).unwrap();
        r = r.try_mul(&b).unwrap();
    }
    Some(r)
}

/// Squarefree part of the rational square class of `r` (numerator times
/// denominator with all square factors removed). Used to report which
/// quadratic extension a rank-3 splitting over the rationals would need.
pub fn rational_square_class(r: &BigRational) -> BigInt {
    let mut n = r.numer() * r.denom();
    if n.is_zero() {
        return BigInt::zero();
    }
    let negative = n.is_negative();
    n = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= limit {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    // Whatever survives trial division is either 1, a prime, or has only
    // large factors; keep it unless it is a perfect square.
    if !n.is_one() {
        let s = n.sqrt();
        if &s * &s != n {
            out *= &n;
        }
    }
    if negative {
        out = -out;
    }
    out
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", r),
            Scalar::Prime { a, .. } => write!(f, "{}", a),
            Scalar::Quadratic { a, b, .. } => {
                if *b == 0 {
                    write!(f, "{}", a)
                } else if *a == 0 {
                    if *b == 1 {
                        write!(f, "w")
                    } else {
                        write!(f, "{}w", b)
                    }
                } else if *b == 1 {
                    write!(f, "{}+w", a)
                } else {
                    write!(f, "{}+{}w", a, b)
                }
            }
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
