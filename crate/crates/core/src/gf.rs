//! Arithmetic in GF(q) for prime powers q up to 2^16.
//!
//! Elements are the integers `0..q`. For q = p^e with e > 1 the base-p digits
//! of an element are the coefficients (constant term first) of a polynomial
//! reduced modulo a fixed monic irreducible of degree e. The modulus is the
//! lexicographically least one, comparing coefficients from degree e-1 down
//! to the constant term, so every run builds the same field.

use std::fmt;
use std::ops::{Mul, Neg};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element, `0..q`.
pub type Elem = u32;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Fields up to this order get full operation tables.
const TABLE_LIMIT: u32 = 256;

/// Value of the quadratic character on a nonzero element or a symmetric
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Character {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Character {
    pub const BOTH: [Character; 2] = [Character::Plus, Character::Minus];

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        match self {
            Character::Plus => 1,
            Character::Minus => -1,
        }
    }

    pub fn from_sign(sign: i32) -> Self {
        if sign >= 0 {
            Character::Plus
        } else {
            Character::Minus
        }
    }

    /// Index used by per-character tables: `+` is 0, `-` is 1.
    pub fn index(self) -> usize {
        match self {
            Character::Plus => 0,
            Character::Minus => 1,
        }
    }
}

impl Mul for Character {
    type Output = Character;

    fn mul(self, rhs: Character) -> Character {
        if self == rhs {
            Character::Plus
        } else {
            Character::Minus
        }
    }
}

impl Neg for Character {
    type Output = Character;

    fn neg(self) -> Character {
        self * Character::Minus
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Character::Plus => "+",
            Character::Minus => "-",
        })
    }
}

impl std::str::FromStr for Character {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "+" | "plus" | "+1" | "1" => Ok(Character::Plus),
            "-" | "minus" | "-1" => Ok(Character::Minus),
            other => Err(format!("unknown character {other:?}, expected + or -")),
        }
    }
}

/// The four primitive operations exposed by [`FieldSpec::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

struct FieldInner {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
    /// `squares[x]` is true iff x is a nonzero square.
    squares: Vec<bool>,
}

/// The finite field GF(q). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("q", &self.inner.q)
            .field("p", &self.inner.p)
            .field("e", &self.inner.e)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.q == other.inner.q && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldSpec {}

/// Splits `q` as `p^e`, or returns `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Builds GF(q).
pub fn make_field(q: u64) -> Result<FieldSpec> {
    FieldSpec::new(q)
}

impl FieldSpec {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        let (p, q) = (p as u32, q as u32);
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, e)
        };
        let mut inner = FieldInner {
            q,
            p,
            e,
            modulus,
            tables: None,
            squares: Vec::new(),
        };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        let mut squares = vec![false; q as usize];
        for x in 1..q {
            squares[slow_mul(&inner, x, x) as usize] = true;
        }
        inner.squares = squares;
        Ok(FieldSpec {
            inner: Arc::new(inner),
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    #[inline]
    pub fn is_odd(&self) -> bool {
        self.inner.p != 2
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.inner.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.inner.p as i64) as Elem
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        x < self.inner.q
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.inner.tables {
            Some(t) => t.add[(x * self.inner.q + y) as usize] as Elem,
            None => slow_add(&self.inner, x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        match &self.inner.tables {
            Some(t) => t.neg[x as usize] as Elem,
            None => slow_neg(&self.inner, x),
        }
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.inner.tables {
            Some(t) => t.mul[(x * self.inner.q + y) as usize] as Elem,
            None => slow_mul(&self.inner, x, y),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn try_inv(&self, x: Elem) -> Option<Elem> {
        if x == 0 {
            return None;
        }
        Some(match &self.inner.tables {
            Some(t) => t.inv[x as usize] as Elem,
            None => slow_inv(&self.inner, x),
        })
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        self.try_inv(x).ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Elem, mut exp: u64) -> Elem {
        let mut base = x;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Checked entry point for a single operation.
    pub fn arith(&self, op: ArithOp, x: Elem, y: Option<Elem>) -> Result<Elem> {
        let check = |v: Elem| {
            if self.contains(v) {
                Ok(v)
            } else {
                Err(Error::OutOfRange(format!("element {v} not in GF({})", self.q())))
            }
        };
        let x = check(x)?;
        let binary = |y: Option<Elem>| {
            y.ok_or_else(|| Error::OutOfRange("binary operation needs two operands".into()))
                .and_then(check)
        };
        match op {
            ArithOp::Add => Ok(self.add(x, binary(y)?)),
            ArithOp::Mul => Ok(self.mul(x, binary(y)?)),
            ArithOp::Neg => Ok(self.neg(x)),
            ArithOp::Inv => self.inv(x),
        }
    }

    /// True iff `x` is a nonzero square.
    #[inline]
    pub fn is_nonzero_square(&self, x: Elem) -> bool {
        self.inner.squares[x as usize]
    }

    /// Quadratic character of a nonzero element (odd characteristic only).
    pub fn legendre_symbol(&self, x: Elem) -> Result<Character> {
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        if x == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(if self.is_nonzero_square(x) {
            Character::Plus
        } else {
            Character::Minus
        })
    }

    /// Euler's criterion, `x^((q-1)/2) == 1`; independent of the square table.
    pub fn euler_criterion(&self, x: Elem) -> Result<Character> {
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        if x == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(if self.pow(x, (self.q() as u64 - 1) / 2) == 1 {
            Character::Plus
        } else {
            Character::Minus
        })
    }

    /// Smallest element (as an integer) that is not a square; odd q only.
    pub fn least_nonsquare(&self) -> Option<Elem> {
        if !self.is_odd() {
            return None;
        }
        (1..self.q()).find(|&x| !self.is_nonzero_square(x))
    }
}

fn digits(inner: &FieldInner, mut x: u32) -> Vec<u32> {
    let mut d = vec![0; inner.e as usize];
    for slot in d.iter_mut() {
        *slot = x % inner.p;
        x /= inner.p;
    }
    d
}

fn undigits(inner: &FieldInner, d: &[u32]) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * inner.p + c)
}

fn slow_add(inner: &FieldInner, x: u32, y: u32) -> u32 {
    if inner.e == 1 {
        return (x + y) % inner.p;
    }
    let (a, b) = (digits(inner, x), digits(inner, y));
    let s: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % inner.p).collect();
    undigits(inner, &s)
}

fn slow_neg(inner: &FieldInner, x: u32) -> u32 {
    if inner.e == 1 {
        return (inner.p - x) % inner.p;
    }
    let a = digits(inner, x);
    let s: Vec<u32> = a.iter().map(|u| (inner.p - u) % inner.p).collect();
    undigits(inner, &s)
}

fn slow_mul(inner: &FieldInner, x: u32, y: u32) -> u32 {
    let p = inner.p as u64;
    if inner.e == 1 {
        return ((x as u64 * y as u64) % p) as u32;
    }
    let (a, b) = (digits(inner, x), digits(inner, y));
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &u) in a.iter().enumerate() {
        for (j, &v) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
        }
    }
    let e = inner.e as usize;
    // Reduce by the monic modulus from the top down.
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (k, &m) in inner.modulus.iter().enumerate().take(e) {
            let idx = deg - e + k;
            prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
        }
        prod[deg] = 0;
    }
    let d: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
    undigits(inner, &d)
}

fn slow_inv(inner: &FieldInner, x: u32) -> u32 {
    // x^(q-2)
    let mut exp = inner.q as u64 - 2;
    let mut base = x;
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = slow_mul(inner, acc, base);
        }
        base = slow_mul(inner, base, base);
        exp >>= 1;
    }
    acc
}

fn build_tables(inner: &FieldInner) -> Tables {
    let q = inner.q as usize;
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    for x in 0..q {
        neg[x] = slow_neg(inner, x as u32) as u8;
        for y in 0..q {
            add[x * q + y] = slow_add(inner, x as u32, y as u32) as u8;
            let m = slow_mul(inner, x as u32, y as u32);
            mul[x * q + y] = m as u8;
            if m == 1 {
                inv[x] = y as u8;
            }
        }
    }
    Tables { add, mul, neg, inv }
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let p = p as u64;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (k, &c) in b.iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p - lead) * c as u64 % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `code` (constant term least significant).
fn monic_from_code(mut code: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        c.push((code % p as u64) as u32);
        code /= p as u64;
    }
    c.push(1);
    c
}

/// Irreducibility by trial division against every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for code in 0..(p as u64).pow(d) {
            let divisor = monic_from_code(code, d, p);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    (0..(p as u64).pow(e))
        .map(|code| monic_from_code(code, e, p))
        .find(|poly| is_irreducible(poly, p))
        .expect("an irreducible polynomial exists in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let f9 = make_field(9).unwrap();
        assert_eq!((f9.characteristic(), f9.degree()), (3, 2));
        let f7 = make_field(7).unwrap();
        assert_eq!((f7.characteristic(), f7.degree()), (7, 1));
        assert_eq!(make_field(6).unwrap_err(), Error::NotAPrimePower(6));
        assert_eq!(make_field(1).unwrap_err(), Error::NotAPrimePower(1));
        assert!(make_field(1 << 17).is_err());
    }

    #[test]
    fn least_moduli() {
        assert_eq!(make_field(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(make_field(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(25).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn arith_examples() {
        let f5 = make_field(5).unwrap();
        assert_eq!(f5.arith(ArithOp::Mul, 3, Some(4)).unwrap(), 2);
        let f4 = make_field(4).unwrap();
        for x in f4.elements() {
            assert_eq!(f4.arith(ArithOp::Add, x, Some(x)).unwrap(), 0);
        }
        let f7 = make_field(7).unwrap();
        assert_eq!(f7.arith(ArithOp::Inv, 3, None).unwrap(), 5);
        assert_eq!(f7.arith(ArithOp::Inv, 0, None), Err(Error::DivisionByZero));
        assert!(f7.arith(ArithOp::Add, 9, Some(1)).is_err());
    }

    #[test]
    fn legendre_examples() {
        let f5 = make_field(5).unwrap();
        assert_eq!(f5.legendre_symbol(4).unwrap(), Character::Plus);
        let f3 = make_field(3).unwrap();
        // brute force: squares mod 3
        let squares: Vec<u32> = (1..3).map(|y| y * y % 3).collect();
        assert!(!squares.contains(&2));
        assert_eq!(f3.legendre_symbol(2).unwrap(), Character::Minus);
        let f9 = make_field(9).unwrap();
        let minus_one = f9.neg(1);
        let square_set: Vec<u32> = f9.elements().skip(1).map(|y| f9.mul(y, y)).collect();
        for z in 1..9 {
            if f9.pow(z, 4) == minus_one {
                assert!(!square_set.contains(&z));
                assert_eq!(f9.legendre_symbol(z).unwrap(), Character::Minus);
            }
        }
        assert_eq!(make_field(4).unwrap().legendre_symbol(1), Err(Error::EvenCharacteristic));
        assert_eq!(f5.legendre_symbol(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = make_field(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn tables_match_polynomial_arithmetic() {
        // 243 = 3^5 has tables, 343 = 7^3 does not; compare against direct paths.
        for q in [243u64, 256, 343, 1024] {
            let f = make_field(q).unwrap();
            let inner = &f.inner;
            for x in (0..f.q()).step_by(7) {
                for y in (0..f.q()).step_by(11) {
                    assert_eq!(f.mul(x, y), slow_mul(inner, x, y));
                    assert_eq!(f.add(x, y), slow_add(inner, x, y));
                }
                if x != 0 {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn character_multiplicative_and_balanced() {
        for q in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49] {
            let f = make_field(q).unwrap();
            let plus = (1..f.q())
                .filter(|&x| f.legendre_symbol(x).unwrap() == Character::Plus)
                .count();
            assert_eq!(plus as u32, (f.q() - 1) / 2);
            for x in 1..f.q() {
                let cx = f.legendre_symbol(x).unwrap();
                assert_eq!(cx, f.euler_criterion(x).unwrap());
                assert_eq!(cx * f.legendre_symbol(f.inv(x).unwrap()).unwrap(), Character::Plus);
                for y in 1..f.q() {
                    assert_eq!(f.legendre_symbol(f.mul(x, y)).unwrap(), cx * f.legendre_symbol(y).unwrap());
                }
            }
        }
    }

    #[test]
    fn chosen_moduli_are_irreducible() {
        for q in [4u64, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125, 128, 243, 256] {
            let f = make_field(q).unwrap();
            assert!(is_irreducible(f.modulus(), f.characteristic()));
        }
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn character_group() {
        use Character::*;
        assert_eq!(Plus * Plus, Plus);
        assert_eq!(Plus * Minus, Minus);
        assert_eq!(Minus * Minus, Plus);
        assert_eq!(-Plus, Minus);
    }
}
