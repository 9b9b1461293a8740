//! Closed forms and recursions for restricted matrix counts, evaluated
//! exactly at an integer q.
//!
//! Intermediate values are rationals because several recursions carry
//! factors such as `1/q` and `1/2`; every value that counts matrices is
//! checked to be an integer before it is returned, so a transcription slip
//! surfaces as [`Error::NonIntegral`] rather than as a silently rounded
//! number.
//!
//! Notation: `[n]_q = 1 + q + … + q^{n-1}`, `[n]_q! = [1]_q⋯[n]_q` and
//! `[n]_q!! = [n]_q[n-2]_q⋯` ending at `[1]_q` or `[2]_q`, with
//! `[0]_q!! = [-1]_q!! = 1`. For odd q, `ψ` is the quadratic character and
//! `ψ(-1) = +1` exactly when `q ≡ 1 (mod 4)`.
//!
//! ```
//! use qmatcount::formulas::{Evaluator, Method};
//!
//! let ev = Evaluator::new(2).unwrap();
//! // Invertible 3×3 matrices over GF(2) with zero diagonal.
//! assert_eq!(ev.f_rect(3, 3, Method::Closed).unwrap(), 14.into());
//! assert_eq!(ev.f_rect(3, 3, Method::Recursive).unwrap(), 14.into());
//! ```

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{prime_power, Character};

type Q = BigRational;

/// Closed form or recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Closed,
    Recursive,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Closed => "closed",
            Method::Recursive => "recursive",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "closed" => Ok(Method::Closed),
            "recursive" => Ok(Method::Recursive),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QBasic {
    Number,
    Factorial,
    DoubleFactorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymKind {
    /// `sym(n)`: invertible symmetric n×n.
    Invertible,
    /// `sym(n, r)`: symmetric of rank r.
    Rank,
    /// `sym^ψ(n, r)`: symmetric of rank r and character ψ.
    RankCharacter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZyKind {
    /// Solutions of `Σ aᵢbᵢ = 0` in 2N unknowns.
    Z,
    /// Solutions of `Σ aᵢbᵢ = α` for a fixed `α ≠ 0`.
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitKind {
    Derangement,
    PartialInvolution,
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: i64) -> Q {
    Q::from_integer(int(n))
}

fn half() -> Q {
    Q::new(int(1), int(2))
}

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * int(n - i) / int(i + 1))
}

fn sign(c: Character) -> i64 {
    c.sign() as i64
}

/// Memoizing evaluator for a fixed integer q ≥ 2.
///
/// Formulas that are polynomial identities accept any q ≥ 2; those that
/// involve the quadratic character require an odd prime power.
pub struct Evaluator {
    q: i64,
    qq: Q,
    /// `ψ(-1)` as ±1, for odd q.
    psi_minus_one: Option<i64>,
    memo_f: RefCell<HashMap<(i64, i64), Q>>,
    memo_matz: RefCell<HashMap<(i64, i64, i64), Q>>,
    memo_g: RefCell<HashMap<(i64, i64), Q>>,
    memo_sk: RefCell<HashMap<(i64, i64), Q>>,
    memo_sym0: RefCell<HashMap<(i64, i64, i64, Character), Q>>,
    memo_symz: RefCell<HashMap<(i64, i64, Character), Q>>,
}

impl fmt::Debug for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Evaluator(q={})", self.q)
    }
}

impl Evaluator {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::OutOfRange(format!("q = {q} must be at least 2")));
        }
        let q = i64::try_from(q).map_err(|_| Error::OutOfRange(format!("q = {q} too large")))?;
        let odd_prime_power = q % 2 == 1 && prime_power(q as u64).is_some();
        Ok(Evaluator {
            q,
            qq: rat(q),
            psi_minus_one: odd_prime_power.then_some(if q % 4 == 1 { 1 } else { -1 }),
            memo_f: RefCell::default(),
            memo_matz: RefCell::default(),
            memo_g: RefCell::default(),
            memo_sk: RefCell::default(),
            memo_sym0: RefCell::default(),
            memo_symz: RefCell::default(),
        })
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `q^e` for any integer e.
    fn qp(&self, e: i64) -> Q {
        if e >= 0 {
            Q::from_integer(int(self.q).pow(e as u32))
        } else {
            Q::new(int(1), int(self.q).pow((-e) as u32))
        }
    }

    fn q_number(&self, n: i64) -> Q {
        (0..n).fold(Q::zero(), |acc, i| acc + self.qp(i))
    }

    fn q_factorial(&self, n: i64) -> Q {
        (1..=n).fold(Q::one(), |acc, k| acc * self.q_number(k))
    }

    fn q_double_factorial(&self, n: i64) -> Q {
        let mut acc = Q::one();
        let mut k = n;
        while k > 0 {
            acc *= self.q_number(k);
            k -= 2;
        }
        acc
    }

    fn integral(&self, what: impl FnOnce() -> String, v: Q) -> Result<BigInt> {
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegral {
                what: what(),
                value: v.to_string(),
            })
        }
    }

    /// ψ(-1) as ±1; errors unless q is an odd prime power.
    fn psi_m1(&self) -> Result<i64> {
        if self.q % 2 == 0 {
            return Err(Error::EvenCharacteristic);
        }
        self.psi_minus_one.ok_or(Error::NotAPrimePower(self.q as u64))
    }

    /// ψ(-1)^e as ±1: `+1` exactly when `(-1)^e` is a square.
    fn psi_m1_pow(&self, e: i64) -> Result<i64> {
        let p = self.psi_m1()?;
        Ok(if e.rem_euclid(2) == 0 { 1 } else { p })
    }

    /// `[n]_q`, `[n]_q!` or `[n]_q!!`.
    pub fn q_basics(&self, kind: QBasic, n: i64) -> Result<BigInt> {
        let min = if kind == QBasic::DoubleFactorial { -1 } else { 0 };
        if n < min {
            return Err(Error::NegativeArgument(n));
        }
        let v = match kind {
            QBasic::Number => self.q_number(n),
            QBasic::Factorial => self.q_factorial(n),
            QBasic::DoubleFactorial => self.q_double_factorial(n),
        };
        Ok(v.to_integer())
    }

    /// Number of k×n matrices of rank k with `A_ii = 0` for `i ≤ k`.
    pub fn f_rect(&self, k: i64, n: i64, method: Method) -> Result<BigInt> {
        if k < 1 || k > n {
            return Err(Error::OutOfRange(format!("f({k},{n}) needs 1 <= k <= n")));
        }
        let v = match method {
            Method::Recursive => self.f_rec(k, n),
            Method::Closed => self.f_closed(k, n),
        };
        self.integral(|| format!("f({k},{n})"), v)
    }

    fn f_closed(&self, k: i64, n: i64) -> Q {
        let sum = (0..=k).fold(Q::zero(), |acc, i| {
            let term = Q::from_integer(binomial(k, i)) * self.q_factorial(n - i) / self.q_factorial(n - k);
            if i % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        });
        self.qp((k - 1) * (k - 2) / 2) * (&self.qq - rat(1)).pow(k as i32) * self.qp(-1) * sum
    }

    fn f_rec(&self, k: i64, n: i64) -> Q {
        if let Some(v) = self.memo_f.borrow().get(&(k, n)) {
            return v.clone();
        }
        let v = if k == 1 {
            self.qp(n - 1) - rat(1)
        } else {
            let k0 = k - 1;
            self.qp(k0 - 1)
                * (&self.qq - rat(1))
                * (self.f_rec(k0, n) * self.q_number(n - k0) - self.f_rec(k0, n - 1))
        };
        self.memo_f.borrow_mut().insert((k, n), v.clone());
        v
    }

    /// Number of n×n matrices of rank r whose first k diagonal entries are
    /// zero, by recursion on k.
    pub fn matz_count(&self, n: i64, k: i64, r: i64) -> Result<BigInt> {
        if n < 0 || k < 0 || k > n || r < 0 || r > n {
            return Err(Error::OutOfRange(format!("matz({n},{k},{r}) needs 0 <= k, r <= n")));
        }
        let v = self.matz(n, k, r);
        self.integral(|| format!("matz({n},{k},{r})"), v)
    }

    fn matz(&self, n: i64, k: i64, r: i64) -> Q {
        if r > n || r < 0 {
            return Q::zero();
        }
        if r == 0 {
            return Q::one();
        }
        if let Some(v) = self.memo_matz.borrow().get(&(n, k, r)) {
            return v.clone();
        }
        let v = if k == 0 {
            let prod = (0..r).fold(Q::one(), |acc, i| acc * self.q_number(n - i));
            self.qp(r * (r - 1) / 2) * (&self.qq - rat(1)).pow(r as i32) / self.q_factorial(r) * &prod * &prod
        } else {
            let (n0, k0, r0) = (n - 1, k - 1, r - 1);
            self.qp(-1) * self.matz(n, k0, r) + (self.qp(r0 + 1) - self.qp(r0)) * self.matz(n0, k0, r)
                - (self.qp(r0) - self.qp(r0 - 1)) * self.matz(n0, k0, r0)
        };
        self.memo_matz.borrow_mut().insert((n, k, r), v.clone());
        v
    }

    /// Number of n×n matrices of rank r with zero diagonal.
    pub fn g_zero_diag(&self, n: i64, r: i64, method: Method) -> Result<BigInt> {
        if n < 1 || r < 0 || r > n {
            return Err(Error::OutOfRange(format!("g({n},{r}) needs 0 <= r <= n")));
        }
        let v = match method {
            Method::Recursive => self.g_rec(n, r),
            Method::Closed => self.g_closed(n, r),
        };
        self.integral(|| format!("g({n},{r})"), v)
    }

    fn g_rec(&self, n: i64, r: i64) -> Q {
        if r < 0 || r > n {
            return Q::zero();
        }
        if r == 0 {
            return Q::one();
        }
        if n == 1 {
            return Q::zero();
        }
        if let Some(v) = self.memo_g.borrow().get(&(n, r)) {
            return v.clone();
        }
        let (n0, r0) = (n - 1, r - 1);
        let a = (self.qp(n0) - self.qp(r0 - 1)).pow(2);
        let b = self.qp(2 * r0 + 1) + self.qp(r0 + 1) - self.qp(r0);
        let c = rat(2) * self.qp(n0 + r0) - self.qp(2 * r0) - self.qp(2 * r0 - 1) - self.qp(r0) + self.qp(r0 - 1);
        let v = a * self.g_rec(n0, r0 - 1) + b * self.g_rec(n0, r0 + 1) + c * self.g_rec(n0, r0);
        self.memo_g.borrow_mut().insert((n, r), v.clone());
        v
    }

    fn g_closed(&self, n: i64, r: i64) -> Q {
        let mut sum = Q::zero();
        for k in 0..=n - r {
            for i in 0..=n {
                let e = n * (n - 1) / 2 + k * (k - 1) / 2 - n * k - r;
                let mut term = self.qp(e) * Q::from_integer(binomial(n, i)) * self.q_factorial(n + k - i)
                    / (self.q_factorial(k).pow(2) * self.q_factorial(n - r - k));
                if (k + r + n + i) % 2 == 1 {
                    term = -term;
                }
                sum += term;
            }
        }
        (&self.qq - rat(1)).pow(r as i32) * sum
    }

    fn sym_inv(&self, n: i64) -> Q {
        let ceil = (n + 1) / 2;
        (1..=ceil).fold(self.qp(n * (n + 1) / 2), |acc, j| acc * (rat(1) - self.qp(1 - 2 * j)))
    }

    fn sym_rank(&self, n: i64, r: i64) -> Q {
        if r > n {
            return Q::zero();
        }
        let a = (1..=r / 2).fold(Q::one(), |acc, i| acc * self.qp(2 * i) / (self.qp(2 * i) - rat(1)));
        (0..r).fold(a, |acc, i| acc * (self.qp(n - i) - rat(1)))
    }

    fn sym_rank_char(&self, n: i64, r: i64, psi: Character) -> Result<Q> {
        let total = self.sym_rank(n, r);
        let plus = if r % 2 == 1 {
            &total * half()
        } else {
            let s = r / 2;
            (self.qp(s) + rat(self.psi_m1_pow(s)?)) / (rat(2) * self.qp(s)) * &total
        };
        Ok(match psi {
            Character::Plus => plus,
            Character::Minus => total - plus,
        })
    }

    /// Counts of symmetric matrices: invertible, by rank, or by rank and
    /// character (the last for odd prime powers only).
    pub fn sym_formulas(&self, kind: SymKind, n: i64, r: Option<i64>, psi: Option<Character>) -> Result<BigInt> {
        if n < 0 {
            return Err(Error::NegativeArgument(n));
        }
        let rank = || {
            r.filter(|&r| (0..=n).contains(&r))
                .ok_or_else(|| Error::OutOfRange(format!("rank {r:?} not in 0..={n}")))
        };
        let v = match kind {
            SymKind::Invertible => self.sym_inv(n),
            SymKind::Rank => self.sym_rank(n, rank()?),
            SymKind::RankCharacter => {
                if self.q % 2 == 0 {
                    return Err(Error::CharacterInEvenCharacteristic);
                }
                let psi = psi.ok_or_else(|| Error::OutOfRange("character required".into()))?;
                self.sym_rank_char(n, rank()?, psi)?
            }
        };
        self.integral(|| format!("sym {kind:?} n={n} r={r:?} psi={psi:?}"), v)
    }

    /// Symmetric n×n matrices of rank r with zero diagonal, for q a power
    /// of two.
    pub fn sym0_even_q(&self, n: i64, r: i64) -> Result<BigInt> {
        if self.q % 2 == 1 || prime_power(self.q as u64).is_none_or(|(p, _)| p != 2) {
            return Err(Error::OddCharacteristic);
        }
        if n < 0 || r < 0 || r > n {
            return Err(Error::OutOfRange(format!("sym0({n},{r}) needs 0 <= r <= n")));
        }
        if r % 2 == 1 {
            return Ok(BigInt::zero());
        }
        let s = r / 2;
        let a = (1..=s).fold(Q::one(), |acc, i| acc * self.qp(2 * i - 2) / (self.qp(2 * i) - rat(1)));
        let v = (0..2 * s).fold(a, |acc, i| acc * (self.qp(n - i) - rat(1)));
        self.integral(|| format!("sym0({n},{r})"), v)
    }

    /// Alternating n×n matrices of rank r.
    pub fn sk_count(&self, n: i64, r: i64, method: Method) -> Result<BigInt> {
        if n < 0 || r < 0 || r > n {
            return Err(Error::OutOfRange(format!("sk({n},{r}) needs 0 <= r <= n")));
        }
        if r % 2 == 1 {
            return Ok(BigInt::zero());
        }
        let v = match method {
            Method::Recursive => self.sk_rec(n, r),
            Method::Closed => {
                self.qp(r * (r - 2) / 4) * (&self.qq - rat(1)).pow((r / 2) as i32) * self.q_factorial(n)
                    / (self.q_factorial(n - r) * self.q_double_factorial(r))
            }
        };
        self.integral(|| format!("sk({n},{r})"), v)
    }

    fn sk_rec(&self, n: i64, r: i64) -> Q {
        if r < 0 || r > n || r % 2 == 1 {
            return Q::zero();
        }
        if r == 0 {
            return Q::one();
        }
        if let Some(v) = self.memo_sk.borrow().get(&(n, r)) {
            return v.clone();
        }
        let v = self.qp(r) * self.sk_rec(n - 1, r) + (self.qp(n - 1) - self.qp(r - 2)) * self.sk_rec(n - 1, r - 2);
        self.memo_sk.borrow_mut().insert((n, r), v.clone());
        v
    }

    /// Solutions of `x₁² + … + x_m² = 0` (ψ = +) or of the same form with
    /// the last coefficient a nonsquare (ψ = −).
    pub fn sq_table(&self, m: i64, psi: Character) -> Result<BigInt> {
        if m < 1 {
            return Err(Error::OutOfRange(format!("sq({m}) needs m >= 1")));
        }
        let eps = if m % 2 == 0 { self.psi_m1_pow(m / 2)? } else { self.psi_m1()? * 0 };
        let v = self.qp(m - 1) + rat(eps * sign(psi)) * (self.qp(m / 2) - self.qp(m / 2 - 1));
        self.integral(|| format!("sq({m})"), v)
    }

    /// `z(N, q)` or `y(N, q)`.
    pub fn bilinear_zy(&self, kind: ZyKind, big_n: i64) -> Result<BigInt> {
        if big_n < 1 {
            return Err(Error::OutOfRange(format!("N = {big_n} must be positive")));
        }
        let v = match kind {
            ZyKind::Z => self.qp(big_n - 1) * (self.qp(big_n) + &self.qq - rat(1)),
            ZyKind::Y => self.qp(big_n - 1) * (self.qp(big_n) - rat(1)),
        };
        Ok(v.to_integer())
    }

    /// Symmetric n×n matrices of rank r and character ψ whose first k
    /// diagonal entries vanish, by recursion on k.
    pub fn sym0_char_recursive(&self, n: i64, k: i64, r: i64, psi: Character) -> Result<BigInt> {
        self.psi_m1()?;
        if n < 0 || k < 0 || k > n || r < 0 || r > n {
            return Err(Error::OutOfRange(format!("sym0({n},{k},{r}) needs 0 <= k, r <= n")));
        }
        let v = self.sym0(n, k, r, psi)?;
        self.integral(|| format!("sym0^{psi}({n},{k},{r})"), v)
    }

    fn sym0(&self, n: i64, k: i64, r: i64, psi: Character) -> Result<Q> {
        if r > n {
            return Ok(Q::zero());
        }
        if r == 0 {
            return Ok(if psi == Character::Plus { Q::one() } else { Q::zero() });
        }
        if k == 0 {
            return self.sym_rank_char(n, r, psi);
        }
        if r == 1 {
            return Ok((self.qp(n - k) - rat(1)) * half());
        }
        if let Some(v) = self.memo_sym0.borrow().get(&(n, k, r, psi)) {
            return Ok(v.clone());
        }
        let (n0, k0, r0) = (n - 1, k - 1, r - 1);
        let first = self.qp(-1) * self.sym0(n, k0, r, psi)?;
        let v = if r0 % 2 == 1 {
            let t = rat(self.psi_m1_pow((r0 + 1) / 2)?);
            let both = self.sym0(n0, k0, r0, Character::Plus)? + self.sym0(n0, k0, r0, Character::Minus)?;
            let inner = both * half() + self.sym0(n0, k0, r0 + 1, psi)?;
            first + t * rat(sign(psi)) * inner * (self.qp((r0 + 1) / 2) - self.qp((r0 - 1) / 2))
        } else {
            let t = rat(self.psi_m1_pow(r0 / 2)?);
            let diff = self.sym0(n0, k0, r0, Character::Plus)? - self.sym0(n0, k0, r0, Character::Minus)?;
            first - t * half() * diff * (self.qp(r0 / 2) - self.qp(r0 / 2 - 1))
        };
        self.memo_sym0.borrow_mut().insert((n, k, r, psi), v.clone());
        Ok(v)
    }

    /// Invertible symmetric n×n matrices whose first k diagonal entries
    /// vanish, optionally of character ψ.
    pub fn symz_count(&self, n: i64, k: i64, psi: Option<Character>, method: Method) -> Result<BigInt> {
        self.psi_m1()?;
        if n < 0 || k < 0 || k > n {
            return Err(Error::OutOfRange(format!("symz({n},{k}) needs 0 <= k <= n")));
        }
        let v = match (method, psi) {
            (Method::Recursive, Some(c)) => self.symz_rec(n, k, c)?,
            (Method::Recursive, None) => self.symz_rec(n, k, Character::Plus)? + self.symz_rec(n, k, Character::Minus)?,
            (Method::Closed, Some(c)) => self.symz_closed_char(n, k, c)?,
            (Method::Closed, None) => self.symz_closed(n, k),
        };
        self.integral(|| format!("symz({n},{k}) psi={psi:?}"), v)
    }

    fn symz_rec(&self, n: i64, k: i64, psi: Character) -> Result<Q> {
        if n == 0 {
            return Ok(if psi == Character::Plus { Q::one() } else { Q::zero() });
        }
        if k == 0 {
            return self.sym_rank_char(n, n, psi);
        }
        if let Some(v) = self.memo_symz.borrow().get(&(n, k, psi)) {
            return Ok(v.clone());
        }
        let (n0, k0) = (n - 1, k - 1);
        let first = self.qp(-1) * self.symz_rec(n, k0, psi)?;
        let plus = self.symz_rec(n0, k0, Character::Plus)?;
        let minus = self.symz_rec(n0, k0, Character::Minus)?;
        let v = if n0 % 2 == 1 {
            let t = rat(self.psi_m1_pow((n0 + 1) / 2)?);
            first + t * rat(sign(psi)) * half() * (plus + minus) * (self.qp((n0 + 1) / 2) - self.qp((n0 - 1) / 2))
        } else {
            let t = rat(self.psi_m1_pow(n0 / 2)?);
            first - t * half() * (plus - minus) * (self.qp(n0 / 2) - self.qp(n0 / 2 - 1))
        };
        self.memo_symz.borrow_mut().insert((n, k, psi), v.clone());
        Ok(v)
    }

    fn symz_closed(&self, n: i64, k: i64) -> Q {
        if k == 0 {
            return self.sym_inv(n);
        }
        let m = n / 2;
        if n % 2 == 0 {
            return self.sym_inv(n) * self.qp(-k);
        }
        let q1 = &self.qq - rat(1);
        let top = (k - 1) / 2 + 1;
        let sum = (0..=top).fold(Q::zero(), |acc, j| {
            let bin = Q::from_integer(binomial(k, 2 * j - 1)) + &q1 * Q::from_integer(binomial(k, 2 * j));
            let term = q1.pow((m + j) as i32) * self.q_double_factorial(2 * m - 2 * j + 1) * bin;
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        });
        self.qp(m * m + m - k) * sum
    }

    fn symz_closed_char(&self, n: i64, k: i64, psi: Character) -> Result<Q> {
        if k == 0 {
            return self.sym_rank_char(n, n, psi);
        }
        let total = self.symz_closed(n, k);
        let plus = if n % 2 == 1 {
            &total * half()
        } else {
            let m = n / 2;
            let q1 = &self.qq - rat(1);
            let top = k / 2; // ⌈(k-1)/2⌉
            let sum = (0..=top).fold(Q::zero(), |acc, j| {
                let bin = Q::from_integer(binomial(k, 2 * j)) + &q1 * Q::from_integer(binomial(k, 2 * j + 1));
                let term = q1.pow((m + j) as i32) * self.q_double_factorial(2 * m - 2 * j - 1) * bin;
                if j % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            });
            let t = rat(self.psi_m1_pow(m)?);
            self.sym_inv(n) * half() * self.qp(-k) + t * self.qp(m * m - k) * half() * sum
        };
        Ok(match psi {
            Character::Plus => plus,
            Character::Minus => total - plus,
        })
    }
}

/// Classical counts the q-analogues reduce to at q = 1.
pub fn combinatorial_limits(kind: LimitKind, n: i64, r: Option<i64>) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    match kind {
        LimitKind::Derangement => {
            // d_n = n d_{n-1} + (-1)^n
            let mut d = BigInt::one();
            for i in 1..=n {
                d = d * int(i) + if i % 2 == 0 { int(1) } else { int(-1) };
            }
            Ok(d)
        }
        LimitKind::PartialInvolution => {
            let r = r.ok_or_else(|| Error::OutOfRange("rank required".into()))?;
            if r < 0 || r > n {
                return Err(Error::OutOfRange(format!("rank {r} not in 0..={n}")));
            }
            if r.is_odd() {
                return Err(Error::OddRank(r as usize));
            }
            let dfact = (1..r).step_by(2).fold(BigInt::one(), |acc, i| acc * int(i));
            Ok(binomial(n, r) * dfact)
        }
    }
}

/// True when `a ≡ b (mod m)`; a zero or unit modulus makes every pair
/// congruent only if it is ±1.
pub fn congruent(a: &BigInt, b: &BigInt, m: &BigInt) -> bool {
    if m.is_zero() {
        return a == b;
    }
    ((a - b) % m.abs()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(q: u64) -> Evaluator {
        Evaluator::new(q).unwrap()
    }

    fn b(n: i64) -> BigInt {
        int(n)
    }

    #[test]
    fn q_basics_examples() {
        assert_eq!(ev(2).q_basics(QBasic::Number, 3).unwrap(), b(7));
        for q in [2, 3, 7] {
            assert_eq!(ev(q).q_basics(QBasic::DoubleFactorial, 0).unwrap(), b(1));
            assert_eq!(ev(q).q_basics(QBasic::DoubleFactorial, -1).unwrap(), b(1));
            assert_eq!(ev(q).q_basics(QBasic::Factorial, 0).unwrap(), b(1));
        }
        assert_eq!(ev(2).q_basics(QBasic::DoubleFactorial, 5).unwrap(), b(217));
        assert_eq!(ev(2).q_basics(QBasic::Factorial, -1).unwrap_err(), Error::NegativeArgument(-1));
        assert_eq!(ev(2).q_basics(QBasic::DoubleFactorial, -2).unwrap_err(), Error::NegativeArgument(-2));
    }

    #[test]
    fn f_rect_examples() {
        let e = ev(2);
        for m in [Method::Closed, Method::Recursive] {
            assert_eq!(e.f_rect(1, 3, m).unwrap(), b(3));
            assert_eq!(e.f_rect(2, 2, m).unwrap(), b(1));
            assert_eq!(e.f_rect(3, 3, m).unwrap(), b(14));
        }
        assert!(e.f_rect(3, 2, Method::Closed).is_err());
    }

    #[test]
    fn methods_agree() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            let e = ev(q);
            for n in 1..=8 {
                for k in 1..=n {
                    assert_eq!(e.f_rect(k, n, Method::Closed).unwrap(), e.f_rect(k, n, Method::Recursive).unwrap());
                }
                for r in 0..=n {
                    assert_eq!(
                        e.g_zero_diag(n, r, Method::Closed).unwrap(),
                        e.g_zero_diag(n, r, Method::Recursive).unwrap(),
                        "g({n},{r}) q={q}"
                    );
                    assert_eq!(e.matz_count(n, n, r).unwrap(), e.g_zero_diag(n, r, Method::Recursive).unwrap());
                    assert_eq!(e.sk_count(n, r, Method::Closed).unwrap(), e.sk_count(n, r, Method::Recursive).unwrap());
                }
            }
        }
    }

    #[test]
    fn small_values() {
        let e = ev(2);
        assert_eq!(e.matz_count(2, 0, 1).unwrap(), b(9));
        assert_eq!(e.matz_count(2, 1, 2).unwrap(), b(2));
        assert_eq!(e.matz_count(1, 1, 1).unwrap(), b(0));
        assert_eq!(e.g_zero_diag(2, 1, Method::Recursive).unwrap(), b(2));
        assert_eq!(e.g_zero_diag(3, 3, Method::Closed).unwrap(), b(14));
        for n in 1..6 {
            assert_eq!(e.g_zero_diag(n, 0, Method::Closed).unwrap(), b(1));
        }
        assert_eq!(e.sym_formulas(SymKind::Invertible, 2, None, None).unwrap(), b(4));
        assert_eq!(ev(3).sym_formulas(SymKind::Rank, 2, Some(1), None).unwrap(), b(8));
        assert_eq!(
            ev(3).sym_formulas(SymKind::RankCharacter, 2, Some(1), Some(Character::Plus)).unwrap(),
            b(4)
        );
        assert_eq!(
            e.sym_formulas(SymKind::RankCharacter, 2, Some(1), Some(Character::Plus)).unwrap_err(),
            Error::CharacterInEvenCharacteristic
        );
        assert_eq!(e.sym0_even_q(3, 1).unwrap(), b(0));
        assert_eq!(e.sym0_even_q(2, 2).unwrap(), b(1));
        assert_eq!(e.sym0_even_q(3, 2).unwrap(), b(7));
        assert_eq!(ev(3).sym0_even_q(2, 2).unwrap_err(), Error::OddCharacteristic);
        for q in [2u64, 3, 4, 5] {
            assert_eq!(ev(q).sk_count(2, 2, Method::Closed).unwrap(), b(q as i64 - 1));
            assert_eq!(ev(q).sk_count(4, 1, Method::Recursive).unwrap(), b(0));
        }
        assert_eq!(e.sk_count(3, 2, Method::Recursive).unwrap(), b(7));
    }

    #[test]
    fn sq_and_zy() {
        assert_eq!(ev(5).sq_table(2, Character::Plus).unwrap(), b(9));
        assert_eq!(ev(3).sq_table(2, Character::Plus).unwrap(), b(1));
        assert_eq!(ev(3).sq_table(3, Character::Plus).unwrap(), b(9));
        assert_eq!(ev(4).sq_table(2, Character::Plus).unwrap_err(), Error::EvenCharacteristic);
        for q in 2..=9u64 {
            let e = ev(q);
            assert_eq!(e.bilinear_zy(ZyKind::Z, 1).unwrap(), b(2 * q as i64 - 1));
            assert_eq!(e.bilinear_zy(ZyKind::Y, 1).unwrap(), b(q as i64 - 1));
            for big_n in 1..=6 {
                let z = e.bilinear_zy(ZyKind::Z, big_n).unwrap();
                let y = e.bilinear_zy(ZyKind::Y, big_n).unwrap();
                assert_eq!(&z + &y * b(q as i64 - 1), b(q as i64).pow(2 * big_n as u32));
                assert!(congruent(&z, &b(1), &b(q as i64 - 1)));
                assert!(congruent(&y, &b(0), &b(q as i64 - 1)));
            }
        }
        assert_eq!(ev(2).bilinear_zy(ZyKind::Z, 2).unwrap(), b(10));
    }

    #[test]
    fn character_recursions_small() {
        let e = ev(3);
        assert_eq!(e.sym0_char_recursive(2, 2, 2, Character::Minus).unwrap(), b(2));
        for c in Character::BOTH {
            assert_eq!(e.sym0_char_recursive(2, 1, 1, c).unwrap(), b(1));
        }
        assert_eq!(e.symz_count(2, 1, None, Method::Recursive).unwrap(), b(6));
        assert_eq!(e.symz_count(2, 1, None, Method::Closed).unwrap(), b(6));
        assert_eq!(e.symz_count(3, 1, None, Method::Closed).unwrap(), b(144));
        assert_eq!(e.symz_count(3, 1, None, Method::Recursive).unwrap(), b(144));
        assert_eq!(ev(2).symz_count(2, 1, None, Method::Closed).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn symz_methods_agree() {
        for q in [3u64, 5, 7, 9] {
            let e = ev(q);
            for n in 0..=7 {
                for k in 0..=n {
                    for c in Character::BOTH {
                        assert_eq!(
                            e.symz_count(n, k, Some(c), Method::Closed).unwrap(),
                            e.symz_count(n, k, Some(c), Method::Recursive).unwrap(),
                            "symz^{c}({n},{k}) q={q}"
                        );
                        assert_eq!(
                            e.symz_count(n, k, Some(c), Method::Recursive).unwrap(),
                            e.sym0_char_recursive(n, k, n, c).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn limits() {
        assert_eq!(combinatorial_limits(LimitKind::Derangement, 3, None).unwrap(), b(2));
        assert_eq!(combinatorial_limits(LimitKind::Derangement, 4, None).unwrap(), b(9));
        assert_eq!(combinatorial_limits(LimitKind::Derangement, 0, None).unwrap(), b(1));
        assert_eq!(combinatorial_limits(LimitKind::PartialInvolution, 4, Some(2)).unwrap(), b(6));
        assert_eq!(combinatorial_limits(LimitKind::PartialInvolution, 4, Some(4)).unwrap(), b(3));
        assert_eq!(
            combinatorial_limits(LimitKind::PartialInvolution, 4, Some(3)).unwrap_err(),
            Error::OddRank(3)
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), b(10));
        assert_eq!(binomial(3, -1), b(0));
        assert_eq!(binomial(3, 4), b(0));
        assert_eq!(binomial(0, 0), b(1));
    }
}
