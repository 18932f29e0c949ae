//! Polynomials over GF(2) and the grid nullity d(n).
//!
//! The n×n grid has nullity `deg gcd(f_{n+1}(x), f_{n+1}(x+1))` where `f_m` is
//! the Fibonacci polynomial `f_1 = 1`, `f_2 = x`, `f_m = x·f_{m-1} + f_{m-2}`.

use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::words::{self, WORD_BITS};

/// A polynomial in GF(2)[x], coefficients packed little-endian into words.
///
/// Always canonical: the last stored word is nonzero, so the zero polynomial is
/// the empty word vector.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryPolynomial {
    words: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self { words: vec![2] }
    }

    pub fn monomial(exp: usize) -> Self {
        Self::from_exponents([exp])
    }

    /// Builds a polynomial from the exponents of its terms. Repeated exponents cancel.
    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut words = Vec::new();
        for e in exps {
            if words.len() <= e / WORD_BITS {
                words.resize(e / WORD_BITS + 1, 0);
            }
            words::flip(&mut words, e);
        }
        Self::from_words(words)
    }

    /// Low 64 coefficients given as a bit mask (bit i = coefficient of x^i).
    pub fn from_u64(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        words::highest_bit(&self.words)
    }

    pub fn coeff(&self, i: usize) -> bool {
        words::get(&self.words, i)
    }

    /// Exponents of the nonzero terms, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        words::ones(&self.words)
    }

    pub fn mul_x(&self) -> Self {
        let mut out = vec![0; self.words.len() + 1];
        words::xor_shl(&mut out, &self.words, 1);
        Self::from_words(out)
    }

    /// Remainder of `self` divided by `modulus`.
    pub fn rem(&self, modulus: &Self) -> Result<Self> {
        let mdeg = modulus.degree().ok_or(Error::DivisionByZero)?;
        let mut a = self.words.clone();
        reduce_in_place(&mut a, &modulus.words, mdeg);
        Ok(Self::from_words(a))
    }

    /// Greatest common divisor. Every nonzero GF(2) polynomial is monic, so the
    /// result is unique.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.words.clone();
        let mut b = other.words.clone();
        trim(&mut a);
        trim(&mut b);
        while let Some(bdeg) = words::highest_bit(&b) {
            reduce_in_place(&mut a, &b, bdeg);
            std::mem::swap(&mut a, &mut b);
        }
        Ok(Self::from_words(a))
    }

    /// Returns `self(x + 1)`.
    ///
    /// Splitting `a = lo + x^s·hi` with `s` a power of two gives
    /// `a(x+1) = lo(x+1) + (x^s + 1)·hi(x+1)`, so the substitution is a
    /// butterfly over doubling block sizes: first inside each word, then
    /// across words.
    pub fn compose_x_plus_1(&self) -> Self {
        const LOW_HALVES: [(u32, u64); 6] = [
            (1, 0x5555_5555_5555_5555),
            (2, 0x3333_3333_3333_3333),
            (4, 0x0f0f_0f0f_0f0f_0f0f),
            (8, 0x00ff_00ff_00ff_00ff),
            (16, 0x0000_ffff_0000_ffff),
            (32, 0x0000_0000_ffff_ffff),
        ];
        if self.is_zero() {
            return Self::zero();
        }
        let mut w = self.words.clone();
        w.resize(w.len().next_power_of_two(), 0);
        for word in w.iter_mut() {
            for (s, mask) in LOW_HALVES {
                *word ^= (*word >> s) & mask;
            }
        }
        let mut half = 1;
        while half < w.len() {
            for block in w.chunks_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for (l, h) in lo.iter_mut().zip(hi.iter()) {
                    *l ^= *h;
                }
            }
            half *= 2;
        }
        Self::from_words(w)
    }
}

fn trim(w: &mut Vec<u64>) {
    while w.last() == Some(&0) {
        w.pop();
    }
}

/// Reduces `a` modulo the polynomial `m` of degree `mdeg` by repeated
/// shifted XOR, leaving `a` trimmed.
fn reduce_in_place(a: &mut Vec<u64>, m: &[u64], mdeg: usize) {
    let m = &m[..mdeg / WORD_BITS + 1];
    while let Some(adeg) = words::highest_bit(a) {
        if adeg < mdeg {
            break;
        }
        words::xor_shl(a, m, adeg - mdeg);
        trim(a);
    }
    trim(a);
}

impl Add for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn add(self, rhs: Self) -> BinaryPolynomial {
        let (long, short) = if self.words.len() >= rhs.words.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.words.clone();
        for (o, s) in out.iter_mut().zip(&short.words) {
            *o ^= s;
        }
        BinaryPolynomial::from_words(out)
    }
}

impl Mul for &BinaryPolynomial {
    type Output = BinaryPolynomial;

    fn mul(self, rhs: Self) -> BinaryPolynomial {
        let (Some(da), Some(db)) = (self.degree(), rhs.degree()) else {
            return BinaryPolynomial::zero();
        };
        let mut out = vec![0; words::words_for(da + db + 1)];
        for i in rhs.exponents() {
            words::xor_shl(&mut out, &self.words, i);
        }
        BinaryPolynomial::from_words(out)
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        for (i, e) in exps.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

pub fn poly_add(a: &BinaryPolynomial, b: &BinaryPolynomial) -> BinaryPolynomial {
    a + b
}

pub fn poly_mul(a: &BinaryPolynomial, b: &BinaryPolynomial) -> BinaryPolynomial {
    a * b
}

pub fn poly_mod(a: &BinaryPolynomial, m: &BinaryPolynomial) -> Result<BinaryPolynomial> {
    a.rem(m)
}

pub fn poly_gcd(a: &BinaryPolynomial, b: &BinaryPolynomial) -> Result<BinaryPolynomial> {
    a.gcd(b)
}

pub fn poly_compose_x_plus_1(a: &BinaryPolynomial) -> BinaryPolynomial {
    a.compose_x_plus_1()
}

/// Iterator over `(m, f_m)` for `m = 1, 2, 3, ...`.
#[derive(Debug, Clone)]
pub struct FibonacciPolynomials {
    index: usize,
    prev: Vec<u64>,
    cur: Vec<u64>,
}

impl FibonacciPolynomials {
    pub fn new() -> Self {
        Self {
            index: 0,
            prev: Vec::new(),
            cur: Vec::new(),
        }
    }
}

impl Default for FibonacciPolynomials {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for FibonacciPolynomials {
    type Item = (usize, BinaryPolynomial);

    fn next(&mut self) -> Option<Self::Item> {
        self.index += 1;
        match self.index {
            1 => self.cur = vec![1],
            2 => {
                self.prev = std::mem::replace(&mut self.cur, vec![2]);
            }
            m => {
                // f_m = x·f_{m-1} + f_{m-2}, written over the f_{m-2} buffer.
                let need = words::words_for(m);
                self.prev.resize(need, 0);
                words::xor_shl(&mut self.prev, &self.cur, 1);
                std::mem::swap(&mut self.prev, &mut self.cur);
            }
        }
        Some((self.index, BinaryPolynomial::from_words(self.cur.clone())))
    }
}

/// The Fibonacci polynomial `f_n`, computed iteratively.
pub fn fib_poly(n: usize) -> Result<BinaryPolynomial> {
    if n == 0 {
        return Err(Error::FibonacciIndexZero);
    }
    Ok(FibonacciPolynomials::new()
        .nth(n - 1)
        .map(|(_, p)| p)
        .expect("iterator is unbounded"))
}

/// Nullity from an already computed `f_{n+1}`.
pub fn nullity_from_fib(f: &BinaryPolynomial) -> usize {
    f.gcd(&f.compose_x_plus_1())
        .ok()
        .and_then(|g| g.degree())
        .unwrap_or(0)
}

/// Dimension of the kernel of the click map on the n×n grid.
///
/// `n = 0` is the empty grid and has nullity 0.
pub fn nullity(n: usize) -> usize {
    let f = fib_poly(n + 1).expect("n + 1 >= 1");
    nullity_from_fib(&f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(exps: &[usize]) -> BinaryPolynomial {
        BinaryPolynomial::from_exponents(exps.iter().copied())
    }

    #[test]
    fn add_examples() {
        assert_eq!(poly_add(&p(&[2, 0]), &p(&[2, 1])), p(&[1, 0]));
        let q = p(&[70, 3, 0]);
        assert!(poly_add(&q, &q).is_zero());
        assert_eq!(poly_add(&q, &BinaryPolynomial::zero()), q);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(poly_mul(&p(&[1, 0]), &p(&[1, 0])), p(&[2, 0]));
        assert_eq!(poly_mul(&BinaryPolynomial::x(), &p(&[4, 2, 0])), p(&[5, 3, 1]));
        assert!(poly_mul(&p(&[9, 1]), &BinaryPolynomial::zero()).is_zero());
    }

    #[test]
    fn mod_examples() {
        assert!(poly_mod(&p(&[5, 1]), &p(&[2, 1])).unwrap().is_zero());
        let q = p(&[100, 64, 7]);
        assert!(poly_mod(&q, &q).unwrap().is_zero());
        assert_eq!(poly_mod(&p(&[3]), &p(&[2, 0])).unwrap(), p(&[1]));
        assert!(matches!(
            poly_mod(&q, &BinaryPolynomial::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn gcd_examples() {
        let xp1 = p(&[1, 0]);
        let x = BinaryPolynomial::x();
        let pow = |b: &BinaryPolynomial, e: usize| {
            (0..e).fold(BinaryPolynomial::one(), |acc, _| &acc * b)
        };
        let a = &x * &pow(&xp1, 4);
        let b = &pow(&x, 4) * &xp1;
        assert_eq!(poly_gcd(&a, &b).unwrap(), p(&[2, 1]));
        assert_eq!(poly_gcd(&a, &a).unwrap(), a);
        let f5 = p(&[4, 2, 0]);
        assert_eq!(poly_gcd(&f5, &f5.compose_x_plus_1()).unwrap(), f5);
        assert_eq!(poly_gcd(&a, &BinaryPolynomial::zero()).unwrap(), a);
        assert!(matches!(
            poly_gcd(&BinaryPolynomial::zero(), &BinaryPolynomial::zero()),
            Err(Error::GcdOfZeros)
        ));
    }

    #[test]
    fn compose_examples() {
        assert_eq!(poly_compose_x_plus_1(&p(&[2, 1, 0])), p(&[2, 1, 0]));
        assert_eq!(poly_compose_x_plus_1(&BinaryPolynomial::x()), p(&[1, 0]));
        assert_eq!(poly_compose_x_plus_1(&p(&[4])), p(&[4, 0]));
        assert!(poly_compose_x_plus_1(&BinaryPolynomial::zero()).is_zero());
    }

    /// a(x+1) by Horner evaluation with polynomial arithmetic only.
    fn compose_by_horner(a: &BinaryPolynomial) -> BinaryPolynomial {
        let xp1 = p(&[1, 0]);
        let Some(d) = a.degree() else {
            return BinaryPolynomial::zero();
        };
        let mut acc = BinaryPolynomial::zero();
        for i in (0..=d).rev() {
            acc = &acc * &xp1;
            if a.coeff(i) {
                acc = &acc + &BinaryPolynomial::one();
            }
        }
        acc
    }

    #[test]
    fn compose_matches_horner_across_word_boundaries() {
        for exps in [vec![63], vec![64], vec![127, 5], vec![200, 130, 64, 1, 0]] {
            let a = p(&exps);
            assert_eq!(a.compose_x_plus_1(), compose_by_horner(&a), "{a}");
        }
    }

    #[test]
    fn fib_examples() {
        assert_eq!(fib_poly(1).unwrap(), BinaryPolynomial::one());
        assert_eq!(fib_poly(3).unwrap(), p(&[2, 0]));
        assert_eq!(fib_poly(5).unwrap(), p(&[4, 2, 0]));
        assert_eq!(fib_poly(6).unwrap(), p(&[5, 1]));
        assert!(matches!(fib_poly(0), Err(Error::FibonacciIndexZero)));
    }

    #[test]
    fn fib_degrees() {
        for (m, f) in FibonacciPolynomials::new().take(2000) {
            assert_eq!(f.degree(), Some(m - 1));
        }
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(nullity(5), 2);
        assert_eq!(nullity(7), 0);
        assert_eq!(nullity(17), 2);
        assert_eq!(nullity(4), 4);
        assert_eq!(nullity(11), 6);
    }

    #[test]
    fn nullity_is_even() {
        for (m, f) in FibonacciPolynomials::new().skip(1).take(512) {
            assert_eq!(nullity_from_fib(&f) % 2, 0, "n = {}", m - 1);
        }
    }

    #[test]
    fn display() {
        assert_eq!(p(&[4, 2, 0]).to_string(), "x^4 + x^2 + 1");
        assert_eq!(p(&[1]).to_string(), "x");
        assert_eq!(BinaryPolynomial::zero().to_string(), "0");
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = BinaryPolynomial> {
        prop::collection::vec(0..=max_deg, 0..64).prop_map(BinaryPolynomial::from_exponents)
    }

    proptest! {
        #[test]
        fn compose_is_involution(a in arb_poly(1000)) {
            prop_assert_eq!(a.compose_x_plus_1().compose_x_plus_1(), a);
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(300), b in arb_poly(300), c in arb_poly(40)) {
            // A shared factor makes the gcd nontrivial most of the time.
            let (a, b) = (&a * &c, &b * &c);
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(a.rem(&g).unwrap().is_zero());
            prop_assert!(b.rem(&g).unwrap().is_zero());
        }

        #[test]
        fn division_identity(a in arb_poly(400), m in arb_poly(200)) {
            prop_assume!(!m.is_zero());
            let r = a.rem(&m).unwrap();
            prop_assert!(r.degree() < m.degree());
            // a - r is a multiple of m
            prop_assert!((&a + &r).rem(&m).unwrap().is_zero());
        }

        #[test]
        fn mul_degree_adds(a in arb_poly(500), b in arb_poly(500)) {
            let prod = &a * &b;
            match (a.degree(), b.degree()) {
                (Some(da), Some(db)) => prop_assert_eq!(prod.degree(), Some(da + db)),
                _ => prop_assert!(prod.is_zero()),
            }
        }
    }
}
