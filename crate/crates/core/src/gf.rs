//! Table-driven arithmetic in GF(q) for q ∈ {2, 3, 4, 5, 7, 8, 9}.
//!
//! Elements are stored as digits `0..q`. For q = p^e the digit `d` encodes the
//! polynomial whose coefficients are the base-p digits of `d` (least
//! significant digit = constant term), reduced modulo a fixed irreducible:
//!
//! | q | modulus       |
//! |---|---------------|
//! | 4 | x² + x + 1    |
//! | 8 | x³ + x + 1    |
//! | 9 | x² + 1        |
//!
//! Prime orders use plain modular arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Orders accepted by [`Field::new`].
pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

struct Tables {
    q: u8,
    p: u8,
    degree: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// The finite field GF(q). Cloning is cheap; all clones share one set of tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

/// Construct the canonical field of order `q`.
pub fn field(q: u32) -> Result<Field> {
    Field::new(q)
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        // (p, degree, modulus coefficients below the leading term, low degree first)
        let (p, degree, modulus): (u8, u8, &[u8]) = match q {
            2 => (2, 1, &[0]),
            3 => (3, 1, &[0]),
            5 => (5, 1, &[0]),
            7 => (7, 1, &[0]),
            4 => (2, 2, &[1, 1]),
            8 => (2, 3, &[1, 1, 0]),
            9 => (3, 2, &[1, 0]),
            _ => return Err(Error::UnsupportedOrder(q)),
        };
        let q = q as u8;
        let qs = q as usize;

        let to_poly = |d: u8| -> Vec<u8> {
            let mut d = d;
            (0..degree)
                .map(|_| {
                    let c = d % p;
                    d /= p;
                    c
                })
                .collect()
        };
        let from_poly = |coeffs: &[u8]| -> u8 { coeffs.iter().rev().fold(0u8, |acc, &c| acc * p + c) };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let pa = to_poly(a);
            for b in 0..q {
                let pb = to_poly(b);
                let sum: Vec<u8> = pa.iter().zip(&pb).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = from_poly(&sum);

                // schoolbook product, then reduce x^k for k >= degree
                let mut prod = vec![0u16; 2 * degree as usize];
                for (i, &x) in pa.iter().enumerate() {
                    for (j, &y) in pb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u16 * y as u16) % p as u16;
                    }
                }
                for k in (degree as usize..prod.len()).rev() {
                    let lead = prod[k];
                    if lead == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    // x^degree = -modulus(x)
                    for (j, &c) in modulus.iter().enumerate() {
                        let idx = k - degree as usize + j;
                        prod[idx] = (prod[idx] + (p as u16 - c as u16) * lead) % p as u16;
                    }
                }
                let reduced: Vec<u8> = prod[..degree as usize].iter().map(|&c| c as u8).collect();
                mul[a as usize * qs + b as usize] = from_poly(&reduced);
            }
        }

        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a as usize * qs + b as usize] == 0).unwrap())
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q)
                        .find(|&b| mul[a as usize * qs + b as usize] == 1)
                        .expect("modulus is irreducible")
                }
            })
            .collect();

        Ok(Field(Arc::new(Tables {
            q,
            p,
            degree,
            add,
            mul,
            neg,
            inv,
        })))
    }

    #[inline]
    pub fn q(&self) -> u8 {
        self.0.q
    }

    /// The characteristic p.
    #[inline]
    pub fn characteristic(&self) -> u8 {
        self.0.p
    }

    /// Extension degree e with q = p^e.
    #[inline]
    pub fn degree(&self) -> u8 {
        self.0.degree
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        if self.0.p == 2 {
            a ^ b
        } else {
            self.0.add[a as usize * self.0.q as usize + b as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.0.inv[a as usize])
        }
    }

    /// Inverse of a value the caller knows to be nonzero (pivots, leading digits).
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.0.inv[a as usize]
    }

    pub fn check_digit(&self, digit: u8) -> Result<u8> {
        if digit < self.q() {
            Ok(digit)
        } else {
            Err(Error::DigitOutOfRange { digit, q: self.q() })
        }
    }

    /// Nonzero elements in ascending digit order.
    pub fn nonzero(&self) -> impl Iterator<Item = u8> {
        1..self.q()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q()
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}
