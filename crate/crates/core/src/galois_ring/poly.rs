use serde::{Deserialize, Serialize};

use super::{DEFAULT_DELTA_CAP, MAX_DELTA};
use crate::{Error, Result};

/// Lexicographically smallest primitive polynomial over F2 for each supported odd degree,
/// encoded with bit `k` holding the coefficient of `x^k`.
pub const PRIMITIVE_F2: [(u32, u32); 7] = [
    (3, 0b1011),
    (5, 0b10_0101),
    (7, 0b1000_0011),
    (9, 0b10_0001_0001),
    (11, 0b1000_0000_0101),
    (13, 0b10_0000_0001_1011),
    (15, 0b1000_0000_0000_0011),
];

/// A monic polynomial of odd degree `delta` over Z4 whose reduction mod 2 is primitive.
///
/// The order of its root is checked when a [`super::RingContext`] is built from it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicPoly {
    delta: u32,
    coeffs: Vec<u8>,
}

impl BasicPoly {
    /// `coeffs` has `delta + 1` entries, constant term first.
    pub fn new(coeffs: Vec<u8>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Parameter("polynomial must have positive degree".into()));
        }
        let delta = (coeffs.len() - 1) as u32;
        check_delta(delta, MAX_DELTA)?;
        if let Some(c) = coeffs.iter().find(|&&c| c > 3) {
            return Err(Error::Parameter(format!("coefficient {c} is not in Z4")));
        }
        if coeffs[delta as usize] != 1 {
            return Err(Error::Parameter("polynomial must be monic".into()));
        }
        let poly = BasicPoly { delta, coeffs };
        if !is_primitive_f2(poly.reduced_mod2(), delta) {
            return Err(Error::Parameter(format!(
                "reduction mod 2 ({:#b}) is not primitive over F2",
                poly.reduced_mod2()
            )));
        }
        Ok(poly)
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// Coefficients in Z4, constant term first.
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Reduction mod 2 as a bit mask (bit `k` = coefficient of `x^k`).
    pub fn reduced_mod2(&self) -> u32 {
        self.coeffs.iter().enumerate().fold(0, |acc, (k, &c)| acc | (u32::from(c & 1) << k))
    }
}

pub(crate) fn check_delta(delta: u32, cap: u32) -> Result<()> {
    if delta < 3 {
        return Err(Error::DeltaTooSmall(delta));
    }
    if delta.is_multiple_of(2) {
        return Err(Error::EvenDelta(delta));
    }
    let cap = cap.min(MAX_DELTA);
    if delta > cap {
        return Err(Error::DeltaAboveCap { delta, cap, bytes: super::estimated_table_bytes(delta) });
    }
    Ok(())
}

/// Basic primitive polynomial of degree `delta` under the default cap.
pub fn lift_basic_primitive(delta: u32) -> Result<BasicPoly> {
    lift_basic_primitive_capped(delta, DEFAULT_DELTA_CAP)
}

pub fn lift_basic_primitive_capped(delta: u32, cap: u32) -> Result<BasicPoly> {
    check_delta(delta, cap)?;
    let f = PRIMITIVE_F2
        .iter()
        .find(|&&(d, _)| d == delta)
        .map(|&(_, f)| f)
        .ok_or_else(|| Error::Parameter(format!("no tabulated polynomial for degree {delta}")))?;
    Ok(graeffe_lift(f, delta))
}

/// Lifts a binary polynomial `f` of degree `delta` to Z4 through `h(x^2) = ±f(x) f(-x)`.
///
/// The roots of the lift are the squares of the Teichmüller lifts of the roots of `f`,
/// so `h` is basic primitive whenever `f` is primitive.
pub fn graeffe_lift(f: u32, delta: u32) -> BasicPoly {
    let d = delta as usize;
    let f_pos: Vec<i32> = (0..=d).map(|k| ((f >> k) & 1) as i32).collect();
    let f_neg: Vec<i32> =
        f_pos.iter().enumerate().map(|(k, &c)| if k % 2 == 1 { -c } else { c }).collect();
    let mut prod = vec![0i32; 2 * d + 1];
    for (i, &a) in f_pos.iter().enumerate() {
        for (j, &b) in f_neg.iter().enumerate() {
            prod[i + j] += a * b;
        }
    }
    // odd-degree terms cancel; the leading coefficient is (-1)^delta
    let sign = prod[2 * d].rem_euclid(4);
    let coeffs = (0..=d).map(|k| (prod[2 * k] * sign).rem_euclid(4) as u8).collect();
    BasicPoly { delta, coeffs }
}

/// True iff `f` (bit mask, degree `degree`) is primitive over F2, i.e. `x` has
/// multiplicative order exactly `2^degree - 1` modulo `f`.
pub fn is_primitive_f2(f: u32, degree: u32) -> bool {
    if degree == 0 || f >> degree != 1 || f & 1 == 0 {
        return false;
    }
    let order = (1u64 << degree) - 1;
    let pow = |mut e: u64| {
        let mut acc = 1u32;
        let mut base = if degree == 1 { 1 } else { 2 };
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod_f2(acc, base, f, degree);
            }
            base = mulmod_f2(base, base, f, degree);
            e >>= 1;
        }
        acc
    };
    if pow(order) != 1 {
        return false;
    }
    prime_factors(order).into_iter().all(|p| pow(order / p) != 1)
}

fn mulmod_f2(mut a: u32, mut b: u32, f: u32, degree: u32) -> u32 {
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> degree) & 1 == 1 {
            a ^= f;
        }
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
