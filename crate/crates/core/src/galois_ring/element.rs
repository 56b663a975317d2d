use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::{Error, Result};

/// An element of `GR(4^delta)` in the basis `1, xi, ..., xi^(delta-1)`.
///
/// Coefficient `k` is `lo_k + 2*hi_k`, where `lo_k`/`hi_k` are bit `k` of the two planes.
/// The `lo` plane is exactly the image in the residue field, and `2*A` has planes `(0, lo)`,
/// so addition, negation and doubling never need the modulus.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    lo: u16,
    hi: u16,
}

impl RingElement {
    pub const ZERO: RingElement = RingElement { lo: 0, hi: 0 };
    pub const ONE: RingElement = RingElement { lo: 1, hi: 0 };

    pub const fn from_planes(lo: u16, hi: u16) -> Self {
        RingElement { lo, hi }
    }

    pub const fn lo(self) -> u16 {
        self.lo
    }

    pub const fn hi(self) -> u16 {
        self.hi
    }

    /// Builds an element from exactly `delta` coefficients in `{0,1,2,3}`, constant term first.
    pub fn from_coeffs(delta: u32, coeffs: &[u8]) -> Result<Self> {
        if coeffs.len() != delta as usize {
            return Err(Error::LengthMismatch { expected: delta as usize, got: coeffs.len() });
        }
        let mut lo = 0u16;
        let mut hi = 0u16;
        for (k, &c) in coeffs.iter().enumerate() {
            if c > 3 {
                return Err(Error::Parameter(format!("coefficient {c} at position {k} is not in Z4")));
            }
            lo |= u16::from(c & 1) << k;
            hi |= u16::from(c >> 1) << k;
        }
        Ok(RingElement { lo, hi })
    }

    pub fn coeff(self, k: u32) -> u8 {
        (((self.lo >> k) & 1) | (((self.hi >> k) & 1) << 1)) as u8
    }

    pub fn coeffs(self, delta: u32) -> Vec<u8> {
        (0..delta).map(|k| self.coeff(k)).collect()
    }

    /// Dense index in `[0, 4^delta)`.
    pub fn index(self, delta: u32) -> usize {
        self.lo as usize | ((self.hi as usize) << delta)
    }

    pub fn from_index(index: usize, delta: u32) -> Self {
        let mask = (1usize << delta) - 1;
        RingElement { lo: (index & mask) as u16, hi: ((index >> delta) & mask) as u16 }
    }

    pub fn is_zero(self) -> bool {
        self.lo == 0 && self.hi == 0
    }

    /// `2 * self`.
    pub fn double(self) -> Self {
        RingElement { lo: 0, hi: self.lo }
    }

    /// Multiplication by an integer scalar, taken mod 4.
    pub fn scalar_mul(self, c: u8) -> Self {
        match c & 3 {
            0 => RingElement::ZERO,
            1 => self,
            2 => self.double(),
            _ => -self,
        }
    }

    /// Image in the residue field `F_{2^delta}`.
    pub fn residue(self) -> FieldElement {
        FieldElement(self.lo)
    }

    /// True iff `self` lies in the ideal `2*GR`.
    pub fn is_even(self) -> bool {
        self.lo == 0
    }
}

impl Add for RingElement {
    type Output = RingElement;

    fn add(self, rhs: RingElement) -> RingElement {
        let carry = self.lo & rhs.lo;
        RingElement { lo: self.lo ^ rhs.lo, hi: self.hi ^ rhs.hi ^ carry }
    }
}

impl Neg for RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        // -(l + 2h) = l + 2(h + l) mod 4 coefficientwise
        RingElement { lo: self.lo, hi: self.hi ^ self.lo }
    }
}

impl Sub for RingElement {
    type Output = RingElement;

    fn sub(self, rhs: RingElement) -> RingElement {
        self + (-rhs)
    }
}

impl AddAssign for RingElement {
    fn add_assign(&mut self, rhs: RingElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for RingElement {
    fn sub_assign(&mut self, rhs: RingElement) {
        *self = *self - rhs;
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = 16 - (self.lo | self.hi).leading_zeros();
        let coeffs: Vec<u8> = (0..top.max(1)).map(|k| self.coeff(k)).collect();
        write!(f, "RingElement{coeffs:?}")
    }
}

/// An element of the residue field `F_{2^delta}`, bit `k` being the coefficient of `xi_bar^k`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub const fn from_bits(bits: u16) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:#b})", self.0)
    }
}

/// A Teichmüller element: zero or `xi^k` with `k` reduced mod `2^delta - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TeichExp {
    Zero,
    Pow(u32),
}

impl TeichExp {
    pub fn exp(self) -> Option<u32> {
        match self {
            TeichExp::Zero => None,
            TeichExp::Pow(k) => Some(k),
        }
    }

    pub fn is_zero(self) -> bool {
        self == TeichExp::Zero
    }
}
