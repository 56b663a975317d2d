//! Arithmetic in the Galois ring `GR(4^delta) = Z4[x]/(h(x))` and its residue field.
//!
//! Every ring element decomposes uniquely as `X + 2Y` with `X, Y` in the Teichmüller set
//! `T = {0, 1, xi, ..., xi^(2^delta - 2)}`. A [`RingContext`] precomputes the powers of `xi`
//! and discrete logarithms in the residue field, which makes that decomposition, products,
//! the Frobenius automorphism `X + 2Y -> X^2 + 2Y^2`, and the `(i, j)` coordinates
//! `A = xi^i (1 + 2 xi^j)` constant-time table lookups.

mod element;
mod poly;

pub use element::{FieldElement, RingElement, TeichExp};
pub use poly::{
    graeffe_lift, is_primitive_f2, lift_basic_primitive, lift_basic_primitive_capped, BasicPoly,
    PRIMITIVE_F2,
};

use crate::{Error, Result};

/// Largest delta accepted without an explicit override.
pub const DEFAULT_DELTA_CAP: u32 = 13;
/// Hard limit of the 16-bit plane representation.
pub const MAX_DELTA: u32 = 15;

const NO_LOG: u32 = u32::MAX;

/// Rough peak memory for building and verifying at `delta`: ring tables, check-matrix
/// columns, and the `4^delta`-entry syndrome tables used by verification.
pub fn estimated_table_bytes(delta: u32) -> u64 {
    let field = 1u64 << delta;
    let ring = 1u64 << (2 * delta);
    field * (4 + 4 + 2) + ring / 3 * 4 + ring * 8
}

/// Precomputed structure of `GR(4^delta)` for a fixed basic primitive polynomial.
///
/// Immutable once built; share it behind an `Arc` across threads.
#[derive(Clone, Debug)]
pub struct RingContext {
    poly: BasicPoly,
    delta: u32,
    order: u32,
    mask: u16,
    /// `xi^delta` written in the basis `1, ..., xi^(delta-1)`.
    xi_delta: RingElement,
    /// `pow[k] = xi^k`.
    pow: Vec<RingElement>,
    /// Residue-field logarithm, `NO_LOG` at zero.
    log: Vec<u32>,
    /// `Tr(u)` is the parity of `u & trace_mask`.
    trace_mask: u16,
}

impl RingContext {
    /// Context for the canonical polynomial of degree `delta` under the default cap.
    pub fn new(delta: u32) -> Result<Self> {
        Self::from_poly(lift_basic_primitive(delta)?)
    }

    pub fn with_cap(delta: u32, cap: u32) -> Result<Self> {
        Self::from_poly(lift_basic_primitive_capped(delta, cap)?)
    }

    /// Builds the tables for `poly`, rejecting it unless its root has order `2^delta - 1`.
    pub fn from_poly(poly: BasicPoly) -> Result<Self> {
        let delta = poly.delta();
        let order = (1u32 << delta) - 1;
        let mask = order as u16;
        // x^delta = -(h_0 + ... + h_{delta-1} x^{delta-1})
        let low = RingElement::from_coeffs(delta, &poly.coeffs()[..delta as usize])?;
        let mut ctx = RingContext {
            poly,
            delta,
            order,
            mask,
            xi_delta: -low,
            pow: Vec::with_capacity(order as usize),
            log: vec![NO_LOG; 1 << delta],
            trace_mask: 0,
        };

        let mut cur = RingElement::ONE;
        for k in 0..order {
            if k > 0 && cur == RingElement::ONE {
                return Err(Error::Parameter(format!("root has order {k}, not {order}")));
            }
            let residue = cur.lo() as usize;
            if ctx.log[residue] != NO_LOG {
                return Err(Error::Parameter("reduction mod 2 is not primitive".into()));
            }
            ctx.log[residue] = k;
            ctx.pow.push(cur);
            cur = ctx.mul_by_xi(cur);
        }
        if cur != RingElement::ONE {
            return Err(Error::Parameter(format!("xi^{order} != 1: polynomial is not basic primitive")));
        }

        for k in 0..delta {
            let basis = FieldElement::from_bits(1 << k);
            if ctx.trace_by_definition(basis) == 1 {
                ctx.trace_mask |= 1 << k;
            }
        }
        Ok(ctx)
    }

    pub fn poly(&self) -> &BasicPoly {
        &self.poly
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// `2^delta - 1`, the order of `xi` and the number of nonzero Teichmüller elements.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `4^delta`.
    pub fn ring_size(&self) -> usize {
        1usize << (2 * self.delta)
    }

    pub fn xi(&self) -> RingElement {
        self.pow[1 % self.order as usize]
    }

    /// Every ring element, in index order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.ring_size()).map(move |i| RingElement::from_index(i, self.delta))
    }

    /// Every residue-field element, in bit order.
    pub fn field_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..1u32 << self.delta).map(|b| FieldElement::from_bits(b as u16))
    }

    pub fn element_from_coeffs(&self, coeffs: &[u8]) -> Result<RingElement> {
        RingElement::from_coeffs(self.delta, coeffs)
    }

    fn mul_by_xi(&self, a: RingElement) -> RingElement {
        let top = a.coeff(self.delta - 1);
        let shifted =
            RingElement::from_planes((a.lo() << 1) & self.mask, (a.hi() << 1) & self.mask);
        shifted + self.xi_delta.scalar_mul(top)
    }

    fn reduce_exp(&self, e: u64) -> u32 {
        (e % u64::from(self.order)) as u32
    }

    // ---- Teichmüller structure ----

    pub fn teich(&self, c: TeichExp) -> RingElement {
        match c {
            TeichExp::Zero => RingElement::ZERO,
            TeichExp::Pow(k) => self.pow[(k % self.order) as usize],
        }
    }

    /// `xi^k` for any integer exponent.
    pub fn xi_pow(&self, k: i64) -> RingElement {
        self.pow[k.rem_euclid(i64::from(self.order)) as usize]
    }

    /// Teichmüller representative of a residue.
    pub fn lift(&self, u: FieldElement) -> RingElement {
        self.teich(self.teich_of_residue(u))
    }

    fn teich_of_residue(&self, u: FieldElement) -> TeichExp {
        match self.log[u.bits() as usize] {
            NO_LOG => TeichExp::Zero,
            k => TeichExp::Pow(k),
        }
    }

    /// Exponent of `a` when `a` lies in `T`, `None` otherwise.
    pub fn teich_log(&self, a: RingElement) -> Option<TeichExp> {
        let c = self.teich_of_residue(a.residue());
        (self.teich(c) == a).then_some(c)
    }

    /// The unique `(X, Y)` in `T x T` with `a = X + 2Y`.
    pub fn teich_decompose(&self, a: RingElement) -> (TeichExp, TeichExp) {
        let x = self.teich_of_residue(a.residue());
        let rest = a - self.teich(x);
        debug_assert!(rest.is_even());
        (x, self.teich_of_residue(FieldElement::from_bits(rest.hi())))
    }

    pub fn teich_mul(&self, a: TeichExp, b: TeichExp) -> TeichExp {
        match (a, b) {
            (TeichExp::Pow(x), TeichExp::Pow(y)) => TeichExp::Pow(self.reduce_exp(u64::from(x) + u64::from(y))),
            _ => TeichExp::Zero,
        }
    }

    /// Square root in `T`; squaring permutes `T` because `2^delta - 1` is odd.
    pub fn teich_sqrt(&self, c: TeichExp) -> TeichExp {
        match c {
            TeichExp::Zero => TeichExp::Zero,
            TeichExp::Pow(k) => TeichExp::Pow(self.half_exp(k)),
        }
    }

    fn half_exp(&self, k: u32) -> u32 {
        if k.is_multiple_of(2) {
            k / 2
        } else {
            ((u64::from(k) + u64::from(self.order)) / 2) as u32
        }
    }

    /// Teichmüller decomposition of `c1 + c2` in closed form:
    /// `b = sqrt(c1 c2)` and `a = c1 + c2 + 2b`.
    pub fn yamada_sum(&self, c1: TeichExp, c2: TeichExp) -> (TeichExp, TeichExp) {
        let b = self.teich_sqrt(self.teich_mul(c1, c2));
        let a_elem = self.teich(c1) + self.teich(c2) + self.teich(b).double();
        let a = self
            .teich_log(a_elem)
            .expect("c1 + c2 + 2 sqrt(c1 c2) is always a Teichmüller element");
        (a, b)
    }

    // ---- ring arithmetic ----

    pub fn add(&self, a: RingElement, b: RingElement) -> RingElement {
        a + b
    }

    pub fn neg(&self, a: RingElement) -> RingElement {
        -a
    }

    pub fn sub(&self, a: RingElement, b: RingElement) -> RingElement {
        a - b
    }

    pub fn scalar_mul(&self, c: u8, a: RingElement) -> RingElement {
        a.scalar_mul(c)
    }

    /// `(X + 2Y)(U + 2V) = XU + 2(XV + YU)`.
    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        let (x, y) = self.teich_decompose(a);
        let (u, v) = self.teich_decompose(b);
        let cross = self.field_mul(a.residue(), FieldElement::from_bits(self.teich(v).lo()))
            + self.field_mul(FieldElement::from_bits(self.teich(y).lo()), b.residue());
        self.teich(self.teich_mul(x, u)) + RingElement::from_planes(0, cross.bits())
    }

    /// `xi^t * a`.
    pub fn mul_xi_pow(&self, a: RingElement, t: u32) -> RingElement {
        let (x, y) = self.teich_decompose(a);
        let t = TeichExp::Pow(t % self.order);
        self.teich(self.teich_mul(x, t)) + self.teich(self.teich_mul(y, t)).double()
    }

    /// Ring automorphism `X + 2Y -> X^2 + 2Y^2`.
    pub fn frobenius(&self, a: RingElement) -> RingElement {
        self.frobenius_pow(a, 1)
    }

    /// `f^l(a)`: exponents of both Teichmüller parts are multiplied by `2^l`.
    pub fn frobenius_pow(&self, a: RingElement, l: u32) -> RingElement {
        let (x, y) = self.teich_decompose(a);
        let scale = self.reduce_exp(pow2_mod(l, self.order));
        let lift = |c: TeichExp| match c {
            TeichExp::Zero => TeichExp::Zero,
            TeichExp::Pow(k) => TeichExp::Pow(self.reduce_exp(u64::from(k) * u64::from(scale))),
        };
        self.teich(lift(x)) + self.teich(lift(y)).double()
    }

    // ---- residue field ----

    pub fn reduce_mod2(&self, a: RingElement) -> FieldElement {
        a.residue()
    }

    /// `xi_bar^k`.
    pub fn field_pow(&self, k: i64) -> FieldElement {
        self.xi_pow(k).residue()
    }

    pub fn field_log(&self, u: FieldElement) -> Result<u32> {
        match self.log[u.bits() as usize] {
            NO_LOG => Err(Error::Domain("logarithm of zero".into())),
            k => Ok(k),
        }
    }

    pub fn field_mul(&self, u: FieldElement, w: FieldElement) -> FieldElement {
        let (lu, lw) = (self.log[u.bits() as usize], self.log[w.bits() as usize]);
        if lu == NO_LOG || lw == NO_LOG {
            return FieldElement::ZERO;
        }
        self.pow[self.reduce_exp(u64::from(lu) + u64::from(lw)) as usize].residue()
    }

    pub fn field_square(&self, u: FieldElement) -> FieldElement {
        self.field_mul(u, u)
    }

    pub fn field_inv(&self, u: FieldElement) -> Result<FieldElement> {
        let k = self
            .field_log(u)
            .map_err(|_| Error::Domain("inverse of zero".into()))?;
        Ok(self.field_pow(-i64::from(k)))
    }

    pub fn field_div(&self, u: FieldElement, w: FieldElement) -> Result<FieldElement> {
        Ok(self.field_mul(u, self.field_inv(w)?))
    }

    /// `u^e` for a non-negative exponent.
    pub fn field_power(&self, u: FieldElement, e: u64) -> FieldElement {
        match self.log[u.bits() as usize] {
            NO_LOG if e == 0 => FieldElement::ONE,
            NO_LOG => FieldElement::ZERO,
            k => self.pow[((u64::from(k) * (e % u64::from(self.order))) % u64::from(self.order)) as usize]
                .residue(),
        }
    }

    /// `u^(2^l)`.
    pub fn field_frobenius(&self, u: FieldElement, l: u32) -> FieldElement {
        self.field_power(u, pow2_mod(l, self.order))
    }

    pub fn field_sqrt(&self, u: FieldElement) -> FieldElement {
        match self.log[u.bits() as usize] {
            NO_LOG => FieldElement::ZERO,
            k => self.pow[self.half_exp(k) as usize].residue(),
        }
    }

    /// Absolute trace to F2.
    pub fn trace(&self, u: FieldElement) -> u8 {
        ((u.bits() & self.trace_mask).count_ones() & 1) as u8
    }

    fn trace_by_definition(&self, u: FieldElement) -> u8 {
        let mut acc = FieldElement::ZERO;
        let mut cur = u;
        for _ in 0..self.delta {
            acc += cur;
            cur = self.field_square(cur);
        }
        debug_assert!(acc.bits() <= 1);
        acc.bits() as u8
    }

    /// `sum_{i=0}^{(delta-1)/2} a^(4^i)`.
    pub fn half_trace(&self, a: FieldElement) -> FieldElement {
        let mut acc = a;
        let mut cur = a;
        for _ in 0..(self.delta - 1) / 2 {
            cur = self.field_square(self.field_square(cur));
            acc += cur;
        }
        acc
    }

    /// Roots of `x^2 + x = a`, half-trace root first; `None` when `Tr(a) = 1`.
    pub fn solve_artin_schreier(&self, a: FieldElement) -> Option<[FieldElement; 2]> {
        if self.trace(a) == 1 {
            return None;
        }
        let root = self.half_trace(a);
        Some([root, root + FieldElement::ONE])
    }

    // ---- (i, j) coordinates ----

    /// `(i, j)` with `a = xi^i (1 + 2 xi^j)`, `j` in `[1, 2^delta - 2]`.
    pub fn ij_coords(&self, a: RingElement) -> Result<(u32, u32)> {
        match self.teich_decompose(a) {
            (TeichExp::Pow(x), TeichExp::Pow(y)) if x != y => {
                Ok((x, self.reduce_exp(u64::from(y) + u64::from(self.order) - u64::from(x))))
            }
            _ => Err(Error::Domain(format!("{a:?} lies in T ∪ 2T ∪ 3T"))),
        }
    }

    /// `xi^i (1 + 2 xi^j)`.
    pub fn from_ij(&self, i: u32, j: u32) -> Result<RingElement> {
        if i >= self.order || j == 0 || j >= self.order {
            return Err(Error::Parameter(format!("(i, j) = ({i}, {j}) out of range")));
        }
        let j_abs = self.reduce_exp(u64::from(i) + u64::from(j));
        Ok(self.pow[i as usize] + self.pow[j_abs as usize].double())
    }
}

/// `2^l mod order`.
pub(crate) fn pow2_mod(l: u32, order: u32) -> u64 {
    let m = u64::from(order);
    let mut acc = 1 % m;
    for _ in 0..l {
        acc = acc * 2 % m;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d3() -> RingContext {
        RingContext::new(3).unwrap()
    }

    #[test]
    fn xi_cubed_reduces_per_h() {
        let ctx = d3();
        let xi = ctx.xi();
        let xi2 = ctx.mul(xi, xi);
        // h = x^3 + 2x^2 + x + 3, so xi^3 = -(3 + xi + 2xi^2) = 1 + 3xi + 2xi^2
        assert_eq!(ctx.mul(xi2, xi).coeffs(3), vec![1, 3, 2]);
        assert_eq!(ctx.xi_pow(3).coeffs(3), vec![1, 3, 2]);
        assert_eq!(ctx.xi_pow(7), RingElement::ONE);
    }

    #[test]
    fn identities() {
        let ctx = d3();
        for b in ctx.elements() {
            assert_eq!(ctx.mul(RingElement::ONE, b), b);
            assert!((b + -b).is_zero());
        }
    }

    #[test]
    fn decompose_examples() {
        let ctx = d3();
        assert_eq!(ctx.teich_decompose(RingElement::ZERO), (TeichExp::Zero, TeichExp::Zero));
        let three = RingElement::ONE.scalar_mul(3);
        assert_eq!(ctx.teich_decompose(three), (TeichExp::Pow(0), TeichExp::Pow(0)));
        let a = ctx.xi_pow(1) + ctx.xi_pow(2);
        let (x, y) = ctx.teich_decompose(a);
        assert_eq!(ctx.teich(x) + ctx.teich(y).double(), a);
        assert_eq!(ctx.yamada_sum(TeichExp::Pow(1), TeichExp::Pow(2)), (x, y));
    }

    #[test]
    fn yamada_examples() {
        let ctx = d3();
        assert_eq!(ctx.yamada_sum(TeichExp::Pow(0), TeichExp::Pow(0)), (TeichExp::Zero, TeichExp::Pow(0)));
        assert_eq!(ctx.yamada_sum(TeichExp::Pow(4), TeichExp::Zero), (TeichExp::Pow(4), TeichExp::Zero));
        let (a, b) = ctx.yamada_sum(TeichExp::Pow(1), TeichExp::Pow(2));
        assert_eq!(b, TeichExp::Pow(5));
        assert_eq!(ctx.teich(a) + ctx.xi_pow(5).double(), ctx.xi_pow(1) + ctx.xi_pow(2));
    }

    #[test]
    fn frobenius_examples() {
        let ctx = d3();
        let xi = ctx.xi();
        assert_eq!(ctx.frobenius(RingElement::ONE), RingElement::ONE);
        assert_eq!(ctx.frobenius(xi), ctx.xi_pow(2));
        assert_eq!(ctx.frobenius(xi.double()), ctx.xi_pow(2).double());
        assert_eq!(ctx.frobenius(RingElement::ONE + xi.double()), RingElement::ONE + ctx.xi_pow(2).double());
    }

    #[test]
    fn sqrt_examples() {
        let ctx = d3();
        assert_eq!(ctx.teich_sqrt(TeichExp::Zero), TeichExp::Zero);
        assert_eq!(ctx.teich_sqrt(TeichExp::Pow(0)), TeichExp::Pow(0));
        assert_eq!(ctx.teich_sqrt(TeichExp::Pow(3)), TeichExp::Pow(5));
        assert_eq!(ctx.field_sqrt(FieldElement::ZERO), FieldElement::ZERO);
    }

    #[test]
    fn field_examples() {
        let ctx = d3();
        // xi_bar^3 = xi_bar + 1 for x^3 + x + 1
        assert_eq!(ctx.field_log(FieldElement::from_bits(0b011)).unwrap(), 3);
        assert!(ctx.field_log(FieldElement::ZERO).is_err());
        assert!(ctx.field_inv(FieldElement::ZERO).is_err());
        assert_eq!(ctx.trace(FieldElement::ZERO), 0);
        assert_eq!(ctx.trace(FieldElement::ONE), 1);
        assert_eq!(ctx.trace(ctx.field_pow(1)), 0);
        for k in 0..7 {
            assert_eq!(ctx.reduce_mod2(ctx.xi_pow(k)), ctx.field_pow(k));
            assert!(ctx.reduce_mod2(ctx.xi_pow(k).double()).is_zero());
        }
    }

    #[test]
    fn artin_schreier_examples() {
        let ctx = RingContext::new(5).unwrap();
        assert_eq!(ctx.solve_artin_schreier(FieldElement::ZERO), Some([FieldElement::ZERO, FieldElement::ONE]));
        for x0 in ctx.field_elements() {
            let a = ctx.field_square(x0) + x0;
            let mut roots = ctx.solve_artin_schreier(a).unwrap();
            roots.sort();
            let mut want = [x0, x0 + FieldElement::ONE];
            want.sort();
            assert_eq!(roots, want);
        }
        for a in ctx.field_elements().filter(|&a| ctx.trace(a) == 1) {
            assert_eq!(ctx.solve_artin_schreier(a), None);
        }
    }

    #[test]
    fn ij_examples() {
        let ctx = d3();
        let xi = ctx.xi();
        assert_eq!(ctx.ij_coords(RingElement::ONE + xi.double()).unwrap(), (0, 1));
        assert!(ctx.ij_coords(RingElement::ONE.scalar_mul(3)).is_err());
        assert!(ctx.ij_coords(RingElement::ZERO).is_err());
        assert!(ctx.ij_coords(xi.double()).is_err());
        assert_eq!(ctx.ij_coords(xi + ctx.xi_pow(2).double()).unwrap(), (1, 1));
        assert_eq!(ctx.from_ij(0, 1).unwrap(), RingElement::ONE + xi.double());
        assert!(ctx.from_ij(0, 0).is_err());
        assert!(ctx.from_ij(7, 1).is_err());
        assert!(ctx.from_ij(0, 7).is_err());
    }

    #[test]
    fn trace_mask_matches_definition() {
        for delta in [3, 5, 7] {
            let ctx = RingContext::new(delta).unwrap();
            for u in ctx.field_elements() {
                assert_eq!(ctx.trace(u), ctx.trace_by_definition(u));
            }
        }
    }

    #[test]
    fn rejects_non_basic_poly() {
        // x^3 + x + 1 itself over Z4 reduces correctly but its root does not have order 7
        let p = BasicPoly::new(vec![1, 1, 0, 1]).unwrap();
        assert!(RingContext::from_poly(p).is_err());
    }
}
