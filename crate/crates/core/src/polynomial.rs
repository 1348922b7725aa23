//! Lattice polynomial functions in disjunctive normal form.
//!
//! An `n`-ary polynomial over a carrier (the lattice `L` or its Boolean
//! extension `B`) is stored as its coefficient table `c : 2^[n] → carrier`,
//! defining
//!
//! ```text
//! p(x) = ⋁_{I ⊆ [n]} ( c_I ∧ ⋀_{i ∈ I} x_i )
//! ```
//!
//! Coefficient tables are not unique: replacing `c_I` by `⋁_{J ⊆ I} c_J`
//! yields a *monotone* table (`I ⊆ J ⇒ c_I ≤ c_J`) representing the same
//! function, and over a bounded carrier monotone tables correspond one-to-one
//! with polynomial functions — `p(1_I) = c_I` recovers them. That bijection
//! is what makes table-level equality decide function equality.
//!
//! Raw (non-monotone) tables are accepted everywhere and normalized on
//! demand; whether a table is already monotone is detected at construction.

use crate::boolean::BoolElement;
use crate::lattice::{DistributiveLattice, LatticeElement};

/// Which algebra the coefficients (and intended arguments) live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// The distributive lattice itself.
    Lattice,
    /// Its Boolean extension (arbitrary irreducible sets).
    Boolean,
}

/// A polynomial function in disjunctive normal form: one coefficient per
/// subset of the argument indices, stored in subset-mask order (bit `i` of
/// the mask means argument `i` participates in the meet term).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialDnf {
    arity: usize,
    carrier: Carrier,
    coeffs: Vec<u32>,
    normalized: bool,
}

/// Is a coefficient table monotone under subset inclusion? Checking the
/// single-bit covers suffices by transitivity.
fn table_is_monotone(arity: usize, coeffs: &[u32]) -> bool {
    for mask in 0..coeffs.len() {
        for i in 0..arity {
            if mask >> i & 1 == 1 && coeffs[mask ^ (1 << i)] & !coeffs[mask] != 0 {
                return false;
            }
        }
    }
    true
}

impl PolynomialDnf {
    /// Polynomial over the lattice carrier. `coeffs[mask]` is the coefficient
    /// of the subset `mask`; the table must have exactly `2^arity` entries of
    /// elements of `lat`.
    pub fn over_lattice(lat: &DistributiveLattice, arity: usize, coeffs: Vec<LatticeElement>) -> Self {
        assert_eq!(coeffs.len(), 1 << arity, "coefficient table must have 2^arity entries");
        for &c in &coeffs {
            assert!(lat.is_element(c), "coefficient {:#b} does not belong to the lattice", c.bits());
        }
        let coeffs: Vec<u32> = coeffs.iter().map(|c| c.bits()).collect();
        let normalized = table_is_monotone(arity, &coeffs);
        PolynomialDnf { arity, carrier: Carrier::Lattice, coeffs, normalized }
    }

    /// Polynomial over the Boolean carrier.
    pub fn over_boolean(lat: &DistributiveLattice, arity: usize, coeffs: Vec<BoolElement>) -> Self {
        assert_eq!(coeffs.len(), 1 << arity, "coefficient table must have 2^arity entries");
        for &c in &coeffs {
            assert!(c.bits() & !lat.full_mask() == 0, "coefficient {:#b} is out of range", c.bits());
        }
        let coeffs: Vec<u32> = coeffs.iter().map(|c| c.bits()).collect();
        let normalized = table_is_monotone(arity, &coeffs);
        PolynomialDnf { arity, carrier: Carrier::Boolean, coeffs, normalized }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    /// Is the table monotone under subset inclusion (the canonical form)?
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Coefficient of `subset`, viewed in the Boolean extension (valid for
    /// both carriers — lattice coefficients are Boolean elements too).
    pub fn coeff(&self, subset: u32) -> BoolElement {
        BoolElement(self.coeffs[subset as usize])
    }

    /// Coefficient of `subset` as a lattice element. Lattice carrier only.
    pub fn lattice_coeff(&self, subset: u32) -> LatticeElement {
        assert_eq!(self.carrier, Carrier::Lattice, "coefficients live in the Boolean extension");
        LatticeElement(self.coeffs[subset as usize])
    }

    /// Evaluate at a point of `B^n`. Works for either carrier: a lattice
    /// polynomial is in particular a Boolean one.
    pub fn evaluate(&self, lat: &DistributiveLattice, point: &[BoolElement]) -> BoolElement {
        assert_eq!(point.len(), self.arity, "arity mismatch");
        let full = lat.full_mask();
        for &x in point {
            assert!(x.bits() & !full == 0, "point component {:#b} is out of range", x.bits());
        }
        let mut acc = 0u32;
        for (mask, &c) in self.coeffs.iter().enumerate() {
            let mut term = c;
            for (i, &x) in point.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    term &= x.bits();
                }
            }
            acc |= term;
        }
        BoolElement(acc)
    }

    /// Evaluate a lattice-carrier polynomial at a point of `L^n`; the result
    /// stays in the lattice.
    pub fn evaluate_lattice(&self, lat: &DistributiveLattice, point: &[LatticeElement]) -> LatticeElement {
        assert_eq!(self.carrier, Carrier::Lattice, "Boolean-carrier polynomial evaluated as lattice polynomial");
        for &x in point {
            assert!(lat.is_element(x), "point component {:#b} does not belong to the lattice", x.bits());
        }
        let b: Vec<BoolElement> = point.iter().map(|&x| lat.embed(x)).collect();
        // Meets and joins of downsets are downsets, so the bits are in L.
        LatticeElement(self.evaluate(lat, &b).bits())
    }

    /// The canonical monotone table for the same function:
    /// `c'_I = ⋁_{J ⊆ I} c_J`. Idempotent; already-normalized input is
    /// returned unchanged.
    pub fn normalize_monotone(&self) -> PolynomialDnf {
        if self.normalized {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        // Zeta transform over the subset lattice, one bit at a time.
        for i in 0..self.arity {
            for mask in 0..coeffs.len() {
                if mask >> i & 1 == 1 {
                    coeffs[mask] |= coeffs[mask ^ (1 << i)];
                }
            }
        }
        PolynomialDnf { arity: self.arity, carrier: self.carrier, coeffs, normalized: true }
    }

    /// Recover the (normalized) coefficient table of a polynomial function
    /// given as a black box, by evaluating it at the characteristic points
    /// `1_I` (top in the coordinates of `I`, bottom elsewhere).
    ///
    /// If the black box is not a polynomial function the result is garbage;
    /// callers verify by re-evaluation.
    pub fn recover_coefficients<F>(
        lat: &DistributiveLattice,
        arity: usize,
        carrier: Carrier,
        black_box: F,
    ) -> PolynomialDnf
    where
        F: Fn(&[BoolElement]) -> BoolElement,
    {
        let full = lat.full_mask();
        let mut coeffs = Vec::with_capacity(1 << arity);
        let mut point = vec![BoolElement(0); arity];
        for mask in 0..1u32 << arity {
            for (i, x) in point.iter_mut().enumerate() {
                *x = BoolElement(if mask >> i & 1 == 1 { full } else { 0 });
            }
            coeffs.push(black_box(&point).bits());
        }
        // p(1_I) = ⋁_{J ⊆ I} c_J is monotone in I for genuine polynomials.
        let normalized = table_is_monotone(arity, &coeffs);
        PolynomialDnf { arity, carrier, coeffs, normalized }
    }

    /// Do `self` and `other` denote the same function? Decided by comparing
    /// normalized tables, which is exact over bounded carriers.
    pub fn functions_equal(&self, other: &PolynomialDnf) -> bool {
        assert_eq!(self.carrier, other.carrier, "carrier mismatch");
        assert_eq!(self.arity, other.arity, "arity mismatch");
        self.normalize_monotone().coeffs == other.normalize_monotone().coeffs
    }
}
