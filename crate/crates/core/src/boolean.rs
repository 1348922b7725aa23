//! The Boolean algebra generated by a finite distributive lattice.
//!
//! In the downset representation, the Boolean algebra `B` generated by the
//! lattice `L` is simply the full powerset of the join-irreducibles:
//! arbitrary bit masks, with complement as bit flip. `L` embeds into `B` as
//! the downward-closed masks, and the embedding preserves meet, join, bottom,
//! and top — they are the same bit operations on both sides.
//!
//! Two maps connect `B` back to `L`:
//!
//! * [`DistributiveLattice::closure`] — the least element of `L` above a
//!   given `u ∈ B`, computed as the downward closure of `u`'s bits;
//! * [`DistributiveLattice::interior`] — the greatest element of `L` below
//!   `u`, the largest downset contained in `u`'s bits.
//!
//! `closure` is a closure operator and `interior` its dual, and they form the
//! sandwich `interior(u) ≤ u ≤ closure(u)` with the adjunctions
//! `embed(x) ≤ u ⇔ x ≤ interior(u)` and `u ≤ embed(x) ⇔ closure(u) ≤ x`.

use crate::lattice::{DistributiveLattice, LatticeElement};

/// An element of the Boolean algebra over a lattice's join-irreducibles: an
/// arbitrary subset of irreducible indices, with no downward-closure
/// requirement. A `BoolElement` lies in the image of the lattice exactly when
/// its bit set is downward closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoolElement(pub(crate) u32);

impl BoolElement {
    /// Raw bit mask over the irreducibles.
    pub fn bits(self) -> u32 {
        self.0
    }
}

impl DistributiveLattice {
    fn assert_bool(&self, u: BoolElement) {
        assert!(u.0 & !self.full_mask() == 0, "Boolean element {:#b} is out of range for this lattice", u.0);
    }

    /// Embed a lattice element into the Boolean algebra. Injective; preserves
    /// meet, join, bottom, and top (the bits do not change).
    pub fn embed(&self, x: LatticeElement) -> BoolElement {
        assert!(self.is_element(x), "element {:#b} does not belong to this lattice", x.0);
        BoolElement(x.0)
    }

    /// Set complement over the irreducibles.
    pub fn complement(&self, u: BoolElement) -> BoolElement {
        self.assert_bool(u);
        BoolElement(!u.0 & self.full_mask())
    }

    /// Intersection in `B`.
    pub fn bool_meet(&self, u: BoolElement, v: BoolElement) -> BoolElement {
        self.assert_bool(u);
        self.assert_bool(v);
        BoolElement(u.0 & v.0)
    }

    /// Union in `B`.
    pub fn bool_join(&self, u: BoolElement, v: BoolElement) -> BoolElement {
        self.assert_bool(u);
        self.assert_bool(v);
        BoolElement(u.0 | v.0)
    }

    /// Subset order on `B`.
    pub fn bool_leq(&self, u: BoolElement, v: BoolElement) -> bool {
        self.assert_bool(u);
        self.assert_bool(v);
        u.0 & !v.0 == 0
    }

    /// Least element of `B` (same bits as the lattice bottom).
    pub fn bool_bottom(&self) -> BoolElement {
        BoolElement(0)
    }

    /// Greatest element of `B` (same bits as the lattice top).
    pub fn bool_top(&self) -> BoolElement {
        BoolElement(self.full_mask())
    }

    /// Does `u` lie in the image of the lattice, i.e. is its bit set downward
    /// closed?
    pub fn in_lattice(&self, u: BoolElement) -> bool {
        self.assert_bool(u);
        self.is_element(LatticeElement(u.0))
    }

    /// Reinterpret an in-lattice Boolean element as a lattice element.
    pub fn to_lattice(&self, u: BoolElement) -> LatticeElement {
        assert!(self.in_lattice(u), "Boolean element {:#b} is not downward closed", u.0);
        LatticeElement(u.0)
    }

    /// The least lattice element above `u`: close `u`'s bits downward by
    /// adding the principal downset of every member. Equals the meet of all
    /// lattice elements ≥ `u` (checked as a test property).
    pub fn closure(&self, u: BoolElement) -> LatticeElement {
        self.assert_bool(u);
        let mut mask = u.0;
        for j in 0..self.poset().len() {
            if u.0 >> j & 1 == 1 {
                mask |= self.poset().below(j);
            }
        }
        LatticeElement(mask)
    }

    /// The greatest lattice element below `u`: keep exactly the irreducibles
    /// whose principal downset fits inside `u`. Equals the join of all lattice
    /// elements ≤ `u` (checked as a test property).
    pub fn interior(&self, u: BoolElement) -> LatticeElement {
        self.assert_bool(u);
        let mut mask = 0;
        for j in 0..self.poset().len() {
            if self.poset().below(j) & !u.0 == 0 {
                mask |= 1 << j;
            }
        }
        LatticeElement(mask)
    }

    /// All `2^m` elements of `B`, in ascending mask order.
    pub fn bool_elements(&self) -> impl Iterator<Item = BoolElement> {
        (0..=self.full_mask() as u64).map(|mask| BoolElement(mask as u32))
    }
}
