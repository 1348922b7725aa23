//! Interpolation of a partial function given on the vertices of a cuboid.
//!
//! The domain is a cuboid `D = {ê_I : I ⊆ [n]}` inside `L^n`: per coordinate
//! a strict pair `a_i < b_i`, and `ê_I` takes `b_i` in the coordinates of `I`
//! and `a_i` elsewhere. Given a value table `f : D → L`, the solver decides
//! whether some lattice polynomial restricts to `f` on `D`, and describes
//! *all* of them.
//!
//! The structure of the answer:
//!
//! * feasibility holds iff `f` is monotone on the vertex order and satisfies
//!   the local condition (★): `f(ê_{I∪{k}}) ∧ a_k ≤ f(ê_I) ≤ f(ê_{I∖{k}}) ∨ b_k`;
//! * in the Boolean extension, the coefficientwise bounds
//!   `c_I⁻ = f(ê_I) ∧ ⋀_{i∉I} a_i′` and `c_I⁺ = f(ê_I) ∨ ⋁_{i∈I} b_i′`
//!   cut out exactly the solutions: a normalized table `c` solves the problem
//!   iff `c_I⁻ ≤ c_I ≤ c_I⁺` for every `I`;
//! * over the lattice itself the intervals tighten to
//!   `cl(c_I⁻) ≤ c_I ≤ int(c_I⁺)`, and the value table itself is always the
//!   *canonical* solution `p₀` (coefficients `c_I = f(ê_I)`) when one exists.
//!
//! The coefficient-interval description is valid only for feasible problems —
//! on infeasible input the raw interval test over-accepts, which is why
//! [`CuboidProblem::is_solution`] and [`CuboidProblem::enumerate_solutions`]
//! gate on feasibility first. Infeasibility is a value with a machine-readable
//! witness, never a panic: rejected instances are first-class outputs.

use crate::boolean::BoolElement;
use crate::error::{CapExceeded, ProblemError};
use crate::lattice::{DistributiveLattice, LatticeElement};
use crate::polynomial::PolynomialDnf;

/// Coefficient tables are indexed by `u32` subset masks and materialized as
/// `2^n` vectors, so the arity stays desk-scale.
pub const MAX_ARITY: usize = 12;

/// A monotonicity violation: a cover pair of vertex subsets with
/// `f(ê_lo) ≰ f(ê_hi)`. Masks use bit `i` for coordinate `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotoneWitness {
    pub lo: u32,
    pub hi: u32,
}

/// Which of the two (★) inequalities failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarSide {
    /// `f(ê_{I∪{k}}) ∧ a_k ≰ f(ê_I)` (nontrivial for `k ∉ I`).
    Lower,
    /// `f(ê_I) ≰ f(ê_{I∖{k}}) ∨ b_k` (nontrivial for `k ∈ I`).
    Upper,
}

/// A failed (★) instance, with the two compared sides already evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarWitness {
    /// The subset `I` (bit `i` ↔ coordinate `i + 1`).
    pub subset: u32,
    /// The coordinate `k`, zero-based.
    pub coord: usize,
    pub side: StarSide,
    /// Left-hand side of the violated inequality.
    pub lhs: LatticeElement,
    /// Right-hand side of the violated inequality.
    pub rhs: LatticeElement,
}

/// A failed instance of the iterated condition over a pair `S ⊆ T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairStarWitness {
    pub sub: u32,
    pub sup: u32,
    pub side: StarSide,
}

/// Why a problem has no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infeasibility {
    NotMonotone(MonotoneWitness),
    StarViolated(StarWitness),
}

/// A pair of domain points refuting the chain separation criterion: indices
/// `x`, `y` into the point list with `f(x) < f(y)` but no coordinate `i`
/// satisfying `x_i ≤ f(x)` and `f(y) ≤ y_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RgWitness {
    pub x: usize,
    pub y: usize,
}

/// Full description of the solution set of a [`CuboidProblem`].
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub feasible: bool,
    /// Present exactly when infeasible.
    pub reason: Option<Infeasibility>,
    /// Per subset `I`: the Boolean-extension interval `(c_I⁻, c_I⁺)`.
    pub boolean_bounds: Vec<(BoolElement, BoolElement)>,
    /// Per subset `I`: the lattice interval `(cl(c_I⁻), int(c_I⁺))`.
    pub lattice_bounds: Vec<(LatticeElement, LatticeElement)>,
    /// The canonical solution `p₀` with `c_I = f(ê_I)`, when feasible.
    pub canonical: Option<PolynomialDnf>,
}

/// An interpolation problem on the vertices of a cuboid.
#[derive(Debug, Clone)]
pub struct CuboidProblem<'a> {
    lat: &'a DistributiveLattice,
    bounds: Vec<(LatticeElement, LatticeElement)>,
    values: Vec<LatticeElement>,
}

impl<'a> CuboidProblem<'a> {
    /// Assemble a problem from per-coordinate bounds `(a_i, b_i)` and the
    /// value table `f` indexed by subset mask (`values[I] = f(ê_I)`).
    ///
    /// Fails when some `a_i < b_i` is not strict or the table size is not
    /// `2^n`. Elements that do not belong to `lat` are usage errors and panic.
    pub fn new(
        lat: &'a DistributiveLattice,
        bounds: Vec<(LatticeElement, LatticeElement)>,
        values: Vec<LatticeElement>,
    ) -> Result<Self, ProblemError> {
        let n = bounds.len();
        if n > MAX_ARITY {
            return Err(ProblemError::ArityTooLarge { got: n, max: MAX_ARITY });
        }
        if values.len() != 1 << n {
            return Err(ProblemError::WrongTableSize { got: values.len(), want: 1 << n });
        }
        for (i, &(a, b)) in bounds.iter().enumerate() {
            assert!(lat.is_element(a) && lat.is_element(b), "bounds must belong to the lattice");
            if !lat.lt(a, b) {
                return Err(ProblemError::NonStrictBounds { coord: i + 1 });
            }
        }
        for &v in &values {
            assert!(lat.is_element(v), "values must belong to the lattice");
        }
        Ok(CuboidProblem { lat, bounds, values })
    }

    pub fn lattice(&self) -> &'a DistributiveLattice {
        self.lat
    }

    pub fn arity(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(LatticeElement, LatticeElement)] {
        &self.bounds
    }

    pub fn values(&self) -> &[LatticeElement] {
        &self.values
    }

    /// `f(ê_I)` for the subset mask `I`.
    pub fn value(&self, subset: u32) -> LatticeElement {
        self.values[subset as usize]
    }

    /// The cuboid vertex `ê_I`: `b_i` in the coordinates of `I`, `a_i` elsewhere.
    pub fn vertex(&self, subset: u32) -> Vec<LatticeElement> {
        self.bounds
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if subset >> i & 1 == 1 { b } else { a })
            .collect()
    }

    /// Is `f` monotone along the subset order of the vertices? Checking cover
    /// pairs (`|J∖I| = 1`) suffices by transitivity, and makes the witness
    /// minimal.
    pub fn check_monotone(&self) -> Option<MonotoneWitness> {
        let n = self.arity();
        for mask in 0..1u32 << n {
            for k in 0..n {
                if mask >> k & 1 == 0 {
                    let sup = mask | 1 << k;
                    if !self.lat.leq(self.values[mask as usize], self.values[sup as usize]) {
                        return Some(MonotoneWitness { lo: mask, hi: sup });
                    }
                }
            }
        }
        None
    }

    /// The local solvability condition (★):
    /// `f(ê_{I∪{k}}) ∧ a_k ≤ f(ê_I) ≤ f(ê_{I∖{k}}) ∨ b_k` for all `I`, `k`.
    /// The lower inequality is trivial for `k ∈ I` and the upper for `k ∉ I`,
    /// so only the nontrivial side of each pair is tested.
    pub fn check_star(&self) -> Option<StarWitness> {
        let n = self.arity();
        for mask in 0..1u32 << n {
            let f_i = self.values[mask as usize];
            for k in 0..n {
                let (a, b) = self.bounds[k];
                if mask >> k & 1 == 0 {
                    let lhs = self.lat.meet(self.values[(mask | 1 << k) as usize], a);
                    if !self.lat.leq(lhs, f_i) {
                        return Some(StarWitness { subset: mask, coord: k, side: StarSide::Lower, lhs, rhs: f_i });
                    }
                } else {
                    let rhs = self.lat.join(self.values[(mask ^ 1 << k) as usize], b);
                    if !self.lat.leq(f_i, rhs) {
                        return Some(StarWitness { subset: mask, coord: k, side: StarSide::Upper, lhs: f_i, rhs });
                    }
                }
            }
        }
        None
    }

    /// The iterated form of (★) over all pairs `S ⊆ T`:
    /// `f(ê_T) ∧ ⋀_{k∈T∖S} a_k ≤ f(ê_S)` and `f(ê_T) ≤ f(ê_S) ∨ ⋁_{k∈T∖S} b_k`.
    /// Implied by (★); checked directly and exhaustively. The conventions for
    /// `S = T` are the empty meet = top and empty join = bottom, which make
    /// both inequalities degenerate to `f(ê_T) ≤ f(ê_T)`.
    pub fn check_iterated_star(&self) -> Option<PairStarWitness> {
        let n = self.arity();
        for sup in 0..1u32 << n {
            let f_t = self.values[sup as usize];
            for sub in 0..=sup {
                if sub & sup != sub {
                    continue;
                }
                let f_s = self.values[sub as usize];
                let mut lhs = self.lat.top();
                let mut rhs = self.lat.bottom();
                for k in 0..n {
                    if (sup ^ sub) >> k & 1 == 1 {
                        lhs = self.lat.meet(lhs, self.bounds[k].0);
                        rhs = self.lat.join(rhs, self.bounds[k].1);
                    }
                }
                if !self.lat.leq(self.lat.meet(f_t, lhs), f_s) {
                    return Some(PairStarWitness { sub, sup, side: StarSide::Lower });
                }
                if !self.lat.leq(f_t, self.lat.join(f_s, rhs)) {
                    return Some(PairStarWitness { sub, sup, side: StarSide::Upper });
                }
            }
        }
        None
    }

    /// Monotonicity first, then (★): the combined feasibility test.
    fn feasibility(&self) -> Option<Infeasibility> {
        if let Some(w) = self.check_monotone() {
            return Some(Infeasibility::NotMonotone(w));
        }
        self.check_star().map(Infeasibility::StarViolated)
    }

    /// The coefficientwise solution bounds in the Boolean extension:
    /// `c_I⁻ = f(ê_I) ∧ ⋀_{i∉I} a_i′` and `c_I⁺ = f(ê_I) ∨ ⋁_{i∈I} b_i′`.
    /// Defined regardless of feasibility, and always `c_I⁻ ≤ c_I⁺` (both sit
    /// next to `f(ê_I)`). Empty meets and joins follow the usual conventions,
    /// so `c_{[n]}⁻ = f(ê_{[n]})` and `c_∅⁺ = f(ê_∅)`.
    pub fn compute_bounds(&self) -> Vec<(BoolElement, BoolElement)> {
        let n = self.arity();
        let full = self.lat.full_mask();
        (0..1u32 << n)
            .map(|mask| {
                let f = self.values[mask as usize].bits();
                let mut lo = f;
                let mut hi = f;
                for (i, &(a, b)) in self.bounds.iter().enumerate() {
                    if mask >> i & 1 == 0 {
                        lo &= !a.bits() & full;
                    } else {
                        hi |= !b.bits() & full;
                    }
                }
                (BoolElement(lo), BoolElement(hi))
            })
            .collect()
    }

    /// The lattice-side intervals `[cl(c_I⁻), int(c_I⁺)]` per subset.
    pub fn lattice_bounds(&self) -> Vec<(LatticeElement, LatticeElement)> {
        self.compute_bounds()
            .into_iter()
            .map(|(lo, hi)| (self.lat.closure(lo), self.lat.interior(hi)))
            .collect()
    }

    /// The extremal solutions over the Boolean extension: the polynomials
    /// `p⁻`, `p⁺` whose coefficient tables are the lower and upper bounds.
    /// On a feasible problem both restrict to `f` on the vertices, and every
    /// Boolean solution `q` sits between them pointwise. Infeasible problems
    /// are refused with the feasibility witness — the tables carry no
    /// guarantee there.
    pub fn extremal_polynomials(&self) -> Result<(PolynomialDnf, PolynomialDnf), Infeasibility> {
        if let Some(why) = self.feasibility() {
            return Err(why);
        }
        let bb = self.compute_bounds();
        let lo = PolynomialDnf::over_boolean(self.lat, self.arity(), bb.iter().map(|&(l, _)| l).collect());
        let hi = PolynomialDnf::over_boolean(self.lat, self.arity(), bb.iter().map(|&(_, h)| h).collect());
        Ok((lo, hi))
    }

    /// Decide the problem and describe the solution set. Infeasibility is a
    /// value (with its witness), not an error.
    pub fn solve(&self) -> SolutionSet {
        let reason = self.feasibility();
        let boolean_bounds = self.compute_bounds();
        let lattice_bounds = boolean_bounds
            .iter()
            .map(|&(lo, hi)| (self.lat.closure(lo), self.lat.interior(hi)))
            .collect();
        let canonical = if reason.is_none() {
            let p0 = PolynomialDnf::over_lattice(self.lat, self.arity(), self.values.clone());
            // The canonical table must reproduce f on every vertex; anything
            // else would contradict feasibility.
            for mask in 0..1u32 << self.arity() {
                assert_eq!(
                    p0.evaluate_lattice(self.lat, &self.vertex(mask)),
                    self.values[mask as usize],
                    "canonical solution failed to reproduce f at vertex {mask:#b}"
                );
            }
            Some(p0)
        } else {
            None
        };
        SolutionSet {
            feasible: reason.is_none(),
            reason,
            boolean_bounds,
            lattice_bounds,
            canonical,
        }
    }

    /// Is `p` (over either carrier) a solution? Decided by the normalized
    /// coefficient-interval test against the Boolean bounds, which agrees
    /// with pointwise interpolation on feasible problems; infeasible problems
    /// have no solutions at all.
    pub fn is_solution(&self, p: &PolynomialDnf) -> bool {
        assert_eq!(p.arity(), self.arity(), "arity mismatch");
        let full = self.lat.full_mask();
        for mask in 0..1u32 << self.arity() {
            assert!(p.coeff(mask).bits() & !full == 0, "coefficients are out of range for this lattice");
        }
        if self.feasibility().is_some() {
            return false;
        }
        let q = p.normalize_monotone();
        self.compute_bounds().iter().enumerate().all(|(mask, &(lo, hi))| {
            let c = q.coeff(mask as u32).bits();
            lo.bits() & !c == 0 && c & !hi.bits() == 0
        })
    }

    /// All solutions over the lattice, as normalized monotone coefficient
    /// tables within the lattice intervals, in lexicographic table order
    /// (coefficient of `∅` most significant, elements by canonical index).
    /// Each table is a distinct function; the list is empty iff the problem
    /// is infeasible.
    ///
    /// Refused with [`CapExceeded`] when the product of the interval sizes —
    /// the number of raw interval combinations to sift — exceeds `cap`.
    /// Interval membership alone does not force a monotone table, so
    /// candidates are pruned against their already-chosen lower covers
    /// during the walk.
    pub fn enumerate_solutions(&self, cap: u64) -> Result<Vec<PolynomialDnf>, CapExceeded> {
        if self.feasibility().is_some() {
            return Ok(Vec::new());
        }
        let candidates: Vec<Vec<LatticeElement>> = self
            .lattice_bounds()
            .iter()
            .map(|&(lo, hi)| {
                self.lat
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&x| self.lat.leq(lo, x) && self.lat.leq(x, hi))
                    .collect()
            })
            .collect();
        let mut combinations: u128 = 1;
        for c in &candidates {
            debug_assert!(!c.is_empty(), "feasible problems have nonempty intervals");
            combinations = combinations.saturating_mul(c.len() as u128);
        }
        if combinations > cap as u128 {
            return Err(CapExceeded { combinations, cap });
        }

        // Independent chunks per first coefficient keep the output order
        // identical under sequential and parallel execution.
        let first = candidates[0].clone();
        let estimate = combinations.min(u64::MAX as u128) as u64;
        let solutions = crate::par::ordered_flat_map(estimate, first, |c_empty| {
            let mut chosen = vec![LatticeElement(0); candidates.len()];
            chosen[0] = c_empty;
            let mut out = Vec::new();
            self.enumerate_from(1, &candidates, &mut chosen, &mut out);
            out
        });
        Ok(solutions)
    }

    fn enumerate_from(
        &self,
        idx: usize,
        candidates: &[Vec<LatticeElement>],
        chosen: &mut [LatticeElement],
        out: &mut Vec<PolynomialDnf>,
    ) {
        if idx == candidates.len() {
            out.push(PolynomialDnf::over_lattice(self.lat, self.arity(), chosen.to_vec()));
            return;
        }
        // Monotonicity against the lower covers of idx, all of which are
        // numerically smaller and therefore already chosen.
        let mut need = 0u32;
        for i in 0..self.arity() {
            if idx >> i & 1 == 1 {
                need |= chosen[idx ^ (1 << i)].bits();
            }
        }
        for &x in &candidates[idx] {
            if need & !x.bits() == 0 {
                chosen[idx] = x;
                self.enumerate_from(idx + 1, candidates, chosen, out);
            }
        }
    }
}

/// Interpolation on the full unit cuboid (`a_i = 0`, `b_i = 1` for every
/// coordinate): a monotone table on `{0,1}^n` extends to exactly one
/// polynomial function, whose coefficients are the table itself; a
/// non-monotone table extends to none and yields its witness.
///
/// The lattice must have at least two elements (otherwise there is no strict
/// pair `0 < 1`).
pub fn goodstein(
    lat: &DistributiveLattice,
    arity: usize,
    values: Vec<LatticeElement>,
) -> Result<PolynomialDnf, MonotoneWitness> {
    assert!(lat.element_count() >= 2, "lattice must have at least two elements");
    let bounds = vec![(lat.bottom(), lat.top()); arity];
    let prob = CuboidProblem::new(lat, bounds, values.clone())
        .expect("unit bounds are strict; the table size is the caller's contract");
    if let Some(w) = prob.check_monotone() {
        return Err(w);
    }
    // With unit bounds (★) is vacuous: a_k = 0 and b_k = 1 absorb both sides.
    debug_assert!(prob.check_star().is_none());
    Ok(PolynomialDnf::over_lattice(lat, arity, values))
}

/// The chain separation criterion for an arbitrary finite domain `D ⊆ L^n`:
/// for every pair `x, y ∈ D` with `f(x) < f(y)` some coordinate `i` must
/// satisfy `x_i ≤ f(x)` and `f(y) ≤ y_i`.
///
/// On finite chains this decides interpolability exactly (both directions).
/// On non-chain lattices it is advisory only: it neither implies nor follows
/// from interpolability in general, although together with monotonicity it
/// does imply feasibility on cuboid domains.
pub fn check_rg(
    lat: &DistributiveLattice,
    points: &[Vec<LatticeElement>],
    values: &[LatticeElement],
) -> Option<RgWitness> {
    assert_eq!(points.len(), values.len(), "one value per domain point");
    let arity = points.first().map_or(0, Vec::len);
    for p in points {
        assert_eq!(p.len(), arity, "domain points must share one arity");
    }
    for x in 0..points.len() {
        for y in 0..points.len() {
            if lat.lt(values[x], values[y]) {
                let separated = (0..arity).any(|i| {
                    lat.leq(points[x][i], values[x]) && lat.leq(values[y], points[y][i])
                });
                if !separated {
                    return Some(RgWitness { x, y });
                }
            }
        }
    }
    None
}
