//! Brute-force reference oracle.
//!
//! Everything here recomputes answers from first principles so that the
//! solver can be cross-checked against an implementation that shares none of
//! its reasoning: the oracle enumerates normalized monotone coefficient
//! tables directly (each polynomial function has exactly one) and filters
//! them by evaluating at the domain points. It never consults the solver's
//! feasibility tests, coefficient bounds, or interval machinery — from a
//! [`CuboidProblem`] it reads only the vertices and the value table.
//!
//! Every search is capped: the configured budget bounds the number of
//! candidate tables the walk may visit, and blowing it is an error, never a
//! silent truncation.

use crate::boolean::BoolElement;
use crate::error::FunctionCapExceeded;
use crate::lattice::{DistributiveLattice, LatticeElement};
use crate::polynomial::PolynomialDnf;
use crate::solver::CuboidProblem;

/// Budget for brute-force searches.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Maximum number of candidate coefficient tables a search may visit.
    pub max_function_count: u64,
    /// Reserved for sampling-based strategies. The exhaustive searches are
    /// deterministic and ignore it.
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_function_count: 1_000_000, seed: 0 }
    }
}

/// A depth-first walk over normalized monotone coefficient tables with
/// per-term admissibility pruning.
///
/// Tables are indexed by subset mask; the walk assigns index 0 first and
/// candidates in ascending carrier order, so the output is in lexicographic
/// table order. `monomials[p][I]` caches `⋀_{i∈I} x_i` for domain point `p`
/// (the empty meet being the top of the carrier), and a candidate `c_I` is
/// admissible only when `c_I ∧ ⋀_{i∈I} x_i ≤ f(x)` for every point — a term
/// of a join can never be washed out later, so violating prefixes are cut.
struct Search {
    carrier: Vec<u32>,
    table_len: usize,
    arity: usize,
    monomials: Vec<Vec<u32>>,
    targets: Vec<u32>,
}

impl Search {
    fn admissible(&self, idx: usize, c: u32, chosen: &[u32]) -> bool {
        // Monotone against the lower covers, all already assigned.
        let mut need = 0u32;
        for i in 0..self.arity {
            if idx >> i & 1 == 1 {
                need |= chosen[idx ^ (1 << i)];
            }
        }
        if need & !c != 0 {
            return false;
        }
        self.targets
            .iter()
            .zip(&self.monomials)
            .all(|(&t, m)| c & m[idx] & !t == 0)
    }

    /// Count the leaves the materialize pass would visit; false on budget blowout.
    fn count_from(&self, idx: usize, chosen: &mut [u32], seen: &mut u64, cap: u64) -> bool {
        if idx == self.table_len {
            *seen += 1;
            return *seen <= cap;
        }
        for &c in &self.carrier {
            if self.admissible(idx, c, chosen) {
                chosen[idx] = c;
                if !self.count_from(idx + 1, chosen, seen, cap) {
                    return false;
                }
            }
        }
        true
    }

    /// `acc[p]` carries the partial join `⋁_{J < idx} (c_J ∧ ⋀_{i∈J} x_i)`;
    /// a leaf is kept when every accumulated join equals its target.
    fn collect_from(&self, idx: usize, chosen: &mut Vec<u32>, acc: &[u32], out: &mut Vec<Vec<u32>>) {
        if idx == self.table_len {
            if acc.iter().zip(&self.targets).all(|(&a, &t)| a == t) {
                out.push(chosen.clone());
            }
            return;
        }
        for &c in &self.carrier {
            if self.admissible(idx, c, chosen) {
                chosen[idx] = c;
                let next: Vec<u32> = acc
                    .iter()
                    .zip(&self.monomials)
                    .map(|(&a, m)| a | (c & m[idx]))
                    .collect();
                self.collect_from(idx + 1, chosen, &next, out);
            }
        }
    }

    fn run(&self, cap: u64) -> Result<Vec<Vec<u32>>, FunctionCapExceeded> {
        let mut seen = 0u64;
        let mut chosen = vec![0u32; self.table_len];
        if !self.count_from(0, &mut chosen, &mut seen, cap) {
            return Err(FunctionCapExceeded { cap });
        }
        // Materialize in chunks keyed by the first coefficient; chunk order
        // follows the carrier, so sequential and parallel runs agree.
        let tables = crate::par::ordered_flat_map(seen, self.carrier.clone(), |c0| {
            let mut chosen = vec![0u32; self.table_len];
            let mut out = Vec::new();
            if self.admissible(0, c0, &chosen) {
                chosen[0] = c0;
                let acc: Vec<u32> = self.monomials.iter().map(|m| c0 & m[0]).collect();
                self.collect_from(1, &mut chosen, &acc, &mut out);
            }
            out
        });
        Ok(tables)
    }
}

fn monomial_row(full: u32, arity: usize, point: &[u32]) -> Vec<u32> {
    (0..1u32 << arity)
        .map(|mask| {
            let mut m = full;
            for (i, &x) in point.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m &= x;
                }
            }
            m
        })
        .collect()
}

/// Every polynomial function `L^arity → L`, one normalized table each, in
/// lexicographic table order.
pub fn all_polynomial_functions(
    lat: &DistributiveLattice,
    arity: usize,
    cfg: &OracleConfig,
) -> Result<Vec<PolynomialDnf>, FunctionCapExceeded> {
    assert!(arity <= crate::solver::MAX_ARITY, "arity above the coefficient-table cap");
    let search = Search {
        carrier: lat.elements().iter().map(|e| e.bits()).collect(),
        table_len: 1 << arity,
        arity,
        monomials: Vec::new(),
        targets: Vec::new(),
    };
    let tables = search.run(cfg.max_function_count)?;
    Ok(tables
        .into_iter()
        .map(|t| PolynomialDnf::over_lattice(lat, arity, t.into_iter().map(LatticeElement).collect()))
        .collect())
}

/// All polynomial functions agreeing with `values` on an arbitrary finite
/// domain `points ⊆ L^arity`, by exhaustive search. An empty domain imposes
/// no constraint.
pub fn brute_interpolate(
    lat: &DistributiveLattice,
    arity: usize,
    points: &[Vec<LatticeElement>],
    values: &[LatticeElement],
    cfg: &OracleConfig,
) -> Result<Vec<PolynomialDnf>, FunctionCapExceeded> {
    assert!(arity <= crate::solver::MAX_ARITY, "arity above the coefficient-table cap");
    assert_eq!(points.len(), values.len(), "one value per domain point");
    for p in points {
        assert_eq!(p.len(), arity, "domain points must have the problem arity");
        for &x in p {
            assert!(lat.is_element(x), "domain points must belong to the lattice");
        }
    }
    for &v in values {
        assert!(lat.is_element(v), "values must belong to the lattice");
    }
    let full = lat.full_mask();
    let search = Search {
        carrier: lat.elements().iter().map(|e| e.bits()).collect(),
        table_len: 1 << arity,
        arity,
        monomials: points
            .iter()
            .map(|p| {
                let bits: Vec<u32> = p.iter().map(|x| x.bits()).collect();
                monomial_row(full, arity, &bits)
            })
            .collect(),
        targets: values.iter().map(|v| v.bits()).collect(),
    };
    let tables = search.run(cfg.max_function_count)?;
    Ok(tables
        .into_iter()
        .map(|t| PolynomialDnf::over_lattice(lat, arity, t.into_iter().map(LatticeElement).collect()))
        .collect())
}

/// All polynomials over the Boolean extension that restrict to the problem's
/// value table on its cuboid vertices. Reads only the vertices and values of
/// the problem — none of its analysis.
///
/// The carrier is the full powerset, so this is kept to toy sizes: at most
/// four irreducibles (16 extension elements) and arity at most two.
pub fn brute_b_interpolate(
    lat: &DistributiveLattice,
    prob: &CuboidProblem<'_>,
    cfg: &OracleConfig,
) -> Result<Vec<PolynomialDnf>, FunctionCapExceeded> {
    assert!(lat.irreducible_count() <= 4, "Boolean-extension search is capped at 16 elements");
    assert!(prob.arity() <= 2, "Boolean-extension search is capped at arity 2");
    let arity = prob.arity();
    let full = lat.full_mask();
    let mut monomials = Vec::new();
    let mut targets = Vec::new();
    for mask in 0..1u32 << arity {
        let bits: Vec<u32> = prob.vertex(mask).iter().map(|x| x.bits()).collect();
        monomials.push(monomial_row(full, arity, &bits));
        targets.push(prob.value(mask).bits());
    }
    let search = Search {
        carrier: (0..=u64::from(full)).map(|m| m as u32).collect(),
        table_len: 1 << arity,
        arity,
        monomials,
        targets,
    };
    let tables = search.run(cfg.max_function_count)?;
    Ok(tables
        .into_iter()
        .map(|t| PolynomialDnf::over_boolean(lat, arity, t.into_iter().map(BoolElement).collect()))
        .collect())
}
