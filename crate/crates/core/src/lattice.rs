//! Finite distributive lattices in Birkhoff representation.
//!
//! Every finite distributive lattice is isomorphic to the lattice of downsets
//! of a finite poset — the poset of its join-irreducible elements. We take
//! that representation literally: an element *is* a downward-closed set of
//! irreducible indices packed into a `u32` bit mask, so meet is bitwise `&`,
//! join is bitwise `|`, and the lattice order is the subset test. The
//! representation also makes the Boolean algebra generated by the lattice (see
//! [`crate::boolean`]) a strict superset of the same masks.
//!
//! Lattices are described by a [`LatticeSpec`] — chains, powersets, products,
//! or the downsets of an explicit poset given by cover pairs — and built once;
//! a built lattice is immutable and freely shareable across threads.
//!
//! The element enumeration is canonical and stable: ascending numeric bit
//! mask. All indexing, enumeration output, and rendering rely on that order.

use std::collections::HashMap;

use crate::error::BuildError;

/// Hard cap on the number of join-irreducibles (and hence `2^20` on the
/// number of elements). Everything here is desk-scale by design; the cap
/// turns accidental blow-ups into clean errors.
pub const MAX_IRREDUCIBLES: usize = 20;

/// An element of a [`DistributiveLattice`]: a downward-closed set of
/// join-irreducible indices, packed into a bit mask.
///
/// Elements carry no back-reference to their lattice; operations that need
/// the order (meet, join, labels, …) live on the lattice and assert that
/// their arguments belong to it. Equality is set equality. There is
/// deliberately no `Ord` on this type: the lattice order is partial and is
/// queried via [`DistributiveLattice::leq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeElement(pub(crate) u32);

impl LatticeElement {
    /// Raw bit mask; bit `j` set means irreducible `j` lies below the element.
    pub fn bits(self) -> u32 {
        self.0
    }
}

/// The poset of join-irreducibles underlying a lattice.
///
/// Stored as one mask per irreducible: `below(j)` is the set of irreducibles
/// `≤ j`, including `j` itself — i.e. the principal downset of `j`.
#[derive(Debug, Clone)]
pub struct IrreduciblePoset {
    names: Vec<String>,
    below: Vec<u32>,
}

impl IrreduciblePoset {
    /// Number of join-irreducibles.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// True for the trivial (one-element) lattice's empty poset.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Display name of irreducible `j` as declared at construction.
    pub fn name(&self, j: usize) -> &str {
        &self.names[j]
    }

    /// Order test: is irreducible `i` ≤ irreducible `j`?
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j] >> i & 1 == 1
    }

    pub(crate) fn below(&self, j: usize) -> u32 {
        self.below[j]
    }
}

/// Construction description for a [`DistributiveLattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    /// Totally ordered lattice with `k` elements `0 < 1 < … < k-1`.
    Chain(usize),
    /// Powerset of `m` incomparable irreducibles — `2^m` elements. `Boolean(2)`
    /// is the four-element "diamond" `{0, a, b, 1}` with `a`, `b` incomparable.
    Boolean(usize),
    /// Direct product of two lattices (downsets of the disjoint union of the
    /// factor posets).
    Product(Box<LatticeSpec>, Box<LatticeSpec>),
    /// Downsets of an explicit poset. `covers` lists pairs `(lo, hi)` meaning
    /// `lo < hi`; the full order is their reflexive-transitive closure.
    Downsets {
        nodes: Vec<String>,
        covers: Vec<(String, String)>,
    },
}

impl LatticeSpec {
    /// Shorthand for [`LatticeSpec::Product`].
    pub fn product(left: LatticeSpec, right: LatticeSpec) -> LatticeSpec {
        LatticeSpec::Product(Box::new(left), Box::new(right))
    }
}

/// How default element labels are produced when no custom labels are set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LabelScheme {
    /// Chains label an element by its height: `"0"`, `"1"`, ….
    ChainHeight,
    /// Everything else labels an element by its irreducible set: `"{}"`,
    /// `"{1,3}"`, `"{x,y}"`, ….
    IrreducibleSet,
}

/// A finite distributive lattice: the downsets of an [`IrreduciblePoset`],
/// enumerated in ascending bit-mask order.
#[derive(Debug, Clone)]
pub struct DistributiveLattice {
    poset: IrreduciblePoset,
    elements: Vec<LatticeElement>,
    scheme: LabelScheme,
    /// Custom labels, parallel to `elements`, plus the reverse lookup.
    custom_labels: Option<(Vec<String>, HashMap<String, usize>)>,
    spec: LatticeSpec,
}

/// Names and labels end up in the line-oriented text format, where these
/// characters delimit tokens.
pub(crate) fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && !s.chars().any(|c| {
            c.is_whitespace() || matches!(c, '(' | ')' | ',' | '<' | '>' | '{' | '}' | '[' | ']' | '#' | ';')
        })
}

/// Flattened form of a spec: irreducible names plus cover pairs by index.
fn flatten(spec: &LatticeSpec) -> Result<(Vec<String>, Vec<(usize, usize)>, LabelScheme), BuildError> {
    match spec {
        LatticeSpec::Chain(0) => Err(BuildError::EmptyChain),
        LatticeSpec::Chain(k) => {
            // k - 1 irreducibles, totally ordered; irreducible j is the
            // element of height j + 1, so its display name is "j + 1".
            let names = (1..*k).map(|h| h.to_string()).collect();
            let covers = (0..k.saturating_sub(2)).map(|j| (j, j + 1)).collect();
            Ok((names, covers, LabelScheme::ChainHeight))
        }
        LatticeSpec::Boolean(m) => {
            let names = (1..=*m).map(|j| j.to_string()).collect();
            Ok((names, Vec::new(), LabelScheme::IrreducibleSet))
        }
        LatticeSpec::Product(left, right) => {
            let (ln, lc, _) = flatten(left)?;
            let (rn, rc, _) = flatten(right)?;
            let offset = ln.len();
            let mut names: Vec<String> = ln.into_iter().map(|n| format!("1.{n}")).collect();
            names.extend(rn.into_iter().map(|n| format!("2.{n}")));
            let mut covers = lc;
            covers.extend(rc.into_iter().map(|(a, b)| (a + offset, b + offset)));
            Ok((names, covers, LabelScheme::IrreducibleSet))
        }
        LatticeSpec::Downsets { nodes, covers } => {
            let mut index = HashMap::new();
            for (j, n) in nodes.iter().enumerate() {
                if !valid_name(n) {
                    return Err(BuildError::BadName(n.clone()));
                }
                if index.insert(n.clone(), j).is_some() {
                    return Err(BuildError::DuplicateNode(n.clone()));
                }
            }
            let resolve = |n: &String| index.get(n).copied().ok_or_else(|| BuildError::UnknownNode(n.clone()));
            let covers = covers
                .iter()
                .map(|(lo, hi)| Ok((resolve(lo)?, resolve(hi)?)))
                .collect::<Result<Vec<_>, BuildError>>()?;
            Ok((nodes.clone(), covers, LabelScheme::IrreducibleSet))
        }
    }
}

impl DistributiveLattice {
    /// Build the lattice of downsets described by `spec`.
    ///
    /// Fails on cyclic cover pairs (the error names the irreducibles on the
    /// cycle), unknown or duplicate nodes, and posets larger than
    /// [`MAX_IRREDUCIBLES`].
    pub fn build(spec: &LatticeSpec) -> Result<Self, BuildError> {
        let (names, covers, scheme) = flatten(spec)?;
        let m = names.len();
        if m > MAX_IRREDUCIBLES {
            return Err(BuildError::TooManyIrreducibles { got: m, max: MAX_IRREDUCIBLES });
        }

        // Reflexive-transitive closure of the covers. Masks only grow, so the
        // fixpoint loop terminates even on cyclic input.
        let mut below: Vec<u32> = (0..m).map(|j| 1 << j).collect();
        loop {
            let mut changed = false;
            for &(lo, hi) in &covers {
                let merged = below[hi] | below[lo];
                if merged != below[hi] {
                    below[hi] = merged;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        // A cycle shows up as two distinct irreducibles below each other.
        for i in 0..m {
            if (0..m).any(|j| j != i && below[i] >> j & 1 == 1 && below[j] >> i & 1 == 1) {
                let cycle: Vec<&str> = (0..m)
                    .filter(|&j| below[i] >> j & 1 == 1 && below[j] >> i & 1 == 1)
                    .map(|j| names[j].as_str())
                    .collect();
                return Err(BuildError::CyclicCovers(cycle.join(" <= ")));
            }
        }

        // Every downset, in ascending mask order: mask is a downset iff it
        // contains the principal downset of each of its members.
        let elements: Vec<LatticeElement> = (0..1u32 << m)
            .filter(|&mask| {
                (0..m).all(|j| mask >> j & 1 == 0 || below[j] & mask == below[j])
            })
            .map(LatticeElement)
            .collect();

        Ok(DistributiveLattice {
            poset: IrreduciblePoset { names, below },
            elements,
            scheme,
            custom_labels: None,
            spec: spec.clone(),
        })
    }

    /// Attach custom element labels, given in canonical element order.
    ///
    /// Labels must be unique, one per element, and valid tokens for the text
    /// format (see the error variants). Custom labels fully replace the
    /// default ones, including the display names of irreducibles.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, BuildError> {
        if labels.len() != self.elements.len() {
            return Err(BuildError::LabelCount { got: labels.len(), want: self.elements.len() });
        }
        let mut lookup = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if !valid_name(l) {
                return Err(BuildError::BadName(l.clone()));
            }
            if lookup.insert(l.clone(), i).is_some() {
                return Err(BuildError::DuplicateLabel(l.clone()));
            }
        }
        self.custom_labels = Some((labels, lookup));
        Ok(self)
    }

    /// The construction description this lattice was built from.
    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    /// The underlying poset of join-irreducibles.
    pub fn poset(&self) -> &IrreduciblePoset {
        &self.poset
    }

    /// Number of join-irreducibles.
    pub fn irreducible_count(&self) -> usize {
        self.poset.len()
    }

    /// Number of elements (downsets).
    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    /// All elements in canonical (ascending bit-mask) order.
    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    /// The least element — the empty downset.
    pub fn bottom(&self) -> LatticeElement {
        LatticeElement(0)
    }

    /// The greatest element — the full set of irreducibles.
    pub fn top(&self) -> LatticeElement {
        LatticeElement(self.full_mask())
    }

    pub(crate) fn full_mask(&self) -> u32 {
        if self.poset.is_empty() {
            0
        } else {
            (1u32 << self.poset.len()) - 1
        }
    }

    /// Does `x` denote an element of this lattice (a downset of its poset)?
    pub fn is_element(&self, x: LatticeElement) -> bool {
        x.0 & !self.full_mask() == 0
            && (0..self.poset.len())
                .all(|j| x.0 >> j & 1 == 0 || self.poset.below(j) & x.0 == self.poset.below(j))
    }

    fn assert_element(&self, x: LatticeElement) {
        assert!(self.is_element(x), "element {:#b} does not belong to this lattice", x.0);
    }

    /// Canonical index of `x` in [`Self::elements`].
    pub fn index_of(&self, x: LatticeElement) -> usize {
        self.assert_element(x);
        // Elements are sorted by mask.
        self.elements.binary_search_by_key(&x.0, |e| e.0).expect("downset present")
    }

    /// Element at canonical index `i`.
    pub fn element_at(&self, i: usize) -> LatticeElement {
        self.elements[i]
    }

    /// Principal downset of irreducible `j` — the smallest element containing it.
    pub fn principal_downset(&self, j: usize) -> LatticeElement {
        LatticeElement(self.poset.below(j))
    }

    /// Greatest lower bound. Downsets are closed under intersection.
    pub fn meet(&self, x: LatticeElement, y: LatticeElement) -> LatticeElement {
        self.assert_element(x);
        self.assert_element(y);
        LatticeElement(x.0 & y.0)
    }

    /// Least upper bound. Downsets are closed under union.
    pub fn join(&self, x: LatticeElement, y: LatticeElement) -> LatticeElement {
        self.assert_element(x);
        self.assert_element(y);
        LatticeElement(x.0 | y.0)
    }

    /// Lattice order: `x ≤ y` iff `x`'s downset is contained in `y`'s.
    pub fn leq(&self, x: LatticeElement, y: LatticeElement) -> bool {
        self.assert_element(x);
        self.assert_element(y);
        x.0 & !y.0 == 0
    }

    /// Strict order.
    pub fn lt(&self, x: LatticeElement, y: LatticeElement) -> bool {
        x != y && self.leq(x, y)
    }

    /// Display name of irreducible `j`. With custom labels this is the label
    /// of its principal downset; otherwise the name declared at construction.
    pub fn irreducible_name(&self, j: usize) -> String {
        match &self.custom_labels {
            Some((labels, _)) => labels[self.index_of(self.principal_downset(j))].clone(),
            None => self.poset.name(j).to_string(),
        }
    }

    /// Human-readable label of `x`. Defaults: height on chains, irreducible-set
    /// notation (`"{}"`, `"{1,3}"`) elsewhere; custom labels override both.
    pub fn label(&self, x: LatticeElement) -> String {
        self.assert_element(x);
        if let Some((labels, _)) = &self.custom_labels {
            return labels[self.index_of(x)].clone();
        }
        match self.scheme {
            LabelScheme::ChainHeight => x.0.count_ones().to_string(),
            LabelScheme::IrreducibleSet => {
                let members: Vec<&str> = (0..self.poset.len())
                    .filter(|&j| x.0 >> j & 1 == 1)
                    .map(|j| self.poset.name(j))
                    .collect();
                format!("{{{}}}", members.join(","))
            }
        }
    }

    /// Whether [`Self::with_labels`] has replaced the scheme-derived labels.
    pub fn has_custom_labels(&self) -> bool {
        self.custom_labels.is_some()
    }

    /// Inverse of [`Self::label`]: resolve a label back to its element.
    pub fn element_by_label(&self, label: &str) -> Option<LatticeElement> {
        if let Some((_, lookup)) = &self.custom_labels {
            return lookup.get(label).map(|&i| self.elements[i]);
        }
        match self.scheme {
            LabelScheme::ChainHeight => {
                let h: u32 = label.parse().ok()?;
                if h as usize > self.poset.len() {
                    return None;
                }
                Some(LatticeElement(if h == 0 { 0 } else { (1u32 << h) - 1 }))
            }
            LabelScheme::IrreducibleSet => {
                let inner = label.strip_prefix('{')?.strip_suffix('}')?;
                let mut mask = 0u32;
                if !inner.is_empty() {
                    for part in inner.split(',') {
                        let j = (0..self.poset.len()).find(|&j| self.poset.name(j) == part)?;
                        mask |= 1 << j;
                    }
                }
                let x = LatticeElement(mask);
                self.is_element(x).then_some(x)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(k: usize) -> DistributiveLattice {
        DistributiveLattice::build(&LatticeSpec::Chain(k)).unwrap()
    }

    fn diamond() -> DistributiveLattice {
        DistributiveLattice::build(&LatticeSpec::Boolean(2))
            .unwrap()
            .with_labels(["0", "a", "b", "1"].map(String::from).to_vec())
            .unwrap()
    }

    #[test]
    fn chain_is_totally_ordered() {
        let l = chain(4);
        assert_eq!(l.element_count(), 4);
        let e: Vec<_> = l.elements().to_vec();
        for i in 0..4 {
            assert_eq!(l.label(e[i]), i.to_string());
            for j in 0..4 {
                assert_eq!(l.leq(e[i], e[j]), i <= j);
                assert_eq!(l.meet(e[i], e[j]), e[i.min(j)]);
                assert_eq!(l.join(e[i], e[j]), e[i.max(j)]);
            }
        }
        assert_eq!(l.meet(e[1], e[2]), e[1]);
        assert_eq!(l.join(e[1], e[2]), e[2]);
    }

    #[test]
    fn diamond_meets_and_joins() {
        let l = diamond();
        let a = l.element_by_label("a").unwrap();
        let b = l.element_by_label("b").unwrap();
        assert_eq!(l.meet(a, b), l.bottom());
        assert_eq!(l.join(a, b), l.top());
        assert!(!l.leq(a, b) && !l.leq(b, a));
        assert_eq!(l.label(l.bottom()), "0");
        assert_eq!(l.label(l.top()), "1");
    }

    #[test]
    fn meet_with_top_is_identity() {
        let l = DistributiveLattice::build(&LatticeSpec::product(
            LatticeSpec::Chain(3),
            LatticeSpec::Boolean(2),
        ))
        .unwrap();
        for &x in l.elements() {
            assert_eq!(l.meet(x, l.top()), x);
            assert_eq!(l.join(x, l.bottom()), x);
        }
    }

    /// Independent downset oracle: filter all subsets by downward closure
    /// computed straight from the cover list.
    fn brute_downset_count(n: usize, covers: &[(usize, usize)]) -> usize {
        let mut below: Vec<u32> = (0..n).map(|j| 1 << j).collect();
        for _ in 0..n {
            for &(lo, hi) in covers {
                let lo_mask = below[lo];
                below[hi] |= lo_mask;
            }
        }
        (0..1u32 << n)
            .filter(|&mask| (0..n).all(|j| mask >> j & 1 == 0 || below[j] & mask == below[j]))
            .count()
    }

    #[test]
    fn downsets_of_explicit_poset() {
        let l = DistributiveLattice::build(&LatticeSpec::Downsets {
            nodes: ["x", "y", "z"].map(String::from).to_vec(),
            covers: vec![("x".into(), "y".into()), ("x".into(), "z".into())],
        })
        .unwrap();
        assert_eq!(l.element_count(), 5);
        assert_eq!(l.element_count(), brute_downset_count(3, &[(0, 1), (0, 2)]));
        let expected: Vec<&str> = vec!["{}", "{x}", "{x,y}", "{x,z}", "{x,y,z}"];
        let labels: Vec<String> = l.elements().iter().map(|&x| l.label(x)).collect();
        assert_eq!(labels, expected);
    }

    #[test]
    fn antichain_with_bottom_cover_counts_match_oracle() {
        let l = DistributiveLattice::build(&LatticeSpec::Downsets {
            nodes: ["p", "q", "r"].map(String::from).to_vec(),
            covers: vec![("p".into(), "q".into())],
        })
        .unwrap();
        assert_eq!(l.element_count(), brute_downset_count(3, &[(0, 1)]));
    }

    #[test]
    fn cyclic_covers_are_rejected_with_the_cycle() {
        let err = DistributiveLattice::build(&LatticeSpec::Downsets {
            nodes: ["x", "y"].map(String::from).to_vec(),
            covers: vec![("x".into(), "y".into()), ("y".into(), "x".into())],
        })
        .unwrap_err();
        match err {
            BuildError::CyclicCovers(desc) => {
                assert!(desc.contains('x') && desc.contains('y'), "cycle names missing: {desc}");
            }
            other => panic!("expected CyclicCovers, got {other:?}"),
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        assert!(matches!(
            DistributiveLattice::build(&LatticeSpec::Boolean(21)),
            Err(BuildError::TooManyIrreducibles { got: 21, .. })
        ));
    }

    #[test]
    fn canonical_order_is_ascending_masks() {
        let l = DistributiveLattice::build(&LatticeSpec::Boolean(3)).unwrap();
        for w in l.elements().windows(2) {
            assert!(w[0].bits() < w[1].bits());
        }
        for (i, &x) in l.elements().iter().enumerate() {
            assert_eq!(l.index_of(x), i);
            assert_eq!(l.element_at(i), x);
        }
    }

    #[test]
    fn birkhoff_round_trip() {
        for spec in [
            LatticeSpec::Chain(5),
            LatticeSpec::Boolean(3),
            LatticeSpec::product(LatticeSpec::Chain(3), LatticeSpec::Chain(4)),
        ] {
            let l = DistributiveLattice::build(&spec).unwrap();
            for &x in l.elements() {
                let mut joined = l.bottom();
                for j in 0..l.irreducible_count() {
                    if x.bits() >> j & 1 == 1 {
                        joined = l.join(joined, l.principal_downset(j));
                    }
                }
                assert_eq!(joined, x);
            }
        }
    }

    #[test]
    fn order_agrees_with_meet_and_join() {
        let l = DistributiveLattice::build(&LatticeSpec::Downsets {
            nodes: ["x", "y", "z"].map(String::from).to_vec(),
            covers: vec![("x".into(), "y".into()), ("x".into(), "z".into())],
        })
        .unwrap();
        for &x in l.elements() {
            for &y in l.elements() {
                let le = l.leq(x, y);
                assert_eq!(le, l.meet(x, y) == x);
                assert_eq!(le, l.join(x, y) == y);
            }
        }
    }

    #[test]
    fn product_of_chains_matches_boolean_square() {
        let p = DistributiveLattice::build(&LatticeSpec::product(
            LatticeSpec::Chain(2),
            LatticeSpec::Chain(2),
        ))
        .unwrap();
        assert_eq!(p.element_count(), 4);
        // Two incomparable irreducibles, exactly like Boolean(2).
        assert!(!p.poset().leq(0, 1) && !p.poset().leq(1, 0));
    }

    #[test]
    fn custom_labels_round_trip_and_validate() {
        let l = diamond();
        for &x in l.elements() {
            assert_eq!(l.element_by_label(&l.label(x)), Some(x));
        }
        assert_eq!(l.element_by_label("nope"), None);

        let base = DistributiveLattice::build(&LatticeSpec::Chain(2)).unwrap();
        assert!(matches!(
            base.clone().with_labels(vec!["only".into()]),
            Err(BuildError::LabelCount { got: 1, want: 2 })
        ));
        assert!(matches!(
            base.clone().with_labels(vec!["x".into(), "x".into()]),
            Err(BuildError::DuplicateLabel(_))
        ));
        assert!(matches!(
            base.with_labels(vec!["ok".into(), "has space".into()]),
            Err(BuildError::BadName(_))
        ));
    }

    #[test]
    fn default_labels_resolve() {
        let l = chain(4);
        assert_eq!(l.element_by_label("2"), Some(l.element_at(2)));
        assert_eq!(l.element_by_label("7"), None);
        let b = DistributiveLattice::build(&LatticeSpec::Boolean(3)).unwrap();
        for &x in b.elements() {
            assert_eq!(b.element_by_label(&b.label(x)), Some(x));
        }
        assert_eq!(b.element_by_label("{1,9}"), None);
    }

    #[test]
    #[should_panic(expected = "does not belong")]
    fn foreign_element_is_a_usage_error() {
        let c = chain(4);
        let b = DistributiveLattice::build(&LatticeSpec::Boolean(2)).unwrap();
        // {irreducible 1} alone is not downward closed in the chain.
        let foreign = b.element_by_label("{2}").unwrap();
        let _ = c.leq(foreign, c.top());
    }

    #[test]
    fn trivial_lattice() {
        let l = chain(1);
        assert_eq!(l.element_count(), 1);
        assert_eq!(l.bottom(), l.top());
        assert_eq!(l.label(l.bottom()), "0");
    }
}
