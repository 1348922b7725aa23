//! Text labels for subsets, extension elements, and coefficient tables.
//!
//! Subset masks print as bracketed 1-based coordinate lists (`[]`, `[1,3]`),
//! matching the keys of the problem file format. Coefficients print through
//! the lattice's own element labels; extension elements outside the lattice
//! fall back to the set of irreducible names they contain.

use crate::boolean::BoolElement;
use crate::lattice::DistributiveLattice;
use crate::polynomial::{Carrier, PolynomialDnf};

/// `[]` for the empty mask, otherwise `[2,3]`-style with bit `i` printed as
/// coordinate `i + 1` in ascending order.
pub fn subset_label(mask: u32) -> String {
    let coords: Vec<String> = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("[{}]", coords.join(","))
}

/// Parse a `[1,3]`-style subset key. Coordinates are 1-based and must be
/// distinct; order does not matter. `None` on anything malformed.
pub fn parse_subset(s: &str) -> Option<u32> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    let mut mask = 0u32;
    if inner.is_empty() {
        return Some(0);
    }
    for part in inner.split(',') {
        let coord: usize = part.trim().parse().ok()?;
        if !(1..=32).contains(&coord) {
            return None;
        }
        let bit = 1u32 << (coord - 1);
        if mask & bit != 0 {
            return None;
        }
        mask |= bit;
    }
    Some(mask)
}

/// Label for an element of the Boolean extension: the lattice's own label
/// when the element lies in the lattice, otherwise the brace-set of the
/// irreducible names it contains.
pub fn bool_label(lat: &DistributiveLattice, u: BoolElement) -> String {
    if lat.in_lattice(u) {
        return lat.label(lat.to_lattice(u));
    }
    let names: Vec<String> =
        (0..lat.irreducible_count()).filter(|&j| u.bits() >> j & 1 == 1).map(|j| lat.irreducible_name(j)).collect();
    format!("{{{}}}", names.join(","))
}

fn coeff_label(lat: &DistributiveLattice, p: &PolynomialDnf, mask: u32) -> String {
    match p.carrier() {
        Carrier::Lattice => lat.label(p.lattice_coeff(mask)),
        Carrier::Boolean => bool_label(lat, p.coeff(mask)),
    }
}

/// One `subset -> coefficient` line per subset, in binary-counter order.
pub fn dnf_lines(lat: &DistributiveLattice, p: &PolynomialDnf) -> Vec<String> {
    (0..1u32 << p.arity()).map(|mask| format!("{} -> {}", subset_label(mask), coeff_label(lat, p, mask))).collect()
}

/// The whole table on one line, `; `-separated — one enumerated solution per
/// output line stays grep- and pipe-friendly.
pub fn dnf_inline(lat: &DistributiveLattice, p: &PolynomialDnf) -> String {
    dnf_lines(lat, p).join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{DistributiveLattice, LatticeSpec};

    #[test]
    fn subset_labels_round_trip() {
        for mask in [0u32, 0b1, 0b101, 0b110, 0b111, 0b1000_0000] {
            assert_eq!(parse_subset(&subset_label(mask)), Some(mask));
        }
        assert_eq!(subset_label(0), "[]");
        assert_eq!(subset_label(0b101), "[1,3]");
    }

    #[test]
    fn subset_parsing_is_strict_about_shape_not_order() {
        assert_eq!(parse_subset("[3,1]"), Some(0b101));
        assert_eq!(parse_subset("[ 2 ]"), Some(0b10));
        assert_eq!(parse_subset("[1,1]"), None);
        assert_eq!(parse_subset("[0]"), None);
        assert_eq!(parse_subset("[33]"), None);
        assert_eq!(parse_subset("1,3"), None);
        assert_eq!(parse_subset("[1,]"), None);
    }

    #[test]
    fn extension_elements_fall_back_to_irreducible_sets() {
        let l = DistributiveLattice::build(&LatticeSpec::Chain(4)).unwrap();
        // Height labels inside the lattice...
        assert_eq!(bool_label(&l, l.embed(l.element_at(2))), "2");
        // ...and irreducible-name sets outside it.
        assert_eq!(bool_label(&l, crate::boolean::BoolElement(0b010)), "{2}");
        assert_eq!(bool_label(&l, crate::boolean::BoolElement(0b110)), "{2,3}");
    }

    #[test]
    fn tables_render_in_binary_counter_order() {
        let l = DistributiveLattice::build(&LatticeSpec::Chain(4)).unwrap();
        let p = crate::polynomial::PolynomialDnf::over_lattice(
            &l,
            1,
            vec![l.element_at(1), l.element_at(2)],
        );
        assert_eq!(dnf_lines(&l, &p), vec!["[] -> 1", "[1] -> 2"]);
        assert_eq!(dnf_inline(&l, &p), "[] -> 1; [1] -> 2");
    }
}
