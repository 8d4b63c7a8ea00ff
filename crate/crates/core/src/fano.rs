//! Permutations of the seven Fano points and the small group machinery
//! needed for `A = PSL(3,2) = <x, y, z>`.
//!
//! Everything acts on the right: `p.apply(g.compose(h)) == h.apply(g.apply(p))`,
//! and conjugation is `g^h = h⁻¹ g h`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::FanoError;

/// Number of points of the Fano plane.
pub const DEGREE: usize = 7;

/// A point of the Fano plane, labelled `1..=7` externally and stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(u8);

impl Point {
    /// Point with the given label in `1..=7`.
    pub fn new(label: u8) -> Result<Self, FanoError> {
        if (1..=DEGREE as u8).contains(&label) {
            Ok(Point(label - 1))
        } else {
            Err(FanoError::BadPoint(label))
        }
    }

    pub(crate) const fn from_index(index: usize) -> Self {
        Point(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn label(self) -> u8 {
        self.0 + 1
    }

    pub fn all() -> impl Iterator<Item = Point> {
        (0..DEGREE).map(Point::from_index)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A bijection of the seven points, stored as its image table.
///
/// The derived `Ord` is the lexicographic order on image sequences, which is
/// the canonical order used whenever an element has to be "picked".
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm([u8; DEGREE]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3, 4, 5, 6]);

    /// Builds a permutation from 1-based images, `images[i]` being the image of `i + 1`.
    pub fn from_images(images: [u8; DEGREE]) -> Result<Self, FanoError> {
        let mut seen = [false; DEGREE];
        let mut table = [0u8; DEGREE];
        for (slot, &img) in images.iter().enumerate() {
            let p = Point::new(img)?;
            if seen[p.index()] {
                return Err(FanoError::NotBijective(images.to_vec()));
            }
            seen[p.index()] = true;
            table[slot] = p.0;
        }
        Ok(Perm(table))
    }

    /// Builds a permutation from disjoint cycles written with 1-based labels.
    pub fn from_cycles(cycles: &[&[u8]]) -> Result<Self, FanoError> {
        let mut table = Perm::IDENTITY.0;
        let mut touched = [false; DEGREE];
        for cycle in cycles {
            for (i, &label) in cycle.iter().enumerate() {
                let from = Point::new(label)?;
                let to = Point::new(cycle[(i + 1) % cycle.len()])?;
                if touched[from.index()] {
                    return Err(FanoError::NotBijective(cycle.to_vec()));
                }
                touched[from.index()] = true;
                table[from.index()] = to.0;
            }
        }
        Ok(Perm(table))
    }

    /// Parses cycle notation such as `(1 5)(3 7)` or `()`.
    pub fn parse_cycles(text: &str) -> Result<Self, FanoError> {
        let mut cycles: Vec<Vec<u8>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(FanoError::Parse(text.to_string()));
            };
            let Some(end) = body.find(')') else {
                return Err(FanoError::Parse(text.to_string()));
            };
            let labels = body[..end]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u8>()
                        .map_err(|_| FanoError::Parse(text.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if !labels.is_empty() {
                cycles.push(labels);
            }
            rest = body[end + 1..].trim_start();
        }
        let refs: Vec<&[u8]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(&refs)
    }

    pub fn apply(&self, p: Point) -> Point {
        Point(self.0[p.index()])
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut out = [0u8; DEGREE];
        for (slot, &img) in out.iter_mut().zip(self.0.iter()) {
            *slot = other.0[img as usize];
        }
        Perm(out)
    }

    pub fn inverse(&self) -> Perm {
        let mut out = [0u8; DEGREE];
        for (i, &img) in self.0.iter().enumerate() {
            out[img as usize] = i as u8;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Perm::IDENTITY
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    /// `self^h = h⁻¹ self h`.
    pub fn conjugate(&self, h: &Perm) -> Perm {
        h.inverse().compose(self).compose(h)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { *self };
        (0..k.unsigned_abs()).fold(Perm::IDENTITY, |acc, _| acc.compose(&base))
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = *self;
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    /// 1-based image table.
    pub fn images(&self) -> [u8; DEGREE] {
        self.0.map(|i| i + 1)
    }

    pub(crate) fn raw(&self) -> &[u8; DEGREE] {
        &self.0
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let mut seen = [false; DEGREE];
        let mut out = Vec::new();
        for start in 0..DEGREE {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(Point::from_index(cur));
                cur = self.0[cur] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl Default for Perm {
    fn default() -> Self {
        Perm::IDENTITY
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The three reflections generating `A`.
pub fn reflection_x() -> Perm {
    Perm::from_cycles(&[&[1, 5], &[3, 7]]).expect("valid cycles")
}

pub fn reflection_y() -> Perm {
    Perm::from_cycles(&[&[2, 3], &[6, 7]]).expect("valid cycles")
}

pub fn reflection_z() -> Perm {
    Perm::from_cycles(&[&[4, 6], &[5, 7]]).expect("valid cycles")
}

/// A finite permutation group, with elements kept in canonical (lexicographic) order.
#[derive(Clone, Debug)]
pub struct PermGroup {
    elements: Vec<Perm>,
    generators: Vec<Perm>,
}

impl PermGroup {
    /// Smallest group containing `gens`, by breadth-first multiplication.
    pub fn closure(gens: &[Perm]) -> PermGroup {
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(Perm::IDENTITY);
        queue.push_back(Perm::IDENTITY);
        while let Some(g) = queue.pop_front() {
            for s in gens {
                let h = g.compose(s);
                if seen.insert(h) {
                    queue.push_back(h);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort_unstable();
        PermGroup {
            elements,
            generators: gens.to_vec(),
        }
    }

    pub fn trivial() -> PermGroup {
        PermGroup::closure(&[Perm::IDENTITY])
    }

    /// `A = <x, y, z>`.
    pub fn fano() -> PermGroup {
        PermGroup::closure(&[reflection_x(), reflection_y(), reflection_z()])
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.elements == other.elements
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|g| self.generators.iter().all(|h| g.compose(h) == h.compose(g)))
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Perm]) -> PermGroup {
        let mut gens: Vec<Perm> = Vec::new();
        let mut seen = HashSet::new();
        for s in seeds {
            for h in &self.elements {
                let c = s.conjugate(h);
                if seen.insert(c) {
                    gens.push(c);
                }
            }
        }
        if gens.is_empty() {
            gens.push(Perm::IDENTITY);
        }
        PermGroup::closure(&gens)
    }

    /// Derived subgroup, as the normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let comms: Vec<Perm> = self
            .generators
            .iter()
            .flat_map(|g| self.generators.iter().map(move |h| g.commutator(h)))
            .collect();
        self.normal_closure(&comms)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().size() == self.size()
    }

    /// True iff the group is nontrivial and every nontrivial element has the
    /// whole group as normal closure.
    pub fn is_simple(&self) -> bool {
        if self.size() == 1 {
            return false;
        }
        let mut covered: HashSet<Perm> = HashSet::new();
        for g in &self.elements {
            if g.is_identity() || covered.contains(g) {
                continue;
            }
            // every conjugate of g has the same normal closure
            covered.extend(self.elements.iter().map(|h| g.conjugate(h)));
            if self.normal_closure(&[*g]).size() != self.size() {
                return false;
            }
        }
        true
    }

    /// Orbit of an ordered pair of points.
    pub fn pair_orbit(&self, p: Point, q: Point) -> HashSet<(Point, Point)> {
        self.elements
            .iter()
            .map(|g| (g.apply(p), g.apply(q)))
            .collect()
    }

    /// True iff the ordered pair `(1, 2)` has all 42 ordered pairs of distinct points as orbit.
    pub fn is_two_transitive(&self) -> bool {
        let orbit = self.pair_orbit(Point::from_index(0), Point::from_index(1));
        orbit.len() == DEGREE * (DEGREE - 1)
    }

    /// All elements exchanging `p` and `q`, in canonical order.
    pub fn find_swappers(&self, p: Point, q: Point) -> Vec<Perm> {
        self.elements
            .iter()
            .filter(|g| g.apply(p) == q && g.apply(q) == p)
            .copied()
            .collect()
    }

    /// Canonically least element fixing `fix` and moving `moved`.
    pub fn find_fix_move(&self, fix: Point, moved: Point) -> Result<Perm, FanoError> {
        self.elements
            .iter()
            .find(|g| g.apply(fix) == fix && g.apply(moved) != moved)
            .copied()
            .ok_or(FanoError::NoFixMove { fix, moved })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(label: u8) -> Point {
        Point::new(label).unwrap()
    }

    #[test]
    fn reflections_are_involutions() {
        for r in [reflection_x(), reflection_y(), reflection_z()] {
            assert!(r.compose(&r).is_identity());
            assert_eq!(r.order(), 2);
        }
    }

    #[test]
    fn compose_is_right_action() {
        let xy = reflection_x().compose(&reflection_y());
        // 1 -> 5 under x, 5 fixed by y
        assert_eq!(xy.apply(pt(1)), pt(5));
        // 3 -> 7 under x, 7 -> 6 under y
        assert_eq!(xy.apply(pt(3)), pt(6));
        assert_eq!(Perm::IDENTITY.compose(&reflection_y()), reflection_y());
    }

    #[test]
    fn cycle_rendering() {
        assert_eq!(reflection_x().to_string(), "(1 5)(3 7)");
        assert_eq!(Perm::IDENTITY.to_string(), "()");
        let p = Perm::parse_cycles("(2 3)(6 7)").unwrap();
        assert_eq!(p, reflection_y());
        assert!(Perm::parse_cycles("(1 1)").is_err());
        assert!(Perm::parse_cycles("(1 8)").is_err());
    }

    #[test]
    fn group_orders() {
        assert_eq!(PermGroup::fano().size(), 168);
        assert_eq!(PermGroup::trivial().size(), 1);
        let (x, y, z) = (reflection_x(), reflection_y(), reflection_z());
        let alt = PermGroup::closure(&[x.compose(&y), y.compose(&z), z.compose(&x)]);
        assert_eq!(alt.size(), 168);
        assert!(alt.same_elements(&PermGroup::fano()));
    }

    #[test]
    fn structural_properties_of_a() {
        let a = PermGroup::fano();
        assert!(!a.is_abelian());
        assert!(a.is_perfect());
        assert!(a.is_simple());
        assert!(a.is_two_transitive());
        assert_eq!(a.pair_orbit(pt(1), pt(2)).len(), 42);
    }

    #[test]
    fn small_groups() {
        let cx = PermGroup::closure(&[reflection_x()]);
        assert!(!cx.is_perfect());
        // prime order
        assert!(cx.is_simple());
        assert!(!PermGroup::trivial().is_two_transitive());
        assert!(!PermGroup::trivial().is_simple());
    }

    #[test]
    fn dihedral_subgroup_is_not_simple() {
        let (x, y) = (reflection_x(), reflection_y());
        let d = PermGroup::closure(&[x, y]);
        // independent witness: <xy> is a proper nontrivial normal subgroup
        let rot = PermGroup::closure(&[x.compose(&y)]);
        assert!(rot.size() > 1 && rot.size() < d.size());
        assert!(d
            .elements()
            .iter()
            .all(|h| rot.elements().iter().all(|r| rot.contains(&r.conjugate(h)))));
        assert!(!d.is_simple());
    }

    #[test]
    fn derived_subgroup_matches_all_pairs_oracle() {
        let (x, y, z) = (reflection_x(), reflection_y(), reflection_z());
        for gens in [vec![x.compose(&y), y.compose(&z)], vec![x, y], vec![x]] {
            let g = PermGroup::closure(&gens);
            let all: Vec<Perm> = g
                .elements()
                .iter()
                .flat_map(|a| g.elements().iter().map(move |b| a.commutator(b)))
                .collect();
            let oracle = PermGroup::closure(&all);
            assert!(g.derived_subgroup().same_elements(&oracle));
            assert_eq!(g.is_perfect(), oracle.size() == g.size());
        }
        let g = PermGroup::closure(&[x.compose(&y), y.compose(&z)]);
        assert!(g.is_perfect());
    }

    #[test]
    fn swappers() {
        let a = PermGroup::fano();
        let sw = a.find_swappers(pt(1), pt(2));
        assert_eq!(sw.len(), 4);
        assert!(sw.windows(2).all(|w| w[0] < w[1]));
        for g in &sw {
            assert_eq!(g.apply(pt(1)), pt(2));
            assert_eq!(g.apply(pt(2)), pt(1));
        }
        assert!(PermGroup::trivial().find_swappers(pt(1), pt(2)).is_empty());
    }

    #[test]
    fn fix_move() {
        let a = PermGroup::fano();
        let u = a.find_fix_move(pt(1), pt(2)).unwrap();
        assert_eq!(u.apply(pt(1)), pt(1));
        assert_ne!(u.apply(pt(2)), pt(2));
        let least = a
            .elements()
            .iter()
            .filter(|g| g.apply(pt(1)) == pt(1) && g.apply(pt(2)) != pt(2))
            .min()
            .unwrap();
        assert_eq!(&u, least);
        assert!(PermGroup::trivial().find_fix_move(pt(1), pt(2)).is_err());
    }

    #[test]
    fn inverse_laws_in_a() {
        for g in PermGroup::fano().elements() {
            assert!(g.inverse().compose(g).is_identity());
            assert!(g.compose(&g.inverse()).is_identity());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn any_element() -> impl Strategy<Value = Perm> {
            (0usize..168).prop_map(|i| PermGroup::fano().elements()[i])
        }

        proptest! {
            #[test]
            fn compose_associative(a in any_element(), b in any_element(), c in any_element()) {
                prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            }

            #[test]
            fn apply_respects_composition(a in any_element(), b in any_element(), p in 1u8..=7) {
                let p = Point::new(p).unwrap();
                prop_assert_eq!(a.compose(&b).apply(p), b.apply(a.apply(p)));
            }

            #[test]
            fn cycle_notation_round_trips(a in any_element()) {
                prop_assert_eq!(Perm::parse_cycles(&a.to_string()).unwrap(), a);
            }
        }
    }
}
