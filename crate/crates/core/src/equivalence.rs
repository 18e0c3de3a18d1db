//! The symmetry group `G_n` of Bell inequalities and its orbits on `F_n`.
//!
//! Every element factors uniquely as `eps t_z p_pi s_y` and acts by
//! `(alpha f)(x) = f(pi x + y) + <x, z> + eps`, where `(pi x)_i = x_(pi^-1(i))`.

use std::fmt;

use crate::bell::quadratic_part;
use crate::boolfn::{check_same_arity, BoolVec, TruthTable, MAX_VECTOR_ARITY};
use crate::{Error, Result, MAX_SWEEP_ARITY};

/// A permutation of `{1, ..., n}`, stored 0-based: `images[j] = pi(j + 1) - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// From the 1-based image list `(pi(1), ..., pi(n))`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_VECTOR_ARITY {
            return Err(Error::ArityTooLarge {
                n,
                max: MAX_VECTOR_ARITY,
                what: "permutations",
            });
        }
        let mut seen = vec![false; n];
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::ValueOutOfRange {
                    what: "permutation image",
                    value: i as i64,
                });
            }
            seen[i - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| (i - 1) as u8).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `pi(j)` for 1-based `j`.
    pub fn image(&self, j: usize) -> usize {
        usize::from(self.images[j - 1]) + 1
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.len()];
        for (j, &i) in self.images.iter().enumerate() {
            images[usize::from(i)] = j as u8;
        }
        Permutation { images }
    }

    /// Ordinary composition `self o other`, i.e. `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let images = other
            .images
            .iter()
            .map(|&j| self.images[usize::from(j)])
            .collect();
        Permutation { images }
    }

    /// `b_n(pi x)` for `x = b_n^{-1}(index)`: component `j` moves to position `pi(j)`.
    pub fn act(&self, index: u32) -> u32 {
        let n = self.len();
        self.images.iter().enumerate().fold(0, |acc, (j, &pj)| {
            let bit = (index >> (n - 1 - j)) & 1;
            acc | (bit << (n - 1 - usize::from(pj)))
        })
    }

    /// All `n!` permutations in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut current: Vec<u8> = (0..n as u8).collect();
        let mut out = vec![Permutation {
            images: current.clone(),
        }];
        while next_permutation(&mut current) {
            out.push(Permutation {
                images: current.clone(),
            });
        }
        out
    }
}

fn next_permutation(a: &mut [u8]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len())
        .rev()
        .find(|&j| a[j] > a[i - 1])
        .expect("a[i] qualifies");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for j in 1..=self.len() {
            if j > 1 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.image(j))?;
        }
        write!(f, ")")
    }
}

/// `(eps, z, pi, y)` standing for `eps t_z p_pi s_y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    /// `true` for the output negation `delta`.
    pub negate: bool,
    pub z: u32,
    pub pi: Permutation,
    pub y: u32,
}

impl GroupElement {
    pub fn new(negate: bool, z: BoolVec, pi: Permutation, y: BoolVec) -> Result<Self> {
        check_same_arity(z.arity(), pi.len())?;
        check_same_arity(y.arity(), pi.len())?;
        Ok(GroupElement {
            negate,
            z: z.index(),
            pi,
            y: y.index(),
        })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            negate: false,
            z: 0,
            pi: Permutation::identity(n),
            y: 0,
        }
    }

    /// `delta`.
    pub fn negation(n: usize) -> Self {
        GroupElement {
            negate: true,
            ..Self::identity(n)
        }
    }

    /// `s_y`.
    pub fn shift(y: BoolVec) -> Self {
        GroupElement {
            y: y.index(),
            ..Self::identity(y.arity())
        }
    }

    /// `t_z`.
    pub fn phase(z: BoolVec) -> Self {
        GroupElement {
            z: z.index(),
            ..Self::identity(z.arity())
        }
    }

    /// `p_pi`.
    pub fn permutation(pi: Permutation) -> Self {
        GroupElement {
            pi,
            ..Self::identity(0)
        }
    }

    pub fn arity(&self) -> usize {
        self.pi.len()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.arity();
        let vec = |v: u32| {
            BoolVec::new(n, v)
                .map(|b| b.to_string())
                .unwrap_or_default()
        };
        write!(
            f,
            "({}, {}, {}, {})",
            if self.negate { "delta" } else { "id" },
            vec(self.z),
            self.pi,
            vec(self.y)
        )
    }
}

/// `(alpha f)(x) = f(pi x + y) + <x, z> + eps`.
pub fn apply(g: &GroupElement, t: &TruthTable) -> Result<TruthTable> {
    check_same_arity(g.arity(), t.arity())?;
    TruthTable::from_fn(t.arity(), |x| {
        t.get(g.pi.act(x) ^ g.y) ^ ((x & g.z).count_ones() & 1 == 1) ^ g.negate
    })
}

/// Group product `g h` (apply `h` first):
/// `(eps0 eps eps', z + pi^-1 z', pi pi', pi' y + y')` with `eps0 = delta^<y, z'>`.
pub fn compose(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    check_same_arity(g.arity(), h.arity())?;
    let eps0 = (g.y & h.z).count_ones() & 1 == 1;
    Ok(GroupElement {
        negate: eps0 ^ g.negate ^ h.negate,
        z: g.z ^ g.pi.inverse().act(h.z),
        pi: h.pi.compose(&g.pi),
        y: h.pi.act(g.y) ^ h.y,
    })
}

/// `(eps, z, pi, y)^-1 = (delta^<y, pi z> eps, pi z, pi^-1, pi^-1 y)`.
pub fn inverse(g: &GroupElement) -> GroupElement {
    let pz = g.pi.act(g.z);
    GroupElement {
        negate: g.negate ^ ((g.y & pz).count_ones() & 1 == 1),
        z: pz,
        pi: g.pi.inverse(),
        y: g.pi.inverse().act(g.y),
    }
}

/// `|G_n| = 2^(2n+1) n!`.
pub fn group_order(n: usize) -> u64 {
    (1u64 << (2 * n + 1)) * (1..=n as u64).product::<u64>()
}

/// Every canonical tuple `(eps, z, pi, y)`.
pub fn group_elements(n: usize) -> Result<Vec<GroupElement>> {
    check_sweep_arity(n)?;
    let mut out = Vec::with_capacity(group_order(n) as usize);
    for negate in [false, true] {
        for z in 0..1u32 << n {
            for pi in Permutation::all(n) {
                for y in 0..1u32 << n {
                    out.push(GroupElement {
                        negate,
                        z,
                        pi: pi.clone(),
                        y,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Orbit enumeration for `n <= 4`, where a function index fits in 16 bits.
///
/// An element acts as an input map `x -> pi x + y` followed by adding an affine
/// function, so the orbit of `f` is every `f o sigma` plus every affine table.
struct OrbitEngine {
    n: usize,
    input_maps: Vec<Vec<u32>>,
    affine: Vec<u64>,
}

impl OrbitEngine {
    fn new(n: usize) -> Result<Self> {
        check_sweep_arity(n)?;
        let len = 1u32 << n;
        let mut input_maps = Vec::new();
        for pi in Permutation::all(n) {
            for y in 0..len {
                input_maps.push((0..len).map(|x| pi.act(x) ^ y).collect());
            }
        }
        let affine = (0..2 * len)
            .map(|k| {
                let (c0, c) = (k >= len, k % len);
                (0..len).fold(0u64, |acc, x| {
                    let v = c0 ^ ((x & c).count_ones() & 1 == 1);
                    acc | (u64::from(v) << x)
                })
            })
            .collect();
        Ok(OrbitEngine {
            n,
            input_maps,
            affine,
        })
    }

    fn orbit_into(&self, index: u64, seen: &mut [bool], members: &mut Vec<u64>) {
        for map in &self.input_maps {
            let moved = map
                .iter()
                .enumerate()
                .fold(0u64, |acc, (x, &sx)| acc | (((index >> sx) & 1) << x));
            for a in &self.affine {
                let b = moved ^ a;
                if !seen[b as usize] {
                    seen[b as usize] = true;
                    members.push(b);
                }
            }
        }
    }

    fn function_count(&self) -> usize {
        1usize << (1usize << self.n)
    }
}

/// Indices of every function equivalent to `t`, sorted.
pub fn orbit(t: &TruthTable) -> Result<Vec<u64>> {
    let engine = OrbitEngine::new(t.arity())?;
    let mut seen = vec![false; engine.function_count()];
    let mut members = Vec::new();
    engine.orbit_into(t.index()?, &mut seen, &mut members);
    members.sort_unstable();
    Ok(members)
}

/// The partition of `F_n` into classes of equivalent functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    n: usize,
    class_of: Vec<u32>,
    representatives: Vec<u64>,
    sizes: Vec<u64>,
}

impl OrbitPartition {
    pub fn arity(&self) -> usize {
        self.n
    }

    /// `N_n`.
    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of(&self, index: u64) -> usize {
        self.class_of[index as usize] as usize
    }

    /// Smallest index in each class, ascending; class ids follow this order.
    pub fn representatives(&self) -> &[u64] {
        &self.representatives
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn members(&self, class: usize) -> Vec<u64> {
        (0..self.class_of.len() as u64)
            .filter(|&b| self.class_of(b) == class)
            .collect()
    }
}

/// Full classification by orbit expansion from the smallest unvisited index.
pub fn classify(n: usize) -> Result<OrbitPartition> {
    let engine = OrbitEngine::new(n)?;
    let total = engine.function_count();
    let mut seen = vec![false; total];
    let mut class_of = vec![u32::MAX; total];
    let (mut representatives, mut sizes) = (Vec::new(), Vec::new());
    let mut members = Vec::new();
    for b in 0..total {
        if seen[b] {
            continue;
        }
        members.clear();
        engine.orbit_into(b as u64, &mut seen, &mut members);
        let id = representatives.len() as u32;
        for &m in &members {
            class_of[m as usize] = id;
        }
        representatives.push(b as u64);
        sizes.push(members.len() as u64);
    }
    Ok(OrbitPartition {
        n,
        class_of,
        representatives,
        sizes,
    })
}

/// `S([f]) = [f + s_2]` as a map on class ids.
pub fn class_involution(p: &OrbitPartition) -> Vec<usize> {
    let s2 = quadratic_part(p.n).index().expect("n <= 4");
    p.representatives
        .iter()
        .map(|&r| p.class_of(r ^ s2))
        .collect()
}

fn check_sweep_arity(n: usize) -> Result<()> {
    if n > MAX_SWEEP_ARITY {
        return Err(Error::ArityTooLarge {
            n,
            max: MAX_SWEEP_ARITY,
            what: "orbit enumeration",
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{symmetric_function, table_from_index};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(rng: &mut ChaCha8Rng, n: usize) -> GroupElement {
        let perms = Permutation::all(n);
        GroupElement {
            negate: rng.gen(),
            z: rng.gen_range(0..1u32 << n),
            pi: perms[rng.gen_range(0..perms.len())].clone(),
            y: rng.gen_range(0..1u32 << n),
        }
    }

    fn v(n: usize, i: u32) -> BoolVec {
        BoolVec::new(n, i).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let pi = Permutation::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(pi.compose(&pi.inverse()), Permutation::identity(3));
        assert_eq!(pi.to_string(), "(2 3 1)");
        // pi^-1 (1,1,0) = (1,0,1).
        assert_eq!(pi.inverse().act(0b110), 0b101);
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
        // P_pi P_sigma = P_(pi o sigma) on vectors.
        for a in Permutation::all(3) {
            for b in Permutation::all(3) {
                for x in 0..8 {
                    assert_eq!(a.act(b.act(x)), a.compose(&b).act(x));
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        let t = table_from_index(3, 23).unwrap();
        assert_eq!(apply(&GroupElement::identity(3), &t).unwrap(), t);
        let zero = TruthTable::zero(3).unwrap();
        assert_eq!(
            apply(&GroupElement::negation(3), &zero).unwrap(),
            TruthTable::one(3).unwrap()
        );
        assert!(apply(&GroupElement::identity(2), &t).is_err());
    }

    #[test]
    fn permutation_shift_relation_n3() {
        let pi = Permutation::from_images(&[2, 3, 1]).unwrap();
        let y = v(3, 0b110);
        let lhs = compose(
            &GroupElement::permutation(pi.clone()),
            &GroupElement::shift(y),
        )
        .unwrap();
        let moved = v(3, pi.inverse().act(y.index()));
        assert_eq!(moved, v(3, 0b101));
        let rhs = compose(&GroupElement::shift(moved), &GroupElement::permutation(pi)).unwrap();
        assert_eq!(lhs, rhs);
        for b in 0..256 {
            let f = table_from_index(3, b).unwrap();
            assert_eq!(apply(&lhs, &f).unwrap(), apply(&rhs, &f).unwrap());
        }
    }

    #[test]
    fn compose_is_action_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=3 {
            for _ in 0..30 {
                let g = random_element(&mut rng, n);
                let h = random_element(&mut rng, n);
                let gh = compose(&g, &h).unwrap();
                for b in 0..(1u64 << (1 << n)) {
                    let f = table_from_index(n, b).unwrap();
                    assert_eq!(
                        apply(&gh, &f).unwrap(),
                        apply(&g, &apply(&h, &f).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let g = random_element(&mut rng, 3);
            assert_eq!(
                compose(&g, &inverse(&g)).unwrap(),
                GroupElement::identity(3)
            );
            assert_eq!(
                compose(&inverse(&g), &g).unwrap(),
                GroupElement::identity(3)
            );
        }
    }

    #[test]
    fn shift_phase_relations_n2() {
        for y in 0..4 {
            for z in 0..4 {
                let s = GroupElement::shift(v(2, y));
                let t = GroupElement::phase(v(2, z));
                let st = compose(&s, &t).unwrap();
                let mut ts = compose(&t, &s).unwrap();
                if (y & z).count_ones() % 2 == 1 {
                    ts = compose(&GroupElement::negation(2), &ts).unwrap();
                }
                assert_eq!(st, ts);
                for y2 in 0..4 {
                    let ss = compose(&s, &GroupElement::shift(v(2, y2))).unwrap();
                    assert_eq!(ss, GroupElement::shift(v(2, y ^ y2)));
                }
            }
        }
    }

    #[test]
    fn group_axioms_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=3 {
            let e = GroupElement::identity(n);
            for _ in 0..100 {
                let (a, b, c) = (
                    random_element(&mut rng, n),
                    random_element(&mut rng, n),
                    random_element(&mut rng, n),
                );
                let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
                let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
                assert_eq!(left, right);
                assert_eq!(compose(&a, &e).unwrap(), a);
                assert_eq!(compose(&e, &a).unwrap(), a);
            }
        }
    }

    #[test]
    fn canonical_tuples_act_faithfully_n2() {
        let elements = group_elements(2).unwrap();
        assert_eq!(elements.len(), 64);
        let mut tables: Vec<Vec<u64>> = elements
            .iter()
            .map(|g| {
                (0..16)
                    .map(|b| {
                        apply(g, &table_from_index(2, b).unwrap())
                            .unwrap()
                            .index()
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        tables.sort();
        tables.dedup();
        assert_eq!(tables.len(), 64);
    }

    #[test]
    fn spectrum_transport_n2() {
        use crate::spectral::wht_fast;
        for b in 0..16 {
            let f = table_from_index(2, b).unwrap();
            let w = wht_fast(&f);
            for c in 0..4u32 {
                let wt = wht_fast(&apply(&GroupElement::phase(v(2, c)), &f).unwrap());
                let ws = wht_fast(&apply(&GroupElement::shift(v(2, c)), &f).unwrap());
                for u in 0..4u32 {
                    assert_eq!(wt.get(u), w.get(u ^ c));
                    let sign = if (c & u).count_ones() % 2 == 1 { -1 } else { 1 };
                    assert_eq!(ws.get(u), sign * w.get(u));
                }
            }
            for pi in Permutation::all(2) {
                let wp = wht_fast(&apply(&GroupElement::permutation(pi.clone()), &f).unwrap());
                for u in 0..4u32 {
                    assert_eq!(wp.get(u), w.get(pi.act(u)));
                }
            }
        }
    }

    #[test]
    fn orbit_examples_n3() {
        let zero = orbit(&TruthTable::zero(3).unwrap()).unwrap();
        assert_eq!(zero.len(), 16);
        for b in [0, 15, 51, 204, 240, 255] {
            assert!(zero.contains(&b));
        }
        assert_eq!(orbit(&table_from_index(3, 1).unwrap()).unwrap().len(), 128);
        let mermin = orbit(&table_from_index(3, 23).unwrap()).unwrap();
        assert_eq!(mermin.len(), 16);
        assert_eq!(&mermin[..3], &[23, 24, 36]);
        assert_eq!(&mermin[13..], &[219, 231, 232]);
        assert!(orbit(&TruthTable::zero(5).unwrap()).is_err());
    }

    #[test]
    fn orbit_matches_group_action() {
        for n in 1..=3 {
            let elements = group_elements(n).unwrap();
            for b in [0u64, 1, 3, 6].into_iter().filter(|&b| b < 1 << (1 << n)) {
                let f = table_from_index(n, b).unwrap();
                let mut direct: Vec<u64> = elements
                    .iter()
                    .map(|g| apply(g, &f).unwrap().index().unwrap())
                    .collect();
                direct.sort_unstable();
                direct.dedup();
                assert_eq!(orbit(&f).unwrap(), direct);
            }
        }
    }

    #[test]
    fn classify_small() {
        assert_eq!(classify(1).unwrap().num_classes(), 1);
        let p2 = classify(2).unwrap();
        assert_eq!(p2.num_classes(), 2);
        let p3 = classify(3).unwrap();
        assert_eq!(p3.representatives(), &[0, 1, 3, 6, 23]);
        assert_eq!(p3.sizes(), &[16, 128, 48, 48, 16]);
        assert_eq!(p3.members(4).len(), 16);
        assert!(classify(5).is_err());
    }

    #[test]
    fn involution_n3() {
        let p = classify(3).unwrap();
        let s = class_involution(&p);
        let mermin = p.class_of(symmetric_function(3, 2).unwrap().index().unwrap());
        assert_eq!(s[0], mermin);
        assert!(s.iter().enumerate().all(|(c, &d)| s[d] == c));
        assert!(s.iter().enumerate().any(|(c, &d)| c != d));
    }

    #[test]
    fn orbit_sizes_divide_group_order() {
        for n in 1..=4 {
            let p = classify(n).unwrap();
            assert_eq!(p.sizes().iter().sum::<u64>(), 1 << (1 << n));
            assert!(p.sizes().iter().all(|s| group_order(n).is_multiple_of(*s)));
        }
    }
}
