//! Finite abelian groups presented by raw element sets and operation tables,
//! with a homomorphism calculus (kernels, images, cokernels), invariant
//! factors and exactness checking.
//!
//! Groups are always stored by elements and tables, never by presentation;
//! everything at this scale is enumerable and the table is the oracle.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("not an abelian group: {reason} (witness {witness})")]
    NotAGroup { reason: &'static str, witness: String },
    #[error("not a homomorphism: f({a} op {b}) != f({a}) op f({b})")]
    NotAHom { a: String, b: String },
    #[error("homomorphisms are not composable at position {position}")]
    NotComposable { position: usize },
}

/// A finite abelian group as a total operation table.
#[derive(Clone)]
pub struct FinAbGroup {
    n: u32,
    op: Vec<u32>,
    id: u32,
    inv: Vec<u32>,
    labels: Vec<String>,
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup(order {})", self.n)
    }
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.id == other.id && self.op == other.op
    }
}

impl FinAbGroup {
    pub fn size(&self) -> u32 {
        self.n
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    #[inline(always)]
    pub fn op(&self, a: u32, b: u32) -> u32 {
        self.op[(a * self.n + b) as usize]
    }

    #[inline(always)]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.n
    }

    pub fn order_of(&self, a: u32) -> u32 {
        let mut acc = a;
        let mut k = 1;
        while acc != self.id {
            acc = self.op(acc, a);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: u32, k: u32) -> u32 {
        let mut acc = self.id;
        for _ in 0..k {
            acc = self.op(acc, a);
        }
        acc
    }

    /// Subgroup generated by an element, as a sorted element list.
    pub fn cyclic_span(&self, a: u32) -> Vec<u32> {
        let mut elems = vec![self.id];
        let mut acc = a;
        while acc != self.id {
            elems.push(acc);
            acc = self.op(acc, a);
        }
        elems.sort_unstable();
        elems
    }
}

/// The one-element group.
pub fn trivial_group() -> Arc<FinAbGroup> {
    group_from_closure(&[0], |_, _| 0, 0, |_| "0".to_string()).expect("trivial group")
}

/// Builds a group from a carrier set inside some ambient index space and a
/// binary operation on that space. Closure, associativity, commutativity,
/// identity and inverses are all checked exhaustively; the first failure is
/// reported with a witness since it signals a construction bug upstream.
pub fn group_from_closure(
    elements: &[u32],
    op: impl Fn(u32, u32) -> u32,
    id: u32,
    label: impl Fn(u32) -> String,
) -> Result<Arc<FinAbGroup>, GroupError> {
    let mut sorted: Vec<u32> = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let pos = |e: u32| sorted.binary_search(&e).ok().map(|i| i as u32);
    let n = sorted.len() as u32;
    let id_pos = pos(id).ok_or(GroupError::NotAGroup {
        reason: "identity not in carrier",
        witness: label(id),
    })?;
    let mut table = vec![0u32; (n * n) as usize];
    for (i, &a) in sorted.iter().enumerate() {
        for (j, &b) in sorted.iter().enumerate() {
            let c = op(a, b);
            let k = pos(c).ok_or_else(|| GroupError::NotAGroup {
                reason: "not closed",
                witness: format!("{} op {} = {}", label(a), label(b), label(c)),
            })?;
            table[i * n as usize + j] = k;
        }
    }
    let at = |i: u32, j: u32| table[(i * n + j) as usize];
    for i in 0..n {
        if at(id_pos, i) != i || at(i, id_pos) != i {
            return Err(GroupError::NotAGroup {
                reason: "identity law",
                witness: label(sorted[i as usize]),
            });
        }
        for j in 0..n {
            if at(i, j) != at(j, i) {
                return Err(GroupError::NotAGroup {
                    reason: "commutativity",
                    witness: format!("{}, {}", label(sorted[i as usize]), label(sorted[j as usize])),
                });
            }
            for k in 0..n {
                if at(at(i, j), k) != at(i, at(j, k)) {
                    return Err(GroupError::NotAGroup {
                        reason: "associativity",
                        witness: format!(
                            "{}, {}, {}",
                            label(sorted[i as usize]),
                            label(sorted[j as usize]),
                            label(sorted[k as usize])
                        ),
                    });
                }
            }
        }
    }
    let mut inv = vec![u32::MAX; n as usize];
    for i in 0..n {
        match (0..n).find(|&j| at(i, j) == id_pos) {
            Some(j) => inv[i as usize] = j,
            None => {
                return Err(GroupError::NotAGroup {
                    reason: "inverses",
                    witness: label(sorted[i as usize]),
                })
            }
        }
    }
    let labels = sorted.iter().map(|&e| label(e)).collect();
    Ok(Arc::new(FinAbGroup {
        n,
        op: table,
        id: id_pos,
        inv,
        labels,
    }))
}

/// A validated homomorphism of finite abelian groups.
#[derive(Clone)]
pub struct GroupHom {
    pub source: Arc<FinAbGroup>,
    pub target: Arc<FinAbGroup>,
    pub map: Vec<u32>,
}

/// Validates the homomorphism property exhaustively.
pub fn hom_make(
    source: Arc<FinAbGroup>,
    target: Arc<FinAbGroup>,
    f: impl Fn(u32) -> u32,
) -> Result<GroupHom, GroupError> {
    let map: Vec<u32> = source.elements().map(f).collect();
    for a in source.elements() {
        for b in source.elements() {
            if map[source.op(a, b) as usize] != target.op(map[a as usize], map[b as usize]) {
                return Err(GroupError::NotAHom {
                    a: source.label(a).to_string(),
                    b: source.label(b).to_string(),
                });
            }
        }
    }
    if map[source.id() as usize] != target.id() {
        return Err(GroupError::NotAHom {
            a: source.label(source.id()).to_string(),
            b: source.label(source.id()).to_string(),
        });
    }
    Ok(GroupHom {
        source,
        target,
        map,
    })
}

/// A subgroup, carried by its own group structure plus the inclusion indices.
pub struct Subgroup {
    pub group: Arc<FinAbGroup>,
    /// subgroup index -> ambient index
    pub include: Vec<u32>,
}

/// A quotient group with least-index coset representatives.
pub struct QuotientGroup {
    pub group: Arc<FinAbGroup>,
    /// ambient index -> quotient index
    pub project: Vec<u32>,
    /// quotient index -> representative ambient index
    pub reps: Vec<u32>,
}

impl GroupHom {
    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }

    pub fn identity(g: &Arc<FinAbGroup>) -> GroupHom {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            map: g.elements().collect(),
        }
    }

    pub fn zero_to(source: &Arc<FinAbGroup>, target: &Arc<FinAbGroup>) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            map: vec![target.id(); source.size() as usize],
        }
    }

    pub fn then(&self, next: &GroupHom) -> GroupHom {
        assert_eq!(*self.target, *next.source, "composition mismatch");
        GroupHom {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&a| next.apply(a)).collect(),
        }
    }

    pub fn kernel_set(&self) -> Vec<u32> {
        self.source
            .elements()
            .filter(|&a| self.apply(a) == self.target.id())
            .collect()
    }

    pub fn image_set(&self) -> Vec<u32> {
        let mut im: Vec<u32> = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn kernel(&self) -> Subgroup {
        subgroup_of(&self.source, self.kernel_set())
    }

    pub fn image(&self) -> Subgroup {
        subgroup_of(&self.target, self.image_set())
    }

    pub fn cokernel(&self) -> QuotientGroup {
        quotient_of(&self.target, &self.image_set())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_set().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set().len() == self.target.size() as usize
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

fn subgroup_of(ambient: &Arc<FinAbGroup>, elems: Vec<u32>) -> Subgroup {
    let group = group_from_closure(
        &elems,
        |a, b| ambient.op(a, b),
        ambient.id(),
        |a| ambient.label(a).to_string(),
    )
    .expect("subgroup closure");
    let mut include = elems;
    include.sort_unstable();
    Subgroup { group, include }
}

/// Quotient of `ambient` by the subgroup `sub` (given as a sorted element
/// list), with least-index coset representatives.
pub fn quotient_of(ambient: &Arc<FinAbGroup>, sub: &[u32]) -> QuotientGroup {
    let n = ambient.size();
    let mut rep_of = vec![u32::MAX; n as usize];
    for a in ambient.elements() {
        if rep_of[a as usize] != u32::MAX {
            continue;
        }
        let rep = sub.iter().map(|&s| ambient.op(a, s)).min().unwrap();
        for &s in sub {
            rep_of[ambient.op(a, s) as usize] = rep;
        }
    }
    let mut reps: Vec<u32> = rep_of.clone();
    reps.sort_unstable();
    reps.dedup();
    let idx = |r: u32| reps.binary_search(&r).unwrap() as u32;
    let group = group_from_closure(
        &(0..reps.len() as u32).collect::<Vec<_>>(),
        |i, j| idx(rep_of[ambient.op(reps[i as usize], reps[j as usize]) as usize]),
        idx(rep_of[ambient.id() as usize]),
        |i| ambient.label(reps[i as usize]).to_string(),
    )
    .expect("quotient group closure");
    let project = ambient.elements().map(|a| idx(rep_of[a as usize])).collect();
    QuotientGroup {
        group,
        project,
        reps,
    }
}

/// Invariant-factor decomposition d1 | d2 | ... | dk with product |G|,
/// obtained by repeatedly splitting off a cyclic subgroup of maximal order.
pub fn invariant_factors(g: &Arc<FinAbGroup>) -> Vec<u32> {
    let mut factors = Vec::new();
    let mut current = g.clone();
    while !current.is_trivial() {
        let a = current
            .elements()
            .max_by_key(|&a| (current.order_of(a), std::cmp::Reverse(a)))
            .unwrap();
        factors.push(current.order_of(a));
        let span = current.cyclic_span(a);
        current = quotient_of(&current, &span).group;
    }
    factors.reverse();
    factors
}

/// Finite abelian groups are isomorphic iff their invariant factors agree.
pub fn is_isomorphic(g: &Arc<FinAbGroup>, h: &Arc<FinAbGroup>) -> bool {
    invariant_factors(g) == invariant_factors(h)
}

#[derive(Debug, Clone)]
pub struct PositionResult {
    /// index of the group where exactness was checked (1-based within the chain)
    pub position: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ExactSequenceReport {
    pub leading_injective: Option<PositionResult>,
    pub positions: Vec<PositionResult>,
}

impl ExactSequenceReport {
    pub fn ok(&self) -> bool {
        self.leading_injective.iter().all(|p| p.pass) && self.positions.iter().all(|p| p.pass)
    }
}

/// Verifies image = kernel at every flagged interior position of a chain of
/// composable homomorphisms; `leading_zero` additionally asks for injectivity
/// of the first map.
pub fn check_exact_sequence(
    homs: &[GroupHom],
    flags: &[bool],
    leading_zero: bool,
) -> Result<ExactSequenceReport, GroupError> {
    assert!(!homs.is_empty());
    assert_eq!(flags.len() + 1, homs.len(), "one flag per interior position");
    for (i, pair) in homs.windows(2).enumerate() {
        if *pair[0].target != *pair[1].source {
            return Err(GroupError::NotComposable { position: i });
        }
    }
    let leading_injective = leading_zero.then(|| {
        let ker = homs[0].kernel_set();
        PositionResult {
            position: 0,
            pass: ker.len() == 1,
            witness: (ker.len() > 1).then(|| {
                format!(
                    "kernel contains {}",
                    homs[0].source.label(*ker.iter().find(|&&k| k != homs[0].source.id()).unwrap())
                )
            }),
        }
    });
    let mut positions = Vec::new();
    for (i, flag) in flags.iter().enumerate() {
        if !flag {
            continue;
        }
        let image = homs[i].image_set();
        let kernel = homs[i + 1].kernel_set();
        let pass = image == kernel;
        let witness = (!pass).then(|| {
            let g = &homs[i].target;
            let in_im_not_ker = image.iter().find(|e| !kernel.contains(e));
            let in_ker_not_im = kernel.iter().find(|e| !image.contains(e));
            match (in_im_not_ker, in_ker_not_im) {
                (Some(&e), _) => format!("{} in image, not in kernel", g.label(e)),
                (_, Some(&e)) => format!("{} in kernel, not in image", g.label(e)),
                _ => unreachable!(),
            }
        });
        positions.push(PositionResult {
            position: i + 1,
            pass,
            witness,
        });
    }
    Ok(ExactSequenceReport {
        leading_injective,
        positions,
    })
}

/// The pullback of f: A -> C and g: B -> C, with its two projections.
pub struct Pullback {
    pub group: Arc<FinAbGroup>,
    /// pullback index -> (index in A, index in B)
    pub pairs: Vec<(u32, u32)>,
    pub proj_a: GroupHom,
    pub proj_b: GroupHom,
}

pub fn pullback(f: &GroupHom, g: &GroupHom) -> Pullback {
    assert_eq!(*f.target, *g.target, "pullback needs a common target");
    let a_n = f.source.size();
    let mut pairs = Vec::new();
    for a in f.source.elements() {
        for b in g.source.elements() {
            if f.apply(a) == g.apply(b) {
                pairs.push((a, b));
            }
        }
    }
    let encode = |a: u32, b: u32| a * g.source.size() + b;
    let elems: Vec<u32> = pairs.iter().map(|&(a, b)| encode(a, b)).collect();
    let fa = f.source.clone();
    let gb = g.source.clone();
    let group = group_from_closure(
        &elems,
        |x, y| {
            let (a1, b1) = (x / gb.size(), x % gb.size());
            let (a2, b2) = (y / gb.size(), y % gb.size());
            encode(fa.op(a1, a2), gb.op(b1, b2))
        },
        encode(fa.id(), gb.id()),
        |x| {
            format!(
                "({},{})",
                fa.label(x / gb.size()),
                gb.label(x % gb.size())
            )
        },
    )
    .expect("pullback is a subgroup of the product");
    // group elements are sorted by encode(a, b); a_n kept to silence unused warnings
    let _ = a_n;
    let mut sorted_pairs: Vec<(u32, u32)> = pairs;
    sorted_pairs.sort_unstable_by_key(|&(a, b)| encode(a, b));
    let proj_a = hom_make(group.clone(), f.source.clone(), |i| {
        sorted_pairs[i as usize].0
    })
    .expect("pullback projection");
    let proj_b = hom_make(group.clone(), g.source.clone(), |i| {
        sorted_pairs[i as usize].1
    })
    .expect("pullback projection");
    Pullback {
        group,
        pairs: sorted_pairs,
        proj_a,
        proj_b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_zmod;

    fn units_group(n: u32) -> Arc<FinAbGroup> {
        let r = make_zmod(n).unwrap();
        group_from_closure(
            r.units(),
            |a, b| r.mul(a, b),
            r.one(),
            |a| r.label(a).to_string(),
        )
        .unwrap()
    }

    #[test]
    fn units_of_z8_are_klein_four() {
        let g = units_group(8);
        assert_eq!(g.size(), 4);
        assert_eq!(invariant_factors(&g), vec![2, 2]);
    }

    #[test]
    fn trivial_group_works() {
        let g = trivial_group();
        assert!(g.is_trivial());
        assert_eq!(invariant_factors(&g), Vec::<u32>::new());
    }

    #[test]
    fn z_pq_of_z4_is_z2() {
        // Z_{2,1}(Z/4) = {r : r^2 = r} under r + s + 2rs
        let r = make_zmod(4).unwrap();
        let carrier: Vec<u32> = r.elements().filter(|&x| r.mul(x, x) == x).collect();
        assert_eq!(carrier, vec![0, 1]);
        let g = group_from_closure(
            &carrier,
            |a, b| {
                let two = r.two();
                r.add(r.add(a, b), r.mul(two, r.mul(a, b)))
            },
            0,
            |a| r.label(a).to_string(),
        )
        .unwrap();
        assert_eq!(invariant_factors(&g), vec![2]);
        assert_eq!(g.op(1, 1), 0); // 1 +_1 1 = 0
    }

    #[test]
    fn broken_closure_reports_witness() {
        let r = make_zmod(4).unwrap();
        let err = group_from_closure(&[0, 1, 2], |a, b| r.add(a, b), 0, |a| a.to_string());
        assert!(matches!(err, Err(GroupError::NotAGroup { reason: "not closed", .. })));
    }

    #[test]
    fn sq_on_units_of_z5() {
        let g = units_group(5);
        let r = make_zmod(5).unwrap();
        let sq = hom_make(g.clone(), g.clone(), |i| {
            // element i of the units group is r.units()[i]
            let u = r.units()[i as usize];
            let v = r.mul(u, u);
            r.units().iter().position(|&x| x == v).unwrap() as u32
        })
        .unwrap();
        let ker: Vec<u32> = sq.kernel().include.iter().map(|&i| r.units()[i as usize]).collect();
        let im: Vec<u32> = sq.image().include.iter().map(|&i| r.units()[i as usize]).collect();
        assert_eq!(ker, vec![1, 4]);
        assert_eq!(im, vec![1, 4]);
        assert_eq!(sq.cokernel().group.size(), 2);
    }

    #[test]
    fn identity_hom_trivial_kernel_cokernel() {
        let g = units_group(8);
        let id = GroupHom::identity(&g);
        assert!(id.kernel().group.is_trivial());
        assert!(id.cokernel().group.is_trivial());
    }

    #[test]
    fn zeta_on_z4() {
        // V1(Z/4; p=2) = Z/4 under r+s+2rs, V2 = Z/4 additive, zeta(r) = r^2 - r
        let r = make_zmod(4).unwrap();
        let all: Vec<u32> = r.elements().collect();
        let v1 = group_from_closure(
            &all,
            |a, b| r.add(r.add(a, b), r.mul(r.two(), r.mul(a, b))),
            0,
            |a| r.label(a).to_string(),
        )
        .unwrap();
        let v2 = group_from_closure(&all, |a, b| r.add(a, b), 0, |a| r.label(a).to_string()).unwrap();
        let zeta = hom_make(v1, v2, |x| r.sub(r.mul(x, x), x)).unwrap();
        assert_eq!(zeta.map, vec![0, 0, 2, 2]);
        let ker: Vec<u32> = zeta.kernel().include;
        assert_eq!(ker, vec![0, 1]);
        assert_eq!(invariant_factors(&zeta.cokernel().group), vec![2]);
    }

    #[test]
    fn bad_hom_rejected() {
        let g = units_group(5);
        assert!(matches!(
            hom_make(g.clone(), g.clone(), |i| if i == 0 { 0 } else { 1 }),
            Err(GroupError::NotAHom { .. })
        ));
    }

    #[test]
    fn invariant_factors_examples() {
        let g4 = units_group(4);
        assert_eq!(invariant_factors(&g4), vec![2]);
        // Z/2 x Z/4 style: additive group of Z/8 has factors [8]
        let r = make_zmod(8).unwrap();
        let add = group_from_closure(
            &r.elements().collect::<Vec<_>>(),
            |a, b| r.add(a, b),
            0,
            |a| r.label(a).to_string(),
        )
        .unwrap();
        assert_eq!(invariant_factors(&add), vec![8]);
    }

    #[test]
    fn kernel_image_sizes_multiply() {
        for n in [5u32, 8, 12, 15] {
            let r = make_zmod(n).unwrap();
            let g = units_group(n);
            for k in 0..4 {
                let f = hom_make(g.clone(), g.clone(), |i| {
                    let u = r.units()[i as usize];
                    let v = r.pow(u, k);
                    r.units().iter().position(|&x| x == v).unwrap() as u32
                })
                .unwrap();
                assert_eq!(
                    f.kernel().group.size() * f.image().group.size(),
                    g.size()
                );
            }
        }
    }

    #[test]
    fn exactness_identity_chain() {
        let g = units_group(8);
        let id = GroupHom::identity(&g);
        let t = trivial_group();
        let homs = vec![
            GroupHom::zero_to(&t, &g),
            id,
            GroupHom::zero_to(&g, &t),
        ];
        let report = check_exact_sequence(&homs, &[true, false], true).unwrap();
        assert!(report.ok());
    }

    #[test]
    fn exactness_failure_gives_witness() {
        let g = units_group(8);
        let t = trivial_group();
        // 0 -> G -> 0 is not exact at G unless G is trivial
        let homs = vec![GroupHom::zero_to(&t, &g), GroupHom::zero_to(&g, &t)];
        let report = check_exact_sequence(&homs, &[true], false).unwrap();
        assert!(!report.ok());
        assert!(report.positions[0].witness.is_some());
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let g = units_group(8);
        let id = GroupHom::identity(&g);
        let pb = pullback(&id, &id);
        assert_eq!(pb.group.size(), g.size());
        assert!(pb.pairs.iter().all(|&(a, b)| a == b));
    }

    #[test]
    fn pullback_of_sq_and_unit_inclusion() {
        // f = sq on (Z/5)*, g = inclusion of {1}: Pb = mu_2(Z/5) = {1,4}
        let r = make_zmod(5).unwrap();
        let g5 = units_group(5);
        let f = hom_make(g5.clone(), g5.clone(), |i| {
            let u = r.units()[i as usize];
            let v = r.mul(u, u);
            r.units().iter().position(|&x| x == v).unwrap() as u32
        })
        .unwrap();
        let t = trivial_group();
        let incl = hom_make(t, g5.clone(), |_| g5.id()).unwrap();
        let pb = pullback(&f, &incl);
        assert_eq!(invariant_factors(&pb.group), vec![2]);
    }
}
