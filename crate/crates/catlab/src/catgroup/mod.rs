//! Finite strict symmetric categorical groups.
//!
//! A cat-group here is a finite groupoid with a strictly associative,
//! strictly unital and strictly symmetric tensor in which every object is
//! tensor-invertible up to isomorphism. Everything is enumerated; table-backed
//! categories keep dense tables, formula-backed ones (the quadratic-algebra
//! category, two-kernels of large functors) compute from per-morphism arrays
//! so that exhaustive validation stays table-lookup cheap.

mod from_hom;
mod functor;
mod six_term;
mod table;
mod two_kernel;
mod validate;

pub use from_hom::catgroup_from_hom;
pub use functor::{
    compose_functors, functor_props, induced_to_two_kernel, validate_mon_functor, FunctorProps,
    MonFunctor, NatToTrivial, TensorWitness,
};
pub use six_term::{six_term, SixTerm};
pub use table::TableCat;
pub use two_kernel::{two_kernel, TwoKerCat};
pub use validate::{validate_catgroup, validate_catgroup_naive, CatGroupReport, CheckFailure};

use crate::abgroup::{group_from_closure, FinAbGroup, GroupError};
use std::sync::{Arc, OnceLock};

/// Operations every categorical-group representation provides.
///
/// Objects and morphisms are dense `u32` indices. `compose(g, f)` is "g after
/// f" and is only called on composable pairs; `tensor_mor(f, g)` is f ⊗ g.
pub trait CatOps: Send + Sync {
    fn n_obj(&self) -> u32;
    fn n_mor(&self) -> u32;
    fn unit_obj(&self) -> u32;
    fn dom(&self, m: u32) -> u32;
    fn cod(&self, m: u32) -> u32;
    fn id_mor(&self, x: u32) -> u32;
    fn compose(&self, g: u32, f: u32) -> u32;
    fn tensor_obj(&self, x: u32, y: u32) -> u32;
    fn tensor_mor(&self, f: u32, g: u32) -> u32;
    fn obj_label(&self, x: u32) -> String;
    fn mor_label(&self, m: u32) -> String;
}

pub enum CatKind {
    Table(TableCat),
    Qu(crate::qu::QuCat),
    TwoKer(TwoKerCat),
}

/// Dispatches a generic algorithm to the concrete representation so the hot
/// loops monomorphize.
macro_rules! with_ops {
    ($cat:expr, $c:ident => $body:expr) => {
        match $cat.kind() {
            $crate::catgroup::CatKind::Table($c) => $body,
            $crate::catgroup::CatKind::Qu($c) => $body,
            $crate::catgroup::CatKind::TwoKer($c) => $body,
        }
    };
}
pub(crate) use with_ops;

pub struct CatGroup {
    kind: CatKind,
    index: OnceLock<Arc<CatIndex>>,
    comps: OnceLock<Arc<Components>>,
}

impl CatGroup {
    pub fn new(kind: CatKind) -> Arc<Self> {
        Arc::new(CatGroup {
            kind,
            index: OnceLock::new(),
            comps: OnceLock::new(),
        })
    }

    pub fn kind(&self) -> &CatKind {
        &self.kind
    }

    pub fn n_obj(&self) -> u32 {
        with_ops!(self, c => c.n_obj())
    }

    pub fn n_mor(&self) -> u32 {
        with_ops!(self, c => c.n_mor())
    }

    pub fn unit_obj(&self) -> u32 {
        with_ops!(self, c => c.unit_obj())
    }

    pub fn dom(&self, m: u32) -> u32 {
        with_ops!(self, c => c.dom(m))
    }

    pub fn cod(&self, m: u32) -> u32 {
        with_ops!(self, c => c.cod(m))
    }

    pub fn id_mor(&self, x: u32) -> u32 {
        with_ops!(self, c => c.id_mor(x))
    }

    pub fn compose(&self, g: u32, f: u32) -> u32 {
        with_ops!(self, c => c.compose(g, f))
    }

    pub fn tensor_obj(&self, x: u32, y: u32) -> u32 {
        with_ops!(self, c => c.tensor_obj(x, y))
    }

    pub fn tensor_mor(&self, f: u32, g: u32) -> u32 {
        with_ops!(self, c => c.tensor_mor(f, g))
    }

    pub fn obj_label(&self, x: u32) -> String {
        with_ops!(self, c => c.obj_label(x))
    }

    pub fn mor_label(&self, m: u32) -> String {
        with_ops!(self, c => c.mor_label(m))
    }

    pub fn index(&self) -> &Arc<CatIndex> {
        self.index
            .get_or_init(|| Arc::new(with_ops!(self, c => CatIndex::build(c))))
    }

    pub fn components(&self) -> &Arc<Components> {
        self.comps
            .get_or_init(|| Arc::new(with_ops!(self, c => Components::build(c))))
    }

    /// Morphisms X -> Y, in ascending id order.
    pub fn hom_set(&self, x: u32, y: u32) -> Vec<u32> {
        self.index().in_to[y as usize]
            .iter()
            .copied()
            .filter(|&m| self.dom(m) == x)
            .collect()
    }

    /// Inverse of a morphism in the groupoid.
    pub fn inverse_mor(&self, m: u32) -> Option<u32> {
        let (d, c) = (self.dom(m), self.cod(m));
        let idd = self.id_mor(d);
        let idc = self.id_mor(c);
        self.index().out_of[c as usize]
            .iter()
            .copied()
            .find(|&w| {
                self.cod(w) == d && self.compose(w, m) == idd && self.compose(m, w) == idc
            })
    }
}

/// Per-object incidence lists plus each morphism's position inside them,
/// so formula-backed categories can re-encode computed morphisms in O(1).
pub struct CatIndex {
    pub out_of: Vec<Vec<u32>>,
    pub in_to: Vec<Vec<u32>>,
    /// morphism -> its rank within out_of[dom(m)]
    pub out_pos: Vec<u32>,
    /// morphism -> its rank within in_to[cod(m)]
    pub in_pos: Vec<u32>,
}

impl CatIndex {
    pub fn build<C: CatOps + ?Sized>(c: &C) -> CatIndex {
        let n_obj = c.n_obj() as usize;
        let n_mor = c.n_mor();
        let mut out_of = vec![Vec::new(); n_obj];
        let mut in_to = vec![Vec::new(); n_obj];
        let mut out_pos = vec![0u32; n_mor as usize];
        let mut in_pos = vec![0u32; n_mor as usize];
        for m in 0..n_mor {
            let d = c.dom(m) as usize;
            out_pos[m as usize] = out_of[d].len() as u32;
            out_of[d].push(m);
            let co = c.cod(m) as usize;
            in_pos[m as usize] = in_to[co].len() as u32;
            in_to[co].push(m);
        }
        CatIndex {
            out_of,
            in_to,
            out_pos,
            in_pos,
        }
    }
}

/// Connected components of the underlying groupoid. Component ids are ranked
/// by their least object index, which keeps every derived artifact
/// deterministic.
pub struct Components {
    pub comp_of: Vec<u32>,
    pub reps: Vec<u32>,
}

impl Components {
    pub fn build<C: CatOps + ?Sized>(c: &C) -> Components {
        let n = c.n_obj() as usize;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], x: u32) -> u32 {
            let mut root = x;
            while parent[root as usize] != root {
                root = parent[root as usize];
            }
            let mut cur = x;
            while parent[cur as usize] != root {
                let next = parent[cur as usize];
                parent[cur as usize] = root;
                cur = next;
            }
            root
        }
        for m in 0..c.n_mor() {
            let a = find(&mut parent, c.dom(m));
            let b = find(&mut parent, c.cod(m));
            if a != b {
                // keep the smaller index as root so reps are least elements
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
        let mut reps = Vec::new();
        let mut comp_of = vec![0u32; n];
        for x in 0..n as u32 {
            let r = find(&mut parent, x);
            if r == x {
                reps.push(x);
            }
        }
        for x in 0..n as u32 {
            let r = find(&mut parent, x);
            comp_of[x as usize] = reps.binary_search(&r).unwrap() as u32;
        }
        Components { comp_of, reps }
    }
}

/// The abelian group of connected components, with the operation induced by
/// the tensor on component representatives.
pub fn pi0(cat: &Arc<CatGroup>) -> Result<Arc<FinAbGroup>, GroupError> {
    let comps = cat.components().clone();
    let k = comps.reps.len() as u32;
    group_from_closure(
        &(0..k).collect::<Vec<_>>(),
        |i, j| {
            let t = cat.tensor_obj(comps.reps[i as usize], comps.reps[j as usize]);
            comps.comp_of[t as usize]
        },
        comps.comp_of[cat.unit_obj() as usize],
        |i| cat.obj_label(comps.reps[i as usize]),
    )
}

pub struct Pi1 {
    pub group: Arc<FinAbGroup>,
    /// group index -> morphism id (automorphisms of the unit object)
    pub mors: Vec<u32>,
}

impl Pi1 {
    pub fn index_of(&self, m: u32) -> Option<u32> {
        self.mors.binary_search(&m).ok().map(|i| i as u32)
    }
}

/// Automorphisms of the unit object under composition. The Eckmann-Hilton
/// agreement of composition and tensor on Aut(I) is checked here rather than
/// assumed.
pub fn pi1(cat: &Arc<CatGroup>) -> Result<Pi1, GroupError> {
    let unit = cat.unit_obj();
    let mors: Vec<u32> = cat.hom_set(unit, unit);
    for &f in &mors {
        for &g in &mors {
            let comp = cat.compose(g, f);
            if comp != cat.tensor_mor(f, g) || comp != cat.tensor_mor(g, f) {
                return Err(GroupError::NotAGroup {
                    reason: "composition and tensor disagree on Aut(I)",
                    witness: format!("{}, {}", cat.mor_label(f), cat.mor_label(g)),
                });
            }
        }
    }
    let pos = |m: u32| mors.binary_search(&m).unwrap() as u32;
    let group = group_from_closure(
        &(0..mors.len() as u32).collect::<Vec<_>>(),
        |i, j| pos(cat.compose(mors[j as usize], mors[i as usize])),
        pos(cat.id_mor(unit)),
        |i| cat.mor_label(mors[i as usize]),
    )?;
    Ok(Pi1 { group, mors })
}

/// The one-object one-morphism cat-group.
pub fn trivial_catgroup() -> Arc<CatGroup> {
    let table = TableCat::build(
        1,
        0,
        vec!["I".to_string()],
        vec![(0, 0, "id".to_string())],
        |_| 0,
        |_, _| 0,
        |_, _| 0,
        |_, _| 0,
    );
    CatGroup::new(CatKind::Table(table))
}
