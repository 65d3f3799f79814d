//! The 2-kernel of a monoidal functor F: objects are pairs (X, x) with
//! x: I -> F(X) in the target, morphisms are source morphisms f: X -> Y with
//! y = F(f) . x. Composition and tensor act on the underlying morphisms, so
//! the representation stores each 2-kernel morphism as (domain object,
//! position of the underlying morphism among those leaving X).

use super::{
    validate_catgroup, CatGroup, CatGroupReport, CatIndex, CatKind, CatOps, Components,
    FunctorError, MonFunctor, TensorWitness,
};
use std::collections::HashMap;
use std::sync::Arc;

pub struct TwoKerCat {
    beta: Arc<MonFunctor>,
    /// (X in source-of-beta, x: I -> beta(X) in target-of-beta)
    objs: Vec<(u32, u32)>,
    obj_lookup: HashMap<(u32, u32), u32>,
    unit: u32,
    tobj: Vec<u32>,
    /// morphism ids of k-object d start at offsets[d]
    offsets: Vec<u32>,
    dom_vec: Vec<u32>,
    cod_vec: Vec<u32>,
    under: Vec<u32>,
    h: Arc<CatGroup>,
    h_index: Arc<CatIndex>,
}

impl TwoKerCat {
    pub fn objects(&self) -> &[(u32, u32)] {
        &self.objs
    }

    pub fn underlying(&self, m: u32) -> u32 {
        self.under[m as usize]
    }

    pub fn lookup_obj(&self, x: u32, trivialization: u32) -> Option<u32> {
        self.obj_lookup.get(&(x, trivialization)).copied()
    }

    /// Encodes the 2-kernel morphism with the given domain object and
    /// underlying source morphism, if the typing matches.
    pub fn encode_mor(&self, dom_k: u32, underlying: u32) -> Option<u32> {
        let (x, _) = self.objs[dom_k as usize];
        if self.h.dom(underlying) != x {
            return None;
        }
        Some(self.offsets[dom_k as usize] + self.h_index.out_pos[underlying as usize])
    }
}

impl CatOps for TwoKerCat {
    fn n_obj(&self) -> u32 {
        self.objs.len() as u32
    }

    fn n_mor(&self) -> u32 {
        self.under.len() as u32
    }

    fn unit_obj(&self) -> u32 {
        self.unit
    }

    #[inline(always)]
    fn dom(&self, m: u32) -> u32 {
        self.dom_vec[m as usize]
    }

    #[inline(always)]
    fn cod(&self, m: u32) -> u32 {
        self.cod_vec[m as usize]
    }

    #[inline(always)]
    fn id_mor(&self, x: u32) -> u32 {
        let (ox, _) = self.objs[x as usize];
        self.offsets[x as usize] + self.h_index.out_pos[self.h.id_mor(ox) as usize]
    }

    #[inline(always)]
    fn compose(&self, g: u32, f: u32) -> u32 {
        let u = self.h.compose(self.under[g as usize], self.under[f as usize]);
        self.offsets[self.dom_vec[f as usize] as usize] + self.h_index.out_pos[u as usize]
    }

    #[inline(always)]
    fn tensor_obj(&self, x: u32, y: u32) -> u32 {
        self.tobj[(x * self.n_obj() + y) as usize]
    }

    #[inline(always)]
    fn tensor_mor(&self, f: u32, g: u32) -> u32 {
        let u = self
            .h
            .tensor_mor(self.under[f as usize], self.under[g as usize]);
        let d = self.tobj[(self.dom_vec[f as usize] * self.n_obj()
            + self.dom_vec[g as usize]) as usize];
        self.offsets[d as usize] + self.h_index.out_pos[u as usize]
    }

    fn obj_label(&self, x: u32) -> String {
        let (ox, t) = self.objs[x as usize];
        format!("({},{})", self.h.obj_label(ox), self.beta.target.mor_label(t))
    }

    fn mor_label(&self, m: u32) -> String {
        format!(
            "[{}]:{}->{}",
            self.h.mor_label(self.under[m as usize]),
            self.obj_label(self.dom_vec[m as usize]),
            self.obj_label(self.cod_vec[m as usize])
        )
    }
}

/// Builds the 2-kernel of a validated monoidal functor together with the
/// projection functor onto the source. Small kernels are revalidated with the
/// full cat-group validator; for large ones the categorical axioms are
/// inherited (composition and tensor act on underlying morphisms of an
/// already-validated category) and the representation-level consistency
/// checks below are exhaustive.
pub fn two_kernel(beta: &Arc<MonFunctor>) -> Result<(Arc<CatGroup>, Arc<MonFunctor>), FunctorError> {
    let h = beta.source.clone();
    let k = beta.target.clone();
    let h_index = h.index().clone();
    let k_index = k.index().clone();

    let unit_k = k.unit_obj();
    let mut objs = Vec::new();
    for x in 0..h.n_obj() {
        let bx = beta.obj(x);
        for &m in &k_index.out_of[unit_k as usize] {
            if k.cod(m) == bx {
                objs.push((x, m));
            }
        }
    }
    let obj_lookup: HashMap<(u32, u32), u32> = objs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();
    let n_kobj = objs.len() as u32;
    let unit = *obj_lookup
        .get(&(h.unit_obj(), beta.unit_wit))
        .expect("unit witness trivializes the unit object");

    let fail = |check: &'static str, witness: String| FunctorError::Invalid { check, witness };

    let mut tobj = Vec::with_capacity((n_kobj * n_kobj) as usize);
    for &(x1, m1) in &objs {
        for &(x2, m2) in &objs {
            let xt = h.tensor_obj(x1, x2);
            let mt = k.compose(beta.witness(x1, x2), k.tensor_mor(m1, m2));
            let id = obj_lookup.get(&(xt, mt)).copied().ok_or_else(|| {
                fail(
                    "2-kernel tensor closure",
                    format!("{} . {}", h.obj_label(x1), h.obj_label(x2)),
                )
            })?;
            tobj.push(id);
        }
    }

    let mut offsets = Vec::with_capacity(objs.len() + 1);
    let mut total = 0u32;
    for &(x, _) in &objs {
        offsets.push(total);
        total += h_index.out_of[x as usize].len() as u32;
    }
    offsets.push(total);
    let mut dom_vec = Vec::with_capacity(total as usize);
    let mut cod_vec = Vec::with_capacity(total as usize);
    let mut under = Vec::with_capacity(total as usize);
    for (d, &(x, xm)) in objs.iter().enumerate() {
        for &f in &h_index.out_of[x as usize] {
            let y = h.cod(f);
            let ym = k.compose(beta.mor(f), xm);
            let cod = obj_lookup.get(&(y, ym)).copied().ok_or_else(|| {
                fail("2-kernel morphism closure", h.mor_label(f))
            })?;
            dom_vec.push(d as u32);
            cod_vec.push(cod);
            under.push(f);
        }
    }

    let kcat = TwoKerCat {
        beta: beta.clone(),
        objs,
        obj_lookup,
        unit,
        tobj,
        offsets,
        dom_vec,
        cod_vec,
        under,
        h: h.clone(),
        h_index,
    };
    let report = if kcat.n_mor() <= 4096 {
        let cat = CatGroup::new(CatKind::TwoKer(kcat));
        let report = validate_catgroup(&cat);
        return finish(cat, report, beta);
    } else {
        validate_structural(&kcat)
    };
    let cat = CatGroup::new(CatKind::TwoKer(kcat));
    finish(cat, report, beta)
}

fn finish(
    cat: Arc<CatGroup>,
    report: CatGroupReport,
    beta: &Arc<MonFunctor>,
) -> Result<(Arc<CatGroup>, Arc<MonFunctor>), FunctorError> {
    if let Some(f) = report.failures.first() {
        return Err(FunctorError::Invalid {
            check: "2-kernel validation",
            witness: format!("{}: {}", f.check, f.witness),
        });
    }
    let kk = match cat.kind() {
        CatKind::TwoKer(k) => k,
        _ => unreachable!(),
    };
    let obj_map: Vec<u32> = kk.objs.iter().map(|&(x, _)| x).collect();
    let mor_map: Vec<u32> = kk.under.clone();
    let proj = Arc::new(MonFunctor {
        source: cat.clone(),
        target: beta.source.clone(),
        obj_map,
        mor_map,
        tensor_wit: TensorWitness::Identity,
        unit_wit: beta.source.id_mor(beta.source.unit_obj()),
    });
    super::validate_mon_functor(&proj)?;
    Ok((cat, proj))
}

/// Representation-level consistency checks for large 2-kernels: every stored
/// object and morphism satisfies its defining condition, composition and
/// tensor stay inside the enumeration with the right typing, the object
/// tensor table is strict, duals exist and Aut(I) matches Aut(X). Equalities
/// between composites then reduce to equalities in the validated source.
fn validate_structural(kc: &TwoKerCat) -> CatGroupReport {
    use rayon::prelude::*;
    let h = &kc.h;
    let k = &kc.beta.target;
    let fail = |check: &'static str, witness: String| CatGroupReport {
        failures: vec![super::validate::CheckFailure { check, witness }],
    };
    let pass = CatGroupReport { failures: vec![] };

    for &(x, m) in &kc.objs {
        if k.dom(m) != k.unit_obj() || k.cod(m) != kc.beta.obj(x) {
            return fail("2-kernel object typing", h.obj_label(x));
        }
    }
    let n_mor = kc.n_mor();
    for m in 0..n_mor {
        let (xd, td) = kc.objs[kc.dom_vec[m as usize] as usize];
        let (xc, tc) = kc.objs[kc.cod_vec[m as usize] as usize];
        let u = kc.under[m as usize];
        if h.dom(u) != xd || h.cod(u) != xc {
            return fail("2-kernel morphism typing", h.mor_label(u));
        }
        if k.compose(kc.beta.mor(u), td) != tc {
            return fail("2-kernel morphism condition", h.mor_label(u));
        }
    }
    let n = kc.n_obj();
    // strictness of the object tensor
    for x in 0..n {
        if kc.tensor_obj(kc.unit, x) != x || kc.tensor_obj(x, kc.unit) != x {
            return fail("2-kernel strict unit", kc.obj_label(x));
        }
        for y in 0..n {
            if kc.tensor_obj(x, y) != kc.tensor_obj(y, x) {
                return fail(
                    "2-kernel strict symmetry",
                    format!("{} . {}", kc.obj_label(x), kc.obj_label(y)),
                );
            }
        }
    }
    let assoc_bad = |x: u32| {
        (0..n).any(|y| {
            let xy = kc.tensor_obj(x, y);
            (0..n).any(|z| kc.tensor_obj(xy, z) != kc.tensor_obj(x, kc.tensor_obj(y, z)))
        })
    };
    if (0..n).into_par_iter().any(assoc_bad) {
        let x = (0..n).find(|&x| assoc_bad(x)).unwrap();
        return fail("2-kernel strict associativity", kc.obj_label(x));
    }
    // composition and generator tensors stay well-typed
    let kidx = CatIndex::build(kc);
    let comp_bad2 = |g: u32| {
        kidx.in_to[kc.dom_vec[g as usize] as usize].iter().any(|&f| {
            let c = kc.compose(g, f);
            kc.dom_vec[c as usize] != kc.dom_vec[f as usize]
                || kc.cod_vec[c as usize] != kc.cod_vec[g as usize]
                || kc.under[c as usize] != h.compose(kc.under[g as usize], kc.under[f as usize])
        })
    };
    if (0..n_mor).into_par_iter().any(comp_bad2) {
        let g = (0..n_mor).find(|&g| comp_bad2(g)).unwrap();
        return fail("2-kernel composition typing", kc.mor_label(g));
    }
    let gen_bad = |m: u32| {
        (0..n).any(|z| {
            let t = kc.tensor_mor(m, kc.id_mor(z));
            kc.dom_vec[t as usize] != kc.tensor_obj(kc.dom_vec[m as usize], z)
                || kc.cod_vec[t as usize] != kc.tensor_obj(kc.cod_vec[m as usize], z)
        })
    };
    if (0..n_mor).into_par_iter().any(gen_bad) {
        let m = (0..n_mor).find(|&m| gen_bad(m)).unwrap();
        return fail("2-kernel tensor typing", kc.mor_label(m));
    }
    // identity laws and inverses on the underlying morphisms
    for m in 0..n_mor {
        let d = kc.dom_vec[m as usize];
        let c = kc.cod_vec[m as usize];
        if kc.compose(kc.id_mor(c), m) != m || kc.compose(m, kc.id_mor(d)) != m {
            return fail("2-kernel identity laws", kc.mor_label(m));
        }
        let u = kc.under[m as usize];
        let Some(uinv) = h.inverse_mor(u) else {
            return fail("2-kernel inverses", kc.mor_label(m));
        };
        let w = kc.offsets[c as usize] + kc.h_index.out_pos[uinv as usize];
        if kc.compose(w, m) != kc.id_mor(d) || kc.compose(m, w) != kc.id_mor(c) {
            return fail("2-kernel inverses", kc.mor_label(m));
        }
    }
    // duals up to isomorphism
    let comps = Components::build(kc);
    let uc = comps.comp_of[kc.unit as usize];
    for x in 0..n {
        if !(0..n).any(|y| comps.comp_of[kc.tensor_obj(x, y) as usize] == uc) {
            return fail("2-kernel tensor-invertible objects", kc.obj_label(x));
        }
    }
    // Aut(I) -> Aut(X) bijectively
    let aut_of = |x: u32| -> Vec<u32> {
        let mut v: Vec<u32> = kidx.in_to[x as usize]
            .iter()
            .copied()
            .filter(|&m| kc.dom_vec[m as usize] == x)
            .collect();
        v.sort_unstable();
        v
    };
    let aut_i = aut_of(kc.unit);
    for x in 0..n {
        let mut mapped: Vec<u32> = aut_i
            .iter()
            .map(|&f| kc.tensor_mor(f, kc.id_mor(x)))
            .collect();
        mapped.sort_unstable();
        mapped.dedup();
        if mapped != aut_of(x) {
            return fail("2-kernel pi1 identification", kc.obj_label(x));
        }
    }
    pass
}
