//! Symmetric monoidal functors between cat-groups, with explicit coherence
//! witnesses, natural transformations to the constant-unit functor, functor
//! property analysis, and the induced functor into a 2-kernel.

use super::{pi0, pi1, two_kernel, CatGroup, Pi1};
use crate::abgroup::{hom_make, GroupError, GroupHom};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FunctorError {
    #[error("functor check `{check}` failed at {witness}")]
    Invalid { check: &'static str, witness: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn invalid(check: &'static str, witness: String) -> FunctorError {
    FunctorError::Invalid { check, witness }
}

/// Tensor witness mu_{X,Y}: F(X) ⊗ F(Y) -> F(X ⊗ Y).
pub enum TensorWitness {
    /// F preserves the tensor strictly and every component is an identity.
    Identity,
    /// Component table indexed by x * n_obj(source) + y.
    Table(Vec<u32>),
}

pub struct MonFunctor {
    pub source: Arc<CatGroup>,
    pub target: Arc<CatGroup>,
    pub obj_map: Vec<u32>,
    pub mor_map: Vec<u32>,
    pub tensor_wit: TensorWitness,
    /// target morphism I -> F(I)
    pub unit_wit: u32,
}

impl MonFunctor {
    #[inline]
    pub fn obj(&self, x: u32) -> u32 {
        self.obj_map[x as usize]
    }

    #[inline]
    pub fn mor(&self, m: u32) -> u32 {
        self.mor_map[m as usize]
    }

    /// The witness component at (x, y), materializing identities on demand.
    pub fn witness(&self, x: u32, y: u32) -> u32 {
        match &self.tensor_wit {
            TensorWitness::Identity => self
                .target
                .id_mor(self.target.tensor_obj(self.obj(x), self.obj(y))),
            TensorWitness::Table(t) => t[(x * self.source.n_obj() + y) as usize],
        }
    }

    pub fn identity(cat: &Arc<CatGroup>) -> Arc<MonFunctor> {
        Arc::new(MonFunctor {
            source: cat.clone(),
            target: cat.clone(),
            obj_map: (0..cat.n_obj()).collect(),
            mor_map: (0..cat.n_mor()).collect(),
            tensor_wit: TensorWitness::Identity,
            unit_wit: cat.id_mor(cat.unit_obj()),
        })
    }
}

/// g after f, with the composite coherence witnesses.
pub fn compose_functors(f: &MonFunctor, g: &MonFunctor) -> MonFunctor {
    assert!(Arc::ptr_eq(&f.target, &g.source), "functors not composable");
    let obj_map: Vec<u32> = f.obj_map.iter().map(|&x| g.obj(x)).collect();
    let mor_map: Vec<u32> = f.mor_map.iter().map(|&m| g.mor(m)).collect();
    let tensor_wit = match (&f.tensor_wit, &g.tensor_wit) {
        (TensorWitness::Identity, TensorWitness::Identity) => TensorWitness::Identity,
        _ => {
            let n = f.source.n_obj();
            let mut t = Vec::with_capacity((n * n) as usize);
            for x in 0..n {
                for y in 0..n {
                    // g(mu^f_{X,Y}) . mu^g_{fX, fY}
                    t.push(
                        g.target
                            .compose(g.mor(f.witness(x, y)), g.witness(f.obj(x), f.obj(y))),
                    );
                }
            }
            TensorWitness::Table(t)
        }
    };
    let unit_wit = g.target.compose(g.mor(f.unit_wit), g.unit_wit);
    MonFunctor {
        source: f.source.clone(),
        target: g.target.clone(),
        obj_map,
        mor_map,
        tensor_wit,
        unit_wit,
    }
}

/// Exhaustive validation of functoriality and monoidal coherence. Tensor
/// preservation is checked on generator pairs (f, id) and (id, g); combined
/// with the validity of source and target and with composition preservation,
/// that pins down preservation of every f ⊗ g.
pub fn validate_mon_functor(f: &MonFunctor) -> Result<(), FunctorError> {
    let s = &f.source;
    let t = &f.target;
    if f.obj_map.len() != s.n_obj() as usize || f.mor_map.len() != s.n_mor() as usize {
        return Err(invalid("map sizes", String::new()));
    }
    for x in 0..s.n_obj() {
        if f.obj(x) >= t.n_obj() {
            return Err(invalid("object map range", s.obj_label(x)));
        }
        if f.mor(s.id_mor(x)) != t.id_mor(f.obj(x)) {
            return Err(invalid("identity preservation", s.obj_label(x)));
        }
    }
    for m in 0..s.n_mor() {
        let fm = f.mor(m);
        if fm >= t.n_mor() || t.dom(fm) != f.obj(s.dom(m)) || t.cod(fm) != f.obj(s.cod(m)) {
            return Err(invalid("morphism typing", s.mor_label(m)));
        }
    }
    let sidx = s.index().clone();
    for g in 0..s.n_mor() {
        for &m in &sidx.in_to[s.dom(g) as usize] {
            if f.mor(s.compose(g, m)) != t.compose(f.mor(g), f.mor(m)) {
                return Err(invalid(
                    "composition preservation",
                    format!("{} after {}", s.mor_label(g), s.mor_label(m)),
                ));
            }
        }
    }
    // unit witness typing
    if t.dom(f.unit_wit) != t.unit_obj() || t.cod(f.unit_wit) != f.obj(s.unit_obj()) {
        return Err(invalid("unit witness typing", t.mor_label(f.unit_wit)));
    }
    match &f.tensor_wit {
        TensorWitness::Identity => {
            for x in 0..s.n_obj() {
                for y in 0..s.n_obj() {
                    if f.obj(s.tensor_obj(x, y)) != t.tensor_obj(f.obj(x), f.obj(y)) {
                        return Err(invalid(
                            "strict tensor preservation on objects",
                            format!("{} . {}", s.obj_label(x), s.obj_label(y)),
                        ));
                    }
                }
            }
            if f.unit_wit != t.id_mor(t.unit_obj()) || f.obj(s.unit_obj()) != t.unit_obj() {
                return Err(invalid("strict unit preservation", String::new()));
            }
            for m in 0..s.n_mor() {
                let fm = f.mor(m);
                for z in 0..s.n_obj() {
                    let idz = s.id_mor(z);
                    let fidz = t.id_mor(f.obj(z));
                    if f.mor(s.tensor_mor(m, idz)) != t.tensor_mor(fm, fidz)
                        || f.mor(s.tensor_mor(idz, m)) != t.tensor_mor(fidz, fm)
                    {
                        return Err(invalid(
                            "strict tensor preservation on morphisms",
                            format!("{} . {}", s.mor_label(m), s.obj_label(z)),
                        ));
                    }
                }
            }
        }
        TensorWitness::Table(w) => {
            let n = s.n_obj();
            for x in 0..n {
                for y in 0..n {
                    let mu = w[(x * n + y) as usize];
                    let expect_dom = t.tensor_obj(f.obj(x), f.obj(y));
                    let expect_cod = f.obj(s.tensor_obj(x, y));
                    if t.dom(mu) != expect_dom || t.cod(mu) != expect_cod {
                        return Err(invalid(
                            "tensor witness typing",
                            format!("{} . {}", s.obj_label(x), s.obj_label(y)),
                        ));
                    }
                    if mu != f.witness(y, x) {
                        return Err(invalid(
                            "tensor witness symmetry",
                            format!("{} . {}", s.obj_label(x), s.obj_label(y)),
                        ));
                    }
                }
            }
            // naturality on generator pairs
            for m in 0..s.n_mor() {
                let (x, x2) = (s.dom(m), s.cod(m));
                let fm = f.mor(m);
                for y in 0..n {
                    let fy = t.id_mor(f.obj(y));
                    let lhs = t.compose(f.witness(x2, y), t.tensor_mor(fm, fy));
                    let rhs = t.compose(f.mor(s.tensor_mor(m, s.id_mor(y))), f.witness(x, y));
                    if lhs != rhs {
                        return Err(invalid(
                            "tensor witness naturality",
                            format!("{} . {}", s.mor_label(m), s.obj_label(y)),
                        ));
                    }
                    let lhs = t.compose(f.witness(y, x2), t.tensor_mor(fy, fm));
                    let rhs = t.compose(f.mor(s.tensor_mor(s.id_mor(y), m)), f.witness(y, x));
                    if lhs != rhs {
                        return Err(invalid(
                            "tensor witness naturality",
                            format!("{} . {}", s.obj_label(y), s.mor_label(m)),
                        ));
                    }
                }
            }
            // associativity coherence
            for x in 0..n {
                for y in 0..n {
                    let mu_xy = f.witness(x, y);
                    for z in 0..n {
                        let lhs = t.compose(
                            f.witness(s.tensor_obj(x, y), z),
                            t.tensor_mor(mu_xy, t.id_mor(f.obj(z))),
                        );
                        let rhs = t.compose(
                            f.witness(x, s.tensor_obj(y, z)),
                            t.tensor_mor(t.id_mor(f.obj(x)), f.witness(y, z)),
                        );
                        if lhs != rhs {
                            return Err(invalid(
                                "tensor witness associativity",
                                format!(
                                    "{} . {} . {}",
                                    s.obj_label(x),
                                    s.obj_label(y),
                                    s.obj_label(z)
                                ),
                            ));
                        }
                    }
                }
            }
            // unit coherence
            let i = s.unit_obj();
            for x in 0..n {
                let fx = t.id_mor(f.obj(x));
                let left = t.compose(f.witness(i, x), t.tensor_mor(f.unit_wit, fx));
                let right = t.compose(f.witness(x, i), t.tensor_mor(fx, f.unit_wit));
                if left != fx || right != fx {
                    return Err(invalid("tensor witness unit coherence", s.obj_label(x)));
                }
            }
        }
    }
    Ok(())
}

/// A natural transformation from F to the constant-unit functor, given by
/// components k_X: F(X) -> I.
pub struct NatToTrivial {
    pub functor: Arc<MonFunctor>,
    pub components: Vec<u32>,
}

pub fn nat_to_trivial(
    functor: Arc<MonFunctor>,
    components: Vec<u32>,
) -> Result<NatToTrivial, FunctorError> {
    let s = &functor.source;
    let t = &functor.target;
    assert_eq!(components.len(), s.n_obj() as usize);
    for x in 0..s.n_obj() {
        let k = components[x as usize];
        if t.dom(k) != functor.obj(x) || t.cod(k) != t.unit_obj() {
            return Err(invalid("component typing", s.obj_label(x)));
        }
    }
    for m in 0..s.n_mor() {
        let (x, y) = (s.dom(m), s.cod(m));
        if t.compose(components[y as usize], functor.mor(m)) != components[x as usize] {
            return Err(invalid("naturality", s.mor_label(m)));
        }
    }
    Ok(NatToTrivial {
        functor,
        components,
    })
}

#[derive(Debug, Clone)]
pub struct FunctorProps {
    pub essentially_surjective: bool,
    pub ess_surj_witness: Option<String>,
    pub full: bool,
    pub full_witness: Option<String>,
    pub faithful: bool,
    pub faithful_witness: Option<String>,
    pub equivalence: bool,
    /// the same verdict via the pi0/pi1 isomorphism criterion
    pub pi_criterion: bool,
}

/// Induced map on connected components.
pub fn induced_pi0(
    f: &MonFunctor,
    pi0_s: &Arc<crate::abgroup::FinAbGroup>,
    pi0_t: &Arc<crate::abgroup::FinAbGroup>,
) -> Result<GroupHom, GroupError> {
    let cs = f.source.components().clone();
    let ct = f.target.components().clone();
    hom_make(pi0_s.clone(), pi0_t.clone(), |i| {
        ct.comp_of[f.obj(cs.reps[i as usize]) as usize]
    })
}

/// Induced map on unit-object automorphisms, conjugated through the unit
/// witness.
pub fn induced_pi1(f: &MonFunctor, pi1_s: &Pi1, pi1_t: &Pi1) -> Result<GroupHom, GroupError> {
    let t = &f.target;
    let iota = f.unit_wit;
    let iota_inv = t.inverse_mor(iota).expect("groupoid");
    hom_make(pi1_s.group.clone(), pi1_t.group.clone(), |i| {
        let m = pi1_s.mors[i as usize];
        let conj = t.compose(iota_inv, t.compose(f.mor(m), iota));
        pi1_t.index_of(conj).expect("conjugate lands in Aut(I)")
    })
}

/// Decides essential surjectivity, fullness and faithfulness exhaustively,
/// and cross-checks the equivalence verdict against the pi0/pi1 criterion.
pub fn functor_props(f: &MonFunctor) -> Result<FunctorProps, GroupError> {
    let s = &f.source;
    let t = &f.target;
    let tcomps = t.components().clone();
    let mut hit = vec![false; tcomps.reps.len()];
    for x in 0..s.n_obj() {
        hit[tcomps.comp_of[f.obj(x) as usize] as usize] = true;
    }
    let miss = hit.iter().position(|&h| !h);
    let essentially_surjective = miss.is_none();
    let ess_surj_witness = miss.map(|i| t.obj_label(tcomps.reps[i]));

    let mut full = true;
    let mut full_witness = None;
    let mut faithful = true;
    let mut faithful_witness = None;
    let sidx = s.index().clone();
    let tidx = t.index().clone();
    'outer: for y in 0..s.n_obj() {
        for x in 0..s.n_obj() {
            let mut mapped: Vec<u32> = sidx.in_to[y as usize]
                .iter()
                .copied()
                .filter(|&m| s.dom(m) == x)
                .map(|m| f.mor(m))
                .collect();
            let before = mapped.len();
            mapped.sort_unstable();
            mapped.dedup();
            if faithful && mapped.len() != before {
                faithful = false;
                faithful_witness = Some(format!(
                    "Hom({},{}) collapses under the functor",
                    s.obj_label(x),
                    s.obj_label(y)
                ));
            }
            if full {
                let missing = tidx.in_to[f.obj(y) as usize]
                    .iter()
                    .copied()
                    .filter(|&h| t.dom(h) == f.obj(x))
                    .find(|h| mapped.binary_search(h).is_err());
                if let Some(h) = missing {
                    full = false;
                    full_witness = Some(format!(
                        "{} not hit from Hom({},{})",
                        t.mor_label(h),
                        s.obj_label(x),
                        s.obj_label(y)
                    ));
                }
            }
            if !full && !faithful {
                break 'outer;
            }
        }
    }
    let equivalence = essentially_surjective && full && faithful;

    let pi0_s = pi0(s)?;
    let pi0_t = pi0(t)?;
    let pi1_s = pi1(s)?;
    let pi1_t = pi1(t)?;
    let p0 = induced_pi0(f, &pi0_s, &pi0_t)?;
    let p1 = induced_pi1(f, &pi1_s, &pi1_t)?;
    let pi_criterion = p0.is_bijective() && p1.is_bijective();
    assert_eq!(
        equivalence, pi_criterion,
        "equivalence verdict must agree with the pi0/pi1 criterion"
    );
    Ok(FunctorProps {
        essentially_surjective,
        ess_surj_witness,
        full,
        full_witness,
        faithful,
        faithful_witness,
        equivalence,
        pi_criterion,
    })
}

/// Builds the induced functor into the 2-kernel of beta from a composable
/// pair with a trivialization k of beta after alpha:
/// X -> (alpha(X), k_X^{-1}: I -> beta(alpha(X))).
pub fn induced_to_two_kernel(
    alpha: &Arc<MonFunctor>,
    beta: &Arc<MonFunctor>,
    kappa: &NatToTrivial,
) -> Result<Arc<MonFunctor>, FunctorError> {
    assert!(Arc::ptr_eq(&alpha.target, &beta.source));
    assert!(Arc::ptr_eq(&kappa.functor.source, &alpha.source));
    assert!(Arc::ptr_eq(&kappa.functor.target, &beta.target));
    let (kcat, _proj) = two_kernel(beta)?;
    let kk = match kcat.kind() {
        super::CatKind::TwoKer(k) => k,
        _ => unreachable!("two_kernel builds a TwoKerCat"),
    };
    let s = &alpha.source;
    let kt = &beta.target;
    let obj_map: Vec<u32> = (0..s.n_obj())
        .map(|x| {
            let trivialization = kt
                .inverse_mor(kappa.components[x as usize])
                .expect("groupoid");
            kk.lookup_obj(alpha.obj(x), trivialization)
                .expect("induced object lies in the 2-kernel")
        })
        .collect();
    let mor_map: Vec<u32> = (0..s.n_mor())
        .map(|m| {
            let k = kk
                .encode_mor(obj_map[s.dom(m) as usize], alpha.mor(m))
                .expect("underlying morphism starts at the right object");
            if kk.cod(k) != obj_map[s.cod(m) as usize] {
                panic!(
                    "naturality of the trivialization failed at {}",
                    s.mor_label(m)
                );
            }
            k
        })
        .collect();
    // witness components: the alpha witness, retyped in the 2-kernel
    let n = s.n_obj();
    let mut strict = matches!(alpha.tensor_wit, TensorWitness::Identity);
    let mut table = Vec::with_capacity((n * n) as usize);
    for x in 0..n {
        for y in 0..n {
            let dom_k = kcat.tensor_obj(obj_map[x as usize], obj_map[y as usize]);
            let k = kk
                .encode_mor(dom_k, alpha.witness(x, y))
                .ok_or_else(|| invalid("induced witness typing", format!("{x},{y}")))?;
            if kk.cod(k) != obj_map[s.tensor_obj(x, y) as usize] {
                return Err(invalid(
                    "trivialization is not monoidal",
                    format!("{} . {}", s.obj_label(x), s.obj_label(y)),
                ));
            }
            if k != kcat.id_mor(dom_k) {
                strict = false;
            }
            table.push(k);
        }
    }
    let unit_k = kk
        .encode_mor(kcat.unit_obj(), alpha.unit_wit)
        .ok_or_else(|| invalid("induced unit witness", String::new()))?;
    if kk.cod(unit_k) != obj_map[s.unit_obj() as usize] {
        return Err(invalid("trivialization unit coherence", String::new()));
    }
    if unit_k != kcat.id_mor(kcat.unit_obj()) {
        strict = false;
    }
    let gamma = Arc::new(MonFunctor {
        source: s.clone(),
        target: kcat.clone(),
        obj_map,
        mor_map,
        tensor_wit: if strict {
            TensorWitness::Identity
        } else {
            TensorWitness::Table(table)
        },
        unit_wit: unit_k,
    });
    validate_mon_functor(&gamma)?;
    Ok(gamma)
}
