//! The concrete cat-groups and functors attached to a fixed (R, p, q) with
//! pq + 2 = 0: the quadratic-pair category Qu_f, the squaring cat-group G(R),
//! its quotient-side companion G^{pq}(R), and the connecting functors
//! alpha_f, beta_f with the trivialization delta_f.

mod checks;
mod vs;

pub use checks::{cor44, exactpq_realized, gamma_check, t_push, Cor44Report, GammaReport};
pub use vs::{build_vs, dis_free, ses_vs, SesReport, VsData};

use crate::abgroup::{
    group_from_closure, hom_make, FinAbGroup, GroupError, GroupHom, Subgroup,
};
use crate::catgroup::{
    catgroup_from_hom, nat_to_trivial, validate_mon_functor, CatGroup, CatKind, CatOps,
    FunctorError, MonFunctor, NatToTrivial, TensorWitness,
};
use crate::ring::{quotient_by_principal, FiniteRing, PrincipalQuotient};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuError {
    #[error("pair ({p}, {q}) is not admissible: pq + 2 != 0")]
    NotAdmissible { p: String, q: String },
    #[error("construction check `{check}` failed at {witness}")]
    Check { check: &'static str, witness: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
}

fn check_err(check: &'static str, witness: String) -> QuError {
    QuError::Check { check, witness }
}

/// A ring with a fixed admissible pair, pq + 2 = 0.
#[derive(Clone)]
pub struct PairPQ {
    pub ring: Arc<FiniteRing>,
    pub p: u32,
    pub q: u32,
}

impl PairPQ {
    pub fn new(ring: Arc<FiniteRing>, p: u32, q: u32) -> Result<PairPQ, QuError> {
        if ring.add(ring.mul(p, q), ring.two()) != ring.zero() {
            return Err(QuError::NotAdmissible {
                p: ring.label(p).to_string(),
                q: ring.label(q).to_string(),
            });
        }
        Ok(PairPQ { ring, p, q })
    }

    pub fn p_is_unit(&self) -> bool {
        self.ring.is_unit(self.p)
    }
}

/// The quadratic-pair cat-group: objects [a,b] with a^2 + p^2 b a unit,
/// morphisms into [a,b] indexed by (u, r) with source
/// [au - pr, u^2 b - q r u a - r^2]. Everything is computed from per-morphism
/// arrays and the ring tables, so validation never needs a dense tensor table.
pub struct QuCat {
    ring: Arc<FiniteRing>,
    p: u32,
    q: u32,
    p2: u32,
    objs: Vec<(u32, u32)>,
    obj_at: Vec<u32>,
    units: Vec<u32>,
    unit_pos: Vec<u32>,
    nu: u32,
    n: u32,
    mor_cod: Vec<u32>,
    mor_u: Vec<u32>,
    mor_r: Vec<u32>,
    mor_dom: Vec<u32>,
}

impl QuCat {
    fn new(pair: &PairPQ) -> Result<QuCat, QuError> {
        let ring = pair.ring.clone();
        let n = ring.size();
        let (p, q) = (pair.p, pair.q);
        let p2 = ring.mul(p, p);
        let mut objs = Vec::new();
        let mut obj_at = vec![u32::MAX; (n * n) as usize];
        for a in ring.elements() {
            for b in ring.elements() {
                if ring.is_unit(ring.add(ring.mul(a, a), ring.mul(p2, b))) {
                    obj_at[(a * n + b) as usize] = objs.len() as u32;
                    objs.push((a, b));
                }
            }
        }
        let units = ring.units().to_vec();
        let mut unit_pos = vec![u32::MAX; n as usize];
        for (i, &u) in units.iter().enumerate() {
            unit_pos[u as usize] = i as u32;
        }
        let nu = units.len() as u32;
        let n_mor = objs.len() as u32 * nu * n;
        let mut mor_cod = Vec::with_capacity(n_mor as usize);
        let mut mor_u = Vec::with_capacity(n_mor as usize);
        let mut mor_r = Vec::with_capacity(n_mor as usize);
        let mut mor_dom = Vec::with_capacity(n_mor as usize);
        for (ci, &(a, b)) in objs.iter().enumerate() {
            for &u in &units {
                for r in 0..n {
                    // source of (u, r) into [a, b], per the morphism relations
                    let c = ring.sub(ring.mul(a, u), ring.mul(p, r));
                    let d = ring.sub(
                        ring.sub(
                            ring.mul(ring.mul(u, u), b),
                            ring.mul(ring.mul(q, r), ring.mul(u, a)),
                        ),
                        ring.mul(r, r),
                    );
                    let dom = obj_at[(c * n + d) as usize];
                    if dom == u32::MAX {
                        return Err(check_err(
                            "morphism sources are objects",
                            format!("[{},{}] via ({},{})", ring.label(a), ring.label(b), ring.label(u), ring.label(r)),
                        ));
                    }
                    mor_cod.push(ci as u32);
                    mor_u.push(u);
                    mor_r.push(r);
                    mor_dom.push(dom);
                }
            }
        }
        Ok(QuCat {
            ring,
            p,
            q,
            p2,
            objs,
            obj_at,
            units,
            unit_pos,
            nu,
            n,
            mor_cod,
            mor_u,
            mor_r,
            mor_dom,
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn objects(&self) -> &[(u32, u32)] {
        &self.objs
    }

    pub fn object_index(&self, a: u32, b: u32) -> Option<u32> {
        let v = self.obj_at[(a * self.n + b) as usize];
        (v != u32::MAX).then_some(v)
    }

    /// Morphism into `cod` with the given unit and translation parameters.
    pub fn mor_into(&self, cod: u32, u: u32, r: u32) -> u32 {
        (cod * self.nu + self.unit_pos[u as usize]) * self.n + r
    }

    pub fn params(&self, m: u32) -> (u32, u32) {
        (self.mor_u[m as usize], self.mor_r[m as usize])
    }
}

impl CatOps for QuCat {
    fn n_obj(&self) -> u32 {
        self.objs.len() as u32
    }

    fn n_mor(&self) -> u32 {
        self.mor_cod.len() as u32
    }

    fn unit_obj(&self) -> u32 {
        self.obj_at[(self.ring.one() * self.n + self.ring.zero()) as usize]
    }

    #[inline(always)]
    fn dom(&self, m: u32) -> u32 {
        self.mor_dom[m as usize]
    }

    #[inline(always)]
    fn cod(&self, m: u32) -> u32 {
        self.mor_cod[m as usize]
    }

    #[inline(always)]
    fn id_mor(&self, x: u32) -> u32 {
        (x * self.nu + self.unit_pos[self.ring.one() as usize]) * self.n + self.ring.zero()
    }

    #[inline(always)]
    fn compose(&self, g: u32, f: u32) -> u32 {
        let r = &self.ring;
        let u = r.mul(self.mor_u[g as usize], self.mor_u[f as usize]);
        let t = r.add(
            r.mul(self.mor_r[g as usize], self.mor_u[f as usize]),
            self.mor_r[f as usize],
        );
        (self.mor_cod[g as usize] * self.nu + self.unit_pos[u as usize]) * self.n + t
    }

    #[inline(always)]
    fn tensor_obj(&self, x: u32, y: u32) -> u32 {
        let r = &self.ring;
        let (a1, b1) = self.objs[x as usize];
        let (a2, b2) = self.objs[y as usize];
        let a = r.mul(a1, a2);
        let b = r.add(
            r.add(r.mul(r.mul(a1, a1), b2), r.mul(r.mul(a2, a2), b1)),
            r.mul(self.p2, r.mul(b1, b2)),
        );
        self.obj_at[(a * self.n + b) as usize]
    }

    #[inline(always)]
    fn tensor_mor(&self, f: u32, g: u32) -> u32 {
        let r = &self.ring;
        let (u1, r1) = (self.mor_u[f as usize], self.mor_r[f as usize]);
        let (u2, r2) = (self.mor_u[g as usize], self.mor_r[g as usize]);
        let a1 = self.objs[self.mor_cod[f as usize] as usize].0;
        let a2 = self.objs[self.mor_cod[g as usize] as usize].0;
        let u = r.mul(u1, u2);
        let t = r.sub(
            r.add(r.mul(r.mul(r1, u2), a2), r.mul(r.mul(u1, a1), r2)),
            r.mul(self.p, r.mul(r1, r2)),
        );
        let cod = self.tensor_obj(self.mor_cod[f as usize], self.mor_cod[g as usize]);
        (cod * self.nu + self.unit_pos[u as usize]) * self.n + t
    }

    fn obj_label(&self, x: u32) -> String {
        let (a, b) = self.objs[x as usize];
        format!("[{},{}]", self.ring.label(a), self.ring.label(b))
    }

    fn mor_label(&self, m: u32) -> String {
        let (da, db) = self.objs[self.mor_dom[m as usize] as usize];
        let (ca, cb) = self.objs[self.mor_cod[m as usize] as usize];
        format!(
            "({},{}):[{},{}]->[{},{}]",
            self.ring.label(self.mor_u[m as usize]),
            self.ring.label(self.mor_r[m as usize]),
            self.ring.label(da),
            self.ring.label(db),
            self.ring.label(ca),
            self.ring.label(cb)
        )
    }
}

/// Z_{pq}(R) = { r | r^2 = qr } under r + s + p r s.
pub fn z_pq_group(pair: &PairPQ) -> Result<Arc<FinAbGroup>, GroupError> {
    let r = &pair.ring;
    let carrier: Vec<u32> = r
        .elements()
        .filter(|&x| r.mul(x, x) == r.mul(pair.q, x))
        .collect();
    let p = pair.p;
    group_from_closure(
        &carrier,
        |a, b| r.add(r.add(a, b), r.mul(p, r.mul(a, b))),
        r.zero(),
        |a| r.label(a).to_string(),
    )
}

/// The multiplicative group of units, indexed by position in `ring.units()`.
pub fn unit_group(ring: &Arc<FiniteRing>) -> Arc<FinAbGroup> {
    group_from_closure(
        ring.units(),
        |a, b| ring.mul(a, b),
        ring.one(),
        |a| ring.label(a).to_string(),
    )
    .expect("units form a group")
}

pub fn sq_hom(ring: &Arc<FiniteRing>, units: &Arc<FinAbGroup>) -> GroupHom {
    hom_make(units.clone(), units.clone(), |i| {
        let u = ring.units()[i as usize];
        let v = ring.mul(u, u);
        ring.units().binary_search(&v).unwrap() as u32
    })
    .expect("squaring is a homomorphism")
}

/// mu_2(R) = { r | r^2 = 1 } as a subgroup of the units, and
/// U_2(R) = R^* / (R^*)^2 as the cokernel of squaring.
pub fn mu2_u2(ring: &Arc<FiniteRing>) -> (Subgroup, Arc<FinAbGroup>) {
    let units = unit_group(ring);
    let sq = sq_hom(ring, &units);
    (sq.kernel(), sq.cokernel().group)
}

pub struct QuData {
    pub pair: PairPQ,
    pub cat: Arc<CatGroup>,
    pub z_pq: Arc<FinAbGroup>,
}

/// Builds Qu_f^{pq}(R), identifies pi1 with Z_{pq}(R) along r -> (1 + pr, r),
/// and checks the duality witness (a^2 + p^2 b, pb): [a,b] * [a,b] -> [1,0]
/// on every object.
pub fn build_qu_f(pair: &PairPQ) -> Result<QuData, QuError> {
    let qu = QuCat::new(pair)?;
    let r = pair.ring.clone();
    let unit = qu.unit_obj();
    // duality witness is a genuine morphism with the right source
    for x in 0..qu.n_obj() {
        let (a, b) = qu.objs[x as usize];
        let u = r.add(r.mul(a, a), r.mul(qu.p2, b));
        let w = qu.mor_into(unit, u, r.mul(pair.p, b));
        if qu.dom(w) != qu.tensor_obj(x, x) {
            return Err(check_err("duality witness", qu.obj_label(x)));
        }
    }
    let z_pq = z_pq_group(pair)?;
    let cat = CatGroup::new(CatKind::Qu(qu));
    // r -> (1 + pr, r) is an isomorphism Z_pq -> pi1(Qu_f)
    let pi1 = crate::catgroup::pi1(&cat)?;
    if pi1.group.size() != z_pq.size() {
        return Err(check_err(
            "pi1 identification size",
            format!("{} vs {}", pi1.group.size(), z_pq.size()),
        ));
    }
    let quc = match cat.kind() {
        CatKind::Qu(c) => c,
        _ => unreachable!(),
    };
    let embed: Vec<u32> = z_pq
        .elements()
        .map(|i| {
            let rr = r.element_by_label(z_pq.label(i)).unwrap();
            let m = quc.mor_into(unit, r.add(r.one(), r.mul(pair.p, rr)), rr);
            pi1.index_of(m).expect("(1+pr, r) is an automorphism of [1,0]")
        })
        .collect();
    let hom = hom_make(z_pq.clone(), pi1.group.clone(), |i| embed[i as usize])?;
    if !hom.is_bijective() {
        return Err(check_err("pi1 identification bijective", String::new()));
    }
    Ok(QuData {
        pair: pair.clone(),
        cat,
        z_pq,
    })
}

pub struct GData {
    pub cat: Arc<CatGroup>,
    pub units: Arc<FinAbGroup>,
    pub sq: GroupHom,
    pub mu2: Subgroup,
    pub u2: Arc<FinAbGroup>,
}

/// G(R): the cat-group of the squaring map on units; pi0 = U_2(R) and
/// pi1 = mu_2(R) are verified against the homomorphism calculus.
pub fn build_g(ring: &Arc<FiniteRing>) -> Result<GData, QuError> {
    let units = unit_group(ring);
    let sq = sq_hom(ring, &units);
    let cat = catgroup_from_hom(&sq);
    let mu2 = sq.kernel();
    let u2 = sq.cokernel().group;
    let p0 = crate::catgroup::pi0(&cat)?;
    let p1 = crate::catgroup::pi1(&cat)?;
    if !crate::abgroup::is_isomorphic(&p0, &u2) || p0.size() != u2.size() {
        return Err(check_err("pi0(G) = U_2", String::new()));
    }
    if !crate::abgroup::is_isomorphic(&p1.group, &mu2.group) {
        return Err(check_err("pi1(G) = mu_2", String::new()));
    }
    // the component representatives agree with the cokernel representatives
    for i in 0..p0.size() {
        if p0.label(i) != u2.label(i) {
            return Err(check_err("pi0(G) representatives", p0.label(i).to_string()));
        }
    }
    Ok(GData {
        cat,
        units,
        sq,
        mu2,
        u2,
    })
}

pub struct GpqData {
    pub cat: Arc<CatGroup>,
    /// R -> R/p^2R
    pub to_p2: PrincipalQuotient,
    /// R/p^2R -> R/pR, taken inside R/p^2R so lifts are literal elements
    pub to_p: PrincipalQuotient,
    pub units_p2: Arc<FinAbGroup>,
    pub units_p: Arc<FinAbGroup>,
    pub sq_big: GroupHom,
    /// Sq: (R/pR)^* -> (R/p^2R)^*
    pub sq_lift: GroupHom,
}

/// G^{pq}(R): the cat-group of Sq: (R/pR)^* -> (R/p^2R)^*, with
/// lift-independence of Sq checked over every lift of every unit, and the
/// pi0/pi1 identifications of the quotient construction verified.
pub fn build_gpq(pair: &PairPQ) -> Result<GpqData, QuError> {
    let r = &pair.ring;
    let to_p2 = quotient_by_principal(r, r.mul(pair.p, pair.p));
    let t = to_p2.quotient.clone();
    let p_in_t = to_p2.project.apply(pair.p);
    let to_p = quotient_by_principal(&t, p_in_t);
    let rp = to_p.quotient.clone();

    let units_p2 = unit_group(&t);
    let units_p = unit_group(&rp);
    let sq_big = sq_hom(&t, &units_p2);

    // every lift of a unit is a unit and all lifts square to the same element
    let mut sq_vals = Vec::with_capacity(rp.units().len());
    for &u in rp.units() {
        let lifts = to_p.lifts_of(u);
        let mut squares: Vec<u32> = lifts
            .iter()
            .map(|&l| {
                if !t.is_unit(l) {
                    return u32::MAX;
                }
                t.mul(l, l)
            })
            .collect();
        squares.sort_unstable();
        squares.dedup();
        if squares.len() != 1 || squares[0] == u32::MAX {
            return Err(check_err(
                "Sq lift independence",
                format!("lifts of {} square to {:?}", rp.label(u), squares),
            ));
        }
        sq_vals.push(squares[0]);
    }
    let sq_lift = hom_make(units_p.clone(), units_p2.clone(), |i| {
        t.units().binary_search(&sq_vals[i as usize]).unwrap() as u32
    })?;
    let cat = catgroup_from_hom(&sq_lift);

    // pi0 = U_2(R/p^2R): Im(Sq) equals the squares of (R/p^2R)^*
    if sq_lift.image_set() != sq_big.image_set() {
        return Err(check_err("Im(Sq) = Im(sq)", String::new()));
    }
    let p0 = crate::catgroup::pi0(&cat)?;
    let u2_t = sq_big.cokernel().group;
    if !crate::abgroup::is_isomorphic(&p0, &u2_t) {
        return Err(check_err("pi0(Gpq) = U_2(R/p^2R)", String::new()));
    }
    // pi1 = ker(Sq) = Im(mu_2(R/p^2R) -> mu_2(R/pR)), as subsets of (R/pR)^*
    let ker: Vec<u32> = sq_lift
        .kernel()
        .include
        .iter()
        .map(|&i| rp.units()[i as usize])
        .collect();
    let mut image_mu2: Vec<u32> = sq_big
        .kernel()
        .include
        .iter()
        .map(|&i| to_p.project.apply(t.units()[i as usize]))
        .collect();
    image_mu2.sort_unstable();
    image_mu2.dedup();
    if ker != image_mu2 {
        return Err(check_err(
            "ker(Sq) = Im(mu2(R/p^2R) -> mu2(R/pR))",
            format!("{ker:?} vs {image_mu2:?}"),
        ));
    }
    Ok(GpqData {
        cat,
        to_p2,
        to_p,
        units_p2,
        units_p,
        sq_big,
        sq_lift,
    })
}

pub struct TripleData {
    pub qu: QuData,
    pub g: GData,
    pub gpq: GpqData,
    pub alpha: Arc<MonFunctor>,
    pub beta: Arc<MonFunctor>,
    pub delta: NatToTrivial,
}

/// Builds the exact-sequence data alpha_f: Qu_f -> G(R),
/// beta_f: G(R) -> G^{pq}(R) and the trivialization delta_f of their
/// composite, all validated. The morphism-level invariant
/// c^2 + p^2 d = u^2 (a^2 + p^2 b) is checked for every morphism.
pub fn build_triple(pair: &PairPQ) -> Result<TripleData, QuError> {
    let qu = build_qu_f(pair)?;
    let g = build_g(&pair.ring)?;
    let gpq = build_gpq(pair)?;
    let r = &pair.ring;
    let quc = match qu.cat.kind() {
        CatKind::Qu(c) => c,
        _ => unreachable!(),
    };
    let nu = r.units().len() as u32;
    let upos = |u: u32| r.units().binary_search(&u).unwrap() as u32;

    // alpha_f: [a,b] -> a^2 + p^2 b, (u,r) -> u
    let alpha_obj: Vec<u32> = quc
        .objects()
        .iter()
        .map(|&(a, b)| upos(r.add(r.mul(a, a), r.mul(quc.p2, b))))
        .collect();
    let alpha_mor: Vec<u32> = (0..qu.cat.n_mor())
        .map(|m| {
            let (u, _) = quc.params(m);
            alpha_obj[quc.cod(m) as usize] * nu + upos(u)
        })
        .collect();
    // c^2 + p^2 d = u^2 (a^2 + p^2 b) for every morphism
    for m in 0..qu.cat.n_mor() {
        let (u, _) = quc.params(m);
        let (c, d) = quc.objects()[quc.dom(m) as usize];
        let (a, b) = quc.objects()[quc.cod(m) as usize];
        let lhs = r.add(r.mul(c, c), r.mul(quc.p2, d));
        let rhs = r.mul(r.mul(u, u), r.add(r.mul(a, a), r.mul(quc.p2, b)));
        if lhs != rhs {
            return Err(check_err("alpha_f morphism invariant", quc.mor_label(m)));
        }
    }
    let alpha = Arc::new(MonFunctor {
        source: qu.cat.clone(),
        target: g.cat.clone(),
        obj_map: alpha_obj,
        mor_map: alpha_mor,
        tensor_wit: TensorWitness::Identity,
        unit_wit: g.cat.id_mor(g.cat.unit_obj()),
    });
    validate_mon_functor(&alpha)?;

    // beta_f: reductions mod p^2 on objects, mod p on morphism labels
    let t = &gpq.to_p2.quotient;
    let rp = &gpq.to_p.quotient;
    let nup = rp.units().len() as u32;
    let tpos = |x: u32| t.units().binary_search(&x).unwrap() as u32;
    let ppos = |x: u32| rp.units().binary_search(&x).unwrap() as u32;
    let beta_obj: Vec<u32> = r
        .units()
        .iter()
        .map(|&x| tpos(gpq.to_p2.project.apply(x)))
        .collect();
    let beta_mor: Vec<u32> = (0..g.cat.n_mor())
        .map(|m| {
            let cod = g.cat.cod(m);
            let label = r.units()[(m % nu) as usize];
            let lp = gpq.to_p.project.apply(gpq.to_p2.project.apply(label));
            beta_obj[cod as usize] * nup + ppos(lp)
        })
        .collect();
    let beta = Arc::new(MonFunctor {
        source: g.cat.clone(),
        target: gpq.cat.clone(),
        obj_map: beta_obj,
        mor_map: beta_mor,
        tensor_wit: TensorWitness::Identity,
        unit_wit: gpq.cat.id_mor(gpq.cat.unit_obj()),
    });
    validate_mon_functor(&beta)?;

    // delta_f: [a,b] -> (a mod pR), a morphism beta(alpha([a,b])) -> 1
    let composite = Arc::new(crate::catgroup::compose_functors(&alpha, &beta));
    let components: Vec<u32> = quc
        .objects()
        .iter()
        .map(|&(a, _)| {
            let amodp = gpq.to_p.project.apply(gpq.to_p2.project.apply(a));
            // morphism with label (a mod p) into the unit object of Gpq
            let unit = gpq.cat.unit_obj();
            unit * nup + ppos(amodp)
        })
        .collect();
    let delta = nat_to_trivial(composite, components)?;
    Ok(TripleData {
        qu,
        g,
        gpq,
        alpha,
        beta,
        delta,
    })
}
