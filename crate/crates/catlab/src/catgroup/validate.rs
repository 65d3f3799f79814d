//! Exhaustive validation of the cat-group axioms.
//!
//! Composition associativity is checked over every composable triple, and the
//! tensor checks are phrased through generator decompositions: interchange,
//! morphism-level symmetry and morphism-level associativity each follow from
//! the checks below by splitting f ⊗ g as (f ⊗ id) ∘ (id ⊗ g), so the suite
//! is equivalent to the naive full-tuple scan. `validate_catgroup_naive` keeps
//! the naive scan available as a cross-check oracle for small categories.

use super::{with_ops, CatGroup, CatIndex, CatOps, Components};
use rayon::prelude::*;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct CheckFailure {
    pub check: &'static str,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct CatGroupReport {
    pub failures: Vec<CheckFailure>,
}

impl CatGroupReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(check: &'static str, witness: String) -> CatGroupReport {
        CatGroupReport {
            failures: vec![CheckFailure { check, witness }],
        }
    }

    fn pass() -> CatGroupReport {
        CatGroupReport { failures: vec![] }
    }
}

/// Composition over all composable pairs, stored row-per-morphism: entry j of
/// row g is g after the j-th morphism into dom(g).
pub(crate) struct ComposeTable {
    pub offsets: Vec<usize>,
    pub data: Vec<u32>,
}

impl ComposeTable {
    pub fn build<C: CatOps>(c: &C, idx: &CatIndex) -> ComposeTable {
        let n_mor = c.n_mor() as usize;
        let mut offsets = Vec::with_capacity(n_mor + 1);
        let mut total = 0usize;
        for g in 0..n_mor {
            offsets.push(total);
            total += idx.in_to[c.dom(g as u32) as usize].len();
        }
        offsets.push(total);
        let data: Vec<u32> = (0..n_mor)
            .into_par_iter()
            .flat_map_iter(|g| {
                let ins = &idx.in_to[c.dom(g as u32) as usize];
                ins.iter().map(move |&f| c.compose(g as u32, f))
            })
            .collect();
        ComposeTable { offsets, data }
    }

    #[inline(always)]
    pub fn at(&self, g: u32, in_pos_of_f: u32) -> u32 {
        self.data[self.offsets[g as usize] + in_pos_of_f as usize]
    }
}

/// A small set of objects whose tensor-closure (starting from the unit) is
/// the whole object set, chosen greedily by least index.
fn object_generators<C: CatOps>(c: &C) -> Vec<u32> {
    let n = c.n_obj();
    let mut in_span = vec![false; n as usize];
    in_span[c.unit_obj() as usize] = true;
    let mut gens: Vec<u32> = Vec::new();
    loop {
        let Some(g) = (0..n).find(|&x| !in_span[x as usize]) else {
            return gens;
        };
        gens.push(g);
        in_span[g as usize] = true;
        // close the span under right-multiplication by the generators
        loop {
            let mut grew = false;
            for x in 0..n {
                if !in_span[x as usize] {
                    continue;
                }
                for &h in &gens {
                    let t = c.tensor_obj(x, h);
                    if !in_span[t as usize] {
                        in_span[t as usize] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }
}

pub fn validate_catgroup(cat: &Arc<CatGroup>) -> CatGroupReport {
    let index = cat.index().clone();
    let comps = cat.components().clone();
    with_ops!(cat, c => validate_impl(c, &index, &comps))
}

fn validate_impl<C: CatOps>(c: &C, idx: &CatIndex, comps: &Components) -> CatGroupReport {
    let n_obj = c.n_obj();
    let n_mor = c.n_mor();
    let ml = |m: u32| c.mor_label(m);
    let ol = |x: u32| c.obj_label(x);

    // object and identity typing
    for m in 0..n_mor {
        if c.dom(m) >= n_obj || c.cod(m) >= n_obj {
            return CatGroupReport::fail("morphism endpoints in range", ml(m));
        }
    }
    for x in 0..n_obj {
        let i = c.id_mor(x);
        if i >= n_mor || c.dom(i) != x || c.cod(i) != x {
            return CatGroupReport::fail("identity morphism typing", ol(x));
        }
    }

    let ct = ComposeTable::build(c, idx);

    // composition typing: g after f runs dom(f) -> cod(g)
    for g in 0..n_mor {
        let ins = &idx.in_to[c.dom(g) as usize];
        for (j, &f) in ins.iter().enumerate() {
            let h = ct.data[ct.offsets[g as usize] + j];
            if h >= n_mor || c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g) {
                return CatGroupReport::fail(
                    "composition typing",
                    format!("{} after {}", ml(g), ml(f)),
                );
            }
        }
    }

    // identity laws
    for m in 0..n_mor {
        let lhs = ct.at(c.id_mor(c.cod(m)), idx.in_pos[m as usize]);
        let rhs = ct.at(m, idx.in_pos[c.id_mor(c.dom(m)) as usize]);
        if lhs != m || rhs != m {
            return CatGroupReport::fail("identity laws", ml(m));
        }
    }

    // two-sided inverses
    for m in 0..n_mor {
        let (d, co) = (c.dom(m), c.cod(m));
        let ok = idx.out_of[co as usize].iter().any(|&w| {
            c.cod(w) == d
                && ct.at(w, idx.in_pos[m as usize]) == c.id_mor(d)
                && ct.at(m, idx.in_pos[w as usize]) == c.id_mor(co)
        });
        if !ok {
            return CatGroupReport::fail("two-sided inverse", ml(m));
        }
    }

    // associativity of composition, over every composable triple
    let assoc_bad = |g: u32| -> bool {
        let row_g = ct.offsets[g as usize];
        let indeg = idx.in_to[c.dom(g) as usize].len();
        idx.out_of[c.cod(g) as usize].iter().any(|&h| {
            let hg = ct.at(h, idx.in_pos[g as usize]);
            let row_h = ct.offsets[h as usize];
            let row_hg = ct.offsets[hg as usize];
            (0..indeg).any(|j| {
                let gf = ct.data[row_g + j];
                ct.data[row_h + idx.in_pos[gf as usize] as usize] != ct.data[row_hg + j]
            })
        })
    };
    if (0..n_mor).into_par_iter().with_min_len(16).any(assoc_bad) {
        let g = (0..n_mor).find(|&g| assoc_bad(g)).unwrap();
        return CatGroupReport::fail("composition associativity", ml(g));
    }

    // strict monoid structure on objects
    for x in 0..n_obj {
        for y in 0..n_obj {
            let t = c.tensor_obj(x, y);
            if t >= n_obj {
                return CatGroupReport::fail("tensor range", format!("{} . {}", ol(x), ol(y)));
            }
            if t != c.tensor_obj(y, x) {
                return CatGroupReport::fail(
                    "strict symmetry on objects",
                    format!("{} . {}", ol(x), ol(y)),
                );
            }
        }
        let u = c.unit_obj();
        if c.tensor_obj(u, x) != x || c.tensor_obj(x, u) != x {
            return CatGroupReport::fail("strict unit on objects", ol(x));
        }
    }
    let obj_assoc_bad = |x: u32| {
        (0..n_obj).any(|y| {
            let xy = c.tensor_obj(x, y);
            (0..n_obj).any(|z| c.tensor_obj(xy, z) != c.tensor_obj(x, c.tensor_obj(y, z)))
        })
    };
    if (0..n_obj).into_par_iter().any(obj_assoc_bad) {
        let x = (0..n_obj).find(|&x| obj_assoc_bad(x)).unwrap();
        return CatGroupReport::fail("strict associativity on objects", ol(x));
    }

    let ids: Vec<u32> = (0..n_obj).map(|x| c.id_mor(x)).collect();

    // id ⊗ id = id
    for x in 0..n_obj {
        for y in 0..n_obj {
            if c.tensor_mor(ids[x as usize], ids[y as usize]) != ids[c.tensor_obj(x, y) as usize]
            {
                return CatGroupReport::fail(
                    "tensor preserves identities",
                    format!("{} . {}", ol(x), ol(y)),
                );
            }
        }
    }

    // generator tensors m ⊗ id_Z and id_Z ⊗ m
    let nm = n_mor as usize;
    let no = n_obj as usize;
    let m_fid: Vec<u32> = (0..nm)
        .into_par_iter()
        .flat_map_iter(|m| (0..no).map(move |z| c.tensor_mor(m as u32, ids[z])))
        .collect();
    let m_idf: Vec<u32> = (0..no)
        .into_par_iter()
        .flat_map_iter(|z| (0..nm).map(move |m| c.tensor_mor(ids[z], m as u32)))
        .collect();

    // strict unit on morphisms
    let u = c.unit_obj() as usize;
    for m in 0..nm {
        if m_fid[m * no + u] != m as u32 || m_idf[u * nm + m] != m as u32 {
            return CatGroupReport::fail("strict unit on morphisms", ml(m as u32));
        }
    }

    // strict symmetry on generators: m ⊗ id_Z = id_Z ⊗ m; with the gluing
    // check below this yields f ⊗ g = g ⊗ f for all pairs
    let sym_bad = |m: usize| (0..no).any(|z| m_fid[m * no + z] != m_idf[z * nm + m]);
    if (0..nm).into_par_iter().any(sym_bad) {
        let m = (0..nm).find(|&m| sym_bad(m)).unwrap();
        return CatGroupReport::fail("strict symmetry on morphisms", ml(m as u32));
    }

    // tensor typing for the generator tensors
    let gen_typing_bad = |m: usize| {
        let (d, co) = (c.dom(m as u32), c.cod(m as u32));
        (0..no).any(|z| {
            let t = m_fid[m * no + z];
            t >= n_mor
                || c.dom(t) != c.tensor_obj(d, z as u32)
                || c.cod(t) != c.tensor_obj(co, z as u32)
        })
    };
    if (0..nm).into_par_iter().any(gen_typing_bad) {
        let m = (0..nm).find(|&m| gen_typing_bad(m)).unwrap();
        return CatGroupReport::fail("tensor typing", ml(m as u32));
    }

    let gens = object_generators(c);

    // slice functoriality (g∘f) ⊗ id_Z = (g ⊗ id_Z) ∘ (f ⊗ id_Z) for the
    // generating objects; transport below extends it to every Z
    let slice_bad = |g: u32| -> bool {
        let dg = c.dom(g) as usize;
        let ins = &idx.in_to[dg];
        let row_g = ct.offsets[g as usize];
        gens.iter().any(|&z| {
            let gz = m_fid[g as usize * no + z as usize];
            let row_gz = ct.offsets[gz as usize];
            ins.iter().enumerate().any(|(j, &f)| {
                let gf = ct.data[row_g + j];
                let fz = m_fid[f as usize * no + z as usize];
                m_fid[gf as usize * no + z as usize]
                    != ct.data[row_gz + idx.in_pos[fz as usize] as usize]
            })
        })
    };
    if (0..n_mor).into_par_iter().with_min_len(16).any(slice_bad) {
        let g = (0..n_mor).find(|&g| slice_bad(g)).unwrap();
        return CatGroupReport::fail("tensor slice functoriality", ml(g));
    }

    // transport (m ⊗ id_Z) ⊗ id_gen = m ⊗ id_{Z ⊗ gen}
    let zg: Vec<u32> = (0..no)
        .flat_map(|z| gens.iter().map(move |&g| c.tensor_obj(z as u32, g)))
        .collect();
    let k = gens.len();
    let transport_bad = |m: usize| {
        (0..no).any(|z| {
            let mz = m_fid[m * no + z] as usize;
            (0..k).any(|gi| {
                m_fid[mz * no + gens[gi] as usize] != m_fid[m * no + zg[z * k + gi] as usize]
            })
        })
    };
    if k > 0 && (0..nm).into_par_iter().any(transport_bad) {
        let m = (0..nm).find(|&m| transport_bad(m)).unwrap();
        return CatGroupReport::fail("tensor associativity transport", ml(m as u32));
    }

    // gluing: f ⊗ g agrees with both generator decompositions; together with
    // the slice checks this is interchange for the full tensor
    let glue_bad = |f: usize| -> bool {
        let xf = c.dom(f as u32) as usize;
        let cf = c.cod(f as u32) as usize;
        let row_fid = &m_fid[f * no..(f + 1) * no];
        (0..nm).any(|g| {
            let t = c.tensor_mor(f as u32, g as u32);
            let a = row_fid[c.cod(g as u32) as usize];
            let b = m_idf[xf * nm + g];
            if t != ct.at(a, idx.in_pos[b as usize]) {
                return true;
            }
            let a2 = m_idf[cf * nm + g];
            let b2 = row_fid[c.dom(g as u32) as usize];
            t != ct.at(a2, idx.in_pos[b2 as usize])
        })
    };
    if (0..nm).into_par_iter().with_min_len(4).any(glue_bad) {
        let f = (0..nm).find(|&f| glue_bad(f)).unwrap();
        let g = (0..nm)
            .find(|&g| {
                let t = c.tensor_mor(f as u32, g as u32);
                let a = m_fid[f * no + c.cod(g as u32) as usize];
                let b = m_idf[c.dom(f as u32) as usize * nm + g];
                t != ct.at(a, idx.in_pos[b as usize]) || {
                    let a2 = m_idf[c.cod(f as u32) as usize * nm + g];
                    let b2 = m_fid[f * no + c.dom(g as u32) as usize];
                    t != ct.at(a2, idx.in_pos[b2 as usize])
                }
            })
            .unwrap();
        return CatGroupReport::fail(
            "tensor interchange",
            format!("{} . {}", ml(f as u32), ml(g as u32)),
        );
    }

    // every object has a tensor inverse up to isomorphism
    let unit_comp = comps.comp_of[c.unit_obj() as usize];
    for x in 0..n_obj {
        let ok = (0..n_obj).any(|y| comps.comp_of[c.tensor_obj(x, y) as usize] == unit_comp);
        if !ok {
            return CatGroupReport::fail("tensor-invertible objects", ol(x));
        }
    }

    // Aut(I) -> Aut(X), f -> f ⊗ id_X, is a bijection for every X
    let unit = c.unit_obj();
    let aut_of = |x: u32| -> Vec<u32> {
        let mut v: Vec<u32> = idx.in_to[x as usize]
            .iter()
            .copied()
            .filter(|&m| c.dom(m) == x)
            .collect();
        v.sort_unstable();
        v
    };
    let aut_i = aut_of(unit);
    for x in 0..n_obj {
        let mut mapped: Vec<u32> = aut_i.iter().map(|&f| m_fid[f as usize * no + x as usize]).collect();
        mapped.sort_unstable();
        mapped.dedup();
        if mapped != aut_of(x) {
            return CatGroupReport::fail("pi1 identification with Aut(X)", ol(x));
        }
    }

    CatGroupReport::pass()
}

/// Naive reference validator: full interchange over pairs of composable
/// pairs, symmetry over all morphism pairs and tensor associativity over all
/// morphism triples. Cubic in the morphism count, so it is only usable (and
/// only used, as a cross-check) on small categories.
pub fn validate_catgroup_naive(cat: &Arc<CatGroup>) -> CatGroupReport {
    assert!(cat.n_mor() <= 300, "naive validation is cubic");
    let base = validate_catgroup(cat);
    if !base.ok() {
        return base;
    }
    let n_mor = cat.n_mor();
    let mut composable = Vec::new();
    for f in 0..n_mor {
        for g in 0..n_mor {
            if cat.dom(g) == cat.cod(f) {
                composable.push((f, g));
            }
        }
    }
    for &(f, g) in &composable {
        for &(f2, g2) in &composable {
            let lhs = cat.tensor_mor(cat.compose(g, f), cat.compose(g2, f2));
            let rhs = cat.compose(cat.tensor_mor(g, g2), cat.tensor_mor(f, f2));
            if lhs != rhs {
                return CatGroupReport::fail(
                    "naive interchange",
                    format!("{} . {}", cat.mor_label(f), cat.mor_label(f2)),
                );
            }
        }
    }
    for f in 0..n_mor {
        for g in 0..n_mor {
            if cat.tensor_mor(f, g) != cat.tensor_mor(g, f) {
                return CatGroupReport::fail(
                    "naive symmetry",
                    format!("{} . {}", cat.mor_label(f), cat.mor_label(g)),
                );
            }
            for h in 0..n_mor {
                if cat.tensor_mor(cat.tensor_mor(f, g), h)
                    != cat.tensor_mor(f, cat.tensor_mor(g, h))
                {
                    return CatGroupReport::fail(
                        "naive tensor associativity",
                        format!("{} . {}", cat.mor_label(f), cat.mor_label(g)),
                    );
                }
            }
        }
    }
    CatGroupReport::pass()
}
