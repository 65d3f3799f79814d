//! The cat-group associated to a homomorphism of abelian groups: objects are
//! the elements of the target, and a morphism h1 -> h2 is a source element g
//! with h2 + a(g) = h1. Its pi0 is cok(a) and its pi1 is ker(a).

use super::{CatGroup, CatKind, TableCat};
use crate::abgroup::GroupHom;
use std::sync::Arc;

pub fn catgroup_from_hom(alpha: &GroupHom) -> Arc<CatGroup> {
    let g = &alpha.source;
    let h = &alpha.target;
    let ng = g.size();
    // morphism id = cod * |G| + g, with dom determined as cod + a(g)
    let mors: Vec<(u32, u32, String)> = (0..h.size())
        .flat_map(|cod| (0..ng).map(move |gg| (cod, gg)))
        .map(|(cod, gg)| (h.op(cod, alpha.apply(gg)), cod, g.label(gg).to_string()))
        .collect();
    let obj_labels: Vec<String> = (0..h.size()).map(|x| h.label(x).to_string()).collect();
    let table = TableCat::build(
        h.size(),
        h.id(),
        obj_labels,
        mors,
        |x| x * ng + g.id(),
        |gm, fm| (gm / ng) * ng + g.op(fm % ng, gm % ng),
        |x, y| h.op(x, y),
        |fm, gm| h.op(fm / ng, gm / ng) * ng + g.op(fm % ng, gm % ng),
    );
    CatGroup::new(CatKind::Table(table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::{group_from_closure, hom_make, invariant_factors, is_isomorphic};
    use crate::catgroup::{pi0, pi1, validate_catgroup};
    use crate::ring::make_zmod;

    #[test]
    fn sq_on_units_of_z5() {
        let r = make_zmod(5).unwrap();
        let units = group_from_closure(
            r.units(),
            |a, b| r.mul(a, b),
            r.one(),
            |a| r.label(a).to_string(),
        )
        .unwrap();
        let sq = hom_make(units.clone(), units.clone(), |i| {
            let u = r.units()[i as usize];
            let v = r.mul(u, u);
            r.units().iter().position(|&x| x == v).unwrap() as u32
        })
        .unwrap();
        let cat = catgroup_from_hom(&sq);
        assert!(validate_catgroup(&cat).ok());
        let p0 = pi0(&cat).unwrap();
        let p1 = pi1(&cat).unwrap();
        assert_eq!(invariant_factors(&p0), vec![2]);
        assert_eq!(invariant_factors(&p1.group), vec![2]);
        // pi0 = cok, pi1 = ker, naturally in the hom
        assert!(is_isomorphic(&p0, &sq.cokernel().group));
        assert!(is_isomorphic(&p1.group, &sq.kernel().group));
    }

    #[test]
    fn identity_hom_gives_contractible() {
        let r = make_zmod(7).unwrap();
        let units = group_from_closure(
            r.units(),
            |a, b| r.mul(a, b),
            r.one(),
            |a| r.label(a).to_string(),
        )
        .unwrap();
        let id = hom_make(units.clone(), units, |i| i).unwrap();
        let cat = catgroup_from_hom(&id);
        assert!(validate_catgroup(&cat).ok());
        assert!(pi0(&cat).unwrap().is_trivial());
        assert!(pi1(&cat).unwrap().group.is_trivial());
    }
}
