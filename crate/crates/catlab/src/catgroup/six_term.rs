//! The six-term exact sequence of a monoidal functor,
//! 0 -> pi1(2-ker F) -> pi1(G) -> pi1(H) -> pi0(2-ker F) -> pi0(G) -> pi0(H),
//! with the forgetful maps, the induced maps and the connecting map
//! h -> class of (I, iota . h). Exactness at all four interior spots plus
//! injectivity on the left is a theorem, so a failed check is a bug witness.

use super::{
    induced_pi0, induced_pi1, pi0, pi1, two_kernel, CatKind, FunctorError, MonFunctor,
};
use crate::abgroup::{check_exact_sequence, ExactSequenceReport, FinAbGroup, GroupHom};
use crate::catgroup::CatGroup;
use std::sync::Arc;

pub struct SixTerm {
    pub groups: [Arc<FinAbGroup>; 6],
    pub names: [&'static str; 6],
    pub maps: [GroupHom; 5],
    pub report: ExactSequenceReport,
    pub kernel_cat: Arc<CatGroup>,
}

impl SixTerm {
    pub fn ok(&self) -> bool {
        self.report.ok()
    }
}

pub fn six_term(f: &Arc<MonFunctor>) -> Result<SixTerm, FunctorError> {
    let (kcat, proj) = two_kernel(f)?;
    let s = &f.source;
    let t = &f.target;
    let pi1_k = pi1(&kcat)?;
    let pi1_s = pi1(s)?;
    let pi1_t = pi1(t)?;
    let pi0_k = pi0(&kcat)?;
    let pi0_s = pi0(s)?;
    let pi0_t = pi0(t)?;
    let m1 = induced_pi1(&proj, &pi1_k, &pi1_s)?;
    let m2 = induced_pi1(f, &pi1_s, &pi1_t)?;
    let kk = match kcat.kind() {
        CatKind::TwoKer(k) => k,
        _ => unreachable!(),
    };
    let kcomps = kcat.components().clone();
    let m3 = crate::abgroup::hom_make(pi1_t.group.clone(), pi0_k.clone(), |i| {
        let h = pi1_t.mors[i as usize];
        let x = t.compose(f.unit_wit, h);
        let obj = kk
            .lookup_obj(s.unit_obj(), x)
            .expect("twisted unit trivialization is a 2-kernel object");
        kcomps.comp_of[obj as usize]
    })?;
    let m4 = induced_pi0(&proj, &pi0_k, &pi0_s)?;
    let m5 = induced_pi0(f, &pi0_s, &pi0_t)?;
    let maps = [m1, m2, m3, m4, m5];
    let report = check_exact_sequence(&maps, &[true, true, true, true], true)?;
    Ok(SixTerm {
        groups: [pi1_k.group, pi1_s.group, pi1_t.group, pi0_k, pi0_s, pi0_t],
        names: [
            "pi1(2-ker)",
            "pi1(source)",
            "pi1(target)",
            "pi0(2-ker)",
            "pi0(source)",
            "pi0(target)",
        ],
        maps,
        report,
        kernel_cat: kcat,
    })
}
