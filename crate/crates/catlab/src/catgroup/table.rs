//! Dense table-backed categories, used for everything small enough to store
//! its full tensor-on-morphisms table (at most a few thousand morphisms).
//! Raw tables can also be constructed unvalidated, which is how the tests
//! inject faults to exercise the validator.

use super::CatOps;

pub struct TableCat {
    n_obj: u32,
    n_mor: u32,
    unit: u32,
    dom: Vec<u32>,
    cod: Vec<u32>,
    id_of: Vec<u32>,
    /// comp[g * n_mor + f] = g after f, u32::MAX when not composable
    comp: Vec<u32>,
    tobj: Vec<u32>,
    tmor: Vec<u32>,
    obj_labels: Vec<String>,
    mor_labels: Vec<String>,
}

impl TableCat {
    /// Materializes a category from closures. `mors` lists (dom, cod, label)
    /// per morphism id; composition is only evaluated on composable pairs.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        n_obj: u32,
        unit: u32,
        obj_labels: Vec<String>,
        mors: Vec<(u32, u32, String)>,
        id_of: impl Fn(u32) -> u32,
        compose: impl Fn(u32, u32) -> u32,
        tensor_obj: impl Fn(u32, u32) -> u32,
        tensor_mor: impl Fn(u32, u32) -> u32,
    ) -> TableCat {
        let n_mor = mors.len() as u32;
        assert!(
            n_mor <= 4096,
            "table-backed cat-group would need {n_mor}^2 tensor entries; use a formula-backed representation"
        );
        let dom: Vec<u32> = mors.iter().map(|m| m.0).collect();
        let cod: Vec<u32> = mors.iter().map(|m| m.1).collect();
        let mor_labels: Vec<String> = mors.into_iter().map(|m| m.2).collect();
        let id_of: Vec<u32> = (0..n_obj).map(id_of).collect();
        let mut comp = vec![u32::MAX; (n_mor * n_mor) as usize];
        for g in 0..n_mor {
            for f in 0..n_mor {
                if dom[g as usize] == cod[f as usize] {
                    comp[(g * n_mor + f) as usize] = compose(g, f);
                }
            }
        }
        let tobj: Vec<u32> = (0..n_obj)
            .flat_map(|x| (0..n_obj).map(move |y| (x, y)))
            .map(|(x, y)| tensor_obj(x, y))
            .collect();
        let tmor: Vec<u32> = (0..n_mor)
            .flat_map(|f| (0..n_mor).map(move |g| (f, g)))
            .map(|(f, g)| tensor_mor(f, g))
            .collect();
        TableCat {
            n_obj,
            n_mor,
            unit,
            dom,
            cod,
            id_of,
            comp,
            tobj,
            tmor,
            obj_labels,
            mor_labels,
        }
    }

    /// For fault-injection tests: overwrite one tensor-on-morphisms entry.
    pub fn poke_tensor_mor(&mut self, f: u32, g: u32, value: u32) {
        self.tmor[(f * self.n_mor + g) as usize] = value;
    }

    /// For fault-injection tests: overwrite one composition entry.
    pub fn poke_compose(&mut self, g: u32, f: u32, value: u32) {
        self.comp[(g * self.n_mor + f) as usize] = value;
    }
}

impl CatOps for TableCat {
    fn n_obj(&self) -> u32 {
        self.n_obj
    }

    fn n_mor(&self) -> u32 {
        self.n_mor
    }

    fn unit_obj(&self) -> u32 {
        self.unit
    }

    #[inline(always)]
    fn dom(&self, m: u32) -> u32 {
        self.dom[m as usize]
    }

    #[inline(always)]
    fn cod(&self, m: u32) -> u32 {
        self.cod[m as usize]
    }

    #[inline(always)]
    fn id_mor(&self, x: u32) -> u32 {
        self.id_of[x as usize]
    }

    #[inline(always)]
    fn compose(&self, g: u32, f: u32) -> u32 {
        self.comp[(g * self.n_mor + f) as usize]
    }

    #[inline(always)]
    fn tensor_obj(&self, x: u32, y: u32) -> u32 {
        self.tobj[(x * self.n_obj + y) as usize]
    }

    #[inline(always)]
    fn tensor_mor(&self, f: u32, g: u32) -> u32 {
        self.tmor[(f * self.n_mor + g) as usize]
    }

    fn obj_label(&self, x: u32) -> String {
        self.obj_labels[x as usize].clone()
    }

    fn mor_label(&self, m: u32) -> String {
        format!(
            "{}:{}->{}",
            self.mor_labels[m as usize],
            self.obj_labels[self.dom[m as usize] as usize],
            self.obj_labels[self.cod[m as usize] as usize]
        )
    }
}
