//! Exact arithmetic in finite commutative rings with unit.
//!
//! Elements are canonical indices `0..n`; addition and multiplication are
//! total precomputed tables, so every ring axiom is validated exhaustively
//! at construction time and all downstream arithmetic is table lookups.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("product of rings needs at least one factor")]
    EmptyProduct,
    #[error("polynomial modulus must be monic of degree >= 1")]
    NonMonicModulus,
    #[error("ring axiom `{axiom}` fails at ({a}, {b}, {c}) in {ring}")]
    AxiomFailure {
        axiom: &'static str,
        a: String,
        b: String,
        c: String,
        ring: String,
    },
}

/// A finite commutative ring with unit, as total operation tables.
#[derive(Clone)]
pub struct FiniteRing {
    n: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
    labels: Vec<String>,
    units: Vec<u32>,
    inv: Vec<Option<u32>>,
    spec: String,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, n={})", self.spec, self.n)
    }
}

impl FiniteRing {
    /// Builds a ring from raw tables and validates every axiom exhaustively.
    pub fn from_tables(
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: u32,
        one: u32,
        labels: Vec<String>,
        spec: String,
    ) -> Result<Arc<Self>, RingError> {
        let n = labels.len() as u32;
        assert_eq!(add.len(), (n * n) as usize);
        assert_eq!(mul.len(), (n * n) as usize);
        let fail = |axiom: &'static str, a: u32, b: u32, c: u32| RingError::AxiomFailure {
            axiom,
            a: labels[a as usize].clone(),
            b: labels[b as usize].clone(),
            c: labels[c as usize].clone(),
            ring: spec.clone(),
        };
        let at = |t: &[u32], a: u32, b: u32| t[(a * n + b) as usize];
        // identities and commutativity first, so the triple scan can assume them
        for a in 0..n {
            if at(&add, zero, a) != a {
                return Err(fail("additive identity", zero, a, a));
            }
            if at(&mul, one, a) != a {
                return Err(fail("multiplicative identity", one, a, a));
            }
            for b in 0..n {
                if at(&add, a, b) != at(&add, b, a) {
                    return Err(fail("additive commutativity", a, b, b));
                }
                if at(&mul, a, b) != at(&mul, b, a) {
                    return Err(fail("multiplicative commutativity", a, b, b));
                }
            }
        }
        let mut neg = vec![u32::MAX; n as usize];
        for a in 0..n {
            match (0..n).find(|&b| at(&add, a, b) == zero) {
                Some(b) => neg[a as usize] = b,
                None => return Err(fail("additive inverse", a, a, a)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(&add, at(&add, a, b), c) != at(&add, a, at(&add, b, c)) {
                        return Err(fail("additive associativity", a, b, c));
                    }
                    if at(&mul, at(&mul, a, b), c) != at(&mul, a, at(&mul, b, c)) {
                        return Err(fail("multiplicative associativity", a, b, c));
                    }
                    if at(&mul, a, at(&add, b, c)) != at(&add, at(&mul, a, b), at(&mul, a, c)) {
                        return Err(fail("distributivity", a, b, c));
                    }
                }
            }
        }
        let mut inv = vec![None; n as usize];
        let mut units = Vec::new();
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| at(&mul, a, b) == one) {
                inv[a as usize] = Some(b);
                units.push(a);
            }
        }
        Ok(Arc::new(FiniteRing {
            n,
            add,
            mul,
            neg,
            zero,
            one,
            labels,
            units,
            inv,
            spec,
        }))
    }

    pub fn size(&self) -> u32 {
        self.n
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    /// The zero ring (one element, 0 = 1) is legal and shows up as R/pR for p a unit.
    pub fn is_zero_ring(&self) -> bool {
        self.n == 1
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn label(&self, a: u32) -> &str {
        &self.labels[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.n
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.n + b) as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.n + b) as usize]
    }

    #[inline(always)]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn units(&self) -> &[u32] {
        &self.units
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.inv[a as usize].is_some()
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        self.inv[a as usize]
    }

    pub fn two(&self) -> u32 {
        self.add(self.one, self.one)
    }

    /// Canonical image of an integer under Z -> R.
    pub fn from_int(&self, k: i64) -> u32 {
        let order = self.char() as i64;
        let k = k.rem_euclid(order) as u32;
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add(acc, self.one);
        }
        acc
    }

    /// Characteristic: the additive order of 1.
    pub fn char(&self) -> u32 {
        let mut acc = self.one;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }

    pub fn element_by_label(&self, s: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == s).map(|i| i as u32)
    }

    pub fn pow(&self, a: u32, k: u32) -> u32 {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn is_nilpotent(&self, a: u32) -> bool {
        let mut acc = a;
        for _ in 0..self.n {
            if acc == self.zero {
                return true;
            }
            acc = self.mul(acc, a);
        }
        false
    }

    /// A finite commutative ring is local iff its non-units form an ideal,
    /// and closure under addition is the only part that can fail.
    pub fn is_local(&self) -> bool {
        let nonunits: Vec<u32> = (0..self.n).filter(|&a| !self.is_unit(a)).collect();
        nonunits
            .iter()
            .all(|&a| nonunits.iter().all(|&b| !self.is_unit(self.add(a, b))))
    }
}

/// Z/nZ with canonical representatives 0..n-1; n = 1 is the zero ring.
pub fn make_zmod(n: u32) -> Result<Arc<FiniteRing>, RingError> {
    if n == 0 {
        return Err(RingError::ZeroModulus);
    }
    let mut add = Vec::with_capacity((n * n) as usize);
    let mut mul = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            add.push((a + b) % n);
            mul.push((a * b) % n);
        }
    }
    let labels = (0..n).map(|a| a.to_string()).collect();
    FiniteRing::from_tables(add, mul, 0, 1 % n, labels, format!("Z/{n}"))
}

/// Componentwise product of a nonempty list of rings.
pub fn make_product(factors: &[Arc<FiniteRing>]) -> Result<Arc<FiniteRing>, RingError> {
    if factors.is_empty() {
        return Err(RingError::EmptyProduct);
    }
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let n: u32 = factors.iter().map(|r| r.size()).product();
    let decode = |mut idx: u32| -> Vec<u32> {
        let mut comps = Vec::with_capacity(factors.len());
        for r in factors {
            comps.push(idx % r.size());
            idx /= r.size();
        }
        comps
    };
    let encode = |comps: &[u32]| -> u32 {
        let mut idx = 0;
        for (r, &c) in factors.iter().zip(comps).rev() {
            idx = idx * r.size() + c;
        }
        idx
    };
    let mut add = Vec::with_capacity((n * n) as usize);
    let mut mul = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        let ac = decode(a);
        for b in 0..n {
            let bc = decode(b);
            let sum: Vec<u32> = factors
                .iter()
                .enumerate()
                .map(|(i, r)| r.add(ac[i], bc[i]))
                .collect();
            let prod: Vec<u32> = factors
                .iter()
                .enumerate()
                .map(|(i, r)| r.mul(ac[i], bc[i]))
                .collect();
            add.push(encode(&sum));
            mul.push(encode(&prod));
        }
    }
    let labels = (0..n)
        .map(|a| {
            let comps = decode(a);
            let parts: Vec<&str> = factors
                .iter()
                .enumerate()
                .map(|(i, r)| r.label(comps[i]))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let zero = encode(&factors.iter().map(|r| r.zero()).collect::<Vec<_>>());
    let one = encode(&factors.iter().map(|r| r.one()).collect::<Vec<_>>());
    let spec = factors
        .iter()
        .map(|r| r.spec().to_string())
        .collect::<Vec<_>>()
        .join(" x ");
    FiniteRing::from_tables(add, mul, zero, one, labels, spec)
}

/// R[x]/(f) for monic f of degree d >= 1; elements are coefficient vectors
/// of length d, so the result is a free R-module of rank d.
pub fn make_poly_quotient(
    base: &Arc<FiniteRing>,
    f: &[u32],
    poly_text: &str,
) -> Result<Arc<FiniteRing>, RingError> {
    let d = f.len().saturating_sub(1);
    if d < 1 || f[d] != base.one() {
        return Err(RingError::NonMonicModulus);
    }
    let nb = base.size();
    let n = nb.pow(d as u32);
    let decode = |mut idx: u32| -> Vec<u32> {
        let mut c = Vec::with_capacity(d);
        for _ in 0..d {
            c.push(idx % nb);
            idx /= nb;
        }
        c
    };
    let encode = |c: &[u32]| -> u32 {
        let mut idx = 0;
        for &ci in c.iter().rev() {
            idx = idx * nb + ci;
        }
        idx
    };
    // x^k reduced mod f, for k = 0 .. 2d-2
    let mut xpow: Vec<Vec<u32>> = Vec::with_capacity(2 * d - 1);
    for k in 0..d {
        let mut v = vec![base.zero(); d];
        v[k] = base.one();
        xpow.push(v);
    }
    for _ in d..(2 * d - 1) {
        let prev = xpow.last().unwrap().clone();
        // multiply by x: shift up, then reduce the overflow coefficient through
        // x^d = -(f_0 + ... + f_{d-1} x^{d-1})
        let top = prev[d - 1];
        let mut v = vec![base.zero(); d];
        for i in 1..d {
            v[i] = prev[i - 1];
        }
        for i in 0..d {
            v[i] = base.sub(v[i], base.mul(top, f[i]));
        }
        xpow.push(v);
    }
    let mut add = Vec::with_capacity((n * n) as usize);
    let mut mul = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        let ac = decode(a);
        for b in 0..n {
            let bc = decode(b);
            let sum: Vec<u32> = (0..d).map(|i| base.add(ac[i], bc[i])).collect();
            add.push(encode(&sum));
            let mut prod = vec![base.zero(); d];
            for (i, &ai) in ac.iter().enumerate() {
                for (j, &bj) in bc.iter().enumerate() {
                    let coef = base.mul(ai, bj);
                    for (k, &xk) in xpow[i + j].iter().enumerate() {
                        prod[k] = base.add(prod[k], base.mul(coef, xk));
                    }
                }
            }
            mul.push(encode(&prod));
        }
    }
    let labels = (0..n).map(|a| poly_label(base, &decode(a))).collect();
    let mut one = vec![base.zero(); d];
    one[0] = base.one();
    let spec = format!("{}[x]/({})", base.spec(), poly_text);
    FiniteRing::from_tables(add, mul, 0, encode(&one), labels, spec)
}

fn poly_label(base: &FiniteRing, coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == base.zero() {
            continue;
        }
        let cl = base.label(c);
        let term = match k {
            0 => cl.to_string(),
            1 if c == base.one() => "x".to_string(),
            1 => format!("{cl}x"),
            _ if c == base.one() => format!("x^{k}"),
            _ => format!("{cl}x^{k}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        base.label(base.zero()).to_string()
    } else {
        terms.join("+")
    }
}

/// A ring homomorphism given by a total element map, validated exhaustively.
#[derive(Clone)]
pub struct RingHom {
    pub source: Arc<FiniteRing>,
    pub target: Arc<FiniteRing>,
    pub map: Vec<u32>,
}

impl RingHom {
    pub fn new(source: Arc<FiniteRing>, target: Arc<FiniteRing>, map: Vec<u32>) -> Self {
        assert_eq!(map.len(), source.size() as usize);
        assert_eq!(map[source.zero() as usize], target.zero(), "hom must fix 0");
        assert_eq!(map[source.one() as usize], target.one(), "hom must fix 1");
        for a in source.elements() {
            for b in source.elements() {
                assert_eq!(
                    map[source.add(a, b) as usize],
                    target.add(map[a as usize], map[b as usize]),
                    "hom must preserve +"
                );
                assert_eq!(
                    map[source.mul(a, b) as usize],
                    target.mul(map[a as usize], map[b as usize]),
                    "hom must preserve *"
                );
            }
        }
        RingHom {
            source,
            target,
            map,
        }
    }

    #[inline]
    pub fn apply(&self, a: u32) -> u32 {
        self.map[a as usize]
    }

    pub fn then(&self, next: &RingHom) -> RingHom {
        assert!(Arc::ptr_eq(&self.target, &next.source));
        RingHom {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&a| next.apply(a)).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.target.size() as usize];
        for &v in &self.map {
            seen[v as usize] = true;
        }
        self.source.size() == self.target.size() && seen.iter().all(|&s| s)
    }
}

/// R/(p) together with the projection and a least-index section of it.
pub struct PrincipalQuotient {
    pub base: Arc<FiniteRing>,
    pub generator: u32,
    pub ideal: Vec<u32>,
    pub quotient: Arc<FiniteRing>,
    pub project: RingHom,
    /// Section of `project` as an element map (not a ring map).
    pub lift: Vec<u32>,
}

impl PrincipalQuotient {
    /// All lifts of a quotient element, i.e. its full coset in the base ring.
    pub fn lifts_of(&self, q: u32) -> Vec<u32> {
        self.base
            .elements()
            .filter(|&a| self.project.apply(a) == q)
            .collect()
    }
}

/// Quotient by the principal ideal (p): cosets keep their least-index
/// representative, which makes both the quotient tables and the section
/// deterministic.
pub fn quotient_by_principal(base: &Arc<FiniteRing>, p: u32) -> PrincipalQuotient {
    let mut ideal: Vec<u32> = base.elements().map(|r| base.mul(r, p)).collect();
    ideal.sort_unstable();
    ideal.dedup();
    let n = base.size();
    let mut rep_of = vec![u32::MAX; n as usize];
    let mut reps = Vec::new();
    for a in base.elements() {
        if rep_of[a as usize] != u32::MAX {
            continue;
        }
        let coset_rep = ideal
            .iter()
            .map(|&i| base.add(a, i))
            .min()
            .expect("ideal contains 0");
        if rep_of[coset_rep as usize] == u32::MAX {
            reps.push(coset_rep);
        }
        for &i in &ideal {
            rep_of[base.add(a, i) as usize] = coset_rep;
        }
    }
    reps.sort_unstable();
    let idx_of_rep = |r: u32| reps.binary_search(&r).expect("rep present") as u32;
    let m = reps.len() as u32;
    let mut add = Vec::with_capacity((m * m) as usize);
    let mut mul = Vec::with_capacity((m * m) as usize);
    for &a in &reps {
        for &b in &reps {
            add.push(idx_of_rep(rep_of[base.add(a, b) as usize]));
            mul.push(idx_of_rep(rep_of[base.mul(a, b) as usize]));
        }
    }
    let labels = reps.iter().map(|&r| base.label(r).to_string()).collect();
    let spec = format!("{}/({})", base.spec(), base.label(p));
    let quotient = FiniteRing::from_tables(
        add,
        mul,
        idx_of_rep(rep_of[base.zero() as usize]),
        idx_of_rep(rep_of[base.one() as usize]),
        labels,
        spec,
    )
    .expect("quotient of a valid ring is a valid ring");
    let project_map: Vec<u32> = base
        .elements()
        .map(|a| idx_of_rep(rep_of[a as usize]))
        .collect();
    let project = RingHom::new(base.clone(), quotient.clone(), project_map);
    PrincipalQuotient {
        base: base.clone(),
        generator: p,
        ideal,
        quotient,
        project,
        lift: reps,
    }
}

/// Units, zero divisors and the radical (= nilpotents, which in a finite
/// commutative ring is the Jacobson radical).
pub struct UnitAnalysis {
    pub units: Vec<u32>,
    pub zero_divisors: Vec<u32>,
    pub radical: Vec<u32>,
}

pub fn unit_analysis(ring: &FiniteRing) -> UnitAnalysis {
    let units = ring.units().to_vec();
    let zero_divisors: Vec<u32> = ring
        .elements()
        .filter(|&a| {
            a != ring.zero()
                && ring
                    .elements()
                    .any(|b| b != ring.zero() && ring.mul(a, b) == ring.zero())
        })
        .collect();
    let radical: Vec<u32> = ring.elements().filter(|&a| ring.is_nilpotent(a)).collect();
    // in a finite ring every nonzero element is a unit or a zero divisor
    for a in ring.elements() {
        if a == ring.zero() {
            continue;
        }
        let u = ring.is_unit(a);
        let z = zero_divisors.contains(&a);
        assert!(
            u ^ z || ring.is_zero_ring(),
            "element {} must be exactly one of unit/zero-divisor",
            ring.label(a)
        );
    }
    for &r in &radical {
        assert!(
            r == ring.zero() || zero_divisors.contains(&r),
            "radical must consist of 0 and zero divisors"
        );
    }
    UnitAnalysis {
        units,
        zero_divisors,
        radical,
    }
}

/// All ordered pairs (p, q) with pq + 2 = 0, in canonical element order.
pub fn admissible_pairs(ring: &FiniteRing) -> Vec<(u32, u32)> {
    let two = ring.two();
    let mut pairs = Vec::new();
    for p in ring.elements() {
        for q in ring.elements() {
            if ring.add(ring.mul(p, q), two) == ring.zero() {
                pairs.push((p, q));
            }
        }
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u32) -> Arc<FiniteRing> {
        make_zmod(n).unwrap()
    }

    #[test]
    fn zmod_units() {
        assert_eq!(zmod(4).units(), &[1, 3]);
        assert_eq!(zmod(6).units(), &[1, 5]);
    }

    #[test]
    fn zmod_one_is_zero_ring() {
        let r = zmod(1);
        assert!(r.is_zero_ring());
        assert_eq!(r.zero(), r.one());
        assert_eq!(r.units(), &[0]);
    }

    #[test]
    fn zmod_zero_rejected() {
        assert!(matches!(make_zmod(0), Err(RingError::ZeroModulus)));
    }

    #[test]
    fn product_z4_z3() {
        let r = make_product(&[zmod(4), zmod(3)]).unwrap();
        assert_eq!(r.size(), 12);
        assert_eq!(r.units().len(), 4);
    }

    #[test]
    fn product_with_zero_ring_is_isomorphic() {
        let r = zmod(5);
        let p = make_product(&[r.clone(), zmod(1)]).unwrap();
        assert_eq!(p.size(), 5);
        // first projection is a bijective ring hom
        let map: Vec<u32> = p.elements().map(|a| a % 5).collect();
        let hom = RingHom::new(p.clone(), r, map);
        assert!(hom.is_bijective());
    }

    #[test]
    fn product_z2_z2_idempotents() {
        let r = make_product(&[zmod(2), zmod(2)]).unwrap();
        let idem: Vec<u32> = r.elements().filter(|&a| r.mul(a, a) == a).collect();
        assert_eq!(idem.len(), 4);
    }

    #[test]
    fn poly_f4_is_a_field() {
        let z2 = zmod(2);
        let f4 = make_poly_quotient(&z2, &[1, 1, 1], "x^2+x+1").unwrap();
        assert_eq!(f4.size(), 4);
        assert_eq!(f4.units().len(), 3);
    }

    #[test]
    fn poly_degree_one_is_base() {
        let z6 = zmod(6);
        let q = make_poly_quotient(&z6, &[0, 1], "x").unwrap();
        assert_eq!(q.size(), 6);
        let map: Vec<u32> = q.elements().collect();
        assert!(RingHom::new(q, z6, map).is_bijective());
    }

    #[test]
    fn poly_z4_x2_units() {
        let z4 = zmod(4);
        let r = make_poly_quotient(&z4, &[0, 0, 1], "x^2").unwrap();
        assert_eq!(r.size(), 16);
        // units are a + bx with a in {1,3}
        let expect: Vec<u32> = r
            .elements()
            .filter(|&e| {
                let a = e % 4;
                a == 1 || a == 3
            })
            .collect();
        assert_eq!(r.units(), &expect[..]);
    }

    #[test]
    fn poly_nonmonic_rejected() {
        let z4 = zmod(4);
        assert!(matches!(
            make_poly_quotient(&z4, &[1, 2], "2x+1"),
            Err(RingError::NonMonicModulus)
        ));
    }

    #[test]
    fn quotient_z4_by_two() {
        let q = quotient_by_principal(&zmod(4), 2);
        assert_eq!(q.quotient.size(), 2);
        assert_eq!(q.ideal, vec![0, 2]);
        assert_eq!(q.lift, vec![0, 1]);
        // project . lift = id
        for e in q.quotient.elements() {
            assert_eq!(q.project.apply(q.lift[e as usize]), e);
        }
    }

    #[test]
    fn quotient_by_zero_is_isomorphism() {
        let q = quotient_by_principal(&zmod(4), 0);
        assert_eq!(q.quotient.size(), 4);
        assert!(q.project.is_bijective());
    }

    #[test]
    fn quotient_z8_by_four() {
        let q = quotient_by_principal(&zmod(8), 4);
        assert_eq!(q.quotient.size(), 4);
        assert_eq!(q.quotient.units().len(), 2);
    }

    #[test]
    fn quotient_kernel_is_ideal_and_sizes_multiply() {
        for n in [4u32, 6, 8, 12] {
            let r = zmod(n);
            for p in r.elements() {
                let q = quotient_by_principal(&r, p);
                let kernel: Vec<u32> = r
                    .elements()
                    .filter(|&a| q.project.apply(a) == q.quotient.zero())
                    .collect();
                assert_eq!(kernel, q.ideal);
                assert_eq!(q.quotient.size() * q.ideal.len() as u32, r.size());
            }
        }
    }

    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn quotient_of_zmod_matches_gcd() {
        for n in [2u32, 4, 6, 8, 9, 12] {
            let r = zmod(n);
            for p in r.elements() {
                let q = quotient_by_principal(&r, p);
                let g = gcd(p, n);
                let m = if g == 0 { n } else { g };
                let expect = zmod(m);
                assert_eq!(q.quotient.size(), expect.size());
                // both cyclic, generated by 1: match via k*1
                let map: Vec<u32> = q
                    .quotient
                    .elements()
                    .map(|e| {
                        let mut k = 0;
                        let mut acc = q.quotient.zero();
                        while acc != e {
                            acc = q.quotient.add(acc, q.quotient.one());
                            k += 1;
                        }
                        expect.from_int(k)
                    })
                    .collect();
                assert!(RingHom::new(q.quotient.clone(), expect, map).is_bijective());
            }
        }
    }

    #[test]
    fn unit_analysis_z8() {
        let ua = unit_analysis(&zmod(8));
        assert_eq!(ua.radical, vec![0, 2, 4, 6]);
    }

    #[test]
    fn unit_analysis_field() {
        let z2 = zmod(2);
        let f4 = make_poly_quotient(&z2, &[1, 1, 1], "x^2+x+1").unwrap();
        let ua = unit_analysis(&f4);
        assert_eq!(ua.radical, vec![0]);
        assert!(ua.zero_divisors.is_empty());
    }

    #[test]
    fn unit_analysis_z6() {
        let ua = unit_analysis(&zmod(6));
        assert_eq!(ua.radical, vec![0]);
        assert_eq!(ua.zero_divisors, vec![2, 3, 4]);
    }

    #[test]
    fn admissible_pairs_examples() {
        assert_eq!(
            admissible_pairs(&zmod(4)),
            vec![(1, 2), (2, 1), (2, 3), (3, 2)]
        );
        // in Z/2 the condition pq + 2 = 0 reads pq = 0, which rules out (1,1)
        assert_eq!(
            admissible_pairs(&zmod(2)),
            vec![(0, 0), (0, 1), (1, 0)]
        );
        let z5 = admissible_pairs(&zmod(5));
        assert_eq!(z5.len(), 4);
        for p in [(1, 3), (3, 1), (2, 4), (4, 2)] {
            assert!(z5.contains(&p));
        }
    }

    #[test]
    fn admissible_pairs_symmetric() {
        for n in 1..=12 {
            let pairs = admissible_pairs(&zmod(n));
            for &(p, q) in &pairs {
                assert!(pairs.contains(&(q, p)));
            }
        }
    }

    #[test]
    fn locality() {
        assert!(zmod(8).is_local());
        assert!(zmod(9).is_local());
        assert!(!zmod(6).is_local());
        assert!(!make_product(&[zmod(2), zmod(4)]).unwrap().is_local());
    }

    #[test]
    fn characteristic() {
        assert_eq!(zmod(12).char(), 12);
        assert_eq!(zmod(1).char(), 1);
        let r = make_product(&[zmod(2), zmod(4)]).unwrap();
        assert_eq!(r.char(), 4);
        assert_eq!(r.from_int(-2), r.two());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn zmod_construction_always_valid(n in 1u32..=24) {
                let r = zmod(n);
                prop_assert_eq!(r.size(), n);
            }

            #[test]
            fn quotient_sizes(n in 1u32..=16, p in 0u32..16) {
                let r = zmod(n);
                let p = p % n;
                let q = quotient_by_principal(&r, p);
                prop_assert_eq!(q.quotient.size() * q.ideal.len() as u32, n);
            }

            #[test]
            fn pairs_symmetric(n in 1u32..=16) {
                let pairs = admissible_pairs(&zmod(n));
                for &(p, q) in &pairs {
                    prop_assert!(pairs.contains(&(q, p)));
                }
            }
        }
    }
}
