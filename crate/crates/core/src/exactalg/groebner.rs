//! Buchberger's algorithm over a dense exponent representation.
//!
//! Polynomials are converted into exponent vectors indexed by the ring's
//! variables (sorted from largest to smallest under the monomial order),
//! which makes order comparisons and divisibility tests cheap. Normal forms
//! of polynomials mentioning variables outside the basis are computed in
//! the extended ring: a Gröbner basis stays a Gröbner basis after adjoining
//! variables, for any order extending the original one.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::Zero;

use super::order::compare_dense;
use super::{ExactAlgError, Monomial, MonomialOrder, OrderScheme, Polynomial, Rational, Var};

pub const DEFAULT_BASIS_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Key {
    scheme: OrderScheme,
    exps: Vec<u32>,
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_dense(self.scheme, &self.exps, &other.exps)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Key {
    fn divides(&self, other: &Key) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Key) -> Key {
        Key {
            scheme: self.scheme,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    fn coprime(&self, other: &Key) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `self / other`; caller guarantees divisibility.
    fn sub(&self, other: &Key) -> Key {
        Key {
            scheme: self.scheme,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn add(&self, other: &Key) -> Key {
        Key {
            scheme: self.scheme,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Terms keyed by monomial; the last entry is the leading term.
type DPoly = BTreeMap<Key, Rational>;

fn add_into(p: &mut DPoly, k: Key, c: Rational) {
    match p.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn leading(p: &DPoly) -> (&Key, &Rational) {
    p.last_key_value().expect("nonzero polynomial")
}

fn make_monic(p: DPoly) -> DPoly {
    let lc = leading(&p).1.recip();
    p.into_iter().map(|(k, c)| (k, c * &lc)).collect()
}

#[derive(Clone, Debug)]
struct Ring {
    scheme: OrderScheme,
    vars: Vec<Var>,
}

impl Ring {
    fn new(order: &MonomialOrder, vars: impl IntoIterator<Item = Var>) -> Ring {
        let mut vars: Vec<Var> = vars.into_iter().collect();
        order.sort_vars(&mut vars);
        Ring {
            scheme: order.scheme,
            vars,
        }
    }

    fn contains_all(&self, vars: &BTreeSet<Var>) -> bool {
        vars.iter().all(|v| self.vars.contains(v))
    }

    fn key(&self, m: &Monomial) -> Key {
        Key {
            scheme: self.scheme,
            exps: self.vars.iter().map(|&v| m.exponent(v)).collect(),
        }
    }

    fn to_dense(&self, p: &Polynomial) -> DPoly {
        p.terms().map(|(m, c)| (self.key(m), c.clone())).collect()
    }

    fn to_sparse(&self, p: &DPoly) -> Polynomial {
        Polynomial::from_terms(p.iter().map(|(k, c)| {
            let m = Monomial::from_pairs(self.vars.iter().copied().zip(k.exps.iter().copied()));
            (m, c.clone())
        }))
    }

    /// Full reduction of `p` by `basis`, always dividing by the first basis
    /// element whose leading monomial divides the current leading monomial.
    fn reduce(&self, mut p: DPoly, basis: &[DPoly], mut cofactors: Option<&mut [DPoly]>) -> DPoly {
        let mut rem = DPoly::new();
        while let Some((lm, lc)) = p.pop_last() {
            let hit = basis.iter().position(|g| leading(g).0.divides(&lm));
            match hit {
                Some(k) => {
                    let g = &basis[k];
                    let (glm, glc) = leading(g);
                    let shift = lm.sub(glm);
                    let c = &lc / glc;
                    for (m, a) in g.iter().rev().skip(1) {
                        add_into(&mut p, m.add(&shift), -(&c * a));
                    }
                    if let Some(cof) = cofactors.as_deref_mut() {
                        add_into(&mut cof[k], shift, c);
                    }
                }
                None => {
                    rem.insert(lm, lc);
                }
            }
        }
        rem
    }

    fn s_polynomial(&self, f: &DPoly, g: &DPoly) -> DPoly {
        let (flm, flc) = leading(f);
        let (glm, glc) = leading(g);
        let l = flm.lcm(glm);
        let (sf, sg) = (l.sub(flm), l.sub(glm));
        let mut out = DPoly::new();
        for (m, a) in f {
            add_into(&mut out, m.add(&sf), a / flc);
        }
        for (m, a) in g {
            add_into(&mut out, m.add(&sg), -(a / glc));
        }
        out
    }

    fn buchberger(&self, gens: Vec<DPoly>, cap: usize) -> Result<Vec<DPoly>, ExactAlgError> {
        let mut basis: Vec<DPoly> = Vec::new();
        for g in gens {
            let r = self.reduce(g, &basis, None);
            if !r.is_empty() {
                basis.push(make_monic(r));
            }
        }
        let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
        for j in 0..basis.len() {
            for i in 0..j {
                pending.insert((i, j));
            }
        }
        let mut pending_set: HashSet<(usize, usize)> = pending.iter().copied().collect();

        while let Some(&(i, j)) = pending.iter().min_by(|a, b| {
            let la = leading(&basis[a.0]).0.lcm(leading(&basis[a.1]).0);
            let lb = leading(&basis[b.0]).0.lcm(leading(&basis[b.1]).0);
            la.cmp(&lb).then(a.cmp(b))
        }) {
            pending.remove(&(i, j));
            pending_set.remove(&(i, j));
            let (li, lj) = (leading(&basis[i]).0, leading(&basis[j]).0);
            if li.coprime(lj) {
                continue;
            }
            let l = li.lcm(lj);
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && leading(&basis[k]).0.divides(&l)
                    && !pending_set.contains(&(i.min(k), i.max(k)))
                    && !pending_set.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let s = self.s_polynomial(&basis[i], &basis[j]);
            let r = self.reduce(s, &basis, None);
            if r.is_empty() {
                continue;
            }
            basis.push(make_monic(r));
            if basis.len() > cap {
                return Err(ExactAlgError::ResourceLimit {
                    size: basis.len(),
                    cap,
                });
            }
            let n = basis.len() - 1;
            for k in 0..n {
                pending.insert((k, n));
                pending_set.insert((k, n));
            }
        }
        Ok(self.interreduce(basis))
    }

    fn interreduce(&self, basis: Vec<DPoly>) -> Vec<DPoly> {
        let keep: Vec<bool> = (0..basis.len())
            .map(|i| {
                let li = leading(&basis[i]).0;
                !(0..basis.len()).any(|j| {
                    let lj = leading(&basis[j]).0;
                    j != i && lj.divides(li) && (lj != li || j < i)
                })
            })
            .collect();
        let minimal: Vec<DPoly> = basis
            .into_iter()
            .zip(keep)
            .filter_map(|(g, k)| k.then_some(g))
            .collect();
        let mut reduced: Vec<DPoly> = (0..minimal.len())
            .map(|i| {
                let mut tail = minimal[i].clone();
                let (lm, lc) = tail.pop_last().expect("nonzero");
                let others: Vec<DPoly> = minimal
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let mut g = self.reduce(tail, &others, None);
                g.insert(lm, lc);
                make_monic(g)
            })
            .collect();
        reduced.sort_by(|a, b| leading(a).0.cmp(leading(b).0));
        reduced
    }
}

/// A reduced Gröbner basis: monic, interreduced, sorted by increasing
/// leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    ring: Ring,
    dense: Vec<DPoly>,
}

/// Result of dividing by a basis: `p = sum(cofactors[k] * basis[k]) + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub cofactors: Vec<Polynomial>,
    pub remainder: Polynomial,
}

pub fn buchberger(
    gens: &[Polynomial],
    order: &MonomialOrder,
) -> Result<GroebnerBasis, ExactAlgError> {
    buchberger_with_cap(gens, order, DEFAULT_BASIS_CAP)
}

/// Reduced Gröbner basis of the ideal generated by `gens`. Zero generators
/// are ignored; an empty generator list yields the basis of the zero ideal.
pub fn buchberger_with_cap(
    gens: &[Polynomial],
    order: &MonomialOrder,
    cap: usize,
) -> Result<GroebnerBasis, ExactAlgError> {
    let ring = Ring::new(order, gens.iter().flat_map(|g| g.vars()));
    let dense_gens: Vec<DPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ring.to_dense(g))
        .collect();
    let dense = ring.buchberger(dense_gens, cap)?;
    let generators = dense.iter().map(|g| ring.to_sparse(g)).collect();
    Ok(GroebnerBasis {
        order: order.clone(),
        generators,
        ring,
        dense,
    })
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the basis generates the unit ideal.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(Polynomial::is_constant)
    }

    fn ring_for(&self, p: &Polynomial) -> (Ring, Option<Vec<DPoly>>) {
        let vars = p.vars();
        if self.ring.contains_all(&vars) {
            return (self.ring.clone(), None);
        }
        let ring = Ring::new(&self.order, self.ring.vars.iter().copied().chain(vars));
        let dense = self.generators.iter().map(|g| ring.to_dense(g)).collect();
        (ring, Some(dense))
    }

    /// The fully reduced remainder of `p`; zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let (ring, extended) = self.ring_for(p);
        let basis = extended.as_deref().unwrap_or(&self.dense);
        let r = ring.reduce(ring.to_dense(p), basis, None);
        ring.to_sparse(&r)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_all<'a, I: IntoIterator<Item = &'a Polynomial>>(&self, ps: I) -> bool {
        ps.into_iter().all(|p| self.contains(p))
    }

    /// Division with recorded cofactors against the basis elements.
    pub fn divide(&self, p: &Polynomial) -> Division {
        let (ring, extended) = self.ring_for(p);
        let basis = extended.as_deref().unwrap_or(&self.dense);
        let mut cof = vec![DPoly::new(); basis.len()];
        let r = ring.reduce(ring.to_dense(p), basis, Some(&mut cof));
        Division {
            cofactors: cof.iter().map(|c| ring.to_sparse(c)).collect(),
            remainder: ring.to_sparse(&r),
        }
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.generators == other.generators
    }
}
