//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller pair criteria.

use std::collections::BTreeMap;

use smallvec::SmallVec;

use super::mpoly::{add_exp, coprime, divides, lcm, sub_exp, Exponent, MPoly, MonomialOrder, OrderKey};
use crate::galois_field::{ExtField, FieldElement};

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: Option<ExtField>,
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<MPoly>,
}

/// Dimension of `k[x]/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

#[derive(Clone)]
struct Term {
    key: OrderKey,
    exp: Exponent,
    coeff: FieldElement,
}

/// Internal representation: terms sorted by decreasing order key, monic.
#[derive(Clone)]
struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    fn lm(&self) -> &Exponent {
        &self.terms[0].exp
    }

    fn from_mpoly(f: &MPoly, order: MonomialOrder) -> Self {
        let mut terms: Vec<Term> = f
            .terms()
            .map(|(e, c)| Term {
                key: order.key(e),
                exp: e.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        let mut p = Poly { terms };
        p.make_monic();
        p
    }

    fn make_monic(&mut self) {
        if let Some(first) = self.terms.first() {
            if !first.coeff.is_one() {
                let inv = first.coeff.inv().expect("nonzero lead");
                for t in &mut self.terms {
                    t.coeff = &t.coeff * &inv;
                }
            }
        }
    }

    fn to_mpoly(&self, field: &ExtField, nvars: usize) -> MPoly {
        MPoly::from_terms(
            field,
            nvars,
            self.terms.iter().map(|t| (t.exp.to_vec(), t.coeff.clone())),
        )
    }
}

type Work = BTreeMap<OrderKey, (Exponent, FieldElement)>;

fn add_scaled(work: &mut Work, g: &Poly, skip_lead: bool, shift: &[u16], c: &FieldElement, order: MonomialOrder) {
    let start = usize::from(skip_lead);
    for t in &g.terms[start..] {
        let e = add_exp(&t.exp, shift);
        let key = order.key(&e);
        let delta = c * &t.coeff;
        match work.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert((e, delta));
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &o.get().1 + &delta;
                if s.is_zero() {
                    o.remove();
                } else {
                    o.get_mut().1 = s;
                }
            }
        }
    }
}

/// Full reduction of `work` modulo the polynomials `basis[i]` for `i` in
/// `active`; returns the monic remainder or `None` if it is zero.
fn reduce(mut work: Work, basis: &[Poly], active: &[usize], order: MonomialOrder) -> Option<Poly> {
    let mut rem: Vec<Term> = Vec::new();
    while let Some((key, (exp, coeff))) = work.pop_last() {
        let divisor = active.iter().map(|&i| &basis[i]).find(|g| divides(g.lm(), &exp));
        match divisor {
            Some(g) => {
                let shift = sub_exp(&exp, g.lm());
                add_scaled(&mut work, g, true, &shift, &-&coeff, order);
            }
            None => rem.push(Term { key, exp, coeff }),
        }
    }
    if rem.is_empty() {
        None
    } else {
        let mut p = Poly { terms: rem };
        p.make_monic();
        Some(p)
    }
}

fn to_work(p: &Poly) -> Work {
    p.terms
        .iter()
        .map(|t| (t.key.clone(), (t.exp.clone(), t.coeff.clone())))
        .collect()
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exponent,
    key: OrderKey,
}

struct Engine {
    order: MonomialOrder,
    basis: Vec<Poly>,
    /// Indices of basis elements not made redundant by a later leading monomial.
    alive: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let l = lcm(self.basis[i].lm(), self.basis[j].lm());
        Pair {
            i,
            j,
            key: self.order.key(&l),
            lcm: l,
        }
    }

    /// Inserts a new basis element, applying the Gebauer–Möller update.
    fn update(&mut self, h: Poly) {
        let t = self.basis.len();
        let lm_t = h.lm().clone();
        self.basis.push(h);

        let cands: Vec<Pair> = self.alive.iter().map(|&i| self.make_pair(i, t)).collect();

        // M criterion: drop (i,t) if some (j,t) has an lcm properly dividing it.
        let cands: Vec<Pair> = cands
            .iter()
            .filter(|p| {
                !cands
                    .iter()
                    .any(|q| divides(&q.lcm, &p.lcm) && q.lcm != p.lcm)
            })
            .cloned()
            .collect();

        // F criterion and product criterion, grouped by equal lcm.
        let mut groups: BTreeMap<Exponent, Vec<Pair>> = BTreeMap::new();
        for p in cands {
            groups.entry(p.lcm.clone()).or_default().push(p);
        }
        let mut kept = Vec::new();
        for (_, group) in groups {
            let any_coprime = group
                .iter()
                .any(|p| coprime(self.basis[p.i].lm(), &lm_t));
            if !any_coprime {
                kept.push(group[0].clone());
            }
        }

        // B criterion on old pairs.
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !divides(&lm_t, &p.lcm) {
                return true;
            }
            let l_it = lcm(basis[p.i].lm(), &lm_t);
            let l_jt = lcm(basis[p.j].lm(), &lm_t);
            l_it == p.lcm || l_jt == p.lcm
        });
        self.pairs.extend(kept);

        self.alive.retain(|&i| !divides(&lm_t, basis[i].lm()));
        self.alive.push(t);
    }

    fn spoly(&self, pair: &Pair) -> Work {
        let gi = &self.basis[pair.i];
        let gj = &self.basis[pair.j];
        let field = gi.terms[0].coeff.field();
        let mut work = Work::new();
        add_scaled(&mut work, gi, true, &sub_exp(&pair.lcm, gi.lm()), &field.one(), self.order);
        add_scaled(&mut work, gj, true, &sub_exp(&pair.lcm, gj.lm()), &-field.one(), self.order);
        work
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[MPoly], order: MonomialOrder) -> GroebnerBasis {
    let Some(first) = gens.first() else {
        return GroebnerBasis {
            field: None,
            nvars: 0,
            order,
            polys: Vec::new(),
        };
    };
    let (field, nvars) = (first.field().clone(), first.nvars());
    for g in gens {
        assert_eq!(g.field(), &field, "generators over different fields");
        assert_eq!(g.nvars(), nvars, "generators with different nvars");
    }
    let mut eng = Engine {
        order,
        basis: Vec::new(),
        alive: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let p = Poly::from_mpoly(g, order);
        let active: Vec<usize> = (0..eng.basis.len()).collect();
        if let Some(h) = reduce(to_work(&p), &eng.basis, &active, order) {
            let unit = h.lm().iter().all(|&x| x == 0);
            eng.update(h);
            if unit {
                return unit_basis(&field, nvars, order);
            }
        }
    }
    while !eng.pairs.is_empty() {
        let idx = eng
            .pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.key.cmp(&b.1.key))
            .map(|(i, _)| i)
            .unwrap();
        let pair = eng.pairs.swap_remove(idx);
        let s = eng.spoly(&pair);
        let active: Vec<usize> = (0..eng.basis.len()).collect();
        if let Some(h) = reduce(s, &eng.basis, &active, order) {
            if h.lm().iter().all(|&x| x == 0) {
                return unit_basis(&field, nvars, order);
            }
            eng.update(h);
        }
    }

    // Minimalize and interreduce.
    let mut minimal: Vec<Poly> = Vec::new();
    let mut alive = eng.alive.clone();
    alive.sort_by(|&a, &b| eng.basis[a].terms[0].key.cmp(&eng.basis[b].terms[0].key));
    for &i in &alive {
        let lm = eng.basis[i].lm();
        if !minimal.iter().any(|g| divides(g.lm(), lm)) {
            minimal.push(eng.basis[i].clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<usize> = (0..minimal.len()).filter(|&j| j != k).collect();
        let g = &minimal[k];
        let lead = g.terms[0].clone();
        let mut tail = to_work(g);
        tail.remove(&lead.key);
        let mut out = vec![lead];
        out.extend(reduce_raw(tail, &minimal, &others, order));
        reduced.push(Poly { terms: out });
    }
    let polys = reduced.iter().map(|p| p.to_mpoly(&field, nvars)).collect();
    GroebnerBasis {
        field: Some(field),
        nvars,
        order,
        polys,
    }
}

/// Like [`reduce`] but without normalizing the remainder.
fn reduce_raw(mut work: Work, basis: &[Poly], active: &[usize], order: MonomialOrder) -> Vec<Term> {
    let mut rem = Vec::new();
    while let Some((key, (exp, coeff))) = work.pop_last() {
        match active.iter().map(|&i| &basis[i]).find(|g| divides(g.lm(), &exp)) {
            Some(g) => {
                let shift = sub_exp(&exp, g.lm());
                add_scaled(&mut work, g, true, &shift, &-&coeff, order);
            }
            None => rem.push(Term { key, exp, coeff }),
        }
    }
    rem
}

fn unit_basis(field: &ExtField, nvars: usize, order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        field: Some(field.clone()),
        nvars,
        order,
        polys: vec![MPoly::one(field, nvars)],
    }
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coefficient field; `None` for the basis of the empty generating set.
    pub fn field(&self) -> Option<&ExtField> {
        self.field.as_ref()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    fn leading_exponents(&self) -> Vec<Exponent> {
        self.polys
            .iter()
            .map(|g| g.leading_exponent(self.order).expect("nonzero").clone())
            .collect()
    }

    /// Monomials outside the leading-term ideal, ascending in the basis order;
    /// `None` when there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Exponent>> {
        let lms = self.leading_exponents();
        // Finite iff every variable has a pure power among the leading monomials.
        let mut bounds = Vec::with_capacity(self.nvars);
        for v in 0..self.nvars {
            let b = lms
                .iter()
                .filter(|e| e.iter().enumerate().all(|(i, &k)| i == v || k == 0))
                .map(|e| e[v])
                .min()?;
            bounds.push(b);
        }
        let mut out = Vec::new();
        let mut cur: Exponent = SmallVec::from_elem(0, self.nvars);
        enumerate_box(&bounds, 0, &mut cur, &lms, &mut out);
        out.sort_by(|a, b| self.order.cmp(a, b));
        Some(out)
    }

    /// Normal form of `f` with respect to this basis.
    pub fn normal_form(&self, f: &MPoly) -> MPoly {
        let basis: Vec<Poly> = self
            .polys
            .iter()
            .map(|g| Poly::from_mpoly(g, self.order))
            .collect();
        let active: Vec<usize> = (0..basis.len()).collect();
        let p = Poly {
            terms: f
                .terms()
                .map(|(e, c)| Term {
                    key: self.order.key(e),
                    exp: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        };
        let rem = reduce_raw(to_work(&p), &basis, &active, self.order);
        MPoly::from_terms(
            f.field(),
            f.nvars(),
            rem.into_iter().map(|t| (t.exp.to_vec(), t.coeff)),
        )
    }
}

fn enumerate_box(bounds: &[u16], v: usize, cur: &mut Exponent, lms: &[Exponent], out: &mut Vec<Exponent>) {
    if lms.iter().any(|m| divides(m, cur)) {
        return;
    }
    if v == bounds.len() {
        out.push(cur.clone());
        return;
    }
    for k in 0..bounds[v] {
        cur[v] = k;
        enumerate_box(bounds, v + 1, cur, lms, out);
    }
    cur[v] = 0;
}

/// Number of standard monomials of a reduced Gröbner basis.
pub fn quotient_dim(gb: &GroebnerBasis) -> QuotientDim {
    if gb.polys.is_empty() {
        return if gb.nvars == 0 {
            QuotientDim::Finite(1)
        } else {
            QuotientDim::Infinite
        };
    }
    match gb.standard_monomials() {
        Some(m) => QuotientDim::Finite(m.len()),
        None => QuotientDim::Infinite,
    }
}
