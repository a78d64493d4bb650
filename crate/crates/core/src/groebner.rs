//! Reduced Gröbner bases over `F_p`.
//!
//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy (smallest lcm first, ties broken by insertion
//! index), so bases are bit-reproducible. The zero ideal is always the empty
//! generator list.

use std::cmp::Ordering;
use std::sync::Arc;

use thiserror::Error;

use crate::ffpoly::{Monomial, PolyRing, Polynomial, PrimeField};
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("polynomials live in different rings")]
    ContextMismatch,
    #[error("monomial order is defined on {order} variables but the ring has {ring}")]
    OrderArity { order: usize, ring: usize },
    #[error("variable priority is not a permutation of 0..{0}")]
    BadPriority(usize),
    #[error("elimination ideal is not principal ({generators} generators)")]
    NotPrincipal { generators: usize },
    #[error("saturation needs a nonzero monomial")]
    BadSaturationMonomial,
}

pub type Result<T> = std::result::Result<T, GroebnerError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GradedLex,
    /// Lex on the eliminated variables, then graded-lex on the rest.
    BlockElimination(ElementSet),
}

/// A monomial order together with the variable priority it is built on
/// (`priority[0]` is the most significant variable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    lex_block: Vec<usize>,
    graded_block: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(n: usize) -> Self {
        Self::build(OrderKind::Lex, (0..n).collect())
    }

    pub fn graded_lex(n: usize) -> Self {
        Self::build(OrderKind::GradedLex, (0..n).collect())
    }

    /// Block order eliminating `eliminated`.
    pub fn elimination(n: usize, eliminated: ElementSet) -> Self {
        Self::build(OrderKind::BlockElimination(eliminated), (0..n).collect())
    }

    /// Same kind of order with a different variable priority.
    pub fn with_priority(self, priority: Vec<usize>) -> Result<Self> {
        let n = self.priority.len();
        let mut seen = vec![false; n];
        for &v in &priority {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(GroebnerError::BadPriority(n));
            }
        }
        if priority.len() != n {
            return Err(GroebnerError::BadPriority(n));
        }
        Ok(Self::build(self.kind, priority))
    }

    fn build(kind: OrderKind, priority: Vec<usize>) -> Self {
        let (lex_block, graded_block) = match &kind {
            OrderKind::Lex => (priority.clone(), Vec::new()),
            OrderKind::GradedLex => (Vec::new(), priority.clone()),
            OrderKind::BlockElimination(elim) => priority.iter().partition(|&&v| elim.contains(v)),
        };
        MonomialOrder {
            kind,
            priority,
            lex_block,
            graded_block,
        }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        for &v in &self.lex_block {
            match a[v].cmp(&b[v]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        if self.graded_block.is_empty() {
            return Ordering::Equal;
        }
        let deg = |e: &[u32]| self.graded_block.iter().map(|&v| e[v] as u64).sum::<u64>();
        deg(a).cmp(&deg(b)).then_with(|| {
            self.graded_block
                .iter()
                .map(|&v| a[v].cmp(&b[v]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

/// Generators of an ideal in a fixed ring. No zero generators are stored, so
/// an empty list is the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| **g.ring() != **ring) {
            return Err(GroebnerError::ContextMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner_basis(&self, order: &MonomialOrder) -> Result<Vec<Polynomial>> {
        if order.nvars() != self.ring.nvars() {
            return Err(GroebnerError::OrderArity {
                order: order.nvars(),
                ring: self.ring.nvars(),
            });
        }
        Ok(Engine::new(&self.ring, order).run(&self.generators))
    }

    /// True iff the reduced basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        let gb = self
            .groebner_basis(&MonomialOrder::graded_lex(self.ring.nvars()))
            .expect("arity matches by construction");
        gb.len() == 1 && gb[0].is_constant()
    }
}

type Terms = Vec<(Monomial, u64)>;

struct Engine<'a> {
    ring: &'a Arc<PolyRing>,
    field: PrimeField,
    order: &'a MonomialOrder,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

impl<'a> Engine<'a> {
    fn new(ring: &'a Arc<PolyRing>, order: &'a MonomialOrder) -> Self {
        Engine {
            ring,
            field: ring.field(),
            order,
        }
    }

    fn sorted(&self, f: &Polynomial) -> Terms {
        let mut t: Terms = f.terms().to_vec();
        t.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        t
    }

    fn to_poly(&self, t: Terms) -> Polynomial {
        Polynomial::from_terms(self.ring, t.into_iter().map(|(m, c)| (m, c as i64)))
    }

    fn make_monic(&self, t: &mut Terms) {
        if let Some(&(_, lc)) = t.first() {
            if lc != 1 {
                let inv = self.field.inv(lc);
                for (_, c) in t.iter_mut() {
                    *c = self.field.mul(*c, inv);
                }
            }
        }
    }

    /// `f - c * m * g`, both operands sorted descending.
    fn sub_scaled(&self, f: &[(Monomial, u64)], c: u64, m: &Monomial, g: &[(Monomial, u64)]) -> Terms {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut fi = f.iter().peekable();
        let mut gi = g
            .iter()
            .map(|(gm, gc)| (gm.mul(m), self.field.neg(self.field.mul(*gc, c))))
            .peekable();
        loop {
            let ord = match (fi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(a), Some(b)) => self.order.cmp(&a.0, &b.0),
            };
            match ord {
                Ordering::Greater => out.push(fi.next().unwrap().clone()),
                Ordering::Less => out.push(gi.next().unwrap()),
                Ordering::Equal => {
                    let (fm, fc) = fi.next().unwrap();
                    let (_, gc) = gi.next().unwrap();
                    let s = self.field.add(*fc, gc);
                    if s != 0 {
                        out.push((fm.clone(), s));
                    }
                }
            }
        }
        out
    }

    /// Full reduction of `f` by `divisors` (any leading coefficients).
    fn reduce(&self, f: Terms, divisors: &[&Terms]) -> Terms {
        let mut p = f;
        let mut i = 0;
        while i < p.len() {
            let lm = &p[i].0;
            match divisors.iter().find(|g| g[0].0.divides(lm)) {
                Some(g) => {
                    let factor = lm.div(&g[0].0);
                    let c = self.field.mul(p[i].1, self.field.inv(g[0].1));
                    let tail = self.sub_scaled(&p[i..], c, &factor, g);
                    p.truncate(i);
                    p.extend(tail);
                }
                None => i += 1,
            }
        }
        p
    }

    fn s_poly(&self, f: &Terms, g: &Terms, lcm: &Monomial) -> Terms {
        // both monic
        let mf = lcm.div(&f[0].0);
        let mg = lcm.div(&g[0].0);
        let fm: Terms = f[1..].iter().map(|(m, c)| (m.mul(&mf), *c)).collect();
        self.sub_scaled(&fm, 1, &mg, &g[1..])
    }

    fn run(&self, generators: &[Polynomial]) -> Vec<Polynomial> {
        let mut polys: Vec<Terms> = Vec::new();
        let mut basis: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();

        for g in generators {
            let h = {
                let divs: Vec<&Terms> = basis.iter().map(|&k| &polys[k]).collect();
                self.reduce(self.sorted(g), &divs)
            };
            self.insert(h, &mut polys, &mut basis, &mut pairs);
        }

        while !pairs.is_empty() {
            let best = (0..pairs.len())
                .min_by(|&a, &b| {
                    self.order
                        .cmp(&pairs[a].lcm, &pairs[b].lcm)
                        .then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
                })
                .unwrap();
            let pair = pairs.swap_remove(best);
            let s = self.s_poly(&polys[pair.i], &polys[pair.j], &pair.lcm);
            let h = {
                let divs: Vec<&Terms> = basis.iter().map(|&k| &polys[k]).collect();
                self.reduce(s, &divs)
            };
            self.insert(h, &mut polys, &mut basis, &mut pairs);
        }

        self.interreduce(&polys, &basis)
    }

    /// Gebauer–Möller update for a new nonzero, fully reduced element.
    fn insert(&self, mut h: Terms, polys: &mut Vec<Terms>, basis: &mut Vec<usize>, pairs: &mut Vec<Pair>) {
        if h.is_empty() {
            return;
        }
        self.make_monic(&mut h);
        let hi = polys.len();
        let lm_h = h[0].0.clone();
        polys.push(h);

        let candidates: Vec<(usize, Monomial)> = basis
            .iter()
            .map(|&g| (g, lm_h.lcm(&polys[g][0].0)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, l)) in candidates.iter().enumerate() {
            let coprime = lm_h.coprime(&polys[*g][0].0);
            let dominated = candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !lm_h.coprime(&polys[*g][0].0))
            .map(|(g, lcm)| Pair { i: g, j: hi, lcm })
            .collect();

        pairs.retain(|pr| {
            let l = &pr.lcm;
            !(lm_h.divides(l)
                && polys[pr.i][0].0.lcm(&lm_h) != *l
                && polys[pr.j][0].0.lcm(&lm_h) != *l)
        });
        pairs.extend(new_pairs);

        basis.retain(|&g| !lm_h.divides(&polys[g][0].0));
        basis.push(hi);
    }

    fn interreduce(&self, polys: &[Terms], basis: &[usize]) -> Vec<Polynomial> {
        let mut reduced: Vec<Terms> = Vec::with_capacity(basis.len());
        for (k, &g) in basis.iter().enumerate() {
            let others: Vec<&Terms> = basis
                .iter()
                .enumerate()
                .filter(|&(k2, _)| k2 != k)
                .map(|(_, &g2)| &polys[g2])
                .collect();
            let head = polys[g][0].clone();
            let tail = self.reduce(polys[g][1..].to_vec(), &others);
            let mut t = vec![head];
            t.extend(tail);
            self.make_monic(&mut t);
            reduced.push(t);
        }
        reduced.sort_by(|a, b| self.order.cmp(&a[0].0, &b[0].0));
        reduced.into_iter().map(|t| self.to_poly(t)).collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Polynomial>> {
    match gens.first() {
        None => Ok(Vec::new()),
        Some(g) => Ideal::new(g.ring(), gens.to_vec())?.groebner_basis(order),
    }
}

/// Remainder of `f` on division by a Gröbner basis `gb`.
pub fn normal_form(f: &Polynomial, gb: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    if gb.iter().any(|g| **g.ring() != **f.ring()) {
        return Err(GroebnerError::ContextMismatch);
    }
    if order.nvars() != f.ring().nvars() {
        return Err(GroebnerError::OrderArity {
            order: order.nvars(),
            ring: f.ring().nvars(),
        });
    }
    let engine = Engine::new(f.ring(), order);
    let divisors: Vec<Terms> = gb
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| engine.sorted(g))
        .collect();
    let refs: Vec<&Terms> = divisors.iter().collect();
    Ok(engine.to_poly(engine.reduce(engine.sorted(f), &refs)))
}

/// Reduced Gröbner basis of `I ∩ K[x_keep]`, computed with a block order that
/// eliminates the complement of `keep`. Empty iff the elimination ideal is zero.
pub fn eliminate(ideal: &Ideal, keep: ElementSet) -> Vec<Polynomial> {
    let n = ideal.ring().nvars();
    let order = MonomialOrder::elimination(n, keep.complement(n));
    let gb = ideal
        .groebner_basis(&order)
        .expect("order built for this ring");
    gb.into_iter()
        .filter(|g| g.support().is_subset(keep))
        .collect()
}

/// The single (monic) generator of a principal elimination ideal.
pub fn principal_generator(elim_gens: &[Polynomial]) -> Result<Polynomial> {
    match elim_gens {
        [g] => Ok(g.clone()),
        _ => Err(GroebnerError::NotPrincipal {
            generators: elim_gens.len(),
        }),
    }
}

/// `I : m^∞`, via a fresh variable `w`: eliminate `w` from `I + <w*m - 1>`.
pub fn saturate(ideal: &Ideal, m: &Monomial) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if m.nvars() != n {
        return Err(GroebnerError::BadSaturationMonomial);
    }
    let mut fresh = String::from("_w");
    while ring.var_index(&fresh).is_some() {
        fresh.push('_');
    }
    let mut vars = ring.vars().to_vec();
    vars.push(fresh);
    let big = PolyRing::new(ring.characteristic(), vars).expect("extension of a valid ring");
    let index_map: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&big, &index_map))
        .collect();
    let mut wm = m.exponents().to_vec();
    wm.push(1);
    gens.push(Polynomial::from_terms(
        &big,
        [(Monomial::new(wm), 1), (Monomial::one(n + 1), -1)],
    ));
    let big_ideal = Ideal::new(&big, gens)?;
    let kept = eliminate(&big_ideal, ElementSet::full(n));
    let restricted: Vec<Polynomial> = kept
        .into_iter()
        .map(|g| {
            let terms = g.terms().iter().map(|(mono, c)| {
                (Monomial::new(mono.exponents()[..n].to_vec()), *c as i64)
            });
            Polynomial::from_terms(ring, terms)
        })
        .collect();
    Ideal::new(ring, restricted)
}
