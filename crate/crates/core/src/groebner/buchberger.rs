//! Buchberger's algorithm with the sugar strategy and the Gebauer–Möller
//! pair criteria. Polynomials are held as term vectors sorted ascending by
//! the order key so the leading term is always the last element.

use super::{Key, MonomialOrder};
use crate::error::{Error, Result};
use crate::ring::{inverse_mod, Monomial, Poly};

pub const DEFAULT_DEGREE_CEILING: u32 = 4096;

#[derive(Clone, Copy, Debug)]
struct Term {
    key: Key,
    m: Monomial,
    c: u64,
}

type Sp = Vec<Term>;

fn to_sp(order: MonomialOrder, g: &Poly) -> Sp {
    let mut v: Sp = g.terms().map(|(m, c)| Term { key: order.key(m), m: *m, c }).collect();
    v.sort_by_key(|a| a.key);
    v
}

fn from_sp(p: u64, sp: &Sp) -> Poly {
    Poly::from_terms(p, 1, sp.iter().map(|t| (t.m, t.c as i64)))
}

fn lead(sp: &Sp) -> &Term {
    sp.last().expect("nonzero polynomial")
}

fn make_monic(p: u64, sp: &mut Sp) {
    let lc = lead(sp).c;
    if lc != 1 {
        let inv = inverse_mod(lc, p);
        for t in sp.iter_mut() {
            t.c = t.c * inv % p;
        }
    }
}

/// `f − c·shift·g` by merging two ascending term lists.
fn sub_scaled(order: MonomialOrder, p: u64, f: &Sp, c: u64, shift: &Monomial, g: &Sp) -> Result<Sp> {
    let neg = (p - c % p) % p;
    let mut shifted = Vec::with_capacity(g.len());
    for t in g {
        let m = t.m.mul(shift)?;
        shifted.push(Term { key: order.key(&m), m, c: t.c * neg % p });
    }
    let mut out = Vec::with_capacity(f.len() + shifted.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() && j < shifted.len() {
        match f[i].key.cmp(&shifted[j].key) {
            std::cmp::Ordering::Less => {
                out.push(f[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(shifted[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let s = (f[i].c + shifted[j].c) % p;
                if s != 0 {
                    out.push(Term { c: s, ..f[i] });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&f[i..]);
    out.extend_from_slice(&shifted[j..]);
    Ok(out)
}

/// Full reduction of `f` by the monic polynomials `basis`.
fn reduce(order: MonomialOrder, p: u64, mut f: Sp, basis: &[&Sp]) -> Result<Sp> {
    let mut rem: Vec<Term> = Vec::new();
    while let Some(top) = f.last().copied() {
        let reducer = basis.iter().find(|g| lead(g).m.divides(&top.m));
        match reducer {
            Some(g) => {
                let q = lead(g).m.quotient_of(&top.m);
                f = sub_scaled(order, p, &f, top.c, &q, g)?;
            }
            None => {
                rem.push(top);
                f.pop();
            }
        }
    }
    rem.reverse();
    Ok(rem)
}

pub(super) fn normal_form(order: MonomialOrder, g: &Poly, gb: &[Poly]) -> Result<Poly> {
    let p = g.p();
    let basis: Vec<Sp> = gb.iter().map(|b| to_sp(order, b)).collect();
    let refs: Vec<&Sp> = basis.iter().collect();
    let out = reduce(order, p, to_sp(order, g), &refs)?;
    Ok(from_sp(p, &out))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    key: Key,
    sugar: u32,
}

struct State {
    order: MonomialOrder,
    p: u64,
    polys: Vec<Sp>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    ceiling: u32,
}

impl State {
    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (li, lj) = (lead(&self.polys[i]).m, lead(&self.polys[j]).m);
        let lcm = li.lcm(&lj);
        let si = self.sugar[i] + lcm.degree() - li.degree();
        let sj = self.sugar[j] + lcm.degree() - lj.degree();
        Pair { i, j, lcm, key: self.order.key(&lcm), sugar: si.max(sj) }
    }

    /// Gebauer–Möller update after appending a new basis element `h`.
    fn update(&mut self, h: usize) {
        let lh = lead(&self.polys[h]).m;
        let mut c: Vec<Pair> =
            (0..h).filter(|&g| self.active[g]).map(|g| self.make_pair(g, h)).collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(pair) = c.pop() {
            let lg = lead(&self.polys[pair.i]).m;
            let dominated = c.iter().chain(d.iter()).any(|o| o.lcm.divides(&pair.lcm));
            if lh.is_coprime(&lg) || !dominated {
                d.push(pair);
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|pr| !lead(&self.polys[pr.i]).m.is_coprime(&lh))
            .collect();
        let polys = &self.polys;
        self.pairs.retain(|pr| {
            let li = lead(&polys[pr.i]).m;
            let lj = lead(&polys[pr.j]).m;
            !(lh.divides(&pr.lcm) && li.lcm(&lh) != pr.lcm && lj.lcm(&lh) != pr.lcm)
        });
        self.pairs.extend(e);
        for g in 0..h {
            if self.active[g] && lh.divides(&lead(&self.polys[g]).m) {
                self.active[g] = false;
            }
        }
    }

    fn insert(&mut self, mut f: Sp, sugar: u32) {
        make_monic(self.p, &mut f);
        self.polys.push(f);
        self.sugar.push(sugar);
        self.active.push(true);
        let h = self.polys.len() - 1;
        self.update(h);
    }

    fn active_refs(&self) -> Vec<&Sp> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(f, _)| f).collect()
    }

    fn check_degree(&self, m: &Monomial) -> Result<()> {
        if m.degree() > self.ceiling {
            return Err(Error::DegreeCeiling { limit: self.ceiling });
        }
        Ok(())
    }
}

fn spoly(order: MonomialOrder, p: u64, f: &Sp, g: &Sp, lcm: &Monomial) -> Result<Sp> {
    let qf = lead(f).m.quotient_of(lcm);
    let qg = lead(g).m.quotient_of(lcm);
    let mut scaled = Vec::with_capacity(f.len());
    for t in f {
        let m = t.m.mul(&qf)?;
        scaled.push(Term { key: order.key(&m), m, c: t.c });
    }
    sub_scaled(order, p, &scaled, 1, &qg, g)
}

/// The reduced Gröbner basis, sorted by leading monomial descending.
pub(super) fn reduced_basis(p: u64, order: MonomialOrder, gens: &[Poly], ceiling: u32) -> Result<Vec<Poly>> {
    let mut st = State { order, p, polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new(), ceiling };
    let mut inputs: Vec<Sp> = gens.iter().filter(|g| !g.is_zero()).map(|g| to_sp(order, g)).collect();
    inputs.sort_by_key(|a| lead(a).key);
    for f in inputs {
        let deg = f.iter().map(|t| t.m.degree()).max().unwrap_or(0);
        st.check_degree(&lead(&f).m)?;
        let r = reduce(order, p, f, &st.active_refs())?;
        if !r.is_empty() {
            st.insert(r, deg);
        }
    }
    while !st.pairs.is_empty() {
        let idx = (0..st.pairs.len())
            .min_by(|&a, &b| {
                let (x, y) = (&st.pairs[a], &st.pairs[b]);
                x.sugar.cmp(&y.sugar).then(x.key.cmp(&y.key))
            })
            .expect("nonempty");
        let pair = st.pairs.swap_remove(idx);
        st.check_degree(&pair.lcm)?;
        let s = spoly(order, p, &st.polys[pair.i], &st.polys[pair.j], &pair.lcm)?;
        let r = reduce(order, p, s, &st.active_refs())?;
        if !r.is_empty() {
            st.insert(r, pair.sugar);
        }
    }
    // Interreduce the minimal basis.
    let mut minimal: Vec<Sp> = st.active_refs().into_iter().cloned().collect();
    minimal.sort_by_key(|a| lead(a).key);
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Sp> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, f)| f).collect();
        let mut head = minimal[i].clone();
        let top = head.pop().expect("nonzero");
        let mut tail = reduce(order, p, head, &others)?;
        tail.push(top);
        make_monic(p, &mut tail);
        out.push(tail);
    }
    out.sort_by_key(|f| std::cmp::Reverse(lead(f).key));
    Ok(out.iter().map(|f| from_sp(p, f)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_poly;

    fn gb(gens: &[&str], p: u64, order: MonomialOrder) -> Vec<String> {
        let gens: Vec<Poly> = gens.iter().map(|s| parse_poly(s, p, 1).unwrap()).collect();
        reduced_basis(p, order, &gens, 1000).unwrap().iter().map(|g| g.render()).collect()
    }

    #[test]
    fn twisted_cubic_style_basis() {
        let b = gb(&["x*y+z^2", "x^2"], 2, MonomialOrder::Grevlex);
        assert_eq!(b, vec!["z^4", "x*z^2", "x^2", "x*y+z^2"]);
    }

    #[test]
    fn order_and_duplicates_do_not_matter() {
        let a = gb(&["x^2+y", "x*y+z", "y^2"], 3, MonomialOrder::Grevlex);
        let b = gb(&["y^2", "x*y+z", "x^2+y", "y^2", "2*y^2"], 3, MonomialOrder::Grevlex);
        assert_eq!(a, b);
    }

    #[test]
    fn degree_ceiling_is_enforced() {
        let gens = vec![parse_poly("x^3+y", 2, 1).unwrap(), parse_poly("y^3+z", 2, 1).unwrap()];
        assert!(reduced_basis(2, MonomialOrder::Grevlex, &gens, 2).is_err());
    }

    #[test]
    fn elimination_order_puts_t_first() {
        let t = Monomial::var(3);
        let big = Monomial::new([9, 9, 9]);
        let o = MonomialOrder::EliminateT;
        assert!(o.key(&t) > o.key(&big));
    }
}
