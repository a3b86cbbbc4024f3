#![allow(dead_code)]

use qfsplit::delta::LiftSpec;
use qfsplit::rdp::{d_equation, DFamily, TABLE};
use qfsplit::ring::{inverse_mod, Monomial, Poly};
use qfsplit::trace::monomials_up_to;
use rand::Rng;

/// Twenty Table equations followed by ten type-D lifts at `p = 2`.
pub fn pipeline_corpus() -> Vec<LiftSpec> {
    let mut out: Vec<LiftSpec> =
        TABLE.iter().map(|row| LiftSpec::parse(row.p, row.equation, "0").expect("table equation")).collect();
    let d_cases = [
        (DFamily::Even, 3, 1, "0"),
        (DFamily::Even, 5, 2, "0"),
        (DFamily::Even, 6, 3, "x*z"),
        (DFamily::Odd, 4, 1, "0"),
        (DFamily::Odd, 5, 3, "x*z"),
        (DFamily::Even, 8, 3, "0"),
        (DFamily::Odd, 7, 2, "0"),
        (DFamily::Even, 4, 0, "y"),
        (DFamily::Odd, 6, 0, "0"),
        (DFamily::Even, 7, 5, "x*z"),
    ];
    for (family, n, r, g) in d_cases {
        out.push(LiftSpec::parse(2, &d_equation(family, n, r), g).expect("d equation"));
    }
    out
}

pub fn monomials_of_degree(d: u32) -> Vec<Monomial> {
    monomials_up_to(d).into_iter().filter(|m| m.degree() == d).collect()
}

/// A random homogeneous polynomial of degree `d` over `F_p`, never zero.
pub fn random_form<R: Rng>(rng: &mut R, p: u64, d: u32, density: f64) -> Poly {
    let monos = monomials_of_degree(d);
    loop {
        let mut terms: Vec<(Monomial, i64)> = Vec::new();
        for m in &monos {
            if rng.gen_bool(density) {
                terms.push((*m, rng.gen_range(1..p) as i64));
            }
        }
        let g = Poly::from_terms(p, 1, terms);
        if !g.is_zero() {
            return g;
        }
    }
}

/// Membership of a homogeneous `g` in the ideal of homogeneous `gens`,
/// decided by row reduction inside the degree-`deg g` component.
pub fn span_member(gens: &[Poly], g: &Poly) -> bool {
    let p = g.p();
    let Some(d) = g.total_degree() else { return true };
    let basis = monomials_of_degree(d);
    let index = |m: &Monomial| basis.iter().position(|b| b == m).expect("monomial of degree d");
    let to_row = |q: &Poly| {
        let mut row = vec![0u64; basis.len()];
        for (m, c) in q.terms() {
            row[index(m)] = c % p;
        }
        row
    };
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for f in gens {
        let Some(df) = f.total_degree() else { continue };
        if df > d {
            continue;
        }
        for m in monomials_of_degree(d - df) {
            rows.push(to_row(&f.shift(&m).expect("shift")));
        }
    }
    let rank_of = |mut rows: Vec<Vec<u64>>| {
        let mut rank = 0;
        for col in 0..basis.len() {
            let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
            rows.swap(rank, piv);
            let inv = inverse_mod(rows[rank][col], p);
            for v in rows[rank].iter_mut() {
                *v = *v * inv % p;
            }
            for i in 0..rows.len() {
                if i != rank && rows[i][col] != 0 {
                    let factor = rows[i][col];
                    let pivot = rows[rank].clone();
                    for (v, w) in rows[i].iter_mut().zip(pivot) {
                        *v = (*v + p * p - factor * w % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    };
    let before = rank_of(rows.clone());
    rows.push(to_row(g));
    rank_of(rows) == before
}
