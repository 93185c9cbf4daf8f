use super::mpoly::{divides, lcm, MPoly, PolyRing};
use super::{AResult, AlgError};
use crate::fields::Field;

/// Full reduction of `f` by `basis` under the ring's term order.
pub fn normal_form<F: Field>(r: &PolyRing<F>, f: &MPoly<F::Elem>, basis: &[MPoly<F::Elem>]) -> MPoly<F::Elem> {
    let leads: Vec<_> = basis.iter().filter_map(|g| r.leading(g).map(|(e, c)| (e.clone(), c.clone(), g))).collect();
    let mut rest = f.clone();
    let mut out = MPoly::zero();
    while let Some((e, c)) = r.leading(&rest).map(|(e, c)| (e.clone(), c.clone())) {
        match leads.iter().find(|(le, _, _)| divides(le, &e)) {
            Some((le, lc, g)) => {
                let m: Vec<u32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
                let k = r.field.div(&c, lc).expect("leading coefficient is nonzero");
                rest = r.sub(&rest, &r.mul_term(g, &m, &k));
            }
            None => {
                rest.terms.remove(&e);
                out.terms.insert(e, c);
            }
        }
    }
    out
}

fn s_poly<F: Field>(r: &PolyRing<F>, f: &MPoly<F::Elem>, g: &MPoly<F::Elem>) -> MPoly<F::Elem> {
    let (ef, cf) = r.leading(f).unwrap();
    let (eg, cg) = r.leading(g).unwrap();
    let l = lcm(ef, eg);
    let mf: Vec<u32> = l.iter().zip(ef).map(|(a, b)| a - b).collect();
    let mg: Vec<u32> = l.iter().zip(eg).map(|(a, b)| a - b).collect();
    let a = r.mul_term(f, &mf, &r.field.inv(cf).unwrap());
    let b = r.mul_term(g, &mg, &r.field.inv(cg).unwrap());
    r.sub(&a, &b)
}

/// Reduced monic Gröbner basis by Buchberger's algorithm with the coprime
/// criterion. Fails if an S-pair of total degree above `cap` is needed.
pub fn groebner<F: Field>(r: &PolyRing<F>, gens: &[MPoly<F::Elem>], cap: u32) -> AResult<Vec<MPoly<F::Elem>>> {
    let mut basis: Vec<MPoly<F::Elem>> = gens.iter().filter(|g| !g.is_zero()).map(|g| r.monic(g)).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let ei = r.leading(&basis[i]).unwrap().0.clone();
        let ej = r.leading(&basis[j]).unwrap().0.clone();
        if ei.iter().zip(&ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let deg: u32 = lcm(&ei, &ej).iter().sum();
        if deg > cap {
            return Err(AlgError::DegreeCapExceeded { cap });
        }
        let h = normal_form(r, &s_poly(r, &basis[i], &basis[j]), &basis);
        if !h.is_zero() {
            let k = basis.len();
            basis.push(r.monic(&h));
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    Ok(reduce(r, basis))
}

fn reduce<F: Field>(r: &PolyRing<F>, basis: Vec<MPoly<F::Elem>>) -> Vec<MPoly<F::Elem>> {
    let lead = |g: &MPoly<F::Elem>| r.leading(g).unwrap().0.clone();
    let mut min: Vec<MPoly<F::Elem>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let eg = lead(g);
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let eh = lead(h);
            j != i && divides(&eh, &eg) && (eh != eg || j < i)
        });
        if !redundant {
            min.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<_> = min.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        out.push(r.monic(&normal_form(r, &min[i], &others)));
    }
    out.sort_by(|a, b| r.order.cmp(r.leading(a).unwrap().0, r.leading(b).unwrap().0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TermOrder;
    use crate::fields::{FiniteField, FunctionField};

    fn ring(order: TermOrder) -> PolyRing<FiniteField> {
        PolyRing::new(FiniteField::new(3, 1).unwrap(), &["x", "y"], order)
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let r = ring(TermOrder::Lex);
        let g = r.sub(&r.pow(&r.var(0), 2), &r.var(1));
        assert_eq!(groebner(&r, &[g.clone()], 12).unwrap(), vec![g]);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(TermOrder::GrevLex);
        let (x, y) = (r.var(0), r.var(1));
        let g = r.sub(&r.pow(&x, 2), &y);
        assert_eq!(normal_form(&r, &r.pow(&x, 3), &[g.clone()]), r.mul(&x, &y));
        let h = r.sub(&r.pow(&y, 2), &x);
        let gb = groebner(&r, &[g, h], 12).unwrap();
        assert_eq!(normal_form(&r, &r.pow(&x, 4), &gb), x);
    }

    #[test]
    fn cap_is_reported() {
        let r = ring(TermOrder::Lex);
        let (x, y) = (r.var(0), r.var(1));
        let g = r.sub(&r.pow(&x, 3), &y);
        let h = r.sub(&r.pow(&y, 3), &x);
        assert_eq!(groebner(&r, &[g, h], 2), Err(AlgError::DegreeCapExceeded { cap: 2 }));
    }

    #[test]
    fn works_over_function_fields() {
        let k = FunctionField::new(2, &["s"]).unwrap();
        let s = k.var(0);
        let r = PolyRing::new(k.clone(), &["x"], TermOrder::GrevLex);
        let g = r.sub(&r.pow(&r.var(0), 2), &r.constant(s.clone()));
        let gb = groebner(&r, &[g], 12).unwrap();
        let nf = normal_form(&r, &r.pow(&r.var(0), 5), &gb);
        assert_eq!(nf, r.scale(&r.var(0), &k.square(&s)));
    }
}
