//! Resultants via fraction-free elimination, multivariate gcd, and
//! squarefree parts.
//!
//! The resultant of `p` and `q` with respect to a variable is the determinant
//! of their Sylvester matrix (deg q rows of p's coefficients, then deg p rows
//! of q's), computed by the Bareiss algorithm so every intermediate division
//! is exact.  Gcds use a primitive polynomial remainder sequence, recursing on
//! coefficient contents; results are normalised to graded-lex-monic form.

use super::poly::{MultiPoly, PolyError};
use super::scalar::Field;

/// Resultant of `p` and `q` with respect to `var`, as a polynomial in the
/// remaining variables.
pub fn resultant<K: Field>(
    p: &MultiPoly<K>,
    q: &MultiPoly<K>,
    var: &str,
) -> Result<MultiPoly<K>, PolyError> {
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroResultant);
    }
    let cp = p.coeffs_in(var)?;
    let cq = q.coeffs_in(var)?;
    let n = cp.len() - 1;
    let m = cq.len() - 1;
    if n == 0 && m == 0 {
        return Err(PolyError::DegenerateResultant(var.to_string()));
    }
    if n == 0 {
        return Ok(cp[0].pow(m as u32));
    }
    if m == 0 {
        return Ok(cq[0].pow(n as u32));
    }
    let size = n + m;
    let zero = MultiPoly::zero_owned(cp[0].vars().to_vec());
    let mut mat = vec![vec![zero; size]; size];
    for row in 0..m {
        for (k, c) in cp.iter().enumerate() {
            // Descending powers of `var` across the row.
            mat[row][row + n - k] = c.clone();
        }
    }
    for row in 0..n {
        for (k, c) in cq.iter().enumerate() {
            mat[m + row][row + m - k] = c.clone();
        }
    }
    det_bareiss(mat)
}

/// Determinant of a square matrix of polynomials over a common variable
/// list, by Bareiss fraction-free elimination with row pivoting.
pub fn det_bareiss<K: Field>(
    mut mat: Vec<Vec<MultiPoly<K>>>,
) -> Result<MultiPoly<K>, PolyError> {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        panic!("empty matrix has no determinant convention here");
    }
    let vars = mat[0][0].vars().to_vec();
    let mut prev = MultiPoly::constant_owned(vars.clone(), K::one());
    let mut negate = false;
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero_owned(vars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.exact_div(&prev)?;
            }
            mat[i][k] = MultiPoly::zero_owned(vars.clone());
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    Ok(if negate { det.negated() } else { det })
}

/// Greatest common divisor, normalised to graded-lex-monic form.
/// `gcd(p, 0) = monic(p)`; two zeros give zero.
pub fn gcd_multivar<K: Field>(
    p: &MultiPoly<K>,
    q: &MultiPoly<K>,
) -> Result<MultiPoly<K>, PolyError> {
    if p.is_zero() {
        return Ok(q.normalized());
    }
    if q.is_zero() {
        return Ok(p.normalized());
    }
    if p.is_constant() || q.is_constant() {
        let refs: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
        return Ok(MultiPoly::from_int(&refs, 1));
    }
    // Prefer a variable both polynomials actually use.
    let both = p.vars().iter().find(|v| {
        p.degree_in(v).unwrap_or(0) > 0 && q.degree_in(v).unwrap_or(0) > 0
    });
    match both {
        Some(var) => gcd_in_var(p, q, &var.clone()),
        None => {
            // Some variable occurs in p but not q (or vice versa); the gcd
            // cannot involve it, so cap p by its content in that variable.
            let var = p
                .vars()
                .iter()
                .find(|v| p.degree_in(v).unwrap_or(0) > 0)
                .cloned()
                .expect("non-constant polynomial uses some variable");
            if q.degree_in(&var)? == 0 {
                let (cont, _) = content_and_primitive(&p.coeffs_in(&var)?)?;
                let full = cont.embed(&var_refs(p.vars()))?;
                gcd_multivar(&full, q)
            } else {
                let (cont, _) = content_and_primitive(&q.coeffs_in(&var)?)?;
                let full = cont.embed(&var_refs(q.vars()))?;
                gcd_multivar(p, &full)
            }
        }
    }
}

fn var_refs(vars: &[String]) -> Vec<&str> {
    vars.iter().map(|s| s.as_str()).collect()
}

fn gcd_in_var<K: Field>(
    p: &MultiPoly<K>,
    q: &MultiPoly<K>,
    var: &str,
) -> Result<MultiPoly<K>, PolyError> {
    let full_vars = p.vars().to_vec();
    let cp = p.coeffs_in(var)?;
    let cq = q.coeffs_in(var)?;
    let (cont_p, pp_p) = content_and_primitive(&cp)?;
    let (cont_q, pp_q) = content_and_primitive(&cq)?;
    let cont_gcd = gcd_multivar(&cont_p, &cont_q)?;

    let (mut a, mut b) = if pp_p.len() >= pp_q.len() {
        (pp_p, pp_q)
    } else {
        (pp_q, pp_p)
    };
    loop {
        let r = pseudo_rem(&a, &b)?;
        if r.is_empty() {
            break;
        }
        let (_, r_prim) = content_and_primitive(&r)?;
        a = b;
        b = r_prim;
    }
    let gcd_prim = MultiPoly::from_univar(&full_vars, var, &b)?;
    let cont_full = cont_gcd.embed(&var_refs(&full_vars))?;
    Ok((&gcd_prim * &cont_full).normalized())
}

/// Content (gcd of the coefficients) and the coefficient list divided by it.
///
/// When every coefficient is a scalar the polynomial gcd degenerates to `1`,
/// which would leave pseudo-remainder sequences unnormalised and let their
/// coefficients grow exponentially; the scalar content hint of the field is
/// used instead, giving the classical integer-primitive sequence.
fn content_and_primitive<K: Field>(
    coeffs: &[MultiPoly<K>],
) -> Result<(MultiPoly<K>, Vec<MultiPoly<K>>), PolyError> {
    if coeffs.iter().all(|c| c.is_constant()) {
        let scalars: Vec<K> = coeffs
            .iter()
            .filter_map(|c| c.as_constant())
            .filter(|k| !k.is_zero())
            .collect();
        let refs: Vec<&K> = scalars.iter().collect();
        let vars: Vec<&str> = coeffs
            .first()
            .expect("nonempty coefficient list")
            .vars()
            .iter()
            .map(|s| s.as_str())
            .collect();
        let hint = K::content_hint(&refs);
        let inv = hint.inv().expect("content of a nonzero list is nonzero");
        let prim = coeffs.iter().map(|c| c.scale(&inv)).collect();
        return Ok((MultiPoly::constant(&vars, hint), prim));
    }
    let mut cont: Option<MultiPoly<K>> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        cont = Some(match cont {
            None => c.normalized(),
            Some(g) => gcd_multivar(&g, c)?,
        });
    }
    let cont = cont.expect("content of the zero coefficient list");
    let prim = coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                Ok(c.clone())
            } else {
                c.exact_div(&cont)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((cont, prim))
}

/// Pseudo-remainder of coefficient vectors in one distinguished variable:
/// repeatedly scale by the divisor's leading coefficient and subtract a
/// shifted multiple, so all arithmetic stays polynomial.
fn pseudo_rem<K: Field>(
    a: &[MultiPoly<K>],
    b: &[MultiPoly<K>],
) -> Result<Vec<MultiPoly<K>>, PolyError> {
    let mut a = a.to_vec();
    let db = b.len() - 1;
    let lcb = b[db].clone();
    loop {
        trim(&mut a);
        if a.len() <= db {
            return Ok(a);
        }
        let da = a.len() - 1;
        let lca = a[da].clone();
        for c in a.iter_mut() {
            *c = &*c * &lcb;
        }
        let shift = da - db;
        for (k, bc) in b.iter().enumerate() {
            let delta = &lca * bc;
            a[k + shift] = &a[k + shift] - &delta;
        }
        debug_assert!(a[da].is_zero());
    }
}

fn trim<K: Field>(v: &mut Vec<MultiPoly<K>>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Squarefree part: `p / gcd(p, all partial derivatives)`, normalised.
/// Over characteristic zero this strips every repeated factor.
pub fn squarefree_part<K: Field>(p: &MultiPoly<K>) -> Result<MultiPoly<K>, PolyError> {
    if p.is_zero() || p.is_constant() {
        return Ok(p.clone());
    }
    let mut g = p.clone();
    for v in p.vars().to_vec() {
        if p.degree_in(&v)? == 0 {
            continue;
        }
        let dv = p.partial_derivative(&v)?;
        g = gcd_multivar(&g, &dv)?;
    }
    Ok(p.exact_div(&g.normalized())?.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{rat_int, Rat};

    fn pxy(text: &str) -> MultiPoly<Rat> {
        MultiPoly::parse(text, &["x", "y"]).unwrap()
    }

    #[test]
    fn resultant_of_line_and_parabola() {
        let p = pxy("x^2 - y");
        let q = pxy("x - 1");
        let r = resultant(&p, &q, "x").unwrap();
        assert_eq!(r, MultiPoly::parse("1 - y", &["y"]).unwrap());
    }

    #[test]
    fn resultant_vanishes_iff_common_root() {
        let p = pxy("x^2 - 3*x + 2"); // roots 1, 2
        let q = pxy("x - 3");
        let r = resultant(&p, &q, "x").unwrap();
        assert_eq!(r.as_constant(), Some(rat_int(2)));
        let q2 = pxy("x - 2");
        let r2 = resultant(&p, &q2, "x").unwrap();
        assert!(r2.is_zero());
    }

    #[test]
    fn resultant_multiplicative_in_first_argument() {
        let a = pxy("x - y");
        let b = pxy("x + 2*y - 1");
        let c = pxy("x^2 + y");
        let lhs = resultant(&(&a * &b), &c, "x").unwrap();
        let rhs = &resultant(&a, &c, "x").unwrap() * &resultant(&b, &c, "x").unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degenerate_and_zero_inputs() {
        let c1 = pxy("y + 1");
        let c2 = pxy("y - 4");
        assert!(matches!(
            resultant(&c1, &c2, "x"),
            Err(PolyError::DegenerateResultant(_))
        ));
        assert!(matches!(
            resultant(&pxy("x"), &MultiPoly::zero(&["x", "y"]), "x"),
            Err(PolyError::ZeroResultant)
        ));
        // One input constant in the variable: power of the constant.
        let r = resultant(&pxy("y"), &pxy("x^3 - 1"), "x").unwrap();
        assert_eq!(r, MultiPoly::parse("y^3", &["y"]).unwrap());
    }

    #[test]
    fn gcd_of_products() {
        let f = &pxy("x + y").pow(2) * &pxy("x - y");
        let g = &pxy("x + y") * &pxy("x - 2*y");
        let d = gcd_multivar(&f, &g).unwrap();
        assert_eq!(d, pxy("x + y"));
        let coprime = gcd_multivar(&pxy("x"), &pxy("y + 1")).unwrap();
        assert_eq!(coprime.as_constant(), Some(rat_int(1)));
        assert_eq!(gcd_multivar(&f, &MultiPoly::zero(&["x", "y"])).unwrap(), f.normalized());
    }

    #[test]
    fn gcd_univariate_matches_euclid() {
        let f = MultiPoly::<Rat>::parse("x^4 - 1", &["x"]).unwrap();
        let g = MultiPoly::<Rat>::parse("x^6 - 1", &["x"]).unwrap();
        let d = gcd_multivar(&f, &g).unwrap();
        assert_eq!(d, MultiPoly::parse("x^2 - 1", &["x"]).unwrap());
    }

    #[test]
    fn squarefree_part_strips_multiplicity() {
        let f = &pxy("x + y").pow(3) * &pxy("x - y").pow(2);
        let sf = squarefree_part(&f).unwrap();
        assert_eq!(sf, (&pxy("x + y") * &pxy("x - y")).normalized());
        let g = MultiPoly::<Rat>::parse("x^2 + 1", &["x"]).unwrap();
        assert_eq!(squarefree_part(&g).unwrap(), g);
    }

    #[test]
    fn determinant_with_zero_pivot_needs_row_swap() {
        let z = MultiPoly::<Rat>::zero(&["x"]);
        let x = MultiPoly::<Rat>::parse("x", &["x"]).unwrap();
        let one = MultiPoly::<Rat>::parse("1", &["x"]).unwrap();
        // [[0, 1], [x, 0]] has determinant -x.
        let det = det_bareiss(vec![vec![z.clone(), one], vec![x.clone(), z]]).unwrap();
        assert_eq!(det, x.negated());
    }
}
