//! Discriminant of the horizontal-line pencil and the singular-fibre census.
//!
//! For a curve `f(x, y)` the lines `y = eta` form a pencil; a member is
//! singular (fails to meet the curve transversally in `deg_x f` points) at
//! exactly the roots of `Res_x(f, df/dx)`.  The census factors that
//! discriminant into squarefree pieces (Yun's algorithm), isolates its real
//! roots exactly, and counts the complex-conjugate pairs by degree.

use crate::exact::sturm::{
    derivative_dense, div_exact_dense, from_dense, gcd_dense, refine_interval, to_dense,
};
use crate::exact::{
    isolate_real_roots, rat, resultant, IsolatingInterval, MultiPoly, PolyError, Rat,
};
use num_traits::Signed;

/// The singular members of the horizontal-line pencil of one curve.
#[derive(Clone, PartialEq, Debug)]
pub struct PencilCensus {
    /// `Res_x(f, f_x)`, primitive over the integers, positive leading
    /// coefficient.
    pub discriminant: MultiPoly<Rat>,
    /// Squarefree factors with multiplicities: the product of
    /// `factor^multiplicity` is the discriminant up to a positive scalar.
    pub factors: Vec<(MultiPoly<Rat>, u32)>,
    /// Isolating intervals for the distinct real roots, sorted and disjoint,
    /// refined to width <= 1/128 unless exact.
    pub real_values: Vec<IsolatingInterval>,
    /// Number of complex-conjugate root pairs of the squarefree part.
    pub complex_pair_count: usize,
}

/// `Res_x(f, df/dx)` eliminating the first variable, normalised to coprime
/// integer coefficients with positive leading coefficient.
pub fn pencil_discriminant(f: &MultiPoly<Rat>) -> Result<MultiPoly<Rat>, PolyError> {
    if f.vars().len() != 2 {
        return Err(PolyError::NotUnivariate(f.vars().join(",")));
    }
    let x = f.vars()[0].clone();
    if f.degree_in(&x)? == 0 {
        return Err(PolyError::DegenerateResultant(x));
    }
    let fx = f.partial_derivative(&x)?;
    let d = resultant(&f.scalar_primitive(), &fx.scalar_primitive(), &x)?;
    Ok(positive_primitive(&d))
}

fn positive_primitive(p: &MultiPoly<Rat>) -> MultiPoly<Rat> {
    let prim = p.scalar_primitive();
    match prim.leading() {
        Some((_, lc)) if lc.is_negative() => prim.negated(),
        _ => prim,
    }
}

/// Does the product of `claimed` powers equal `d` up to a nonzero scalar?
pub fn verify_factorization(d: &MultiPoly<Rat>, claimed: &[(MultiPoly<Rat>, u32)]) -> bool {
    let Some((first, _)) = claimed.first() else {
        return d.is_constant() && !d.is_zero();
    };
    let mut product = MultiPoly::from_int(
        &first.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        1,
    );
    for (factor, mult) in claimed {
        product = &product * &factor.pow(*mult);
    }
    d.proportionality(&product)
        .or_else(|| product.proportionality(d))
        .is_some_and(|s| !crate::exact::Field::is_zero(&s))
}

/// Squarefree decomposition (Yun): pairwise-coprime squarefree factors with
/// their multiplicities, each primitive with positive leading coefficient.
/// Constant factors are dropped; the content is not reported.
pub fn squarefree_decomposition(
    p: &MultiPoly<Rat>,
) -> Result<Vec<(MultiPoly<Rat>, u32)>, PolyError> {
    let (var, dense) = to_dense(p)?;
    if dense.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let deriv = derivative_dense(&dense);
    let a = gcd_dense(&dense, &deriv);
    let mut b = div_exact_dense(&dense, &a);
    let mut c = div_exact_dense(&deriv, &a);
    let mut d = sub_dense(&c, &derivative_dense(&b));
    let mut mult = 1u32;
    while b.len() > 1 {
        let factor = gcd_dense(&b, &d);
        if factor.len() > 1 {
            out.push((
                positive_primitive(&from_dense(&var, &factor)),
                mult,
            ));
        }
        b = div_exact_dense(&b, &factor);
        c = div_exact_dense(&d, &factor);
        d = sub_dense(&c, &derivative_dense(&b));
        mult += 1;
    }
    Ok(out)
}

fn sub_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::from_integer(0.into()); a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] -= v;
    }
    while out.last().is_some_and(num_traits::Zero::is_zero) {
        out.pop();
    }
    out
}

/// Full census of the horizontal pencil of `f(x, y)`.
pub fn singular_fiber_census(f: &MultiPoly<Rat>) -> Result<PencilCensus, PolyError> {
    let discriminant = pencil_discriminant(f)?;
    if discriminant.is_zero() {
        // A vanishing discriminant means the input has a repeated
        // component and every fibre is singular: no finite census exists.
        return Err(PolyError::ZeroPolynomial);
    }
    let factors = squarefree_decomposition(&discriminant)?;
    let mut squarefree = MultiPoly::from_int(
        &discriminant
            .vars()
            .iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>(),
        1,
    );
    for (factor, _) in &factors {
        squarefree = &squarefree * factor;
    }
    let width = rat(1, 128);
    let real_values: Vec<IsolatingInterval> = isolate_real_roots(&squarefree)?
        .iter()
        .map(|iv| refine_interval(iv, &width))
        .collect();
    let degree = squarefree.total_degree().unwrap_or(0) as usize;
    let complex_pair_count = (degree - real_values.len()) / 2;
    Ok(PencilCensus {
        discriminant,
        factors,
        real_values,
        complex_pair_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::affine_model;
    use crate::exact::{rat_int, Field};

    fn rp(text: &str, vars: &[&str]) -> MultiPoly<Rat> {
        MultiPoly::parse(text, vars).unwrap()
    }

    fn yp(text: &str) -> MultiPoly<Rat> {
        MultiPoly::parse(text, &["y"]).unwrap()
    }

    /// The degree-9 factor of the discriminant of the affine sextic model.
    pub(crate) fn degree_nine_factor() -> MultiPoly<Rat> {
        yp("90617210907008*y^9 - 60741238168704*y^8 - 52338630572904*y^7 \
            + 38781803208839*y^6 + 8841431367018*y^5 - 8143800845364*y^4 \
            - 176669916264*y^3 + 512733413664*y^2 - 7789219200*y - 6298560000")
    }

    #[test]
    fn parabola_discriminant_is_the_tangency_line() {
        let f = rp("x^2 - y", &["x", "y"]);
        assert_eq!(pencil_discriminant(&f).unwrap(), yp("y"));
    }

    #[test]
    fn crossing_lines_discriminant_is_a_double_root() {
        let f = rp("x^2 - y^2", &["x", "y"]);
        assert_eq!(pencil_discriminant(&f).unwrap(), yp("y^2"));
        let census = singular_fiber_census(&f).unwrap();
        assert_eq!(census.real_values.len(), 1);
        assert!(census.real_values[0].is_exact());
        assert_eq!(census.real_values[0].lo, rat_int(0));
        assert_eq!(census.complex_pair_count, 0);
    }

    #[test]
    fn constant_x_degree_is_rejected() {
        let f = rp("y^3 - 1", &["x", "y"]);
        assert!(matches!(
            pencil_discriminant(&f),
            Err(PolyError::DegenerateResultant(_))
        ));
    }

    #[test]
    fn repeated_component_has_no_census() {
        // (xy - 1)^2 has identically vanishing discriminant: every fibre
        // is singular, so the census must refuse rather than come back empty.
        let f = rp("x^2*y^2 - 2*x*y + 1", &["x", "y"]);
        assert!(pencil_discriminant(&f).unwrap().is_zero());
        assert!(matches!(
            singular_fiber_census(&f),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn factorization_checker() {
        let d = yp("2*y^3 - y^2");
        assert!(verify_factorization(&d, &[(yp("y"), 2), (yp("2*y - 1"), 1)]));
        assert!(!verify_factorization(
            &d,
            &[(yp("y"), 1), (yp("2*y - 1"), 1)]
        ));
        // Any nonzero scalar is allowed.
        let scaled = d.scale(&rat(-7, 3));
        assert!(verify_factorization(
            &scaled,
            &[(yp("y"), 2), (yp("2*y - 1"), 1)]
        ));
    }

    #[test]
    fn yun_decomposition_recovers_multiplicities() {
        // y^3 (y-1)^2 (y^2+1)
        let p = &(&yp("y").pow(3) * &yp("y - 1").pow(2)) * &yp("y^2 + 1");
        let factors = squarefree_decomposition(&p).unwrap();
        assert_eq!(
            factors,
            vec![(yp("y^2 + 1"), 1), (yp("y - 1"), 2), (yp("y"), 3)]
        );
        assert!(verify_factorization(&p, &factors));
    }

    #[test]
    fn model_discriminant_matches_the_printed_product() {
        let g = affine_model().unwrap();
        let d = pencil_discriminant(&g).unwrap();
        assert_eq!(d.degree_in("y").unwrap(), 30);
        let claimed = vec![
            (degree_nine_factor(), 1),
            (yp("y"), 14),
            (yp("2*y - 1"), 7),
        ];
        assert!(verify_factorization(&d, &claimed));
    }

    #[test]
    fn model_fiber_census() {
        let g = affine_model().unwrap();
        let census = singular_fiber_census(&g).unwrap();

        // Factors come back sorted by multiplicity.
        let mults: Vec<u32> = census.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 7, 14]);
        assert_eq!(census.factors[0].0, degree_nine_factor());
        assert_eq!(census.factors[1].0, yp("2*y - 1"));
        assert_eq!(census.factors[2].0, yp("y"));

        // Five real singular values; the third and fifth are exactly 0 and
        // 1/2; the other three sit within 1/100 of the printed decimals.
        assert_eq!(census.real_values.len(), 5);
        let exact_vals: Vec<Option<&Rat>> = census
            .real_values
            .iter()
            .map(|iv| iv.is_exact().then_some(&iv.lo))
            .collect();
        assert_eq!(exact_vals[2], Some(&rat_int(0)));
        assert_eq!(exact_vals[4], Some(&rat(1, 2)));
        for (idx, target) in [(0, rat(-26, 100)), (1, rat(-11, 100)), (3, rat(14, 100))] {
            let iv = &census.real_values[idx];
            let tol = rat(1, 100);
            assert!(
                iv.lo >= target.sub(&tol) && iv.hi <= target.add(&tol),
                "interval {idx} [{}, {}] not within 0.01 of {target}",
                iv.lo,
                iv.hi
            );
        }
        assert_eq!(census.complex_pair_count, 3);
    }

    #[test]
    fn census_is_shear_invariant() {
        let g = affine_model().unwrap();
        let vars = ["x", "y"];
        let image = rp("x + y", &vars);
        let yv = rp("y", &vars);
        let sheared = g.substitute_pairs(&[("x", &image), ("y", &yv)]).unwrap();
        let census = singular_fiber_census(&g).unwrap();
        let census_sheared = singular_fiber_census(&sheared).unwrap();
        assert_eq!(census, census_sheared);
    }
}
